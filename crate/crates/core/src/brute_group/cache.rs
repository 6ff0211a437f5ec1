//! On-disk cache of built groups (binary) and catalogs (JSON).
//!
//! Files are keyed by kind, `q` and field modulus, and carry a format
//! version; a stale or foreign file is rebuilt rather than trusted.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::catalog::{maximal_abelian_orders, MaximalAbelianCatalog};
use super::field::{least_irreducible, FieldSpec, FiniteField};
use super::group::{build_group, GroupKind, GroupTable, Mat, MatrixRing};
use super::BruteError;
use crate::ntheory::PrimePower;

const MAGIC: &[u8; 8] = b"PSU3GRP\0";
pub const FORMAT_VERSION: u32 = 1;

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], BruteError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or(BruteError::CorruptCache)?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, BruteError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, BruteError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().expect("len 2")))
    }

    fn u32(&mut self) -> Result<u32, BruteError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("len 4")))
    }

    fn u64(&mut self) -> Result<u64, BruteError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("len 8")))
    }
}

pub fn encode_group(g: &GroupTable) -> Vec<u8> {
    let n = g.ring.n;
    let spec = g.ring.field.spec();
    let mut out = Vec::with_capacity(64 + g.order() * n * n * 2);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(g.kind.code());
    out.extend_from_slice(&g.q.value().to_le_bytes());
    out.extend_from_slice(&spec.p.to_le_bytes());
    out.extend_from_slice(&spec.k.to_le_bytes());
    out.extend_from_slice(&(spec.modulus.len() as u32).to_le_bytes());
    for c in &spec.modulus {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out.extend_from_slice(&(g.order() as u32).to_le_bytes());
    for m in &g.elements {
        for x in &m[..n * n] {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    out.extend_from_slice(&(g.generators.len() as u32).to_le_bytes());
    for x in &g.generators {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

pub fn decode_group(bytes: &[u8]) -> Result<GroupTable, BruteError> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err(BruteError::CorruptCache);
    }
    if r.u32()? != FORMAT_VERSION {
        return Err(BruteError::StaleCache);
    }
    let kind = GroupKind::from_code(r.u8()?).ok_or(BruteError::CorruptCache)?;
    let q = PrimePower::new(r.u64()?).map_err(|_| BruteError::CorruptCache)?;
    let p = r.u64()?;
    let k = r.u32()?;
    let len = r.u32()? as usize;
    let modulus = (0..len).map(|_| r.u64()).collect::<Result<Vec<_>, _>>()?;
    let field = FiniteField::from_spec(&FieldSpec { p, k, modulus })?;
    let ring = MatrixRing::new(field, q.value(), kind.dim());
    let n = kind.dim();
    let count = r.u32()? as usize;
    let mut elements = Vec::with_capacity(count);
    for _ in 0..count {
        let mut m: Mat = [0; 9];
        for x in m.iter_mut().take(n * n) {
            *x = r.u16()?;
        }
        elements.push(m);
    }
    let gcount = r.u32()? as usize;
    let generators = (0..gcount)
        .map(|_| r.u32())
        .collect::<Result<Vec<_>, _>>()?;
    if r.pos != bytes.len() || generators.iter().any(|&x| x as usize >= count) {
        return Err(BruteError::CorruptCache);
    }
    Ok(GroupTable::from_parts(kind, q, ring, elements, generators))
}

fn modulus_tag(modulus: &[u64]) -> String {
    modulus
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("_")
}

fn stem(kind: GroupKind, q: PrimePower) -> String {
    let modulus = least_irreducible(q.p(), 2 * q.alpha());
    format!(
        "{kind}-q{}-m{}-v{FORMAT_VERSION}",
        q.value(),
        modulus_tag(&modulus)
    )
}

pub fn group_cache_path(dir: &Path, kind: GroupKind, q: PrimePower) -> PathBuf {
    dir.join(format!("{}.grp", stem(kind, q)))
}

pub fn catalog_cache_path(dir: &Path, kind: GroupKind, q: PrimePower) -> PathBuf {
    dir.join(format!("{}.catalog.json", stem(kind, q)))
}

/// Loads the group from `dir` when a valid file exists, otherwise builds and
/// stores it. Unreadable files are rebuilt.
pub fn build_group_cached(
    kind: GroupKind,
    q: PrimePower,
    dir: Option<&Path>,
) -> Result<GroupTable, BruteError> {
    let Some(dir) = dir else {
        return build_group(kind, q);
    };
    let path = group_cache_path(dir, kind, q);
    if let Ok(bytes) = fs::read(&path) {
        if let Ok(g) = decode_group(&bytes) {
            if g.kind == kind && g.q == q && g.order() as u64 == kind.formula_order(q.value()) {
                return Ok(g);
            }
        }
    }
    let g = build_group(kind, q)?;
    fs::create_dir_all(dir).map_err(|e| BruteError::Io(e.to_string()))?;
    fs::write(&path, encode_group(&g)).map_err(|e| BruteError::Io(e.to_string()))?;
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    version: u32,
    catalog: MaximalAbelianCatalog,
}

pub fn catalog_cached(
    g: &GroupTable,
    budget: u64,
    dir: Option<&Path>,
) -> Result<MaximalAbelianCatalog, BruteError> {
    let Some(dir) = dir else {
        return maximal_abelian_orders(g, budget);
    };
    let path = catalog_cache_path(dir, g.kind, g.q);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(file) = serde_json::from_str::<CatalogFile>(&text) {
            if file.version == FORMAT_VERSION && file.catalog.group_order == g.order() as u64 {
                return Ok(file.catalog);
            }
        }
    }
    let catalog = maximal_abelian_orders(g, budget)?;
    let file = CatalogFile {
        version: FORMAT_VERSION,
        catalog,
    };
    let text = serde_json::to_string(&file).expect("catalog serializes");
    fs::create_dir_all(dir).map_err(|e| BruteError::Io(e.to_string()))?;
    fs::write(&path, text).map_err(|e| BruteError::Io(e.to_string()))?;
    Ok(file.catalog)
}
