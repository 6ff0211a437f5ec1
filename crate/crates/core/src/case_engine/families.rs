//! Parameterized comparison families and their odd order components.
//!
//! Every family instance is a pure function of `(branch, params)`, so a
//! recorded near-miss can be rebuilt and re-checked from its report entry.

use serde::{Deserialize, Serialize};

use crate::group_orders::{odd_component_values, SimpleGroupId, Sporadic};
use crate::ntheory::{gcd, is_prime, prime_power_decompose, primes_up_to, PrimePower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `A_n`; params `[n]`.
    Alternating,
    /// `PSU_{p'}(q')`, `p'` odd prime; params `[p', q']`.
    UnitaryPrime,
    /// `PSL_{p'}(q')`, `p'` odd prime; params `[p', q']`.
    LinearPrime,
    /// `PSU_{p'+1}(q')`, `(q'+1) | (p'+1)`; params `[p', q']`.
    UnitaryPrimePlusOne,
    /// `PSL_{p'+1}(q')`, `(q'-1) | (p'+1)`; params `[p', q']`.
    LinearPrimePlusOne,
    /// `2G2(3^(2m+1))`; params `[m]`; `m = 0` is kept as a boundary value.
    Ree2G2,
    /// `2B2(2^(2m+1))`, `m >= 1`; params `[m]`.
    Suzuki,
    /// `2F4(2^(2m+1))`, `m >= 1`; params `[m]`.
    Ree2F4,
    /// `G2(q')`, `q' > 2`; params `[q']`.
    G2,
    /// `B_n(q')`, `n = 2^m >= 4`, `q'` odd; params `[n, q']`.
    BPowerOfTwo,
    /// `C_n(q')`, `n = 2^m >= 2`; params `[n, q']`.
    CPowerOfTwo,
    /// `2D_n(q')`, `n = 2^m >= 4`; params `[n, q']`.
    TwistedDPowerOfTwo,
    /// `A_1(q')`, `q' > 3`; params `[q']`.
    Psl2,
    /// `E6(q')`; params `[q']`.
    E6,
    /// `2E6(q')`, `q' > 2`; params `[q']`.
    TwistedE6,
    /// `E8(q')`; params `[q']`.
    E8,
    /// `F4(q')`; params `[q']`.
    F4,
    /// `3D4(q')`; params `[q']`.
    TriD4,
    /// `C_{p'}(q')`, `q'` in `{2, 3}`; params `[p', q']`.
    CPrime,
    /// `B_{p'}(3)`; params `[p']`.
    BPrimeThree,
    /// `D_{p'+1}(q')`, `q'` in `{2, 3}`; params `[p', q']`.
    DPrimePlusOne,
    /// `D_{p'}(q')`, `p' >= 5`, `q'` in `{2, 3, 5}`; params `[p', q']`.
    DPrime,
    /// `2D_n(2)`, `n = 2^m + 1 >= 5`; params `[n]`.
    TwistedDTwo,
    /// `2D_{p'}(3)`, `p' >= 5` prime; params `[p']`.
    TwistedDPrimeThree,
    /// `2D_n(3)`, `n = 2^m + 1 >= 9` not prime; params `[n]`.
    TwistedDThreeComposite,
    /// Groups with fixed parameters; params `[index into SPECIAL_GROUPS]`.
    Special,
}

/// The fixed list checked under the last case, in a stable order.
pub fn special_groups() -> Vec<SimpleGroupId> {
    let pp = |v| PrimePower::new(v).expect("prime power");
    let mut out = vec![
        SimpleGroupId::Psl { n: 3, q: pp(2) },
        SimpleGroupId::Psl { n: 3, q: pp(4) },
        SimpleGroupId::Psu { n: 4, q: pp(2) },
        SimpleGroupId::Psu { n: 6, q: pp(2) },
        SimpleGroupId::E7 { q: pp(2) },
        SimpleGroupId::E7 { q: pp(3) },
        SimpleGroupId::TwistedE6 { q: pp(2) },
    ];
    out.extend(
        Sporadic::ALL
            .iter()
            .map(|&name| SimpleGroupId::Sporadic { name }),
    );
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub branch: Branch,
    pub params: Vec<u64>,
    /// `None` when the parameters sit outside the family's existence range.
    pub group: Option<SimpleGroupId>,
    pub label: String,
    pub components: Vec<u128>,
    /// Constraint violated by a boundary instance.
    pub invalid_because: Option<String>,
}

fn pp(v: u64) -> Option<PrimePower> {
    PrimePower::new(v).ok()
}

fn valid(branch: Branch, params: &[u64], group: SimpleGroupId) -> Option<Instance> {
    let components = odd_component_values(&group).ok()?;
    Some(Instance {
        branch,
        params: params.to_vec(),
        group: Some(group),
        label: group.to_string(),
        components,
        invalid_because: None,
    })
}

/// Odd components of `A_n` for `n >= 8`: primes `r` with `n - 3 < r <= n`.
fn alternating_fast(n: u64) -> Vec<u128> {
    (n.saturating_sub(2)..=n)
        .filter(|&r| is_prime(r))
        .map(|r| r as u128)
        .collect()
}

impl Branch {
    pub const ALL: [Branch; 26] = [
        Branch::Alternating,
        Branch::UnitaryPrime,
        Branch::LinearPrime,
        Branch::UnitaryPrimePlusOne,
        Branch::LinearPrimePlusOne,
        Branch::Ree2G2,
        Branch::Suzuki,
        Branch::Ree2F4,
        Branch::G2,
        Branch::BPowerOfTwo,
        Branch::CPowerOfTwo,
        Branch::TwistedDPowerOfTwo,
        Branch::Psl2,
        Branch::E6,
        Branch::TwistedE6,
        Branch::E8,
        Branch::F4,
        Branch::TriD4,
        Branch::CPrime,
        Branch::BPrimeThree,
        Branch::DPrimePlusOne,
        Branch::DPrime,
        Branch::TwistedDTwo,
        Branch::TwistedDPrimeThree,
        Branch::TwistedDThreeComposite,
        Branch::Special,
    ];

    /// The case whose component equation this family enters.
    pub fn case(self) -> u8 {
        use Branch::*;
        match self {
            Alternating => 1,
            UnitaryPrime | LinearPrime => 2,
            UnitaryPrimePlusOne | LinearPrimePlusOne => 3,
            Ree2G2 | Suzuki | Ree2F4 | G2 => 4,
            BPowerOfTwo | CPowerOfTwo | TwistedDPowerOfTwo => 5,
            Psl2 => 6,
            E6 | TwistedE6 => 7,
            E8 | F4 | TriD4 => 8,
            CPrime | BPrimeThree | DPrimePlusOne | DPrime | TwistedDTwo | TwistedDPrimeThree => 9,
            TwistedDThreeComposite => 10,
            Special => 11,
        }
    }

    pub fn for_case(case: u8) -> Vec<Branch> {
        Self::ALL
            .iter()
            .copied()
            .filter(|b| b.case() == case)
            .collect()
    }

    /// Short description of the parameter tuple.
    pub fn param_names(self) -> &'static [&'static str] {
        use Branch::*;
        match self {
            Alternating | TwistedDTwo | TwistedDThreeComposite => &["n"],
            UnitaryPrime | LinearPrime | UnitaryPrimePlusOne | LinearPrimePlusOne | CPrime
            | DPrimePlusOne | DPrime => &["p'", "q'"],
            Ree2G2 | Suzuki | Ree2F4 => &["m"],
            G2 | Psl2 | E6 | TwistedE6 | E8 | F4 | TriD4 => &["q'"],
            BPowerOfTwo | CPowerOfTwo | TwistedDPowerOfTwo => &["n", "q'"],
            BPrimeThree | TwistedDPrimeThree => &["p'"],
            Special => &["index"],
        }
    }

    /// Rebuilds one instance from its parameters; `None` if the tuple is not
    /// in the family at all (as opposed to a recorded boundary value).
    pub fn instance(self, params: &[u64]) -> Option<Instance> {
        use Branch::*;
        let one = |i: usize| params.get(i).copied();
        match self {
            Alternating => {
                let n = one(0)?;
                if n < 5 {
                    return None;
                }
                let group = SimpleGroupId::Alt { n: n as u32 };
                if n < 8 {
                    return valid(self, params, group);
                }
                Some(Instance {
                    branch: self,
                    params: params.to_vec(),
                    group: Some(group),
                    label: group.to_string(),
                    components: alternating_fast(n),
                    invalid_because: None,
                })
            }
            UnitaryPrime => {
                let (p, q) = (one(0)?, pp(one(1)?)?);
                if p < 3 || !is_prime(p) {
                    return None;
                }
                let group = SimpleGroupId::Psu { n: p as u32, q };
                group.validate().ok()?;
                valid(self, params, group)
            }
            LinearPrime => {
                let (p, q) = (one(0)?, pp(one(1)?)?);
                if p < 3 || !is_prime(p) {
                    return None;
                }
                valid(self, params, SimpleGroupId::Psl { n: p as u32, q })
            }
            UnitaryPrimePlusOne => {
                let (p, q) = (one(0)?, pp(one(1)?)?);
                if p < 3 || !is_prime(p) || (p + 1) % (q.value() + 1) != 0 {
                    return None;
                }
                valid(self, params, SimpleGroupId::Psu { n: p as u32 + 1, q })
            }
            LinearPrimePlusOne => {
                let (p, q) = (one(0)?, pp(one(1)?)?);
                if p < 3 || !is_prime(p) || (p + 1) % (q.value() - 1) != 0 {
                    return None;
                }
                valid(self, params, SimpleGroupId::Psl { n: p as u32 + 1, q })
            }
            Ree2G2 => {
                let m = one(0)? as u32;
                let qv = 3u64.checked_pow(2 * m + 1)?;
                if m == 0 {
                    // 3 +- 3 + 1: the degenerate member 2G2(3).
                    return Some(Instance {
                        branch: self,
                        params: params.to_vec(),
                        group: None,
                        label: "2G2(3)".into(),
                        components: vec![1, 7],
                        invalid_because: Some("q' = 3^(2m+1) must exceed 3".into()),
                    });
                }
                valid(self, params, SimpleGroupId::Ree2G2 { q: pp(qv)? })
            }
            Suzuki | Ree2F4 => {
                let m = one(0)? as u32;
                if m == 0 {
                    return None;
                }
                let q = pp(2u64.checked_pow(2 * m + 1)?)?;
                let group = if self == Suzuki {
                    SimpleGroupId::Suzuki { q }
                } else {
                    SimpleGroupId::Ree2F4 { q }
                };
                valid(self, params, group)
            }
            G2 => valid(self, params, SimpleGroupId::G2 { q: pp(one(0)?)? }),
            BPowerOfTwo | CPowerOfTwo | TwistedDPowerOfTwo => {
                let (n, q) = (one(0)? as u32, pp(one(1)?)?);
                if self == BPowerOfTwo && n < 4 && n.is_power_of_two() && q.p() != 2 {
                    // Reached only by the derived probe; B_1, B_2 are not in the family.
                    let value = ((q.value() as u128).checked_pow(n)? + 1) / 2;
                    return Some(Instance {
                        branch: self,
                        params: params.to_vec(),
                        group: None,
                        label: format!("B_{n}({})", q.value()),
                        components: vec![value],
                        invalid_because: Some("n = 2^m must be at least 4".into()),
                    });
                }
                let group = match self {
                    BPowerOfTwo if n >= 4 && n.is_power_of_two() && q.p() != 2 => {
                        SimpleGroupId::B { n, q }
                    }
                    CPowerOfTwo if n >= 2 && n.is_power_of_two() => SimpleGroupId::C { n, q },
                    TwistedDPowerOfTwo if n >= 4 && n.is_power_of_two() => {
                        SimpleGroupId::TwistedD { n, q }
                    }
                    _ => return None,
                };
                valid(self, params, group)
            }
            Psl2 => valid(
                self,
                params,
                SimpleGroupId::Psl {
                    n: 2,
                    q: pp(one(0)?)?,
                },
            ),
            E6 => valid(self, params, SimpleGroupId::E6 { q: pp(one(0)?)? }),
            TwistedE6 => {
                let q = pp(one(0)?)?;
                if q.value() == 2 {
                    return None;
                }
                valid(self, params, SimpleGroupId::TwistedE6 { q })
            }
            E8 => valid(self, params, SimpleGroupId::E8 { q: pp(one(0)?)? }),
            F4 => valid(self, params, SimpleGroupId::F4 { q: pp(one(0)?)? }),
            TriD4 => valid(self, params, SimpleGroupId::TriD4 { q: pp(one(0)?)? }),
            CPrime => {
                let (p, q) = (one(0)?, one(1)?);
                if p < 3 || !is_prime(p) || !matches!(q, 2 | 3) {
                    return None;
                }
                valid(
                    self,
                    params,
                    SimpleGroupId::C {
                        n: p as u32,
                        q: pp(q)?,
                    },
                )
            }
            BPrimeThree => {
                let p = one(0)?;
                if p < 3 || !is_prime(p) {
                    return None;
                }
                valid(
                    self,
                    params,
                    SimpleGroupId::B {
                        n: p as u32,
                        q: pp(3)?,
                    },
                )
            }
            DPrimePlusOne => {
                let (p, q) = (one(0)?, one(1)?);
                if p < 3 || !is_prime(p) || !matches!(q, 2 | 3) {
                    return None;
                }
                valid(
                    self,
                    params,
                    SimpleGroupId::D {
                        n: p as u32 + 1,
                        q: pp(q)?,
                    },
                )
            }
            DPrime => {
                let (p, q) = (one(0)?, one(1)?);
                if p < 5 || !is_prime(p) || !matches!(q, 2 | 3 | 5) {
                    return None;
                }
                valid(
                    self,
                    params,
                    SimpleGroupId::D {
                        n: p as u32,
                        q: pp(q)?,
                    },
                )
            }
            TwistedDTwo => {
                let n = one(0)? as u32;
                if n < 5 || !(n - 1).is_power_of_two() {
                    return None;
                }
                valid(self, params, SimpleGroupId::TwistedD { n, q: pp(2)? })
            }
            TwistedDPrimeThree => {
                let p = one(0)?;
                if p < 5 || !is_prime(p) {
                    return None;
                }
                valid(
                    self,
                    params,
                    SimpleGroupId::TwistedD {
                        n: p as u32,
                        q: pp(3)?,
                    },
                )
            }
            TwistedDThreeComposite => {
                let n = one(0)? as u32;
                if n < 9 || !(n - 1).is_power_of_two() || is_prime(n as u64) {
                    return None;
                }
                valid(self, params, SimpleGroupId::TwistedD { n, q: pp(3)? })
            }
            Special => {
                let group = *special_groups().get(one(0)? as usize)?;
                valid(self, params, group)
            }
        }
    }

    /// Every instance with some component `<= t_max`, parameters capped by
    /// `aux_max` where given. Returns `None` once `budget` instances have
    /// been generated.
    pub fn enumerate(
        self,
        t_max: u128,
        aux_max: Option<u64>,
        budget: u64,
    ) -> Option<Vec<Instance>> {
        let mut out = Vec::new();
        let mut spent = 0u64;
        let mut push = |inst: Option<Instance>, out: &mut Vec<Instance>| -> Option<bool> {
            spent += 1;
            if spent > budget {
                return None;
            }
            match inst {
                Some(i) => {
                    let small = i.components.iter().any(|&c| c <= t_max);
                    let min = i.components.iter().copied().min().unwrap_or(u128::MAX);
                    if small {
                        out.push(i);
                    }
                    Some(min <= t_max)
                }
                None => Some(true),
            }
        };
        let cap = |default: u64| aux_max.map_or(default, |a| a.min(default));
        let t64 = u64::try_from(t_max).unwrap_or(u64::MAX);
        let prime_powers = |limit: u64| crate::ntheory::prime_power_range(limit);
        use Branch::*;
        match self {
            Alternating => {
                for n in 5..=cap(t64.saturating_add(2)) {
                    push(self.instance(&[n]), &mut out)?;
                }
            }
            UnitaryPrime | LinearPrime | UnitaryPrimePlusOne | LinearPrimePlusOne => {
                // Components grow like q'^(p'-1); p' <= log2(t_max) + 2 suffices.
                let p_limit = 128 - t_max.leading_zeros() as u64 + 2;
                for p in primes_up_to(p_limit).into_iter().filter(|&p| p >= 3) {
                    let q_limit = cap((t_max as f64).powf(1.0 / (p as f64 - 1.0)) as u64 + 2);
                    for q in prime_powers(q_limit.max(2)) {
                        push(self.instance(&[p, q.value()]), &mut out)?;
                    }
                }
            }
            Ree2G2 | Suzuki | Ree2F4 => {
                let start = if self == Ree2G2 { 0 } else { 1 };
                for m in start..=cap(40) {
                    if !push(self.instance(&[m]), &mut out)? {
                        break;
                    }
                }
            }
            G2 | E6 | TwistedE6 | E8 | F4 | TriD4 => {
                let degree = match self {
                    G2 => 2.0,
                    E6 | TwistedE6 => 6.0,
                    E8 | F4 | TriD4 => 4.0,
                    _ => unreachable!(),
                };
                let limit = cap((t_max as f64).powf(1.0 / degree) as u64 + 2);
                for q in prime_powers(limit.max(2)) {
                    push(self.instance(&[q.value()]), &mut out)?;
                }
            }
            BPowerOfTwo | CPowerOfTwo | TwistedDPowerOfTwo => {
                let mut n = if self == CPowerOfTwo { 2u64 } else { 4 };
                while n <= 64 {
                    let limit = cap((2.0 * t_max as f64 + 2.0).powf(1.0 / n as f64) as u64 + 2);
                    for q in prime_powers(limit.max(2)) {
                        push(self.instance(&[n, q.value()]), &mut out)?;
                    }
                    n *= 2;
                }
            }
            Psl2 => {
                for q in prime_powers(cap(t64.saturating_mul(2).saturating_add(1))) {
                    push(self.instance(&[q.value()]), &mut out)?;
                }
            }
            CPrime | DPrimePlusOne | DPrime => {
                for q in [2u64, 3, 5] {
                    for p in primes_up_to(cap(90)) {
                        if !push(self.instance(&[p, q]), &mut out)? {
                            break;
                        }
                    }
                }
            }
            BPrimeThree | TwistedDPrimeThree => {
                for p in primes_up_to(cap(90)) {
                    if !push(self.instance(&[p]), &mut out)? {
                        break;
                    }
                }
            }
            TwistedDTwo | TwistedDThreeComposite => {
                for k in 2..=cap(6) as u32 {
                    let n = (1u64 << k) + 1;
                    if !push(self.instance(&[n]), &mut out)? {
                        break;
                    }
                }
            }
            Special => {
                for i in 0..special_groups().len() as u64 {
                    push(self.instance(&[i]), &mut out)?;
                }
            }
        }
        Some(out)
    }
}

/// `(q'^n + 1) / 2 = target` for the candidates `q` produced by the
/// divisibility step `(q - 2)/3 | 24` of the symplectic/orthogonal case:
/// returns `(q', n)` when `2 * target - 1` is a prime power.
pub fn power_plus_one_half(target: u64) -> Option<(u64, u32)> {
    prime_power_decompose(2 * target - 1)
}

pub fn d_of(q: u64) -> u64 {
    gcd(3, q + 1)
}
