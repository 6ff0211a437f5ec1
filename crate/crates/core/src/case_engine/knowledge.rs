//! Element orders of comparison groups used by the divisibility and
//! adjacency filters. Family rules come from cyclic maximal tori; the few
//! fixed entries are checked against explicit matrices in the tests.

use serde::{Deserialize, Serialize};

use crate::group_orders::{SimpleGroupId, Sporadic as SporadicName};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownOrder {
    pub order: u128,
    pub source: &'static str,
}

fn known(order: u128, source: &'static str) -> KnownOrder {
    KnownOrder { order, source }
}

pub fn known_element_orders(group: &SimpleGroupId) -> Vec<KnownOrder> {
    use SimpleGroupId::*;
    match *group {
        Psl { n: 2, q } => {
            let v = q.value() as u128;
            let e = if v % 2 == 1 { 2 } else { 1 };
            vec![
                known(q.p() as u128, "unipotent element"),
                known((v - 1) / e, "split torus (q' - 1)/(2, q' - 1), cyclic"),
                known((v + 1) / e, "nonsplit torus (q' + 1)/(2, q' - 1), cyclic"),
            ]
        }
        Psl { n: 3, q } if q.value() == 3 => {
            vec![known(6, "diag(-u, 1) with u a transvection of GL2(3)")]
        }
        Psl { n: 3, q } if q.value() == 7 => {
            vec![known(
                14,
                "diag(l*u, l^-2) with l of order 6 and u a transvection, modulo scalars",
            )]
        }
        Psl { n: 4, q } if q.value() == 3 => {
            vec![known(9, "unipotent Jordan block of size 4 over GF(3)")]
        }
        C { n, q } => {
            let v = q.value() as u128;
            let e = if v % 2 == 1 { 2 } else { 1 };
            match v.checked_pow(n) {
                Some(x) => vec![known(
                    (x - 1) / e,
                    "cyclic torus GL1(q'^n) in Sp_2n(q'), modulo -1",
                )],
                None => Vec::new(),
            }
        }
        Sporadic {
            name: SporadicName::Tits,
        } => vec![
            known(6, "ATLAS element orders of 2F4(2)'"),
            known(10, "ATLAS element orders of 2F4(2)'"),
        ],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    //! Each fixed entry is realized by a matrix whose projective order is
    //! computed directly over a prime field.

    type M = Vec<Vec<u64>>;

    fn mul(a: &M, b: &M, p: u64) -> M {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p)
                    .collect()
            })
            .collect()
    }

    fn is_scalar(a: &M) -> bool {
        let n = a.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    a[i][j] == a[0][0]
                } else {
                    a[i][j] == 0
                }
            })
        })
    }

    fn projective_order(a: &M, p: u64) -> u64 {
        let mut x = a.clone();
        let mut k = 1;
        while !is_scalar(&x) {
            x = mul(&x, a, p);
            k += 1;
        }
        k
    }

    fn det(a: &M, p: u64) -> u64 {
        let n = a.len();
        if n == 1 {
            return a[0][0] % p;
        }
        let mut acc = 0u64;
        for c in 0..n {
            let minor: M = (1..n)
                .map(|i| (0..n).filter(|&j| j != c).map(|j| a[i][j]).collect())
                .collect();
            let term = a[0][c] * det(&minor, p) % p;
            acc = if c % 2 == 0 {
                (acc + term) % p
            } else {
                (acc + p - term) % p
            };
        }
        acc
    }

    #[test]
    fn psl3_3_has_order_6() {
        let a = vec![vec![2, 2, 0], vec![0, 2, 0], vec![0, 0, 1]];
        assert_eq!(det(&a, 3), 1);
        assert_eq!(projective_order(&a, 3), 6);
    }

    #[test]
    fn psl3_7_has_order_14() {
        // l = 3 has order 6 mod 7; l^-2 = 4.
        let a = vec![vec![3, 3, 0], vec![0, 3, 0], vec![0, 0, 4]];
        assert_eq!(det(&a, 7), 1);
        assert_eq!(projective_order(&a, 7), 14);
    }

    #[test]
    fn psl4_3_has_order_9() {
        let a: M = (0..4)
            .map(|i| (0..4).map(|j| u64::from(i == j || j == i + 1)).collect())
            .collect();
        assert_eq!(det(&a, 3), 1);
        assert_eq!(projective_order(&a, 3), 9);
    }

    #[test]
    fn psp4_5_has_order_12() {
        // Companion matrix of x^2 - x + 2, primitive over GF(5), and its
        // inverse transpose: symplectic for [[0, I], [-I, 0]].
        let a: M = vec![vec![0, 3], vec![1, 1]];
        let mut x = a.clone();
        let mut k = 1;
        while x != vec![vec![1, 0], vec![0, 1]] {
            x = mul(&x, &a, 5);
            k += 1;
        }
        assert_eq!(k, 24);
        // a^-T via the adjugate: a^-1 = det^-1 [[1, -3], [-1, 0]], det = 2.
        let inv_det = 3;
        let ainv: M = vec![
            vec![inv_det, (5 - 3) * inv_det % 5],
            vec![(5 - 1) * inv_det % 5, 0],
        ];
        assert!(is_scalar(&mul(&a, &ainv, 5)) && mul(&a, &ainv, 5)[0][0] == 1);
        let ainv_t: M = vec![vec![ainv[0][0], ainv[1][0]], vec![ainv[0][1], ainv[1][1]]];
        let mut g: M = vec![vec![0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                g[i][j] = a[i][j];
                g[i + 2][j + 2] = ainv_t[i][j];
            }
        }
        let j: M = vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![4, 0, 0, 0],
            vec![0, 4, 0, 0],
        ];
        let gt: M = (0..4).map(|r| (0..4).map(|c| g[c][r]).collect()).collect();
        assert_eq!(mul(&mul(&gt, &j, 5), &g, 5), j);
        assert_eq!(projective_order(&g, 5), 12);
    }
}
