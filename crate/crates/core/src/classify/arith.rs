//! Arithmetic side facts: the degree bound, `|2^a - 3^b| = 1`, and abelian groups.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::constructors::abelian;
use crate::error::Result;
use crate::field::prime_factors;
use crate::magnus::magnus_status;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeBound {
    /// `m <= 50` with `C_m` MP.
    pub cyclic_mp_orders: Vec<usize>,
    /// Largest `m <= 200` with `φ(m) <= 2ℓ`, `ℓ` the largest cyclic MP order.
    pub m_max: usize,
    pub bound: usize,
}

pub fn euler_phi(m: usize) -> usize {
    prime_factors(m as u64).iter().fold(m, |acc, &p| acc / p as usize * (p as usize - 1))
}

/// Largest `m <= limit` with `φ(m) <= k`.
pub fn largest_with_phi_at_most(k: usize, limit: usize) -> usize {
    (1..=limit).filter(|&m| euler_phi(m) <= k).max().unwrap_or(0)
}

pub fn degree_bound() -> Result<DegreeBound> {
    let mut cyclic = Vec::new();
    for m in 1..=50u64 {
        if magnus_status(&abelian(&[m])?).mp {
            cyclic.push(m as usize);
        }
    }
    let l = *cyclic.last().expect("C1 is MP");
    let m_max = largest_with_phi_at_most(2 * l, 200);
    Ok(DegreeBound {
        cyclic_mp_orders: cyclic,
        m_max,
        bound: 1 + 2 * m_max * l,
    })
}

/// All `(a, b)` with `a <= a_max`, `b <= b_max` and `|2^a - 3^b| = 1`.
pub fn power23_solutions(a_max: u32, b_max: u32) -> BTreeSet<(u32, u32)> {
    let one = BigUint::from(1u32);
    let mut out = BTreeSet::new();
    let mut two = BigUint::from(1u32);
    for a in 0..=a_max {
        let mut three = BigUint::from(1u32);
        for b in 0..=b_max {
            if &two + &one == three || &three + &one == two {
                out.insert((a, b));
            }
            three *= 3u32;
        }
        two *= 2u32;
    }
    out
}

/// Partitions of `k` into nonincreasing parts.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(k: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=k.min(max)).rev() {
            cur.push(part);
            go(k - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n`, as ascending lists of elementary divisors.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for p in prime_factors(n) {
        let mut k = 0;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        let mut next = Vec::new();
        for base in &acc {
            for part in partitions(k) {
                let mut d = base.clone();
                d.extend(part.iter().map(|&e| p.pow(e)));
                next.push(d);
            }
        }
        acc = next;
    }
    for d in &mut acc {
        d.sort_unstable();
    }
    acc.sort();
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AbelianRow {
    pub divisors: Vec<u64>,
    pub mp: bool,
    pub smp: bool,
    /// Shape `C2^n x C3^m` or `C2^n x C4^m`.
    pub predicted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianSurvey {
    pub rows: Vec<AbelianRow>,
}

impl AbelianSurvey {
    pub fn mismatches(&self) -> impl Iterator<Item = &AbelianRow> {
        self.rows.iter().filter(|r| r.mp != r.predicted)
    }
}

pub fn abelian_shape(divisors: &[u64]) -> bool {
    divisors.iter().all(|d| [2, 3].contains(d)) || divisors.iter().all(|d| [2, 4].contains(d))
}

pub fn abelian_survey(order_max: u64) -> Result<AbelianSurvey> {
    let mut rows = Vec::new();
    for n in 1..=order_max {
        for divisors in abelian_groups_of_order(n) {
            let r = magnus_status(&abelian(&divisors)?);
            rows.push(AbelianRow {
                predicted: abelian_shape(&divisors),
                divisors,
                mp: r.mp,
                smp: r.smp,
            });
        }
    }
    Ok(AbelianSurvey { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_is_505() {
        let b = degree_bound().unwrap();
        assert_eq!(b.cyclic_mp_orders, vec![1, 2, 3, 4, 6]);
        assert_eq!(euler_phi(42), 12);
        assert_eq!(b.m_max, 42);
        assert_eq!(b.bound, 505);
        assert_eq!(largest_with_phi_at_most(2, 200), 6);
    }

    #[test]
    fn phi_matches_gcd_count() {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for m in 1..300 {
            assert_eq!(euler_phi(m), (1..=m).filter(|&k| gcd(k, m) == 1).count(), "{m}");
        }
    }

    #[test]
    fn power23() {
        let four: BTreeSet<(u32, u32)> = [(1, 0), (1, 1), (2, 1), (3, 2)].into();
        assert_eq!(power23_solutions(60, 40), four);
        assert!(power23_solutions(0, 0).is_empty());
        assert_eq!(power23_solutions(1, 1), [(1, 0), (1, 1)].into());
    }

    #[test]
    fn abelian_counts() {
        // Number of abelian groups of order n: product of partition numbers of exponents.
        let counts: Vec<usize> = [1u64, 8, 16, 72, 128].iter().map(|&n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 5, 6, 15]);
        assert_eq!(abelian_groups_of_order(12), vec![vec![2, 2, 3], vec![3, 4]]);
    }

    #[test]
    fn abelian_examples() {
        let s = abelian_survey(32).unwrap();
        let find = |d: &[u64]| s.rows.iter().find(|r| r.divisors == d).unwrap().clone();
        assert!(find(&[2, 4, 4]).mp);
        assert!(!find(&[8]).mp);
        let e = find(&[2, 2, 2]);
        assert!(e.mp && e.smp);
        assert_eq!(s.mismatches().count(), 0);
    }
}
