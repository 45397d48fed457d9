//! Brute-force oracles shared by the unit tests.

use std::collections::BTreeSet;

use crate::group::Group;
use crate::set::ElementSet;

/// Closure under products by naive fixpoint iteration.
pub fn naive_closure(g: &Group, seeds: &[usize]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = seeds.iter().copied().collect();
    s.insert(0);
    loop {
        let cur: Vec<usize> = s.iter().copied().collect();
        let before = s.len();
        for &a in &cur {
            for &b in &cur {
                s.insert(g.mul(a, b));
            }
        }
        if s.len() == before {
            return s;
        }
    }
}

pub fn to_set(g: &Group, s: &BTreeSet<usize>) -> ElementSet {
    ElementSet::from_elements(g.order(), s.iter().copied())
}

/// Every subgroup, as closures of all subsets of size at most `log2 |G|`.
pub fn naive_subgroups(g: &Group) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let depth = (usize::BITS - n.leading_zeros()) as usize;
    let mut out = BTreeSet::new();
    let mut frontier: BTreeSet<Vec<usize>> = BTreeSet::new();
    frontier.insert(vec![0]);
    out.insert(vec![0]);
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for h in &frontier {
            for x in 0..n {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut seeds = h.clone();
                seeds.push(x);
                let c: Vec<usize> = naive_closure(g, &seeds).into_iter().collect();
                if out.insert(c.clone()) {
                    next.insert(c);
                }
            }
        }
        frontier = next;
    }
    out
}

pub fn is_conjugation_invariant(g: &Group, s: &[usize]) -> bool {
    s.iter().all(|&x| g.elements().all(|t| s.binary_search(&g.conjugate(x, t)).is_ok()))
}

pub fn naive_normal_subgroups(g: &Group) -> BTreeSet<Vec<usize>> {
    naive_subgroups(g).into_iter().filter(|s| is_conjugation_invariant(g, s)).collect()
}

pub fn naive_class(g: &Group, x: usize) -> BTreeSet<usize> {
    g.elements().map(|t| g.conjugate(x, t)).collect()
}

pub fn order_histogram(g: &Group) -> std::collections::BTreeMap<usize, usize> {
    let mut h = std::collections::BTreeMap::new();
    for x in g.elements() {
        *h.entry(g.element_order(x)).or_insert(0) += 1;
    }
    h
}
