//! Deciding the Magnus property by counting classes against normal closures.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::group::{Group, Sub};
use crate::set::ElementSet;
use crate::structure::class_closures;

/// Orders at or below which the counting verdict is re-derived pairwise.
pub const PAIRWISE_CHECK_ORDER: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MagnusReport {
    pub mp: bool,
    pub smp: bool,
    pub a_count: usize,
    pub b_count: usize,
    pub all_real: bool,
    /// Class representatives `(x, y)` with equal normal closures that are neither
    /// conjugate nor inverse-conjugate.
    pub witness: Option<(usize, usize)>,
}

/// `A(G)` as pairs `(c, c^-1)` of class indices with `c <= c^-1`, and `B(G)`.
#[derive(Clone, Debug)]
pub struct MagnusSets {
    pub a: Vec<(usize, usize)>,
    pub b: Vec<ElementSet>,
    /// `a_to_b[i]` is the index in `b` of the closure of the classes in `a[i]`.
    pub a_to_b: Vec<usize>,
}

pub fn magnus_sets(g: &Group) -> MagnusSets {
    let cd = g.classes();
    let closures = class_closures(g);
    let mut b: Vec<ElementSet> = Vec::new();
    let mut b_index: HashMap<&ElementSet, usize> = HashMap::new();
    let mut class_to_b = Vec::with_capacity(cd.count());
    for n in closures {
        let next = b.len();
        let id = *b_index.entry(n).or_insert(next);
        if id == next {
            b.push(n.clone());
        }
        class_to_b.push(id);
    }
    let mut a = Vec::new();
    let mut a_to_b = Vec::new();
    for c in 0..cd.count() {
        let inv = cd.inverse_class[c];
        if c <= inv {
            a.push((c, inv));
            a_to_b.push(class_to_b[c]);
        }
    }
    MagnusSets { a, b, a_to_b }
}

/// MP/SMP verdict from the class counts, re-derived pairwise (and asserted equal) up to
/// [`PAIRWISE_CHECK_ORDER`].
pub fn magnus_status(g: &Group) -> MagnusReport {
    let report = magnus_counting(g);
    if g.order() <= PAIRWISE_CHECK_ORDER {
        let oracle = magnus_pairwise(g);
        assert_eq!(
            oracle.is_none(),
            report.mp,
            "counting criterion and pairwise definition disagree on {}",
            g.name()
        );
    }
    report
}

/// The counting verdict alone.
pub fn magnus_counting(g: &Group) -> MagnusReport {
    let cd = g.classes();
    let sets = magnus_sets(g);
    let (a_count, b_count) = (sets.a.len(), sets.b.len());
    let mp = a_count == b_count;
    let all_real = (0..cd.count()).all(|c| cd.is_real(c));
    let witness = if mp { None } else { least_witness(g) };
    MagnusReport {
        mp,
        smp: mp && all_real,
        a_count,
        b_count,
        all_real,
        witness,
    }
}

/// Least pair of class indices violating the property, mapped to representatives.
fn least_witness(g: &Group) -> Option<(usize, usize)> {
    let cd = g.classes();
    let closures = class_closures(g);
    for c in 0..cd.count() {
        for d in c + 1..cd.count() {
            if d != cd.inverse_class[c] && closures[c] == closures[d] {
                return Some((cd.reps[c], cd.reps[d]));
            }
        }
    }
    None
}

/// The definition checked directly: for each pair of classes, compare the subgroups
/// generated by the full classes. Returns the least violating pair of representatives.
pub fn magnus_pairwise(g: &Group) -> Option<(usize, usize)> {
    let cd = g.classes();
    let gen: Vec<ElementSet> = (0..cd.count()).map(|c| Sub::generated(g, cd.members(c)).set).collect();
    for c in 0..cd.count() {
        for d in c + 1..cd.count() {
            let same = gen[c].contains(cd.reps[d]) && gen[d].contains(cd.reps[c]);
            if same && d != cd.inverse_class[c] {
                return Some((cd.reps[c], cd.reps[d]));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
