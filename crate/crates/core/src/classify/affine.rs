//! Point-stabilizer orbit data for affine groups `V ⋊ G0`, and Frobenius decompositions.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTable, SemilinearMap};
use crate::group::Group;
use crate::lattice::all_subgroups;
use crate::set::ElementSet;
use crate::structure::{all_normal_subgroups, is_normal};

/// The additive group of `F_q` or `F_p^2`, with tabulated addition.
#[derive(Clone, Debug)]
pub(crate) struct Space {
    pub q: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    /// Additive generators.
    pub basis: Vec<usize>,
}

impl Space {
    pub fn field(f: &FieldTable) -> Space {
        let q = f.q;
        let add = (0..q * q).map(|i| f.add(i / q, i % q) as u16).collect();
        let neg = (0..q).map(|v| f.neg(v) as u16).collect();
        let basis = (0..f.n).map(|i| f.p.pow(i as u32)).collect();
        Space { q, add, neg, basis }
    }

    /// `F_p^2` with `(x, y)` at index `x + p y`.
    pub fn plane(p: usize) -> Space {
        let q = p * p;
        let sum = |u: usize, v: usize| (u % p + v % p) % p + p * ((u / p + v / p) % p);
        let add = (0..q * q).map(|i| sum(i / q, i % q) as u16).collect();
        let neg = (0..q).map(|v| ((p - v % p) % p + p * ((p - v / p) % p)) as u16).collect();
        Space {
            q,
            add,
            neg,
            basis: vec![1, p],
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn translations(&self) -> Vec<Vec<usize>> {
        self.basis.iter().map(|&t| (0..self.q).map(|v| self.add(v, t)).collect()).collect()
    }

    /// Size of the additive subgroup generated by `seeds`.
    pub fn span_size(&self, seeds: impl IntoIterator<Item = usize>) -> usize {
        let mut inside = vec![false; self.q];
        inside[0] = true;
        let mut elems = vec![0];
        for s in seeds {
            if inside[s] {
                continue;
            }
            let base = elems.clone();
            let mut m = s;
            while !inside[m] {
                for &b in &base {
                    let v = self.add(b, m);
                    inside[v] = true;
                    elems.push(v);
                }
                m = self.add(m, s);
            }
            if elems.len() == self.q {
                break;
            }
        }
        elems.len()
    }
}

/// Orbit structure of `G0` on the vectors, with the flags used by the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AffineAnalysis {
    pub q: usize,
    pub g0_order: usize,
    /// Orbit sizes, orbits ordered by least element (so `{0}` comes first).
    pub orbit_sizes: Vec<usize>,
    /// Least element of each orbit, same order.
    pub orbit_reps: Vec<usize>,
    pub rank: usize,
    pub two_transitive: bool,
    /// Nonzero vectors form one orbit, or two orbits swapped by negation.
    pub mp_hypothesis: bool,
    /// No proper nontrivial invariant additive subgroup.
    pub irreducible: bool,
}

/// Translations `(x, y)` with full normal closures that are neither conjugate nor
/// inverse-conjugate, available when the orbit condition fails.
pub(crate) fn orbit_witness(space: &Space, orbit_of: &[usize]) -> Option<(usize, usize)> {
    let x = 1;
    let (a, b) = (orbit_of[x], orbit_of[space.neg(x)]);
    (1..space.q).find(|&y| orbit_of[y] != a && orbit_of[y] != b).map(|y| (x, y))
}

/// Orbit ids of the group generated by `gens` (permutations of `0..q`), numbered by least element.
pub(crate) fn orbits(q: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut id = vec![usize::MAX; q];
    let mut next = 0;
    for start in 0..q {
        if id[start] != usize::MAX {
            continue;
        }
        id[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for g in gens {
                let w = g[v];
                if id[w] == usize::MAX {
                    id[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    id
}

pub(crate) fn analyze(space: &Space, gens: &[Vec<usize>], g0_order: usize) -> (AffineAnalysis, Vec<usize>) {
    let q = space.q;
    let orbit_of = orbits(q, gens);
    let count = orbit_of.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0; count];
    let mut reps = vec![usize::MAX; count];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..q {
        let o = orbit_of[v];
        sizes[o] += 1;
        reps[o] = reps[o].min(v);
        members[o].push(v);
    }
    let nonzero = count - 1;
    let mp_hypothesis = match nonzero {
        0 | 1 => true,
        2 => orbit_of[space.neg(reps[1])] != orbit_of[reps[1]],
        _ => false,
    };
    let irreducible = members.iter().skip(1).all(|m| space.span_size(m.iter().copied()) == q);
    let analysis = AffineAnalysis {
        q,
        g0_order,
        orbit_sizes: sizes,
        orbit_reps: reps,
        rank: count,
        two_transitive: count == 2,
        mp_hypothesis,
        irreducible,
    };
    (analysis, orbit_of)
}

/// Closure of a set of semilinear maps under composition.
pub(crate) fn semilinear_closure(f: &FieldTable, gens: &[SemilinearMap]) -> Vec<SemilinearMap> {
    let mut seen: HashSet<SemilinearMap> = HashSet::from([SemilinearMap::IDENTITY]);
    let mut out = vec![SemilinearMap::IDENTITY];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for g in gens {
            let y = x.then(f, g);
            if seen.insert(y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Orbit analysis of `G0 = <gens> <= ΓL(1,q)` on `F_q`.
pub fn affine_analysis(q: u64, gens: &[SemilinearMap]) -> Result<AffineAnalysis> {
    let f = FieldTable::new(q)?;
    for g in gens {
        if !g.is_valid(&f) || g.shift != 0 {
            return Err(Error::ParameterOutOfRange(format!("{g:?} is not an element of GammaL(1,{q})")));
        }
    }
    let order = semilinear_closure(&f, gens).len();
    let perms: Vec<Vec<usize>> = gens.iter().map(|g| g.as_permutation(&f)).collect();
    Ok(analyze(&Space::field(&f), &perms, order).0)
}

/// A candidate splitting `G = N ⋊ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub kernel: ElementSet,
    pub complement: ElementSet,
}

/// True when `N` is a normal subgroup complemented by `H`, both nontrivial, and no
/// nonidentity element of `H` centralizes a nonidentity element of `N`.
pub fn is_frobenius(g: &Group, d: &FrobeniusDecomposition) -> bool {
    let (n, h) = (&d.kernel, &d.complement);
    if n.universe() != g.order() || h.universe() != g.order() || n.size() < 2 || h.size() < 2 {
        return false;
    }
    if !crate::group::is_subgroup(g, n) || !crate::group::is_subgroup(g, h) || !is_normal(g, n) {
        return false;
    }
    if n.size() * h.size() != g.order() || n.intersection(h).size() != 1 {
        return false;
    }
    h.iter().skip(1).all(|x| n.iter().skip(1).all(|y| g.mul(x, y) != g.mul(y, x)))
}

/// First valid decomposition, kernels in canonical normal-lattice order.
pub fn frobenius_decomposition(g: &Group) -> Result<Option<FrobeniusDecomposition>> {
    let normals = all_normal_subgroups(g)?;
    let mut subs: Option<Vec<ElementSet>> = None;
    for n in normals.iter() {
        if n.size() < 2 || n.size() == g.order() {
            continue;
        }
        let need = g.order() / n.size();
        let subs = match &subs {
            Some(s) => s,
            None => subs.insert(all_subgroups(g)?),
        };
        for h in subs.iter().filter(|h| h.size() == need) {
            let d = FrobeniusDecomposition {
                kernel: n.clone(),
                complement: h.clone(),
            };
            if is_frobenius(g, &d) {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

/// `G0` generated by permutations of the vectors, as a group.
pub(crate) fn stabilizer_group(space: &Space, gens: &[Vec<usize>], caps: &crate::Caps, name: String) -> Result<Group> {
    crate::group::build_from_permutations_with(space.q, gens, caps, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{affine_semidirect, named_group, Atom};
    use crate::field::FieldTable;
    use proptest::prelude::*;

    #[test]
    fn rank_three_at_seven() {
        let a = affine_analysis(7, &[SemilinearMap::linear(2, 0)]).unwrap();
        assert_eq!(a.orbit_sizes, vec![1, 3, 3]);
        assert_eq!(a.orbit_reps, vec![0, 1, 3]);
        assert_eq!(a.rank, 3);
        assert!(a.mp_hypothesis && a.irreducible && !a.two_transitive);
        assert_eq!(a.g0_order, 3);
    }

    #[test]
    fn quaternion_stabilizer_at_nine() {
        let f = FieldTable::new(9).unwrap();
        // ω^2 generates C4; ω φ squares to ω^4 = -1 and inverts ω^2.
        let gens = [SemilinearMap::linear(f.omega_pow(2), 0), SemilinearMap::linear(f.omega_pow(1), 1)];
        let a = affine_analysis(9, &gens).unwrap();
        assert_eq!(a.g0_order, 8);
        assert!(a.two_transitive && a.mp_hypothesis && a.irreducible);
        let g0 = named_group(&Atom::Q8).unwrap();
        let h = affine_semidirect(9, &gens).unwrap();
        let (stab, _) = h.group.subgroup_as_group(&h.stabilizer, "G0").unwrap();
        assert!(crate::is_isomorphic(&stab, &g0).is_isomorphic());
    }

    #[test]
    fn negation_fixing_orbits_breaks_the_hypothesis() {
        let a = affine_analysis(5, &[SemilinearMap::linear(4, 0)]).unwrap();
        assert_eq!(a.orbit_sizes, vec![1, 2, 2]);
        assert!(!a.mp_hypothesis);
        assert!(a.irreducible);
    }

    #[test]
    fn reducible_subfield_action() {
        // Multiplication by F_2^* inside F_4 is trivial: every line is invariant.
        let a = affine_analysis(4, &[]).unwrap();
        assert!(!a.irreducible);
        assert_eq!(a.rank, 4);
        let f = FieldTable::new(16).unwrap();
        // ω^5 has order 3 and generates F_4^* inside F_16, whose orbits span only F_4.
        let a = affine_analysis(16, &[SemilinearMap::linear(f.omega_pow(5), 0)]).unwrap();
        assert!(!a.irreducible);
    }

    #[test]
    fn span_sizes() {
        let f = FieldTable::new(27).unwrap();
        let s = Space::field(&f);
        assert_eq!(s.span_size([1]), 3);
        assert_eq!(s.span_size([1, 3]), 9);
        assert_eq!(s.span_size([1, 3, 9]), 27);
        let pl = Space::plane(5);
        assert_eq!(pl.span_size([6]), 5);
        assert_eq!(pl.span_size([6, 1]), 25);
        assert_eq!(pl.neg(7), 23);
    }

    #[test]
    fn frobenius_examples() {
        let agl = named_group(&Atom::Agl1(5)).unwrap();
        let d = frobenius_decomposition(&agl).unwrap().unwrap();
        assert_eq!((d.kernel.size(), d.complement.size()), (5, 4));
        assert!(is_frobenius(&agl, &d));
        let s3 = named_group(&Atom::Symmetric(3)).unwrap();
        assert!(frobenius_decomposition(&s3).unwrap().is_some());
        let c6 = named_group(&Atom::Cyclic(6)).unwrap();
        let c3: ElementSet = ElementSet::from_elements(6, c6.elements().filter(|&x| 3 % c6.element_order(x) == 0));
        let c2: ElementSet = ElementSet::from_elements(6, c6.elements().filter(|&x| 2 % c6.element_order(x) == 0));
        let d = FrobeniusDecomposition {
            kernel: c3,
            complement: c2,
        };
        assert!(!is_frobenius(&c6, &d));
        assert!(frobenius_decomposition(&c6).unwrap().is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn analysis_invariants(qi in 0usize..8, raw in proptest::collection::vec((0usize..1000, 0usize..8), 0..3)) {
            let q = [4u64, 5, 7, 8, 9, 16, 25, 27][qi];
            let f = FieldTable::new(q).unwrap();
            let gens: Vec<SemilinearMap> =
                raw.iter().map(|&(k, t)| SemilinearMap::linear(f.omega_pow(k % (f.q - 1)), t % f.n)).collect();
            let a = affine_analysis(q, &gens).unwrap();
            prop_assert!(a.rank >= 2);
            prop_assert_eq!(a.orbit_sizes.iter().sum::<usize>(), q as usize);
            prop_assert_eq!(a.orbit_sizes[0], 1);
            prop_assert!(!a.two_transitive || a.mp_hypothesis);
            prop_assert!(a.orbit_sizes.iter().all(|s| a.g0_order % s == 0));
        }
    }
}
