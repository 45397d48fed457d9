//! Normal-subgroup machinery: closures, the normal lattice, quotients and series.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::group::{build_from_permutations_with, Group, GroupHom, Sub};
use crate::set::ElementSet;

/// Normal closure of the seeds under conjugation by `conj`, as an extendable subgroup.
pub(crate) fn normal_closure_sub(g: &Group, seeds: impl IntoIterator<Item = usize>, conj: &[usize]) -> Sub {
    close_under_conjugation(g, Sub::generated(g, seeds), conj)
}

pub(crate) fn close_under_conjugation(g: &Group, mut n: Sub, conj: &[usize]) -> Sub {
    let inv: Vec<usize> = conj.iter().map(|&s| g.inverse(s)).collect();
    let mut i = 0;
    while i < n.gens.len() {
        let t = n.gens[i];
        for (&s, &si) in conj.iter().zip(&inv) {
            let c = g.mul(g.mul(si, t), s);
            if !n.set.contains(c) {
                n = n.extend(g, c);
            }
        }
        i += 1;
    }
    n
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &Group, s: &ElementSet) -> ElementSet {
    normal_closure_sub(g, s.iter(), g.generators()).set
}

/// `<x^G>` for every class representative, indexed by class.
pub fn class_closures(g: &Group) -> &[ElementSet] {
    g.cache_class_closures().get_or_init(|| {
        let cd = g.classes();
        cd.reps
            .iter()
            .map(|&x| normal_closure_sub(g, [x], g.generators()).set)
            .collect()
    })
}

pub fn is_normal(g: &Group, s: &ElementSet) -> bool {
    crate::group::is_subgroup(g, s)
        && s.iter()
            .all(|x| g.generators().iter().all(|&t| s.contains(g.conjugate(x, t))))
}

/// Every normal subgroup, as the join-closure of the class closures, in canonical order.
pub fn all_normal_subgroups(g: &Group) -> Result<Arc<Vec<ElementSet>>> {
    g.cache_normal().get_or_init(|| compute_normal_lattice(g)).clone()
}

fn compute_normal_lattice(g: &Group) -> Result<Arc<Vec<ElementSet>>> {
    let cap = g.caps().normal_count;
    let cd = g.classes();
    let closures = class_closures(g);
    // Atoms: distinct class closures, each with one class representative generating it.
    let mut atoms: Vec<(usize, &ElementSet)> = Vec::new();
    let mut seen_atoms = std::collections::HashSet::new();
    for (c, n) in closures.iter().enumerate().skip(1) {
        if seen_atoms.insert(n) {
            atoms.push((cd.reps[c], n));
        }
    }
    let mut subs: Vec<Sub> = vec![Sub::trivial(g)];
    let mut index: HashMap<ElementSet, usize> = HashMap::new();
    index.insert(subs[0].set.clone(), 0);
    let mut i = 0;
    while i < subs.len() {
        for &(rep, _) in &atoms {
            if subs[i].set.contains(rep) {
                continue;
            }
            let joined = close_under_conjugation(g, subs[i].extend(g, rep), g.generators());
            if !index.contains_key(&joined.set) {
                if subs.len() >= cap {
                    return Err(Error::LatticeCapExceeded { cap });
                }
                index.insert(joined.set.clone(), subs.len());
                subs.push(joined);
            }
        }
        i += 1;
    }
    let mut out: Vec<ElementSet> = subs.into_iter().map(|s| s.set).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(Arc::new(out))
}

#[derive(Clone, Debug)]
pub struct MinimalNormal {
    pub subgroups: Vec<ElementSet>,
    pub socle: ElementSet,
    pub monolithic: bool,
}

/// Minimal normal subgroups: the inclusion-minimal nontrivial class closures.
pub fn minimal_normal_subgroups(g: &Group) -> MinimalNormal {
    let mut atoms: Vec<ElementSet> = class_closures(g).iter().skip(1).cloned().collect();
    atoms.sort_by(|a, b| a.canonical_cmp(b));
    atoms.dedup();
    let minimal: Vec<ElementSet> = atoms
        .iter()
        .filter(|a| !atoms.iter().any(|b| b.size() < a.size() && b.is_subset(a)))
        .cloned()
        .collect();
    let socle_seeds = minimal.iter().flat_map(|m| m.iter()).collect::<Vec<_>>();
    let socle = Sub::generated(g, socle_seeds).set;
    MinimalNormal {
        monolithic: minimal.len() == 1,
        subgroups: minimal,
        socle,
    }
}

/// Coset labelling of `g` by the normal subgroup `n`; representatives are least indices.
pub(crate) struct Cosets {
    pub of: Vec<u32>,
    pub reps: Vec<usize>,
}

pub(crate) fn cosets(g: &Group, n: &ElementSet) -> Cosets {
    let members = n.to_vec();
    let mut of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in &members {
            of[g.mul(x, m)] = id;
        }
    }
    Cosets { of, reps }
}

/// `g / n` with its canonical projection.
pub fn quotient(g: &Group, n: &ElementSet) -> Result<(Group, GroupHom)> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let cs = cosets(g, n);
    let m = cs.reps.len();
    let cap = g.caps().dense_limit();
    if m > cap {
        return Err(Error::OrderCapExceeded { order: m, cap });
    }
    let mut table = vec![0u16; m * m];
    for (i, &a) in cs.reps.iter().enumerate() {
        for (j, &b) in cs.reps.iter().enumerate() {
            table[i * m + j] = cs.of[g.mul(a, b)] as u16;
        }
    }
    let gens = g.generators().iter().map(|&s| cs.of[s] as usize).collect();
    let name = format!("{}/N{}", paren(g.name()), n.size());
    let q = Group::from_trusted_table(name, crate::group::BackendKind::DenseTable, table, m, gens, *g.caps());
    let image = cs.of.iter().map(|&c| c as usize).collect();
    let hom = GroupHom::new_unchecked(g.clone(), q.clone(), image);
    Ok((q, hom))
}

fn paren(s: &str) -> String {
    if s.chars().all(|c| c.is_alphanumeric() || "()_,:".contains(c)) {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Largest normal subgroup of `g` inside `h`: the union of the classes contained in `h`.
pub fn normal_core(g: &Group, h: &ElementSet) -> ElementSet {
    let cd = g.classes();
    let mut hits = vec![0usize; cd.count()];
    for x in h.iter() {
        hits[cd.class(x)] += 1;
    }
    ElementSet::from_elements(g.order(), h.iter().filter(|&x| hits[cd.class(x)] == cd.sizes[cd.class(x)]))
}

#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub series: Vec<ElementSet>,
    pub solvable: bool,
    pub derived_length: usize,
}

/// `G >= G' >= G'' >= ...` until it stabilizes.
pub fn derived_series(g: &Group) -> DerivedSeries {
    let mut cur = Sub::generated(g, g.generators().iter().copied());
    let mut series = vec![cur.set.clone()];
    loop {
        if cur.set.size() == 1 {
            let len = series.len() - 1;
            return DerivedSeries {
                series,
                solvable: true,
                derived_length: len,
            };
        }
        let gens = cur.gens.clone();
        let comms: Vec<usize> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.commutator(a, b))
            .collect();
        let next = normal_closure_sub(g, comms, &gens);
        if next.set.size() == cur.set.size() {
            let len = series.len() - 1;
            return DerivedSeries {
                series,
                solvable: false,
                derived_length: len,
            };
        }
        series.push(next.set.clone());
        cur = next;
    }
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g).solvable
}

/// Product of the largest normal p-subgroups over all primes.
pub fn fitting_subgroup(g: &Group) -> ElementSet {
    let cd = g.classes();
    let seeds: Vec<usize> = class_closures(g)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, n)| prime_power(n.size() as u64).is_some())
        .map(|(c, _)| cd.reps[c])
        .collect();
    normal_closure_sub(g, seeds, g.generators()).set
}

/// Largest normal p-subgroup.
pub fn p_core(g: &Group, p: u64) -> ElementSet {
    let cd = g.classes();
    let seeds: Vec<usize> = class_closures(g)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, n)| prime_power(n.size() as u64).is_some_and(|(q, _)| q == p))
        .map(|(c, _)| cd.reps[c])
        .collect();
    normal_closure_sub(g, seeds, g.generators()).set
}

pub fn is_nilpotent(g: &Group) -> bool {
    fitting_subgroup(g).size() == g.order()
}

/// Least `n` with `F_n(G) = G`.
pub fn fitting_height(g: &Group) -> Result<usize> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    let mut h = 0;
    let mut cur = g.trivial_set();
    while cur.size() < g.order() {
        let (q, pi) = quotient(g, &cur)?;
        let fq = fitting_subgroup(&q);
        cur = ElementSet::from_elements(g.order(), g.elements().filter(|&x| fq.contains(pi.apply(x))));
        h += 1;
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    /// Order of the factor `chain[i+1] / chain[i]`.
    pub order: usize,
    /// The prime when the factor has prime-power order.
    pub prime: Option<u64>,
    pub rank: u32,
    /// Elements centralizing the factor.
    pub centralizer: ElementSet,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub chain: Vec<ElementSet>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }

    /// Largest rank of a chief p-factor, 0 when there is none.
    pub fn p_rank(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .filter(|f| f.prime == Some(p))
            .map(|f| f.rank)
            .max()
            .unwrap_or(0)
    }

    pub fn is_supersolvable(&self) -> bool {
        self.factors.iter().all(|f| f.prime.is_some() && f.rank == 1)
    }
}

/// How to pick among the minimal normal subgroups above the current term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Least order, then least new element.
    Least,
    /// Greatest order, then greatest new element.
    Greatest,
}

pub fn chief_series(g: &Group) -> ChiefSeries {
    chief_series_with(g, TieBreak::Least)
}

pub fn chief_series_with(g: &Group, tie: TieBreak) -> ChiefSeries {
    chief_series_between(g, Sub::trivial(g), &g.full_set(), tie)
}

/// Chief series of `g` from the normal subgroup `bottom` up to the normal subgroup `top`.
pub(crate) fn chief_series_between(g: &Group, bottom: Sub, top: &ElementSet, tie: TieBreak) -> ChiefSeries {
    let cd = g.classes();
    let mut cur = bottom;
    let mut chain = vec![cur.set.clone()];
    let mut factors = Vec::new();
    while cur.set.size() < top.size() {
        let mut cands: Vec<(Sub, usize)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for &x in &cd.reps {
            if cur.set.contains(x) || !top.contains(x) {
                continue;
            }
            let m = close_under_conjugation(g, cur.extend(g, x), g.generators());
            if seen.insert(m.set.clone()) {
                let new_min = m.set.iter().find(|&y| !cur.set.contains(y)).unwrap();
                cands.push((m, new_min));
            }
        }
        let minimal: Vec<&(Sub, usize)> = cands
            .iter()
            .filter(|(a, _)| !cands.iter().any(|(b, _)| b.set.size() < a.set.size() && b.set.is_subset(&a.set)))
            .collect();
        let pick = match tie {
            TieBreak::Least => minimal.iter().min_by_key(|(m, e)| (m.set.size(), *e)),
            TieBreak::Greatest => minimal.iter().max_by_key(|(m, e)| (m.set.size(), *e)),
        }
        .expect("a proper normal subgroup has a chief factor above it");
        let next = pick.0.clone();
        let order = next.set.size() / cur.set.size();
        let (prime, rank) = match prime_power(order as u64) {
            Some((p, k)) => (Some(p), k),
            None => (None, 0),
        };
        let centralizer = factor_centralizer(g, &next, &cur.set);
        factors.push(ChiefFactor {
            order,
            prime,
            rank,
            centralizer,
        });
        chain.push(next.set.clone());
        cur = next;
    }
    ChiefSeries { chain, factors }
}

/// `C_G(M/N) = { g : [m, g] in N for all m in M }`.
pub(crate) fn factor_centralizer(g: &Group, m: &Sub, n: &ElementSet) -> ElementSet {
    ElementSet::from_elements(
        g.order(),
        g.elements().filter(|&x| m.gens.iter().all(|&t| n.contains(g.commutator(t, x)))),
    )
}

/// Conjugation action of `g` on a chief factor.
#[derive(Clone, Debug)]
pub struct FactorAction {
    /// The action as a permutation group on the cosets of the lower term.
    pub image: Group,
    pub hom: GroupHom,
    /// Kernel of the action, `C_G(M/N)`.
    pub centralizer: ElementSet,
}

fn factor_points(g: &Group, upper: &ElementSet, lower: &ElementSet) -> (Vec<usize>, HashMap<usize, usize>) {
    // Cosets of `lower` inside `upper`, labelled by least element.
    let cs = cosets(g, lower);
    let mut reps = Vec::new();
    let mut point_of = HashMap::new();
    for x in upper.iter() {
        let c = cs.of[x] as usize;
        if let std::collections::hash_map::Entry::Vacant(e) = point_of.entry(c) {
            e.insert(reps.len());
            reps.push(x);
        }
    }
    let mut by_elem = HashMap::new();
    for x in upper.iter() {
        by_elem.insert(x, point_of[&(cs.of[x] as usize)]);
    }
    (reps, by_elem)
}

pub fn chief_factor_action(g: &Group, series: &ChiefSeries, step: usize) -> Result<FactorAction> {
    let (lower, upper) = (&series.chain[step], &series.chain[step + 1]);
    let (reps, point) = factor_points(g, upper, lower);
    let deg = reps.len();
    let gen_perms: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|&s| reps.iter().map(|&m| point[&g.conjugate(m, s)]).collect())
        .collect();
    let image = build_from_permutations_with(deg, &gen_perms, g.caps(), format!("Act({})", g.name()))?;
    let hom = hom_from_generator_images(g, &image, &gen_perms)?;
    Ok(FactorAction {
        centralizer: hom.kernel(),
        image,
        hom,
    })
}

/// The semidirect product `M ⋊ G/C_G(M)` of a chief factor with its acting group,
/// as a permutation group on the factor (translations plus the conjugation action).
pub fn chief_factor_semidirect(g: &Group, series: &ChiefSeries, step: usize) -> Result<Group> {
    let (lower, upper) = (&series.chain[step], &series.chain[step + 1]);
    let (reps, point) = factor_points(g, upper, lower);
    let deg = reps.len();
    let mut gens: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|&s| reps.iter().map(|&m| point[&g.conjugate(m, s)]).collect())
        .collect();
    for &t in reps.iter().skip(1) {
        gens.push(reps.iter().map(|&m| point[&g.mul(m, t)]).collect());
    }
    build_from_permutations_with(deg, &gens, g.caps(), format!("Hol({})", g.name()))
}

/// Finds the index of a permutation in a permutation group.
pub(crate) fn index_of_permutation(h: &Group, perm: &[usize]) -> Option<usize> {
    h.elements().find(|&y| {
        h.permutation(y)
            .is_some_and(|p| p.iter().zip(perm).all(|(&a, &b)| a as usize == b))
    })
}

/// Homomorphism from `g` determined by images of its generators in a permutation group.
pub(crate) fn hom_from_generator_images(g: &Group, h: &Group, gen_perms: &[Vec<usize>]) -> Result<GroupHom> {
    let gen_img: Vec<usize> = gen_perms
        .iter()
        .map(|p| index_of_permutation(h, p).ok_or_else(|| Error::InvalidHom("generator image not found".into())))
        .collect::<Result<_>>()?;
    let mut image = vec![usize::MAX; g.order()];
    image[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &hs) in g.generators().iter().zip(&gen_img) {
            let y = g.mul(x, s);
            let iy = h.mul(image[x], hs);
            if image[y] == usize::MAX {
                image[y] = iy;
                queue.push(y);
            } else if image[y] != iy {
                return Err(Error::InvalidHom(format!("inconsistent image at {y}")));
            }
        }
    }
    Ok(GroupHom::new_unchecked(g.clone(), h.clone(), image))
}
