//! The full subgroup lattice and the quantities read off it.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::group::{is_isomorphic, Group, IsoVerdict, Sub};
use crate::set::ElementSet;
use crate::structure::{normal_core, quotient};

/// Every subgroup in canonical order, with the cover relation.
#[derive(Debug)]
pub struct SubgroupLattice {
    pub subgroups: Vec<ElementSet>,
    /// `upper[i]`: indices of the subgroups containing subgroup `i` as a maximal subgroup.
    pub upper: Vec<Vec<u32>>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn maximal_indices(&self) -> Vec<usize> {
        let top = self.top() as u32;
        (0..self.top()).filter(|&i| self.upper[i] == [top]).collect()
    }

    /// Inverse of `upper`.
    pub fn lower(&self) -> Vec<Vec<u32>> {
        let mut lower = vec![Vec::new(); self.len()];
        for (i, ups) in self.upper.iter().enumerate() {
            for &u in ups {
                lower[u as usize].push(i as u32);
            }
        }
        lower
    }
}

/// Every subgroup of `g`, cached.
pub fn subgroup_lattice(g: &Group) -> Result<Arc<SubgroupLattice>> {
    g.cache_lattice().get_or_init(|| compute_lattice(g)).clone()
}

pub fn all_subgroups(g: &Group) -> Result<Vec<ElementSet>> {
    Ok(subgroup_lattice(g)?.subgroups.clone())
}

fn compute_lattice(g: &Group) -> Result<Arc<SubgroupLattice>> {
    let caps = g.caps();
    if g.order() > caps.lattice_order {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: caps.lattice_order,
        });
    }
    let n = g.order();
    // Cyclic subgroups of prime-power order generate every subgroup.
    let mut atom_of = vec![u32::MAX; n];
    let mut atoms: Vec<usize> = Vec::new();
    for x in 1..n {
        if atom_of[x] != u32::MAX || prime_power(g.element_order(x) as u64).is_none() {
            continue;
        }
        let id = atoms.len() as u32;
        atoms.push(x);
        let ord = g.element_order(x);
        let mut y = x;
        for k in 1..ord {
            if gcd(k, ord) == 1 {
                atom_of[y] = id;
            }
            y = g.mul(y, x);
        }
    }

    let mut subs: Vec<Sub> = vec![Sub::trivial(g)];
    let mut index: HashMap<ElementSet, u32> = HashMap::new();
    index.insert(subs[0].set.clone(), 0);
    let mut joins: Vec<Vec<u32>> = Vec::new();
    let mut seen = vec![u32::MAX; atoms.len()];
    let mut i = 0;
    while i < subs.len() {
        let h = subs[i].clone();
        let mut found: Vec<u32> = Vec::new();
        for (a, &x) in atoms.iter().enumerate() {
            if seen[a] == i as u32 || h.set.contains(x) {
                continue;
            }
            // <H, x> = <H, x^h>: handle one atom per H-orbit.
            let mut orbit = vec![x];
            seen[a] = i as u32;
            let mut k = 0;
            while k < orbit.len() {
                let y = orbit[k];
                k += 1;
                for &t in &h.gens {
                    let z = g.conjugate(y, t);
                    let b = atom_of[z] as usize;
                    if seen[b] != i as u32 {
                        seen[b] = i as u32;
                        orbit.push(atoms[b]);
                    }
                }
            }
            let j = h.extend(g, x);
            let id = match index.get(&j.set) {
                Some(&id) => id,
                None => {
                    if subs.len() >= caps.subgroup_count {
                        return Err(Error::SubgroupCountCapExceeded {
                            cap: caps.subgroup_count,
                        });
                    }
                    let id = subs.len() as u32;
                    index.insert(j.set.clone(), id);
                    subs.push(j);
                    id
                }
            };
            if !found.contains(&id) {
                found.push(id);
            }
        }
        joins.push(found);
        i += 1;
    }

    // Upper covers are the minimal one-step joins.
    let upper: Vec<Vec<u32>> = joins
        .iter()
        .map(|js| {
            js.iter()
                .copied()
                .filter(|&a| {
                    let sa = &subs[a as usize].set;
                    !js.iter().any(|&b| {
                        let sb = &subs[b as usize].set;
                        sb.size() < sa.size() && sb.is_subset(sa)
                    })
                })
                .collect()
        })
        .collect();

    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by(|&a, &b| subs[a].set.canonical_cmp(&subs[b].set));
    let mut rank = vec![0u32; subs.len()];
    for (r, &old) in order.iter().enumerate() {
        rank[old] = r as u32;
    }
    let mut sorted_upper = vec![Vec::new(); subs.len()];
    for (old, ups) in upper.into_iter().enumerate() {
        let mut u: Vec<u32> = ups.into_iter().map(|x| rank[x as usize]).collect();
        u.sort_unstable();
        sorted_upper[rank[old] as usize] = u;
    }
    let mut sets: Vec<Option<ElementSet>> = subs.into_iter().map(|s| Some(s.set)).collect();
    let subgroups = order.iter().map(|&o| sets[o].take().unwrap()).collect();
    Ok(Arc::new(SubgroupLattice {
        subgroups,
        upper: sorted_upper,
    }))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Maximal proper subgroups, in canonical order.
pub fn maximal_subgroups(g: &Group) -> Result<Vec<ElementSet>> {
    let lat = subgroup_lattice(g)?;
    Ok(lat.maximal_indices().into_iter().map(|i| lat.subgroups[i].clone()).collect())
}

/// Intersection of the maximal subgroups; the trivial group is its own Frattini subgroup.
pub fn frattini(g: &Group) -> Result<ElementSet> {
    let mut acc = g.full_set();
    for m in maximal_subgroups(g)? {
        acc.intersect_with(&m);
    }
    Ok(acc)
}

fn p_exponent(index: usize, p: u64) -> Option<u32> {
    if index == 1 {
        return Some(0);
    }
    match prime_power(index as u64) {
        Some((q, k)) if q == p => Some(k),
        _ => None,
    }
}

/// Largest `s` such that some maximal subgroup has index `p^s`; 0 when none does.
pub fn s_p(g: &Group, p: u64) -> Result<u32> {
    Ok(maximal_subgroups(g)?
        .iter()
        .filter_map(|m| p_exponent(g.order() / m.size(), p))
        .max()
        .unwrap_or(0))
}

/// Largest `k` such that `p^k` is the index of a maximal subgroup in a maximal chain.
pub fn j_p(g: &Group, p: u64) -> Result<u32> {
    let lat = subgroup_lattice(g)?;
    // Every cover pair sits in some maximal chain from 1 to G, so a walk down from G sees them all.
    let lower = lat.lower();
    let mut best = 0;
    let mut visited = vec![false; lat.len()];
    let mut stack = vec![lat.top()];
    visited[lat.top()] = true;
    while let Some(k) = stack.pop() {
        for &h in &lower[k] {
            let h = h as usize;
            let idx = lat.subgroups[k].size() / lat.subgroups[h].size();
            if let Some(e) = p_exponent(idx, p) {
                best = best.max(e);
            }
            if !visited[h] {
                visited[h] = true;
                stack.push(h);
            }
        }
    }
    Ok(best)
}

/// Least maximal subgroup with trivial normal core, when one exists.
pub fn is_primitive(g: &Group) -> Result<Option<ElementSet>> {
    if g.order() == 1 {
        return Ok(None);
    }
    Ok(maximal_subgroups(g)?.into_iter().find(|m| normal_core(g, m).size() == 1))
}

/// `G / core(M)` over the maximal subgroups `M`, deduplicated up to isomorphism.
pub fn primitive_quotients(g: &Group) -> Result<Vec<Group>> {
    let mut cores: Vec<ElementSet> = maximal_subgroups(g)?.iter().map(|m| normal_core(g, m)).collect();
    cores.sort_by(|a, b| a.canonical_cmp(b));
    cores.dedup();
    let mut kernel = g.full_set();
    for c in &cores {
        kernel.intersect_with(c);
    }
    debug_assert_eq!(kernel, frattini(g)?);
    let mut out: Vec<Group> = Vec::new();
    for c in cores.iter().rev() {
        let (q, _) = quotient(g, c)?;
        let mut dup = false;
        for h in &out {
            match is_isomorphic(&q, h) {
                IsoVerdict::Isomorphic(_) => {
                    dup = true;
                    break;
                }
                IsoVerdict::NotIsomorphic => {}
                IsoVerdict::Unknown => {
                    return Err(Error::SearchBudgetExceeded {
                        budget: g.caps().iso_nodes,
                    })
                }
            }
        }
        if !dup {
            out.push(q);
        }
    }
    out.sort_by_key(|q| q.order());
    Ok(out)
}

/// Summary of the lattice quantities for one group.
#[derive(Clone, Debug)]
pub struct LatticeSummary {
    pub subgroup_count: usize,
    pub maximal: Vec<ElementSet>,
    pub frattini: ElementSet,
    /// `(p, S_p, j_p)` for each prime dividing the order.
    pub per_prime: Vec<(u64, u32, u32)>,
}

pub fn lattice_summary(g: &Group) -> Result<LatticeSummary> {
    let lat = subgroup_lattice(g)?;
    let per_prime = crate::field::prime_factors(g.order() as u64)
        .into_iter()
        .map(|p| Ok((p, s_p(g, p)?, j_p(g, p)?)))
        .collect::<Result<_>>()?;
    Ok(LatticeSummary {
        subgroup_count: lat.len(),
        maximal: maximal_subgroups(g)?,
        frattini: frattini(g)?,
        per_prime,
    })
}
