//! Isomorphism testing: invariant pruning, then backtracking over generator images.

use super::{center, Group, GroupHom, Sub};
use crate::structure;

/// Isomorphism-invariant summary used to reject non-isomorphic pairs early.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted `(element order, count)` pairs.
    pub order_histogram: Vec<(usize, usize)>,
    /// Sorted `(element order, class size)` per conjugacy class.
    pub classes: Vec<(usize, usize)>,
    pub center: usize,
    /// Length of the derived series and whether it reaches the trivial group.
    pub derived: (usize, bool),
}

pub fn fingerprint(g: &Group) -> &Fingerprint {
    g.cache_fingerprint().get_or_init(|| {
        let cd = g.classes();
        let mut hist = std::collections::BTreeMap::new();
        let mut classes = Vec::with_capacity(cd.count());
        for c in 0..cd.count() {
            *hist.entry(cd.element_orders[c]).or_insert(0) += cd.sizes[c];
            classes.push((cd.element_orders[c], cd.sizes[c]));
        }
        classes.sort_unstable();
        let ds = structure::derived_series(g);
        Fingerprint {
            order: g.order(),
            order_histogram: hist.into_iter().collect(),
            classes,
            center: center(g).size(),
            derived: (ds.derived_length, ds.solvable),
        }
    })
}

/// Result of an isomorphism test. `Unknown` means the node budget ran out.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(GroupHom),
    NotIsomorphic,
    Unknown,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    /// `Some(true/false)` when decided, `None` when the budget ran out.
    pub fn decided(&self) -> Option<bool> {
        match self {
            IsoVerdict::Isomorphic(_) => Some(true),
            IsoVerdict::NotIsomorphic => Some(false),
            IsoVerdict::Unknown => None,
        }
    }
}

fn normal_orders(g: &Group) -> Option<Vec<usize>> {
    let ns = structure::all_normal_subgroups(g).ok()?;
    let mut v: Vec<usize> = ns.iter().map(|n| n.size()).collect();
    v.sort_unstable();
    Some(v)
}

pub fn is_isomorphic(g: &Group, h: &Group) -> IsoVerdict {
    if g.order() != h.order() || fingerprint(g) != fingerprint(h) {
        return IsoVerdict::NotIsomorphic;
    }
    if let (Some(a), Some(b)) = (normal_orders(g), normal_orders(h)) {
        if a != b {
            return IsoVerdict::NotIsomorphic;
        }
    }
    let budget = g.caps().iso_nodes;
    let mut search = Search::new(g, h, budget);
    match search.run() {
        Some(image) => {
            let hom = GroupHom::new_unchecked(g.clone(), h.clone(), image);
            debug_assert!(hom.validate().is_ok() && hom.is_bijective());
            IsoVerdict::Isomorphic(hom)
        }
        None if search.exhausted => IsoVerdict::Unknown,
        None => IsoVerdict::NotIsomorphic,
    }
}

struct Search<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    img: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a Group, h: &'a Group, budget: u64) -> Self {
        let (cg, ch) = (g.classes(), h.classes());
        let key_g = |x: usize| (cg.element_orders[cg.class(x)], cg.sizes[cg.class(x)]);
        let key_h = |x: usize| (ch.element_orders[ch.class(x)], ch.sizes[ch.class(x)]);
        let mut pool: std::collections::HashMap<(usize, usize), Vec<usize>> = Default::default();
        for y in h.elements() {
            pool.entry(key_h(y)).or_default().push(y);
        }
        // Generators: prefer elements with few possible images and large order.
        let mut order: Vec<usize> = g.elements().skip(1).collect();
        order.sort_by_key(|&x| {
            let k = key_g(x);
            (pool.get(&k).map_or(0, |v| v.len()), usize::MAX - k.0, x)
        });
        let mut sub = Sub::trivial(g);
        let mut gens = Vec::new();
        for x in order {
            if sub.set.size() == g.order() {
                break;
            }
            if !sub.set.contains(x) {
                sub = sub.extend(g, x);
                gens.push(x);
            }
        }
        let candidates = gens
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let all = pool.get(&key_g(x)).cloned().unwrap_or_default();
                if i == 0 {
                    // Composing with inner automorphisms of h fixes the first image up to conjugacy.
                    let mut seen = std::collections::HashSet::new();
                    all.into_iter().filter(|&y| seen.insert(ch.class(y))).collect()
                } else {
                    all
                }
            })
            .collect();
        let mut img = vec![UNSET; g.order()];
        img[0] = 0;
        let mut used = vec![false; h.order()];
        used[0] = true;
        Search {
            g,
            h,
            gens,
            candidates,
            img,
            used,
            mapped: vec![0],
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        if self.g.order() == 1 {
            return Some(vec![0]);
        }
        if self.descend(0) {
            Some(self.img.clone())
        } else {
            None
        }
    }

    fn descend(&mut self, level: usize) -> bool {
        if level == self.gens.len() {
            return self.mapped.len() == self.g.order();
        }
        let cands = self.candidates[level].clone();
        for y in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return false;
            }
            let mark = self.mapped.len();
            if self.assign(level, y) && self.descend(level + 1) {
                return true;
            }
            if self.exhausted {
                return false;
            }
            for &x in &self.mapped[mark..] {
                self.used[self.img[x]] = false;
                self.img[x] = UNSET;
            }
            self.mapped.truncate(mark);
        }
        false
    }

    /// Sends `gens[level]` to `y` and propagates over the subgroup generated so far.
    fn assign(&mut self, level: usize, y: usize) -> bool {
        let (g, h) = (self.g, self.h);
        let x = self.gens[level];
        let gen_imgs: Vec<(usize, usize)> = (0..=level)
            .map(|i| {
                let s = self.gens[i];
                (s, if i == level { y } else { self.img[s] })
            })
            .collect();
        let mut queue: Vec<usize> = self.mapped.clone();
        let mut i = 0;
        // The new generator itself may already be forced by earlier ones.
        if self.img[x] != UNSET && self.img[x] != y {
            return false;
        }
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            let ia = self.img[a];
            for &(s, is) in &gen_imgs {
                let b = g.mul(a, s);
                let ib = h.mul(ia, is);
                if self.img[b] == UNSET {
                    if self.used[ib] {
                        return false;
                    }
                    self.img[b] = ib;
                    self.used[ib] = true;
                    self.mapped.push(b);
                    queue.push(b);
                } else if self.img[b] != ib {
                    return false;
                }
            }
        }
        true
    }
}
