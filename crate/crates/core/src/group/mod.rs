//! Finite groups as index sets with a multiplication oracle.
//!
//! Every backend numbers its elements `0..order` with `0` the identity.
//! Higher layers only ever see indices, so the same algorithms run on dense
//! Cayley tables, enumerated permutation groups and lazy direct products.

mod cayley;
mod classes;
pub(crate) mod enumerate;
mod hom;
mod iso;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use cayley::{parse_cayley_text, to_cayley_text, CayleyText};
pub use classes::{conjugacy_classes, ClassData};
pub use hom::GroupHom;
pub use iso::{fingerprint, is_isomorphic, Fingerprint, IsoVerdict};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::set::ElementSet;
use enumerate::{enumerate, Enumeration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    DenseTable,
    PermutationClosure,
    DirectProduct,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::DenseTable => "dense-table",
            BackendKind::PermutationClosure => "permutation-closure",
            BackendKind::DirectProduct => "direct-product-composite",
        })
    }
}

/// Immutable handle to a finite group. Cloning is cheap.
#[derive(Clone)]
pub struct Group {
    name: Arc<str>,
    data: Arc<GroupData>,
}

struct GroupData {
    order: usize,
    kind: BackendKind,
    mul: Mul,
    inverse: Option<Vec<u32>>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    perms: Option<PermRep>,
    caps: Caps,
    cache: Cache,
}

#[derive(Default)]
struct Cache {
    classes: OnceLock<ClassData>,
    class_closures: OnceLock<Vec<ElementSet>>,
    normal: OnceLock<Result<Arc<Vec<ElementSet>>>>,
    lattice: OnceLock<Result<Arc<SubgroupLattice>>>,
    fingerprint: OnceLock<Fingerprint>,
}

enum Mul {
    Table(Vec<u16>),
    PermOracle(PermOracle),
    Product(Product),
}

/// Permutation images of every element, `degree` entries per element.
struct PermRep {
    degree: usize,
    images: Vec<u16>,
}

struct PermOracle {
    index: HashMap<Vec<u16>, u32>,
}

struct Product {
    factors: Vec<Group>,
    /// `strides[i]` is the weight of coordinate `i`; the first factor is most significant.
    strides: Vec<usize>,
}

impl Product {
    #[inline]
    fn decode(&self, mut x: usize, out: &mut [usize]) {
        for (i, &s) in self.strides.iter().enumerate() {
            out[i] = x / s;
            x %= s;
        }
    }
}

impl Group {
    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same group under another display name; caches are shared.
    pub fn renamed(&self, name: impl Into<String>) -> Group {
        Group {
            name: Arc::from(name.into()),
            data: self.data.clone(),
        }
    }

    pub fn backend(&self) -> BackendKind {
        self.data.kind
    }

    pub fn caps(&self) -> &Caps {
        &self.data.caps
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.data.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.data.labels.as_deref()
    }

    /// Display label of an element, falling back to its index.
    pub fn label(&self, x: usize) -> String {
        match &self.data.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn same_group(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.data.mul {
            Mul::Table(t) => t[a * self.data.order + b] as usize,
            Mul::PermOracle(o) => {
                let rep = self.data.perms.as_ref().expect("oracle backend keeps permutations");
                let d = rep.degree;
                let pa = &rep.images[a * d..(a + 1) * d];
                let pb = &rep.images[b * d..(b + 1) * d];
                let prod: Vec<u16> = pa.iter().map(|&i| pb[i as usize]).collect();
                o.index[&prod] as usize
            }
            Mul::Product(p) => {
                let mut acc = 0;
                let (mut a, mut b) = (a, b);
                for (f, &s) in p.factors.iter().zip(&p.strides) {
                    let (ca, cb) = (a / s, b / s);
                    a %= s;
                    b %= s;
                    acc += f.mul(ca, cb) * s;
                }
                acc
            }
        }
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        match &self.data.inverse {
            Some(inv) => inv[x] as usize,
            None => match &self.data.mul {
                Mul::Product(p) => {
                    let mut acc = 0;
                    let mut x = x;
                    for (f, &s) in p.factors.iter().zip(&p.strides) {
                        acc += f.inverse(x / s) * s;
                        x %= s;
                    }
                    acc
                }
                _ => unreachable!("non-product backends store inverses"),
            },
        }
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Permutation image of `x` when the group came from a permutation closure.
    pub fn permutation(&self, x: usize) -> Option<&[u16]> {
        self.data.perms.as_ref().map(|r| &r.images[x * r.degree..(x + 1) * r.degree])
    }

    pub fn degree(&self) -> Option<usize> {
        self.data.perms.as_ref().map(|r| r.degree)
    }

    /// Factors of a direct-product composite.
    pub fn product_factors(&self) -> Option<&[Group]> {
        match &self.data.mul {
            Mul::Product(p) => Some(&p.factors),
            _ => None,
        }
    }

    /// Coordinates of `x` in a direct-product composite.
    pub fn product_coordinates(&self, x: usize) -> Option<Vec<usize>> {
        match &self.data.mul {
            Mul::Product(p) => {
                let mut out = vec![0; p.factors.len()];
                p.decode(x, &mut out);
                Some(out)
            }
            _ => None,
        }
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    pub fn trivial_set(&self) -> ElementSet {
        ElementSet::singleton(self.order(), 0)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    // ---- construction ----

    fn from_parts(
        name: String,
        kind: BackendKind,
        mul: Mul,
        inverse: Option<Vec<u32>>,
        order: usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
        perms: Option<PermRep>,
        caps: Caps,
    ) -> Group {
        let mut generators: Vec<usize> = generators.into_iter().filter(|&g| g != 0).collect();
        generators.sort_unstable();
        generators.dedup();
        Group {
            name: Arc::from(name),
            data: Arc::new(GroupData {
                order,
                kind,
                mul,
                inverse,
                generators,
                labels,
                perms,
                caps,
                cache: Cache::default(),
            }),
        }
    }

    /// Group from a table already known to satisfy the axioms with identity 0.
    pub(crate) fn from_trusted_table(
        name: impl Into<String>,
        kind: BackendKind,
        table: Vec<u16>,
        order: usize,
        generators: Vec<usize>,
        caps: Caps,
    ) -> Group {
        let inverse = table_inverses(&table, order);
        Group::from_parts(
            name.into(),
            kind,
            Mul::Table(table),
            Some(inverse),
            order,
            generators,
            None,
            None,
            caps,
        )
    }

    /// Dense group from an enumeration of objects closed under an associative product.
    pub(crate) fn from_enumeration<T>(
        name: impl Into<String>,
        kind: BackendKind,
        en: &Enumeration<T>,
        caps: &Caps,
    ) -> Result<Group> {
        let n = en.len();
        if n > caps.dense_limit() {
            return Err(Error::OrderCapExceeded {
                order: n,
                cap: caps.dense_limit(),
            });
        }
        Ok(Group::from_trusted_table(
            name,
            kind,
            en.table(),
            n,
            en.gen_index.clone(),
            *caps,
        ))
    }

    /// Builds the subgroup `h` of `self` as a group in its own right.
    ///
    /// Returns the group and the embedding map from its indices to indices of `self`.
    pub fn subgroup_as_group(&self, h: &ElementSet, name: impl Into<String>) -> Result<(Group, Vec<usize>)> {
        let gens = generating_set(self, h);
        let en = enumerate(0usize, &gens, |&a, &b| self.mul(a, b), h.size().max(1))?;
        let embedding = en.elems.clone();
        let mut g = Group::from_enumeration(name, BackendKind::DenseTable, &en, &self.data.caps)?;
        if let Some(labels) = &self.data.labels {
            let l = embedding.iter().map(|&x| labels[x].clone()).collect();
            Arc::get_mut(&mut g.data).expect("fresh group").labels = Some(l);
        }
        Ok((g, embedding))
    }

    pub(crate) fn cache_classes(&self) -> &OnceLock<ClassData> {
        &self.data.cache.classes
    }

    pub(crate) fn cache_class_closures(&self) -> &OnceLock<Vec<ElementSet>> {
        &self.data.cache.class_closures
    }

    pub(crate) fn cache_normal(&self) -> &OnceLock<Result<Arc<Vec<ElementSet>>>> {
        &self.data.cache.normal
    }

    pub(crate) fn cache_lattice(&self) -> &OnceLock<Result<Arc<SubgroupLattice>>> {
        &self.data.cache.lattice
    }

    pub(crate) fn cache_fingerprint(&self) -> &OnceLock<Fingerprint> {
        &self.data.cache.fingerprint
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {}, {})", self.name, self.order(), self.data.kind)
    }
}

fn table_inverses(table: &[u16], n: usize) -> Vec<u32> {
    let mut inv = vec![0u32; n];
    for x in 0..n {
        let row = &table[x * n..(x + 1) * n];
        inv[x] = row.iter().position(|&v| v == 0).expect("latin row contains identity") as u32;
    }
    inv
}

/// Validates a square table and returns the group it defines.
///
/// The identity is moved to index 0 when the table puts it elsewhere; labels
/// (when given) follow their elements.
pub fn build_from_cayley(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Group> {
    build_from_cayley_with(table, labels, &Caps::default())
}

pub fn build_from_cayley_with(table: &[Vec<usize>], labels: Option<Vec<String>>, caps: &Caps) -> Result<Group> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    if n > caps.dense_limit() {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: caps.dense_limit(),
        });
    }
    if let Some(l) = &labels {
        if l.len() != n {
            return Err(Error::MalformedTable(format!("{} labels for {n} elements", l.len())));
        }
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::MalformedTable(format!("row {i} has out-of-range entry {bad}")));
        }
    }
    let mut seen = vec![usize::MAX; n];
    for (i, row) in table.iter().enumerate() {
        for &v in row {
            if seen[v] == i {
                return Err(Error::NotLatinSquare {
                    what: "row",
                    index: i,
                    entry: v,
                });
            }
            seen[v] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for row in table.iter() {
            let v = row[j];
            if seen[v] == j {
                return Err(Error::NotLatinSquare {
                    what: "column",
                    index: j,
                    entry: v,
                });
            }
            seen[v] = j;
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(Error::NoIdentity)?;

    // Relabel so that the identity is index 0.
    let swap = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut flat = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            flat[swap(x) * n + swap(y)] = swap(table[x][y]) as u16;
        }
    }
    let labels = labels.map(|mut l| {
        l.swap(0, e);
        l
    });
    check_associativity(&flat, n, caps)?.map_or(Ok(()), |(a, b, c)| {
        Err(Error::NonAssociative {
            a: swap(a),
            b: swap(b),
            c: swap(c),
        })
    })?;
    let gens = greedy_generators_table(&flat, n);
    let inverse = table_inverses(&flat, n);
    Ok(Group::from_parts(
        format!("Cayley({n})"),
        BackendKind::DenseTable,
        Mul::Table(flat),
        Some(inverse),
        n,
        gens,
        labels,
        None,
        *caps,
    ))
}

fn greedy_generators_table(table: &[u16], n: usize) -> Vec<usize> {
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut gens = Vec::new();
    for x in 1..n {
        if reached[x] {
            continue;
        }
        gens.push(x);
        // Re-close from scratch; this stays well-defined on tables that are not groups.
        reached.fill(false);
        reached[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for &s in &gens {
                let b = table[a * n + s] as usize;
                if !reached[b] {
                    reached[b] = true;
                    queue.push(b);
                }
            }
        }
    }
    gens
}

/// Returns a violating triple (in relabelled indices) if one is found.
fn check_associativity(t: &[u16], n: usize, caps: &Caps) -> Result<Option<(usize, usize, usize)>> {
    let m = |a: usize, b: usize| t[a * n + b] as usize;
    if n <= caps.full_validation {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Ok(Some((a, b, c)));
                    }
                }
            }
        }
        return Ok(None);
    }
    let gens = greedy_generators_table(t, n);
    for &s in &gens {
        for x in 0..n {
            for &u in &gens {
                if m(m(x, s), u) != m(x, m(s, u)) {
                    return Ok(Some((x, s, u)));
                }
                if m(m(s, x), u) != m(s, m(x, u)) {
                    return Ok(Some((s, x, u)));
                }
            }
        }
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6d61676e7573);
    for _ in 0..caps.associativity_samples {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if m(m(a, b), c) != m(a, m(b, c)) {
            return Ok(Some((a, b, c)));
        }
    }
    Ok(None)
}

/// Group generated by permutations of `0..degree`, composed left to right.
///
/// Elements are numbered in breadth-first order of right multiplication by the
/// generators, so element 0 is the identity.
pub fn build_from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Group> {
    build_from_permutations_with(degree, gens, &Caps::default(), format!("Perm({degree})"))
}

pub fn build_from_permutations_with(degree: usize, gens: &[Vec<usize>], caps: &Caps, name: String) -> Result<Group> {
    if degree > u16::MAX as usize {
        return Err(Error::ParameterOutOfRange(format!("degree {degree}")));
    }
    let mut perms: Vec<Vec<u16>> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let mut hit = vec![false; degree];
        if g.len() != degree {
            return Err(Error::NotAPermutation { index: i, degree });
        }
        for &x in g {
            if x >= degree || hit[x] {
                return Err(Error::NotAPermutation { index: i, degree });
            }
            hit[x] = true;
        }
        perms.push(g.iter().map(|&x| x as u16).collect());
    }
    let identity: Vec<u16> = (0..degree as u16).collect();
    let en = enumerate(
        identity,
        &perms,
        |a: &Vec<u16>, b: &Vec<u16>| a.iter().map(|&i| b[i as usize]).collect(),
        caps.closure,
    )?;
    Ok(group_from_perm_enumeration(name, degree, en, caps))
}

pub(crate) fn group_from_perm_enumeration(name: String, degree: usize, en: Enumeration<Vec<u16>>, caps: &Caps) -> Group {
    let n = en.len();
    let mut images = Vec::with_capacity(n * degree);
    for p in &en.elems {
        images.extend_from_slice(p);
    }
    let rep = PermRep { degree, images };
    if n <= caps.dense_limit() {
        let table = en.table();
        let inverse = table_inverses(&table, n);
        Group::from_parts(
            name,
            BackendKind::PermutationClosure,
            Mul::Table(table),
            Some(inverse),
            n,
            en.gen_index.clone(),
            None,
            Some(rep),
            *caps,
        )
    } else {
        let mut inverse = vec![0u32; n];
        for (x, p) in en.elems.iter().enumerate() {
            let mut q = vec![0u16; degree];
            for (i, &v) in p.iter().enumerate() {
                q[v as usize] = i as u16;
            }
            inverse[x] = en.index[&q];
        }
        let gens = en.gen_index.clone();
        Group::from_parts(
            name,
            BackendKind::PermutationClosure,
            Mul::PermOracle(PermOracle { index: en.index }),
            Some(inverse),
            n,
            gens,
            None,
            Some(rep),
            *caps,
        )
    }
}

/// Direct product with componentwise multiplication; no table is materialized.
pub fn build_direct_product(factors: &[Group]) -> Result<Group> {
    let caps = factors.first().map(|g| *g.caps()).unwrap_or_default();
    build_direct_product_with(factors, &caps)
}

pub fn build_direct_product_with(factors: &[Group], caps: &Caps) -> Result<Group> {
    match factors {
        [] => return Err(Error::EmptyProduct),
        [g] => return Ok(g.clone()),
        _ => {}
    }
    let mut order: usize = 1;
    for f in factors {
        order = order.checked_mul(f.order()).filter(|&o| o <= caps.composite).ok_or(Error::OrderCapExceeded {
            order: factors.iter().map(|f| f.order()).fold(1usize, |a, b| a.saturating_mul(b)),
            cap: caps.composite,
        })?;
    }
    let mut strides = vec![1usize; factors.len()];
    for i in (0..factors.len() - 1).rev() {
        strides[i] = strides[i + 1] * factors[i + 1].order();
    }
    let mut gens = Vec::new();
    for (f, &s) in factors.iter().zip(&strides) {
        gens.extend(f.generators().iter().map(|&g| g * s));
    }
    let name = factors.iter().map(|f| wrap_name(f.name())).collect::<Vec<_>>().join(" x ");
    Ok(Group::from_parts(
        name,
        BackendKind::DirectProduct,
        Mul::Product(Product {
            factors: factors.to_vec(),
            strides,
        }),
        None,
        order,
        gens,
        None,
        None,
        *caps,
    ))
}

fn wrap_name(n: &str) -> String {
    if n.contains(" x ") {
        format!("({n})")
    } else {
        n.to_string()
    }
}

// ---- subgroup generation ----

/// A subgroup carried with its element list and a generating set, for incremental extension.
#[derive(Clone, Debug)]
pub(crate) struct Sub {
    pub set: ElementSet,
    pub elems: Vec<usize>,
    pub gens: Vec<usize>,
}

impl Sub {
    pub fn trivial(g: &Group) -> Sub {
        Sub {
            set: g.trivial_set(),
            elems: vec![0],
            gens: Vec::new(),
        }
    }

    /// `<self, x>` by coset enumeration over the current subgroup.
    pub fn extend(&self, g: &Group, x: usize) -> Sub {
        if self.set.contains(x) {
            return self.clone();
        }
        let mut set = self.set.clone();
        let mut elems = self.elems.clone();
        let mut gens = self.gens.clone();
        gens.push(x);
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &s in &gens {
                let y = g.mul(r, s);
                if !set.contains(y) {
                    reps.push(y);
                    for &h in &self.elems {
                        let z = g.mul(h, y);
                        set.insert(z);
                        elems.push(z);
                    }
                }
            }
        }
        Sub { set, elems, gens }
    }

    pub fn generated(g: &Group, xs: impl IntoIterator<Item = usize>) -> Sub {
        let mut s = Sub::trivial(g);
        for x in xs {
            if !s.set.contains(x) {
                s = s.extend(g, x);
            }
        }
        s
    }
}

/// Smallest subgroup containing `s`.
pub fn closure(g: &Group, s: &ElementSet) -> ElementSet {
    Sub::generated(g, s.iter()).set
}

/// A generating set for `<s>` drawn from `s`.
pub fn generating_set(g: &Group, s: &ElementSet) -> Vec<usize> {
    Sub::generated(g, s.iter()).gens
}

/// Elements commuting with every element of `s`.
pub fn centralizer(g: &Group, s: &ElementSet) -> ElementSet {
    let gens = generating_set(g, s);
    ElementSet::from_elements(
        g.order(),
        g.elements().filter(|&x| gens.iter().all(|&t| g.mul(x, t) == g.mul(t, x))),
    )
}

pub fn center(g: &Group) -> ElementSet {
    let gens = g.generators();
    ElementSet::from_elements(
        g.order(),
        g.elements().filter(|&x| gens.iter().all(|&t| g.mul(x, t) == g.mul(t, x))),
    )
}

/// True when `s` contains the identity and is closed under products and inverses.
pub fn is_subgroup(g: &Group, s: &ElementSet) -> bool {
    s.contains(0) && s.universe() == g.order() && Sub::generated(g, s.iter()).set.size() == s.size()
}

pub fn element_order(g: &Group, x: usize) -> usize {
    g.element_order(x)
}

#[cfg(test)]
mod tests;
