//! Builders for the named group families.

use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, FieldTable, SemilinearMap};
use crate::group::enumerate::enumerate;
use crate::group::{build_from_cayley_with, build_from_permutations_with, BackendKind, Group};
use crate::set::ElementSet;
use crate::structure::minimal_normal_subgroups;

/// A named group family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Cyclic(u64),
    Elementary(u64, u32),
    Symmetric(u64),
    Alternating(u64),
    /// Dihedral group of the given order.
    Dihedral(u64),
    Q8,
    QD16,
    M9,
    C7C3,
    Agl1(u64),
    AGammaL1(u64),
    GammaL1(u64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(m) => write!(f, "C({m})"),
            Atom::Elementary(p, k) => write!(f, "E({p},{k})"),
            Atom::Symmetric(m) => write!(f, "S({m})"),
            Atom::Alternating(m) => write!(f, "A({m})"),
            Atom::Dihedral(m) => write!(f, "D({m})"),
            Atom::Q8 => f.write_str("Q8"),
            Atom::QD16 => f.write_str("QD16"),
            Atom::M9 => f.write_str("M9"),
            Atom::C7C3 => f.write_str("C7:C3"),
            Atom::Agl1(q) => write!(f, "AGL(1,{q})"),
            Atom::AGammaL1(q) => write!(f, "AGammaL(1,{q})"),
            Atom::GammaL1(q) => write!(f, "GammaL(1,{q})"),
        }
    }
}

pub fn named_group(atom: &Atom) -> Result<Group> {
    named_group_with(atom, &Caps::default())
}

pub fn named_group_with(atom: &Atom, caps: &Caps) -> Result<Group> {
    let name = atom.to_string();
    let g = match *atom {
        Atom::Cyclic(m) => abelian_with(&[m], caps)?,
        Atom::Elementary(p, k) => {
            if !is_prime(p) {
                return Err(Error::ParameterOutOfRange(format!("E({p},{k}): {p} is not prime")));
            }
            abelian_with(&vec![p; k as usize], caps)?
        }
        Atom::Symmetric(m) => symmetric(m, caps)?,
        Atom::Alternating(m) => alternating(m, caps)?,
        Atom::Dihedral(m) => {
            if m < 2 || m % 2 != 0 {
                return Err(Error::ParameterOutOfRange(format!("D({m}): order must be even and at least 2")));
            }
            metacyclic(m / 2, -1, 0, caps)?
        }
        Atom::Q8 => metacyclic(4, -1, 2, caps)?,
        Atom::QD16 => metacyclic(8, 3, 0, caps)?,
        Atom::M9 => m9(caps)?,
        Atom::C7C3 => affine_semidirect_with(7, &[SemilinearMap::linear(2, 0)], caps)?.group,
        Atom::Agl1(q) => semilinear_family_with(q, Semilinear::Agl1, caps)?,
        Atom::AGammaL1(q) => semilinear_family_with(q, Semilinear::AGammaL1, caps)?,
        Atom::GammaL1(q) => semilinear_family_with(q, Semilinear::GammaL1, caps)?,
    };
    Ok(g.renamed(name))
}

pub fn finite_field(q: u64) -> Result<FieldTable> {
    FieldTable::new(q)
}

/// Dense abelian group `C(n_1) x ... x C(n_k)`.
pub fn abelian(invariants: &[u64]) -> Result<Group> {
    abelian_with(invariants, &Caps::default())
}

pub fn abelian_with(invariants: &[u64], caps: &Caps) -> Result<Group> {
    if invariants.iter().any(|&m| m == 0) {
        return Err(Error::ParameterOutOfRange("cyclic factor of order 0".into()));
    }
    let order = invariants
        .iter()
        .try_fold(1u64, |a, &m| a.checked_mul(m))
        .filter(|&o| o <= caps.dense_limit() as u64)
        .ok_or(Error::OrderCapExceeded {
            order: invariants.iter().fold(1usize, |a, &m| a.saturating_mul(m as usize)),
            cap: caps.dense_limit(),
        })? as usize;
    let mods: Vec<usize> = invariants.iter().map(|&m| m as usize).collect();
    let mut strides = vec![1usize; mods.len()];
    for i in (0..mods.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * mods[i + 1];
    }
    let decode = |x: usize| -> Vec<usize> { strides.iter().zip(&mods).map(|(&s, &m)| (x / s) % m).collect() };
    let digits: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let mut table = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let mut c = 0;
            for i in 0..mods.len() {
                c += ((digits[a][i] + digits[b][i]) % mods[i]) * strides[i];
            }
            table[a * order + b] = c as u16;
        }
    }
    let gens = strides.iter().zip(&mods).filter(|(_, &m)| m > 1).map(|(&s, _)| s).collect();
    let name = invariants.iter().map(|m| format!("C({m})")).collect::<Vec<_>>().join(" x ");
    let name = if name.is_empty() { "C(1)".to_string() } else { name };
    Ok(Group::from_trusted_table(name, BackendKind::DenseTable, table, order, gens, *caps))
}

fn symmetric(m: u64, caps: &Caps) -> Result<Group> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange("S(0)".into()));
    }
    let m = m as usize;
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(cycle_perm(m, &[0, 1]));
        gens.push(cycle_perm(m, &(0..m).collect::<Vec<_>>()));
    }
    build_from_permutations_with(m, &gens, caps, format!("S({m})"))
}

fn alternating(m: u64, caps: &Caps) -> Result<Group> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange("A(0)".into()));
    }
    let m = m as usize;
    let gens: Vec<Vec<usize>> = (2..m).map(|k| cycle_perm(m, &[0, 1, k])).collect();
    build_from_permutations_with(m, &gens, caps, format!("A({m})"))
}

/// Permutation of `0..degree` with a single cycle.
pub fn cycle_perm(degree: usize, cycle: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (i, &x) in cycle.iter().enumerate() {
        p[x] = cycle[(i + 1) % cycle.len()];
    }
    p
}

/// `<a, b | a^n, b^2 = a^s, b^-1 a b = a^r>` with elements `a^i b^j` stored at `i + n j`.
fn metacyclic(n: u64, r: i64, s: u64, caps: &Caps) -> Result<Group> {
    let n = n as usize;
    let r = r.rem_euclid(n as i64) as usize;
    let s = s as usize % n;
    let m = 2 * n;
    // b a^i = a^(r i) b, since r^2 = 1 mod n.
    let table: Vec<Vec<usize>> = (0..m)
        .map(|x| {
            let (i1, j1) = (x % n, x / n);
            (0..m)
                .map(|y| {
                    let (i2, j2) = (y % n, y / n);
                    let twisted = if j1 == 1 { (r * i2) % n } else { i2 };
                    let mut i = (i1 + twisted) % n;
                    let mut j = j1 + j2;
                    if j == 2 {
                        i = (i + s) % n;
                        j = 0;
                    }
                    i + n * j
                })
                .collect()
        })
        .collect();
    build_from_cayley_with(&table, None, caps)
}

/// 2x2 matrices over `F_p` as `[[a, b], [c, d]]`, acting on column vectors.
pub type Mat2 = [[u64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2, p: u64) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
        }
    }
    c
}

/// The quaternion generators of `M(9)`.
pub const M9_I: Mat2 = [[0, 2], [1, 0]];
pub const M9_J: Mat2 = [[1, 1], [1, 2]];

/// `F_3^2` (vector `(x, y)` at index `x + 3y`) extended by the group generated by `i` and `j`.
fn m9(caps: &Caps) -> Result<Group> {
    let p = 3;
    let minus_one = [[2, 0], [0, 2]];
    let (i, j) = (M9_I, M9_J);
    let neg = |m: &Mat2| -> Mat2 { mat_mul(&minus_one, m, p) };
    if mat_mul(&i, &i, p) != minus_one
        || mat_mul(&j, &j, p) != minus_one
        || mat_mul(&i, &j, p) != neg(&mat_mul(&j, &i, p))
    {
        return Err(Error::InvalidHom("the M(9) matrices do not satisfy the Q8 relations".into()));
    }
    let gens = [matrix_perm(&i, p), matrix_perm(&j, p)];
    Ok(affine_over_plane(p, &gens, caps, "M9".into())?.group)
}

/// Action of a matrix on the `p^2` vectors of `F_p^2`.
pub fn matrix_perm(m: &Mat2, p: u64) -> Vec<usize> {
    let p = p as usize;
    (0..p * p)
        .map(|v| {
            let (x, y) = ((v % p) as u64, (v / p) as u64);
            let nx = (m[0][0] * x + m[0][1] * y) % p as u64;
            let ny = (m[1][0] * x + m[1][1] * y) % p as u64;
            nx as usize + p * ny as usize
        })
        .collect()
}

/// An affine permutation group `V ⋊ G0` with its translation subgroup and point stabilizer.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub group: Group,
    /// Translations, the socle candidate `V`.
    pub translations: ElementSet,
    /// Stabilizer of the zero vector, `G0`.
    pub stabilizer: ElementSet,
}

pub(crate) fn affine_from_perms(
    points: usize,
    translations: Vec<Vec<usize>>,
    linear: &[Vec<usize>],
    add: impl Fn(usize, usize) -> usize,
    caps: &Caps,
    name: String,
) -> Result<AffineGroup> {
    let mut gens = translations;
    gens.extend(linear.iter().cloned());
    let group = build_from_permutations_with(points, &gens, caps, name)?;
    let mut tr = ElementSet::empty(group.order());
    let mut st = ElementSet::empty(group.order());
    for x in group.elements() {
        let perm = group.permutation(x).expect("permutation backend");
        let c = perm[0] as usize;
        if c == 0 {
            st.insert(x);
        }
        if (0..points).all(|v| perm[v] as usize == add(v, c)) {
            tr.insert(x);
        }
    }
    Ok(AffineGroup {
        group,
        translations: tr,
        stabilizer: st,
    })
}

/// `F_p^2 ⋊ <gens>` for linear maps given as permutations of the `p^2` vectors.
pub fn affine_over_plane(p: u64, linear: &[Vec<usize>], caps: &Caps, name: String) -> Result<AffineGroup> {
    let p = p as usize;
    let add = move |u: usize, v: usize| (u % p + v % p) % p + p * ((u / p + v / p) % p);
    let translations = [1, p].iter().map(|&t| (0..p * p).map(|v| add(v, t)).collect()).collect();
    affine_from_perms(p * p, translations, linear, add, caps, name)
}

/// `F_q ⋊ G0` for `G0` generated by semilinear maps with zero shift.
pub fn affine_semidirect(q: u64, gens: &[SemilinearMap]) -> Result<AffineGroup> {
    affine_semidirect_with(q, gens, &Caps::default())
}

pub fn affine_semidirect_with(q: u64, gens: &[SemilinearMap], caps: &Caps) -> Result<AffineGroup> {
    let f = FieldTable::new(q)?;
    for g in gens {
        if !g.is_valid(&f) || g.shift != 0 {
            return Err(Error::ParameterOutOfRange(format!("{g:?} is not an element of GammaL(1,{q})")));
        }
    }
    let translations = (0..f.n)
        .map(|i| SemilinearMap::translation(f.p.pow(i as u32)).as_permutation(&f))
        .collect();
    let linear: Vec<Vec<usize>> = gens.iter().map(|g| g.as_permutation(&f)).collect();
    let name = format!("AffineGammaL(1,{q})");
    affine_from_perms(f.q, translations, &linear, |u, v| f.add(u, v), caps, name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semilinear {
    GammaL1,
    Agl1,
    AGammaL1,
}

pub fn semilinear_family(q: u64, variant: Semilinear) -> Result<Group> {
    semilinear_family_with(q, variant, &Caps::default())
}

pub fn semilinear_family_with(q: u64, variant: Semilinear, caps: &Caps) -> Result<Group> {
    let f = FieldTable::new(q)?;
    let omega = SemilinearMap::linear(f.primitive_element, 0);
    let phi = SemilinearMap::linear(1, 1 % f.n);
    let g = match variant {
        Semilinear::GammaL1 => {
            // Nonzero field element v is point v - 1.
            let gens: Vec<Vec<usize>> = [omega, phi]
                .iter()
                .map(|m| (1..f.q).map(|v| m.apply(&f, v) - 1).collect())
                .collect();
            build_from_permutations_with(f.q - 1, &gens, caps, String::new())?
        }
        Semilinear::Agl1 => affine_semidirect_with(q, &[omega], caps)?.group,
        Semilinear::AGammaL1 => affine_semidirect_with(q, &[omega, phi], caps)?.group,
    };
    let name = match variant {
        Semilinear::GammaL1 => Atom::GammaL1(q),
        Semilinear::Agl1 => Atom::Agl1(q),
        Semilinear::AGammaL1 => Atom::AGammaL1(q),
    };
    Ok(g.renamed(name.to_string()))
}

/// The crown-based power `L_k`: tuples of `L^k` congruent modulo the socle of `L`.
pub fn crown_power(l: &Group, k: usize) -> Result<Group> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange("crown power needs k >= 1".into()));
    }
    let mn = minimal_normal_subgroups(l);
    if !mn.monolithic {
        return Err(Error::NotMonolithic {
            count: mn.subgroups.len(),
        });
    }
    let v = &mn.subgroups[0];
    let caps = l.caps();
    let order = (v.size() as u128).pow(k as u32 - 1) * l.order() as u128;
    if order > caps.dense_limit() as u128 {
        return Err(Error::OrderCapExceeded {
            order: order.min(usize::MAX as u128) as usize,
            cap: caps.dense_limit(),
        });
    }
    let vgens = crate::group::generating_set(l, v);
    let mut gens: Vec<Vec<u32>> = l.generators().iter().map(|&s| vec![s as u32; k]).collect();
    for i in 0..k {
        for &t in &vgens {
            let mut tuple = vec![0u32; k];
            tuple[i] = t as u32;
            gens.push(tuple);
        }
    }
    let en = enumerate(
        vec![0u32; k],
        &gens,
        |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).map(|(&x, &y)| l.mul(x as usize, y as usize) as u32).collect(),
        order as usize,
    )?;
    debug_assert_eq!(en.len() as u128, order);
    Group::from_enumeration(format!("Crown({}, {k})", l.name()), BackendKind::DenseTable, &en, caps)
}

/// `GL(2, p)` as a permutation group on the `p^2 - 1` nonzero vectors.
#[derive(Clone, Debug)]
pub struct Gl2 {
    pub p: u64,
    pub group: Group,
}

impl Gl2 {
    pub fn new(p: u64) -> Result<Gl2> {
        Gl2::with_caps(p, &Caps::default())
    }

    pub fn with_caps(p: u64, caps: &Caps) -> Result<Gl2> {
        if !is_prime(p) || p > 23 {
            return Err(Error::ParameterOutOfRange(format!("GL(2,{p}) needs a prime p <= 23")));
        }
        let f = FieldTable::new(p)?;
        let w = f.primitive_element as u64;
        let mats: [Mat2; 3] = [[[w, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 0], [1, 1]]];
        let gens: Vec<Vec<usize>> = mats.iter().map(|m| nonzero_action(&matrix_perm(m, p))).collect();
        let group = build_from_permutations_with((p * p - 1) as usize, &gens, caps, format!("GL(2,{p})"))?;
        Ok(Gl2 { p, group })
    }

    /// Action of element `x` on all `p^2` vectors (zero fixed).
    pub fn vector_action(&self, x: usize) -> Vec<usize> {
        let perm = self.group.permutation(x).expect("permutation backend");
        std::iter::once(0).chain(perm.iter().map(|&v| v as usize + 1)).collect()
    }

    /// True when the subgroup generated by `gens` leaves no line invariant.
    pub fn is_irreducible(&self, gens: &[usize]) -> bool {
        let p = self.p as usize;
        let actions: Vec<Vec<usize>> = gens.iter().map(|&s| self.vector_action(s)).collect();
        // Lines through (1, y) and (0, 1).
        let line = |v: usize| -> Vec<usize> {
            let mut l: Vec<usize> = (1..p).map(|c| scale_vec(v, c, p)).collect();
            l.sort_unstable();
            l
        };
        let dirs = (0..p).map(|y| 1 + p * y).chain(std::iter::once(p));
        for d in dirs {
            let l = line(d);
            if actions.iter().all(|a| l.binary_search(&a[d]).is_ok()) {
                return false;
            }
        }
        true
    }
}

fn scale_vec(v: usize, c: usize, p: usize) -> usize {
    (v % p * c) % p + p * ((v / p * c) % p)
}

/// Restricts a linear permutation of all vectors to the nonzero ones, shifted down by one.
fn nonzero_action(perm: &[usize]) -> Vec<usize> {
    perm[1..].iter().map(|&v| v - 1).collect()
}

/// Prime power check that reports the offending value.
pub fn require_prime_power(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or(Error::NotPrimePower(q))
}
