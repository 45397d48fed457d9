//! Finite fields as lookup tables, and semilinear maps of the field line.
//!
//! An element of `F_q`, `q = p^n`, is stored as the index `sum c_i p^i` of its
//! coefficient vector modulo the defining polynomial. Index 0 is zero, 1 is one
//! and `p` is the class of `x`.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1024;

/// Splits `q` into `(p, n)` with `q = p^n`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = q;
    let mut n = 0;
    while m % p == 0 {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p, n))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug)]
pub struct FieldTable {
    pub q: usize,
    pub p: usize,
    pub n: usize,
    /// Coefficients of the defining polynomial, constant term first, leading 1 included.
    pub modulus: Vec<usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    pub primitive_element: usize,
    /// `v -> v^p`.
    pub frobenius: Vec<usize>,
}

fn digits(mut v: usize, p: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for c in d.iter_mut() {
        *c = v % p;
        v /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p` (constant term first).
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for i in 0..dm {
                r[off + i] = (r[off + i] + p - (lead * m[i]) % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        // Every monic polynomial of degree d.
        for k in 0..p.pow(d as u32) {
            let mut g = digits(k, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `n`, coefficients compared from the top degree down.
pub fn least_irreducible(p: usize, n: usize) -> Vec<usize> {
    for k in 0..p.pow(n as u32) {
        let mut f = digits(k, p, n);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldTable {
    pub fn new(q: u64) -> Result<FieldTable> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::ParameterOutOfRange(format!("field order {q} > {MAX_FIELD_ORDER}")));
        }
        let (q, p, n) = (q as usize, p as usize, n as usize);
        let modulus = least_irreducible(p, n);
        let dig: Vec<Vec<usize>> = (0..q).map(|v| digits(v, p, n)).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<usize> = dig[a].iter().zip(&dig[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u16;
                let mut prod = vec![0; 2 * n - 1];
                for (i, &x) in dig[a].iter().enumerate() {
                    for (j, &y) in dig[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                mul[a * q + b] = undigits(&poly_rem(&prod, &modulus, p), p) as u16;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16 })
            .collect();
        let mut f = FieldTable {
            q,
            p,
            n,
            modulus,
            add,
            mul,
            neg,
            inv,
            primitive_element: 0,
            frobenius: Vec::new(),
        };
        f.primitive_element = (1..q)
            .find(|&g| f.mult_order(g) == q - 1)
            .expect("multiplicative group is cyclic");
        f.frobenius = (0..q).map(|v| f.pow(v, p as u64)).collect();
        Ok(f)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; 0 maps to 0.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `v^(p^i)`.
    pub fn frobenius_pow(&self, v: usize, i: usize) -> usize {
        (0..i % self.n).fold(v, |acc, _| self.frobenius[acc])
    }

    pub fn mult_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut k = 1;
        let mut x = a;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Power of the primitive element.
    pub fn omega_pow(&self, k: usize) -> usize {
        self.pow(self.primitive_element, k as u64)
    }

    /// Discrete log base the primitive element.
    pub fn log(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut x = 1;
        let mut k = 0;
        while x != a {
            x = self.mul(x, self.primitive_element);
            k += 1;
        }
        k
    }
}

/// The map `v -> scale * v^(p^twist) + shift` of `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct SemilinearMap {
    pub scale: usize,
    pub twist: usize,
    pub shift: usize,
}

impl SemilinearMap {
    pub const IDENTITY: SemilinearMap = SemilinearMap {
        scale: 1,
        twist: 0,
        shift: 0,
    };

    pub fn linear(scale: usize, twist: usize) -> Self {
        SemilinearMap { scale, twist, shift: 0 }
    }

    pub fn translation(shift: usize) -> Self {
        SemilinearMap { scale: 1, twist: 0, shift }
    }

    pub fn apply(&self, f: &FieldTable, v: usize) -> usize {
        f.add(f.mul(self.scale, f.frobenius_pow(v, self.twist)), self.shift)
    }

    /// The map "first `self`, then `other`".
    pub fn then(&self, f: &FieldTable, other: &SemilinearMap) -> SemilinearMap {
        // b (a v^s + c)^t + d = (b a^t) v^(s+t) + (b c^t + d)
        SemilinearMap {
            scale: f.mul(other.scale, f.frobenius_pow(self.scale, other.twist)),
            twist: (self.twist + other.twist) % f.n,
            shift: f.add(f.mul(other.scale, f.frobenius_pow(self.shift, other.twist)), other.shift),
        }
    }

    pub fn inverse(&self, f: &FieldTable) -> SemilinearMap {
        // w = a v^s + c  =>  v = (a^-1 (w - c))^(s^-1)
        let back = (f.n - self.twist % f.n) % f.n;
        let ainv = f.inv(self.scale);
        SemilinearMap {
            scale: f.frobenius_pow(ainv, back),
            twist: back,
            shift: f.neg(f.frobenius_pow(f.mul(ainv, self.shift), back)),
        }
    }

    pub fn is_valid(&self, f: &FieldTable) -> bool {
        self.scale != 0 && self.scale < f.q && self.shift < f.q && self.twist < f.n
    }

    pub fn as_permutation(&self, f: &FieldTable) -> Vec<usize> {
        (0..f.q).map(|v| self.apply(f, v)).collect()
    }
}
