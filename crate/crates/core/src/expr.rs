//! A small expression language for building groups.
//!
//! ```text
//! expr := term ("x" term)*
//! term := atom | "Crown(" expr "," int ")" | "Quot(" expr "," int "," int ")"
//! atom := C(m) | E(p,k) | S(m) | A(m) | D(n) | Q8 | QD16 | M9 | C7:C3
//!       | AGL(1,q) | AGammaL(1,q) | GammaL(1,q) | Perm[gen, ...] | Cayley("file")
//! ```
//!
//! `C`, `S`, `A` and `D` also accept the short forms `C12`, `S3`, `A4`, `D8`.
//! `Perm` generators are products of cycles on points `1..n`, e.g. `Perm[(1,2,3), (1,2)]`;
//! `()` is the identity. `Quot(G, k, i)` is `G` modulo its `i`-th (from 0) normal
//! subgroup of order `k` in canonical lattice order.

use std::fmt;

use crate::caps::Caps;
use crate::constructors::{crown_power, named_group_with, Atom};
use crate::error::{Error, Result};
use crate::group::{build_direct_product_with, build_from_cayley_with, build_from_permutations_with, Group};
use crate::structure::{all_normal_subgroups, quotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Atom(Atom),
    /// Generators as lists of cycles on 1-based points.
    Perm(Vec<Vec<Vec<usize>>>),
    Cayley(String),
    Product(Vec<GroupExpr>),
    Crown(Box<GroupExpr>, usize),
    Quot(Box<GroupExpr>, usize, usize),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Atom(a) => write!(f, "{a}"),
            GroupExpr::Perm(gens) => {
                f.write_str("Perm[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if g.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(","))?;
                    }
                }
                f.write_str("]")
            }
            GroupExpr::Cayley(path) => write!(f, "Cayley({path:?})"),
            GroupExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            GroupExpr::Crown(e, k) => write!(f, "Crown({e}, {k})"),
            GroupExpr::Quot(e, o, i) => write!(f, "Quot({e}, {o}, {i})"),
        }
    }
}

impl GroupExpr {
    /// `Perm[...]` for the group generated by 0-based permutations; fixed points are dropped.
    pub fn from_permutations(gens: &[Vec<usize>]) -> GroupExpr {
        GroupExpr::Perm(gens.iter().map(|g| cycles_of(g)).collect())
    }

    /// Largest point mentioned.
    fn perm_degree(gens: &[Vec<Vec<usize>>]) -> usize {
        gens.iter().flatten().flatten().copied().max().unwrap_or(1)
    }
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x + 1);
            x = perm[x];
        }
        out.push(c);
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const KEYWORDS: [&str; 16] = [
    "AGammaL", "GammaL", "Cayley", "C7:C3", "Crown", "Quot", "QD16", "Perm", "AGL", "Q8", "M9", "C", "E", "S", "A", "D",
];

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            expected: expected.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("'{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| Error::Syntax {
            position: start,
            expected: "integer that fits in 64 bits".into(),
        })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut terms = vec![self.term()?];
        while self.eat(b'x') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            GroupExpr::Product(terms)
        })
    }

    /// Parenthesized integer list; returns it with the offset of the opening parenthesis.
    fn args(&mut self) -> Result<(usize, Vec<usize>)> {
        self.ws();
        let at = self.pos;
        self.expect(b'(')?;
        let mut v = vec![self.int()?];
        while self.eat(b',') {
            v.push(self.int()?);
        }
        self.expect(b')')?;
        Ok((at, v))
    }

    fn arity(at: usize, name: &str, want: usize, got: usize) -> Error {
        Error::Arity {
            position: at,
            message: format!("{name} takes {want} argument(s), got {got}"),
        }
    }

    fn one(&mut self, name: &str) -> Result<u64> {
        let (at, v) = self.args()?;
        if v.len() != 1 {
            return Err(Self::arity(at, name, 1, v.len()));
        }
        Ok(v[0] as u64)
    }

    /// `(1, q)` for the one-dimensional semilinear families.
    fn dim_one(&mut self, name: &str) -> Result<u64> {
        let (at, v) = self.args()?;
        if v.len() != 2 {
            return Err(Self::arity(at, name, 2, v.len()));
        }
        if v[0] != 1 {
            return Err(Error::Syntax {
                position: at + 1,
                expected: "dimension 1".into(),
            });
        }
        Ok(v[1] as u64)
    }

    fn term(&mut self) -> Result<GroupExpr> {
        self.ws();
        let rest = &self.src[self.pos..];
        let Some(kw) = KEYWORDS.iter().find(|k| rest.starts_with(k.as_bytes())) else {
            return self.err("group atom, Crown or Quot");
        };
        let start = self.pos;
        self.pos += kw.len();
        let short = |p: &mut Self| -> Option<u64> {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            (p.pos > s).then(|| std::str::from_utf8(&p.src[s..p.pos]).unwrap().parse().ok()).flatten()
        };
        let atom = |a: Atom| Ok(GroupExpr::Atom(a));
        match *kw {
            "Q8" => atom(Atom::Q8),
            "QD16" => atom(Atom::QD16),
            "M9" => atom(Atom::M9),
            "C7:C3" => atom(Atom::C7C3),
            "C" | "S" | "A" | "D" => {
                let m = match short(self) {
                    Some(m) => m,
                    None => self.one(kw)?,
                };
                atom(match *kw {
                    "C" => Atom::Cyclic(m),
                    "S" => Atom::Symmetric(m),
                    "A" => Atom::Alternating(m),
                    _ => Atom::Dihedral(m),
                })
            }
            "E" => {
                let (at, v) = self.args()?;
                if v.len() != 2 {
                    return Err(Self::arity(at, "E", 2, v.len()));
                }
                atom(Atom::Elementary(v[0] as u64, v[1] as u32))
            }
            "AGL" => atom(Atom::Agl1(self.dim_one("AGL")?)),
            "AGammaL" => atom(Atom::AGammaL1(self.dim_one("AGammaL")?)),
            "GammaL" => atom(Atom::GammaL1(self.dim_one("GammaL")?)),
            "Crown" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b',')?;
                let k = self.int()?;
                self.expect(b')')?;
                Ok(GroupExpr::Crown(Box::new(e), k))
            }
            "Quot" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b',')?;
                let o = self.int()?;
                self.expect(b',')?;
                let i = self.int()?;
                self.expect(b')')?;
                Ok(GroupExpr::Quot(Box::new(e), o, i))
            }
            "Perm" => self.perm(),
            "Cayley" => {
                self.expect(b'(')?;
                self.ws();
                if !self.eat(b'"') {
                    return self.err("quoted file name");
                }
                let s = self.pos;
                while self.pos < self.src.len() && self.src[self.pos] != b'"' {
                    self.pos += 1;
                }
                if self.pos == self.src.len() {
                    return self.err("closing quote");
                }
                let path = String::from_utf8_lossy(&self.src[s..self.pos]).into_owned();
                self.pos += 1;
                self.expect(b')')?;
                Ok(GroupExpr::Cayley(path))
            }
            _ => unreachable!("keyword {kw} at {start}"),
        }
    }

    fn perm(&mut self) -> Result<GroupExpr> {
        self.expect(b'[')?;
        let mut gens = Vec::new();
        loop {
            let mut cycles = Vec::new();
            if self.peek() != Some(b'(') {
                return self.err("'('");
            }
            while self.eat(b'(') {
                if self.eat(b')') {
                    continue;
                }
                let mut c = vec![self.int()?];
                while self.eat(b',') {
                    c.push(self.int()?);
                }
                self.expect(b')')?;
                cycles.push(c);
            }
            gens.push(cycles);
            if !self.eat(b',') {
                break;
            }
        }
        self.expect(b']')?;
        Ok(GroupExpr::Perm(gens))
    }
}

pub fn parse_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.src.len() {
        return p.err("'x' or end of input");
    }
    Ok(e)
}

pub fn evaluate(e: &GroupExpr) -> Result<Group> {
    evaluate_with(e, &Caps::default())
}

pub fn evaluate_with(e: &GroupExpr, caps: &Caps) -> Result<Group> {
    let g = match e {
        GroupExpr::Atom(a) => named_group_with(a, caps)?,
        GroupExpr::Perm(gens) => {
            let n = GroupExpr::perm_degree(gens);
            let mut perms = Vec::with_capacity(gens.len());
            for (index, cycles) in gens.iter().enumerate() {
                let mut p: Vec<usize> = (0..n).collect();
                let mut hit = vec![false; n];
                for c in cycles {
                    for (i, &x) in c.iter().enumerate() {
                        if x == 0 || hit[x - 1] {
                            return Err(Error::NotAPermutation { index, degree: n });
                        }
                        hit[x - 1] = true;
                        p[x - 1] = c[(i + 1) % c.len()] - 1;
                    }
                }
                perms.push(p);
            }
            build_from_permutations_with(n, &perms, caps, String::new())?
        }
        GroupExpr::Cayley(path) => {
            let text = std::fs::read_to_string(path).map_err(|err| Error::Io(format!("{path}: {err}")))?;
            build_from_cayley_with(&parse_table(&text)?, None, caps)?
        }
        GroupExpr::Product(fs) => {
            let gs = fs.iter().map(|x| evaluate_with(x, caps)).collect::<Result<Vec<_>>>()?;
            build_direct_product_with(&gs, caps)?
        }
        GroupExpr::Crown(inner, k) => crown_power(&evaluate_with(inner, caps)?, *k)?,
        GroupExpr::Quot(inner, order, index) => {
            let g = evaluate_with(inner, caps)?;
            let normals = all_normal_subgroups(&g)?;
            let n = normals.iter().filter(|n| n.size() == *order).nth(*index).ok_or_else(|| {
                Error::ParameterOutOfRange(format!("{inner} has no normal subgroup #{index} of order {order}"))
            })?;
            quotient(&g, n)?.0
        }
    };
    Ok(g.renamed(e.to_string()))
}

/// Rows of integers separated by whitespace or commas; `#` starts a comment.
fn parse_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::MalformedTable(format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Parses and evaluates.
pub fn build(text: &str) -> Result<Group> {
    evaluate(&parse_expr(text)?)
}

pub fn build_with(text: &str, caps: &Caps) -> Result<Group> {
    evaluate_with(&parse_expr(text)?, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;
    use proptest::prelude::*;

    fn atom(a: Atom) -> GroupExpr {
        GroupExpr::Atom(a)
    }

    #[test]
    fn grammar_cases() {
        assert_eq!(parse_expr("C7:C3 x M9").unwrap(), GroupExpr::Product(vec![atom(Atom::C7C3), atom(Atom::M9)]));
        assert_eq!(parse_expr("Crown(S3, 2)").unwrap(), GroupExpr::Crown(Box::new(atom(Atom::Symmetric(3))), 2));
        assert_eq!(parse_expr(" C(2)xC(4) x  C4").unwrap().to_string(), "C(2) x C(4) x C(4)");
        assert_eq!(parse_expr("AGammaL(1,16)").unwrap(), atom(Atom::AGammaL1(16)));
        assert_eq!(
            parse_expr("Quot(Crown(A4,2), 4, 1)").unwrap().to_string(),
            "Quot(Crown(A(4), 2), 4, 1)"
        );
        assert_eq!(parse_expr("Perm[(1,2,3)(4,5), ()]").unwrap().to_string(), "Perm[(1,2,3)(4,5), ()]");
        assert_eq!(parse_expr("Cayley(\"t.txt\")").unwrap(), GroupExpr::Cayley("t.txt".into()));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(parse_expr("C("), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_expr("S3 x"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_expr("S3 y"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_expr("AGL(2,5)"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_expr("E(2)"), Err(Error::Arity { position: 1, .. })));
        assert!(matches!(parse_expr("C(1,2)"), Err(Error::Arity { .. })));
        assert!(matches!(parse_expr("Perm[(1,2]"), Err(Error::Syntax { position: 9, .. })));
    }

    #[test]
    fn evaluation() {
        let g = build("C7:C3 x M9").unwrap();
        assert_eq!(g.order(), 21 * 72);
        assert_eq!(g.name(), "C7:C3 x M9");
        assert_eq!(build("Crown(S3, 2)").unwrap().order(), 18);
        let s3 = build("Perm[(1,2), (1,2,3)]").unwrap();
        assert!(is_isomorphic(&s3, &build("S(3)").unwrap()).is_isomorphic());
        let q = build("Quot(S4, 4, 0)").unwrap();
        assert!(is_isomorphic(&q, &build("S3").unwrap()).is_isomorphic());
        assert!(matches!(build("Quot(S4, 4, 1)"), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(build("Perm[(1,2,1)]"), Err(Error::NotAPermutation { .. })));
        assert!(matches!(build("Cayley(\"/nonexistent/table\")"), Err(Error::Io(_))));
    }

    #[test]
    fn cayley_files() {
        let dir = std::env::temp_dir().join(format!("magnus-expr-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c3.txt");
        std::fs::write(&path, "# C3\n0 1 2\n1,2,0\n2 0 1\n").unwrap();
        let g = build(&format!("Cayley({:?})", path.display().to_string())).unwrap();
        assert_eq!(g.order(), 3);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn permutation_expressions_reproduce_element_indices() {
        let gens = vec![vec![1, 2, 0, 3], vec![0, 1, 3, 2]];
        let e = GroupExpr::from_permutations(&gens);
        assert_eq!(e.to_string(), "Perm[(1,2,3), (3,4)]");
        let a = evaluate(&e).unwrap();
        let b = crate::group::build_from_permutations(4, &gens).unwrap();
        assert_eq!(a.order(), b.order());
        assert!(a.elements().all(|x| a.permutation(x) == b.permutation(x)));
    }

    fn arb_atom() -> impl Strategy<Value = GroupExpr> {
        prop_oneof![
            (1u64..30).prop_map(|m| atom(Atom::Cyclic(m))),
            (2u64..6, 1u32..4).prop_map(|(p, k)| atom(Atom::Elementary(p, k))),
            (1u64..8).prop_map(|m| atom(Atom::Symmetric(m))),
            (1u64..20).prop_map(|m| atom(Atom::Dihedral(2 * m))),
            Just(atom(Atom::Q8)),
            Just(atom(Atom::QD16)),
            Just(atom(Atom::M9)),
            Just(atom(Atom::C7C3)),
            (2u64..30).prop_map(|q| atom(Atom::Agl1(q))),
            (2u64..30).prop_map(|q| atom(Atom::GammaL1(q))),
            proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(1usize..9, 1..4), 0..3), 1..3)
                .prop_map(GroupExpr::Perm),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = GroupExpr> {
        arb_atom().prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
                (inner.clone(), 1usize..4).prop_map(|(e, k)| GroupExpr::Crown(Box::new(e), k)),
                (inner, 1usize..9, 0usize..3).prop_map(|(e, o, i)| GroupExpr::Quot(Box::new(e), o, i)),
            ]
        })
    }

    // Products nested directly inside products print flat, so compare after one reparse.
    proptest! {
        #[test]
        fn print_parse_roundtrip(e in arb_expr()) {
            let once = parse_expr(&e.to_string()).unwrap();
            let twice = parse_expr(&once.to_string()).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(once.to_string(), e.to_string());
        }
    }
}
