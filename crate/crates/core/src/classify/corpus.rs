//! The fixed universe of groups the property suites run over.
//!
//! Members, in order:
//! - every abelian group of order at most 128, as products of cyclic prime-power factors;
//! - the noncyclic constructor atoms listed in [`ATOMS`];
//! - the 36 products `Gi x Gj` of the eight primitive MP groups;
//! - crown-based powers `Crown(L, k)`, `k = 2, 3`, of the eight (within caps);
//! - every irreducible `V ⋊ G0` from the `ΓL(1,q)` search with `q <= 64` (within caps);
//! - quotients of the nonabelian members above, deduplicated up to isomorphism.
//!
//! Every member carries the expression that rebuilds it, element indices included.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::arith::abelian_groups_of_order;
use super::search::{gammal1_sweep, SearchRow};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::expr::{build_with, GroupExpr};
use crate::group::{fingerprint, is_isomorphic, Fingerprint, Group, IsoVerdict};
use crate::magnus::{magnus_counting, MagnusReport};
use crate::structure::{all_normal_subgroups, quotient};

/// The primitive MP groups, by expression.
pub const PRIMITIVE_MP: [&str; 8] = ["C(2)", "C(3)", "S(3)", "A(4)", "AGL(1,5)", "C7:C3", "AGL(1,7)", "M9"];
/// The SMP ones among them.
pub const PRIMITIVE_SMP: [&str; 3] = ["C(2)", "S(3)", "M9"];

pub const ATOMS: [&str; 22] = [
    "S(3)",
    "S(4)",
    "S(5)",
    "A(4)",
    "A(5)",
    "D(8)",
    "D(10)",
    "D(12)",
    "D(14)",
    "Q8",
    "QD16",
    "M9",
    "C7:C3",
    "AGL(1,5)",
    "AGL(1,7)",
    "AGL(1,8)",
    "AGL(1,9)",
    "AGammaL(1,4)",
    "AGammaL(1,8)",
    "AGammaL(1,9)",
    "GammaL(1,8)",
    "GammaL(1,9)",
];

/// Largest abelian order in the corpus.
pub const ABELIAN_MAX: u64 = 128;
/// Largest `q` of the affine rows.
pub const AFFINE_QMAX: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Source {
    Abelian,
    Atom,
    Pair,
    Crown,
    Affine,
    Quotient,
}

#[derive(Debug)]
pub struct Member {
    pub expr: String,
    pub source: Source,
    pub group: Group,
    /// Counting verdict; suites that need the pairwise oracle recompute it.
    pub report: MagnusReport,
}

#[derive(Debug, Default)]
pub struct Corpus {
    pub members: Vec<Member>,
    /// `(expression, reason)` for members left out by a cap.
    pub skipped: Vec<(String, String)>,
}

impl Corpus {
    pub fn mp(&self) -> impl Iterator<Item = &Member> {
        self.members.iter().filter(|m| m.report.mp)
    }
}

fn product_expr(a: &str, b: &str) -> String {
    format!("{a} x {b}")
}

/// Expressions of the members before quotients, with their sources.
fn base_expressions(caps: &Caps, jobs: usize, skipped: &mut Vec<(String, String)>) -> Result<Vec<(String, Source)>> {
    let mut out = Vec::new();
    for n in 1..=ABELIAN_MAX {
        for d in abelian_groups_of_order(n) {
            let e = if d.is_empty() {
                "C(1)".to_string()
            } else {
                d.iter().map(|x| format!("C({x})")).collect::<Vec<_>>().join(" x ")
            };
            out.push((e, Source::Abelian));
        }
    }
    out.extend(ATOMS.iter().map(|a| (a.to_string(), Source::Atom)));
    for i in 0..PRIMITIVE_MP.len() {
        for j in i..PRIMITIVE_MP.len() {
            out.push((product_expr(PRIMITIVE_MP[i], PRIMITIVE_MP[j]), Source::Pair));
        }
    }
    for l in PRIMITIVE_MP {
        for k in 2..=3 {
            out.push((format!("Crown({l}, {k})"), Source::Crown));
        }
    }
    let rows: Vec<SearchRow> = gammal1_sweep(AFFINE_QMAX, jobs, caps)?;
    for r in rows.iter().filter(|r| r.analysis.irreducible) {
        let e = GroupExpr::from_permutations(&r.affine_generators()).to_string();
        let order = r.q * r.analysis.g0_order;
        if order > caps.dense_table {
            skipped.push((r.label(), format!("order {order} above the dense-table cap")));
        } else {
            out.push((e, Source::Affine));
        }
    }
    Ok(out)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

/// Builds the corpus. Members over a cap are listed in `skipped`, never silently dropped.
pub fn build_corpus(caps: &Caps, jobs: usize) -> Result<Corpus> {
    let mut skipped = Vec::new();
    let base = base_expressions(caps, jobs, &mut skipped)?;
    let pool = pool(jobs)?;
    let built: Vec<(String, Source, Result<Group>)> =
        pool.install(|| base.into_par_iter().map(|(e, s)| (e.clone(), s, build_with(&e, caps))).collect());
    let mut groups: Vec<(String, Source, Group)> = Vec::new();
    for (e, s, g) in built {
        match g {
            Ok(g) => groups.push((e, s, g)),
            Err(err) if err.is_resource_cap() => skipped.push((e, err.to_string())),
            Err(err) => return Err(err),
        }
    }

    // Quotient candidates from nonabelian members, computed in parallel.
    let cand: Vec<Vec<(String, Group)>> = pool.install(|| {
        groups
            .par_iter()
            .map(|(e, _, g)| {
                if g.is_abelian() {
                    return Ok(Vec::new());
                }
                let normals = all_normal_subgroups(g)?;
                let mut seen: HashMap<usize, usize> = HashMap::new();
                let mut out = Vec::new();
                for n in normals.iter() {
                    let idx = seen.entry(n.size()).or_insert(0);
                    let i = *idx;
                    *idx += 1;
                    if n.size() == 1 || n.size() == g.order() {
                        continue;
                    }
                    let expr = GroupExpr::Quot(Box::new(crate::expr::parse_expr(e)?), n.size(), i);
                    let q = quotient(g, n)?.0.renamed(expr.to_string());
                    out.push((expr.to_string(), q));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut index: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    let mut all: Vec<(String, Source, Group)> = Vec::new();
    for (e, s, g) in groups {
        index.entry(fingerprint(&g).clone()).or_default().push(all.len());
        all.push((e, s, g));
    }
    for (e, q) in cand.into_iter().flatten() {
        // Abelian groups of small order are all present already.
        if q.is_abelian() && q.order() as u64 <= ABELIAN_MAX {
            continue;
        }
        let fp = fingerprint(&q).clone();
        let bucket = index.entry(fp).or_default();
        let mut dup = false;
        for &k in bucket.iter() {
            match is_isomorphic(&q, &all[k].2) {
                IsoVerdict::Isomorphic(_) => {
                    dup = true;
                    break;
                }
                IsoVerdict::NotIsomorphic => {}
                IsoVerdict::Unknown => {
                    skipped.push((e.clone(), "isomorphism budget exhausted during deduplication".into()));
                    dup = true;
                    break;
                }
            }
        }
        if !dup {
            bucket.push(all.len());
            all.push((e, Source::Quotient, q));
        }
    }

    let members = pool.install(|| {
        all.into_par_iter()
            .map(|(expr, source, group)| {
                let report = magnus_counting(&group);
                Member {
                    expr,
                    source,
                    group,
                    report,
                }
            })
            .collect()
    });
    Ok(Corpus { members, skipped })
}

/// The corpus with default caps, built once per process.
pub fn default_corpus(jobs: usize) -> Result<&'static Corpus> {
    static CORPUS: OnceLock<Result<Corpus>> = OnceLock::new();
    CORPUS
        .get_or_init(|| build_corpus(&Caps::default(), jobs))
        .as_ref()
        .map_err(Clone::clone)
}
