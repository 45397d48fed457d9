//! Named verification suites. Each suite returns a [`ClaimReport`]; a failed check always
//! names the group expression and the elements involved.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::affine::{affine_analysis, frobenius_decomposition, is_frobenius};
use super::arith::{abelian_survey, degree_bound, euler_phi, power23_solutions};
use super::corpus::{default_corpus, Corpus, Member, PRIMITIVE_MP, PRIMITIVE_SMP};
use super::search::{gammal1_sweep, gl2_search, irreducible_subgroups_gl2, SearchRow, Verdict};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::expr::{build, GroupExpr};
use crate::field::{prime_factors, FieldTable, SemilinearMap};
use crate::group::{build_direct_product, centralizer, is_isomorphic, Group, IsoVerdict, Sub};
use crate::lattice::{all_subgroups, frattini, j_p, s_p, subgroup_lattice};
use crate::magnus::{magnus_counting, magnus_pairwise, magnus_status, MagnusReport, PAIRWISE_CHECK_ORDER};
use crate::set::ElementSet;
use crate::structure::{
    all_normal_subgroups, chief_series, chief_series_between, fitting_height, is_nilpotent, is_solvable,
    minimal_normal_subgroups, quotient, TieBreak,
};

pub const CLAIM_IDS: [&str; 20] = [
    "primitive-mp",
    "primitive-smp",
    "main1bis",
    "mpdir-pairs",
    "crown",
    "frobenius-products",
    "smp-products",
    "fitting",
    "primes",
    "prank",
    "chief-orders",
    "power23",
    "srineq",
    "huppert",
    "abelian",
    "degree-bound",
    "frattini-lemma",
    "oracle",
    "quotient-closure",
    "gl2",
];

/// Degrees of primitive MP candidates outside `ΓL(1,q)` that are not recomputed.
pub const LITERATURE_DEGREES: [u64; 3] = [81, 121, 529];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyParams {
    /// Largest field order swept in `ΓL(1,q)`.
    pub qmax: u64,
    /// Worker threads; results do not depend on it.
    #[serde(skip)]
    pub jobs: usize,
    /// Largest crown exponent.
    pub kmax: usize,
    /// Largest order of the triple products.
    pub triple_order_max: usize,
    /// Largest order on which `j_p` is compared with `r_p`.
    pub huppert_order_max: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            qmax: 64,
            jobs: 1,
            kmax: 3,
            triple_order_max: 4000,
            huppert_order_max: 400,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceKind {
    /// A notable check that passed.
    Check,
    Failure,
    /// Data with no pass/fail meaning.
    Info,
    /// A case trusted to the published classification, not recomputed.
    Literature,
    /// A corpus member outside a suite's domain because of a cap.
    Skip,
    /// A required computation hit a resource cap.
    Cap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub kind: EvidenceKind,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimReport {
    pub schema: u32,
    pub claim: String,
    pub status: Status,
    pub params: VerifyParams,
    pub counts: BTreeMap<String, u64>,
    pub evidence: Vec<Evidence>,
    /// Wall time; left out of the JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub runtime: Duration,
}

impl ClaimReport {
    pub fn failures(&self) -> impl Iterator<Item = &Evidence> {
        self.evidence.iter().filter(|e| e.kind == EvidenceKind::Failure)
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

/// One outcome produced by a per-group check, merged in corpus order.
enum Event {
    Ok(&'static str),
    Note(EvidenceKind, String, String),
}

fn fail(subject: impl Into<String>, detail: impl Into<String>) -> Event {
    Event::Note(EvidenceKind::Failure, subject.into(), detail.into())
}

#[derive(Default)]
struct Run {
    counts: BTreeMap<String, u64>,
    evidence: Vec<Evidence>,
}

impl Run {
    fn count(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    fn set(&mut self, key: &str, v: u64) {
        self.counts.insert(key.to_string(), v);
    }

    fn note(&mut self, kind: EvidenceKind, subject: impl Into<String>, detail: impl Into<String>) {
        self.evidence.push(Evidence {
            kind,
            subject: subject.into(),
            detail: detail.into(),
        });
    }

    fn info(&mut self, subject: impl Into<String>, detail: impl Into<String>) {
        self.note(EvidenceKind::Info, subject, detail);
    }

    /// Counts a pass under `key`, or records a failure.
    fn check(&mut self, ok: bool, key: &str, subject: &str, detail: impl FnOnce() -> String) -> bool {
        if ok {
            self.count(key);
        } else {
            self.note(EvidenceKind::Failure, subject, detail());
        }
        ok
    }

    fn absorb(&mut self, events: Vec<Event>) {
        for e in events {
            match e {
                Event::Ok(k) => self.count(k),
                Event::Note(kind, s, d) => {
                    if kind == EvidenceKind::Skip {
                        self.count("skipped");
                    }
                    self.note(kind, s, d)
                }
            }
        }
    }

    fn finish(self, claim: &str, params: &VerifyParams, start: Instant) -> ClaimReport {
        let has = |k: EvidenceKind| self.evidence.iter().any(|e| e.kind == k);
        let status = if has(EvidenceKind::Failure) {
            Status::Fail
        } else if has(EvidenceKind::Cap) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        ClaimReport {
            schema: 1,
            claim: claim.to_string(),
            status,
            params: params.clone(),
            counts: self.counts,
            evidence: self.evidence,
            runtime: start.elapsed(),
        }
    }
}

fn describe(r: &MagnusReport) -> String {
    let w = match r.witness {
        Some((x, y)) => format!(", witness elements ({x}, {y})"),
        None => String::new(),
    };
    format!("mp={} smp={} |A|={} |B|={}{w}", r.mp, r.smp, r.a_count, r.b_count)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

/// Runs a claim suite. Unknown ids are an error; resource caps make the report inconclusive.
pub fn verify(claim: &str, params: &VerifyParams) -> Result<ClaimReport> {
    let start = Instant::now();
    let mut run = Run::default();
    let outcome = match claim {
        "primitive-mp" => primitive(&mut run, params, false),
        "primitive-smp" => primitive(&mut run, params, true),
        "main1bis" => main1bis(&mut run, params),
        "mpdir-pairs" => mpdir_pairs(&mut run, params),
        "crown" => crown(&mut run, params),
        "frobenius-products" => frobenius_products(&mut run, params),
        "smp-products" => smp_products(&mut run, params),
        "fitting" => fitting(&mut run, params),
        "primes" => primes(&mut run, params),
        "prank" => prank(&mut run, params),
        "chief-orders" => chief_orders(&mut run, params),
        "power23" => power23(&mut run),
        "srineq" => srineq(&mut run, params),
        "huppert" => huppert(&mut run, params),
        "abelian" => abelian(&mut run),
        "degree-bound" => degree(&mut run),
        "frattini-lemma" => frattini_lemma(&mut run, params),
        "oracle" => oracle(&mut run, params),
        "quotient-closure" => quotient_closure(&mut run, params),
        "gl2" => gl2_sets(&mut run),
        other => {
            return Err(Error::ParameterOutOfRange(format!(
                "unknown claim `{other}`; known: {}",
                CLAIM_IDS.join(", ")
            )))
        }
    };
    match outcome {
        Ok(()) => {}
        Err(e) if e.is_resource_cap() => run.note(EvidenceKind::Cap, claim, e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(run.finish(claim, params, start))
}

/// The eight primitive MP groups, in list order.
fn primitive_groups() -> Result<Vec<(&'static str, Group)>> {
    PRIMITIVE_MP.iter().map(|&e| Ok((e, build(e)?))).collect()
}

/// Name of the first listed group isomorphic to `g`.
fn identify<'a>(g: &Group, list: &'a [(&'static str, Group)]) -> Result<Option<&'a str>> {
    for (name, h) in list {
        if h.order() != g.order() {
            continue;
        }
        match is_isomorphic(g, h) {
            IsoVerdict::Isomorphic(_) => return Ok(Some(name)),
            IsoVerdict::NotIsomorphic => {}
            IsoVerdict::Unknown => {
                return Err(Error::SearchBudgetExceeded {
                    budget: g.caps().iso_nodes,
                })
            }
        }
    }
    Ok(None)
}

fn row_expr(r: &SearchRow) -> String {
    GroupExpr::from_permutations(&r.affine_generators()).to_string()
}

/// `ΓL(1,q)` rows up to `qmax` plus the `GL(2,p)` rows at degrees 4, 9, 25, 49.
fn all_rows(run: &mut Run, params: &VerifyParams) -> Result<Vec<SearchRow>> {
    let caps = Caps::default();
    let mut rows = gammal1_sweep(params.qmax, params.jobs, &caps)?;
    run.set("gammal1 rows", rows.len() as u64);
    let mut gl = 0;
    for p in [2, 3, 5, 7] {
        let r = gl2_search(p, &caps)?;
        gl += r.len();
        rows.extend(r);
    }
    run.set("gl2 irreducible rows", gl as u64);
    for r in &rows {
        match &r.verdict {
            None => run.count("reducible"),
            Some(Verdict::Orbit { .. }) => run.count("pruned by orbit condition"),
            Some(Verdict::Stabilizer { .. }) => run.count("pruned by stabilizer"),
            Some(Verdict::Full { .. }) => run.count("decided on V:G0"),
        }
        match r.cross_check {
            Some(true) => run.count("pruned verdicts confirmed in full"),
            Some(false) => run.note(
                EvidenceKind::Failure,
                row_expr(r),
                format!("{}: pruned verdict {:?} contradicted by the full computation", r.label(), r.verdict),
            ),
            None => {}
        }
    }
    Ok(rows)
}

fn primitive(run: &mut Run, params: &VerifyParams, smp_mode: bool) -> Result<()> {
    let caps = Caps::default();
    let named = primitive_groups()?;
    let rows = all_rows(run, params)?;
    let mut found = BTreeSet::new();
    let mut found_smp = BTreeSet::new();
    for r in rows.iter().filter(|r| r.mp()) {
        let g = r.affine_group(&caps)?;
        let expr = row_expr(r);
        match identify(&g, &named)? {
            Some(name) => {
                run.count("MP primitive rows");
                run.note(
                    EvidenceKind::Check,
                    expr,
                    format!("{} (degree {}, |G0|={}, smp={}) is isomorphic to {name}", r.label(), r.q, r.analysis.g0_order, r.smp()),
                );
                found.insert(name);
                if r.smp() {
                    found_smp.insert(name);
                }
            }
            None => run.note(
                EvidenceKind::Failure,
                expr,
                format!("{}: MP primitive group not isomorphic to any listed group", r.label()),
            ),
        }
    }
    if smp_mode {
        let want: BTreeSet<&str> = PRIMITIVE_SMP.iter().copied().collect();
        run.check(found_smp == want, "SMP list matches", "primitive SMP groups", || {
            format!("found {found_smp:?}, expected {want:?}")
        });
        for (name, g) in &named {
            let r = magnus_status(g);
            let listed = PRIMITIVE_SMP.contains(name);
            run.check(r.smp == listed, "listed SMP status confirmed", name, || describe(&r));
        }
    } else {
        for (name, _) in &named {
            run.check(found.contains(name), "listed groups found", name, || {
                format!("no MP primitive group isomorphic to {name} for q <= {} or the GL(2,p) route", params.qmax)
            });
        }
        for (name, g) in named.iter().filter(|(n, _)| !["C(2)", "C(3)"].contains(n)) {
            let ok = frobenius_decomposition(g)?.is_some_and(|d| is_frobenius(g, &d));
            run.check(ok, "Frobenius decompositions", name, || "no valid Frobenius decomposition".into());
        }
    }
    for q in LITERATURE_DEGREES {
        run.note(
            EvidenceKind::Literature,
            format!("degree {q}"),
            "trusted to literature: stabilizers outside ΓL(1,q) at this degree are not recomputed",
        );
    }
    Ok(())
}

fn main1bis(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let s4 = build("S(4)")?;
    let mut exceptional = Vec::new();
    for q in [4u64, 8, 9, 16] {
        let f = FieldTable::new(q)?;
        let gens = [SemilinearMap::linear(f.primitive_element, 0), SemilinearMap::linear(1, 1 % f.n)];
        let name = format!("AGammaL(1,{q})");
        let a = affine_analysis(q, &gens)?;
        run.check(a.mp_hypothesis && a.irreducible, "orbit condition holds", &name, || format!("{a:?}"));
        let g0 = build(&format!("GammaL(1,{q})"))?;
        let r0 = magnus_status(&g0);
        run.check(r0.mp, "stabilizer is MP", &format!("GammaL(1,{q})"), || describe(&r0));
        let g = build(&name)?;
        let r = magnus_status(&g);
        if run.check(!r.mp, "not MP", &name, || describe(&r)) {
            run.note(EvidenceKind::Check, name.clone(), describe(&r));
        }
        if q == 4 {
            let iso = is_isomorphic(&g, &s4).is_isomorphic();
            run.check(iso, "AGammaL(1,4) is S4", &name, || "not isomorphic to S(4)".into());
        }
        exceptional.push((name, g));
    }
    run.info(
        "hypothesis",
        "any two nonzero vectors are conjugate or inverse-conjugate in G, i.e. one G0-orbit or two swapped by negation",
    );
    // Every irreducible row meeting the hypotheses is MP or one of the four.
    let named: Vec<(&'static str, Group)> = exceptional
        .iter()
        .zip(["AGammaL(1,4)", "AGammaL(1,8)", "AGammaL(1,9)", "AGammaL(1,16)"])
        .map(|((_, g), n)| (n, g.clone()))
        .collect();
    for r in all_rows(run, params)? {
        if let Some(Verdict::Full { report }) = &r.verdict {
            if report.mp {
                run.count("hypotheses met, MP");
                continue;
            }
            let g = r.affine_group(&Caps::default())?;
            let which = identify(&g, &named)?;
            run.check(which.is_some(), "hypotheses met, exceptional", &row_expr(&r), || {
                format!("{}: hypotheses hold but not MP and not one of the four ({})", r.label(), describe(report))
            });
        }
    }
    Ok(())
}

fn is_special(name: &str) -> bool {
    name == "C7:C3" || name == "AGL(1,5)"
}

/// MP of a product of primitive MP groups, read off the pairwise condition.
fn predicted_mp(names: &[&str]) -> bool {
    (0..names.len()).all(|i| {
        !is_special(names[i])
            || (0..names.len())
                .filter(|&j| j != i)
                .all(|j| (names[i] == "AGL(1,5)" && names[j] == "AGL(1,5)") || PRIMITIVE_SMP.contains(&names[j]))
    })
}

fn product_of(names: &[&str]) -> String {
    names.join(" x ")
}

/// `Quot(expr, |N|, i)` with quotient isomorphic to `target` and not MP.
fn non_mp_quotient(g: &Group, expr: &str, target: &Group) -> Result<Option<(String, MagnusReport)>> {
    let normals = all_normal_subgroups(g)?;
    let need = g.order() / target.order();
    for (i, n) in normals.iter().filter(|n| n.size() == need).enumerate() {
        let (q, _) = quotient(g, n)?;
        if is_isomorphic(&q, target).is_isomorphic() {
            let r = magnus_status(&q);
            if !r.mp {
                return Ok(Some((format!("Quot({expr}, {need}, {i})"), r)));
            }
        }
    }
    Ok(None)
}

fn mpdir_pairs(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let pool = pool(params.jobs)?;
    let mut cases: Vec<Vec<&str>> = Vec::new();
    let k = PRIMITIVE_MP.len();
    for i in 0..k {
        for j in i..k {
            cases.push(vec![PRIMITIVE_MP[i], PRIMITIVE_MP[j]]);
        }
    }
    let order = |n: &str| build(n).map(|g| g.order());
    let orders: BTreeMap<&str, usize> = PRIMITIVE_MP.iter().map(|&n| Ok((n, order(n)?))).collect::<Result<_>>()?;
    let mut triples = 0;
    for i in 0..k {
        for j in i..k {
            for l in j..k {
                let t = [PRIMITIVE_MP[i], PRIMITIVE_MP[j], PRIMITIVE_MP[l]];
                if t.iter().map(|n| orders[n]).product::<usize>() <= params.triple_order_max {
                    cases.push(t.to_vec());
                    triples += 1;
                }
            }
        }
    }
    let results: Vec<Result<MagnusReport>> =
        pool.install(|| cases.par_iter().map(|c| Ok(magnus_status(&build(&product_of(c))?))).collect());
    for (c, r) in cases.iter().zip(results) {
        let r = r?;
        let expr = product_of(c);
        let want = predicted_mp(c);
        let key = if c.len() == 2 { "pairs match" } else { "triples match" };
        if run.check(r.mp == want, key, &expr, || format!("predicted mp={want}, computed {}", describe(&r))) && c.len() == 2 {
            run.info(expr, format!("mp={} smp={} predicted mp={want}", r.mp, r.smp));
        }
    }
    run.set("triples", triples);

    let c7c3sq = build("C7:C3 x C7:C3")?;
    let r = magnus_status(&c7c3sq);
    run.check(!r.mp, "named cases", "C7:C3 x C7:C3", || describe(&r));
    let c12 = build("C(12)")?;
    for other in ["C7:C3", "C(3)", "A(4)", "AGL(1,7)"] {
        let expr = if other == "C7:C3" {
            "C7:C3 x AGL(1,5)".to_string()
        } else {
            format!("AGL(1,5) x {other}")
        };
        let g = build(&expr)?;
        let r = magnus_status(&g);
        run.check(!r.mp, "named cases", &expr, || describe(&r));
        match non_mp_quotient(&g, &expr, &c12)? {
            Some((q, rq)) => run.note(EvidenceKind::Check, q, format!("isomorphic to C3 x C4, {}", describe(&rq))),
            None => run.note(EvidenceKind::Failure, expr, "no quotient isomorphic to C3 x C4"),
        }
    }
    Ok(())
}

fn crown(run: &mut Run, params: &VerifyParams) -> Result<()> {
    for l in PRIMITIVE_MP {
        for k in 1..=params.kmax {
            let expr = format!("Crown({l}, {k})");
            let g = match build(&expr) {
                Ok(g) => g,
                Err(e) if e.is_resource_cap() && !(l == "M9" && k == 2) => {
                    run.count("skipped");
                    run.note(EvidenceKind::Skip, expr, e.to_string());
                    continue;
                }
                Err(e) => return Err(e),
            };
            let r = magnus_status(&g);
            let mp = !(l == "M9" && k >= 2);
            let smp = mp && PRIMITIVE_SMP.contains(&l);
            run.check(r.mp == mp && r.smp == smp, "crowns match", &expr, || {
                format!("expected mp={mp} smp={smp}, computed {}", describe(&r))
            });
            if l == "M9" && k == 2 {
                run.note(EvidenceKind::Check, expr, describe(&r));
            }
        }
    }
    Ok(())
}

/// `(N, H)` with `N` the socle when the product criterion's hypotheses hold for `g`.
fn frobenius_factor(g: &Group) -> Result<std::result::Result<(ElementSet, ElementSet), String>> {
    let mn = minimal_normal_subgroups(g);
    let n = mn.socle;
    if n.size() == 1 {
        return Ok(Err("trivial socle".into()));
    }
    let cd = g.classes();
    let classes: BTreeSet<usize> = n.iter().skip(1).map(|x| cd.class(x)).collect();
    if classes.len() != 1 {
        return Ok(Err(format!("socle minus identity splits into {} classes", classes.len())));
    }
    let need = g.order() / n.size();
    let h = if need == 1 {
        Some(g.trivial_set())
    } else {
        all_subgroups(g)?.into_iter().find(|h| h.size() == need && h.intersection(&n).size() == 1)
    };
    let Some(h) = h else {
        return Ok(Err("socle has no complement".into()));
    };
    let free = h.iter().skip(1).all(|x| n.iter().skip(1).all(|y| g.mul(x, y) != g.mul(y, x)));
    if !free {
        return Ok(Err("a complement element centralizes part of the socle".into()));
    }
    Ok(Ok((n, h)))
}

fn frobenius_products(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let mut ok: Vec<(&str, Group, Group)> = Vec::new();
    for (name, g) in primitive_groups()? {
        match frobenius_factor(&g)? {
            Ok((n, h)) => {
                let (hg, _) = g.subgroup_as_group(&h, format!("H({name})"))?;
                run.info(name, format!("N of order {}, H of order {}", n.size(), h.size()));
                ok.push((name, g, hg));
            }
            Err(why) => run.info(name, format!("hypotheses fail: {why}")),
        }
    }
    let k = ok.len();
    let mut cases: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        for j in i..k {
            cases.push(vec![i, j]);
            for l in j..k {
                cases.push(vec![i, j, l]);
            }
        }
    }
    cases.retain(|c| c.iter().map(|&i| ok[i].1.order()).product::<usize>() <= params.triple_order_max);
    let pool = pool(params.jobs)?;
    let results: Vec<Result<(bool, bool)>> = pool.install(|| {
        cases
            .par_iter()
            .map(|c| {
                let hs: Vec<Group> = c.iter().map(|&i| ok[i].2.clone()).collect();
                let hmp = magnus_status(&build_direct_product(&hs)?).mp;
                let gs: Vec<Group> = c.iter().map(|&i| ok[i].1.clone()).collect();
                let gmp = if hmp { magnus_status(&build_direct_product(&gs)?).mp } else { false };
                Ok((hmp, gmp))
            })
            .collect()
    });
    for (c, r) in cases.iter().zip(results) {
        let (hmp, gmp) = r?;
        let expr = product_of(&c.iter().map(|&i| ok[i].0).collect::<Vec<_>>());
        if !hmp {
            run.count("complement product not MP (no claim)");
            continue;
        }
        run.check(gmp, "products MP as claimed", &expr, || "complement product is MP but the product is not".into());
    }
    Ok(())
}

fn smp_products(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let bs = ["C(2)", "S(3)", "M9", "E(2,2)", "Crown(S(3), 2)"];
    let as_ = [
        "C(1)", "C(3)", "C(4)", "C(6)", "C(8)", "C(12)", "E(3,2)", "D(8)", "D(10)", "Q8", "QD16", "S(3)", "S(4)", "A(4)",
        "A(5)", "C7:C3", "AGL(1,5)", "AGL(1,7)", "M9",
    ];
    let mut cases = Vec::new();
    for b in bs {
        let gb = build(b)?;
        let rb = magnus_status(&gb);
        if !run.check(rb.smp, "factors B are SMP", b, || describe(&rb)) {
            continue;
        }
        for a in as_ {
            if build(a)?.order() * gb.order() <= params.triple_order_max {
                cases.push((a, b));
            }
        }
    }
    let pool = pool(params.jobs)?;
    let results: Vec<Result<(MagnusReport, MagnusReport)>> = pool.install(|| {
        cases
            .par_iter()
            .map(|(a, b)| Ok((magnus_status(&build(a)?), magnus_status(&build(&format!("{a} x {b}"))?))))
            .collect()
    });
    for ((a, b), r) in cases.iter().zip(results) {
        let (ra, rab) = r?;
        let expr = format!("{a} x {b}");
        run.check(rab.mp == ra.mp, "MP equivalence", &expr, || {
            format!("A: {}; A x B: {}", describe(&ra), describe(&rab))
        });
        run.check(rab.smp == ra.smp, "SMP equivalence", &expr, || {
            format!("A: {}; A x B: {}", describe(&ra), describe(&rab))
        });
    }
    Ok(())
}

/// Runs `f` over the selected members in parallel and merges the events in corpus order.
fn over_members<F>(run: &mut Run, params: &VerifyParams, select: impl Fn(&Member) -> bool, f: F) -> Result<&'static Corpus>
where
    F: Fn(&Member) -> Result<Vec<Event>> + Sync,
{
    let corpus = default_corpus(params.jobs)?;
    let chosen: Vec<&Member> = corpus.members.iter().filter(|m| select(m)).collect();
    run.set("corpus members", corpus.members.len() as u64);
    run.set("members examined", chosen.len() as u64);
    for (e, why) in &corpus.skipped {
        run.note(EvidenceKind::Skip, e.clone(), format!("not in corpus: {why}"));
    }
    let pool = pool(params.jobs)?;
    let results: Vec<Result<Vec<Event>>> = pool.install(|| chosen.par_iter().map(|m| f(m)).collect());
    for (m, r) in chosen.iter().zip(results) {
        match r {
            Ok(ev) => run.absorb(ev),
            Err(e) if e.is_resource_cap() => {
                run.count("skipped");
                run.note(EvidenceKind::Skip, m.expr.clone(), e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(corpus)
}

fn primes_of(g: &Group) -> Vec<u64> {
    prime_factors(g.order() as u64)
}

fn fitting(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let corpus = over_members(run, params, |m| m.report.mp, |m| {
        Ok(match fitting_height(&m.group) {
            Ok(h) if h <= 2 => vec![Event::Ok("h <= 2")],
            Ok(h) => vec![fail(&m.expr, format!("Fitting height {h}"))],
            Err(Error::NotSolvable) => vec![fail(&m.expr, "MP group is not solvable")],
            Err(e) => return Err(e),
        })
    })?;
    // Informational: derived lengths across the MP corpus.
    let mut table: BTreeMap<usize, (u64, usize, &str)> = BTreeMap::new();
    for m in corpus.mp() {
        let d = crate::structure::derived_series(&m.group).derived_length;
        let e = table.entry(d).or_insert((0, 0, ""));
        e.0 += 1;
        if m.group.order() > e.1 {
            e.1 = m.group.order();
            e.2 = &m.expr;
        }
    }
    for (d, (n, ord, ex)) in table {
        run.info(
            format!("derived length {d}"),
            format!("{n} MP corpus groups; largest of order {ord}: {ex} (informational)"),
        );
    }
    Ok(())
}

fn primes(run: &mut Run, params: &VerifyParams) -> Result<()> {
    over_members(run, params, |m| m.report.mp && m.group.order() > 1, |m| {
        let ps = primes_of(&m.group);
        let mut ev = Vec::new();
        if ps.iter().all(|p| [2, 3, 5, 7].contains(p)) {
            ev.push(Event::Ok("primes in {2,3,5,7}"));
        } else {
            ev.push(fail(&m.expr, format!("prime divisors {ps:?}")));
        }
        if is_nilpotent(&m.group) {
            if ps.iter().all(|p| [2, 3].contains(p)) {
                ev.push(Event::Ok("nilpotent: primes in {2,3}"));
            } else {
                ev.push(fail(&m.expr, format!("nilpotent with prime divisors {ps:?}")));
            }
            if m.report.smp {
                if ps == [2] {
                    ev.push(Event::Ok("nilpotent SMP: 2-group"));
                } else {
                    ev.push(fail(&m.expr, format!("nilpotent SMP with prime divisors {ps:?}")));
                }
            }
        }
        Ok(ev)
    })?;
    Ok(())
}

/// True when some quotient of `g` is isomorphic to `target`.
fn has_quotient(g: &Group, target: &Group) -> Result<bool> {
    if g.order() % target.order() != 0 {
        return Ok(false);
    }
    let need = g.order() / target.order();
    for n in all_normal_subgroups(g)?.iter().filter(|n| n.size() == need) {
        if is_isomorphic(&quotient(g, n)?.0, target).is_isomorphic() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn prank(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let a4 = build("A(4)")?;
    let m9 = build("M9")?;
    over_members(run, params, |m| m.report.mp && m.group.order() > 1, |m| {
        let g = &m.group;
        let mut ev = Vec::new();
        if !is_solvable(g) {
            return Ok(vec![fail(&m.expr, "MP group is not solvable")]);
        }
        if let Err(e) = subgroup_lattice(g) {
            return if e.is_resource_cap() {
                Ok(vec![Event::Note(EvidenceKind::Skip, m.expr.clone(), e.to_string())])
            } else {
                Err(e)
            };
        }
        let cs = chief_series(g);
        let phi = frattini(g)?;
        let csq = chief_series(&quotient(g, &phi)?.0);
        for p in primes_of(g) {
            let (r, s, rq) = (cs.p_rank(p), s_p(g, p)?, csq.p_rank(p));
            let mut check = |ok: bool, key: &'static str, what: String| {
                ev.push(if ok { Event::Ok(key) } else { fail(&m.expr, format!("p={p}: {what}")) });
            };
            check(s == r, "S_p = r_p", format!("S_p={s} r_p={r}"));
            check(r <= 2, "r_p <= 2", format!("r_p={r}"));
            check(rq == r, "r_p(G) = r_p(G/Phi)", format!("r_p={r} r_p(G/Phi)={rq} with |Phi|={}", phi.size()));
            match p {
                2 | 3 => {
                    let target = if p == 2 { &a4 } else { &m9 };
                    let hq = has_quotient(g, target)?;
                    check((s == 1) == !hq, "S_p = 1 iff no A4 / M9 quotient", format!("S_p={s}, quotient {} present: {hq}", target.name()));
                }
                _ => check(s == 1 && r == 1, "S_p = r_p = 1 for p >= 5", format!("S_p={s} r_p={r}")),
            }
        }
        Ok(ev)
    })?;
    Ok(())
}

fn chief_orders(run: &mut Run, params: &VerifyParams) -> Result<()> {
    const MP_ORDERS: [usize; 6] = [2, 3, 4, 5, 7, 9];
    const SMP_ORDERS: [usize; 4] = [2, 3, 4, 9];
    over_members(run, params, |m| m.report.mp, |m| {
        let orders = chief_series(&m.group).factor_orders();
        let mut ev = Vec::new();
        let bad: Vec<usize> = orders.iter().copied().filter(|o| !MP_ORDERS.contains(o)).collect();
        ev.push(if bad.is_empty() { Event::Ok("MP orders allowed") } else { fail(&m.expr, format!("chief factor orders {orders:?}")) });
        if m.report.smp {
            let bad = orders.iter().any(|o| !SMP_ORDERS.contains(o));
            ev.push(if !bad { Event::Ok("SMP orders allowed") } else { fail(&m.expr, format!("SMP with chief factor orders {orders:?}")) });
        }
        Ok(ev)
    })?;
    let named = primitive_groups()?;
    for o in MP_ORDERS {
        let who = named.iter().find(|(_, g)| chief_series(g).factor_orders().contains(&o)).map(|(n, _)| *n);
        match who {
            Some(n) => run.note(EvidenceKind::Check, format!("order {o}"), format!("chief factor of {n}")),
            None => run.note(EvidenceKind::Failure, format!("order {o}"), "no primitive MP group has a chief factor of this order"),
        }
    }
    Ok(())
}

fn power23(run: &mut Run) -> Result<()> {
    let got = power23_solutions(60, 40);
    let want: BTreeSet<(u32, u32)> = [(1, 0), (1, 1), (2, 1), (3, 2)].into();
    run.check(got == want, "solution set", "|2^a - 3^b| = 1, a <= 60, b <= 40", || format!("found {got:?}"));
    run.info("solutions", format!("{got:?}"));
    Ok(())
}

fn solvable_with_lattice(m: &Member) -> Result<Option<Vec<Event>>> {
    if !is_solvable(&m.group) {
        return Ok(Some(Vec::new()));
    }
    match subgroup_lattice(&m.group) {
        Ok(_) => Ok(None),
        Err(e) if e.is_resource_cap() => Ok(Some(vec![Event::Note(EvidenceKind::Skip, m.expr.clone(), e.to_string())])),
        Err(e) => Err(e),
    }
}

fn srineq(run: &mut Run, params: &VerifyParams) -> Result<()> {
    over_members(run, params, |m| m.group.order() > 1, |m| {
        if let Some(ev) = solvable_with_lattice(m)? {
            return Ok(ev);
        }
        let cs = chief_series(&m.group);
        let mut ev = Vec::new();
        for p in primes_of(&m.group) {
            let (s, r) = (s_p(&m.group, p)?, cs.p_rank(p));
            ev.push(if 1 <= s && s <= r {
                Event::Ok("1 <= S_p <= r_p")
            } else {
                fail(&m.expr, format!("p={p}: S_p={s} r_p={r}"))
            });
        }
        Ok(ev)
    })?;
    Ok(())
}

fn huppert(run: &mut Run, params: &VerifyParams) -> Result<()> {
    let max = params.huppert_order_max;
    over_members(run, params, |m| m.group.order() > 1 && m.group.order() <= max, |m| {
        if let Some(ev) = solvable_with_lattice(m)? {
            return Ok(ev);
        }
        let cs = chief_series(&m.group);
        let mut ev = Vec::new();
        for p in primes_of(&m.group) {
            let (j, r) = (j_p(&m.group, p)?, cs.p_rank(p));
            ev.push(if j == r { Event::Ok("j_p = r_p") } else { fail(&m.expr, format!("p={p}: j_p={j} r_p={r}")) });
        }
        Ok(ev)
    })?;
    Ok(())
}

fn abelian(run: &mut Run) -> Result<()> {
    let s = abelian_survey(128)?;
    for r in &s.rows {
        let expr = r.divisors.iter().map(|d| format!("C({d})")).collect::<Vec<_>>().join(" x ");
        let expr = if expr.is_empty() { "C(1)".to_string() } else { expr };
        run.check(r.mp == r.predicted, "shape matches", &expr, || format!("mp={} but shape predicts {}", r.mp, r.predicted));
        if r.mp {
            run.count("MP abelian groups");
        }
    }
    run.set("abelian groups", s.rows.len() as u64);
    Ok(())
}

fn degree(run: &mut Run) -> Result<()> {
    let b = degree_bound()?;
    run.check(b.cyclic_mp_orders == [1, 2, 3, 4, 6], "cyclic MP orders", "C(m), m <= 50", || {
        format!("{:?}", b.cyclic_mp_orders)
    });
    run.check(euler_phi(42) == 12 && b.m_max == 42, "m_max", "largest m <= 200 with phi(m) <= 12", || {
        format!("m_max={}", b.m_max)
    });
    run.check(b.bound == 505, "bound", "1 + 2 m_max l", || format!("bound={}", b.bound));
    run.info("degree bound", format!("{b:?}"));
    Ok(())
}

fn frattini_lemma(run: &mut Run, params: &VerifyParams) -> Result<()> {
    over_members(run, params, |m| !m.group.is_abelian(), |m| {
        if let Some(ev) = solvable_with_lattice(m)? {
            return Ok(ev);
        }
        let g = &m.group;
        let phi = frattini(g)?;
        if phi.size() == 1 {
            return Ok(vec![Event::Ok("Frattini subgroup trivial")]);
        }
        let normals = all_normal_subgroups(g)?;
        let mut ev = Vec::new();
        for n in minimal_normal_subgroups(g).subgroups.iter().filter(|n| n.is_subset(&phi)) {
            let p = prime_factors(n.size() as u64)[0];
            let cn = centralizer(g, n);
            for k in normals.iter().filter(|k| n.is_subset(k)) {
                let series = chief_series_between(g, Sub::generated(g, n.iter()), k, TieBreak::Least);
                let hyp = series.factors.iter().filter(|f| f.prime == Some(p)).all(|f| k.is_subset(&f.centralizer));
                if !hyp {
                    continue;
                }
                ev.push(if k.is_subset(&cn) {
                    Event::Ok(if k == n { "instances (K = N)" } else { "instances (K > N)" })
                } else {
                    fail(
                        &m.expr,
                        format!("N={:?} K={:?}: K centralizes the chief {p}-factors above N but not N", n.to_vec(), k.to_vec()),
                    )
                });
            }
        }
        Ok(ev)
    })?;
    Ok(())
}

fn oracle(run: &mut Run, params: &VerifyParams) -> Result<()> {
    over_members(run, params, |m| m.group.order() <= PAIRWISE_CHECK_ORDER, |m| {
        let counting = magnus_counting(&m.group);
        let pairwise = magnus_pairwise(&m.group);
        Ok(vec![if counting.mp == pairwise.is_none() {
            Event::Ok("verdicts agree")
        } else {
            fail(&m.expr, format!("counting: {}; pairwise witness {pairwise:?}", describe(&counting)))
        }])
    })?;
    Ok(())
}

fn quotient_closure(run: &mut Run, params: &VerifyParams) -> Result<()> {
    over_members(run, params, |m| m.report.mp, |m| {
        let g = &m.group;
        let mut ev = vec![if is_solvable(g) { Event::Ok("solvable") } else { fail(&m.expr, "MP group is not solvable") }];
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        for n in all_normal_subgroups(g)?.iter() {
            let i = index.entry(n.size()).or_insert(0);
            let this = *i;
            *i += 1;
            if n.size() == 1 {
                continue;
            }
            let r = magnus_counting(&quotient(g, n)?.0);
            let subject = || format!("Quot({}, {}, {this})", m.expr, n.size());
            ev.push(if r.mp { Event::Ok("quotients MP") } else { fail(subject(), describe(&r)) });
            if m.report.smp {
                ev.push(if r.smp { Event::Ok("quotients of SMP groups SMP") } else { fail(subject(), describe(&r)) });
            }
        }
        Ok(ev)
    })?;
    Ok(())
}

fn gl2_sets(run: &mut Run) -> Result<()> {
    for (p, want) in [(2u64, vec!["C(3)", "S(3)"]), (3, vec!["C(4)", "D(8)", "Q8", "QD16"])] {
        let got = irreducible_subgroups_gl2(p, true)?;
        let want: Vec<(&'static str, Group)> = want.into_iter().map(|n| Ok((n, build(n)?))).collect::<Result<_>>()?;
        let mut names = BTreeSet::new();
        for g in &got {
            match identify(g, &want)? {
                Some(n) => {
                    names.insert(n);
                }
                None => run.note(EvidenceKind::Failure, format!("GL(2,{p})"), format!("unexpected irreducible MP subgroup of order {}", g.order())),
            }
        }
        let all: BTreeSet<&str> = want.iter().map(|(n, _)| *n).collect();
        run.check(names == all && got.len() == all.len(), "sets match", &format!("GL(2,{p})"), || {
            format!("found {names:?} ({} classes), expected {all:?}", got.len())
        });
        run.info(format!("GL(2,{p})"), format!("{names:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(claim: &str) -> ClaimReport {
        verify(claim, &VerifyParams { qmax: 16, kmax: 2, ..Default::default() }).unwrap()
    }

    #[test]
    fn arithmetic_claims_pass() {
        for c in ["power23", "degree-bound", "gl2"] {
            let r = quick(c);
            assert_eq!(r.status, Status::Pass, "{c}: {:?}", r.evidence);
        }
    }

    #[test]
    fn exceptional_four() {
        let r = quick("main1bis");
        assert_eq!(r.status, Status::Pass, "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.count("not MP"), 4);
    }

    #[test]
    fn crown_evidence_mentions_m9() {
        let r = quick("crown");
        assert_eq!(r.status, Status::Pass, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.evidence.iter().any(|e| e.subject == "Crown(M9, 2)" && e.detail.contains("mp=false")));
    }

    #[test]
    fn unknown_claim_is_an_error() {
        assert!(matches!(verify("nope", &VerifyParams::default()), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn predicted_condition() {
        assert!(!predicted_mp(&["C7:C3", "C7:C3"]));
        assert!(!predicted_mp(&["C7:C3", "AGL(1,5)"]));
        assert!(predicted_mp(&["AGL(1,5)", "AGL(1,5)"]));
        assert!(predicted_mp(&["C7:C3", "M9"]));
        assert!(predicted_mp(&["C(3)", "A(4)"]));
        assert!(!predicted_mp(&["AGL(1,5)", "C(3)"]));
        assert!(!predicted_mp(&["AGL(1,5)", "AGL(1,5)", "C(3)"]));
    }

    #[test]
    fn reports_serialize_without_runtime() {
        let r = quick("power23");
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("{\"schema\":1,\"claim\":\"power23\",\"status\":\"pass\""));
        assert!(!s.contains("runtime") && !s.contains("jobs"));
    }
}
