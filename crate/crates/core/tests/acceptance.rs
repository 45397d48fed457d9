//! The twelve acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use magnus::classify::claims::EvidenceKind;
use magnus::classify::{verify, ClaimReport, Status, VerifyParams};

type Outcome = Result<(), String>;

fn run(claim: &str, params: &VerifyParams) -> Result<ClaimReport, String> {
    let r = verify(claim, params).map_err(|e| format!("{claim}: {e}"))?;
    match r.status {
        Status::Pass => Ok(r),
        s => {
            let first: Vec<String> = r
                .evidence
                .iter()
                .filter(|e| matches!(e.kind, EvidenceKind::Failure | EvidenceKind::Cap))
                .take(3)
                .map(|e| format!("{}: {}", e.subject, e.detail))
                .collect();
            Err(format!("{claim} {s:?}: {}", first.join("; ")))
        }
    }
}

fn ensure(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn has(r: &ClaimReport, kind: EvidenceKind, subject: &str, detail: &str) -> bool {
    r.evidence.iter().any(|e| e.kind == kind && e.subject == subject && e.detail.contains(detail))
}

fn defaults() -> VerifyParams {
    VerifyParams::default()
}

fn primitive() -> Outcome {
    let p = VerifyParams { qmax: 505, ..defaults() };
    let r = run("primitive-mp", &p)?;
    ensure(r.count("listed groups found") == 8, "not all eight groups found")?;
    for d in [81, 121, 529] {
        ensure(
            has(&r, EvidenceKind::Literature, &format!("degree {d}"), "trusted to literature"),
            "literature degrees missing",
        )?;
    }
    let s = run("primitive-smp", &p)?;
    ensure(s.count("SMP list matches") == 1, "SMP sublist differs")
}

fn endpoints() -> Outcome {
    let r = run("main1bis", &defaults())?;
    ensure(r.count("not MP") == 4 && r.count("AGammaL(1,4) is S4") == 1, "endpoint checks missing")?;
    ensure(r.count("orbit condition holds") == 4 && r.count("stabilizer is MP") == 4, "hypotheses not confirmed")
}

fn crowns() -> Outcome {
    let r = run("crown", &defaults())?;
    ensure(has(&r, EvidenceKind::Check, "Crown(M9, 2)", "mp=false"), "Crown(M9, 2) not shown non-MP")?;
    for l in ["S(3)", "A(4)", "AGL(1,5)", "C7:C3", "AGL(1,7)"] {
        for k in 1..=3 {
            let s = format!("Crown({l}, {k})");
            ensure(!r.evidence.iter().any(|e| e.subject == s), &format!("{s} not decided"))?;
        }
    }
    ensure(r.count("crowns match") >= 15, "too few crowns decided")
}

fn products() -> Outcome {
    let r = run("mpdir-pairs", &defaults())?;
    ensure(r.count("pairs match") == 36, "not all 36 pairs match")?;
    ensure(r.count("triples match") == r.count("triples"), "triples inconsistent")?;
    let q = r
        .evidence
        .iter()
        .any(|e| e.kind == EvidenceKind::Check && e.subject.starts_with("Quot(C7:C3 x AGL(1,5), 35,") && e.detail.contains("C3 x C4"));
    ensure(q, "no C3 x C4 quotient witness for (C7:C3) x AGL(1,5)")?;
    ensure(has(&r, EvidenceKind::Info, "C7:C3 x C7:C3", "mp=false"), "(C7:C3)^2 not shown non-MP")
}

fn oracle() -> Outcome {
    let r = run("oracle", &defaults())?;
    ensure(r.count("verdicts agree") == r.count("members examined"), "not every member compared")
}

fn quotients() -> Outcome {
    let r = run("quotient-closure", &defaults())?;
    ensure(r.count("solvable") == r.count("members examined"), "solvability not checked everywhere")
}

fn p_ranks() -> Outcome {
    run("prank", &defaults())?;
    run("srineq", &defaults())?;
    run("huppert", &defaults()).map(|_| ())
}

fn chief() -> Outcome {
    let r = run("chief-orders", &defaults())?;
    for o in [2, 3, 4, 5, 7, 9] {
        ensure(has(&r, EvidenceKind::Check, &format!("order {o}"), "chief factor of"), "order not witnessed")?;
    }
    Ok(())
}

fn arithmetic() -> Outcome {
    run("power23", &defaults())?;
    let r = run("degree-bound", &defaults())?;
    ensure(r.count("bound") == 1 && r.count("m_max") == 1, "bound checks missing")
}

fn abelian() -> Outcome {
    let r = run("abelian", &defaults())?;
    ensure(r.count("shape matches") == r.count("abelian groups") && r.count("abelian groups") > 0, "survey incomplete")
}

fn gl2() -> Outcome {
    let r = run("gl2", &defaults())?;
    ensure(r.count("sets match") == 2, "GL(2,p) sets differ")
}

fn fitting_primes() -> Outcome {
    let f = run("fitting", &defaults())?;
    ensure(f.count("h <= 2") == f.count("members examined"), "Fitting height not checked everywhere")?;
    let p = run("primes", &defaults())?;
    ensure(p.count("primes in {2,3,5,7}") == p.count("members examined"), "prime check incomplete")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("primitive MP classification, q <= 505", primitive),
        ("exceptional affine endpoints", endpoints),
        ("crown-based powers", crowns),
        ("direct products of primitive MP groups", products),
        ("counting criterion agrees with the definition", oracle),
        ("quotient closure and solvability", quotients),
        ("p-rank suite", p_ranks),
        ("chief factor orders", chief),
        ("arithmetic lemmas", arithmetic),
        ("abelian classification", abelian),
        ("irreducible MP subgroups of GL(2,2), GL(2,3)", gl2),
        ("Fitting height and prime divisors", fitting_primes),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.1?})", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
