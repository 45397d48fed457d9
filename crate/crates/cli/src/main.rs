//! `magnus`: check groups for the Magnus property and run the verification suites.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use magnus::classify::{gammal1_search, verify, ClaimReport, Status, VerifyParams, CLAIM_IDS};
use magnus::expr::{build, parse_expr};
use magnus::field::prime_factors;
use magnus::lattice::{is_primitive, lattice_summary};
use magnus::structure::{chief_series, derived_series, fitting_height};
use magnus::{magnus_status, Error, Group};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "magnus", version, about = "Finite groups with the Magnus property")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide MP and SMP for a group expression.
    Check {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Structural invariants of a group expression.
    Invariants { expr: String },
    /// Run a named verification suite.
    Verify {
        claim: String,
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Raw classification search rows, as JSON.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
}

#[derive(Subcommand)]
enum SearchKind {
    /// Conjugacy classes of subgroups of GammaL(1,q) and their verdicts.
    Gammal1 {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckJson {
    schema: u32,
    expr: String,
    order: usize,
    mp: bool,
    smp: bool,
    a_count: usize,
    b_count: usize,
    all_real: bool,
    witness: Option<(usize, usize)>,
}

fn error_code(e: &Error) -> u8 {
    if e.is_resource_cap() {
        CAP
    } else {
        USAGE
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn canonical(text: &str) -> Result<(String, Group), Error> {
    let e = parse_expr(text)?.to_string();
    let g = build(&e)?;
    Ok((e, g))
}

fn check(expr: &str, json: bool) -> Result<u8, Error> {
    let (e, g) = canonical(expr)?;
    let r = magnus_status(&g);
    if json {
        let out = CheckJson {
            schema: 1,
            expr: e,
            order: g.order(),
            mp: r.mp,
            smp: r.smp,
            a_count: r.a_count,
            b_count: r.b_count,
            all_real: r.all_real,
            witness: r.witness,
        };
        println!("{}", to_json(&out));
    } else {
        println!("group     {e}");
        println!("order     {}", g.order());
        println!("mp        {}", r.mp);
        println!("smp       {}", r.smp);
        println!("|A(G)|    {}", r.a_count);
        println!("|B(G)|    {}", r.b_count);
        println!("all real  {}", r.all_real);
        if let Some((x, y)) = r.witness {
            let cd = g.classes();
            println!(
                "witness   elements {x} and {y} (classes {} and {}): same normal closure, neither conjugate nor inverse-conjugate",
                cd.class(x),
                cd.class(y)
            );
        }
    }
    Ok(PASS)
}

fn invariants(expr: &str) -> Result<u8, Error> {
    let (e, g) = canonical(expr)?;
    let ds = derived_series(&g);
    println!("group           {e}");
    println!("order           {}", g.order());
    println!("solvable        {}", ds.solvable);
    if ds.solvable {
        println!("derived length  {}", ds.derived_length);
        println!("fitting height  {}", fitting_height(&g)?);
    }
    let cs = chief_series(&g);
    let orders: Vec<String> = cs.factor_orders().iter().map(|o| o.to_string()).collect();
    println!("chief factors   {}", orders.join(" "));
    match lattice_summary(&g) {
        Ok(s) => {
            println!("subgroups       {}", s.subgroup_count);
            println!("|Phi(G)|        {}", s.frattini.size());
            let prim = is_primitive(&g)?;
            println!("primitive       {}", prim.is_some());
            println!();
            println!("{:>4} {:>4} {:>4} {:>4}", "p", "r_p", "S_p", "j_p");
            for (p, sp, jp) in s.per_prime {
                println!("{p:>4} {:>4} {sp:>4} {jp:>4}", cs.p_rank(p));
            }
        }
        Err(err) if err.is_resource_cap() => {
            println!("lattice         not computed: {err}");
            println!();
            println!("{:>4} {:>4}", "p", "r_p");
            for p in prime_factors(g.order() as u64) {
                println!("{p:>4} {:>4}", cs.p_rank(p));
            }
            return Ok(CAP);
        }
        Err(err) => return Err(err),
    }
    Ok(PASS)
}

fn print_report(r: &ClaimReport) {
    println!("claim   {}", r.claim);
    println!("status  {:?}", r.status);
    for (k, v) in &r.counts {
        println!("  {k:<44} {v}");
    }
    for e in &r.evidence {
        println!("[{:?}] {}: {}", e.kind, e.subject, e.detail);
    }
    println!("time    {:.2?}", r.runtime);
}

fn run_verify(claim: &str, qmax: Option<u64>, jobs: usize, json: bool) -> Result<u8, Error> {
    if !CLAIM_IDS.contains(&claim) {
        eprintln!("unknown claim `{claim}`; known claims: {}", CLAIM_IDS.join(", "));
        return Ok(USAGE);
    }
    let mut params = VerifyParams {
        jobs,
        ..Default::default()
    };
    if let Some(q) = qmax {
        params.qmax = q;
    }
    let r = verify(claim, &params)?;
    if json {
        println!("{}", to_json(&r));
    } else {
        print_report(&r);
    }
    Ok(match r.status {
        Status::Pass => PASS,
        Status::Fail => FAIL,
        Status::Inconclusive => CAP,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    let result = match cli.command {
        Command::Check { expr, json } => check(&expr, json),
        Command::Invariants { expr } => invariants(&expr),
        Command::Verify { claim, qmax, jobs, json } => run_verify(&claim, qmax, jobs, json),
        Command::Search {
            kind: SearchKind::Gammal1 { q },
        } => gammal1_search(q).map(|rows| {
            println!("{}", to_json(&rows));
            PASS
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
