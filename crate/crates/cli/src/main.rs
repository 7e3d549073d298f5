//! Batch front end: JSONL jobs in, one report per job out (text or JSON),
//! plus smaller subcommands for the local table, a direct witness search,
//! and the built-in example reproduction.
//!
//! Exit codes: 0 success, 1 any job failed, 2 example reproduction mismatch.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use unram_core::arith::{is_prime, Int, Rat};
use unram_core::criteria::{evaluate_conditions, not_divisible, witness_search, NotInPE};
use unram_core::curve::{RationalPoint, WeierstrassModel};
use unram_core::job::{reproduce_examples, run_job, CurveJob, Report};
use unram_core::local::{bad_primes, PotentialReduction};

#[derive(Parser)]
#[command(
    name = "unram",
    version,
    about = "Certified lower bounds on the p-part of class numbers of division fields, \
             via everywhere-unramified rational points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Overrides {
    /// The odd prime p.
    #[arg(long)]
    p: Option<String>,
    /// The level n: bounds are certified at p^n.
    #[arg(long)]
    n: Option<u32>,
    /// Largest multiple of each base tried in the witness search.
    #[arg(long)]
    kmax: Option<u32>,
    /// Auxiliary primes up to this bound feed the divisibility and
    /// independence scans.
    #[arg(long)]
    aux_bound: Option<u64>,
    /// Good primes up to this bound feed the irreducibility certificate.
    #[arg(long)]
    ell_bound: Option<u64>,
    /// Extension degrees up to this bound feed the torsion probe.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Seed for the finite-field structure sampling; reports are
    /// reproducible byte for byte under a fixed seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on JSONL jobs from a file or stdin.
    Analyze {
        /// Input path with one JSON job per line; "-" or absent reads stdin.
        input: Option<PathBuf>,
        /// Shortcut: analyse a single curve "a1,a2,a3,a4,a6" instead.
        #[arg(long)]
        ainvs: Option<String>,
        #[command(flatten)]
        overrides: Overrides,
        /// Emit one JSON report per line instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the local reduction table of one curve.
    Local {
        /// The curve "a1,a2,a3,a4,a6".
        #[arg(long)]
        ainvs: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for certified witnesses from explicit base points.
    Witness {
        /// The curve "a1,a2,a3,a4,a6".
        #[arg(long)]
        ainvs: String,
        /// A base point "x,y"; repeat for several bases.
        #[arg(long = "base", required = true)]
        bases: Vec<String>,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long)]
        json: bool,
    },
    /// Re-run the built-in example curves against frozen expectations.
    ReproduceExamples {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_ainvs(s: &str) -> Result<[String; 5]> {
    let parts: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
    let n = parts.len();
    parts.try_into().map_err(|_| anyhow::anyhow!("expected 5 coefficients, got {n}"))
}

fn parse_point(s: &str) -> Result<(Rat, Rat)> {
    let (x, y) = s.split_once(',').context("expected a point \"x,y\"")?;
    Ok((
        Rat::from_str(x.trim()).map_err(|_| anyhow::anyhow!("unreadable x: {x}"))?,
        Rat::from_str(y.trim()).map_err(|_| anyhow::anyhow!("unreadable y: {y}"))?,
    ))
}

fn apply_overrides(mut job: CurveJob, o: &Overrides) -> CurveJob {
    job.p = job.p.or_else(|| o.p.clone());
    job.n = job.n.or(o.n);
    job.k_max = job.k_max.or(o.kmax);
    job.aux_bound = job.aux_bound.or(o.aux_bound);
    job.ell_bound = job.ell_bound.or(o.ell_bound);
    job.degree_bound = job.degree_bound.or(o.degree_bound);
    job
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let label = r
        .job
        .label
        .clone()
        .unwrap_or_else(|| format!("[{}]", r.job.ainvs.join(",")));
    let _ = writeln!(
        out,
        "== {label}  p = {}  n = {} ==",
        r.job.p.as_deref().unwrap_or("?"),
        r.job.n.unwrap_or(1)
    );
    let _ = writeln!(
        out,
        "minimal model [{}]  disc {}  j {}",
        r.model.minimal_ainvs.join(","),
        r.model.discriminant,
        r.model.j_invariant
    );
    for row in &r.local {
        let _ = writeln!(
            out,
            "local {}: {} c{} {} (potentially {}, v(j) = {})",
            row.ell, row.kodaira, row.tamagawa, row.kind, row.potential, row.v_j
        );
    }
    let _ = writeln!(out, "torsion {}", r.torsion);
    let _ = writeln!(
        out,
        "conditions: mult {} | add {} | inj {} | irr {}",
        r.conditions.multiplicative,
        r.conditions.additive,
        r.conditions.injectivity,
        r.conditions.irreducibility
    );
    for c in &r.certificates {
        let _ = writeln!(
            out,
            "witness base {} x {} at level {}: v(x) = {}, v(x/y) = {}, formal oracle {}, {}{}",
            c.base_index,
            c.multiple,
            c.level,
            c.vp_x,
            c.vp_x_over_y,
            if c.formal_oracle_agrees { "agrees" } else { "DISAGREES" },
            c.not_in_pe,
            if c.torsion_base { " (torsion base)" } else { "" }
        );
    }
    if let Some(ind) = &r.independence {
        let _ = writeln!(out, "independence rank {} via [{}]", ind.rank, ind.primes.join(", "));
    }
    let _ = write!(
        out,
        "bounds: r_ur >= {}, v_p(class number) >= {}",
        r.bounds.r_ur_lower, r.bounds.class_valuation_lower
    );
    if let Some(m) = r.bounds.multiplicity_lower {
        let _ = write!(out, ", multiplicity >= {m}");
    }
    out.push('\n');
    for c in &r.bounds.conditional_on {
        let _ = writeln!(out, "conditional on: {c}");
    }
    for h in &r.bounds.heuristic_notes {
        let _ = writeln!(out, "note: {h}");
    }
    for c in &r.caveats {
        let _ = writeln!(out, "caveat: {c}");
    }
    out
}

fn analyze(
    input: Option<PathBuf>,
    ainvs: Option<String>,
    overrides: &Overrides,
    json: bool,
) -> Result<ExitCode> {
    let mut jobs: Vec<CurveJob> = Vec::new();
    let mut failed = false;
    if let Some(a) = ainvs {
        jobs.push(CurveJob {
            label: None,
            ainvs: parse_ainvs(&a)?,
            p: None,
            n: None,
            gens: None,
            points: None,
            assume_irreducible: None,
            k_max: None,
            aux_bound: None,
            ell_bound: None,
            degree_bound: None,
        });
    } else {
        let text = match input {
            Some(path) if path.as_os_str() != "-" => fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?,
            _ => {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
                buf
            }
        };
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CurveJob>(line) {
                Ok(job) => jobs.push(job),
                Err(e) => {
                    eprintln!("line {}: unreadable job: {e}", lineno + 1);
                    failed = true;
                }
            }
        }
    }

    let jobs: Vec<CurveJob> = jobs.into_iter().map(|j| apply_overrides(j, overrides)).collect();
    let seed = overrides.seed;
    let results: Vec<_> = jobs.par_iter().map(|job| run_job(job, seed)).collect();

    for (job, result) in jobs.iter().zip(&results) {
        match result {
            Ok(report) => {
                if json {
                    println!("{}", serde_json::to_string(report)?);
                } else {
                    print!("{}", render_text(report));
                }
            }
            Err(e) => {
                let label = job.label.as_deref().unwrap_or("(unlabelled)");
                eprintln!("{label}: {} : {e}", e.code());
                failed = true;
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn local(ainvs: &str, json: bool) -> Result<ExitCode> {
    let coeffs = parse_ainvs(ainvs)?;
    let mut parsed = Vec::new();
    for c in &coeffs {
        parsed.push(Rat::from_str(c).map_err(|_| anyhow::anyhow!("unreadable number: {c}"))?);
    }
    let model = WeierstrassModel::new(parsed.try_into().expect("five coefficients"))
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let table = bad_primes(&model).map_err(|e| anyhow::anyhow!("{e}"))?;
    for (ell, data) in &table {
        let potential = match data.potential {
            PotentialReduction::Good => "good",
            PotentialReduction::Multiplicative => "multiplicative",
        };
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "ell": ell.to_string(),
                    "kodaira": data.kodaira.to_string(),
                    "tamagawa": data.tamagawa,
                    "kind": data.kind.to_string(),
                    "potential": potential,
                    "v_disc_min": data.v_disc_min,
                    "v_j": data.v_j.to_string(),
                })
            );
        } else {
            println!(
                "{}: {} c{} {} (potentially {}, v(disc) = {}, v(j) = {})",
                ell, data.kodaira, data.tamagawa, data.kind, potential, data.v_disc_min, data.v_j
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witness(ainvs: &str, bases: &[String], o: &Overrides, json: bool) -> Result<ExitCode> {
    let coeffs = parse_ainvs(ainvs)?;
    let mut parsed = Vec::new();
    for c in &coeffs {
        parsed.push(Rat::from_str(c).map_err(|_| anyhow::anyhow!("unreadable number: {c}"))?);
    }
    let model = WeierstrassModel::new(parsed.try_into().expect("five coefficients"))
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let p_str = o.p.as_deref().context("--p is required for a witness search")?;
    let p = Int::from_str(p_str).map_err(|_| anyhow::anyhow!("unreadable p: {p_str}"))?;
    if (&p % Int::from(2)) == Int::from(0) || !is_prime(&p) {
        bail!("p must be an odd prime, got {p}");
    }
    let n = o.n.unwrap_or(1);
    let mut points = Vec::new();
    for b in bases {
        let (x, y) = parse_point(b)?;
        points.push(
            RationalPoint::new(&model, x, y).map_err(|e| anyhow::anyhow!("base {b}: {e}"))?,
        );
    }

    let conditions = evaluate_conditions(
        &model,
        &p,
        n,
        o.ell_bound.unwrap_or(unram_core::criteria::DEFAULT_ELL_BOUND),
        false,
    );
    let mut certs = witness_search(&points, &p, n, o.kmax.unwrap_or(50), &conditions);
    for cert in &mut certs {
        cert.not_in_pe = not_divisible(
            &cert.point,
            &p,
            None,
            o.aux_bound.unwrap_or(unram_core::criteria::DEFAULT_AUX_BOUND),
            o.seed,
        );
    }

    if certs.is_empty() {
        println!(
            "no certified witnesses (conditions: mult {}, add {})",
            conditions.multiplicative, conditions.additive
        );
        return Ok(ExitCode::SUCCESS);
    }
    for c in &certs {
        let (x, y) = c.point.coords().expect("witnesses are affine");
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "base_index": c.base_index,
                    "multiple": c.multiple,
                    "level": c.level,
                    "x": x.to_string(),
                    "y": y.to_string(),
                    "vp_x": c.vp_x.to_string(),
                    "vp_x_over_y": c.vp_x_over_y.to_string(),
                    "formal_oracle_agrees": c.formal_oracle_agrees,
                    "not_in_pe": matches!(
                        c.not_in_pe,
                        NotInPE::ProvedBasis { .. } | NotInPE::ProvedReduction { .. }
                    ),
                })
            );
        } else {
            println!(
                "base {} x {} at level {}: v(x) = {}, v(x/y) = {}, formal oracle {}, outside pE: {}",
                c.base_index,
                c.multiple,
                c.level,
                c.vp_x,
                c.vp_x_over_y,
                if c.formal_oracle_agrees { "agrees" } else { "DISAGREES" },
                match &c.not_in_pe {
                    NotInPE::ProvedBasis { .. } | NotInPE::ProvedReduction { .. } => "proved",
                    NotInPE::Divisible => "no (divisible)",
                    NotInPE::Unknown => "unknown",
                }
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn reproduce(json: bool, seed: u64) -> Result<ExitCode> {
    let (reports, mismatches) = reproduce_examples(seed);
    for report in &reports {
        if json {
            println!("{}", serde_json::to_string(report)?);
        } else {
            print!("{}", render_text(report));
        }
    }
    if mismatches.is_empty() {
        println!("reproduce-examples: PASS ({} reports)", reports.len());
        Ok(ExitCode::SUCCESS)
    } else {
        for m in &mismatches {
            eprintln!("mismatch: {m}");
        }
        eprintln!("reproduce-examples: FAIL ({} mismatches)", mismatches.len());
        Ok(ExitCode::from(2))
    }
}


fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { input, ainvs, overrides, json } => {
            analyze(input, ainvs, &overrides, json)
        }
        Command::Local { ainvs, json } => local(&ainvs, json),
        Command::Witness { ainvs, bases, overrides, json } => {
            witness(&ainvs, &bases, &overrides, json)
        }
        Command::ReproduceExamples { json, seed } => reproduce(json, seed),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
