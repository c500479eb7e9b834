use std::f64::consts::FRAC_PI_4;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use nilws::families::{build_family, Family, FamilySpec, Grid};
use nilws::normalizer::normalizer_algebra_with_tol;
use nilws::pair::{NonSingularityStatus, SampledConfig};
use nilws::ws::catalog::{nonsingularity, run_catalog};
use nilws::ws::obstruction::{dim7_obstruction, ObstructionConfig};
use nilws::ws::{ws_sample_verdict, VerdictConfig};
use nilws::Tolerances;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "nilws", version, about = "Weak symmetry of metric 2-step nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Family spec: a JSON file, or inline JSON starting with '{'.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Tolerance override NAME=VALUE (repeatable).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the JSON output to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family and print its basic invariants.
    Build(Common),
    /// Sampled weak-symmetry verdict with the applicable obstructions.
    VerifyWs(Common),
    /// Normalizer algebra 𝔫(V) = 𝔠(V) ⊕ 𝔭(V).
    Normalizer(Common),
    /// Non-singularity certificate or singular witness.
    Nonsingular(Common),
    /// The five central reductions of the maximal pair on ℝ⁸.
    Catalog {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        /// Inner product on V′ for entry 4, as a JSON 2 × 2 matrix.
        #[arg(long)]
        entry4_tail: Option<String>,
    },
    /// The sign obstruction on the 7-dimensional family.
    ObstructDim7 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
    },
}

#[derive(Serialize)]
struct RunConfig<'a> {
    command: &'a str,
    spec: Option<Value>,
    seed: u64,
    samples: usize,
    tolerances: Tolerances,
    out: Option<&'a Path>,
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(1, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_spec(common: &Common) -> Result<(FamilySpec, Value), Failure> {
    let raw = common.spec.as_deref().ok_or_else(|| Failure(1, "--spec is required".into()))?;
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw).map_err(|e| Failure(1, format!("cannot read {raw}: {e}")))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure(1, format!("malformed spec: {e}")))?;
    let spec: FamilySpec = serde_json::from_value(value.clone()).map_err(|e| Failure(1, format!("invalid spec: {e}")))?;
    Ok((spec, value))
}

fn tolerances(common: &Common) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    for t in &common.tol {
        tol.apply_override(t)?;
    }
    Ok(tol)
}

fn build(common: &Common) -> Result<(Family, Value), Failure> {
    let (spec, value) = read_spec(common)?;
    let fam = build_family(&spec)?;
    for w in &fam.warnings {
        eprintln!("warning: {w}");
    }
    Ok((fam, value))
}

fn run_config<'a>(command: &'a str, common: &'a Common, spec: Option<Value>, tol: Tolerances) -> RunConfig<'a> {
    RunConfig { command, spec, seed: common.seed, samples: common.samples, tolerances: tol, out: common.out.as_deref() }
}

fn envelope(run: &RunConfig, result: Value) -> Value {
    json!({ "version": VERSION, "run": run, "result": result })
}

fn emit(common: &Common, doc: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(doc)?;
    if let Some(path) = &common.out {
        std::fs::write(path, format!("{s}\n")).map_err(|e| Failure(1, format!("cannot write {}: {e}", path.display())))?;
    }
    if common.json {
        println!("{s}");
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn sampled(common: &Common, tol: &Tolerances) -> SampledConfig {
    SampledConfig { seed: common.seed, zero_threshold: tol.singular, ..SampledConfig::default() }
}

fn status_name(s: NonSingularityStatus) -> &'static str {
    match s {
        NonSingularityStatus::CertifiedNonsingular => "certified non-singular",
        NonSingularityStatus::SingularWithWitness => "singular (witness found)",
        NonSingularityStatus::NumericallyNonsingular => "numerically non-singular",
    }
}

fn cmd_build(common: &Common) -> Outcome {
    let tol = tolerances(common)?;
    let (fam, _) = build(common)?;
    let pair = &fam.pair;
    let ty = pair.eigenvalue_type();
    let ns = nonsingularity(pair, &sampled(common, &tol))?;
    let pair_json = serde_json::to_value(pair)?;
    if let Some(path) = &common.out {
        std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(&pair_json)?))?;
    }
    if common.json {
        let doc = json!({
            "pair": pair_json,
            "dim_v": pair.dim_v(),
            "dim_a": pair.dim_a(),
            "eigenvalue_type": ty.multiplicities,
            "nonsingularity": ns,
            "warnings": fam.warnings,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("family: {}", fam.kind.name());
        println!("dim V = {}", pair.dim_v());
        println!("dim 𝔞 = {}", pair.dim_a());
        println!("eigenvalue type: {:?}", ty.multiplicities);
        println!("non-singularity: {}", status_name(ns.status));
    }
    Ok(0)
}

fn cmd_verify(common: &Common) -> Outcome {
    let tol = tolerances(common)?;
    let (fam, value) = build(common)?;
    let cfg = VerdictConfig::new(common.samples, common.seed, tol);
    let report = ws_sample_verdict(&fam, &cfg)?;
    let run = run_config("verify-ws", common, Some(value), tol);
    let mut doc = serde_json::to_value(&report)?;
    doc["run"] = serde_json::to_value(&run)?;
    emit(common, &doc, || {
        let witnessed = report.samples.iter().filter(|s| s.witnessed).count();
        let mut t = format!(
            "family: {}\nverdict: {:?} (expected {:?})\nsamples: {} witnessed of {}, max residual {:.3e}\nnormalizer dims (𝔫, 𝔠, 𝔭): {:?}\n",
            report.family,
            report.verdict,
            report.expected,
            witnessed,
            report.samples.len(),
            report.max_residual,
            report.normalizer_dims
        );
        for v in &report.obstructions.violated {
            t += &format!("obstruction: {v}\n");
        }
        if !report.counterexample_candidates.is_empty() {
            t += &format!("counterexample candidates: {}\n", report.counterexample_candidates.len());
        }
        for w in &report.warnings {
            t += &format!("warning: {w}\n");
        }
        t
    })?;
    Ok(report.exit_code as u8)
}

fn cmd_normalizer(common: &Common) -> Outcome {
    let tol = tolerances(common)?;
    let (fam, value) = build(common)?;
    let nd = normalizer_algebra_with_tol(&fam.pair, tol.kernel);
    let run = run_config("normalizer", common, Some(value), tol);
    let doc = envelope(&run, serde_json::to_value(&nd)?);
    emit(common, &doc, || format!("dim 𝔫 = {}\ndim 𝔠 = {}\ndim 𝔭 = {}\nclosure residual: {:.3e}\n", nd.dims.0, nd.dims.1, nd.dims.2, nd.closure_residual))?;
    Ok(0)
}

fn cmd_nonsingular(common: &Common) -> Outcome {
    let tol = tolerances(common)?;
    let (fam, value) = build(common)?;
    let ns = nonsingularity(&fam.pair, &sampled(common, &tol))?;
    let nonsingular = ns.status != NonSingularityStatus::SingularWithWitness;
    let run = run_config("nonsingular", common, Some(value), tol);
    let doc = envelope(&run, json!({ "verdict": ns, "expected_nonsingular": fam.expected_nonsingular }));
    emit(common, &doc, || {
        let mut t = format!("{}\nmin |det J| on the unit sphere: {:.3e}\n", status_name(ns.status), ns.min_det_on_sphere);
        if let Some(w) = ns.exact_witness.as_ref() {
            t += &format!("exact witness: {w:?}\n");
        } else if let Some(w) = ns.witness.as_ref() {
            t += &format!("witness: {w:?}\n");
        }
        t
    })?;
    Ok(match fam.expected_nonsingular {
        Some(e) if e != nonsingular => 2,
        _ => 0,
    })
}

fn cmd_catalog(common: &Common, theta: f64, tail: Option<&str>) -> Outcome {
    let tol = tolerances(common)?;
    let tail: Option<Grid> = tail.map(serde_json::from_str).transpose().map_err(|e| Failure(1, format!("invalid --entry4-tail: {e}")))?;
    let cfg = VerdictConfig::new(common.samples, common.seed, tol);
    let rows = run_catalog(theta, tail.clone(), &cfg)?;
    let run = run_config("catalog", common, None, tol);
    let doc = envelope(&run, json!({ "theta": theta, "entry4_tail": tail, "rows": rows }));
    emit(common, &doc, || {
        let mut t = format!("{:<5} {:<22} {:<18} {:<18} {:<15} {:<15} {}\n", "case", "V′", "WS exp/comp", "non-sing exp/comp", "Clifford", "type", "match");
        for r in &rows {
            t += &format!(
                "{:<5} {:<22} {:<18} {:<18} {:<15} {:<15} {}\n",
                r.case,
                r.description,
                format!("{:?}/{:?}", r.expected_verdict, r.computed.verdict),
                format!("{}/{}", r.expected.is_nonsingular, r.computed.is_nonsingular),
                format!("{}/{}", r.expected.clifford, r.computed.clifford),
                format!("{:?}", r.computed.eigenvalue_type),
                if r.matches { "yes" } else { "NO" }
            );
        }
        t
    })?;
    let bad: Vec<u8> = rows.iter().filter(|r| !r.matches).map(|r| r.case).collect();
    if bad.is_empty() {
        Ok(0)
    } else {
        eprintln!("mismatched rows: {bad:?}");
        Ok(2)
    }
}

fn cmd_obstruct(common: &Common, theta: f64) -> Outcome {
    let tol = tolerances(common)?;
    let fam = build_family(&FamilySpec::Dim7Theta { theta, gram: None })?;
    let nd = normalizer_algebra_with_tol(&fam.pair, tol.kernel);
    let mut cfg = ObstructionConfig { x_samples: common.samples.min(ObstructionConfig::default().x_samples), ..Default::default() };
    cfg.search.success_penalty = tol.success_penalty;
    cfg.search.report_floor = tol.report_floor;
    let rep = dim7_obstruction(&fam.pair, theta, &nd, &fam.representatives, &cfg, common.seed)?;
    let run = run_config("obstruct-dim7", common, Some(serde_json::to_value(&fam.spec)?), tol);
    let doc = envelope(&run, serde_json::to_value(&rep)?);
    emit(common, &doc, || {
        let worst_phi = rep.phi_values.iter().map(|p| (p.trace - p.analytic).abs()).fold(0.0, f64::max);
        let best = rep.search_failures.iter().map(|f| f.best).fold(f64::INFINITY, f64::min);
        let eps6: Vec<i8> = rep.epsilons.iter().map(|e| e.signs[0]).collect();
        format!(
            "θ = {theta}\nmax ‖[D, J₆]‖, ‖[D, J′]‖ over 𝔫(V): {:.3e}\nε₆ on tested members: {:?}\nΦ trace vs closed form: {:.3e}\nbest search penalty at J = J₆: {:.3e}\n{}\n",
            rep.max_commutator, eps6, worst_phi, best, rep.conclusion
        )
    })?;
    Ok(if rep.necessary_conditions_violated { 0 } else { 3 })
}

fn configure_threads() {
    if let Some(n) = std::env::var("NILWS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let result = match &cli.command {
        Command::Build(c) => cmd_build(c),
        Command::VerifyWs(c) => cmd_verify(c),
        Command::Normalizer(c) => cmd_normalizer(c),
        Command::Nonsingular(c) => cmd_nonsingular(c),
        Command::Catalog { common, theta, entry4_tail } => cmd_catalog(common, *theta, entry4_tail.as_deref()),
        Command::ObstructDim7 { common, theta } => cmd_obstruct(common, *theta),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
