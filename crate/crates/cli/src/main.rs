//! `superq`: run verification suites, dump matrices, compare against gold files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use superq_core::gold::{compare_dumps, CompareMode, GoldMatrix};
use superq_core::lattice::build_l_prefundamental;
use superq_core::prefund::{build_prefundamental, build_verma, character, truncated_character};
use superq_core::repr_affine::{build_r_closed_form, FqMode, ModuleKind};
use superq_core::repr_osp::{build_r_osp, build_w};
use superq_core::scalar::{GaussianRational, QParams, Scalar};
use superq_core::suite::{run_suite, RunConfig, Suite};
use superq_core::superlinalg::{MatrixDump, Sign};

#[derive(Parser)]
#[command(name = "superq", version, about = "Verification harness for U_q(osp(2|1)) and U_q(C(2)(2))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite and print its JSON report.
    Verify(VerifyArgs),
    /// Dump a matrix or character as JSON.
    #[command(subcommand)]
    Dump(DumpCommand),
    /// Compare a matrix dump against a gold dump.
    CompareGold(CompareArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// osp, affine, root-vectors, prefund, grothendieck, functional or all;
    /// omitted, the config's `suites` key is used.
    suite: Option<String>,
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// exact, numeric or both.
    #[arg(long)]
    backend: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points for pointwise checks.
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    max_spin: Option<i64>,
    /// Fock levels N.
    #[arg(long)]
    fock: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Order M of the f_q series.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    twist: Option<f64>,
    #[arg(long)]
    lambda_ratio: Option<f64>,
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads (0: one per core).
    #[arg(long)]
    workers: Option<usize>,
    /// Also write the report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Keep only checks whose id contains this text.
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Args)]
struct Common {
    /// q_*; exact as `a/b+c/d*i`, numeric as `re,im`.
    #[arg(long, default_value = "5/3+1/7*i")]
    qs: String,
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DumpCommand {
    /// R on W_{2l₁}^{e₁} ⊗ W_{2l₂}^{e₂}.
    ROsp {
        #[arg(long, default_value_t = 0.5)]
        l1: f64,
        #[arg(long, default_value_t = 0.5)]
        l2: f64,
        #[arg(long, value_enum, default_value = "plus")]
        e1: SignArg,
        #[arg(long, value_enum, default_value = "plus")]
        e2: SignArg,
        /// Also write the transcribed gold matrix at the same parameters.
        #[arg(long)]
        gold_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form R(λ₁, λ₂).
    RAffine {
        #[arg(long, default_value_t = 0.5)]
        l1: f64,
        #[arg(long, default_value_t = 0.5)]
        l2: f64,
        #[arg(long, value_enum, default_value = "plus")]
        e1: SignArg,
        #[arg(long, value_enum, default_value = "plus")]
        e2: SignArg,
        #[arg(long, default_value = "1/3")]
        lambda1: String,
        #[arg(long, default_value = "2")]
        lambda2: String,
        /// `omit` or `series:M`.
        #[arg(long, default_value = "omit")]
        fq: String,
        #[arg(long)]
        gold_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Normalised prefundamental L on ρ_±(λ) ⊗ W₁⁺(ν).
    LOp {
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        #[arg(long, default_value = "1/5")]
        lambda: String,
        #[arg(long, default_value = "1")]
        nu: String,
        #[arg(long, default_value_t = 8)]
        fock: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Character of a module, and of its truncation when `--levels` is given.
    Character {
        /// eval, verma, prefundamental or onedim.
        #[arg(long)]
        module: String,
        /// Spin s, or p for onedim.
        #[arg(long, default_value_t = 1)]
        s: i64,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Tolerance,
}

#[derive(Args)]
struct CompareArgs {
    dump: PathBuf,
    gold: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Reference entry as `row,col` labels.
    #[arg(long)]
    reference: Option<String>,
    /// Scalars of the dumps: exact or numeric.
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
}

/// Usage errors exit with 2, everything else with 1.
enum Failure {
    Usage(anyhow::Error),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn twice(l: f64) -> Result<i64, Failure> {
    let s = 2.0 * l;
    if s < 0.0 || s.fract() != 0.0 {
        return Err(usage(anyhow!("spin {l} is not a non-negative half-integer")));
    }
    Ok(s as i64)
}

fn scalar<S: Scalar>(s: &str) -> Result<S, Failure> {
    let text = if S::BACKEND == GaussianRational::BACKEND || s.contains(',') {
        s.to_string()
    } else {
        format!("{s},0")
    };
    S::parse_scalar(&text).map_err(|e| usage(anyhow!("`{s}`: {e}")))
}

fn params<S: Scalar>(qs: &str) -> Result<QParams<S>, Failure> {
    QParams::new(scalar::<S>(qs)?).map_err(|e| usage(anyhow!(e)))
}

fn fq_mode(s: &str) -> Result<FqMode, Failure> {
    if s == "omit" {
        return Ok(FqMode::Omitted);
    }
    s.strip_prefix("series:")
        .and_then(|m| m.parse().ok())
        .map(FqMode::Series)
        .ok_or_else(|| usage(anyhow!("--fq must be `omit` or `series:M`")))
}

fn gold_for(osp: bool, s1: i64, s2: i64, e1: Sign, e2: Sign) -> Result<GoldMatrix, Failure> {
    let g = match (osp, s1, s2) {
        (true, 1, 1) => GoldMatrix::OspW1W1,
        (true, 2, 2) => GoldMatrix::OspW2W2,
        (false, 1, 1) => GoldMatrix::AffineHalf,
        (false, 2, 2) => GoldMatrix::AffineOne,
        _ => return Err(usage(anyhow!("no gold matrix for spins ({s1}, {s2})"))),
    };
    if !(e1.is_plus() && e2.is_plus()) {
        return Err(usage(anyhow!("gold matrices are on W⁺ ⊗ W⁺")));
    }
    Ok(g)
}

fn dump_r_osp<S: Scalar>(l1: f64, l2: f64, e1: Sign, e2: Sign, gold_out: Option<&Path>, c: &Common) -> Result<(), Failure> {
    let (s1, s2) = (twice(l1)?, twice(l2)?);
    let p = params::<S>(&c.qs)?;
    let gold = gold_out.map(|_| gold_for(true, s1, s2, e1, e2)).transpose()?;
    let (a, b) = (build_w(s1, e1, &p).map_err(usage)?, build_w(s2, e2, &p).map_err(usage)?);
    let r = build_r_osp(&a, &b).map_err(|e| anyhow!(e))?;
    let dump = MatrixDump::from_matrix(&r.matrix)
        .with_normalization(r.normalization())
        .with_meta("object", "r-osp")
        .with_meta("qs", p.qs().to_scalar_string());
    emit(c.out.as_deref(), &dump.to_json())?;
    if let (Some(path), Some(g)) = (gold_out, gold) {
        let one = S::one();
        let m = g.build(&p, &one, &one).map_err(|e| anyhow!(e))?;
        let gd = MatrixDump::from_matrix(&m).with_meta("gold", g.name());
        emit(Some(path), &gd.to_json())?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn dump_r_affine<S: Scalar>(
    l1: f64,
    l2: f64,
    e1: Sign,
    e2: Sign,
    lambda1: &str,
    lambda2: &str,
    fq: &str,
    gold_out: Option<&Path>,
    c: &Common,
) -> Result<(), Failure> {
    let (s1, s2) = (twice(l1)?, twice(l2)?);
    let p = params::<S>(&c.qs)?;
    let (x1, x2) = (scalar::<S>(lambda1)?, scalar::<S>(lambda2)?);
    let mode = fq_mode(fq)?;
    let gold = gold_out.map(|_| gold_for(false, s1, s2, e1, e2)).transpose()?;
    let r = build_r_closed_form(s1, e1, &x1, s2, e2, &x2, mode, &p).map_err(|e| anyhow!(e))?;
    let dump = MatrixDump::from_matrix(&r.product().map_err(|e| anyhow!(e))?)
        .with_normalization(r.normalization())
        .with_meta("object", "r-affine")
        .with_meta("qs", p.qs().to_scalar_string())
        .with_meta("lambda1", x1.to_scalar_string())
        .with_meta("lambda2", x2.to_scalar_string())
        .with_meta("fq", fq);
    emit(c.out.as_deref(), &dump.to_json())?;
    if let (Some(path), Some(g)) = (gold_out, gold) {
        let m = g.build(&p, &x1, &x2).map_err(|e| anyhow!(e))?;
        emit(Some(path), &MatrixDump::from_matrix(&m).with_meta("gold", g.name()).to_json())?;
    }
    Ok(())
}

fn dump_l_op<S: Scalar>(sign: Sign, lambda: &str, nu: &str, fock: usize, nmax: usize, c: &Common) -> Result<(), Failure> {
    let p = params::<S>(&c.qs)?;
    let (l, n) = (scalar::<S>(lambda)?, scalar::<S>(nu)?);
    let m = build_l_prefundamental(sign, &l, &n, fock, nmax, &p).map_err(|e| anyhow!(e))?;
    let dump = MatrixDump::from_matrix(&m)
        .with_meta("object", "l-op")
        .with_meta("fock", fock.to_string())
        .with_meta("nmax", nmax.to_string());
    emit(c.out.as_deref(), &dump.to_json())?;
    Ok(())
}

fn dump_character(module: &str, s: i64, sign: Sign, levels: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let lv = levels.unwrap_or(0);
    let kind = match module {
        "eval" => ModuleKind::Eval { s, sign },
        "verma" => ModuleKind::Verma { s, sign, levels: lv },
        "prefundamental" => ModuleKind::Prefundamental { sign, levels: lv },
        "onedim" => ModuleKind::OneDim { p: s, sign },
        _ => return Err(usage(anyhow!("unknown module `{module}`"))),
    };
    let ch = character(kind);
    let mut v = json!({
        "label": ch.label,
        "numerator": ch.num.to_string(),
        "denominator": ch.den.to_string(),
        "convention": "sum over basis of (-1)^|v| t^(-J(v))",
    });
    if let Some(n) = levels {
        let p = QParams::new(GaussianRational::from_parts(5, 3, 1, 7)).map_err(|e| anyhow!(e))?;
        let lam = GaussianRational::one();
        let built = match kind {
            ModuleKind::Verma { .. } => build_verma(s, sign, &lam, n, &p),
            ModuleKind::Prefundamental { .. } => build_prefundamental(sign, &lam, n, &p),
            _ => return Err(usage(anyhow!("--levels applies to verma and prefundamental modules"))),
        }
        .map_err(|e| anyhow!(e))?;
        let t = truncated_character(&built);
        v["truncated"] = json!(t.to_string());
        v["truncation_residual"] = json!(ch.truncation_residual(&t).to_string());
    }
    emit(out, &serde_json::to_string_pretty(&v).expect("json"))?;
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<i32, Failure> {
    let mut pairs = Vec::new();
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
        pairs.extend(RunConfig::parse_kv(&text).map_err(usage)?);
    }
    pairs.extend(RunConfig::env_pairs(|k| std::env::var(k).ok()));
    let mut flag = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            pairs.push((k.to_string(), v));
        }
    };
    if let Some(s) = &a.suite {
        Suite::parse_selection(s).map_err(usage)?;
    }
    flag("suites", a.suite.clone());
    flag("preset", a.preset.clone());
    flag("backend", a.backend.clone());
    flag("seed", a.seed.map(|x| x.to_string()));
    flag("seeds", a.seeds.map(|x| x.to_string()));
    flag("max-spin", a.max_spin.map(|x| x.to_string()));
    flag("fock-levels", a.fock.map(|x| x.to_string()));
    flag("nmax", a.nmax.map(|x| x.to_string()));
    flag("fq-order", a.order.map(|x| x.to_string()));
    flag("twist", a.twist.map(|x| x.to_string()));
    flag("lambda-ratio", a.lambda_ratio.map(|x| x.to_string()));
    flag("sites", a.sites.map(|x| x.to_string()));
    flag("tolerance", a.tol.map(|x| x.to_string()));
    flag("workers", a.workers.map(|x| x.to_string()));
    flag("report", a.report.as_ref().map(|p| p.display().to_string()));
    flag("filter", a.filter.clone());
    let cfg = RunConfig::from_pairs(&pairs).map_err(usage)?;
    cfg.validate().map_err(usage)?;
    let report = run_suite(&cfg).map_err(|e| anyhow!(e))?;
    println!("{}", report.to_json());
    eprintln!(
        "{} checks: {} proved-exact, {} passed-numeric, {} failed, {} skipped ({:.1} s)",
        report.summary.total,
        report.summary.proved_exact,
        report.summary.passed_numeric,
        report.summary.failed,
        report.summary.skipped,
        report.seconds
    );
    Ok(report.exit_code())
}

fn compare(a: CompareArgs) -> Result<i32, Failure> {
    let read = |p: &Path| -> Result<MatrixDump, Failure> {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(usage)?;
        MatrixDump::from_json(&text).map_err(|e| usage(anyhow!("{}: {e}", p.display())))
    };
    let (dump, gold) = (read(&a.dump)?, read(&a.gold)?);
    let reference = match &a.reference {
        Some(r) => {
            let (row, col) = r.split_once(',').ok_or_else(|| usage(anyhow!("--reference must be `row,col`")))?;
            Some((row.trim().to_string(), col.trim().to_string()))
        }
        None => None,
    };
    let mode = match a.mode {
        ModeArg::Exact => CompareMode::Exact,
        ModeArg::Tolerance => CompareMode::Tolerance(a.tol),
    };
    let res = match a.backend {
        BackendArg::Exact => compare_dumps::<GaussianRational>(&dump, &gold, mode, reference),
        BackendArg::Numeric => compare_dumps::<Complex64>(&dump, &gold, mode, reference),
    }
    .map_err(usage)?;
    println!("{}", serde_json::to_string_pretty(&res).expect("json"));
    Ok(i32::from(!res.matches))
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::CompareGold(a) => compare(a),
        Command::Dump(d) => {
            match d {
                DumpCommand::ROsp { l1, l2, e1, e2, gold_out, common } => match common.backend {
                    BackendArg::Exact => {
                        dump_r_osp::<GaussianRational>(l1, l2, e1.into(), e2.into(), gold_out.as_deref(), &common)
                    }
                    BackendArg::Numeric => {
                        dump_r_osp::<Complex64>(l1, l2, e1.into(), e2.into(), gold_out.as_deref(), &common)
                    }
                }?,
                DumpCommand::RAffine { l1, l2, e1, e2, lambda1, lambda2, fq, gold_out, common } => {
                    let g = gold_out.as_deref();
                    match common.backend {
                        BackendArg::Exact => dump_r_affine::<GaussianRational>(
                            l1, l2, e1.into(), e2.into(), &lambda1, &lambda2, &fq, g, &common,
                        ),
                        BackendArg::Numeric => {
                            dump_r_affine::<Complex64>(l1, l2, e1.into(), e2.into(), &lambda1, &lambda2, &fq, g, &common)
                        }
                    }?
                }
                DumpCommand::LOp { sign, lambda, nu, fock, nmax, common } => match common.backend {
                    BackendArg::Exact => dump_l_op::<GaussianRational>(sign.into(), &lambda, &nu, fock, nmax, &common),
                    BackendArg::Numeric => dump_l_op::<Complex64>(sign.into(), &lambda, &nu, fock, nmax, &common),
                }?,
                DumpCommand::Character { module, s, sign, levels, out } => {
                    dump_character(&module, s, sign.into(), levels, out.as_deref())?
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
