mod config;
mod error;
mod render;
mod target;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kshift_core::genfun::{cache, expand_in_basis, expand_sym, Basis, Cache, StructureKind, StructureTable};
use kshift_core::identities::{run_check, CheckId, CheckParams, Status, VerificationReport};
use kshift_core::shapes::{SkewShape, StrictPartition};
use kshift_core::tableaux::{Enumerator, Family};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use config::{CliConfig, Format};
use error::{CliError, EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE};
use target::{Func, Target};

#[derive(Debug, Parser)]
#[command(name = "kshift", version, about = "Exact K-theoretic Schur P- and Q-function computations")]
struct Cli {
    /// Key-value config file (defaults to $KSHIFT_CONFIG when set).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for the on-disk cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable memoization entirely.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Specialize β to a rational value after exact computation.
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ShapeArgs {
    /// Outer shape, e.g. "4,2,1" (empty string for the empty shape).
    #[arg(long, allow_hyphen_values = true)]
    outer: String,
    #[arg(long)]
    inner: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a function as a polynomial.
    Compute {
        #[arg(long)]
        func: Func,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Use the double-slash skew shape λ//μ.
        #[arg(long)]
        doubleslash: bool,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Expand a function in one of the bases.
    Expand {
        #[arg(long)]
        target: Func,
        #[arg(long)]
        basis: Basis,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        doubleslash: bool,
        /// Expand the restriction to this many variables.
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Structure constants of GP/GQ products (a, b) or of double-slash
    /// functions (ahat, bhat).
    Constants {
        #[arg(long)]
        kind: StructureKind,
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// List or count tableaux of a family.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Largest entry value.
        #[arg(long)]
        max_value: u32,
        /// Bound on the number of extra entries in set-valued families.
        #[arg(long)]
        max_extra: Option<u32>,
        #[arg(long)]
        count_only: bool,
    },
    /// Run one registered identity check.
    Verify {
        #[arg(long)]
        id: CheckId,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the checks listed in a JSON manifest of {id, params} records.
    Batch {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    max_size: Option<u32>,
    #[arg(long)]
    nvars: Option<usize>,
    #[arg(long)]
    max_deg: Option<u32>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    max_part: Option<u32>,
    #[arg(long)]
    max_power: Option<u32>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
}

impl ParamArgs {
    fn to_params(&self, cfg: &CliConfig) -> CheckParams {
        CheckParams {
            max_size: self.max_size,
            nvars: self.nvars,
            max_deg: self.max_deg,
            nx: self.nx,
            ny: self.ny,
            max_part: self.max_part,
            max_power: self.max_power,
            trials: self.trials,
            seed: Some(self.seed.unwrap_or(cfg.seed)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestEntry {
    id: String,
    #[serde(default)]
    params: CheckParams,
}

struct Ctx {
    cfg: CliConfig,
    beta: Option<BigRational>,
}

fn build_config(cli: &Cli) -> Result<CliConfig, CliError> {
    let mut cfg = CliConfig::default();
    let file = cli.config.clone().or_else(|| std::env::var_os("KSHIFT_CONFIG").filter(|v| !v.is_empty()).map(PathBuf::from));
    if let Some(path) = file {
        cfg.apply_file(&path)?;
    }
    cfg.apply_env(|k| std::env::var(k).ok())?;
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = Some(dir.clone());
    }
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        cfg.jobs = j;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    Ok(cfg)
}

fn setup(cli: &Cli) -> Result<Ctx, CliError> {
    let cfg = build_config(cli)?;
    let beta = match &cli.beta {
        Some(s) => Some(
            s.trim().parse::<BigRational>().map_err(|_| CliError::Usage(format!("--beta expects a rational, got {s:?}")))?,
        ),
        None => None,
    };
    // A pool may already exist when running inside a test harness.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build_global();
    if cli.no_cache {
        cache::configure(Cache::disabled());
    } else {
        if let Some(dir) = &cfg.cache_dir {
            fs::create_dir_all(dir).map_err(|e| CliError::Resource(format!("cache directory {}: {e}", dir.display())))?;
        }
        cache::configure(Cache::new(cfg.cache_dir.clone()));
    }
    Ok(Ctx { cfg, beta })
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::Resource(format!("stdout: {e}")))
}

fn emit_json(v: &Value) -> Result<(), CliError> {
    emit(&serde_json::to_string_pretty(v).expect("serializable"))
}

fn cmd_compute(
    ctx: &Ctx,
    func: Func,
    shape: &ShapeArgs,
    doubleslash: bool,
    vars: Option<usize>,
    max_deg: Option<u32>,
) -> Result<i32, CliError> {
    let t = Target::parse(func, &shape.outer, shape.inner.as_deref(), doubleslash)?;
    let nvars = vars.unwrap_or(ctx.cfg.nvars);
    let max_deg = max_deg.or(ctx.cfg.max_deg);
    let p = t.poly(nvars, max_deg)?;
    match ctx.cfg.format {
        Format::Text => match &ctx.beta {
            Some(b) => emit(&render::specialized_text(&p, b))?,
            None => emit(&p.to_string())?,
        },
        Format::Json => {
            let poly = match &ctx.beta {
                Some(b) => render::specialized_json(&p, b),
                None => p.to_json_value(),
            };
            emit_json(&json!({
                "func": func.to_string(),
                "outer": t.outer,
                "inner": t.inner,
                "doubleslash": doubleslash,
                "nvars": nvars,
                "max_deg": p.max_deg(),
                "text": p.to_string(),
                "poly": poly,
            }))?;
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_expand(
    ctx: &Ctx,
    func: Func,
    basis: Basis,
    shape: &ShapeArgs,
    doubleslash: bool,
    vars: Option<usize>,
    max_deg: Option<u32>,
) -> Result<i32, CliError> {
    let t = Target::parse(func, &shape.outer, shape.inner.as_deref(), doubleslash)?;
    let max_deg = max_deg.or(ctx.cfg.max_deg);
    // Expansions into GP/GQ are infinite, so they always need a bound.
    let needs_bound = func.is_series() || matches!(basis, Basis::GP | Basis::GQ);
    let cap = if needs_bound { Some(t.series_bound(max_deg)) } else { max_deg };
    let e = match vars {
        Some(n) => expand_in_basis(&t.poly(n, cap)?, basis, cap)?,
        None => expand_sym(&t.sym(cap)?, basis, cap)?,
    };
    match ctx.cfg.format {
        Format::Text => emit(&format!("{}\n{}", t.label(), render::expansion_text(&e, ctx.beta.as_ref())))?,
        Format::Json => {
            let mut v = render::expansion_json(&e, ctx.beta.as_ref());
            v["target"] = json!(t.label());
            emit_json(&v)?;
        }
    }
    Ok(if e.residual_zero() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_constants(ctx: &Ctx, kind: StructureKind, first: &str, second: &str, max_deg: Option<u32>) -> Result<i32, CliError> {
    let a: StrictPartition = first.parse()?;
    let b: StrictPartition = second.parse()?;
    let cap = max_deg.or(ctx.cfg.max_deg).unwrap_or(a.size() + b.size() + 2);
    let table = StructureTable::compute(kind, &a, &b, cap)?;
    match ctx.cfg.format {
        Format::Json => emit_json(&table.to_json_value())?,
        Format::Text => {
            let mut lines = vec![format!("{kind} constants for ({a}) and ({b}), degree cap {cap}")];
            lines.extend(table.entries.iter().map(|(l, v)| format!("({l}): {v}")));
            emit(&lines.join("\n"))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(
    ctx: &Ctx,
    family: Family,
    shape: &ShapeArgs,
    max_value: u32,
    max_extra: Option<u32>,
    count_only: bool,
) -> Result<i32, CliError> {
    let outer: StrictPartition = shape.outer.parse()?;
    let inner: StrictPartition = shape.inner.as_deref().unwrap_or("").parse()?;
    let s = SkewShape::checked(outer, inner)?;
    let en = Enumerator::new(family, &s, max_value, max_extra)?;
    if count_only {
        let n = en.count();
        match ctx.cfg.format {
            Format::Text => emit(&n.to_string())?,
            Format::Json => emit_json(&json!({
                "family": family.name(), "shape": s.to_string(), "max_value": max_value, "count": n,
            }))?,
        }
        return Ok(EXIT_OK);
    }
    match ctx.cfg.format {
        Format::Text => {
            let mut out = BufWriter::new(io::stdout().lock());
            let mut failure = None;
            en.for_each(|t| {
                if failure.is_none() {
                    if let Err(e) = writeln!(out, "{t}") {
                        failure = Some(e);
                    }
                }
            });
            if let Some(e) = failure.or_else(|| out.flush().err()) {
                return Err(CliError::Resource(format!("stdout: {e}")));
            }
        }
        Format::Json => {
            let mut all = Vec::new();
            en.for_each(|t| all.push(t.to_string()));
            emit_json(&json!({
                "family": family.name(), "shape": s.to_string(), "max_value": max_value,
                "count": all.len(), "tableaux": all,
            }))?;
        }
    }
    Ok(EXIT_OK)
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass | Status::Match => EXIT_OK,
        Status::Fail | Status::Mismatch => EXIT_MISMATCH,
        Status::Error => EXIT_RESOURCE,
    }
}

fn print_report(ctx: &Ctx, r: &VerificationReport) -> Result<(), CliError> {
    match ctx.cfg.format {
        Format::Text => emit(&r.to_string()),
        Format::Json => emit_json(&r.to_json_value()),
    }
}

fn cmd_verify(ctx: &Ctx, id: CheckId, params: &ParamArgs) -> Result<i32, CliError> {
    let r = run_check(id, &params.to_params(&ctx.cfg))?;
    print_report(ctx, &r)?;
    Ok(status_code(r.status))
}

fn read_manifest(path: &Path) -> Result<Vec<(CheckId, CheckParams)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input { path: path.to_path_buf(), source: e })?;
    let entries: Vec<ManifestEntry> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    entries.into_iter().map(|e| Ok((e.id.parse::<CheckId>()?, e.params))).collect()
}

fn cmd_batch(ctx: &Ctx, manifest: &Path) -> Result<i32, CliError> {
    let entries = read_manifest(manifest)?;
    let mut reports = Vec::with_capacity(entries.len());
    for (id, mut params) in entries {
        params.seed.get_or_insert(ctx.cfg.seed);
        let r = run_check(id, &params)?;
        if ctx.cfg.format == Format::Text {
            print_report(ctx, &r)?;
        }
        reports.push(r);
    }
    let code = reports.iter().map(|r| status_code(r.status)).max().unwrap_or(EXIT_OK);
    if ctx.cfg.format == Format::Json {
        let all: Vec<Value> = reports.iter().map(VerificationReport::to_json_value).collect();
        emit_json(&json!({ "reports": all, "exit_code": code }))?;
    }
    Ok(code)
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let ctx = setup(cli)?;
    match &cli.command {
        Command::Compute { func, shape, doubleslash, vars, max_deg } => {
            cmd_compute(&ctx, *func, shape, *doubleslash, *vars, *max_deg)
        }
        Command::Expand { target, basis, shape, doubleslash, vars, max_deg } => {
            cmd_expand(&ctx, *target, *basis, shape, *doubleslash, *vars, *max_deg)
        }
        Command::Constants { kind, first, second, max_deg } => cmd_constants(&ctx, *kind, first, second, *max_deg),
        Command::Enumerate { family, shape, max_value, max_extra, count_only } => {
            cmd_enumerate(&ctx, *family, shape, *max_value, *max_extra, *count_only)
        }
        Command::Verify { id, params } => cmd_verify(&ctx, *id, params),
        Command::Batch { manifest } => cmd_batch(&ctx, manifest),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
