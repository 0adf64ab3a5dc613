mod format;
mod functions;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hzk_core::error::Error;
use hzk_core::verify::{self, Ctx as VerifyCtx, RunConfig, VerificationReport};
use serde::Serialize;

use format::Format;
use functions::{Params, Value};

const DEFAULT_SEED: u64 = 42;
const DEFAULT_SERIES_TOL: f64 = 1e-14;

#[derive(Parser)]
#[command(name = "hzk", version, about = "Hurwitz zeta derivatives, negapolygammas and verified integral tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval {
        #[command(flatten)]
        target: Target,
        /// Series truncation tolerance.
        #[arg(long, default_value_t = DEFAULT_SERIES_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Run an identity suite.
    Verify {
        /// all, core, ak, negapoly, primitives, definite or constants.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replace every identity's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Run a single identity instead of a suite.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a function over a grid of q, z or n values.
    Table {
        #[command(flatten)]
        target: Target,
        /// lo:hi:step
        #[arg(long)]
        q_grid: Option<String>,
        /// lo:hi:step
        #[arg(long)]
        z_grid: Option<String>,
        /// Rows n = 0..=N.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SERIES_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// List registered identities, or evaluable functions with --functions.
    List {
        #[arg(long)]
        functions: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Target {
    /// Function name; see `hzk list --functions`.
    #[arg(long = "fn", value_name = "NAME")]
    function: String,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    k2: Option<f64>,
    #[arg(long)]
    n: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    /// Extra parameters as key=value.
    #[arg(short = 'p', long = "param", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

impl Target {
    fn params(&self) -> Result<Params, String> {
        let mut p = BTreeMap::new();
        let named = [
            ("z", self.z),
            ("z2", self.z2),
            ("q", self.q),
            ("x", self.x),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("k", self.k),
            ("k2", self.k2),
            ("n", self.n),
            ("m", self.m),
            ("r", self.r),
        ];
        for (k, v) in named {
            if let Some(v) = v {
                p.insert(k.to_string(), v);
            }
        }
        for kv in &self.extra {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected key=value, got '{kv}'"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("parameter {k} is not a number: '{v}'"))?;
            p.insert(k.trim().to_string(), v);
        }
        Ok(p)
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, body: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, body).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(body.as_bytes());
                Ok(())
            }
        }
    }
}

/// Error plus exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self { code: if e.is_usage() { 2 } else { 3 }, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Eval { target, tol, out } => cmd_eval(&target, tol, &out),
        Command::Verify { suite, seed, tol, id, out } => cmd_verify(&suite, seed, tol, id.as_deref(), &out),
        Command::Table { target, q_grid, z_grid, n_max, tol, out } => {
            cmd_table(&target, q_grid.as_deref(), z_grid.as_deref(), n_max, tol, &out)
        }
        Command::List { functions, out } => cmd_list(functions, &out),
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage(format!("--tol must be positive, got {tol}")))
    }
}

#[derive(Serialize)]
struct Row<'a> {
    function: &'a str,
    parameters: &'a Params,
    value: f64,
    err_estimate: f64,
}

fn describe(name: &str, params: &Params) -> String {
    let args: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", format::text(*v))).collect();
    format!("{name}({})", args.join(", "))
}

fn cmd_eval(target: &Target, tol: f64, out: &Output) -> Result<u8, Failure> {
    check_tol(tol)?;
    let params = target.params().map_err(Failure::usage)?;
    let spec = functions::validate(&target.function, &params).map_err(Failure::usage)?;
    let v = spec.evaluate(&functions::Ctx { params: &params, series_tol: tol })?;
    let body = match out.format {
        Format::Text => format!(
            "{} = {}\nerr_estimate = {}\n",
            describe(spec.name, &params),
            format::text(v.value),
            format::sig(v.err_estimate, 3)
        ),
        Format::Json => {
            let row = Row { function: spec.name, parameters: &params, value: v.value, err_estimate: v.err_estimate };
            serde_json::to_string_pretty(&row).expect("serializable") + "\n"
        }
        Format::Csv => csv_rows(spec.name, &[(params.clone(), v)])?,
    };
    out.emit(&body)?;
    Ok(0)
}

fn csv_rows(name: &str, rows: &[(Params, Value)]) -> Result<String, Failure> {
    let keys: Vec<String> = rows.first().map(|(p, _)| p.keys().cloned().collect()).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["function".to_string()];
    header.extend(keys.iter().cloned());
    header.push("value".into());
    header.push("err_estimate".into());
    w.write_record(&header).map_err(|e| Failure::usage(e.to_string()))?;
    for (p, v) in rows {
        let mut rec = vec![name.to_string()];
        rec.extend(keys.iter().map(|k| format::machine(p[k])));
        rec.push(format::machine(v.value));
        rec.push(format::machine(v.err_estimate));
        w.write_record(&rec).map_err(|e| Failure::usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Failure::usage(format!("grid must be lo:hi:step, got '{spec}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts.iter().map(|s| s.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(Failure::usage(format!("grid '{spec}' has {count} points; limit is 100000")));
    }
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

fn cmd_table(
    target: &Target,
    q_grid: Option<&str>,
    z_grid: Option<&str>,
    n_max: Option<usize>,
    tol: f64,
    out: &Output,
) -> Result<u8, Failure> {
    check_tol(tol)?;
    let base = target.params().map_err(Failure::usage)?;
    let (key, values) = match (q_grid, z_grid, n_max) {
        (Some(g), None, None) => ("q", parse_grid(g)?),
        (None, Some(g), None) => ("z", parse_grid(g)?),
        (None, None, Some(n)) => ("n", (0..=n).map(|i| i as f64).collect()),
        _ => return Err(Failure::usage("give exactly one of --q-grid, --z-grid, --n-max")),
    };
    if base.contains_key(key) {
        return Err(Failure::usage(format!("--{key} is set by the grid; drop it")));
    }
    let mut probe = base.clone();
    probe.insert(key.to_string(), values[0]);
    let spec = functions::validate(&target.function, &probe).map_err(Failure::usage)?;

    let mut rows = Vec::with_capacity(values.len());
    for v in values {
        let mut p = base.clone();
        p.insert(key.to_string(), v);
        let value = spec.evaluate(&functions::Ctx { params: &p, series_tol: tol })?;
        rows.push((p, value));
    }
    let body = match out.format {
        Format::Csv => csv_rows(spec.name, &rows)?,
        Format::Json => {
            let json: Vec<Row> = rows
                .iter()
                .map(|(p, v)| Row { function: spec.name, parameters: p, value: v.value, err_estimate: v.err_estimate })
                .collect();
            serde_json::to_string_pretty(&json).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            for (p, v) in &rows {
                s += &format!("{:<8} {:>20}  {:>10}\n", format::text(p[key]), format::text(v.value), format::sig(v.err_estimate, 3));
            }
            format!("{:<8} {:>20}  {:>10}\n", key, spec.name, "err") + &s
        }
    };
    out.emit(&body)?;
    Ok(0)
}

fn max_evals_from_env() -> Result<usize, Failure> {
    match std::env::var("HZK_MAX_EVALS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| Failure::usage(format!("HZK_MAX_EVALS must be a positive integer, got '{s}'"))),
        Err(_) => Ok(VerifyCtx::default().max_evals),
    }
}

fn cmd_verify(suite: &str, seed: u64, tol: Option<f64>, id: Option<&str>, out: &Output) -> Result<u8, Failure> {
    if let Some(t) = tol {
        check_tol(t)?;
    }
    let cfg = RunConfig { seed, tol_override: tol, ctx: VerifyCtx { max_evals: max_evals_from_env()? } };
    let report = match id {
        Some(id) => {
            let ident = verify::find_identity(id).ok_or_else(|| Failure::usage(format!("unknown identity '{id}'")))?;
            verify::run_identities(id, &[ident], &cfg)?
        }
        None => verify::run_suite_with(suite, &cfg)?,
    };
    let body = match out.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report_csv(&report)?,
        Format::Text => report_text(&report),
    };
    out.emit(&body)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < r.checks.len() {
        let id = r.checks[i].id;
        let group: Vec<_> = r.checks[i..].iter().take_while(|c| c.id == id).collect();
        let passed = group.iter().filter(|c| c.pass).count();
        let worst = group.iter().map(|c| c.mixed_residual()).fold(0.0, f64::max);
        let tag = if passed == group.len() { "PASS" } else { "FAIL" };
        s += &format!("{tag} {id:<40} {passed:>3}/{:<3} worst {}\n", group.len(), format::sig(worst, 2));
        for c in group.iter().filter(|c| !c.pass) {
            let pt: Vec<String> = c.point.entries().iter().map(|(k, v)| format!("{k}={}", format::text(*v))).collect();
            match &c.error {
                Some(e) => s += &format!("     #{} [{}] error: {e}\n", c.grid_index, pt.join(", ")),
                None => {
                    s += &format!(
                        "     #{} [{}] lhs={} rhs={} |diff|={}\n",
                        c.grid_index,
                        pt.join(", "),
                        format::text(c.lhs),
                        format::text(c.rhs),
                        format::sig(c.abs_residual, 3)
                    )
                }
            }
        }
        i += group.len();
    }
    let worst = r.summary.worst_id.map(|id| format!(" in {id}")).unwrap_or_default();
    s += &format!(
        "suite {} seed {}: {}/{} checks passed, worst mixed residual {}{}, {:.2}s\n",
        r.suite,
        r.seed,
        r.summary.passed,
        r.summary.total,
        format::sig(r.summary.worst_residual, 3),
        worst,
        r.summary.wall_time_s
    );
    s
}

fn report_csv(r: &VerificationReport) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::usage(e.to_string());
    w.write_record(["id", "grid_index", "point", "lhs", "rhs", "abs_residual", "rel_residual", "tol", "pass", "error"])
        .map_err(io)?;
    for c in &r.checks {
        let pt: Vec<String> = c.point.entries().iter().map(|(k, v)| format!("{k}={}", format::machine(*v))).collect();
        w.write_record([
            c.id.to_string(),
            c.grid_index.to_string(),
            pt.join(";"),
            format::machine(c.lhs),
            format::machine(c.rhs),
            format::machine(c.abs_residual),
            format::machine(c.rel_residual),
            format::machine(c.tol),
            c.pass.to_string(),
            c.error.clone().unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn cmd_list(functions: bool, out: &Output) -> Result<u8, Failure> {
    let body = if functions {
        match out.format {
            Format::Text => functions::FUNCTIONS
                .iter()
                .map(|f| {
                    let mut args: Vec<String> = f.required.iter().map(|k| format!("--{k}")).collect();
                    args.extend(f.optional.iter().map(|k| format!("[--{k}]")));
                    format!("{:<32} {:<28} {}\n", f.name, args.join(" "), f.summary)
                })
                .collect(),
            Format::Json => {
                let v: Vec<_> = functions::FUNCTIONS
                    .iter()
                    .map(|f| serde_json::json!({"name": f.name, "required": f.required, "optional": f.optional, "summary": f.summary}))
                    .collect();
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
            Format::Csv => {
                let mut s = String::from("name,required,optional\n");
                for f in functions::FUNCTIONS {
                    s += &format!("{},{},{}\n", f.name, f.required.join(";"), f.optional.join(";"));
                }
                s
            }
        }
    } else {
        let ids = verify::list_identities();
        match out.format {
            Format::Text => ids.iter().map(|i| format!("{:<40} {:<21} {}\n", i.id, i.check_kind.to_string(), i.paper_anchor)).collect(),
            Format::Json => serde_json::to_string_pretty(&ids).expect("serializable") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Failure::usage(e.to_string());
                w.write_record(["id", "check_kind", "paper_anchor"]).map_err(io)?;
                for i in &ids {
                    w.write_record([i.id, &i.check_kind.to_string(), i.paper_anchor]).map_err(io)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| Failure::usage(e.to_string()))?).expect("utf-8")
            }
        }
    };
    out.emit(&body)?;
    Ok(0)
}
