mod catalog;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mangoldt_core::dirichlet::convolution;
use mangoldt_core::factor::DEFAULT_SIEVE_LIMIT;
use mangoldt_core::identities::{self, Bindings, IdentityReport};
use mangoldt_core::mangoldt::{LambdaMethod, MangoldtHandle};
use mangoldt_core::series::{verify_series_identity, SeriesParams};
use mangoldt_core::{FunctionHandle, Sieve};

use catalog::Catalog;
use render::{envelope, json_value, Format};

#[derive(Parser)]
#[command(name = "mangoldt", version)]
#[command(about = "Generalized von Mangoldt functions: evaluation, identity sweeps, series checks")]
struct Cli {
    /// Sieve bound; factorization works up to its square.
    #[arg(long, global = true, env = "MANGOLDT_SIEVE_LIMIT", default_value_t = DEFAULT_SIEVE_LIMIT)]
    sieve_limit: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Comparison tolerance for real values (series: absolute tolerance).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// File of user-defined L-additive functions.
    #[arg(long, global = true)]
    spec_file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at n.
    Eval {
        #[arg(long)]
        function: String,
        #[arg(long)]
        n: u64,
    },
    /// Tabulate functions over an inclusive range `a..b`.
    Table {
        #[arg(long, value_delimiter = ',', required = true, num_args = 1)]
        functions: Vec<String>,
        #[arg(long)]
        range: String,
    },
    /// Lambda_f(n) for an L-additive f.
    Mangoldt {
        #[arg(long)]
        function: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "definition")]
        method: Method,
    },
    /// Dirichlet convolution (F * G)(n).
    Convolve {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        n: u64,
    },
    /// Sweep identities exactly over 1..=max-n.
    Verify {
        /// Registry id, or `all` for the default binding matrix.
        #[arg(long)]
        identity: String,
        /// Binding for slot f.
        #[arg(long)]
        function: Option<String>,
        /// Binding for slot g.
        #[arg(long)]
        g: Option<String>,
        /// Binding for the shift k.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i32>,
        #[arg(long, default_value_t = 10_000)]
        max_n: u64,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare a truncated Dirichlet series with its closed form.
    Series {
        #[arg(long)]
        identity: String,
        /// f for thm-2-6.
        #[arg(long)]
        function: Option<String>,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i32,
        /// Term cutoff of the left-hand series.
        #[arg(long = "N", default_value_t = 10_000)]
        n_cutoff: u64,
        /// Prime cutoff of the closed form (defaults to N).
        #[arg(long)]
        prime_cutoff: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Definition,
    Mobius,
    Negated,
    All,
}

impl Method {
    fn methods(self) -> Vec<LambdaMethod> {
        match self {
            Method::Definition => vec![LambdaMethod::Definition],
            Method::Mobius => vec![LambdaMethod::Mobius],
            Method::Negated => vec![LambdaMethod::Negated],
            Method::All => LambdaMethod::ALL.to_vec(),
        }
    }
}

const DEFAULT_TOL: f64 = 1e-9;
const DEFAULT_SERIES_TOL: f64 = 1e-3;

struct Ctx {
    sieve: Sieve,
    catalog: Catalog,
    format: Option<Format>,
    tol: Option<f64>,
    jobs: usize,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn tol(&self, default: f64) -> Result<f64> {
        let tol = self.tol.unwrap_or(default);
        if !(tol > 0.0 && tol.is_finite()) {
            bail!("--tol must be positive, got {tol}");
        }
        Ok(tol)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let ctx = Ctx {
        sieve: Sieve::new(cli.sieve_limit)?,
        catalog: Catalog::load(cli.spec_file.as_deref())?,
        format: cli.format,
        tol: cli.tol,
        jobs: cli.jobs,
    };
    match cli.command {
        Command::Eval { function, n } => {
            let h = ctx.catalog.handle(&function)?;
            point(&ctx, "eval", &[h], n)
        }
        Command::Table { functions, range } => table(&ctx, &functions, &range),
        Command::Mangoldt { function, n, method } => {
            let spec = ctx.catalog.spec(&function)?;
            let handles: Vec<FunctionHandle> = method
                .methods()
                .into_iter()
                .map(|m| {
                    let h = MangoldtHandle::new(spec.clone()).with_method(m).handle();
                    if method == Method::All {
                        h.renamed(m.name())
                    } else {
                        h
                    }
                })
                .collect();
            point(&ctx, "mangoldt", &handles, n)
        }
        Command::Convolve { left, right, n } => {
            let h = convolution(&ctx.catalog.handle(&left)?, &ctx.catalog.handle(&right)?);
            point(&ctx, "convolve", &[h], n)
        }
        Command::Verify {
            identity,
            function,
            g,
            k,
            max_n,
            report,
        } => verify(&ctx, &identity, function, g, k, max_n, report),
        Command::Series {
            identity,
            function,
            s,
            k,
            n_cutoff,
            prime_cutoff,
        } => {
            let f = function.map(|name| ctx.catalog.spec(&name)).transpose()?;
            let params = SeriesParams {
                s,
                n_cutoff,
                prime_cutoff: prime_cutoff.unwrap_or(n_cutoff),
                k,
            };
            let tol = ctx.tol(DEFAULT_SERIES_TOL)?;
            let result = verify_series_identity(&identity, params, f.as_ref(), &ctx.sieve, tol)?;
            let r = result.rounded();
            let out = match ctx.format(Format::Json) {
                Format::Json => envelope("series", json!({ "result": r }))?,
                Format::Csv => render::csv(
                    &["id", "lhs_partial", "lhs_tail_bound", "rhs_value", "rhs_tail_bound", "abs_difference", "tolerance", "passed"],
                    &[vec![
                        r.id.clone(),
                        render::real(r.lhs_partial),
                        render::real(r.lhs_tail_bound),
                        render::real(r.rhs_value),
                        render::real(r.rhs_tail_bound),
                        render::real(r.abs_difference),
                        render::real(r.tolerance),
                        r.passed.to_string(),
                    ]],
                )?,
                Format::Plain => format!(
                    "{}: {}\n  {}\n  lhs = {} (tail <= {})\n  rhs = {} (tail <= {})\n  |lhs - rhs| = {}, tolerance {}\n",
                    r.id,
                    if r.passed { "passed" } else { "FAILED" },
                    r.formula,
                    render::real(r.lhs_partial),
                    render::real(r.lhs_tail_bound),
                    render::real(r.rhs_value),
                    render::real(r.rhs_tail_bound),
                    render::real(r.abs_difference),
                    render::real(r.tolerance),
                ),
            };
            print!("{out}");
            Ok(if result.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

/// One row of values at `n`.
fn point(ctx: &Ctx, command: &str, handles: &[FunctionHandle], n: u64) -> Result<ExitCode> {
    let fact = ctx.sieve.factorize(n)?;
    let values = handles
        .iter()
        .map(|h| h.eval(&fact).with_context(|| format!("{} at {n}", h.name())))
        .collect::<Result<Vec<_>>>()?;
    let out = match ctx.format(Format::Plain) {
        Format::Plain if handles.len() == 1 => format!("{}\n", values[0]),
        Format::Plain => handles
            .iter()
            .zip(&values)
            .map(|(h, v)| format!("{} {v}\n", h.name()))
            .collect(),
        Format::Csv => {
            let mut header = vec!["n".to_string()];
            header.extend(handles.iter().map(|h| h.name().to_string()));
            let mut row = vec![n.to_string()];
            row.extend(values.iter().map(|v| v.to_string()));
            render::csv(&header, &[row])?
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = handles
                .iter()
                .zip(&values)
                .map(|(h, v)| (h.name().to_string(), json_value(v)))
                .collect();
            envelope(command, json!({ "n": n, "values": map }))?
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let (a, b) = text
        .split_once("..")
        .with_context(|| format!("range `{text}` is not of the form a..b"))?;
    let a: u64 = a.trim().parse().with_context(|| format!("range start `{a}`"))?;
    let b: u64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .with_context(|| format!("range end `{b}`"))?;
    if a == 0 || a > b {
        bail!("range `{text}` must satisfy 1 <= a <= b");
    }
    Ok((a, b))
}

fn table(ctx: &Ctx, names: &[String], range: &str) -> Result<ExitCode> {
    let names: Vec<&str> = names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        bail!("usage: --functions needs at least one function name");
    }
    let (a, b) = parse_range(range)?;
    if b > ctx.sieve.factor_bound() {
        bail!(mangoldt_core::Error::OutOfRange { n: b, bound: ctx.sieve.factor_bound() });
    }
    let handles = names
        .iter()
        .map(|n| ctx.catalog.handle(n))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for n in a..=b {
        let fact = ctx.sieve.factorize(n)?;
        let values = handles
            .iter()
            .map(|h| h.eval(&fact).with_context(|| format!("{} at {n}", h.name())))
            .collect::<Result<Vec<_>>>()?;
        rows.push((n, values));
    }
    let out = match ctx.format(Format::Csv) {
        Format::Csv | Format::Plain => {
            let mut header = vec!["n"];
            header.extend(names.iter().copied());
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(n, vs)| std::iter::once(n.to_string()).chain(vs.iter().map(|v| v.to_string())).collect())
                .collect();
            render::csv(&header, &body)?
        }
        Format::Json => {
            let body: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, vs)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("n".into(), json!(n));
                    for (name, v) in names.iter().zip(vs) {
                        obj.insert(name.to_string(), json_value(v));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            envelope("table", json!({ "rows": body }))?
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn bindings_for(
    ctx: &Ctx,
    desc: &identities::IdentityDescriptor,
    f: Option<&str>,
    g: Option<&str>,
    k: Option<i32>,
) -> Result<Vec<Bindings>> {
    let f = f.map(|n| ctx.catalog.spec(n)).transpose()?;
    let g = g.map(|n| ctx.catalog.spec(n)).transpose()?;
    let mut out: Vec<Bindings> = Vec::new();
    for mut b in desc.default_bindings() {
        if f.is_some() {
            b.f = f.clone();
        }
        if g.is_some() {
            b.g = g.clone();
        }
        if k.is_some() {
            b.k = k;
        }
        if !out.iter().any(|o| o.labels() == b.labels()) {
            out.push(b);
        }
    }
    Ok(out)
}

fn verify(
    ctx: &Ctx,
    identity: &str,
    f: Option<String>,
    g: Option<String>,
    k: Option<i32>,
    max_n: u64,
    report_path: Option<PathBuf>,
) -> Result<ExitCode> {
    let tol = ctx.tol(DEFAULT_TOL)?;
    let mut reports: Vec<IdentityReport> = Vec::new();
    if identity == "all" {
        if f.is_some() || g.is_some() || k.is_some() {
            bail!("usage: `--identity all` runs the default bindings; drop --function/--g/--k");
        }
        for desc in identities::registry() {
            for b in desc.default_bindings() {
                reports.push(desc.instantiate(&b)?.sweep(&ctx.sieve, max_n, tol, ctx.jobs)?);
            }
        }
    } else {
        let desc = identities::find(identity)?;
        for b in bindings_for(ctx, desc, f.as_deref(), g.as_deref(), k)? {
            reports.push(desc.instantiate(&b)?.sweep(&ctx.sieve, max_n, tol, ctx.jobs)?);
        }
    }
    let passed = reports.iter().all(IdentityReport::acceptable);
    let count = |pred: &dyn Fn(&IdentityReport) -> bool| reports.iter().filter(|r| pred(r)).count();
    let summary = json!({
        "sweeps": reports.len(),
        "verified": count(&|r| r.status == identities::Status::Verified),
        "failed": count(&|r| !r.acceptable()),
        "errata": count(&|r| r.expected == identities::Expected::PaperErratum),
    });
    let doc = envelope(
        "verify",
        json!({
            "identity": identity,
            "max_n": max_n,
            "passed": passed,
            "summary": summary,
            "reports": reports,
        }),
    )?;
    if let Some(path) = report_path {
        std::fs::write(&path, &doc).with_context(|| format!("writing {}", path.display()))?;
    }
    let out = match ctx.format(Format::Json) {
        Format::Json => doc,
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        r.bindings.f.clone().unwrap_or_default(),
                        r.bindings.g.clone().unwrap_or_default(),
                        r.bindings.k.map(|k| k.to_string()).unwrap_or_default(),
                        r.n_max.to_string(),
                        label(&r.expected),
                        label(&r.status),
                        r.failures.to_string(),
                        r.counterexamples.first().map(|c| c.n.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            render::csv(
                &["id", "f", "g", "k", "max_n", "expected", "status", "failures", "first_counterexample"],
                &rows,
            )?
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&plain_report(r));
            }
            s.push_str(&format!(
                "{} sweeps, {}\n",
                reports.len(),
                if passed { "all expected identities hold" } else { "FAILURES" }
            ));
            s
        }
    };
    print!("{out}");
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn label<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn plain_report(r: &IdentityReport) -> String {
    let mut binds = Vec::new();
    if let Some(f) = &r.bindings.f {
        binds.push(format!("f={f}"));
    }
    if let Some(g) = &r.bindings.g {
        binds.push(format!("g={g}"));
    }
    if let Some(k) = r.bindings.k {
        binds.push(format!("k={k}"));
    }
    let mut s = format!(
        "{} [{}] n<={}: {} ({}, {} failures)\n",
        r.id,
        binds.join(" "),
        r.n_max,
        label(&r.status),
        label(&r.expected),
        r.failures
    );
    for c in &r.counterexamples {
        s.push_str(&format!("  n={} lhs={} rhs={}", c.n, c.lhs, c.rhs));
        if let Some(cr) = &c.corrected_rhs {
            s.push_str(&format!(" corrected={cr}"));
        }
        s.push('\n');
    }
    s
}
