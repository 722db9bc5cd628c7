//! `qzeta`: evaluate multiple q-zeta values and run identity checks.
//!
//! Exit codes: 0 when everything passed, 1 on a failed check or a
//! computational error, 2 on a usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qzeta::identities::{self, CheckReport, Params, Summary};
use qzeta::parse::{parse_blocks, parse_composition, parse_f64_list, parse_word};
use qzeta::qcore::{EvalParams, QParam};
use qzeta::series::{self, FWordSpec};
use qzeta::{BackendConfig, Composition, Error, Mode, Value, WordPoly};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qzeta", version, about = "Multiple q-zeta values and their identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    backend: BackendArgs,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct BackendArgs {
    /// exact (power series in q), float or complex.
    #[arg(long, global = true)]
    backend: Option<Mode>,
    /// Numeric q, decimal or "p/r"; required for float and complex.
    #[arg(long, global = true)]
    q: Option<QParam>,
    /// Exact series are computed modulo q^ORDER.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Starting truncation for numeric sums.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Numeric tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one series.
    Eval {
        #[command(subcommand)]
        series: Series,
    },
    /// Run one identity check.
    Verify {
        /// Registry id (see `catalog`).
        id: String,
        #[command(flatten)]
        params: CheckArgs,
    },
    /// Run the default parameter sweep of the selected checks.
    Suite {
        /// `all`, comma-separated ids, or `prefix*`.
        filter: String,
    },
    /// Tabulate ζ[m+2,{1}^n] for m, n ≤ MAX with the generating-function
    /// coefficient residual.
    Table {
        #[arg(long, default_value_t = 4)]
        max: u32,
    },
    /// List the registered identity checks.
    Catalog,
}

#[derive(Subcommand, Debug)]
enum Series {
    /// ζ[s]
    Zeta {
        #[arg(value_parser = comp)]
        s: Composition,
    },
    /// Z[s; m] = Σ over c₁+…+c_n = m of ζ[s+c]
    Z {
        #[arg(value_parser = comp)]
        s: Composition,
        #[arg(long)]
        m: u32,
    },
    /// ζ̂[w] for a word over x, y
    ZetaHat { word: String },
    /// ζ̃[k] = Σ q^{kn}/[n]^k
    ZetaTilde { k: u32 },
    /// T[s]
    T {
        #[arg(value_parser = naturals)]
        s: List<u32>,
    },
    /// S[s₁,…,s_{n+1}], last argument may be 0
    S {
        #[arg(value_parser = naturals)]
        s: List<u32>,
    },
    /// λ_q[s; b] for real b
    Lambda {
        #[arg(value_parser = comp)]
        s: Composition,
        #[arg(long, value_parser = floats)]
        b: List<f64>,
    },
    /// Li_s[x] for real x
    Li {
        #[arg(value_parser = comp)]
        s: Composition,
        #[arg(long, value_parser = floats)]
        x: List<f64>,
    },
    /// f[w; d; θ] with blocks "a:b" or "a:b:d"
    F {
        #[arg(value_parser = fblocks)]
        blocks: FWordSpec,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Coefficient of u^{m+1} v^{n+1} in the double generating function
    Drin { m: usize, n: usize },
    /// ₂φ₁(q^a, q^b; q^c; q, z)
    Phi {
        #[arg(value_parser = floats, allow_hyphen_values = true)]
        abcz: List<f64>,
    },
}

#[derive(Args, Debug, Default)]
struct CheckArgs {
    #[arg(long, value_parser = comp)]
    s: Option<Composition>,
    #[arg(long, value_parser = comp)]
    t: Option<Composition>,
    #[arg(long)]
    word: Option<String>,
    /// Blocks "a:b,…".
    #[arg(long, value_parser = blocks)]
    blocks: Option<List<(u32, u32)>>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    b: Option<List<f64>>,
    /// "a,b,c"
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    abc: Option<List<f64>>,
    #[arg(long)]
    which: Option<String>,
}

fn comp(s: &str) -> Result<Composition, String> {
    parse_composition(s).map_err(|e| e.to_string())
}

/// A comma-separated list taken as one argument.
#[derive(Clone, Debug, Default)]
struct List<T>(Vec<T>);

impl<T> std::ops::Deref for List<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

fn floats(s: &str) -> Result<List<f64>, String> {
    parse_f64_list(s).map(List).map_err(|e| e.to_string())
}

fn blocks(s: &str) -> Result<List<(u32, u32)>, String> {
    parse_blocks(s).map(|b| List(b.blocks)).map_err(|e| e.to_string())
}

fn naturals(s: &str) -> Result<List<u32>, String> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad argument '{}'", t.trim())))
        .collect::<Result<_, _>>()
        .map(List)
}

fn fblocks(s: &str) -> Result<FWordSpec, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let v = naturals(&tok.replace(':', ","))?;
        match v[..] {
            [a, b] => out.push((a, b, 0)),
            [a, b, d] => out.push((a, b, d)),
            _ => return Err(format!("bad block '{tok}', expected a:b or a:b:d")),
        }
    }
    Ok(FWordSpec::new(out))
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownIdentity(_) => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

fn backend_config(a: &BackendArgs) -> Result<BackendConfig, Failure> {
    let mode = a.backend.unwrap_or(if a.q.is_some() { Mode::Float } else { Mode::Exact });
    let mut cfg = match (mode, &a.q) {
        (Mode::Exact, Some(_)) => {
            return Err(Failure::Usage("--q has no effect with --backend exact".into()))
        }
        (Mode::Exact, None) => BackendConfig::exact(a.order.unwrap_or(25)),
        (_, None) => return Err(Failure::Usage(format!("--backend {mode} needs --q"))),
        (Mode::Float, Some(q)) => BackendConfig::float(q.as_f64()).with_q(q.clone()),
        (Mode::Complex, Some(q)) => BackendConfig::complex(q.as_f64()).with_q(q.clone()),
    };
    if let Some(o) = a.order {
        cfg.order = o;
    }
    if let Some(n) = a.trunc {
        cfg.trunc = n;
    }
    if let Some(t) = a.tol {
        cfg.tol = t;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn reals(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn evaluate(series: &Series, cfg: &BackendConfig) -> Result<(String, String, Value), Failure> {
    let p = EvalParams::from(cfg);
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    Ok(match series {
        Series::Zeta { s } => ("zeta".into(), s.to_string(), series::eval_zeta(s, &p)?),
        Series::Z { s, m } => ("z".into(), format!("{s}; m={m}"), series::eval_z(s, *m, &p)?),
        Series::ZetaHat { word } => {
            let w = parse_word(word)?;
            ("zeta-hat".into(), word.clone(), series::eval_zeta_hat(&WordPoly::from_word(w), &p)?)
        }
        Series::ZetaTilde { k } => ("zeta-tilde".into(), k.to_string(), series::eval_zeta_tilde(*k, &p)?),
        Series::T { s } => ("t".into(), list(s), series::eval_t(s, &p)?),
        Series::S { s } => ("s".into(), list(s), series::eval_s(s, &p)?),
        Series::Lambda { s, b } => (
            "lambda".into(),
            format!("{s}; b={b:?}"),
            series::eval_lambda(s.parts(), &reals(b), &p)?,
        ),
        Series::Li { s, x } => (
            "li".into(),
            format!("{s}; x={x:?}"),
            series::eval_li(s.parts(), &reals(x), &p)?,
        ),
        Series::F { blocks, theta } => (
            "f".into(),
            format!("{:?}; theta={theta}", blocks.blocks),
            series::eval_f(blocks, *theta, &p)?,
        ),
        Series::Drin { m, n } => ("drin".into(), format!("m={m}; n={n}"), series::drin_rhs_coeff(*m, *n, &p)?),
        Series::Phi { abcz } => {
            let [a, b, c, z] = abcz[..] else {
                return Err(Failure::Usage("phi takes a,b,c,z".into()));
            };
            ("phi".into(), format!("{a},{b},{c},{z}"), series::eval_2phi1(a, b, c, z, &p)?)
        }
    })
}

fn check_params(a: &CheckArgs) -> Result<Params, Failure> {
    let abc = match a.abc.as_deref() {
        None => None,
        Some(&[x, y, z]) => Some((x, y, z)),
        Some(_) => return Err(Failure::Usage("--abc takes three numbers".into())),
    };
    Ok(Params {
        s: a.s.clone(),
        t: a.t.clone(),
        word: a.word.clone(),
        blocks: a.blocks.as_ref().map(|b| b.0.clone()),
        m: a.m,
        n: a.n,
        k: a.k,
        j: a.j,
        theta: a.theta,
        x: a.x,
        y: a.y,
        b: a.b.as_ref().map(|b| b.0.clone()),
        abc,
        which: a.which.clone(),
    })
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn render_reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => identities::reports_to_json(reports) + "\n",
        Format::Csv => identities::reports_to_csv(reports),
        Format::Text => {
            let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
            out += &format!("{}\n", Summary::of(reports));
            out
        }
    }
}

/// Output text and whether every hard check passed.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let cfg = backend_config(&cli.backend)?;
    Ok(match &cli.command {
        Command::Eval { series } => {
            let (name, args, v) = evaluate(series, &cfg)?;
            let text = match cli.format {
                Format::Text => format!("{v}\n"),
                Format::Json => {
                    let j = json!({
                        "series": name,
                        "args": args,
                        "backend": cfg.fingerprint(),
                        "value": v.to_string(),
                        "bound": v.tail_bound(),
                        "heuristic": v.is_heuristic(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
                }
                Format::Csv => csv_text(
                    &["series", "args", "backend", "value", "bound"],
                    &[vec![name, args, cfg.fingerprint(), v.to_string(), format!("{:e}", v.tail_bound())]],
                ),
            };
            (text, true)
        }
        Command::Verify { id, params } => {
            let report = identities::verify(id, &check_params(params)?, &cfg)?;
            let ok = report.passed();
            (render_reports(&[report], cli.format), ok)
        }
        Command::Suite { filter } => {
            let reports = identities::run_suite(filter, &cfg)?;
            let ok = Summary::of(&reports).failed == 0;
            (render_reports(&reports, cli.format), ok)
        }
        Command::Table { max } => {
            let p = EvalParams::from(&cfg);
            let mut rows = Vec::new();
            for m in 0..=*max {
                for n in 0..=*max {
                    let z = series::zeta_m2_ones(m, n as usize, &p)?;
                    let residual = &series::drin_rhs_coeff(m as usize, n as usize, &p)? - &z;
                    rows.push(vec![m.to_string(), n.to_string(), z.to_string(), format!("{:e}", residual.norm())]);
                }
            }
            let header = ["m", "n", "zeta[m+2,{1}^n]", "generating_function_residual"];
            let text = match cli.format {
                Format::Csv => csv_text(&header, &rows),
                Format::Json => {
                    let objs: Vec<_> = rows
                        .iter()
                        .map(|r| json!({"m": r[0], "n": r[1], "value": r[2], "residual": r[3]}))
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&objs).expect("json"))
                }
                Format::Text => rows
                    .iter()
                    .map(|r| format!("m={} n={}  {}  (residual {})\n", r[0], r[1], r[2], r[3]))
                    .collect(),
            };
            (text, true)
        }
        Command::Catalog => {
            let all = identities::list_identities();
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(all).expect("json")),
                Format::Csv => csv_text(
                    &["id", "kind", "hard", "params", "statement"],
                    &all.iter()
                        .map(|e| {
                            vec![
                                e.id.to_string(),
                                format!("{:?}", e.kind).to_lowercase(),
                                e.hard.to_string(),
                                e.params.to_string(),
                                e.statement.to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Text => all
                    .iter()
                    .map(|e| {
                        let soft = if e.hard { "" } else { " [advisory]" };
                        format!("{:<20} {}{soft}\n{:<20} params: {}\n", e.id, e.statement, "", e.params)
                    })
                    .collect(),
            };
            (text, true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
