//! `ffmzv`: Carlitz quantities, Anderson–Thakur polynomials, multizeta
//! values and the zeta-like identity checks from the command line.
//!
//! Exit codes: 0 success / verified, 1 an identity failed or was not
//! confirmed, 2 usage error, 3 enumeration budget exhausted.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ffmzv_core::anderson_thakur::{at_closed_form, at_poly};
use ffmzv_core::carlitz::DEFAULT_BUDGET;
use ffmzv_core::cpy::{self, BundleJson, SolutionBundle};
use ffmzv_core::power_sums::{multizeta, power_sum_exact};
use ffmzv_core::verify::{full_suite, verify_family, Params};
use ffmzv_core::{CarlitzContext, Error, Field, RatFun, Status, UniPoly, VerificationReport};

const PRECISION_HELP: &str = "Default series precision (agreed terms requested) by q:
  q = 2: 12    q = 3: 8    q >= 4: 6
Power sums are enumerated up to degree 20 (q=2), 10 (q=3), 6 (q=4,5), 3 (q>=7)
and at most --budget monics per degree.";

#[derive(Parser)]
#[command(name = "ffmzv", version, about = "Exact multizeta computations over F_q[theta]", after_help = PRECISION_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// [n], D_n, L_n, Gamma_n and BC(n) for the requested indices.
    Basics {
        #[command(flatten)]
        common: Common,
        /// Comma-separated indices.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<u64>,
    },
    /// The Anderson–Thakur polynomial H_n.
    Hn {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
        /// Compare with the closed form for `k,N_0,...,N_{k-1}`.
        #[arg(long, value_delimiter = ',')]
        closed_form: Option<Vec<u64>>,
    },
    /// A truncated multizeta value.
    Zeta {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        tuple: Vec<u64>,
        /// Also print the power sum S_d(s) exactly, given as `d,s`.
        #[arg(long, value_delimiter = ',')]
        exact_powersum: Option<Vec<u64>>,
    },
    /// Build and check a solution of the CPY system.
    Cpy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        family: CpyFamily,
        /// `k=v,...`; propA: pM,m,r,j; thmA: n; thmB: n,N (digits joined by '.'),pm,r.
        #[arg(long, default_value = "")]
        params: String,
        /// Omit the bundle from the output.
        #[arg(long)]
        check_only: bool,
        /// Check this bundle (JSON) instead of the constructed one.
        #[arg(long)]
        bundle: Option<String>,
    },
    /// Verify a family or the whole acceptance matrix.
    Verify {
        #[command(flatten)]
        common: Common,
        /// conj27a, conj27b, conj27c, conj29a or conj29b.
        #[arg(long, required_unless_present = "suite")]
        family: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_parser = ["paper"])]
        suite: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CpyFamily {
    #[value(name = "propA")]
    PropA,
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmB")]
    ThmB,
    #[value(name = "thmQ3")]
    ThmQ3,
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Field size; alternative to --p/--m.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    /// Coefficients of the defining polynomial, constant term first.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long)]
    prec: Option<u64>,
    /// Monics enumerated per degree at most.
    #[arg(long, env = "FFMZV_BUDGET")]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<String>,
    /// Recorded in the run configuration.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunConfig {
    p: u32,
    m: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    precision: u64,
    budget: u64,
    format: Format,
    seed: u64,
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            Error::UnsupportedParams(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::NonPrimeP(_)
            | Error::ReducibleModulus { .. }
            | Error::DegreeMismatch { .. }
            | Error::FieldTooLarge { .. }
            | Error::QTooSmall
            | Error::NotCharTwo
            | Error::DepthTooSmall
            | Error::BadPPower(_)
            | Error::ConditionViolated(_)
            | Error::DigitSumTooLarge { .. }
            | Error::WeightEven { .. }
            | Error::WeightNotEven { .. }
            | Error::BracketZeroIndex
            | Error::NonpositiveIndex => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool, Option<String>), Failure>;

fn default_precision(q: u64) -> u64 {
    match q {
        2 => 12,
        3 => 8,
        _ => 6,
    }
}

/// `q = p^m` with p prime.
fn split_prime_power(q: u64) -> Result<(u64, u32), Failure> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(|| Failure::Usage(format!("q = {q} is not a prime power")))?;
    let (mut x, mut m) = (q, 0);
    while x % p == 0 {
        x /= p;
        m += 1;
    }
    if x != 1 {
        return Err(Failure::Usage(format!("q = {q} is not a prime power")));
    }
    Ok((p, m))
}

impl Common {
    fn context(&self) -> Result<(CarlitzContext, RunConfig), Failure> {
        let (p, m) = match (self.q, self.p) {
            (Some(q), _) => {
                let (p, m) = split_prime_power(q)?;
                if self.p.is_some_and(|x| x != p) || self.m.is_some_and(|x| x != m) {
                    return Err(Failure::Usage("--q disagrees with --p/--m".into()));
                }
                (p, m)
            }
            (None, Some(p)) => (p, self.m.unwrap_or(1)),
            (None, None) => return Err(Failure::Usage("give --q or --p".into())),
        };
        let field = Field::new(p, m, self.modulus.as_deref())?;
        let budget = self.budget.unwrap_or(DEFAULT_BUDGET);
        let ctx = CarlitzContext::with_budget(&field, budget);
        let q = field.q();
        let config = RunConfig {
            p: field.p(),
            m: field.m(),
            q,
            modulus: field.modulus().map(|x| x.to_vec()),
            precision: self.prec.unwrap_or_else(|| default_precision(q as u64)),
            budget,
            format: self.format,
            seed: self.seed,
        };
        Ok((ctx, config))
    }
}

fn parse_params(s: &str) -> Result<Params, Failure> {
    let mut out = Params::new();
    for kv in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Failure::Usage(format!("expected k=v, got {kv:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn param<T: std::str::FromStr>(params: &Params, key: &str) -> Result<T, Failure> {
    let v = params.get(key).ok_or_else(|| Failure::Usage(format!("missing parameter {key}")))?;
    v.parse().map_err(|_| Failure::Usage(format!("bad value {v:?} for {key}")))
}

fn ratfun_json(r: &RatFun) -> Value {
    json!({ "num": r.num().to_json(), "den": r.den().to_json(), "text": r.to_text(), "precision": "exact" })
}

fn poly_json(p: &UniPoly) -> Value {
    json!({ "poly": p.to_json(), "text": p.to_text(), "precision": "exact" })
}

fn basics(ctx: &CarlitzContext, ns: &[u64]) -> Outcome {
    let mut rows = Vec::new();
    let mut csv_rows = vec![vec!["n".to_string(), "bracket".into(), "D".into(), "L".into(), "Gamma".into(), "BC".into()]];
    for &n in ns {
        let k = u32::try_from(n).map_err(|_| Failure::Usage(format!("index {n} too large")))?;
        let bracket = if k >= 1 { Some(ctx.bracket(k)?) } else { None };
        let gamma = if n >= 1 { Some(ctx.gamma(n)?) } else { None };
        let (d, l, bc) = (ctx.d(k)?, ctx.l(k)?, ctx.bernoulli_carlitz(n)?);
        csv_rows.push(vec![
            n.to_string(),
            bracket.as_ref().map(|b| b.to_text()).unwrap_or_default(),
            d.to_text(),
            l.to_text(),
            gamma.as_ref().map(|g| g.to_text()).unwrap_or_default(),
            bc.to_text(),
        ]);
        rows.push(json!({
            "n": n.to_string(),
            "bracket": bracket.as_ref().map(poly_json),
            "D": poly_json(&d),
            "L": poly_json(&l),
            "Gamma": gamma.as_ref().map(poly_json),
            "BC": ratfun_json(&bc),
        }));
    }
    Ok((json!({ "entries": rows, "csv": csv_rows }), true, None))
}

fn hn(ctx: &CarlitzContext, n: u64, closed: Option<&[u64]>) -> Outcome {
    let h = at_poly(ctx, n)?;
    let mut out = json!({ "n": n.to_string(), "hn": h.report(), "precision": "exact" });
    let mut ok = true;
    if let Some(spec) = closed {
        let (&k, digits) = spec.split_first().ok_or_else(|| Failure::Usage("--closed-form needs k,N_0,...".into()))?;
        let k = u32::try_from(k).map_err(|_| Failure::Usage("closed-form index too large".into()))?;
        let c = at_closed_form(ctx, k, digits)?;
        // The closed form fixes its own index; compare against H at that index.
        let target = if c.n == h.n { h.clone() } else { at_poly(ctx, c.n)? };
        let equal = c.value == target.value;
        ok = equal;
        out["closedForm"] = json!({ "n": c.n.to_string(), "value": c.report(), "equal": equal });
    }
    let text = format!("H_{n} = {}", h.value.to_text());
    Ok((out, ok, Some(text)))
}

fn zeta(ctx: &CarlitzContext, tuple: &[u64], prec: u64, powersum: Option<&[u64]>) -> Outcome {
    let z = multizeta(ctx, tuple, prec)?;
    let achieved = z.leading_exponent().map(|e| e - z.low() + 1).unwrap_or(0);
    let mut out = json!({
        "tuple": tuple.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "q": ctx.q(),
        "precisionAchieved": achieved,
        "series": z.to_json(),
        "status": "exact-to-precision",
    });
    let mut csv_rows = vec![vec!["exponent".to_string(), "coefficient".into()]];
    csv_rows.extend(z.terms().into_iter().map(|(e, c)| vec![e.to_string(), c.to_string()]));
    out["csv"] = json!(csv_rows);
    if let Some(ds) = powersum {
        let [d, s] = ds else { return Err(Failure::Usage("--exact-powersum takes d,s".into())) };
        let d = u32::try_from(*d).map_err(|_| Failure::Usage("degree too large".into()))?;
        out["ratfun"] = ratfun_json(&power_sum_exact(ctx, d, *s)?);
    }
    Ok((out, true, Some(format!("zeta({}) = {}", join(tuple), z.to_text()))))
}

fn join(t: &[u64]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn digits_param(params: &Params) -> Result<Vec<u64>, Failure> {
    let v = params.get("N").ok_or_else(|| Failure::Usage("missing parameter N".into()))?;
    v.split('.').map(|d| d.parse().map_err(|_| Failure::Usage(format!("bad digits {v:?}")))).collect()
}

fn cpy_cmd(ctx: &CarlitzContext, family: CpyFamily, params: &Params, check_only: bool, bundle: Option<&str>) -> Outcome {
    let (name, tuple, sol, with_b) = match family {
        CpyFamily::PropA => {
            let s = cpy::build_subsystem_family(ctx, param(params, "pM")?, param(params, "m")?, param(params, "r")?, param(params, "j")?)?;
            let sol = SolutionBundle {
                a: s.a.clone(),
                b: UniPoly::zero(ctx.field(), ffmzv_core::Var::T),
                deltas: s.deltas.clone(),
                root_depth: s.root_depth,
            };
            ("propA", s.tuple.clone(), sol, false)
        }
        CpyFamily::ThmA => {
            let (t, s) = cpy::build_solution_thm_a(ctx, param(params, "n")?)?;
            ("thmA", t, s, true)
        }
        CpyFamily::ThmB => {
            let (t, s) =
                cpy::build_solution_thm_b(ctx, param(params, "n")?, &digits_param(params)?, param(params, "pm")?, param(params, "r")?)?;
            ("thmB", t, s, true)
        }
        CpyFamily::ThmQ3 => {
            let (t, s) = cpy::build_solution_thm_q3(ctx)?;
            ("thmQ3", t, s, true)
        }
    };
    let sol = match bundle {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let j: BundleJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            SolutionBundle::from_json(ctx.field(), &j)?
        }
        None => sol,
    };
    let report = if with_b {
        cpy::build_system(ctx, &tuple, sol.root_depth)?.check(&sol)?
    } else {
        let s = cpy::build_subsystem_family(ctx, param(params, "pM")?, param(params, "m")?, param(params, "r")?, param(params, "j")?)?;
        let mut s = s;
        s.a = sol.a.clone();
        s.deltas = sol.deltas.clone();
        s.check(ctx)?
    };
    let w: u64 = tuple.iter().sum();
    let ratio = if with_b && !w.is_multiple_of(ctx.q() - 1) && !sol.a.is_zero() {
        Some(ratfun_json(&cpy::ratio_from_ab(ctx, &sol.a, &sol.b, &tuple)?))
    } else {
        None
    };
    let ok = report.satisfied && !report.degenerate;
    let mut out = json!({
        "family": name,
        "tuple": tuple.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "check": report,
        "ratio": ratio,
        "precision": "exact",
    });
    if !check_only {
        out["bundle"] = serde_json::to_value(sol.to_json()).expect("serializable");
    }
    let text = format!("{name} ({}) satisfied={} degenerate={}", join(&tuple), report.satisfied, report.degenerate);
    Ok((out, ok, Some(text)))
}

fn report_rows(reports: &[VerificationReport]) -> Vec<Vec<String>> {
    let mut rows = vec![["family", "q", "params", "detail", "mode", "status", "agreedTerms", "comparedDownTo", "firstMismatch", "note"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    for r in reports {
        let params = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        for d in &r.details {
            let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
            rows.push(vec![
                r.family.clone(),
                r.q.to_string(),
                params.clone(),
                d.name.clone(),
                format!("{:?}", d.mode).to_lowercase(),
                format!("{:?}", d.status).to_lowercase(),
                d.agreed_terms.map(|v| v.to_string()).unwrap_or_else(|| "exact".into()),
                opt(d.compared_down_to),
                opt(d.first_mismatch),
                d.note.clone().unwrap_or_default(),
            ]);
        }
    }
    rows
}

fn verify_cmd(ctx: &CarlitzContext, family: Option<&str>, params: &Params, suite: bool, prec: u64) -> Outcome {
    let reports = if suite {
        full_suite(ctx, prec)?
    } else {
        vec![verify_family(ctx, family.expect("clap requires --family or --suite"), params, prec)?]
    };
    let ok = reports.iter().all(|r| r.status == Status::Verified);
    let text = reports
        .iter()
        .map(|r| {
            let params = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
            let agreed = r.agreed_terms.map(|a| format!("{a} terms")).unwrap_or_else(|| "exact".into());
            format!("{:<15} q={} {:?} ({agreed}) {params}", r.family, r.q, r.status)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let csv_rows = report_rows(&reports);
    Ok((json!({ "reports": reports, "csv": csv_rows }), ok, Some(text)))
}

fn to_csv(rows: &Value) -> Result<String, Failure> {
    let rows = rows.as_array().ok_or_else(|| Failure::Usage("this subcommand has no CSV form".into()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        let fields: Vec<String> = row.as_array().into_iter().flatten().map(|v| v.as_str().unwrap_or_default().to_string()).collect();
        w.write_record(&fields).map_err(|e| Failure::Other(e.to_string()))?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Failure::Other(e.to_string()))?).map_err(|e| Failure::Other(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let common = match &cli.command {
        Command::Basics { common, .. }
        | Command::Hn { common, .. }
        | Command::Zeta { common, .. }
        | Command::Cpy { common, .. }
        | Command::Verify { common, .. } => common,
    };
    let (ctx, config) = common.context()?;
    let (mut body, ok, text) = match &cli.command {
        Command::Basics { n, .. } => basics(&ctx, n)?,
        Command::Hn { n, closed_form, .. } => hn(&ctx, *n, closed_form.as_deref())?,
        Command::Zeta { tuple, exact_powersum, .. } => zeta(&ctx, tuple, config.precision, exact_powersum.as_deref())?,
        Command::Cpy { family, params, check_only, bundle, .. } => {
            cpy_cmd(&ctx, *family, &parse_params(params)?, *check_only, bundle.as_deref())?
        }
        Command::Verify { family, params, suite, .. } => {
            verify_cmd(&ctx, family.as_deref(), &parse_params(params)?, suite.is_some(), config.precision)?
        }
    };
    let csv_rows = body.as_object_mut().and_then(|o| o.remove("csv"));
    let rendered = match config.format {
        Format::Json => {
            body["config"] = serde_json::to_value(&config).expect("serializable");
            serde_json::to_string_pretty(&body).expect("serializable") + "\n"
        }
        Format::Text => match text {
            Some(t) => format!("{t}\n"),
            None => serde_json::to_string_pretty(&body).expect("serializable") + "\n",
        },
        Format::Csv => to_csv(csv_rows.as_ref().unwrap_or(&Value::Null))?,
    };
    match &common.out {
        Some(path) => fs::write(path, &rendered).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => {
            let _ = std::io::stdout().write_all(rendered.as_bytes());
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
