//! `abel-center` command-line front end.
//!
//! Every command reads one JSON document (a file argument or standard
//! input, except `matrix` which takes no input), writes a report to
//! standard output and diagnostics to standard error.
//!
//! Exit codes: 0 analysis completed, 1 malformed or unsuitable input,
//! 2 an identity that must hold by theorem failed (a bug trap).

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::{format_short, int, Degree, Poly};
use crate::error::{Error, ParseError};
use crate::ode::{self, Tolerances};
use crate::pcc;
use crate::planar::{self, PlanarSystem};
use crate::returnmap::{self, DEFAULT_ORDER};
use crate::signs;
use crate::system::{self, AbelSystem};

pub const DEFAULT_MAX_K: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "abel-center",
    version,
    about = "Exact center conditions for Abel equations x' = f(t)x^3 + g(t)x^2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Moments m_k = ∫ f G^k and ∫ g
    Moments(RunArgs),
    /// Exact return-map series r_k and its certificates
    Series(RunArgs),
    /// Search for a polynomial composition witness
    Pcc(RunArgs),
    /// Sign-change hypothesis and moment propagation for g = t^(n-1)
    Signs(RunArgs),
    /// Reduce a planar homogeneous system to a trigonometric Abel equation
    Reduce(RunArgs),
    /// Numeric displacement scan, cross-checked against the exact series
    Verify(RunArgs),
    /// Moment matrix on the even coefficients of f for g = t^(n-1)
    Matrix(MatrixArgs),
    /// Run every applicable analysis and print a combined verdict
    Full(RunArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Input JSON file; standard input when omitted
    pub input: Option<PathBuf>,
    /// Series truncation order N
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Highest moment index K
    #[arg(long = "max-k", default_value_t = DEFAULT_MAX_K)]
    pub max_k: usize,
    #[arg(long = "rel-tol", default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long = "abs-tol", default_value_t = 1e-14)]
    pub abs_tol: f64,
    /// Comma-separated initial values ρ for the displacement scan
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid: Option<Vec<f64>>,
    /// Also write the displacement scan as CSV to this path
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Even exponent n of G = (t^n - 1)/n
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long = "even-degrees", value_delimiter = ',', default_values_t = system::DEFAULT_EVEN_DEGREES)]
    pub even_degrees: Vec<usize>,
    #[arg(long = "moment-indices", value_delimiter = ',', default_values_t = system::DEFAULT_MOMENT_INDICES)]
    pub moment_indices: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl RunArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..Tolerances::default()
        }
    }

    fn grid(&self) -> Vec<f64> {
        self.grid
            .clone()
            .unwrap_or_else(|| ode::DEFAULT_GRID.to_vec())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A failure that maps onto an exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AssertionFailed(_) | Error::Mismatch(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize infallibly")
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Step<String> {
    let mut buf = String::new();
    match path {
        Some(p) => {
            buf = std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?;
        }
        None => {
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
        }
    }
    Ok(buf)
}

fn parse_doc<T: serde::de::DeserializeOwned>(text: &str) -> Step<T> {
    serde_json::from_str(text)
        .map_err(|e| Failure::Input(ParseError::Schema(e.to_string()).to_string()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome {
                stdout,
                stderr,
                code,
            };
        }
    };
    let format = match &cli.command {
        Command::Matrix(m) => m.format,
        Command::Moments(a)
        | Command::Series(a)
        | Command::Pcc(a)
        | Command::Signs(a)
        | Command::Reduce(a)
        | Command::Verify(a)
        | Command::Full(a) => a.format,
    };
    let mut stderr = String::new();
    let result = dispatch(&cli.command, stdin, &mut stderr);
    match result {
        Ok(report) => {
            let stdout = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => render_text(&report),
            };
            Outcome {
                stdout,
                stderr,
                code: 0,
            }
        }
        Err(Failure::Input(msg)) => {
            stderr.push_str(&format!("error: {msg}\n"));
            Outcome {
                stdout: String::new(),
                stderr,
                code: 1,
            }
        }
        Err(Failure::Internal(msg)) => {
            stderr.push_str(&format!("internal error: {msg}\n"));
            Outcome {
                stdout: String::new(),
                stderr,
                code: 2,
            }
        }
    }
}

fn dispatch(cmd: &Command, stdin: &mut dyn Read, log: &mut String) -> Step<Value> {
    match cmd {
        Command::Matrix(m) => matrix_report(m),
        Command::Reduce(a) => {
            let planar: PlanarSystem = parse_doc(&read_input(a.input.as_ref(), stdin)?)?;
            reduce_report(&planar, a)
        }
        Command::Moments(a)
        | Command::Series(a)
        | Command::Pcc(a)
        | Command::Signs(a)
        | Command::Verify(a)
        | Command::Full(a) => {
            let sys: AbelSystem = parse_doc(&read_input(a.input.as_ref(), stdin)?)?;
            let mut doc = Map::new();
            doc.insert("command".into(), json!(command_name(cmd)));
            doc.insert("system".into(), to_value(&sys));
            let body = match cmd {
                Command::Moments(_) => moments_section(&sys, a)?,
                Command::Series(_) => series_section(&sys, a)?,
                Command::Pcc(_) => pcc_section(&sys)?,
                Command::Signs(_) => signs_section(&sys, a)?,
                Command::Verify(_) => verify_section(&sys, a, log)?,
                Command::Full(_) => full_sections(&sys, a, log)?,
                _ => unreachable!(),
            };
            doc.extend(body);
            Ok(Value::Object(doc))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Moments(_) => "moments",
        Command::Series(_) => "series",
        Command::Pcc(_) => "pcc",
        Command::Signs(_) => "signs",
        Command::Reduce(_) => "reduce",
        Command::Verify(_) => "verify",
        Command::Matrix(_) => "matrix",
        Command::Full(_) => "full",
    }
}

fn moments_section(sys: &AbelSystem, a: &RunArgs) -> Step<Map<String, Value>> {
    let report = sys.moment_report(a.max_k)?;
    let mut m = Map::new();
    m.insert("max_k".into(), json!(a.max_k));
    m.extend(as_object(to_value(&report)));
    Ok(m)
}

fn as_object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn series_section(sys: &AbelSystem, a: &RunArgs) -> Step<Map<String, Value>> {
    let series = returnmap::compute_return_series(sys, a.order)?;
    let center = series.center_order();
    let conditions = returnmap::integral_center_conditions(sys, &series)?;

    let mut identities: Vec<returnmap::IdentityCheck> = Vec::new();
    if series.order >= 3 {
        identities.extend(returnmap::low_order_identities(sys, &series)?);
    }
    identities.extend(returnmap::h_series_identities(sys, &series)?);
    if let Some(bad) = identities.iter().find(|c| !c.holds()) {
        return Err(Failure::Internal(format!(
            "identity {} violated: {} != {}",
            bad.name,
            format_short(&bad.lhs),
            format_short(&bad.rhs)
        )));
    }
    let residual_zero = returnmap::residual(sys, &series)?.iter().all(Poly::is_zero);
    if !residual_zero {
        return Err(Failure::Internal(
            "series residual has low-order terms".into(),
        ));
    }

    let mut m = Map::new();
    m.insert("series".into(), to_value(&series));
    m.insert("center_order".into(), to_value(&center));
    m.insert(
        "integral_conditions".into(),
        json!(conditions.iter().map(format_short).collect::<Vec<_>>()),
    );
    m.insert("identities".into(), to_value(&identities));
    m.insert("residual_zero".into(), json!(residual_zero));
    Ok(m)
}

fn pcc_section(sys: &AbelSystem) -> Step<Map<String, Value>> {
    let witness = pcc::check_pcc(sys)?;
    let verified = match &witness {
        Some(w) => {
            let ok = pcc::verify_witness(sys, w)?;
            if !ok {
                return Err(Failure::Internal(
                    "returned witness fails verification".into(),
                ));
            }
            Some(ok)
        }
        None => None,
    };
    let mut m = Map::new();
    m.insert("witness".into(), to_value(&witness));
    m.insert("verified".into(), to_value(&verified));
    m.insert(
        "degenerate".into(),
        to_value(&witness.as_ref().map(pcc::PccWitness::is_degenerate)),
    );
    Ok(m)
}

/// `n` with `g = c·t^{n-1}`, `c ∈ {1, n}`, `n` even, on `[-1, 1]`.
pub fn detect_monomial_g(sys: &AbelSystem) -> Option<usize> {
    let p = sys.as_poly().ok()?;
    if p.a != int(-1) || p.b != int(1) {
        return None;
    }
    let Degree::Finite(d) = p.g.degree() else {
        return None;
    };
    let n = d + 1;
    let lead = p.g.leading_coeff();
    let is_monomial = p.g.coeffs()[..d].iter().all(Zero::is_zero);
    (is_monomial && n % 2 == 0 && (lead.is_one() || lead == int(n as i64))).then_some(n)
}

fn signs_section(sys: &AbelSystem, a: &RunArgs) -> Step<Map<String, Value>> {
    let n = detect_monomial_g(sys).ok_or_else(|| {
        Failure::Input("signs requires g = t^(n-1) or n t^(n-1) with n even, on [-1, 1]".into())
    })?;
    let f = &sys.as_poly()?.f;
    let mut m = Map::new();
    m.insert("n".into(), json!(n));
    match signs::moment_propagation_check(f, n, a.max_k) {
        Ok(report) => {
            m.insert("hypotheses_hold".into(), json!(true));
            m.insert("report".into(), to_value(&report));
        }
        Err(Error::HypothesisFailed(msg)) => {
            let split = signs::even_odd_split(f);
            m.insert("hypotheses_hold".into(), json!(false));
            m.insert("hypothesis_failure".into(), json!(msg));
            m.insert("split".into(), to_value(&split));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(m)
}

fn reduce_report(planar: &PlanarSystem, a: &RunArgs) -> Step<Value> {
    let red = planar::reduce_planar(planar)?;
    let mut m = Map::new();
    m.insert("command".into(), json!("reduce"));
    m.insert("planar".into(), to_value(planar));
    m.insert("A".into(), to_value(&red.a));
    m.insert("B".into(), to_value(&red.b));
    m.insert("system".into(), to_value(&red.system));
    match red.system.moment_report(a.max_k) {
        Ok(r) => {
            m.insert("moments".into(), to_value(&r));
        }
        Err(Error::NonZeroMean { mean }) => {
            m.insert(
                "moments".into(),
                json!({ "skipped": format!("g has nonzero mean {mean}") }),
            );
        }
        Err(e) => return Err(e.into()),
    }
    m.insert(
        "caveat".into(),
        json!("valid where 1 + B(θ) r^(n-1) > 0; that region is not checked"),
    );
    Ok(Value::Object(m))
}

fn verify_section(sys: &AbelSystem, a: &RunArgs, log: &mut String) -> Step<Map<String, Value>> {
    let tol = a.tolerances();
    let scan = ode::displacement_scan(sys, &a.grid(), &tol);
    for (rho, why) in scan.failures() {
        log.push_str(&format!(
            "warning: integration failed at rho = {rho}: {why}\n"
        ));
    }
    if let Some(path) = &a.csv {
        std::fs::write(path, scan.to_csv())
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut m = Map::new();
    m.insert("scan".into(), to_value(&scan));
    if !sys.is_trig() {
        let series = returnmap::compute_return_series(sys, a.order)?;
        let cv = ode::cross_validate(sys, &series, &scan)?;
        m.insert("cross_validation".into(), to_value(&cv));
    }
    Ok(m)
}

fn matrix_report(args: &MatrixArgs) -> Step<Value> {
    let mm = system::moment_linear_system(args.n, &args.even_degrees, &args.moment_indices)?;
    let rows = |rows: &[Vec<crate::Rational>]| -> Value {
        json!(rows
            .iter()
            .map(|r| r.iter().map(format_short).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    };
    let mut m = Map::new();
    m.insert("command".into(), json!("matrix"));
    m.insert("n".into(), json!(mm.n));
    m.insert("even_degrees".into(), json!(mm.even_degrees));
    m.insert("moment_indices".into(), json!(mm.moment_indices));
    m.insert("raw".into(), rows(&mm.raw));
    m.insert("matrix".into(), rows(&mm.normalized));
    m.insert(
        "det".into(),
        json!(mm.determinant.as_ref().map(format_short)),
    );
    let is_default = mm.even_degrees == system::DEFAULT_EVEN_DEGREES
        && mm.moment_indices == system::DEFAULT_MOMENT_INDICES;
    if is_default {
        m.insert(
            "det_closed_form".into(),
            json!(format_short(&system::closed_form_determinant(mm.n))),
        );
    }
    m.insert("kernel".into(), rows(&mm.kernel));
    Ok(Value::Object(m))
}

fn full_sections(sys: &AbelSystem, a: &RunArgs, log: &mut String) -> Step<Map<String, Value>> {
    let mut m = Map::new();
    let moments = sys.moment_report(a.max_k);
    let moment_status = match &moments {
        Ok(r) => match r.first_nonzero_index {
            None => format!("m_0..m_{} all zero", a.max_k),
            Some(k) => format!("m_{k} = {} is the first nonzero moment", r.moments[k]),
        },
        Err(Error::NonZeroMean { mean }) => format!("not defined: g has nonzero mean {mean}"),
        Err(e) => return Err(e.clone().into()),
    };
    m.insert(
        "moments".into(),
        match &moments {
            Ok(r) => to_value(r),
            Err(e) => json!({ "skipped": e.to_string() }),
        },
    );

    let mut center_up_to = None;
    let mut focus_order = None;
    let mut witness_present = None;
    if sys.is_trig() {
        m.insert(
            "series".into(),
            json!({ "skipped": "trigonometric system" }),
        );
        m.insert("pcc".into(), json!({ "skipped": "trigonometric system" }));
    } else {
        let series = series_section(sys, a)?;
        let order = series["center_order"].as_u64().map(|k| k as usize);
        match order {
            None => center_up_to = Some(a.order),
            Some(k) => focus_order = Some(k),
        }
        m.insert("series".into(), Value::Object(series));
        let pcc = pcc_section(sys)?;
        let present = !pcc["witness"].is_null();
        if present && focus_order.is_some() {
            return Err(Failure::Internal(
                "composition witness found but a return-map coefficient is nonzero".into(),
            ));
        }
        witness_present = Some(present);
        m.insert("pcc".into(), Value::Object(pcc));
    }

    if detect_monomial_g(sys).is_some() {
        m.insert("signs".into(), Value::Object(signs_section(sys, a)?));
    }

    let verify = verify_section(sys, a, log)?;
    let scan: &Value = &verify["scan"];
    let max_abs = scan_max_abs(scan);
    let est_order = scan["estimated_order"]["order"].as_u64();
    m.insert("verify".into(), Value::Object(verify.clone()));

    let statement = match (center_up_to, focus_order, witness_present) {
        (_, Some(k), _) => format!("focus: first nonzero return-map coefficient at order {k}"),
        (Some(n), _, Some(true)) => {
            format!("no obstruction up to order {n}; composition witness certifies a center")
        }
        (Some(n), _, _) => format!("no obstruction found up to order {n}"),
        (None, None, _) => match moments.as_ref().ok().and_then(|r| r.first_nonzero_index) {
            Some(k) => format!("moment m_{k} is nonzero; numeric scan decides the return map"),
            None => format!("moments vanish up to order {}", a.max_k),
        },
    };
    m.insert(
        "verdict".into(),
        json!({
            "center_evidence_up_to_order": center_up_to,
            "focus_order": focus_order,
            "moment_status": moment_status,
            "pcc_witness": witness_present.map(|p| if p { "present" } else { "absent" }),
            "numeric": {
                "max_abs_displacement": max_abs,
                "estimated_order": est_order,
            },
            "statement": statement,
        }),
    );
    Ok(m)
}

fn scan_max_abs(scan: &Value) -> Option<f64> {
    scan["points"]
        .as_array()?
        .iter()
        .filter_map(|p| p["d"].as_f64())
        .map(f64::abs)
        .fold(None, |m, d| Some(m.map_or(d, |m: f64| m.max(d))))
}

/// `path: value` lines for every leaf, verdict first when present.
fn render_text(report: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, child) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&p, child, out);
                }
            }
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), child, out);
                }
            }
            other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    if let Some(verdict) = report.get("verdict") {
        walk("verdict", verdict, &mut out);
    }
    if let Value::Object(m) = report {
        for (k, v) in m.iter().filter(|(k, _)| k.as_str() != "verdict") {
            walk(k, v, &mut out);
        }
    }
    out
}
