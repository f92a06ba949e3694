use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use paircrofton::bodies::{Body, BodySpec, FunctionKind};
use paircrofton::diagnostics::{classify, spectrum, DEFAULT_MAX_ORDER};
use paircrofton::functionals::{
    applicable_methods, crofton_hyperplanes, crofton_lines, crofton_lines_constant, default_direct_rule,
    default_spectral_rule, evaluate, theorem_residuals, Element, EvalOptions, Method, MonteCarloConfig,
    PairIntegralResult, Theorem, DEFAULT_MODES,
};
use paircrofton::harmonics::SphereRule;
use paircrofton::measures::{MeasureSpec, PairMeasure};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{Command, RunArgs};
use crate::output::Table;

#[derive(Debug)]
pub enum CliError {
    Core(paircrofton::Error),
    /// Missing inputs or flags that the command needs.
    Usage(String),
    Io(String),
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use paircrofton::Error as E;
        match self {
            CliError::Core(E::Spec(_) | E::Domain(_)) | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(E::Dimension { .. }) => 3,
            CliError::Core(E::Unsupported(_)) | CliError::Unsupported(_) => 4,
            CliError::Core(E::Numerical(_) | E::Overflow(_)) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Io(m) | CliError::Unsupported(m) => f.write_str(m),
        }
    }
}

impl From<paircrofton::Error> for CliError {
    fn from(e: paircrofton::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
}

impl Report {
    fn json(json: Value) -> Self {
        Self { json, table: None }
    }
}

pub fn execute(command: Command, args: &RunArgs) -> Result<Report> {
    let report = match command {
        Command::BodyInfo => body_info(args)?,
        Command::Pair => pair(args)?,
        Command::Spectrum => spectrum_cmd(args)?,
        Command::Classify => classify_cmd(args)?,
        Command::Theorem => theorem_cmd(args)?,
        Command::Beta => beta_cmd(args)?,
        Command::Crofton => crofton_cmd(args)?,
    };
    if let Some(path) = non_finite(&report.json, "$") {
        return Err(CliError::Core(paircrofton::Error::Numerical(format!("non-finite value at {path}"))));
    }
    Ok(report)
}

/// serde_json turns NaN and infinities into null; any null that is not an
/// absent optional is a numerical failure.
fn non_finite(v: &Value, path: &str) -> Option<String> {
    match v {
        Value::Null => Some(path.to_string()),
        Value::Array(a) => a.iter().enumerate().find_map(|(i, x)| non_finite(x, &format!("{path}[{i}]"))),
        Value::Object(m) => m
            .iter()
            .filter(|(k, _)| k.as_str() != "first_failing_mode")
            .find_map(|(k, x)| non_finite(x, &format!("{path}.{k}"))),
        _ => None,
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| CliError::Core(paircrofton::Error::Spec(format!("{what} {}: {e}", path.display()))))
}

fn check_dim(args: &RunArgs, found: usize) -> Result<()> {
    match args.dim {
        Some(d) if d as usize != found => Err(paircrofton::Error::Dimension { expected: d as usize, found }.into()),
        _ => Ok(()),
    }
}

fn load_body(args: &RunArgs) -> Result<Body> {
    let path = args.body.as_deref().ok_or_else(|| CliError::Usage("--body is required".into()))?;
    let body = Body::from_spec(&read_json::<BodySpec>(path, "body")?)?;
    check_dim(args, body.dim())?;
    Ok(body)
}

fn load_pair(args: &RunArgs) -> Result<(Body, Body)> {
    let k1 = load_body(args)?;
    let k2 = match &args.body2 {
        Some(path) => Body::from_spec(&read_json::<BodySpec>(path, "body")?)?,
        None => k1.clone(),
    };
    if k2.dim() != k1.dim() {
        return Err(paircrofton::Error::Dimension { expected: k1.dim(), found: k2.dim() }.into());
    }
    Ok((k1, k2))
}

fn load_measure(args: &RunArgs, d: Option<usize>) -> Result<PairMeasure> {
    let path = args.measure.as_deref().ok_or_else(|| CliError::Usage("--measure is required".into()))?;
    let measure = PairMeasure::from_spec(&read_json::<MeasureSpec>(path, "measure")?)?;
    if let Some(md) = measure.dim() {
        check_dim(args, md)?;
        if let Some(d) = d {
            if d != md {
                return Err(paircrofton::Error::Dimension { expected: d, found: md }.into());
            }
        }
    }
    Ok(measure)
}

fn rule(d: usize, resolution: Option<usize>, default: fn(usize) -> paircrofton::Result<SphereRule>) -> Result<SphereRule> {
    Ok(match (d, resolution) {
        (_, None) => default(d)?,
        (2, Some(n)) => SphereRule::circle(n)?,
        (_, Some(q)) => SphereRule::octant(q)?,
    })
}

fn spectral_rule(args: &RunArgs, d: usize) -> Result<SphereRule> {
    rule(d, args.sphere_res, default_spectral_rule)
}

fn montecarlo_config(args: &RunArgs) -> Option<MonteCarloConfig> {
    let (samples, seed) = (args.samples?, args.seed?);
    let mut cfg = MonteCarloConfig::new(samples, seed).with_workers(args.workers);
    if let Some(r) = args.radius {
        cfg = cfg.with_radius(r);
    }
    Some(cfg)
}

fn eval_options(args: &RunArgs, d: usize) -> Result<EvalOptions> {
    Ok(EvalOptions {
        modes: args.modes.unwrap_or(DEFAULT_MODES),
        spectral_rule: Some(spectral_rule(args, d)?),
        direct_rule: Some(rule(d, args.direct_res, default_direct_rule)?),
        slice_resolution: args.slice_res,
        montecarlo: montecarlo_config(args),
    })
}

/// Routes to run: the requested one, or every applicable route. Monte Carlo
/// joins `all` only when a sample count and seed are given.
fn methods(args: &RunArgs, measure: &PairMeasure, opts: &EvalOptions) -> Result<(Vec<Method>, Vec<Value>)> {
    match args.method.and_then(|m| m.single()) {
        Some(Method::Montecarlo) if opts.montecarlo.is_none() => {
            Err(CliError::Usage("--method montecarlo requires --samples and --seed".into()))
        }
        Some(m) => Ok((vec![m], Vec::new())),
        None => {
            let mut run = Vec::new();
            let mut skipped = Vec::new();
            for m in applicable_methods(measure) {
                if m == Method::Montecarlo && opts.montecarlo.is_none() {
                    skipped.push(json!({"method": m.name(), "reason": "needs --samples and --seed"}));
                } else {
                    run.push(m);
                }
            }
            Ok((run, skipped))
        }
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn extrema(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

fn body_info(args: &RunArgs) -> Result<Report> {
    let body = load_body(args)?;
    let rule = spectral_rule(args, body.dim())?;
    let (w_min, w_max) = extrema(&body.function(FunctionKind::Width).sample(&rule)?);
    let (b_min, b_max) = extrema(&body.function(FunctionKind::Brightness).sample(&rule)?);
    Ok(Report::json(json!({
        "kind": body.kind(),
        "dim": body.dim(),
        "W": body.mean_width(&rule)?,
        "S": body.surface_area(&rule)?,
        "width_min": w_min,
        "width_max": w_max,
        "brightness_min": b_min,
        "brightness_max": b_max,
        "enclosing_radius": body.enclosing_radius(),
        "nodes": rule.len(),
    })))
}

fn discrepancies(results: &[PairIntegralResult]) -> Vec<Value> {
    let mut out = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            let absolute = (a.value - b.value).abs();
            let scale = a.value.abs().max(b.value.abs());
            out.push(json!({
                "a": a.method.name(),
                "b": b.method.name(),
                "absolute": absolute,
                "relative": if scale > 0.0 { absolute / scale } else { absolute },
            }));
        }
    }
    out
}

fn pair(args: &RunArgs) -> Result<Report> {
    let (k1, k2) = load_pair(args)?;
    let d = k1.dim();
    let measure = load_measure(args, Some(d))?;
    let element = Element::from(args.elements);
    let opts = eval_options(args, d)?;
    let (run, skipped) = methods(args, &measure, &opts)?;
    let results = run
        .iter()
        .map(|&m| evaluate(&k1, &k2, element, &measure, m, &opts))
        .collect::<paircrofton::Result<Vec<_>>>()?;
    let mut json = Map::new();
    json.insert("element".into(), to_value(&element));
    json.insert("dim".into(), d.into());
    json.insert("measure".into(), measure.kind().into());
    json.insert("results".into(), to_value(&results));
    if results.len() > 1 {
        json.insert("discrepancies".into(), Value::Array(discrepancies(&results)));
    }
    if !skipped.is_empty() {
        json.insert("skipped".into(), Value::Array(skipped));
    }
    Ok(Report::json(Value::Object(json)))
}

fn spectrum_cmd(args: &RunArgs) -> Result<Report> {
    let body = load_body(args)?;
    let rule = spectral_rule(args, body.dim())?;
    let report = spectrum(&body, args.function.into(), args.modes.unwrap_or(DEFAULT_MAX_ORDER), args.tol, &rule)?;
    let table = Table {
        headers: vec!["m", "energy"],
        rows: report.energies.iter().map(|e| vec![e.m as f64, e.energy]).collect(),
    };
    Ok(Report { json: to_value(&report), table: Some(table) })
}

fn classify_cmd(args: &RunArgs) -> Result<Report> {
    let body = load_body(args)?;
    let rule = spectral_rule(args, body.dim())?;
    let c = classify(&body, args.modes.unwrap_or(DEFAULT_MAX_ORDER), args.tol, &rule)?;
    let table = Table {
        headers: vec!["m", "width", "brightness"],
        rows: c
            .width
            .energies
            .iter()
            .zip(&c.brightness.energies)
            .map(|(w, b)| vec![w.m as f64, w.energy, b.energy])
            .collect(),
    };
    Ok(Report { json: to_value(&c), table: Some(table) })
}

fn theorem_cmd(args: &RunArgs) -> Result<Report> {
    let theorem: Theorem = args.theorem.parse()?;
    let (k1, k2) = load_pair(args)?;
    let d = k1.dim();
    let measure = load_measure(args, Some(d))?;
    let opts = eval_options(args, d)?;
    let run: Vec<Option<Method>> = match args.method {
        None => vec![None],
        Some(_) => methods(args, &measure, &opts)?.0.into_iter().map(Some).collect(),
    };
    let residuals = run
        .into_iter()
        .map(|m| theorem_residuals(&k1, &k2, &measure, theorem, m, &opts))
        .collect::<paircrofton::Result<Vec<_>>>()?;
    Ok(Report::json(json!({
        "theorem": theorem.name(),
        "dim": d,
        "measure": measure.kind(),
        "residuals": to_value(&residuals),
    })))
}

fn beta_cmd(args: &RunArgs) -> Result<Report> {
    let measure = load_measure(args, None)?;
    let d = match (measure.dim(), args.dim) {
        (Some(d), _) => d,
        (None, Some(d)) => d as usize,
        (None, None) => return Err(CliError::Usage("--dim is required for measures without a dimension".into())),
    };
    let modes = args.modes.unwrap_or(DEFAULT_MODES);
    let beta = measure.beta(d, modes)?;
    let table = Table {
        headers: vec!["m", "beta"],
        rows: beta.values.iter().enumerate().map(|(m, b)| vec![m as f64, *b]).collect(),
    };
    let json = json!({
        "d": d,
        "M": modes,
        "values": beta.values,
        "mass_bound": beta.mass_bound,
        "lambda": measure.lambda(d)?,
        "kappa": measure.kappa(d)?,
    });
    Ok(Report { json, table: Some(table) })
}

fn crofton_cmd(args: &RunArgs) -> Result<Report> {
    let body = load_body(args)?;
    let d = body.dim();
    let rule = spectral_rule(args, d)?;
    let s = body.surface_area(&rule)?;
    Ok(Report::json(json!({
        "dim": d,
        "hyperplanes": crofton_hyperplanes(&body, &rule)?,
        "mean_width": body.mean_width(&rule)?,
        "lines": crofton_lines(&body, &rule)?,
        "surface_area": s,
        "lines_constant": crofton_lines_constant(d),
        "lines_predicted": crofton_lines_constant(d) * s,
    })))
}
