//! Command-line front end. Every verb prints one JSON document on stdout.
//!
//! Exit codes: `0` success, `1` domain error (JSON `{"error": {...}}` on
//! stdout) or failed verification, `2` usage error (message on stderr).

use crate::arakelov::{arithmetic_degree_with_section, FractionalIdeal, MetrizedLineBundle, NumberField};
use crate::charmorph::{chi_gl, chi_torus, CharType};
use crate::chevalley::IntegralLieAlgebra;
use crate::curve::{cameral_curve, spectral_curve, HiggsField};
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, RootSystem};
use crate::serial::*;
use crate::torsor::{cartan_data_with_center_scale, verify_compatibility, ArithmeticTorsor, Place};
use crate::Rational;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;

#[derive(Parser, Debug)]
#[command(
    name = "arithchar",
    version,
    about = "Root systems, Chevalley bases, characteristic morphisms and arithmetic characteristic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_cartan(s: &str) -> std::result::Result<CartanType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_chartype(s: &str) -> std::result::Result<CharType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> std::result::Result<NumberField, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, simple roots, Cartan matrix and (optionally) the Weyl group.
    Rootsys {
        #[arg(long = "type", value_parser = parse_cartan)]
        ty: CartanType,
        #[arg(long)]
        weyl: bool,
    },
    /// Integral Chevalley basis and bracket table.
    Chevalley {
        #[arg(long = "type", value_parser = parse_cartan)]
        ty: CartanType,
        #[arg(long, default_value_t = 0)]
        center: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Characteristic morphism of a matrix, or of a torus point.
    Chi {
        #[arg(long, conflicts_with_all = ["torus_point", "ty"], required_unless_present = "torus_point")]
        matrix: Option<String>,
        #[arg(long = "torus-point", requires = "ty")]
        torus_point: Option<String>,
        #[arg(long = "type", value_parser = parse_chartype)]
        ty: Option<CharType>,
    },
    /// Arithmetic degree of a metrized line bundle.
    Degree {
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: NumberField,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        metrics: Option<String>,
    },
    /// Slope of an arithmetic GL_n-torsor against det^k.
    Slope {
        #[arg(long)]
        torsor: String,
        #[arg(long = "char", allow_hyphen_values = true)]
        chi: i64,
    },
    /// Spectral (or cameral) curve of a Higgs field.
    Curve {
        #[arg(long)]
        matrix: String,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: NumberField,
        #[arg(long)]
        twist: Option<String>,
        #[arg(long)]
        cameral: bool,
        #[arg(long)]
        fibers: Option<u64>,
    },
    /// Re-check a JSON document produced by another verb (or a metric).
    Verify {
        #[arg(long)]
        input: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const DEFAULT_PMAX: u64 = 100;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((value, ok)) => Outcome { code: if ok { 0 } else { 1 }, stdout: pretty(&value), stderr: String::new() },
        Err(e) => Outcome {
            code: 1,
            stdout: pretty(&json!({"error": {"kind": e.kind(), "message": e.to_string()}})),
            stderr: String::new(),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn dispatch(cmd: &Command) -> Result<(Value, bool)> {
    let v = match cmd {
        Command::Rootsys { ty, weyl } => rootsys_json(*ty, *weyl),
        Command::Chevalley { ty, center, verify } => chevalley_json(*ty, *center, *verify)?,
        Command::Chi { matrix, torus_point, ty } => match (matrix, torus_point, ty) {
            (Some(m), _, _) => chi_matrix_json(&parse_rational_matrix(&parse_json_arg(m)?)?)?,
            (None, Some(p), Some(t)) => chi_point_json(t, &parse_vector(&parse_json_arg(p)?, parse_rational_value)?)?,
            _ => return Err(Error::InvalidArgument("chi needs --matrix or --torus-point with --type".into())),
        },
        Command::Degree { field, ideal, metrics } => {
            let ideal = parse_ideal(field, &parse_json_arg(ideal)?)?;
            let metrics = match metrics {
                Some(m) => Some(parse_vector(&parse_json_arg(m)?, parse_real_value)?),
                None => None,
            };
            degree_json(field, &ideal, metrics)?
        }
        Command::Slope { torsor, chi } => {
            let doc = parse_json_arg(torsor)?;
            slope_json(&parse_torsor(&doc)?, *chi)?
        }
        Command::Curve { matrix, field, twist, cameral, fibers } => {
            let m = parse_field_matrix(field, &parse_json_arg(matrix)?)?;
            let twist = match twist {
                Some(t) => parse_ideal(field, &parse_json_arg(t)?)?,
                None => FractionalIdeal::unit(*field),
            };
            curve_json(&HiggsField::new(*field, m, twist)?, *cameral, *fibers)?
        }
        Command::Verify { input } => return verify_json(&parse_json_arg(input)?),
    };
    Ok((v, true))
}

#[derive(Serialize)]
struct WeylOut {
    word: Vec<usize>,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct RootsysOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    rank: usize,
    ambient_dim: usize,
    simple: Vec<Vec<String>>,
    roots: Vec<Vec<String>>,
    positive: Vec<Vec<String>>,
    positive_count: usize,
    gram: Vec<Vec<String>>,
    cartan_matrix: Vec<Vec<i64>>,
    weyl_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    weyl: Option<Vec<WeylOut>>,
}

pub fn rootsys_json(t: CartanType, weyl: bool) -> Value {
    let rs = RootSystem::build(t);
    let coords = |r: &crate::rootsys::Root| r.coords().iter().map(rat_str).collect::<Vec<_>>();
    let weyl = weyl.then(|| {
        rs.weyl_group()
            .iter()
            .map(|w| WeylOut { word: w.word.clone(), matrix: rational_matrix_json(&rs.weyl_matrix(w)) })
            .collect()
    });
    to_value(&RootsysOut {
        command: "rootsys",
        ty: t.to_string(),
        rank: rs.rank(),
        ambient_dim: rs.ambient_dim(),
        simple: rs.simple().iter().map(coords).collect(),
        roots: rs.roots().iter().map(coords).collect(),
        positive: rs.positive().iter().map(coords).collect(),
        positive_count: rs.num_positive(),
        gram: rational_matrix_json(rs.gram()),
        cartan_matrix: rs.cartan_matrix(),
        weyl_order: t.weyl_order(),
        weyl,
    })
}

#[derive(Serialize)]
struct BracketRecord {
    x: String,
    y: String,
    result: Vec<i64>,
}

#[derive(Serialize)]
struct ChevalleyOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    center: usize,
    dimension: usize,
    basis: Vec<String>,
    table: Vec<BracketRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<crate::chevalley::ChevalleyReport>,
}

const JACOBI_SAMPLES: usize = 10_000;

pub fn chevalley_json(t: CartanType, center: usize, verify: bool) -> Result<Value> {
    let rs = RootSystem::build(t);
    let lie = IntegralLieAlgebra::build(&rs, center);
    let table = lie
        .table_records()
        .into_iter()
        .map(|(i, j, result)| BracketRecord { x: lie.basis_id(i), y: lie.basis_id(j), result })
        .collect();
    Ok(to_value(&ChevalleyOut {
        command: "chevalley",
        ty: t.to_string(),
        center,
        dimension: lie.dim(),
        basis: (0..lie.dim()).map(|i| lie.basis_id(i)).collect(),
        table,
        verification: verify.then(|| lie.verify(JACOBI_SAMPLES)),
    }))
}

pub fn chi_matrix_json(m: &crate::QMatrix) -> Result<Value> {
    let cp = chi_gl(m)?;
    Ok(json!({
        "command": "chi",
        "type": CharType::Gl(m.rows()).to_string(),
        "matrix": rational_matrix_json(m),
        "invariants": cp.values.iter().map(rat_str).collect::<Vec<_>>(),
    }))
}

pub fn chi_point_json(t: &CharType, point: &[Rational]) -> Result<Value> {
    let cp = chi_torus(t, point)?;
    Ok(json!({
        "command": "chi",
        "type": t.to_string(),
        "point": point.iter().map(rat_str).collect::<Vec<_>>(),
        "invariants": cp.values.iter().map(rat_str).collect::<Vec<_>>(),
    }))
}

pub fn degree_json(field: &NumberField, ideal: &FractionalIdeal, metrics: Option<Vec<f64>>) -> Result<Value> {
    let bundle = match metrics {
        Some(m) => MetrizedLineBundle::new(ideal.clone(), m)?,
        None => MetrizedLineBundle::standard(ideal.clone()),
    };
    let section = ideal.some_element();
    let degree = arithmetic_degree_with_section(field, &bundle, &section)?;
    Ok(json!({
        "command": "degree",
        "field": field.to_string(),
        "ideal": ideal_json(ideal),
        "norm": rat_str(&ideal.norm()),
        "metrics": bundle.metrics.iter().map(|x| real_str(*x)).collect::<Vec<_>>(),
        "section": elem_str(&section),
        "degree": real_str(degree),
    }))
}

pub fn parse_torsor(doc: &Value) -> Result<ArithmeticTorsor> {
    let field: NumberField = doc
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("torsor needs a \"field\" string".into()))?
        .parse()?;
    let ideals = parse_vector(doc.get("ideals").ok_or_else(|| Error::Parse("torsor needs \"ideals\"".into()))?, |v| {
        parse_ideal(&field, v)
    })?;
    if let Some(r) = doc.get("rank") {
        let r = r.as_u64().ok_or_else(|| Error::Parse("rank must be an integer".into()))?;
        if r as usize != ideals.len() {
            return Err(Error::DimensionMismatch { expected: r as usize, got: ideals.len() });
        }
    }
    let grams = match doc.get("metrics") {
        Some(m) => parse_vector(m, parse_real_matrix)?,
        None => vec![crate::linalg::Matrix::identity(ideals.len()); field.num_places()],
    };
    ArithmeticTorsor::new(field, ideals, grams)
}

fn torsor_json(t: &ArithmeticTorsor) -> Value {
    json!({
        "field": t.field.to_string(),
        "rank": t.rank,
        "ideals": t.ideals.iter().map(ideal_json).collect::<Vec<_>>(),
        "metrics": t.grams.iter().map(real_matrix_json).collect::<Vec<_>>(),
    })
}

pub fn slope_json(t: &ArithmeticTorsor, k: i64) -> Result<Value> {
    let det = t.det_bundle()?;
    Ok(json!({
        "command": "slope",
        "torsor": torsor_json(t),
        "char": k,
        "det_ideal": ideal_json(&det.ideal),
        "det_metrics": det.metrics.iter().map(|x| real_str(*x)).collect::<Vec<_>>(),
        "slope": real_str(t.slope(k)?),
    }))
}

#[derive(Serialize)]
struct RamifiedOut {
    p: u64,
    pattern: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct CoveringOut {
    prime: u64,
    spectral_points: usize,
    cameral_points: usize,
    compatible: bool,
    ok: bool,
}

#[derive(Serialize)]
struct CameralOut {
    equations: Vec<String>,
    rational_points: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CurveOut {
    command: &'static str,
    kind: &'static str,
    field: String,
    matrix: Vec<Vec<String>>,
    twist: Vec<Vec<String>>,
    degree: usize,
    poly: Vec<String>,
    char_point: Vec<String>,
    disc: String,
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    fibers: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ramified: Option<Vec<RamifiedOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    covering: Option<CoveringOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cameral: Option<CameralOut>,
}

pub fn curve_json(phi: &HiggsField, cameral: bool, fibers: Option<u64>) -> Result<Value> {
    let c = if cameral { cameral_curve(phi)? } else { spectral_curve(phi)? };
    let integral = c.poly.coeffs().iter().all(|x| x.is_integral());
    let analyse = !c.degenerate && (integral || fibers.is_some());
    let (ramified, covering) = if analyse {
        let rep = c.ramification_report(fibers.unwrap_or(DEFAULT_PMAX))?;
        let ramified = rep.ramified.into_iter().map(|r| RamifiedOut { p: r.p, pattern: r.pattern }).collect();
        let chk = c.covering_degree_check()?;
        let covering = CoveringOut {
            prime: chk.prime,
            spectral_points: chk.spectral_points,
            cameral_points: chk.cameral_points,
            compatible: chk.compatible,
            ok: chk.ok,
        };
        (Some(ramified), Some(covering))
    } else if fibers.is_some() {
        return Err(Error::DegenerateCurve);
    } else {
        (None, None)
    };
    let cameral_out = cameral.then(|| {
        let equations =
            c.char_point.values.iter().enumerate().map(|(k, a)| format!("e{}(l) = {}", k + 1, elem_str(a))).collect();
        let rational_points = if c.base.is_rational() {
            c.rational_cameral_points().unwrap_or_default().iter().map(|pt| pt.iter().map(rat_str).collect()).collect()
        } else {
            Vec::new()
        };
        CameralOut { equations, rational_points }
    });
    Ok(to_value(&CurveOut {
        command: "curve",
        kind: c.kind.as_str(),
        field: c.base.to_string(),
        matrix: field_matrix_json(&phi.matrix),
        twist: ideal_json(&phi.twist),
        degree: c.degree(),
        poly: c.coefficients_high_to_low().iter().map(elem_str).collect(),
        char_point: c.char_point.values.iter().map(elem_str).collect(),
        disc: elem_str(&c.discriminant),
        degenerate: c.degenerate,
        fibers,
        ramified,
        covering,
        cameral: cameral_out,
    }))
}

fn field_of(doc: &Value) -> Result<NumberField> {
    doc.get("field").and_then(Value::as_str).unwrap_or("Q").parse()
}

fn get<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| Error::Parse(format!("missing \"{key}\"")))
}

fn get_str<'a>(doc: &'a Value, key: &str) -> Result<&'a str> {
    get(doc, key)?.as_str().ok_or_else(|| Error::Parse(format!("\"{key}\" must be a string")))
}

/// Recompute a document from the inputs it embeds and compare; metric
/// documents (`{"kind": "metric", "n", "place", "h"[, "center_scale"]}`)
/// get the compatibility report instead.
pub fn verify_json(doc: &Value) -> Result<(Value, bool)> {
    if doc.get("kind").and_then(Value::as_str) == Some("metric") {
        return verify_metric(doc);
    }
    let command = get_str(doc, "command")?;
    let recomputed = match command {
        "rootsys" => rootsys_json(get_str(doc, "type")?.parse()?, doc.get("weyl").is_some()),
        "chevalley" => {
            let center = get(doc, "center")?.as_u64().ok_or_else(|| Error::Parse("center".into()))? as usize;
            let mut v = chevalley_json(get_str(doc, "type")?.parse()?, center, true)?;
            if doc.get("verification").is_none() {
                let report = v.as_object_mut().unwrap().remove("verification").unwrap();
                let passed = report_passed(&report);
                let same = &v == doc;
                return Ok((
                    verify_out(command, same && passed, json!({"recomputed": same, "chevalley_basis": passed})),
                    same && passed,
                ));
            }
            v
        }
        "chi" => match doc.get("matrix") {
            Some(m) => chi_matrix_json(&parse_rational_matrix(m)?)?,
            None => chi_point_json(
                &get_str(doc, "type")?.parse()?,
                &parse_vector(get(doc, "point")?, parse_rational_value)?,
            )?,
        },
        "degree" => {
            let field = field_of(doc)?;
            let ideal = parse_ideal(&field, get(doc, "ideal")?)?;
            let metrics = parse_vector(get(doc, "metrics")?, parse_real_value)?;
            degree_json(&field, &ideal, Some(metrics))?
        }
        "slope" => {
            let k = get(doc, "char")?.as_i64().ok_or_else(|| Error::Parse("char".into()))?;
            slope_json(&parse_torsor(get(doc, "torsor")?)?, k)?
        }
        "curve" => {
            let field = field_of(doc)?;
            let m = parse_field_matrix(&field, get(doc, "matrix")?)?;
            let twist = parse_ideal(&field, get(doc, "twist")?)?;
            let cameral = get_str(doc, "kind")? == "cameral";
            let fibers = doc.get("fibers").and_then(Value::as_u64);
            curve_json(&HiggsField::new(field, m, twist)?, cameral, fibers)?
        }
        other => return Err(Error::InvalidArgument(format!("cannot verify documents of kind '{other}'"))),
    };
    let same = &recomputed == doc;
    let mut checks = json!({"recomputed": same});
    let mut ok = same;
    if let Some(report) = recomputed.get("verification") {
        let passed = report_passed(report);
        checks["chevalley_basis"] = json!(passed);
        ok &= passed;
    }
    if let Some(cov) = recomputed.get("covering") {
        let passed = cov.get("ok").and_then(Value::as_bool).unwrap_or(false);
        checks["covering_degree"] = json!(passed);
        ok &= passed;
    }
    Ok((verify_out(command, ok, checks), ok))
}

fn report_passed(report: &Value) -> bool {
    let flag = |k: &str| report.get(k).and_then(Value::as_bool).unwrap_or(false);
    [
        "integral",
        "antisymmetric",
        "jacobi",
        "toral_abelian",
        "center_central",
        "cartan_action",
        "coroot_integral",
        "sl2_triples",
        "vanishing_off_roots",
        "structure_magnitude",
        "negation_rule",
        "squared_constant_rule",
    ]
    .iter()
    .all(|k| flag(k))
}

fn verify_out(command: &str, verified: bool, checks: Value) -> Value {
    json!({"command": "verify", "input_command": command, "verified": verified, "checks": checks})
}

fn verify_metric(doc: &Value) -> Result<(Value, bool)> {
    let n = get(doc, "n")?.as_u64().ok_or_else(|| Error::Parse("n must be an integer".into()))? as usize;
    let place = match doc.get("place").and_then(Value::as_str).unwrap_or("real") {
        "real" => Place::Real,
        "complex" => Place::Complex,
        other => return Err(Error::Parse(format!("unknown place '{other}'"))),
    };
    let c = match doc.get("center_scale") {
        Some(v) => parse_real_value(v)?,
        None => 1.0,
    };
    let cd = cartan_data_with_center_scale(n, place, c)?;
    let h = parse_real_matrix(get(doc, "h")?)?;
    let report = verify_compatibility(&cd, &h)?;
    let ok = report.passed;
    Ok((verify_out("metric", ok, to_value(&report)), ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("arithchar").chain(args.iter().copied()))
    }

    #[test]
    fn rootsys_a2() {
        let out = run_args(&["rootsys", "--type", "A2"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["roots"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn unsupported_type_is_usage_error() {
        let out = run_args(&["rootsys", "--type", "E8"]);
        assert_eq!(out.code, 2);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("unsupported type"));
    }

    #[test]
    fn curve_disc() {
        let out = run_args(&["curve", "--matrix", "[[0,1],[2,0]]", "--field", "Q"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["disc"], "8");
        assert_eq!(v["poly"], json!(["1", "0", "-2"]));
        assert_eq!(v["ramified"], json!([{"p": 2, "pattern": [[1, 2]]}]));
    }

    #[test]
    fn degenerate_curve_with_fibers_is_domain_error() {
        let out = run_args(&["curve", "--matrix", "[[0,1],[0,0]]", "--fibers", "50"]);
        assert_eq!(out.code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "DegenerateCurve");
        let out = run_args(&["curve", "--matrix", "[[0,1],[0,0]]"]);
        assert_eq!(out.code, 0);
    }

    #[test]
    fn chi_outputs() {
        let out = run_args(&["chi", "--torus-point", "[1,2,3]", "--type", "gl_3"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["invariants"], json!(["6", "11", "6"]));
        assert_eq!(v["type"], "gl_3");
        let out = run_args(&["chi", "--matrix", "[[1,2],[3,4]]", "--type", "gl_2"]);
        assert_eq!(out.code, 2);
        let out = run_args(&["chi"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn degree_example() {
        let out = run_args(&["degree", "--field", "Q(sqrt(-5))", "--ideal", "[\"2\", \"1 + w\"]", "--metrics", "[1]"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let d: f64 = v["degree"].as_str().unwrap().parse().unwrap();
        assert!((d + 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn negative_char_is_accepted() {
        let out = run_args(&["slope", "--torsor", "{\"field\":\"Q\",\"ideals\":[[[\"2\"]]]}", "--char", "-2"]);
        assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    }
}
