//! JSON conventions: exact rationals as strings (`"2"`, `"-1/2"`), field
//! elements as `"a + b*w"`, archimedean reals as 17-significant-digit
//! decimal strings, ideals as HNF matrices of rational strings.

use crate::arakelov::{FieldElem, FractionalIdeal, NumberField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::parse_rational;
use crate::Rational;
use serde_json::Value;
use std::path::Path;

pub fn rat_str(q: &Rational) -> String {
    q.to_string()
}

pub fn elem_str(x: &FieldElem) -> String {
    x.to_string()
}

/// Decimal rendering with 17 significant digits, trailing zeros removed.
pub fn real_str(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.16e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-7..21).contains(&exp) {
        return s;
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let mut out = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

/// Parse a JSON argument given inline, as `@path`, or as the path of an
/// existing file.
pub fn parse_json_arg(arg: &str) -> Result<Value> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        read_file(path)?
    } else if serde_json::from_str::<Value>(arg).is_err() && Path::new(arg).is_file() {
        read_file(arg)?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("expected a number or string, got {other}"))),
    }
}

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    let s = scalar_text(v)?;
    parse_rational(s.trim()).ok_or_else(|| Error::Parse(format!("bad rational '{s}'")))
}

pub fn parse_real_value(v: &Value) -> Result<f64> {
    let s = scalar_text(v)?;
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad real '{s}'")))
}

pub fn parse_elem_value(field: &NumberField, v: &Value) -> Result<FieldElem> {
    field.parse_elem(&scalar_text(v)?)
}

pub fn parse_vector<T>(v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<T>> {
    v.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?.iter().map(f).collect()
}

/// Rows of a matrix (rectangular check included).
pub fn parse_rows<T>(v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let rows: Vec<Vec<T>> = parse_vector(v, |row| parse_vector(row, &f))?;
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
    }
    Ok(rows)
}

pub fn parse_rational_matrix(v: &Value) -> Result<Matrix<Rational>> {
    let rows = parse_rows(v, parse_rational_value)?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    Matrix::from_rows(rows)
}

pub fn parse_real_matrix(v: &Value) -> Result<Matrix<f64>> {
    let rows = parse_rows(v, parse_real_value)?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    Matrix::from_rows(rows)
}

pub fn parse_field_matrix(field: &NumberField, v: &Value) -> Result<Matrix<FieldElem>> {
    let rows = parse_rows(v, |x| parse_elem_value(field, x))?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    Matrix::from_rows(rows)
}

/// An ideal given either as an HNF matrix (array of arrays) or as a list of
/// generators.
pub fn parse_ideal(field: &NumberField, v: &Value) -> Result<FractionalIdeal> {
    let items = v.as_array().ok_or_else(|| Error::Parse("ideal must be a JSON array".into()))?;
    if items.iter().all(Value::is_array) && !items.is_empty() {
        let rows = parse_rows(v, parse_rational_value)?;
        FractionalIdeal::from_hnf(*field, &rows)
    } else {
        let gens = parse_vector(v, |x| parse_elem_value(field, x))?;
        FractionalIdeal::from_generators(*field, &gens)
    }
}

pub fn ideal_json(i: &FractionalIdeal) -> Vec<Vec<String>> {
    i.hnf().iter().map(|r| r.iter().map(rat_str).collect()).collect()
}

pub fn rational_matrix_json(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(rat_str).collect()).collect()
}

pub fn field_matrix_json(m: &Matrix<FieldElem>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(elem_str).collect()).collect()
}

pub fn real_matrix_json(m: &Matrix<f64>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| real_str(*x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use serde_json::json;

    #[test]
    fn real_formatting() {
        assert_eq!(real_str(0.0), "0");
        assert_eq!(real_str(1.0), "1");
        assert_eq!(real_str(-2f64.ln()), "-0.69314718055994529");
        assert_eq!(real_str(1234.5), "1234.5");
        assert_eq!(real_str(1e-3), "0.001");
        assert_eq!(real_str(1e30), "1.0000000000000000e30");
        let x = 0.1 + 0.2;
        assert_eq!(real_str(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn rational_values() {
        assert_eq!(parse_rational_value(&json!("1/2")).unwrap(), q(1, 2));
        assert_eq!(parse_rational_value(&json!(3)).unwrap(), qi(3));
        assert_eq!(parse_rational_value(&json!(0.25)).unwrap(), q(1, 4));
        assert!(parse_rational_value(&json!([1])).is_err());
        assert_eq!(rat_str(&q(-3, 6)), "-1/2");
    }

    #[test]
    fn ideals_both_forms() {
        let k: NumberField = "Q(sqrt(-5))".parse().unwrap();
        let a = parse_ideal(&k, &json!(["2", "1 + w"])).unwrap();
        let b = parse_ideal(&k, &json!([[2, 0], [1, 1]])).unwrap();
        assert_eq!(a, b);
        assert_eq!(ideal_json(&a), vec![vec!["2", "0"], vec!["1", "1"]]);
        assert!(parse_ideal(&k, &json!([])).is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_rational_matrix(&json!([[0, 1], ["2", "1/3"]])).unwrap();
        assert_eq!(m[(1, 1)], q(1, 3));
        assert!(parse_rational_matrix(&json!([[0, 1], [2]])).is_err());
        assert!(parse_rational_matrix(&json!([])).is_err());
    }
}
