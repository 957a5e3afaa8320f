//! JSON encodings of points and pairs.
//!
//! A point is `{"n": 3, "x": [x_1, .., x_n], "xbar": [xb_{n-1}, .., xb_1]}`.
//! Rational values are strings `"p/q"` (plain integers are accepted on
//! input); tropical values are integers.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geom_crystal::GcPoint;
use crate::matrix_real::Matrix;
use crate::semifield::{format_rational, parse_rational, MaxPlus, Rational, Semifield};
use crate::tropical_r::VwTable;

pub trait JsonScalar: Semifield {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(k) => k
                .as_i64()
                .map(|k| Rational::from_integer(k.into()))
                .ok_or_else(|| Error::Parse(format!("not an integer: {k}"))),
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }
}

impl JsonScalar for MaxPlus<i64> {
    fn to_json(&self) -> Value {
        json!(self.0)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_i64().map(MaxPlus).ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn scalars<S: JsonScalar>(v: &Value, key: &str) -> Result<Vec<S>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be an array")))?
        .iter()
        .map(S::from_json)
        .collect()
}

pub fn point_to_json<S: JsonScalar>(p: &GcPoint<S>) -> Value {
    json!({
        "n": p.n(),
        "x": p.x_part().iter().map(S::to_json).collect::<Vec<_>>(),
        "xbar": p.xbar_part().iter().map(S::to_json).collect::<Vec<_>>(),
    })
}

pub fn point_from_json<S: JsonScalar>(v: &Value) -> Result<GcPoint<S>> {
    let n = field(v, "n")?.as_u64().ok_or_else(|| Error::Parse("\"n\" must be a nonnegative integer".into()))?;
    let x = scalars(v, "x")?;
    let xbar = scalars(v, "xbar")?;
    if x.len() as u64 != n {
        return Err(Error::CoordinateCount { expected: n as usize, got: x.len() });
    }
    GcPoint::from_parts(x, xbar)
}

/// `{"x": point, "y": point}`.
pub fn pair_from_json<S: JsonScalar>(v: &Value) -> Result<(GcPoint<S>, GcPoint<S>)> {
    let x = point_from_json(field(v, "x")?)?;
    let y = point_from_json(field(v, "y")?)?;
    if x.n() != y.n() {
        return Err(Error::RankMismatch(x.n(), y.n()));
    }
    Ok((x, y))
}

pub fn table_to_json<S: JsonScalar>(t: &VwTable<S>) -> Value {
    let list = |v: &[S]| v.iter().map(S::to_json).collect::<Vec<_>>();
    json!({
        "V": list(&t.vt.v),
        "Vstar": list(&t.vt.v_star),
        "V0sigma1": t.vt.v0_sigma1.to_json(),
        "W": list(&t.w),
        "Vtilde": list(&t.v_tilde),
    })
}

/// A square matrix given as an array of rows.
pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("a matrix must be an array of rows".into()))?;
    let dim = rows.len();
    let mut cells = Vec::with_capacity(dim * dim);
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::Parse("a matrix row must be an array".into()))?;
        if row.len() != dim {
            return Err(Error::Parse(format!("matrix row of length {} in a {dim}x{dim} matrix", row.len())));
        }
        for cell in row {
            cells.push(Rational::from_json(cell)?);
        }
    }
    Ok(Matrix::from_fn(dim, |i, j| cells[(i - 1) * dim + j - 1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::int;

    #[test]
    fn round_trip() {
        let p = GcPoint::new(3, vec![int(1), int(2), int(3), int(4), int(5)]).unwrap();
        let v = point_to_json(&p);
        assert_eq!(v, json!({"n": 3, "x": ["1", "2", "3"], "xbar": ["4", "5"]}));
        assert_eq!(point_from_json::<Rational>(&v).unwrap(), p);
        let t = point_from_json::<MaxPlus<i64>>(&json!({"n": 3, "x": [2, 0, -1], "xbar": [1, 0]})).unwrap();
        assert_eq!(*t.x(3), MaxPlus(-1));
        let m = Matrix::identity(2);
        assert_eq!(matrix_from_json(&serde_json::to_value(&m).unwrap()).unwrap(), m);
        assert!(matrix_from_json(&json!([["1", "0"]])).is_err());
    }

    #[test]
    fn rejects_malformed() {
        let bad = json!({"n": 3, "x": ["1/0", "1", "1"], "xbar": ["1", "1"]});
        assert_eq!(point_from_json::<Rational>(&bad), Err(Error::ZeroDenominator));
        assert!(point_from_json::<Rational>(&json!({"n": 3, "x": ["1"], "xbar": []})).is_err());
        assert!(point_from_json::<Rational>(&json!({"n": 4, "x": ["1", "1", "1"], "xbar": ["1", "1"]})).is_err());
        assert!(point_from_json::<Rational>(&json!({"n": 3, "x": ["-1", "1", "1"], "xbar": ["1", "1"]})).is_err());
    }
}
