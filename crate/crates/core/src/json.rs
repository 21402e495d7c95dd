//! Canonical JSON encodings: rationals as "a/b", Gaussian rationals as
//! "a/b+c/d*i" (no spaces, both parts always present), matrices as arrays
//! of arrays of scalar strings. Encoders always emit the canonical form;
//! decoders accept integer shorthands.

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{rat_from_str, rat_to_string, GaussRat};
use crate::{GMat, IMat, Int, QMat, Rat, ZMat};

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

pub fn rat_from_json(v: &Value, path: &str) -> Result<Rat> {
    match v {
        Value::String(s) => rat_from_str(s),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::parse(format!("{path}: number is not an integer")))?;
            Ok(Rat::from_integer(Int::from(i)))
        }
        _ => Err(Error::parse(format!("{path}: expected a rational string"))),
    }
    .map_err(|e| Error::parse(format!("{path}: {e}")))
}

pub fn gauss_to_json(z: &GaussRat) -> Value {
    Value::String(z.to_canonical_string())
}

pub fn gauss_from_json(v: &Value, path: &str) -> Result<GaussRat> {
    match v {
        Value::String(s) => GaussRat::parse(s),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::parse(format!("{path}: number is not an integer")))?;
            Ok(GaussRat::from_ints(i, 0))
        }
        _ => Err(Error::parse(format!(
            "{path}: expected a Gaussian rational string"
        ))),
    }
    .map_err(|e| Error::parse(format!("{path}: {e}")))
}

pub fn int_from_json(v: &Value, path: &str) -> Result<Int> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| Error::parse(format!("{path}: number is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse::<Int>()
            .map_err(|_| Error::parse(format!("{path}: bad integer string"))),
        _ => Err(Error::parse(format!("{path}: expected an integer"))),
    }
}

pub fn i64_from_json(v: &Value, path: &str) -> Result<i64> {
    int_from_json(v, path)?
        .to_i64()
        .ok_or_else(|| Error::parse(format!("{path}: integer out of machine range")))
}

pub fn usize_from_json(v: &Value, path: &str) -> Result<usize> {
    let i = i64_from_json(v, path)?;
    usize::try_from(i).map_err(|_| Error::parse(format!("{path}: expected a nonnegative integer")))
}

fn matrix_from_json<T>(
    v: &Value,
    path: &str,
    parse: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Matrix<T>>
where
    T: crate::scalar::Ring,
{
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse(format!("{path}: expected an array of rows")))?;
    if rows.is_empty() {
        return Err(Error::parse(format!("{path}: matrix has no rows")));
    }
    let mut data = Vec::new();
    let ncols = rows[0]
        .as_array()
        .ok_or_else(|| Error::parse(format!("{path}[0]: expected an array")))?
        .len();
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(format!("{path}[{r}]: expected an array")))?;
        if row.len() != ncols {
            return Err(Error::parse(format!("{path}[{r}]: ragged row")));
        }
        for (c, cell) in row.iter().enumerate() {
            data.push(parse(cell, &format!("{path}[{r}][{c}]"))?);
        }
    }
    Matrix::from_vec(rows.len(), ncols, data)
}

pub fn qmat_to_json(m: &QMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| rat_to_json(m.at(r, c))).collect()))
            .collect(),
    )
}

pub fn qmat_from_json(v: &Value, path: &str) -> Result<QMat> {
    matrix_from_json(v, path, rat_from_json)
}

pub fn gmat_to_json(m: &GMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| gauss_to_json(m.at(r, c))).collect()))
            .collect(),
    )
}

pub fn gmat_from_json(v: &Value, path: &str) -> Result<GMat> {
    matrix_from_json(v, path, gauss_from_json)
}

pub fn zmat_to_json(m: &ZMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(m.at(r, c).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn zmat_from_json(v: &Value, path: &str) -> Result<ZMat> {
    matrix_from_json(v, path, int_from_json)
}

pub fn imat_to_json(m: &IMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| json!(m.at(r, c))).collect()))
            .collect(),
    )
}

pub fn imat_from_json(v: &Value, path: &str) -> Result<IMat> {
    matrix_from_json(v, path, i64_from_json)
}

/// Fetches a required field of an object.
pub fn field<'a>(v: &'a Value, name: &str, path: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::parse(format!("{path}: missing field {name:?}")))
}
