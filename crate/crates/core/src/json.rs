//! JSON encoding and decoding of the public value types.
//!
//! Scalars serialize as `{"num": [[c,a,b], ...], "den": [[c,a,b], ...]}` with
//! `c` a decimal string and `(a,b)` the q,t exponents; symmetric functions as
//! `{"basis": "...", "terms": [{"partition": [...], "coeff": ...}, ...]}`.
//! Terms are emitted in canonical map order so identical values always print
//! byte-identically.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt::{IntPoly2, QtScalar};
use crate::symfunc::{Basis, SymFunc};
use crate::tau::TensorSeries;
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::str::FromStr;

fn poly_to_json(p: &IntPoly2) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(&(a, b), c)| json!([c.to_string(), a, b]))
        .collect();
    Value::Array(terms)
}

fn poly_from_json(v: &Value) -> Result<IntPoly2> {
    let arr = v.as_array().ok_or_else(|| Error::Json("polynomial must be an array".into()))?;
    let mut out = IntPoly2::zero();
    for term in arr {
        let t = term.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
            Error::Json("polynomial term must be a [coeff, a, b] triple".into())
        })?;
        let c = match &t[0] {
            Value::String(s) => BigInt::from_str(s)
                .map_err(|e| Error::Json(format!("bad integer {s:?}: {e}")))?,
            Value::Number(n) => {
                let i = n.as_i64().ok_or_else(|| Error::Json("bad integer coefficient".into()))?;
                BigInt::from(i)
            }
            _ => return Err(Error::Json("coefficient must be a string or integer".into())),
        };
        let a = t[1].as_u64().ok_or_else(|| Error::Json("bad q exponent".into()))? as u32;
        let b = t[2].as_u64().ok_or_else(|| Error::Json("bad t exponent".into()))? as u32;
        out.insert_term(a, b, c);
    }
    Ok(out)
}

pub fn scalar_to_json(x: &QtScalar) -> Value {
    json!({
        "num": poly_to_json(x.numerator()),
        "den": poly_to_json(x.denominator()),
    })
}

pub fn scalar_from_json(v: &Value) -> Result<QtScalar> {
    if let Some(n) = v.as_i64() {
        return Ok(QtScalar::from_int(n));
    }
    let obj = v.as_object().ok_or_else(|| Error::Json("scalar must be an object".into()))?;
    let num = poly_from_json(obj.get("num").ok_or_else(|| Error::Json("missing num".into()))?)?;
    let den = match obj.get("den") {
        Some(d) => poly_from_json(d)?,
        None => IntPoly2::one(),
    };
    QtScalar::new(num, den)
}

pub fn symfunc_to_json(f: &SymFunc) -> Value {
    let terms: Vec<Value> = f
        .coeffs()
        .iter()
        .map(|(lam, c)| {
            json!({
                "partition": lam.parts(),
                "coeff": scalar_to_json(c),
            })
        })
        .collect();
    json!({
        "basis": f.basis().name(),
        "terms": terms,
    })
}

pub fn symfunc_from_json(v: &Value) -> Result<SymFunc> {
    // scalar shorthand: a bare number or scalar object means that constant
    if v.as_i64().is_some() {
        return Ok(SymFunc::scalar(scalar_from_json(v)?));
    }
    let obj = v.as_object().ok_or_else(|| Error::Json("symmetric function must be an object".into()))?;
    if !obj.contains_key("terms") {
        return Ok(SymFunc::scalar(scalar_from_json(v)?));
    }
    let basis = match obj.get("basis") {
        Some(Value::String(s)) => Basis::from_name(s)?,
        _ => Basis::P,
    };
    let mut out = SymFunc::zero(basis);
    let terms = obj
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::Json("terms must be an array".into()))?;
    for term in terms {
        let t = term.as_object().ok_or_else(|| Error::Json("term must be an object".into()))?;
        let parts = t
            .get("partition")
            .and_then(|p| p.as_array())
            .ok_or_else(|| Error::Json("term needs a partition".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as u32)
                    .ok_or_else(|| Error::Json("partition parts must be nonnegative".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let lam = Partition::new(parts).map_err(|e| Error::Json(e.to_string()))?;
        let coeff =
            scalar_from_json(t.get("coeff").ok_or_else(|| Error::Json("term needs a coeff".into()))?)?;
        out.insert(lam, coeff);
    }
    Ok(out)
}

pub fn tensor_to_json(t: &TensorSeries) -> Value {
    let comps: Vec<Value> = (0..=t.zmax())
        .map(|m| {
            let terms: Vec<Value> = t
                .component(m)
                .iter()
                .map(|((mx, my), c)| {
                    json!({
                        "mu_x": mx.parts(),
                        "mu_y": my.parts(),
                        "coeff": scalar_to_json(c),
                    })
                })
                .collect();
            json!({ "z": m, "terms": terms })
        })
        .collect();
    json!({ "zmax": t.zmax(), "components": comps })
}
