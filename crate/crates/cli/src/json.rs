//! JSON documents: lattices, vectors, families, face lattices and surface
//! models. Rationals are JSON integers or `"p/q"` strings; floats are
//! rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use hypdiagram::face_lattice::FaceLatticeInput;
use hypdiagram::matrix::Matrix;
use hypdiagram::surface::SurfaceModel;
use hypdiagram::{BilinearLattice, LatticeVector, Rational, VectorFamily};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Parses `n`, `-n` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let int = |t: &str, signed: bool| -> Option<BigInt> {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        t.parse().ok()
    };
    let bad = || invalid(format!("`{s}` is not an exact rational (use an integer or p/q)"));
    let n = int(num, true).ok_or_else(bad)?;
    let d = match den {
        Some(d) => int(d, false).ok_or_else(bad)?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(invalid(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(n, d))
}

pub fn rational_from(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                Err(invalid(format!("{what}: floating-point number {n} is not allowed; write it as \"p/q\"")))
            }
        }
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            CliError::Input(m) => invalid(format!("{what}: {m}")),
            other => other,
        }),
        other => Err(invalid(format!("{what}: expected a rational, found {other}"))),
    }
}

/// Integers that fit in `i64` stay JSON numbers; everything else is a
/// `"p/q"` (or big integer) string.
pub fn rational_to(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(i) = q.numer().to_i64() {
            return json!(i);
        }
        return Value::String(q.numer().to_string());
    }
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn rationals_to(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to).collect())
}

pub fn rationals_from(v: &Value, what: &str) -> Result<Vec<Rational>> {
    let arr = v.as_array().ok_or_else(|| invalid(format!("{what}: expected an array")))?;
    arr.iter().enumerate().map(|(i, x)| rational_from(x, &format!("{what}[{i}]"))).collect()
}

fn field<'a>(obj: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| invalid(format!("{what}: expected an object")))?
        .get(key)
        .ok_or_else(|| invalid(format!("{what}: missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| invalid(format!("{what}: expected an object")))
}

pub fn lattice_from(v: &Value) -> Result<Arc<BilinearLattice>> {
    let rows = field(v, "gram", "lattice")?
        .as_array()
        .ok_or_else(|| invalid("lattice.gram: expected an array of rows"))?;
    let gram: Vec<Vec<Rational>> =
        rows.iter().enumerate().map(|(i, r)| rationals_from(r, &format!("lattice.gram[{i}]"))).collect::<Result<_>>()?;
    if let Some(rank) = object(v, "lattice")?.get("rank") {
        if rank.as_u64() != Some(gram.len() as u64) {
            return Err(invalid(format!("lattice.rank {rank} does not match a Gram matrix with {} rows", gram.len())));
        }
    }
    let m = Matrix::from_rows(gram).map_err(|e| invalid(format!("lattice.gram: {e}")))?;
    let l = BilinearLattice::new(m).map_err(|e| invalid(format!("lattice: {e}")))?;
    Ok(Arc::new(l))
}

pub fn lattice_to(l: &BilinearLattice) -> Value {
    json!({
        "rank": l.rank(),
        "gram": l.gram().to_rows().iter().map(|r| rationals_to(r)).collect::<Vec<_>>(),
    })
}

pub fn vector_from(l: &Arc<BilinearLattice>, v: &Value, what: &str) -> Result<LatticeVector> {
    let c = rationals_from(v, what)?;
    if c.len() != l.rank() {
        return Err(invalid(format!("{what}: expected {} coordinates, found {}", l.rank(), c.len())));
    }
    LatticeVector::new(l.clone(), c).map_err(|e| invalid(format!("{what}: {e}")))
}

pub fn vector_to(v: &LatticeVector) -> Value {
    rationals_to(v.coords())
}

fn labelled_vectors(l: &Arc<BilinearLattice>, v: &Value, what: &str) -> Result<Vec<(String, LatticeVector)>> {
    object(v, what)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), vector_from(l, x, &format!("{what}.{k}"))?)))
        .collect()
}

pub fn family_from(v: &Value) -> Result<VectorFamily> {
    let l = lattice_from(field(v, "lattice", "family")?)?;
    let members = labelled_vectors(&l, field(v, "vectors", "family")?, "vectors")?;
    VectorFamily::new(l, members).map_err(|e| invalid(format!("family: {e}")))
}

pub fn family_to(f: &VectorFamily) -> Value {
    let vectors: Map<String, Value> = f.labels().iter().zip(f.vectors()).map(|(k, v)| (k.clone(), vector_to(v))).collect();
    json!({ "lattice": lattice_to(f.lattice()), "vectors": vectors })
}

pub fn face_lattice_from(v: &Value) -> Result<FaceLatticeInput> {
    let dim = field(v, "dim", "face lattice")?
        .as_u64()
        .ok_or_else(|| invalid("face lattice.dim: expected a nonnegative integer"))? as usize;
    let by_dim = object(field(v, "faces", "face lattice")?, "face lattice.faces")?;
    let mut faces = vec![Vec::new(); dim];
    for (k, ids) in by_dim {
        let m: usize = k.parse().map_err(|_| invalid(format!("face lattice.faces: key `{k}` is not a dimension")))?;
        if m >= dim {
            return Err(invalid(format!("face lattice.faces: dimension {m} must be below {dim}")));
        }
        faces[m] = ids
            .as_array()
            .ok_or_else(|| invalid(format!("face lattice.faces.{k}: expected an array")))?
            .iter()
            .map(id_from)
            .collect::<Result<_>>()?;
    }
    let incidence = field(v, "incidence", "face lattice")?
        .as_array()
        .ok_or_else(|| invalid("face lattice.incidence: expected an array"))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((id_from(a)?, id_from(b)?)),
            _ => Err(invalid("face lattice.incidence: expected [child, parent] pairs")),
        })
        .collect::<Result<_>>()?;
    Ok(FaceLatticeInput { dim, faces, incidence })
}

fn id_from(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        other => Err(invalid(format!("face id must be a string or integer, found {other}"))),
    }
}

pub fn face_lattice_to(fl: &FaceLatticeInput) -> Value {
    let faces: Map<String, Value> = fl.faces.iter().enumerate().map(|(m, ids)| (m.to_string(), json!(ids))).collect();
    json!({
        "dim": fl.dim,
        "faces": faces,
        "incidence": fl.incidence.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn model_from(v: &Value) -> Result<SurfaceModel> {
    let l = lattice_from(field(v, "ns", "model")?)?;
    let k = vector_from(&l, field(v, "K", "model")?, "K")?;
    let h = vector_from(&l, field(v, "h", "model")?, "h")?;
    let curves = labelled_vectors(&l, field(v, "curves", "model")?, "curves")?;
    SurfaceModel::new(l, k, h, curves).map_err(|e| invalid(format!("model: {e}")))
}

pub fn model_to(m: &SurfaceModel) -> Value {
    let curves: BTreeMap<&String, Value> = m.curves().iter().map(|(k, c)| (k, vector_to(c))).collect();
    json!({
        "ns": lattice_to(m.ns()),
        "K": vector_to(m.canonical()),
        "h": vector_to(m.ample_ref()),
        "curves": curves,
    })
}

/// Lattice, `K`, and labelled curves in input order.
pub type Configuration = (Arc<BilinearLattice>, LatticeVector, Vec<(String, LatticeVector)>);

/// A configuration for `discrepancy`.
pub fn configuration_from(v: &Value) -> Result<Configuration> {
    let l = lattice_from(field(v, "ns", "configuration")?)?;
    let k = vector_from(&l, field(v, "K", "configuration")?, "K")?;
    let curves = labelled_vectors(&l, field(v, "curves", "configuration")?, "curves")?;
    Ok((l, k, curves))
}
