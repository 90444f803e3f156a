//! JSON encoding of results.

use coxcalc::cones::{Cone, Fan};
use coxcalc::lattice::{AbelianGroup, IntMatrix};
use coxcalc::linalg::Rat;
use coxcalc::orbit::FaceSubset;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn int_rows(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| ints(r)).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    int_rows(&m.to_rows())
}

pub fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn group(k: &AbelianGroup) -> Value {
    json!({ "rank": k.rank, "torsion": ints(&k.torsion) })
}

pub fn cone(c: &Cone) -> Value {
    let mut v = json!({
        "rays": int_rows(c.rays()),
        "ambient": c.ambient(),
        "dim": c.dim(),
    });
    if !c.lineality().is_empty() {
        v["lineality"] = int_rows(c.lineality());
    }
    v
}

pub fn face(f: &FaceSubset) -> Value {
    Value::from(f.indices())
}

pub fn faces(fs: &[FaceSubset]) -> Value {
    Value::Array(fs.iter().map(face).collect())
}

pub fn fan(f: &Fan) -> Value {
    json!({ "rays": int_rows(&f.rays), "max_cones": f.max_cones })
}

/// Names of the variables in a face, e.g. `{T1,T3}`.
pub fn face_names(f: &FaceSubset, vars: &[String]) -> String {
    let names: Vec<&str> = f.indices().iter().map(|&i| vars[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

pub fn vec_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn cone_text(c: &Cone) -> String {
    if c.is_zero() {
        return "{0}".into();
    }
    let mut parts: Vec<String> = c.rays().iter().map(|r| vec_text(r)).collect();
    for l in c.lineality() {
        parts.push(format!("±{}", vec_text(l)));
    }
    format!("cone({})", parts.join(", "))
}
