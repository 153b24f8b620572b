//! Canonical JSON forms of computed values. Scalars are written with their
//! display form, so output is stable across runs.

use std::collections::BTreeMap;

use ncdef_core::aobjects::AObject;
use ncdef_core::linalg::{Matrix, Scalar};
use ncdef_core::rep::{Rep, RepMap};
use serde_json::{json, Value};

use crate::workspace::{RawAObject, RawMatrix, RawModule, RawScalar};

pub fn raw_matrix(m: &Matrix) -> RawMatrix {
    m.to_string_rows()
        .into_iter()
        .map(|row| row.into_iter().map(RawScalar::Text).collect())
        .collect()
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_string_rows())
}

pub fn scalars_json(x: &[Scalar]) -> Value {
    Value::Array(x.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn map_json(f: &RepMap) -> Value {
    Value::Array(f.blocks().iter().map(matrix_json).collect())
}

/// A module in workspace form; every arrow is listed, zero maps included.
pub fn raw_module(m: &Rep, over: &str) -> RawModule {
    let arrows = m
        .quiver()
        .arrows()
        .iter()
        .zip(m.maps())
        .map(|(arr, mat)| (arr.name.clone(), raw_matrix(mat)))
        .collect();
    RawModule {
        over: over.to_string(),
        relations: None,
        dims: m.dims().to_vec(),
        arrows,
    }
}

pub fn module_json(m: &Rep, over: &str) -> Value {
    serde_json::to_value(raw_module(m, over)).expect("modules serialize")
}

/// An A-object in workspace form. Its components become modules named
/// `{name}.{vertex label}`, returned alongside.
pub fn raw_a_object(z: &AObject, algebra: &str, over: &str, name: &str) -> (RawAObject, BTreeMap<String, RawModule>) {
    let q = z.algebra().quiver();
    let mut modules = BTreeMap::new();
    let mut components = Vec::new();
    for (i, label) in q.vertices().iter().enumerate() {
        let key = format!("{name}.{label}");
        modules.insert(key.clone(), raw_module(z.component(i), over));
        components.push(key);
    }
    let arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let f = z.arrow_map(a);
            (arr.name.clone(), f.blocks().iter().map(raw_matrix).collect())
        })
        .collect();
    (
        RawAObject {
            algebra: algebra.to_string(),
            components,
            arrows,
        },
        modules,
    )
}
