//! Serialisation helpers: complex numbers as `[re, im]`, indices 1-based.

use serde::ser::{SerializeSeq, Serializer};

use crate::linalg::Scalar;

pub fn complex<S: Serializer>(z: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[z.re, z.im], s)
}

pub fn complex_vec<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

pub fn complex_vecs<S: Serializer>(v: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = v
        .iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    serde::Serialize::serialize(&rows, s)
}

pub fn opt_complex_vecs<S: Serializer>(
    v: &Option<Vec<Vec<Scalar>>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => complex_vecs(v, s),
        None => s.serialize_none(),
    }
}

pub fn one_based<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for i in v {
        seq.serialize_element(&(i + 1))?;
    }
    seq.end()
}

pub fn one_based_nested<S: Serializer>(v: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<usize>> = v
        .iter()
        .map(|r| r.iter().map(|i| i + 1).collect())
        .collect();
    serde::Serialize::serialize(&rows, s)
}

pub fn one_based_scalar<S: Serializer>(i: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*i as u64 + 1)
}
