//! Small hand-checkable pairs with known potentials and spectra.

use super::{ConstraintSpec, Field, FramePair, FrameSequence};
use crate::linalg::Scalar;

pub const FIXTURE_NAMES: [&str; 6] = ["FX-ONB2", "FX-SCALE", "FX-D1", "FX-MB", "FX-IMAG", "FX-MIX"];

pub fn by_name(name: &str) -> Option<(FramePair, ConstraintSpec)> {
    Some(match name {
        "FX-ONB2" => onb2(),
        "FX-SCALE" => scale(),
        "FX-D1" => d1(),
        "FX-MB" => mb(),
        "FX-IMAG" => imag(),
        "FX-MIX" => mix(),
        _ => return None,
    })
}

fn real_pair(
    dim: usize,
    f: &[Vec<f64>],
    g: &[Vec<f64>],
    alpha: &[f64],
) -> (FramePair, ConstraintSpec) {
    let pair = FramePair::new(
        FrameSequence::from_real(dim, f).expect("fixture"),
        FrameSequence::from_real(dim, g).expect("fixture"),
    )
    .expect("fixture");
    (pair, ConstraintSpec::from_real(alpha).expect("fixture"))
}

/// `F = G = {e1, e2}`, α = (1, 1).
pub fn onb2() -> (FramePair, ConstraintSpec) {
    let e = [vec![1.0, 0.0], vec![0.0, 1.0]];
    real_pair(2, &e, &e, &[1.0, 1.0])
}

/// `F = {2e1, 2e2}`, `G = {e1, e2}`; `TU* = 2·I`.
pub fn scale() -> (FramePair, ConstraintSpec) {
    real_pair(
        2,
        &[vec![2.0, 0.0], vec![0.0, 2.0]],
        &[vec![1.0, 0.0], vec![0.0, 1.0]],
        &[2.0, 2.0],
    )
}

/// One-dimensional pair with `TU* = (−1)`.
pub fn d1() -> (FramePair, ConstraintSpec) {
    real_pair(
        1,
        &[vec![1.0], vec![3.0]],
        &[vec![2.0], vec![-1.0]],
        &[2.0, -3.0],
    )
}

/// Mercedes-Benz frame, `F = G`; `TU* = (3/2)·I`.
pub fn mb() -> (FramePair, ConstraintSpec) {
    let h = 3f64.sqrt() / 2.0;
    let v = [vec![0.0, 1.0], vec![-h, -0.5], vec![h, -0.5]];
    real_pair(2, &v, &v, &[1.0, 1.0, 1.0])
}

/// Complex scalar pair `f = 1`, `g = i`; `TU* = (−i)`.
pub fn imag() -> (FramePair, ConstraintSpec) {
    let one = Scalar::new(1.0, 0.0);
    let i = Scalar::new(0.0, 1.0);
    let pair = FramePair::new(
        FrameSequence::new(Field::Complex, 1, vec![vec![one]]).expect("fixture"),
        FrameSequence::new(Field::Complex, 1, vec![vec![i]]).expect("fixture"),
    )
    .expect("fixture");
    (
        pair,
        ConstraintSpec::new(vec![Scalar::new(0.0, -1.0)]).expect("fixture"),
    )
}

/// `f1 = 2e1`, `g1 = e1` plus the Mercedes-Benz frame in `span{e2, e3}`;
/// spectrum of `TU*` is {2, 3/2, 3/2}.
pub fn mix() -> (FramePair, ConstraintSpec) {
    let h = 3f64.sqrt() / 2.0;
    let mb = [vec![0.0, 0.0, 1.0], vec![0.0, -h, -0.5], vec![0.0, h, -0.5]];
    let mut f = vec![vec![2.0, 0.0, 0.0]];
    let mut g = vec![vec![1.0, 0.0, 0.0]];
    f.extend_from_slice(&mb);
    g.extend_from_slice(&mb);
    real_pair(3, &f, &g, &[2.0, 1.0, 1.0, 1.0])
}
