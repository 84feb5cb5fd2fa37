//! Evaluation of the mixed frame potential and its spectral bounds.
//!
//! `FP(F, G) = Σ_{m,n} <f_m, g_n><f_n, g_m>` is computed literally from the
//! cross Gram matrix ([`fp_direct`]) and as `Tr((TU*)²)` ([`fp_trace`]).
//! Over the constraint set `<f_m, g_m> = α_m` the trace of `TU*` equals
//! `Σ α_m`, which pins the eigenvalue sum and yields the bounds reported by
//! [`bound_report`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{ConstraintSpec, FramePair, FrameSequence, OperatorSide};
use crate::linalg::{eig_general, inner, Scalar};
use crate::serde_util;
use crate::structure;

/// Pairs handed to the bound and structure checks must satisfy their
/// constraints to this absolute accuracy.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

pub const DEFAULT_CLASS_TOL: f64 = 1e-8;

/// Backward-error tolerance used for every eigendecomposition in this crate.
pub(crate) const EIG_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PotentialMethod {
    Direct,
    Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialValue {
    #[serde(serialize_with = "serde_util::complex")]
    pub value: Scalar,
    pub method: PotentialMethod,
}

pub fn fp_direct(pair: &FramePair) -> PotentialValue {
    let gram = pair.cross_gram();
    let n = pair.len();
    let mut value = Scalar::new(0.0, 0.0);
    for m in 0..n {
        for k in 0..n {
            value += gram[(m, k)] * gram[(k, m)];
        }
    }
    PotentialValue {
        value,
        method: PotentialMethod::Direct,
    }
}

/// `Tr((TU*)²)`, cross-checked against `Σ λ²` over the spectrum of `TU*`.
///
/// The returned value never depends on the eigensolver; a disagreement larger
/// than `tol · (1 + |Tr|)` is reported as an error.
pub fn fp_trace(pair: &FramePair, tol: f64) -> Result<PotentialValue> {
    let tu = pair.mixed_operator(OperatorSide::TU);
    let value = tu.matmul(&tu)?.trace()?;
    let eig = eig_general(&tu, EIG_TOL, false)?;
    let spectral: Scalar = eig.values.iter().map(|l| l * l).sum();
    if (spectral - value).norm() > tol * (1.0 + value.norm()) {
        return Err(Error::Consistency(format!(
            "Tr((TU*)^2) = {value} but sum of squared eigenvalues = {spectral}"
        )));
    }
    Ok(PotentialValue {
        value,
        method: PotentialMethod::Trace,
    })
}

/// Potential of the swapped pair `(G, F)`; equals the conjugate of `FP(F, G)`.
pub fn fp_swap(pair: &FramePair) -> PotentialValue {
    fp_direct(&pair.swapped())
}

/// Benedetto–Fickus potential `Σ_{m,n} |<f_m, f_n>|²`.
pub fn bf_potential(seq: &FrameSequence) -> f64 {
    let vs = seq.vectors();
    vs.iter()
        .map(|a| vs.iter().map(|b| inner(a, b).norm_sqr()).sum::<f64>())
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpectrumClass {
    AllReal,
    AllImaginary,
    Mixed,
}

/// `λ` is real when `|Im λ| ≤ tol·(1+|λ|)`, imaginary when
/// `|Re λ| ≤ tol·(1+|λ|)`. A spectrum that is both (only zeros) is
/// classified as real.
pub fn classify_spectrum(values: &[Scalar], tol: f64) -> SpectrumClass {
    let guard = |l: &Scalar| tol * (1.0 + l.norm());
    if values.iter().all(|l| l.im.abs() <= guard(l)) {
        SpectrumClass::AllReal
    } else if values.iter().all(|l| l.re.abs() <= guard(l)) {
        SpectrumClass::AllImaginary
    } else {
        SpectrumClass::Mixed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundStatus {
    /// Real spectrum: `FP ≥ (Σα)²/d`.
    LowerHolds,
    /// Imaginary spectrum: `FP ≤ (Σα)²/d`.
    UpperHolds,
    /// Single eigenvalue: `FP = (Σα)²/d`.
    Equality,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "serde_util::complex_vec")]
    pub eigenvalues: Vec<Scalar>,
    pub spectrum_class: SpectrumClass,
    pub class_tol: f64,
    #[serde(serialize_with = "serde_util::complex")]
    pub fp_value: Scalar,
    /// `Σ (Re λ)² − (Im λ)²`.
    pub r_value: f64,
    /// `2 Σ Re λ · Im λ`.
    pub i_value: f64,
    #[serde(serialize_with = "serde_util::complex")]
    pub alpha_sum: Scalar,
    /// `(Σα)² / d`.
    #[serde(serialize_with = "serde_util::complex")]
    pub bound: Scalar,
    pub bound_status: BoundStatus,
    /// `|Σλ − Σα|`.
    pub trace_identity_residual: f64,
}

const BOUND_SLACK: f64 = 1e-9;

pub fn bound_report(pair: &FramePair, c: &ConstraintSpec, class_tol: f64) -> Result<BoundReport> {
    pair.require_membership(c, MEMBERSHIP_TOL)?;
    let tu = pair.mixed_operator(OperatorSide::TU);
    let eig = eig_general(&tu, EIG_TOL, false)?;
    let values = eig.values;
    let d = pair.dim() as f64;

    let fp_value = fp_direct(pair).value;
    let r_value = values.iter().map(|l| l.re * l.re - l.im * l.im).sum();
    let i_value = 2.0 * values.iter().map(|l| l.re * l.im).sum::<f64>();
    let alpha_sum = c.sum();
    let bound = alpha_sum * alpha_sum / d;
    let lambda_sum: Scalar = values.iter().sum();
    let spectrum_class = classify_spectrum(&values, class_tol);

    let single = structure::is_single_cluster(&values, structure::DEFAULT_CLUSTER_TOL);
    let bound_status = if single {
        if (fp_value - bound).norm() > BOUND_SLACK * (1.0 + bound.norm()) {
            return Err(Error::Consistency(format!(
                "single eigenvalue but FP = {fp_value} differs from (sum alpha)^2/d = {bound}"
            )));
        }
        BoundStatus::Equality
    } else {
        match spectrum_class {
            SpectrumClass::AllReal => {
                if fp_value.re < bound.re - BOUND_SLACK {
                    return Err(Error::Consistency(format!(
                        "real spectrum but FP = {} < (sum alpha)^2/d = {}",
                        fp_value.re, bound.re
                    )));
                }
                BoundStatus::LowerHolds
            }
            SpectrumClass::AllImaginary => {
                if fp_value.re > bound.re + BOUND_SLACK {
                    return Err(Error::Consistency(format!(
                        "imaginary spectrum but FP = {} > (sum alpha)^2/d = {}",
                        fp_value.re, bound.re
                    )));
                }
                BoundStatus::UpperHolds
            }
            SpectrumClass::Mixed => BoundStatus::NotApplicable,
        }
    };

    Ok(BoundReport {
        eigenvalues: values,
        spectrum_class,
        class_tol,
        fp_value,
        r_value,
        i_value,
        alpha_sum,
        bound,
        bound_status,
        trace_identity_residual: (lambda_sum - alpha_sum).norm(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledIdentity {
    pub is_scaled_identity: bool,
    /// `Tr(TU*) / d`.
    #[serde(serialize_with = "serde_util::complex")]
    pub a: Scalar,
    /// `‖TU* − A·I‖_F`.
    pub residual: f64,
    /// `|A − Σα/d|`.
    pub alpha_mean_gap: f64,
}

/// Tests `TU* = A·I` and, when it holds, that `A` is the mean of the `α_m`
/// over the dimension.
pub fn scaled_identity_check(
    pair: &FramePair,
    c: &ConstraintSpec,
    tol: f64,
) -> Result<ScaledIdentity> {
    let membership = pair.require_membership(c, MEMBERSHIP_TOL)?;
    let d = pair.dim();
    let tu = pair.mixed_operator(OperatorSide::TU);
    let a = tu.trace()? / d as f64;
    let residual = tu
        .sub(&crate::linalg::Matrix::scaled_identity(d, a))?
        .frobenius_norm();
    let is_scaled_identity = residual <= tol * (d as f64).sqrt();
    let alpha_mean_gap = (a - c.sum() / d as f64).norm();
    // the constraint slack bounds how far Tr(TU*) may sit from Σα
    let allowed = 1e-10 * (1.0 + a.norm()) + membership * pair.len() as f64 / d as f64;
    if is_scaled_identity && alpha_mean_gap > allowed {
        return Err(Error::Consistency(format!(
            "TU* = A I with A = {a} but mean of alpha is {}",
            c.sum() / d as f64
        )));
    }
    Ok(ScaledIdentity {
        is_scaled_identity,
        a,
        residual,
        alpha_mean_gap,
    })
}
