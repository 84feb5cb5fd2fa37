//! Critical pairs on the constraint set and their eigenstructure.
//!
//! A pair in the set `<f_m, g_m> = α_m` is critical when, for every `m`,
//! `Σ_{n≠m} <f_m, g_n> f_n = c_m f_m` and `Σ_{n≠m} <g_m, f_n> g_n = conj(c_m) g_m`.
//! Then `f_m` is an eigenvector of `TU*` with eigenvalue `α_m + c_m`, `g_m` an
//! eigenvector of `UT*` with the conjugate eigenvalue, and the indices split
//! into groups sharing an eigenvalue. [`decompose`] checks the resulting
//! decomposition into a generalized biorthogonal part and an `A`-generalized
//! dual part.

use serde::Serialize;

use crate::error::{Error, Result, Side};
use crate::frames::{ConstraintSpec, FramePair, OperatorSide};
use crate::linalg::{
    eig_general, inner, lstsq_scalar, norm, orthonormal_span_basis, Matrix, Scalar, ZERO,
};
use crate::potential::{classify_spectrum, fp_direct, SpectrumClass, EIG_TOL, MEMBERSHIP_TOL};
use crate::serde_util;

pub const DEFAULT_CRITICAL_TOL: f64 = 1e-8;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
/// Relative rank threshold for span dimensions.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPairReport {
    /// Multipliers `c_m`.
    #[serde(serialize_with = "serde_util::complex_vec")]
    pub c: Vec<Scalar>,
    /// `‖Σ_{n≠m} <f_m, g_n> f_n − c_m f_m‖`.
    pub f_residual: Vec<f64>,
    /// `‖Σ_{n≠m} <g_m, f_n> g_n − conj(c_m) g_m‖`.
    pub g_residual: Vec<f64>,
    pub is_critical: bool,
    pub tol: f64,
    /// `tol · (1 + ‖TU*‖_F)`.
    pub threshold: f64,
}

impl CriticalPairReport {
    pub fn max_residual(&self) -> f64 {
        self.f_residual
            .iter()
            .chain(&self.g_residual)
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Residual vectors of the critical-pair equations with `c_m` fitted on the
/// `f` side.
pub(crate) struct CriticalTerms {
    pub c: Vec<Scalar>,
    pub f_res: Vec<Vec<Scalar>>,
    pub g_res: Vec<Vec<Scalar>>,
}

pub(crate) fn critical_terms(pair: &FramePair) -> Result<CriticalTerms> {
    pair.require_nonzero_vectors()?;
    let n = pair.len();
    let d = pair.dim();
    let fs = pair.f().vectors();
    let gs = pair.g().vectors();
    let gram = pair.cross_gram();
    let mut c = Vec::with_capacity(n);
    let mut f_res = Vec::with_capacity(n);
    let mut g_res = Vec::with_capacity(n);
    for m in 0..n {
        let mut s = vec![ZERO; d];
        let mut t = vec![ZERO; d];
        for k in 0..n {
            if k == m {
                continue;
            }
            let a = gram[(m, k)];
            let b = gram[(k, m)].conj();
            for i in 0..d {
                s[i] += a * fs[k][i];
                t[i] += b * gs[k][i];
            }
        }
        let cm = lstsq_scalar(&s, &fs[m]).map_err(|_| Error::ZeroVector {
            side: Side::F,
            index: m,
        })?;
        for i in 0..d {
            s[i] -= cm * fs[m][i];
            t[i] -= cm.conj() * gs[m][i];
        }
        c.push(cm);
        f_res.push(s);
        g_res.push(t);
    }
    Ok(CriticalTerms { c, f_res, g_res })
}

pub fn critical_report(
    pair: &FramePair,
    c: &ConstraintSpec,
    tol: f64,
) -> Result<CriticalPairReport> {
    pair.require_membership(c, MEMBERSHIP_TOL)?;
    let terms = critical_terms(pair)?;
    let f_residual: Vec<f64> = terms.f_res.iter().map(|r| norm(r)).collect();
    let g_residual: Vec<f64> = terms.g_res.iter().map(|r| norm(r)).collect();
    let threshold = tol * (1.0 + pair.mixed_operator(OperatorSide::TU).frobenius_norm());
    let worst = f_residual
        .iter()
        .chain(&g_residual)
        .copied()
        .fold(0.0, f64::max);
    Ok(CriticalPairReport {
        c: terms.c,
        f_residual,
        g_residual,
        is_critical: worst <= threshold,
        tol,
        threshold,
    })
}

/// Single-linkage groups of `values` (index lists, ascending) for the given
/// linking radius. Groups are ordered by first member.
pub fn single_linkage(values: &[Scalar], radius: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            if (values[a] - values[b]).norm() <= radius {
                let (ra, rb) = (root(&mut label, a), root(&mut label, b));
                if ra != rb {
                    label[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut label, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn spectral_radius(values: &[Scalar]) -> f64 {
    values.iter().map(|l| l.norm()).fold(0.0, f64::max)
}

/// Whether all `values` link into one cluster at radius
/// `cluster_tol · (1 + spectral radius)`.
pub fn is_single_cluster(values: &[Scalar], cluster_tol: f64) -> bool {
    let radius = cluster_tol * (1.0 + spectral_radius(values));
    single_linkage(values, radius).len() <= 1
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenClassification {
    /// Cluster eigenvalues `λ_j` (member means), in descending real then
    /// imaginary order.
    #[serde(serialize_with = "serde_util::complex_vec")]
    pub distinct_eigenvalues: Vec<Scalar>,
    #[serde(serialize_with = "serde_util::one_based_nested")]
    pub index_sets: Vec<Vec<usize>>,
    /// Cluster of each index.
    #[serde(serialize_with = "serde_util::one_based")]
    pub assigned: Vec<usize>,
    /// `α_m + c_m`.
    #[serde(serialize_with = "serde_util::complex_vec")]
    pub index_eigenvalues: Vec<Scalar>,
    /// `‖TU* f_m − (α_m + c_m) f_m‖`.
    pub f_eigen_residual: Vec<f64>,
    /// `‖UT* g_m − conj(α_m + c_m) g_m‖`.
    pub g_eigen_residual: Vec<f64>,
    /// Orthonormal bases of `span{f_m}` per cluster.
    #[serde(serialize_with = "serialize_bases")]
    pub right_span_basis: Vec<Vec<Vec<Scalar>>>,
    /// Orthonormal bases of `span{g_m}` per cluster.
    #[serde(serialize_with = "serialize_bases")]
    pub left_span_basis: Vec<Vec<Vec<Scalar>>>,
    pub cluster_tol: f64,
    pub cluster_radius: f64,
    pub critical: CriticalPairReport,
}

fn serialize_bases<S: serde::Serializer>(
    v: &[Vec<Vec<Scalar>>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<[f64; 2]>>> = v
        .iter()
        .map(|b| {
            b.iter()
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect()
        })
        .collect();
    serde::Serialize::serialize(&rows, s)
}

fn rank_tol(vectors: &[Vec<Scalar>]) -> f64 {
    RANK_TOL * vectors.iter().map(|v| norm(v)).fold(0.0, f64::max)
}

fn span_of(vectors: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, usize) {
    let tol = rank_tol(&vectors);
    orthonormal_span_basis(&vectors, tol)
}

/// Groups the indices of a critical pair by the eigenvalue `α_m + c_m` of
/// `f_m`. Errors with the critical report when the pair is not critical at
/// `tol`, and with [`Error::AmbiguousClusters`] when single linkage chains a
/// cluster wider than the radius.
pub fn classify(
    pair: &FramePair,
    c: &ConstraintSpec,
    tol: f64,
    cluster_tol: f64,
) -> Result<EigenClassification> {
    let report = critical_report(pair, c, tol)?;
    if !report.is_critical {
        return Err(Error::NotCritical(Box::new(report)));
    }
    let n = pair.len();
    let lambdas: Vec<Scalar> = c
        .alpha()
        .iter()
        .zip(&report.c)
        .map(|(a, cm)| a + cm)
        .collect();
    let radius = cluster_tol * (1.0 + spectral_radius(&lambdas));
    let groups = single_linkage(&lambdas, radius);
    for g in &groups {
        let mut spread: f64 = 0.0;
        for &a in g {
            for &b in g {
                spread = spread.max((lambdas[a] - lambdas[b]).norm());
            }
        }
        if spread > radius {
            return Err(Error::AmbiguousClusters { spread, radius });
        }
    }
    let mut clusters: Vec<(Scalar, Vec<usize>)> = groups
        .into_iter()
        .map(|g| {
            let mean = g.iter().map(|&m| lambdas[m]).sum::<Scalar>() / g.len() as f64;
            (mean, g)
        })
        .collect();
    clusters.sort_by(|a, b| crate::linalg::spectral_order(&a.0, &b.0));

    let tu = pair.mixed_operator(OperatorSide::TU);
    let ut = tu.adjoint();
    let eig_residual = |op: &Matrix, v: &[Scalar], l: Scalar| -> Result<f64> {
        let w = op.mul_vec(v)?;
        Ok(norm(
            &w.iter().zip(v).map(|(a, b)| a - l * b).collect::<Vec<_>>(),
        ))
    };
    let mut f_eigen_residual = Vec::with_capacity(n);
    let mut g_eigen_residual = Vec::with_capacity(n);
    for m in 0..n {
        f_eigen_residual.push(eig_residual(&tu, pair.f().vector(m), lambdas[m])?);
        g_eigen_residual.push(eig_residual(&ut, pair.g().vector(m), lambdas[m].conj())?);
    }

    let mut assigned = vec![0; n];
    let mut right_span_basis = Vec::new();
    let mut left_span_basis = Vec::new();
    for (j, (_, idx)) in clusters.iter().enumerate() {
        for &m in idx {
            assigned[m] = j;
        }
        right_span_basis
            .push(span_of(idx.iter().map(|&m| pair.f().vector(m).to_vec()).collect()).0);
        left_span_basis.push(span_of(idx.iter().map(|&m| pair.g().vector(m).to_vec()).collect()).0);
    }
    let (distinct_eigenvalues, index_sets) = clusters.into_iter().unzip();
    Ok(EigenClassification {
        distinct_eigenvalues,
        index_sets,
        assigned,
        index_eigenvalues: lambdas,
        f_eigen_residual,
        g_eigen_residual,
        right_span_basis,
        left_span_basis,
        cluster_tol,
        cluster_radius: radius,
        critical: report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualCheck {
    pub residual: f64,
    pub passes: bool,
}

/// `max(|<f_n, g_m>|, m ≠ n)` together with `max |<f_m, g_m> − α_m|` over
/// `idx`.
pub fn check_generalized_biorthogonal(
    pair: &FramePair,
    c: &ConstraintSpec,
    idx: &[usize],
    tol: f64,
) -> Result<ResidualCheck> {
    c.require_nonzero(Some(idx))?;
    let mut residual: f64 = 0.0;
    for &m in idx {
        for &k in idx {
            let ip = inner(pair.f().vector(k), pair.g().vector(m));
            let r = if k == m {
                (ip - c.alpha()[m]).norm()
            } else {
                ip.norm()
            };
            residual = residual.max(r);
        }
    }
    Ok(ResidualCheck {
        residual,
        passes: residual <= tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralizedDualCheck {
    /// `max_b ‖Σ <b, g_m> f_m − A b‖` over an orthonormal basis of `span{f_m}`.
    pub f_residual: f64,
    /// `max_b ‖Σ <b, f_m> g_m − conj(A) b‖` over an orthonormal basis of `span{g_m}`.
    pub g_residual: f64,
    pub f_span_dim: usize,
    pub g_span_dim: usize,
    pub residual: f64,
    pub passes: bool,
}

pub fn check_a_generalized_dual(
    pair: &FramePair,
    idx: &[usize],
    a: Scalar,
    tol: f64,
) -> Result<GeneralizedDualCheck> {
    if idx.is_empty() {
        return Err(Error::Invalid("index set must be nonempty".into()));
    }
    let fs: Vec<Vec<Scalar>> = idx.iter().map(|&m| pair.f().vector(m).to_vec()).collect();
    let gs: Vec<Vec<Scalar>> = idx.iter().map(|&m| pair.g().vector(m).to_vec()).collect();
    let side = |span: &[Vec<Scalar>], pairing: &[Vec<Scalar>], target: Scalar| -> (f64, usize) {
        let (basis, dim) = span_of(span.to_vec());
        let worst = basis
            .iter()
            .map(|b| {
                let mut acc: Vec<Scalar> = b.iter().map(|x| -target * x).collect();
                for (s, p) in span.iter().zip(pairing) {
                    let w = inner(b, p);
                    for (o, x) in acc.iter_mut().zip(s) {
                        *o += w * x;
                    }
                }
                norm(&acc)
            })
            .fold(0.0, f64::max);
        (worst, dim)
    };
    let (f_residual, f_span_dim) = side(&fs, &gs, a);
    let (g_residual, g_span_dim) = side(&gs, &fs, a.conj());
    let residual = f_residual.max(g_residual);
    Ok(GeneralizedDualCheck {
        f_residual,
        g_residual,
        f_span_dim,
        g_span_dim,
        residual,
        passes: residual <= tol,
    })
}

/// A non-minimal group rescaled by `w_j = sqrt(λ_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizedGroup {
    #[serde(serialize_with = "serde_util::one_based")]
    pub indices: Vec<usize>,
    #[serde(serialize_with = "serde_util::complex")]
    pub eigenvalue: Scalar,
    #[serde(serialize_with = "serde_util::complex")]
    pub w: Scalar,
    /// `{f_m / w}`.
    #[serde(serialize_with = "serde_util::complex_vecs")]
    pub f_scaled: Vec<Vec<Scalar>>,
    /// `{g_m / conj(w)}`.
    #[serde(serialize_with = "serde_util::complex_vecs")]
    pub g_scaled: Vec<Vec<Scalar>>,
    /// `max |<f_l / w, g_m / conj(w)> − δ_lm|`.
    pub biorthogonality_residual: f64,
    /// `max |α_m − λ_j|`.
    pub alpha_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    #[serde(rename = "I", serialize_with = "serde_util::one_based")]
    pub i: Vec<usize>,
    #[serde(rename = "I_complement", serialize_with = "serde_util::one_based")]
    pub i_complement: Vec<usize>,
    /// `Σ_{m∈I} α_m / dim span{f_m}_{m∈I}`.
    #[serde(rename = "A", serialize_with = "serde_util::complex")]
    pub a: Scalar,
    pub span_dim: usize,
    /// Cluster eigenvalue of `I`.
    #[serde(serialize_with = "serde_util::complex")]
    pub group_eigenvalue: Scalar,
    /// `|A − λ_I|`.
    pub a_eigenvalue_gap: f64,
    /// Generalized biorthogonality of `I^c`.
    pub biorthogonality_residual: f64,
    /// `A`-generalized duality of `I` on the `f` and `g` spans.
    pub dual_frame_residuals: [f64; 2],
    /// `max |<f_m, g_n>|, |<f_n, g_m>|` for `m ∈ I`, `n ∈ I^c`.
    pub cross_orthogonality_residual: f64,
    pub normalized_groups: Vec<NormalizedGroup>,
    pub max_residual: f64,
    pub tol: f64,
    pub within_tol: bool,
}

/// Principal square root, taking `+i·sqrt(|λ|)` on the negative real axis.
fn principal_sqrt(l: Scalar) -> Scalar {
    Scalar::new(l.re, if l.im == 0.0 { 0.0 } else { l.im }).sqrt()
}

/// Splits a critical pair into the group `I` of minimal eigenvalue modulus,
/// which must be `A`-generalized dual, and the rest, which must be
/// generalized biorthogonal and orthogonal to `I` across the pairing.
/// `tol` is used both for the critical-pair test and for the residual
/// verdict.
pub fn decompose(
    pair: &FramePair,
    c: &ConstraintSpec,
    tol: f64,
    cluster_tol: f64,
) -> Result<DecompositionReport> {
    c.require_nonzero(None)?;
    let cls = classify(pair, c, tol, cluster_tol)?;
    let n = pair.len();

    // first minimal-modulus cluster in sorted order
    let mut j_min = 0;
    for (j, l) in cls.distinct_eigenvalues.iter().enumerate() {
        if l.norm() < cls.distinct_eigenvalues[j_min].norm() {
            j_min = j;
        }
    }
    let i = cls.index_sets[j_min].clone();
    let i_complement: Vec<usize> = (0..n).filter(|m| cls.assigned[*m] != j_min).collect();
    let (_, span_dim) = span_of(i.iter().map(|&m| pair.f().vector(m).to_vec()).collect());
    let alpha_i: Scalar = i.iter().map(|&m| c.alpha()[m]).sum();
    let a = alpha_i / span_dim as f64;
    let group_eigenvalue = cls.distinct_eigenvalues[j_min];

    let biorthogonality_residual = if i_complement.is_empty() {
        0.0
    } else {
        check_generalized_biorthogonal(pair, c, &i_complement, tol)?.residual
    };
    let dual = check_a_generalized_dual(pair, &i, a, tol)?;
    let mut cross_orthogonality_residual: f64 = 0.0;
    for &m in &i {
        for &k in &i_complement {
            let fg = inner(pair.f().vector(m), pair.g().vector(k)).norm();
            let gf = inner(pair.f().vector(k), pair.g().vector(m)).norm();
            cross_orthogonality_residual = cross_orthogonality_residual.max(fg).max(gf);
        }
    }

    let mut normalized_groups = Vec::new();
    for (j, (&l, idx)) in cls
        .distinct_eigenvalues
        .iter()
        .zip(&cls.index_sets)
        .enumerate()
    {
        if j == j_min || l.norm() <= cls.cluster_radius {
            continue;
        }
        let w = principal_sqrt(l);
        let f_scaled: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&m| pair.f().vector(m).iter().map(|x| x / w).collect())
            .collect();
        let g_scaled: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&m| pair.g().vector(m).iter().map(|x| x / w.conj()).collect())
            .collect();
        let mut residual: f64 = 0.0;
        for (p, fl) in f_scaled.iter().enumerate() {
            for (q, gm) in g_scaled.iter().enumerate() {
                let delta = if p == q { 1.0 } else { 0.0 };
                residual = residual.max((inner(fl, gm) - delta).norm());
            }
        }
        let alpha_gap = idx
            .iter()
            .map(|&m| (c.alpha()[m] - l).norm())
            .fold(0.0, f64::max);
        normalized_groups.push(NormalizedGroup {
            indices: idx.clone(),
            eigenvalue: l,
            w,
            f_scaled,
            g_scaled,
            biorthogonality_residual: residual,
            alpha_gap,
        });
    }

    let a_eigenvalue_gap = (a - group_eigenvalue).norm();
    let max_residual = normalized_groups
        .iter()
        .map(|g| g.biorthogonality_residual)
        .chain([
            a_eigenvalue_gap,
            biorthogonality_residual,
            dual.f_residual,
            dual.g_residual,
            cross_orthogonality_residual,
        ])
        .fold(0.0, f64::max);
    Ok(DecompositionReport {
        i,
        i_complement,
        a,
        span_dim,
        group_eigenvalue,
        a_eigenvalue_gap,
        biorthogonality_residual,
        dual_frame_residuals: [dual.f_residual, dual.g_residual],
        cross_orthogonality_residual,
        normalized_groups,
        max_residual,
        tol,
        within_tol: max_residual <= tol,
    })
}

/// Which of the real or imaginary part of the potential the injective case
/// covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Applicability {
    RealPartSuffices,
    ImagPartSuffices,
    BothSuffice,
    Neither,
    NotInjective,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApplicabilityReport {
    #[serde(serialize_with = "serde_util::complex_vec")]
    pub eigenvalues: Vec<Scalar>,
    pub min_modulus: f64,
    pub spectral_radius: f64,
    pub applicability: Applicability,
}

/// `TU*` counts as injective when `min |λ| > tol · ρ`; an eigenvalue part
/// counts as nonzero when it exceeds `tol · (1 + |λ|)`.
pub fn single_part_applicability(pair: &FramePair, tol: f64) -> Result<ApplicabilityReport> {
    let eig = eig_general(&pair.mixed_operator(OperatorSide::TU), EIG_TOL, false)?;
    let values = eig.values;
    let rho = spectral_radius(&values);
    let min_modulus = values
        .iter()
        .map(|l| l.norm())
        .fold(f64::INFINITY, f64::min);
    let applicability = if rho == 0.0 || min_modulus <= tol * rho {
        Applicability::NotInjective
    } else {
        let re = values.iter().any(|l| l.re.abs() > tol * (1.0 + l.norm()));
        let im = values.iter().any(|l| l.im.abs() > tol * (1.0 + l.norm()));
        match (re, im) {
            (true, true) => Applicability::BothSuffice,
            (true, false) => Applicability::RealPartSuffices,
            (false, true) => Applicability::ImagPartSuffices,
            (false, false) => Applicability::Neither,
        }
    };
    Ok(ApplicabilityReport {
        eigenvalues: values,
        min_modulus,
        spectral_radius: rho,
        applicability,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ConditionsMet,
    ConditionsFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    #[serde(serialize_with = "serde_util::complex_vec")]
    pub eigenvalues: Vec<Scalar>,
    pub spectrum_all_real: bool,
    #[serde(serialize_with = "serde_util::complex")]
    pub fp_value: Scalar,
    pub fp_equals_d: bool,
    #[serde(serialize_with = "serde_util::complex")]
    pub alpha_sum: Scalar,
    pub re_alpha_sum_ge_d: bool,
    /// `Σα = d`; equivalent to the other conditions when `N > d`.
    pub alpha_sum_equals_d: bool,
    pub n_exceeds_d: bool,
    pub is_dual_pair: bool,
    /// `‖TU* − I‖_F`.
    pub dual_deviation: f64,
    pub verdict: Verdict,
    pub tol: f64,
}

/// Evaluates the dual-pair conditions: real spectrum, `FP = d` and
/// `Re Σα ≥ d`. Tolerances are scaled so that any pair passing the dual
/// test `‖TU* − I‖_F ≤ tol·√d` meets all three; a dual pair that does not
/// is reported as an internal inconsistency.
pub fn corollary_check(pair: &FramePair, c: &ConstraintSpec, tol: f64) -> Result<CorollaryReport> {
    let membership = pair.require_membership(c, MEMBERSHIP_TOL)?;
    let d = pair.dim() as f64;
    let n = pair.len();
    let eig = eig_general(&pair.mixed_operator(OperatorSide::TU), EIG_TOL, false)?;
    let values = eig.values;
    let real_tol = tol * d.sqrt();
    let spectrum_all_real = classify_spectrum(&values, real_tol) == SpectrumClass::AllReal;
    let fp_value = fp_direct(pair).value;
    let fp_equals_d = (fp_value - d).norm() <= 3.0 * d * tol;
    let alpha_sum = c.sum();
    let sum_tol = d * tol + n as f64 * membership;
    let re_alpha_sum_ge_d = alpha_sum.re >= d - sum_tol;
    let alpha_sum_equals_d = (alpha_sum - d).norm() <= sum_tol;
    let dual = pair.is_dual_pair(tol);
    let met = spectrum_all_real && fp_equals_d && re_alpha_sum_ge_d;
    if dual.is_dual && !met {
        return Err(Error::Consistency(format!(
            "dual pair (deviation {:e}) fails the dual-pair conditions: real {spectrum_all_real}, FP = {fp_value}, sum alpha = {alpha_sum}",
            dual.deviation
        )));
    }
    Ok(CorollaryReport {
        eigenvalues: values,
        spectrum_all_real,
        fp_value,
        fp_equals_d,
        alpha_sum,
        re_alpha_sum_ge_d,
        alpha_sum_equals_d,
        n_exceeds_d: n > pair.dim(),
        is_dual_pair: dual.is_dual,
        dual_deviation: dual.deviation,
        verdict: if met {
            Verdict::ConditionsMet
        } else {
            Verdict::ConditionsFailed
        },
        tol,
    })
}

/// Arithmetic on `α` alone: `Σα` against `d`.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaOnlyReport {
    #[serde(serialize_with = "serde_util::complex")]
    pub alpha_sum: Scalar,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub re_alpha_sum_ge_d: bool,
    pub alpha_sum_equals_d: bool,
    /// `N > d`, the case in which `Σα = d` is equivalent to the dual-pair
    /// conditions.
    pub n_exceeds_d: bool,
    pub tol: f64,
}

pub fn alpha_only_report(
    alpha: &[Scalar],
    d: usize,
    n: usize,
    tol: f64,
) -> Result<AlphaOnlyReport> {
    if d == 0 || n == 0 {
        return Err(Error::Invalid("d and N must be positive".into()));
    }
    if alpha
        .iter()
        .any(|a| !(a.re.is_finite() && a.im.is_finite()))
    {
        return Err(Error::NonFinite("alpha"));
    }
    let alpha_sum: Scalar = alpha.iter().sum();
    let df = d as f64;
    Ok(AlphaOnlyReport {
        alpha_sum,
        d,
        n,
        re_alpha_sum_ge_d: alpha_sum.re >= df - tol,
        alpha_sum_equals_d: (alpha_sum - df).norm() <= tol,
        n_exceeds_d: n > d,
        tol,
    })
}
