//! General (non-Hermitian) eigendecomposition.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! complex QR iterations (Wilkinson shifts, implicit bulge chase with Givens
//! rotations) to a Schur form `A = Q T Q*`. Eigenvectors come from back
//! substitution on the triangular factor.
//!
//! The iteration budget is `100 · order` QR sweeps in total; exceeding it
//! returns [`Error::NoConvergence`] carrying the size of the largest
//! subdiagonal entry still unconverged.

use std::cmp::Ordering;

use serde::Serialize;

use super::{norm, Matrix, Scalar, ONE, ZERO};
use crate::error::{Error, Result};

pub const MAX_EIGEN_ORDER: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct EigenResult {
    /// Sorted by descending real part, then descending imaginary part.
    #[serde(serialize_with = "crate::serde_util::complex_vec")]
    pub values: Vec<Scalar>,
    /// Unit-norm right eigenvectors, aligned with `values`.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "crate::serde_util::opt_complex_vecs"
    )]
    pub vectors: Option<Vec<Vec<Scalar>>>,
    /// `max_k ‖A v_k − λ_k v_k‖` when vectors are present, otherwise
    /// `‖A Q − Q T‖_F` for the computed Schur form.
    pub backward_residual: f64,
}

/// Total order used for eigenvalue lists: descending real, then descending imaginary.
pub fn spectral_order(a: &Scalar, b: &Scalar) -> Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

/// Eigenvalues (and optionally eigenvectors) of a square matrix of order ≤ 64.
///
/// `tol` bounds the accepted backward residual relative to `1 + ‖A‖_F`; real
/// inputs have their spectrum symmetrised into exact conjugate pairs.
pub fn eig_general(a: &Matrix, tol: f64, want_vectors: bool) -> Result<EigenResult> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > MAX_EIGEN_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("eig_general input"));
    }
    if n == 0 {
        return Ok(EigenResult {
            values: Vec::new(),
            vectors: want_vectors.then(Vec::new),
            backward_residual: 0.0,
        });
    }

    let anorm = a.frobenius_norm();
    let (mut t, mut q) = hessenberg(a);
    schur_qr(&mut t, &mut q, anorm)?;

    let mut values: Vec<Scalar> = (0..n).map(|i| t[(i, i)]).collect();
    let mut vectors = want_vectors.then(|| triangular_eigenvectors(&t, &q));

    if a.is_real() {
        pair_conjugates(&mut values, anorm);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| spectral_order(&values[i], &values[j]).then(i.cmp(&j)));
    values = order.iter().map(|&i| values[i]).collect();
    if let Some(vs) = vectors.as_mut() {
        *vs = order.iter().map(|&i| vs[i].clone()).collect();
    }

    let backward_residual = match &vectors {
        Some(vs) => vs
            .iter()
            .zip(&values)
            .map(|(v, &lam)| {
                let av = a.mul_vec(v).expect("square");
                let r: Vec<Scalar> = av.iter().zip(v).map(|(x, y)| x - lam * y).collect();
                norm(&r)
            })
            .fold(0.0, f64::max),
        None => {
            let aq = a.matmul(&q)?;
            let qt = q.matmul(&t)?;
            aq.sub(&qt)?.frobenius_norm()
        }
    };
    if !(backward_residual <= tol * (1.0 + anorm)) {
        return Err(Error::NoConvergence {
            iterations: 100 * n,
            residual: backward_residual,
        });
    }

    Ok(EigenResult {
        values,
        vectors,
        backward_residual,
    })
}

/// Returns `(H, Q)` with `A = Q H Q*` and `H` upper Hessenberg.
fn hessenberg(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = Matrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let x: Vec<Scalar> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for vi in &mut v {
            *vi /= vnorm;
        }
        // H ← (I − 2vv*) H on rows k+1..n
        for j in 0..n {
            let s: Scalar = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * h[(k + 1 + t, j)])
                .sum();
            for (t, vt) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= 2.0 * vt * s;
            }
        }
        // H ← H (I − 2vv*), Q ← Q (I − 2vv*) on columns k+1..n
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let s: Scalar = v
                    .iter()
                    .enumerate()
                    .map(|(t, vt)| m[(i, k + 1 + t)] * vt)
                    .sum();
                for (t, vt) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= 2.0 * s * vt.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Rotation `[[c, s], [−conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Scalar, y: Scalar) -> (f64, Scalar) {
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    let ax = x.norm();
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

fn rotate_rows(m: &mut Matrix, k: usize, c: f64, s: Scalar, cols: std::ops::Range<usize>) {
    for j in cols {
        let a = m[(k, j)];
        let b = m[(k + 1, j)];
        m[(k, j)] = c * a + s * b;
        m[(k + 1, j)] = -s.conj() * a + c * b;
    }
}

fn rotate_cols(m: &mut Matrix, k: usize, c: f64, s: Scalar, rows: std::ops::Range<usize>) {
    for i in rows {
        let a = m[(i, k)];
        let b = m[(i, k + 1)];
        m[(i, k)] = a * c + b * s.conj();
        m[(i, k + 1)] = -a * s + b * c;
    }
}

fn wilkinson_shift(h: &Matrix, hi: usize) -> Scalar {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let mu1 = mid + disc;
    let mu2 = mid - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

fn schur_qr(h: &mut Matrix, q: &mut Matrix, anorm: f64) -> Result<()> {
    let n = h.rows();
    let budget = 100 * n;
    let eps = f64::EPSILON;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let mut scale = h[(lo, lo)].l1_norm() + h[(lo - 1, lo - 1)].l1_norm();
            if scale == 0.0 {
                scale = anorm;
            }
            if h[(lo, lo - 1)].l1_norm() <= eps * scale {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        if sweeps > budget {
            let residual = (1..n).map(|i| h[(i, i - 1)].norm()).fold(0.0, f64::max);
            return Err(Error::NoConvergence {
                iterations: budget,
                residual,
            });
        }
        since_deflation += 1;

        let shift = if since_deflation.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Scalar::new(h[(hi, hi - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(h, hi)
        };

        for k in lo..hi {
            let (x, y) = if k == lo {
                (h[(lo, lo)] - shift, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s) = givens(x, y);
            let col_start = if k == lo { lo } else { k - 1 };
            rotate_rows(h, k, c, s, col_start..n);
            rotate_cols(h, k, c, s, 0..(k + 3).min(hi + 1));
            rotate_cols(q, k, c, s, 0..n);
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
        }
    }
    Ok(())
}

/// Eigenvectors of `Q T Q*` from back substitution on upper-triangular `T`.
fn triangular_eigenvectors(t: &Matrix, q: &Matrix) -> Vec<Vec<Scalar>> {
    let n = t.rows();
    let small = f64::EPSILON * t.frobenius_norm().max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let lam = t[(k, k)];
            let mut y = vec![ZERO; n];
            y[k] = ONE;
            for j in (0..k).rev() {
                let s: Scalar = (j + 1..=k).map(|i| t[(j, i)] * y[i]).sum();
                let mut denom = t[(j, j)] - lam;
                if denom.norm() < small {
                    denom = Scalar::new(small, 0.0);
                }
                y[j] = -s / denom;
                let big = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if big > 1e100 {
                    for z in &mut y {
                        *z /= big;
                    }
                }
            }
            let mut v = q.mul_vec(&y).expect("square");
            let vn = norm(&v);
            for z in &mut v {
                *z /= vn;
            }
            v
        })
        .collect()
}

/// Forces the spectrum of a real matrix into exact conjugate pairs: matched
/// pairs are replaced by their average and its conjugate, unmatched
/// near-real values lose their imaginary round-off.
fn pair_conjugates(values: &mut [Scalar], anorm: f64) {
    let match_cut = 1e-6 * (1.0 + anorm);

    let upper: Vec<usize> = (0..values.len()).filter(|&i| values[i].im > 0.0).collect();
    let lower: Vec<usize> = (0..values.len()).filter(|&i| values[i].im < 0.0).collect();
    let mut candidates: Vec<(f64, usize, usize)> = upper
        .iter()
        .flat_map(|&i| lower.iter().map(move |&j| (i, j)))
        .map(|(i, j)| ((values[i] - values[j].conj()).norm(), i, j))
        .filter(|&(dist, _, _)| dist <= match_cut)
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut matched = vec![false; values.len()];
    for (_, i, j) in candidates {
        if matched[i] || matched[j] {
            continue;
        }
        matched[i] = true;
        matched[j] = true;
        let avg = (values[i] + values[j].conj()) * 0.5;
        values[i] = avg;
        values[j] = avg.conj();
    }
    for (v, m) in values.iter_mut().zip(&matched) {
        if !m && v.im.abs() <= match_cut {
            v.im = 0.0;
        }
    }
}
