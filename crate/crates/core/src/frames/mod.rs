//! Frame sequences, frame pairs and their synthesis, analysis and mixed
//! operators.

pub mod fixtures;
mod json;

pub use json::{JsonScalar, PairDocument};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};
use crate::linalg::{inner, norm, Matrix, Scalar, ZERO};

/// Relative degeneracy threshold for [`FramePair::retract_to_constraint`]:
/// a pairing counts as degenerate when `|<f_m, g_m>| < eps · ‖f_m‖ · ‖g_m‖`.
pub const DEFAULT_DEGENERACY_EPS: f64 = 1e-10;

/// Ground field of the ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(Field::Real),
            "C" | "c" | "complex" => Ok(Field::Complex),
            other => Err(Error::Invalid(format!(
                "unknown field {other:?} (expected R or C)"
            ))),
        }
    }
}

/// Which mixed frame operator: `TU* f = Σ <f, g_m> f_m` or
/// `UT* f = Σ <f, f_m> g_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorSide {
    TU,
    UT,
}

/// `N` vectors of dimension `d` over a fixed field.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSequence {
    field: Field,
    dim: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl FrameSequence {
    pub fn new(field: Field, dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::Invalid(
                "sequence must contain at least one vector".into(),
            ));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    op: "FrameSequence::new",
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite("frame vector"));
            }
            if field == Field::Real && v.iter().any(|z| z.im != 0.0) {
                return Err(Error::Invalid(
                    "real frame with nonzero imaginary part".into(),
                ));
            }
        }
        Ok(Self {
            field,
            dim,
            vectors,
        })
    }

    pub fn from_real(dim: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        let vs = vectors
            .iter()
            .map(|v| v.iter().map(|&x| Scalar::new(x, 0.0)).collect())
            .collect();
        Self::new(Field::Real, dim, vs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn vector(&self, m: usize) -> &[Scalar] {
        &self.vectors[m]
    }

    /// `d × N` matrix whose columns are the vectors.
    pub fn synthesis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors, self.dim).expect("validated dimensions")
    }

    /// `T c = Σ c_m f_m`.
    pub fn synthesis(&self, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch {
                op: "synthesis",
                expected: self.len(),
                found: coeffs.len(),
            });
        }
        let mut out = vec![ZERO; self.dim];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// `T* f = {<f, f_m>}_m`.
    pub fn analysis(&self, f: &[Scalar]) -> Result<Vec<Scalar>> {
        if f.len() != self.dim {
            return Err(Error::DimensionMismatch {
                op: "analysis",
                expected: self.dim,
                found: f.len(),
            });
        }
        Ok(self.vectors.iter().map(|v| inner(f, v)).collect())
    }

    fn map_vectors(&self, mut op: impl FnMut(usize, &[Scalar]) -> Vec<Scalar>) -> Self {
        Self {
            field: self.field,
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .enumerate()
                .map(|(m, v)| op(m, v))
                .collect(),
        }
    }
}

/// The prescribed diagonal inner products `α_m` defining the constraint set.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSpec {
    alpha: Vec<Scalar>,
}

impl ConstraintSpec {
    pub fn new(alpha: Vec<Scalar>) -> Result<Self> {
        if alpha.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("alpha"));
        }
        Ok(Self { alpha })
    }

    pub fn from_real(alpha: &[f64]) -> Result<Self> {
        Self::new(alpha.iter().map(|&a| Scalar::new(a, 0.0)).collect())
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn sum(&self) -> Scalar {
        self.alpha.iter().sum()
    }

    pub fn is_real(&self) -> bool {
        self.alpha.iter().all(|a| a.im == 0.0)
    }

    /// Errors on the first zero entry among `indices` (all entries when `None`).
    pub fn require_nonzero(&self, indices: Option<&[usize]>) -> Result<()> {
        let check = |m: usize| {
            if self.alpha[m] == ZERO {
                Err(Error::ZeroAlpha { index: m })
            } else {
                Ok(())
            }
        };
        match indices {
            Some(idx) => idx.iter().try_for_each(|&m| check(m)),
            None => (0..self.alpha.len()).try_for_each(check),
        }
    }
}

/// Outcome of a duality test: `deviation = ‖TU* − I‖_F`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualCheck {
    pub is_dual: bool,
    pub deviation: f64,
}

/// Two sequences of equal field, dimension and length.
#[derive(Clone, Debug, PartialEq)]
pub struct FramePair {
    f: FrameSequence,
    g: FrameSequence,
}

impl FramePair {
    pub fn new(f: FrameSequence, g: FrameSequence) -> Result<Self> {
        if f.field != g.field {
            return Err(Error::Invalid("F and G must share the field".into()));
        }
        if f.dim != g.dim {
            return Err(Error::DimensionMismatch {
                op: "FramePair::new (d)",
                expected: f.dim,
                found: g.dim,
            });
        }
        if f.len() != g.len() {
            return Err(Error::DimensionMismatch {
                op: "FramePair::new (N)",
                expected: f.len(),
                found: g.len(),
            });
        }
        Ok(Self { f, g })
    }

    pub fn f(&self) -> &FrameSequence {
        &self.f
    }

    pub fn g(&self) -> &FrameSequence {
        &self.g
    }

    pub fn field(&self) -> Field {
        self.f.field
    }

    pub fn dim(&self) -> usize {
        self.f.dim
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// `(G, F)`.
    pub fn swapped(&self) -> Self {
        Self {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// Splits into `(F, G)`.
    pub fn into_parts(self) -> (FrameSequence, FrameSequence) {
        (self.f, self.g)
    }

    /// `TU* = Σ_m f_m g_m*` or its adjoint `UT*`.
    pub fn mixed_operator(&self, side: OperatorSide) -> Matrix {
        let d = self.dim();
        let mut tu = Matrix::zeros(d, d);
        for (fm, gm) in self.f.vectors.iter().zip(&self.g.vectors) {
            for i in 0..d {
                for j in 0..d {
                    tu[(i, j)] += fm[i] * gm[j].conj();
                }
            }
        }
        match side {
            OperatorSide::TU => tu,
            OperatorSide::UT => tu.adjoint(),
        }
    }

    /// `N × N` matrix with entries `<f_m, g_n>`.
    pub fn cross_gram(&self) -> Matrix {
        let n = self.len();
        let mut gram = Matrix::zeros(n, n);
        for (m, fm) in self.f.vectors.iter().enumerate() {
            for (k, gk) in self.g.vectors.iter().enumerate() {
                gram[(m, k)] = inner(fm, gk);
            }
        }
        gram
    }

    /// Dual iff `‖TU* − I‖_F ≤ tol·√d`.
    pub fn is_dual_pair(&self, tol: f64) -> DualCheck {
        let d = self.dim();
        let deviation = self
            .mixed_operator(OperatorSide::TU)
            .sub(&Matrix::identity(d))
            .expect("square")
            .frobenius_norm();
        DualCheck {
            is_dual: deviation <= tol * (d as f64).sqrt(),
            deviation,
        }
    }

    /// `|<f_m, g_m> − α_m|` for every m.
    pub fn constraint_residual(&self, c: &ConstraintSpec) -> Result<Vec<f64>> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch {
                op: "constraint_residual",
                expected: self.len(),
                found: c.len(),
            });
        }
        Ok(self
            .f
            .vectors
            .iter()
            .zip(&self.g.vectors)
            .zip(c.alpha())
            .map(|((fm, gm), a)| (inner(fm, gm) - a).norm())
            .collect())
    }

    /// Errors unless every constraint residual is at most `limit`.
    pub fn require_membership(&self, c: &ConstraintSpec, limit: f64) -> Result<f64> {
        let worst = self.constraint_residual(c)?.into_iter().fold(0.0, f64::max);
        if worst <= limit {
            Ok(worst)
        } else {
            Err(Error::ConstraintViolation {
                max_residual: worst,
                limit,
            })
        }
    }

    /// Errors on the first zero `f_m` or `g_m`.
    pub fn require_nonzero_vectors(&self) -> Result<()> {
        for m in 0..self.len() {
            if norm(self.f.vector(m)) == 0.0 {
                return Err(Error::ZeroVector {
                    side: Side::F,
                    index: m,
                });
            }
            if norm(self.g.vector(m)) == 0.0 {
                return Err(Error::ZeroVector {
                    side: Side::G,
                    index: m,
                });
            }
        }
        Ok(())
    }

    /// Rescales each `g_m` by `conj(α_m / <f_m, g_m>)` so that
    /// `<f_m, g_m> = α_m`; `F` is left untouched.
    pub fn retract_to_constraint(&self, c: &ConstraintSpec, eps: f64) -> Result<FramePair> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch {
                op: "retract_to_constraint",
                expected: self.len(),
                found: c.len(),
            });
        }
        c.require_nonzero(None)?;
        let mut factors = Vec::with_capacity(self.len());
        for (m, (fm, gm)) in self.f.vectors.iter().zip(&self.g.vectors).enumerate() {
            let ip = inner(fm, gm);
            if ip == ZERO || ip.norm() < eps * norm(fm) * norm(gm) {
                return Err(Error::DegeneratePairing { index: m });
            }
            let mut s = (c.alpha()[m] / ip).conj();
            if self.field() == Field::Real {
                s.im = 0.0;
            }
            factors.push(s);
        }
        Ok(FramePair {
            f: self.f.clone(),
            g: self
                .g
                .map_vectors(|m, v| v.iter().map(|x| x * factors[m]).collect()),
        })
    }

    /// Pair with i.i.d. standard normal components, `F` first then `G`,
    /// vector by vector, real part before imaginary part. The generator is
    /// ChaCha8 seeded with `seed_from_u64(seed)`.
    pub fn random(field: Field, dim: usize, len: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_sequence(&mut rng, field, dim, len)?;
        let g = random_sequence(&mut rng, field, dim, len)?;
        Self::new(f, g)
    }

    /// Replaces `g_m` (used to re-randomise a degenerate pairing).
    pub fn with_g_vector(&self, m: usize, v: Vec<Scalar>) -> Result<Self> {
        let mut vectors = self.g.vectors.clone();
        vectors[m] = v;
        Self::new(
            self.f.clone(),
            FrameSequence::new(self.field(), self.dim(), vectors)?,
        )
    }

    /// New pair from flat coordinate updates: `f_m ← f_m + df_m`,
    /// `g_m ← g_m + dg_m`. Imaginary parts are dropped for real pairs.
    pub fn offset(&self, df: &[Vec<Scalar>], dg: &[Vec<Scalar>]) -> Self {
        let real = self.field() == Field::Real;
        let shift = |seq: &FrameSequence, delta: &[Vec<Scalar>]| {
            seq.map_vectors(|m, v| {
                v.iter()
                    .zip(&delta[m])
                    .map(|(x, dx)| {
                        let mut z = x + dx;
                        if real {
                            z.im = 0.0;
                        }
                        z
                    })
                    .collect()
            })
        };
        Self {
            f: shift(&self.f, df),
            g: shift(&self.g, dg),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.f
            .vectors
            .iter()
            .chain(&self.g.vectors)
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

pub(crate) fn random_vector(rng: &mut ChaCha8Rng, field: Field, dim: usize) -> Vec<Scalar> {
    (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = match field {
                Field::Real => 0.0,
                Field::Complex => StandardNormal.sample(rng),
            };
            Scalar::new(re, im)
        })
        .collect()
}

fn random_sequence(
    rng: &mut ChaCha8Rng,
    field: Field,
    dim: usize,
    len: usize,
) -> Result<FrameSequence> {
    let vectors = (0..len).map(|_| random_vector(rng, field, dim)).collect();
    FrameSequence::new(field, dim, vectors)
}
