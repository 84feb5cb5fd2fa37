//! Search of the constraint set `<f_m, g_m> = α_m` for critical pairs.
//!
//! Two modes are provided. [`Mode::PotentialDescent`] follows the projected
//! gradient of `Re FP` or `Im FP`; since `FP` is unbounded below on the
//! constraint set in general, a run may end in [`Status::Diverged`].
//! [`Mode::CriticalSearch`] drives the merit function, the summed squared
//! residual of the critical-pair equations, to zero. Every step is followed
//! by a retraction onto the constraint set and accepted only if it decreases
//! the objective, halving the step up to 30 times.
//!
//! Coordinates are the real and imaginary parts of every entry of every
//! `f_m`, then every `g_m` (real parts only over ℝ). Gradients with respect
//! to an entry `z` are stored as `∂/∂Re z + i ∂/∂Im z`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frames::{
    random_vector, ConstraintSpec, Field, FramePair, FrameSequence, PairDocument,
    DEFAULT_DEGENERACY_EPS,
};
use crate::linalg::{inner, norm_sqr, Scalar, ZERO};
use crate::potential::fp_direct;
use crate::serde_util;
use crate::structure::{critical_report, critical_terms, CriticalPairReport};

/// Tolerance of the critical-pair report attached to every result.
pub const REPORT_CRITICAL_TOL: f64 = 1e-6;
/// Step-halving budget of the line search.
pub const MAX_HALVINGS: usize = 30;
/// Re-randomisations of a degenerate `g_m` allowed per index and iteration.
pub const RETRACTION_ATTEMPTS: usize = 3;

const FD_STEP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    PotentialDescent,
    CriticalSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Objective {
    RealPart,
    ImagPart,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub mode: Mode,
    /// Minimised quantity in [`Mode::PotentialDescent`].
    pub objective: Objective,
    /// Initial step length, in `(0, 1]`.
    pub step_size: f64,
    pub max_iters: usize,
    /// Projected-gradient norm at which potential descent stops.
    pub grad_tol: f64,
    /// Merit value at which critical search stops.
    pub merit_tol: f64,
    /// Potential descent stops once `|FP|` exceeds this.
    pub divergence_bound: f64,
    pub seed: u64,
    /// Additional runs with seeds `seed + 1, seed + 2, …`.
    pub restarts: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            mode: Mode::CriticalSearch,
            objective: Objective::RealPart,
            step_size: 1.0,
            max_iters: 5000,
            grad_tol: 1e-10,
            merit_tol: 1e-20,
            divergence_bound: 1e6,
            seed: 0,
            restarts: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64, name: &str| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::Invalid(format!(
                    "{name} must be positive and finite, got {x}"
                )))
            }
        };
        positive(self.step_size, "step_size")?;
        positive(self.grad_tol, "grad_tol")?;
        positive(self.merit_tol, "merit_tol")?;
        positive(self.divergence_bound, "divergence_bound")?;
        if self.step_size > 1.0 {
            return Err(Error::Invalid(format!(
                "step_size must be at most 1, got {}",
                self.step_size
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::Invalid("max_iters must be positive".into()));
        }
        Ok(())
    }
}

/// Per-vector gradient of a real function of a pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairGradient {
    pub f: Vec<Vec<Scalar>>,
    pub g: Vec<Vec<Scalar>>,
}

impl PairGradient {
    fn zeros(n: usize, d: usize) -> Self {
        Self {
            f: vec![vec![ZERO; d]; n],
            g: vec![vec![ZERO; d]; n],
        }
    }

    /// Euclidean inner product over the real coordinates.
    pub fn dot(&self, other: &PairGradient) -> f64 {
        self.f
            .iter()
            .chain(&self.g)
            .zip(other.f.iter().chain(&other.g))
            .map(|(a, b)| inner(a, b).re)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    fn scaled(&self, s: f64) -> Self {
        let sc = |v: &Vec<Vec<Scalar>>| {
            v.iter()
                .map(|r| r.iter().map(|x| x * s).collect())
                .collect()
        };
        Self {
            f: sc(&self.f),
            g: sc(&self.g),
        }
    }

    fn to_coords(&self, field: Field) -> Vec<f64> {
        flatten(&self.f, &self.g, field)
    }

    fn from_coords(x: &[f64], field: Field, n: usize, d: usize) -> Self {
        let (f, g) = unflatten(x, field, n, d);
        Self { f, g }
    }
}

fn flatten(f: &[Vec<Scalar>], g: &[Vec<Scalar>], field: Field) -> Vec<f64> {
    let mut out = Vec::new();
    for z in f.iter().chain(g).flatten() {
        out.push(z.re);
        if field == Field::Complex {
            out.push(z.im);
        }
    }
    out
}

fn unflatten(x: &[f64], field: Field, n: usize, d: usize) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let step = if field == Field::Complex { 2 } else { 1 };
    let mut it = x
        .chunks(step)
        .map(|c| Scalar::new(c[0], if step == 2 { c[1] } else { 0.0 }));
    let mut take = || -> Vec<Vec<Scalar>> {
        (0..n)
            .map(|_| (0..d).map(|_| it.next().expect("length")).collect())
            .collect()
    };
    let f = take();
    let g = take();
    (f, g)
}

/// Real coordinates of a pair.
pub fn pair_coords(pair: &FramePair) -> Vec<f64> {
    flatten(pair.f().vectors(), pair.g().vectors(), pair.field())
}

/// Pair with the given real coordinates and the shape and field of `like`.
pub fn pair_from_coords(like: &FramePair, x: &[f64]) -> Result<FramePair> {
    let (f, g) = unflatten(x, like.field(), like.len(), like.dim());
    FramePair::new(
        FrameSequence::new(like.field(), like.dim(), f)?,
        FrameSequence::new(like.field(), like.dim(), g)?,
    )
}

/// Real scalar minimised in potential descent.
pub fn objective_value(pair: &FramePair, objective: Objective) -> f64 {
    let fp = fp_direct(pair).value;
    match objective {
        Objective::RealPart => fp.re,
        Objective::ImagPart => fp.im,
    }
}

/// Exact gradient of `Re FP` or `Im FP`.
///
/// With `G_{mn} = <f_m, g_n>`, `h_m = 2 Σ_b G_{bm} conj(g_b)` and
/// `p_n = 2 Σ_a G_{na} f_a`, the gradient of `Re FP` is `(conj(h), p)` and
/// that of `Im FP` is `(i conj(h), −i p)`. Over ℝ only the real parts are
/// kept.
pub fn fp_gradient(pair: &FramePair, objective: Objective) -> PairGradient {
    let n = pair.len();
    let d = pair.dim();
    let fs = pair.f().vectors();
    let gs = pair.g().vectors();
    let gram = pair.cross_gram();
    let mut grad = PairGradient::zeros(n, d);
    let i = Scalar::new(0.0, 1.0);
    for m in 0..n {
        for k in 0..d {
            let mut h = ZERO;
            let mut p = ZERO;
            for b in 0..n {
                h += gram[(b, m)] * gs[b][k].conj();
                p += gram[(m, b)] * fs[b][k];
            }
            let (h, p) = (h * 2.0, p * 2.0);
            let (gf, gg) = match objective {
                Objective::RealPart => (h.conj(), p),
                Objective::ImagPart => (i * h.conj(), -i * p),
            };
            grad.f[m][k] = gf;
            grad.g[m][k] = gg;
        }
    }
    if pair.field() == Field::Real {
        for z in grad.f.iter_mut().chain(grad.g.iter_mut()).flatten() {
            z.im = 0.0;
        }
    }
    grad
}

/// Unit normals of the constraint set at `pair`: for each `m` the gradients
/// of `Re <f_m, g_m>`, namely `(g_m, f_m)`, and over ℂ of `Im <f_m, g_m>`,
/// namely `(i g_m, −i f_m)`, supported on index `m` only.
fn constraint_normals(pair: &FramePair) -> Vec<(usize, Vec<Scalar>, Vec<Scalar>)> {
    let i = Scalar::new(0.0, 1.0);
    let mut out = Vec::new();
    for m in 0..pair.len() {
        let f = pair.f().vector(m);
        let g = pair.g().vector(m);
        let nn = (norm_sqr(f) + norm_sqr(g)).sqrt();
        if nn == 0.0 {
            continue;
        }
        out.push((
            m,
            g.iter().map(|x| x / nn).collect(),
            f.iter().map(|x| x / nn).collect(),
        ));
        if pair.field() == Field::Complex {
            out.push((
                m,
                g.iter().map(|x| i * x / nn).collect(),
                f.iter().map(|x| -i * x / nn).collect(),
            ));
        }
    }
    out
}

/// Orthogonal projection onto the tangent space of the constraint set.
pub fn tangent_projection(pair: &FramePair, grad: &PairGradient) -> PairGradient {
    let mut out = grad.clone();
    for (m, nf, ng) in constraint_normals(pair) {
        let w = inner(&out.f[m], &nf).re + inner(&out.g[m], &ng).re;
        for (o, x) in out.f[m].iter_mut().zip(&nf) {
            *o -= x * w;
        }
        for (o, x) in out.g[m].iter_mut().zip(&ng) {
            *o -= x * w;
        }
    }
    out
}

/// Critical-pair residuals as a real vector.
fn merit_residuals(pair: &FramePair) -> Result<Vec<f64>> {
    let t = critical_terms(pair)?;
    Ok(flatten(&t.f_res, &t.g_res, pair.field()))
}

/// `Σ_m ‖Σ_{n≠m} <f_m, g_n> f_n − c_m f_m‖² + ‖Σ_{n≠m} <g_m, f_n> g_n − conj(c_m) g_m‖²`
/// with `c_m` fitted as in [`critical_report`]. Zero exactly at critical
/// pairs.
pub fn merit(pair: &FramePair) -> Result<f64> {
    Ok(merit_residuals(pair)?.iter().map(|r| r * r).sum())
}

/// Jacobian of the residual vector by central differences, row-major
/// `residuals × coordinates`.
fn residual_jacobian(pair: &FramePair, x: &[f64], rows: usize) -> Result<Vec<Vec<f64>>> {
    let mut jac = vec![vec![0.0; x.len()]; rows];
    let mut xp = x.to_vec();
    for j in 0..x.len() {
        let h = FD_STEP * x[j].abs().max(1.0);
        xp[j] = x[j] + h;
        let rp = merit_residuals(&pair_from_coords(pair, &xp)?)?;
        xp[j] = x[j] - h;
        let rm = merit_residuals(&pair_from_coords(pair, &xp)?)?;
        xp[j] = x[j];
        for i in 0..rows {
            jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Gradient of [`merit`], `2 Jᵀ r` with the residual Jacobian `J` taken by
/// central differences.
pub fn merit_gradient(pair: &FramePair) -> Result<PairGradient> {
    let r = merit_residuals(pair)?;
    let x = pair_coords(pair);
    let jac = residual_jacobian(pair, &x, r.len())?;
    let g: Vec<f64> = (0..x.len())
        .map(|j| 2.0 * (0..r.len()).map(|i| jac[i][j] * r[i]).sum::<f64>())
        .collect();
    Ok(PairGradient::from_coords(
        &g,
        pair.field(),
        pair.len(),
        pair.dim(),
    ))
}

/// Cholesky solve of the symmetric positive definite system `a x = b`.
fn solve_spd(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for j in 0..n {
        let mut diag = a[j][j];
        for k in 0..j {
            diag -= a[j][k] * a[j][k];
        }
        if diag <= 0.0 || !diag.is_finite() {
            return None;
        }
        let l = diag.sqrt();
        a[j][j] = l;
        for i in j + 1..n {
            let mut v = a[i][j];
            for k in 0..j {
                v -= a[i][k] * a[j][k];
            }
            a[i][j] = v / l;
        }
    }
    for i in 0..n {
        for k in 0..i {
            b[i] -= a[i][k] * b[k];
        }
        b[i] /= a[i][i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            b[i] -= a[k][i] * b[k];
        }
        b[i] /= a[i][i];
    }
    Some(b)
}

/// Damped Gauss–Newton direction for the merit residuals, restricted to the
/// tangent space. The damping `‖r‖` keeps the system regular where the
/// critical set is not isolated.
fn gauss_newton_direction(pair: &FramePair) -> Result<Option<PairGradient>> {
    let r = merit_residuals(pair)?;
    let x = pair_coords(pair);
    let mut jac = residual_jacobian(pair, &x, r.len())?;
    let (n, d, field) = (pair.len(), pair.dim(), pair.field());
    let normals: Vec<Vec<f64>> = constraint_normals(pair)
        .into_iter()
        .map(|(m, nf, ng)| {
            let mut gf = PairGradient::zeros(n, d);
            gf.f[m] = nf;
            gf.g[m] = ng;
            gf.to_coords(field)
        })
        .collect();
    for row in &mut jac {
        for nv in &normals {
            let w: f64 = row.iter().zip(nv).map(|(a, b)| a * b).sum();
            for (a, b) in row.iter_mut().zip(nv) {
                *a -= w * b;
            }
        }
    }
    let p = x.len();
    let mut normal_eq = vec![vec![0.0; p]; p];
    let mut rhs = vec![0.0; p];
    for (row, ri) in jac.iter().zip(&r) {
        for a in 0..p {
            if row[a] == 0.0 {
                continue;
            }
            rhs[a] -= row[a] * ri;
            for b in 0..=a {
                normal_eq[a][b] += row[a] * row[b];
            }
        }
    }
    let max_diag = (0..p).map(|a| normal_eq[a][a]).fold(0.0, f64::max);
    let damping = r.iter().map(|v| v * v).sum::<f64>().sqrt() + 1e-14 * max_diag;
    if damping == 0.0 {
        return Ok(None);
    }
    for a in 0..p {
        normal_eq[a][a] += damping;
        for b in 0..a {
            normal_eq[b][a] = normal_eq[a][b];
        }
    }
    Ok(solve_spd(normal_eq, rhs).map(|dx| PairGradient::from_coords(&dx, field, n, d)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Converged,
    MaxIters,
    Diverged,
    DegenerateRetraction,
}

/// Summary line for one run of a multi-start search.
#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub restart: usize,
    pub seed: u64,
    pub status: Status,
    pub iterations: usize,
    pub final_merit: f64,
    pub final_fp_re: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub status: Status,
    pub mode: Mode,
    /// Run that produced this result (0 is the base seed).
    pub restart: usize,
    pub seed: u64,
    pub iterations: usize,
    /// Set when 30 halvings failed to decrease the objective.
    pub line_search_failed: bool,
    #[serde(serialize_with = "serialize_pair")]
    pub final_pair: (FramePair, ConstraintSpec),
    #[serde(serialize_with = "serde_util::complex")]
    pub fp_final: Scalar,
    pub final_merit: f64,
    /// Minimised objective per accepted iterate (`Re FP` in critical search).
    pub objective_history: Vec<f64>,
    pub merit_history: Vec<f64>,
    pub constraint_residual_final: f64,
    /// Critical-pair report at tolerance 1e-6, absent when it cannot be
    /// formed (for instance after divergence).
    pub critical_report_final: Option<CriticalPairReport>,
    pub runs: Vec<RunSummary>,
}

fn serialize_pair<S: Serializer>(
    p: &(FramePair, ConstraintSpec),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    PairDocument::from_pair(&p.0, Some(&p.1)).serialize(s)
}

impl SearchResult {
    pub fn pair(&self) -> &FramePair {
        &self.final_pair.0
    }

    fn summary(&self) -> RunSummary {
        RunSummary {
            restart: self.restart,
            seed: self.seed,
            status: self.status,
            iterations: self.iterations,
            final_merit: self.final_merit,
            final_fp_re: self.fp_final.re,
        }
    }
}

/// Retraction that replaces a degenerate `g_m` by a fresh random vector, at
/// most [`RETRACTION_ATTEMPTS`] times per index.
fn retract_with_budget(
    pair: &FramePair,
    c: &ConstraintSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Option<FramePair>> {
    let mut attempts = vec![0usize; pair.len()];
    let mut current = pair.clone();
    loop {
        match current.retract_to_constraint(c, DEFAULT_DEGENERACY_EPS) {
            Ok(p) => return Ok(Some(p)),
            Err(Error::DegeneratePairing { index }) => {
                if attempts[index] == RETRACTION_ATTEMPTS {
                    return Ok(None);
                }
                attempts[index] += 1;
                current =
                    current.with_g_vector(index, random_vector(rng, pair.field(), pair.dim()))?;
            }
            Err(e) => return Err(e),
        }
    }
}

fn max_constraint_residual(pair: &FramePair, c: &ConstraintSpec) -> f64 {
    pair.constraint_residual(c)
        .map(|r| r.into_iter().fold(0.0, f64::max))
        .unwrap_or(f64::INFINITY)
}

struct Run<'a> {
    c: &'a ConstraintSpec,
    cfg: &'a OptimizerConfig,
    rng: ChaCha8Rng,
}

impl Run<'_> {
    fn value(&self, pair: &FramePair) -> Result<f64> {
        match self.cfg.mode {
            Mode::PotentialDescent => Ok(objective_value(pair, self.cfg.objective)),
            Mode::CriticalSearch => merit(pair),
        }
    }

    fn direction(&self, pair: &FramePair) -> Result<Option<PairGradient>> {
        match self.cfg.mode {
            Mode::PotentialDescent => {
                let g = tangent_projection(pair, &fp_gradient(pair, self.cfg.objective));
                Ok(Some(g.scaled(-1.0)))
            }
            Mode::CriticalSearch => gauss_newton_direction(pair),
        }
    }

    fn finished(&self, pair: &FramePair, value: f64) -> Option<Status> {
        match self.cfg.mode {
            Mode::PotentialDescent => {
                if fp_direct(pair).value.norm() > self.cfg.divergence_bound {
                    Some(Status::Diverged)
                } else if tangent_projection(pair, &fp_gradient(pair, self.cfg.objective)).norm()
                    <= self.cfg.grad_tol
                {
                    Some(Status::Converged)
                } else {
                    None
                }
            }
            Mode::CriticalSearch => (value <= self.cfg.merit_tol).then_some(Status::Converged),
        }
    }

    fn run(mut self, field: Field, d: usize, restart: usize, seed: u64) -> Result<SearchResult> {
        let n = self.c.len();
        let start = FramePair::random(field, d, n, seed)?;
        let mut history_obj = Vec::new();
        let mut history_merit = Vec::new();
        let mut line_search_failed = false;
        let mut iterations = 0;
        let Some(mut pair) = retract_with_budget(&start, self.c, &mut self.rng)? else {
            return Ok(self.result(
                start,
                Status::DegenerateRetraction,
                restart,
                seed,
                0,
                false,
                history_obj,
                history_merit,
            ));
        };
        let mut value = self.value(&pair)?;
        let mut step = self.cfg.step_size;
        let mut status = Status::MaxIters;
        let record =
            |p: &FramePair, ho: &mut Vec<f64>, hm: &mut Vec<f64>, mode: Mode, obj: Objective| {
                ho.push(match mode {
                    Mode::PotentialDescent => objective_value(p, obj),
                    Mode::CriticalSearch => fp_direct(p).value.re,
                });
                hm.push(merit(p).unwrap_or(f64::NAN));
            };
        record(
            &pair,
            &mut history_obj,
            &mut history_merit,
            self.cfg.mode,
            self.cfg.objective,
        );

        while iterations < self.cfg.max_iters {
            if let Some(s) = self.finished(&pair, value) {
                status = s;
                break;
            }
            iterations += 1;
            let Some(dir) = self.direction(&pair)? else {
                line_search_failed = true;
                break;
            };
            if self.cfg.mode == Mode::CriticalSearch {
                step = self.cfg.step_size;
            }
            let mut accepted = None;
            for _ in 0..=MAX_HALVINGS {
                let delta = dir.scaled(step);
                let candidate = pair.offset(&delta.f, &delta.g);
                if candidate.is_finite() {
                    match retract_with_budget(&candidate, self.c, &mut self.rng)? {
                        None => {
                            return Ok(self.result(
                                candidate,
                                Status::DegenerateRetraction,
                                restart,
                                seed,
                                iterations,
                                false,
                                history_obj,
                                history_merit,
                            ))
                        }
                        Some(next) => {
                            if let Ok(v) = self.value(&next) {
                                if v < value {
                                    accepted = Some((next, v));
                                    break;
                                }
                            }
                        }
                    }
                }
                step *= 0.5;
            }
            match accepted {
                Some((next, v)) => {
                    pair = next;
                    value = v;
                    record(
                        &pair,
                        &mut history_obj,
                        &mut history_merit,
                        self.cfg.mode,
                        self.cfg.objective,
                    );
                    if self.cfg.mode == Mode::PotentialDescent {
                        step *= 2.0;
                    }
                }
                None => {
                    line_search_failed = true;
                    break;
                }
            }
        }
        if status == Status::MaxIters {
            if let Some(s) = self.finished(&pair, value) {
                status = s;
            }
        }
        Ok(self.result(
            pair,
            status,
            restart,
            seed,
            iterations,
            line_search_failed,
            history_obj,
            history_merit,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn result(
        &self,
        pair: FramePair,
        status: Status,
        restart: usize,
        seed: u64,
        iterations: usize,
        line_search_failed: bool,
        objective_history: Vec<f64>,
        merit_history: Vec<f64>,
    ) -> SearchResult {
        SearchResult {
            status,
            mode: self.cfg.mode,
            restart,
            seed,
            iterations,
            line_search_failed,
            fp_final: fp_direct(&pair).value,
            final_merit: merit(&pair).unwrap_or(f64::NAN),
            objective_history,
            merit_history,
            constraint_residual_final: max_constraint_residual(&pair, self.c),
            critical_report_final: critical_report(&pair, self.c, REPORT_CRITICAL_TOL).ok(),
            final_pair: (pair, self.c.clone()),
            runs: Vec::new(),
        }
    }
}

/// Multi-start search over pairs of `N = α.len()` vectors in dimension `d`.
///
/// Run `k` (`0 ≤ k ≤ restarts`) starts from `FramePair::random` with seed
/// `seed + k`, retracted. Runs execute in parallel; the result returned is
/// the best by status (converged first), then by smallest final objective
/// (`Re FP` in critical search), then by merit and run index, so it does not
/// depend on scheduling.
pub fn search(
    c: &ConstraintSpec,
    field: Field,
    d: usize,
    cfg: &OptimizerConfig,
) -> Result<SearchResult> {
    cfg.validate()?;
    c.require_nonzero(None)?;
    if d == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    if field == Field::Real && !c.is_real() {
        return Err(Error::Invalid(
            "complex alpha requires the complex field".into(),
        ));
    }
    let runs: Vec<SearchResult> = (0..=cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let seed = cfg.seed.wrapping_add(k as u64);
            let run = Run {
                c,
                cfg,
                rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5e_ed0f_9a11),
            };
            run.run(field, d, k, seed)
        })
        .collect::<Result<_>>()?;
    let key = |r: &SearchResult| {
        let obj = match cfg.mode {
            Mode::PotentialDescent => r.objective_history.last().copied().unwrap_or(f64::INFINITY),
            Mode::CriticalSearch => r.fp_final.re,
        };
        (r.status, obj, r.final_merit, r.restart)
    };
    let summaries: Vec<RunSummary> = runs.iter().map(SearchResult::summary).collect();
    let mut best = runs
        .into_iter()
        .min_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.cmp(&kb.0)
                .then(ka.1.total_cmp(&kb.1))
                .then(ka.2.total_cmp(&kb.2))
                .then(ka.3.cmp(&kb.3))
        })
        .expect("at least one run");
    best.runs = summaries;
    Ok(best)
}
