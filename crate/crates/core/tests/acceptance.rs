//! Acceptance suite. Each test prints one `PASS` or `FAIL` line and fails
//! when its criterion is not met.

use std::io::Write;
use std::path::Path;
use std::process::Command;

use mixed_frame::frames::{fixtures, PairDocument, DEFAULT_DEGENERACY_EPS};
use mixed_frame::linalg::{inner, norm, Scalar};
use mixed_frame::optimizer::{
    fp_gradient, objective_value, pair_coords, pair_from_coords, search, tangent_projection, Mode,
    Objective, OptimizerConfig, PairGradient, Status,
};
use mixed_frame::potential::{
    bound_report, fp_direct, fp_swap, fp_trace, scaled_identity_check, BoundStatus, SpectrumClass,
};
use mixed_frame::structure::{
    alpha_only_report, check_a_generalized_dual, classify, corollary_check, critical_report,
    decompose, Verdict,
};
use mixed_frame::{ConstraintSpec, Field, FramePair, FrameSequence, OperatorSide};

/// Prints the verdict line outside the test harness capture, then fails on
/// any recorded problem.
fn verdict(id: u32, title: &str, problems: &[String]) {
    let line = if problems.is_empty() {
        format!("criterion {id:02} {title}: PASS")
    } else {
        format!(
            "criterion {id:02} {title}: FAIL ({} problems; first: {})",
            problems.len(),
            problems[0]
        )
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    assert!(problems.is_empty(), "{line}");
}

fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn fixture(name: &str) -> (FramePair, ConstraintSpec) {
    fixtures::by_name(name).expect("known fixture")
}

/// Deterministic α for test pair `k`; complex entries over ℂ.
fn test_alpha(field: Field, n: usize, k: u64) -> ConstraintSpec {
    let alpha = (0..n)
        .map(|m| {
            let t = (k as usize * 7 + m * 3) % 11;
            let re = 0.25 + 0.2 * t as f64;
            let im = if field == Field::Complex {
                0.1 * ((m + k as usize) % 5) as f64 - 0.2
            } else {
                0.0
            };
            Scalar::new(re, im)
        })
        .collect();
    ConstraintSpec::new(alpha).unwrap()
}

fn retracted(field: Field, d: usize, n: usize, seed: u64) -> (FramePair, ConstraintSpec) {
    let c = test_alpha(field, n, seed);
    let p = FramePair::random(field, d, n, seed)
        .unwrap()
        .retract_to_constraint(&c, DEFAULT_DEGENERACY_EPS)
        .unwrap();
    (p, c)
}

/// Pair with `F` a Parseval frame and `G = conj(A)·F`, so `TU* = A·I`.
fn scaled_identity_pair(
    field: Field,
    d: usize,
    n: usize,
    a: Scalar,
    seed: u64,
) -> (FramePair, ConstraintSpec) {
    let raw = FramePair::random(field, d, n, seed).unwrap();
    // rows of the d × N synthesis matrix, orthonormalised
    let mut rows: Vec<Vec<Scalar>> = (0..d)
        .map(|i| raw.f().vectors().iter().map(|v| v[i]).collect())
        .collect();
    for i in 0..d {
        for j in 0..i {
            let p = inner(&rows[i], &rows[j]);
            let prev = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&prev) {
                *x -= p * y;
            }
        }
        let s = norm(&rows[i]);
        rows[i].iter_mut().for_each(|x| *x /= s);
    }
    let f: Vec<Vec<Scalar>> = (0..n)
        .map(|m| (0..d).map(|i| rows[i][m]).collect())
        .collect();
    let g: Vec<Vec<Scalar>> = f
        .iter()
        .map(|v| v.iter().map(|x| a.conj() * x).collect())
        .collect();
    let alpha = f.iter().map(|v| a * inner(v, v)).collect();
    let pair = FramePair::new(
        FrameSequence::new(field, d, f).unwrap(),
        FrameSequence::new(field, d, g).unwrap(),
    )
    .unwrap();
    (pair, ConstraintSpec::new(alpha).unwrap())
}

fn flatten(grad: &PairGradient, field: Field) -> Vec<f64> {
    let mut out = Vec::new();
    for z in grad.f.iter().chain(&grad.g).flatten() {
        out.push(z.re);
        if field == Field::Complex {
            out.push(z.im);
        }
    }
    out
}

fn vec_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[test]
fn criterion_01_potential_forms_agree() {
    let mut problems = Vec::new();
    for field in [Field::Real, Field::Complex] {
        for k in 0..200u64 {
            let d = 1 + (k % 8) as usize;
            let n = d + ((k / 8) as usize * 5) % (3 * d + 1);
            let p = FramePair::random(field, d, n, 1000 + k).unwrap();
            let direct = fp_direct(&p).value;
            match fp_trace(&p, 1e-9) {
                Ok(t) if close(t.value, direct, 1e-9 * (1.0 + direct.norm())) => {}
                Ok(t) => problems.push(format!(
                    "{field:?} k={k}: trace {} vs direct {direct}",
                    t.value
                )),
                Err(e) => problems.push(format!("{field:?} k={k}: {e}")),
            }
            let swap = fp_swap(&p).value;
            if !close(swap, direct.conj(), 1e-10 * (1.0 + direct.norm())) {
                problems.push(format!(
                    "{field:?} k={k}: swap {swap} vs conj direct {}",
                    direct.conj()
                ));
            }
        }
    }
    verdict(1, "potential forms agree", &problems);
}

#[test]
fn criterion_02_fixture_values() {
    let mut problems = Vec::new();
    for (name, expect) in [
        ("FX-D1", 1.0),
        ("FX-MB", 4.5),
        ("FX-SCALE", 8.0),
        ("FX-IMAG", -1.0),
        ("FX-MIX", 8.5),
    ] {
        let (p, _) = fixture(name);
        let v = fp_direct(&p).value;
        if !close(v, Scalar::new(expect, 0.0), 1e-12) {
            problems.push(format!("{name}: {v} != {expect}"));
        }
        match fp_trace(&p, 1e-12) {
            Ok(t) if close(t.value, Scalar::new(expect, 0.0), 1e-12) => {}
            other => problems.push(format!("{name}: trace form {other:?}")),
        }
    }
    let (p, _) = fixture("FX-SCALE");
    if (fp_direct(&p).value.re - 2.0 * 2.0 * p.dim() as f64).abs() > 1e-12 {
        problems.push("FX-SCALE: FP != A^2 d".into());
    }
    let (p, c_mix) = fixture("FX-MIX");
    let mut eig = bound_report(&p, &c_mix, 1e-8).unwrap().eigenvalues;
    eig.sort_by(|a, b| b.re.total_cmp(&a.re));
    let want = [2.0, 1.5, 1.5];
    if eig.len() != 3
        || eig
            .iter()
            .zip(want)
            .any(|(l, w)| !close(*l, Scalar::new(w, 0.0), 1e-12))
    {
        problems.push(format!("FX-MIX spectrum {eig:?}"));
    }
    verdict(2, "fixture values", &problems);
}

#[test]
fn criterion_03_trace_identity() {
    let mut problems = Vec::new();
    for k in 0..100u64 {
        let field = if k % 2 == 0 {
            Field::Real
        } else {
            Field::Complex
        };
        let d = 1 + (k % 6) as usize;
        let n = d + (k % 4) as usize;
        let (p, c) = retracted(field, d, n, 5000 + k);
        let tu = p.mixed_operator(OperatorSide::TU);
        let gap = (tu.trace().unwrap() - c.sum()).norm();
        if gap > 1e-12 * (1.0 + tu.frobenius_norm()) {
            problems.push(format!("k={k}: |Tr - sum alpha| = {gap:e}"));
        }
    }
    verdict(3, "trace identity", &problems);
}

#[test]
fn criterion_04_spectral_bounds() {
    let mut problems = Vec::new();
    let mut cases: Vec<(String, FramePair, ConstraintSpec)> = fixtures::FIXTURE_NAMES
        .iter()
        .map(|n| {
            let (p, c) = fixture(n);
            (n.to_string(), p, c)
        })
        .collect();
    for k in 0..60u64 {
        let d = 1 + (k % 3) as usize;
        let field = if k % 4 == 3 {
            Field::Complex
        } else {
            Field::Real
        };
        let (p, c) = retracted(field, d, d + 1 + (k % 3) as usize, 9000 + k);
        cases.push((format!("random k={k}"), p, c));
    }
    for (k, a) in [2.0, 1.5, -1.0].into_iter().enumerate() {
        let (p, c) = scaled_identity_pair(Field::Real, 3, 5, Scalar::new(a, 0.0), 70 + k as u64);
        cases.push((format!("A={a}"), p, c));
    }
    let mut all_real = 0;
    for (name, p, c) in &cases {
        match bound_report(p, c, 1e-8) {
            Ok(r) if r.spectrum_class == SpectrumClass::AllReal => {
                all_real += 1;
                if r.fp_value.re < r.bound.re - 1e-9 {
                    problems.push(format!("{name}: FP {} below bound {}", r.fp_value, r.bound));
                }
            }
            Ok(_) => {}
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    if all_real < 20 {
        problems.push(format!("only {all_real} real-spectrum cases"));
    }
    let (p, c) = fixture("FX-IMAG");
    let r = bound_report(&p, &c, 1e-8).unwrap();
    if !close(r.fp_value, Scalar::new(-1.0, 0.0), 1e-12) || !close(r.fp_value, r.bound, 1e-12) {
        problems.push(format!("FX-IMAG: FP {} vs bound {}", r.fp_value, r.bound));
    }
    for name in ["FX-SCALE", "FX-MB"] {
        let (p, c) = fixture(name);
        let r = bound_report(&p, &c, 1e-8).unwrap();
        if r.bound_status != BoundStatus::Equality {
            problems.push(format!("{name}: {:?}", r.bound_status));
        }
    }
    verdict(4, "spectral bounds", &problems);
}

#[test]
fn criterion_05_scaled_identity() {
    let mut problems = Vec::new();
    let real = [2.0, 1.5, -1.0].map(|a| (Field::Real, Scalar::new(a, 0.0)));
    let complex = [
        Scalar::new(2.0, 0.0),
        Scalar::new(1.5, 0.0),
        Scalar::new(-1.0, 0.0),
        Scalar::new(1.0, 1.0),
    ]
    .map(|a| (Field::Complex, a));
    for (field, a) in real.into_iter().chain(complex) {
        for (d, n) in [(1, 2), (2, 3), (3, 5), (4, 7)] {
            let (p, c) = scaled_identity_pair(field, d, n, a, (d * 31 + n) as u64);
            match scaled_identity_check(&p, &c, 1e-10) {
                Ok(s) => {
                    let mean = c.sum() / d as f64;
                    if !s.is_scaled_identity || !close(s.a, a, 1e-10) || !close(s.a, mean, 1e-10) {
                        problems.push(format!("{field:?} A={a} d={d}: {s:?}"));
                    }
                }
                Err(e) => problems.push(format!("{field:?} A={a} d={d}: {e}")),
            }
        }
    }
    verdict(5, "scaled identity", &problems);
}

#[test]
fn criterion_06_gradient() {
    let mut problems = Vec::new();
    let h = 1e-6;
    for field in [Field::Real, Field::Complex] {
        for objective in [Objective::RealPart, Objective::ImagPart] {
            for k in 0..20u64 {
                let d = 1 + (k % 3) as usize;
                let n = d + 1 + (k % 2) as usize;
                let p = FramePair::random(field, d, n, 300 + k).unwrap();
                let x = pair_coords(&p);
                let fd: Vec<f64> = (0..x.len())
                    .map(|i| {
                        let mut up = x.clone();
                        let mut dn = x.clone();
                        up[i] += h;
                        dn[i] -= h;
                        let fu = objective_value(&pair_from_coords(&p, &up).unwrap(), objective);
                        let fl = objective_value(&pair_from_coords(&p, &dn).unwrap(), objective);
                        (fu - fl) / (2.0 * h)
                    })
                    .collect();
                let g = flatten(&fp_gradient(&p, objective), field);
                let diff: Vec<f64> = g.iter().zip(&fd).map(|(a, b)| a - b).collect();
                let scale = vec_norm(&fd).max(vec_norm(&g));
                // Im FP is identically zero over ℝ
                let rel = if scale == 0.0 {
                    0.0
                } else {
                    vec_norm(&diff) / scale
                };
                if rel > 1e-5 {
                    problems.push(format!(
                        "{field:?} {objective:?} k={k}: relative error {rel:e}"
                    ));
                }
            }
        }
    }
    let (p, _) = fixture("FX-MB");
    let proj = tangent_projection(&p, &fp_gradient(&p, Objective::RealPart)).norm();
    if proj > 1e-10 {
        problems.push(format!("FX-MB projected gradient {proj:e}"));
    }
    verdict(6, "gradient", &problems);
}

/// Critical test, clustering and per-cluster duality at `tol`.
fn verify_structure(
    name: &str,
    p: &FramePair,
    c: &ConstraintSpec,
    tol: f64,
    problems: &mut Vec<String>,
) {
    match critical_report(p, c, tol) {
        Ok(r) if r.is_critical && r.max_residual() <= tol => {}
        Ok(r) => problems.push(format!(
            "{name}: not critical, residual {:e}",
            r.max_residual()
        )),
        Err(e) => problems.push(format!("{name}: {e}")),
    }
    match classify(p, c, tol, 1e-6) {
        Ok(cls) => {
            for (l, idx) in cls.distinct_eigenvalues.iter().zip(&cls.index_sets) {
                match check_a_generalized_dual(p, idx, *l, tol.max(1e-10)) {
                    Ok(g) if g.passes => {}
                    other => problems.push(format!("{name}: cluster {l}: {other:?}")),
                }
            }
        }
        Err(e) => problems.push(format!("{name}: classify: {e}")),
    }
}

#[test]
fn criterion_07_critical_structure() {
    let mut problems = Vec::new();
    // name, cluster eigenvalues, index sets
    type Hand = (&'static str, Vec<f64>, Vec<Vec<usize>>);
    let hand: [Hand; 2] = [
        ("FX-MB", vec![1.5], vec![vec![0, 1, 2]]),
        ("FX-MIX", vec![2.0, 1.5], vec![vec![0], vec![1, 2, 3]]),
    ];
    for (name, spectrum, sets) in hand {
        let (p, c) = fixture(name);
        match critical_report(&p, &c, 1e-12) {
            Ok(r) if r.is_critical && r.max_residual() <= 1e-12 => {}
            other => problems.push(format!("{name}: {other:?}")),
        }
        match classify(&p, &c, 1e-12, 1e-6) {
            Ok(cls) => {
                let values_ok = cls.distinct_eigenvalues.len() == spectrum.len()
                    && cls
                        .distinct_eigenvalues
                        .iter()
                        .zip(&spectrum)
                        .all(|(l, w)| close(*l, Scalar::new(*w, 0.0), 1e-12));
                if !values_ok || cls.index_sets != sets {
                    problems.push(format!(
                        "{name}: {:?} {:?}",
                        cls.distinct_eigenvalues, cls.index_sets
                    ));
                }
                for (l, idx) in cls.distinct_eigenvalues.iter().zip(&cls.index_sets) {
                    match check_a_generalized_dual(&p, idx, *l, 1e-10) {
                        Ok(g) if g.passes => {}
                        other => problems.push(format!("{name}: cluster {l}: {other:?}")),
                    }
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    let (p, c) = fixture("FX-MIX");
    match decompose(&p, &c, 1e-10, 1e-6) {
        Ok(r) => {
            if r.i != vec![1, 2, 3] || !close(r.a, Scalar::new(1.5, 0.0), 1e-12) {
                problems.push(format!("FX-MIX: I = {:?}, A = {}", r.i, r.a));
            }
            if !r.within_tol || r.max_residual > 1e-10 {
                problems.push(format!("FX-MIX: max residual {:e}", r.max_residual));
            }
            match r
                .normalized_groups
                .iter()
                .find(|g| close(g.eigenvalue, Scalar::new(2.0, 0.0), 1e-12))
            {
                Some(g) if g.biorthogonality_residual <= 1e-10 && g.indices == vec![0] => {}
                other => problems.push(format!("FX-MIX: normalized group {other:?}")),
            }
        }
        Err(e) => problems.push(format!("FX-MIX decompose: {e}")),
    }
    verdict(7, "critical structure", &problems);
}

#[test]
fn criterion_08_optimizer_reaches_critical_pairs() {
    let mut problems = Vec::new();
    let c = ConstraintSpec::from_real(&[1.0, 1.0, 1.0]).unwrap();
    let cfg = OptimizerConfig {
        mode: Mode::CriticalSearch,
        seed: 7,
        max_iters: 5000,
        restarts: 8,
        ..OptimizerConfig::default()
    };
    match search(&c, Field::Real, 2, &cfg) {
        Ok(r) => {
            if r.status != Status::Converged || r.final_merit > 1e-10 || r.iterations > 5000 {
                problems.push(format!(
                    "{:?} after {} iterations, merit {:e}",
                    r.status, r.iterations, r.final_merit
                ));
            }
            verify_structure("search result", r.pair(), &c, 1e-6, &mut problems);
            match decompose(r.pair(), &c, 1e-6, 1e-6) {
                Ok(d) if d.within_tol => {}
                Ok(d) => problems.push(format!("decompose residual {:e}", d.max_residual)),
                Err(e) => problems.push(format!("decompose: {e}")),
            }
        }
        Err(e) => problems.push(e.to_string()),
    }
    verdict(8, "optimizer reaches critical pairs", &problems);
}

#[test]
fn criterion_09_dual_pair_round_trip() {
    let mut problems = Vec::new();
    let mut dual_fixtures = 0;
    for name in fixtures::FIXTURE_NAMES {
        let (p, c) = fixture(name);
        if p.is_dual_pair(1e-12).is_dual {
            dual_fixtures += 1;
            match corollary_check(&p, &c, 1e-12) {
                Ok(r) if r.verdict == Verdict::ConditionsMet => {}
                other => problems.push(format!("{name}: {other:?}")),
            }
        }
    }
    if dual_fixtures == 0 {
        problems.push("no dual-pair fixture".into());
    }

    let c = ConstraintSpec::from_real(&[0.5; 4]).unwrap();
    let cfg = OptimizerConfig {
        mode: Mode::CriticalSearch,
        seed: 3,
        restarts: 8,
        ..OptimizerConfig::default()
    };
    match search(&c, Field::Real, 2, &cfg) {
        Ok(r) => {
            let dual = r.pair().is_dual_pair(1e-6);
            if !dual.is_dual || dual.deviation > 1e-6 {
                problems.push(format!(
                    "search: {:?}, deviation {:e}",
                    r.status, dual.deviation
                ));
            }
            match corollary_check(r.pair(), &c, 1e-6) {
                Ok(rep) if rep.is_dual_pair && rep.verdict == Verdict::ConditionsMet => {}
                other => problems.push(format!("search corollary: {other:?}")),
            }
        }
        Err(e) => problems.push(e.to_string()),
    }

    for (alpha, expect) in [(vec![1.0, 1.0], true), (vec![1.0, 0.5], false)] {
        let a: Vec<Scalar> = alpha.iter().map(|x| Scalar::new(*x, 0.0)).collect();
        match alpha_only_report(&a, 2, 3, 1e-9) {
            Ok(r) if r.alpha_sum_equals_d == expect && r.n_exceeds_d => {}
            other => problems.push(format!("alpha {alpha:?}: {other:?}")),
        }
    }
    verdict(9, "dual-pair round trip", &problems);
}

#[test]
fn criterion_10_divergence_handling() {
    let mut problems = Vec::new();
    let c = ConstraintSpec::from_real(&[1.0, 1.0]).unwrap();
    let cfg = OptimizerConfig {
        mode: Mode::PotentialDescent,
        objective: Objective::RealPart,
        divergence_bound: 1e6,
        ..OptimizerConfig::default()
    };
    match search(&c, Field::Complex, 1, &cfg) {
        Ok(r) if r.status == Status::Diverged => {}
        Ok(r) => problems.push(format!(
            "terminated with {:?} after {} iterations at FP = {}",
            r.status, r.iterations, r.fp_final
        )),
        Err(e) => problems.push(e.to_string()),
    }
    verdict(10, "divergence handling", &problems);
}

fn mixfp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixfp"))
        .args(args)
        .output()
        .expect("run mixfp");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn criterion_11_cli_contract() {
    let mut problems = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    for name in fixtures::FIXTURE_NAMES {
        let (code, text) = mixfp(&["gen", "fixture", name]);
        let reparsed = PairDocument::parse(&text).map(|d| d.to_json());
        if code != 0 || reparsed.as_deref().ok() != Some(text.as_str()) {
            problems.push(format!("{name}: stdout does not round-trip"));
        }
        let file = dir.path().join(format!("{name}.json"));
        let (code, _) = mixfp(&["gen", "fixture", name, "--output", path_str(&file)]);
        let written = std::fs::read_to_string(&file).unwrap_or_default();
        let rebuilt = PairDocument::parse(&written)
            .and_then(|d| d.to_pair())
            .map(|(p, a)| PairDocument::from_pair(&p, a.as_ref()).to_json());
        if code != 0 || written != text || rebuilt.as_deref().ok() != Some(written.as_str()) {
            problems.push(format!("{name}: file does not round-trip"));
        }
    }

    let fx = |n: &str| {
        dir.path()
            .join(format!("{n}.json"))
            .to_str()
            .unwrap()
            .to_string()
    };
    let truncated = dir.path().join("truncated.json");
    std::fs::write(
        &truncated,
        &std::fs::read_to_string(fx("FX-MB")).unwrap()[..40],
    )
    .unwrap();
    let perturbed = dir.path().join("perturbed.json");
    let (code, _) = mixfp(&[
        "gen",
        "random",
        "--field",
        "R",
        "--d",
        "2",
        "--N",
        "3",
        "--seed",
        "4",
        "--alpha",
        "1,1,1",
        "--output",
        path_str(&perturbed),
    ]);
    assert_eq!(code, 0);
    let missing = dir.path().join("missing.json");
    let (t, p, m) = (
        path_str(&truncated),
        path_str(&perturbed),
        path_str(&missing),
    );

    let matrix: Vec<(Vec<String>, i32)> = vec![
        (vec!["gen", "fixture", "FX-NOPE"], 2),
        (
            vec![
                "gen", "random", "--field", "Q", "--d", "2", "--N", "3", "--seed", "1",
            ],
            2,
        ),
        (
            vec![
                "gen", "random", "--field", "R", "--d", "0", "--N", "3", "--seed", "1",
            ],
            2,
        ),
        (vec!["potential", &fx("FX-D1")], 0),
        (vec!["potential", &fx("FX-SCALE")], 0),
        (vec!["potential", &fx("FX-IMAG")], 0),
        (vec!["potential", t], 2),
        (vec!["potential", m], 2),
        (vec!["check", &fx("FX-MB")], 0),
        (vec!["check", &fx("FX-ONB2")], 0),
        (vec!["check", p], 1),
        (vec!["check", &fx("FX-MB"), "--alpha", "1,1"], 2),
        (vec!["check", &fx("FX-MB"), "--alpha", "2,2,2"], 2),
        (vec!["check", t], 2),
        (vec!["decompose", &fx("FX-MIX")], 0),
        (vec!["decompose", &fx("FX-ONB2")], 0),
        (vec!["decompose", p], 2),
        (vec!["corollary", &fx("FX-ONB2")], 0),
        (vec!["corollary", &fx("FX-IMAG")], 1),
        (vec!["corollary", &fx("FX-MB")], 1),
        (
            vec!["corollary", "--alpha-only", "1,1", "--d", "2", "--N", "3"],
            0,
        ),
        (
            vec!["corollary", "--alpha-only", "1,0.5", "--d", "2", "--N", "3"],
            1,
        ),
        (
            vec!["corollary", "--alpha-only", "1,x", "--d", "2", "--N", "3"],
            2,
        ),
        (
            vec![
                "optimize", "--alpha", "1,1,1", "--field", "R", "--d", "2", "--mode", "critical",
                "--seed", "7",
            ],
            0,
        ),
        (
            vec![
                "optimize",
                "--alpha",
                "1,1",
                "--field",
                "R",
                "--d",
                "2",
                "--mode",
                "potential",
                "--divergence-bound",
                "1e6",
            ],
            1,
        ),
        (
            vec![
                "optimize",
                "--alpha",
                "1,1,1",
                "--field",
                "R",
                "--d",
                "2",
                "--max-iters",
                "1",
            ],
            1,
        ),
        (
            vec!["optimize", "--alpha", "1,0,1", "--field", "R", "--d", "2"],
            2,
        ),
        (
            vec![
                "optimize",
                "--alpha",
                "1,1",
                "--field",
                "R",
                "--d",
                "2",
                "--step=-1",
            ],
            2,
        ),
        (vec!["frobnicate"], 2),
    ]
    .into_iter()
    .map(|(a, c)| (a.into_iter().map(String::from).collect(), c))
    .collect();
    for (args, expect) in &matrix {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, stdout) = mixfp(&argv);
        if code != *expect {
            problems.push(format!("{argv:?}: exit {code}, expected {expect}"));
        }
        if argv[0] != "gen" && argv[0] != "frobnicate" {
            match serde_json::from_str::<serde_json::Value>(&stdout) {
                Ok(v) if v.get("inputs_digest").is_some() && v.get("tolerances").is_some() => {}
                _ => problems.push(format!("{argv:?}: stdout is not a report")),
            }
        }
    }
    verdict(11, "CLI contract", &problems);
}
