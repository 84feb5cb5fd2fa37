//! Subcommand implementations. Each one prints a single JSON report on
//! stdout, a one-line summary on stderr, and returns the exit code.

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use mixed_frame::frames::{fixtures, PairDocument};
use mixed_frame::optimizer::{self, Mode, Objective, OptimizerConfig, Status};
use mixed_frame::potential::{self, fp_direct, fp_swap, fp_trace};
use mixed_frame::structure::{self, Verdict};
use mixed_frame::{ConstraintSpec, Error, Field, FramePair, Result, Scalar};

use report::{digest, error_outputs, to_value, CliReport, Exit};

/// Loose cross-check between the trace and the eigenvalue sum; the
/// command's own `--tol` applies to the direct-versus-trace gap.
const TRACE_EIGEN_TOL: f64 = 1e-6;

fn emit(
    command: &str,
    inputs_digest: &str,
    outputs: Value,
    tolerances: Value,
    exit: Exit,
    summary: &str,
) -> Exit {
    let tolerances = match tolerances {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    let report = CliReport {
        command: command.to_string(),
        inputs_digest: inputs_digest.to_string(),
        outputs,
        tolerances,
        status: exit.status().to_string(),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serialises");
    // a closed stdout (for instance `| head`) is not an error of the command
    let _ = writeln!(std::io::stdout(), "{text}");
    eprintln!("{command}: {} {summary}", exit.status());
    exit
}

fn run(
    command: &str,
    inputs_digest: &str,
    tolerances: Value,
    body: impl FnOnce() -> Result<(Value, Exit, String)>,
) -> Exit {
    match body() {
        Ok((outputs, exit, summary)) => {
            emit(command, inputs_digest, outputs, tolerances, exit, &summary)
        }
        Err(e) => {
            let exit = Exit::for_error(&e);
            emit(
                command,
                inputs_digest,
                error_outputs(&e),
                tolerances,
                exit,
                &e.to_string(),
            )
        }
    }
}

fn read_input(path: &Path) -> Result<(Vec<u8>, String)> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let hash = digest(&bytes);
    Ok((bytes, hash))
}

fn load_pair(bytes: &[u8]) -> Result<(FramePair, Option<ConstraintSpec>)> {
    let text =
        std::str::from_utf8(bytes).map_err(|_| Error::Invalid("input is not UTF-8".into()))?;
    PairDocument::parse(text)?.to_pair()
}

pub fn parse_alpha(s: &str) -> Result<Vec<Scalar>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Scalar>()
                .ok()
                .filter(|z| z.re.is_finite() && z.im.is_finite())
                .ok_or_else(|| Error::Invalid(format!("cannot parse alpha entry {t:?}")))
        })
        .collect()
}

/// `--alpha` if given, else the document's own.
fn resolve_alpha(flag: Option<&str>, embedded: Option<ConstraintSpec>) -> Result<ConstraintSpec> {
    match (flag, embedded) {
        (Some(s), _) => ConstraintSpec::new(parse_alpha(s)?),
        (None, Some(c)) => Ok(c),
        (None, None) => Err(Error::Invalid(
            "alpha is required (flag or document)".into(),
        )),
    }
}

/// Reads, hashes and parses the input document before running `body`; an
/// unreadable file is reported with an empty digest.
fn with_input(
    command: &str,
    input: &Path,
    tolerances: Value,
    body: impl FnOnce(FramePair, Option<ConstraintSpec>) -> Result<(Value, Exit, String)>,
) -> Exit {
    let (bytes, hash) = match read_input(input) {
        Ok(v) => v,
        Err(e) => return run(command, "", tolerances, || Err(e)),
    };
    run(command, &hash, tolerances, || {
        let (pair, alpha) = load_pair(&bytes)?;
        body(pair, alpha)
    })
}

fn write_document(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn emit_document(command: &str, inputs_digest: &str, text: String, output: Option<&Path>) -> Exit {
    match output {
        None => {
            let _ = write!(std::io::stdout(), "{text}");
            eprintln!("{command}: OK");
            Exit::Ok
        }
        Some(path) => run(command, inputs_digest, json!({}), || {
            write_document(path, &text)?;
            Ok((
                json!({"path": path.display().to_string(), "document_digest": digest(text.as_bytes())}),
                Exit::Ok,
                format!("wrote {}", path.display()),
            ))
        }),
    }
}

pub fn gen_fixture(name: &str, output: Option<&Path>) -> Exit {
    let hash = digest(name.as_bytes());
    match fixtures::by_name(name) {
        Some((pair, alpha)) => emit_document(
            "gen",
            &hash,
            PairDocument::from_pair(&pair, Some(&alpha)).to_json(),
            output,
        ),
        None => run("gen", &hash, json!({}), || {
            Err(Error::Invalid(format!(
                "unknown fixture {name:?}; expected one of {:?}",
                fixtures::FIXTURE_NAMES
            )))
        }),
    }
}

pub fn gen_random(
    field: &str,
    d: usize,
    n: usize,
    seed: u64,
    alpha: Option<&str>,
    output: Option<&Path>,
) -> Exit {
    let request = format!(
        "random field={field} d={d} N={n} seed={seed} alpha={}",
        alpha.unwrap_or("")
    );
    let hash = digest(request.as_bytes());
    let built = (|| -> Result<String> {
        let field: Field = field.parse()?;
        let pair = FramePair::random(field, d, n, seed)?;
        match alpha {
            None => Ok(PairDocument::from_pair(&pair, None).to_json()),
            Some(s) => {
                let c = ConstraintSpec::new(parse_alpha(s)?)?;
                if field == Field::Real && !c.is_real() {
                    return Err(Error::Invalid(
                        "complex alpha requires the complex field".into(),
                    ));
                }
                let pair =
                    pair.retract_to_constraint(&c, mixed_frame::frames::DEFAULT_DEGENERACY_EPS)?;
                Ok(PairDocument::from_pair(&pair, Some(&c)).to_json())
            }
        }
    })();
    match built {
        Ok(text) => emit_document("gen", &hash, text, output),
        Err(e) => run("gen", &hash, json!({}), || Err(e)),
    }
}

pub fn potential(input: &Path, tol: f64) -> Exit {
    with_input("potential", input, json!({"tol": tol}), |pair, _| {
        let direct = fp_direct(&pair);
        let trace = fp_trace(&pair, TRACE_EIGEN_TOL)?;
        let swap = fp_swap(&pair);
        let discrepancy = (direct.value - trace.value).norm();
        let limit = tol * (1.0 + direct.value.norm());
        let bf = (pair.f() == pair.g()).then(|| potential::bf_potential(pair.f()));
        let exit = if discrepancy <= limit {
            Exit::Ok
        } else {
            Exit::Failed
        };
        Ok((
            json!({
                "direct": to_value(&direct),
                "trace": to_value(&trace),
                "swap": to_value(&swap),
                "discrepancy": discrepancy,
                "discrepancy_limit": limit,
                "bf_potential": bf,
            }),
            exit,
            format!("FP = {} (discrepancy {discrepancy:e})", direct.value),
        ))
    })
}

pub fn check(input: &Path, alpha: Option<&str>, tol: f64, class_tol: f64) -> Exit {
    with_input(
        "check",
        input,
        json!({"tol": tol, "class_tol": class_tol}),
        |pair, embedded| {
            let c = resolve_alpha(alpha, embedded)?;
            let critical = structure::critical_report(&pair, &c, tol)?;
            let bound = potential::bound_report(&pair, &c, class_tol)?;
            let scaled = potential::scaled_identity_check(&pair, &c, tol)?;
            let applicability = structure::single_part_applicability(&pair, tol)?;
            let exit = if critical.is_critical {
                Exit::Ok
            } else {
                Exit::Failed
            };
            let summary = format!(
                "critical = {} (max residual {:e})",
                critical.is_critical,
                critical.max_residual()
            );
            Ok((
                json!({
                    "critical": to_value(&critical),
                    "bound": to_value(&bound),
                    "scaled_identity": to_value(&scaled),
                    "applicability": to_value(&applicability),
                }),
                exit,
                summary,
            ))
        },
    )
}

pub fn decompose(input: &Path, alpha: Option<&str>, tol: f64, cluster_tol: f64) -> Exit {
    with_input(
        "decompose",
        input,
        json!({"tol": tol, "cluster_tol": cluster_tol}),
        |pair, embedded| {
            let c = resolve_alpha(alpha, embedded)?;
            let classification = structure::classify(&pair, &c, tol, cluster_tol)?;
            let decomposition = structure::decompose(&pair, &c, tol, cluster_tol)?;
            let exit = if decomposition.within_tol {
                Exit::Ok
            } else {
                Exit::Failed
            };
            let summary = format!(
                "I = {:?}, A = {}, max residual {:e}",
                decomposition.i.iter().map(|m| m + 1).collect::<Vec<_>>(),
                decomposition.a,
                decomposition.max_residual
            );
            Ok((
                json!({
                    "classification": to_value(&classification),
                    "decomposition": to_value(&decomposition),
                }),
                exit,
                summary,
            ))
        },
    )
}

pub fn corollary(input: &Path, alpha: Option<&str>, tol: f64) -> Exit {
    with_input("corollary", input, json!({"tol": tol}), |pair, embedded| {
        let c = resolve_alpha(alpha, embedded)?;
        let report = structure::corollary_check(&pair, &c, tol)?;
        let exit = if report.verdict == Verdict::ConditionsMet {
            Exit::Ok
        } else {
            Exit::Failed
        };
        let summary = format!("{:?}, dual = {}", report.verdict, report.is_dual_pair);
        Ok((to_value(&report), exit, summary))
    })
}

pub fn corollary_alpha_only(alpha: &str, d: usize, n: usize, tol: f64) -> Exit {
    let hash = digest(format!("alpha-only alpha={alpha} d={d} N={n}").as_bytes());
    run("corollary", &hash, json!({"tol": tol}), || {
        let report = structure::alpha_only_report(&parse_alpha(alpha)?, d, n, tol)?;
        let ok = report.alpha_sum_equals_d && report.n_exceeds_d;
        let summary = format!("sum alpha = {}, d = {d}, N = {n}", report.alpha_sum);
        Ok((
            to_value(&report),
            if ok { Exit::Ok } else { Exit::Failed },
            summary,
        ))
    })
}

pub struct OptimizeRequest {
    pub alpha: String,
    pub field: String,
    pub d: usize,
    pub config: Option<PathBuf>,
    pub mode: Option<Mode>,
    pub objective: Option<Objective>,
    pub step: Option<f64>,
    pub max_iters: Option<usize>,
    pub grad_tol: Option<f64>,
    pub merit_tol: Option<f64>,
    pub divergence_bound: Option<f64>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub verify: bool,
    pub tol: f64,
    pub cluster_tol: f64,
    pub output: Option<PathBuf>,
}

impl OptimizeRequest {
    fn config(&self) -> Result<OptimizerConfig> {
        let mut cfg = match &self.config {
            None => OptimizerConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Invalid(format!("bad optimizer config: {e}")))?
            }
        };
        if let Some(v) = self.mode {
            cfg.mode = v;
        }
        if let Some(v) = self.objective {
            cfg.objective = v;
        }
        if let Some(v) = self.step {
            cfg.step_size = v;
        }
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
        if let Some(v) = self.grad_tol {
            cfg.grad_tol = v;
        }
        if let Some(v) = self.merit_tol {
            cfg.merit_tol = v;
        }
        if let Some(v) = self.divergence_bound {
            cfg.divergence_bound = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.restarts {
            cfg.restarts = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn optimize(req: OptimizeRequest) -> Exit {
    let cfg = req.config();
    let tolerances = match &cfg {
        Ok(c) => json!({
            "grad_tol": c.grad_tol,
            "merit_tol": c.merit_tol,
            "divergence_bound": c.divergence_bound,
            "tol": req.tol,
            "cluster_tol": req.cluster_tol,
        }),
        Err(_) => json!({"tol": req.tol, "cluster_tol": req.cluster_tol}),
    };
    let request = json!({
        "alpha": req.alpha,
        "field": req.field,
        "d": req.d,
        "config": cfg.as_ref().ok(),
    });
    let hash = digest(request.to_string().as_bytes());
    run("optimize", &hash, tolerances, || {
        let cfg = cfg?;
        let field: Field = req.field.parse()?;
        let c = ConstraintSpec::new(parse_alpha(&req.alpha)?)?;
        let result = optimizer::search(&c, field, req.d, &cfg)?;
        if let Some(path) = &req.output {
            write_document(
                path,
                &PairDocument::from_pair(result.pair(), Some(&c)).to_json(),
            )?;
        }
        let exit = match result.status {
            Status::Converged => Exit::Ok,
            Status::MaxIters | Status::Diverged => Exit::Failed,
            Status::DegenerateRetraction => Exit::Numerical,
        };
        let mut outputs = json!({"config": to_value(&cfg), "search": to_value(&result)});
        if req.verify && result.status == Status::Converged {
            let verification = match structure::decompose(
                result.pair(),
                &c,
                req.tol,
                req.cluster_tol,
            ) {
                Ok(dec) => json!({
                    "critical": to_value(&structure::critical_report(result.pair(), &c, req.tol)?),
                    "decomposition": to_value(&dec),
                }),
                Err(e) => error_outputs(&e),
            };
            outputs["verification"] = verification;
        }
        let summary = format!(
            "{:?} after {} iterations (run {}), merit {:e}, FP = {}",
            result.status, result.iterations, result.restart, result.final_merit, result.fp_final
        );
        Ok((outputs, exit, summary))
    })
}
