use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use mixed_frame::Error;

/// Process exit codes shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Failed = 1,
    Invalid = 2,
    Numerical = 3,
}

impl Exit {
    pub fn status(self) -> &'static str {
        match self {
            Exit::Ok => "OK",
            Exit::Failed => "FAILED",
            Exit::Invalid => "INVALID",
            Exit::Numerical => "NUMERICAL_FAILURE",
        }
    }

    pub fn for_error(e: &Error) -> Exit {
        match e {
            Error::NoConvergence { .. }
            | Error::NotSquare { .. }
            | Error::ZeroDirection
            | Error::DegeneratePairing { .. }
            | Error::AmbiguousClusters { .. }
            | Error::Consistency(_) => Exit::Numerical,
            Error::DimensionMismatch { .. }
            | Error::NonFinite(_)
            | Error::OrderTooLarge(_)
            | Error::ZeroAlpha { .. }
            | Error::ZeroVector { .. }
            | Error::ConstraintViolation { .. }
            | Error::NotCritical(_)
            | Error::Invalid(_) => Exit::Invalid,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CliReport {
    pub command: String,
    pub inputs_digest: String,
    pub outputs: Value,
    pub tolerances: Map<String, Value>,
    pub status: String,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Report body for a failed command; a not-critical error carries its
/// critical-pair report.
pub fn error_outputs(e: &Error) -> Value {
    let mut out = Map::new();
    out.insert("error".into(), Value::String(e.to_string()));
    if let Error::NotCritical(report) = e {
        out.insert(
            "critical_report".into(),
            serde_json::to_value(report).expect("report serialises"),
        );
    }
    Value::Object(out)
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serialises")
}
