//! Mixed frame potential of finite frame pairs.
//!
//! For sequences `F = {f_m}` and `G = {g_m}` in a `d`-dimensional space over
//! ℝ or ℂ the mixed frame potential is
//! `FP(F, G) = Σ_{m,n} <f_m, g_n><f_n, g_m> = Tr((TU*)²)`, where `TU*` is the
//! mixed frame operator `f ↦ Σ <f, g_m> f_m`. The crate evaluates it, checks
//! its spectral bounds, detects and decomposes critical pairs on the set of
//! pairs with prescribed `<f_m, g_m> = α_m`, and searches that set for
//! critical pairs and dual frames.

pub mod error;
pub mod frames;
pub mod linalg;
pub mod optimizer;
pub mod potential;
pub mod serde_util;
pub mod structure;

pub use error::{Error, Result};
pub use frames::{ConstraintSpec, Field, FramePair, FrameSequence, OperatorSide};
pub use linalg::{Matrix, Scalar};
