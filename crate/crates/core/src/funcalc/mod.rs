//! Finite-section experiments for the functional calculus modulo Schatten
//! ideals on the Hardy-space module: discrepancies `T_{f(φ)} − f(T_φ)` against
//! their majorant bounds, the exponential estimate, trace identities,
//! perturbations and the index of `f(T_a)`.

mod bounds;
mod index;
mod traces;

pub use bounds::{
    calculus_discrepancy, commutator_norm, exp_unitary_estimate, majorant_second_derivative, perturbation_schatten,
    sup_norm, DiscrepancyReports, ExpEstimateOptions,
};
pub use index::{index_of_composition, IndexComparison};
pub use traces::{corollary_consistency, trace_commutator_identity, CorollaryCheck, TraceIdentity};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::sections::SectionError;
use crate::symbols::SymbolError;

#[derive(Debug, Clone, Error)]
pub enum FuncalcError {
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("majorant series tail {tail:.3e} at x = {x} is not negligible")]
    DivergentMajorant { x: f64, tail: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A measured norm against a bound assembled from named constants.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub label: String,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
    pub constants: BTreeMap<String, f64>,
    pub dims: Vec<usize>,
    /// Measured value at each dimension.
    pub history: Vec<(usize, f64)>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(label: impl Into<String>, history: Vec<(usize, f64)>, bound: f64, constants: BTreeMap<String, f64>) -> Self {
        let measured = history.last().map(|h| h.1).unwrap_or(0.0);
        let margin = bound - measured;
        Self {
            label: label.into(),
            measured,
            bound,
            margin,
            constants,
            dims: history.iter().map(|h| h.0).collect(),
            history,
            pass: margin >= -tol_slack(bound),
            notes: Vec::new(),
        }
    }

    /// Recomputes `pass` from the stored fields.
    pub fn recheck(&self) -> bool {
        self.bound - self.measured >= -tol_slack(self.bound)
    }
}

/// `1e−9 + 1e−6·bound`.
pub fn tol_slack(bound: f64) -> f64 {
    1e-9 + 1e-6 * bound.abs()
}
