//! Joint torsion `τ(T_f, T_g)` of Toeplitz pairs.
//!
//! | method       | input                         | error estimate            |
//! |--------------|-------------------------------|---------------------------|
//! | `tame`       | rational symbols              | 0 (exact)                 |
//! | `det`        | any nonvanishing smooth pair  | change along dim schedule |
//! | `integral`   | any nonvanishing smooth pair  | change under grid doubling|
//! | `factorized` | rational × exp(trig) symbols  | rounding level            |
//! | `exp`        | winding-zero pairs            | change under grid doubling|
//! | `lefschetz`  | `T_φ` against `T_z − λ`       | 0 (closed form)           |

mod det;
mod exponential;
mod factorized;
mod integral;
mod lefschetz;
mod route;
mod tame;

pub use det::{torsion_det, torsion_det_operands, torsion_det_with};
pub use exponential::{
    berger_shaw, berger_shaw_coefficients, berger_shaw_integral, exp_torsion, exp_torsion_smooth,
    positive_pair_phase, BergerShaw, PairPhase,
};
pub use factorized::{factorize_symbol, torsion_factorized, SymbolFactors};
pub use integral::{torsion_integral, IntegralOptions};
pub use lefschetz::{functional_factorization, lefschetz_torsion, FactorizationSides, KernelSpec};
pub use route::{applicable_methods, compute, RouteOptions};
pub use tame::{tame_symbol, tame_symbol_meromorphic, torsion_tame, Meromorphic, TameSymbolValue};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sections::SectionError;
use crate::symbols::SymbolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Det,
    Tame,
    Integral,
    Factorized,
    Exp,
    Lefschetz,
}

impl Method {
    pub const ALL: [Method; 6] =
        [Method::Det, Method::Tame, Method::Integral, Method::Factorized, Method::Exp, Method::Lefschetz];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Tame => "tame",
            Method::Integral => "integral",
            Method::Factorized => "factorized",
            Method::Exp => "exp",
            Method::Lefschetz => "lefschetz",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown method '{s}'"))
    }
}

/// A torsion value with its provenance.
#[derive(Debug, Clone)]
pub struct TorsionResult {
    pub value: Complex64,
    pub method: Method,
    /// Dimensions or grid sizes visited.
    pub dims: Vec<usize>,
    pub err_estimate: f64,
    pub notes: Vec<String>,
    /// Value at each visited dimension.
    pub history: Vec<(usize, Complex64)>,
}

impl TorsionResult {
    pub fn exact(value: Complex64, method: Method) -> Self {
        Self { value, method, dims: vec![], err_estimate: 0.0, notes: vec![], history: vec![] }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Agreement tolerance used when comparing with another result:
    /// `max(1e−6, 3·err)` over both estimates.
    pub fn tolerance_with(&self, other: &TorsionResult) -> f64 {
        1e-6f64.max(3.0 * self.err_estimate.max(other.err_estimate))
    }
}

#[derive(Debug, Clone, Error)]
pub enum TorsionError {
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error("method not applicable: {0}")]
    NotApplicable(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
