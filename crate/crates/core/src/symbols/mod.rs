//! Circle symbols: band-limited Fourier series, exact rational functions and
//! their products with exponentials, plus the operations the torsion
//! evaluators need (Riesz projections, winding numbers, logarithms,
//! Blaschke factorizations).

mod blaschke;
mod fft;
mod fourier;
mod logsplit;
mod polynomial;
mod rational;
mod smooth;
mod winding;

pub use blaschke::{blaschke_factorize, factor_on_spectrum, BlaschkeFactorization, SpectralRegion};
pub use fft::{coefficients_from_samples, sample_grid};
pub use fourier::{FourierSymbol, Inversion, Part, SamplingOptions, DEFAULT_TRIM};
pub use logsplit::{log_split, log_split_with, LogSplit, LogSplitOptions};
pub use polynomial::{grouped_roots, polynomial_roots};
pub use rational::{LaurentExpansion, RationalSymbol};
pub use smooth::SmoothSymbol;
pub use winding::{
    continuous_log, unwrap_grid_size, winding_number, winding_number_sampled, ContinuousLog,
};

use num_complex::Complex64;
use thiserror::Error;

/// Root matching tolerance used when comparing zeros, poles and evaluation points.
pub const DELTA_ROOT: f64 = 1e-9;
/// Margin that keeps zeros and poles away from the unit circle.
pub const DELTA_CIRCLE: f64 = 1e-6;

/// Tolerances for root matching and circle regularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub root: f64,
    pub circle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { root: DELTA_ROOT, circle: DELTA_CIRCLE }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SymbolError {
    #[error("pole at {pole} lies on the evaluation point")]
    PoleOnCircle { pole: Complex64 },
    #[error("symbol vanishes on the unit circle (min modulus {min_modulus:.3e})")]
    VanishesOnCircle { min_modulus: f64 },
    #[error("zero or pole {point} lies within {margin:.1e} of the unit circle")]
    NotCircleRegular { point: Complex64, margin: f64 },
    #[error("argument increment {increment:.3} between adjacent grid points exceeds pi/2 on a {grid}-point grid")]
    UnderResolved { increment: f64, grid: usize },
    #[error("argument increment {turns:.4} turns is not within 0.1 of an integer")]
    NonIntegerWinding { turns: f64 },
    #[error("reconstruction residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    ReconstructionResidual { residual: f64, tol: f64 },
    #[error("symbol has a pole at {pole} inside the closed disk; not in H-infinity")]
    NotHInfinity { pole: Complex64 },
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("sampling did not resolve the coefficients with {grid} points")]
    Unresolved { grid: usize },
    #[error("{0}")]
    Domain(String),
}

/// A function on the unit circle that can be sampled together with its
/// logarithmic derivative `d/dθ log f`.
pub trait CircleFunction {
    fn value_at(&self, theta: f64) -> Complex64;

    /// `f'(θ) / f(θ)` with the derivative taken in `θ`.
    fn log_derivative_at(&self, theta: f64) -> Complex64;

    /// Rough number of significant Fourier modes, used to size sampling grids.
    fn resolution_hint(&self) -> usize;
}

/// Principal-branch unit-circle point `e^{iθ}`.
#[inline]
pub fn circle_point(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
