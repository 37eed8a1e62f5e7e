//! Joint torsion of almost-commuting Toeplitz operators.
//!
//! The crate computes `τ(T_f, T_g)` for pairs of Toeplitz operators on the
//! Hardy space by several independent routes and cross-checks them:
//!
//! * [`torsion::torsion_det`]: Fredholm determinant of the stabilized
//!   multiplicative commutator `det(Ã B̃ Ã⁻¹ B̃⁻¹)` on finite sections,
//! * [`torsion::torsion_tame`]: product of Tate tame symbols over the disk,
//! * [`torsion::torsion_integral`]: the closed contour-integral formula,
//! * [`torsion::torsion_factorized`]: discrete (tame) times continuous
//!   (exponential) parts after an inner/outer and Riesz splitting,
//! * [`torsion::exp_torsion`]: `τ(e^A, e^B) = e^{tr[A,B]}` with the trace from
//!   the Berger–Shaw integral.
//!
//! Around those sit the finite-section machinery ([`sections`]), the symbol
//! algebra ([`symbols`]), a laboratory for functional-calculus estimates
//! modulo Schatten ideals ([`funcalc`]) and the command-line surface
//! ([`cli`], [`verify`]).

pub mod cli;
pub mod function;
pub mod funcalc;
pub mod linalg;
pub mod sections;
pub mod symbols;
pub mod torsion;
pub mod verify;

pub use num_complex::Complex64;

pub use function::FunctionSpec;
pub use sections::{OperatorSection, Word};
pub use symbols::{FourierSymbol, RationalSymbol, SmoothSymbol};
pub use torsion::{Method, TorsionResult};

/// Shorthand constructor for complex literals.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
