//! Finite sections of Hardy-space operators.
//!
//! A Toeplitz operator `T_φ` is represented by its leading `N × N` corner
//! with entries `c_{j−k}`. Operator words (products, inverses, functions of
//! sections) are evaluated at a padded dimension `N + pad` and cut back to
//! the leading corner, which keeps truncation artifacts away from the part
//! that is read off. Traces and determinants of infinite operators are taken
//! over such corners: the trace of a finite matrix commutator is always
//! zero, so only a corner sees the trace of the infinite one.

mod det;
mod matfun;
mod stabilize;
mod word;

pub use det::{commutator_head_det, fredholm_det, DetEstimate, DetOptions, PadRule, Schedule};
pub(crate) use det::run_schedule;
pub use matfun::{matrix_function, MatrixFunctionMode};
pub use stabilize::{numerical_index, stabilize, stabilize_blocks, Operand, StabilizedPair, SIGMA_OK, SIGMA_THRESH};
pub use word::{compose_padded, Word, WordFactor};

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, CMat, LinalgError};
use crate::symbols::{FourierSymbol, SymbolError};

#[derive(Debug, Clone, Error)]
pub enum SectionError {
    #[error("padded section of factor {factor} is singular (pivot ratio {ratio:.3e})")]
    SingularFactor { factor: String, ratio: f64 },
    #[error("section is not Hermitian within {tol:.1e}")]
    NotHermitian { tol: f64 },
    #[error("contour radius {radius:.4} exceeds the analyticity radius {limit:.4} of {function}")]
    SpectrumNotEnclosed { radius: f64, limit: f64, function: String },
    #[error("quadrature did not converge: change {change:.3e} at {nodes} nodes")]
    QuadratureNotConverged { nodes: usize, change: f64 },
    #[error("power series tail {tail:.3e} at norm {norm:.3} is not negligible")]
    SeriesTail { tail: f64, norm: f64 },
    #[error("function {0} cannot be applied in the requested mode")]
    UnsupportedFunction(String),
    #[error("kernel/cokernel dimensions differ ({region}: kernel {kernel}, cokernel {cokernel})")]
    StabilizationMismatch { region: &'static str, kernel: usize, cokernel: usize },
    #[error("stabilized section has smallest singular value {sigma_min:.3e} below {sigma_ok:.1e}")]
    StabilizationFailed { sigma_min: f64, sigma_ok: f64 },
    #[error("determinant sequence diverges: {history:?}")]
    NonConvergent { history: Vec<(usize, Complex64)> },
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Dense section together with where it came from.
#[derive(Clone, Debug)]
pub struct OperatorSection {
    pub entries: CMat,
    pub pad_used: usize,
    pub provenance: String,
}

impl OperatorSection {
    pub fn new(entries: CMat, pad_used: usize, provenance: impl Into<String>) -> Self {
        Self { entries, pad_used, provenance: provenance.into() }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j, k)]
    }
}

/// `rows × cols` matrix with entries `c_{j−k + offset}`.
pub(crate) fn coefficient_matrix(s: &FourierSymbol, rows: usize, cols: usize, entry: impl Fn(i64, i64) -> i64) -> CMat {
    linalg::from_fn(rows, cols, |j, k| s.coeff(entry(j as i64, k as i64)))
}

/// `rows × cols` block of `T_φ`.
pub fn toeplitz_matrix(s: &FourierSymbol, rows: usize, cols: usize) -> CMat {
    let lo = -(cols as i64) + 1;
    let hi = rows as i64 - 1;
    let dense: Vec<Complex64> = (lo..=hi).map(|n| s.coeff(n)).collect();
    linalg::from_fn(rows, cols, |j, k| dense[(j as i64 - k as i64 - lo) as usize])
}

pub fn toeplitz_section(s: &FourierSymbol, n: usize) -> OperatorSection {
    OperatorSection::new(toeplitz_matrix(s, n, n), 0, format!("T[{s}]"))
}

/// The two Hankel blocks of multiplication by `φ` against the Hardy projection.
#[derive(Clone, Debug)]
pub struct HankelBlocks {
    /// `(I−P)φP`: entries `c_{−1−j−k}`.
    pub lower: OperatorSection,
    /// `Pφ(I−P)`: entries `c_{1+j+k}`.
    pub upper: OperatorSection,
    /// False when `N` is below the bandwidth, so the blocks miss entries.
    pub exact: bool,
}

impl HankelBlocks {
    /// Singular values of `[φ, P]`: the union of both blocks'.
    pub fn commutator_singular_values(&self) -> Result<Vec<f64>, LinalgError> {
        let mut s = linalg::singular_values(&self.lower.entries)?;
        s.extend(linalg::singular_values(&self.upper.entries)?);
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(s)
    }

    pub fn commutator_schatten(&self, p: f64) -> Result<f64, LinalgError> {
        Ok(p_sum(&self.commutator_singular_values()?, p))
    }
}

pub fn hankel_blocks(s: &FourierSymbol, n: usize) -> HankelBlocks {
    let lower = coefficient_matrix(s, n, n, |j, k| -1 - j - k);
    let upper = coefficient_matrix(s, n, n, |j, k| 1 + j + k);
    HankelBlocks {
        lower: OperatorSection::new(lower, 0, format!("(I-P)[{s}]P")),
        upper: OperatorSection::new(upper, 0, format!("P[{s}](I-P)")),
        exact: n >= s.bandwidth(),
    }
}

fn p_sum(s: &[f64], p: f64) -> f64 {
    let max = s.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    max * s.iter().map(|x| (x / max).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Schatten norm of a section, with the values seen along a schedule.
#[derive(Clone, Debug)]
pub struct SchattenEstimate {
    pub p: f64,
    pub value: f64,
    pub dim: usize,
    pub converged: bool,
    pub history: Vec<(usize, f64)>,
}

pub fn schatten_of(m: &CMat, p: f64) -> Result<f64, LinalgError> {
    Ok(p_sum(&linalg::singular_values(m)?, p))
}

pub fn schatten_norm(sec: &OperatorSection, p: f64) -> Result<SchattenEstimate, SectionError> {
    assert!(p >= 1.0, "Schatten exponent must be at least 1");
    let value = schatten_of(&sec.entries, p)?;
    Ok(SchattenEstimate { p, value, dim: sec.dim(), converged: false, history: vec![(sec.dim(), value)] })
}

/// Schatten norms of `build(N)` along a dimension schedule; converged when the
/// last two values agree to `1e−8` relative.
pub fn schatten_sweep(
    p: f64,
    dims: &[usize],
    mut build: impl FnMut(usize) -> Result<CMat, SectionError>,
) -> Result<SchattenEstimate, SectionError> {
    let mut history = Vec::with_capacity(dims.len());
    for &n in dims {
        history.push((n, schatten_of(&build(n)?, p)?));
    }
    let (dim, value) = *history.last().expect("empty schedule");
    let converged = history.len() >= 2 && {
        let prev = history[history.len() - 2].1;
        (value - prev).abs() <= 1e-8 * value.max(1e-300) || (value - prev).abs() <= 1e-14
    };
    Ok(SchattenEstimate { p, value, dim, converged, history })
}

/// Trace over the leading `N` diagonal entries of a word evaluated at `M`.
#[derive(Clone, Debug)]
pub struct CornerTrace {
    pub value: Complex64,
    /// `|Σ diag|` over the first half of the padding region.
    pub tail: f64,
    pub converged: bool,
    pub dims: (usize, usize),
}

pub fn corner_trace(word: &Word, n: usize, m: usize) -> Result<CornerTrace, SectionError> {
    assert!(m > n, "corner_trace needs M > N");
    let full = word.eval(m)?;
    Ok(corner_trace_of(&full, n))
}

pub(crate) fn corner_trace_of(full: &CMat, n: usize) -> CornerTrace {
    let m = full.nrows();
    let value: Complex64 = (0..n).map(|j| full[(j, j)]).sum();
    let mid = n + (m - n).div_ceil(2);
    let tail = (n..mid).map(|j| full[(j, j)]).sum::<Complex64>().norm();
    CornerTrace { value, tail, converged: tail <= 1e-10 * value.norm().max(1.0), dims: (n, m) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn sym(c: &[(i64, f64)]) -> FourierSymbol {
        FourierSymbol::from_coeffs(c.iter().map(|&(n, x)| (n, c64(x, 0.0))))
    }

    #[test]
    fn toeplitz_examples() {
        let t = toeplitz_section(&FourierSymbol::z(), 3);
        for j in 0..3 {
            for k in 0..3 {
                let expect = if j == k + 1 { 1.0 } else { 0.0 };
                assert_eq!(t.get(j, k), c64(expect, 0.0));
            }
        }
        let t = toeplitz_section(&sym(&[(0, 2.0), (1, 1.0), (-1, 1.0)]), 2);
        assert_eq!(t.get(0, 0), c64(2.0, 0.0));
        assert_eq!(t.get(0, 1), c64(1.0, 0.0));
        assert_eq!(t.get(1, 0), c64(1.0, 0.0));
        let t = toeplitz_section(&FourierSymbol::zbar(), 3);
        assert_eq!(t.get(0, 1), c64(1.0, 0.0));
        assert_eq!(t.get(1, 0), c64(0.0, 0.0));
    }

    #[test]
    fn hankel_examples() {
        let s = sym(&[(1, 1.0), (-1, 1.0)]);
        let h = hankel_blocks(&s, 2);
        assert_eq!(h.lower.get(0, 0), c64(1.0, 0.0));
        assert_eq!(h.upper.get(0, 0), c64(1.0, 0.0));
        assert!((h.commutator_schatten(2.0).unwrap() - 2f64.sqrt()).abs() < 1e-14);

        let h = hankel_blocks(&FourierSymbol::constant(c64(3.0, 0.0)), 3);
        assert_eq!(h.commutator_schatten(2.0).unwrap(), 0.0);

        let h = hankel_blocks(&FourierSymbol::monomial(3), 4);
        assert!((linalg::frobenius(&h.upper.entries) - 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(linalg::frobenius(&h.lower.entries), 0.0);
        assert!(h.exact);
        assert!(!hankel_blocks(&FourierSymbol::monomial(3), 2).exact);
    }

    #[test]
    fn schatten_examples() {
        let proj = OperatorSection::new(linalg::from_fn(3, 3, |j, k| c64((j == 0 && k == 0) as u8 as f64, 0.0)), 0, "e0e0*");
        for p in [1.0, 2.0, 3.5] {
            assert!((schatten_norm(&proj, p).unwrap().value - 1.0).abs() < 1e-14);
        }
        let zero = OperatorSection::new(linalg::zeros(4, 4), 0, "0");
        assert_eq!(schatten_norm(&zero, 1.0).unwrap().value, 0.0);
    }

    #[test]
    fn corner_trace_examples() {
        let z = Word::toeplitz(FourierSymbol::z());
        let zb = Word::toeplitz(FourierSymbol::zbar());
        let ct = corner_trace(&Word::commutator(&z, &zb), 4, 8).unwrap();
        assert!((ct.value - c64(-1.0, 0.0)).norm() < 1e-15);
        assert!(ct.converged);

        let f = Word::toeplitz(sym(&[(0, 1.0), (2, 0.5), (-1, 0.25)]));
        assert!(corner_trace(&Word::commutator(&f, &f), 4, 8).unwrap().value.norm() < 1e-15);

        let z2 = Word::toeplitz(FourierSymbol::monomial(2));
        let zb2 = Word::toeplitz(FourierSymbol::monomial(-2));
        let ct = corner_trace(&Word::commutator(&z2, &zb2), 4, 8).unwrap();
        assert!((ct.value - c64(-2.0, 0.0)).norm() < 1e-15);
    }
}
