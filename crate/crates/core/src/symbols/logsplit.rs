use num_complex::Complex64;

use super::fft::{coefficients_from_samples, sample_grid};
use super::fourier::{FourierSymbol, Part, DEFAULT_TRIM};
use super::winding::{continuous_log, unwrap_grid_size};
use super::{CircleFunction, SymbolError};

/// `f = z^{winding} · e^{f̃₋} · e^{f̃₊}` with `f̃ = f̃₊ + f̃₋` periodic.
#[derive(Clone, Debug)]
pub struct LogSplit {
    pub winding: i32,
    pub plus: FourierSymbol,
    pub minus: FourierSymbol,
    /// The periodic logarithm `f̃` of `z^{−winding} f`.
    pub log_branch: FourierSymbol,
    /// `sup |reconstruction − f| / sup |f|` on an offset check grid.
    pub residual: f64,
    pub grid: usize,
}

impl LogSplit {
    /// The exponent `n` in the form `f = z^{−n} e^{f̃₋} e^{f̃₊}`.
    pub fn shift_exponent(&self) -> i32 {
        -self.winding
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.winding as f64 * theta) * self.log_branch.eval(theta).exp()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LogSplitOptions {
    pub tol: f64,
    pub max_grid: usize,
    pub decay_tol: f64,
}

impl Default for LogSplitOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_grid: 1 << 16, decay_tol: 1e-15 }
    }
}

pub fn log_split(s: &FourierSymbol) -> Result<LogSplit, SymbolError> {
    log_split_with(s, LogSplitOptions::default())
}

/// Splits any nonvanishing smooth circle function.
pub fn log_split_with(f: &impl CircleFunction, opts: LogSplitOptions) -> Result<LogSplit, SymbolError> {
    let mut len = unwrap_grid_size(f.resolution_hint());
    loop {
        let log = continuous_log(f, 0.0, len)?;
        let w = log.winding;
        let periodic: Vec<Complex64> =
            log.values.iter().zip(&log.grid).map(|(v, t)| v - Complex64::new(0.0, w as f64 * t)).collect();
        let scale = periodic.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let coeffs = coefficients_from_samples(&periodic);
        let quarter = (len / 4) as i64;
        let outer = coeffs.iter().filter(|(n, _)| n.abs() >= quarter).map(|(_, c)| c.norm()).fold(0.0, f64::max);
        if outer <= opts.decay_tol * scale || len >= opts.max_grid {
            let trim = DEFAULT_TRIM.max(4.0 * f64::EPSILON * scale);
            let log_branch = FourierSymbol::from_coeffs_trimmed(coeffs, trim);
            let mut split = LogSplit {
                winding: w,
                plus: log_branch.riesz_project(Part::Plus),
                minus: log_branch.riesz_project(Part::Minus),
                log_branch,
                residual: 0.0,
                grid: len,
            };
            split.residual = reconstruction_residual(f, &split);
            if split.residual <= opts.tol {
                return Ok(split);
            }
            if len >= opts.max_grid {
                return Err(SymbolError::ReconstructionResidual { residual: split.residual, tol: opts.tol });
            }
        }
        len *= 2;
    }
}

fn reconstruction_residual(f: &impl CircleFunction, split: &LogSplit) -> f64 {
    let check = 2048;
    let offset = std::f64::consts::PI / check as f64;
    let mut err = 0.0f64;
    let mut scale = 0.0f64;
    for t in sample_grid(check, offset) {
        let v = f.value_at(t);
        scale = scale.max(v.norm());
        err = err.max((split.eval(t) - v).norm());
    }
    err / scale.max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn exp_z_splits_trivially() {
        let s = FourierSymbol::z().exp().unwrap();
        let ls = log_split(&s).unwrap();
        assert_eq!(ls.winding, 0);
        assert!((&ls.plus - &FourierSymbol::z()).tail_beyond(0) < 1e-13);
        assert!(ls.plus.coeff(0).norm() < 1e-13);
        assert!(ls.minus.coeffs().all(|(_, c)| c.norm() < 1e-13));
    }

    #[test]
    fn shifted_exponential() {
        // z²·e^{z̄}: printed-form exponent n = −2, f̃₋ = z̄, f̃₊ = 0
        let s = &FourierSymbol::monomial(2) * &FourierSymbol::zbar().exp().unwrap();
        let ls = log_split(&s).unwrap();
        assert_eq!(ls.winding, 2);
        assert_eq!(ls.shift_exponent(), -2);
        assert!((ls.minus.coeff(-1) - c64(1.0, 0.0)).norm() < 1e-12);
        assert!(ls.plus.coeffs().all(|(_, c)| c.norm() < 1e-12));
    }

    #[test]
    fn log_of_two_plus_z() {
        let s = &FourierSymbol::constant(c64(2.0, 0.0)) + &FourierSymbol::z();
        let ls = log_split(&s).unwrap();
        assert_eq!(ls.winding, 0);
        assert!(ls.residual < 1e-10);
        assert!((ls.plus.coeff(0) - c64(2f64.ln(), 0.0)).norm() < 1e-13);
        for k in 1..=40i32 {
            let expected = (-1f64).powi(k + 1) / (k as f64 * 2f64.powi(k));
            assert!((ls.plus.coeff(k as i64) - c64(expected, 0.0)).norm() < 1e-13, "k={k}");
        }
        assert!(ls.minus.coeffs().all(|(_, c)| c.norm() < 1e-13));
    }
}
