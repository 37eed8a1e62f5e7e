use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{Method, TorsionError, TorsionResult};
use crate::function::FunctionSpec;
use crate::linalg;
use crate::sections::{
    corner_trace, corner_trace_of, matrix_function, toeplitz_section, CornerTrace, MatrixFunctionMode, SectionError,
    Word,
};
use crate::symbols::{log_split_with, FourierSymbol, LogSplitOptions, SmoothSymbol};

/// Largest combined bandwidth for which the dense corner trace is formed.
const CORNER_TRACE_MAX_BAND: usize = 64;

/// Three evaluations of `tr[T_f, T_g] = (1/2πi)∫ f dg`.
#[derive(Clone, Debug)]
pub struct BergerShaw {
    /// Corner trace of the commutator word; `None` above the bandwidth cap.
    pub trace: Option<CornerTrace>,
    pub integral: Complex64,
    /// Change of the quadrature under grid doubling.
    pub integral_err: f64,
    /// `Σ_n n c_{−n}(f) c_n(g)`.
    pub coefficients: Complex64,
}

/// `Σ_n n c_{−n}(f) c_n(g)`.
pub fn berger_shaw_coefficients(f: &FourierSymbol, g: &FourierSymbol) -> Complex64 {
    g.coeffs().map(|(n, c)| n as f64 * f.coeff(-n) * c).sum()
}

/// Trapezoid evaluation of `(1/2π)∫ f(θ) Σ n c_n(g) e^{inθ} dθ` with the error
/// from one grid doubling. The rule is exact once the grid exceeds the
/// combined bandwidth.
pub fn berger_shaw_integral(f: &FourierSymbol, g: &FourierSymbol) -> (Complex64, f64) {
    let dg = g.derivative().scale(Complex64::new(0.0, -1.0));
    let len = (2 * (f.bandwidth() + g.bandwidth()) + 2).max(64).next_power_of_two();
    let mean = |len: usize| -> Complex64 {
        (0..len).map(|j| {
            let t = TAU * j as f64 / len as f64;
            f.eval(t) * dg.eval(t)
        })
        .sum::<Complex64>()
            / len as f64
    };
    let coarse = mean(len);
    let fine = mean(2 * len);
    (fine, (fine - coarse).norm())
}

pub fn berger_shaw(f: &FourierSymbol, g: &FourierSymbol) -> Result<BergerShaw, TorsionError> {
    let band = f.bandwidth() + g.bandwidth();
    let trace = if band <= CORNER_TRACE_MAX_BAND {
        let n = 2 * band + 4;
        let m = n + 2 * band + 4;
        let word = Word::commutator(&Word::toeplitz(f.clone()), &Word::toeplitz(g.clone()));
        Some(corner_trace(&word, n, m)?)
    } else {
        None
    };
    let (integral, integral_err) = berger_shaw_integral(f, g);
    Ok(BergerShaw { trace, integral, integral_err, coefficients: berger_shaw_coefficients(f, g) })
}

/// `τ(T_{e^a}, T_{e^b}) = exp((1/2πi)∫ a db)`.
pub fn exp_torsion(a: &FourierSymbol, b: &FourierSymbol) -> Result<TorsionResult, TorsionError> {
    let bs = berger_shaw(a, b)?;
    let value = bs.integral.exp();
    let mut res = TorsionResult::exact(value, Method::Exp);
    res.err_estimate = value.norm() * bs.integral_err;
    res.notes.push(format!("trace integral {:.15}", bs.integral));
    if let Some(t) = &bs.trace {
        res.notes.push(format!("corner trace {:.15} (dims {:?})", t.value, t.dims));
    }
    Ok(res)
}

/// Exponential path for winding-zero symbols: both are written as `e^{f̃}`
/// through their periodic logarithms first.
pub fn exp_torsion_smooth(f: &SmoothSymbol, g: &SmoothSymbol) -> Result<TorsionResult, TorsionError> {
    let split = |s: &SmoothSymbol| log_split_with(s, LogSplitOptions::default());
    let (lf, lg) = (split(f)?, split(g)?);
    if lf.winding != 0 || lg.winding != 0 {
        return Err(TorsionError::NotApplicable(format!(
            "exponential path needs winding 0, got ({}, {})",
            lf.winding, lg.winding
        )));
    }
    let mut res = exp_torsion(&lf.log_branch, &lg.log_branch)?;
    res.err_estimate += res.value.norm() * (lf.residual + lg.residual);
    res.dims = vec![lf.grid, lg.grid];
    Ok(res)
}

/// `φ(A, B) = −i tr[log A, log B]` for positive Toeplitz sections.
#[derive(Clone, Debug)]
pub struct PairPhase {
    pub phase: f64,
    /// Imaginary part of `−i tr[…]`, zero in exact arithmetic.
    pub imag_residue: f64,
    pub trace: CornerTrace,
}

impl PairPhase {
    pub fn torsion(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }
}

/// Phase of `τ(T_a, T_b)` for real positive symbols, from logarithms of
/// `2n`-sections and the corner trace over the leading `n` entries.
pub fn positive_pair_phase(a: &FourierSymbol, b: &FourierSymbol, n: usize) -> Result<PairPhase, TorsionError> {
    let m = 2 * n;
    let log_of = |s: &FourierSymbol| -> Result<linalg::CMat, TorsionError> {
        if !s.is_real_valued(1e-12) {
            return Err(TorsionError::NotApplicable("symbol is not real-valued".into()));
        }
        let sec = toeplitz_section(s, m);
        let lo = linalg::hermitian_eigen(&sec.entries).map_err(SectionError::from)?.0.into_iter().fold(f64::INFINITY, f64::min);
        if lo <= 1e-8 {
            return Err(TorsionError::NotApplicable(format!("section is not positive (min eigenvalue {lo:.3e})")));
        }
        Ok(matrix_function(&sec, &FunctionSpec::log(), MatrixFunctionMode::HermitianEig)?.entries)
    };
    let la = log_of(a)?;
    let lb = log_of(b)?;
    let comm = &(&la * &lb) - &(&lb * &la);
    let trace = corner_trace_of(&comm, n);
    let v = Complex64::new(0.0, -1.0) * trace.value;
    Ok(PairPhase { phase: v.re, imag_residue: v.im, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn sym(c: &[(i64, f64)]) -> FourierSymbol {
        FourierSymbol::from_coeffs(c.iter().map(|&(n, x)| (n, c64(x, 0.0))))
    }

    #[test]
    fn berger_shaw_examples() {
        let cases = [
            (FourierSymbol::z(), FourierSymbol::zbar(), -1.0),
            (FourierSymbol::monomial(2), FourierSymbol::monomial(-2), -2.0),
            (sym(&[(1, 0.5), (-2, 1.0)]), sym(&[(1, 0.5), (-2, 1.0)]), 0.0),
        ];
        for (f, g, want) in cases {
            let bs = berger_shaw(&f, &g).unwrap();
            let w = c64(want, 0.0);
            assert!((bs.trace.unwrap().value - w).norm() < 1e-12);
            assert!((bs.integral - w).norm() < 1e-12);
            assert!((bs.coefficients - w).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_torsion_examples() {
        let e = exp_torsion(&FourierSymbol::zbar(), &FourierSymbol::z()).unwrap();
        assert!((e.value - c64(1f64.exp(), 0.0)).norm() < 1e-12);
        let e = exp_torsion(&FourierSymbol::z(), &FourierSymbol::zbar()).unwrap();
        assert!((e.value - c64((-1f64).exp(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn smooth_exp_path_rejects_winding() {
        let z = SmoothSymbol::from_rational(crate::symbols::RationalSymbol::z());
        assert!(matches!(exp_torsion_smooth(&z, &z), Err(TorsionError::NotApplicable(_))));
    }

    #[test]
    fn positive_phase_of_equal_symbols_vanishes() {
        let a = FourierSymbol::from_real_trig(2.0, &[1.0], &[]);
        let p = positive_pair_phase(&a, &a, 32).unwrap();
        assert!(p.phase.abs() < 1e-12);
        let c = FourierSymbol::constant(c64(3.0, 0.0));
        assert!(positive_pair_phase(&c, &a, 32).unwrap().phase.abs() < 1e-12);
    }
}
