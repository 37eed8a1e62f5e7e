use num_complex::Complex64;

use super::fourier::{FourierSymbol, SamplingOptions};
use super::logsplit::log_split;
use super::rational::RationalSymbol;
use super::{circle_point, CircleFunction, SymbolError};

/// `r(z) · e^{h(θ)}` with `r` rational and `h` a Fourier series.
///
/// This is the common form every parsed expression lowers to; the rational
/// factor carries the zeros, poles and winding, the exponential the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothSymbol {
    pub rational: RationalSymbol,
    pub exponent: FourierSymbol,
}

impl SmoothSymbol {
    pub fn new(rational: RationalSymbol, exponent: FourierSymbol) -> Self {
        Self { rational, exponent }
    }

    pub fn from_rational(r: RationalSymbol) -> Self {
        Self::new(r, FourierSymbol::zero())
    }

    /// `e^{h}`.
    pub fn exp_of(h: FourierSymbol) -> Self {
        Self::new(RationalSymbol::one(), h)
    }

    /// Rewrites a nonvanishing Fourier symbol as `z^n e^{f̃}` through its log split.
    pub fn from_fourier(s: &FourierSymbol) -> Result<Self, SymbolError> {
        let ls = log_split(s)?;
        Ok(Self::new(RationalSymbol::monomial(ls.winding), ls.log_branch))
    }

    pub fn is_rational(&self) -> bool {
        self.exponent.is_zero()
    }

    pub fn eval(&self, theta: f64) -> Result<Complex64, SymbolError> {
        Ok(self.rational.eval(theta)? * self.exponent.eval(theta).exp())
    }

    pub fn winding_number(&self) -> Result<i32, SymbolError> {
        self.rational.winding_number()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self::new(self.rational.multiply(&other.rational), &self.exponent + &other.exponent)
    }

    pub fn invert(&self) -> Self {
        Self::new(self.rational.invert(), -&self.exponent)
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.rational.conjugate(), self.exponent.conjugate())
    }

    pub fn pow(&self, k: i32) -> Self {
        Self::new(self.rational.pow(k), self.exponent.scale(Complex64::new(k as f64, 0.0)))
    }

    /// Fourier series by FFT sampling.
    pub fn to_fourier(&self) -> Result<FourierSymbol, SymbolError> {
        self.rational.check_circle_regular()?;
        if self.exponent.is_zero() {
            let band = self.rational.resolution_hint() * 8 + 64;
            let lx = self.rational.laurent_coeffs(band)?;
            if lx.tail_bound < 1e-15 * self.rational.scale().norm().max(1.0) {
                return Ok(lx.symbol);
            }
        }
        FourierSymbol::from_function(|t| self.value_at(t), self.resolution_hint(), SamplingOptions::default())
    }
}

impl CircleFunction for SmoothSymbol {
    fn value_at(&self, theta: f64) -> Complex64 {
        self.rational.value_at(theta) * self.exponent.eval(theta).exp()
    }

    fn log_derivative_at(&self, theta: f64) -> Complex64 {
        let dh: Complex64 = self
            .exponent
            .coeffs()
            .map(|(n, c)| c * Complex64::new(0.0, n as f64) * circle_point(n as f64 * theta))
            .sum();
        self.rational.log_derivative_at(theta) + dh
    }

    fn resolution_hint(&self) -> usize {
        let k = self.exponent.bandwidth();
        let amp: f64 = self.exponent.coeffs().map(|(_, c)| c.norm()).sum();
        self.rational.resolution_hint() + k * (2 + amp.ceil() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn eval_and_fourier_agree() {
        let s = SmoothSymbol::new(
            RationalSymbol::linear(c64(0.4, 0.1)),
            FourierSymbol::from_real_trig(0.1, &[0.3, -0.2], &[0.5]),
        );
        let f = s.to_fourier().unwrap();
        for t in [0.0, 0.7, 2.5, -1.3] {
            assert!((f.eval(t) - s.eval(t).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugate_is_pointwise() {
        let s = SmoothSymbol::new(
            RationalSymbol::linear(c64(2.0, -0.5)).multiply(&RationalSymbol::zbar()),
            &FourierSymbol::z() * &FourierSymbol::constant(c64(0.2, 0.7)),
        );
        let c = s.conjugate();
        for t in [0.1, 1.9, 3.0] {
            assert!((c.eval(t).unwrap() - s.eval(t).unwrap().conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn from_fourier_roundtrip() {
        let base = &FourierSymbol::monomial(-1) * &FourierSymbol::from_real_trig(0.0, &[0.5], &[]).exp().unwrap();
        let s = SmoothSymbol::from_fourier(&base).unwrap();
        assert_eq!(s.winding_number().unwrap(), -1);
        for t in [0.0, 1.0, 2.0] {
            assert!((s.eval(t).unwrap() - base.eval(t)).norm() < 1e-11);
        }
    }
}
