use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::fft::{coefficients_from_samples, sample_grid};
use super::{circle_point, CircleFunction, SymbolError};

/// Coefficients with modulus below this are dropped on construction.
pub const DEFAULT_TRIM: f64 = 1e-17;

/// Which Riesz half to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Frequencies `n >= 0` (the Hardy-space part).
    Plus,
    /// Frequencies `n < 0`.
    Minus,
}

/// Band-limited function `Σ c_n e^{inθ}` on the circle.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FourierSymbol {
    coeffs: BTreeMap<i64, Complex64>,
}

/// Grid control for symbols obtained by sampling a function and transforming.
#[derive(Debug, Clone, Copy)]
pub struct SamplingOptions {
    pub initial_grid: usize,
    pub max_grid: usize,
    /// Largest coefficient allowed in the outer quarter of the spectrum,
    /// relative to the largest sample modulus.
    pub decay_tol: f64,
    pub trim: f64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        Self { initial_grid: 256, max_grid: 1 << 17, decay_tol: 1e-15, trim: DEFAULT_TRIM }
    }
}

/// Result of a sampled inversion `1/f`.
#[derive(Debug, Clone)]
pub struct Inversion {
    pub symbol: FourierSymbol,
    /// `sup |f · inv − 1|` on a 4096-point grid.
    pub residual: f64,
}

impl FourierSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_coeffs([(0, c)])
    }

    /// `z^n`.
    pub fn monomial(n: i64) -> Self {
        Self::from_coeffs([(n, Complex64::new(1.0, 0.0))])
    }

    pub fn z() -> Self {
        Self::monomial(1)
    }

    pub fn zbar() -> Self {
        Self::monomial(-1)
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        Self::from_coeffs_trimmed(coeffs, DEFAULT_TRIM)
    }

    /// Builds a symbol, summing repeated frequencies and removing entries
    /// with modulus below `trim`.
    pub fn from_coeffs_trimmed(coeffs: impl IntoIterator<Item = (i64, Complex64)>, trim: f64) -> Self {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            *map.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm() >= trim && c.norm() > 0.0);
        Self { coeffs: map }
    }

    /// Real trigonometric polynomial from cosine/sine data:
    /// `a₀ + Σ a_k cos kθ + b_k sin kθ`.
    pub fn from_real_trig(a0: f64, cos: &[f64], sin: &[f64]) -> Self {
        let mut out = vec![(0, Complex64::new(a0, 0.0))];
        for (k, &a) in cos.iter().enumerate() {
            let n = k as i64 + 1;
            out.push((n, Complex64::new(a / 2.0, 0.0)));
            out.push((-n, Complex64::new(a / 2.0, 0.0)));
        }
        for (k, &b) in sin.iter().enumerate() {
            let n = k as i64 + 1;
            out.push((n, Complex64::new(0.0, -b / 2.0)));
            out.push((-n, Complex64::new(0.0, b / 2.0)));
        }
        Self::from_coeffs(out)
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_freq(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_freq(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max |n|` over nonzero coefficients.
    pub fn bandwidth(&self) -> usize {
        self.coeffs.keys().map(|n| n.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// True when all frequencies are nonnegative.
    pub fn is_analytic(&self) -> bool {
        self.min_freq().map_or(true, |n| n >= 0)
    }

    /// True when `c_{-n} = conj(c_n)` for all `n`, i.e. the symbol is real on the circle.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.coeffs().all(|(n, c)| (c - self.coeff(-n).conj()).norm() <= tol)
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.coeffs().map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * theta)).sum()
    }

    /// Laurent evaluation `Σ c_n z^n` at an arbitrary nonzero complex point.
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        self.coeffs().map(|(n, c)| c * z.powi(n as i32)).sum()
    }

    /// `d/dθ`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs().map(|(n, c)| (n, c * Complex64::new(0.0, n as f64))))
    }

    /// Pointwise complex conjugate on the circle: `c_n ↦ conj(c_{-n})`.
    pub fn conjugate(&self) -> Self {
        Self::from_coeffs(self.coeffs().map(|(n, c)| (-n, c.conj())))
    }

    /// Reflection `z ↦ 1/z`: `c_n ↦ c_{-n}`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(self.coeffs().map(|(n, c)| (-n, c)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_coeffs(self.coeffs().map(|(n, c)| (n, c * s)))
    }

    pub fn riesz_project(&self, part: Part) -> Self {
        let keep = |n: i64| match part {
            Part::Plus => n >= 0,
            Part::Minus => n < 0,
        };
        Self { coeffs: self.coeffs.iter().filter(|(n, _)| keep(**n)).map(|(&n, &c)| (n, c)).collect() }
    }

    /// Keeps only `|n| <= bandwidth`.
    pub fn truncate(&self, bandwidth: usize) -> Self {
        let k = bandwidth as i64;
        Self { coeffs: self.coeffs.range(-k..=k).map(|(&n, &c)| (n, c)).collect() }
    }

    /// `sqrt(Σ_{n≠0} |n| |c_n|²)`, the Hilbert–Schmidt norm of `[φ, P]`.
    pub fn sobolev_half_seminorm(&self) -> f64 {
        self.coeffs()
            .filter(|(n, _)| *n != 0)
            .map(|(n, c)| n.unsigned_abs() as f64 * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max modulus over a uniform grid.
    pub fn sup_norm(&self, grid: usize) -> f64 {
        sample_grid(grid, 0.0).into_iter().map(|t| self.eval(t).norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self, grid: usize) -> f64 {
        sample_grid(grid, 0.0).into_iter().map(|t| self.eval(t).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Samples on `sample_grid(len, 0)`.
    pub fn samples(&self, len: usize) -> Vec<Complex64> {
        sample_grid(len, 0.0).into_iter().map(|t| self.eval(t)).collect()
    }

    /// Coefficient tail diagnostics: largest `|c_n|` over `|n| > k`.
    pub fn tail_beyond(&self, k: usize) -> f64 {
        self.coeffs()
            .filter(|(n, _)| n.unsigned_abs() as usize > k)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Fourier series of a smooth function obtained by FFT sampling, doubling
    /// the grid until the outer quarter of the spectrum is negligible.
    pub fn from_function(
        f: impl Fn(f64) -> Complex64,
        hint: usize,
        opts: SamplingOptions,
    ) -> Result<Self, SymbolError> {
        let mut len = opts.initial_grid.max(4 * hint.next_power_of_two()).next_power_of_two();
        loop {
            let samples: Vec<_> = sample_grid(len, 0.0).into_iter().map(&f).collect();
            let scale = samples.iter().map(|s| s.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
                return Err(SymbolError::Domain("non-finite sample".into()));
            }
            let coeffs = coefficients_from_samples(&samples);
            let quarter = (len / 4) as i64;
            let outer = coeffs
                .iter()
                .filter(|(n, _)| n.abs() >= quarter)
                .map(|(_, c)| c.norm())
                .fold(0.0, f64::max);
            if outer <= opts.decay_tol * scale {
                let trim = opts.trim.max(4.0 * f64::EPSILON * scale);
                return Ok(Self::from_coeffs_trimmed(coeffs, trim));
            }
            if len >= opts.max_grid {
                return Err(SymbolError::Unresolved { grid: len });
            }
            len *= 2;
        }
    }

    /// `e^{self}` as a Fourier series.
    pub fn exp(&self) -> Result<Self, SymbolError> {
        Self::from_function(|t| self.eval(t).exp(), self.bandwidth(), SamplingOptions::default())
    }

    /// `1/self` by FFT sampling; fails if the symbol vanishes on the circle.
    pub fn invert(&self) -> Result<Inversion, SymbolError> {
        self.check_nonvanishing()?;
        let symbol = Self::from_function(
            |t| Complex64::new(1.0, 0.0) / self.eval(t),
            self.bandwidth(),
            SamplingOptions::default(),
        )?;
        let residual = self.inversion_residual(&symbol);
        Ok(Inversion { symbol, residual })
    }

    /// `1/self` truncated to `|n| <= bandwidth`, with the residual of the truncation.
    pub fn invert_truncated(&self, bandwidth: usize) -> Result<Inversion, SymbolError> {
        let full = self.invert()?;
        let symbol = full.symbol.truncate(bandwidth);
        let residual = self.inversion_residual(&symbol);
        Ok(Inversion { symbol, residual })
    }

    fn inversion_residual(&self, inv: &Self) -> f64 {
        sample_grid(4096, 0.0)
            .into_iter()
            .map(|t| (self.eval(t) * inv.eval(t) - 1.0).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_nonvanishing(&self) -> Result<(), SymbolError> {
        let grid = (64 * self.bandwidth()).max(1024);
        let min = self.min_modulus(grid);
        let scale = self.sup_norm(grid).max(1.0);
        if min <= 1e-12 * scale {
            return Err(SymbolError::VanishesOnCircle { min_modulus: min });
        }
        Ok(())
    }
}

impl CircleFunction for FourierSymbol {
    fn value_at(&self, theta: f64) -> Complex64 {
        self.eval(theta)
    }

    fn log_derivative_at(&self, theta: f64) -> Complex64 {
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for (n, c) in self.coeffs() {
            let e = c * circle_point(n as f64 * theta);
            value += e;
            deriv += e * Complex64::new(0.0, n as f64);
        }
        deriv / value
    }

    fn resolution_hint(&self) -> usize {
        self.bandwidth()
    }
}

impl Add for &FourierSymbol {
    type Output = FourierSymbol;
    fn add(self, rhs: &FourierSymbol) -> FourierSymbol {
        FourierSymbol::from_coeffs(self.coeffs().chain(rhs.coeffs()))
    }
}

impl Sub for &FourierSymbol {
    type Output = FourierSymbol;
    fn sub(self, rhs: &FourierSymbol) -> FourierSymbol {
        FourierSymbol::from_coeffs(self.coeffs().chain(rhs.coeffs().map(|(n, c)| (n, -c))))
    }
}

impl Neg for &FourierSymbol {
    type Output = FourierSymbol;
    fn neg(self) -> FourierSymbol {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &FourierSymbol {
    type Output = FourierSymbol;
    fn mul(self, rhs: &FourierSymbol) -> FourierSymbol {
        let mut out = BTreeMap::new();
        for (n, a) in self.coeffs() {
            for (m, b) in rhs.coeffs() {
                *out.entry(n + m).or_insert(Complex64::new(0.0, 0.0)) += a * b;
            }
        }
        FourierSymbol::from_coeffs(out)
    }
}

impl fmt::Display for FourierSymbol {
    /// Prints in the `parse_symbol` grammar: `(re+imi)*z^n + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.coeffs().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?}{:+?}i)", c.re, c.im)?;
            match n {
                0 => {}
                n if n > 0 => write!(f, "*z^{n}")?,
                n => write!(f, "*zbar^{}", -n)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    #[test]
    fn eval_identity_and_cosine() {
        assert!((FourierSymbol::z().eval(0.0) - c64(1.0, 0.0)).norm() < 1e-15);
        let s = &FourierSymbol::z() + &FourierSymbol::zbar();
        assert!(s.eval(PI / 2.0).norm() < 1e-15);
    }

    #[test]
    fn conjugation_rule() {
        let s = FourierSymbol::from_coeffs([(2, c64(1.0, 2.0)), (-1, c64(0.5, 0.0))]);
        let c = s.conjugate();
        assert_eq!(c.coeff(-2), c64(1.0, -2.0));
        assert_eq!(c.coeff(1), c64(0.5, 0.0));
        for t in [0.1, 1.0, 2.5] {
            assert!((c.eval(t) - s.eval(t).conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn riesz_projection_cases() {
        let s = &FourierSymbol::z() + &FourierSymbol::zbar();
        assert_eq!(s.riesz_project(Part::Plus), FourierSymbol::z());
        assert!(FourierSymbol::constant(c64(3.0, 0.0)).riesz_project(Part::Minus).is_zero());
        let p = s.riesz_project(Part::Plus);
        assert_eq!(p.riesz_project(Part::Plus), p);
        assert_eq!(&s.riesz_project(Part::Plus) + &s.riesz_project(Part::Minus), s);
    }

    #[test]
    fn sobolev_seminorm_examples() {
        let s = &FourierSymbol::z() + &FourierSymbol::zbar();
        assert!((s.sobolev_half_seminorm() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(FourierSymbol::constant(c64(5.0, 0.0)).sobolev_half_seminorm(), 0.0);
        assert!((FourierSymbol::monomial(3).sobolev_half_seminorm() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(2+z) = Σ (-1)^n z^n / 2^{n+1}
        let s = FourierSymbol::from_coeffs([(0, c64(2.0, 0.0)), (1, c64(1.0, 0.0))]);
        for k in [4usize, 10, 20] {
            let inv = s.invert_truncated(k).unwrap();
            assert!(inv.residual < 2f64.powi(-(k as i32)), "K={k} residual {}", inv.residual);
            for n in 0..=k as i64 {
                let expected = (-1f64).powi(n as i32) * 2f64.powi(-(n as i32) - 1);
                assert!((inv.symbol.coeff(n) - c64(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn inverting_vanishing_symbol_fails() {
        let s = &FourierSymbol::constant(c64(1.0, 0.0)) - &FourierSymbol::z();
        assert!(matches!(s.invert(), Err(SymbolError::VanishesOnCircle { .. })));
    }

    #[test]
    fn exp_of_z_matches_taylor() {
        let e = FourierSymbol::z().exp().unwrap();
        let mut fact = 1.0;
        for n in 0..15i64 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff(n) - c64(1.0 / fact, 0.0)).norm() < 1e-15);
        }
        assert!(e.riesz_project(Part::Minus).is_zero());
    }

    #[test]
    fn display_round_trips_through_eval() {
        let s = FourierSymbol::from_coeffs([(2, c64(1.5, -0.25)), (-1, c64(0.5, 0.0)), (0, c64(-2.0, 1.0))]);
        let text = s.to_string();
        assert!(text.contains("zbar^1"));
        assert!(text.contains("*z^2"));
    }
}
