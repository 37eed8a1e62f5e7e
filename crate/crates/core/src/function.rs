//! Scalar functions applied to operators: entire power series, holomorphic
//! functions on a disk, and smooth functions on the real line.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

type HoloFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum FunctionSpec {
    /// `Σ c_k w^k` with infinite radius of convergence (truncated).
    EntireSeries { name: String, coeffs: Vec<Complex64> },
    /// Holomorphic on the open disk `|w| < radius` (`None` means entire).
    Holomorphic { name: String, f: HoloFn, df: Option<HoloFn>, radius: Option<f64> },
    /// Smooth function of a real variable, applied through spectral calculus
    /// to Hermitian operators.
    SmoothReal { name: String, f: RealFn, df: Option<RealFn> },
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::EntireSeries { name, coeffs } => {
                write!(f, "EntireSeries({name}, {} terms)", coeffs.len())
            }
            FunctionSpec::Holomorphic { name, radius, .. } => write!(f, "Holomorphic({name}, radius {radius:?})"),
            FunctionSpec::SmoothReal { name, .. } => write!(f, "SmoothReal({name})"),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const EXP_TERMS: usize = 120;

impl FunctionSpec {
    pub fn polynomial(coeffs: &[Complex64]) -> Self {
        let name = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(k, c)| if c.im == 0.0 { format!("{}w^{k}", c.re) } else { format!("({c})w^{k}") })
            .collect::<Vec<_>>()
            .join(" + ");
        Self::EntireSeries { name: if name.is_empty() { "0".into() } else { name }, coeffs: coeffs.to_vec() }
    }

    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        Self::polynomial(&coeffs.iter().map(|c| Complex64::new(*c, 0.0)).collect::<Vec<_>>())
    }

    pub fn identity() -> Self {
        Self::real_polynomial(&[0.0, 1.0])
    }

    /// `w^k`.
    pub fn power(k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::real_polynomial(&c)
    }

    pub fn exp() -> Self {
        let mut coeffs = Vec::with_capacity(EXP_TERMS);
        let mut term = 1.0f64;
        for k in 0..EXP_TERMS {
            if k > 0 {
                term /= k as f64;
            }
            coeffs.push(Complex64::new(term, 0.0));
        }
        Self::EntireSeries { name: "exp".into(), coeffs }
    }

    /// `e^{s w}`.
    pub fn exp_scaled(s: Complex64) -> Self {
        let Self::EntireSeries { coeffs, .. } = Self::exp() else { unreachable!() };
        let mut p = Complex64::new(1.0, 0.0);
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                let out = c * p;
                p *= s;
                out
            })
            .collect();
        Self::EntireSeries { name: format!("exp({s}·w)"), coeffs }
    }

    /// Natural logarithm on the positive half-line.
    pub fn log() -> Self {
        Self::SmoothReal { name: "log".into(), f: Arc::new(f64::ln), df: Some(Arc::new(|x| 1.0 / x)) }
    }

    /// `x^t` on the positive half-line.
    pub fn real_power(t: f64) -> Self {
        Self::SmoothReal {
            name: format!("x^{t}"),
            f: Arc::new(move |x| x.powf(t)),
            df: Some(Arc::new(move |x| t * x.powf(t - 1.0))),
        }
    }

    pub fn holomorphic(
        name: &str,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        df: Option<HoloFn>,
        radius: Option<f64>,
    ) -> Self {
        Self::Holomorphic { name: name.into(), f: Arc::new(f), df, radius }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::EntireSeries { name, .. } | Self::Holomorphic { name, .. } | Self::SmoothReal { name, .. } => name,
        }
    }

    pub fn coeffs(&self) -> Option<&[Complex64]> {
        match self {
            Self::EntireSeries { coeffs, .. } => Some(coeffs),
            _ => None,
        }
    }

    /// Degree if the series is a (short) polynomial.
    pub fn degree(&self) -> Option<usize> {
        let c = self.coeffs()?;
        let deg = c.iter().rposition(|x| x.norm() != 0.0).unwrap_or(0);
        (c.len() < EXP_TERMS).then_some(deg)
    }

    /// True for `a + b·w`.
    pub fn is_affine(&self) -> bool {
        self.degree().is_some_and(|d| d <= 1)
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        match self {
            Self::EntireSeries { coeffs, .. } => horner(coeffs, w),
            Self::Holomorphic { f, .. } => f(w),
            Self::SmoothReal { f, .. } => Complex64::new(f(w.re), 0.0),
        }
    }

    pub fn derivative(&self) -> Option<Self> {
        match self {
            Self::EntireSeries { name, coeffs } => Some(Self::EntireSeries {
                name: format!("d/dw {name}"),
                coeffs: coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect(),
            }),
            Self::Holomorphic { name, df, radius, .. } => df.as_ref().map(|d| Self::Holomorphic {
                name: format!("d/dw {name}"),
                f: d.clone(),
                df: None,
                radius: *radius,
            }),
            Self::SmoothReal { name, df, .. } => {
                df.as_ref().map(|d| Self::SmoothReal { name: format!("d/dx {name}"), f: d.clone(), df: None })
            }
        }
    }

    /// Majorant `f̃(x) = Σ |c_k| x^k`.
    pub fn majorant(&self, x: f64) -> Option<f64> {
        let c = self.coeffs()?;
        Some(c.iter().rev().fold(0.0, |acc, ck| acc * x + ck.norm()))
    }

    /// Radius of convergence of the stored representation.
    pub fn radius(&self) -> f64 {
        match self {
            Self::EntireSeries { .. } => f64::INFINITY,
            Self::Holomorphic { radius, .. } => radius.unwrap_or(f64::INFINITY),
            Self::SmoothReal { .. } => 0.0,
        }
    }
}

pub(crate) fn horner(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn exp_series_matches_std() {
        let e = FunctionSpec::exp();
        for w in [c64(1.0, 0.0), c64(-2.0, 1.5), c64(0.0, 3.0)] {
            assert!((e.eval(w) - w.exp()).norm() < 1e-13 * w.exp().norm().max(1.0));
        }
        assert!((e.majorant(1.0).unwrap() - std::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn derivative_of_polynomial() {
        let p = FunctionSpec::real_polynomial(&[1.0, 2.0, 3.0]);
        let d = p.derivative().unwrap();
        assert_eq!(d.coeffs().unwrap(), &[c64(2.0, 0.0), c64(6.0, 0.0)]);
        assert_eq!(p.degree(), Some(2));
        assert!(FunctionSpec::identity().is_affine());
        assert_eq!(FunctionSpec::exp().degree(), None);
    }

    #[test]
    fn real_power_and_log() {
        assert!((FunctionSpec::real_power(0.5).eval(c64(4.0, 0.0)) - c64(2.0, 0.0)).norm() < 1e-15);
        assert!((FunctionSpec::log().eval(c64(1.0, 0.0))).norm() < 1e-15);
    }
}
