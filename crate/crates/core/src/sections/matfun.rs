use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{OperatorSection, SectionError};
use crate::function::FunctionSpec;
use crate::linalg::{self, CMat, Lu};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFunctionMode {
    HermitianEig,
    PowerSeries,
    Contour,
    /// Power series for entire series, eigendecomposition for real
    /// functions, contour otherwise.
    Auto,
}

const CONTOUR_TOL: f64 = 1e-13;
const CONTOUR_MAX_NODES: usize = 1024;

pub fn matrix_function(
    sec: &OperatorSection,
    f: &FunctionSpec,
    mode: MatrixFunctionMode,
) -> Result<OperatorSection, SectionError> {
    let mode = match mode {
        MatrixFunctionMode::Auto => match f {
            FunctionSpec::EntireSeries { .. } => MatrixFunctionMode::PowerSeries,
            FunctionSpec::SmoothReal { .. } => MatrixFunctionMode::HermitianEig,
            FunctionSpec::Holomorphic { .. } => MatrixFunctionMode::Contour,
        },
        m => m,
    };
    let entries = match mode {
        MatrixFunctionMode::HermitianEig => hermitian(&sec.entries, f)?,
        MatrixFunctionMode::PowerSeries => power_series(&sec.entries, f)?,
        MatrixFunctionMode::Contour => contour(&sec.entries, f, None)?,
        MatrixFunctionMode::Auto => unreachable!(),
    };
    Ok(OperatorSection::new(entries, sec.pad_used, format!("{f}({})", sec.provenance)))
}

fn hermitian(a: &CMat, f: &FunctionSpec) -> Result<CMat, SectionError> {
    let tol = 1e-10;
    if !linalg::is_hermitian(a, tol) {
        return Err(SectionError::NotHermitian { tol });
    }
    // Symmetrize so roundoff asymmetry does not leak into the eigenvectors.
    let h = linalg::scaled(&(a + a.adjoint()), Complex64::new(0.5, 0.0));
    Ok(linalg::hermitian_function(&h, |x| f.eval(Complex64::new(x, 0.0)))?)
}

/// Horner evaluation, truncated where the majorant tail at the spectral norm
/// becomes negligible.
fn power_series(a: &CMat, f: &FunctionSpec) -> Result<CMat, SectionError> {
    let coeffs = f.coeffs().ok_or_else(|| SectionError::UnsupportedFunction(f.name().into()))?;
    let n = a.nrows();
    let norm = linalg::spectral_norm(a)?;
    let total = f.majorant(norm).unwrap_or(0.0);
    let mut last = coeffs.iter().rposition(|c| c.norm() != 0.0).unwrap_or(0);
    // Drop trailing terms whose majorant contribution is below roundoff.
    let mut tail = 0.0;
    while last > 0 {
        let t = coeffs[last].norm() * norm.powi(last as i32);
        if tail + t > 1e-17 * total.max(1.0) {
            break;
        }
        tail += t;
        last -= 1;
    }
    if coeffs.len() > 1 && last + 1 == coeffs.len() && f.degree().is_none() {
        let t = coeffs[last].norm() * norm.powi(last as i32);
        if t > 1e-14 * total.max(1.0) {
            return Err(SectionError::SeriesTail { tail: t, norm });
        }
    }
    let mut acc = linalg::scaled(&linalg::identity(n), coeffs[last]);
    for k in (0..last).rev() {
        acc = &acc * a;
        for i in 0..n {
            acc[(i, i)] += coeffs[k];
        }
    }
    Ok(acc)
}

/// `(1/2πi)∮ f(λ)(λ − A)⁻¹ dλ` on a circle, trapezoid rule with node doubling.
pub(crate) fn contour(a: &CMat, f: &FunctionSpec, radius: Option<f64>) -> Result<CMat, SectionError> {
    let n = a.nrows();
    let radius = match radius {
        Some(r) => r,
        None => 1.25 * power_norm_estimate(a).max(1e-3),
    };
    if radius >= f.radius() {
        return Err(SectionError::SpectrumNotEnclosed { radius, limit: f.radius(), function: f.name().into() });
    }
    // Nodes at angles 2πj/K; doubling only adds the odd-indexed nodes.
    let node_sum = |count: usize, offset: usize, stride: usize| -> Result<CMat, SectionError> {
        let mut acc = linalg::zeros(n, n);
        for j in (offset..count).step_by(stride) {
            let w = Complex64::from_polar(radius, TAU * j as f64 / count as f64);
            let mut shifted = linalg::scaled(a, Complex64::new(-1.0, 0.0));
            for i in 0..n {
                shifted[(i, i)] += w;
            }
            let resolvent = Lu::new(&shifted, 1e-15)?.inverse();
            acc += linalg::scaled(&resolvent, f.eval(w) * w);
        }
        Ok(acc)
    };
    let mut count = 32;
    let mut sum = node_sum(count, 0, 1)?;
    let mut current = linalg::scaled(&sum, Complex64::new(1.0 / count as f64, 0.0));
    loop {
        count *= 2;
        sum += node_sum(count, 1, 2)?;
        let next = linalg::scaled(&sum, Complex64::new(1.0 / count as f64, 0.0));
        let change = linalg::max_abs(&(&next - &current));
        let scale = linalg::max_abs(&next).max(1.0);
        current = next;
        if change <= CONTOUR_TOL * scale {
            return Ok(current);
        }
        if count >= CONTOUR_MAX_NODES {
            return Err(SectionError::QuadratureNotConverged { nodes: count, change });
        }
    }
}

/// Upper estimate of the spectral norm from a few power iterations on `A*A`,
/// inflated slightly.
fn power_norm_estimate(a: &CMat) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 0.0;
    }
    let mut v = linalg::from_fn(n, 1, |i, _| Complex64::new(1.0 + 0.01 * i as f64, 0.0));
    let mut est = 0.0;
    for _ in 0..40 {
        let nv = v.norm_l2();
        v = linalg::scaled(&v, Complex64::new(1.0 / nv, 0.0));
        let av = a * &v;
        est = av.norm_l2();
        v = a.adjoint() * &av;
    }
    // Power iteration approaches the norm from below; the Frobenius norm caps it.
    (1.1 * est).min(a.norm_l2()).max(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::sections::toeplitz_section;
    use crate::symbols::FourierSymbol;

    fn max_diff(a: &CMat, b: &CMat) -> f64 {
        linalg::max_abs(&(a - b))
    }

    #[test]
    fn identity_function_is_identity() {
        let sec = toeplitz_section(&(&FourierSymbol::z() + &FourierSymbol::zbar()), 6);
        for mode in [MatrixFunctionMode::PowerSeries, MatrixFunctionMode::Contour, MatrixFunctionMode::HermitianEig] {
            let out = matrix_function(&sec, &FunctionSpec::identity(), mode).unwrap();
            assert!(max_diff(&out.entries, &sec.entries) < 1e-12, "{mode:?}");
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let sec = OperatorSection::new(linalg::zeros(4, 4), 0, "0");
        let out = matrix_function(&sec, &FunctionSpec::exp(), MatrixFunctionMode::Auto).unwrap();
        assert!(max_diff(&out.entries, &linalg::identity(4)) < 1e-15);
    }

    #[test]
    fn square_of_shift_is_toeplitz_of_z_squared() {
        let sec = toeplitz_section(&FourierSymbol::z(), 5);
        let expected = toeplitz_section(&FourierSymbol::monomial(2), 5);
        for mode in [MatrixFunctionMode::PowerSeries, MatrixFunctionMode::Contour] {
            let out = matrix_function(&sec, &FunctionSpec::power(2), mode).unwrap();
            assert!(max_diff(&out.entries, &expected.entries) < 1e-12, "{mode:?}");
        }
    }

    #[test]
    fn modes_agree_on_exp_of_hermitian() {
        let s = FourierSymbol::from_real_trig(0.3, &[1.0, 0.5], &[0.2]);
        let sec = toeplitz_section(&s, 12);
        let a = matrix_function(&sec, &FunctionSpec::exp(), MatrixFunctionMode::PowerSeries).unwrap();
        let b = matrix_function(&sec, &FunctionSpec::exp(), MatrixFunctionMode::HermitianEig).unwrap();
        let c = matrix_function(&sec, &FunctionSpec::exp(), MatrixFunctionMode::Contour).unwrap();
        assert!(max_diff(&a.entries, &b.entries) < 1e-12);
        assert!(max_diff(&a.entries, &c.entries) < 1e-11);
    }

    #[test]
    fn contour_rejects_small_radius() {
        let sec = toeplitz_section(&FourierSymbol::constant(c64(3.0, 0.0)), 3);
        let f = FunctionSpec::holomorphic("1/(1-w)", |w| 1.0 / (1.0 - w), None, Some(1.0));
        assert!(matches!(
            matrix_function(&sec, &f, MatrixFunctionMode::Contour),
            Err(SectionError::SpectrumNotEnclosed { .. })
        ));
    }

    #[test]
    fn non_hermitian_rejected() {
        let sec = toeplitz_section(&FourierSymbol::z(), 3);
        assert!(matches!(
            matrix_function(&sec, &FunctionSpec::exp(), MatrixFunctionMode::HermitianEig),
            Err(SectionError::NotHermitian { .. })
        ));
    }
}
