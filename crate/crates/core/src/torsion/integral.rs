use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{Method, TorsionError, TorsionResult};
use crate::symbols::{continuous_log, unwrap_grid_size, CircleFunction};

#[derive(Clone, Copy, Debug)]
pub struct IntegralOptions {
    /// Basepoint angle `θ₀`; the logs are continued from `p = e^{iθ₀}`.
    pub theta0: f64,
    pub tol: f64,
    pub max_grid: usize,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        Self { theta0: 0.0, tol: 1e-13, max_grid: 1 << 16 }
    }
}

impl IntegralOptions {
    pub fn at(theta0: f64) -> Self {
        Self { theta0, ..Default::default() }
    }
}

/// `exp((1/2πi)(∫ log f dlog g − log g(p) ∫ dlog f))` by trapezoid quadrature,
/// doubling the grid until the value settles.
pub fn torsion_integral(
    f: &impl CircleFunction,
    g: &impl CircleFunction,
    opts: IntegralOptions,
) -> Result<TorsionResult, TorsionError> {
    let mut len = unwrap_grid_size(f.resolution_hint().max(g.resolution_hint()));
    let mut history = vec![(len, value_on_grid(f, g, opts.theta0, len)?)];
    loop {
        len *= 2;
        let v = value_on_grid(f, g, opts.theta0, len)?;
        let prev = history[history.len() - 1].1;
        history.push((len, v));
        if (v - prev).norm() <= opts.tol * v.norm() || len >= opts.max_grid {
            break;
        }
    }
    let k = history.len();
    let value = history[k - 1].1;
    let err_estimate = (value - history[k - 2].1).norm();
    let mut notes = vec![format!("basepoint theta0 = {}", opts.theta0)];
    if err_estimate > 1e-10 * value.norm() {
        notes.push(format!("quadrature still changing at {} points", history[k - 1].0));
    }
    Ok(TorsionResult {
        value,
        method: Method::Integral,
        dims: history.iter().map(|h| h.0).collect(),
        err_estimate,
        notes,
        history,
    })
}

fn value_on_grid(
    f: &impl CircleFunction,
    g: &impl CircleFunction,
    theta0: f64,
    len: usize,
) -> Result<Complex64, TorsionError> {
    let lf = continuous_log(f, theta0, len)?;
    let lg = continuous_log(g, theta0, len)?;
    let (nf, ng) = (lf.winding as f64, lg.winding as f64);
    let i = Complex64::i();
    let h = TAU / len as f64;
    // Periodic parts: log f = L_f + i n_f (θ − θ₀).
    let periodic = |v: Complex64, t: f64, n: f64| v - i * n * (t - theta0);
    let mut int_lf_dg = Complex64::new(0.0, 0.0);
    let mut int_lg = Complex64::new(0.0, 0.0);
    for j in 0..len {
        let t = lf.grid[j];
        int_lf_dg += periodic(lf.values[j], t, nf) * g.log_derivative_at(t);
        int_lg += periodic(lg.values[j], t, ng);
    }
    int_lf_dg *= h;
    int_lg *= h;
    let lg0 = lg.values[0];
    // ∫(θ − θ₀) dlog g, integrated by parts over one turn.
    let ramp = TAU * lg0 + 2.0 * PI * PI * i * ng - int_lg;
    let total = int_lf_dg + i * nf * ramp;
    let correction = lg0 * TAU * i * nf;
    Ok(((total - correction) / (TAU * i)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::symbols::{FourierSymbol, RationalSymbol};

    #[test]
    fn shift_with_itself() {
        let z = FourierSymbol::z();
        let r = torsion_integral(&z, &z, IntegralOptions::default()).unwrap();
        assert!((r.value - c64(-1.0, 0.0)).norm() < 1e-12, "{}", r.value);
    }

    #[test]
    fn exponential_pair() {
        let f = (&FourierSymbol::z() + &FourierSymbol::zbar()).exp().unwrap();
        let g = FourierSymbol::zbar().exp().unwrap();
        let r = torsion_integral(&f, &g, IntegralOptions::default()).unwrap();
        assert!((r.value - c64((-1f64).exp(), 0.0)).norm() < 1e-12, "{}", r.value);
    }

    #[test]
    fn basepoint_independence() {
        let f = RationalSymbol::linear(c64(0.5, 0.2));
        let g = RationalSymbol::linear(c64(-0.3, 0.0)).multiply(&RationalSymbol::zbar().pow(2));
        let a = torsion_integral(&f, &g, IntegralOptions::at(0.0)).unwrap();
        let b = torsion_integral(&f, &g, IntegralOptions::at(1.1)).unwrap();
        assert!((a.value - b.value).norm() < 1e-10 + a.err_estimate + b.err_estimate);
    }

    #[test]
    fn rational_closed_forms() {
        let f = RationalSymbol::linear(c64(0.5, 0.0));
        let g = RationalSymbol::linear(c64(2.0, 0.0));
        let r = torsion_integral(&f, &g, IntegralOptions::default()).unwrap();
        assert!((r.value - c64(1.0 / (0.5 - 2.0), 0.0)).norm() < 1e-10, "{}", r.value);
        let g = RationalSymbol::zbar();
        let r = torsion_integral(&f, &g, IntegralOptions::default()).unwrap();
        assert!((r.value - c64(-1.0, 0.0)).norm() < 1e-10, "{}", r.value);
    }
}
