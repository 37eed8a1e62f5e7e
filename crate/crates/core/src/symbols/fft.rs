use num_complex::Complex64;
use rustfft::FftPlanner;

/// Uniform grid `θ_j = θ₀ + 2πj/L`, `j = 0..L`.
pub fn sample_grid(len: usize, theta0: f64) -> Vec<f64> {
    let step = std::f64::consts::TAU / len as f64;
    (0..len).map(|j| theta0 + step * j as f64).collect()
}

/// Fourier coefficients `c_n`, `-L/2 <= n < L/2`, of the trigonometric
/// interpolant through samples taken on `sample_grid(L, 0)`.
pub fn coefficients_from_samples(samples: &[Complex64]) -> Vec<(i64, Complex64)> {
    let len = samples.len();
    let mut buf = samples.to_vec();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(len).process(&mut buf);
    let scale = 1.0 / len as f64;
    let half = (len / 2) as i64;
    (0..len)
        .map(|k| {
            let n = if (k as i64) < half { k as i64 } else { k as i64 - len as i64 };
            (n, buf[k] * scale)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_trig_polynomial() {
        let grid = sample_grid(16, 0.0);
        let samples: Vec<_> = grid
            .iter()
            .map(|&t| Complex64::new(3.0, 0.0) + Complex64::from_polar(2.0, 2.0 * t) + Complex64::from_polar(0.5, -3.0 * t))
            .collect();
        let coeffs = coefficients_from_samples(&samples);
        for (n, c) in coeffs {
            let expected = match n {
                0 => 3.0,
                2 => 2.0,
                -3 => 0.5,
                _ => 0.0,
            };
            assert!((c - Complex64::new(expected, 0.0)).norm() < 1e-14, "n={n} c={c}");
        }
    }
}
