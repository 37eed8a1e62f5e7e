use num_complex::Complex64;

use crate::linalg;

/// Roots of `Σ coeffs[k] w^k` (ascending coefficients), from the companion
/// matrix eigenvalues followed by a few Newton steps on the original
/// polynomial.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return vec![];
    }
    let lead = c[deg];
    if deg == 1 {
        return vec![-c[0] / lead];
    }
    let companion = linalg::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut roots = linalg::eigenvalues(&companion).unwrap_or_default();
    let deriv: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let p = horner(&c, *r);
            let dp = horner(&deriv, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            // Newton is only trusted while it shrinks the residual.
            let cand = *r - step;
            if horner(&c, cand).norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
        if r.norm() < 1e-14 * lead.norm().max(1.0) {
            *r = Complex64::new(0.0, 0.0);
        }
    }
    roots
}

pub(crate) fn horner(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
}

/// Roots of `Σ coeffs[k] w^k` grouped with multiplicity.
pub fn grouped_roots(coeffs: &[Complex64]) -> Vec<(Complex64, i32)> {
    let mut out: Vec<(Complex64, i32)> = Vec::new();
    for r in polynomial_roots(coeffs) {
        match out.iter_mut().find(|(c, _)| (*c - r).norm() < 1e-6) {
            Some(slot) => {
                slot.0 = (slot.0 * slot.1 as f64 + r) / (slot.1 + 1) as f64;
                slot.1 += 1;
            }
            None => out.push((r, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn recovers_known_roots() {
        // (w − 0.5)²(w − 3) = w³ − 4w² + 3.25w − 0.75
        let r = polynomial_roots(&[c64(-0.75, 0.0), c64(3.25, 0.0), c64(-4.0, 0.0), c64(1.0, 0.0)]);
        let near = |x: f64| r.iter().filter(|z| (**z - c64(x, 0.0)).norm() < 1e-7).count();
        assert_eq!(near(0.5), 2);
        assert_eq!(near(3.0), 1);
    }

    #[test]
    fn linear_and_constant() {
        assert!(polynomial_roots(&[c64(5.0, 0.0)]).is_empty());
        assert_eq!(polynomial_roots(&[c64(-2.0, 0.0), c64(1.0, 0.0)]), vec![c64(2.0, 0.0)]);
    }
}
