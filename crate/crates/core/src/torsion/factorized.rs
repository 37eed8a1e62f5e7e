use num_complex::Complex64;

use super::tame::{joint_disk_points, tame_symbol_meromorphic, Meromorphic};
use super::{Method, TorsionError, TorsionResult};
use crate::symbols::{FourierSymbol, Part, RationalSymbol, SmoothSymbol};

/// `f = f₀ f₁ f₂` for `f = r e^{h}`: `f₀` collects `z^m` and the Blaschke
/// factors of the disk zeros and poles, `f₁ = outer · e^{h₊}` is invertible in
/// `H∞`, and `f₂ = e^{h₋}` is conjugate-analytic.
#[derive(Clone, Debug)]
pub struct SymbolFactors {
    pub rational: RationalSymbol,
    pub blaschke: RationalSymbol,
    /// `r / f₀`, with every zero and pole outside the closed disk.
    pub outer: RationalSymbol,
    pub plus: FourierSymbol,
    pub minus: FourierSymbol,
}

impl SymbolFactors {
    /// Taylor coefficients `F_k`, `k ≥ 1`, of `log f₁` (the constant is irrelevant
    /// to the pairings below), returned as `k·F_k` up to `k = kmax`.
    fn weighted_log_coeffs(&self, kmax: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); kmax + 1];
        // log(1 − z/c) = −Σ (z/c)^k / k for every outside zero, with the
        // opposite sign for poles.
        let factors = self
            .outer
            .zeros()
            .iter()
            .map(|c| (1.0 / c, 1.0))
            .chain(self.outer.poles().iter().map(|c| (1.0 / c, -1.0)));
        for (w, sign) in factors {
            let mut wk = Complex64::new(1.0, 0.0);
            for slot in out.iter_mut().skip(1) {
                wk *= w;
                *slot -= sign * wk;
            }
        }
        for (k, c) in self.plus.coeffs() {
            if k >= 1 && (k as usize) <= kmax {
                out[k as usize] += c * k as f64;
            }
        }
        out
    }
}

pub fn factorize_symbol(s: &SmoothSymbol) -> Result<SymbolFactors, TorsionError> {
    let r = &s.rational;
    r.check_circle_regular()?;
    let mut blaschke = RationalSymbol::monomial(r.monomial_exp());
    for a in r.zeros().iter().filter(|a| a.norm() < 1.0) {
        blaschke = blaschke.multiply(&RationalSymbol::blaschke(*a)?);
    }
    for b in r.poles().iter().filter(|b| b.norm() < 1.0) {
        blaschke = blaschke.divide(&RationalSymbol::blaschke(*b)?);
    }
    let outer = r.divide(&blaschke);
    if outer.monomial_exp() != 0 || outer.zeros().iter().chain(outer.poles()).any(|p| p.norm() <= 1.0) {
        return Err(TorsionError::Inconsistent("outer factor has divisor in the closed disk".into()));
    }
    Ok(SymbolFactors {
        rational: r.clone(),
        blaschke,
        outer,
        plus: s.exponent.riesz_project(Part::Plus),
        minus: s.exponent.riesz_project(Part::Minus),
    })
}

/// `(1/2πi)∫ log f₁ dlog g₂ = −Σ_{k≥1} k F_k G_{−k}`.
fn continuous_pairing(f: &SymbolFactors, g: &SymbolFactors) -> Complex64 {
    let kmax = g.minus.min_freq().map(|m| (-m) as usize).unwrap_or(0);
    if kmax == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let kf = f.weighted_log_coeffs(kmax);
    (1..=kmax).map(|k| -kf[k] * g.minus.coeff(-(k as i64))).sum()
}

/// Tame symbols of the meromorphic parts, the conjugate tame-symbol ratio, and
/// the two exponential pairings between analytic and conjugate-analytic parts.
pub fn torsion_factorized(f: &SmoothSymbol, g: &SmoothSymbol) -> Result<TorsionResult, TorsionError> {
    let ff = factorize_symbol(f)?;
    let gf = factorize_symbol(g)?;
    let mf = Meromorphic::new(ff.rational.clone(), ff.plus.clone())?;
    let mg = Meromorphic::new(gf.rational.clone(), gf.plus.clone())?;
    let f0_bar = Meromorphic::rational(ff.blaschke.conjugate());
    let g0_bar = Meromorphic::rational(gf.blaschke.conjugate());
    let f2_bar = Meromorphic::new(RationalSymbol::one(), ff.minus.conjugate())?;
    let g2_bar = Meromorphic::new(RationalSymbol::one(), gf.minus.conjugate())?;

    let mut discrete = Complex64::new(1.0, 0.0);
    for a in joint_disk_points(&ff.rational, &gf.rational) {
        let c = tame_symbol_meromorphic(&mf, &mg, a)?.value;
        let num = tame_symbol_meromorphic(&g0_bar, &f2_bar, a)?.value.conj();
        let den = tame_symbol_meromorphic(&f0_bar, &g2_bar, a)?.value.conj();
        discrete *= c * num / den;
    }
    let log_cont = continuous_pairing(&ff, &gf) - continuous_pairing(&gf, &ff);
    let value = discrete * log_cont.exp();
    let mut res = TorsionResult::exact(value, Method::Factorized);
    res.err_estimate = 64.0 * f64::EPSILON * value.norm() * (1.0 + log_cont.norm());
    res.notes.push(format!("discrete {discrete:.12}, continuous exp({log_cont:.12})"));
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn discrete_and_continuous_examples() {
        let lin = |a: f64| SmoothSymbol::from_rational(RationalSymbol::linear(c64(a, 0.0)));
        let v = torsion_factorized(&lin(0.5), &lin(0.3)).unwrap().value;
        assert!(close(v, c64(-1.0, 0.0)), "{v}");
        let e = torsion_factorized(&SmoothSymbol::exp_of(FourierSymbol::z()), &SmoothSymbol::exp_of(FourierSymbol::zbar()))
            .unwrap()
            .value;
        assert!(close(e, c64((-1f64).exp(), 0.0)), "{e}");
        let zb = SmoothSymbol::from_rational(RationalSymbol::zbar());
        let v = torsion_factorized(&lin(-2.0), &zb).unwrap().value;
        assert!(close(v, c64(0.5, 0.0)), "{v}");
    }

    #[test]
    fn outer_factor_pairs_with_antianalytic_part() {
        // τ(2 + z, e^{z̄}): f₁ = 2 + z, log f₁ = log 2 + z/2 − …, so the
        // pairing is −1·(1/2)·1 = −1/2.
        let f = SmoothSymbol::from_rational(RationalSymbol::linear(c64(-2.0, 0.0)));
        let g = SmoothSymbol::exp_of(FourierSymbol::zbar());
        let v = torsion_factorized(&f, &g).unwrap().value;
        assert!(close(v, c64((-0.5f64).exp(), 0.0)), "{v}");
    }

    #[test]
    fn blaschke_split_reconstructs() {
        let r = RationalSymbol::new(c64(1.5, 0.0), -1, vec![c64(0.4, 0.1), c64(2.0, 0.0)], vec![c64(0.3, -0.2)]).unwrap();
        let fac = factorize_symbol(&SmoothSymbol::from_rational(r.clone())).unwrap();
        for t in [0.0, 1.0, 2.0, 4.0] {
            let lhs = fac.blaschke.eval(t).unwrap() * fac.outer.eval(t).unwrap();
            assert!((lhs - r.eval(t).unwrap()).norm() < 1e-12);
        }
    }
}
