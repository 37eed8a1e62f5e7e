use num_complex::Complex64;

use super::det::torsion_det_operands;
use super::tame::torsion_tame;
use super::{Method, TorsionError, TorsionResult};
use crate::function::FunctionSpec;
use crate::sections::{toeplitz_matrix, DetOptions, MatrixFunctionMode, Operand, PadRule, Schedule, Word};
use crate::symbols::{grouped_roots, winding_number, FourierSymbol, RationalSymbol, SmoothSymbol, DELTA_CIRCLE};

/// Partner operator with an explicit one-dimensional kernel or cokernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelSpec {
    /// `T_z − λ`.
    ZMinus(Complex64),
    /// `T_z̄ − λ`.
    ZbarMinus(Complex64),
}

/// `⟨T_{φ̄} k_λ, k_λ⟩ / ⟨k_λ, k_λ⟩` on the truncated Szegő kernel
/// `k_λ = Σ (λ̄z)^k`, which spans `ker(T_z̄ − λ̄)`. Returns `φ(λ)` and the
/// eigen-residual `‖T_{φ̄}k − μk‖ / ‖k‖`.
fn szego_eigenvalue(phi: &FourierSymbol, lambda: Complex64) -> (Complex64, f64) {
    let r = lambda.norm();
    let len = if r == 0.0 { 1 } else { ((-40.0 / r.ln()).ceil() as usize).clamp(1, 4096) };
    let len = len + phi.bandwidth();
    let k: Vec<Complex64> = (0..len).map(|j| lambda.conj().powi(j as i32)).collect();
    let t = toeplitz_matrix(&phi.conjugate(), len, len);
    let tk: Vec<Complex64> = (0..len).map(|i| (0..len).map(|j| t[(i, j)] * k[j]).sum()).collect();
    let kk: f64 = k.iter().map(|x| x.norm_sqr()).sum();
    let mu = tk.iter().zip(&k).map(|(a, b)| a * b.conj()).sum::<Complex64>() / kk;
    // The last bandwidth rows see the truncation; measure the relation above them.
    let head = len - phi.bandwidth();
    let res = (0..head).map(|i| (tk[i] - mu * k[i]).norm_sqr()).sum::<f64>().sqrt() / kk.sqrt();
    (mu.conj(), res)
}

/// `τ(T_φ, T_z − λ)` or `τ(T_φ, T_z̄ − λ)` for `φ` invertible in `H∞`, through the
/// determinant of `T_{φ̄}` on the Szegő kernel line.
pub fn lefschetz_torsion(phi: &FourierSymbol, spec: KernelSpec) -> Result<TorsionResult, TorsionError> {
    if !phi.is_analytic() {
        return Err(TorsionError::NotApplicable("symbol has negative frequencies".into()));
    }
    if winding_number(phi)? != 0 {
        return Err(TorsionError::NotApplicable("symbol is not invertible in H-infinity".into()));
    }
    let on_circle = |l: Complex64| (l.norm() - 1.0).abs() < DELTA_CIRCLE;
    let mut notes = Vec::new();
    let mut eval = |l: Complex64| {
        let (v, res) = szego_eigenvalue(phi, l);
        notes.push(format!("det on ker(T_zbar - conj({l:.4})) = conj({v:.12}), residual {res:.2e}"));
        v
    };
    let value = match spec {
        KernelSpec::ZMinus(l) | KernelSpec::ZbarMinus(l) if on_circle(l) => {
            return Err(TorsionError::NotApplicable(format!("{l} lies on the unit circle")));
        }
        KernelSpec::ZMinus(l) if l.norm() > 1.0 => Complex64::new(1.0, 0.0),
        KernelSpec::ZMinus(l) => eval(l),
        KernelSpec::ZbarMinus(l) if l.norm() < 1.0 => 1.0 / eval(Complex64::new(0.0, 0.0)),
        KernelSpec::ZbarMinus(l) => eval(1.0 / l) / eval(Complex64::new(0.0, 0.0)),
    };
    let mut res = TorsionResult::exact(value, Method::Lefschetz);
    res.notes = notes;
    Ok(res)
}

/// Both sides of `τ(f(A), B) = Π τ(A − λ, B)^{ord_λ f} · τ(q(A), B)`.
#[derive(Clone, Debug)]
pub struct FactorizationSides {
    pub lhs: TorsionResult,
    pub rhs: TorsionResult,
    /// `(λ, ord_λ f, winding(a − λ))` for every distinct root.
    pub roots: Vec<(Complex64, i32, i32)>,
}

fn poly_from_roots(lead: Complex64, roots: &[(Complex64, i32)]) -> Vec<Complex64> {
    let mut p = vec![lead];
    for &(r, m) in roots {
        for _ in 0..m {
            let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (k, c) in p.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            p = next;
        }
    }
    p
}

fn analytic_rational(s: &SmoothSymbol) -> Option<&RationalSymbol> {
    let r = &s.rational;
    let holo = r.monomial_exp() >= 0 && r.poles().iter().all(|b| b.norm() > 1.0);
    (s.is_rational() && holo).then_some(r)
}

/// `(f∘a)` as a rational symbol, `lead · Π (a − λ)^{m}`.
fn compose_rational(a: &RationalSymbol, lead: Complex64, roots: &[(Complex64, i32)]) -> Result<RationalSymbol, TorsionError> {
    let mut out = RationalSymbol::constant(lead)?;
    for &(l, m) in roots {
        out = out.multiply(&a.add_constant(-l)?.pow(m));
    }
    Ok(out)
}

/// Evaluates both sides of the factorization through the roots of `f`.
/// Roots with `winding(a − λ) = 0` are kept in `q`, so `q(T_a)` is invertible.
pub fn functional_factorization(
    f: &[Complex64],
    a: &SmoothSymbol,
    b: &SmoothSymbol,
    schedule: &Schedule,
) -> Result<FactorizationSides, TorsionError> {
    let mut coeffs = f.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let lead = *coeffs.last().ok_or_else(|| TorsionError::NotApplicable("zero polynomial".into()))?;
    let a_f = a.to_fourier()?;
    let b_f = b.to_fourier()?;
    let roots = grouped_roots(&coeffs);
    let mut tagged = Vec::new();
    for &(l, m) in &roots {
        let shifted = &a_f - &FourierSymbol::constant(l);
        tagged.push((l, m, winding_number(&shifted)?));
    }
    let opts = DetOptions { schedule: schedule.clone(), pad: PadRule::Equal };
    let rational_b = b.is_rational().then_some(&b.rational);
    let ta = Word::toeplitz(a_f.clone());
    let b_op = Operand::Symbol(b_f.clone());

    let lhs = match (analytic_rational(a), rational_b) {
        (Some(ar), Some(br)) => torsion_tame(&compose_rational(ar, lead, &roots)?, br)?,
        _ => {
            let index: i32 = -tagged.iter().map(|t| t.1 * t.2).sum::<i32>();
            let word = ta.apply(FunctionSpec::polynomial(&coeffs), MatrixFunctionMode::PowerSeries);
            torsion_det_operands(&Operand::Word { word, index }, &b_op, &opts)?
        }
    };

    let mut value = Complex64::new(1.0, 0.0);
    let mut rel_err = 0.0;
    let mut dims = Vec::new();
    let mut notes = Vec::new();
    for &(l, m, _) in tagged.iter().filter(|t| t.2 != 0) {
        let factor = match (a.is_rational().then_some(&a.rational), rational_b) {
            (Some(ar), Some(br)) => torsion_tame(&ar.add_constant(-l)?, br)?,
            _ => {
                let shifted = &a_f - &FourierSymbol::constant(l);
                torsion_det_operands(&Operand::Symbol(shifted), &b_op, &opts)?
            }
        };
        notes.push(format!("tau(a - {l:.6}, b)^{m} with tau = {:.12} ({})", factor.value, factor.method));
        rel_err += m.unsigned_abs() as f64 * factor.err_estimate / factor.value.norm();
        value *= factor.value.powi(m);
        dims.extend(factor.dims);
    }
    let kept: Vec<(Complex64, i32)> = tagged.iter().filter(|t| t.2 == 0).map(|t| (t.0, t.1)).collect();
    let q = poly_from_roots(lead, &kept);
    let q_word = ta.apply(FunctionSpec::polynomial(&q), MatrixFunctionMode::PowerSeries);
    let tq = torsion_det_operands(&Operand::Word { word: q_word, index: 0 }, &b_op, &opts)?;
    notes.push(format!("tau(q(A), B) = {:.12}", tq.value));
    rel_err += tq.err_estimate / tq.value.norm();
    value *= tq.value;
    dims.extend(tq.dims.iter().copied());
    let rhs = TorsionResult {
        value,
        method: Method::Det,
        dims,
        err_estimate: rel_err * value.norm(),
        notes,
        history: tq.history,
    };
    Ok(FactorizationSides { lhs, rhs, roots: tagged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn two_plus_z() -> FourierSymbol {
        &FourierSymbol::constant(c64(2.0, 0.0)) + &FourierSymbol::z()
    }

    #[test]
    fn lefschetz_examples() {
        let v = |s: KernelSpec| lefschetz_torsion(&two_plus_z(), s).unwrap().value;
        assert!((v(KernelSpec::ZMinus(c64(0.0, 0.0))) - c64(2.0, 0.0)).norm() < 1e-14);
        assert!((v(KernelSpec::ZMinus(c64(0.5, 0.0))) - c64(2.5, 0.0)).norm() < 1e-13);
        assert!((v(KernelSpec::ZMinus(c64(3.0, 0.0))) - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((v(KernelSpec::ZbarMinus(c64(0.3, 0.2))) - c64(0.5, 0.0)).norm() < 1e-14);
        // |λ| > 1: φ(1/λ)/φ(0).
        assert!((v(KernelSpec::ZbarMinus(c64(2.0, 0.0))) - c64(2.5 / 2.0, 0.0)).norm() < 1e-13);
        let one = FourierSymbol::constant(c64(1.0, 0.0));
        assert_eq!(lefschetz_torsion(&one, KernelSpec::ZMinus(c64(0.4, 0.0))).unwrap().value, c64(1.0, 0.0));
        assert!(lefschetz_torsion(&FourierSymbol::zbar(), KernelSpec::ZMinus(c64(0.0, 0.0))).is_err());
    }

    #[test]
    fn factorization_examples() {
        let z = SmoothSymbol::from_rational(RationalSymbol::z());
        let zb = SmoothSymbol::from_rational(RationalSymbol::zbar());
        let sched = Schedule::up_to(64);
        let s = functional_factorization(&[c64(0.0, 0.0), c64(-0.5, 0.0), c64(1.0, 0.0)], &z, &zb, &sched).unwrap();
        assert!((s.lhs.value - c64(1.0, 0.0)).norm() < 1e-12, "{}", s.lhs.value);
        assert!((s.rhs.value - c64(1.0, 0.0)).norm() < 1e-8, "{}", s.rhs.value);

        let b = SmoothSymbol::from_rational(RationalSymbol::linear(c64(-2.0, 0.0)));
        let s = functional_factorization(&[c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)], &z, &b, &sched).unwrap();
        assert!((s.lhs.value - c64(0.25, 0.0)).norm() < 1e-12);
        assert!((s.rhs.value - c64(0.25, 0.0)).norm() < 1e-8, "{}", s.rhs.value);

        let s = functional_factorization(&[c64(-2.0, 0.0), c64(1.0, 0.0)], &z, &zb, &sched).unwrap();
        assert!((s.lhs.value - s.rhs.value).norm() < 1e-8, "{} {}", s.lhs.value, s.rhs.value);
        assert!(s.roots.iter().all(|r| r.2 == 0));
    }
}
