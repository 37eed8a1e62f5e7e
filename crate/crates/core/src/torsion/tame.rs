use num_complex::Complex64;

use super::{Method, TorsionError, TorsionResult};
use crate::symbols::{FourierSymbol, RationalSymbol, DELTA_ROOT};

/// `c_λ(f, g)` together with the orders that entered it.
#[derive(Clone, Debug, PartialEq)]
pub struct TameSymbolValue {
    pub location: Complex64,
    pub value: Complex64,
    /// `(ord_λ f, ord_λ g)`.
    pub orders: (i32, i32),
}

/// `r(z) · exp(h(z))` with `h` analytic in the disk (nonnegative frequencies),
/// so the meromorphic extension has its divisor in `r` alone.
#[derive(Clone, Debug)]
pub struct Meromorphic {
    pub rational: RationalSymbol,
    pub analytic: FourierSymbol,
}

impl Meromorphic {
    pub fn new(rational: RationalSymbol, analytic: FourierSymbol) -> Result<Self, TorsionError> {
        if !analytic.is_analytic() {
            return Err(TorsionError::NotApplicable("exponent has negative frequencies".into()));
        }
        Ok(Self { rational, analytic })
    }

    pub fn rational(r: RationalSymbol) -> Self {
        Self { rational: r, analytic: FourierSymbol::zero() }
    }

    fn split_at(&self, lambda: Complex64) -> Result<(i32, Complex64), TorsionError> {
        let (ord, rest) = self.rational.split_at(lambda);
        let value = rest.eval_z(lambda)? * self.analytic.eval_z(lambda).exp();
        if value.norm() == 0.0 || !value.is_finite() {
            return Err(TorsionError::Inconsistent(format!("regular part degenerate at {lambda}")));
        }
        Ok((ord, value))
    }
}

/// `(−1)^{ab} f^b / g^a (λ)` with `a = ord_λ f`, `b = ord_λ g`, the `(z − λ)`
/// factors removed before evaluating.
pub fn tame_symbol(f: &RationalSymbol, g: &RationalSymbol, lambda: Complex64) -> Result<TameSymbolValue, TorsionError> {
    tame_symbol_meromorphic(&Meromorphic::rational(f.clone()), &Meromorphic::rational(g.clone()), lambda)
}

pub fn tame_symbol_meromorphic(
    f: &Meromorphic,
    g: &Meromorphic,
    lambda: Complex64,
) -> Result<TameSymbolValue, TorsionError> {
    let (a, fv) = f.split_at(lambda)?;
    let (b, gv) = g.split_at(lambda)?;
    let sign = if (a * b) % 2 == 0 { 1.0 } else { -1.0 };
    let value = sign * fv.powi(b) / gv.powi(a);
    Ok(TameSymbolValue { location: lambda, value, orders: (a, b) })
}

/// Distinct divisor points of either symbol inside the open disk.
pub(crate) fn joint_disk_points(f: &RationalSymbol, g: &RationalSymbol) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = Vec::new();
    for p in f.disk_divisor_points().into_iter().chain(g.disk_divisor_points()) {
        if !pts.iter().any(|q| (q - p).norm() < DELTA_ROOT) {
            pts.push(p);
        }
    }
    pts
}

/// Product of tame symbols over the disk; exact.
pub fn torsion_tame(f: &RationalSymbol, g: &RationalSymbol) -> Result<TorsionResult, TorsionError> {
    f.check_circle_regular()?;
    g.check_circle_regular()?;
    let mut value = Complex64::new(1.0, 0.0);
    let mut notes = Vec::new();
    for p in joint_disk_points(f, g) {
        let c = tame_symbol(f, g, p)?;
        notes.push(format!("c_{{{:.6}}} = {:.12} (ord {}, {})", p, c.value, c.orders.0, c.orders.1));
        value *= c.value;
    }
    let mut res = TorsionResult::exact(value, Method::Tame);
    res.notes = notes;
    Ok(res)
}
