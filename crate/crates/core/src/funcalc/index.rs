use num_complex::Complex64;
use serde::Serialize;

use super::FuncalcError;
use crate::function::horner;
use crate::symbols::{grouped_roots, sample_grid, unwrap_grid_size, winding_number_sampled, CircleFunction};

#[derive(Clone, Debug, Serialize)]
pub struct IndexComparison {
    /// `−wind(f∘a)` from samples of the composed symbol.
    pub computed: i64,
    /// `Σ_λ ord_λ f · ind(T_a − λ)` over the roots of `f`.
    pub formula: i64,
    /// `(λ, ord_λ f, ind(T_a − λ))`.
    pub roots: Vec<(Complex64, i32, i32)>,
    pub agree: bool,
}

/// Index of `f(T_a)` for a polynomial `f` and a symbol `a` whose range avoids
/// the roots of `f`.
pub fn index_of_composition(f: &[Complex64], a: &impl CircleFunction) -> Result<IndexComparison, FuncalcError> {
    if f.iter().all(|c| c.norm() == 0.0) {
        return Err(FuncalcError::Unsupported("zero polynomial".into()));
    }
    let len = unwrap_grid_size(a.resolution_hint() * f.len().max(1));
    let samples: Vec<Complex64> = sample_grid(len, 0.0).into_iter().map(|t| a.value_at(t)).collect();
    let composed: Vec<Complex64> = samples.iter().map(|&w| horner(f, w)).collect();
    let computed = -(winding_number_sampled(&composed)? as i64);
    let mut roots = Vec::new();
    let mut formula = 0i64;
    for (l, m) in grouped_roots(f) {
        let shifted: Vec<Complex64> = samples.iter().map(|&w| w - l).collect();
        let ind = -winding_number_sampled(&shifted)?;
        formula += m as i64 * ind as i64;
        roots.push((l, m, ind));
    }
    Ok(IndexComparison { computed, formula, roots, agree: computed == formula })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::symbols::FourierSymbol;

    fn real(c: &[f64]) -> Vec<Complex64> {
        c.iter().map(|&x| c64(x, 0.0)).collect()
    }

    #[test]
    fn composition_examples() {
        let z = FourierSymbol::z();
        let r = index_of_composition(&real(&[0.0, 0.0, 1.0]), &z).unwrap();
        assert_eq!((r.computed, r.formula), (-2, -2));
        let r = index_of_composition(&real(&[-4.0, 0.0, 1.0]), &z).unwrap();
        assert_eq!((r.computed, r.formula), (0, 0));
        // w(w − 0.5)(w − 3) on z: two roots inside, one outside.
        let r = index_of_composition(&real(&[0.0, 1.5, -3.5, 1.0]), &z).unwrap();
        assert_eq!((r.computed, r.formula), (-2, -2));
        assert_eq!(r.roots.len(), 3);
    }

    #[test]
    fn conjugate_symbol_flips_sign() {
        let r = index_of_composition(&real(&[0.0, 0.0, 0.0, 1.0]), &FourierSymbol::zbar()).unwrap();
        assert_eq!((r.computed, r.formula), (3, 3));
    }
}
