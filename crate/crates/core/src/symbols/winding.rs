use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use super::fft::sample_grid;
use super::{CircleFunction, SymbolError};

/// `max(1024, 64·K)`, rounded up to a power of two so the grid feeds the FFT.
pub fn unwrap_grid_size(bandwidth: usize) -> usize {
    (64 * bandwidth).max(1024).next_power_of_two()
}

/// A branch of `log f` along a uniform grid starting at `θ₀`, continuous
/// along the grid, with the integer winding it accumulates over one turn.
#[derive(Clone, Debug)]
pub struct ContinuousLog {
    pub theta0: f64,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub winding: i32,
}

fn check_samples(samples: &[Complex64]) -> Result<(), SymbolError> {
    let scale = samples.iter().map(|s| s.norm()).fold(0.0, f64::max).max(1.0);
    let min = samples.iter().map(|s| s.norm()).fold(f64::INFINITY, f64::min);
    if !(min > 1e-12 * scale) {
        return Err(SymbolError::VanishesOnCircle { min_modulus: min });
    }
    Ok(())
}

/// Unwrapped arguments along a closed sample loop; the last entry is the
/// argument after returning to the first sample.
fn unwrap(samples: &[Complex64]) -> Result<Vec<f64>, SymbolError> {
    check_samples(samples)?;
    let n = samples.len();
    let mut args = Vec::with_capacity(n + 1);
    let mut current = samples[0].arg();
    args.push(current);
    for j in 1..=n {
        let step = (samples[j % n] / samples[j - 1]).arg();
        if step.abs() > FRAC_PI_2 {
            return Err(SymbolError::UnderResolved { increment: step.abs(), grid: n });
        }
        current += step;
        args.push(current);
    }
    Ok(args)
}

fn turns_to_int(total: f64) -> Result<i32, SymbolError> {
    let turns = total / TAU;
    let k = turns.round();
    if (turns - k).abs() > 0.1 {
        return Err(SymbolError::NonIntegerWinding { turns });
    }
    Ok(k as i32)
}

/// Winding number from samples on a uniform closed grid.
pub fn winding_number_sampled(samples: &[Complex64]) -> Result<i32, SymbolError> {
    let args = unwrap(samples)?;
    turns_to_int(args[args.len() - 1] - args[0])
}

/// Winding number by the argument principle on a `max(1024, 64K)` grid.
pub fn winding_number(f: &impl CircleFunction) -> Result<i32, SymbolError> {
    let len = unwrap_grid_size(f.resolution_hint());
    let samples: Vec<_> = sample_grid(len, 0.0).into_iter().map(|t| f.value_at(t)).collect();
    winding_number_sampled(&samples)
}

/// Continuous logarithm along `len` points starting at `θ₀`, with
/// `Im log f(θ₀) ∈ (−π, π]`.
pub fn continuous_log(f: &impl CircleFunction, theta0: f64, len: usize) -> Result<ContinuousLog, SymbolError> {
    let grid = sample_grid(len, theta0);
    let samples: Vec<_> = grid.iter().map(|&t| f.value_at(t)).collect();
    let args = unwrap(&samples)?;
    let winding = turns_to_int(args[len] - args[0])?;
    debug_assert!(args[0] > -PI - 1e-12 && args[0] <= PI + 1e-12);
    let values = samples.iter().zip(&args).map(|(s, a)| Complex64::new(s.norm().ln(), *a)).collect();
    Ok(ContinuousLog { theta0, grid, values, winding })
}

#[cfg(test)]
mod tests {
    use super::super::{FourierSymbol, RationalSymbol};
    use super::*;
    use crate::c64;

    #[test]
    fn winding_examples() {
        let z2 = FourierSymbol::monomial(2);
        assert_eq!(winding_number(&z2).unwrap(), 2);
        let e = (&FourierSymbol::z() + &FourierSymbol::zbar()).exp().unwrap();
        assert_eq!(winding_number(&e).unwrap(), 0);
    }

    #[test]
    fn rational_and_argument_principle_agree() {
        let r = RationalSymbol::zbar()
            .multiply(&RationalSymbol::linear(c64(0.5, 0.0)))
            .multiply(&RationalSymbol::linear(c64(3.0, 0.0)));
        let samples: Vec<_> = sample_grid(4096, 0.0).into_iter().map(|t| r.eval(t).unwrap()).collect();
        assert_eq!(winding_number_sampled(&samples).unwrap(), 0);
        assert_eq!(r.winding_number().unwrap(), 0);
    }

    #[test]
    fn vanishing_symbol_is_rejected() {
        let s = &FourierSymbol::constant(c64(1.0, 0.0)) + &FourierSymbol::z();
        assert!(matches!(winding_number(&s), Err(SymbolError::VanishesOnCircle { .. })));
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let samples: Vec<_> = sample_grid(8, 0.0).into_iter().map(|t| Complex64::from_polar(1.0, 5.0 * t)).collect();
        assert!(matches!(winding_number_sampled(&samples), Err(SymbolError::UnderResolved { .. })));
    }

    #[test]
    fn continuous_log_matches_exp() {
        let f = FourierSymbol::from_real_trig(0.0, &[0.4], &[0.3]);
        let e = f.exp().unwrap();
        let log = continuous_log(&e, 0.0, 256).unwrap();
        assert_eq!(log.winding, 0);
        for (t, v) in log.grid.iter().zip(&log.values) {
            assert!((v - f.eval(*t)).norm() < 1e-12);
        }
    }
}
