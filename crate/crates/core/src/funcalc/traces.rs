use num_complex::Complex64;
use serde::Serialize;

use super::FuncalcError;
use crate::function::FunctionSpec;
use crate::linalg::CMat;
use crate::sections::{corner_trace_of, matrix_function, toeplitz_section, MatrixFunctionMode};
use crate::symbols::FourierSymbol;

/// `tr[f(A), B]` against `tr f′(A)[A, B]` on corner traces.
#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentity {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub gap: f64,
    /// `(N, |lhs − rhs|)` along the schedule.
    pub history: Vec<(usize, f64)>,
}

fn commutator(x: &CMat, y: &CMat) -> CMat {
    &(x * y) - &(y * x)
}

/// Matrices `f(A_M)`, `f′(A_M)`, `A_M`, `B_M` with `M = 2N`.
fn operands(
    f: &FunctionSpec,
    a: &FourierSymbol,
    b: &FourierSymbol,
    n: usize,
) -> Result<(CMat, CMat, CMat, CMat), FuncalcError> {
    let df = f.derivative().ok_or_else(|| FuncalcError::Unsupported(format!("{} has no derivative", f.name())))?;
    let am = toeplitz_section(a, 2 * n);
    let fa = matrix_function(&am, f, MatrixFunctionMode::Auto)?.entries;
    let dfa = matrix_function(&am, &df, MatrixFunctionMode::Auto)?.entries;
    Ok((fa, dfa, am.entries, toeplitz_section(b, 2 * n).entries))
}

pub fn trace_commutator_identity(
    f: &FunctionSpec,
    a: &FourierSymbol,
    b: &FourierSymbol,
    dims: &[usize],
) -> Result<TraceIdentity, FuncalcError> {
    let mut history = Vec::new();
    let mut last = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for &n in dims {
        let (fa, dfa, am, bm) = operands(f, a, b, n)?;
        let lhs = corner_trace_of(&commutator(&fa, &bm), n).value;
        let rhs = corner_trace_of(&(&dfa * &commutator(&am, &bm)), n).value;
        history.push((n, (lhs - rhs).norm()));
        last = (lhs, rhs);
    }
    let gap = (last.0 - last.1).norm();
    Ok(TraceIdentity { lhs: last.0, rhs: last.1, gap, history })
}

/// `exp tr[f(A), B]` against `exp tr[A, f′(A) B]`.
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub gap: f64,
    pub dims: (usize, usize),
}

pub fn corollary_consistency(
    f: &FunctionSpec,
    a: &FourierSymbol,
    b: &FourierSymbol,
    n: usize,
) -> Result<CorollaryCheck, FuncalcError> {
    let (fa, dfa, am, bm) = operands(f, a, b, n)?;
    let lhs = corner_trace_of(&commutator(&fa, &bm), n).value.exp();
    let rhs = corner_trace_of(&commutator(&am, &(&dfa * &bm)), n).value.exp();
    Ok(CorollaryCheck { lhs, rhs, gap: (lhs - rhs).norm(), dims: (n, 2 * n) })
}
