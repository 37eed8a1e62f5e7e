use num_complex::Complex64;

use super::word::{compose_padded, Word, SINGULAR_PIVOT};
use super::SectionError;
use crate::linalg::{self, CMat, LinalgError, Lu};

/// Dimension schedule with optional early stopping.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub dims: Vec<usize>,
    /// Stop once successive values agree to this relative tolerance.
    pub early_stop: Option<f64>,
}

impl Default for Schedule {
    fn default() -> Self {
        Self { dims: vec![32, 64, 128, 256], early_stop: Some(1e-11) }
    }
}

impl Schedule {
    /// Doubling from 32 (or `nmax/2` if smaller) up to `nmax`, which is
    /// always the last entry.
    pub fn up_to(nmax: usize) -> Self {
        let mut dims = Vec::new();
        let mut n = 32.min(nmax / 2).max(1);
        while n < nmax {
            dims.push(n);
            n *= 2;
        }
        dims.push(nmax);
        Self { dims, early_stop: Some(1e-11) }
    }

    pub fn fixed(dims: &[usize]) -> Self {
        Self { dims: dims.to_vec(), early_stop: None }
    }

    pub fn without_early_stop(mut self) -> Self {
        self.early_stop = None;
        self
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }
}

/// How much padding to add on top of the corner dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PadRule {
    /// Four times the word's bandwidth.
    Bandwidth,
    /// `pad = N`, never less than four times the bandwidth.
    Proportional,
    /// `pad = N` regardless of bandwidth, for symbols with decaying but
    /// unbounded coefficient tails.
    Equal,
    Fixed(usize),
}

impl PadRule {
    pub fn pad(&self, n: usize, bandwidth: usize) -> usize {
        match *self {
            PadRule::Bandwidth => 4 * bandwidth,
            PadRule::Proportional => n.max(4 * bandwidth),
            PadRule::Equal => n,
            PadRule::Fixed(p) => p,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DetOptions {
    pub schedule: Schedule,
    pub pad: PadRule,
}

impl Default for DetOptions {
    fn default() -> Self {
        Self { schedule: Schedule::default(), pad: PadRule::Proportional }
    }
}

#[derive(Clone, Debug)]
pub struct DetEstimate {
    pub value: Complex64,
    /// `|last − previous|` along the schedule (`|value|` for a single dimension).
    pub err_estimate: f64,
    pub history: Vec<(usize, Complex64)>,
    pub converged: bool,
}

impl DetEstimate {
    /// Builds the estimate from values along a schedule; converged means the
    /// last relative change is below `1e−8`.
    pub fn from_history(history: Vec<(usize, Complex64)>) -> Self {
        let value = history.last().map(|h| h.1).unwrap_or(Complex64::new(1.0, 0.0));
        // A single section says nothing about its own accuracy.
        let err_estimate = if history.len() >= 2 { (value - history[history.len() - 2].1).norm() } else { value.norm() };
        let converged = history.len() >= 2 && err_estimate <= 1e-8 * value.norm().max(1e-300);
        Self { value, err_estimate, history, converged }
    }

    /// True when the differences grow at the end of the schedule and the
    /// final one is still large.
    pub fn diverging(&self) -> bool {
        let h = &self.history;
        if h.len() < 3 {
            return false;
        }
        let d1 = (h[h.len() - 2].1 - h[h.len() - 3].1).norm();
        let d2 = (h[h.len() - 1].1 - h[h.len() - 2].1).norm();
        d2 > d1 && d2 > 1e-4 * self.value.norm().max(1.0)
    }
}

/// Runs `eval` along the schedule with early stopping and divergence check.
pub(crate) fn run_schedule(
    schedule: &Schedule,
    mut eval: impl FnMut(usize) -> Result<Complex64, SectionError>,
) -> Result<DetEstimate, SectionError> {
    let mut history: Vec<(usize, Complex64)> = Vec::new();
    for &n in &schedule.dims {
        let v = eval(n)?;
        let stop = match (schedule.early_stop, history.last()) {
            (Some(tol), Some(&(_, prev))) => (v - prev).norm() <= tol * v.norm(),
            _ => false,
        };
        history.push((n, v));
        if stop {
            break;
        }
    }
    let est = DetEstimate::from_history(history);
    if est.diverging() {
        return Err(SectionError::NonConvergent { history: est.history });
    }
    Ok(est)
}

/// Determinant of the leading `N × N` corner of the padded word along the schedule.
pub fn fredholm_det(word: &Word, opts: &DetOptions) -> Result<DetEstimate, SectionError> {
    let bw = word.bandwidth();
    run_schedule(&opts.schedule, |n| {
        let sec = compose_padded(word, n, Some(opts.pad.pad(n, bw)))?;
        Ok(linalg::determinant(&sec.entries))
    })
}

/// `det` of `A B A⁻¹ B⁻¹` restricted to the rows and columns in `head`.
///
/// Only the needed columns are formed: `B⁻¹E`, then `A⁻¹`, `B`, `A`.
pub fn commutator_head_det(a: &CMat, b: &CMat, head: &[usize]) -> Result<Complex64, SectionError> {
    let n = a.nrows();
    let lu = |m: &CMat, name: &str| {
        Lu::new(m, SINGULAR_PIVOT).map_err(|e| match e {
            LinalgError::Singular { ratio } => SectionError::SingularFactor { factor: name.into(), ratio },
            e => e.into(),
        })
    };
    let lu_a = lu(a, "A")?;
    let lu_b = lu(b, "B")?;
    let mut e = linalg::zeros(n, head.len());
    for (c, &r) in head.iter().enumerate() {
        e[(r, c)] = Complex64::new(1.0, 0.0);
    }
    let x = lu_b.solve(&e);
    let y = lu_a.solve(&x);
    let z = b * &y;
    let w = a * &z;
    let sub = linalg::from_fn(head.len(), head.len(), |i, j| w[(head[i], j)]);
    Ok(linalg::determinant(&sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::symbols::FourierSymbol;

    #[test]
    fn identity_and_rank_one_update() {
        let opts = DetOptions { schedule: Schedule::fixed(&[4, 8, 16]), pad: PadRule::Bandwidth };
        let d = fredholm_det(&Word::Identity, &opts).unwrap();
        assert_eq!(d.value, c64(1.0, 0.0));
        let e0 = linalg::from_fn(1, 1, |_, _| c64(1.0, 0.0));
        let w = Word::Sum(vec![(c64(1.0, 0.0), Word::Identity), (c64(1.0, 0.0), Word::Fixed(e0))]);
        let d = fredholm_det(&w, &opts).unwrap();
        for (_, v) in &d.history {
            assert!((v - c64(2.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn helton_howe_exponential_word() {
        let a = Word::toeplitz(FourierSymbol::z().exp().unwrap());
        let b = Word::toeplitz(FourierSymbol::zbar().exp().unwrap());
        let w = Word::multiplicative_commutator(&a, &b);
        let opts = DetOptions { schedule: Schedule::fixed(&[32, 64, 128]), pad: PadRule::Proportional };
        let d = fredholm_det(&w, &opts).unwrap();
        assert!((d.value - c64((-1f64).exp(), 0.0)).norm() < 1e-8, "{:?}", d.history);
    }

    #[test]
    fn word_times_inverse_is_one() {
        let f = FourierSymbol::from_real_trig(1.5, &[0.3], &[0.4]);
        let w = Word::toeplitz(f.clone()).times(&Word::toeplitz(f).inverse());
        let d = fredholm_det(&w, &DetOptions { schedule: Schedule::fixed(&[16, 32]), ..Default::default() }).unwrap();
        for (_, v) in &d.history {
            assert!((v - c64(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn schedule_up_to() {
        assert_eq!(Schedule::up_to(256).dims, vec![32, 64, 128, 256]);
        assert_eq!(Schedule::up_to(100).dims, vec![32, 64, 100]);
        assert_eq!(Schedule::up_to(16).dims, vec![8, 16]);
        assert_eq!(Schedule::up_to(1).dims, vec![1]);
    }
}
