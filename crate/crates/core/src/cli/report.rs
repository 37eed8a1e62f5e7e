use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::torsion::TorsionResult;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(c: ComplexValue) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolInput {
    pub source: String,
    pub normal_form: String,
    pub class: String,
    /// Whether the lowering to `r · e^{h}` was exact.
    pub exact_lowering: bool,
    pub winding: Option<i32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Inputs {
    pub f: SymbolInput,
    pub g: SymbolInput,
    pub method: String,
    pub nmax: usize,
    pub tol: f64,
    pub basepoint: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HistoryPoint {
    pub dim: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub dims: Vec<usize>,
    /// True for the closed-form paths.
    pub exact: bool,
    pub notes: Vec<String>,
    pub history: Vec<HistoryPoint>,
    pub wall_ms: f64,
}

impl MethodResult {
    pub fn new(r: &TorsionResult, wall_ms: f64) -> Self {
        Self {
            method: r.method.name().to_string(),
            value: r.value.into(),
            err_estimate: r.err_estimate,
            dims: r.dims.clone(),
            exact: r.history.is_empty() && r.err_estimate == 0.0,
            notes: r.notes.clone(),
            history: r.history.iter().map(|&(dim, v)| HistoryPoint { dim, re: v.re, im: v.im }).collect(),
            wall_ms,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MethodFailure {
    pub method: String,
    pub error: String,
}

/// `matrix[i][j] = |v_i − v_j|`, judged against the run's `tol`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Disagreements {
    pub methods: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub tol: f64,
}

impl Disagreements {
    pub fn from_results(results: &[MethodResult], tol: f64) -> Self {
        let matrix = results
            .iter()
            .map(|a| results.iter().map(|b| (Complex64::from(a.value) - Complex64::from(b.value)).norm()).collect())
            .collect();
        Self { methods: results.iter().map(|r| r.method.clone()).collect(), matrix, tol }
    }

    pub fn max(&self) -> f64 {
        self.matrix.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Every pairwise distance within `tol`.
    pub fn agree(&self) -> bool {
        self.max() <= self.tol
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub inputs: Inputs,
    pub results: Vec<MethodResult>,
    #[serde(default)]
    pub failures: Vec<MethodFailure>,
    pub disagreements: Disagreements,
    pub runtime_ms: f64,
}

impl RunReport {
    pub fn write_json(&self, w: impl Write) -> Result<(), CliError> {
        serde_json::to_writer_pretty(w, self).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn write_csv(&self, w: impl Write) -> Result<(), CliError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["method", "re", "im", "err_estimate", "dims", "exact", "wall_ms", "notes"])?;
        for r in &self.results {
            let dims: Vec<String> = r.dims.iter().map(|d| d.to_string()).collect();
            out.write_record([
                r.method.clone(),
                format!("{:.17e}", r.value.re),
                format!("{:.17e}", r.value.im),
                format!("{:.3e}", r.err_estimate),
                dims.join(";"),
                r.exact.to_string(),
                format!("{:.3}", r.wall_ms),
                r.notes.join("; "),
            ])?;
        }
        out.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    /// Reference value for per-dimension disagreement: the result with the
    /// smallest error estimate, earliest first.
    pub fn reference(&self) -> Option<Complex64> {
        self.results
            .iter()
            .min_by(|a, b| a.err_estimate.total_cmp(&b.err_estimate))
            .map(|r| r.value.into())
    }

    /// `(method, dim) → (err_estimate, disagreement)`: the change from the
    /// previous dimension (absent at the first) and the distance to
    /// [`reference`](Self::reference). Closed-form results appear at dim 0.
    pub fn series(&self) -> BTreeMap<(String, usize), (Option<f64>, Option<f64>)> {
        let reference = self.reference();
        let mut out = BTreeMap::new();
        for r in &self.results {
            let dist = |v: Complex64| reference.map(|x| (v - x).norm());
            if r.history.is_empty() {
                out.insert((r.method.clone(), 0), (Some(r.err_estimate), dist(r.value.into())));
                continue;
            }
            let mut prev: Option<Complex64> = None;
            for h in &r.history {
                let v = Complex64::new(h.re, h.im);
                out.insert((r.method.clone(), h.dim), (prev.map(|p| (v - p).norm()), dist(v)));
                prev = Some(v);
            }
        }
        out
    }
}

/// Merges reports into one CSV with a column pair per report, rows aligned by
/// `(method, dim)`.
pub fn merge_series(reports: &[(String, RunReport)], w: impl Write) -> Result<(), CliError> {
    let series: Vec<_> = reports.iter().map(|(_, r)| r.series()).collect();
    let mut keys: Vec<(String, usize)> = series.iter().flat_map(|s| s.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["method".to_string(), "dim".to_string()];
    for (label, _) in reports {
        header.push(format!("{label}:err_estimate"));
        header.push(format!("{label}:disagreement"));
    }
    out.write_record(&header)?;
    let cell = |x: Option<f64>| x.map(|v| format!("{v:.6e}")).unwrap_or_default();
    for key in keys {
        let mut row = vec![key.0.clone(), key.1.to_string()];
        for s in &series {
            let (e, d) = s.get(&key).copied().unwrap_or((None, None));
            row.push(cell(e));
            row.push(cell(d));
        }
        out.write_record(&row)?;
    }
    out.flush().map_err(|e| CliError::Io(e.to_string()))
}
