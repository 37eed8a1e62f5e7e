use std::fmt;

use num_complex::Complex64;

use super::matfun::{matrix_function, MatrixFunctionMode};
use super::{toeplitz_matrix, OperatorSection, SectionError};
use crate::function::FunctionSpec;
use crate::linalg::{self, CMat, LinalgError, Lu};
use crate::symbols::FourierSymbol;

/// Pivot ratio below which a padded section counts as singular.
pub(crate) const SINGULAR_PIVOT: f64 = 1e-13;

/// An operator on Hardy space built from Toeplitz operators.
#[derive(Clone, Debug)]
pub enum Word {
    Identity,
    Toeplitz(FourierSymbol),
    /// Finite matrix acting on the leading coordinates, zero elsewhere.
    Fixed(CMat),
    Inverse(Box<Word>),
    Apply(FunctionSpec, MatrixFunctionMode, Box<Word>),
    Product(Vec<Word>),
    Sum(Vec<(Complex64, Word)>),
}

/// One factor of a flat word: `T_s`, optionally passed through a function,
/// optionally inverted.
#[derive(Clone, Debug)]
pub struct WordFactor {
    pub symbol: FourierSymbol,
    pub inverse: bool,
    pub function: Option<FunctionSpec>,
}

impl WordFactor {
    pub fn plain(symbol: FourierSymbol) -> Self {
        Self { symbol, inverse: false, function: None }
    }

    pub fn inverted(symbol: FourierSymbol) -> Self {
        Self { symbol, inverse: true, function: None }
    }
}

impl From<WordFactor> for Word {
    fn from(f: WordFactor) -> Word {
        let mut w = Word::Toeplitz(f.symbol);
        if let Some(func) = f.function {
            w = Word::Apply(func, MatrixFunctionMode::Auto, Box::new(w));
        }
        if f.inverse {
            w = Word::Inverse(Box::new(w));
        }
        w
    }
}

impl Word {
    pub fn toeplitz(s: FourierSymbol) -> Self {
        Word::Toeplitz(s)
    }

    pub fn from_factors(factors: &[WordFactor]) -> Self {
        match factors.len() {
            0 => Word::Identity,
            1 => factors[0].clone().into(),
            _ => Word::Product(factors.iter().cloned().map(Word::from).collect()),
        }
    }

    pub fn inverse(&self) -> Self {
        Word::Inverse(Box::new(self.clone()))
    }

    pub fn apply(&self, f: FunctionSpec, mode: MatrixFunctionMode) -> Self {
        Word::Apply(f, mode, Box::new(self.clone()))
    }

    pub fn times(&self, other: &Word) -> Self {
        Word::Product(vec![self.clone(), other.clone()])
    }

    /// `a·b − b·a`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Word::Sum(vec![(one, a.times(b)), (-one, b.times(a))])
    }

    /// `a·b·a⁻¹·b⁻¹`.
    pub fn multiplicative_commutator(a: &Word, b: &Word) -> Self {
        Word::Product(vec![a.clone(), b.clone(), a.inverse(), b.inverse()])
    }

    /// Heuristic reach of the word away from the diagonal, used for padding.
    pub fn bandwidth(&self) -> usize {
        match self {
            Word::Identity => 0,
            Word::Toeplitz(s) => s.bandwidth(),
            Word::Fixed(m) => m.nrows(),
            Word::Inverse(w) => w.bandwidth().max(1),
            Word::Apply(f, _, w) => w.bandwidth() * f.degree().unwrap_or(8).max(1),
            Word::Product(ws) => ws.iter().map(Word::bandwidth).sum(),
            Word::Sum(ws) => ws.iter().map(|(_, w)| w.bandwidth()).max().unwrap_or(0),
        }
    }

    /// Full `M × M` evaluation; inverses are inverses of `M`-sections.
    pub fn eval(&self, m: usize) -> Result<CMat, SectionError> {
        Ok(match self {
            Word::Identity => linalg::identity(m),
            Word::Toeplitz(s) => toeplitz_matrix(s, m, m),
            Word::Fixed(f) => {
                let k = f.nrows().min(m);
                let mut out = linalg::zeros(m, m);
                linalg::set_block(&mut out, 0, 0, &linalg::corner(f, k, k));
                out
            }
            Word::Inverse(w) => {
                let inner = w.eval(m)?;
                match Lu::new(&inner, SINGULAR_PIVOT) {
                    Ok(lu) => lu.inverse(),
                    Err(LinalgError::Singular { ratio }) => {
                        return Err(SectionError::SingularFactor { factor: w.to_string(), ratio })
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Word::Apply(f, mode, w) => {
                let inner = OperatorSection::new(w.eval(m)?, 0, w.to_string());
                matrix_function(&inner, f, *mode)?.entries
            }
            Word::Product(ws) => {
                let mut acc: Option<CMat> = None;
                for w in ws {
                    let x = w.eval(m)?;
                    acc = Some(match acc {
                        None => x,
                        Some(a) => &a * &x,
                    });
                }
                acc.unwrap_or_else(|| linalg::identity(m))
            }
            Word::Sum(ws) => {
                let mut acc = linalg::zeros(m, m);
                for (c, w) in ws {
                    acc += linalg::scaled(&w.eval(m)?, *c);
                }
                acc
            }
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Identity => write!(f, "I"),
            Word::Toeplitz(s) => write!(f, "T[{s}]"),
            Word::Fixed(m) => write!(f, "F{}x{}", m.nrows(), m.ncols()),
            Word::Inverse(w) => write!(f, "({w})^-1"),
            Word::Apply(func, _, w) => write!(f, "{func}({w})"),
            Word::Product(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
            Word::Sum(ws) => {
                let parts: Vec<String> = ws.iter().map(|(c, w)| format!("{c}*({w})")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Evaluates the word at `N + pad` and keeps the leading `N × N` corner.
/// `pad` defaults to four times the word's bandwidth.
pub fn compose_padded(word: &Word, n: usize, pad: Option<usize>) -> Result<OperatorSection, SectionError> {
    let pad = pad.unwrap_or(4 * word.bandwidth());
    let full = word.eval(n + pad)?;
    Ok(OperatorSection::new(linalg::corner(&full, n, n), pad, word.to_string()))
}
