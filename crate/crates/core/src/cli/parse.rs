use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::symbols::{circle_point, FourierSymbol, RationalSymbol, SmoothSymbol, SymbolError, DELTA_CIRCLE};

#[derive(Debug, Clone, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("B({a}) has |a| = 1")]
    BlaschkeOnCircle { a: Complex64 },
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Z,
    Zbar,
    Num(Complex64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
    Blaschke(Complex64),
}

impl Expr {
    /// Direct evaluation at `e^{iθ}`, independent of the lowering.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let z = circle_point(theta);
        match self {
            Expr::Z => z,
            Expr::Zbar => z.conj(),
            Expr::Num(c) => *c,
            Expr::Neg(a) => -a.eval(theta),
            Expr::Add(a, b) => a.eval(theta) + b.eval(theta),
            Expr::Sub(a, b) => a.eval(theta) - b.eval(theta),
            Expr::Mul(a, b) => a.eval(theta) * b.eval(theta),
            Expr::Div(a, b) => a.eval(theta) / b.eval(theta),
            Expr::Pow(a, k) => a.eval(theta).powi(*k),
            Expr::Exp(a) => a.eval(theta).exp(),
            Expr::Blaschke(a) if a.norm() < 1e-9 => z,
            Expr::Blaschke(a) => (a.norm() / a) * (a - z) / (1.0 - a.conj() * z),
        }
    }

    fn has_exp(&self) -> bool {
        match self {
            Expr::Exp(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_exp(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_exp() || b.has_exp(),
            _ => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Z | Expr::Zbar | Expr::Blaschke(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 1,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(c) if c.im != 0.0 || c.re < 0.0 || c.re.is_sign_negative() => 1,
            _ => 5,
        }
    }
}

fn fmt_num(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{:?}", c.re)
    } else if c.re == 0.0 {
        format!("{:?}i", c.im)
    } else {
        format!("{:?}{}{:?}i", c.re, if c.im.is_sign_negative() { "-" } else { "+" }, c.im.abs())
    }
}

struct Child<'a>(&'a Expr, u8);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Normal form in the input grammar: single spaces around binary operators and
/// parentheses exactly where precedence needs them.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Z => f.write_str("z"),
            Expr::Zbar => f.write_str("zbar"),
            Expr::Num(c) => f.write_str(&fmt_num(*c)),
            Expr::Neg(a) => write!(f, "-{}", Child(a, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", Child(a, 1), Child(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Child(a, 1), Child(b, 2)),
            Expr::Mul(a, b) => write!(f, "{} * {}", Child(a, 3), Child(b, 4)),
            Expr::Div(a, b) => write!(f, "{} / {}", Child(a, 3), Child(b, 4)),
            Expr::Pow(a, k) => write!(f, "{}^{k}", Child(a, 5)),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Blaschke(a) => write!(f, "B({})", fmt_num(*a)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolClass {
    /// No `exp` atom.
    Rational,
    /// Only `exp` atoms and constants.
    Smooth,
    /// A nonconstant rational factor times exponentials.
    Both,
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolClass::Rational => "rational",
            SymbolClass::Smooth => "smooth",
            SymbolClass::Both => "both",
        })
    }
}

/// A parsed symbol with its lowering to `r · e^{h}`.
#[derive(Clone, Debug)]
pub struct SymbolExpr {
    pub source: String,
    pub ast: Expr,
    pub class: SymbolClass,
    pub symbol: SmoothSymbol,
    /// True when the lowering used only exact algebra (no sampling).
    pub exact: bool,
}

impl SymbolExpr {
    pub fn normal_form(&self) -> String {
        self.ast.to_string()
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.ast.eval(theta)
    }

    /// Largest gap between the AST and the lowered symbol on `points` circle
    /// points.
    pub fn lowering_gap(&self, points: usize) -> Result<f64, SymbolError> {
        let mut gap: f64 = 0.0;
        for j in 0..points {
            let t = std::f64::consts::TAU * (j as f64 + 0.25) / points as f64;
            gap = gap.max((self.symbol.eval(t)? - self.eval(t)).norm());
        }
        Ok(gap)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Complex64),
    Z,
    Zbar,
    Exp,
    B,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

/// Reads a float starting at `i`; returns its value and the end index.
fn read_float(s: &[(usize, char)], mut i: usize) -> Option<(f64, usize)> {
    let start = i;
    let digit = |i: usize| s.get(i).is_some_and(|c| c.1.is_ascii_digit());
    while digit(i) {
        i += 1;
    }
    if s.get(i).is_some_and(|c| c.1 == '.') {
        i += 1;
        while digit(i) {
            i += 1;
        }
    }
    if i == start || (i == start + 1 && s[start].1 == '.') {
        return None;
    }
    if s.get(i).is_some_and(|c| c.1 == 'e' || c.1 == 'E') {
        let mut j = i + 1;
        if s.get(j).is_some_and(|c| c.1 == '+' || c.1 == '-') {
            j += 1;
        }
        if digit(j) {
            while digit(j) {
                j += 1;
            }
            i = j;
        }
    }
    let text: String = s[start..i].iter().map(|c| c.1).collect();
    text.parse().ok().map(|v| (v, i))
}

fn is_imag_unit(s: &[(usize, char)], i: usize) -> bool {
    s.get(i).is_some_and(|c| c.1 == 'i') && !s.get(i + 1).is_some_and(|c| c.1.is_ascii_alphanumeric())
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let s: Vec<(usize, char)> = text.char_indices().filter(|c| !c.1.is_whitespace()).collect();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let (pos, c) = s[i];
        if c.is_ascii_digit() || c == '.' {
            let Some((v, mut j)) = read_float(&s, i) else { return syntax(pos, "malformed number") };
            let mut value = Complex64::new(v, 0.0);
            if is_imag_unit(&s, j) {
                value = Complex64::new(0.0, v);
                j += 1;
            } else if out.last().map(|t| &t.1) != Some(&Tok::Caret)
                && s.get(j).is_some_and(|c| c.1 == '+' || c.1 == '-')
            {
                // `a ± b i` is a single complex literal.
                if let Some((w, k)) = read_float(&s, j + 1) {
                    if is_imag_unit(&s, k) {
                        let sign = if s[j].1 == '-' { -1.0 } else { 1.0 };
                        value = Complex64::new(v, sign * w);
                        j = k + 1;
                    }
                }
            }
            out.push((pos, Tok::Num(value)));
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < s.len() && s[j].1.is_ascii_alphabetic() && s[j].0 == pos + (j - i) {
                j += 1;
            }
            let word: String = s[i..j].iter().map(|c| c.1).collect();
            let tok = match word.as_str() {
                "z" => Tok::Z,
                "zbar" => Tok::Zbar,
                "exp" => Tok::Exp,
                "B" => Tok::B,
                "i" => Tok::Num(Complex64::new(0.0, 1.0)),
                _ => return syntax(pos, format!("unknown name '{word}'")),
            };
            out.push((pos, tok));
            i = j;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            _ => return syntax(pos, format!("unexpected character '{c}'")),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            syntax(self.pos(), format!("expected {what}"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.eat(&Tok::Minus) {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.eat(&Tok::Plus);
            self.product()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat(&Tok::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else if matches!(lhs, Expr::Num(_))
                && matches!(self.peek(), Some(Tok::Z | Tok::Zbar | Tok::Exp | Tok::B | Tok::LParen))
            {
                // `0.5z`, `2exp(z)`
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        let sign = if self.eat(&Tok::Minus) {
            -1
        } else {
            self.eat(&Tok::Plus);
            1
        };
        match self.peek() {
            Some(Tok::Num(c)) if c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() <= 1024.0 => {
                let k = c.re as i32;
                self.at += 1;
                Ok(Expr::Pow(Box::new(base), sign * k))
            }
            _ => syntax(pos, "exponent must be an integer"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else { return syntax(pos, "unexpected end of input") };
        self.at += 1;
        match tok {
            Tok::Z => Ok(Expr::Z),
            Tok::Zbar => Ok(Expr::Zbar),
            Tok::Num(c) => Ok(Expr::Num(c)),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Exp => {
                self.expect(&Tok::LParen, "'(' after exp")?;
                let e = self.sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Expr::Exp(Box::new(e)))
            }
            Tok::B => {
                self.expect(&Tok::LParen, "'(' after B")?;
                let e = self.sum()?;
                if !e.is_constant() {
                    return syntax(pos, "B takes a complex constant");
                }
                self.expect(&Tok::RParen, "')'")?;
                let a = e.eval(0.0);
                if (a.norm() - 1.0).abs() < DELTA_CIRCLE {
                    return Err(ParseError::BlaschkeOnCircle { a });
                }
                Ok(Expr::Blaschke(a))
            }
            _ => syntax(pos, "expected z, zbar, a number, exp(...), B(...) or '('"),
        }
    }
}

/// Lowered value: an exact Laurent polynomial or a product `r · e^{h}`.
enum Val {
    Laurent(FourierSymbol),
    Smooth(SmoothSymbol),
}

fn laurent_to_rational(p: &FourierSymbol) -> Result<RationalSymbol, SymbolError> {
    let (Some(lo), Some(hi)) = (p.min_freq(), p.max_freq()) else { return Err(SymbolError::ZeroScale) };
    let coeffs: Vec<Complex64> = (lo..=hi).map(|n| p.coeff(n)).collect();
    Ok(RationalSymbol::from_polynomial(&coeffs)?.multiply(&RationalSymbol::monomial(lo as i32)))
}

struct Lowering {
    exact: bool,
}

impl Lowering {
    fn smooth(&mut self, v: Val) -> Result<SmoothSymbol, SymbolError> {
        match v {
            Val::Smooth(s) => Ok(s),
            Val::Laurent(p) => Ok(SmoothSymbol::from_rational(laurent_to_rational(&p)?)),
        }
    }

    fn lower(&mut self, e: &Expr) -> Result<Val, ParseError> {
        Ok(match e {
            Expr::Z => Val::Laurent(FourierSymbol::z()),
            Expr::Zbar => Val::Laurent(FourierSymbol::zbar()),
            Expr::Num(c) => Val::Laurent(FourierSymbol::constant(*c)),
            Expr::Blaschke(a) => Val::Smooth(SmoothSymbol::from_rational(RationalSymbol::blaschke(*a)?)),
            Expr::Neg(a) => match self.lower(a)? {
                Val::Laurent(p) => Val::Laurent(-&p),
                Val::Smooth(s) => {
                    Val::Smooth(SmoothSymbol::new(s.rational.scaled(Complex64::new(-1.0, 0.0))?, s.exponent))
                }
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sign = if matches!(e, Expr::Sub(..)) { -1.0 } else { 1.0 };
                match (self.lower(a)?, self.lower(b)?) {
                    (Val::Laurent(p), Val::Laurent(q)) => Val::Laurent(&p + &q.scale(Complex64::new(sign, 0.0))),
                    (x, y) => {
                        // Sums leave the product form: go through samples.
                        self.exact = false;
                        let (x, y) = (self.smooth(x)?.to_fourier()?, self.smooth(y)?.to_fourier()?);
                        Val::Smooth(SmoothSymbol::from_fourier(&(&x + &y.scale(Complex64::new(sign, 0.0))))?)
                    }
                }
            }
            Expr::Mul(a, b) => match (self.lower(a)?, self.lower(b)?) {
                (Val::Laurent(p), Val::Laurent(q)) => Val::Laurent(&p * &q),
                (x, y) => Val::Smooth(self.smooth(x)?.multiply(&self.smooth(y)?)),
            },
            Expr::Div(a, b) => {
                let (x, y) = (self.lower(a)?, self.lower(b)?);
                Val::Smooth(self.smooth(x)?.multiply(&self.smooth(y)?.invert()))
            }
            Expr::Pow(a, k) => match self.lower(a)? {
                Val::Laurent(p) if *k >= 0 => {
                    let mut acc = FourierSymbol::constant(Complex64::new(1.0, 0.0));
                    for _ in 0..*k {
                        acc = &acc * &p;
                    }
                    Val::Laurent(acc)
                }
                v => Val::Smooth(self.smooth(v)?.pow(*k)),
            },
            Expr::Exp(a) => match self.lower(a)? {
                Val::Laurent(p) => Val::Smooth(SmoothSymbol::exp_of(p)),
                Val::Smooth(_) => {
                    return Err(ParseError::Syntax { pos: 0, msg: "exp takes a polynomial in z and zbar".into() })
                }
            },
        })
    }
}

/// Syntax tree only, without lowering to a symbol.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return syntax(0, "empty expression");
    }
    let mut p = Parser { toks, at: 0, end: text.len() };
    let ast = p.sum()?;
    if p.at < p.toks.len() {
        return syntax(p.pos(), "unexpected trailing input");
    }
    Ok(ast)
}

/// Fourier coefficients of the expression. Laurent polynomials stay exact and
/// need not be regular on the circle; anything else is sampled.
pub fn parse_fourier(text: &str) -> Result<FourierSymbol, ParseError> {
    let ast = parse_expr(text)?;
    match (Lowering { exact: true }).lower(&ast)? {
        Val::Laurent(p) => Ok(p),
        Val::Smooth(s) => Ok(s.to_fourier()?),
    }
}

pub fn parse_symbol(text: &str) -> Result<SymbolExpr, ParseError> {
    let ast = parse_expr(text)?;
    let mut lowering = Lowering { exact: true };
    let val = lowering.lower(&ast)?;
    let symbol = lowering.smooth(val)?;
    let class = if !ast.has_exp() {
        SymbolClass::Rational
    } else if symbol.rational.is_constant() {
        SymbolClass::Smooth
    } else {
        SymbolClass::Both
    };
    Ok(SymbolExpr { source: text.to_string(), ast, class, symbol, exact: lowering.exact })
}
