use std::fmt;

use num_complex::Complex64;

use super::fourier::FourierSymbol;
use super::{circle_point, CircleFunction, SymbolError, Tolerances, DELTA_CIRCLE, DELTA_ROOT};

/// Exact rational function `c · z^m · Π(z − aᵢ) / Π(z − bⱼ)`.
///
/// Zeros and poles at the origin are folded into the monomial exponent and
/// matching zero/pole pairs cancel on construction, so `zeros` and `poles`
/// never share a point (within [`DELTA_ROOT`]) and never contain `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymbol {
    scale: Complex64,
    monomial: i32,
    zeros: Vec<Complex64>,
    poles: Vec<Complex64>,
}

/// Truncated Laurent series of a rational symbol on the unit circle.
#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    pub symbol: FourierSymbol,
    /// Bound on `sup_{S¹} |r − symbol|` from Cauchy estimates on both sides
    /// of the annulus of convergence.
    pub tail_bound: f64,
}

impl RationalSymbol {
    pub fn new(
        scale: Complex64,
        monomial: i32,
        zeros: Vec<Complex64>,
        poles: Vec<Complex64>,
    ) -> Result<Self, SymbolError> {
        if scale.norm() == 0.0 || !scale.re.is_finite() || !scale.im.is_finite() {
            return Err(SymbolError::ZeroScale);
        }
        Ok(Self::normalized(scale, monomial, zeros, poles))
    }

    fn normalized(scale: Complex64, mut monomial: i32, zeros: Vec<Complex64>, poles: Vec<Complex64>) -> Self {
        let mut zs = Vec::with_capacity(zeros.len());
        for a in zeros {
            if a.norm() < DELTA_ROOT {
                monomial += 1;
            } else {
                zs.push(a);
            }
        }
        let mut ps = Vec::with_capacity(poles.len());
        for b in poles {
            if b.norm() < DELTA_ROOT {
                monomial -= 1;
                continue;
            }
            if let Some(i) = zs.iter().position(|a| (a - b).norm() < DELTA_ROOT) {
                zs.swap_remove(i);
            } else {
                ps.push(b);
            }
        }
        let key = |c: &Complex64| (c.norm(), c.arg());
        zs.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        ps.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        Self { scale, monomial, zeros: zs, poles: ps }
    }

    pub fn constant(c: Complex64) -> Result<Self, SymbolError> {
        Self::new(c, 0, vec![], vec![])
    }

    pub fn one() -> Self {
        Self::normalized(Complex64::new(1.0, 0.0), 0, vec![], vec![])
    }

    /// `z^m`.
    pub fn monomial(m: i32) -> Self {
        Self::normalized(Complex64::new(1.0, 0.0), m, vec![], vec![])
    }

    pub fn z() -> Self {
        Self::monomial(1)
    }

    /// `z̄`, extended into the disk as `1/z`.
    pub fn zbar() -> Self {
        Self::monomial(-1)
    }

    /// `z − a`.
    pub fn linear(a: Complex64) -> Self {
        Self::normalized(Complex64::new(1.0, 0.0), 0, vec![a], vec![])
    }

    /// `z̄ − a`, extended into the disk as `1/z − a`.
    pub fn conj_linear(a: Complex64) -> Self {
        Self::linear(a.conj()).conjugate()
    }

    /// Blaschke factor `B_a(z) = (|a|/a)(a − z)/(1 − āz)`, with `B₀ = z`.
    ///
    /// `|a| = 1` is rejected because the factor degenerates to a constant.
    pub fn blaschke(a: Complex64) -> Result<Self, SymbolError> {
        if a.norm() < DELTA_ROOT {
            return Ok(Self::z());
        }
        if (a.norm() - 1.0).abs() < DELTA_CIRCLE {
            return Err(SymbolError::NotCircleRegular { point: a, margin: DELTA_CIRCLE });
        }
        // (|a|/a)(a − z)/(1 − āz) = (1/|a|)(z − a)/(z − 1/ā)
        Ok(Self::normalized(Complex64::new(1.0 / a.norm(), 0.0), 0, vec![a], vec![1.0 / a.conj()]))
    }

    /// `B_∞ = z̄`.
    pub fn blaschke_infinity() -> Self {
        Self::zbar()
    }

    /// Polynomial `Σ coeffs[k] w^k` factored through its roots.
    pub fn from_polynomial(coeffs: &[Complex64]) -> Result<Self, SymbolError> {
        let mut trimmed = coeffs.to_vec();
        while trimmed.last().is_some_and(|c| c.norm() == 0.0) {
            trimmed.pop();
        }
        let lead = *trimmed.last().ok_or(SymbolError::ZeroScale)?;
        let roots = super::polynomial::polynomial_roots(&trimmed);
        Self::new(lead, 0, roots, vec![])
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn monomial_exp(&self) -> i32 {
        self.monomial
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn is_constant(&self) -> bool {
        self.monomial == 0 && self.zeros.is_empty() && self.poles.is_empty()
    }

    /// No poles anywhere (including the origin).
    pub fn is_polynomial(&self) -> bool {
        self.monomial >= 0 && self.poles.is_empty()
    }

    /// Meromorphic evaluation at any complex point that is not a pole.
    pub fn eval_z(&self, z: Complex64) -> Result<Complex64, SymbolError> {
        if let Some(&b) = self.poles.iter().find(|b| (z - **b).norm() < 1e-300_f64.max(DELTA_ROOT * 1e-3)) {
            return Err(SymbolError::PoleOnCircle { pole: b });
        }
        if self.monomial < 0 && z.norm() == 0.0 {
            return Err(SymbolError::PoleOnCircle { pole: z });
        }
        let num: Complex64 = self.zeros.iter().map(|a| z - a).product();
        let den: Complex64 = self.poles.iter().map(|b| z - b).product();
        let mono = if self.monomial == 0 { Complex64::new(1.0, 0.0) } else { z.powi(self.monomial) };
        Ok(self.scale * mono * num / den)
    }

    /// Evaluation at `e^{iθ}`.
    pub fn eval(&self, theta: f64) -> Result<Complex64, SymbolError> {
        let z = circle_point(theta);
        if let Some(&b) = self.poles.iter().find(|b| (z - **b).norm() < DELTA_ROOT) {
            return Err(SymbolError::PoleOnCircle { pole: b });
        }
        self.eval_z(z)
    }

    /// `d/dz log r = m/z + Σ 1/(z − a) − Σ 1/(z − b)`.
    pub fn log_derivative_z(&self, z: Complex64) -> Complex64 {
        let mut out = Complex64::new(self.monomial as f64, 0.0) / z;
        for a in &self.zeros {
            out += 1.0 / (z - a);
        }
        for b in &self.poles {
            out -= 1.0 / (z - b);
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let zeros = self.zeros.iter().chain(&other.zeros).copied().collect();
        let poles = self.poles.iter().chain(&other.poles).copied().collect();
        Self::normalized(self.scale * other.scale, self.monomial + other.monomial, zeros, poles)
    }

    pub fn invert(&self) -> Self {
        Self::normalized(1.0 / self.scale, -self.monomial, self.poles.clone(), self.zeros.clone())
    }

    pub fn divide(&self, other: &Self) -> Self {
        self.multiply(&other.invert())
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.invert() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::one(), |acc, _| acc.multiply(&base))
    }

    /// Coefficients (ascending) of the numerator `c·z^{max(m,0)}·Π(z − aᵢ)` and
    /// denominator `z^{max(−m,0)}·Π(z − bⱼ)`.
    pub fn numerator_denominator(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let expand = |roots: &[Complex64], shift: usize, lead: Complex64| {
            let mut p = vec![Complex64::new(0.0, 0.0); shift];
            p.push(lead);
            for r in roots {
                let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
                for (k, c) in p.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                p = next;
            }
            p
        };
        let one = Complex64::new(1.0, 0.0);
        (
            expand(&self.zeros, self.monomial.max(0) as usize, self.scale),
            expand(&self.poles, (-self.monomial).max(0) as usize, one),
        )
    }

    /// `r + c`, refactored through the roots of the new numerator.
    pub fn add_constant(&self, c: Complex64) -> Result<Self, SymbolError> {
        let (mut num, den) = self.numerator_denominator();
        if num.len() < den.len() {
            num.resize(den.len(), Complex64::new(0.0, 0.0));
        }
        for (k, d) in den.iter().enumerate() {
            num[k] += c * d;
        }
        let num_r = Self::from_polynomial(&num)?;
        let den_r = Self::from_polynomial(&den)?;
        Ok(num_r.divide(&den_r))
    }

    pub fn scaled(&self, s: Complex64) -> Result<Self, SymbolError> {
        Self::new(self.scale * s, self.monomial, self.zeros.clone(), self.poles.clone())
    }

    /// Exact rational form of the pointwise conjugate on the circle, using
    /// `conj(z − a) = (1 − āz)/z = −ā (z − 1/ā)/z`.
    pub fn conjugate(&self) -> Self {
        let mut scale = self.scale.conj();
        let mut monomial = -self.monomial;
        for a in &self.zeros {
            scale *= -a.conj();
            monomial -= 1;
        }
        for b in &self.poles {
            scale /= -b.conj();
            monomial += 1;
        }
        let zeros = self.zeros.iter().map(|a| 1.0 / a.conj()).collect();
        let poles = self.poles.iter().map(|b| 1.0 / b.conj()).collect();
        Self::normalized(scale, monomial, zeros, poles)
    }

    pub fn is_circle_regular(&self) -> bool {
        self.circle_violation(DELTA_CIRCLE).is_none()
    }

    fn circle_violation(&self, margin: f64) -> Option<Complex64> {
        self.zeros.iter().chain(&self.poles).copied().find(|p| (p.norm() - 1.0).abs() < margin)
    }

    pub fn check_circle_regular(&self) -> Result<(), SymbolError> {
        self.check_circle_regular_with(Tolerances::default())
    }

    pub fn check_circle_regular_with(&self, tol: Tolerances) -> Result<(), SymbolError> {
        match self.circle_violation(tol.circle) {
            Some(point) => Err(SymbolError::NotCircleRegular { point, margin: tol.circle }),
            None => Ok(()),
        }
    }

    /// `m + #{|aᵢ| < 1} − #{|bⱼ| < 1}`.
    pub fn winding_number(&self) -> Result<i32, SymbolError> {
        self.check_circle_regular()?;
        let inside = |v: &[Complex64]| v.iter().filter(|p| p.norm() < 1.0).count() as i32;
        Ok(self.monomial + inside(&self.zeros) - inside(&self.poles))
    }

    /// Order of the zero (positive) or pole (negative) at `λ`.
    pub fn ord_at(&self, lambda: Complex64) -> i32 {
        self.ord_at_with(lambda, DELTA_ROOT)
    }

    pub fn ord_at_with(&self, lambda: Complex64, delta_root: f64) -> i32 {
        let count = |v: &[Complex64]| v.iter().filter(|p| (**p - lambda).norm() < delta_root).count() as i32;
        let mono = if lambda.norm() < delta_root { self.monomial } else { 0 };
        count(&self.zeros) - count(&self.poles) + mono
    }

    /// Removes every `(z − λ)` factor, returning the order removed and the
    /// remaining function, which is regular and nonzero at `λ`.
    pub fn split_at(&self, lambda: Complex64) -> (i32, Self) {
        let ord = self.ord_at(lambda);
        let near = |p: &Complex64| (p - lambda).norm() < DELTA_ROOT;
        let at_origin = lambda.norm() < DELTA_ROOT;
        let rest = Self {
            scale: self.scale,
            monomial: if at_origin { 0 } else { self.monomial },
            zeros: self.zeros.iter().filter(|p| !near(p)).copied().collect(),
            poles: self.poles.iter().filter(|p| !near(p)).copied().collect(),
        };
        (ord, rest)
    }

    /// Points of the open unit disk where the function has a zero or a pole
    /// (including the origin when `m ≠ 0`).
    pub fn disk_divisor_points(&self) -> Vec<Complex64> {
        let mut pts: Vec<Complex64> = self.zeros.iter().chain(&self.poles).copied().filter(|p| p.norm() < 1.0).collect();
        if self.monomial != 0 {
            pts.push(Complex64::new(0.0, 0.0));
        }
        pts
    }

    /// Laurent coefficients on the annulus containing the circle, obtained by
    /// expanding every pole as a geometric series (inside poles in negative
    /// powers, outside poles in positive powers) and multiplying out.
    pub fn laurent_coeffs(&self, bandwidth: usize) -> Result<LaurentExpansion, SymbolError> {
        self.check_circle_regular()?;
        let k = bandwidth as i64;
        let rho = self
            .poles
            .iter()
            .map(|b| if b.norm() < 1.0 { b.norm() } else { 1.0 / b.norm() })
            .fold(0.0, f64::max);
        let extra = if rho > 0.0 { ((1e-18f64).ln() / rho.ln()).ceil() as i64 + 8 } else { 0 };
        let window = k + extra + self.zeros.len() as i64 + self.monomial.unsigned_abs() as i64;

        let mut series = LaurentWindow::constant(self.scale, window);
        series.shift(self.monomial as i64);
        for a in &self.zeros {
            series.mul_linear(*a);
        }
        for b in &self.poles {
            series.mul_pole(*b);
        }
        let symbol = FourierSymbol::from_coeffs_trimmed(series.into_coeffs().filter(|(n, _)| n.abs() <= k), 0.0);
        let tail_bound = self.laurent_tail_bound(bandwidth);
        Ok(LaurentExpansion { symbol, tail_bound })
    }

    fn laurent_tail_bound(&self, bandwidth: usize) -> f64 {
        let k = bandwidth as i32;
        let r_in = self.poles.iter().filter(|b| b.norm() < 1.0).map(|b| b.norm()).fold(0.0, f64::max);
        let r_out = self.poles.iter().filter(|b| b.norm() > 1.0).map(|b| b.norm()).fold(f64::INFINITY, f64::min);
        let inside_poles = self.poles.iter().filter(|b| b.norm() < 1.0).count() as i32;
        let outside_poles = self.poles.len() as i32 - inside_poles;

        // Highest and lowest nonzero powers when one side has no poles.
        let top = self.monomial + self.zeros.len() as i32 - inside_poles;
        let bottom = self.monomial - inside_poles.max(0);
        let positive = if outside_poles == 0 && top <= k {
            0.0
        } else {
            let radius = if r_out.is_finite() { r_out.sqrt() } else { 2.0 };
            let m = self.circle_max(radius);
            m * radius.powi(-(k + 1)) / (1.0 - 1.0 / radius)
        };
        let negative = if inside_poles == 0 && bottom >= -k {
            0.0
        } else {
            let radius = if r_in > 0.0 { r_in.sqrt() } else { 0.5 };
            let m = self.circle_max(radius);
            m * radius.powi(k + 1) / (1.0 - radius)
        };
        positive + negative
    }

    fn circle_max(&self, radius: f64) -> f64 {
        let n = 2048;
        (0..n)
            .filter_map(|j| {
                let z = Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / n as f64);
                self.eval_z(z).ok().map(|v| v.norm())
            })
            .fold(0.0, f64::max)
            * 1.05
    }
}

/// Laurent series on a fixed window `[-w, w]`.
struct LaurentWindow {
    offset: i64,
    data: Vec<Complex64>,
}

impl LaurentWindow {
    fn constant(c: Complex64, window: i64) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); (2 * window + 1) as usize];
        data[window as usize] = c;
        Self { offset: window, data }
    }

    fn shift(&mut self, m: i64) {
        let len = self.data.len() as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for (i, c) in self.data.iter().enumerate() {
            let j = i as i64 + m;
            if (0..len).contains(&j) {
                out[j as usize] = *c;
            }
        }
        self.data = out;
    }

    fn convolve(&mut self, factor: &[(i64, Complex64)]) {
        let len = self.data.len() as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for (i, c) in self.data.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            for &(p, f) in factor {
                let j = i as i64 + p;
                if (0..len).contains(&j) {
                    out[j as usize] += c * f;
                }
            }
        }
        self.data = out;
    }

    fn mul_linear(&mut self, a: Complex64) {
        self.convolve(&[(0, -a), (1, Complex64::new(1.0, 0.0))]);
    }

    fn mul_pole(&mut self, b: Complex64) {
        let w = self.offset;
        let factor: Vec<(i64, Complex64)> = if b.norm() < 1.0 {
            // 1/(z − b) = Σ_{k≥1} b^{k−1} z^{−k}
            (1..=2 * w).map(|k| (-k, b.powi((k - 1) as i32))).take_while(|(_, c)| c.norm() > 1e-300).collect()
        } else {
            // 1/(z − b) = −Σ_{k≥0} b^{−k−1} z^k
            (0..=2 * w).map(|k| (k, -b.powi(-(k as i32) - 1))).take_while(|(_, c)| c.norm() > 1e-300).collect()
        };
        self.convolve(&factor);
    }

    fn into_coeffs(self) -> impl Iterator<Item = (i64, Complex64)> {
        let offset = self.offset;
        self.data.into_iter().enumerate().map(move |(i, c)| (i as i64 - offset, c))
    }
}

impl CircleFunction for RationalSymbol {
    fn value_at(&self, theta: f64) -> Complex64 {
        self.eval_z(circle_point(theta)).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    fn log_derivative_at(&self, theta: f64) -> Complex64 {
        let z = circle_point(theta);
        Complex64::new(0.0, 1.0) * z * self.log_derivative_z(z)
    }

    fn resolution_hint(&self) -> usize {
        let closest = self
            .zeros
            .iter()
            .chain(&self.poles)
            .map(|p| (p.norm() - 1.0).abs())
            .fold(1.0, f64::min)
            .max(1e-3);
        (self.zeros.len() + self.poles.len() + self.monomial.unsigned_abs() as usize + (8.0 / closest) as usize).max(1)
    }
}

fn fmt_complex(c: Complex64) -> String {
    format!("({:?}{:+?}i)", c.re, c.im)
}

impl fmt::Display for RationalSymbol {
    /// Prints in the `parse_symbol` grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_complex(self.scale))?;
        if self.monomial != 0 {
            write!(f, " * z^{}", self.monomial)?;
        }
        for a in &self.zeros {
            write!(f, " * (z - {})", fmt_complex(*a))?;
        }
        for b in &self.poles {
            write!(f, " / (z - {})", fmt_complex(*b))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    fn approx(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn eval_examples() {
        let r = RationalSymbol::new(c64(1.0, 0.0), 0, vec![c64(0.5, 0.0)], vec![c64(3.0, 0.0)]).unwrap();
        assert!(approx(r.eval(0.0).unwrap(), c64(-0.25, 0.0), 1e-15));
        assert!(approx(RationalSymbol::z().eval(0.0).unwrap(), c64(1.0, 0.0), 1e-15));
    }

    #[test]
    fn pole_on_circle_is_reported() {
        let r = RationalSymbol::linear(c64(1.0, 0.0)).invert();
        assert!(matches!(r.eval(0.0), Err(SymbolError::PoleOnCircle { .. })));
    }

    #[test]
    fn multiply_is_multiset_union() {
        let r = RationalSymbol::linear(c64(0.5, 0.0)).multiply(&RationalSymbol::linear(c64(2.0, 0.0)));
        assert_eq!(r.zeros().len(), 2);
        assert!(r.zeros().contains(&c64(0.5, 0.0)) && r.zeros().contains(&c64(2.0, 0.0)));
    }

    #[test]
    fn conjugate_blaschke_is_reflected_factor() {
        let b = RationalSymbol::blaschke(c64(0.5, 0.0)).unwrap();
        let b2 = RationalSymbol::blaschke(c64(2.0, 0.0)).unwrap();
        let bc = b.conjugate();
        for t in [0.0, 0.3, 1.7, -2.2] {
            assert!(approx(bc.eval(t).unwrap(), b2.eval(t).unwrap(), 1e-14));
            assert!(approx(bc.eval(t).unwrap(), b.eval(t).unwrap().conj(), 1e-14));
        }
    }

    #[test]
    fn blaschke_normalization_and_modulus() {
        let a = c64(0.3, -0.4);
        let b = RationalSymbol::blaschke(a).unwrap();
        for t in [0.0, 1.0, 2.0, 3.0] {
            let z = circle_point(t);
            let direct = (a.norm() / a) * (a - z) / (1.0 - a.conj() * z);
            assert!(approx(b.eval(t).unwrap(), direct, 1e-14));
            assert!((direct.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn winding_examples() {
        assert_eq!(RationalSymbol::monomial(2).winding_number().unwrap(), 2);
        let r = RationalSymbol::zbar()
            .multiply(&RationalSymbol::linear(c64(0.5, 0.0)))
            .multiply(&RationalSymbol::linear(c64(3.0, 0.0)));
        assert_eq!(r.winding_number().unwrap(), 0);
    }

    #[test]
    fn ord_examples() {
        let r = RationalSymbol::z().multiply(&RationalSymbol::linear(c64(0.5, 0.0)));
        assert_eq!(r.ord_at(c64(0.0, 0.0)), 1);
        assert_eq!(RationalSymbol::zbar().ord_at(c64(0.0, 0.0)), -1);
        assert_eq!(RationalSymbol::linear(c64(0.5, 0.0)).pow(2).ord_at(c64(0.5, 0.0)), 2);
    }

    #[test]
    fn laurent_examples() {
        let z = RationalSymbol::z().laurent_coeffs(8).unwrap();
        assert_eq!(z.symbol, FourierSymbol::z());
        let zi = RationalSymbol::z().invert().laurent_coeffs(8).unwrap();
        assert_eq!(zi.symbol, FourierSymbol::zbar());
        let r = RationalSymbol::linear(c64(3.0, 0.0)).invert().laurent_coeffs(20).unwrap();
        for n in 0..=20 {
            let expected = -(3f64.powi(-n - 1));
            assert!((r.symbol.coeff(n as i64) - c64(expected, 0.0)).norm() < 1e-16);
        }
        assert!(r.symbol.riesz_project(super::super::Part::Minus).is_zero());
    }

    #[test]
    fn laurent_tail_bound_holds() {
        let r = RationalSymbol::new(
            c64(0.7, 0.2),
            -1,
            vec![c64(0.2, 0.5), c64(-1.6, 0.3)],
            vec![c64(0.6, -0.3), c64(1.4, 0.0), c64(-0.1, 0.5)],
        )
        .unwrap();
        for k in [4usize, 16, 48] {
            let lx = r.laurent_coeffs(k).unwrap();
            let err = (0..1024)
                .map(|j| {
                    let t = 2.0 * PI * j as f64 / 1024.0;
                    (lx.symbol.eval(t) - r.eval(t).unwrap()).norm()
                })
                .fold(0.0, f64::max);
            assert!(err <= lx.tail_bound + 1e-13, "K={k} err={err} bound={}", lx.tail_bound);
        }
    }

    #[test]
    fn add_constant_matches_pointwise() {
        let r = RationalSymbol::new(c64(0.5, 0.2), -1, vec![c64(0.3, 0.1)], vec![c64(2.0, -1.0)]).unwrap();
        let s = r.add_constant(c64(-0.7, 0.4)).unwrap();
        for t in [0.0, 0.9, 2.2, 4.0] {
            assert!((s.eval(t).unwrap() - (r.eval(t).unwrap() + c64(-0.7, 0.4))).norm() < 1e-12);
        }
        let z = RationalSymbol::z().add_constant(c64(-0.5, 0.0)).unwrap();
        assert_eq!(z, RationalSymbol::linear(c64(0.5, 0.0)));
    }

    #[test]
    fn origin_folding_and_cancellation() {
        let r = RationalSymbol::new(c64(2.0, 0.0), 0, vec![c64(0.0, 0.0), c64(0.5, 0.0)], vec![c64(0.5, 0.0)]).unwrap();
        assert_eq!(r.monomial_exp(), 1);
        assert!(r.zeros().is_empty() && r.poles().is_empty());
    }
}
