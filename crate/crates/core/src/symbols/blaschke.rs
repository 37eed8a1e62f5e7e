use num_complex::Complex64;

use super::fft::sample_grid;
use super::rational::RationalSymbol;
use super::{SymbolError, DELTA_CIRCLE};

/// `r = Π B_a · outer` with `outer` invertible in `H∞`.
#[derive(Clone, Debug)]
pub struct BlaschkeFactorization {
    /// Zeros in the open disk with multiplicity; the origin appears once per
    /// power of `z`.
    pub disk_zeros: Vec<Complex64>,
    pub outer: RationalSymbol,
    /// `sup_{S¹} |Π B_a · outer − r|`.
    pub residual: f64,
}

impl BlaschkeFactorization {
    pub fn blaschke_product(&self) -> RationalSymbol {
        blaschke_product(&self.disk_zeros)
    }
}

pub fn blaschke_product(zeros: &[Complex64]) -> RationalSymbol {
    zeros
        .iter()
        .map(|a| RationalSymbol::blaschke(*a).expect("disk zero off the circle"))
        .fold(RationalSymbol::one(), |acc, b| acc.multiply(&b))
}

/// Inner/outer split of a rational `H∞` symbol without zeros on the circle.
pub fn blaschke_factorize(r: &RationalSymbol) -> Result<BlaschkeFactorization, SymbolError> {
    if r.monomial_exp() < 0 {
        return Err(SymbolError::NotHInfinity { pole: Complex64::new(0.0, 0.0) });
    }
    if let Some(b) = r.poles().iter().find(|b| b.norm() <= 1.0 + DELTA_CIRCLE) {
        return Err(SymbolError::NotHInfinity { pole: *b });
    }
    r.check_circle_regular()?;
    let mut disk_zeros: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); r.monomial_exp() as usize];
    disk_zeros.extend(r.zeros().iter().copied().filter(|a| a.norm() < 1.0));
    let product = blaschke_product(&disk_zeros);
    let outer = r.divide(&product);
    if outer.monomial_exp() != 0 || outer.zeros().iter().chain(outer.poles()).any(|p| p.norm() <= 1.0) {
        return Err(SymbolError::Domain("outer factor is not invertible in the closed disk".into()));
    }
    let residual = sample_grid(1024, 0.0)
        .into_iter()
        .map(|t| (product.eval(t).unwrap() * outer.eval(t).unwrap() - r.eval(t).unwrap()).norm())
        .fold(0.0, f64::max);
    Ok(BlaschkeFactorization { disk_zeros, outer, residual })
}

/// Region whose interior roots are split off by [`factor_on_spectrum`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralRegion {
    /// Closed unit disk, the essential-spectrum hull of `T_z`.
    UnitDisk,
    Disk { center: Complex64, radius: f64 },
}

impl SpectralRegion {
    fn center_radius(&self) -> (Complex64, f64) {
        match *self {
            SpectralRegion::UnitDisk => (Complex64::new(0.0, 0.0), 1.0),
            SpectralRegion::Disk { center, radius } => (center, radius),
        }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        let (c, r) = self.center_radius();
        (p - c).norm() < r
    }

    pub fn on_boundary(&self, p: Complex64, margin: f64) -> bool {
        let (c, r) = self.center_radius();
        ((p - c).norm() - r).abs() < margin
    }
}

/// Splits a polynomial `f = p · q` where `p` collects the roots inside the
/// region and `q` has none there.
pub fn factor_on_spectrum(
    f: &RationalSymbol,
    region: SpectralRegion,
) -> Result<(RationalSymbol, RationalSymbol), SymbolError> {
    if !f.is_polynomial() {
        return Err(SymbolError::Domain("factor_on_spectrum expects a polynomial".into()));
    }
    let mut roots: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); f.monomial_exp() as usize];
    roots.extend_from_slice(f.zeros());
    if let Some(&point) = roots.iter().find(|r| region.on_boundary(**r, DELTA_CIRCLE)) {
        return Err(SymbolError::NotCircleRegular { point, margin: DELTA_CIRCLE });
    }
    let inside: Vec<Complex64> = roots.into_iter().filter(|r| region.contains(*r)).collect();
    let p = RationalSymbol::new(Complex64::new(1.0, 0.0), 0, inside, vec![])?;
    let q = f.divide(&p);
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn single_disk_zero() {
        let r = RationalSymbol::linear(c64(0.5, 0.0));
        let bf = blaschke_factorize(&r).unwrap();
        assert_eq!(bf.disk_zeros, vec![c64(0.5, 0.0)]);
        // (z − 0.5) / B_{0.5}(z) = −(1 − 0.5 z)
        for t in [0.0, 1.0, 2.5] {
            let z = super::super::circle_point(t);
            assert!((bf.outer.eval(t).unwrap() - (-(1.0 - 0.5 * z))).norm() < 1e-14);
        }
        assert!(bf.residual < 1e-14);
        assert_eq!(bf.outer.winding_number().unwrap(), 0);
    }

    #[test]
    fn outer_only_and_mixed() {
        let r = RationalSymbol::linear(c64(-2.0, 0.0)).scaled(c64(1.0, 0.0)).unwrap();
        let bf = blaschke_factorize(&r).unwrap();
        assert!(bf.disk_zeros.is_empty());
        assert_eq!(bf.outer, r);

        let r = RationalSymbol::linear(c64(0.5, 0.0)).multiply(&RationalSymbol::linear(c64(3.0, 0.0)));
        let bf = blaschke_factorize(&r).unwrap();
        assert_eq!(bf.disk_zeros, vec![c64(0.5, 0.0)]);
        assert!(bf.outer.zeros().iter().all(|a| a.norm() > 1.0));
    }

    #[test]
    fn pole_in_disk_is_rejected() {
        let r = RationalSymbol::linear(c64(0.5, 0.0)).invert();
        assert!(matches!(blaschke_factorize(&r), Err(SymbolError::NotHInfinity { .. })));
        assert!(blaschke_factorize(&RationalSymbol::zbar()).is_err());
    }

    #[test]
    fn spectrum_factorization_examples() {
        let f = RationalSymbol::z().multiply(&RationalSymbol::linear(c64(2.0, 0.0)));
        let (p, q) = factor_on_spectrum(&f, SpectralRegion::UnitDisk).unwrap();
        assert_eq!(p, RationalSymbol::z());
        assert_eq!(q, RationalSymbol::linear(c64(2.0, 0.0)));

        let f = RationalSymbol::linear(c64(0.5, 0.0)).pow(2).multiply(&RationalSymbol::linear(c64(3.0, 0.0)));
        let (p, q) = factor_on_spectrum(&f, SpectralRegion::UnitDisk).unwrap();
        assert_eq!(p, RationalSymbol::linear(c64(0.5, 0.0)).pow(2));
        assert_eq!(q, RationalSymbol::linear(c64(3.0, 0.0)));

        let f = RationalSymbol::linear(c64(2.0, 0.0));
        let (p, q) = factor_on_spectrum(&f, SpectralRegion::UnitDisk).unwrap();
        assert!(p.is_constant());
        assert_eq!(q, f);

        let f = RationalSymbol::linear(c64(1.0, 0.0));
        assert!(factor_on_spectrum(&f, SpectralRegion::UnitDisk).is_err());
    }
}
