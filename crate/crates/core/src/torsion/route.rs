use super::{
    exp_torsion_smooth, torsion_det, torsion_factorized, torsion_integral, torsion_tame, IntegralOptions, Method,
    TorsionError, TorsionResult,
};
use crate::sections::Schedule;
use crate::symbols::SmoothSymbol;

#[derive(Clone, Debug)]
pub struct RouteOptions {
    pub nmax: usize,
    pub basepoint: f64,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self { nmax: 256, basepoint: 0.0 }
    }
}

/// Methods whose preconditions hold for the pair. The determinant, integral
/// and factorized paths take any circle-regular pair; `tame` needs both
/// symbols rational and `exp` needs both windings zero.
pub fn applicable_methods(f: &SmoothSymbol, g: &SmoothSymbol) -> Result<Vec<Method>, TorsionError> {
    f.rational.check_circle_regular()?;
    g.rational.check_circle_regular()?;
    let mut out = vec![Method::Det];
    if f.is_rational() && g.is_rational() {
        out.push(Method::Tame);
    }
    out.push(Method::Integral);
    out.push(Method::Factorized);
    if f.winding_number()? == 0 && g.winding_number()? == 0 {
        out.push(Method::Exp);
    }
    Ok(out)
}

pub fn compute(method: Method, f: &SmoothSymbol, g: &SmoothSymbol, opts: &RouteOptions) -> Result<TorsionResult, TorsionError> {
    match method {
        Method::Det => torsion_det(&f.to_fourier()?, &g.to_fourier()?, &Schedule::up_to(opts.nmax)),
        Method::Tame => {
            if !(f.is_rational() && g.is_rational()) {
                return Err(TorsionError::NotApplicable("tame path needs rational symbols".into()));
            }
            torsion_tame(&f.rational, &g.rational)
        }
        Method::Integral => torsion_integral(f, g, IntegralOptions::at(opts.basepoint)),
        Method::Factorized => torsion_factorized(f, g),
        Method::Exp => exp_torsion_smooth(f, g),
        Method::Lefschetz => Err(TorsionError::NotApplicable("lefschetz takes a kernel specification".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::symbols::{FourierSymbol, RationalSymbol};

    #[test]
    fn routing_by_class() {
        let lin = SmoothSymbol::from_rational(RationalSymbol::linear(c64(0.5, 0.0)));
        let e = SmoothSymbol::exp_of(FourierSymbol::z());
        assert_eq!(
            applicable_methods(&lin, &lin).unwrap(),
            vec![Method::Det, Method::Tame, Method::Integral, Method::Factorized]
        );
        assert_eq!(
            applicable_methods(&e, &e).unwrap(),
            vec![Method::Det, Method::Integral, Method::Factorized, Method::Exp]
        );
        let r = compute(Method::Tame, &lin, &lin, &RouteOptions::default()).unwrap();
        assert!((r.value - c64(-1.0, 0.0)).norm() < 1e-14);
        assert!(compute(Method::Tame, &lin, &e, &RouteOptions::default()).is_err());
    }
}
