use proptest::prelude::*;

use torsionlab::cli::{parse_symbol, ComplexValue, Disagreements, MethodResult};
use torsionlab::funcalc::commutator_norm;
use torsionlab::symbols::{FourierSymbol, RationalSymbol};
use torsionlab::torsion::{berger_shaw, exp_torsion, torsion_tame};
use torsionlab::{c64, Complex64};

fn off_circle() -> impl Strategy<Value = Complex64> {
    (prop_oneof![0.1f64..0.8, 1.25f64..3.0], 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn trig(max_band: i64) -> impl Strategy<Value = FourierSymbol> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), (2 * max_band + 1) as usize).prop_map(move |v| {
        FourierSymbol::from_coeffs(v.into_iter().enumerate().map(|(i, (re, im))| (i as i64 - max_band, c64(re, im))))
    })
}

fn product(points: &[Complex64]) -> RationalSymbol {
    points.iter().fold(RationalSymbol::one(), |acc, a| acc.multiply(&RationalSymbol::linear(*a)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tame_torsion_is_antisymmetric_and_multiplicative(
        f in prop::collection::vec(off_circle(), 1..3),
        g in prop::collection::vec(off_circle(), 1..3),
        h in prop::collection::vec(off_circle(), 1..3),
    ) {
        let (f, g, h) = (product(&f), product(&g), product(&h));
        let fg = torsion_tame(&f, &g).unwrap().value;
        let gf = torsion_tame(&g, &f).unwrap().value;
        prop_assert!((fg * gf - 1.0).norm() < 1e-9);
        let fh = torsion_tame(&f, &h).unwrap().value;
        let fgh = torsion_tame(&f, &g.multiply(&h)).unwrap().value;
        prop_assert!((fgh - fg * fh).norm() < 1e-9 * fgh.norm().max(1.0));
    }

    #[test]
    fn berger_shaw_three_ways(f in trig(3), g in trig(3)) {
        let bs = berger_shaw(&f, &g).unwrap();
        prop_assert!((bs.integral - bs.coefficients).norm() < 1e-10);
        let t = bs.trace.unwrap().value;
        prop_assert!((t - bs.coefficients).norm() < 1e-10);
    }

    #[test]
    fn exponential_torsion_is_exp_of_trace(f in trig(2), g in trig(2)) {
        let r = exp_torsion(&f, &g).unwrap();
        let want = berger_shaw(&f, &g).unwrap().coefficients.exp();
        prop_assert!((r.value - want).norm() < 1e-10 * want.norm().max(1.0));
    }

    #[test]
    fn hilbert_schmidt_norm_of_commutator(phi in trig(4)) {
        let closed: f64 = phi.coeffs().map(|(n, c)| n.unsigned_abs() as f64 * c.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((commutator_norm(&phi, 2.0).unwrap() - closed).abs() < 1e-12);
    }

    #[test]
    fn normal_form_reparses(a in off_circle(), k in -2i32..=2, s in 0.1f64..2.0) {
        let text = format!("({}) * z^{k} * (z - ({}{:+}i)) * exp({s}*zbar)", s, a.re, a.im);
        let e = parse_symbol(&text).unwrap();
        let again = parse_symbol(&e.normal_form()).unwrap();
        for j in 0..8 {
            let t = 0.7 * j as f64;
            prop_assert!((e.eval(t) - again.eval(t)).norm() < 1e-12 * e.eval(t).norm().max(1.0));
        }
    }

    #[test]
    fn disagreement_matrix_is_symmetric(vals in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, 0.0f64..1e-3), 1..5)) {
        let results: Vec<MethodResult> = vals
            .iter()
            .enumerate()
            .map(|(i, &(re, im, err))| MethodResult {
                method: format!("m{i}"),
                value: ComplexValue { re, im },
                err_estimate: err,
                dims: vec![],
                exact: false,
                notes: vec![],
                history: vec![],
                wall_ms: 0.0,
            })
            .collect();
        let d = Disagreements::from_results(&results, 1e-6);
        for i in 0..results.len() {
            prop_assert_eq!(d.matrix[i][i], 0.0);
            for j in 0..results.len() {
                prop_assert_eq!(d.matrix[i][j], d.matrix[j][i]);
            }
        }
        prop_assert_eq!(d.agree(), d.matrix.iter().flatten().all(|x| *x <= 1e-6));
    }
}
