use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::corpus::{self, parse};
use super::{check, CheckResult};
use crate::funcalc::{
    calculus_discrepancy, commutator_norm, exp_unitary_estimate, index_of_composition, perturbation_schatten,
    trace_commutator_identity, ExpEstimateOptions,
};
use crate::function::FunctionSpec;
use crate::linalg;
use crate::sections::{
    stabilize_blocks, toeplitz_matrix, DetOptions, MatrixFunctionMode, Operand, PadRule, Schedule, Word,
};
use crate::symbols::{FourierSymbol, RationalSymbol, SmoothSymbol};
use crate::torsion::{
    applicable_methods, berger_shaw, compute, exp_torsion, functional_factorization, lefschetz_torsion,
    torsion_det, torsion_det_operands, torsion_factorized, torsion_integral, torsion_tame, IntegralOptions, KernelSpec,
    RouteOptions, TorsionResult,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `max(1e−6, 3·Σ err)`.
fn tol_of(results: &[&TorsionResult]) -> f64 {
    1e-6f64.max(3.0 * results.iter().map(|r| r.err_estimate).sum::<f64>())
}

fn verdict(gap: f64, tol: f64) -> (bool, String) {
    (gap <= tol, format!("gap {gap:.3e} (tol {tol:.1e})"))
}

fn rational(expr: &str) -> RationalSymbol {
    parse(expr).symbol.rational
}

fn smooth(expr: &str) -> SmoothSymbol {
    parse(expr).symbol
}

fn fourier(expr: &str) -> Result<FourierSymbol, Box<dyn std::error::Error + Send + Sync>> {
    Ok(crate::cli::parse_fourier(expr)?)
}

fn one() -> SmoothSymbol {
    SmoothSymbol::from_rational(RationalSymbol::one())
}

fn det_schedule() -> Schedule {
    Schedule::up_to(128)
}

/// Closed forms of the joint torsion, the tame symbol and the index.
pub fn golden_checks() -> Vec<CheckResult> {
    const S: &str = "golden";
    let mut out = Vec::new();
    let pairs: [(&str, &str, Complex64); 7] = [
        ("z - 0.5", "z - 0.3", c(-1.0, 0.0)),
        ("z - 0.5", "z - 2", c(1.0 / (0.5 - 2.0), 0.0)),
        ("z - 3", "z - 0.5", c(0.5 - 3.0, 0.0)),
        ("2 + z", "z", c(2.0, 0.0)),
        ("2 + z", "zbar", c(0.5, 0.0)),
        ("z - 0.5", "zbar", c(-1.0, 0.0)),
        ("z", "z", c(-1.0, 0.0)),
    ];
    let rows: Vec<CheckResult> = pairs
        .par_iter()
        .flat_map(|&(f, g, want)| {
            let inst = json!({ "f": f, "g": g, "expected": [want.re, want.im] });
            let tame = check(S, format!("tame tau({f}, {g})"), inst.clone(), || {
                let r = torsion_tame(&rational(f), &rational(g))?;
                Ok(verdict((r.value - want).norm(), 1e-12))
            });
            let det = check(S, format!("det tau({f}, {g}) at nmax 256"), inst.clone(), || {
                let r = torsion_det(&fourier(f)?, &fourier(g)?, &Schedule::up_to(256))?;
                Ok(verdict((r.value - want).norm(), 1e-6))
            });
            let all = check(S, format!("all methods tau({f}, {g})"), inst, || {
                let (sf, sg) = (smooth(f), smooth(g));
                let mut worst: f64 = 0.0;
                let mut names = Vec::new();
                for m in applicable_methods(&sf, &sg)? {
                    let r = compute(m, &sf, &sg, &RouteOptions::default())?;
                    worst = worst.max((r.value - want).norm() - tol_of(&[&r]));
                    names.push(m.name());
                }
                Ok((worst <= 0.0, format!("{} within tolerance", names.join(", "))))
            });
            vec![tame, det, all]
        })
        .collect();
    out.extend(rows);

    out.push(check(S, "conj(B_0.5) = B_2 on the circle", json!({ "a": 0.5 }), || {
        let lhs = RationalSymbol::blaschke(c(0.5, 0.0))?.conjugate();
        let rhs = RationalSymbol::blaschke(c(2.0, 0.0))?;
        let mut gap: f64 = 0.0;
        for j in 0..64 {
            let t = 0.1 * j as f64;
            gap = gap.max((lhs.eval(t)? - rhs.eval(t)?).norm());
        }
        Ok(verdict(gap, 1e-14))
    }));
    out.push(check(S, "ord_0(zbar) = -1", json!({ "r": "zbar" }), || {
        let o = RationalSymbol::zbar().ord_at(c(0.0, 0.0));
        Ok((o == -1, format!("ord {o}")))
    }));
    out.push(check(S, "ind T_z = -1", json!({ "s": "z" }), || {
        let i = crate::sections::numerical_index(&FourierSymbol::z())?;
        Ok((i == -1, format!("index {i}")))
    }));
    out.push(check(S, "Steinberg c(z - 0.5, 1.5 - z) product = 1", json!({ "f": "z - 0.5", "g": "1.5 - z" }), || {
        let r = torsion_tame(&rational("z - 0.5"), &rational("1.5 - z"))?;
        Ok(verdict((r.value - 1.0).norm(), 1e-14))
    }));
    for (f, g, want) in [("z - 0.5", "z - 0.3", c(-1.0, 0.0)), ("2 + z", "zbar", c(0.5, 0.0))] {
        out.push(check(S, format!("factorized tau({f}, {g})"), json!({ "f": f, "g": g }), || {
            let r = torsion_factorized(&smooth(f), &smooth(g))?;
            Ok(verdict((r.value - want).norm(), 1e-12))
        }));
    }
    for (l, want) in [(0.0, 2.0), (0.5, 2.5)] {
        out.push(check(S, format!("lefschetz tau(2 + z, z - {l})"), json!({ "phi": "2 + z", "lambda": l }), || {
            let r = lefschetz_torsion(&fourier("2 + z")?, KernelSpec::ZMinus(c(l, 0.0)))?;
            Ok(verdict((r.value - want).norm(), 1e-12))
        }));
    }
    out.push(check(S, "exp path tau(e^z, e^zbar) = e^-1", json!({ "a": "z", "b": "zbar" }), || {
        let r = exp_torsion(&FourierSymbol::z(), &FourierSymbol::zbar())?;
        Ok(verdict((r.value - (-1f64).exp()).norm(), 1e-12))
    }));
    out.push(check(S, "det tau(e^z, e^zbar) = e^-1", json!({ "f": "exp(z)", "g": "exp(zbar)" }), || {
        let r = torsion_det(&fourier("exp(z)")?, &fourier("exp(zbar)")?, &Schedule::up_to(256))?;
        Ok(verdict((r.value - (-1f64).exp()).norm(), 1e-8))
    }));
    out.push(check(S, "tau(z^2, 2 + z) = tau(z, 2 + z)^2", json!({ "f": "w^2", "a": "z", "b": "2 + z" }), || {
        let s = functional_factorization(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &smooth("z"), &smooth("2 + z"), &det_schedule())?;
        let sq = torsion_tame(&rational("z"), &rational("2 + z"))?.value.powi(2);
        let gap = (s.lhs.value - sq).norm().max((s.rhs.value - sq).norm());
        Ok(verdict(gap, tol_of(&[&s.lhs, &s.rhs])))
    }));
    out.push(check(S, "ind(z^2) = -2 by both counts", json!({ "f": "w^2", "base": "z" }), || {
        let r = index_of_composition(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &FourierSymbol::z())?;
        Ok((r.computed == -2 && r.formula == -2, format!("({}, {})", r.computed, r.formula)))
    }));
    out
}

/// Pairs of smooth symbols (every fourth pair rational) on which every
/// applicable method must agree.
pub fn cross_method_agreement(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 1);
    let pairs: Vec<(String, String)> = (0..n)
        .map(|i| {
            if i % 4 == 3 {
                (corpus::rational_expr(&mut rng), corpus::rational_expr(&mut rng))
            } else {
                (corpus::smooth_expr(&mut rng), corpus::smooth_expr(&mut rng))
            }
        })
        .collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (f, g))| {
            check("steinberg", format!("cross-method agreement #{i}"), json!({ "f": f, "g": g }), || {
                let (sf, sg) = (smooth(f), smooth(g));
                let results: Vec<TorsionResult> = applicable_methods(&sf, &sg)?
                    .into_iter()
                    .map(|m| compute(m, &sf, &sg, &RouteOptions::default()))
                    .collect::<Result<_, _>>()?;
                let mut ok = true;
                let mut worst = (0.0f64, 0.0f64);
                for a in &results {
                    for b in &results {
                        let gap = (a.value - b.value).norm();
                        let tol = a.tolerance_with(b);
                        ok &= gap <= tol;
                        if gap / tol > worst.0 / worst.1.max(1e-300) {
                            worst = (gap, tol);
                        }
                    }
                }
                let names: Vec<&str> = results.iter().map(|r| r.method.name()).collect();
                Ok((ok, format!("{}: worst gap {:.3e} (tol {:.1e})", names.join("/"), worst.0, worst.1)))
            })
        })
        .collect()
}

/// Torsion by the exact path when both symbols are rational, otherwise the
/// factorized path.
fn tau(f: &SmoothSymbol, g: &SmoothSymbol) -> Result<TorsionResult, crate::torsion::TorsionError> {
    if f.is_rational() && g.is_rational() {
        torsion_tame(&f.rational, &g.rational)
    } else {
        torsion_factorized(f, g)
    }
}

/// Multiplicativity, antisymmetry, inverses, `τ(f, 1) = 1`, `τ(f, f)` and the
/// Steinberg relation of tame symbols.
pub fn steinberg_relations(seed: u64, n: usize) -> Vec<CheckResult> {
    const S: &str = "steinberg";
    let mut rng = corpus::rng(seed, 2);
    let triples: Vec<[String; 3]> = (0..n)
        .map(|i| {
            let gen = |r: &mut corpus::CorpusRng| if i % 2 == 0 { corpus::rational_expr(r) } else { corpus::smooth_expr(r) };
            [gen(&mut rng), gen(&mut rng), gen(&mut rng)]
        })
        .collect();
    let steinberg: Vec<String> = (0..n)
        .map(|_| loop {
            let f = corpus::rational_expr(&mut rng);
            let r = rational(&f);
            let Ok(g) = r.add_constant(c(-1.0, 0.0)).and_then(|x| x.scaled(c(-1.0, 0.0))) else { continue };
            if r.is_circle_regular() && g.is_circle_regular() {
                break f;
            }
        })
        .collect();
    let mut out: Vec<CheckResult> = triples
        .par_iter()
        .enumerate()
        .flat_map(|(i, [f, g1, g2])| {
            let inst = json!({ "f": f, "g1": g1, "g2": g2 });
            let (sf, sg1, sg2) = (smooth(f), smooth(g1), smooth(g2));
            let mut rows = vec![
                check(S, format!("multiplicativity #{i}"), inst.clone(), || {
                    let (a, b, ab) = (tau(&sf, &sg1)?, tau(&sf, &sg2)?, tau(&sf, &sg1.multiply(&sg2))?);
                    Ok(verdict((ab.value - a.value * b.value).norm(), tol_of(&[&a, &b, &ab])))
                }),
                check(S, format!("antisymmetry #{i}"), inst.clone(), || {
                    let (a, b) = (tau(&sf, &sg1)?, tau(&sg1, &sf)?);
                    Ok(verdict((a.value * b.value - 1.0).norm(), tol_of(&[&a, &b])))
                }),
                check(S, format!("inverse #{i}"), inst.clone(), || {
                    let (a, b) = (tau(&sf, &sg1)?, tau(&sf, &sg1.invert())?);
                    Ok(verdict((a.value * b.value - 1.0).norm(), tol_of(&[&a, &b])))
                }),
                check(S, format!("tau(f, 1) = 1 #{i}"), inst.clone(), || {
                    let a = tau(&sf, &one())?;
                    Ok(verdict((a.value - 1.0).norm(), tol_of(&[&a])))
                }),
            ];
            if sf.is_rational() {
                rows.push(check(S, format!("tau(f, f) = (-1)^ind #{i}"), inst, || {
                    let ind = -sf.winding_number()?;
                    let want = if ind % 2 == 0 { 1.0 } else { -1.0 };
                    let a = torsion_tame(&sf.rational, &sf.rational)?;
                    Ok(verdict((a.value - want).norm(), 1e-12))
                }));
            }
            rows
        })
        .collect();
    out.par_extend(steinberg.par_iter().enumerate().map(|(i, f)| {
        check(S, format!("c(f, 1 - f) = 1 over the disk #{i}"), json!({ "f": f }), || {
            let r = rational(f);
            let g = r.add_constant(c(-1.0, 0.0))?.scaled(c(-1.0, 0.0))?;
            let t = torsion_tame(&r, &g)?;
            Ok(verdict((t.value - 1.0).norm(), 1e-9))
        })
    }));
    out
}

/// `conj(τ(f, g)) · τ(f̄, ḡ) = 1` on the determinant path.
pub fn conjugation_rule(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 3);
    let pairs: Vec<(String, String)> =
        (0..n).map(|_| (corpus::smooth_expr(&mut rng), corpus::smooth_expr(&mut rng))).collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (f, g))| {
            check("steinberg", format!("conjugation rule #{i}"), json!({ "f": f, "g": g }), || {
                let (sf, sg) = (smooth(f), smooth(g));
                let a = torsion_det(&sf.to_fourier()?, &sg.to_fourier()?, &det_schedule())?;
                let b = torsion_det(&sf.conjugate().to_fourier()?, &sg.conjugate().to_fourier()?, &det_schedule())?;
                Ok(verdict((a.value.conj() * b.value - 1.0).norm(), tol_of(&[&a, &b])))
            })
        })
        .collect()
}

/// `τ(T_f, I − Q) = 1` for a rank-one projection `Q` on the leading
/// coordinates, through the stabilized determinant.
pub fn idempotent_rule(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 4);
    let cases: Vec<(String, Vec<[f64; 2]>)> = (0..n)
        .map(|_| {
            let v = (0..3).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
            (corpus::smooth_expr(&mut rng), v)
        })
        .collect();
    cases
        .par_iter()
        .enumerate()
        .map(|(i, (f, v))| {
            check("steinberg", format!("idempotent rule #{i}"), json!({ "f": f, "v": v }), || {
                let s = fourier(f)?;
                let ind = -smooth(f).winding_number()?;
                let v: Vec<Complex64> = v.iter().map(|x| c(x[0], x[1])).collect();
                let norm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
                let mut worst: f64 = 0.0;
                for nn in [32, 64] {
                    let m = 2 * nn;
                    let a = toeplitz_matrix(&s, m, m);
                    let mut b = linalg::identity(m);
                    for (r, vr) in v.iter().enumerate() {
                        for (k, vk) in v.iter().enumerate() {
                            b[(r, k)] -= vr * vk.conj() / norm2;
                        }
                    }
                    let d = stabilize_blocks(&a, ind, &b, 0, nn)?.commutator_det()?;
                    worst = worst.max((d - 1.0).norm());
                }
                Ok(verdict(worst, 1e-6))
            })
        })
        .collect()
}

/// `|τ(a, b)| = 1` for real-valued `a`, `b`.
pub fn unimodularity(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 5);
    let pairs: Vec<(String, String)> = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                (corpus::positive_expr(&mut rng), corpus::positive_trig_expr(&mut rng))
            } else {
                (corpus::positive_trig_expr(&mut rng), corpus::positive_expr(&mut rng))
            }
        })
        .collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            check("steinberg", format!("unimodularity #{i}"), json!({ "a": a, "b": b }), || {
                let r = torsion_det(&fourier(a)?, &fourier(b)?, &det_schedule())?;
                Ok(verdict((r.value.norm() - 1.0).abs(), tol_of(&[&r])))
            })
        })
        .collect()
}

/// `τ(T_z, λ(2 + z)) = λ^{ind T_z} τ(T_z, 2 + z) = 1/(2λ)`.
pub fn scalar_rule(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 6);
    let lambdas: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    lambdas
        .par_iter()
        .enumerate()
        .map(|(i, l)| {
            check("steinberg", format!("scalar rule #{i}"), json!({ "lambda": [l.re, l.im] }), || {
                let g = &FourierSymbol::constant(*l) * &fourier("2 + z")?;
                let r = torsion_det(&FourierSymbol::z(), &g, &det_schedule())?;
                Ok(verdict((r.value - 1.0 / (2.0 * l)).norm(), tol_of(&[&r])))
            })
        })
        .collect()
}

fn power_det(a: &FourierSymbol, t: f64) -> Result<TorsionResult, crate::torsion::TorsionError> {
    let word = Word::Apply(FunctionSpec::real_power(t), MatrixFunctionMode::HermitianEig, Box::new(Word::toeplitz(a.clone())));
    torsion_det_operands(
        &Operand::Word { word, index: 0 },
        &Operand::Symbol(FourierSymbol::z()),
        &DetOptions { schedule: det_schedule(), pad: PadRule::Equal },
    )
}

/// `τ(A^t, T_z) = τ(A, T_z)^t` for positive `A = T_a`, and the central
/// difference of `log τ(A^t, T_z)` at `t = 1` against `log τ(A, T_z)`.
pub fn power_law(seed: u64, n: usize) -> Vec<CheckResult> {
    const H: f64 = 1e-3;
    let mut rng = corpus::rng(seed, 7);
    let symbols: Vec<String> = (0..n)
        .map(|i| if i == 0 { "2 + 0.5*z + 0.5*zbar".to_string() } else { corpus::positive_trig_expr(&mut rng) })
        .collect();
    symbols
        .par_iter()
        .enumerate()
        .flat_map(|(i, a)| {
            let inst = json!({ "a": a, "b": "z", "h": H });
            let law = check("steinberg", format!("power law #{i}"), inst.clone(), || {
                let s = fourier(a)?;
                let base = power_det(&s, 1.0)?;
                let mut worst: f64 = 0.0;
                let mut tol: f64 = 1e-6;
                for t in [0.5, 1.0, 2.0, -1.0] {
                    let r = power_det(&s, t)?;
                    let want = (t * base.value.ln()).exp();
                    worst = worst.max((r.value - want).norm());
                    tol = tol.max(tol_of(&[&r, &base]) * (1.0 + t.abs()));
                }
                Ok(verdict(worst, tol))
            });
            let deriv = check("steinberg", format!("power law derivative #{i}"), inst, || {
                let s = fourier(a)?;
                let base = power_det(&s, 1.0)?.value.ln();
                let d = (power_det(&s, 1.0 + H)?.value.ln() - power_det(&s, 1.0 - H)?.value.ln()) / (2.0 * H);
                Ok(verdict((d - base).norm(), 1e-4))
            });
            vec![law, deriv]
        })
        .collect()
}

/// `d/ds log τ(e^{s f}, e^{g})` at `s = 1` by central differences against
/// `log τ(e^f, e^g)`.
pub fn variational_exp(seed: u64, n: usize) -> Vec<CheckResult> {
    const H: f64 = 1e-3;
    let mut rng = corpus::rng(seed, 8);
    let pairs: Vec<(String, String)> = (0..n)
        .map(|_| {
            let (k1, k2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            (corpus::trig_expr(&mut rng, k1, 0.5, false), corpus::trig_expr(&mut rng, k2, 0.5, false))
        })
        .collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (f, g))| {
            check("steinberg", format!("variational exponential rule #{i}"), json!({ "f": f, "g": g, "h": H }), || {
                let (sf, sg) = (fourier(f)?, fourier(g)?);
                let at = |s: f64| exp_torsion(&sf.scale(c(s, 0.0)), &sg).map(|r| r.value.ln());
                let d = (at(1.0 + H)? - at(1.0 - H)?) / (2.0 * H);
                Ok(verdict((d - at(1.0)?).norm(), 1e-4))
            })
        })
        .collect()
}

/// The integral formula at `θ₀ = 0` and at a random basepoint.
pub fn basepoint_independence(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 9);
    let cases: Vec<(String, String, f64)> = (0..n)
        .map(|_| {
            let (f, g) = (corpus::smooth_expr(&mut rng), corpus::smooth_expr(&mut rng));
            (f, g, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    cases
        .par_iter()
        .enumerate()
        .map(|(i, (f, g, t0))| {
            check("steinberg", format!("basepoint independence #{i}"), json!({ "f": f, "g": g, "theta0": t0 }), || {
                let (sf, sg) = (smooth(f), smooth(g));
                let a = torsion_integral(&sf, &sg, IntegralOptions::at(0.0))?;
                let b = torsion_integral(&sf, &sg, IntegralOptions::at(*t0))?;
                // Combined error estimates plus a rounding floor.
                let tol = a.err_estimate + b.err_estimate + 1e-12 * a.value.norm().max(1.0);
                Ok(verdict((a.value - b.value).norm(), tol))
            })
        })
        .collect()
}

fn function_named(name: &str) -> FunctionSpec {
    match name {
        "w^2" => FunctionSpec::power(2),
        "w^3" => FunctionSpec::power(3),
        "w" => FunctionSpec::identity(),
        _ => FunctionSpec::exp(),
    }
}

/// Discrepancies `T_{f(φ)} − f(T_φ)` against both majorant bounds, the
/// exponential estimate and perturbation plateaus.
pub fn bound_checks(seed: u64, n: usize) -> Vec<CheckResult> {
    const S: &str = "bounds";
    let mut cases: Vec<(String, String, String, f64, Vec<usize>)> = Vec::new();
    for phi in ["z + zbar", "z + zbar + 0.5*(z^2 + zbar^2)"] {
        for f in ["w^2", "w^3", "exp"] {
            for p in [1.0, 2.0] {
                cases.push((phi.into(), phi.into(), f.into(), p, vec![32, 64, 128]));
            }
        }
    }
    let mut rng = corpus::rng(seed, 10);
    for i in 0..n {
        let k = rng.gen_range(1..=3);
        let phi = corpus::trig_expr(&mut rng, k, 1.0, true);
        let f = ["w^2", "w^3", "exp"][rng.gen_range(0..3)];
        cases.push((phi, format!("random phi #{i}"), f.into(), [1.0, 2.0][rng.gen_range(0..2)], vec![32, 64]));
    }
    let mut out: Vec<CheckResult> = cases
        .par_iter()
        .map(|(phi, label, f, p, dims)| {
            let inst = json!({ "phi": phi, "f": f, "p": p, "dims": dims });
            check(S, format!("discrepancy {f} on {label}, p = {p}"), inst, || {
                let r = calculus_discrepancy(&fourier(phi)?, &function_named(f), *p, dims)?;
                let (a, b) = (&r.schatten_2p, &r.schatten_p);
                Ok((
                    a.pass && b.pass,
                    format!("L2p {:.4e} <= {:.4e}, Lp {:.4e} <= {:.4e}", a.measured, a.bound, b.measured, b.bound),
                ))
            })
        })
        .collect();
    out.push(check(S, "w^2 on z + zbar, p = 1: measured 1, bound 2", json!({ "phi": "z + zbar", "f": "w^2", "p": 1 }), || {
        let r = calculus_discrepancy(&fourier("z + zbar")?, &FunctionSpec::power(2), 1.0, &[8, 16, 32])?;
        let m = &r.schatten_p;
        Ok(((m.measured - 1.0).abs() < 1e-12 && (m.bound - 2.0).abs() < 1e-12, format!("{} / {}", m.measured, m.bound)))
    }));
    out.push(check(S, "linear f: zero discrepancy", json!({ "phi": "z + zbar", "f": "0.5 + 2w" }), || {
        let r = calculus_discrepancy(&fourier("z + zbar")?, &FunctionSpec::real_polynomial(&[0.5, 2.0]), 1.0, &[16, 32])?;
        let ok = r.schatten_p.measured == 0.0 && r.schatten_2p.measured == 0.0 && r.schatten_p.bound == 0.0;
        Ok((ok, format!("measured {}", r.schatten_p.measured)))
    }));
    for t in [0.0, 1.5, 3.0] {
        out.push(check(S, format!("exp estimate t = {t}"), json!({ "phi": "z + zbar", "t": t, "p": 1 }), || {
            let opts = ExpEstimateOptions { grid: 17, dims: vec![16, 32] };
            let r = exp_unitary_estimate(&fourier("z + zbar")?, t, 1.0, &opts)?;
            let ok = r.pass && (t != 0.0 || r.measured < 1e-12);
            Ok((ok, format!("{:.4e} <= {:.4e}", r.measured, r.bound)))
        }));
    }
    out.push(check(S, "perturbation plateau e0e0* on z + zbar", json!({ "a": "z + zbar", "k": "e0 e0*" }), || {
        let k = linalg::from_fn(1, 1, |_, _| c(1.0, 0.0));
        let r = perturbation_schatten(&fourier("z + zbar")?, &k, &FunctionSpec::exp(), 1.0, &[16, 32, 64])?;
        Ok((r.pass, format!("history {:?}", r.history)))
    }));
    out.push(check(S, "e^K - I in L^1 = 2 sinh 0.3", json!({ "a": "0", "k": "0.3(e0e1* + e1e0*)" }), || {
        let k = linalg::from_fn(2, 2, |i, j| if i != j { c(0.3, 0.0) } else { c(0.0, 0.0) });
        let r = perturbation_schatten(&FourierSymbol::zero(), &k, &FunctionSpec::exp(), 1.0, &[4, 8, 16])?;
        let gap = (r.constants["plateau"] - 2.0 * 0.3f64.sinh()).abs();
        Ok((r.pass && gap < 1e-12, format!("plateau {:.15}", r.constants["plateau"])))
    }));
    out
}

/// Trace identity `tr[f(A), B] = tr f′(A)[A, B]` on fixed and random pairs.
pub fn trace_checks(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut cases: Vec<(String, String, String, String, Vec<usize>, f64)> = vec![
        ("z + zbar".into(), "zbar^2".into(), "w^2".into(), "[z + zbar], [zbar^2]".into(), vec![8, 16], 1e-10),
        ("z + zbar".into(), "z".into(), "w".into(), "[z + zbar], [z]".into(), vec![8, 16], 1e-10),
        ("z + zbar".into(), "z".into(), "exp".into(), "[z + zbar], [z]".into(), vec![64, 128, 256], 1e-6),
    ];
    let mut rng = corpus::rng(seed, 11);
    for i in 0..n {
        let (k1, k2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let phi = corpus::trig_expr(&mut rng, k1, 0.6, false);
        let psi = corpus::trig_expr(&mut rng, k2, 0.6, false);
        if i % 4 == 3 {
            cases.push((phi, psi, "exp".into(), format!("random pair #{i}"), vec![64, 128, 256], 1e-6));
        } else {
            cases.push((phi, psi, ["w^2", "w^3"][i % 2].into(), format!("random pair #{i}"), vec![16, 32], 1e-10));
        }
    }
    cases
        .par_iter()
        .map(|(phi, psi, f, label, dims, tol)| {
            let inst = json!({ "phi": phi, "psi": psi, "f": f, "dims": dims });
            check("traces", format!("trace identity {f}: {label}"), inst, || {
                let r = trace_commutator_identity(&function_named(f), &fourier(phi)?, &fourier(psi)?, dims)?;
                Ok(verdict(r.gap, *tol))
            })
        })
        .collect()
}

/// Corner trace, quadrature and coefficient sum for `tr[T_f, T_g]`.
pub fn berger_shaw_checks(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 12);
    let pairs: Vec<(String, String)> = (0..n)
        .map(|_| {
            let (k1, k2) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            (corpus::trig_expr(&mut rng, k1, 1.0, false), corpus::trig_expr(&mut rng, k2, 1.0, false))
        })
        .collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (f, g))| {
            check("traces", format!("Berger-Shaw #{i}"), json!({ "f": f, "g": g }), || {
                let bs = berger_shaw(&fourier(f)?, &fourier(g)?)?;
                let trace = bs.trace.ok_or("corner trace skipped")?.value;
                let gap = (trace - bs.integral).norm().max((trace - bs.coefficients).norm());
                Ok(verdict(gap, 1e-10))
            })
        })
        .collect()
}

/// `‖[φ, P]‖₂² = Σ |n| |c_n|²`.
pub fn hilbert_schmidt_checks(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 13);
    let symbols: Vec<String> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=6);
            corpus::trig_expr(&mut rng, k, 1.5, false)
        })
        .collect();
    symbols
        .par_iter()
        .enumerate()
        .map(|(i, phi)| {
            check("traces", format!("Hilbert-Schmidt identity #{i}"), json!({ "phi": phi }), || {
                let s = fourier(phi)?;
                let closed: f64 = s.coeffs().map(|(k, c)| k.unsigned_abs() as f64 * c.norm_sqr()).sum::<f64>().sqrt();
                Ok(verdict((commutator_norm(&s, 2.0)? - closed).abs(), 1e-12))
            })
        })
        .collect()
}

/// `ind f(T_z) = Σ ord_λ f · ind(T_z − λ)` for random polynomials.
pub fn index_checks(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 14);
    let mut cases: Vec<(Vec<Complex64>, &str)> = vec![
        (vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], "z"),
        (vec![c(-2.0, 0.0), c(1.0, 0.0)], "z"),
        (vec![c(0.0, 0.0), c(1.5, 0.0), c(-3.5, 0.0), c(1.0, 0.0)], "z"),
    ];
    for i in 0..n {
        let deg = rng.gen_range(1..=5);
        cases.push((corpus::polynomial(&mut rng, deg).0, if i % 3 == 2 { "zbar" } else { "z" }));
    }
    cases
        .par_iter()
        .map(|(p, base)| {
            let coeffs: Vec<[f64; 2]> = p.iter().map(|x| [x.re, x.im]).collect();
            check("index", format!("index of f({base}), degree {}", p.len() - 1), json!({ "f": coeffs, "base": base }), || {
                let r = index_of_composition(p, &fourier(base)?)?;
                Ok((r.agree, format!("computed {} formula {}", r.computed, r.formula)))
            })
        })
        .collect()
}

/// Both sides of `τ(f(A), B) = Π τ(A − λ, B)^{ord} · τ(q(A), B)`.
pub fn factorization_checks(seed: u64, n: usize) -> Vec<CheckResult> {
    let mut rng = corpus::rng(seed, 15);
    let mut cases: Vec<(Vec<Complex64>, String, String, Option<Complex64>)> = vec![
        (vec![c(0.0, 0.0), c(-0.5, 0.0), c(1.0, 0.0)], "z".into(), "zbar".into(), Some(c(1.0, 0.0))),
        (vec![c(-2.0, 0.0), c(1.0, 0.0)], "z".into(), "zbar".into(), None),
        (vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], "z".into(), "2 + z".into(), None),
    ];
    for i in cases.len()..n.max(cases.len()) {
        let deg = rng.gen_range(1..=3);
        let b = if i % 2 == 0 { corpus::rational_expr(&mut rng) } else { corpus::smooth_expr(&mut rng) };
        cases.push((corpus::polynomial(&mut rng, deg).0, "z".into(), b, None));
    }
    cases
        .par_iter()
        .enumerate()
        .map(|(i, (p, a, b, want))| {
            let coeffs: Vec<[f64; 2]> = p.iter().map(|x| [x.re, x.im]).collect();
            let inst = json!({ "f": coeffs, "a": a, "b": b });
            let label = if i < 3 { b.clone() } else { format!("random b #{i}") };
            check("index", format!("factorization f(T_{a}) against {label}"), inst, || {
                let s = functional_factorization(p, &smooth(a), &smooth(b), &det_schedule())?;
                let mut gap = (s.lhs.value - s.rhs.value).norm();
                if let Some(w) = want {
                    gap = gap.max((s.lhs.value - w).norm());
                }
                Ok(verdict(gap, tol_of(&[&s.lhs, &s.rhs])))
            })
        })
        .collect()
}
