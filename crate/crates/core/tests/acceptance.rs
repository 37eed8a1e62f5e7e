//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use torsionlab::cli::parse_fourier;
use torsionlab::funcalc::calculus_discrepancy;
use torsionlab::sections::Schedule;
use torsionlab::symbols::{FourierSymbol, RationalSymbol, SmoothSymbol};
use torsionlab::torsion::{exp_torsion, torsion_det, torsion_tame, TorsionError};
use torsionlab::verify::{self, CheckResult};
use torsionlab::{c64, Complex64, FunctionSpec};

const SEED: u64 = 1;

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn from_checks(id: &'static str, checks: Vec<CheckResult>) -> Line {
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let detail = if failed.is_empty() {
        format!("{} checks", checks.len())
    } else {
        format!("{} of {} failed; first: {}", failed.len(), checks.len(), failed[0])
    };
    Line { id, pass: failed.is_empty() && !checks.is_empty(), detail }
}

fn lin(a: f64) -> RationalSymbol {
    RationalSymbol::linear(c64(a, 0.0))
}

fn golden() -> Line {
    let two_plus_z = || lin(-2.0);
    let pairs: [(RationalSymbol, RationalSymbol, Complex64); 7] = [
        (lin(0.5), lin(0.3), c64(-1.0, 0.0)),
        (lin(0.5), lin(2.0), c64(1.0 / (0.5 - 2.0), 0.0)),
        (lin(3.0), lin(0.5), c64(0.5 - 3.0, 0.0)),
        (two_plus_z(), RationalSymbol::z(), c64(2.0, 0.0)),
        (two_plus_z(), RationalSymbol::zbar(), c64(0.5, 0.0)),
        (lin(0.5), RationalSymbol::zbar(), c64(-1.0, 0.0)),
        (RationalSymbol::z(), RationalSymbol::z(), c64(-1.0, 0.0)),
    ];
    let (mut tame_gap, mut det_gap) = (0.0f64, 0.0f64);
    let mut errors = Vec::new();
    for (f, g, want) in &pairs {
        match torsion_tame(f, g) {
            Ok(r) => tame_gap = tame_gap.max((r.value - want).norm()),
            Err(e) => errors.push(e.to_string()),
        }
        let det = (|| {
            let (ff, gf) = (SmoothSymbol::from_rational(f.clone()).to_fourier()?, SmoothSymbol::from_rational(g.clone()).to_fourier()?);
            torsion_det(&ff, &gf, &Schedule::up_to(256))
        })()
        .map_err(|e: TorsionError| e.to_string());
        match det {
            Ok(r) => det_gap = det_gap.max((r.value - want).norm()),
            Err(e) => errors.push(e),
        }
    }
    Line {
        id: "1 golden values",
        pass: errors.is_empty() && tame_gap <= 1e-12 && det_gap <= 1e-6,
        detail: format!("tame gap {tame_gap:.1e} (exact), det gap {det_gap:.1e} <= 1e-6 at nmax 256 {errors:?}"),
    }
}

fn exponential_pair() -> Line {
    let (z, zbar) = (FourierSymbol::z(), FourierSymbol::zbar());
    let want = c64((-1f64).exp(), 0.0);
    let det = z.exp().and_then(|a| Ok((a, zbar.exp()?))).map_err(|e| e.to_string()).and_then(|(a, b)| {
        torsion_det(&a, &b, &Schedule::up_to(256)).map_err(|e| e.to_string())
    });
    let exp = exp_torsion(&z, &zbar).map_err(|e| e.to_string());
    match (det, exp) {
        (Ok(d), Ok(e)) => {
            let (dg, eg) = ((d.value - want).norm(), (e.value - want).norm());
            Line {
                id: "4 exponential pair e^-1",
                pass: dg <= 1e-8 && eg <= 1e-12,
                detail: format!("det gap {dg:.1e} <= 1e-8, exp gap {eg:.1e} <= 1e-12"),
            }
        }
        (d, e) => Line { id: "4 exponential pair e^-1", pass: false, detail: format!("{:?} {:?}", d.err(), e.err()) },
    }
}

fn bounds() -> Line {
    let dims = [32, 64, 128];
    let mut failed = Vec::new();
    let mut count = 0;
    for phi in ["z + zbar", "z + zbar + 0.5*(z^2 + zbar^2)"] {
        let s = parse_fourier(phi).unwrap();
        for (name, f) in [("w^2", FunctionSpec::power(2)), ("w^3", FunctionSpec::power(3)), ("exp", FunctionSpec::exp())] {
            for p in [1.0, 2.0] {
                count += 1;
                match calculus_discrepancy(&s, &f, p, &dims) {
                    Ok(r) if r.schatten_2p.pass && r.schatten_p.pass => {}
                    Ok(r) => failed.push(format!("{name} on {phi}, p = {p}: {} / {}", r.schatten_p.measured, r.schatten_p.bound)),
                    Err(e) => failed.push(format!("{name} on {phi}, p = {p}: {e}")),
                }
            }
        }
    }
    let exact = calculus_discrepancy(&parse_fourier("z + zbar").unwrap(), &FunctionSpec::power(2), 1.0, &dims).unwrap();
    let m = &exact.schatten_p;
    let exact_ok = (m.measured - 1.0).abs() <= 1e-12 && (m.bound - 2.0).abs() <= 1e-12;
    Line {
        id: "6 functional-calculus bounds",
        pass: failed.is_empty() && exact_ok,
        detail: format!(
            "{count} cases within bound, w^2 on z + zbar: measured {} bound {} (L2 bound {:.4}, printed form {:.4}) {failed:?}",
            m.measured,
            m.bound,
            exact.schatten_2p.bound,
            exact.schatten_2p.constants.get("bound_2p_alt").copied().unwrap_or(f64::NAN),
        ),
    }
}

fn traces() -> Line {
    let checks = verify::trace_checks(SEED, 20);
    let exp_at_256 = checks
        .iter()
        .filter(|c| c.name.starts_with("trace identity exp"))
        .all(|c| c.instance["dims"].as_array().and_then(|d| d.last()).and_then(|d| d.as_u64()) == Some(256));
    let mut line = from_checks("7 trace identity", checks);
    line.pass &= exp_at_256;
    line
}

fn index() -> Line {
    let idx = verify::index_checks(SEED, 20);
    let fac = verify::factorization_checks(SEED, 10);
    let has_case = fac.iter().any(|c| c.name.contains("against zbar") && c.pass);
    let mut line = from_checks("8 index formula and factorization", [idx, fac].concat());
    line.pass &= has_case;
    line
}

fn properties() -> Line {
    let n = 20;
    let checks = [
        verify::steinberg_relations(SEED, n),
        verify::conjugation_rule(SEED, n),
        verify::idempotent_rule(SEED, n),
        verify::unimodularity(SEED, n),
        verify::scalar_rule(SEED, n),
        verify::power_law(SEED, n),
        verify::variational_exp(SEED, n),
        verify::basepoint_independence(SEED, n),
    ]
    .concat();
    from_checks("9 property suites", checks)
}

#[test]
fn acceptance() {
    let lines = vec![
        golden(),
        from_checks("2 cross-method agreement", verify::cross_method_agreement(SEED, 25)),
        from_checks("3 Berger-Shaw trace", verify::berger_shaw_checks(SEED, 20)),
        exponential_pair(),
        from_checks("5 Hilbert-Schmidt identity", verify::hilbert_schmidt_checks(SEED, 20)),
        bounds(),
        traces(),
        index(),
        properties(),
    ];
    for l in &lines {
        println!("{} criterion {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.detail);
    }
    println!("SKIP criterion 10: excluded (full ideal membership and abstract K-theory equalities)");
    let failed: Vec<&str> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
