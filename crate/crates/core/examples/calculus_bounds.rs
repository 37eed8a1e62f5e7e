//! `T_{f(φ)} − f(T_φ)` against the majorant bounds in two Schatten norms.

use torsionlab::cli::parse_fourier;
use torsionlab::funcalc::{calculus_discrepancy, exp_unitary_estimate, ExpEstimateOptions};
use torsionlab::FunctionSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dims = [32, 64, 128];
    for phi in ["z + zbar", "z + zbar + 0.5*(z^2 + zbar^2)"] {
        let s = parse_fourier(phi)?;
        for (name, f) in [("w^2", FunctionSpec::power(2)), ("w^3", FunctionSpec::power(3)), ("exp", FunctionSpec::exp())] {
            let r = calculus_discrepancy(&s, &f, 1.0, &dims)?;
            println!(
                "{phi:<30} {name:<4} L2: {:.4e} <= {:.4e}   L1: {:.4e} <= {:.4e}",
                r.schatten_2p.measured, r.schatten_2p.bound, r.schatten_p.measured, r.schatten_p.bound
            );
        }
    }

    let phi = parse_fourier("z + zbar")?;
    let opts = ExpEstimateOptions { grid: 17, dims: vec![16, 32] };
    for t in [0.5, 1.0, 2.0, 4.0] {
        let r = exp_unitary_estimate(&phi, t, 1.0, &opts)?;
        println!("t = {t}: ||e^(itT) - T_(e^(itphi))||_1 = {:.4e} <= {:.4e}", r.measured, r.bound);
    }
    Ok(())
}
