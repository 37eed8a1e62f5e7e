//! `τ(e^a, e^b) = e^{tr[T_a, T_b]}` and the three ways of computing the trace.

use torsionlab::cli::parse_fourier;
use torsionlab::torsion::{berger_shaw, exp_torsion, positive_pair_phase};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = parse_fourier("z + 0.5*zbar^2")?;
    let b = parse_fourier("zbar - 0.25*z^2")?;
    let bs = berger_shaw(&a, &b)?;
    println!("coefficient sum   {:.15}", bs.coefficients);
    println!("contour integral  {:.15}  (err {:.1e})", bs.integral, bs.integral_err);
    if let Some(t) = &bs.trace {
        println!("corner trace      {:.15}  (tail {:.1e}, dims {:?})", t.value, t.tail, t.dims);
    }
    println!("tau(e^a, e^b) = {:.15}", exp_torsion(&a, &b)?.value);

    // Real positive symbols give a unimodular torsion; its phase comes from
    // logarithms of the sections.
    let p = parse_fourier("2 + 0.5*z + 0.5*zbar")?;
    let q = parse_fourier("3 + (0.4+0.3i)*z^2 + (0.4-0.3i)*zbar^2")?;
    let ph = positive_pair_phase(&p, &q, 64)?;
    println!("phase {:.12}  |tau| = {:.15}", ph.phase, ph.torsion().norm());
    Ok(())
}
