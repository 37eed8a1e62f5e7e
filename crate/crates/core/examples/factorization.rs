//! Discrete and continuous parts of a smooth symbol, the factorized route and
//! the functional factorization through polynomial roots.

use torsionlab::c64;
use torsionlab::cli::parse_symbol;
use torsionlab::sections::Schedule;
use torsionlab::torsion::{factorize_symbol, functional_factorization, torsion_factorized};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_symbol("(z - 0.4) / (z - 3) * exp(0.3*z - 0.2*zbar^2)")?.symbol;
    let g = parse_symbol("zbar * exp(0.1*zbar + 0.25*z)")?.symbol;
    let parts = factorize_symbol(&f)?;
    let show = |v: &[torsionlab::Complex64]| v.iter().map(|c| format!("{c:.3}")).collect::<Vec<_>>().join(", ");
    println!("blaschke part zeros [{}]", show(parts.blaschke.zeros()));
    println!("outer part    zeros [{}], poles [{}]", show(parts.outer.zeros()), show(parts.outer.poles()));
    println!("log split     h+ bandwidth {}, h- bandwidth {}", parts.plus.bandwidth(), parts.minus.bandwidth());
    println!("tau(f, g) = {:.14}", torsion_factorized(&f, &g)?.value);

    // tau(p(T_z), T_zbar) for p(w) = w(w - 0.5), both sides.
    let p = [c64(0.0, 0.0), c64(-0.5, 0.0), c64(1.0, 0.0)];
    let a = parse_symbol("z")?.symbol;
    let b = parse_symbol("zbar")?.symbol;
    let sides = functional_factorization(&p, &a, &b, &Schedule::up_to(128))?;
    println!("lhs {:.12}  rhs {:.12}", sides.lhs.value, sides.rhs.value);
    for (l, ord, w) in &sides.roots {
        println!("  root {l:.3}  order {ord}  winding {w}");
    }
    Ok(())
}
