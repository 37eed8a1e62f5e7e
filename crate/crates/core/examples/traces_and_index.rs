//! Trace identity `tr[f(A), B] = tr f'(A)[A, B]` and the index of `p(T_a)`.

use torsionlab::c64;
use torsionlab::cli::parse_fourier;
use torsionlab::funcalc::{index_of_composition, trace_commutator_identity};
use torsionlab::FunctionSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = parse_fourier("z + zbar")?;
    let b = parse_fourier("zbar^2")?;
    for (name, f, dims) in [("w^2", FunctionSpec::power(2), vec![8, 16]), ("exp", FunctionSpec::exp(), vec![64, 128])] {
        let r = trace_commutator_identity(&f, &a, &b, &dims)?;
        println!("{name}: lhs {:.12}  rhs {:.12}  gap {:.1e}", r.lhs, r.rhs, r.gap);
    }

    // p(w) = (w - 2) w^2 over T_z: two roots inside the disk, one outside.
    let p = [c64(0.0, 0.0), c64(0.0, 0.0), c64(-2.0, 0.0), c64(1.0, 0.0)];
    let r = index_of_composition(&p, &parse_fourier("z")?)?;
    println!("ind p(T_z): numerical {}, root formula {}", r.computed, r.formula);
    for (l, ord, ind) in &r.roots {
        println!("  root {l:.3}  order {ord}  ind(T_z - root) {ind}");
    }
    Ok(())
}
