//! Determinant route on growing finite sections, with and without
//! stabilization.

use torsionlab::c64;
use torsionlab::sections::{numerical_index, Schedule};
use torsionlab::symbols::FourierSymbol;
use torsionlab::torsion::torsion_det;

fn show(label: &str, f: &FourierSymbol, g: &FourierSymbol) -> Result<(), Box<dyn std::error::Error>> {
    let r = torsion_det(f, g, &Schedule::fixed(&[16, 32, 64, 128]))?;
    println!("{label}: indices ({}, {})", numerical_index(f)?, numerical_index(g)?);
    for (n, v) in &r.history {
        println!("  n = {n:>4}  {v:.14}");
    }
    println!("  err {:.1e}  {}", r.err_estimate, r.notes.join("; "));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = FourierSymbol::z();
    let two_plus_z = &FourierSymbol::constant(c64(2.0, 0.0)) + &z;
    show("(2 + z, zbar)", &two_plus_z, &FourierSymbol::zbar())?;
    show("(z, z)", &z, &z)?;
    show("(exp z, exp zbar)", &z.exp()?, &FourierSymbol::zbar().exp()?)?;
    println!("e^-1 = {:.14}", (-1f64).exp());
    Ok(())
}
