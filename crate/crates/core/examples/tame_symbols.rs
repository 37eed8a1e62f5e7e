//! Local tame symbols and their product over the disk.

use torsionlab::c64;
use torsionlab::symbols::RationalSymbol;
use torsionlab::torsion::{tame_symbol, torsion_tame};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = RationalSymbol::linear(c64(0.5, 0.0)); // z - 0.5
    let g = RationalSymbol::linear(c64(0.3, 0.0)).multiply(&RationalSymbol::linear(c64(2.0, 0.0)).invert());

    for p in f.disk_divisor_points().into_iter().chain(g.disk_divisor_points()) {
        let t = tame_symbol(&f, &g, p)?;
        println!("c_{:.2}(f, g) = {:.12}  orders {:?}", t.location.re, t.value.re, t.orders);
    }
    println!("tau(f, g) = {:.12}", torsion_tame(&f, &g)?.value.re);

    // Steinberg: the product of c(h, 1 - h) over the disk is 1.
    let h = RationalSymbol::linear(c64(0.5, 0.0)).multiply(&RationalSymbol::linear(c64(-3.0, 0.0)).invert());
    let one_minus = h.add_constant(c64(-1.0, 0.0))?.scaled(c64(-1.0, 0.0))?;
    let t = torsion_tame(&h, &one_minus)?.value;
    println!("tau(h, 1 - h) = {:.15} {:+.1e}i", t.re, t.im);
    Ok(())
}
