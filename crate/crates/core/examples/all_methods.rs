//! Joint torsion of one pair by every applicable route.
//!
//! ```text
//! cargo run --example all_methods -- "z - 0.5" "exp(0.2*z) * zbar"
//! ```

use std::env;

use torsionlab::cli::parse_symbol;
use torsionlab::torsion::{applicable_methods, compute, RouteOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let f = parse_symbol(&args.next().unwrap_or_else(|| "z - 0.5".into()))?;
    let g = parse_symbol(&args.next().unwrap_or_else(|| "(2 + z) * exp(0.3*zbar)".into()))?;
    println!("f = {}  [{}]", f.normal_form(), f.class);
    println!("g = {}  [{}]", g.normal_form(), g.class);

    let opts = RouteOptions::default();
    for method in applicable_methods(&f.symbol, &g.symbol)? {
        match compute(method, &f.symbol, &g.symbol, &opts) {
            Ok(r) => println!("{:<11} {:>+.15} {:>+.15}i  err {:.1e}", method.name(), r.value.re, r.value.im, r.err_estimate),
            Err(e) => println!("{:<11} failed: {e}", method.name()),
        }
    }
    Ok(())
}
