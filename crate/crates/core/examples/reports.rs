//! The JSON/CSV run report behind `torsionlab torsion`, and a small property
//! suite run.

use std::io;

use torsionlab::cli::{run_torsion, TorsionArgs};
use torsionlab::verify::{run_suite, Suite, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args = TorsionArgs {
        f: "2 + z".into(),
        g: "zbar * exp(0.2*z)".into(),
        method: "all".into(),
        nmax: 128,
        tol: 1e-6,
        json: None,
        csv: None,
        basepoint: 0.0,
    };
    let report = run_torsion(&args)?;
    report.write_csv(io::stdout())?;
    println!("agree: {} (max disagreement {:.2e})", report.disagreements.agree(), report.disagreements.max());

    let suite = run_suite(Suite::Index, &VerifyOptions { seed: 7, corpus_size: 5 });
    for c in &suite.checks {
        println!("{:<5} {}  {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(())
}
