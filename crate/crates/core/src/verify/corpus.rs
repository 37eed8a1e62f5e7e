//! Seeded random symbols, generated as expression strings in the CLI grammar
//! so every instance can be replayed with `parse_symbol`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cli::{parse_symbol, SymbolExpr};

pub type CorpusRng = ChaCha8Rng;

/// Independent stream per suite, so adding a check to one suite does not
/// shift the instances of another.
pub fn rng(seed: u64, stream: u64) -> CorpusRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn num(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("({:?})", c.re)
    } else {
        format!("({:?}{}{:?}i)", c.re, if c.im < 0.0 { "-" } else { "+" }, c.im.abs())
    }
}

fn polar(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, t)
}

/// A zero or pole at modulus in `[0.15, 0.8]` or `[1.25, 2.5]`.
pub fn divisor_point(rng: &mut CorpusRng) -> Complex64 {
    let r = if rng.gen_bool(0.5) { rng.gen_range(0.15..0.8) } else { rng.gen_range(1.25..2.5) };
    polar(r, rng.gen_range(0.0..TAU))
}

/// Polynomial root avoiding the annulus `0.8 < |λ| < 1.25`.
pub fn off_circle_root(rng: &mut CorpusRng) -> Complex64 {
    divisor_point(rng)
}

/// `c · z^m · Π(z − a) / Π(z − b)` with winding in `[−2, 2]`.
pub fn rational_expr(rng: &mut CorpusRng) -> String {
    loop {
        let scale = polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
        let m: i32 = rng.gen_range(-1..=1);
        let zeros: Vec<Complex64> = (0..rng.gen_range(0..=2)).map(|_| divisor_point(rng)).collect();
        let poles: Vec<Complex64> = (0..rng.gen_range(0..=1)).map(|_| divisor_point(rng)).collect();
        let inside = |v: &[Complex64]| v.iter().filter(|a| a.norm() < 1.0).count() as i32;
        let w = m + inside(&zeros) - inside(&poles);
        if w.abs() > 2 || (m == 0 && zeros.is_empty() && poles.is_empty()) {
            continue;
        }
        let mut s = num(scale);
        if m != 0 {
            s += &format!(" * z^{m}");
        }
        for a in zeros {
            s += &format!(" * (z - {})", num(a));
        }
        for b in poles {
            s += &format!(" / (z - {})", num(b));
        }
        return s;
    }
}

/// `Σ_{1≤|n|≤k} c_n z^n` with `|c_n| ≤ amp/n²`; real-valued when `real`.
pub fn trig_expr(rng: &mut CorpusRng, k: usize, amp: f64, real: bool) -> String {
    let mut terms = Vec::new();
    for n in 1..=k.max(1) {
        let bound = amp / (n * n) as f64;
        let c = polar(rng.gen_range(0.2..1.0) * bound, rng.gen_range(0.0..TAU));
        let d = if real { c.conj() } else { polar(rng.gen_range(0.2..1.0) * bound, rng.gen_range(0.0..TAU)) };
        let pow = |base: &str| if n == 1 { base.to_string() } else { format!("{base}^{n}") };
        terms.push(format!("{} * {}", num(c), pow("z")));
        terms.push(format!("{} * {}", num(d), pow("zbar")));
    }
    terms.join(" + ")
}

/// `r · exp(h)` with `r` from [`rational_expr`] and `h` a trig polynomial of
/// degree at most 6.
pub fn smooth_expr(rng: &mut CorpusRng) -> String {
    let k = rng.gen_range(1..=6);
    format!("{} * exp({})", rational_expr(rng), trig_expr(rng, k, 0.4, false))
}

/// `exp(h)` for a real trig polynomial `h`: a positive real symbol.
pub fn positive_expr(rng: &mut CorpusRng) -> String {
    let k = rng.gen_range(1..=3);
    format!("exp({})", trig_expr(rng, k, 0.5, true))
}

/// `c + Σ` real cosine/sine terms with `c` above the sum of amplitudes.
pub fn positive_trig_expr(rng: &mut CorpusRng) -> String {
    let k = rng.gen_range(1..=3);
    format!("{:?} + {}", rng.gen_range(2.0..3.0), trig_expr(rng, k, 0.6, true))
}

pub fn parse(expr: &str) -> SymbolExpr {
    parse_symbol(expr).unwrap_or_else(|e| panic!("corpus expression {expr:?} failed to parse: {e}"))
}

/// Ascending coefficients of `lead · Π(w − λ)` for `deg` off-circle roots.
pub fn polynomial(rng: &mut CorpusRng, deg: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let roots: Vec<Complex64> = (0..deg).map(|_| off_circle_root(rng)).collect();
    let mut p = vec![polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU))];
    for r in &roots {
        let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        p = next;
    }
    (p, roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_expressions_parse_and_lower() {
        let mut r = rng(3, 0);
        for _ in 0..20 {
            for e in [rational_expr(&mut r), smooth_expr(&mut r), positive_expr(&mut r), positive_trig_expr(&mut r)] {
                let s = parse(&e);
                assert!(s.lowering_gap(64).unwrap() < 1e-10, "{e}");
                assert!(s.symbol.winding_number().unwrap().abs() <= 2, "{e}");
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        assert_eq!(rational_expr(&mut rng(9, 1)), rational_expr(&mut rng(9, 1)));
        assert_ne!(rational_expr(&mut rng(9, 1)), rational_expr(&mut rng(9, 2)));
    }
}
