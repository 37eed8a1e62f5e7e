use num_complex::Complex64;

use super::det::commutator_head_det;
use super::word::Word;
use super::{toeplitz_matrix, OperatorSection, SectionError};
use crate::linalg::{self, CMat};
use crate::symbols::{winding_number, FourierSymbol, SymbolError};

/// Singular values below this fraction of the largest are treated as kernel.
pub const SIGMA_THRESH: f64 = 1e-7;
/// Smallest singular value a stabilized section must keep.
pub const SIGMA_OK: f64 = 1e-4;

/// `ind T_s = −winding(s)`.
pub fn numerical_index(s: &FourierSymbol) -> Result<i32, SymbolError> {
    Ok(-winding_number(s)?)
}

/// An operator entering a determinant computation.
#[derive(Clone, Debug)]
pub enum Operand {
    Symbol(FourierSymbol),
    /// A general word with its (known) Fredholm index.
    Word { word: Word, index: i32 },
}

impl Operand {
    pub fn index(&self) -> Result<i32, SectionError> {
        match self {
            Operand::Symbol(s) => Ok(numerical_index(s)?),
            Operand::Word { index, .. } => Ok(*index),
        }
    }

    pub fn section(&self, m: usize) -> Result<CMat, SectionError> {
        match self {
            Operand::Symbol(s) => Ok(toeplitz_matrix(s, m, m)),
            Operand::Word { word, .. } => word.eval(m),
        }
    }

    pub fn bandwidth(&self) -> usize {
        match self {
            Operand::Symbol(s) => s.bandwidth(),
            Operand::Word { word, .. } => word.bandwidth(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Operand::Symbol(s) => format!("T[{s}]"),
            Operand::Word { word, .. } => word.to_string(),
        }
    }
}

/// Invertible lifts `Ã = A ⊕ S_A ⊕ I + F_A`, `B̃ = B ⊕ I ⊕ S_B + F_B` on
/// three copies of an `M`-dimensional section.
#[derive(Clone, Debug)]
pub struct StabilizedPair {
    pub a_tilde: OperatorSection,
    pub b_tilde: OperatorSection,
    /// Rank of the correction pairing genuine kernel and cokernel vectors.
    pub f_rank_a: usize,
    pub f_rank_b: usize,
    /// Rank of the correction that repairs truncation-edge artifacts.
    pub edge_rank_a: usize,
    pub edge_rank_b: usize,
    pub sigma_min_a: f64,
    pub sigma_min_b: f64,
    /// Per-block section dimension `M`.
    pub block: usize,
    /// Leading coordinates of each block that are read off.
    pub head: usize,
}

impl StabilizedPair {
    pub fn head_indices(&self) -> Vec<usize> {
        (0..3).flat_map(|b| (0..self.head).map(move |i| b * self.block + i)).collect()
    }

    /// `det(Ã B̃ Ã⁻¹ B̃⁻¹)` over the head coordinates.
    pub fn commutator_det(&self) -> Result<Complex64, SectionError> {
        commutator_head_det(&self.a_tilde.entries, &self.b_tilde.entries, &self.head_indices())
    }
}

struct Lift {
    matrix: CMat,
    head_rank: usize,
    edge_rank: usize,
    sigma_min: f64,
}

/// Builds the stabilized pair for two operands at corner size `n` and block size `n + pad`.
pub fn stabilize(a: &Operand, b: &Operand, n: usize, pad: usize) -> Result<StabilizedPair, SectionError> {
    let m = n + pad;
    stabilize_blocks(&a.section(m)?, a.index()?, &b.section(m)?, b.index()?, n)
}

/// Stabilizes already-evaluated `M × M` sections with known indices.
pub fn stabilize_blocks(
    a: &CMat,
    ind_a: i32,
    b: &CMat,
    ind_b: i32,
    head: usize,
) -> Result<StabilizedPair, SectionError> {
    let m = a.nrows();
    let shift = |k: i32| toeplitz_matrix(&FourierSymbol::monomial(k as i64), m, m);
    let la = lift([Some(a.clone()), (ind_a != 0).then(|| shift(ind_a)), None], m)?;
    let lb = lift([Some(b.clone()), None, (ind_b != 0).then(|| shift(ind_b))], m)?;
    Ok(StabilizedPair {
        a_tilde: OperatorSection::new(la.matrix, m - head, "A+S_A+I+F_A"),
        b_tilde: OperatorSection::new(lb.matrix, m - head, "B+I+S_B+F_B"),
        f_rank_a: la.head_rank,
        f_rank_b: lb.head_rank,
        edge_rank_a: la.edge_rank,
        edge_rank_b: lb.edge_rank,
        sigma_min_a: la.sigma_min,
        sigma_min_b: lb.sigma_min,
        block: m,
        head,
    })
}

fn lift(blocks: [Option<CMat>; 3], m: usize) -> Result<Lift, SectionError> {
    let dim = 3 * m;
    let mut matrix = linalg::zeros(dim, dim);
    let mut kernel: Vec<Vec<Complex64>> = Vec::new();
    let mut cokernel: Vec<Vec<Complex64>> = Vec::new();
    let mut sigma_min = 1.0f64;
    for (idx, blk) in blocks.iter().enumerate() {
        let off = idx * m;
        let Some(blk) = blk else {
            for i in 0..m {
                matrix[(off + i, off + i)] = Complex64::new(1.0, 0.0);
            }
            continue;
        };
        let svd = linalg::svd(blk)?;
        let smax = svd.s.first().copied().unwrap_or(0.0);
        let mut modified = blk.clone();
        for (i, &s) in svd.s.iter().enumerate() {
            if s < SIGMA_THRESH * smax {
                let mut kv = vec![Complex64::new(0.0, 0.0); dim];
                let mut cv = vec![Complex64::new(0.0, 0.0); dim];
                for r in 0..m {
                    kv[off + r] = svd.v[(r, i)];
                    cv[off + r] = svd.u[(r, i)];
                }
                for r in 0..m {
                    for c in 0..m {
                        modified[(r, c)] -= svd.u[(r, i)] * s * svd.v[(c, i)].conj();
                    }
                }
                kernel.push(kv);
                cokernel.push(cv);
            } else {
                sigma_min = sigma_min.min(s);
            }
        }
        linalg::set_block(&mut matrix, off, off, &modified);
    }
    // Kernel vectors live in one block and cokernel vectors in another, so the
    // total counts must agree before pairing.
    let is_head = |r: usize| r % m < m / 2;
    let (kh, kt) = localize(&kernel, is_head);
    let (ch, ct) = localize(&cokernel, is_head);
    if kh.len() != ch.len() {
        return Err(SectionError::StabilizationMismatch { region: "head", kernel: kh.len(), cokernel: ch.len() });
    }
    if kt.len() != ct.len() {
        return Err(SectionError::StabilizationMismatch { region: "edge", kernel: kt.len(), cokernel: ct.len() });
    }
    for (k, c) in kh.iter().zip(&ch).chain(kt.iter().zip(&ct)) {
        for r in 0..dim {
            if c[r] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for s in 0..dim {
                matrix[(r, s)] += c[r] * k[s].conj();
            }
        }
    }
    if sigma_min <= SIGMA_OK {
        return Err(SectionError::StabilizationFailed { sigma_min, sigma_ok: SIGMA_OK });
    }
    Ok(Lift { matrix, head_rank: kh.len(), edge_rank: kt.len(), sigma_min })
}

type Vectors = Vec<Vec<Complex64>>;

/// Rotates an orthonormal set so each vector lives mostly in the head rows or
/// mostly in the tail rows, and splits it accordingly.
fn localize(vs: &[Vec<Complex64>], is_head: impl Fn(usize) -> bool) -> (Vectors, Vectors) {
    let k = vs.len();
    if k == 0 {
        return (vec![], vec![]);
    }
    let dim = vs[0].len();
    let gram = linalg::from_fn(k, k, |i, j| {
        (0..dim).filter(|r| is_head(*r)).map(|r| vs[i][r].conj() * vs[j][r]).sum()
    });
    let (weights, rot) = linalg::hermitian_eigen(&gram).expect("small Hermitian eigenproblem");
    let mut head = Vec::new();
    let mut tail = Vec::new();
    for (c, &w) in weights.iter().enumerate() {
        let v: Vec<Complex64> = (0..dim).map(|r| (0..k).map(|i| vs[i][r] * rot[(i, c)]).sum()).collect();
        if w > 0.5 {
            head.push(v);
        } else {
            tail.push(v);
        }
    }
    (head, tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn two_plus_z() -> FourierSymbol {
        &FourierSymbol::constant(c64(2.0, 0.0)) + &FourierSymbol::z()
    }

    #[test]
    fn shift_gets_rank_one_head_correction() {
        let z = Operand::Symbol(FourierSymbol::z());
        let one = Operand::Symbol(two_plus_z());
        let sp = stabilize(&z, &one, 6, 6).unwrap();
        assert_eq!(sp.f_rank_a, 1);
        assert_eq!(sp.f_rank_b, 0);
        // Genuine pairing: e₀ of the z̄ block onto e₀ of the z block.
        let m = sp.block;
        assert!((sp.a_tilde.get(0, m).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invertible_symbol_needs_no_correction() {
        let a = Operand::Symbol(two_plus_z());
        let sp = stabilize(&a, &a, 8, 8).unwrap();
        assert_eq!((sp.f_rank_a, sp.edge_rank_a), (0, 0));
    }

    #[test]
    fn z_squared_rank_two() {
        let a = Operand::Symbol(FourierSymbol::monomial(2));
        let b = Operand::Symbol(two_plus_z());
        let sp = stabilize(&a, &b, 8, 8).unwrap();
        assert_eq!(sp.f_rank_a, 2);
        let inv = linalg::inverse(&sp.a_tilde.entries, 1e-13).unwrap();
        let prod = &sp.a_tilde.entries * &inv;
        assert!(linalg::max_abs(&(&prod - &linalg::identity(prod.nrows()))) < 1e-8);
    }

    #[test]
    fn index_examples() {
        assert_eq!(numerical_index(&FourierSymbol::z()).unwrap(), -1);
        assert_eq!(numerical_index(&FourierSymbol::monomial(-3)).unwrap(), 3);
        let e = (&FourierSymbol::z() + &FourierSymbol::zbar()).exp().unwrap();
        assert_eq!(numerical_index(&e).unwrap(), 0);
    }

    #[test]
    fn torsion_of_shift_with_itself() {
        let z = Operand::Symbol(FourierSymbol::z());
        let sp = stabilize(&z, &z, 8, 8).unwrap();
        let d = sp.commutator_det().unwrap();
        assert!((d - c64(-1.0, 0.0)).norm() < 1e-12, "{d}");
    }
}
