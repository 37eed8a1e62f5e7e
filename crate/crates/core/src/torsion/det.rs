use super::{Method, TorsionError, TorsionResult};
use crate::sections::{
    commutator_head_det, run_schedule, stabilize, DetOptions, Operand, PadRule, Schedule, SectionError,
};
use crate::symbols::FourierSymbol;

/// `det(A B A⁻¹ B⁻¹)` on finite sections along `schedule`, stabilizing when
/// either index is nonzero. The pad equals the corner dimension.
pub fn torsion_det(f: &FourierSymbol, g: &FourierSymbol, schedule: &Schedule) -> Result<TorsionResult, TorsionError> {
    torsion_det_with(f, g, &DetOptions { schedule: schedule.clone(), pad: PadRule::Equal })
}

pub fn torsion_det_with(f: &FourierSymbol, g: &FourierSymbol, opts: &DetOptions) -> Result<TorsionResult, TorsionError> {
    torsion_det_operands(&Operand::Symbol(f.clone()), &Operand::Symbol(g.clone()), opts)
}

pub fn torsion_det_operands(a: &Operand, b: &Operand, opts: &DetOptions) -> Result<TorsionResult, TorsionError> {
    let (ia, ib) = (a.index()?, b.index()?);
    let bw = a.bandwidth() + b.bandwidth();
    let mut notes = vec![format!("indices ({ia}, {ib})")];
    let mut ranks = None;
    let est = run_schedule(&opts.schedule, |n| {
        let m = n + opts.pad.pad(n, bw);
        if ia == 0 && ib == 0 {
            let head: Vec<usize> = (0..n).collect();
            commutator_head_det(&a.section(m)?, &b.section(m)?, &head)
        } else {
            let sp = stabilize(a, b, n, m - n)?;
            ranks = Some((sp.f_rank_a, sp.f_rank_b, sp.edge_rank_a, sp.edge_rank_b, sp.sigma_min_a.min(sp.sigma_min_b)));
            sp.commutator_det()
        }
    })?;
    if let Some((fa, fb, ea, eb, smin)) = ranks {
        notes.push(format!("stabilized: F ranks ({fa}, {fb}), edge ranks ({ea}, {eb}), sigma_min {smin:.3e}"));
    }
    if !est.converged {
        notes.push("schedule did not reach relative change 1e-8".into());
    }
    if est.value.norm() == 0.0 || !est.value.is_finite() {
        return Err(SectionError::NonConvergent { history: est.history }.into());
    }
    Ok(TorsionResult {
        value: est.value,
        method: Method::Det,
        dims: est.history.iter().map(|h| h.0).collect(),
        err_estimate: est.err_estimate,
        notes,
        history: est.history,
    })
}
