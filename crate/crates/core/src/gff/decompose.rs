use super::membership::singularity_report;
use super::{extend_star, GffError, GroupPair};
use crate::portrait::Portrait;
use crate::tree::Vertex;

/// The element of `U({1})` (all local permutations trivial) sending `from`
/// to `to`.
pub(crate) fn transport(d: usize, from: &Vertex, to: &Vertex) -> Portrait {
    let back: Vec<u8> = from.word().iter().rev().copied().collect();
    Portrait::constant(crate::perm::Perm::identity(d), to.concat(&back))
}

/// Writes `g = γ·g₁⋯g_k` with `γ ∈ U(F)` and `g_i ∈ K_{0,F'}(v_i)`, peeling
/// one singularity at a time.
pub fn decompose_ku(
    p: &GroupPair,
    g: &Portrait,
) -> Result<(Portrait, Vec<(Vertex, Portrait)>), GffError> {
    let d = p.degree();
    let report = singularity_report(p, g, None)?;
    let Some(v) = report.s.iter().next().cloned() else {
        return Ok((g.clone(), Vec::new()));
    };
    let gamma1 = transport(d, &g.apply(&v), &v);
    let g1 = gamma1.compose(g)?;
    let gv = extend_star(p, &v, g1.local(&v), &v)?;
    let g2 = g1.compose(&gv.inverse()?)?;
    let (gamma2, mut parts) = decompose_ku(p, &g2)?;
    parts.push((v, gv));
    Ok((gamma1.inverse()?.compose(&gamma2)?, parts))
}
