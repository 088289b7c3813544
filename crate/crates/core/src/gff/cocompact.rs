use super::membership::singularity_report;
use super::{extend_star, GffError, GroupPair};
use crate::perm::product_set_equals;
use crate::portrait::Portrait;
use crate::tree::Vertex;

/// For `g ∈ G(H,H')` fixing `v₀`, finds `γ ∈ G(F,F')` fixing `v₀` with
/// `k = g·γ ∈ U(H)`, by cancelling one singularity at a time with a star
/// extension over `(F,F')`. Returns `(γ, k)`.
pub fn cocompact_reduce(
    fpair: &GroupPair,
    hpair: &GroupPair,
    g: &Portrait,
) -> Result<(Portrait, Portrait), GffError> {
    let (f, fp, h, hp) = (fpair.f(), fpair.fp(), hpair.f(), hpair.fp());
    if f.degree() != h.degree() || !f.is_subgroup_of(h) || !fp.is_subgroup_of(hp) {
        return Err(GffError::Hypothesis("need F ≤ H and F' ≤ H'".into()));
    }
    if !product_set_equals(h, fp, hp)? {
        return Err(GffError::Hypothesis(
            "H' is not the product set H·F'".into(),
        ));
    }
    let root = Vertex::root();
    if !g.fixes(&root) {
        return Err(GffError::Hypothesis("element does not fix v0".into()));
    }
    let bound = singularity_report(hpair, g, None)?.s.len();
    let mut gamma = Portrait::identity(fpair.degree());
    let mut cur = g.clone();
    for _ in 0..=bound {
        let report = singularity_report(hpair, &cur, None)?;
        let Some(v) = report.s.iter().next() else {
            return Ok((gamma, cur));
        };
        let local = cur.local(v);
        let candidates = if v.is_root() {
            fp.clone()
        } else {
            fp.stabilizer(v.toward_e0_color())?
        };
        let sigma = *candidates
            .elements()
            .iter()
            .find(|s| h.contains(&local.compose(s)))
            .ok_or_else(|| {
                GffError::Hypothesis(format!(
                    "no element of F' cancels {local} at {}",
                    v.literal()
                ))
            })?;
        let step = extend_star(fpair, v, sigma, v)?;
        cur = cur.compose(&step)?;
        gamma = gamma.compose(&step)?;
    }
    Err(GffError::Verification(
        "singularity count did not decrease".into(),
    ))
}
