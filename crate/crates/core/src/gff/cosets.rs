use std::collections::BTreeSet;

use super::membership::n_of;
use super::{GffError, GroupPair};
use crate::portrait::Portrait;
use crate::tree::{ball, Vertex};

/// `M_v`: elements sending `L(v₀)` onto `L(v)` and acting locally in `F` on
/// `L(v₀)`. The witness, when present, is a constant automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetM {
    pub nonempty: bool,
    pub witness: Option<Portrait>,
}

pub fn coset_m(p: &GroupPair, v: &Vertex) -> Result<CosetM, GffError> {
    if let Some(c) = v.word().iter().find(|&&c| c as usize >= p.degree()) {
        return Err(GffError::Hypothesis(format!(
            "colour {} out of range",
            c + 1
        )));
    }
    match p.route(0, v.toward_e0_color()) {
        Ok(sigma) => {
            let w = Portrait::constant(sigma, v.clone());
            debug_assert!(in_m_literal(p, &w, v));
            Ok(CosetM {
                nonempty: true,
                witness: Some(w),
            })
        }
        Err(GffError::NoRouting { .. }) => Ok(CosetM {
            nonempty: false,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

/// Direct test of `x ∈ M_v` on the portrait of `x`.
pub fn in_m_literal(p: &GroupPair, x: &Portrait, v: &Vertex) -> bool {
    let root = Vertex::root();
    if x.apply(&root) != *v || x.apply(&Vertex::v1()) != v.neighbor(v.toward_e0_color()) {
        return false;
    }
    x.internal_perms()
        .iter()
        .chain(x.tail_perms())
        .filter(|(w, _)| !w.in_l_v1())
        .all(|(_, s)| p.f().contains(s))
}

/// `#(gM △ M) = 2·N(g)`.
pub fn symdiff_m(p: &GroupPair, g: &Portrait) -> Result<usize, GffError> {
    p.check_transitive()?;
    Ok(2 * n_of(p, g)?)
}

/// Counts displaced cosets directly: vertices `v` with `g·w_v ∉ M_{g(v)}`,
/// for `g` and for `g⁻¹`. Candidates are the vertices within distance 2 of
/// the paths from `v₀` to the base of `g` and to `g⁻¹(e₀)`; beyond that,
/// `L(v)` sits inside a single tail region.
pub fn symdiff_m_oracle(p: &GroupPair, g: &Portrait) -> Result<usize, GffError> {
    p.check_transitive()?;
    let inv = g.inverse()?;
    Ok(displaced(p, g)? + displaced(p, &inv)?)
}

fn displaced(p: &GroupPair, g: &Portrait) -> Result<usize, GffError> {
    let mut hull: BTreeSet<Vertex> = BTreeSet::new();
    let ends = g.base_vertices().cloned().chain([
        g.apply_inverse(&Vertex::root()),
        g.apply_inverse(&Vertex::v1()),
    ]);
    for end in ends {
        for i in 0..=end.len() {
            hull.insert(Vertex::from_word(&end.word()[..i]).expect("prefix of a reduced word"));
        }
    }
    let candidates: BTreeSet<Vertex> = hull.iter().flat_map(|h| ball(p.degree(), h, 2)).collect();
    let mut count = 0;
    for v in candidates {
        let w = coset_m(p, &v)?.witness.expect("F transitive");
        if !in_m_literal(p, &g.compose(&w)?, &g.apply(&v)) {
            count += 1;
        }
    }
    Ok(count)
}
