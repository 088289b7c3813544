use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::extend::edge_colour;
use super::membership::singularity_report;
use super::{GffError, GroupPair};
use crate::portrait::Portrait;
use crate::tree::{complete_hull, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleFailure {
    #[error("sample is not in U(F)")]
    NotInUF,
    #[error("sample moves {0}")]
    NotFixingT(String),
    #[error("conjugate is not in U(F)")]
    ConjugateNotInUF,
    #[error("conjugate moves {0}")]
    ConjugateNotFixing(String),
    #[error(transparent)]
    Compute(#[from] GffError),
}

/// `T(g)`: the subtree spanned by `S(g)` together with all neighbours of its
/// vertices, as a vertex set; `e₀` when `g` has no singularities.
pub fn t_of(p: &GroupPair, g: &Portrait) -> Result<BTreeSet<Vertex>, GffError> {
    let s = singularity_report(p, g, None)?.s;
    let Some(first) = s.iter().next() else {
        return Ok([Vertex::root(), Vertex::v1()].into_iter().collect());
    };
    let mut span: BTreeSet<Vertex> = BTreeSet::new();
    for v in &s {
        span.extend(first.geodesic(v));
    }
    let mut out = span.clone();
    for v in &span {
        out.extend(v.neighbors(p.degree()));
    }
    Ok(out)
}

fn in_uf(p: &GroupPair, u: &Portrait) -> bool {
    u.all_perms().all(|s| p.f().contains(s))
}

/// A random element of `U(F)` fixing every vertex of the subtree `t`.
/// Local permutations are drawn breadth-first from a vertex of `t`, subject to
/// fixing the colours that lead back into `t` and to edge compatibility.
pub fn random_u_fixing<R: Rng + ?Sized>(
    p: &GroupPair,
    t: &BTreeSet<Vertex>,
    rng: &mut R,
) -> Result<Portrait, GffError> {
    let d = p.degree();
    let start = t.iter().next().cloned().unwrap_or_else(Vertex::root);
    let radius = t.iter().map(|v| v.len()).max().unwrap_or(0) + 2;
    let extras: Vec<Vertex> = (0..rng.gen_range(0..4))
        .map(|_| {
            let base = t
                .iter()
                .collect::<Vec<_>>()
                .choose(rng)
                .map_or(Vertex::root(), |v| (*v).clone());
            let c = rng.gen_range(0..d);
            base.neighbor(c)
                .neighbor((c + 1 + rng.gen_range(0..d - 1)) % d)
        })
        .filter(|v| v.len() <= radius)
        .collect();
    let e0 = [Vertex::root(), Vertex::v1()];
    let tree = complete_hull(d, t.iter().chain(&e0).chain(&extras), t.iter());
    let mut chosen: BTreeMap<Vertex, crate::perm::Perm> = BTreeMap::new();
    let mut queue = VecDeque::from([(start.clone(), None::<Vertex>)]);
    while let Some((y, parent)) = queue.pop_front() {
        if chosen.contains_key(&y) {
            continue;
        }
        let back = parent
            .as_ref()
            .map(|x| (edge_colour(x, &y), chosen[x].apply(edge_colour(x, &y))));
        let inside = t.contains(&y);
        let options: Vec<&crate::perm::Perm> = p
            .f()
            .elements()
            .iter()
            .filter(|s| back.is_none_or(|(a, b)| s.apply(a) == b))
            .filter(|s| !inside || (0..d).all(|c| !t.contains(&y.neighbor(c)) || s.fixes(c)))
            .collect();
        let s = **options
            .choose(rng)
            .expect("identity or a routing element qualifies");
        chosen.insert(y.clone(), s);
        if tree.internal().contains(&y) {
            for w in y.neighbors(d) {
                if !chosen.contains_key(&w) {
                    queue.push_back((w, Some(y.clone())));
                }
            }
        }
    }
    Ok(Portrait::from_local_fn(d, &tree, &start, &start, |w| {
        chosen[w]
    })?)
}

/// Tests one sample `u` against `g`: `u ∈ U(F)` fixing `t`, and
/// `g·u·g⁻¹ ∈ U(F)` fixing `g(t)`.
pub fn check_commensuration_sample(
    p: &GroupPair,
    g: &Portrait,
    t: &BTreeSet<Vertex>,
    u: &Portrait,
) -> Result<(), SampleFailure> {
    if !in_uf(p, u) {
        return Err(SampleFailure::NotInUF);
    }
    if let Some(v) = t.iter().find(|v| !u.fixes(v)) {
        return Err(SampleFailure::NotFixingT(v.literal()));
    }
    let c = g
        .compose(u)
        .and_then(|x| x.compose(&g.inverse()?))
        .map_err(GffError::from)?;
    if !in_uf(p, &c) {
        return Err(SampleFailure::ConjugateNotInUF);
    }
    if let Some(v) = t.iter().map(|v| g.apply(v)).find(|w| !c.fixes(w)) {
        return Err(SampleFailure::ConjugateNotFixing(v.literal()));
    }
    Ok(())
}

/// Samples `trials` elements of `U(F)` fixing `T(g)` and checks each
/// conjugate by `g`. Deterministic in `seed`.
pub fn conjugation_commensuration_check(
    p: &GroupPair,
    g: &Portrait,
    trials: usize,
    seed: u64,
) -> Result<bool, GffError> {
    let t = t_of(p, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let u = random_u_fixing(p, &t, &mut rng)?;
        match check_commensuration_sample(p, g, &t, &u) {
            Ok(()) => {}
            Err(SampleFailure::Compute(e)) => return Err(e),
            Err(_) => return Ok(false),
        }
    }
    Ok(true)
}
