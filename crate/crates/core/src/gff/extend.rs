use std::collections::BTreeMap;

use super::{GffError, GroupPair};
use crate::perm::Perm;
use crate::portrait::Portrait;
use crate::tree::{ball, complete_hull, Vertex};

/// An element agreeing with `data` on `B(v,n)` that sends `v` to
/// `image_of_v` and acts locally in `F` off the ball. A vertex `w` reached
/// from `x` by the colour-`a` edge, with `w` outside the ball or missing from
/// `data`, gets the routing element of `F` sending `a` to `σ(x)(a)`; a missing
/// entry at `v` itself is the identity.
pub fn extend_local(
    p: &GroupPair,
    v: &Vertex,
    n: usize,
    data: &BTreeMap<Vertex, Perm>,
    image_of_v: &Vertex,
) -> Result<Portrait, GffError> {
    let d = p.degree();
    for (w, s) in data {
        if w.distance(v) > n {
            return Err(GffError::Hypothesis(format!(
                "{} lies outside the ball",
                w.literal()
            )));
        }
        if s.degree() != d {
            return Err(GffError::DegreeMismatch {
                pair: d,
                element: s.degree(),
            });
        }
        if !p.fp().contains(s) {
            return Err(GffError::Hypothesis(format!(
                "permutation {s} at {} is not in F'",
                w.literal()
            )));
        }
    }
    let mut inner = ball(d, v, n);
    inner.sort_by_key(|w| w.distance(v));
    let mut full: BTreeMap<Vertex, Perm> = BTreeMap::new();
    for w in &inner {
        let s = match data.get(w) {
            Some(s) => *s,
            None if w == v => Perm::identity(d),
            None => {
                let path = v.geodesic(w);
                let x = &path[path.len() - 2];
                let a = edge_colour(x, w);
                p.route(a, full[x].apply(a))?
            }
        };
        full.insert(w.clone(), s);
    }
    let outer = ball(d, v, n + 1);
    let e0 = [Vertex::root(), Vertex::v1()];
    let tree = complete_hull(d, outer.iter().chain(e0.iter()), inner.iter());
    // Routing elements for the directions leaving the sphere.
    let mut beyond: BTreeMap<(Vertex, usize), Perm> = BTreeMap::new();
    for x in inner.iter().filter(|x| x.distance(v) == n) {
        for a in 0..d {
            if x.neighbor(a).distance(v) > n {
                beyond.insert((x.clone(), a), p.route(a, full[x].apply(a))?);
            }
        }
    }
    let f = |w: &Vertex| -> Perm {
        if let Some(s) = full.get(w) {
            return *s;
        }
        let path = v.geodesic(w);
        let a = edge_colour(&path[n], &path[n + 1]);
        beyond[&(path[n].clone(), a)]
    };
    Ok(Portrait::from_local_fn(d, &tree, v, image_of_v, f)?)
}

/// Colour of the edge between adjacent vertices.
pub(crate) fn edge_colour(x: &Vertex, y: &Vertex) -> usize {
    if y.len() > x.len() {
        y.last()
    } else {
        x.last()
    }
    .expect("adjacent vertices")
}

/// `extend_local` with radius 0: an element of `K_{0,F'}(v)` (when
/// `image_of_v = v`) acting as `sigma` on the star of `v`.
pub fn extend_star(
    p: &GroupPair,
    v: &Vertex,
    sigma: Perm,
    image_of_v: &Vertex,
) -> Result<Portrait, GffError> {
    let data = [(v.clone(), sigma)].into_iter().collect();
    extend_local(p, v, 0, &data, image_of_v)
}
