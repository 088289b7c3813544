use std::fmt;

use super::membership::singularity_report;
use super::{extend_star, GffError, GroupPair};
use crate::perm::Perm;
use crate::portrait::Portrait;
use crate::tree::{complete_hull, Vertex};

/// A generator: a translation `h_i^{±1}` or an element of `K_{0,F'}(v)` with
/// `v ∈ {v₀, v₁}`. `i` is a 0-based colour in `1..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    Translation { i: usize, inverse: bool },
    Local { vertex: Vertex, element: Portrait },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenWord {
    pub letters: Vec<Letter>,
}

impl Letter {
    pub fn evaluate(&self, p: &GroupPair) -> Result<Portrait, GffError> {
        match self {
            Letter::Translation { i, inverse: false } => p.translation(*i),
            Letter::Translation { i, inverse: true } => Ok(p.translation(*i)?.inverse()?),
            Letter::Local { element, .. } => Ok(element.clone()),
        }
    }
}

impl GenWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product of the letters, left to right.
    pub fn evaluate(&self, p: &GroupPair) -> Result<Portrait, GffError> {
        let mut acc = Portrait::identity(p.degree());
        for l in &self.letters {
            acc = acc.compose(&l.evaluate(p)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Translation { i, inverse } => {
                write!(f, "h{}{}", i + 1, if *inverse { "^-1" } else { "" })
            }
            Letter::Local { vertex, element } => {
                let name = if vertex.is_root() { "v0" } else { "v1" };
                write!(f, "k_{name}[{}]", element.local(vertex))
            }
        }
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Writes `g` as a word in the translations `h_i` and the vertex stabilizers
/// `K_{0,F'}(v₀)`, `K_{0,F'}(v₁)`. The length lies between `N(g)` and
/// `(3d-2)·N(g) + 3d + 2`.
pub fn word_decompose(p: &GroupPair, g: &Portrait) -> Result<GenWord, GffError> {
    p.check_transitive()?;
    if p.degree() < 3 {
        return Err(GffError::Hypothesis("degree at least 3 required".into()));
    }
    singularity_report(p, g, None)?;
    let v1 = Vertex::v1();
    let mut letters = Vec::new();
    let mut cur = g.clone();
    // Bring v₁ back to itself, one step along the geodesic at a time.
    loop {
        let x = cur.apply(&v1);
        if x == v1 {
            break;
        }
        if x.in_l_v1() {
            let i = x.word()[1] as usize;
            cur = p.translation(i)?.inverse()?.compose(&cur)?;
            letters.push(Letter::Translation { i, inverse: false });
        } else {
            let first = x.word().first().map(|&c| c as usize);
            let j = (1..p.degree())
                .find(|&j| Some(p.sigma(j).unwrap().inverse().apply(0)) != first)
                .expect("degree at least 3");
            cur = p.translation(j)?.compose(&cur)?;
            letters.push(Letter::Translation {
                i: j,
                inverse: true,
            });
        }
    }
    let s = cur.local(&v1);
    if s.apply(0) != 0 {
        let u = extend_star(p, &v1, s.inverse(), &v1)?;
        letters.push(Letter::Local {
            vertex: v1.clone(),
            element: u.inverse()?,
        });
        cur = u.compose(&cur)?;
    }
    let far = restrict(p, &cur, |w| w.in_l_v1(), &[])?;
    let near = restrict(p, &cur, |w| !w.in_l_v1(), &[])?;
    one_sided(p, &far, Side::V1, &mut letters)?;
    one_sided(p, &near, Side::V0, &mut letters)?;
    Ok(GenWord { letters })
}

#[derive(Clone, Copy)]
enum Side {
    /// Supported on `L(v₁)`.
    V1,
    /// Supported on `L(v₀)`.
    V0,
}

/// `g` restricted to the vertices selected by `keep`, identity elsewhere.
/// Vertices in `centre` are forced internal so that each leaf half-tree lies
/// on one side of the selection.
fn restrict(
    p: &GroupPair,
    g: &Portrait,
    keep: impl Fn(&Vertex) -> bool,
    centre: &[Vertex],
) -> Result<Portrait, GffError> {
    let d = p.degree();
    let tree = complete_hull(
        d,
        g.base_vertices().chain(centre),
        g.internal_perms().keys().chain(centre),
    );
    let id = Perm::identity(d);
    let root = Vertex::root();
    Ok(Portrait::from_local_fn(d, &tree, &root, &root, |w| {
        if keep(w) {
            g.local(w)
        } else {
            id
        }
    })?)
}

/// Element fixing `e₀`, trivial off one side. Cancels the local permutation at
/// the centre, splits the rest by branch and conjugates each branch back to
/// the same side with a translation.
fn one_sided(
    p: &GroupPair,
    g: &Portrait,
    side: Side,
    out: &mut Vec<Letter>,
) -> Result<(), GffError> {
    if g.is_identity() {
        return Ok(());
    }
    let centre = match side {
        Side::V1 => Vertex::v1(),
        Side::V0 => Vertex::root(),
    };
    let only_centre = g.fixes(&centre)
        && g.internal_perms()
            .iter()
            .all(|(v, s)| *v == centre || p.f().contains(s))
        && g.tail_perms().values().all(|s| p.f().contains(s));
    if only_centre {
        out.push(Letter::Local {
            vertex: centre,
            element: g.clone(),
        });
        return Ok(());
    }
    let mut cur = g.clone();
    let s = g.local(&centre);
    if !s.is_identity() {
        let u = extend_star(p, &centre, s.inverse(), &centre)?;
        out.push(Letter::Local {
            vertex: centre.clone(),
            element: u.inverse()?,
        });
        cur = u.compose(&cur)?;
    }
    for b in 1..p.degree() {
        let branch = centre.neighbor(b);
        let part = restrict(
            p,
            &cur,
            |w| branch.l_contains(w),
            std::slice::from_ref(&centre),
        )?;
        if part.is_identity() {
            continue;
        }
        match side {
            Side::V1 => {
                let h = p.translation(b)?;
                let moved = h.inverse()?.compose(&part)?.compose(&h)?;
                out.push(Letter::Translation {
                    i: b,
                    inverse: false,
                });
                one_sided(p, &moved, side, out)?;
                out.push(Letter::Translation {
                    i: b,
                    inverse: true,
                });
            }
            Side::V0 => {
                let i = p.translation_towards_v0_branch(b)?;
                let h = p.translation(i)?;
                let moved = h.compose(&part)?.compose(&h.inverse()?)?;
                out.push(Letter::Translation { i, inverse: true });
                one_sided(p, &moved, side, out)?;
                out.push(Letter::Translation { i, inverse: false });
            }
        }
    }
    Ok(())
}
