//! Tree automorphisms whose local permutations are constant on each branch
//! beyond a finite complete subtree.
//!
//! A portrait stores the image of `v₀`, one permutation per internal vertex of
//! its base, and one tail permutation per leaf; the tail applies to the leaf
//! and to its whole half-tree. The vertex map follows
//! `g(v·a) = g(v)·σ(g,v)(a)`. Since the edge `{v, v·a}` has colour `a` at
//! both ends, an assignment describes an automorphism exactly when
//! `σ(g,v·a)(a) = σ(g,v)(a)` on every edge; `from_parts` checks this on the
//! base, and beyond the leaves it holds because tails are constant.

mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::perm::{Perm, PermError};
use crate::tree::{complete_hull, first_outside, CompleteSubtree, TreeError, Vertex};

/// Environment variable overriding the internal-vertex budget.
pub const BUDGET_ENV: &str = "ALMOSTLOCAL_MAX_INTERNAL";
pub const DEFAULT_BUDGET: usize = 100_000;

/// Largest internal-vertex count an operation may produce.
pub fn internal_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET)
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PortraitError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("leaf {0} has no tail permutation")]
    MissingTail(String),
    #[error("vertex {0} is not a leaf of the base but carries a tail")]
    ExtraTail(String),
    #[error("local permutations disagree on the colour-{color} edge at {vertex}")]
    Incompatible { vertex: String, color: usize },
    #[error("internal-vertex budget exceeded: {count} > {budget}")]
    BudgetExceeded { count: usize, budget: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Portrait {
    degree: usize,
    root_image: Vertex,
    internal: BTreeMap<Vertex, Perm>,
    tails: BTreeMap<Vertex, Perm>,
}

fn check_budget(count: usize) -> Result<(), PortraitError> {
    let budget = internal_budget();
    if count > budget {
        return Err(PortraitError::BudgetExceeded { count, budget });
    }
    Ok(())
}

impl Portrait {
    pub fn identity(degree: usize) -> Portrait {
        Portrait::constant(Perm::identity(degree), Vertex::root())
    }

    /// The automorphism with every local permutation equal to `sigma` and
    /// `v₀ ↦ root_image`.
    pub fn constant(sigma: Perm, root_image: Vertex) -> Portrait {
        let tails = [(Vertex::root(), sigma), (Vertex::v1(), sigma)]
            .into_iter()
            .collect();
        Portrait {
            degree: sigma.degree(),
            root_image,
            internal: BTreeMap::new(),
            tails,
        }
    }

    /// Validates raw data and returns its canonical form.
    pub fn from_parts(
        degree: usize,
        root_image: Vertex,
        internal: BTreeMap<Vertex, Perm>,
        tails: BTreeMap<Vertex, Perm>,
    ) -> Result<Portrait, PortraitError> {
        let p = Portrait {
            degree,
            root_image,
            internal,
            tails,
        };
        p.validate()?;
        Ok(p.canonical())
    }

    /// Builds the automorphism whose local permutation at `v` is `f(v)`,
    /// sending `anchor` to `anchor_image`. `f` must be constant on the
    /// half-tree beyond each leaf of `tree`; it is evaluated on the vertices
    /// of `tree` only.
    pub fn from_local_fn(
        degree: usize,
        tree: &CompleteSubtree,
        anchor: &Vertex,
        anchor_image: &Vertex,
        f: impl Fn(&Vertex) -> Perm,
    ) -> Result<Portrait, PortraitError> {
        check_budget(tree.internal().len())?;
        let internal = tree.internal().iter().map(|v| (v.clone(), f(v))).collect();
        let tails = tree.leaves().iter().map(|v| (v.clone(), f(v))).collect();
        let mut p = Portrait {
            degree,
            root_image: Vertex::root(),
            internal,
            tails,
        };
        p.validate()?;
        // Walk from the anchor to v₀, one edge at a time.
        let mut u = anchor.clone();
        let mut image = anchor_image.clone();
        while let Some(c) = u.last() {
            image = image.neighbor(p.local(&u).apply(c));
            u = u.neighbor(c);
        }
        p.root_image = image;
        Ok(p.canonical())
    }

    fn validate(&self) -> Result<(), PortraitError> {
        let d = self.degree;
        if let Some(c) = self.root_image.word().iter().find(|&&c| c as usize >= d) {
            return Err(TreeError::ColorOutOfRange {
                color: *c as usize + 1,
                degree: d,
            }
            .into());
        }
        for p in self.internal.values().chain(self.tails.values()) {
            if p.degree() != d {
                return Err(PortraitError::DegreeMismatch {
                    left: d,
                    right: p.degree(),
                });
            }
        }
        let base = CompleteSubtree::from_internal(d, self.internal.keys().cloned().collect())?;
        for leaf in base.leaves() {
            if !self.tails.contains_key(leaf) {
                return Err(PortraitError::MissingTail(leaf.literal()));
            }
        }
        for v in self.tails.keys() {
            if !base.leaves().contains(v) {
                return Err(PortraitError::ExtraTail(v.literal()));
            }
        }
        let edges: Vec<(&Vertex, usize)> = if self.internal.is_empty() {
            vec![(self.tails.keys().next().expect("two tails"), 0)]
        } else {
            self.internal
                .keys()
                .flat_map(|v| (0..d).map(move |a| (v, a)))
                .collect()
        };
        for (v, a) in edges {
            if self.local(v).apply(a) != self.local(&v.neighbor(a)).apply(a) {
                return Err(PortraitError::Incompatible {
                    vertex: v.literal(),
                    color: a + 1,
                });
            }
        }
        Ok(())
    }

    /// Prunes internal vertices whose outward neighbours are all leaves
    /// carrying the vertex's own permutation, deepest first.
    fn canonical(mut self) -> Portrait {
        let mut order: Vec<Vertex> = self.internal.keys().cloned().collect();
        order.sort_by_key(|v| std::cmp::Reverse(v.e0_depth()));
        for x in order {
            let p = self.internal[&x];
            let inward = match x.len() {
                0 => Vertex::v1(),
                1 if x.in_l_v1() => Vertex::root(),
                _ => x.neighbor(x.last().unwrap()),
            };
            let outward: Vec<Vertex> = x.neighbors(self.degree).filter(|w| *w != inward).collect();
            let prunable = outward
                .iter()
                .all(|w| !self.internal.contains_key(w) && self.tails.get(w) == Some(&p));
            if prunable {
                for w in &outward {
                    self.tails.remove(w);
                }
                self.internal.remove(&x);
                self.tails.insert(x, p);
            }
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn root_image(&self) -> &Vertex {
        &self.root_image
    }

    pub fn internal_perms(&self) -> &BTreeMap<Vertex, Perm> {
        &self.internal
    }

    pub fn tail_perms(&self) -> &BTreeMap<Vertex, Perm> {
        &self.tails
    }

    pub fn internal_count(&self) -> usize {
        self.internal.len()
    }

    pub fn base(&self) -> CompleteSubtree {
        CompleteSubtree::from_internal(self.degree, self.internal.keys().cloned().collect())
            .expect("validated portrait")
    }

    /// Vertices of the base, internal first.
    pub fn base_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.internal.keys().chain(self.tails.keys())
    }

    /// All local permutations that occur anywhere.
    pub fn all_perms(&self) -> impl Iterator<Item = &Perm> {
        self.internal.values().chain(self.tails.values())
    }

    pub fn is_identity(&self) -> bool {
        self.root_image.is_root()
            && self.internal.is_empty()
            && self.tails.values().all(|p| p.is_identity())
    }

    /// `σ(g, v)`.
    pub fn local(&self, v: &Vertex) -> Perm {
        self.local_word(v.word())
    }

    fn local_word(&self, w: &[u8]) -> Perm {
        if let Some(p) = self.internal.get(w) {
            return *p;
        }
        let k = first_outside(w, |p| self.internal.contains_key(p)).expect("w is not internal");
        self.tails[&w[..k]]
    }

    /// `g(v)`, by walking from `v₀`.
    pub fn apply(&self, v: &Vertex) -> Vertex {
        let w = v.word();
        let mut image = self.root_image.word().to_vec();
        let mut tail: Option<Perm> = None;
        let start = usize::from(w.first() == Some(&0));
        for k in 0..w.len() {
            let sigma = match tail {
                _ if k < start => self.local_word(&[]),
                Some(t) => t,
                None => match self.internal.get(&w[..k]) {
                    Some(p) => *p,
                    None => *tail.insert(self.tails[&w[..k]]),
                },
            };
            let c = sigma.apply(w[k] as usize) as u8;
            if image.last() == Some(&c) {
                image.pop();
            } else {
                image.push(c);
            }
        }
        Vertex::from_reduced(image)
    }

    /// `g⁻¹(y)`, by walking from `g(v₀)` to `y`.
    pub fn apply_inverse(&self, y: &Vertex) -> Vertex {
        let path = self.root_image.geodesic(y);
        let mut x = Vertex::root();
        for step in path.windows(2) {
            let (a, b) = (&step[0], &step[1]);
            let c = if b.len() > a.len() {
                b.last()
            } else {
                a.last()
            }
            .unwrap();
            let pre = self.local(&x).inverse().apply(c);
            x = x.neighbor(pre);
        }
        x
    }

    pub fn fixes(&self, v: &Vertex) -> bool {
        self.apply(v) == *v
    }

    /// `self ∘ h`.
    pub fn compose(&self, h: &Portrait) -> Result<Portrait, PortraitError> {
        if self.degree != h.degree {
            return Err(PortraitError::DegreeMismatch {
                left: self.degree,
                right: h.degree,
            });
        }
        let pulled: Vec<Vertex> = self.base_vertices().map(|y| h.apply_inverse(y)).collect();
        let pulled_internal: Vec<Vertex> =
            self.internal.keys().map(|y| h.apply_inverse(y)).collect();
        let tree = complete_hull(
            self.degree,
            h.base_vertices().chain(pulled.iter()),
            h.internal.keys().chain(pulled_internal.iter()),
        );
        check_budget(tree.internal().len())?;
        let at = |v: &Vertex| self.local(&h.apply(v)).compose(&h.local(v));
        let internal = tree.internal().iter().map(|v| (v.clone(), at(v))).collect();
        let tails = tree.leaves().iter().map(|v| (v.clone(), at(v))).collect();
        let root_image = self.apply(&h.root_image);
        Ok(Portrait {
            degree: self.degree,
            root_image,
            internal,
            tails,
        }
        .canonical())
    }

    pub fn inverse(&self) -> Result<Portrait, PortraitError> {
        let pushed: Vec<Vertex> = self.base_vertices().map(|v| self.apply(v)).collect();
        let pushed_internal: Vec<Vertex> = self.internal.keys().map(|v| self.apply(v)).collect();
        let e0 = [Vertex::root(), Vertex::v1()];
        let tree = complete_hull(
            self.degree,
            pushed.iter().chain(e0.iter()),
            pushed_internal.iter(),
        );
        check_budget(tree.internal().len())?;
        let at = |y: &Vertex| self.local(&self.apply_inverse(y)).inverse();
        let internal = tree.internal().iter().map(|v| (v.clone(), at(v))).collect();
        let tails = tree.leaves().iter().map(|v| (v.clone(), at(v))).collect();
        let root_image = self.apply_inverse(&Vertex::root());
        Ok(Portrait {
            degree: self.degree,
            root_image,
            internal,
            tails,
        }
        .canonical())
    }

    /// `self ∘ h ∘ self⁻¹`.
    pub fn conjugate(&self, h: &Portrait) -> Result<Portrait, PortraitError> {
        self.compose(h)?.compose(&self.inverse()?)
    }

    /// Product of a sequence, left to right: `p₁ ∘ p₂ ∘ …`.
    pub fn product<'a>(
        degree: usize,
        items: impl IntoIterator<Item = &'a Portrait>,
    ) -> Result<Portrait, PortraitError> {
        let mut acc = Portrait::identity(degree);
        for p in items {
            acc = acc.compose(p)?;
        }
        Ok(acc)
    }

    /// Checks on a ball around `v₀` that the vertex map is injective and
    /// sends edges of colour `a` at `v` to edges of colour `σ(g,v)(a)`.
    pub fn check_automorphism_on_ball(&self, radius: usize) -> bool {
        let vs = crate::tree::ball(self.degree, &Vertex::root(), radius);
        let images: BTreeSet<Vertex> = vs.iter().map(|v| self.apply(v)).collect();
        if images.len() != vs.len() {
            return false;
        }
        vs.iter().all(|v| {
            let gv = self.apply(v);
            let s = self.local(v);
            (0..self.degree).all(|a| self.apply(&v.neighbor(a)) == gv.neighbor(s.apply(a)))
        })
    }
}

/// A uniformly random permutation of degree `d` sending `from` to `to`.
pub fn random_perm_with<R: Rng + ?Sized>(d: usize, from: usize, to: usize, rng: &mut R) -> Perm {
    let mut img: Vec<usize> = (0..d).collect();
    img.shuffle(rng);
    let j = img.iter().position(|&x| x == to).expect("to < d");
    img.swap(j, from);
    Perm::from_images(&img).expect("shuffled images form a permutation")
}

impl Portrait {
    /// A random automorphism: a random complete subtree of depth at most
    /// `depth` around `e₀`, compatible random local permutations on it, and a
    /// random root image of length at most `depth`.
    pub fn random<R: Rng + ?Sized>(degree: usize, depth: usize, rng: &mut R) -> Portrait {
        let mut internal: BTreeMap<Vertex, Perm> = BTreeMap::new();
        let mut frontier: Vec<Vertex> = Vec::new();
        let s0 = random_perm_with(degree, 0, rng.gen_range(0..degree), rng);
        let s1 = random_perm_with(degree, 0, s0.apply(0), rng);
        for (v, s) in [(Vertex::root(), s0), (Vertex::v1(), s1)] {
            if depth > 0 && rng.gen_bool(0.7) {
                internal.insert(v.clone(), s);
                frontier.push(v);
            }
        }
        let mut tails = BTreeMap::new();
        if internal.is_empty() {
            tails.insert(Vertex::root(), s0);
            tails.insert(Vertex::v1(), s1);
        }
        while let Some(v) = frontier.pop() {
            let sv = internal[&v];
            for a in 0..degree {
                let w = v.neighbor(a);
                if internal.contains_key(&w) || (v.len() <= 1 && w.len() <= 1 && w.e0_depth() == 0)
                {
                    continue;
                }
                let s = random_perm_with(degree, a, sv.apply(a), rng);
                if w.e0_depth() < depth && rng.gen_bool(0.4) {
                    internal.insert(w.clone(), s);
                    frontier.push(w);
                } else {
                    tails.insert(w, s);
                }
            }
        }
        // Whichever of v₀, v₁ is not internal is a leaf of the other.
        for (v, s) in [(Vertex::root(), s0), (Vertex::v1(), s1)] {
            if !internal.is_empty() && !internal.contains_key(&v) {
                tails.insert(v, s);
            }
        }
        let mut root = Vertex::root();
        for _ in 0..rng.gen_range(0..=depth) {
            let a = rng.gen_range(0..degree);
            if root.last() != Some(a) {
                root = root.neighbor(a);
            }
        }
        Portrait::from_parts(degree, root, internal, tails).expect("compatible by construction")
    }
}

impl std::fmt::Debug for Portrait {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::ball;

    fn p(s: &str, d: usize) -> Perm {
        Perm::parse(s, d).unwrap()
    }

    fn v(s: &str, d: usize) -> Vertex {
        Vertex::parse(s, d).unwrap()
    }

    /// Fixes `v₀` with `σ(v₀) = (1 2 3)`; each tail agrees with it on the
    /// edge back to `v₀`.
    fn star_example() -> Portrait {
        let internal = [(Vertex::root(), p("(1 2 3)", 4))].into_iter().collect();
        let tails = [
            ("1", "(1 2 3 4)"),
            ("2", "(2 3)"),
            ("3", "(1 3)(2 4)"),
            ("4", "(1 2 3)"),
        ]
        .into_iter()
        .map(|(x, t)| (v(x, 4), p(t, 4)))
        .collect();
        Portrait::from_parts(4, Vertex::root(), internal, tails).unwrap()
    }

    #[test]
    fn incompatible_tails_rejected() {
        let internal = [(Vertex::root(), p("(1 2 3)", 4))].into_iter().collect();
        let tails = (0..4)
            .map(|a| (Vertex::root().neighbor(a), Perm::identity(4)))
            .collect();
        assert!(matches!(
            Portrait::from_parts(4, Vertex::root(), internal, tails),
            Err(PortraitError::Incompatible { .. })
        ));
        let tails = [
            (Vertex::root(), p("(1 2)", 3)),
            (Vertex::v1(), Perm::identity(3)),
        ];
        assert!(Portrait::from_parts(3, Vertex::root(), BTreeMap::new(), tails.into()).is_err());
    }

    #[test]
    fn random_portraits_are_automorphisms() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in 3..=6 {
            for _ in 0..30 {
                let g = Portrait::random(d, 3, &mut rng);
                assert!(g.check_automorphism_on_ball(4));
                assert_eq!(Portrait::parse(&g.to_string()).unwrap(), g);
            }
        }
    }

    #[test]
    fn identity_is_canonical() {
        let id = Portrait::identity(4);
        assert!(id.is_identity());
        assert_eq!(id.base(), CompleteSubtree::base_edge(4));
        for x in ball(4, &Vertex::root(), 3) {
            assert_eq!(id.apply(&x), x);
        }
    }

    #[test]
    fn pruning_to_identity() {
        let internal = [(Vertex::root(), Perm::identity(4))].into_iter().collect();
        let tails = (0..4)
            .map(|a| (Vertex::root().neighbor(a), Perm::identity(4)))
            .collect();
        let g = Portrait::from_parts(4, Vertex::root(), internal, tails).unwrap();
        assert_eq!(g, Portrait::identity(4));
    }

    #[test]
    fn missing_tail_rejected() {
        let internal = [(Vertex::root(), Perm::identity(4))].into_iter().collect();
        let tails = (0..3)
            .map(|a| (Vertex::root().neighbor(a), Perm::identity(4)))
            .collect();
        assert!(matches!(
            Portrait::from_parts(4, Vertex::root(), internal, tails),
            Err(PortraitError::MissingTail(_))
        ));
    }

    #[test]
    fn constant_examples() {
        let g = Portrait::constant(p("(1 2)", 3), Vertex::root());
        assert_eq!(g.apply(&v("1", 3)), v("2", 3));
        assert_eq!(g.apply(&v("1 3", 3)), v("2 3", 3));
        for x in ball(3, &Vertex::root(), 3) {
            assert_eq!(g.local(&x), p("(1 2)", 3));
        }
        assert_eq!(
            Portrait::constant(Perm::identity(3), Vertex::root()),
            Portrait::identity(3)
        );
    }

    #[test]
    fn translation_moves_v1() {
        let sigma = p("(1 2)", 4);
        let h2 = Portrait::constant(sigma, Vertex::v1());
        assert_eq!(h2.apply(&Vertex::v1()), v("1 2", 4));
        assert_eq!(h2.apply(&Vertex::root()), Vertex::v1());
    }

    #[test]
    fn star_example_values() {
        let g = star_example();
        assert_eq!(g.apply(&v("3", 4)), v("1", 4));
        assert_eq!(g.apply_inverse(&Vertex::v1()), v("3", 4));
        assert!(g.check_automorphism_on_ball(4));
    }

    #[test]
    fn inverse_and_compose() {
        let g = star_example();
        let h = Portrait::constant(p("(1 2)(3 4)", 4), v("2 3", 4));
        for x in [&g, &h] {
            let inv = x.inverse().unwrap();
            assert!(x.compose(&inv).unwrap().is_identity());
            assert!(inv.compose(x).unwrap().is_identity());
            assert_eq!(&inv.inverse().unwrap(), x);
        }
        let gh = g.compose(&h).unwrap();
        for x in ball(4, &Vertex::root(), 4) {
            assert_eq!(gh.apply(&x), g.apply(&h.apply(&x)));
            assert_eq!(gh.local(&x), g.local(&h.apply(&x)).compose(&h.local(&x)));
        }
    }

    #[test]
    fn constant_product() {
        let s = p("(1 2 3)", 4);
        let t = p("(2 4)", 4);
        let a = Portrait::constant(s, Vertex::root());
        let b = Portrait::constant(t, Vertex::root());
        assert_eq!(
            a.compose(&b).unwrap(),
            Portrait::constant(s.compose(&t), Vertex::root())
        );
    }

    #[test]
    fn inverse_of_translation() {
        let s = p("(1 2 3)", 3);
        let h = Portrait::constant(s, Vertex::v1());
        let inv = h.inverse().unwrap();
        assert_eq!(inv.internal_count(), 0);
        assert!(inv.tail_perms().values().all(|q| *q == s.inverse()));
        assert_eq!(inv.root_image(), &h.apply_inverse(&Vertex::root()));
    }
}
