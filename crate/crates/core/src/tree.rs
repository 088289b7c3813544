//! The `d`-regular tree with its legal edge colouring.
//!
//! Vertices are reduced words over the colours: the empty word is `v₀`, the
//! word `1` is `v₁`, and `{v, v·a}` is an edge of colour `a`. Colours are
//! 0-based in memory and 1-based in text.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("word {0:?} is not reduced")]
    NonReduced(String),
    #[error("colour {color} out of range for degree {degree}")]
    ColorOutOfRange { color: usize, degree: usize },
    #[error("malformed vertex literal {0:?}")]
    Malformed(String),
    #[error("not a complete subtree: {0}")]
    NotComplete(String),
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<u8>);

impl Borrow<[u8]> for Vertex {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl Vertex {
    /// `v₀`.
    pub fn root() -> Vertex {
        Vertex(Vec::new())
    }

    /// `v₁`, the other end of the base edge `e₀`.
    pub fn v1() -> Vertex {
        Vertex(vec![0])
    }

    /// Builds a vertex from 0-based colours, checking the word is reduced.
    pub fn from_word(word: &[u8]) -> Result<Vertex, TreeError> {
        if word.windows(2).any(|w| w[0] == w[1]) {
            let text: Vec<String> = word.iter().map(|c| (c + 1).to_string()).collect();
            return Err(TreeError::NonReduced(text.join(" ")));
        }
        Ok(Vertex(word.to_vec()))
    }

    /// Wraps a word already known to be reduced.
    pub(crate) fn from_reduced(word: Vec<u8>) -> Vertex {
        debug_assert!(word.windows(2).all(|w| w[0] != w[1]));
        Vertex(word)
    }

    /// Parses space-separated 1-based colours; surrounding quotes are optional.
    pub fn parse(s: &str, degree: usize) -> Result<Vertex, TreeError> {
        let t = s.trim();
        let t = t
            .strip_prefix('"')
            .and_then(|x| x.strip_suffix('"'))
            .unwrap_or(t);
        let mut word = Vec::new();
        for tok in t.split_whitespace() {
            let c: usize = tok
                .parse()
                .map_err(|_| TreeError::Malformed(s.to_string()))?;
            if c == 0 || c > degree {
                return Err(TreeError::ColorOutOfRange { color: c, degree });
            }
            word.push((c - 1) as u8);
        }
        Vertex::from_word(&word)
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|&c| c as usize)
    }

    /// `0` or `1`: the bipartition class, `|word| mod 2`.
    pub fn parity(&self) -> usize {
        self.0.len() % 2
    }

    /// The vertex across the edge of colour `a` (0-based).
    pub fn neighbor(&self, a: usize) -> Vertex {
        let mut w = self.0.clone();
        if w.last() == Some(&(a as u8)) {
            w.pop();
        } else {
            w.push(a as u8);
        }
        Vertex(w)
    }

    pub fn neighbors(&self, degree: usize) -> impl Iterator<Item = Vertex> + '_ {
        (0..degree).map(move |a| self.neighbor(a))
    }

    /// Appends a colour word, reducing as it goes: the image of `w` under the
    /// automorphism with all local permutations trivial sending `v₀` to `self`.
    pub fn concat(&self, w: &[u8]) -> Vertex {
        let mut out = self.0.clone();
        for &c in w {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        Vertex(out)
    }

    /// Colour of the first edge on the geodesic from `self` towards `e₀`
    /// (`0`, the colour of `e₀`, for `v₀` and `v₁`).
    pub fn toward_e0_color(&self) -> usize {
        self.last().unwrap_or(0)
    }

    /// `self ∈ L(v₁)`, i.e. the word starts with colour `0`.
    pub fn in_l_v1(&self) -> bool {
        self.0.first() == Some(&0)
    }

    /// Distance to the base edge `e₀`.
    pub fn e0_depth(&self) -> usize {
        if self.in_l_v1() {
            self.0.len() - 1
        } else {
            self.0.len()
        }
    }

    /// Whether `w ∈ L(self)`: the projection of `w` to the geodesic from
    /// `self` to `e₀` is `self`.
    pub fn l_contains(&self, w: &Vertex) -> bool {
        match self.0.len() {
            0 => !w.in_l_v1(),
            1 if self.0[0] == 0 => w.in_l_v1(),
            _ => w.0.starts_with(&self.0),
        }
    }

    fn common_prefix(&self, other: &Vertex) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn distance(&self, other: &Vertex) -> usize {
        let p = self.common_prefix(other);
        self.0.len() + other.0.len() - 2 * p
    }

    /// Vertices of the geodesic from `self` to `other`, both included.
    pub fn geodesic(&self, other: &Vertex) -> Vec<Vertex> {
        let p = self.common_prefix(other);
        let mut out = Vec::with_capacity(self.distance(other) + 1);
        for k in (p..=self.0.len()).rev() {
            out.push(Vertex(self.0[..k].to_vec()));
        }
        for k in p + 1..=other.0.len() {
            out.push(Vertex(other.0[..k].to_vec()));
        }
        out
    }

    /// The quoted literal form, e.g. `"1 2"`.
    pub fn literal(&self) -> String {
        format!("\"{self}\"")
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

/// The ball of radius `r` around `center`.
pub fn ball(degree: usize, center: &Vertex, r: usize) -> Vec<Vertex> {
    let mut out = vec![center.clone()];
    let mut frontier = vec![(center.clone(), usize::MAX)];
    for _ in 0..r {
        let mut next = Vec::new();
        for (v, came) in &frontier {
            for a in 0..degree {
                if a != *came {
                    let w = v.neighbor(a);
                    out.push(w.clone());
                    next.push((w, a));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Where a vertex sits relative to a complete subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    Internal,
    /// The leaf whose half-tree contains the vertex.
    Leaf(Vertex),
}

/// A finite complete subtree containing `e₀`, given by its internal vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct CompleteSubtree {
    degree: usize,
    internal: BTreeSet<Vertex>,
    leaves: BTreeSet<Vertex>,
}

impl CompleteSubtree {
    /// `T = e₀`.
    pub fn base_edge(degree: usize) -> CompleteSubtree {
        CompleteSubtree {
            degree,
            internal: BTreeSet::new(),
            leaves: [Vertex::root(), Vertex::v1()].into_iter().collect(),
        }
    }

    /// Validates an internal vertex set and derives the leaves.
    pub fn from_internal(
        degree: usize,
        internal: BTreeSet<Vertex>,
    ) -> Result<CompleteSubtree, TreeError> {
        if internal.is_empty() {
            return Ok(CompleteSubtree::base_edge(degree));
        }
        for v in &internal {
            if let Some(c) = v.0.iter().find(|&&c| c as usize >= degree) {
                return Err(TreeError::ColorOutOfRange {
                    color: *c as usize + 1,
                    degree,
                });
            }
        }
        if !internal.contains(&Vertex::root()) && !internal.contains(&Vertex::v1()) {
            return Err(TreeError::NotComplete(
                "internal set must contain v0 or v1".into(),
            ));
        }
        // Connected iff every internal vertex other than the e₀-roots has its
        // e₀-parent internal, and a lone v₁ subtree is still attached to e₀.
        for v in &internal {
            if v.e0_depth() > 0 {
                let parent = Vertex(v.0[..v.0.len() - 1].to_vec());
                if !internal.contains(&parent) {
                    return Err(TreeError::NotComplete(format!(
                        "internal vertex {} is disconnected",
                        v.literal()
                    )));
                }
            }
        }
        let mut leaves = BTreeSet::new();
        for v in &internal {
            for w in v.neighbors(degree) {
                if !internal.contains(&w) {
                    leaves.insert(w);
                }
            }
        }
        Ok(CompleteSubtree {
            degree,
            internal,
            leaves,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn internal(&self) -> &BTreeSet<Vertex> {
        &self.internal
    }

    pub fn leaves(&self) -> &BTreeSet<Vertex> {
        &self.leaves
    }

    pub fn is_edge(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn is_internal(&self, v: &[u8]) -> bool {
        self.internal.contains(v)
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.internal.contains(v) || self.leaves.contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.internal.iter().chain(self.leaves.iter())
    }

    /// Largest distance from `v₀` to a vertex of the tree.
    pub fn radius(&self) -> usize {
        self.vertices().map(|v| v.len()).max().unwrap_or(0)
    }

    pub fn branch_of(&self, v: &Vertex) -> Branch {
        match first_outside(v.word(), |p| self.internal.contains(p)) {
            None => Branch::Internal,
            Some(k) => Branch::Leaf(Vertex(v.0[..k].to_vec())),
        }
    }
}

/// Walks the `e₀`-rooted chain of prefixes of `word` (starting at `v₁` for
/// words in `L(v₁)`, at `v₀` otherwise) and returns the length of the first
/// prefix for which `is_internal` fails.
pub(crate) fn first_outside(word: &[u8], is_internal: impl Fn(&[u8]) -> bool) -> Option<usize> {
    let start = if word.first() == Some(&0) { 1 } else { 0 };
    (start..=word.len()).find(|&k| !is_internal(&word[..k]))
}

impl fmt::Debug for CompleteSubtree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompleteSubtree")
            .field("internal", &self.internal)
            .field("leaves", &self.leaves)
            .finish()
    }
}

/// Minimal complete subtree containing `s` (and `e₀`) with every vertex of
/// `must_internal` internal: the convex hull of `s` and the neighbours of
/// `must_internal`, with internal vertices those of hull-degree at least two.
pub fn complete_hull<'a>(
    degree: usize,
    s: impl IntoIterator<Item = &'a Vertex>,
    must_internal: impl IntoIterator<Item = &'a Vertex>,
) -> CompleteSubtree {
    let mut hull: BTreeSet<Vertex> = BTreeSet::new();
    let mut add = |w: &Vertex| {
        for k in 0..=w.len() {
            hull.insert(Vertex(w.0[..k].to_vec()));
        }
    };
    add(&Vertex::v1());
    for v in s {
        add(v);
    }
    for v in must_internal {
        for w in v.neighbors(degree) {
            add(&w);
        }
    }
    let mut children: BTreeMap<&[u8], usize> = BTreeMap::new();
    for w in &hull {
        if !w.is_empty() {
            *children.entry(&w.0[..w.len() - 1]).or_default() += 1;
        }
    }
    let internal: BTreeSet<Vertex> = hull
        .iter()
        .filter(|v| {
            let up = usize::from(!v.is_empty());
            up + children.get(v.word()).copied().unwrap_or(0) >= 2
        })
        .cloned()
        .collect();
    CompleteSubtree::from_internal(degree, internal)
        .expect("hull of a set containing e0 is complete")
}
