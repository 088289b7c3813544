//! Permutations of `{1..d}` and fully enumerated permutation groups.
//!
//! Points are 0-based internally and 1-based in every textual form.

mod families;
mod field;
mod functors;
mod group;
mod subgroups;

pub use families::{construct_group, imprimitive_wreath, young_from_blocks};
pub use field::FiniteField;
pub use functors::{
    is_essential, is_essential_by_cyclic_subgroups, normalizer, product_set_equals,
    product_set_literal, SubgroupFunctors, YoungClosure,
};
pub use group::{OrbitData, PermGroup, DEFAULT_ORDER_LIMIT};
pub use subgroups::{
    all_subgroups, conjugacy_key, cyclic_subgroups, find_embedding, index_two_subgroups,
    min_nontrivial_action_degree, normal_subgroups, subgroups_containing,
};

use std::fmt;
use thiserror::Error;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree {0} is outside the supported range 1..=16")]
    DegreeOutOfRange(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle string {0:?}")]
    MalformedCycle(String),
    #[error("image list is not a bijection")]
    NotBijective,
    #[error("group order exceeds the enumeration limit {0}")]
    TooLarge(usize),
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("field order {0} is not supported")]
    UnsupportedField(usize),
    #[error("bad arguments for {family}: {reason}")]
    BadArguments { family: String, reason: String },
    #[error("{0}")]
    NotSubgroup(String),
}

/// A permutation of `{0..n}` stored as an inline image table.
///
/// `p.compose(&q)` is `p ∘ q`, i.e. `q` acts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} unsupported");
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let n = images.len();
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(PermError::DegreeOutOfRange(n));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Perm::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective);
            }
            seen[x] = true;
            p.img[i] = x as u8;
        }
        Ok(p)
    }

    /// Builds a permutation from 1-based images, as in `[2, 3, 1]`.
    pub fn from_images_one_based(images: &[usize]) -> Result<Perm, PermError> {
        let v: Option<Vec<usize>> = images.iter().map(|&x| x.checked_sub(1)).collect();
        Perm::from_images(&v.ok_or(PermError::NotBijective)?)
    }

    /// A single cycle given by 0-based points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Perm, PermError> {
        let mut p = Perm::identity(n);
        let mut seen = [false; MAX_DEGREE];
        for (k, &a) in points.iter().enumerate() {
            if a >= n {
                return Err(PermError::PointOutOfRange {
                    point: a + 1,
                    degree: n,
                });
            }
            if seen[a] {
                return Err(PermError::MalformedCycle(format!(
                    "repeated point {}",
                    a + 1
                )));
            }
            seen[a] = true;
            p.img[a] = points[(k + 1) % points.len()] as u8;
        }
        Ok(p)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.img[a] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    /// `self ∘ other`.
    #[inline]
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n, other.n);
        let mut img = [0u8; MAX_DEGREE];
        for (out, &o) in img.iter_mut().zip(&other.img) {
            *out = self.img[o as usize];
        }
        Perm { n: self.n, img }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = [0u8; MAX_DEGREE];
        for i in 0..MAX_DEGREE {
            img[self.img[i] as usize] = i as u8;
        }
        Perm { n: self.n, img }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    pub fn fixes(&self, a: usize) -> bool {
        self.img[a] as usize == a
    }

    pub fn has_fixed_point(&self) -> bool {
        (0..self.n as usize).any(|i| self.img[i] as usize == i)
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = *self;
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Perm) -> Perm {
        by.compose(self).compose(&by.inverse())
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `id`. A product of
    /// overlapping cycles is read as a composition of maps, rightmost first.
    pub fn parse(s: &str, n: usize) -> Result<Perm, PermError> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(PermError::DegreeOutOfRange(n));
        }
        let t = s.trim();
        let bad = || PermError::MalformedCycle(s.to_string());
        if t == "id" || t == "()" || t.is_empty() {
            return Ok(Perm::identity(n));
        }
        let mut result = Perm::identity(n);
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let inner = &rest[1..close];
            let mut pts = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok.parse().map_err(|_| bad())?;
                if v == 0 || v > n {
                    return Err(PermError::PointOutOfRange {
                        point: v,
                        degree: n,
                    });
                }
                pts.push(v - 1);
            }
            if !pts.is_empty() {
                result = result.compose(&Perm::cycle(n, &pts)?);
            }
            rest = &rest[close + 1..];
        }
        Ok(result)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.compose(&rhs)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(Perm::parse("id", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::identity(4).to_string(), "id");
    }

    #[test]
    fn product_of_cycles_is_right_to_left() {
        let p = Perm::parse("(1 2)(2 3)", 3).unwrap();
        // (2 3) first: 2 -> 3, then (1 2) leaves 3 alone.
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(2), 0);
    }

    #[test]
    fn malformed_strings_rejected() {
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
        assert!(Perm::parse("(1 1)", 3).is_err());
        assert!(Perm::parse("1 2", 3).is_err());
        assert!(Perm::parse("(a b)", 3).is_err());
    }

    #[test]
    fn compose_inverse_order() {
        let p = Perm::parse("(1 2 3 4)", 4).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.order(), 4);
        assert!(!p.is_even());
        assert_eq!(p.pow(4), Perm::identity(4));
        let q = Perm::parse("(1 2)", 4).unwrap();
        // (p∘q)(1) = p(q(1)) = p(2) = 3
        assert_eq!(p.compose(&q).apply(0), 2);
    }

    #[test]
    fn commutator_of_commuting_is_identity() {
        let a = Perm::parse("(1 2)", 4).unwrap();
        let b = Perm::parse("(3 4)", 4).unwrap();
        assert!(Perm::commutator(&a, &b).is_identity());
    }
}
