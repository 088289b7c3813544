use std::collections::HashSet;
use std::fmt;

use super::{Perm, PermError, MAX_DEGREE};

/// Default bound on the order of an enumerated group (|Sym(8)|).
pub const DEFAULT_ORDER_LIMIT: usize = 40320;

/// A permutation group stored with its full element list (sorted).
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    /// Orbits as sorted 0-based point lists, ordered by least point.
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
    pub free: bool,
    pub simply_transitive: bool,
}

pub(crate) fn closure(degree: usize, gens: &[Perm], limit: usize) -> Result<Vec<Perm>, PermError> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id);
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for s in gens {
            let y = s.compose(&x);
            if seen.insert(y) {
                if seen.len() > limit {
                    return Err(PermError::TooLarge(limit));
                }
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

impl PermGroup {
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<PermGroup, PermError> {
        PermGroup::generate_with_limit(degree, gens, DEFAULT_ORDER_LIMIT)
    }

    pub fn generate_with_limit(
        degree: usize,
        gens: &[Perm],
        limit: usize,
    ) -> Result<PermGroup, PermError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::DegreeOutOfRange(degree));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut gs: Vec<Perm> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        gs.sort_unstable();
        gs.dedup();
        if gs.len() > 8 {
            return PermGroup::generate_pruned(degree, &gs, limit);
        }
        let elements = closure(degree, &gs, limit)?;
        Ok(PermGroup {
            degree,
            gens: gs,
            elements,
        })
    }

    /// Keeps only generators not already in the group spanned by earlier ones.
    fn generate_pruned(degree: usize, gens: &[Perm], limit: usize) -> Result<PermGroup, PermError> {
        let mut kept: Vec<Perm> = Vec::new();
        let mut elements: HashSet<Perm> = [Perm::identity(degree)].into_iter().collect();
        for g in gens {
            if elements.contains(g) {
                continue;
            }
            kept.push(*g);
            elements = closure(degree, &kept, limit)?.into_iter().collect();
        }
        let mut elements: Vec<Perm> = elements.into_iter().collect();
        elements.sort_unstable();
        Ok(PermGroup {
            degree,
            gens: kept,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            elements: vec![Perm::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.gens.iter().all(|g| other.contains(g))
    }

    /// Normality checked by conjugating generators.
    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .gens
                .iter()
                .all(|x| self.gens.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let mut seen = [false; MAX_DEGREE];
        seen[a] = true;
        let mut out = vec![a];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for a in 0..self.degree {
            if !seen[a] {
                let o = self.orbit(a);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Every point stabilizer is trivial.
    pub fn is_free(&self) -> bool {
        self.elements
            .iter()
            .all(|g| g.is_identity() || !g.has_fixed_point())
    }

    pub fn orbit_data(&self) -> OrbitData {
        let orbits = self.orbits();
        let transitive = orbits.len() == 1;
        let free = self.is_free();
        OrbitData {
            orbits,
            transitive,
            free,
            simply_transitive: transitive && free,
        }
    }

    /// Stabilizer of the 0-based point `a`.
    pub fn stabilizer(&self, a: usize) -> Result<PermGroup, PermError> {
        if a >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: a + 1,
                degree: self.degree,
            });
        }
        Ok(self.filter(|g| g.fixes(a)))
    }

    /// The subgroup of elements satisfying `keep`; the caller guarantees the
    /// selected set is closed.
    pub(crate) fn filter(&self, keep: impl Fn(&Perm) -> bool) -> PermGroup {
        let elements: Vec<Perm> = self.elements.iter().copied().filter(|g| keep(g)).collect();
        let gens = greedy_generators(self.degree, &elements);
        PermGroup {
            degree: self.degree,
            gens,
            elements,
        }
    }

    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup, PermError> {
        check_degree(self, other)?;
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small.filter(|g| big.contains(g)))
    }

    pub fn join(&self, other: &PermGroup) -> Result<PermGroup, PermError> {
        check_degree(self, other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied());
        PermGroup::generate(self.degree, &gens)
    }

    /// Adds one generator.
    pub fn join_element(&self, x: &Perm) -> Result<PermGroup, PermError> {
        if self.contains(x) {
            return Ok(self.clone());
        }
        let mut gens = self.gens.clone();
        gens.push(*x);
        PermGroup::generate(self.degree, &gens)
    }

    /// `σ G σ⁻¹`.
    pub fn conjugate(&self, sigma: &Perm) -> PermGroup {
        let inv = sigma.inverse();
        let mut elements: Vec<Perm> = self
            .elements
            .iter()
            .map(|g| sigma.compose(g).compose(&inv))
            .collect();
        elements.sort_unstable();
        let gens = self.gens.iter().map(|g| g.conjugate_by(sigma)).collect();
        PermGroup {
            degree: self.degree,
            gens,
            elements,
        }
    }

    /// Smallest normal subgroup of `self` containing `set`.
    pub fn normal_closure(&self, set: &[Perm]) -> Result<PermGroup, PermError> {
        let mut n = PermGroup::generate(self.degree, set)?;
        loop {
            let mut extra = None;
            'search: for x in &self.gens {
                for h in &n.gens {
                    let c = h.conjugate_by(x);
                    if !n.contains(&c) {
                        extra = Some(c);
                        break 'search;
                    }
                }
            }
            match extra {
                Some(c) => n = n.join_element(&c)?,
                None => return Ok(n),
            }
        }
    }

    /// Commutator subgroup, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup, PermError> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                comms.push(Perm::commutator(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    /// All elements of prime order.
    pub fn prime_order_elements(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter().filter(|g| is_prime(g.order()))
    }

    /// Short textual description: order and generators.
    pub fn describe(&self) -> String {
        if self.gens.is_empty() {
            return "order=1 gens=id".to_string();
        }
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("order={} gens={}", self.order(), gens.join(","))
    }
}

pub(crate) fn check_degree(a: &PermGroup, b: &PermGroup) -> Result<(), PermError> {
    if a.degree != b.degree {
        Err(PermError::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut by_order: Vec<(u64, Perm)> = elements
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| (g.order(), *g))
        .collect();
    by_order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    let mut current: HashSet<Perm> = HashSet::new();
    current.insert(Perm::identity(degree));
    for (_, g) in by_order {
        if current.len() == elements.len() {
            break;
        }
        if !current.contains(&g) {
            gens.push(g);
            let cl = closure(degree, &gens, usize::MAX).expect("unbounded closure");
            current = cl.into_iter().collect();
        }
    }
    gens
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree={}, {})", self.degree, self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(d: usize, gens: &[&str]) -> PermGroup {
        let ps: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, d).unwrap()).collect();
        PermGroup::generate(d, &ps).unwrap()
    }

    #[test]
    fn sym4_closure() {
        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(s4.order(), 24);
        assert!(s4.is_transitive());
        assert!(!s4.is_free());
        assert_eq!(s4.stabilizer(0).unwrap().order(), 6);
        for a in 0..4 {
            assert_eq!(s4.orbit(a).len() * s4.stabilizer(a).unwrap().order(), 24);
        }
    }

    #[test]
    fn orbits_of_transposition() {
        let t = g(4, &["(1 2)"]);
        let od = t.orbit_data();
        assert_eq!(od.orbits, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(!od.transitive);
    }

    #[test]
    fn cyclic_is_simply_transitive() {
        let c5 = g(5, &["(1 2 3 4 5)"]);
        let od = c5.orbit_data();
        assert!(od.transitive && od.free && od.simply_transitive);
        assert!(c5.stabilizer(0).unwrap().is_trivial());
    }

    #[test]
    fn derived_of_sym4_is_alt4() {
        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        let d = s4.derived_subgroup().unwrap();
        assert_eq!(d.order(), 12);
        assert!(d.elements().iter().all(|x| x.is_even()));
        assert!(d.is_normal_in(&s4));
    }

    #[test]
    fn limit_enforced() {
        let ps = [
            Perm::parse("(1 2)", 9).unwrap(),
            Perm::parse("(1 2 3 4 5 6 7 8 9)", 9).unwrap(),
        ];
        assert_eq!(
            PermGroup::generate(9, &ps),
            Err(PermError::TooLarge(DEFAULT_ORDER_LIMIT))
        );
    }

    #[test]
    fn greedy_generators_generate() {
        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        let st = s4.stabilizer(3).unwrap();
        let regen = PermGroup::generate(4, st.generators()).unwrap();
        assert_eq!(regen, st);
    }
}
