use std::collections::BTreeSet;
use std::fmt;

use super::{GffError, GroupPair};
use crate::perm::PermGroup;
use crate::portrait::Portrait;
use crate::tree::{complete_hull, CompleteSubtree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub in_uf: bool,
    pub in_gffp: bool,
    pub type_preserving: bool,
    /// `|S_0(g)|` even; only meaningful when `(F':F) = 2` and `g` is type-preserving.
    pub in_g0: Option<bool>,
    pub in_g1: Option<bool>,
    pub orbit_compatible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport {
    pub s: BTreeSet<Vertex>,
    pub s0: BTreeSet<Vertex>,
    pub s1: BTreeSet<Vertex>,
    /// Vertices whose local permutation lies outside the optional `F''`.
    pub sigma: Option<BTreeSet<Vertex>>,
    pub tminus: CompleteSubtree,
    pub n: usize,
}

/// Checks `g ∈ G(F,F')`: tails in `F`, internal permutations in `F'`.
fn check_member(p: &GroupPair, g: &Portrait) -> Result<(), GffError> {
    p.check_degree(g)?;
    for (x, t) in g.tail_perms() {
        if !p.f().contains(t) {
            return Err(GffError::NotInGroup(format!(
                "tail {} is {t}, outside F (infinitely many singularities)",
                x.literal()
            )));
        }
    }
    for (v, s) in g.internal_perms() {
        if !p.fp().contains(s) {
            return Err(GffError::NotInGroup(format!(
                "local permutation {s} at {} is outside F'",
                v.literal()
            )));
        }
    }
    Ok(())
}

fn singular_set(g: &Portrait, group: &PermGroup) -> BTreeSet<Vertex> {
    g.internal_perms()
        .iter()
        .filter(|(_, s)| !group.contains(s))
        .map(|(v, _)| v.clone())
        .collect()
}

pub fn singularity_report(
    p: &GroupPair,
    g: &Portrait,
    fpp: Option<&PermGroup>,
) -> Result<SingularityReport, GffError> {
    check_member(p, g)?;
    let s = singular_set(g, p.f());
    let (s0, s1): (BTreeSet<Vertex>, BTreeSet<Vertex>) =
        s.iter().cloned().partition(|v| v.parity() == 0);
    let ends = [
        Vertex::root(),
        Vertex::v1(),
        g.apply_inverse(&Vertex::root()),
        g.apply_inverse(&Vertex::v1()),
    ];
    let tminus = complete_hull(p.degree(), ends.iter().chain(s.iter()), s.iter());
    debug_assert!(g
        .internal_perms()
        .iter()
        .all(|(v, x)| tminus.internal().contains(v) || p.f().contains(x)));
    let sigma = fpp.map(|h| singular_set(g, h));
    let n = tminus.internal().len();
    Ok(SingularityReport {
        s,
        s0,
        s1,
        sigma,
        tminus,
        n,
    })
}

/// `N(g)`.
pub fn n_of(p: &GroupPair, g: &Portrait) -> Result<usize, GffError> {
    Ok(singularity_report(p, g, None)?.n)
}

pub fn membership_report(p: &GroupPair, g: &Portrait) -> Result<MembershipReport, GffError> {
    p.check_degree(g)?;
    let in_uf = g.all_perms().all(|s| p.f().contains(s));
    let in_gffp = check_member(p, g).is_ok();
    let type_preserving = g.root_image().len().is_multiple_of(2);
    let orbit_compatible = g.all_perms().all(|s| p.functors().young.contains(s));
    if in_gffp {
        assert!(
            orbit_compatible,
            "elements of G(F,F') preserve the F-orbits"
        );
    }
    let index_two = p.fp().order() == 2 * p.f().order();
    let (in_g0, in_g1) = if in_gffp && index_two && type_preserving {
        let s = singular_set(g, p.f());
        let odd = s.iter().filter(|v| v.parity() == 1).count();
        (Some((s.len() - odd).is_multiple_of(2)), Some(odd % 2 == 0))
    } else {
        (None, None)
    };
    Ok(MembershipReport {
        in_uf,
        in_gffp,
        type_preserving,
        in_g0,
        in_g1,
        orbit_compatible,
    })
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_flag(b: Option<bool>) -> &'static str {
    b.map_or("n/a", flag)
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "in_UF: {}", flag(self.in_uf))?;
        writeln!(f, "in_GFFp: {}", flag(self.in_gffp))?;
        writeln!(f, "type_preserving: {}", flag(self.type_preserving))?;
        writeln!(f, "in_G0: {}", opt_flag(self.in_g0))?;
        writeln!(f, "in_G1: {}", opt_flag(self.in_g1))?;
        writeln!(f, "orbit_compatible: {}", flag(self.orbit_compatible))
    }
}

fn vertex_list(s: &BTreeSet<Vertex>) -> String {
    let items: Vec<String> = s.iter().map(|v| v.literal()).collect();
    format!("[{}]", items.join(", "))
}

impl fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S: {}", vertex_list(&self.s))?;
        writeln!(f, "S0: {}", vertex_list(&self.s0))?;
        writeln!(f, "S1: {}", vertex_list(&self.s1))?;
        if let Some(sigma) = &self.sigma {
            writeln!(f, "Sigma: {}", vertex_list(sigma))?;
        }
        writeln!(
            f,
            "Tminus_internal: {}",
            vertex_list(self.tminus.internal())
        )?;
        writeln!(f, "N: {}", self.n)
    }
}
