//! Algorithms for the groups `G(F,F')`: membership and singularities, the
//! local extension construction, generator decompositions, simplicity
//! reductions with certificates, the word metric and the commensurated coset
//! family.

mod cocompact;
mod commensuration;
mod cosets;
mod decompose;
mod extend;
mod membership;
mod random;
mod simplicity;
mod word;

use std::sync::OnceLock;

use thiserror::Error;

use crate::perm::{Perm, PermError, PermGroup, SubgroupFunctors};
use crate::portrait::{Portrait, PortraitError};
use crate::tree::Vertex;

pub use cocompact::cocompact_reduce;
pub use commensuration::{
    check_commensuration_sample, conjugation_commensuration_check, random_u_fixing, t_of,
    SampleFailure,
};
pub use cosets::{coset_m, in_m_literal, symdiff_m, symdiff_m_oracle, CosetM};
pub use decompose::decompose_ku;
pub use extend::{extend_local, extend_star};
pub use membership::{
    membership_report, n_of, singularity_report, MembershipReport, SingularityReport,
};
pub use random::{random_element, random_type_preserving};
pub use simplicity::{
    gamma_uf, make_two_singular, reduce_simple, sigma_reduce, Certificate, CertificateStep,
    CommutatorFactor, CommutatorWord,
};
pub use word::{word_decompose, GenWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GffError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Portrait(#[from] PortraitError),
    #[error("standing assumption fails: {0}")]
    Standing(String),
    #[error("degree mismatch: pair has degree {pair}, element has degree {element}")]
    DegreeMismatch { pair: usize, element: usize },
    #[error("not in G(F,F'): {0}")]
    NotInGroup(String),
    #[error("F is not transitive")]
    NotTransitive,
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("no element of F sends colour {from} to colour {to}")]
    NoRouting { from: usize, to: usize },
    #[error(
        "{0} is not a product of commutators of point-stabilizer elements within the search bound"
    )]
    NotExpressible(String),
    #[error("vertices {0} and {1} are at odd distance")]
    OddDistance(String, String),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Default bound on the number of commutator factors searched by `gamma_uf`.
pub const DEFAULT_COMMUTATOR_BOUND: usize = 12;

/// `F ≤ F'` with `F' ≤ F̂`, together with the derived data every algorithm
/// needs.
#[derive(Debug, Clone)]
pub struct GroupPair {
    f: PermGroup,
    fp: PermGroup,
    functors: SubgroupFunctors,
    /// `routing[a][b]`: least element of `F` sending `a` to `b`, identity when `a = b`.
    routing: Vec<Vec<Option<Perm>>>,
    /// `σ_i` for colours `i = 1..d` (0-based), `None` unless `F` is transitive.
    translations: Option<Vec<Perm>>,
    commutator_bound: usize,
    commutators: OnceLock<Vec<(Perm, CommutatorWord)>>,
}

impl GroupPair {
    pub fn new(f: PermGroup, fp: PermGroup) -> Result<GroupPair, GffError> {
        if f.degree() != fp.degree() {
            return Err(PermError::DegreeMismatch {
                left: f.degree(),
                right: fp.degree(),
            }
            .into());
        }
        if !f.is_subgroup_of(&fp) {
            return Err(GffError::Standing("F is not contained in F'".into()));
        }
        let functors = SubgroupFunctors::compute(&f, &fp)?;
        if !functors.young.contains_group(&fp) {
            return Err(GffError::Standing(
                "F' does not preserve the orbits of F".into(),
            ));
        }
        let d = f.degree();
        let mut routing = vec![vec![None; d]; d];
        for x in f.elements() {
            for (a, row) in routing.iter_mut().enumerate() {
                let slot = &mut row[x.apply(a)];
                if slot.is_none() {
                    *slot = Some(*x);
                }
            }
        }
        for (a, row) in routing.iter_mut().enumerate() {
            row[a] = Some(Perm::identity(d));
        }
        let translations = if f.is_transitive() {
            Some(choose_translations(&f))
        } else {
            None
        };
        Ok(GroupPair {
            f,
            fp,
            functors,
            routing,
            translations,
            commutator_bound: DEFAULT_COMMUTATOR_BOUND,
            commutators: OnceLock::new(),
        })
    }

    pub fn from_specs(f: &str, fp: &str) -> Result<GroupPair, GffError> {
        GroupPair::new(
            crate::perm::construct_group(f)?,
            crate::perm::construct_group(fp)?,
        )
    }

    pub fn with_commutator_bound(mut self, bound: usize) -> GroupPair {
        self.commutator_bound = bound;
        self
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &PermGroup {
        &self.f
    }

    pub fn fp(&self) -> &PermGroup {
        &self.fp
    }

    pub fn functors(&self) -> &SubgroupFunctors {
        &self.functors
    }

    pub fn is_transitive(&self) -> bool {
        self.translations.is_some()
    }

    pub fn commutator_bound(&self) -> usize {
        self.commutator_bound
    }

    /// Least element of `F` sending colour `a` to colour `b`.
    pub fn route(&self, a: usize, b: usize) -> Result<Perm, GffError> {
        self.routing[a][b].ok_or(GffError::NoRouting {
            from: a + 1,
            to: b + 1,
        })
    }

    /// `σ_i` with `σ_i(0) = i`, for `i` in `1..d`.
    pub fn sigma(&self, i: usize) -> Result<Perm, GffError> {
        let t = self.translations.as_ref().ok_or(GffError::NotTransitive)?;
        Ok(t[i - 1])
    }

    /// `h_i`: all local permutations `σ_i`, `v₀ ↦ v₁`.
    pub fn translation(&self, i: usize) -> Result<Portrait, GffError> {
        Ok(Portrait::constant(self.sigma(i)?, Vertex::v1()))
    }

    /// The `i` whose `h_i⁻¹` sends `L(v₀)` onto `L(v₀·j)`, i.e. `σ_i(j) = 0`.
    pub fn translation_towards_v0_branch(&self, j: usize) -> Result<usize, GffError> {
        let t = self.translations.as_ref().ok_or(GffError::NotTransitive)?;
        Ok(t.iter()
            .position(|s| s.apply(j) == 0)
            .expect("matching is a bijection")
            + 1)
    }

    pub(crate) fn check_degree(&self, g: &Portrait) -> Result<(), GffError> {
        if g.degree() != self.degree() {
            return Err(GffError::DegreeMismatch {
                pair: self.degree(),
                element: g.degree(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_transitive(&self) -> Result<(), GffError> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(GffError::NotTransitive)
        }
    }
}

/// Picks `σ_i ∈ F` with `σ_i(0) = i` for every `i ≠ 0` such that
/// `i ↦ σ_i⁻¹(0)` is a bijection of the nonzero colours, preferring
/// lexicographically small elements. Such a choice exists because the
/// candidates for `i` form a suborbit of `F_0` paired with one of equal size.
fn choose_translations(f: &PermGroup) -> Vec<Perm> {
    let d = f.degree();
    // candidates[i]: for each j, least σ with σ(0) = i and σ(j) = 0.
    let mut candidates: Vec<Vec<Option<Perm>>> = vec![vec![None; d]; d];
    for x in f.elements() {
        let i = x.apply(0);
        if i == 0 {
            continue;
        }
        let j = x.inverse().apply(0);
        if candidates[i][j].is_none() {
            candidates[i][j] = Some(*x);
        }
    }
    // Kuhn's augmenting-path matching, colours in increasing order.
    let mut owner: Vec<Option<usize>> = vec![None; d];
    fn augment(
        i: usize,
        candidates: &[Vec<Option<Perm>>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        let mut js: Vec<usize> = (1..candidates.len())
            .filter(|&j| candidates[i][j].is_some())
            .collect();
        js.sort_by_key(|&j| candidates[i][j].unwrap());
        for j in js {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, candidates, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 1..d {
        let mut seen = vec![false; d];
        let ok = augment(i, &candidates, &mut owner, &mut seen);
        assert!(ok, "transitive group admits a translation matching");
    }
    let mut out = vec![Perm::identity(d); d - 1];
    for j in 1..d {
        let i = owner[j].expect("perfect matching");
        out[i - 1] = candidates[i][j].unwrap();
    }
    out
}
