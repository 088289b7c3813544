use std::collections::HashMap;

use super::decompose::transport;
use super::membership::singularity_report;
use super::{extend_star, GffError, GroupPair};
use crate::perm::{Perm, PermGroup};
use crate::portrait::Portrait;
use crate::tree::Vertex;

/// `ρ = ∏ [α_k, β_k]` with `α_k, β_k` fixing the point `a_k`, stored as
/// `(α_k, β_k, a_k)`.
pub type CommutatorWord = Vec<(Perm, Perm, usize)>;

/// `[g, h]` where `g`, `h` fix both ends of the edge of colour `color` at `vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorFactor {
    pub g: Portrait,
    pub h: Portrait,
    pub vertex: Vertex,
    pub color: usize,
}

/// One application of `gamma_uf`: `element = ∏ [g_k, h_k]` fixes `vertex` and
/// acts there as `rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateStep {
    pub vertex: Vertex,
    pub rho: Perm,
    pub element: Portrait,
    pub factors: Vec<CommutatorFactor>,
}

/// `γ_m ⋯ γ_1 · input = residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<CertificateStep>,
    pub residual: Portrait,
}

impl CommutatorFactor {
    pub fn value(&self) -> Result<Portrait, GffError> {
        Ok(self
            .g
            .compose(&self.h)?
            .compose(&self.g.inverse()?)?
            .compose(&self.h.inverse()?)?)
    }

    /// Both elements fix both ends of the named edge.
    pub fn fixes_edge(&self) -> bool {
        let other = self.vertex.neighbor(self.color);
        [&self.g, &self.h]
            .iter()
            .all(|x| x.fixes(&self.vertex) && x.fixes(&other))
    }
}

impl CertificateStep {
    pub fn verify(&self) -> Result<bool, GffError> {
        let mut acc = Portrait::identity(self.element.degree());
        for f in &self.factors {
            if !f.fixes_edge() || f.vertex != self.vertex {
                return Ok(false);
            }
            acc = acc.compose(&f.value()?)?;
        }
        Ok(acc == self.element
            && self.element.fixes(&self.vertex)
            && self.element.local(&self.vertex) == self.rho)
    }
}

impl Certificate {
    /// Re-multiplies every witness and the steps against `input`.
    pub fn verify(&self, input: &Portrait) -> Result<bool, GffError> {
        let mut acc = input.clone();
        for step in &self.steps {
            if !step.verify()? {
                return Ok(false);
            }
            acc = step.element.compose(&acc)?;
        }
        Ok(acc == self.residual)
    }
}

/// Breadth-first table of shortest commutator words over `⟨[F'_a, F'_a]⟩`.
pub(crate) fn commutator_table(
    fp: &PermGroup,
    bound: usize,
) -> Result<Vec<(Perm, CommutatorWord)>, GffError> {
    let d = fp.degree();
    let mut letters: Vec<(Perm, (Perm, Perm, usize))> = Vec::new();
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    for a in 0..d {
        let st = fp.stabilizer(a)?;
        for x in st.elements() {
            for y in st.elements() {
                let c = Perm::commutator(x, y);
                if !c.is_identity() && seen.insert(c, ()).is_none() {
                    letters.push((c, (*x, *y, a)));
                }
            }
        }
    }
    let id = Perm::identity(d);
    let mut words: HashMap<Perm, CommutatorWord> = HashMap::new();
    words.insert(id, Vec::new());
    let mut layer = vec![id];
    for _ in 0..bound {
        let mut next = Vec::new();
        for x in &layer {
            for (c, w) in &letters {
                let y = x.compose(c);
                if !words.contains_key(&y) {
                    let mut word = words[x].clone();
                    word.push(*w);
                    words.insert(y, word);
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let mut out: Vec<(Perm, CommutatorWord)> = words.into_iter().collect();
    out.sort_by_key(|a| a.0);
    Ok(out)
}

impl GroupPair {
    /// A shortest expression of `rho` as a product of commutators of
    /// point-stabilizer elements of `F'`.
    pub fn commutator_word(&self, rho: &Perm) -> Result<CommutatorWord, GffError> {
        if let Some(t) = self.commutators.get() {
            return lookup(t, rho);
        }
        let t = commutator_table(self.fp(), self.commutator_bound())?;
        let t = self.commutators.get_or_init(|| t);
        lookup(t, rho)
    }
}

fn lookup(t: &[(Perm, CommutatorWord)], rho: &Perm) -> Result<CommutatorWord, GffError> {
    t.binary_search_by(|(p, _)| p.cmp(rho))
        .map(|i| t[i].1.clone())
        .map_err(|_| GffError::NotExpressible(rho.to_string()))
}

/// An element fixing `v`, acting as `rho` at `v` and locally in `F`
/// everywhere else, built as a product of commutators of star extensions.
pub fn gamma_uf(p: &GroupPair, rho: &Perm, v: &Vertex) -> Result<CertificateStep, GffError> {
    let word = p.commutator_word(rho)?;
    let mut element = Portrait::identity(p.degree());
    let mut factors = Vec::new();
    for (alpha, beta, a) in word {
        let g = extend_star(p, v, alpha, v)?;
        let h = extend_star(p, v, beta, v)?;
        let f = CommutatorFactor {
            g,
            h,
            vertex: v.clone(),
            color: a,
        };
        element = element.compose(&f.value()?)?;
        factors.push(f);
    }
    Ok(CertificateStep {
        vertex: v.clone(),
        rho: *rho,
        element,
        factors,
    })
}

/// Cancels singularities one at a time with `gamma_uf` until the element
/// lies in `U(F)`; requires `F` transitive, `F' = ⟨[F'_a,F'_a] ∪ F_a⟩` and a
/// type-preserving input.
pub fn reduce_simple(p: &GroupPair, g: &Portrait) -> Result<Certificate, GffError> {
    p.check_transitive()?;
    if p.fp() != &p.functors().mixed_closure {
        return Err(GffError::Hypothesis(
            "F' is not generated by [F'_a,F'_a] and F_a".into(),
        ));
    }
    if g.root_image().len() % 2 == 1 {
        return Err(GffError::Hypothesis(
            "element is not type-preserving".into(),
        ));
    }
    let bound = singularity_report(p, g, None)?.s.len();
    let closure = &p.functors().derived_stab_closure;
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        let report = singularity_report(p, &cur, None)?;
        let Some(v) = report.s.iter().next() else {
            break;
        };
        let sigma = cur.local(v);
        let rho = closure
            .elements()
            .iter()
            .find(|r| p.f().contains(&r.compose(&sigma)))
            .copied()
            .ok_or_else(|| GffError::Hypothesis(format!("no ρ cancels {sigma}")))?;
        let step = gamma_uf(p, &rho, &cur.apply(v))?;
        cur = step.element.compose(&cur)?;
        steps.push(step);
        if steps.len() > bound {
            return Err(GffError::Verification(
                "singularity count did not decrease".into(),
            ));
        }
    }
    Ok(Certificate {
        steps,
        residual: cur,
    })
}

fn check_intermediate(p: &GroupPair, fpp: &PermGroup) -> Result<(), GffError> {
    if !(p.f().is_subgroup_of(fpp)
        && fpp.is_subgroup_of(p.fp())
        && 2 * fpp.order() == p.fp().order())
    {
        return Err(GffError::Hypothesis(
            "F'' must contain F and have index 2 in F'".into(),
        ));
    }
    Ok(())
}

/// `γ = [g₂, g₁]` with `Σ(γ) = {v, w}`: `g₁` fixes `v` with `Σ(g₁) = {v}` and
/// `g₂ ∈ U({1})` sends `v` to `g₁⁻¹(w)`.
pub fn make_two_singular(
    p: &GroupPair,
    fpp: &PermGroup,
    v: &Vertex,
    w: &Vertex,
) -> Result<Portrait, GffError> {
    check_intermediate(p, fpp)?;
    if v == w || v.distance(w) % 2 == 1 {
        return Err(GffError::OddDistance(v.literal(), w.literal()));
    }
    let sigma = *p
        .fp()
        .elements()
        .iter()
        .find(|s| !fpp.contains(s))
        .expect("index 2");
    let g1 = extend_star(p, v, sigma, v)?;
    let g1_inv = g1.inverse()?;
    let g2 = transport(p.degree(), v, &g1_inv.apply(w));
    let gamma = g2.compose(&g1)?.compose(&g2.inverse()?)?.compose(&g1_inv)?;
    let sig = singularity_report(p, &gamma, Some(fpp))?
        .sigma
        .expect("F'' given");
    let want = [v.clone(), w.clone()].into_iter().collect();
    if sig != want {
        return Err(GffError::Verification(format!(
            "Σ(γ) has {} vertices",
            sig.len()
        )));
    }
    Ok(gamma)
}

/// Pairs off `Σ`-singularities at even distance with `make_two_singular`.
/// Returns the elements `γ_k` used (applied on the left, in order) and the
/// residual `γ_m ⋯ γ_1 · g`. The residual has empty `Σ` exactly when every
/// parity class of `Σ(g)` has even size.
pub fn sigma_reduce(
    p: &GroupPair,
    fpp: &PermGroup,
    g: &Portrait,
) -> Result<(Vec<Portrait>, Portrait), GffError> {
    check_intermediate(p, fpp)?;
    let mut cur = g.clone();
    let mut gammas = Vec::new();
    loop {
        let sig = singularity_report(p, &cur, Some(fpp))?
            .sigma
            .expect("F'' given");
        let pair = sig.iter().enumerate().find_map(|(i, x)| {
            sig.iter()
                .skip(i + 1)
                .find(|y| x.distance(y) % 2 == 0)
                .map(|y| (x.clone(), y.clone()))
        });
        let Some((x1, x2)) = pair else { break };
        let gamma = make_two_singular(p, fpp, &cur.apply(&x1), &cur.apply(&x2))?;
        cur = gamma.compose(&cur)?;
        gammas.push(gamma);
    }
    Ok((gammas, cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gff::membership_report;
    use crate::perm::construct_group;

    #[test]
    fn gamma_uf_identity() {
        let p = GroupPair::from_specs("dihedral(4)", "sym(4)").unwrap();
        let step = gamma_uf(&p, &Perm::identity(4), &Vertex::root()).unwrap();
        assert!(step.element.is_identity());
        assert!(step.factors.is_empty());
    }

    #[test]
    fn gamma_uf_three_cycle() {
        let p = GroupPair::from_specs("dihedral(4)", "sym(4)").unwrap();
        let rho = Perm::parse("(1 3 2)", 4).unwrap();
        let step = gamma_uf(&p, &rho, &Vertex::root()).unwrap();
        assert_eq!(step.element.local(&Vertex::root()), rho);
        assert!(step.verify().unwrap());
        let r = singularity_report(&p, &step.element, None).unwrap();
        assert!(r.s.iter().all(|v| v.is_root()));
        let q = GroupPair::from_specs("cyclic(5)", "alt(5)").unwrap();
        let v = Vertex::from_word(&[2, 0]).unwrap();
        let step = gamma_uf(&q, &Perm::parse("(2 3 4)", 5).unwrap(), &v).unwrap();
        assert!(step.verify().unwrap());
    }

    #[test]
    fn odd_permutation_not_expressible() {
        let p = GroupPair::from_specs("dihedral(4)", "sym(4)").unwrap();
        assert!(matches!(
            gamma_uf(&p, &Perm::parse("(1 2)", 4).unwrap(), &Vertex::root()),
            Err(GffError::NotExpressible(_))
        ));
    }

    #[test]
    fn reduce_single_singularity() {
        let p = GroupPair::from_specs("dihedral(4)", "sym(4)").unwrap();
        let g = extend_star(
            &p,
            &Vertex::root(),
            Perm::parse("(1 2 3)", 4).unwrap(),
            &Vertex::root(),
        )
        .unwrap();
        let cert = reduce_simple(&p, &g).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(membership_report(&p, &cert.residual).unwrap().in_uf);
        assert!(cert.verify(&g).unwrap());
    }

    #[test]
    fn reduce_rejects_bad_hypotheses() {
        let p = GroupPair::from_specs("cyclic(4)", "sym(4)").unwrap();
        assert!(matches!(
            reduce_simple(&p, &Portrait::identity(4)),
            Err(GffError::Hypothesis(_))
        ));
        let q = GroupPair::from_specs("dihedral(4)", "sym(4)").unwrap();
        let h2 = q.translation(1).unwrap();
        assert!(matches!(
            reduce_simple(&q, &h2),
            Err(GffError::Hypothesis(_))
        ));
    }

    #[test]
    fn two_singular_example() {
        let p = GroupPair::from_specs("alt(4)", "sym(4)").unwrap();
        let fpp = construct_group("alt(4)").unwrap();
        let w = Vertex::from_word(&[0, 1]).unwrap();
        let gamma = make_two_singular(&p, &fpp, &Vertex::root(), &w).unwrap();
        let (gammas, residual) = sigma_reduce(&p, &fpp, &gamma).unwrap();
        assert_eq!(gammas.len(), 1);
        assert!(singularity_report(&p, &residual, Some(&fpp))
            .unwrap()
            .sigma
            .unwrap()
            .is_empty());
        let (none, same) = sigma_reduce(&p, &fpp, &Portrait::identity(4)).unwrap();
        assert!(none.is_empty());
        assert!(same.is_identity());
        assert!(make_two_singular(&p, &fpp, &Vertex::root(), &Vertex::v1()).is_err());
    }
}
