use std::fmt;

use super::CriteriaError;
use crate::perm::{product_set_equals, PermError, PermGroup};

/// How `G(F,F')` sits inside `G(H,H')` for `F ≤ H`, `F' ≤ H'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// `H_a ≤ F` for every point `a`.
    pub open: bool,
    /// `H ∩ F' = F`.
    pub closed: bool,
    /// `H ∩ F'` acts freely.
    pub discrete: bool,
    /// `H' = H·F'`.
    pub cocompact: bool,
    /// Closed, cocompact and `F` free.
    pub cocompact_lattice: bool,
    /// Closed and `F` transitive.
    pub qi_embedded: bool,
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "open: {}", yn(self.open))?;
        writeln!(f, "closed: {}", yn(self.closed))?;
        writeln!(f, "discrete: {}", yn(self.discrete))?;
        writeln!(f, "cocompact: {}", yn(self.cocompact))?;
        writeln!(f, "cocompact_lattice: {}", yn(self.cocompact_lattice))?;
        writeln!(f, "qi_embedded: {}", yn(self.qi_embedded))
    }
}

pub fn embedding_report(
    f: &PermGroup,
    fp: &PermGroup,
    h: &PermGroup,
    hp: &PermGroup,
) -> Result<EmbeddingReport, CriteriaError> {
    let d = f.degree();
    for g in [fp, h, hp] {
        if g.degree() != d {
            return Err(PermError::DegreeMismatch {
                left: d,
                right: g.degree(),
            }
            .into());
        }
    }
    for (a, b, what) in [
        (f, fp, "F in F'"),
        (h, hp, "H in H'"),
        (f, h, "F in H"),
        (fp, hp, "F' in H'"),
    ] {
        if !a.is_subgroup_of(b) {
            return Err(CriteriaError::Containment(what.into()));
        }
    }
    let mut open = true;
    for a in 0..d {
        open &= h.stabilizer(a)?.is_subgroup_of(f);
    }
    let meet = h.intersection(fp)?;
    let closed = meet == *f;
    let discrete = meet.is_free();
    let cocompact = product_set_equals(h, fp, hp)?;
    Ok(EmbeddingReport {
        open,
        closed,
        discrete,
        cocompact,
        cocompact_lattice: closed && cocompact && f.is_free(),
        qi_embedded: closed && f.is_transitive(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::construct_group;

    fn grp(s: &str) -> PermGroup {
        construct_group(s).unwrap()
    }

    #[test]
    fn affine_inside_alt_sym() {
        let r = embedding_report(
            &grp("agl_sq(1,5)"),
            &grp("agl(1,5)"),
            &grp("alt(5)"),
            &grp("sym(5)"),
        )
        .unwrap();
        assert!(r.closed && r.cocompact && r.qi_embedded);
        assert!(!r.cocompact_lattice && !r.discrete && !r.open);
    }

    #[test]
    fn equal_pairs() {
        let (f, fp) = (grp("dihedral(4)"), grp("sym(4)"));
        let r = embedding_report(&f, &fp, &f, &fp).unwrap();
        assert!(r.open && r.closed && r.cocompact);
    }

    #[test]
    fn cyclic_in_dihedral_seven() {
        let r = embedding_report(
            &grp("cyclic(7)"),
            &grp("alt(7)"),
            &grp("dihedral(7)"),
            &grp("sym(7)"),
        )
        .unwrap();
        assert!(r.closed && r.cocompact && r.discrete && r.cocompact_lattice);
    }

    #[test]
    fn containment_errors() {
        let e = embedding_report(
            &grp("sym(4)"),
            &grp("sym(4)"),
            &grp("alt(4)"),
            &grp("sym(4)"),
        );
        assert!(matches!(e, Err(CriteriaError::Containment(_))));
    }
}
