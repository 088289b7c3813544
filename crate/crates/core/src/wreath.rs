//! Exact arithmetic for infinitely iterated imprimitive wreath products
//! `L(D,D')` with blocks of size `ℓ`.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::gff::GroupPair;
use crate::perm::{imprimitive_wreath, is_essential, Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("block size must be at least 2, got {0}")]
    BlockSize(usize),
    #[error("D is not a subgroup of D'")]
    NotSubgroup,
    #[error("F is not transitive")]
    NotTransitive,
}

/// `D ≤ D'` with block size `ℓ`. Only the orders and the inclusion matter, so
/// the groups may act on a set larger than the block.
#[derive(Debug, Clone)]
pub struct WreathContext {
    ell: usize,
    d: PermGroup,
    dp: PermGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport {
    pub n: usize,
    /// `μ(U_{n+1})`.
    pub mu_u: BigRational,
    /// `μ(K_n)`.
    pub mu_k: BigRational,
    pub diverges: bool,
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub found: bool,
    pub dp: Option<PermGroup>,
    /// Number of intermediate groups `F_a ≤ D' ≤ F'_a` examined.
    pub examined: usize,
}

impl WreathContext {
    pub fn new(ell: usize, d: PermGroup, dp: PermGroup) -> Result<WreathContext, WreathError> {
        if ell < 2 {
            return Err(WreathError::BlockSize(ell));
        }
        if d.degree() != dp.degree() || !d.is_subgroup_of(&dp) {
            return Err(WreathError::NotSubgroup);
        }
        Ok(WreathContext { ell, d, dp })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn d(&self) -> &PermGroup {
        &self.d
    }

    pub fn dp(&self) -> &PermGroup {
        &self.dp
    }

    /// `|D'|^{ℓ-1} > |D|^ℓ`.
    pub fn diverges(&self) -> bool {
        let d = BigUint::from(self.d.order());
        let dp = BigUint::from(self.dp.order());
        Pow::pow(&dp, self.ell - 1) > Pow::pow(&d, self.ell)
    }
}

fn ell_pow(ell: usize, n: usize) -> BigUint {
    Pow::pow(BigUint::from(ell), n)
}

/// `(ℓ^n - 1)/(ℓ - 1)`, the number of vertices above level `n`.
fn geometric(ell: usize, n: usize) -> BigUint {
    (ell_pow(ell, n) - 1u32) / BigUint::from(ell - 1)
}

fn pow_big(base: usize, exp: &BigUint) -> BigUint {
    let mut out = BigUint::one();
    let b = BigUint::from(base);
    for _ in num_iter(exp) {
        out *= &b;
    }
    out
}

fn num_iter(n: &BigUint) -> impl Iterator<Item = ()> {
    let k: u64 = n.try_into().expect("exponent fits in u64");
    (0..k).map(|_| ())
}

/// `|W_n(D)| = |D|^{(ℓ^n-1)/(ℓ-1)}`.
pub fn iterated_order(d: &PermGroup, ell: usize, n: usize) -> BigUint {
    pow_big(d.order(), &geometric(ell, n))
}

/// `|W_n(D)|` by building the iterated wreath product on `ℓ^n` points, when
/// `D` acts on exactly `ℓ` points and the result fits.
pub fn literal_iterated_order(d: &PermGroup, n: usize) -> Result<Option<usize>, PermError> {
    if n == 0 {
        return Ok(Some(1));
    }
    let mut w = d.clone();
    for _ in 1..n {
        w = match imprimitive_wreath(&w, d) {
            Ok(w) => w,
            Err(PermError::DegreeOutOfRange(_) | PermError::TooLarge(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
    }
    Ok(Some(w.order()))
}

/// Order of `ℓ^n` independent copies of `D'`, built as a permutation group
/// for `n ≤ 1`; compared against `μ(K_n)·|W_{n+1}(D)|`.
pub fn literal_level_order(ctx: &WreathContext, n: usize) -> Result<Option<usize>, PermError> {
    match n {
        0 => Ok(Some(ctx.dp.order())),
        1 => {
            let top = PermGroup::trivial(ctx.ell);
            match imprimitive_wreath(&ctx.dp, &top) {
                Ok(g) => Ok(Some(g.order())),
                Err(PermError::DegreeOutOfRange(_) | PermError::TooLarge(_)) => Ok(None),
                Err(e) => Err(e),
            }
        }
        _ => Ok(None),
    }
}

pub fn haar_measures(ctx: &WreathContext, n: usize) -> MeasureReport {
    let w = iterated_order(&ctx.d, ctx.ell, n + 1);
    let mu_u = BigRational::new(BigInt::one(), BigInt::from(w));
    let top = pow_big(ctx.dp.order(), &ell_pow(ctx.ell, n));
    let mu_k = &mu_u * BigRational::from_integer(BigInt::from(top));
    MeasureReport {
        n,
        mu_u,
        mu_k,
        diverges: ctx.diverges(),
    }
}

/// `D` essential in `D'` and `|D'| < (D':D)^ℓ`.
pub fn lattice_obstruction(ctx: &WreathContext) -> Result<bool, WreathError> {
    if !is_essential(&ctx.d, &ctx.dp)? {
        return Ok(false);
    }
    let index = BigUint::from(ctx.dp.order() / ctx.d.order());
    Ok(BigUint::from(ctx.dp.order()) < Pow::pow(&index, ctx.ell))
}

/// Searches the groups `F_a ≤ D' ≤ F'_a` for one with a lattice obstruction,
/// with block size `d - 1`. Groups are tried in increasing order.
pub fn obstruction_for_pair(p: &GroupPair, a: usize) -> Result<ObstructionReport, WreathError> {
    if !p.is_transitive() {
        return Err(WreathError::NotTransitive);
    }
    obstruction_for_groups(p.f(), p.fp(), a)
}

/// `obstruction_for_pair` without building the pair. Only groups in which
/// `F_a` is essential are enumerated: they are generated over `F_a` by
/// elements whose prime-order powers lie in `F_a`, and every group between
/// `F_a` and such a group is again one of them.
pub fn obstruction_for_groups(
    f: &PermGroup,
    fp: &PermGroup,
    a: usize,
) -> Result<ObstructionReport, WreathError> {
    if !f.is_transitive() {
        return Err(WreathError::NotTransitive);
    }
    if f.degree() != fp.degree() || !f.is_subgroup_of(fp) {
        return Err(WreathError::NotSubgroup);
    }
    let fa = f.stabilizer(a)?;
    let fpa = fp.stabilizer(a)?;
    let candidates = essential_overgroups(&fa, &fpa)?;
    let ell = f.degree() - 1;
    for (k, dp) in candidates.iter().enumerate() {
        let ctx = WreathContext::new(ell, fa.clone(), dp.clone())?;
        if lattice_obstruction(&ctx)? {
            return Ok(ObstructionReport {
                found: true,
                dp: Some(dp.clone()),
                examined: k + 1,
            });
        }
    }
    Ok(ObstructionReport {
        found: false,
        dp: None,
        examined: candidates.len(),
    })
}

fn prime_powers_in(x: &Perm, d: &PermGroup) -> bool {
    let ord = x.order();
    (2..=ord)
        .filter(|p| ord.is_multiple_of(*p) && is_prime(*p))
        .all(|p| d.contains(&x.pow(ord / p)))
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

/// Groups `D'` with `D ≤ D' ≤ G` and `D` essential in `D'`, sorted by order.
pub fn essential_overgroups(d: &PermGroup, g: &PermGroup) -> Result<Vec<PermGroup>, WreathError> {
    if d.degree() != g.degree() || !d.is_subgroup_of(g) {
        return Err(WreathError::NotSubgroup);
    }
    let good: Vec<Perm> = g
        .elements()
        .iter()
        .filter(|x| !d.contains(x) && prime_powers_in(x, d))
        .copied()
        .collect();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    seen.insert(d.elements().to_vec());
    let mut found = vec![d.clone()];
    let mut head = 0;
    while head < found.len() {
        let h = found[head].clone();
        head += 1;
        for x in &good {
            if h.contains(x) {
                continue;
            }
            let j = h.join_element(x)?;
            if !seen.contains(j.elements()) && is_essential(d, &j)? {
                seen.insert(j.elements().to_vec());
                found.push(j);
            }
        }
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::construct_group;

    fn grp(s: &str) -> PermGroup {
        construct_group(s).unwrap()
    }

    fn ctx(ell: usize, d: &str, dp: &str) -> WreathContext {
        WreathContext::new(ell, grp(d), grp(dp)).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn orders() {
        let c2 = grp("cyclic(2)");
        assert_eq!(iterated_order(&c2, 4, 2), BigUint::from(32u32));
        assert_eq!(iterated_order(&grp("sym(5)"), 4, 0), BigUint::one());
        assert_eq!(iterated_order(&c2, 2, 3), BigUint::from(128u32));
        assert_eq!(literal_iterated_order(&c2, 3).unwrap(), Some(128));
        assert_eq!(
            literal_iterated_order(&grp("cyclic(4)"), 2).unwrap(),
            Some(4usize.pow(5))
        );
    }

    #[test]
    fn measures_c2_c4() {
        let c = ctx(4, "gens(4, (1 3)(2 4))", "cyclic(4)");
        let m0 = haar_measures(&c, 0);
        assert_eq!(m0.mu_u, rat(1, 2));
        assert_eq!(m0.mu_k, rat(2, 1));
        assert_eq!(haar_measures(&c, 1).mu_k, rat(8, 1));
        assert!(c.diverges());
        assert!(lattice_obstruction(&c).unwrap());
    }

    #[test]
    fn measures_match_closed_form() {
        // μ(K_n)^{ℓ-1} = |D| · (|D'|^{ℓ-1}/|D|^ℓ)^{ℓ^n}
        for (ell, d, dp) in [
            (4, "gens(4, (1 3)(2 4))", "cyclic(4)"),
            (5, "agl_sq(1,5)", "agl(1,5)"),
            (3, "alt(3)", "sym(3)"),
        ] {
            let c = ctx(ell, d, dp);
            let (od, odp) = (BigInt::from(c.d.order()), BigInt::from(c.dp.order()));
            let ratio = BigRational::new(Pow::pow(&odp, ell - 1), Pow::pow(&od, ell));
            for n in 0..4 {
                let lhs = Pow::pow(&haar_measures(&c, n).mu_k, ell - 1);
                let rhs =
                    BigRational::from_integer(od.clone()) * Pow::pow(&ratio, ell.pow(n as u32));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn level_orders_match_literal() {
        let c = ctx(4, "gens(4, (1 3)(2 4))", "cyclic(4)");
        for n in 0..2 {
            let m = haar_measures(&c, n);
            let w = BigInt::from(iterated_order(&c.d, 4, n + 1));
            let lit = literal_level_order(&c, n).unwrap().unwrap();
            assert_eq!(
                m.mu_k * BigRational::from_integer(w),
                BigRational::from_integer(lit.into())
            );
        }
    }

    #[test]
    fn equal_groups_never_diverge() {
        let c = ctx(4, "dihedral(4)", "dihedral(4)");
        assert!(!c.diverges());
        // μ(K_n) = |D|^{-(ℓ^n-1)/(ℓ-1)}: decreasing, not constant.
        assert_eq!(haar_measures(&c, 0).mu_k, rat(1, 1));
        assert_eq!(haar_measures(&c, 1).mu_k, rat(1, 8));
        assert!(!lattice_obstruction(&c).unwrap());
    }

    #[test]
    fn divergence_matches_growth() {
        for (ell, d, dp) in [
            (4, "gens(4, (1 3)(2 4))", "cyclic(4)"),
            (4, "dihedral(4)", "sym(4)"),
            (3, "alt(3)", "sym(3)"),
            (5, "agl_sq(1,5)", "agl(1,5)"),
            (2, "cyclic(2)", "cyclic(2)"),
        ] {
            let c = ctx(ell, d, dp);
            for n in 1..6 {
                let grows = haar_measures(&c, n + 1).mu_k > haar_measures(&c, n).mu_k;
                assert_eq!(grows, c.diverges(), "{d} {dp} {n}");
            }
        }
    }

    #[test]
    fn essentiality_failure() {
        let c = ctx(4, "gens(4, (1 2))", "gens(4, (1 2), (3 4))");
        assert!(!lattice_obstruction(&c).unwrap());
    }

    #[test]
    fn pair_obstructions() {
        let p = GroupPair::from_specs("psl2(5)", "pgl2(5)").unwrap();
        let r = obstruction_for_pair(&p, 5).unwrap();
        assert!(r.found);
        assert_eq!(r.dp.unwrap().order(), 20);
        let q = GroupPair::from_specs("agl_sq(1,5)", "agl(1,5)").unwrap();
        let r = obstruction_for_pair(&q, 0).unwrap();
        assert_eq!(r.dp.unwrap(), q.fp().stabilizer(0).unwrap());
        let same = GroupPair::from_specs("sym(4)", "sym(4)").unwrap();
        assert!(!obstruction_for_pair(&same, 0).unwrap().found);
    }

    #[test]
    fn essential_overgroups_match_brute_force() {
        use crate::perm::subgroups_containing;
        for (f, fp, a) in [
            ("psl2(5)", "pgl2(5)", 5),
            ("agl_sq(1,5)", "agl(1,5)", 0),
            ("dihedral(4)", "sym(4)", 0),
            ("cyclic(5)", "sym(5)", 0),
        ] {
            let (f, fp) = (grp(f), grp(fp));
            let (fa, fpa) = (f.stabilizer(a).unwrap(), fp.stabilizer(a).unwrap());
            let fast = essential_overgroups(&fa, &fpa).unwrap();
            let slow: Vec<PermGroup> = subgroups_containing(&fpa, &fa)
                .unwrap()
                .into_iter()
                .filter(|h| is_essential(&fa, h).unwrap())
                .collect();
            assert_eq!(fast.len(), slow.len());
            assert!(fast
                .iter()
                .zip(&slow)
                .all(|(x, y)| x.elements() == y.elements()));
        }
    }
}
