use std::collections::BTreeSet;

use super::group::check_degree;
use super::{young_from_blocks, Perm, PermError, PermGroup};

/// Subgroups derived from a pair `F ≤ F'`.
#[derive(Debug, Clone)]
pub struct SubgroupFunctors {
    /// `F⁺`, generated by the point stabilizers of `F`.
    pub f_plus: PermGroup,
    /// `⟨[F'_a, F'_a] : a⟩`.
    pub derived_stab_closure: PermGroup,
    /// `⟨[F'_a, F'_a] ∪ F_a : a⟩`.
    pub mixed_closure: PermGroup,
    /// `F̂`, the product of the symmetric groups on the `F`-orbits, stored as
    /// the orbit index of each point since it can exceed the order limit.
    pub young: YoungClosure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungClosure {
    orbit_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl YoungClosure {
    pub fn new(f: &PermGroup) -> YoungClosure {
        let orbits = f.orbits();
        let mut orbit_of = vec![0; f.degree()];
        for (i, o) in orbits.iter().enumerate() {
            for &a in o {
                orbit_of[a] = i;
            }
        }
        YoungClosure {
            orbit_of,
            sizes: orbits.iter().map(Vec::len).collect(),
        }
    }

    pub fn contains(&self, x: &Perm) -> bool {
        (0..self.orbit_of.len()).all(|a| self.orbit_of[x.apply(a)] == self.orbit_of[a])
    }

    pub fn contains_group(&self, g: &PermGroup) -> bool {
        g.generators().iter().all(|x| self.contains(x))
    }

    pub fn order(&self) -> u128 {
        self.sizes
            .iter()
            .map(|&n| (1..=n as u128).product::<u128>())
            .product()
    }

    pub fn group(&self) -> Result<PermGroup, PermError> {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); self.sizes.len()];
        for (a, &i) in self.orbit_of.iter().enumerate() {
            blocks[i].push(a);
        }
        young_from_blocks(self.orbit_of.len(), &blocks)
    }
}

fn require_subgroup(h: &PermGroup, g: &PermGroup, what: &str) -> Result<(), PermError> {
    check_degree(h, g)?;
    if !h.is_subgroup_of(g) {
        return Err(PermError::NotSubgroup(format!("{what} is not a subgroup")));
    }
    Ok(())
}

impl SubgroupFunctors {
    pub fn compute(f: &PermGroup, fp: &PermGroup) -> Result<SubgroupFunctors, PermError> {
        require_subgroup(f, fp, "F in F'")?;
        let d = f.degree();
        let mut stab_gens = Vec::new();
        let mut derived_gens = Vec::new();
        for a in 0..d {
            stab_gens.extend_from_slice(f.stabilizer(a)?.generators());
            derived_gens.extend_from_slice(fp.stabilizer(a)?.derived_subgroup()?.generators());
        }
        let f_plus = PermGroup::generate(d, &stab_gens)?;
        let derived_stab_closure = PermGroup::generate(d, &derived_gens)?;
        let mut mixed_gens = derived_gens;
        mixed_gens.extend(stab_gens);
        let mixed_closure = PermGroup::generate(d, &mixed_gens)?;
        let young = YoungClosure::new(f);
        Ok(SubgroupFunctors {
            f_plus,
            derived_stab_closure,
            mixed_closure,
            young,
        })
    }
}

/// `N_G(H)` by checking every element of `G` against the generators of `H`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup, PermError> {
    require_subgroup(h, g, "H in G")?;
    Ok(g.filter(|x| {
        h.generators()
            .iter()
            .all(|y| h.contains(&y.conjugate_by(x)))
    }))
}

/// Whether `H·F' = H'`, via `|HF'| = |H||F'| / |H ∩ F'|`.
pub fn product_set_equals(
    h: &PermGroup,
    fp: &PermGroup,
    hp: &PermGroup,
) -> Result<bool, PermError> {
    check_degree(h, hp)?;
    check_degree(fp, hp)?;
    require_subgroup(h, hp, "H in H'")?;
    require_subgroup(fp, hp, "F' in H'")?;
    let inter = h.intersection(fp)?;
    Ok(h.order() * fp.order() / inter.order() == hp.order())
}

/// The set `{h f}` enumerated pair by pair.
pub fn product_set_literal(h: &PermGroup, fp: &PermGroup) -> Result<BTreeSet<Perm>, PermError> {
    check_degree(h, fp)?;
    let mut out = BTreeSet::new();
    for x in h.elements() {
        for y in fp.elements() {
            out.insert(x.compose(y));
        }
    }
    Ok(out)
}

/// `D` contains every element of prime order of `D'`.
pub fn is_essential(d: &PermGroup, dp: &PermGroup) -> Result<bool, PermError> {
    require_subgroup(d, dp, "D in D'")?;
    Ok(dp.prime_order_elements().all(|x| d.contains(x)))
}

/// `D` meets every nontrivial cyclic subgroup of `D'` nontrivially.
pub fn is_essential_by_cyclic_subgroups(d: &PermGroup, dp: &PermGroup) -> Result<bool, PermError> {
    require_subgroup(d, dp, "D in D'")?;
    Ok(dp.elements().iter().filter(|x| !x.is_identity()).all(|x| {
        let ord = x.order();
        (1..ord).any(|k| d.contains(&x.pow(k)))
    }))
}
