//! Subgroup enumeration by repeated joins with cyclic subgroups.
//!
//! Every subgroup is generated by its cyclic subgroups, so closing the set
//! `{base}` under "join with one cyclic subgroup" reaches every subgroup that
//! contains `base`.

use std::collections::{HashMap, HashSet};

use super::group::check_degree;
use super::{lcm, Perm, PermError, PermGroup};

/// The distinct cyclic subgroups of `g`, sorted by order then elements.
pub fn cyclic_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    let mut covered: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        let ord = x.order();
        let mut y = g.identity();
        for k in 0..ord {
            if super::gcd(k, ord) == 1 {
                covered.insert(y);
            }
            y = y.compose(x);
        }
        let h = if x.is_identity() {
            PermGroup::trivial(g.degree())
        } else {
            PermGroup::generate(g.degree(), &[*x]).expect("cyclic subgroup fits")
        };
        out.push(h);
    }
    sort_groups(&mut out);
    out
}

fn sort_groups(v: &mut [PermGroup]) {
    v.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
}

/// Every subgroup `H` with `base ≤ H ≤ g`.
pub fn subgroups_containing(g: &PermGroup, base: &PermGroup) -> Result<Vec<PermGroup>, PermError> {
    check_degree(g, base)?;
    if !base.is_subgroup_of(g) {
        return Err(PermError::NotSubgroup("base is not a subgroup".into()));
    }
    let cyclic: Vec<Perm> = cyclic_subgroups(g)
        .iter()
        .filter_map(|c| c.generators().first().copied())
        .collect();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    seen.insert(base.elements().to_vec());
    let mut found = vec![base.clone()];
    let mut head = 0;
    while head < found.len() {
        let h = found[head].clone();
        head += 1;
        if h.order() == g.order() {
            continue;
        }
        for x in &cyclic {
            if h.contains(x) {
                continue;
            }
            let j = h.join_element(x)?;
            if seen.insert(j.elements().to_vec()) {
                found.push(j);
            }
        }
    }
    sort_groups(&mut found);
    Ok(found)
}

pub fn all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>, PermError> {
    subgroups_containing(g, &PermGroup::trivial(g.degree()))
}

/// Smallest `m` in `2..=k` such that `g` has a subgroup of index `m`.
///
/// Such a subgroup contains the kernel `N` of the coset action, a normal
/// subgroup with `|g/N| ≤ k!`, and also `⟨x^e⟩` with `e = lcm(1..k)`. Only
/// subgroups above both are searched.
pub fn min_nontrivial_action_degree(g: &PermGroup, k: usize) -> Result<Option<usize>, PermError> {
    if k < 2 {
        return Ok(None);
    }
    let e = (1..=k as u64).fold(1, lcm);
    let powers: Vec<Perm> = g.elements().iter().map(|x| x.pow(e)).collect();
    let floor = PermGroup::generate(g.degree(), &powers)?;
    let fact = (1..=k as u128).product::<u128>();
    let mut best = None;
    for n in normal_subgroups(g)? {
        if n.order() == g.order() || (g.order() / n.order()) as u128 > fact {
            continue;
        }
        let base = n.join(&floor)?;
        for h in subgroups_containing(g, &base)? {
            let idx = g.order() / h.order();
            if (2..=k).contains(&idx) && best.is_none_or(|b| idx < b) {
                best = Some(idx);
            }
        }
    }
    Ok(best)
}

/// Every normal subgroup, as joins of normal closures of conjugacy classes.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>, PermError> {
    let mut seen_el: HashSet<Perm> = HashSet::new();
    let mut closures: Vec<PermGroup> = Vec::new();
    let mut keys: HashSet<Vec<Perm>> = HashSet::new();
    for x in g.elements() {
        if !seen_el.insert(*x) {
            continue;
        }
        let mut stack = vec![*x];
        while let Some(y) = stack.pop() {
            for s in g.generators() {
                let c = y.conjugate_by(s);
                if seen_el.insert(c) {
                    stack.push(c);
                }
            }
        }
        let n = g.normal_closure(&[*x])?;
        if keys.insert(n.elements().to_vec()) {
            closures.push(n);
        }
    }
    let mut found = vec![PermGroup::trivial(g.degree())];
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    seen.insert(found[0].elements().to_vec());
    let mut head = 0;
    while head < found.len() {
        let n = found[head].clone();
        head += 1;
        for m in &closures {
            if m.is_subgroup_of(&n) {
                continue;
            }
            let j = n.join(m)?;
            if seen.insert(j.elements().to_vec()) {
                found.push(j);
            }
        }
    }
    sort_groups(&mut found);
    Ok(found)
}

/// All subgroups of index two, as kernels of the maps onto `C₂`.
pub fn index_two_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>, PermError> {
    let squares: Vec<Perm> = g.elements().iter().map(|x| x.compose(x)).collect();
    let q = PermGroup::generate(g.degree(), &squares)?;
    // A basis of the elementary abelian quotient g/q.
    let mut basis: Vec<Perm> = Vec::new();
    let mut span = q.clone();
    for x in g.elements() {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            basis.push(*x);
            span = span.join_element(x)?;
        }
    }
    let r = basis.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << r) {
        let first = mask.trailing_zeros() as usize;
        let mut gens: Vec<Perm> = q.generators().to_vec();
        for (i, b) in basis.iter().enumerate() {
            if mask & (1 << i) == 0 {
                gens.push(*b);
            } else if i != first {
                gens.push(basis[first].compose(b));
            }
        }
        let h = PermGroup::generate(g.degree(), &gens)?;
        debug_assert_eq!(h.order() * 2, g.order());
        out.push(h);
    }
    sort_groups(&mut out);
    Ok(out)
}

/// Lexicographically least sorted element list among the conjugates of `h`
/// by elements of `by`.
pub fn conjugacy_key(h: &PermGroup, by: &PermGroup) -> Vec<Perm> {
    let mut best: Option<Vec<Perm>> = None;
    for s in by.elements() {
        let c = h.conjugate(s);
        if best.as_ref().is_none_or(|b| c.elements() < b.as_slice()) {
            best = Some(c.elements().to_vec());
        }
    }
    best.unwrap_or_else(|| h.elements().to_vec())
}

/// A subgroup of `dp` isomorphic to `d`. When the degrees agree and `d ≤ dp`
/// this is `d` itself; otherwise the first injective homomorphism found by
/// assigning images to the generators of `d` in element order.
pub fn find_embedding(d: &PermGroup, dp: &PermGroup) -> Result<Option<PermGroup>, PermError> {
    if d.degree() == dp.degree() && d.is_subgroup_of(dp) {
        return Ok(Some(d.clone()));
    }
    if d.order() > dp.order() || !dp.order().is_multiple_of(d.order()) {
        return Ok(None);
    }
    let gens = d.generators().to_vec();
    let candidates: Vec<Vec<Perm>> = gens
        .iter()
        .map(|s| {
            dp.elements()
                .iter()
                .copied()
                .filter(|y| y.order() == s.order())
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    loop {
        let images: Vec<Perm> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(img) = extend_hom(d, &gens, &images) {
            return Ok(Some(PermGroup::generate(dp.degree(), &img)?));
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(None);
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Images of the generators if `gens[i] ↦ images[i]` extends to an injective
/// homomorphism.
fn extend_hom(d: &PermGroup, gens: &[Perm], images: &[Perm]) -> Option<Vec<Perm>> {
    let mut map: HashMap<Perm, Perm> = HashMap::new();
    let id = d.identity();
    map.insert(id, Perm::identity(images.first().map_or(1, |p| p.degree())));
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[&x];
        for (s, t) in gens.iter().zip(images) {
            let y = s.compose(&x);
            let fy = t.compose(&fx);
            match map.get(&y) {
                Some(prev) if *prev != fy => return None,
                Some(_) => {}
                None => {
                    map.insert(y, fy);
                    queue.push(y);
                }
            }
        }
    }
    let distinct: HashSet<Perm> = map.values().copied().collect();
    (distinct.len() == d.order()).then(|| images.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::construct_group;

    fn grp(s: &str) -> PermGroup {
        construct_group(s).unwrap()
    }

    #[test]
    fn known_subgroup_counts() {
        assert_eq!(all_subgroups(&grp("sym(4)")).unwrap().len(), 30);
        assert_eq!(all_subgroups(&grp("alt(5)")).unwrap().len(), 59);
        assert_eq!(all_subgroups(&grp("sym(3)")).unwrap().len(), 6);
        assert_eq!(all_subgroups(&grp("sym(5)")).unwrap().len(), 156);
    }

    #[test]
    fn min_action_degree_examples() {
        assert_eq!(
            min_nontrivial_action_degree(&grp("alt(5)"), 4).unwrap(),
            None
        );
        assert_eq!(
            min_nontrivial_action_degree(&grp("sym(4)"), 4).unwrap(),
            Some(2)
        );
        assert_eq!(
            min_nontrivial_action_degree(&grp("cyclic(6)"), 3).unwrap(),
            Some(2)
        );
        assert_eq!(
            min_nontrivial_action_degree(&grp("alt(5)"), 5).unwrap(),
            Some(5)
        );
        assert_eq!(
            min_nontrivial_action_degree(&grp("alt(4)"), 3).unwrap(),
            Some(3)
        );
        assert_eq!(
            min_nontrivial_action_degree(&grp("alt(8)"), 7).unwrap(),
            None
        );
        assert_eq!(
            min_nontrivial_action_degree(&grp("sym(7)"), 6).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn normal_subgroup_counts() {
        for (s, n) in [
            ("sym(4)", 4),
            ("alt(5)", 2),
            ("dihedral(4)", 6),
            ("cyclic(6)", 4),
            ("sym(5)", 3),
        ] {
            let g = grp(s);
            let ns = normal_subgroups(&g).unwrap();
            assert_eq!(ns.len(), n, "{s}");
            assert!(ns.iter().all(|h| h.is_normal_in(&g)));
        }
    }

    #[test]
    fn min_action_degree_matches_full_enumeration() {
        for s in [
            "sym(4)",
            "alt(4)",
            "dihedral(5)",
            "agl(1,5)",
            "dihedral(6)",
            "alt(5)",
            "cyclic(7)",
        ] {
            let g = grp(s);
            let subs = all_subgroups(&g).unwrap();
            for k in 2..=6 {
                let brute = subs
                    .iter()
                    .map(|h| g.order() / h.order())
                    .filter(|i| (2..=k).contains(i))
                    .min();
                assert_eq!(
                    min_nontrivial_action_degree(&g, k).unwrap(),
                    brute,
                    "{s} k={k}"
                );
            }
        }
    }

    #[test]
    fn index_two() {
        assert_eq!(
            index_two_subgroups(&grp("sym(4)")).unwrap(),
            vec![grp("alt(4)")]
        );
        assert_eq!(index_two_subgroups(&grp("dihedral(4)")).unwrap().len(), 3);
        assert!(index_two_subgroups(&grp("alt(5)")).unwrap().is_empty());
        let brute: Vec<PermGroup> = all_subgroups(&grp("dihedral(6)"))
            .unwrap()
            .into_iter()
            .filter(|h| h.order() == 6)
            .collect();
        assert_eq!(index_two_subgroups(&grp("dihedral(6)")).unwrap(), brute);
    }

    #[test]
    fn embedding_of_c2_in_c4() {
        let e = find_embedding(&grp("cyclic(2)"), &grp("cyclic(4)"))
            .unwrap()
            .unwrap();
        assert_eq!(e, grp("gens(4, (1 3)(2 4))"));
        assert!(find_embedding(&grp("cyclic(3)"), &grp("cyclic(4)"))
            .unwrap()
            .is_none());
        assert!(find_embedding(&grp("sym(3)"), &grp("cyclic(6)"))
            .unwrap()
            .is_none());
    }

    #[test]
    fn conjugacy_key_is_class_invariant() {
        let s4 = grp("sym(4)");
        let h = grp("gens(4, (1 2))");
        let k = grp("gens(4, (3 4))");
        assert_eq!(conjugacy_key(&h, &s4), conjugacy_key(&k, &s4));
        assert_ne!(
            conjugacy_key(&h, &s4),
            conjugacy_key(&grp("gens(4, (1 2)(3 4))"), &s4)
        );
    }
}
