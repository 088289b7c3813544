//! A second evaluation of each criterion from the definitions, sharing no code
//! with the functor-based path beyond group generation and membership.

use std::collections::BTreeSet;

use super::{Answer, ClassifierReport, CriteriaError};
use crate::perm::{
    all_subgroups, is_essential_by_cyclic_subgroups, subgroups_containing, Perm, PermError,
    PermGroup,
};
use crate::wreath::{lattice_obstruction, WreathContext};

/// Stabilizers above this order skip the all-pairs commutator check.
const PAIR_LIMIT: usize = 400;
/// Groups above this order skip the full subgroup enumeration.
const SUBGROUP_LIMIT: usize = 720;

/// Independent verdicts; `None` where the direct computation is too large.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crosscheck {
    pub verdicts: Vec<(&'static str, Option<bool>)>,
}

fn orbit_of(g: &PermGroup, a: usize) -> BTreeSet<usize> {
    g.elements().iter().map(|x| x.apply(a)).collect()
}

fn stab_elements(g: &PermGroup, a: usize) -> Vec<Perm> {
    g.elements()
        .iter()
        .copied()
        .filter(|x| x.fixes(a))
        .collect()
}

fn span(d: usize, elems: impl IntoIterator<Item = Perm>) -> Result<PermGroup, PermError> {
    let v: Vec<Perm> = elems.into_iter().collect();
    PermGroup::generate(d, &v)
}

fn same_set(a: &PermGroup, b: &PermGroup) -> bool {
    a.elements().iter().collect::<BTreeSet<_>>() == b.elements().iter().collect::<BTreeSet<_>>()
}

/// `N_G(H)` by conjugating every element of `H`.
fn normalizer_direct(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let target: BTreeSet<Perm> = h.elements().iter().copied().collect();
    g.filter(|x| {
        h.elements()
            .iter()
            .all(|y| target.contains(&y.conjugate_by(x)))
    })
}

/// All commutators of pairs in each point stabilizer, or `None` when too large.
fn all_stab_commutators(fp: &PermGroup) -> Option<Vec<Perm>> {
    let mut out = BTreeSet::new();
    for a in 0..fp.degree() {
        let s = stab_elements(fp, a);
        if s.len() > PAIR_LIMIT {
            return None;
        }
        for x in &s {
            for y in &s {
                out.insert(Perm::commutator(x, y));
            }
        }
    }
    Some(out.into_iter().collect())
}

pub fn crosscheck(f: &PermGroup, fp: &PermGroup, k: usize) -> Result<Crosscheck, CriteriaError> {
    let d = f.degree();
    let contained = f.elements().iter().all(|x| fp.contains(x));
    let orbits: Vec<BTreeSet<usize>> = (0..d).map(|a| orbit_of(f, a)).collect();
    let standing = contained
        && fp
            .elements()
            .iter()
            .all(|x| (0..d).all(|a| orbits[a].contains(&x.apply(a))));
    let mut verdicts: Vec<(&'static str, Option<bool>)> = vec![("standing", Some(standing))];
    if !standing {
        return Ok(Crosscheck { verdicts });
    }
    let transitive = orbits[0].len() == d;
    let simply = transitive && f.order() == d;

    let stab_all = span(d, (0..d).flat_map(|a| stab_elements(fp, a)))?;
    verdicts.push(("prop45_iii", Some(transitive && same_set(&stab_all, fp))));

    let comms = all_stab_commutators(fp);
    let f_stabs: Vec<Perm> = (0..d).flat_map(|a| stab_elements(f, a)).collect();
    let thm413 = match &comms {
        _ if !transitive => Some(false),
        Some(c) => Some(same_set(
            &span(d, c.iter().copied().chain(f_stabs.iter().copied()))?,
            fp,
        )),
        None => None,
    };
    verdicts.push(("thm413", thm413));
    let cor414 = match &comms {
        _ if !simply => Some(false),
        Some(c) => Some(same_set(&span(d, c.iter().copied())?, fp)),
        None => None,
    };
    verdicts.push(("cor414", cor414));

    let f_plus = span(
        d,
        f.elements().iter().copied().filter(|x| x.has_fixed_point()),
    )?;
    verdicts.push((
        "cor421",
        Some(fp.order() == 2 * f.order() && transitive && same_set(&f_plus, f)),
    ));

    let thm420 = if fp.order() > SUBGROUP_LIMIT {
        None
    } else {
        let mut any = false;
        for h in subgroups_containing(fp, f)?
            .iter()
            .filter(|h| 2 * h.order() == fp.order())
        {
            let c: Vec<Perm> = (0..d)
                .flat_map(|a| {
                    let s = stab_elements(h, a);
                    s.iter()
                        .flat_map(|x| s.iter().map(move |y| Perm::commutator(x, y)))
                        .collect::<Vec<_>>()
                })
                .chain(f_stabs.iter().copied())
                .collect();
            any |= transitive && same_set(&span(d, c)?, h);
        }
        Some(any)
    };
    verdicts.push(("thm420", thm420));

    let prop311 = if !simply || k >= d {
        Some(false)
    } else if fp.order() > SUBGROUP_LIMIT {
        None
    } else {
        let subs = all_subgroups(fp)?;
        Some(
            !subs
                .iter()
                .any(|h| (2..=k).contains(&(fp.order() / h.order()))),
        )
    };
    verdicts.push(("prop311", prop311));

    verdicts.push(("prop56", Some(same_set(&normalizer_direct(fp, &f_plus), f))));

    let mut p58 = true;
    for a in 0..d {
        let fa = span(d, stab_elements(f, a))?;
        let fpa = span(d, stab_elements(fp, a))?;
        p58 &= same_set(&normalizer_direct(&fpa, &fa), &fa);
    }
    verdicts.push(("prop58", Some(p58)));

    let cor79 = if !transitive {
        None
    } else {
        let fa = span(d, stab_elements(f, 0))?;
        let fpa = span(d, stab_elements(fp, 0))?;
        if fpa.order() > SUBGROUP_LIMIT / 3 {
            None
        } else {
            let mut found = false;
            for dp in subgroups_containing(&fpa, &fa)? {
                if !is_essential_by_cyclic_subgroups(&fa, &dp)? {
                    continue;
                }
                let ctx = WreathContext::new(d - 1, fa.clone(), dp)?;
                found |= lattice_obstruction(&ctx)?;
            }
            Some(found)
        }
    };
    verdicts.push(("cor79", cor79));
    verdicts.push(("u_equals_g", Some(same_set(f, fp))));
    Ok(Crosscheck { verdicts })
}

/// Criteria on which the report and the cross-check give different answers.
/// `n/a` in the report matches a missing cross-check entry only.
pub fn disagreements(report: &ClassifierReport, check: &Crosscheck) -> Vec<&'static str> {
    let mut out = Vec::new();
    for (name, v) in report.entries() {
        let other = check
            .verdicts
            .iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, b)| *b);
        let ok = match (v.answer, other) {
            (_, None) => true,
            (Answer::NotApplicable, Some(_)) => false,
            (a, Some(b)) => a.is_yes() == b,
        };
        if !ok {
            out.push(name);
        }
    }
    out
}
