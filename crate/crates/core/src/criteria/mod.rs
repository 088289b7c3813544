//! Hypothesis checks for pairs `F ≤ F'` and quadruples of permutation groups,
//! a scanner over all subgroup pairs of `Sym(d)`, and a library of named
//! examples with expected verdicts.

mod crosscheck;
mod embedding;
mod library;
mod scan;

use std::fmt;

use thiserror::Error;

use crate::perm::{
    index_two_subgroups, min_nontrivial_action_degree, normalizer, PermError, PermGroup,
    SubgroupFunctors, YoungClosure,
};
use crate::wreath::{obstruction_for_groups, WreathError};

pub use crosscheck::{crosscheck, disagreements, Crosscheck};
pub use embedding::{embedding_report, EmbeddingReport};
pub use library::{
    example_library, run_example, Example, ExampleKind, ExampleOutcome, GroupSource,
};
pub use scan::{parse_filter, scan, Filter, ScanRow, ScanTable, MAX_SCAN_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
    #[error("scan degree {0} is outside 2..={max}", max = MAX_SCAN_DEGREE)]
    ScanDegree(usize),
    #[error("bad filter: {0}")]
    Filter(String),
    #[error("containment fails: {0}")]
    Containment(String),
    #[error("unknown example {0}")]
    UnknownExample(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    NotApplicable,
}

impl Answer {
    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub evidence: String,
}

impl Verdict {
    fn new(b: bool, evidence: impl Into<String>) -> Verdict {
        Verdict {
            answer: Answer::from_bool(b),
            evidence: evidence.into(),
        }
    }

    fn na(evidence: impl Into<String>) -> Verdict {
        Verdict {
            answer: Answer::NotApplicable,
            evidence: evidence.into(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.evidence.is_empty() {
            write!(f, "{}", self.answer)
        } else {
            write!(f, "{} ({})", self.answer, self.evidence)
        }
    }
}

/// Criterion names in report order.
pub const CRITERIA: [&str; 11] = [
    "standing",
    "prop45_iii",
    "thm413",
    "cor414",
    "cor421",
    "thm420",
    "prop311",
    "prop56",
    "prop58",
    "cor79",
    "u_equals_g",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierReport {
    pub degree: usize,
    /// Largest index excluded by `prop311`.
    pub k: usize,
    pub standing: Verdict,
    /// `F` transitive and `F'` generated by its point stabilizers.
    pub prop45_iii: Verdict,
    /// `F` transitive and `F' = ⟨[F'_a,F'_a] ∪ F_a : a⟩`.
    pub thm413: Verdict,
    /// `F` simply transitive and `F' = ⟨[F'_a,F'_a] : a⟩`.
    pub cor414: Verdict,
    /// `(F':F) = 2`, `F` transitive and `F = F⁺`.
    pub cor421: Verdict,
    /// Some `F''` of index two in `F'` containing `F` passes `thm413` for `(F,F'')`.
    pub thm420: Verdict,
    /// `F` simply transitive and `F'` has no subgroup of index `2..=k`.
    pub prop311: Verdict,
    /// `N_{F'}(F⁺) = F`.
    pub prop56: Verdict,
    /// `N_{F'_a}(F_a) = F_a` for every point `a`.
    pub prop58: Verdict,
    /// A lattice obstruction among the groups between `F_a` and `F'_a`.
    pub cor79: Verdict,
    pub u_equals_g: Verdict,
}

impl ClassifierReport {
    pub fn entries(&self) -> [(&'static str, &Verdict); 11] {
        [
            ("standing", &self.standing),
            ("prop45_iii", &self.prop45_iii),
            ("thm413", &self.thm413),
            ("cor414", &self.cor414),
            ("cor421", &self.cor421),
            ("thm420", &self.thm420),
            ("prop311", &self.prop311),
            ("prop56", &self.prop56),
            ("prop58", &self.prop58),
            ("cor79", &self.cor79),
            ("u_equals_g", &self.u_equals_g),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.entries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
    }

    pub fn answer(&self, name: &str) -> Answer {
        self.get(name).map_or(Answer::NotApplicable, |v| v.answer)
    }
}

impl fmt::Display for ClassifierReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in self.entries() {
            writeln!(f, "{name}: {v}")?;
        }
        Ok(())
    }
}

pub(crate) fn short(g: &PermGroup) -> String {
    format!("order {}", g.order())
}

/// Runs every criterion on `F ≤ F'`. A failed standing assumption is reported
/// as `standing: no` with every other verdict `n/a`.
pub fn classify(
    f: &PermGroup,
    fp: &PermGroup,
    fpp: Option<&PermGroup>,
    k: Option<usize>,
) -> Result<ClassifierReport, CriteriaError> {
    let d = f.degree();
    for g in [Some(fp), fpp].into_iter().flatten() {
        if g.degree() != d {
            return Err(PermError::DegreeMismatch {
                left: d,
                right: g.degree(),
            }
            .into());
        }
    }
    let k = k.unwrap_or(d.saturating_sub(1));
    let standing = standing_verdict(f, fp)?;
    if !standing.answer.is_yes() {
        let na = || Verdict::na("standing assumption fails");
        return Ok(ClassifierReport {
            degree: d,
            k,
            standing,
            prop45_iii: na(),
            thm413: na(),
            cor414: na(),
            cor421: na(),
            thm420: na(),
            prop311: na(),
            prop56: na(),
            prop58: na(),
            cor79: na(),
            u_equals_g: na(),
        });
    }
    let od = f.orbit_data();
    let functors = SubgroupFunctors::compute(f, fp)?;

    let stab_span = {
        let mut gens = Vec::new();
        for a in 0..d {
            gens.extend_from_slice(fp.stabilizer(a)?.generators());
        }
        PermGroup::generate(d, &gens)?
    };
    let prop45_iii = if !od.transitive {
        Verdict::new(false, "F is intransitive")
    } else {
        Verdict::new(
            stab_span == *fp,
            format!("point stabilizers of F' generate {}", short(&stab_span)),
        )
    };

    let thm413 = thm413_verdict(fp, od.transitive, &functors);

    let cor414 = if !od.simply_transitive {
        Verdict::new(false, "F is not simply transitive")
    } else {
        let c = &functors.derived_stab_closure;
        Verdict::new(
            c == fp,
            format!("derived stabilizer closure has {}", short(c)),
        )
    };

    let index = fp.order() / f.order();
    let cor421 = if index != 2 {
        Verdict::new(false, format!("index {index}"))
    } else if !od.transitive {
        Verdict::new(false, "F is intransitive")
    } else {
        Verdict::new(
            functors.f_plus == *f,
            format!("F+ has {}", short(&functors.f_plus)),
        )
    };

    let thm420 = thm420_verdict(f, fp, fpp, od.transitive)?;

    let prop311 = if !od.simply_transitive {
        Verdict::new(false, "F is not simply transitive")
    } else if k >= d {
        Verdict::new(false, format!("k = {k} is not below the degree"))
    } else {
        match min_nontrivial_action_degree(fp, k)? {
            None => Verdict::new(true, format!("no subgroup of index 2..={k}")),
            Some(m) => Verdict::new(false, format!("subgroup of index {m}")),
        }
    };

    let n56 = normalizer(fp, &functors.f_plus)?;
    let prop56 = Verdict::new(n56 == *f, format!("N_F'(F+) has {}", short(&n56)));

    let mut prop58 = Verdict::new(true, "N_F'a(F_a) = F_a at every point");
    for a in 0..d {
        let (fa, fpa) = (f.stabilizer(a)?, fp.stabilizer(a)?);
        let n = normalizer(&fpa, &fa)?;
        if n != fa {
            prop58 = Verdict::new(
                false,
                format!(
                    "at point {}: normalizer {} vs F_a {}",
                    a + 1,
                    short(&n),
                    short(&fa)
                ),
            );
            break;
        }
    }

    let cor79 = if !od.transitive {
        Verdict::na("F is intransitive")
    } else {
        let r = obstruction_for_groups(f, fp, 0)?;
        match &r.dp {
            Some(dp) => Verdict::new(
                true,
                format!("D' of {} at point 1, examined: {}", short(dp), r.examined),
            ),
            None => Verdict::new(
                false,
                format!("essential overgroups examined: {}", r.examined),
            ),
        }
    };

    let u_equals_g = Verdict::new(f == fp, format!("index {index}"));

    Ok(ClassifierReport {
        degree: d,
        k,
        standing,
        prop45_iii,
        thm413,
        cor414,
        cor421,
        thm420,
        prop311,
        prop56,
        prop58,
        cor79,
        u_equals_g,
    })
}

fn standing_verdict(f: &PermGroup, fp: &PermGroup) -> Result<Verdict, CriteriaError> {
    if let Some(x) = f.generators().iter().find(|x| !fp.contains(x)) {
        return Ok(Verdict::new(
            false,
            format!("F is not contained in F': {x}"),
        ));
    }
    let young = YoungClosure::new(f);
    Ok(match fp.generators().iter().find(|x| !young.contains(x)) {
        Some(x) => Verdict::new(false, format!("{x} in F' moves an F-orbit")),
        None => Verdict::new(true, format!("F-hat has order {}", young.order())),
    })
}

fn thm413_verdict(fp: &PermGroup, transitive: bool, functors: &SubgroupFunctors) -> Verdict {
    if !transitive {
        return Verdict::new(false, "F is intransitive");
    }
    let c = &functors.mixed_closure;
    Verdict::new(c == fp, format!("mixed closure has {}", short(c)))
}

fn thm420_verdict(
    f: &PermGroup,
    fp: &PermGroup,
    fpp: Option<&PermGroup>,
    transitive: bool,
) -> Result<Verdict, CriteriaError> {
    let candidates: Vec<PermGroup> = match fpp {
        Some(g) => {
            if !f.is_subgroup_of(g) || !g.is_subgroup_of(fp) || g.order() * 2 != fp.order() {
                return Ok(Verdict::new(
                    false,
                    "given F'' is not an index-two subgroup of F' containing F",
                ));
            }
            vec![g.clone()]
        }
        None => index_two_subgroups(fp)?
            .into_iter()
            .filter(|h| f.is_subgroup_of(h))
            .collect(),
    };
    if candidates.is_empty() {
        return Ok(Verdict::new(
            false,
            "no index-two subgroup of F' contains F",
        ));
    }
    if !transitive {
        return Ok(Verdict::new(false, "F is intransitive"));
    }
    let mut passing = 0;
    for h in &candidates {
        let fun = SubgroupFunctors::compute(f, h)?;
        if fun.mixed_closure == *h {
            passing += 1;
        }
    }
    Ok(Verdict::new(
        passing > 0,
        format!(
            "{passing} of {} index-two candidates pass thm413",
            candidates.len()
        ),
    ))
}
