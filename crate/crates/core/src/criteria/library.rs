use super::{
    classify, crosscheck, disagreements, embedding_report, Answer, ClassifierReport, CriteriaError,
};
use crate::perm::{construct_group, normalizer, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSource {
    Spec(&'static str),
    /// Intersection of two described groups.
    Meet(&'static str, &'static str),
}

impl GroupSource {
    pub fn build(&self) -> Result<PermGroup, CriteriaError> {
        Ok(match self {
            GroupSource::Spec(s) => construct_group(s)?,
            GroupSource::Meet(a, b) => construct_group(a)?.intersection(&construct_group(b)?)?,
        })
    }

    pub fn label(&self) -> String {
        match self {
            GroupSource::Spec(s) => s.to_string(),
            GroupSource::Meet(a, b) => format!("{a} ∩ {b}"),
        }
    }
}

type Expect = &'static [(&'static str, bool)];

#[derive(Debug, Clone)]
pub enum ExampleKind {
    Pair {
        f: GroupSource,
        fp: GroupSource,
        fpp: Option<GroupSource>,
        k: Option<usize>,
        expect: Expect,
        /// Expected value of `N_{F'}(F) = F`, when checked.
        self_normalizing: Option<bool>,
    },
    Quadruple {
        f: GroupSource,
        fp: GroupSource,
        h: GroupSource,
        hp: GroupSource,
        embedding: Expect,
        expect_f: Expect,
        expect_h: Expect,
    },
    /// The free group `K = ⟨α⟩` and `K' = ⟨α, τ⟩` on `m` points.
    Construction { p: usize, m: usize },
}

#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub kind: ExampleKind,
}

#[derive(Debug, Clone)]
pub struct ExampleOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
}

const fn s(x: &'static str) -> GroupSource {
    GroupSource::Spec(x)
}

const fn pair(name: &'static str, f: &'static str, fp: &'static str, expect: Expect) -> Example {
    Example {
        name,
        kind: ExampleKind::Pair {
            f: s(f),
            fp: s(fp),
            fpp: None,
            k: None,
            expect,
            self_normalizing: None,
        },
    }
}

pub fn example_library() -> Vec<Example> {
    let lattice_quad = |name, dih, alt, sym| Example {
        name,
        kind: ExampleKind::Quadruple {
            f: GroupSource::Meet(dih, alt),
            fp: s(alt),
            h: s(dih),
            hp: s(sym),
            embedding: &[
                ("closed", true),
                ("cocompact", true),
                ("discrete", true),
                ("cocompact_lattice", true),
            ],
            expect_f: &[("cor414", true), ("thm413", true)],
            expect_h: &[("thm413", true)],
        },
    };
    vec![
        pair(
            "d4_sym4",
            "dihedral(4)",
            "sym(4)",
            &[("standing", true), ("thm413", true), ("u_equals_g", false)],
        ),
        pair("c4_sym4", "cyclic(4)", "sym(4)", &[("thm413", false)]),
        pair(
            "alt4_sym4",
            "alt(4)",
            "sym(4)",
            &[("cor421", true), ("thm420", true)],
        ),
        pair(
            "alt5_sym5",
            "alt(5)",
            "sym(5)",
            &[("cor421", true), ("thm420", true)],
        ),
        pair(
            "alt6_sym6",
            "alt(6)",
            "sym(6)",
            &[("cor421", true), ("thm420", true)],
        ),
        Example {
            name: "c5_alt5",
            kind: ExampleKind::Pair {
                f: s("cyclic(5)"),
                fp: s("alt(5)"),
                fpp: None,
                k: Some(4),
                expect: &[("cor414", true), ("prop311", true)],
                self_normalizing: None,
            },
        },
        pair(
            "d5_agl15",
            "agl_sq(1,5)",
            "agl(1,5)",
            &[("cor421", true), ("thm420", true)],
        ),
        pair("psl_pgl_q5", "psl2(5)", "pgl2(5)", &[("cor79", true)]),
        pair("psl_pgl_q9", "psl2(9)", "pgl2(9)", &[("cor79", true)]),
        Example {
            name: "d6_c6_wreath",
            kind: ExampleKind::Pair {
                f: s("cyclic(6)"),
                fp: s("wreath_imprimitive(cyclic(2), 3)"),
                fpp: None,
                k: None,
                expect: &[("prop56", false)],
                self_normalizing: Some(true),
            },
        },
        pair(
            "c7_alt7",
            "cyclic(7)",
            "alt(7)",
            &[("cor414", true), ("prop311", true)],
        ),
        pair(
            "exalt8_alt8",
            "ex_alt(8)",
            "alt(8)",
            &[("cor414", true), ("prop311", true)],
        ),
        Example {
            name: "affine_q5_n1_vs_altsym",
            kind: ExampleKind::Quadruple {
                f: s("agl_sq(1,5)"),
                fp: s("agl(1,5)"),
                h: s("alt(5)"),
                hp: s("sym(5)"),
                embedding: &[
                    ("closed", true),
                    ("cocompact", true),
                    ("cocompact_lattice", false),
                ],
                expect_f: &[("cor79", true)],
                expect_h: &[("cor421", true)],
            },
        },
        lattice_quad("lattice_d7", "dihedral(7)", "alt(7)", "sym(7)"),
        lattice_quad("lattice_d8", "dihedral(8)", "alt(8)", "sym(8)"),
        Example {
            name: "kk_q9",
            kind: ExampleKind::Construction { p: 3, m: 9 },
        },
    ]
}

fn check_expect(r: &ClassifierReport, expect: Expect, tag: &str, lines: &mut Vec<String>) -> bool {
    let mut ok = true;
    for (name, want) in expect {
        let got = r.answer(name);
        let good = got == Answer::from_bool(*want);
        ok &= good;
        lines.push(format!(
            "{tag}{name}: {got} (expected {})",
            Answer::from_bool(*want)
        ));
    }
    ok
}

fn check_crosscheck(
    f: &PermGroup,
    fp: &PermGroup,
    r: &ClassifierReport,
    tag: &str,
    lines: &mut Vec<String>,
) -> Result<bool, CriteriaError> {
    let c = crosscheck(f, fp, r.k)?;
    let bad = disagreements(r, &c);
    if bad.is_empty() {
        let n = c.verdicts.iter().filter(|(_, v)| v.is_some()).count();
        lines.push(format!("{tag}crosscheck: {n} criteria agree"));
        Ok(true)
    } else {
        lines.push(format!(
            "{tag}crosscheck: disagreement on {}",
            bad.join(", ")
        ));
        Ok(false)
    }
}

pub fn run_example(ex: &Example) -> Result<ExampleOutcome, CriteriaError> {
    let mut lines = Vec::new();
    let passed = match &ex.kind {
        ExampleKind::Pair {
            f,
            fp,
            fpp,
            k,
            expect,
            self_normalizing,
        } => {
            let (fg, fpg) = (f.build()?, fp.build()?);
            let fppg = fpp.map(|g| g.build()).transpose()?;
            let r = classify(&fg, &fpg, fppg.as_ref(), *k)?;
            let mut ok = check_expect(&r, expect, "", &mut lines);
            ok &= check_crosscheck(&fg, &fpg, &r, "", &mut lines)?;
            if let Some(want) = self_normalizing {
                let got = normalizer(&fpg, &fg)? == fg;
                ok &= got == *want;
                lines.push(format!("N_F'(F) = F: {}", Answer::from_bool(got)));
            }
            ok
        }
        ExampleKind::Quadruple {
            f,
            fp,
            h,
            hp,
            embedding,
            expect_f,
            expect_h,
        } => {
            let (fg, fpg, hg, hpg) = (f.build()?, fp.build()?, h.build()?, hp.build()?);
            let e = embedding_report(&fg, &fpg, &hg, &hpg)?;
            let mut ok = true;
            for (name, want) in *embedding {
                let got = match *name {
                    "open" => e.open,
                    "closed" => e.closed,
                    "discrete" => e.discrete,
                    "cocompact" => e.cocompact,
                    "cocompact_lattice" => e.cocompact_lattice,
                    "qi_embedded" => e.qi_embedded,
                    other => unreachable!("unknown embedding field {other}"),
                };
                ok &= got == *want;
                lines.push(format!(
                    "{name}: {} (expected {})",
                    Answer::from_bool(got),
                    Answer::from_bool(*want)
                ));
            }
            lines.push(format!(
                "F = {}: {}, free: {}",
                f.label(),
                fg.describe(),
                Answer::from_bool(fg.is_free())
            ));
            let rf = classify(&fg, &fpg, None, None)?;
            ok &= check_expect(&rf, expect_f, "(F,F') ", &mut lines);
            let rh = classify(&hg, &hpg, None, None)?;
            ok &= check_expect(&rh, expect_h, "(H,H') ", &mut lines);
            ok
        }
        ExampleKind::Construction { p, m } => {
            let k = construct_group(&format!("kk({p}, {m})"))?;
            let kp = construct_group(&format!("kk_prime({p}, {m})"))?;
            let free = k.is_free();
            let even = k.elements().iter().all(|x| x.is_even());
            let kp_odd = kp.elements().iter().any(|x| !x.is_even());
            let g = kp.generators();
            let commute = g
                .iter()
                .all(|a| g.iter().all(|b| a.compose(b) == b.compose(a)));
            let r = classify(&k, &kp, None, None)?;
            lines.push(format!("K free: {}", Answer::from_bool(free)));
            lines.push(format!("K in Alt: {}", Answer::from_bool(even)));
            lines.push(format!("K' in Alt: {}", Answer::from_bool(!kp_odd)));
            lines.push(format!(
                "alpha and tau commute: {}",
                Answer::from_bool(commute)
            ));
            lines.push(format!("standing for (K,K'): {}", r.standing));
            free && even && kp_odd && commute && r.standing.answer == Answer::No
        }
    };
    Ok(ExampleOutcome {
        name: ex.name,
        passed,
        lines,
    })
}
