use std::collections::HashSet;
use std::fmt;
use std::thread;

use super::{classify, Answer, ClassifierReport, CriteriaError, CRITERIA};
use crate::perm::{all_subgroups, conjugacy_key, construct_group, normalizer, Perm, PermGroup};

/// Largest degree accepted by `scan`.
pub const MAX_SCAN_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Criterion(&'static str),
    Proper,
    Transitive,
}

/// A conjunction of possibly negated terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Filter {
    terms: Vec<(bool, Term)>,
}

/// Parses `thm413 and proper`, `cor421 ∧ !u_equals_g`, `not prop56 && transitive`.
/// `proper` (also `F⊊F'`) means `F ≠ F'`.
pub fn parse_filter(s: &str) -> Result<Filter, CriteriaError> {
    let norm = s
        .replace('∧', " and ")
        .replace("&&", " and ")
        .replace('′', "'");
    let mut terms = Vec::new();
    let mut group: Vec<&str> = Vec::new();
    let mut flush = |group: &mut Vec<&str>| -> Result<(), CriteriaError> {
        if group.is_empty() {
            return Err(CriteriaError::Filter(format!("empty term in {s:?}")));
        }
        let mut negated = false;
        let mut rest: Vec<&str> = Vec::new();
        for (i, tok) in group.iter().enumerate() {
            if i == 0 && *tok == "not" {
                negated = true;
            } else {
                rest.push(tok);
            }
        }
        let mut word = rest.join(" ");
        if let Some(w) = word.strip_prefix('!') {
            negated = !negated;
            word = w.to_string();
        }
        let term = match word.as_str() {
            "proper" | "F⊊F'" => Term::Proper,
            "transitive" => Term::Transitive,
            w => match CRITERIA.iter().find(|c| **c == w) {
                Some(c) => Term::Criterion(c),
                None => return Err(CriteriaError::Filter(format!("unknown term {w:?}"))),
            },
        };
        terms.push((negated, term));
        group.clear();
        Ok(())
    };
    if norm.trim().is_empty() {
        return Ok(Filter::default());
    }
    for tok in norm.split_whitespace() {
        if tok == "and" {
            flush(&mut group)?;
        } else {
            group.push(tok);
        }
    }
    flush(&mut group)?;
    Ok(Filter { terms })
}

impl Filter {
    pub fn matches(&self, row: &ScanRow) -> bool {
        self.terms.iter().all(|(neg, t)| {
            let v = match t {
                Term::Criterion(c) => row.report.answer(c) == Answer::Yes,
                Term::Proper => row.f != row.fp,
                Term::Transitive => row.f.is_transitive(),
            };
            v != *neg
        })
    }
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub f: PermGroup,
    pub fp: PermGroup,
    /// Number of pairs in the `Sym(d)`-conjugacy class of `(F,F')`.
    pub class_size: usize,
    pub report: ClassifierReport,
}

#[derive(Debug, Clone)]
pub struct ScanTable {
    pub degree: usize,
    pub rows: Vec<ScanRow>,
}

fn spec_of(g: &PermGroup) -> String {
    let gens: Vec<String> = g.generators().iter().map(Perm::to_string).collect();
    if gens.is_empty() {
        format!("trivial({})", g.degree())
    } else {
        format!("gens({}, {})", g.degree(), gens.join(", "))
    }
}

impl ScanRow {
    pub fn line(&self) -> String {
        let mut cols = vec![
            spec_of(&self.f),
            spec_of(&self.fp),
            self.f.order().to_string(),
            self.fp.order().to_string(),
            self.class_size.to_string(),
        ];
        let mut evidence = Vec::new();
        for (name, v) in self.report.entries() {
            cols.push(v.answer.to_string());
            if v.answer != Answer::Yes && !v.evidence.is_empty() {
                evidence.push(format!("{name}={}", v.evidence));
            }
        }
        cols.push(evidence.join("; "));
        cols.join("\t")
    }
}

impl ScanTable {
    pub fn header() -> String {
        let mut cols = vec!["F", "F'", "|F|", "|F'|", "pairs"];
        cols.extend(CRITERIA);
        cols.push("evidence");
        cols.join("\t")
    }

    pub fn filtered(&self, filter: &Filter) -> Vec<&ScanRow> {
        self.rows.iter().filter(|r| filter.matches(r)).collect()
    }

    /// Rows up to conjugacy and raw pairs matching `filter`.
    pub fn counts(&self, filter: &Filter) -> (usize, usize) {
        self.filtered(filter)
            .into_iter()
            .fold((0, 0), |(a, b), r| (a + 1, b + r.class_size))
    }

    pub fn render(&self, filter: &Filter) -> String {
        let mut out = Self::header();
        out.push('\n');
        for r in self.filtered(filter) {
            out.push_str(&r.line());
            out.push('\n');
        }
        let (rows, pairs) = self.counts(filter);
        out.push_str(&format!("# rows up to conjugacy: {rows}, pairs: {pairs}\n"));
        out
    }
}

impl fmt::Display for ScanTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Filter::default()))
    }
}

/// Representatives of the subgroups in `groups` up to conjugacy by `by`,
/// first occurrence kept.
fn class_reps(groups: &[&PermGroup], by: &PermGroup) -> Vec<PermGroup> {
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut out = Vec::new();
    for g in groups {
        if seen.insert(conjugacy_key(g, by)) {
            out.push((*g).clone());
        }
    }
    out
}

/// Classifies every pair `F ≤ F' ≤ Sym(d)` up to simultaneous conjugacy.
/// Rows are evaluated on worker threads and returned in a fixed order.
pub fn scan(d: usize) -> Result<ScanTable, CriteriaError> {
    if !(2..=MAX_SCAN_DEGREE).contains(&d) {
        return Err(CriteriaError::ScanDegree(d));
    }
    let sym = construct_group(&format!("sym({d})"))?;
    let subs = all_subgroups(&sym)?;
    let all: Vec<&PermGroup> = subs.iter().collect();
    let mut pairs: Vec<(PermGroup, PermGroup, usize)> = Vec::new();
    for fp in class_reps(&all, &sym) {
        let n = normalizer(&sym, &fp)?;
        let inside: Vec<&PermGroup> = subs.iter().filter(|h| h.is_subgroup_of(&fp)).collect();
        for f in class_reps(&inside, &n) {
            let both = normalizer(&n, &f)?;
            pairs.push((f, fp.clone(), sym.order() / both.order()));
        }
    }
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(pairs.len().max(1));
    let chunk = pairs.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<ScanRow>, CriteriaError>> = thread::scope(|s| {
        let handles: Vec<_> = pairs
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|(f, fp, size)| {
                            Ok(ScanRow {
                                f: f.clone(),
                                fp: fp.clone(),
                                class_size: *size,
                                report: classify(f, fp, None, None)?,
                            })
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let mut rows = Vec::with_capacity(pairs.len());
    for r in results {
        rows.extend(r?);
    }
    Ok(ScanTable { degree: d, rows })
}
