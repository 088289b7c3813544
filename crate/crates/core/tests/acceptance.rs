//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `--nocapture` to see the lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use almostlocal::criteria::{classify, embedding_report, parse_filter, scan, Answer};
use almostlocal::gff::{
    conjugation_commensuration_check, decompose_ku, membership_report, n_of, random_element,
    random_type_preserving, reduce_simple, sigma_reduce, singularity_report, symdiff_m,
    symdiff_m_oracle, word_decompose,
};
use almostlocal::perm::{
    conjugacy_key, find_embedding, is_essential, is_essential_by_cyclic_subgroups,
    product_set_literal,
};
use almostlocal::tree::ball;
use almostlocal::wreath::{
    haar_measures, lattice_obstruction, literal_level_order, obstruction_for_groups, WreathContext,
};
use almostlocal::{construct_group, GroupPair, Perm, PermGroup, Portrait, Vertex};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COCYCLE_LIMIT: Duration = Duration::from_secs(30);
const LENGTH_LIMIT: Duration = Duration::from_secs(30);
const SYMDIFF_LIMIT: Duration = Duration::from_secs(120);
const WORD_LIMIT: Duration = Duration::from_secs(120);
const SCAN_LIMIT: Duration = Duration::from_secs(300);
/// Criteria without a stated time limit still get a generous ceiling.
const DEFAULT_LIMIT: Duration = Duration::from_secs(600);

fn grp(s: &str) -> PermGroup {
    construct_group(s).unwrap()
}

fn pair(f: &str, fp: &str) -> GroupPair {
    GroupPair::from_specs(f, fp).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Prints the criterion line and fails the test on a failure or a timeout.
fn finish(
    n: usize,
    name: &str,
    start: Instant,
    limit: Duration,
    failures: Vec<String>,
    detail: String,
) {
    let elapsed = start.elapsed();
    let mut failures = failures;
    if elapsed > limit {
        failures.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    if failures.is_empty() {
        println!("criterion {n:2} {name}: PASS ({detail}; {:.2?})", elapsed);
    } else {
        println!(
            "criterion {n:2} {name}: FAIL ({}; {:.2?})",
            failures.join("; "),
            elapsed
        );
        panic!("criterion {n} failed: {}", failures[0]);
    }
}

#[test]
fn criterion_01_cocycle_laws() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for d in 3..=6 {
        let mut r = rng(100 + d as u64);
        let vertices = ball(d, &Vertex::root(), 5);
        for _ in 0..1000 {
            let g = Portrait::random(d, 3, &mut r);
            let h = Portrait::random(d, 3, &mut r);
            let gh = g.compose(&h).unwrap();
            let gi = g.inverse().unwrap();
            for v in &vertices {
                let hv = h.apply(v);
                if gh.local(v) != g.local(&hv).compose(&h.local(v)) {
                    failures.push(format!("product law at d={d}, v={}", v.literal()));
                }
                let giv = gi.apply(v);
                if gi.local(v) != g.local(&giv).inverse() {
                    failures.push(format!("inverse law at d={d}, v={}", v.literal()));
                }
                checks += 2;
            }
            if failures.len() > 5 {
                break;
            }
        }
    }
    finish(
        1,
        "cocycle laws",
        start,
        COCYCLE_LIMIT,
        failures,
        format!("{checks} identities"),
    );
}

fn contexts() -> Vec<GroupPair> {
    vec![
        pair("dihedral(4)", "sym(4)"),
        pair("cyclic(5)", "agl(1,5)"),
        pair("alt(4)", "sym(4)"),
        pair("cyclic(5)", "alt(5)"),
        pair("gens(4, (1 2)(3 4))", "gens(4, (1 2), (3 4))"),
    ]
}

#[test]
fn criterion_02_length_function() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut triples = 0;
    for (i, p) in contexts().iter().enumerate() {
        let mut r = rng(200 + i as u64);
        if n_of(p, &Portrait::identity(p.degree())).unwrap() != 0 {
            failures.push(format!("N(id) != 0 in context {i}"));
        }
        for _ in 0..500 {
            let g = random_element(p, &mut r).unwrap();
            let h = random_element(p, &mut r).unwrap();
            let k = random_element(p, &mut r).unwrap();
            let n = |x: &Portrait| n_of(p, x).unwrap();
            for x in [&g, &h, &k] {
                if n(x) != n(&x.inverse().unwrap()) {
                    failures.push(format!("N(g) != N(g^-1) in context {i}"));
                }
            }
            let gh = g.compose(&h).unwrap();
            let ghk = gh.compose(&k).unwrap();
            if n(&gh) > n(&g) + n(&h) || n(&h.compose(&k).unwrap()) > n(&h) + n(&k) {
                failures.push(format!("subadditivity fails in context {i}"));
            }
            if n(&ghk) > n(&g) + n(&h) + n(&k) {
                failures.push(format!("triple subadditivity fails in context {i}"));
            }
            triples += 1;
        }
    }
    finish(
        2,
        "length function",
        start,
        LENGTH_LIMIT,
        failures,
        format!("{triples} triples in 5 contexts"),
    );
}

#[test]
fn criterion_03_commensuration_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for (i, p) in [pair("cyclic(5)", "agl(1,5)"), pair("dihedral(4)", "sym(4)")]
        .iter()
        .enumerate()
    {
        let mut r = rng(300 + i as u64);
        for _ in 0..200 {
            let g = random_element(p, &mut r).unwrap();
            let n = n_of(p, &g).unwrap();
            let s = symdiff_m(p, &g).unwrap();
            let o = symdiff_m_oracle(p, &g).unwrap();
            if s != 2 * n || o != s {
                failures.push(format!("context {i}: N={n}, symdiff={s}, oracle={o}"));
            }
            nonzero += usize::from(n > 0);
        }
    }
    finish(
        3,
        "commensuration identity",
        start,
        SYMDIFF_LIMIT,
        failures,
        format!("400 elements, {nonzero} with N > 0"),
    );
}

#[test]
fn criterion_04_word_metric() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut longest = 0;
    for (i, p) in contexts()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_transitive())
    {
        let d = p.degree();
        let mut r = rng(400 + i as u64);
        for _ in 0..100 {
            let g = random_element(p, &mut r).unwrap();
            let n = n_of(p, &g).unwrap();
            let w = word_decompose(p, &g).unwrap();
            if w.evaluate(p).unwrap() != g {
                failures.push(format!("context {i}: word does not re-multiply"));
            }
            if w.len() < n || w.len() > (3 * d - 2) * n + 3 * d + 2 {
                failures.push(format!("context {i}: N={n}, length={}", w.len()));
            }
            longest = longest.max(w.len());
        }
    }
    finish(
        4,
        "word metric",
        start,
        WORD_LIMIT,
        failures,
        format!("400 words, longest {longest}"),
    );
}

#[test]
fn criterion_05_symmetric_difference_law() {
    let start = Instant::now();
    let p = pair("alt(4)", "sym(4)");
    let mut r = rng(500);
    let mut failures = Vec::new();
    for _ in 0..500 {
        let g = random_type_preserving(&p, &mut r).unwrap();
        let h = random_type_preserving(&p, &mut r).unwrap();
        let gh = g.compose(&h).unwrap();
        let (sg, sh, sgh) = (
            singularity_report(&p, &g, None).unwrap(),
            singularity_report(&p, &h, None).unwrap(),
            singularity_report(&p, &gh, None).unwrap(),
        );
        for (i, (a, b, c)) in [(&sg.s0, &sh.s0, &sgh.s0), (&sg.s1, &sh.s1, &sgh.s1)]
            .into_iter()
            .enumerate()
        {
            let pulled: BTreeSet<Vertex> = a.iter().map(|v| h.apply_inverse(v)).collect();
            let expected: BTreeSet<Vertex> = b.symmetric_difference(&pulled).cloned().collect();
            if *c != expected {
                failures.push(format!("S_{i} law fails"));
            }
        }
    }
    finish(
        5,
        "symmetric-difference law",
        start,
        DEFAULT_LIMIT,
        failures,
        "500 pairs, both parities".into(),
    );
}

#[test]
fn criterion_06_decomposition() {
    let start = Instant::now();
    let p = pair("dihedral(4)", "sym(4)");
    let mut r = rng(600);
    let mut failures = Vec::new();
    let mut total_parts = 0;
    for _ in 0..200 {
        let g = random_element(&p, &mut r).unwrap();
        let s = singularity_report(&p, &g, None).unwrap().s;
        let (gamma, parts) = decompose_ku(&p, &g).unwrap();
        let mut acc = gamma.clone();
        for (v, x) in &parts {
            let sx = singularity_report(&p, x, None).unwrap().s;
            if !x.fixes(v) || sx.iter().any(|w| w != v) {
                failures.push(format!("part at {} is not in K(v)", v.literal()));
            }
            acc = acc.compose(x).unwrap();
        }
        if acc != g {
            failures.push("re-multiplication fails".into());
        }
        if !membership_report(&p, &gamma).unwrap().in_uf {
            failures.push("gamma is not in U(F)".into());
        }
        if parts.len() > s.len() {
            failures.push(format!(
                "{} parts for {} singularities",
                parts.len(),
                s.len()
            ));
        }
        total_parts += parts.len();
    }
    finish(
        6,
        "decomposition",
        start,
        DEFAULT_LIMIT,
        failures,
        format!("200 elements, {total_parts} parts"),
    );
}

#[test]
fn criterion_07_simplicity_reductions() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut steps = 0;
    for (i, p) in [pair("dihedral(4)", "sym(4)"), pair("cyclic(5)", "alt(5)")]
        .iter()
        .enumerate()
    {
        let mut r = rng(700 + i as u64);
        for _ in 0..50 {
            let g = random_type_preserving(p, &mut r).unwrap();
            let cert = reduce_simple(p, &g).unwrap();
            let m = membership_report(p, &cert.residual).unwrap();
            if !cert.verify(&g).unwrap() || !m.in_uf || !m.type_preserving {
                failures.push(format!("context {i}: certificate or residual fails"));
            }
            steps += cert.steps.len();
        }
    }
    let p = pair("alt(4)", "sym(4)");
    let fpp = grp("alt(4)");
    let mut r = rng(710);
    let mut sampled = 0;
    let mut drawn = 0;
    while sampled < 50 {
        drawn += 1;
        let g = random_type_preserving(&p, &mut r).unwrap();
        let m = membership_report(&p, &g).unwrap();
        if m.in_g0 != Some(true) || m.in_g1 != Some(true) {
            continue;
        }
        sampled += 1;
        let (gammas, residual) = sigma_reduce(&p, &fpp, &g).unwrap();
        let mut acc = g.clone();
        for x in &gammas {
            acc = x.compose(&acc).unwrap();
        }
        let sigma = singularity_report(&p, &residual, Some(&fpp))
            .unwrap()
            .sigma
            .unwrap();
        if acc != residual || !sigma.is_empty() {
            failures.push(format!("sigma reduction leaves {} vertices", sigma.len()));
        }
    }
    finish(
        7,
        "simplicity reductions",
        start,
        DEFAULT_LIMIT,
        failures,
        format!("100 certificates with {steps} steps; 50 of {drawn} samples in G0∩G1 reduced"),
    );
}

fn same_class(a: &PermGroup, b: &PermGroup, sym: &PermGroup) -> bool {
    conjugacy_key(a, sym) == conjugacy_key(b, sym)
}

#[test]
fn criterion_08_scanner_regressions() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (s4, s5) = (grp("sym(4)"), grp("sym(5)"));
    let t4 = scan(4).unwrap();
    let rows = t4.filtered(&parse_filter("thm413 ∧ F⊊F′").unwrap());
    if rows.len() != 1 || !same_class(&rows[0].f, &grp("dihedral(4)"), &s4) || rows[0].fp != s4 {
        failures.push(format!("d=4 thm413 proper: {} rows", rows.len()));
    }
    let rows = t4.filtered(&parse_filter("cor421").unwrap());
    if rows.len() != 1 || rows[0].f != grp("alt(4)") || rows[0].fp != s4 {
        failures.push(format!("d=4 cor421: {} rows", rows.len()));
    }
    let t5 = scan(5).unwrap();
    let rows = t5.filtered(&parse_filter("cor421").unwrap());
    let has = |f: &str, fp: &str| {
        let (f, fp) = (grp(f), grp(fp));
        rows.iter()
            .any(|r| same_class(&r.fp, &fp, &s5) && same_class(&r.f, &f, &s5))
    };
    if !has("agl_sq(1,5)", "agl(1,5)") {
        failures.push("d=5 cor421 misses the dihedral/affine pair".into());
    }
    if !has("alt(5)", "sym(5)") {
        failures.push("d=5 cor421 misses (Alt5, Sym5)".into());
    }
    finish(
        8,
        "scanner regressions",
        start,
        SCAN_LIMIT,
        failures,
        format!(
            "d=4: {} rows, d=5: {} rows, d=5 cor421: {}",
            t4.rows.len(),
            t5.rows.len(),
            rows.len()
        ),
    );
}

#[test]
fn criterion_09_lattice_obstruction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (f5, fp5) = (grp("psl2(5)"), grp("pgl2(5)"));
    let r5 = obstruction_for_groups(&f5, &fp5, 5).unwrap();
    let fa = f5.stabilizer(5).unwrap();
    match &r5.dp {
        Some(dp) => {
            if dp.order() != 20 || 20 >= 2usize.pow(5) {
                failures.push(format!("q=5: D' has order {}", dp.order()));
            }
            if !is_essential(&fa, dp).unwrap()
                || !is_essential_by_cyclic_subgroups(&fa, dp).unwrap()
            {
                failures.push("q=5: F_a is not essential in D'".into());
            }
        }
        None => failures.push("q=5: no obstruction".into()),
    }
    let r9 = obstruction_for_groups(&grp("psl2(9)"), &grp("pgl2(9)"), 9).unwrap();
    if !r9.found {
        failures.push("q=9: no obstruction".into());
    }
    let d9 = r9.dp.as_ref().map_or(0, |g| g.order());
    finish(
        9,
        "lattice obstruction",
        start,
        DEFAULT_LIMIT,
        failures,
        format!("q=5: |D'|=20 < 32; q=9: |D'|={d9}"),
    );
}

#[test]
fn criterion_10_wreath_measures() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let dp = grp("cyclic(4)");
    let d = find_embedding(&grp("cyclic(2)"), &dp).unwrap().unwrap();
    let ctx = WreathContext::new(4, d.clone(), dp.clone()).unwrap();
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    if haar_measures(&ctx, 0).mu_k != int(2) || haar_measures(&ctx, 1).mu_k != int(8) {
        failures.push("mu(K_0), mu(K_1) differ from 2, 8".into());
    }
    let direction = 4u64.pow(3) > 2u64.pow(4);
    if ctx.diverges() != direction || !ctx.diverges() {
        failures.push("divergence direction".into());
    }
    for n in 0..=1 {
        let m = haar_measures(&ctx, n);
        let w = BigRational::from_integer(BigInt::from(almostlocal::wreath::iterated_order(
            &d,
            4,
            n + 1,
        )));
        let lit = literal_level_order(&ctx, n).unwrap().unwrap();
        if m.mu_k * w != int(lit as i64) {
            failures.push(format!("literal wreath product disagrees at level {n}"));
        }
    }
    if !lattice_obstruction(&ctx).unwrap() {
        failures.push("no obstruction".into());
    }
    finish(
        10,
        "wreath measures",
        start,
        DEFAULT_LIMIT,
        failures,
        "mu(K_0)=2/1, mu(K_1)=8/1, 4^3 > 2^4".into(),
    );
}

#[test]
fn criterion_11_embedding_quadruples() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (f, fp, h, hp) = (
        grp("agl_sq(1,5)"),
        grp("agl(1,5)"),
        grp("alt(5)"),
        grp("sym(5)"),
    );
    let e = embedding_report(&f, &fp, &h, &hp).unwrap();
    let product: BTreeSet<Perm> = product_set_literal(&h, &fp).unwrap();
    let hp_set: BTreeSet<Perm> = hp.elements().iter().copied().collect();
    if !(e.closed && e.cocompact) || h.intersection(&fp).unwrap() != f || product != hp_set {
        failures.push("affine quadruple is not closed and cocompact".into());
    }
    let sym7 = grp("sym(7)");
    let (d7, a7) = (grp("dihedral(7)"), grp("alt(7)"));
    let c7 = d7.intersection(&a7).unwrap();
    if !c7.orbit_data().simply_transitive || !c7.is_free() || c7 != grp("cyclic(7)") {
        failures.push("D7 ∩ Alt7 is not the free C7".into());
    }
    let e7 = embedding_report(&c7, &a7, &d7, &sym7).unwrap();
    if !(e7.closed && e7.cocompact && e7.cocompact_lattice) {
        failures.push("d=7 quadruple is not a cocompact lattice embedding".into());
    }
    let rh = classify(&d7, &sym7, None, None).unwrap();
    let rf = classify(&c7, &a7, None, None).unwrap();
    if rh.answer("thm413") != Answer::Yes || rf.answer("cor414") != Answer::Yes {
        failures.push("simplicity hypotheses fail at d=7".into());
    }
    finish(
        11,
        "embedding quadruples",
        start,
        DEFAULT_LIMIT,
        failures,
        "affine: closed, cocompact; d=7: lattice, thm413 (D7,Sym7), cor414 (C7,Alt7)".into(),
    );
}

#[test]
fn criterion_12_conjugation_commensuration() {
    let start = Instant::now();
    let p = pair("dihedral(4)", "sym(4)");
    let mut r = rng(1200);
    let mut failures = Vec::new();
    for i in 0..50 {
        let g = random_element(&p, &mut r).unwrap();
        if !conjugation_commensuration_check(&p, &g, 200, 1200 + i).unwrap() {
            failures.push(format!("sample {i} fails"));
        }
    }
    finish(
        12,
        "conjugation commensuration",
        start,
        DEFAULT_LIMIT,
        failures,
        "50 elements × 200 samples".into(),
    );
}
