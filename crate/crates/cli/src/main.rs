use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use almostlocal::criteria::{
    classify, crosscheck, disagreements, embedding_report, example_library, parse_filter,
    run_example, scan,
};
use almostlocal::gff::{
    decompose_ku, membership_report, random_element, reduce_simple, sigma_reduce,
    singularity_report, symdiff_m, symdiff_m_oracle, word_decompose,
};
use almostlocal::perm::find_embedding;
use almostlocal::wreath::{haar_measures, lattice_obstruction, WreathContext};
use almostlocal::{construct_group, GroupPair, PermGroup, Portrait};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "almostlocal",
    version,
    about = "Groups of tree automorphisms prescribed locally almost everywhere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every criterion on a pair F ≤ F'.
    Classify {
        #[arg(long = "F")]
        f: String,
        #[arg(long = "Fp")]
        fp: String,
        /// Index-two intermediate group for thm420.
        #[arg(long = "Fpp")]
        fpp: Option<String>,
        /// Largest index excluded by prop311 (default: degree - 1).
        #[arg(long)]
        k: Option<usize>,
        /// Overgroup H ≥ F for an embedding report; needs --Hp.
        #[arg(long = "H", requires = "hp")]
        h: Option<String>,
        #[arg(long = "Hp", requires = "h")]
        hp: Option<String>,
        /// Recompute every verdict by the direct path and compare.
        #[arg(long)]
        crosscheck: bool,
    },
    /// Classify all subgroup pairs of Sym(d) up to conjugacy.
    Scan {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "")]
        filter: String,
    },
    /// Run an algorithm on one element of G(F,F').
    Elem {
        /// `F,F'` as two group descriptors separated by a top-level comma.
        #[arg(long)]
        pair: String,
        /// Portrait file; without it a random element is drawn from --seed.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        op: ElemOp,
        #[arg(long = "Fpp")]
        fpp: Option<String>,
        /// Directory for factor portraits.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Haar measures and the lattice obstruction for iterated wreath products.
    Wreath {
        #[arg(long = "D")]
        d: String,
        #[arg(long = "Dp")]
        dp: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        level: usize,
    },
    /// Run the example library.
    Examples {
        /// `all` or an example name.
        #[arg(long)]
        run: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ElemOp {
    Report,
    Decompose,
    Word,
    Reduce,
    Symdiff,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn group(spec: &str) -> Result<PermGroup> {
    construct_group(spec).with_context(|| format!("group {spec:?}"))
}

/// Splits `a(b, c), d` at the first comma outside parentheses.
fn split_pair(s: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((s[..i].trim(), s[i + 1..].trim())),
            _ => {}
        }
    }
    bail!("--pair needs two descriptors separated by a comma, got {s:?}")
}

fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Classify {
            f,
            fp,
            fpp,
            k,
            h,
            hp,
            crosscheck: cc,
        } => cmd_classify(&f, &fp, fpp.as_deref(), k, h.zip(hp), cc),
        Command::Scan { degree, filter } => {
            let filter = parse_filter(&filter)?;
            Ok(scan(degree)?.render(&filter))
        }
        Command::Elem {
            pair,
            input,
            op,
            fpp,
            out,
            seed,
        } => cmd_elem(
            &pair,
            input.as_deref(),
            op,
            fpp.as_deref(),
            out.as_deref(),
            seed,
        ),
        Command::Wreath { d, dp, ell, level } => cmd_wreath(&d, &dp, ell, level),
        Command::Examples { run } => cmd_examples(&run),
    }
}

fn cmd_classify(
    f: &str,
    fp: &str,
    fpp: Option<&str>,
    k: Option<usize>,
    quad: Option<(String, String)>,
    cc: bool,
) -> Result<String> {
    let (fg, fpg) = (group(f)?, group(fp)?);
    let fppg = fpp.map(group).transpose()?;
    let report = classify(&fg, &fpg, fppg.as_ref(), k)?;
    let mut out = report.to_string();
    if !report.standing.answer.is_yes() {
        print!("{out}");
        bail!("standing assumption fails: {}", report.standing.evidence);
    }
    if cc {
        let c = crosscheck(&fg, &fpg, report.k)?;
        let bad = disagreements(&report, &c);
        if !bad.is_empty() {
            print!("{out}");
            bail!("cross-check disagrees on {}", bad.join(", "));
        }
        let n = c.verdicts.iter().filter(|(_, v)| v.is_some()).count();
        out.push_str(&format!("crosscheck: {n} criteria agree\n"));
    }
    if let Some((h, hp)) = quad {
        let e = embedding_report(&fg, &fpg, &group(&h)?, &group(&hp)?)?;
        out.push_str(&e.to_string());
    }
    Ok(out)
}

fn write_portrait(dir: Option<&Path>, name: &str, g: &Portrait) -> Result<()> {
    if let Some(dir) = dir {
        let path = dir.join(name);
        fs::write(&path, g.to_string()).with_context(|| format!("writing {}", path.display()))?;
        let back = Portrait::parse(&fs::read_to_string(&path)?)?;
        if back != *g {
            bail!(
                "{} does not re-parse to the written element",
                path.display()
            );
        }
    }
    Ok(())
}

fn cmd_elem(
    pair: &str,
    input: Option<&Path>,
    op: ElemOp,
    fpp: Option<&str>,
    out: Option<&Path>,
    seed: u64,
) -> Result<String> {
    let (f, fp) = split_pair(pair)?;
    let p = GroupPair::new(group(f)?, group(fp)?)?;
    let fppg = fpp.map(group).transpose()?;
    let g = match input {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Portrait::parse(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => random_element(&p, &mut ChaCha8Rng::seed_from_u64(seed))?,
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut text = String::new();
    match op {
        ElemOp::Report => {
            let s = singularity_report(&p, &g, fppg.as_ref())?;
            text.push_str(&membership_report(&p, &g)?.to_string());
            text.push_str(&s.to_string());
        }
        ElemOp::Symdiff => {
            let n = symdiff_m(&p, &g)?;
            let oracle = symdiff_m_oracle(&p, &g)?;
            if n != oracle {
                bail!("symmetric difference {n} disagrees with the coset count {oracle}");
            }
            text.push_str(&format!("{n}\n"));
        }
        ElemOp::Decompose => {
            let (gamma, parts) = decompose_ku(&p, &g)?;
            let mut acc = gamma.clone();
            write_portrait(out, "gamma.txt", &gamma)?;
            for (i, (v, x)) in parts.iter().enumerate() {
                acc = acc.compose(x)?;
                write_portrait(out, &format!("part_{:02}.txt", i + 1), x)?;
                text.push_str(&format!("part {}: vertex {}\n", i + 1, v.literal()));
            }
            if acc != g {
                bail!("factors do not multiply back to the input");
            }
            text.push_str(&format!("parts: {}\nverified: yes\n", parts.len()));
        }
        ElemOp::Word => {
            let w = word_decompose(&p, &g)?;
            if w.evaluate(&p)? != g {
                bail!("word does not evaluate to the input");
            }
            if let Some(dir) = out {
                let lines: Vec<String> = w.letters.iter().map(|l| l.to_string()).collect();
                let body = if lines.is_empty() {
                    String::new()
                } else {
                    lines.join("\n") + "\n"
                };
                fs::write(dir.join("word.txt"), body)?;
                for (i, l) in w.letters.iter().enumerate() {
                    write_portrait(out, &format!("letter_{:02}.txt", i + 1), &l.evaluate(&p)?)?;
                }
            }
            text.push_str(&format!("word: {w}\nlength: {}\nverified: yes\n", w.len()));
        }
        ElemOp::Reduce => match &fppg {
            Some(h) => {
                let (gammas, residual) = sigma_reduce(&p, h, &g)?;
                let mut acc = g.clone();
                for (i, x) in gammas.iter().enumerate() {
                    acc = x.compose(&acc)?;
                    write_portrait(out, &format!("gamma_{:02}.txt", i + 1), x)?;
                }
                if acc != residual {
                    bail!("reduction steps do not multiply to the residual");
                }
                write_portrait(out, "residual.txt", &residual)?;
                let sigma = singularity_report(&p, &residual, Some(h))?
                    .sigma
                    .unwrap_or_default();
                text.push_str(&format!(
                    "steps: {}\nresidual_sigma: {}\nverified: yes\n",
                    gammas.len(),
                    sigma.len()
                ));
            }
            None => {
                let cert = reduce_simple(&p, &g)?;
                if !cert.verify(&g)? {
                    bail!("certificate does not verify");
                }
                for (i, step) in cert.steps.iter().enumerate() {
                    write_portrait(out, &format!("step_{:02}.txt", i + 1), &step.element)?;
                    text.push_str(&format!(
                        "step {}: vertex {}, rho {}, {} commutators\n",
                        i + 1,
                        step.vertex.literal(),
                        step.rho,
                        step.factors.len()
                    ));
                }
                write_portrait(out, "residual.txt", &cert.residual)?;
                let m = membership_report(&p, &cert.residual)?;
                text.push_str(&format!(
                    "steps: {}\nresidual_in_UF: {}\nresidual_type_preserving: {}\nverified: yes\n",
                    cert.steps.len(),
                    yn(m.in_uf),
                    yn(m.type_preserving)
                ));
            }
        },
    }
    Ok(text)
}

fn cmd_wreath(d: &str, dp: &str, ell: usize, level: usize) -> Result<String> {
    let (dg, dpg) = (group(d)?, group(dp)?);
    let dg = find_embedding(&dg, &dpg)?.ok_or_else(|| anyhow!("{d} does not embed in {dp}"))?;
    let ctx = WreathContext::new(ell, dg, dpg)?;
    let obstruction = lattice_obstruction(&ctx)?;
    let mut out = String::new();
    for n in 0..=level {
        let m = haar_measures(&ctx, n);
        out.push_str(&format!(
            "level {n}: mu_U: {}, mu_K: {}, diverges: {}, obstruction: {}\n",
            rational(&m.mu_u),
            rational(&m.mu_k),
            yn(m.diverges),
            yn(obstruction)
        ));
    }
    Ok(out)
}

fn cmd_examples(which: &str) -> Result<String> {
    let lib = example_library();
    let chosen: Vec<_> = lib
        .iter()
        .filter(|e| which == "all" || e.name == which)
        .collect();
    if chosen.is_empty() {
        bail!("unknown example {which:?}");
    }
    let mut out = String::new();
    let mut failed = 0;
    for ex in &chosen {
        let o = run_example(ex)?;
        out.push_str(&format!(
            "{}: {}\n",
            ex.name,
            if o.passed { "PASS" } else { "FAIL" }
        ));
        for l in &o.lines {
            out.push_str(&format!("  {l}\n"));
        }
        failed += usize::from(!o.passed);
    }
    out.push_str(&format!(
        "{} of {} passed\n",
        chosen.len() - failed,
        chosen.len()
    ));
    if failed > 0 {
        print!("{out}");
        bail!("{failed} example(s) failed");
    }
    Ok(out)
}
