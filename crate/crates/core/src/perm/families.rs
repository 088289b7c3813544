//! Group-family descriptors such as `pgl2(5)` or `gens(4, (1 2 3), (1 2))`.

use super::{FiniteField, Perm, PermError, PermGroup, MAX_DEGREE};

fn bad(family: &str, reason: impl Into<String>) -> PermError {
    PermError::BadArguments {
        family: family.to_string(),
        reason: reason.into(),
    }
}

/// Splits `a, b(c, d), e` at top-level commas.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn int_arg(family: &str, s: &str) -> Result<usize, PermError> {
    s.trim()
        .parse()
        .map_err(|_| bad(family, format!("expected an integer, got {s:?}")))
}

fn degree_arg(family: &str, s: &str) -> Result<usize, PermError> {
    let d = int_arg(family, s)?;
    if !(1..=MAX_DEGREE).contains(&d) {
        return Err(PermError::DegreeOutOfRange(d));
    }
    Ok(d)
}

fn expect_args(family: &str, args: &[String], n: usize) -> Result<(), PermError> {
    if args.len() != n {
        return Err(bad(
            family,
            format!("expected {n} argument(s), got {}", args.len()),
        ));
    }
    Ok(())
}

/// Builds a group from a descriptor string.
///
/// Families: `gens(d, c1, c2, ..)`, `trivial(d)`, `cyclic(d)`, `dihedral(d)`,
/// `sym(d)`, `alt(d)`, `young(n1, n2, ..)`, `psl2(q)`, `pgl2(q)`, `agl(1,q)`,
/// `agl_sq(1,q)`, `wreath_imprimitive(D, k)`, `ex_alt(d)`, `kk(p, m)`,
/// `kk_prime(p, m)` and `stab(G, a)`.
pub fn construct_group(spec: &str) -> Result<PermGroup, PermError> {
    let s = spec.trim();
    let open = s
        .find('(')
        .ok_or_else(|| PermError::UnknownFamily(s.to_string()))?;
    if !s.ends_with(')') {
        return Err(PermError::MalformedCycle(s.to_string()));
    }
    let name = s[..open].trim();
    let args = split_args(&s[open + 1..s.len() - 1]);
    match name {
        "gens" => {
            if args.is_empty() {
                return Err(bad(name, "missing degree"));
            }
            let d = degree_arg(name, &args[0])?;
            let gens: Result<Vec<Perm>, _> = args[1..].iter().map(|c| Perm::parse(c, d)).collect();
            PermGroup::generate(d, &gens?)
        }
        "trivial" => {
            expect_args(name, &args, 1)?;
            Ok(PermGroup::trivial(degree_arg(name, &args[0])?))
        }
        "cyclic" => {
            expect_args(name, &args, 1)?;
            cyclic(degree_arg(name, &args[0])?)
        }
        "dihedral" => {
            expect_args(name, &args, 1)?;
            dihedral(degree_arg(name, &args[0])?)
        }
        "sym" => {
            expect_args(name, &args, 1)?;
            symmetric(degree_arg(name, &args[0])?)
        }
        "alt" => {
            expect_args(name, &args, 1)?;
            alternating(degree_arg(name, &args[0])?)
        }
        "young" => {
            let parts: Result<Vec<usize>, _> = args.iter().map(|a| int_arg(name, a)).collect();
            let parts = parts?;
            if parts.is_empty() || parts.contains(&0) {
                return Err(bad(name, "partition parts must be positive"));
            }
            let d: usize = parts.iter().sum();
            if d > MAX_DEGREE {
                return Err(PermError::DegreeOutOfRange(d));
            }
            let mut blocks = Vec::new();
            let mut start = 0;
            for p in parts {
                blocks.push((start..start + p).collect());
                start += p;
            }
            young_from_blocks(d, &blocks)
        }
        "psl2" | "pgl2" => {
            expect_args(name, &args, 1)?;
            let f = FiniteField::new(int_arg(name, &args[0])?)?;
            projective(&f, name == "psl2")
        }
        "agl" | "agl_sq" => {
            expect_args(name, &args, 2)?;
            if int_arg(name, &args[0])? != 1 {
                return Err(bad(name, "only dimension 1 is supported"));
            }
            let f = FiniteField::new(int_arg(name, &args[1])?)?;
            affine(&f, name == "agl_sq")
        }
        "wreath_imprimitive" => {
            expect_args(name, &args, 2)?;
            let base = construct_group(&args[0])?;
            let k = degree_arg(name, &args[1])?;
            imprimitive_wreath(&base, &cyclic(k)?)
        }
        "ex_alt" => {
            expect_args(name, &args, 1)?;
            ex_alt(degree_arg(name, &args[0])?)
        }
        "kk" | "kk_prime" => {
            expect_args(name, &args, 2)?;
            let p = int_arg(name, &args[0])?;
            let m = degree_arg(name, &args[1])?;
            kk_pair(p, m, name == "kk_prime")
        }
        "stab" => {
            expect_args(name, &args, 2)?;
            let g = construct_group(&args[0])?;
            let a = int_arg(name, &args[1])?;
            if a == 0 {
                return Err(PermError::PointOutOfRange {
                    point: 0,
                    degree: g.degree(),
                });
            }
            g.stabilizer(a - 1)
        }
        _ => Err(PermError::UnknownFamily(name.to_string())),
    }
}

fn cyclic(d: usize) -> Result<PermGroup, PermError> {
    let pts: Vec<usize> = (0..d).collect();
    PermGroup::generate(d, &[Perm::cycle(d, &pts)?])
}

/// Order `2d` acting on the vertices of a `d`-gon; the reflection fixes 1.
fn dihedral(d: usize) -> Result<PermGroup, PermError> {
    if d < 3 {
        return Err(bad("dihedral", "degree must be at least 3"));
    }
    let pts: Vec<usize> = (0..d).collect();
    let rot = Perm::cycle(d, &pts)?;
    let refl: Vec<usize> = (0..d).map(|i| (d - i) % d).collect();
    PermGroup::generate(d, &[rot, Perm::from_images(&refl)?])
}

fn symmetric(d: usize) -> Result<PermGroup, PermError> {
    if d == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let pts: Vec<usize> = (0..d).collect();
    PermGroup::generate(d, &[Perm::cycle(d, &[0, 1])?, Perm::cycle(d, &pts)?])
}

fn alternating(d: usize) -> Result<PermGroup, PermError> {
    let gens: Result<Vec<Perm>, _> = (2..d).map(|i| Perm::cycle(d, &[0, 1, i])).collect();
    PermGroup::generate(d, &gens?)
}

/// Product of the symmetric groups on the given blocks.
pub fn young_from_blocks(d: usize, blocks: &[Vec<usize>]) -> Result<PermGroup, PermError> {
    let mut gens = Vec::new();
    for b in blocks {
        for w in b.windows(2) {
            gens.push(Perm::cycle(d, &[w[0], w[1]])?);
        }
    }
    PermGroup::generate(d, &gens)
}

/// Action on the projective line: field elements are points `1..q`, infinity is `q+1`.
fn projective(f: &FiniteField, special: bool) -> Result<PermGroup, PermError> {
    let q = f.order();
    let n = q + 1;
    if n > MAX_DEGREE {
        return Err(PermError::DegreeOutOfRange(n));
    }
    let inf = q;
    let mobius = |a: usize, b: usize, c: usize, dd: usize| -> Result<Perm, PermError> {
        let mut img = vec![0; n];
        for (x, slot) in img.iter_mut().enumerate() {
            let (num, den) = if x == inf {
                (a, c)
            } else {
                (f.add(f.mul(a, x), b), f.add(f.mul(c, x), dd))
            };
            *slot = if den == 0 {
                inf
            } else {
                f.mul(num, f.inv(den).unwrap())
            };
        }
        Perm::from_images(&img)
    };
    let w = f.primitive_element();
    let scale = if special { f.mul(w, w) } else { w };
    let mut gens = vec![mobius(scale, 0, 0, 1)?, mobius(0, f.neg(1), 1, 0)?];
    for b in 1..q {
        gens.push(mobius(1, b, 0, 1)?);
    }
    PermGroup::generate(n, &gens)
}

/// `x ↦ ax + b` on the field elements `1..q`; with `squares` only square `a`.
fn affine(f: &FiniteField, squares: bool) -> Result<PermGroup, PermError> {
    let q = f.order();
    if q > MAX_DEGREE {
        return Err(PermError::DegreeOutOfRange(q));
    }
    let map = |a: usize, b: usize| -> Result<Perm, PermError> {
        let img: Vec<usize> = (0..q).map(|x| f.add(f.mul(a, x), b)).collect();
        Perm::from_images(&img)
    };
    let w = f.primitive_element();
    let a = if squares { f.mul(w, w) } else { w };
    let mut gens = vec![map(a, 0)?];
    for b in 1..q {
        gens.push(map(1, b)?);
    }
    PermGroup::generate(q, &gens)
}

/// `base ≀ top`: `top` permutes `m` blocks of size `ℓ`; point `(j, t)` of block
/// `j` is `j + t·m`, so the blocks are `{j, j+m, j+2m, ..}`.
pub fn imprimitive_wreath(base: &PermGroup, top: &PermGroup) -> Result<PermGroup, PermError> {
    let l = base.degree();
    let m = top.degree();
    let n = l * m;
    if n > MAX_DEGREE {
        return Err(PermError::DegreeOutOfRange(n));
    }
    let mut gens = Vec::new();
    for tau in top.generators() {
        let img: Vec<usize> = (0..n).map(|x| tau.apply(x % m) + (x / m) * m).collect();
        gens.push(Perm::from_images(&img)?);
    }
    for delta in base.generators() {
        for j in 0..m {
            let img: Vec<usize> = (0..n)
                .map(|x| {
                    if x % m == j {
                        j + delta.apply(x / m) * m
                    } else {
                        x
                    }
                })
                .collect();
            gens.push(Perm::from_images(&img)?);
        }
    }
    PermGroup::generate(n, &gens)
}

/// For `d = 4n`: generated by `(1..2n)(2n+1..4n)` and `∏ (i, 2n+i)`.
/// For odd `d`: the cyclic group of a `d`-cycle.
fn ex_alt(d: usize) -> Result<PermGroup, PermError> {
    if d % 2 == 1 {
        return cyclic(d);
    }
    if !d.is_multiple_of(4) {
        return Err(bad("ex_alt", "degree must be odd or divisible by 4"));
    }
    let h = d / 2;
    let a: Vec<usize> = (0..h).collect();
    let b: Vec<usize> = (h..d).collect();
    let x = Perm::cycle(d, &a)?.compose(&Perm::cycle(d, &b)?);
    let img: Vec<usize> = (0..d).map(|i| (i + h) % d).collect();
    PermGroup::generate(d, &[x, Perm::from_images(&img)?])
}

/// `α = ∏ ((i-1)p+1 .. ip)` on `m` points; with `with_tau` also
/// `τ = ∏_{i ≤ p} (i, p+i)`.
fn kk_pair(p: usize, m: usize, with_tau: bool) -> Result<PermGroup, PermError> {
    let fam = if with_tau { "kk_prime" } else { "kk" };
    if p < 2 || !m.is_multiple_of(p) || m < 2 * p {
        return Err(bad(fam, "need p ≥ 2, p | m and m ≥ 2p"));
    }
    let mut alpha = Perm::identity(m);
    for blk in 0..m / p {
        let pts: Vec<usize> = (blk * p..(blk + 1) * p).collect();
        alpha = alpha.compose(&Perm::cycle(m, &pts)?);
    }
    let mut gens = vec![alpha];
    if with_tau {
        let mut tau = Perm::identity(m);
        for i in 0..p {
            tau = tau.compose(&Perm::cycle(m, &[i, p + i])?);
        }
        gens.push(tau);
    }
    PermGroup::generate(m, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> usize {
        construct_group(s).unwrap().order()
    }

    #[test]
    fn family_orders() {
        assert_eq!(order("cyclic(5)"), 5);
        assert_eq!(order("dihedral(4)"), 8);
        assert_eq!(order("dihedral(7)"), 14);
        assert_eq!(order("sym(5)"), 120);
        assert_eq!(order("alt(5)"), 60);
        assert_eq!(order("young(2,1,1)"), 2);
        assert_eq!(order("young(3,2)"), 12);
        assert_eq!(order("agl(1,5)"), 20);
        assert_eq!(order("agl_sq(1,5)"), 10);
        assert_eq!(order("agl(1,9)"), 72);
        assert_eq!(order("wreath_imprimitive(cyclic(2), 3)"), 24);
        assert_eq!(order("gens(4, (1 2 3), (1 2))"), 6);
        assert_eq!(order("stab(pgl2(5), 6)"), 20);
    }

    #[test]
    fn projective_orders() {
        for (q, psl, pgl) in [
            (2, 6, 6),
            (3, 12, 24),
            (4, 60, 60),
            (5, 60, 120),
            (7, 168, 336),
            (9, 360, 720),
        ] {
            let g = construct_group(&format!("psl2({q})")).unwrap();
            assert_eq!(g.degree(), q + 1);
            assert_eq!(g.order(), psl, "psl2({q})");
            assert_eq!(order(&format!("pgl2({q})")), pgl, "pgl2({q})");
        }
    }

    #[test]
    fn ex_alt_eight() {
        let g = construct_group("ex_alt(8)").unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.orbit_data().simply_transitive);
        assert!(g.elements().iter().all(|x| x.is_even()));
        let expect = [
            Perm::parse("(1 2 3 4)(5 6 7 8)", 8).unwrap(),
            Perm::parse("(1 5)(2 6)(3 7)(4 8)", 8).unwrap(),
        ];
        assert_eq!(g, PermGroup::generate(8, &expect).unwrap());
    }

    #[test]
    fn kk_construction() {
        let k = construct_group("kk(3, 9)").unwrap();
        let kp = construct_group("kk_prime(3, 9)").unwrap();
        assert_eq!(k.order(), 3);
        assert_eq!(kp.order(), 6);
        assert!(k.is_free());
        assert!(k.elements().iter().all(|x| x.is_even()));
        assert!(kp.elements().iter().any(|x| !x.is_even()));
        assert!(k.is_subgroup_of(&kp));
    }

    #[test]
    fn wreath_blocks() {
        let w = construct_group("wreath_imprimitive(cyclic(2), 3)").unwrap();
        let c6 = construct_group("cyclic(6)").unwrap();
        assert!(c6.is_subgroup_of(&w));
        for g in w.elements() {
            for j in 0..3 {
                assert_eq!(g.apply(j) % 3, g.apply(j + 3) % 3);
            }
        }
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(
            construct_group("foo(3)"),
            Err(PermError::UnknownFamily(_))
        ));
        assert!(matches!(
            construct_group("psl2(6)"),
            Err(PermError::UnsupportedField(6))
        ));
        assert!(construct_group("gens(3, (1 2)").is_err());
        assert!(construct_group("gens(3, (1 4))").is_err());
        assert!(construct_group("sym").is_err());
    }
}
