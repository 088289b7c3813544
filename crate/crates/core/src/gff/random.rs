use rand::seq::SliceRandom;
use rand::Rng;

use super::{extend_star, GffError, GroupPair};
use crate::perm::Perm;
use crate::portrait::Portrait;
use crate::tree::Vertex;

fn random_vertex<R: Rng + ?Sized>(d: usize, max_len: usize, rng: &mut R) -> Vertex {
    let len = rng.gen_range(0..=max_len);
    let mut word: Vec<u8> = Vec::with_capacity(len);
    while word.len() < len {
        let c = rng.gen_range(0..d) as u8;
        if word.last() != Some(&c) {
            word.push(c);
        }
    }
    Vertex::from_word(&word).expect("reduced word")
}

fn pick<R: Rng + ?Sized>(elements: &[Perm], rng: &mut R) -> Perm {
    *elements.choose(rng).expect("groups are nonempty")
}

fn generator<R: Rng + ?Sized>(p: &GroupPair, rng: &mut R) -> Result<Portrait, GffError> {
    let d = p.degree();
    let kinds = if p.is_transitive() { 3 } else { 2 };
    match rng.gen_range(0..kinds) {
        0 => Ok(Portrait::constant(
            pick(p.f().elements(), rng),
            random_vertex(d, 2, rng),
        )),
        1 => {
            let v = random_vertex(d, 2, rng);
            let image = if rng.gen_bool(0.5) {
                v.clone()
            } else {
                random_vertex(d, 2, rng)
            };
            extend_star(p, &v, pick(p.fp().elements(), rng), &image)
        }
        _ => {
            let h = p.translation(rng.gen_range(1..d))?;
            Ok(if rng.gen_bool(0.5) { h } else { h.inverse()? })
        }
    }
}

/// A product of one to six random generators of `G(F,F')`: constant
/// automorphisms, star extensions near `v₀`, and translations when `F` is
/// transitive.
pub fn random_element<R: Rng + ?Sized>(p: &GroupPair, rng: &mut R) -> Result<Portrait, GffError> {
    let k = rng.gen_range(1..=6);
    let mut acc = Portrait::identity(p.degree());
    for _ in 0..k {
        acc = acc.compose(&generator(p, rng)?)?;
    }
    Ok(acc)
}

/// `random_element`, shifted by one edge when it swaps the two vertex types.
pub fn random_type_preserving<R: Rng + ?Sized>(
    p: &GroupPair,
    rng: &mut R,
) -> Result<Portrait, GffError> {
    let g = random_element(p, rng)?;
    if g.root_image().len() % 2 == 0 {
        return Ok(g);
    }
    let shift = Portrait::constant(Perm::identity(p.degree()), Vertex::v1());
    Ok(shift.compose(&g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gff::membership_report;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (f, fp) in [
            ("dihedral(4)", "sym(4)"),
            ("gens(4, (1 2)(3 4))", "gens(4, (1 2), (3 4))"),
        ] {
            let p = GroupPair::from_specs(f, fp).unwrap();
            for _ in 0..30 {
                let g = random_element(&p, &mut rng).unwrap();
                assert!(membership_report(&p, &g).unwrap().in_gffp);
                assert!(g.check_automorphism_on_ball(3));
                let t = random_type_preserving(&p, &mut rng).unwrap();
                assert!(membership_report(&p, &t).unwrap().type_preserving);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let p = GroupPair::from_specs("cyclic(5)", "alt(5)").unwrap();
        let a = random_element(&p, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = random_element(&p, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }
}
