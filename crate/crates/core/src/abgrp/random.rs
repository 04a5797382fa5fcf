//! Seeded sampling of groups and arrows.
//!
//! Every sampler takes an explicit `Rng`; the `*_seeded` wrappers build a
//! `ChaCha8Rng` from a `u64`. Rejection loops give up after
//! [`RETRY_CAP`] attempts with [`AbError::Sampling`].

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::IntMatrix;

use super::{combine, hom_group_generators, pushout, AbError, AbGroup, Hom, Span};

pub const RETRY_CAP: usize = 1000;

/// Presentation-size bounds: at most `gens` generators, `rels` relations,
/// entries in `[-entry, entry]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub gens: usize,
    pub rels: usize,
    pub entry: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            gens: 4,
            rels: 4,
            entry: 6,
        }
    }
}

impl Caps {
    pub fn new(gens: usize, rels: usize, entry: i64) -> Self {
        Caps { gens, rels, entry }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    if bound == 0 || rng.gen_bool(0.5) {
        0
    } else {
        rng.gen_range(-bound..=bound)
    }
}

/// A group with at most `caps.gens` generators and `caps.rels` relations.
/// About half of the relation entries are zero so torsion and free parts
/// both show up.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, caps: Caps) -> AbGroup {
    let n = rng.gen_range(0..=caps.gens);
    let k = if n == 0 { 0 } else { rng.gen_range(0..=caps.rels) };
    let data: Vec<i64> = (0..n * k).map(|_| entry(rng, caps.entry)).collect();
    AbGroup::new(n, IntMatrix::from_i64(n, k, &data)).expect("shape fixed above")
}

pub fn random_group_seeded(seed: u64, caps: Caps) -> AbGroup {
    random_group(&mut rng_from_seed(seed), caps)
}

/// An integer combination of [`hom_group_generators`] with coefficients in `[-3, 3]`.
pub fn random_hom<R: Rng + ?Sized>(rng: &mut R, a: &AbGroup, b: &AbGroup) -> Hom {
    let gens = hom_group_generators(a, b);
    let coeffs: Vec<BigInt> = gens
        .iter()
        .map(|_| BigInt::from(rng.gen_range(-3..=3)))
        .collect();
    combine(a, b, &gens, &coeffs)
}

pub fn random_hom_seeded(seed: u64, a: &AbGroup, b: &AbGroup) -> Hom {
    random_hom(&mut rng_from_seed(seed), a, b)
}

/// A unimodular `n x n` matrix: a short product of elementary shears,
/// swaps and sign flips.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> IntMatrix {
    let mut w = IntMatrix::identity(n);
    if n == 0 {
        return w;
    }
    for _ in 0..rng.gen_range(0..=2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut e = IntMatrix::identity(n);
        match rng.gen_range(0..4) {
            0 | 1 if i != j => e.set(i, j, BigInt::from(rng.gen_range(-2..=2))),
            2 if i != j => {
                e.set(i, i, BigInt::from(0));
                e.set(j, j, BigInt::from(0));
                e.set(i, j, BigInt::from(1));
                e.set(j, i, BigInt::from(1));
            }
            _ => e.set(i, i, BigInt::from(-1)),
        }
        w = e.mul(&w);
    }
    w
}

/// An isomorphism `g → g'` onto a reshuffled presentation of the same group:
/// a unimodular change of generators, sometimes a redundant generator and
/// sometimes a redundant relation.
pub fn random_representation<R: Rng + ?Sized>(rng: &mut R, g: &AbGroup) -> Hom {
    let n = g.n_gens();
    let mut rels = g.rels().clone();
    if rels.cols() > 0 && rng.gen_bool(0.3) {
        let coeffs: Vec<BigInt> = (0..rels.cols())
            .map(|_| BigInt::from(rng.gen_range(-2..=2)))
            .collect();
        let extra = rels.mul_vec(&coeffs).expect("length matches");
        rels = rels
            .hstack(&IntMatrix::column_vector(&extra))
            .expect("rows agree");
    }
    let mut map = IntMatrix::identity(n);
    if rng.gen_bool(0.3) {
        // New generator t with the relation t = c . x.
        let mut link: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
        link.push(BigInt::from(-1));
        map = map.vstack(&IntMatrix::zeros(1, n)).expect("columns agree");
        rels = rels
            .vstack(&IntMatrix::zeros(1, rels.cols()))
            .expect("columns agree")
            .hstack(&IntMatrix::column_vector(&link))
            .expect("rows agree");
    }
    let w = random_unimodular(rng, map.rows());
    let rels = w.mul(&rels);
    let map = w.mul(&map);
    let target = AbGroup::new(map.rows(), rels).expect("consistent presentation");
    Hom::new_unchecked(g.clone(), target, map).expect("shapes")
}

/// Monomorphisms out of `a` whose shape is accepted by `accept`.
///
/// A "cell" `c: Z^k → T` is drawn until `accept(c)` holds, then pushed out
/// along a random `Z^k → a` and followed by [`random_representation`]. With
/// `k = 0` this is a split coprojection `a → a ⊕ T`. `accept` should only
/// accept monos; the pushout of a mono is again a mono.
pub fn random_extension<R, F>(rng: &mut R, a: &AbGroup, caps: Caps, accept: F) -> Result<Hom, AbError>
where
    R: Rng + ?Sized,
    F: Fn(&Hom) -> bool,
{
    let small = Caps {
        gens: caps.gens.min(2),
        ..caps
    };
    for _ in 0..RETRY_CAP {
        let k = rng.gen_range(0..=1usize);
        let s = AbGroup::free(k);
        let t = random_group(rng, small);
        let c = random_hom(rng, &s, &t);
        if !accept(&c) {
            continue;
        }
        let h = random_hom(rng, &s, a);
        let po = pushout(&Span::new(h, c)?);
        let iso = random_representation(rng, &po.p);
        return super::compose(&iso, &po.into_b);
    }
    Err(AbError::Sampling {
        what: "extension",
        attempts: RETRY_CAP,
    })
}

/// A monomorphism out of `a` with arbitrary cokernel.
pub fn random_mono<R: Rng + ?Sized>(rng: &mut R, a: &AbGroup, caps: Caps) -> Result<Hom, AbError> {
    random_extension(rng, a, caps, Hom::is_mono)
}

pub fn random_mono_seeded(seed: u64, a: &AbGroup, caps: Caps) -> Result<Hom, AbError> {
    random_mono(&mut rng_from_seed(seed), a, caps)
}

/// A random automorphism of `g`, built from shears in generator coordinates
/// and kept only when it is an isomorphism.
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, g: &AbGroup) -> Hom {
    for _ in 0..8 {
        let w = random_unimodular(rng, g.n_gens());
        if let Ok(h) = Hom::new(g.clone(), g.clone(), w) {
            if h.is_iso() {
                return h;
            }
        }
    }
    Hom::identity(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_group_is_deterministic() {
        let caps = Caps::new(3, 5, 6);
        assert_eq!(random_group_seeded(42, caps), random_group_seeded(42, caps));
    }

    #[test]
    fn hom_of_zero_group_is_zero() {
        let z = AbGroup::zero();
        let b = random_group_seeded(3, Caps::default());
        assert!(random_hom_seeded(1, &z, &b).is_zero());
        assert!(random_hom_seeded(1, &b, &z).is_zero());
    }

    #[test]
    fn sampled_homs_are_well_defined() {
        let mut rng = rng_from_seed(5);
        for _ in 0..100 {
            let a = random_group(&mut rng, Caps::default());
            let b = random_group(&mut rng, Caps::default());
            assert!(random_hom(&mut rng, &a, &b).is_well_defined());
        }
    }

    #[test]
    fn monos_are_monos() {
        let mut rng = rng_from_seed(11);
        for _ in 0..100 {
            let a = random_group(&mut rng, Caps::default());
            let m = random_mono(&mut rng, &a, Caps::default()).unwrap();
            assert!(m.is_well_defined());
            assert!(m.is_mono(), "{m:?}");
        }
    }

    #[test]
    fn representations_are_isos() {
        let mut rng = rng_from_seed(19);
        for _ in 0..100 {
            let g = random_group(&mut rng, Caps::default());
            let r = random_representation(&mut rng, &g);
            assert!(r.is_well_defined());
            assert!(r.is_iso());
            assert!(g.isomorphic(r.dst()));
            let auto = random_automorphism(&mut rng, &g);
            assert!(auto.is_iso());
        }
    }
}
