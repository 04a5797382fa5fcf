//! Samplers for arrows of `M` and for squares of `M`-arrows.
//!
//! All samplers retry internally and give up with
//! [`AbError::Sampling`] after [`RETRY_CAP`] attempts.

use rand::Rng;

use crate::abgrp::random::{random_extension, random_group, random_hom, random_representation, Caps, RETRY_CAP};
use crate::abgrp::{compose, kernel, pullback, pushout, AbError, AbGroup, Hom, Span, Square};

use super::{in_class, CellularStructure, ClassSpec};

fn starved(what: &'static str) -> AbError {
    AbError::Sampling {
        what,
        attempts: RETRY_CAP,
    }
}

fn small(caps: Caps) -> Caps {
    Caps {
        gens: caps.gens.min(2),
        ..caps
    }
}

/// A group in the class with at most two generators.
pub fn class_group<R: Rng + ?Sized>(rng: &mut R, spec: &ClassSpec, caps: Caps) -> Result<AbGroup, AbError> {
    let caps = small(caps);
    match spec {
        ClassSpec::TorsionFree => {
            let g = AbGroup::free(rng.gen_range(0..=caps.gens));
            Ok(random_representation(rng, &g).dst().clone())
        }
        ClassSpec::AllGroups => Ok(random_group(rng, caps)),
        ClassSpec::PerpOf(_) => {
            for _ in 0..RETRY_CAP {
                let g = random_group(rng, caps);
                if in_class(&g, spec) {
                    return Ok(g);
                }
            }
            Err(starved("group in class"))
        }
    }
}

/// An arrow of `M` out of `a`.
pub fn m_extension<R: Rng + ?Sized>(
    rng: &mut R,
    a: &AbGroup,
    cs: &CellularStructure,
    caps: Caps,
) -> Result<Hom, AbError> {
    random_extension(rng, a, caps, |c| cs.in_m(c))
}

/// An arrow of `M` into `d`: the kernel of a random `d → K` with `K` in the
/// class. The cokernel embeds in `K`, and all three classes are closed
/// under subgroups; the result is still checked.
pub fn m_subobject<R: Rng + ?Sized>(
    rng: &mut R,
    d: &AbGroup,
    cs: &CellularStructure,
    caps: Caps,
) -> Result<Hom, AbError> {
    for _ in 0..RETRY_CAP {
        if rng.gen_bool(0.1) {
            let iso = random_representation(rng, d);
            return Ok(iso.inverse().expect("representations are isomorphisms"));
        }
        let k = class_group(rng, &cs.class_spec, caps)?;
        let h = random_hom(rng, d, &k);
        let (_, inc) = kernel(&h)?;
        if cs.in_m(&inc) {
            return Ok(inc);
        }
    }
    Err(starved("subobject in M"))
}

/// A span of two `M`-arrows out of a random group.
pub fn m_span<R: Rng + ?Sized>(rng: &mut R, cs: &CellularStructure, caps: Caps) -> Result<Span, AbError> {
    let a = random_group(rng, small(caps));
    let f = m_extension(rng, &a, cs, caps)?;
    let g = m_extension(rng, &a, cs, caps)?;
    Span::new(f, g)
}

/// The pushout square of `span` followed by an `M`-extension (or a change
/// of presentation) of the corner. Always cellular.
pub fn cellular_square_over<R: Rng + ?Sized>(
    rng: &mut R,
    span: &Span,
    cs: &CellularStructure,
    caps: Caps,
) -> Result<Square, AbError> {
    let po = pushout(span);
    let e = if rng.gen_bool(0.7) {
        m_extension(rng, &po.p, cs, caps)?
    } else {
        random_representation(rng, &po.p)
    };
    po.square().extend(&e)
}

pub fn cellular_square<R: Rng + ?Sized>(rng: &mut R, cs: &CellularStructure, caps: Caps) -> Result<Square, AbError> {
    let span = m_span(rng, cs, caps)?;
    cellular_square_over(rng, &span, cs, caps)
}

/// Two subobjects of a random group and (a subobject of) their pullback.
pub fn pullback_square<R: Rng + ?Sized>(rng: &mut R, cs: &CellularStructure, caps: Caps) -> Result<Square, AbError> {
    let d = random_group(rng, caps);
    let v = m_subobject(rng, &d, cs, caps)?;
    let u = m_subobject(rng, &d, cs, caps)?;
    let pb = pullback(&v, &u)?;
    let sq = pb.square();
    if rng.gen_bool(0.7) {
        return Ok(sq);
    }
    let s = m_subobject(rng, &pb.q, cs, caps)?;
    Ok(Square {
        f: compose(&sq.f, &s)?,
        g: compose(&sq.g, &s)?,
        u: sq.u,
        v: sq.v,
    })
}

/// `(f, f, h, h)`: both legs equal. Cellular only when `f` is an isomorphism.
pub fn collapsed_square<R: Rng + ?Sized>(rng: &mut R, cs: &CellularStructure, caps: Caps) -> Result<Square, AbError> {
    let a = random_group(rng, small(caps));
    let f = m_extension(rng, &a, cs, caps)?;
    let h = m_extension(rng, f.dst(), cs, caps)?;
    Ok(Square {
        f: f.clone(),
        g: f,
        u: h.clone(),
        v: h,
    })
}

/// A commuting square of `M`-arrows from one of the constructions above:
/// cellular, pullback-shaped or collapsed.
pub fn mixed_square<R: Rng + ?Sized>(rng: &mut R, cs: &CellularStructure, caps: Caps) -> Result<Square, AbError> {
    for _ in 0..RETRY_CAP {
        let sq = match rng.gen_range(0..10) {
            0..=4 => cellular_square(rng, cs, caps)?,
            5..=7 => pullback_square(rng, cs, caps)?,
            _ => collapsed_square(rng, cs, caps)?,
        };
        if sq.edges().iter().all(|(_, e)| cs.in_m(e)) {
            return Ok(sq);
        }
    }
    Err(starved("square of M-arrows"))
}

/// A proper subgroup inclusion into `b`: the image of a random `Z^k → b`
/// or the kernel of a random `b → K`.
pub fn random_subgroup<R: Rng + ?Sized>(rng: &mut R, b: &AbGroup, caps: Caps) -> Result<Hom, AbError> {
    if rng.gen_bool(0.5) {
        let s = AbGroup::free(rng.gen_range(1..=2));
        let h = random_hom(rng, &s, b);
        Ok(crate::abgrp::image(&h)?.1)
    } else {
        let k = random_group(rng, small(caps));
        let h = random_hom(rng, b, &k);
        Ok(kernel(&h)?.1)
    }
}
