//! Finite limits and colimits of presented groups.

use crate::linalg::{column_basis, kernel_basis, ColumnSpan, IntMatrix};

use super::{compose, AbError, AbGroup, Cospan, Hom, Span, Square};

/// `A ⊕ B` with its coprojections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: AbGroup,
    pub inj_a: Hom,
    pub inj_b: Hom,
    pub proj_a: Hom,
    pub proj_b: Hom,
}

pub fn direct_sum(a: &AbGroup, b: &AbGroup) -> DirectSum {
    let (na, nb) = (a.n_gens(), b.n_gens());
    let sum = AbGroup::new(na + nb, a.rels().block_diag(b.rels())).expect("block presentation");
    let id_a = IntMatrix::identity(na);
    let id_b = IntMatrix::identity(nb);
    let inj_a = id_a.vstack(&IntMatrix::zeros(nb, na)).expect("shapes");
    let inj_b = IntMatrix::zeros(na, nb).vstack(&id_b).expect("shapes");
    let proj_a = id_a.hstack(&IntMatrix::zeros(na, nb)).expect("shapes");
    let proj_b = IntMatrix::zeros(nb, na).hstack(&id_b).expect("shapes");
    DirectSum {
        inj_a: Hom::new_unchecked(a.clone(), sum.clone(), inj_a).expect("shapes"),
        inj_b: Hom::new_unchecked(b.clone(), sum.clone(), inj_b).expect("shapes"),
        proj_a: Hom::new_unchecked(sum.clone(), a.clone(), proj_a).expect("shapes"),
        proj_b: Hom::new_unchecked(sum.clone(), b.clone(), proj_b).expect("shapes"),
        sum,
    }
}

pub fn zero_object() -> AbGroup {
    AbGroup::zero()
}

pub fn identity(a: &AbGroup) -> Hom {
    Hom::identity(a)
}

pub fn zero_hom(a: &AbGroup, b: &AbGroup) -> Hom {
    Hom::zero(a, b)
}

/// Hom out of a direct sum given by its two components: `[f | g]`.
pub fn copair(sum: &DirectSum, f: &Hom, g: &Hom) -> Result<Hom, AbError> {
    if f.src() != sum.inj_a.src() || g.src() != sum.inj_b.src() || f.dst() != g.dst() {
        return Err(AbError::EndpointMismatch("copair"));
    }
    Hom::new_unchecked(sum.sum.clone(), f.dst().clone(), f.mat().hstack(g.mat())?)
}

/// Hom into a direct sum given by its two components: `[f ; g]`.
pub fn pair(sum: &DirectSum, f: &Hom, g: &Hom) -> Result<Hom, AbError> {
    if f.dst() != sum.inj_a.src() || g.dst() != sum.inj_b.src() || f.src() != g.src() {
        return Err(AbError::EndpointMismatch("pair"));
    }
    Hom::new_unchecked(f.src().clone(), sum.sum.clone(), f.mat().vstack(g.mat())?)
}

/// `dst(f) / f(src(f))`, presented on the generators of `dst(f)`, with the
/// quotient map (identity on generators).
pub fn cokernel(f: &Hom) -> (AbGroup, Hom) {
    let dst = f.dst();
    let rels = dst.rels().hstack(f.mat()).expect("rows agree by construction");
    let q = AbGroup::new(dst.n_gens(), rels).expect("cokernel presentation");
    let proj = Hom::new_unchecked(dst.clone(), q.clone(), IntMatrix::identity(dst.n_gens()))
        .expect("shapes");
    (q, proj)
}

/// Pushout of a span together with the span itself.
#[derive(Clone, Debug)]
pub struct PushoutResult {
    pub span: Span,
    pub p: AbGroup,
    pub into_b: Hom,
    pub into_c: Hom,
}

impl PushoutResult {
    /// The pushout square (`D = P`).
    pub fn square(&self) -> Square {
        Square {
            f: self.span.f.clone(),
            g: self.span.g.clone(),
            u: self.into_c.clone(),
            v: self.into_b.clone(),
        }
    }
}

/// `P = (B ⊕ C) / {(f(a), -g(a))}`, with the coprojections followed by the quotient.
pub fn pushout(span: &Span) -> PushoutResult {
    let (f, g) = (&span.f, &span.g);
    let b = f.dst();
    let c = g.dst();
    let (nb, nc) = (b.n_gens(), c.n_gens());
    let glue = f.mat().vstack(&g.mat().neg()).expect("columns agree");
    let rels = b
        .rels()
        .block_diag(c.rels())
        .hstack(&glue)
        .expect("rows agree");
    let p = AbGroup::new(nb + nc, rels).expect("pushout presentation");
    let into_b = IntMatrix::identity(nb)
        .vstack(&IntMatrix::zeros(nc, nb))
        .expect("shapes");
    let into_c = IntMatrix::zeros(nb, nc)
        .vstack(&IntMatrix::identity(nc))
        .expect("shapes");
    PushoutResult {
        span: span.clone(),
        into_b: Hom::new_unchecked(b.clone(), p.clone(), into_b).expect("shapes"),
        into_c: Hom::new_unchecked(c.clone(), p.clone(), into_c).expect("shapes"),
        p,
    }
}

/// The unique `t: P → X` with `t ∘ into_b = b` and `t ∘ into_c = c`.
pub fn mediating_from_pushout(po: &PushoutResult, b: &Hom, c: &Hom) -> Result<Hom, AbError> {
    if b.src() != po.into_b.src() || c.src() != po.into_c.src() || b.dst() != c.dst() {
        return Err(AbError::EndpointMismatch("mediating_from_pushout"));
    }
    if !compose(b, &po.span.f)?.equals(&compose(c, &po.span.g)?)? {
        return Err(AbError::CoconeViolated(
            "b∘f and c∘g differ; the cocone does not commute".into(),
        ));
    }
    Hom::new(po.p.clone(), b.dst().clone(), b.mat().hstack(c.mat())?)
}

/// Pullback of a cospan together with the cospan itself.
#[derive(Clone, Debug)]
pub struct PullbackResult {
    pub cospan: Cospan,
    pub q: AbGroup,
    pub q_b: Hom,
    pub q_c: Hom,
    /// Lattice basis of the pair lattice, `(n_B + n_C) x n_gens(Q)`.
    basis: ColumnSpan,
}

impl PullbackResult {
    /// The pullback square: `A = Q`, `f = q_b`, `g = q_c`, `u = v_cospan`, `v = u_cospan`.
    pub fn square(&self) -> Square {
        Square {
            f: self.q_b.clone(),
            g: self.q_c.clone(),
            u: self.cospan.v.clone(),
            v: self.cospan.u.clone(),
        }
    }
}

/// `Q = {(b, c) : u(b) = v(c)}` for `u: B → D`, `v: C → D`.
///
/// Generators of `Q` are a lattice basis of the pairs of generator
/// coordinates `(x, y)` with `u x - v y` in the relations of `D`; relations
/// are the relations of `B ⊕ C` rewritten in that basis.
pub fn pullback(u: &Hom, v: &Hom) -> Result<PullbackResult, AbError> {
    if u.dst() != v.dst() {
        return Err(AbError::EndpointMismatch("pullback: u and v must share a target"));
    }
    let b = u.src();
    let c = v.src();
    let d = u.dst();
    let (nb, nc) = (b.n_gens(), c.n_gens());
    let m = u
        .mat()
        .hstack(&v.mat().neg())?
        .hstack(&d.rels().neg())?;
    let pairs = kernel_basis(&m).row_block(0..nb + nc);
    let basis = column_basis(&pairs);
    let basis_span = ColumnSpan::new(&basis);
    let rels_bc = b.rels().block_diag(c.rels());
    let rels = basis_span
        .solve_columns(&rels_bc)?
        .expect("relations of B ⊕ C lie in the pair lattice for well-defined u, v");
    let q = AbGroup::new(basis.cols(), rels)?;
    let q_b = Hom::new_unchecked(q.clone(), b.clone(), basis.row_block(0..nb))?;
    let q_c = Hom::new_unchecked(q.clone(), c.clone(), basis.row_block(nb..nb + nc))?;
    Ok(PullbackResult {
        cospan: Cospan {
            u: u.clone(),
            v: v.clone(),
        },
        q,
        q_b,
        q_c,
        basis: basis_span,
    })
}

/// The unique `m: X → Q` with `q_b ∘ m = x` and `q_c ∘ m = y`.
pub fn mediating_into_pullback(pb: &PullbackResult, x: &Hom, y: &Hom) -> Result<Hom, AbError> {
    if x.dst() != pb.q_b.dst() || y.dst() != pb.q_c.dst() || x.src() != y.src() {
        return Err(AbError::EndpointMismatch("mediating_into_pullback"));
    }
    if !compose(&pb.cospan.u, x)?.equals(&compose(&pb.cospan.v, y)?)? {
        return Err(AbError::CoconeViolated(
            "u∘x and v∘y differ; the cone does not commute".into(),
        ));
    }
    let stacked = x.mat().vstack(y.mat())?;
    let coords = pb
        .basis
        .solve_columns(&stacked)?
        .expect("commuting cone lands in the pair lattice");
    Hom::new(x.src().clone(), pb.q.clone(), coords)
}

/// Kernel of `f` as a subgroup of its source, with the inclusion.
pub fn kernel(f: &Hom) -> Result<(AbGroup, Hom), AbError> {
    let zero = AbGroup::zero();
    let pb = pullback(f, &Hom::zero(&zero, f.dst()))?;
    Ok((pb.q, pb.q_b))
}

/// Image of `f` as a subgroup of its target, with the inclusion.
pub fn image(f: &Hom) -> Result<(AbGroup, Hom), AbError> {
    let (_, proj) = cokernel(f);
    kernel(&proj)
}

/// Whether the square is a pullback: the induced map `A → Q` into the
/// pullback of its cospan is an isomorphism.
pub fn is_pullback_square(sq: &Square) -> Result<bool, AbError> {
    let pb = pullback(&sq.v, &sq.u)?;
    let m = mediating_into_pullback(&pb, &sq.f, &sq.g)?;
    Ok(m.is_iso())
}

/// Whether the square is a pushout: the mediating map `P → D` is an isomorphism.
pub fn is_pushout_square(sq: &Square) -> Result<bool, AbError> {
    let po = pushout(&sq.span());
    let t = mediating_from_pushout(&po, &sq.v, &sq.u)?;
    Ok(t.is_iso())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cokernel_examples() {
        let z = AbGroup::free(1);
        let five = Hom::from_i64(&z, &z, &[5]).unwrap();
        assert_eq!(cokernel(&five).0.canon(), (0, &[b(5)][..]));
        assert!(cokernel(&Hom::identity(&z)).0.is_trivial());
        let a = AbGroup::from_invariants(1, &[b(3)]);
        let (q, proj) = cokernel(&Hom::zero(&AbGroup::zero(), &a));
        assert!(q.isomorphic(&a));
        assert!(proj.is_iso());
    }

    #[test]
    fn direct_sum_examples() {
        let ds = direct_sum(&AbGroup::free(1), &AbGroup::cyclic(2));
        assert_eq!(ds.sum.canon(), (1, &[b(2)][..]));
        assert!(zero_object().is_trivial());
        assert!(identity(&ds.sum).is_iso());
        assert!(ds.inj_a.is_well_defined() && ds.proj_b.is_well_defined());
        assert!(compose(&ds.proj_a, &ds.inj_a).unwrap().equals(&Hom::identity(&AbGroup::free(1))).unwrap());
        assert!(compose(&ds.proj_b, &ds.inj_a).unwrap().is_zero());
    }

    #[test]
    fn pushout_along_identity() {
        let z = AbGroup::free(1);
        let bgrp = AbGroup::from_invariants(1, &[b(2)]);
        let f = Hom::from_i64(&z, &bgrp, &[1, 1]).unwrap();
        let po = pushout(&Span::new(f.clone(), Hom::identity(&z)).unwrap());
        assert!(po.p.isomorphic(&bgrp));
        assert!(po.into_b.is_iso());
    }

    #[test]
    fn pushout_two_three() {
        let z = AbGroup::free(1);
        let two = Hom::from_i64(&z, &z, &[2]).unwrap();
        let three = Hom::from_i64(&z, &z, &[3]).unwrap();
        // B <-x2- Z -x3-> C
        let po = pushout(&Span::new(two.clone(), three.clone()).unwrap());
        assert_eq!(po.p.canon(), (1, &[][..]));
        // cocone (x3, x2) into Z mediates to an isomorphism
        let t = mediating_from_pushout(&po, &three, &two).unwrap();
        assert!(t.is_iso());
        assert!(compose(&t, &po.into_b).unwrap().equals(&three).unwrap());
        assert!(compose(&t, &po.into_c).unwrap().equals(&two).unwrap());
        // wrong cocone
        assert!(matches!(
            mediating_from_pushout(&po, &two, &two),
            Err(AbError::CoconeViolated(_))
        ));
    }

    #[test]
    fn pushout_of_projections_is_trivial() {
        let z = AbGroup::free(1);
        let p2 = Hom::from_i64(&z, &AbGroup::cyclic(2), &[1]).unwrap();
        let p3 = Hom::from_i64(&z, &AbGroup::cyclic(3), &[1]).unwrap();
        let po = pushout(&Span::new(p2, p3).unwrap());
        assert!(po.p.is_trivial());
        assert_eq!(po.p.n_gens(), 2);
        assert_eq!(po.p.n_rels(), 3);
    }

    #[test]
    fn mediating_from_coproduct() {
        let zero = AbGroup::zero();
        let z = AbGroup::free(1);
        let z4 = AbGroup::cyclic(4);
        let po = pushout(&Span::new(Hom::zero(&zero, &z), Hom::zero(&zero, &z4)).unwrap());
        let x = AbGroup::cyclic(4);
        let bmap = Hom::from_i64(&z, &x, &[1]).unwrap();
        let cmap = Hom::from_i64(&z4, &x, &[2]).unwrap();
        let t = mediating_from_pushout(&po, &bmap, &cmap).unwrap();
        assert_eq!(t.mat(), &IntMatrix::from_i64(1, 2, &[1, 2]));
        let own = mediating_from_pushout(&po, &po.into_b, &po.into_c).unwrap();
        assert!(own.equals(&Hom::identity(&po.p)).unwrap());
    }

    #[test]
    fn pullback_examples() {
        let z = AbGroup::free(1);
        let two = Hom::from_i64(&z, &z, &[2]).unwrap();
        let three = Hom::from_i64(&z, &z, &[3]).unwrap();
        let pb = pullback(&two, &three).unwrap();
        assert_eq!(pb.q.canon(), (1, &[][..]));
        // q_b = ±3, q_c = ±2 on the single generator
        let qb = pb.q_b.mat().get(0, 0).clone();
        let qc = pb.q_c.mat().get(0, 0).clone();
        assert!(qb == b(3) && qc == b(2) || qb == b(-3) && qc == b(-2));

        let c = AbGroup::from_invariants(1, &[b(6)]);
        let v = Hom::from_i64(&c, &z, &[0, 5]).unwrap();
        let pb = pullback(&Hom::identity(&z), &v).unwrap();
        assert!(pb.q.isomorphic(&c));
        assert!(pb.q_c.is_iso());

        let z2 = AbGroup::free(2);
        let i1 = Hom::from_i64(&z, &z2, &[1, 0]).unwrap();
        let i2 = Hom::from_i64(&z, &z2, &[1, 2]).unwrap();
        let pb = pullback(&i1, &i2).unwrap();
        assert!(pb.q.is_trivial());
    }

    #[test]
    fn pullback_mediating_and_errors() {
        let z = AbGroup::free(1);
        let z4 = AbGroup::cyclic(4);
        let u = Hom::from_i64(&z, &z4, &[2]).unwrap();
        let v = Hom::from_i64(&z4, &z4, &[2]).unwrap();
        let pb = pullback(&u, &v).unwrap();
        assert!(compose(&u, &pb.q_b).unwrap().equals(&compose(&v, &pb.q_c).unwrap()).unwrap());
        // own cone mediates to the identity
        let m = mediating_into_pullback(&pb, &pb.q_b, &pb.q_c).unwrap();
        assert!(m.equals(&Hom::identity(&pb.q)).unwrap());
        assert!(pullback(&u, &Hom::identity(&z)).is_err());
    }

    #[test]
    fn kernel_and_image() {
        let z2 = AbGroup::free(2);
        let z = AbGroup::free(1);
        let f = Hom::from_i64(&z2, &z, &[2, -3]).unwrap();
        let (k, inc) = kernel(&f).unwrap();
        assert_eq!(k.canon(), (1, &[][..]));
        assert!(inc.is_mono());
        assert!(compose(&f, &inc).unwrap().is_zero());
        let (im, inc) = image(&f).unwrap();
        assert_eq!(im.canon(), (1, &[][..]));
        assert!(inc.is_iso());
        let z6 = AbGroup::cyclic(6);
        let g = Hom::from_i64(&z6, &z6, &[2]).unwrap();
        assert_eq!(kernel(&g).unwrap().0.canon(), (0, &[b(2)][..]));
        assert_eq!(image(&g).unwrap().0.canon(), (0, &[b(3)][..]));
    }

    #[test]
    fn recognizes_pushout_and_pullback_squares() {
        let zero = AbGroup::zero();
        let z = AbGroup::free(1);
        let po = pushout(&Span::new(Hom::zero(&zero, &z), Hom::zero(&zero, &z)).unwrap());
        let sq = po.square();
        assert!(is_pushout_square(&sq).unwrap());
        assert!(is_pullback_square(&sq).unwrap());
    }
}
