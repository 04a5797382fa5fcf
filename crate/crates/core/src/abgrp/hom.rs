use std::fmt;

use num_bigint::BigInt;

use crate::linalg::{kernel_basis, ColumnSpan, IntMatrix};

use super::{AbError, AbGroup};

/// A homomorphism between presented groups, given on generators.
///
/// `mat` has one row per generator of `dst` and one column per generator of
/// `src`: column `j` is the image of generator `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Hom {
    src: AbGroup,
    dst: AbGroup,
    mat: IntMatrix,
}

fn check_shape(src: &AbGroup, dst: &AbGroup, mat: &IntMatrix) -> Result<(), AbError> {
    if mat.shape() != (dst.n_gens(), src.n_gens()) {
        return Err(AbError::Shape(format!(
            "hom matrix is {}x{}, expected {}x{}",
            mat.rows(),
            mat.cols(),
            dst.n_gens(),
            src.n_gens()
        )));
    }
    Ok(())
}

/// Whether `mat` sends every relation of `src` into the relations of `dst`.
pub fn well_defined(src: &AbGroup, dst: &AbGroup, mat: &IntMatrix) -> Result<bool, AbError> {
    check_shape(src, dst, mat)?;
    let images = mat.mul(src.rels());
    Ok(dst.relation_span().contains_columns(&images)?)
}

impl Hom {
    /// Checked constructor: the shape must match and the map must respect relations.
    pub fn new(src: AbGroup, dst: AbGroup, mat: IntMatrix) -> Result<Self, AbError> {
        if !well_defined(&src, &dst, &mat)? {
            return Err(AbError::NotWellDefined(format!(
                "matrix {mat:?} does not map relations of the source into relations of the target"
            )));
        }
        Ok(Hom { src, dst, mat })
    }

    /// Shape-checked only. Use [`Hom::is_well_defined`] before relying on it.
    pub fn new_unchecked(src: AbGroup, dst: AbGroup, mat: IntMatrix) -> Result<Self, AbError> {
        check_shape(&src, &dst, &mat)?;
        Ok(Hom { src, dst, mat })
    }

    pub fn from_i64(src: &AbGroup, dst: &AbGroup, entries: &[i64]) -> Result<Self, AbError> {
        if entries.len() != src.n_gens() * dst.n_gens() {
            return Err(AbError::Shape(format!(
                "{} entries for a {}x{} hom matrix",
                entries.len(),
                dst.n_gens(),
                src.n_gens()
            )));
        }
        Self::new(
            src.clone(),
            dst.clone(),
            IntMatrix::from_i64(dst.n_gens(), src.n_gens(), entries),
        )
    }

    pub fn identity(a: &AbGroup) -> Self {
        Hom {
            src: a.clone(),
            dst: a.clone(),
            mat: IntMatrix::identity(a.n_gens()),
        }
    }

    pub fn zero(src: &AbGroup, dst: &AbGroup) -> Self {
        Hom {
            src: src.clone(),
            dst: dst.clone(),
            mat: IntMatrix::zeros(dst.n_gens(), src.n_gens()),
        }
    }

    pub fn src(&self) -> &AbGroup {
        &self.src
    }

    pub fn dst(&self) -> &AbGroup {
        &self.dst
    }

    pub fn mat(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn is_well_defined(&self) -> bool {
        well_defined(&self.src, &self.dst, &self.mat).unwrap_or(false)
    }

    /// Image of the element with generator coordinates `x`.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>, AbError> {
        Ok(self.mat.mul_vec(x)?)
    }

    fn same_endpoints(&self, other: &Hom, op: &'static str) -> Result<(), AbError> {
        if self.src != other.src || self.dst != other.dst {
            return Err(AbError::EndpointMismatch(op));
        }
        Ok(())
    }

    /// Semantic equality: the matrices agree modulo the relations of `dst`.
    pub fn equals(&self, other: &Hom) -> Result<bool, AbError> {
        self.same_endpoints(other, "hom_equal")?;
        if self.mat == other.mat {
            return Ok(true);
        }
        let diff = self.mat.try_sub(&other.mat)?;
        Ok(self.dst.relation_span().contains_columns(&diff)?)
    }

    pub fn is_zero(&self) -> bool {
        self.dst
            .relation_span()
            .contains_columns(&self.mat)
            .expect("shape checked at construction")
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Hom) -> Result<Hom, AbError> {
        compose(self, f)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Hom) -> Result<Hom, AbError> {
        self.same_endpoints(other, "hom_add")?;
        Ok(Hom {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: self.mat.try_add(&other.mat)?,
        })
    }

    pub fn neg(&self) -> Hom {
        Hom {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: self.mat.neg(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Hom {
        Hom {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: self.mat.scale(k),
        }
    }

    /// Generators of the lattice `{x : mat x ∈ span rels(dst)}`, as columns.
    pub(crate) fn preimage_of_zero(&self) -> IntMatrix {
        let m = self
            .mat
            .hstack(&self.dst.rels().neg())
            .expect("rows agree by construction");
        kernel_basis(&m).row_block(0..self.src.n_gens())
    }

    /// Injective on group elements.
    pub fn is_mono(&self) -> bool {
        let pre = self.preimage_of_zero();
        self.src
            .relation_span()
            .contains_columns(&pre)
            .expect("shape checked at construction")
    }

    /// Surjective: the cokernel is trivial.
    pub fn is_epi(&self) -> bool {
        super::cokernel(self).0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// The inverse of an isomorphism; `None` when `self` is not one.
    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_iso() {
            return None;
        }
        // Columns x with mat x_j = e_j modulo the relations of dst.
        let n = self.dst.n_gens();
        let span = ColumnSpan::new(&self.mat.hstack(self.dst.rels()).expect("rows agree"));
        let sol = span
            .solve_columns(&IntMatrix::identity(n))
            .expect("shapes agree")
            .expect("an epimorphism hits every generator");
        let inv = sol.row_block(0..self.src.n_gens());
        Some(Hom {
            src: self.dst.clone(),
            dst: self.src.clone(),
            mat: inv,
        })
    }
}

/// `g ∘ f`. Fails unless `dst(f) = src(g)`.
pub fn compose(g: &Hom, f: &Hom) -> Result<Hom, AbError> {
    if f.dst != g.src {
        return Err(AbError::EndpointMismatch("compose"));
    }
    Ok(Hom {
        src: f.src.clone(),
        dst: g.dst.clone(),
        mat: g.mat.mul(&f.mat),
    })
}

/// Composite of a chain given innermost first: `chain(&[f, g, h]) = h ∘ g ∘ f`.
pub fn compose_chain(arrows: &[&Hom]) -> Result<Hom, AbError> {
    let (first, rest) = arrows
        .split_first()
        .ok_or_else(|| AbError::Shape("empty composition".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, h| compose(h, &acc))
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({} -> {}, {:?})",
            self.src.describe(),
            self.dst.describe(),
            self.mat
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_definedness_examples() {
        let z2 = AbGroup::cyclic(2);
        let z3 = AbGroup::cyclic(3);
        let z4 = AbGroup::cyclic(4);
        let one = IntMatrix::from_i64(1, 1, &[1]);
        assert!(!well_defined(&z2, &z3, &one).unwrap());
        assert!(Hom::new(z2.clone(), z3, one).is_err());
        assert!(Hom::from_i64(&z2, &z4, &[2]).is_ok());
        assert!(Hom::identity(&z4).is_well_defined());
        assert!(well_defined(&z2, &z4, &IntMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn semantic_equality() {
        let z = AbGroup::free(1);
        let z2 = AbGroup::cyclic(2);
        let a = Hom::from_i64(&z, &z2, &[1]).unwrap();
        let b = Hom::from_i64(&z, &z2, &[3]).unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Hom::from_i64(&z, &z, &[1]).unwrap();
        let d = Hom::from_i64(&z, &z, &[2]).unwrap();
        assert!(!c.equals(&d).unwrap());
        assert!(a.equals(&c).is_err());
    }

    #[test]
    fn composition() {
        let z = AbGroup::free(1);
        let z4 = AbGroup::cyclic(4);
        let two = Hom::from_i64(&z, &z, &[2]).unwrap();
        let three = Hom::from_i64(&z, &z, &[3]).unwrap();
        assert_eq!(compose(&two, &three).unwrap().mat(), &IntMatrix::from_i64(1, 1, &[6]));
        let p = Hom::from_i64(&z, &z4, &[1]).unwrap();
        let c = compose(&p, &two).unwrap();
        assert!(c.equals(&Hom::from_i64(&z, &z4, &[2]).unwrap()).unwrap());
        let id = Hom::identity(&z4);
        assert!(compose(&id, &p).unwrap().equals(&p).unwrap());
        assert!(compose(&two, &p).is_err());
        let chain = compose_chain(&[&three, &two, &p]).unwrap();
        assert!(chain.equals(&Hom::from_i64(&z, &z4, &[6]).unwrap()).unwrap());
    }

    #[test]
    fn mono_and_epi() {
        let z = AbGroup::free(1);
        let z2 = AbGroup::cyclic(2);
        let z4 = AbGroup::cyclic(4);
        let two = Hom::from_i64(&z, &z, &[2]).unwrap();
        assert!(two.is_mono());
        assert!(!two.is_epi());
        let inc = Hom::from_i64(&z2, &z4, &[2]).unwrap();
        assert!(inc.is_mono());
        assert!(!inc.is_epi());
        assert!(!Hom::zero(&z2, &z2).is_mono());
        let proj = Hom::from_i64(&z, &z2, &[1]).unwrap();
        assert!(proj.is_epi());
        assert!(!proj.is_iso());
        assert!(Hom::identity(&z4).is_iso());
        // Z/4 -> Z/4, x -> 3x is an automorphism.
        assert!(Hom::from_i64(&z4, &z4, &[3]).unwrap().is_iso());
    }

    #[test]
    fn inverses() {
        let z4 = AbGroup::cyclic(4);
        let three = Hom::from_i64(&z4, &z4, &[3]).unwrap();
        let inv = three.inverse().unwrap();
        assert!(inv.is_well_defined());
        assert!(compose(&inv, &three).unwrap().equals(&Hom::identity(&z4)).unwrap());
        let z = AbGroup::free(1);
        assert!(Hom::from_i64(&z, &z, &[2]).unwrap().inverse().is_none());
    }
}
