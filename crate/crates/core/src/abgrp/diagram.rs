use super::{compose, AbError, AbGroup, Hom};

/// A span `B <-f- A -g-> C`.
#[derive(Clone, Debug)]
pub struct Span {
    pub f: Hom,
    pub g: Hom,
}

impl Span {
    pub fn new(f: Hom, g: Hom) -> Result<Self, AbError> {
        if f.src() != g.src() {
            return Err(AbError::EndpointMismatch("span: f and g must share a source"));
        }
        Ok(Span { f, g })
    }

    pub fn apex(&self) -> &AbGroup {
        self.f.src()
    }

    /// `C <-g- A -f-> B`.
    pub fn swapped(&self) -> Span {
        Span {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// Same apex, same legs up to semantic equality.
    pub fn same_as(&self, other: &Span) -> Result<bool, AbError> {
        if self.f.src() != other.f.src()
            || self.f.dst() != other.f.dst()
            || self.g.dst() != other.g.dst()
        {
            return Ok(false);
        }
        Ok(self.f.equals(&other.f)? && self.g.equals(&other.g)?)
    }
}

/// A cospan `B -u-> D <-v- C`.
#[derive(Clone, Debug)]
pub struct Cospan {
    pub u: Hom,
    pub v: Hom,
}

impl Cospan {
    pub fn new(u: Hom, v: Hom) -> Result<Self, AbError> {
        if u.dst() != v.dst() {
            return Err(AbError::EndpointMismatch("cospan: u and v must share a target"));
        }
        Ok(Cospan { u, v })
    }
}

/// A commutative square
///
/// ```text
///   C --u--> D
///   ^        ^
///   g        v
///   |        |
///   A --f--> B
/// ```
///
/// with `u ∘ g = v ∘ f` as homomorphisms.
#[derive(Clone, Debug)]
pub struct Square {
    pub f: Hom,
    pub g: Hom,
    pub u: Hom,
    pub v: Hom,
}

impl Square {
    /// Checks endpoints and commutativity.
    pub fn new(f: Hom, g: Hom, u: Hom, v: Hom) -> Result<Self, AbError> {
        let sq = Square { f, g, u, v };
        sq.check_endpoints()?;
        if !sq.commutes()? {
            return Err(AbError::NotCommutative(
                "u∘g and v∘f differ modulo the relations of D".into(),
            ));
        }
        Ok(sq)
    }

    /// Builds without the commutativity check (endpoints are still checked).
    pub fn new_unchecked(f: Hom, g: Hom, u: Hom, v: Hom) -> Result<Self, AbError> {
        let sq = Square { f, g, u, v };
        sq.check_endpoints()?;
        Ok(sq)
    }

    fn check_endpoints(&self) -> Result<(), AbError> {
        let ok = self.f.src() == self.g.src()
            && self.g.dst() == self.u.src()
            && self.f.dst() == self.v.src()
            && self.u.dst() == self.v.dst();
        if ok {
            Ok(())
        } else {
            Err(AbError::EndpointMismatch(
                "square: expected f: A→B, g: A→C, u: C→D, v: B→D",
            ))
        }
    }

    pub fn commutes(&self) -> Result<bool, AbError> {
        compose(&self.u, &self.g)?.equals(&compose(&self.v, &self.f)?)
    }

    pub fn a(&self) -> &AbGroup {
        self.f.src()
    }

    pub fn b(&self) -> &AbGroup {
        self.f.dst()
    }

    pub fn c(&self) -> &AbGroup {
        self.g.dst()
    }

    pub fn d(&self) -> &AbGroup {
        self.u.dst()
    }

    pub fn span(&self) -> Span {
        Span {
            f: self.f.clone(),
            g: self.g.clone(),
        }
    }

    pub fn cospan(&self) -> Cospan {
        Cospan {
            u: self.v.clone(),
            v: self.u.clone(),
        }
    }

    /// Reflection across the diagonal: swaps `f ↔ g` and `u ↔ v`.
    pub fn transpose(&self) -> Square {
        Square {
            f: self.g.clone(),
            g: self.f.clone(),
            u: self.v.clone(),
            v: self.u.clone(),
        }
    }

    /// Post-composes the top-right corner with `e: D → E`.
    pub fn extend(&self, e: &Hom) -> Result<Square, AbError> {
        Ok(Square {
            f: self.f.clone(),
            g: self.g.clone(),
            u: compose(e, &self.u)?,
            v: compose(e, &self.v)?,
        })
    }

    pub fn edges(&self) -> [(&'static str, &Hom); 4] {
        [("f", &self.f), ("g", &self.g), ("u", &self.u), ("v", &self.v)]
    }
}
