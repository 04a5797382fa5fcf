use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::{ColumnSpan, IntMatrix};

use super::AbError;

/// A finitely generated abelian group `Z^n / span(rels)`.
///
/// `rels` has one row per generator and one column per relation. The
/// presentation is kept exactly as given; the canonical decomposition is
/// cached alongside it. Cloning is cheap.
#[derive(Clone)]
pub struct AbGroup {
    inner: Arc<Inner>,
}

struct Inner {
    n_gens: usize,
    rels: IntMatrix,
    span: ColumnSpan,
    canon: Canonical,
}

/// Canonical coordinates of a presentation.
///
/// The torsion coordinates come first (orders `>= 2`, in divisibility
/// order), then `free_rank` coordinates of infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Generator coordinates to canonical coordinates (`m x n_gens`).
    pub to_canon: IntMatrix,
    /// Canonical coordinates back to generator coordinates (`n_gens x m`).
    pub from_canon: IntMatrix,
}

impl Canonical {
    pub fn dim(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of canonical coordinate `k`, with 0 meaning infinite.
    pub fn order(&self, k: usize) -> BigInt {
        self.torsion.get(k).cloned().unwrap_or_else(BigInt::zero)
    }
}

fn canonical_form(n_gens: usize, span: &ColumnSpan) -> Canonical {
    let snf = span.snf();
    let rank = span.rank();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..rank {
        let d = snf.s.get(i, i);
        if !d.is_one() {
            torsion_rows.push(i);
            torsion.push(d.clone());
        }
    }
    let free_rows: Vec<usize> = (rank..n_gens).collect();
    let kept: Vec<usize> = torsion_rows.iter().chain(&free_rows).copied().collect();
    Canonical {
        free_rank: free_rows.len(),
        torsion,
        to_canon: snf.u.select_rows(&kept),
        from_canon: snf.u_inv.select_cols(&kept),
    }
}

impl AbGroup {
    /// Group on `n_gens` generators subject to the columns of `rels`.
    pub fn new(n_gens: usize, rels: IntMatrix) -> Result<Self, AbError> {
        if rels.rows() != n_gens {
            return Err(AbError::Presentation(format!(
                "relation matrix has {} rows for {} generators",
                rels.rows(),
                n_gens
            )));
        }
        let span = ColumnSpan::new(&rels);
        let canon = canonical_form(n_gens, &span);
        Ok(AbGroup {
            inner: Arc::new(Inner {
                n_gens,
                rels,
                span,
                canon,
            }),
        })
    }

    /// Group presented by relation columns given as machine integers.
    pub fn from_relations(n_gens: usize, relations: &[&[i64]]) -> Result<Self, AbError> {
        let cols: Vec<Vec<BigInt>> = relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let rels = IntMatrix::from_columns(n_gens, &cols)?;
        Self::new(n_gens, rels)
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("free presentation")
    }

    /// `Z/n`; `cyclic(0)` is `Z`.
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::new(1, IntMatrix::from_i64(1, 1, &[n as i64])).expect("cyclic presentation")
        }
    }

    /// `Z^free_rank ⊕ Z/t_1 ⊕ ...` in diagonal form, torsion generators first.
    pub fn from_invariants(free_rank: usize, torsion: &[BigInt]) -> Self {
        let n = torsion.len() + free_rank;
        let mut rels = IntMatrix::zeros(n, torsion.len());
        for (k, t) in torsion.iter().enumerate() {
            rels.set(k, k, t.clone());
        }
        Self::new(n, rels).expect("diagonal presentation")
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn n_gens(&self) -> usize {
        self.inner.n_gens
    }

    pub fn rels(&self) -> &IntMatrix {
        &self.inner.rels
    }

    pub fn n_rels(&self) -> usize {
        self.inner.rels.cols()
    }

    /// Column span of the relations, with its Smith form cached.
    pub fn relation_span(&self) -> &ColumnSpan {
        &self.inner.span
    }

    pub fn canonical(&self) -> &Canonical {
        &self.inner.canon
    }

    /// `(free_rank, torsion invariant factors)`.
    pub fn canon(&self) -> (usize, &[BigInt]) {
        (self.inner.canon.free_rank, &self.inner.canon.torsion)
    }

    pub fn free_rank(&self) -> usize {
        self.inner.canon.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.inner.canon.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.canon.dim() == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.inner.canon.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.inner.canon.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.inner.canon.torsion.iter().product())
    }

    /// Same isomorphism class.
    pub fn isomorphic(&self, other: &AbGroup) -> bool {
        self.canon() == other.canon()
    }

    /// Whether the generator-coordinate vector `x` is zero in the group.
    pub fn is_zero_element(&self, x: &[BigInt]) -> Result<bool, AbError> {
        Ok(self.inner.span.contains(x)?)
    }

    /// Canonical coordinates of `x`, with torsion coordinates reduced into
    /// `[0, t)`. Two vectors name the same element iff their normal forms agree.
    pub fn normal_form(&self, x: &[BigInt]) -> Result<Vec<BigInt>, AbError> {
        let c = &self.inner.canon;
        let mut y = c.to_canon.mul_vec(x)?;
        for (k, t) in c.torsion.iter().enumerate() {
            y[k] = y[k].mod_floor(t);
        }
        Ok(y)
    }

    /// Generator coordinates of the element with canonical coordinates `y`.
    pub fn from_normal_form(&self, y: &[BigInt]) -> Result<Vec<BigInt>, AbError> {
        Ok(self.inner.canon.from_canon.mul_vec(y)?)
    }

    /// Every element of a finite group of order at most `limit`, as generator
    /// coordinates. `None` for infinite or larger groups.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let c = &self.inner.canon;
        let mut out = vec![Vec::<BigInt>::new()];
        for t in &c.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < t {
                    let mut p = prefix.clone();
                    p.push(k.clone());
                    next.push(p);
                    k += 1;
                }
            }
            out = next;
        }
        Some(
            out.into_iter()
                .map(|y| c.from_canon.mul_vec(&y).expect("canonical dimension"))
                .collect(),
        )
    }

    /// Additive order of the element `x`; 0 for infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Result<BigInt, AbError> {
        let y = self.normal_form(x)?;
        let c = &self.inner.canon;
        if y[c.torsion.len()..].iter().any(|v| !v.is_zero()) {
            return Ok(BigInt::zero());
        }
        let mut ord = BigInt::one();
        for (k, t) in c.torsion.iter().enumerate() {
            let g = y[k].gcd(t);
            ord = ord.lcm(&(t / g));
        }
        Ok(ord)
    }

    /// Human-readable isomorphism type, e.g. `Z^2 + Z/2 + Z/4`.
    pub fn describe(&self) -> String {
        let (r, t) = self.canon();
        let mut parts: Vec<String> = Vec::new();
        match r {
            0 => {}
            1 => parts.push("Z".into()),
            _ => parts.push(format!("Z^{r}")),
        }
        parts.extend(t.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub(crate) fn ptr_eq(&self, other: &AbGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

/// Equality of presentations (same generators, same relation matrix).
impl PartialEq for AbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || self.inner.rels == other.inner.rels
    }
}

impl Eq for AbGroup {}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AbGroup({} gens, rels {:?}; {})",
            self.n_gens(),
            self.rels(),
            self.describe()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn canon_examples() {
        let g = AbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4])).unwrap();
        assert_eq!(g.canon(), (0, &[b(2), b(4)][..]));
        assert_eq!(AbGroup::free(3).canon(), (3, &[][..]));
        let zero = AbGroup::new(1, IntMatrix::from_i64(1, 1, &[1])).unwrap();
        assert_eq!(zero.canon(), (0, &[][..]));
        assert!(zero.is_trivial());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(AbGroup::new(2, IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn non_diagonal_presentation() {
        // <a, b | 2a + 4b, 6a + 8b> has invariant factors 2, 4.
        let g = AbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 6, 4, 8])).unwrap();
        assert_eq!(g.torsion(), &[b(2), b(4)]);
        assert_eq!(g.order(), Some(b(8)));
        let els = g.elements(100).unwrap();
        assert_eq!(els.len(), 8);
        let mut nfs: Vec<_> = els.iter().map(|x| g.normal_form(x).unwrap()).collect();
        nfs.sort();
        nfs.dedup();
        assert_eq!(nfs.len(), 8);
    }

    #[test]
    fn normal_form_identifies_equal_elements() {
        let g = AbGroup::cyclic(6);
        assert_eq!(g.normal_form(&[b(7)]).unwrap(), g.normal_form(&[b(1)]).unwrap());
        assert_eq!(g.element_order(&[b(2)]).unwrap(), b(3));
        assert_eq!(g.element_order(&[b(6)]).unwrap(), b(1));
        let z = AbGroup::free(1);
        assert_eq!(z.element_order(&[b(5)]).unwrap(), b(0));
    }

    #[test]
    fn describe_strings() {
        assert_eq!(AbGroup::zero().describe(), "0");
        assert_eq!(
            AbGroup::from_invariants(2, &[b(2), b(4)]).describe(),
            "Z^2 + Z/2 + Z/4"
        );
    }
}
