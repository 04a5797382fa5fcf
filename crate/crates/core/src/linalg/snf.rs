//! Smith normal form by elimination with smallest-magnitude pivoting.
//!
//! The elimination engine is generic over a scalar type whose operations may
//! report overflow. It is first run on checked `i64` arithmetic; if any step
//! overflows, the whole computation restarts on `BigInt`. Both runs perform
//! the same sequence of operations, so the result does not depend on which
//! path finished.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::IntMatrix;

/// `s = u * input * v` with `u`, `v` unimodular and `s` in Smith form.
///
/// `u_inv` and `v_inv` are the exact inverses of `u` and `v`, tracked
/// alongside the elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal `d_1, ..., d_min(rows, cols)` of `s`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .take_while(|&i| !num_traits::Zero::is_zero(self.s.get(i, i)))
            .count()
    }
}

pub(crate) trait Scalar: Clone + Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Quotient rounded toward zero, so `|self - q d| < |d|`.
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// `self + q * b`
    fn add_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// `self` is 1 or -1.
    fn is_unit(&self) -> bool;
    /// `self` divides `other` (`self` nonzero).
    fn divides(&self, other: &Self) -> bool;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        match *d {
            1 => Some(*self),
            -1 => self.checked_neg(),
            _ => self.checked_div(*d),
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| i64::checked_sub(*self, p))
    }
    fn add_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| i64::checked_add(*self, p))
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn divides(&self, other: &Self) -> bool {
        *other % *self == 0
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        num_traits::Zero::zero()
    }
    fn unit() -> Self {
        num_traits::One::one()
    }
    fn is_nil(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self + q * b)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_unit(&self) -> bool {
        num_traits::One::is_one(self.magnitude())
    }
    fn divides(&self, other: &Self) -> bool {
        num_traits::Zero::is_zero(&(other % self))
    }
}

/// Row-major dense matrix used inside the engine.
#[derive(Clone)]
struct Dense<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn identity(n: usize) -> Self {
        let mut a = vec![T::nil(); n * n];
        for i in 0..n {
            a[i * n + i] = T::unit();
        }
        Dense { rows: n, cols: n, a }
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            let (lo, hi) = (i.min(k), i.max(k));
            let (head, tail) = self.a.split_at_mut(hi * self.cols);
            head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
        }
    }
    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }
    /// `row_i -= q * row_t`, starting at column `from`
    fn row_sub(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let b = &self.a[t * self.cols + j];
            if !b.is_nil() {
                let v = self.a[i * self.cols + j].sub_mul(q, b)?;
                self.a[i * self.cols + j] = v;
            }
        }
        Some(())
    }
    /// `col_j -= q * col_t`, starting at row `from`
    fn col_sub(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let b = &self.a[i * self.cols + t];
            if !b.is_nil() {
                let v = self.a[i * self.cols + j].sub_mul(q, b)?;
                self.a[i * self.cols + j] = v;
            }
        }
        Some(())
    }
    /// `col_j += q * col_t`, starting at row `from`
    fn col_add(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let b = &self.a[i * self.cols + t];
            if !b.is_nil() {
                let v = self.a[i * self.cols + j].add_mul(q, b)?;
                self.a[i * self.cols + j] = v;
            }
        }
        Some(())
    }
    /// `row_i += q * row_t`, starting at column `from`
    fn row_add(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let b = &self.a[t * self.cols + j];
            if !b.is_nil() {
                let v = self.a[i * self.cols + j].add_mul(q, b)?;
                self.a[i * self.cols + j] = v;
            }
        }
        Some(())
    }
    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.a[i * self.cols + j].checked_neg()?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }
    fn negate_col(&mut self, j: usize) -> Option<()> {
        for i in 0..self.rows {
            let v = self.a[i * self.cols + j].checked_neg()?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }
}

/// Transformation bookkeeping. Row operations on the working matrix are
/// mirrored on `u` and (inverted) on `u_inv`; column operations on `v` and
/// `v_inv`.
struct Transforms<T> {
    u: Dense<T>,
    v: Dense<T>,
    u_inv: Dense<T>,
    v_inv: Dense<T>,
}

struct Engine<T> {
    a: Dense<T>,
    tr: Option<Transforms<T>>,
}

impl<T: Scalar> Engine<T> {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        if let Some(tr) = &mut self.tr {
            tr.u.swap_rows(i, k);
            tr.u_inv.swap_cols(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        if let Some(tr) = &mut self.tr {
            tr.v.swap_cols(j, k);
            tr.v_inv.swap_rows(j, k);
        }
    }

    /// `row_i -= q * row_t`
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        // Entries left of column t are already zero in rows t and below.
        self.a.row_sub(i, t, q, t)?;
        if let Some(tr) = &mut self.tr {
            tr.u.row_sub(i, t, q, 0)?;
            tr.u_inv.col_add(t, i, q, 0)?;
        }
        Some(())
    }

    /// `col_j -= q * col_t`
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        self.a.col_sub(j, t, q, t)?;
        if let Some(tr) = &mut self.tr {
            tr.v.col_sub(j, t, q, 0)?;
            tr.v_inv.row_add(t, j, q, 0)?;
        }
        Some(())
    }

    /// `row_t += row_i`
    fn row_add_one(&mut self, t: usize, i: usize) -> Option<()> {
        let one = T::unit();
        self.a.row_add(t, i, &one, t)?;
        if let Some(tr) = &mut self.tr {
            tr.u.row_add(t, i, &one, 0)?;
            tr.u_inv.col_sub(i, t, &one, 0)?;
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        self.a.negate_row(t)?;
        if let Some(tr) = &mut self.tr {
            tr.u.negate_row(t)?;
            tr.u_inv.negate_col(t)?;
        }
        Some(())
    }

    /// Position of the nonzero entry of smallest magnitude in the block
    /// `rows >= t, cols >= t`; ties go to the first in row-major order.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let cols = self.a.cols;
        let mut best: Option<(usize, usize, &T)> = None;
        for i in t..self.a.rows {
            for (j, x) in self.a.a[i * cols + t..(i + 1) * cols].iter().enumerate() {
                if x.is_nil() {
                    continue;
                }
                match best {
                    Some((_, _, b)) if x.cmp_abs(b) != Ordering::Less => {}
                    _ => best = Some((i, t + j, x)),
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Reduces the entries below the pivot modulo it and returns the row of
    /// the smallest nonzero remainder, if any.
    fn reduce_column(&mut self, t: usize) -> Option<Option<usize>> {
        let mut best: Option<usize> = None;
        for i in t + 1..self.a.rows {
            if self.a.at(i, t).is_nil() {
                continue;
            }
            let q = self.a.at(i, t).quot(self.a.at(t, t))?;
            if !q.is_nil() {
                self.row_sub(i, t, &q)?;
            }
            let x = self.a.at(i, t);
            if !x.is_nil() && best.is_none_or(|b| x.cmp_abs(self.a.at(b, t)) == Ordering::Less) {
                best = Some(i);
            }
        }
        Some(best)
    }

    /// Same as [`Self::reduce_column`] for the entries right of the pivot.
    fn reduce_row(&mut self, t: usize) -> Option<Option<usize>> {
        let mut best: Option<usize> = None;
        for j in t + 1..self.a.cols {
            if self.a.at(t, j).is_nil() {
                continue;
            }
            let q = self.a.at(t, j).quot(self.a.at(t, t))?;
            if !q.is_nil() {
                self.col_sub(j, t, &q)?;
            }
            let x = self.a.at(t, j);
            if !x.is_nil() && best.is_none_or(|b| x.cmp_abs(self.a.at(t, b)) == Ordering::Less) {
                best = Some(j);
            }
        }
        Some(best)
    }

    /// Clears row and column `t` and enforces that the pivot divides the
    /// remaining block.
    fn settle_pivot(&mut self, t: usize) -> Option<()> {
        loop {
            if let Some(k) = self.reduce_column(t)? {
                self.swap_rows(t, k);
                continue;
            }
            if let Some(k) = self.reduce_row(t)? {
                self.swap_cols(t, k);
                continue;
            }
            let pivot = self.a.at(t, t).clone();
            if pivot.is_unit() {
                return Some(());
            }
            let offender = (t + 1..self.a.rows)
                .find(|&i| (t + 1..self.a.cols).any(|j| !pivot.divides(self.a.at(i, j))));
            match offender {
                Some(i) => self.row_add_one(t, i)?,
                None => return Some(()),
            }
        }
    }

    fn run(mut self) -> Option<Self> {
        let n = self.a.rows.min(self.a.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            self.settle_pivot(t)?;
            if self.a.at(t, t).is_neg() {
                self.negate_row(t)?;
            }
        }
        Some(self)
    }
}

fn engine_i64(m: &IntMatrix, track: bool) -> Option<Engine<i64>> {
    let a: Option<Vec<i64>> = m.entries().iter().map(ToPrimitive::to_i64).collect();
    let a = Dense {
        rows: m.rows(),
        cols: m.cols(),
        a: a?,
    };
    let tr = track.then(|| Transforms {
        u: Dense::identity(m.rows()),
        v: Dense::identity(m.cols()),
        u_inv: Dense::identity(m.rows()),
        v_inv: Dense::identity(m.cols()),
    });
    Engine { a, tr }.run()
}

fn engine_big(m: &IntMatrix, track: bool) -> Engine<BigInt> {
    let a = Dense {
        rows: m.rows(),
        cols: m.cols(),
        a: m.entries().to_vec(),
    };
    let tr = track.then(|| Transforms {
        u: Dense::identity(m.rows()),
        v: Dense::identity(m.cols()),
        u_inv: Dense::identity(m.rows()),
        v_inv: Dense::identity(m.cols()),
    });
    Engine { a, tr }
        .run()
        .expect("big-integer elimination cannot overflow")
}

fn to_matrix_i64(d: Dense<i64>) -> IntMatrix {
    IntMatrix::new(d.rows, d.cols, d.a.into_iter().map(BigInt::from).collect())
        .expect("engine shapes are consistent")
}

fn to_matrix_big(d: Dense<BigInt>) -> IntMatrix {
    IntMatrix::new(d.rows, d.cols, d.a).expect("engine shapes are consistent")
}

/// Smith normal form of `m` with both unimodular transforms and their inverses.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    if let Some(e) = engine_i64(m, true) {
        let tr = e.tr.expect("tracking enabled");
        return SnfResult {
            s: to_matrix_i64(e.a),
            u: to_matrix_i64(tr.u),
            v: to_matrix_i64(tr.v),
            u_inv: to_matrix_i64(tr.u_inv),
            v_inv: to_matrix_i64(tr.v_inv),
        };
    }
    let e = engine_big(m, true);
    let tr = e.tr.expect("tracking enabled");
    SnfResult {
        s: to_matrix_big(e.a),
        u: to_matrix_big(tr.u),
        v: to_matrix_big(tr.v),
        u_inv: to_matrix_big(tr.u_inv),
        v_inv: to_matrix_big(tr.v_inv),
    }
}

/// Diagonal of the Smith form of `m` (length `min(rows, cols)`), computed by
/// the same elimination without transform bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    if let Some(e) = engine_i64(m, false) {
        return (0..n).map(|i| BigInt::from(*e.a.at(i, i))).collect();
    }
    let e = engine_big(m, false);
    (0..n).map(|i| e.a.at(i, i).clone()).collect()
}

/// Machine-integer variant of [`invariant_factors`]; `None` when an
/// intermediate value leaves the `i64` range.
pub fn invariant_factors_i64(m: &[i64], rows: usize, cols: usize) -> Option<Vec<i64>> {
    assert_eq!(m.len(), rows * cols, "invariant_factors_i64 length");
    let e = Engine {
        a: Dense {
            rows,
            cols,
            a: m.to_vec(),
        },
        tr: None,
    }
    .run()?;
    Some((0..rows.min(cols)).map(|i| *e.a.at(i, i)).collect())
}

/// Runs the engine on `BigInt` regardless of entry size. Exposed so tests can
/// compare the two arithmetic paths.
pub fn smith_normal_form_big(m: &IntMatrix) -> SnfResult {
    let e = engine_big(m, true);
    let tr = e.tr.expect("tracking enabled");
    SnfResult {
        s: to_matrix_big(e.a),
        u: to_matrix_big(tr.u),
        v: to_matrix_big(tr.v),
        u_inv: to_matrix_big(tr.u_inv),
        v_inv: to_matrix_big(tr.v_inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn check_invariants(m: &IntMatrix, r: &SnfResult) {
        assert_eq!(r.u.mul(m).mul(&r.v), r.s, "s = u m v");
        assert!(r.u.mul(&r.u_inv).is_identity());
        assert!(r.v.mul(&r.v_inv).is_identity());
        let d = r.diagonal();
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s.get(i, j).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        let r = smith_normal_form(&m);
        check_invariants(&m, &r);
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(2, 2);
        let r = smith_normal_form(&z);
        assert!(r.u.is_identity() && r.v.is_identity());
        assert_eq!(r.diagonal(), vec![BigInt::zero(), BigInt::zero()]);
        let i = IntMatrix::identity(4);
        let r = smith_normal_form(&i);
        assert!(r.diagonal().iter().all(One::is_one));
    }

    #[test]
    fn rectangular_and_empty() {
        let m = IntMatrix::from_i64(2, 3, &[4, 6, 10, 0, 0, 0]);
        let r = smith_normal_form(&m);
        check_invariants(&m, &r);
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
        assert_eq!(r.rank(), 1);
        let e = IntMatrix::zeros(3, 0);
        let r = smith_normal_form(&e);
        assert_eq!(r.u.shape(), (3, 3));
        assert_eq!(r.v.shape(), (0, 0));
        assert!(r.diagonal().is_empty());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_i64(2, 2, &[big, big - 1, big - 7, big + 5]);
        let r = smith_normal_form(&m);
        check_invariants(&m, &r);
        assert_eq!(r, smith_normal_form_big(&m));
        let d = r.diagonal();
        assert_eq!(d[0].clone() * &d[1], m.determinant().abs());
        assert_eq!(invariant_factors(&m), d);
    }

    #[test]
    fn fast_path_matches_big_path() {
        let m = IntMatrix::from_i64(3, 4, &[3, -7, 2, 9, 0, 5, -5, 1, 6, 6, 6, -6]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form_big(&m);
        assert_eq!(a, b);
        check_invariants(&m, &a);
        assert_eq!(invariant_factors(&m), a.diagonal());
    }
}
