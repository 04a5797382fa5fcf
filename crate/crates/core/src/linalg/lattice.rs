use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{smith_normal_form, IntMatrix, LinalgError, SnfResult};

/// Basis of the integer kernel `{x : m x = 0}`, one basis vector per column.
///
/// The basis is the trailing `cols - rank` columns of the right transform of
/// the Smith form, so it has exactly `cols(m) - rank(m)` columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    snf.v.col_block(r..m.cols())
}

/// Some integer `x` with `m x = b`, or `None` when no integer solution exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    ColumnSpan::new(m).solve(b)
}

/// Whether `v` lies in the integer column span of `m`.
pub fn in_span(m: &IntMatrix, v: &[BigInt]) -> Result<bool, LinalgError> {
    Ok(solve(m, v)?.is_some())
}

/// A basis of the lattice spanned by the columns of `m`, as columns.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    m.mul(&snf.v.col_block(0..r))
}

/// The column lattice of a fixed matrix, with its Smith form cached so that
/// repeated membership and solve queries share one elimination.
#[derive(Clone, Debug)]
pub struct ColumnSpan {
    generators: IntMatrix,
    snf: SnfResult,
    rank: usize,
}

impl ColumnSpan {
    pub fn new(generators: &IntMatrix) -> Self {
        let snf = smith_normal_form(generators);
        let rank = snf.rank();
        ColumnSpan {
            generators: generators.clone(),
            snf,
            rank,
        }
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coefficients `x` with `generators * x = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        let m = &self.generators;
        if b.len() != m.rows() {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                expected: m.rows(),
                found: b.len(),
            });
        }
        // m = u^-1 s v^-1, so m x = b  <=>  s (v^-1 x) = u b.
        let ub = self.snf.u.mul_vec(b)?;
        let mut y = vec![BigInt::zero(); m.cols()];
        for (i, c) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(self.snf.s.get(i, i));
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !c.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.snf.v.mul_vec(&y)?))
    }

    pub fn contains(&self, b: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.solve(b)?.is_some())
    }

    /// Whether every column of `m` lies in this span.
    pub fn contains_columns(&self, m: &IntMatrix) -> Result<bool, LinalgError> {
        for c in m.columns() {
            if !self.contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Solves `generators * X = rhs` column by column.
    pub fn solve_columns(&self, rhs: &IntMatrix) -> Result<Option<IntMatrix>, LinalgError> {
        let mut cols = Vec::with_capacity(rhs.cols());
        for c in rhs.columns() {
            match self.solve(&c)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(IntMatrix::from_columns(self.generators.cols(), &cols)?))
    }
}
