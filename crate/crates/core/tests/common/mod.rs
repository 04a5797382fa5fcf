//! Oracles shared by the integration tests. None of them call into the
//! elimination code they are used to check.
#![allow(dead_code)]

use cellwork::abgrp::AbGroup;
use cellwork::linalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i128().expect("small entries")).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k x k` minors (the `k`-th determinantal divisor).
pub fn determinantal_divisor(m: &[Vec<i128>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

/// Invariant factors `d_k / d_{k-1}`, padded with zeros to `min(rows, cols)`.
pub fn invariant_factors_by_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let d = determinantal_divisor(m, k);
        if d == 0 {
            out.resize(rows.min(cols), 0);
            return out;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime powers of `Z/o_1 + ... + Z/o_k`, sorted; orders 1 contribute nothing.
pub fn elementary_divisors(orders: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = orders
        .iter()
        .flat_map(|&o| factor(o).into_iter().map(|(p, e)| p.pow(e)))
        .collect();
    out.sort_unstable();
    out
}

/// `(free rank, elementary divisors)` of a group.
pub fn iso_type(g: &AbGroup) -> (usize, Vec<u64>) {
    let (r, t) = g.canon();
    let orders: Vec<u64> = t.iter().map(|x| x.to_u64().expect("small torsion")).collect();
    (r, elementary_divisors(&orders))
}

pub fn abs_u64(x: &BigInt) -> u64 {
    x.abs().to_u64().expect("small")
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Isomorphism type read off the relation matrix by determinantal divisors.
pub fn oracle_type(g: &AbGroup) -> (usize, Vec<u64>) {
    let n = g.n_gens();
    if g.n_rels() == 0 {
        return (n, vec![]);
    }
    let f = invariant_factors_by_minors(&to_rows(g.rels()));
    let nonzero: Vec<u64> = f.iter().filter(|&&d| d != 0).map(|&d| d.unsigned_abs() as u64).collect();
    (n - nonzero.len(), elementary_divisors(&nonzero))
}

pub fn oracle_order(g: &AbGroup) -> Option<u64> {
    let (r, e) = oracle_type(g);
    (r == 0).then(|| e.iter().product())
}

pub fn prime_powers(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = factor(n).into_iter().map(|(p, e)| p.pow(e)).collect();
    v.sort_unstable();
    v
}

/// `Ext(Z^k + sum Z/a, N) = sum N/aN`, and `N/aN` for
/// `N = Z^r + sum Z/n` is `(Z/a)^r + sum Z/gcd(a, n)`, as elementary divisors.
pub fn ext_by_additivity(a: &AbGroup, n: &AbGroup) -> Vec<u64> {
    let (_, ta) = oracle_type(a);
    let (rn, tn) = oracle_type(n);
    let mut out = Vec::new();
    for &q in &ta {
        for _ in 0..rn {
            out.extend(prime_powers(q));
        }
        for &m in &tn {
            out.extend(prime_powers(gcd(q as i128, m as i128) as u64));
        }
    }
    out.retain(|&x| x > 1);
    out.sort_unstable();
    out
}
