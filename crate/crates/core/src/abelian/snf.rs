//! Smith normal form and the integer linear algebra built on it.
//!
//! Pivot choice is deterministic: smallest absolute nonzero value, ties
//! broken row-major. The transforms U, V are accumulated so that
//! U * M * V = D with both unimodular and d_1 | d_2 | ... on the diagonal.

use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += c * row[b]
    fn row_add(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(a, j) + c * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col[a] += c * col[b]
    fn col_add(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, a) + c * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }
}

/// U * M * V = D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl SnfResult {
    /// Diagonal entries, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Nonzero invariant factors d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMat) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let limit = d.rows.min(d.cols);
    for k in 0..limit {
        eliminate_at(&mut d, &mut u, &mut v, k);
    }
    // Enforce the divisibility chain.
    loop {
        let mut fixed = true;
        for i in 0..limit.saturating_sub(1) {
            let a = d.get(i, i).clone();
            let b = d.get(i + 1, i + 1).clone();
            if a.is_zero() {
                // Zero before nonzero: push zeros to the end.
                if !b.is_zero() {
                    d.swap_rows(i, i + 1);
                    u.swap_rows(i, i + 1);
                    d.swap_cols(i, i + 1);
                    v.swap_cols(i, i + 1);
                    fixed = false;
                }
                continue;
            }
            if !b.is_zero() && !(&b % &a).is_zero() {
                // col i += col i+1 creates b at (i+1, i); re-eliminate.
                d.col_add(i, i + 1, &BigInt::one());
                v.col_add(i, i + 1, &BigInt::one());
                eliminate_at(&mut d, &mut u, &mut v, i);
                eliminate_at(&mut d, &mut u, &mut v, i + 1);
                fixed = false;
            }
        }
        if fixed {
            break;
        }
    }
    debug_assert_eq!(u.mul(m).mul(&v), d);
    SnfResult { d, u, v }
}

/// Clears row k and column k below/right of (k,k), leaving the submatrix
/// entries divisible by the pivot.
fn eliminate_at(d: &mut IntMat, u: &mut IntMat, v: &mut IntMat, k: usize) {
    loop {
        // Deterministic pivot: smallest |value| > 0, row-major order.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..d.rows {
            for j in k..d.cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d.get(i, j).abs() < d.get(*pi, *pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { return };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        let mut clean = true;
        let p = d.get(k, k).clone();
        for i in k + 1..d.rows {
            if !d.get(i, k).is_zero() {
                let q = -(d.get(i, k).div_floor(&p));
                d.row_add(i, k, &q);
                u.row_add(i, k, &q);
                if !d.get(i, k).is_zero() {
                    clean = false;
                }
            }
        }
        for j in k + 1..d.cols {
            if !d.get(k, j).is_zero() {
                let q = -(d.get(k, j).div_floor(&p));
                d.col_add(j, k, &q);
                v.col_add(j, k, &q);
                if !d.get(k, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Pivot divides the whole remaining submatrix, or pull a bad row up.
        let mut dirty = false;
        'scan: for i in k + 1..d.rows {
            for j in k + 1..d.cols {
                if !(d.get(i, j) % &p).is_zero() {
                    d.row_add(k, i, &BigInt::one());
                    u.row_add(k, i, &BigInt::one());
                    dirty = true;
                    break 'scan;
                }
            }
        }
        if !dirty {
            return;
        }
    }
}

/// Basis of {x : M x = 0} as matrix columns; empty matrix when trivial.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let n = m.cols;
    let mut out = IntMat::zero(n, n - rank);
    for (t, j) in (rank..n).enumerate() {
        for i in 0..n {
            out.set(i, t, snf.v.get(i, j).clone());
        }
    }
    out
}

/// Some integer solution X of M X = B, or None.
pub fn solve(m: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(m.rows, b.rows);
    let snf = smith_normal_form(m);
    // M = U^{-1} D V^{-1}; M X = B  <=>  D Y = U B with X = V Y.
    let ub = snf.u.mul(b);
    let mut y = IntMat::zero(m.cols, b.cols);
    for c in 0..b.cols {
        for i in 0..m.rows {
            let rhs = ub.get(i, c);
            let dii = if i < m.cols {
                snf.d.get(i, i).clone()
            } else {
                BigInt::zero()
            };
            if dii.is_zero() {
                if !rhs.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = rhs.div_rem(&dii);
                if !r.is_zero() {
                    return None;
                }
                y.set(i, c, q);
            }
        }
    }
    Some(snf.v.mul(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_of_small_matrix() {
        // d_1 = gcd of entries = 2, d_1 * d_2 = |det| = 8.
        let m = IntMat::from_i64(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMat::identity(3);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.d, id);

        let z = IntMat::from_i64(&[&[0]]);
        let snf = smith_normal_form(&z);
        assert_eq!(snf.diagonal(), vec![BigInt::zero()]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = IntMat::from_i64(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::one(), BigInt::from(6)]
        );
    }

    #[test]
    fn snf_with_rectangular_input() {
        let m = IntMat::from_i64(&[&[4, 6, 10], &[2, 4, 6]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = IntMat::from_i64(&[&[1, 2, 3]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());

        let full = IntMat::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(kernel_basis(&full).cols(), 0);
    }

    #[test]
    fn solve_linear_systems() {
        let m = IntMat::from_i64(&[&[2, 0], &[0, 3]]);
        let b = IntMat::from_i64(&[&[4], &[9]]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul(&x), b);

        let no = IntMat::from_i64(&[&[2]]);
        assert!(solve(&no, &IntMat::from_i64(&[&[3]])).is_none());
    }
}
