//! Dense integer matrices and the two normal forms everything else is built on.
//!
//! Smith normal form drives every quotient-group computation; the row-style
//! Hermite normal form is the canonical representation of a sublattice of Z^m.
//! Both are exact over BigInt, no modular shortcuts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMat { rows: rows.len(), cols: rows.first().map_or(0, |r| r.len()), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
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

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + k * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + k * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("det of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        Ok(sign * m.at(n - 1, n - 1).clone())
    }
}

/// Smith decomposition u * m * v = s with s diagonal, each diagonal entry
/// nonnegative and dividing the next. v_inv is maintained alongside v so that
/// callers can change coordinates in both directions without inverting.
pub struct Smith {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.at(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMat) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMat::identity(r);
    let mut v = IntMat::identity(c);
    let mut v_inv = IntMat::identity(c);

    // Column operation on s and v is mirrored by the inverse row operation on
    // v_inv, keeping v * v_inv = I at every step.
    for t in 0..r.min(c) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if s.at(i, j).is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => s.at(i, j).abs() < s.at(bi, bj).abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            if pi != t {
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
            }
            if s.at(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }

            let mut dirty = false;
            for i in t + 1..r {
                let q = s.at(i, t).div_floor(s.at(t, t));
                if !q.is_zero() {
                    let k = -q;
                    s.add_row_multiple(i, t, &k);
                    u.add_row_multiple(i, t, &k);
                }
                if !s.at(i, t).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            for j in t + 1..c {
                let q = s.at(t, j).div_floor(s.at(t, t));
                if !q.is_zero() {
                    let k = -q.clone();
                    s.add_col_multiple(j, t, &k);
                    v.add_col_multiple(j, t, &k);
                    v_inv.add_row_multiple(t, j, &q);
                }
                if !s.at(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Pull any entry the pivot does not divide into the working row,
            // so the next pass shrinks the pivot.
            for i in t + 1..r {
                for j in t + 1..c {
                    if !s.at(i, j).mod_floor(s.at(t, t)).is_zero() {
                        let one = BigInt::one();
                        s.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    Smith { s, u, v, v_inv }
}

/// Row-style Hermite normal form of the span of `rows` inside Z^ambient:
/// echelon rows, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped, so the result is a canonical basis.
pub fn hnf_rows(rows: Vec<Vec<BigInt>>, ambient: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = rows;
    debug_assert!(rows.iter().all(|r| r.len() == ambient));
    let mut pivot_row = 0usize;
    for col in 0..ambient {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => rows[i][col].abs() < rows[b][col].abs(),
                };
                if better {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            if rows[pivot_row][col].is_negative() {
                for x in rows[pivot_row].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            let mut clean = true;
            for i in pivot_row + 1..rows.len() {
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..ambient {
                        let sub = &q * &rows[pivot_row][j];
                        rows[i][j] -= sub;
                    }
                }
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Reduce the entries above the pivot into [0, pivot).
                for i in 0..pivot_row {
                    let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                    if !q.is_zero() {
                        for j in 0..ambient {
                            let sub = &q * &rows[pivot_row][j];
                            rows[i][j] -= sub;
                        }
                    }
                }
                pivot_row += 1;
                break;
            }
        }
    }
    rows.truncate(pivot_row);
    rows
}
