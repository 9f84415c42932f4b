use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::LatticeVector;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix must have at least one row and one column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from machine-integer rows. Rows must all have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(r, c, data)
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        IntMatrix::new(r, c, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix { rows: n, cols: n, data: vec![BigInt::zero(); n * n] };
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Rows as machine integers, failing with `Overflow` if an entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for an integer column vector.
    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, &x)| a * x).sum())
            .collect())
    }

    /// Submatrix keeping the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.cols * rows.len());
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn has_negative_entry(&self) -> bool {
        self.data.iter().any(|x| x.is_negative())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[dst * self.cols + c] - q * s;
            self.data[dst * self.cols + c] = v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r).iter().join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U * M = H`. In `H` every nonzero row
/// has a positive pivot strictly to the right of the previous row's pivot,
/// entries above a pivot lie in `[0, pivot)`, and zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut p = 0;
    for col in 0..m.cols {
        if p == m.rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below row p becomes the pivot candidate
            let best = (p..m.rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(r) = best else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut done = true;
            for r2 in p + 1..m.rows {
                if h.get(r2, col).is_zero() {
                    continue;
                }
                let q = h.get(r2, col).div_floor(h.get(p, col));
                h.sub_row_multiple(r2, p, &q);
                u.sub_row_multiple(r2, p, &q);
                if !h.get(r2, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for r2 in 0..p {
            let q = h.get(r2, col).div_floor(h.get(p, col));
            h.sub_row_multiple(r2, p, &q);
            u.sub_row_multiple(r2, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Checks the normal-form predicate that [`hnf`] guarantees.
pub fn is_hermite_normal_form(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for r in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&c| !h.get(r, c).is_zero());
        match pivot {
            None => seen_zero = true,
            Some(c) => {
                if seen_zero {
                    return false;
                }
                if let Some(lp) = last_pivot {
                    if c <= lp {
                        return false;
                    }
                }
                let pv = h.get(r, c);
                if !pv.is_positive() {
                    return false;
                }
                for r2 in 0..r {
                    let e = h.get(r2, c);
                    if e.is_negative() || e >= pv {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
    }
    let n = m.rows;
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Determinant of a small machine-integer matrix by Bareiss elimination in
/// `i128`; `None` on overflow (callers fall back to [`det_bareiss`]).
pub(crate) fn det_small(rows: &[Vec<i64>]) -> Option<i128> {
    let n = rows.len();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut neg = false;
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, r);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].checked_mul(a[i][j])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    let d = a[n - 1][n - 1];
    Some(if neg { -d } else { d })
}

/// Exact determinant of a machine-integer matrix, using the `i128` fast path
/// when it does not overflow.
pub(crate) fn det_i64(rows: &[Vec<i64>]) -> BigInt {
    match det_small(rows) {
        Some(d) => BigInt::from(d),
        None => det_bareiss(&IntMatrix::from_rows(rows).expect("square")).expect("square"),
    }
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    rank_of_rows(m.to_rows())
}

pub(crate) fn rank_of_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let pv = a[r][c].clone();
            for j in c..cols {
                let v = &a[i][j] * &pv - &a[r][j] * &f;
                a[i][j] = v;
            }
            let g = a[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in a[i].iter_mut() {
                    *x /= &g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Indices of a maximal linearly independent subset of the rows, chosen greedily
/// from the top.
pub fn independent_rows(m: &IntMatrix) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    for r in 0..m.rows {
        acc.push(m.row(r).to_vec());
        if rank_of_rows(acc.clone()) == kept.len() + 1 {
            kept.push(r);
        } else {
            acc.pop();
        }
    }
    kept
}

fn require_full_row_rank(a: &IntMatrix) -> Result<()> {
    let rk = rank(a);
    if rk < a.rows {
        return Err(Error::RankDeficient { rank: rk, rows: a.rows });
    }
    Ok(())
}

/// A basis of the integer kernel lattice `{v in Z^n : A v = 0}`.
///
/// The basis is returned in Hermite normal form, which makes it canonical: two
/// calls on matrices with the same kernel lattice return identical output.
pub fn kernel_lattice_basis(a: &IntMatrix) -> Result<Vec<LatticeVector>> {
    require_full_row_rank(a)?;
    let d = a.rows;
    let n = a.cols;
    if d == n {
        return Ok(Vec::new());
    }
    let (_, u) = hnf(&a.transpose());
    // rows d..n of U annihilate A^T from the left
    let kernel = u.select_rows(&(d..n).collect::<Vec<_>>());
    let (h, _) = hnf(&kernel);
    h.to_i64_rows()
}

/// `D(A)`: the largest absolute value of a maximal minor.
pub fn max_abs_minor(a: &IntMatrix) -> Result<BigInt> {
    require_full_row_rank(a)?;
    let mut best = BigInt::zero();
    for cols in (0..a.cols).combinations(a.rows) {
        let v = det_bareiss(&a.select_columns(&cols))?.abs();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Absolute values of all nonzero maximal minors (as a sorted, deduplicated list).
pub fn nonzero_maximal_minors(a: &IntMatrix) -> Result<Vec<BigInt>> {
    require_full_row_rank(a)?;
    let mut out: Vec<BigInt> = (0..a.cols)
        .combinations(a.rows)
        .map(|cols| det_bareiss(&a.select_columns(&cols)).map(|d| d.abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// gcd of all maximal minors; the index of the column lattice in `Z^d`.
pub fn lattice_index(a: &IntMatrix) -> Result<BigInt> {
    let minors = nonzero_maximal_minors(a)?;
    Ok(minors.iter().fold(BigInt::zero(), |g, m| g.gcd(m)))
}
