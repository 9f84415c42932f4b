//! Exact linear feasibility.
//!
//! Systems `M x >= c` over the rationals with free variables are decided by a
//! two-phase-free simplex (phase I only) with Bland's rule. The tableau is kept
//! integral by fraction-free pivoting: the stored tableau equals the true tableau
//! scaled by the current (positive) denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::RationalVector;

/// Finds some `x` with `rows[i] . x >= rhs[i]` for every `i`, or `None` if the
/// system is infeasible. Every row must have the same length `n`.
pub fn solve_inequalities(rows: &[Vec<BigInt>], rhs: &[BigInt], n: usize) -> Result<Option<RationalVector>> {
    check_dim(rows.len(), rhs.len())?;
    for r in rows {
        check_dim(n, r.len())?;
    }
    if rows.is_empty() {
        return Ok(Some(vec![BigRational::zero(); n]));
    }
    let m = rows.len();
    // columns: x+ (n), x- (n), slacks (m), artificials (one per row with positive rhs), rhs
    let art_rows: Vec<usize> = (0..m).filter(|&i| rhs[i].is_positive()).collect();
    let n_art = art_rows.len();
    let width = 2 * n + m + n_art + 1;
    let rhs_col = width - 1;
    let mut t = vec![vec![BigInt::zero(); width]; m + 1];
    let mut basis = vec![0usize; m];
    let mut art_index = 0;
    for i in 0..m {
        let positive = rhs[i].is_positive();
        // positive rows: M x - s + a = c;   others: -M x + s = -c
        let sign: i32 = if positive { 1 } else { -1 };
        for j in 0..n {
            let v = &rows[i][j] * sign;
            t[i][j] = v.clone();
            t[i][n + j] = -v;
        }
        t[i][2 * n + i] = BigInt::from(-sign);
        t[i][rhs_col] = &rhs[i] * sign;
        if positive {
            let col = 2 * n + m + art_index;
            t[i][col] = BigInt::one();
            basis[i] = col;
            art_index += 1;
        } else {
            basis[i] = 2 * n + i;
        }
    }
    // phase I objective: minimize the sum of artificials
    let obj = m;
    for &i in &art_rows {
        for j in 0..width {
            if j >= 2 * n + m && j < rhs_col {
                continue;
            }
            let v = &t[obj][j] - &t[i][j];
            t[obj][j] = v;
        }
    }
    let mut denom = BigInt::one();
    loop {
        let Some(q) = (0..rhs_col).find(|&j| t[obj][j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][q].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let lhs = &t[i][rhs_col] * &t[l][q];
                    let rhs_ = &t[l][rhs_col] * &t[i][q];
                    if lhs < rhs_ || (lhs == rhs_ && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let Some(p) = leave else {
            return Err(Error::Internal("phase I objective unbounded".into()));
        };
        pivot(&mut t, p, q, &mut denom);
        basis[p] = q;
    }
    if !t[obj][rhs_col].is_zero() {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        let val = BigRational::new(t[i][rhs_col].clone(), denom.clone());
        if b < n {
            x[b] += val;
        } else if b < 2 * n {
            x[b - n] -= val;
        }
    }
    // the witness is verified exactly before it is handed out
    for (row, c) in rows.iter().zip(rhs) {
        if dot_rational(row, &x) < BigRational::from_integer(c.clone()) {
            return Err(Error::Internal("simplex witness violates a constraint".into()));
        }
    }
    Ok(Some(x))
}

fn pivot(t: &mut [Vec<BigInt>], p: usize, q: usize, denom: &mut BigInt) {
    let pv = t[p][q].clone();
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p {
            continue;
        }
        let f = row[q].clone();
        for (j, e) in row.iter_mut().enumerate() {
            let mut v = &pv * &*e;
            if !f.is_zero() && !prow[j].is_zero() {
                v -= &f * &prow[j];
            }
            *e = v / &*denom;
        }
    }
    *denom = pv;
    if denom.is_negative() {
        for row in t.iter_mut() {
            for e in row.iter_mut() {
                *e = -&*e;
            }
        }
        *denom = -&*denom;
    }
}

pub(crate) fn dot_rational(row: &[BigInt], x: &[BigRational]) -> BigRational {
    row.iter()
        .zip(x)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| b * a)
        .fold(BigRational::zero(), |s, v| s + v)
}

fn to_big_rows<V: AsRef<[i64]>>(vs: &[V]) -> (Vec<Vec<BigInt>>, usize) {
    let n = vs.first().map(|v| v.as_ref().len()).unwrap_or(0);
    (vs.iter().map(|v| v.as_ref().iter().map(|&x| BigInt::from(x)).collect()).collect(), n)
}

fn check_same_dim<V: AsRef<[i64]>>(vs: &[V]) -> Result<usize> {
    let n = vs.first().map(|v| v.as_ref().len()).unwrap_or(0);
    for v in vs {
        check_dim(n, v.as_ref().len())?;
    }
    Ok(n)
}

/// Returns `w` with `g . w > 0` for every `g` in `ineqs`, or `None` if none exists.
///
/// Strictness is handled by homogeneity: the open cone is nonempty iff
/// `g . w >= 1` is feasible.
pub fn strict_feasible<V: AsRef<[i64]>>(ineqs: &[V]) -> Result<Option<RationalVector>> {
    check_same_dim(ineqs)?;
    let (rows, n) = to_big_rows(ineqs);
    let rhs = vec![BigInt::one(); rows.len()];
    solve_inequalities(&rows, &rhs, n)
}

/// Same as [`strict_feasible`] but with an explicit ambient dimension, so that an
/// empty system is answered with the zero vector of the right length.
pub fn strict_feasible_in<V: AsRef<[i64]>>(ineqs: &[V], n: usize) -> Result<Option<RationalVector>> {
    for v in ineqs {
        check_dim(n, v.as_ref().len())?;
    }
    let (rows, _) = to_big_rows(ineqs);
    let rhs = vec![BigInt::one(); rows.len()];
    solve_inequalities(&rows, &rhs, n)
}

/// Whether `ineqs[index]` defines a facet-relevant constraint of the cone
/// `{w : g . w >= 0 for all g}`, i.e. some `w` violates it while satisfying all
/// the others.
///
/// No deduplication happens here: a constraint listed twice is redundant in the
/// presence of its copy. Callers that count facets remove parallel copies first.
pub fn is_irredundant<V: AsRef<[i64]>>(ineqs: &[V], index: usize) -> Result<bool> {
    let n = check_same_dim(ineqs)?;
    if index >= ineqs.len() {
        return Err(Error::InvalidInput(format!("index {index} out of range")));
    }
    let (mut rows, _) = to_big_rows(ineqs);
    let mut rhs = vec![BigInt::zero(); rows.len()];
    for x in rows[index].iter_mut() {
        *x = -&*x;
    }
    rhs[index] = BigInt::one();
    Ok(solve_inequalities(&rows, &rhs, n)?.is_some())
}
