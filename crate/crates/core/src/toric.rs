//! Toric ideals: generators by saturation, Graver bases via the Lawrence
//! lifting, circuits, degree bounds and universal Groebner bases.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::buchberger::{buchberger, buchberger_with, BuchbergerOptions, GroebnerBasis};
use crate::error::{check_dim, Error, Result};
use crate::exactmath::{
    det_i64, det_small, independent_rows, kernel_lattice_basis, max_abs_minor, nonzero_maximal_minors, rank, strict_feasible_in,
    IntMatrix,
};
use crate::fan::MonomialIdeal;
use crate::orders::{TermOrder, TieBreak};
use crate::{LatticeVector, RationalVector};

/// A configuration matrix `A` of full row rank together with a positive grading,
/// if one exists.
///
/// Linearly dependent rows of the input are dropped (the kernel, and therefore
/// the toric ideal, only depends on the row space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigMatrix {
    input: IntMatrix,
    kept_rows: Vec<usize>,
    matrix: IntMatrix,
    small: Vec<Vec<i64>>,
    grading: Option<RationalVector>,
    degrees: Option<Vec<i64>>,
}

impl ConfigMatrix {
    pub fn new(input: IntMatrix) -> Result<Self> {
        let kept_rows = independent_rows(&input);
        if kept_rows.is_empty() {
            return Err(Error::RankDeficient { rank: 0, rows: input.rows() });
        }
        let matrix = input.select_rows(&kept_rows);
        let small = matrix.to_i64_rows()?;
        let (grading, degrees) = find_grading(&matrix, &small)?;
        Ok(ConfigMatrix { input, kept_rows, matrix, small, grading, degrees })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The matrix as given.
    pub fn input(&self) -> &IntMatrix {
        &self.input
    }

    /// The full-row-rank matrix actually used (`d x n`).
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rows_i64(&self) -> &[Vec<i64>] {
        &self.small
    }

    pub fn kept_rows(&self) -> &[usize] {
        &self.kept_rows
    }

    /// Rank `d`.
    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of columns `n`.
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Coefficients `y` (one per kept row) of a functional `y A` that is
    /// strictly positive on every column.
    pub fn grading(&self) -> Option<&RationalVector> {
        self.grading.as_ref()
    }

    pub fn is_pointed(&self) -> bool {
        self.grading.is_some()
    }

    /// Positive integer degrees of the columns under the grading, with gcd 1.
    /// All ones whenever `(1, ..., 1)` lies in the row space.
    pub fn column_degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn require_pointed(&self) -> Result<&[i64]> {
        self.degrees.as_deref().ok_or(Error::NotPointed)
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.small.iter().map(|r| r[j]).collect()
    }

    pub fn has_negative_entry(&self) -> bool {
        self.small.iter().flatten().any(|&x| x < 0)
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.n()).any(|j| self.small.iter().all(|r| r[j] == 0))
    }

    /// `A x` over the kept rows.
    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        check_dim(self.n(), x.len())?;
        self.small
            .iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .try_fold(0i64, |s, (&a, &b)| a.checked_mul(b).and_then(|p| s.checked_add(p)))
                    .ok_or(Error::Overflow)
            })
            .collect()
    }

    pub fn in_kernel(&self, v: &[i64]) -> bool {
        v.len() == self.n() && self.apply(v).map(|r| r.iter().all(|&x| x == 0)).unwrap_or(false)
    }

    /// Maps a right-hand side for the input matrix to one for the kept rows.
    /// Returns `None` when `b` is not in the column span's consistency class
    /// (then the fiber is empty). `b` may also be given for the kept rows only.
    pub fn project_rhs(&self, b: &[i64]) -> Result<Option<Vec<i64>>> {
        if b.len() == self.d() && self.d() != self.input.rows() {
            return Ok(Some(b.to_vec()));
        }
        check_dim(self.input.rows(), b.len())?;
        if self.d() < self.input.rows() {
            let mut aug = self.input.to_rows();
            for (row, &bi) in aug.iter_mut().zip(b) {
                row.push(BigInt::from(bi));
            }
            if rank(&IntMatrix::from_big_rows(aug)?) > self.d() {
                return Ok(None);
            }
        }
        Ok(Some(self.kept_rows.iter().map(|&r| b[r]).collect()))
    }

    /// Degree of the monomial `x^u` under the grading.
    pub fn monomial_degree(&self, u: &[i64]) -> Result<i64> {
        let deg = self.require_pointed()?;
        check_dim(deg.len(), u.len())?;
        Ok(u.iter().zip(deg).map(|(&a, &b)| a * b).sum())
    }

    /// Degree of the binomial of a kernel vector: the grading degree of `v+`.
    pub fn degree(&self, v: &[i64]) -> Result<i64> {
        let plus: Vec<i64> = v.iter().map(|&x| x.max(0)).collect();
        let minus: Vec<i64> = v.iter().map(|&x| (-x).max(0)).collect();
        Ok(self.monomial_degree(&plus)?.max(self.monomial_degree(&minus)?))
    }

    /// Shifts `w` by a multiple of the grading (which lies in the row space and
    /// so does not change any comparison between monomials of one fiber) until
    /// it is strictly positive, then clears denominators.
    pub fn positive_weight(&self, w: &[BigRational]) -> Result<Vec<BigInt>> {
        let deg = self.require_pointed()?;
        check_dim(deg.len(), w.len())?;
        let mut lambda = BigRational::zero();
        for (wi, &di) in w.iter().zip(deg) {
            let need = -wi / BigRational::from_integer(BigInt::from(di));
            if need >= lambda {
                lambda = need.floor() + BigRational::one();
            }
        }
        let shifted: Vec<BigRational> =
            w.iter().zip(deg).map(|(wi, &di)| wi + &lambda * BigRational::from_integer(BigInt::from(di))).collect();
        let l = shifted.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        Ok(shifted.iter().map(|x| (x * &l).to_integer()).collect())
    }
}

fn find_grading(matrix: &IntMatrix, small: &[Vec<i64>]) -> Result<(Option<RationalVector>, Option<Vec<i64>>)> {
    let d = matrix.rows();
    let n = matrix.cols();
    // prefer the standard grading when it is available
    let mut with_ones = matrix.to_rows();
    with_ones.push(vec![BigInt::one(); n]);
    if rank(&IntMatrix::from_big_rows(with_ones)?) == d {
        let y = solve_row_combination(matrix, &vec![BigInt::one(); n])?;
        return Ok((Some(y), Some(vec![1; n])));
    }
    // y A > 0 on every column: strict feasibility of the columns as inequalities on y
    let columns: Vec<Vec<i64>> = (0..n).map(|j| small.iter().map(|r| r[j]).collect()).collect();
    let Some(y) = strict_feasible_in(&columns, d)? else {
        return Ok((None, None));
    };
    let l = y.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let yi: Vec<BigInt> = y.iter().map(|x| (x * &l).to_integer()).collect();
    let mut deg: Vec<BigInt> =
        (0..n).map(|j| (0..d).map(|i| &yi[i] * matrix.get(i, j)).sum::<BigInt>()).collect();
    let g = deg.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    for x in deg.iter_mut() {
        *x /= &g;
    }
    let deg: Vec<i64> = deg.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
    let y: RationalVector = y.iter().map(|x| x * BigRational::new(l.clone(), g.clone())).collect();
    Ok((Some(y), Some(deg)))
}

/// Solves `y A = target` for `y`, assuming `target` is in the row space.
fn solve_row_combination(matrix: &IntMatrix, target: &[BigInt]) -> Result<RationalVector> {
    let d = matrix.rows();
    let n = matrix.cols();
    // Gaussian elimination on the n x (d+1) system A^T y = target
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigRational> = (0..d).map(|i| BigRational::from_integer(matrix.get(i, j).clone())).collect();
            r.push(BigRational::from_integer(target[j].clone()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..d {
        let Some(r) = (p..n).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(p, r);
        let inv = rows[p][c].recip();
        for x in rows[p].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != p && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for k in 0..=d {
                    let v = &rows[p][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        pivots.push(c);
        p += 1;
    }
    if rows[p..].iter().any(|r| !r[d].is_zero()) {
        return Err(Error::Internal("target not in the row space".into()));
    }
    let mut y = vec![BigRational::zero(); d];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = rows[i][d].clone();
    }
    Ok(y)
}

/// Makes the first nonzero entry positive.
pub fn normalize_sign(v: &mut [i64]) {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

pub(crate) fn normalized(v: &[i64]) -> LatticeVector {
    let mut w = v.to_vec();
    normalize_sign(&mut w);
    w
}

fn canonical_set(vs: impl IntoIterator<Item = LatticeVector>) -> Vec<LatticeVector> {
    let set: BTreeSet<LatticeVector> = vs.into_iter().map(|v| normalized(&v)).collect();
    set.into_iter().collect()
}

/// Generators of `J : x_i^infinity` for the lattice ideal `J` generated by
/// `gens`, graded by `degrees` (the column degrees of the configuration).
///
/// One Groebner basis computation under the graded reverse lexicographic order
/// with `x_i` cheapest; dividing each element by the largest power of `x_i`
/// dividing both of its terms is automatic in vector form.
pub fn saturate_variable(gens: &[LatticeVector], i: usize, degrees: &[i64]) -> Result<Vec<LatticeVector>> {
    if i >= degrees.len() {
        return Err(Error::InvalidInput(format!("variable {i} out of range")));
    }
    let ord = TermOrder::revlex_last(degrees, i);
    let opts = BuchbergerOptions { chain_criterion: true, ..BuchbergerOptions::default() };
    Ok(buchberger_with(gens, &ord, &opts)?.vectors())
}

/// Generators of the toric ideal `I_A`, canonically sorted.
pub fn toric_generators(a: &ConfigMatrix) -> Result<Vec<LatticeVector>> {
    let degrees = a.require_pointed()?.to_vec();
    let mut gens = kernel_lattice_basis(a.matrix())?;
    for i in 0..a.n() {
        if gens.is_empty() {
            break;
        }
        gens = saturate_variable(&gens, i, &degrees)?;
    }
    Ok(canonical_set(gens))
}

/// The Lawrence lifting `[[A, 0], [I, I]]` of the configuration's matrix.
pub fn lawrence(a: &IntMatrix) -> IntMatrix {
    let (d, n) = (a.rows(), a.cols());
    let mut m = IntMatrix::zeros(d + n, 2 * n);
    for r in 0..d {
        for c in 0..n {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for i in 0..n {
        m.set(d + i, i, BigInt::one());
        m.set(d + i, n + i, BigInt::one());
    }
    m
}

/// The Graver basis of `A`, one vector per sign pair, canonically sorted.
pub fn graver(a: &ConfigMatrix) -> Result<Vec<LatticeVector>> {
    a.require_pointed()?;
    let n = a.n();
    let lifted = ConfigMatrix::new(lawrence(a.matrix()))?;
    let gens = toric_generators(&lifted)?;
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let (u, v) = g.split_at(n);
        if u.iter().zip(v).any(|(x, y)| x + y != 0) {
            return Err(Error::Internal(format!("Lawrence basis element {g:?} is not of the form (u, -u)")));
        }
        out.push(u.to_vec());
    }
    Ok(canonical_set(out))
}

/// Whether the kernel vector `v` is conformally minimal, i.e. belongs to the
/// Graver basis. Enumerates the conformal box below `v`.
pub fn is_graver_element(v: &[i64], a: &ConfigMatrix) -> Result<bool> {
    check_dim(a.n(), v.len())?;
    if !a.in_kernel(v) || v.iter().all(|&x| x == 0) {
        return Ok(false);
    }
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g != 1 {
        return Ok(false);
    }
    let supp: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    let size: u128 = supp.iter().map(|&i| v[i].unsigned_abs() as u128 + 1).product();
    if size > 50_000_000 {
        return Err(Error::LimitExceeded(format!("conformal box of {size} points")));
    }
    let cols: Vec<Vec<i64>> = supp.iter().map(|&i| a.column(i)).collect();
    let d = a.d();
    // u runs over the box 0 <= |u_i| <= |v_i| with signs of v; look for A u = 0
    // with u different from 0 and v
    let mut u = vec![0i64; supp.len()];
    let mut image = vec![0i64; d];
    loop {
        let mut k = 0;
        loop {
            if k == supp.len() {
                return Ok(true);
            }
            let step = v[supp[k]].signum();
            if u[k] != v[supp[k]] {
                u[k] += step;
                for r in 0..d {
                    image[r] += step * cols[k][r];
                }
                break;
            }
            for r in 0..d {
                image[r] -= u[k] * cols[k][r];
            }
            u[k] = 0;
            k += 1;
        }
        if image.iter().all(|&x| x == 0) && u.iter().zip(&supp).any(|(&x, &i)| x != v[i]) {
            return Ok(false);
        }
    }
}

/// A circuit: a primitive kernel vector of minimal support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    pub vector: LatticeVector,
    /// Smallest gcd `c` of the defining maximal minors over all column sets
    /// containing the support.
    pub multiplier: i64,
    /// `multiplier` times the degree of the circuit.
    pub true_degree: i64,
}

fn gcd_vec(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// The cofactor vector of a `d x (d+1)` column selection: entry `j` is
/// `(-1)^j det(columns without j)`.
fn cofactor_vector(a: &ConfigMatrix, subset: &[usize]) -> Vec<BigInt> {
    (0..subset.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = a
                .rows_i64()
                .iter()
                .map(|r| subset.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| r[c]).collect())
                .collect();
            let det = det_i64(&minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// The primitive kernel vector of a `d x (d+1)` column selection together
/// with the gcd of its cofactors, in machine integers. `Some(None)` when the
/// selection has rank below `d`, `None` on overflow.
fn circuit_of_subset(a: &ConfigMatrix, subset: &[usize]) -> Option<Option<(Vec<i64>, i128)>> {
    let m = subset.len();
    let mut rows: Vec<Vec<i128>> = a.rows_i64().iter().map(|r| subset.iter().map(|&c| r[c] as i128).collect()).collect();
    let d = rows.len();
    let mut pivots = Vec::with_capacity(d);
    for c in 0..m {
        let r = pivots.len();
        if r == d {
            break;
        }
        let Some(p) = (r..d).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in r + 1..d {
            if rows[i][c] == 0 {
                continue;
            }
            let (f, pv) = (rows[i][c], rows[r][c]);
            for j in c..m {
                rows[i][j] = pv.checked_mul(rows[i][j])?.checked_sub(f.checked_mul(rows[r][j])?)?;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        pivots.push(c);
    }
    if pivots.len() < d {
        return Some(None);
    }
    let free = (0..m).find(|c| !pivots.contains(c)).expect("one free column");
    let mut x = vec![0i128; m];
    x[free] = 1;
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let mut s = 0i128;
        for j in pc + 1..m {
            s = s.checked_add(rows[i][j].checked_mul(x[j])?)?;
        }
        let g = s.gcd(&rows[i][pc]);
        let scale = rows[i][pc] / g;
        for v in x.iter_mut() {
            *v = v.checked_mul(scale)?;
        }
        x[pc] = -s / g;
    }
    let g = x.iter().fold(0i128, |g, &v| g.gcd(&v));
    let mut out = Vec::with_capacity(m);
    for v in &x {
        out.push(i64::try_from(v / g).ok()?);
    }
    let j = out.iter().position(|&v| v != 0).expect("nonzero kernel vector");
    let minor: Vec<Vec<i64>> =
        a.rows_i64().iter().map(|r| subset.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| r[c]).collect()).collect();
    let c = (det_small(&minor)? / out[j] as i128).abs();
    Some(Some((out, c)))
}

/// Every circuit of `A`, once each, canonically sorted.
pub fn circuits(a: &ConfigMatrix) -> Result<Vec<Circuit>> {
    let (d, n) = (a.d(), a.n());
    if n <= d {
        return Ok(Vec::new());
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(d + 1).collect();
    let found: Vec<(LatticeVector, BigInt)> = subsets
        .par_iter()
        .filter_map(|s| {
            match circuit_of_subset(a, s) {
                Some(None) => return None,
                Some(Some((prim, c))) => {
                    let mut v = vec![0i64; n];
                    for (k, &col) in s.iter().enumerate() {
                        v[col] = prim[k];
                    }
                    normalize_sign(&mut v);
                    return Some((v, BigInt::from(c)));
                }
                None => {}
            }
            let cof = cofactor_vector(a, s);
            let c = gcd_vec(&cof);
            if c.is_zero() {
                return None;
            }
            let mut v = vec![0i64; n];
            for (k, &col) in s.iter().enumerate() {
                v[col] = (&cof[k] / &c).to_i64()?;
            }
            normalize_sign(&mut v);
            Some((v, c))
        })
        .collect();
    let mut best: BTreeMap<LatticeVector, BigInt> = BTreeMap::new();
    for (v, c) in found {
        best.entry(v).and_modify(|m| *m = m.clone().min(c.clone())).or_insert(c);
    }
    let mut out = Vec::with_capacity(best.len());
    for (v, c) in best {
        debug_assert!(v.iter().filter(|&&x| x != 0).count() <= d + 1);
        let c = c.to_i64().ok_or(Error::Overflow)?;
        let deg = match a.column_degrees() {
            Some(_) => a.degree(&v)?,
            None => crate::buchberger::vector_degree(&v),
        };
        out.push(Circuit { true_degree: c * deg, multiplier: c, vector: v });
    }
    Ok(out)
}

/// The true degree of a circuit: its degree multiplied by the gcd `c` of the
/// maximal minors defining it, minimized over column sets containing its support.
pub fn true_degree(c: &[i64], a: &ConfigMatrix) -> Result<i64> {
    check_dim(a.n(), c.len())?;
    let (d, n) = (a.d(), a.n());
    let supp: Vec<usize> = (0..n).filter(|&i| c[i] != 0).collect();
    let primitive = c.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1;
    if supp.is_empty() || !primitive || !a.in_kernel(c) || supp.len() > d + 1 {
        return Err(Error::NotACircuit);
    }
    if rank(&a.matrix().select_columns(&supp)) != supp.len() - 1 {
        return Err(Error::NotACircuit);
    }
    let rest: Vec<usize> = (0..n).filter(|i| !supp.contains(i)).collect();
    let mut best: Option<BigInt> = None;
    for extra in rest.iter().copied().combinations(d + 1 - supp.len()) {
        let mut s: Vec<usize> = supp.iter().copied().chain(extra).collect();
        s.sort_unstable();
        let g = gcd_vec(&cofactor_vector(a, &s));
        if !g.is_zero() {
            best = Some(best.map_or(g.clone(), |b| b.min(g)));
        }
    }
    let mult = best.ok_or(Error::NotACircuit)?.to_i64().ok_or(Error::Overflow)?;
    let deg = match a.column_degrees() {
        Some(_) => a.degree(c)?,
        None => crate::buchberger::vector_degree(c),
    };
    Ok(mult * deg)
}

/// `(n - d)(d + 1) D(A)`, which bounds the total degree (see
/// [`Binomial::degree`](crate::buchberger::Binomial::degree)) of every reduced
/// Groebner basis element. The grading degree can be larger.
pub fn degree_bound(a: &ConfigMatrix) -> Result<BigInt> {
    let dmax = max_abs_minor(a.matrix())?;
    Ok(BigInt::from((a.n() - a.d()) * (a.d() + 1)) * dmax)
}

/// Whether all nonzero maximal minors have the same absolute value.
pub fn is_unimodular(a: &ConfigMatrix) -> Result<bool> {
    let minors = nonzero_maximal_minors(a.matrix())?;
    let first = minors.first().map(|m| m.abs());
    Ok(minors.iter().all(|m| Some(m.abs()) == first))
}

#[derive(Debug, Clone)]
pub struct UniversalOptions {
    /// Refuse to enumerate sign patterns over more Graver vectors than this.
    pub max_graver: usize,
    pub parallel: bool,
}

impl Default for UniversalOptions {
    fn default() -> Self {
        UniversalOptions { max_graver: 22, parallel: true }
    }
}

/// Universal Groebner basis together with every reduced Groebner basis.
#[derive(Debug, Clone)]
pub struct UniversalGb {
    pub ugb: Vec<LatticeVector>,
    pub initial_ideals: Vec<MonomialIdeal>,
    /// A positive weight in the interior of each cone, aligned with `initial_ideals`.
    pub witnesses: Vec<RationalVector>,
    pub bases: Vec<GroebnerBasis>,
    pub graver: Vec<LatticeVector>,
}

/// Coordinates of kernel vectors in a fixed lattice basis, so that sign-pattern
/// feasibility is decided in dimension `n - d` instead of `n`.
struct KernelCoords {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    n: usize,
}

impl KernelCoords {
    fn new(a: &ConfigMatrix) -> Result<Self> {
        let basis = kernel_lattice_basis(a.matrix())?;
        let pivots = basis
            .iter()
            .map(|b| b.iter().position(|&x| x != 0).ok_or_else(|| Error::Internal("zero basis vector".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelCoords { basis, pivots, n: a.n() })
    }

    /// `c` with `sum c_j basis_j = v`.
    fn coords(&self, v: &[i64]) -> Result<Vec<i64>> {
        let mut r = v.to_vec();
        let mut c = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p] % b[p] != 0 {
                return Err(Error::Internal("vector outside the kernel lattice".into()));
            }
            let k = r[p] / b[p];
            for (x, &y) in r.iter_mut().zip(b) {
                *x -= k * y;
            }
            c.push(k);
        }
        if r.iter().any(|&x| x != 0) {
            return Err(Error::Internal("vector outside the kernel lattice".into()));
        }
        Ok(c)
    }

    /// Some `w` in `Q^n` with `basis_j . w = z_j` for every `j`.
    fn lift(&self, z: &[BigRational]) -> RationalVector {
        let mut w = vec![BigRational::zero(); self.n];
        for j in (0..self.basis.len()).rev() {
            let b = &self.basis[j];
            let p = self.pivots[j];
            let rest: BigRational = (0..self.n)
                .filter(|&i| i != p && b[i] != 0)
                .map(|i| &w[i] * BigRational::from_integer(BigInt::from(b[i])))
                .fold(BigRational::zero(), |s, x| s + x);
            w[p] = (&z[j] - rest) / BigRational::from_integer(BigInt::from(b[p]));
        }
        w
    }
}

/// Enumerates the sign patterns of the vectors in `coords` that are strictly
/// feasible, returning one witness per full-dimensional region.
fn feasible_regions(coords: &[Vec<i64>], dim: usize) -> Result<Vec<RationalVector>> {
    fn dot(c: &[i64], z: &[BigRational]) -> BigRational {
        c.iter()
            .zip(z)
            .filter(|(&a, _)| a != 0)
            .map(|(&a, b)| b * BigRational::from_integer(BigInt::from(a)))
            .fold(BigRational::zero(), |s, x| s + x)
    }
    fn go(
        coords: &[Vec<i64>],
        dim: usize,
        k: usize,
        system: &mut Vec<Vec<i64>>,
        witness: &RationalVector,
        out: &mut Vec<RationalVector>,
    ) -> Result<()> {
        if k == coords.len() {
            out.push(witness.clone());
            return Ok(());
        }
        let s = dot(&coords[k], witness);
        for sign in [1i64, -1] {
            let g: Vec<i64> = coords[k].iter().map(|&x| sign * x).collect();
            let next = if (s.is_positive() && sign == 1) || (s.is_negative() && sign == -1) {
                Some(witness.clone())
            } else {
                system.push(g.clone());
                let r = strict_feasible_in(system, dim)?;
                system.pop();
                r
            };
            if let Some(w) = next {
                system.push(g);
                go(coords, dim, k + 1, system, &w, out)?;
                system.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(coords, dim, 0, &mut Vec::new(), &vec![BigRational::zero(); dim], &mut out)?;
    Ok(out)
}

/// Universal Groebner basis of `I_A` by sign-pattern enumeration over the
/// Graver basis.
pub fn universal_gb(a: &ConfigMatrix) -> Result<UniversalGb> {
    universal_gb_with(a, &UniversalOptions::default())
}

pub fn universal_gb_with(a: &ConfigMatrix, opts: &UniversalOptions) -> Result<UniversalGb> {
    a.require_pointed()?;
    let gr = graver(a)?;
    if gr.len() > opts.max_graver {
        return Err(Error::LimitExceeded(format!(
            "Graver basis has {} elements, sign-pattern limit is {}",
            gr.len(),
            opts.max_graver
        )));
    }
    let gens = toric_generators(a)?;
    let kc = KernelCoords::new(a)?;
    let coords: Vec<Vec<i64>> = gr.iter().map(|g| kc.coords(g)).collect::<Result<_>>()?;
    let regions = feasible_regions(&coords, a.n() - a.d())?;
    let weights: Vec<(RationalVector, Vec<BigInt>)> = regions
        .iter()
        .map(|z| {
            let w = kc.lift(z);
            let pos = a.positive_weight(&w)?;
            Ok((pos.iter().map(|x| BigRational::from_integer(x.clone())).collect(), pos))
        })
        .collect::<Result<_>>()?;
    let n = a.n();
    let compute = |(_, w): &(RationalVector, Vec<BigInt>)| -> Result<GroebnerBasis> {
        let ord = TermOrder::from_integer_weight(w.clone(), TieBreak::DegRevLex, (0..n).collect())?;
        buchberger(&gens, &ord)
    };
    let bases: Vec<GroebnerBasis> = if opts.parallel {
        weights.par_iter().map(compute).collect::<Result<_>>()?
    } else {
        weights.iter().map(compute).collect::<Result<_>>()?
    };
    let mut by_ideal: BTreeMap<Vec<Vec<i64>>, (RationalVector, GroebnerBasis)> = BTreeMap::new();
    for ((w, _), gb) in weights.into_iter().zip(bases) {
        by_ideal.entry(gb.initial_ideal()).or_insert((w, gb));
    }
    let mut ugb = BTreeSet::new();
    let mut initial_ideals = Vec::new();
    let mut witnesses = Vec::new();
    let mut bases = Vec::new();
    for (ideal, (w, gb)) in by_ideal {
        ugb.extend(gb.vectors().iter().map(|v| normalized(v)));
        initial_ideals.push(MonomialIdeal::new(a.n(), ideal)?);
        witnesses.push(w);
        bases.push(gb);
    }
    Ok(UniversalGb { ugb: ugb.into_iter().collect(), initial_ideals, witnesses, bases, graver: gr })
}
