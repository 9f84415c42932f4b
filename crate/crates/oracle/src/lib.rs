//! Brute-force reference computations.
//!
//! Everything here works by exhaustive enumeration and deliberately shares no
//! reduction, Groebner or feasibility code with the main crate; only its data
//! types are reused. Nothing is fast.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use toric::fan::MonomialIdeal;
use toric::toric::ConfigMatrix;
use toric::LatticeVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("configuration is not positively graded")]
    NotPointed,
    #[error("dimension mismatch")]
    DimensionMismatch,
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Upper bound on the number of monomials any grouped enumeration may visit.
pub const MONOMIAL_LIMIT: usize = 2_000_000;

/// Upper bound for the compact enumeration behind kernel vectors.
pub const KERNEL_MONOMIAL_LIMIT: usize = 8_000_000;

fn degrees(a: &ConfigMatrix) -> Result<Vec<i64>> {
    a.column_degrees().map(<[i64]>::to_vec).ok_or(OracleError::NotPointed)
}

fn for_each_monomial(deg: &[i64], bound: i64, limit: usize, mut f: impl FnMut(&[i64])) -> Result<()> {
    fn go(i: usize, left: i64, deg: &[i64], cur: &mut Vec<i64>, seen: &mut usize, limit: usize, f: &mut dyn FnMut(&[i64])) -> Result<()> {
        if i == deg.len() {
            *seen += 1;
            if *seen > limit {
                return Err(OracleError::LimitExceeded(format!("more than {limit} monomials")));
            }
            f(cur);
            return Ok(());
        }
        for k in 0..=left / deg[i] {
            cur[i] = k;
            go(i + 1, left - k * deg[i], deg, cur, seen, limit, f)?;
        }
        cur[i] = 0;
        Ok(())
    }
    if bound < 0 {
        return Ok(());
    }
    let mut cur = vec![0i64; deg.len()];
    go(0, bound, deg, &mut cur, &mut 0, limit, &mut f)
}

/// All exponent vectors of grading degree at most `bound`.
pub fn monomials_up_to(deg: &[i64], bound: i64) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_monomial(deg, bound, MONOMIAL_LIMIT, |u| out.push(u.to_vec()))?;
    Ok(out)
}

fn image(a: &ConfigMatrix, u: &[i64]) -> Vec<i64> {
    a.rows_i64().iter().map(|r| r.iter().zip(u).map(|(x, y)| x * y).sum()).collect()
}

fn sign_normalized(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Monomials of degree at most `bound`, grouped by their image under `A`.
pub fn fibers_up_to(a: &ConfigMatrix, bound: i64) -> Result<Vec<Vec<Vec<i64>>>> {
    let deg = degrees(a)?;
    let mut by_image: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
    for u in monomials_up_to(&deg, bound)? {
        by_image.entry(image(a, &u)).or_default().push(u);
    }
    Ok(by_image.into_values().collect())
}

/// Every nonzero kernel vector whose positive part has degree at most
/// `bound`, one per sign pair, sorted.
pub fn kernel_vectors_up_to(a: &ConfigMatrix, bound: i64) -> Result<Vec<LatticeVector>> {
    let deg = degrees(a)?;
    let n = a.n();
    if bound > i64::from(u16::MAX) {
        return Err(OracleError::LimitExceeded("degree bound too large".into()));
    }
    // compact storage: the monomials themselves plus an image hash per monomial
    let mut arena: Vec<u16> = Vec::new();
    let mut keys: Vec<(u64, u32)> = Vec::new();
    for_each_monomial(&deg, bound, KERNEL_MONOMIAL_LIMIT, |u| {
        let mut h = DefaultHasher::new();
        image(a, u).hash(&mut h);
        keys.push((h.finish(), keys.len() as u32));
        arena.extend(u.iter().map(|&x| x as u16));
    })?;
    keys.sort_unstable();
    let mono = |i: u32| -> Vec<i64> { arena[i as usize * n..(i as usize + 1) * n].iter().map(|&x| i64::from(x)).collect() };
    let mut out = BTreeSet::new();
    for group in keys.chunk_by(|x, y| x.0 == y.0) {
        if group.len() < 2 {
            continue;
        }
        let mut by_image: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
        for &(_, i) in group {
            let u = mono(i);
            by_image.entry(image(a, &u)).or_default().push(u);
        }
        for f in by_image.values() {
            for (u, v) in f.iter().tuple_combinations() {
                if u.iter().zip(v).all(|(&x, &y)| x == 0 || y == 0) {
                    out.insert(sign_normalized(u.iter().zip(v).map(|(x, y)| x - y).collect()));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `u` is conformal to `v`: same signs and no larger in absolute value.
pub fn conformal_le(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(&x, &y)| x == 0 || (x.signum() == y.signum() && x.abs() <= y.abs()))
}

/// The kernel vectors within the degree bound that have no proper conformal
/// kernel summand.
pub fn graver_bruteforce(a: &ConfigMatrix, bound: i64) -> Result<Vec<LatticeVector>> {
    let mut ks = kernel_vectors_up_to(a, bound)?;
    // a reducible vector lies above a primitive one of smaller 1-norm, so
    // scanning by norm and testing against the kept vectors is enough
    ks.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    let mut kept: Vec<LatticeVector> = Vec::new();
    for v in ks {
        let reducible = kept.iter().any(|u| {
            let neg: Vec<i64> = u.iter().map(|x| -x).collect();
            conformal_le(u, &v) || conformal_le(&neg, &v)
        });
        if !reducible {
            kept.push(v);
        }
    }
    kept.sort();
    Ok(kept)
}

/// Reduces `u` one step at a time: repeatedly subtract the first oriented
/// vector whose positive part fits below `u`.
pub fn reduce_single_step(u: &[i64], oriented: &[Vec<i64>]) -> Vec<i64> {
    let mut cur = u.to_vec();
    'outer: loop {
        for g in oriented {
            if g.iter().zip(&cur).all(|(&gi, &ci)| gi <= 0 || gi <= ci) {
                for (c, gi) in cur.iter_mut().zip(g) {
                    *c -= gi;
                }
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Every point of `{x >= 0 : A x = b}` for a matrix without negative entries
/// and zero columns, by scanning the box below `b` coordinate by coordinate
/// and pruning once some row overshoots.
pub fn fiber_bruteforce(a: &ConfigMatrix, b: &[i64]) -> Result<Vec<Vec<i64>>> {
    let rows = a.rows_i64();
    if b.len() != rows.len() {
        return Err(OracleError::DimensionMismatch);
    }
    if rows.iter().flatten().any(|&x| x < 0) {
        return Err(OracleError::LimitExceeded("negative entries make the fiber scan unbounded".into()));
    }
    let n = a.n();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    if cols.iter().any(|c| c.iter().all(|&x| x == 0)) {
        return Err(OracleError::LimitExceeded("a zero column makes the fiber infinite".into()));
    }
    fn go(j: usize, left: &mut Vec<i64>, cols: &[Vec<i64>], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) -> Result<()> {
        if j == cols.len() {
            if left.iter().all(|&x| x == 0) {
                if out.len() >= MONOMIAL_LIMIT {
                    return Err(OracleError::LimitExceeded(format!("more than {MONOMIAL_LIMIT} fiber points")));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        loop {
            go(j + 1, left, cols, cur, out)?;
            if cols[j].iter().zip(left.iter()).any(|(&c, &l)| c > l) {
                break;
            }
            for (l, &c) in left.iter_mut().zip(&cols[j]) {
                *l -= c;
            }
            cur[j] += 1;
        }
        for (l, &c) in left.iter_mut().zip(&cols[j]) {
            *l += c * cur[j];
        }
        cur[j] = 0;
        Ok(())
    }
    let mut out = Vec::new();
    if n > 0 && b.iter().all(|&x| x >= 0) {
        go(0, &mut b.to_vec(), &cols, &mut vec![0; n], &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn weight_of(w: &[i64], u: &[i64]) -> i64 {
    w.iter().zip(u).map(|(a, b)| a * b).sum()
}

/// The initial ideal for `w`, truncated at degree `bound`: every monomial that
/// is not the unique `w`-cheapest point of its fiber. `None` if some fiber has
/// a tied minimum (then `w` is not generic).
pub fn initial_ideal_from_fibers(a: &ConfigMatrix, w: &[i64], bound: i64) -> Result<Option<MonomialIdeal>> {
    let fibers = fibers_up_to(a, bound)?;
    initial_ideal_in(a.n(), &fibers, w)
}

fn initial_ideal_in(n: usize, fibers: &[Vec<Vec<i64>>], w: &[i64]) -> Result<Option<MonomialIdeal>> {
    let mut gens = Vec::new();
    for f in fibers {
        let costs: Vec<i64> = f.iter().map(|u| weight_of(w, u)).collect();
        let min = *costs.iter().min().expect("nonempty fiber");
        if costs.iter().filter(|&&c| c == min).count() > 1 {
            return Ok(None);
        }
        gens.extend(f.iter().zip(&costs).filter(|(_, &c)| c != min).map(|(u, _)| u.clone()));
    }
    Ok(Some(MonomialIdeal::new(n, gens).expect("valid exponents")))
}

/// Distinct initial ideals (truncated at degree `bound`) over integer weights
/// in `[-radius, radius]^n`. A lower bound: thin cones can be missed.
pub fn weight_grid_initial_ideals(a: &ConfigMatrix, radius: i64, bound: i64) -> Result<Vec<MonomialIdeal>> {
    let n = a.n();
    let fibers = fibers_up_to(a, bound)?;
    let points = (2 * radius + 1).checked_pow(n as u32);
    if points.is_none_or(|p| p > 20_000_000) {
        return Err(OracleError::LimitExceeded("weight grid too large".into()));
    }
    let mut found = BTreeSet::new();
    for w in (0..n).map(|_| -radius..=radius).multi_cartesian_product() {
        if let Some(i) = initial_ideal_in(n, &fibers, &w)? {
            found.insert(i);
        }
    }
    Ok(found.into_iter().collect())
}

fn intersect(n: usize, a: &[Vec<i64>], b: &[Vec<i64>]) -> MonomialIdeal {
    let gens = a.iter().cartesian_product(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p.max(q)).collect()).collect();
    MonomialIdeal::new(n, gens).expect("valid exponents")
}

/// Intersection of monomial ideals by pairwise lcms.
pub fn intersect_all(n: usize, parts: &[MonomialIdeal]) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(n);
    for p in parts {
        acc = intersect(n, acc.generators(), p.generators());
    }
    acc
}

fn ideal_contains(big: &MonomialIdeal, small: &MonomialIdeal) -> bool {
    small.generators().iter().all(|g| big.generators().iter().any(|h| h.iter().zip(g).all(|(x, y)| x <= y)))
}

/// Irredundant decomposition into ideals generated by pure powers of
/// variables, by splitting `I + (x_i^a m')` into `(I + x_i^a) cap (I + m')`.
pub fn irreducible_decomposition(i: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    let n = i.num_vars();
    if n > 4 || i.generators().iter().flatten().any(|&e| e > 8) {
        return Err(OracleError::LimitExceeded("at most 4 variables and exponents up to 8".into()));
    }
    let mut done: Vec<MonomialIdeal> = Vec::new();
    let mut work = vec![i.clone()];
    while let Some(j) = work.pop() {
        if j.generators().iter().any(|g| g.iter().all(|&e| e == 0)) {
            continue;
        }
        let mixed = j.generators().iter().find(|g| g.iter().filter(|&&e| e > 0).count() > 1).cloned();
        match mixed {
            None => done.push(j),
            Some(g) => {
                let k = g.iter().position(|&e| e > 0).expect("nonzero");
                let mut pure = vec![0; n];
                pure[k] = g[k];
                let mut rest = g.clone();
                rest[k] = 0;
                for extra in [pure, rest] {
                    let mut gens = j.generators().to_vec();
                    gens.push(extra);
                    work.push(MonomialIdeal::new(n, gens).expect("valid exponents"));
                }
            }
        }
    }
    done.sort();
    done.dedup();
    let all = done.clone();
    done.retain(|q| !all.iter().any(|p| p != q && ideal_contains(q, p)));
    Ok(done)
}

/// Associated primes read off an irreducible decomposition.
pub fn assoc_primes_via_decomposition(i: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    let parts = irreducible_decomposition(i)?;
    let set: BTreeSet<Vec<usize>> = parts
        .iter()
        .map(|q| q.generators().iter().map(|g| g.iter().position(|&e| e > 0).expect("pure power")).sorted().collect())
        .collect();
    Ok(set.into_iter().collect())
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn rank_of(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

fn null_space(rows: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Number of facets of `{w : g . w >= 0}` by enumerating extreme rays modulo
/// the lineality space (double description by brute force).
pub fn cone_facets_bruteforce(ineqs: &[Vec<i64>]) -> usize {
    let Some(n) = ineqs.first().map(Vec::len) else { return 0 };
    let g: Vec<Vec<BigRational>> = ineqs.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let r = rank_of(&g);
    let lineality = null_space(&g, n);
    let dot = |a: &[BigRational], b: &[BigRational]| a.iter().zip(b).map(|(x, y)| x * y).fold(BigRational::zero(), |s, v| s + v);
    // extreme rays orthogonal to the lineality space
    let mut rays: Vec<Vec<BigRational>> = Vec::new();
    if r >= 1 {
        for s in (0..g.len()).combinations(r - 1) {
            let mut m: Vec<Vec<BigRational>> = s.iter().map(|&i| g[i].clone()).collect();
            m.extend(lineality.iter().cloned());
            let ns = null_space(&m, n);
            if ns.len() != 1 {
                continue;
            }
            let v = &ns[0];
            let vals: Vec<BigRational> = g.iter().map(|gi| dot(gi, v)).collect();
            let ray = if vals.iter().all(|x| !x.is_negative()) {
                v.clone()
            } else if vals.iter().all(|x| !x.is_positive()) {
                v.iter().map(|x| -x).collect()
            } else {
                continue;
            };
            if !rays.iter().any(|q| rank_of(&[q.clone(), ray.clone()]) == 1 && dot(q, &ray).is_positive()) {
                rays.push(ray);
            }
        }
    }
    // a constraint is a facet when the rays on its hyperplane span r - 1 dimensions
    let mut normals: Vec<Vec<BigRational>> = Vec::new();
    let mut count = 0;
    for gi in &g {
        if gi.iter().all(Zero::is_zero) {
            continue;
        }
        let on: Vec<Vec<BigRational>> = rays.iter().filter(|q| dot(gi, q).is_zero()).cloned().collect();
        if rays.is_empty() || rank_of(&on) != r - 1 {
            continue;
        }
        // parallel copies describe the same facet
        if normals.iter().any(|h| rank_of(&[h.clone(), gi.clone()]) == 1 && dot(h, gi).is_positive()) {
            continue;
        }
        normals.push(gi.clone());
        count += 1;
    }
    count
}
