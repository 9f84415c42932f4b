//! Groebner cones, initial ideals, regular triangulations and monomial ideals.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::buchberger::{buchberger, GroebnerBasis};
use crate::error::{check_dim, Error, Result};
use crate::exactmath::{det_i64, is_irredundant, lattice_index, rank, IntMatrix};
use crate::orders::{TermOrder, TieBreak};
use crate::toric::{toric_generators, universal_gb, ConfigMatrix};
use crate::{LatticeVector, RationalVector};

/// A monomial ideal, stored by its minimal generators in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Vec<i64>>,
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    gens.sort_by_key(|g| (g.iter().sum::<i64>(), g.clone()));
    gens.dedup();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

impl MonomialIdeal {
    /// The ideal generated by `gens` in `n` variables.
    pub fn new(n: usize, gens: Vec<Vec<i64>>) -> Result<Self> {
        for g in &gens {
            check_dim(n, g.len())?;
            if g.iter().any(|&x| x < 0) {
                return Err(Error::InvalidInput("negative exponent in a monomial".into()));
            }
        }
        Ok(MonomialIdeal { n, generators: minimalize(gens) })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, generators: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, generators: vec![vec![0; n]] }
    }

    /// The prime generated by the variables in `vars`.
    pub fn prime(n: usize, vars: &[usize]) -> Self {
        let gens = vars
            .iter()
            .map(|&i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        MonomialIdeal { n, generators: minimalize(gens) }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, m))
    }

    /// `(I : x^m)`.
    pub fn colon(&self, m: &[i64]) -> MonomialIdeal {
        let gens = self.generators.iter().map(|g| g.iter().zip(m).map(|(a, b)| (a - b).max(0)).collect()).collect();
        MonomialIdeal { n: self.n, generators: minimalize(gens) }
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        MonomialIdeal { n: self.n, generators: minimalize(gens) }
    }

    /// If the ideal is generated by variables, their indices.
    pub fn as_prime(&self) -> Option<Vec<usize>> {
        let mut vars = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let nz: Vec<usize> = (0..self.n).filter(|&i| g[i] != 0).collect();
            if nz.len() != 1 || g[nz[0]] != 1 {
                return None;
            }
            vars.push(nz[0]);
        }
        vars.sort_unstable();
        Some(vars)
    }
}

/// A polyhedral cone `{w : g . w >= 0 for all g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub inequalities: Vec<LatticeVector>,
    pub lineality_dim: usize,
    pub irredundant: bool,
}

impl Cone {
    pub fn num_facets(&self) -> usize {
        self.inequalities.len()
    }

    /// Whether `w` satisfies every inequality strictly.
    pub fn contains_strictly(&self, w: &[BigRational]) -> bool {
        self.inequalities.iter().all(|g| {
            g.iter()
                .zip(w)
                .map(|(&a, b)| b * BigRational::from_integer(BigInt::from(a)))
                .fold(BigRational::zero(), |s, x| s + x)
                .is_positive()
        })
    }
}

fn primitive(v: &[i64]) -> LatticeVector {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// The Groebner cone of a reduced basis, with redundant inequalities removed.
///
/// Every normal `lead - trail` is a kernel vector, hence already orthogonal to
/// the lineality space (the row space of `A`).
pub fn groebner_cone(g: &GroebnerBasis) -> Result<Cone> {
    let n = g.num_vars();
    let set: BTreeSet<LatticeVector> = g.elements().iter().map(|b| primitive(b.vector())).collect();
    let normals: Vec<LatticeVector> = set.into_iter().collect();
    let lineality_dim = if normals.is_empty() { n } else { n - rank(&IntMatrix::from_rows(&normals)?) };
    let mut keep = Vec::new();
    for i in 0..normals.len() {
        if is_irredundant(&normals, i)? {
            keep.push(normals[i].clone());
        }
    }
    Ok(Cone { inequalities: keep, lineality_dim, irredundant: true })
}

/// Every initial ideal of `I_A` with a weight in the interior of its cone.
pub fn enumerate_initial_ideals(a: &ConfigMatrix) -> Result<Vec<(MonomialIdeal, RationalVector)>> {
    let u = universal_gb(a)?;
    Ok(u.initial_ideals.into_iter().zip(u.witnesses).collect())
}

/// A simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(n_vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        for f in &fs {
            if f.iter().any(|&v| v >= n_vertices) {
                return Err(Error::InvalidInput(format!("facet {f:?} has a vertex out of range")));
            }
        }
        fs.sort();
        fs.dedup();
        let all = fs.clone();
        fs.retain(|f| !all.iter().any(|g| g != f && f.iter().all(|v| g.contains(v))));
        Ok(SimplicialComplex { n_vertices, facets: fs })
    }

    pub fn is_face(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| s.iter().all(|v| f.contains(v)))
    }

    /// Inclusion-minimal vertex sets that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut faces: HashSet<Vec<usize>> = HashSet::new();
        faces.insert(Vec::new());
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        while !level.is_empty() {
            let mut next = Vec::new();
            for f in &level {
                let start = f.last().map_or(0, |&v| v + 1);
                for v in start..self.n_vertices {
                    let mut s = f.clone();
                    s.push(v);
                    // all proper subsets one smaller must be faces
                    let boundary_ok = (0..s.len()).all(|k| {
                        let mut t = s.clone();
                        t.remove(k);
                        faces.contains(&t)
                    });
                    if !boundary_ok {
                        continue;
                    }
                    if self.is_face(&s) {
                        next.push(s);
                    } else {
                        out.push(s);
                    }
                }
            }
            faces.extend(next.iter().cloned());
            level = next;
        }
        out.sort();
        out
    }
}

/// Solves the square system `m y = rhs` exactly; `None` if `m` is singular.
fn solve_square(m: &[Vec<i64>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            row.push(b.clone());
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..=k {
                    let v = &a[c][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[k].clone()).collect())
}

/// The regular triangulation of the columns of `A` induced by the heights `omega`.
///
/// A `d`-set of independent columns is a facet when the linear functional `y`
/// with `a_i . y = omega_i` on the set satisfies `a_j . y < omega_j` for every
/// other column. Equality there means `omega` does not induce a triangulation.
pub fn regular_triangulation(a: &ConfigMatrix, omega: &[BigRational]) -> Result<SimplicialComplex> {
    let (d, n) = (a.d(), a.n());
    check_dim(n, omega.len())?;
    a.require_pointed()?;
    let cols: Vec<Vec<i64>> = (0..n).map(|j| a.column(j)).collect();
    let mut facets = Vec::new();
    for s in (0..n).combinations(d) {
        let m: Vec<Vec<i64>> = s.iter().map(|&i| cols[i].clone()).collect();
        let rhs: Vec<BigRational> = s.iter().map(|&i| omega[i].clone()).collect();
        let Some(y) = solve_square(&m, &rhs) else { continue };
        let mut tight = None;
        let mut ok = true;
        for j in (0..n).filter(|j| !s.contains(j)) {
            let v = cols[j]
                .iter()
                .zip(&y)
                .map(|(&c, yi)| yi * BigRational::from_integer(BigInt::from(c)))
                .fold(BigRational::zero(), |acc, x| acc + x);
            match v.cmp(&omega[j]) {
                std::cmp::Ordering::Greater => {
                    ok = false;
                    break;
                }
                std::cmp::Ordering::Equal => tight = Some(j),
                std::cmp::Ordering::Less => {}
            }
        }
        if !ok {
            continue;
        }
        if let Some(j) = tight {
            return Err(Error::NonGenericOmega(format!("column {} lies on the cell spanned by {s:?}", j + 1)));
        }
        facets.push(s);
    }
    // every column must lie in the cone of some facet
    for (j, c) in cols.iter().enumerate() {
        let covered = facets.iter().any(|f| {
            let mt: Vec<Vec<i64>> = (0..d).map(|r| f.iter().map(|&i| cols[i][r]).collect()).collect();
            let rhs: Vec<BigRational> = c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            solve_square(&mt, &rhs).is_some_and(|lam| lam.iter().all(|l| !l.is_negative()))
        });
        if !covered {
            return Err(Error::NonGenericOmega(format!("column {} is not covered by the subdivision", j + 1)));
        }
    }
    SimplicialComplex::new(n, facets)
}

/// The Stanley-Reisner ideal, as the intersection over facets of the primes
/// generated by the variables outside each facet.
pub fn stanley_reisner(delta: &SimplicialComplex) -> MonomialIdeal {
    let n = delta.n_vertices;
    let mut ideal = MonomialIdeal::unit(n);
    for f in &delta.facets {
        let outside: Vec<usize> = (0..n).filter(|v| !f.contains(v)).collect();
        ideal = ideal.intersection(&MonomialIdeal::prime(n, &outside));
    }
    if delta.facets.is_empty() {
        return MonomialIdeal::unit(n);
    }
    debug_assert_eq!(ideal, stanley_reisner_nonfaces(delta));
    ideal
}

/// The Stanley-Reisner ideal, generated by the minimal non-faces.
pub fn stanley_reisner_nonfaces(delta: &SimplicialComplex) -> MonomialIdeal {
    let n = delta.n_vertices;
    let gens = delta
        .minimal_nonfaces()
        .into_iter()
        .map(|s| {
            let mut e = vec![0; n];
            for v in s {
                e[v] = 1;
            }
            e
        })
        .collect();
    MonomialIdeal { n, generators: minimalize(gens) }
}

pub fn radical_monomial(i: &MonomialIdeal) -> MonomialIdeal {
    let gens = i.generators.iter().map(|g| g.iter().map(|&x| x.min(1)).collect()).collect();
    MonomialIdeal { n: i.n, generators: minimalize(gens) }
}

pub fn is_squarefree(i: &MonomialIdeal) -> bool {
    i.generators.iter().all(|g| g.iter().all(|&x| x <= 1))
}

/// The initial ideal of `I_A` for the weight `omega`, refined by degrevlex.
pub fn initial_ideal(a: &ConfigMatrix, omega: &[BigRational]) -> Result<(MonomialIdeal, GroebnerBasis)> {
    let w = a.positive_weight(omega)?;
    let ord = TermOrder::from_integer_weight(w, TieBreak::DegRevLex, (0..a.n()).collect())?;
    let gb = buchberger(&toric_generators(a)?, &ord)?;
    Ok((MonomialIdeal::new(a.n(), gb.initial_ideal())?, gb))
}

/// Whether the radical of `in_omega(I_A)` is the Stanley-Reisner ideal of the
/// regular triangulation induced by `omega`.
pub fn check_radical_triangulation(a: &ConfigMatrix, omega: &[BigRational]) -> Result<bool> {
    let delta = regular_triangulation(a, omega)?;
    let (ini, _) = initial_ideal(a, omega)?;
    Ok(radical_monomial(&ini) == stanley_reisner(&delta))
}

/// Whether every facet spans a simplex of normalized volume one, i.e. its
/// determinant equals the lattice index of `A` in absolute value.
pub fn is_unimodular_triangulation(a: &ConfigMatrix, delta: &SimplicialComplex) -> Result<bool> {
    let index = lattice_index(a.matrix())?;
    for f in &delta.facets {
        let m: Vec<Vec<i64>> = a.rows_i64().iter().map(|r| f.iter().map(|&i| r[i]).collect()).collect();
        if det_i64(&m).abs() != index {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search nodes allowed per call of [`assoc_primes_monomial`].
pub const ASSOC_PRIMES_LIMIT: u64 = 50_000_000;

/// Associated primes of a monomial ideal, as sorted variable-index sets.
///
/// `P = (x_i : i in S)` is associated exactly when, with the variables outside
/// `S` set to 1, some standard monomial `m` has `x_i m` in the ideal for every
/// `i` in `S`. Then `m_i + 1` is the `i`-th exponent of some generator, which
/// leaves finitely many candidates.
pub fn assoc_primes_monomial(i: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    let n = i.n;
    if n > 20 {
        return Err(Error::LimitExceeded(format!("{n} variables, at most 20 supported")));
    }
    if i.is_zero() {
        return Ok(vec![Vec::new()]);
    }
    let mut budget = ASSOC_PRIMES_LIMIT;
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let gens = minimalize(i.generators.iter().map(|g| s.iter().map(|&k| g[k]).collect()).collect());
        if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            continue;
        }
        let cands: Vec<Vec<i64>> = (0..s.len())
            .map(|k| gens.iter().filter(|g| g[k] > 0).map(|g| g[k] - 1).sorted_unstable_by(|a, b| b.cmp(a)).dedup().collect())
            .collect();
        if cands.iter().any(Vec::is_empty) {
            continue;
        }
        let mut m: Vec<i64> = cands.iter().map(|c| c[0]).collect();
        if socle_witness(&gens, &cands, 0, &mut m, &mut budget)? {
            found.insert(s);
        }
    }
    Ok(found.into_iter().collect())
}

/// Depth-first search for `m` outside the ideal of `gens` with `x_k m` inside
/// for all `k`. Entries from `k` on hold their largest candidates.
fn socle_witness(gens: &[Vec<i64>], cands: &[Vec<i64>], k: usize, m: &mut Vec<i64>, budget: &mut u64) -> Result<bool> {
    let inside = |m: &[i64]| gens.iter().any(|g| divides(g, m));
    let times = |m: &[i64], j: usize| {
        let mut t = m.to_vec();
        t[j] += 1;
        t
    };
    if k == m.len() {
        return Ok(!inside(m) && (0..m.len()).all(|j| inside(&times(m, j))));
    }
    let top = m[k];
    for &c in &cands[k] {
        *budget = budget.checked_sub(1).ok_or_else(|| Error::LimitExceeded("associated prime search too large".into()))?;
        m[k] = c;
        // lowering later entries only shrinks x_j m
        if (0..=k).any(|j| !inside(&times(m, j))) {
            break;
        }
        let low: Vec<i64> = m.iter().enumerate().map(|(j, &e)| if j > k { 0 } else { e }).collect();
        if inside(&low) {
            continue;
        }
        if socle_witness(gens, cands, k + 1, m, budget)? {
            m[k] = top;
            return Ok(true);
        }
    }
    m[k] = top;
    Ok(false)
}

/// For every embedded associated prime `P` there is an associated prime
/// `Q` contained in `P` with one variable fewer.
pub fn check_chain_property(i: &MonomialIdeal) -> Result<bool> {
    let primes = assoc_primes_monomial(i)?;
    let subset = |q: &[usize], p: &[usize]| q.iter().all(|v| p.contains(v));
    for p in &primes {
        let embedded = primes.iter().any(|q| q != p && subset(q, p));
        if !embedded {
            continue;
        }
        if !primes.iter().any(|q| q.len() + 1 == p.len() && subset(q, p)) {
            return Ok(false);
        }
    }
    Ok(true)
}
