//! Integer programming over fibers `{x in N^n : A x = b}` by normal forms.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::buchberger::{buchberger, normal_form, GroebnerBasis};
use crate::error::{check_dim, Error, Result};
use crate::orders::{TermOrder, TieBreak};
use crate::toric::{toric_generators, ConfigMatrix};
use crate::{LatticeVector, RationalVector};

/// Default bound on the number of points a fiber may have.
pub const DEFAULT_FIBER_LIMIT: usize = 200_000;

/// `minimize omega . x subject to A x = b, x in N^n`.
#[derive(Debug, Clone)]
pub struct IPInstance {
    pub a: ConfigMatrix,
    pub omega: RationalVector,
    pub b: Vec<i64>,
    /// Breaks ties between points of equal cost.
    pub tiebreak: TieBreak,
}

impl IPInstance {
    pub fn new(a: ConfigMatrix, omega: RationalVector, b: Vec<i64>) -> Result<Self> {
        check_dim(a.n(), omega.len())?;
        if b.len() != a.d() && b.len() != a.input().rows() {
            return Err(Error::DimensionMismatch { expected: a.input().rows(), found: b.len() });
        }
        Ok(IPInstance { a, omega, b, tiebreak: TieBreak::Lex })
    }

    pub fn from_i64(a: ConfigMatrix, omega: &[i64], b: Vec<i64>) -> Result<Self> {
        let w = omega.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        Self::new(a, w, b)
    }

    /// The term order `(omega, tiebreak)`. The weight is shifted along the
    /// grading, which changes every cost in a fiber by the same amount.
    pub fn order(&self) -> Result<TermOrder> {
        order_for(&self.a, &self.omega, self.tiebreak)
    }

    /// Exact cost `omega . x`.
    pub fn cost(&self, x: &[i64]) -> BigRational {
        self.omega
            .iter()
            .zip(x)
            .map(|(w, &xi)| w * BigRational::from_integer(BigInt::from(xi)))
            .fold(BigRational::zero(), |s, v| s + v)
    }
}

fn order_for(a: &ConfigMatrix, omega: &[BigRational], tiebreak: TieBreak) -> Result<TermOrder> {
    let w = a.positive_weight(omega)?;
    TermOrder::from_integer_weight(w, tiebreak, (0..a.n()).collect())
}

/// Depth-first search over the fiber. Every point has grading degree
/// `y . b`, which bounds each coordinate; rows whose remaining columns share a
/// sign prune further.
struct FiberSearch<'a> {
    cols: Vec<Vec<i64>>,
    deg: &'a [i64],
    // sign_suffix[i][r]: (all columns >= i nonnegative in row r, all nonpositive)
    sign_suffix: Vec<Vec<(bool, bool)>>,
}

impl<'a> FiberSearch<'a> {
    fn new(a: &'a ConfigMatrix) -> Result<Self> {
        let deg = a.require_pointed()?;
        let n = a.n();
        let d = a.d();
        let cols: Vec<Vec<i64>> = (0..n).map(|j| a.column(j)).collect();
        let mut sign_suffix = vec![vec![(true, true); d]; n + 1];
        for i in (0..n).rev() {
            for r in 0..d {
                let (p, m) = sign_suffix[i + 1][r];
                sign_suffix[i][r] = (p && cols[i][r] >= 0, m && cols[i][r] <= 0);
            }
        }
        Ok(FiberSearch { cols, deg, sign_suffix })
    }

    fn total_degree(a: &ConfigMatrix, b: &[i64]) -> Result<Option<i64>> {
        let y = a.grading().ok_or(Error::NotPointed)?;
        let total: BigRational = y
            .iter()
            .zip(b)
            .map(|(yi, &bi)| yi * BigRational::from_integer(BigInt::from(bi)))
            .fold(BigRational::zero(), |s, v| s + v);
        if !total.is_integer() || total < BigRational::zero() {
            return Ok(None);
        }
        Ok(Some(total.to_integer().to_i64().ok_or(Error::Overflow)?))
    }

    fn pruned(&self, i: usize, rem: &[i64]) -> bool {
        rem.iter().enumerate().any(|(r, &x)| {
            let (p, m) = self.sign_suffix[i][r];
            (p && x < 0) || (m && x > 0) || (p && m && x != 0)
        })
    }

    /// Visits every fiber point; `visit` returns false to stop early.
    fn run(&self, b: &[i64], total: i64, visit: &mut dyn FnMut(&[i64]) -> Result<bool>) -> Result<()> {
        let n = self.cols.len();
        let mut x = vec![0i64; n];
        let mut rem = b.to_vec();
        self.go(0, total, &mut x, &mut rem, visit).map(|_| ())
    }

    fn go(
        &self,
        i: usize,
        budget: i64,
        x: &mut Vec<i64>,
        rem: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64]) -> Result<bool>,
    ) -> Result<bool> {
        if self.pruned(i, rem) {
            return Ok(true);
        }
        let n = self.cols.len();
        if i == n {
            if budget == 0 && rem.iter().all(|&r| r == 0) {
                return visit(x);
            }
            return Ok(true);
        }
        let mut hi = budget / self.deg[i];
        for (r, &c) in self.cols[i].iter().enumerate() {
            if c > 0 && self.sign_suffix[i][r].0 {
                hi = hi.min(rem[r] / c);
            }
        }
        for k in (0..=hi).rev() {
            x[i] = k;
            for (r, &c) in self.cols[i].iter().enumerate() {
                rem[r] -= k * c;
            }
            let cont = self.go(i + 1, budget - k * self.deg[i], x, rem, visit)?;
            for (r, &c) in self.cols[i].iter().enumerate() {
                rem[r] += k * c;
            }
            if !cont {
                x[i] = 0;
                return Ok(false);
            }
        }
        x[i] = 0;
        Ok(true)
    }
}

fn search_first(a: &ConfigMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let Some(b) = a.project_rhs(b)? else { return Ok(None) };
    let Some(total) = FiberSearch::total_degree(a, &b)? else { return Ok(None) };
    let s = FiberSearch::new(a)?;
    let mut found = None;
    s.run(&b, total, &mut |x| {
        found = Some(x.to_vec());
        Ok(false)
    })?;
    Ok(found)
}

fn check_guard(a: &ConfigMatrix) -> Result<()> {
    if a.input().has_negative_entry() {
        return Err(Error::GuardViolated("matrix has a negative entry".into()));
    }
    if a.has_zero_column() {
        return Err(Error::GuardViolated("matrix has a zero column".into()));
    }
    Ok(())
}

/// Some point of the fiber of `b`, or `None` if it is empty.
pub fn feasible_point(a: &ConfigMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    check_guard(a)?;
    search_first(a, b)
}

/// Every point of the fiber of `b`, sorted.
pub fn fiber(a: &ConfigMatrix, b: &[i64]) -> Result<Vec<Vec<i64>>> {
    fiber_with_limit(a, b, DEFAULT_FIBER_LIMIT)
}

pub fn fiber_with_limit(a: &ConfigMatrix, b: &[i64], limit: usize) -> Result<Vec<Vec<i64>>> {
    check_guard(a)?;
    let Some(b) = a.project_rhs(b)? else { return Ok(Vec::new()) };
    let Some(total) = FiberSearch::total_degree(a, &b)? else { return Ok(Vec::new()) };
    let s = FiberSearch::new(a)?;
    let mut out = Vec::new();
    s.run(&b, total, &mut |x| {
        if out.len() == limit {
            return Err(Error::LimitExceeded(format!("fiber has more than {limit} points")));
        }
        out.push(x.to_vec());
        Ok(true)
    })?;
    out.sort();
    Ok(out)
}

/// Solves many right-hand sides against one Groebner basis.
#[derive(Debug, Clone)]
pub struct IpSolver {
    a: ConfigMatrix,
    gb: GroebnerBasis,
}

impl IpSolver {
    pub fn new(a: &ConfigMatrix, omega: &[BigRational], tiebreak: TieBreak) -> Result<Self> {
        check_dim(a.n(), omega.len())?;
        let ord = order_for(a, omega, tiebreak)?;
        let gb = buchberger(&toric_generators(a)?, &ord)?;
        Ok(IpSolver { a: a.clone(), gb })
    }

    pub fn for_instance(inst: &IPInstance) -> Result<Self> {
        Self::new(&inst.a, &inst.omega, inst.tiebreak)
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// The optimum, or `None` if the fiber is empty.
    pub fn solve(&self, b: &[i64]) -> Result<Option<Vec<i64>>> {
        match search_first(&self.a, b)? {
            Some(x) => Ok(Some(normal_form(&x, &self.gb)?)),
            None => Ok(None),
        }
    }

    /// The optimum reached from a given feasible point.
    pub fn solve_from(&self, start: &[i64]) -> Result<Vec<i64>> {
        normal_form(start, &self.gb)
    }
}

/// The optimum of the instance: the normal form of any feasible point.
pub fn solve_ip(inst: &IPInstance) -> Result<Option<Vec<i64>>> {
    IpSolver::for_instance(inst)?.solve(&inst.b)
}

/// Solves the instance by elimination: the normal form of `t^b` modulo
/// `<x_i - t^(a_i)>` under an order with every `t` variable above every `x`.
pub fn solve_ip_elimination(inst: &IPInstance) -> Result<Option<Vec<i64>>> {
    let a = &inst.a;
    if a.input().has_negative_entry() {
        return Err(Error::NegativeEntries);
    }
    let Some(b) = a.project_rhs(&inst.b)? else { return Ok(None) };
    if b.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    let (d, n) = (a.d(), a.n());
    let gens: Vec<LatticeVector> = (0..n)
        .map(|i| {
            let mut v: Vec<i64> = a.column(i).iter().map(|&x| -x).collect();
            v.extend((0..n).map(|j| i64::from(i == j)));
            v
        })
        .collect();
    let mut weight = vec![BigInt::zero(); d];
    weight.extend(a.positive_weight(&inst.omega)?);
    let ord = TermOrder::from_integer_weight(weight, inst.tiebreak, (0..d + n).collect())?.with_elimination_block(d);
    let gb = buchberger(&gens, &ord)?;
    let mut start = b.clone();
    start.extend(std::iter::repeat(0).take(n));
    let nf = normal_form(&start, &gb)?;
    if nf[..d].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    Ok(Some(nf[d..].to_vec()))
}

/// The directed graph on a fiber with an edge `v -> v - g` for every oriented
/// basis element `g` whose leading term divides `x^v`.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize)>,
}

impl SkeletonGraph {
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            out[u].push(v);
            indeg[v] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop() {
            seen += 1;
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        seen == n
    }

    pub fn sinks(&self) -> Vec<&[i64]> {
        let has_out: BTreeSet<usize> = self.edges.iter().map(|&(u, _)| u).collect();
        (0..self.vertices.len()).filter(|v| !has_out.contains(v)).map(|v| self.vertices[v].as_slice()).collect()
    }

    pub fn unique_sink(&self) -> Option<&[i64]> {
        let s = self.sinks();
        if s.len() == 1 {
            Some(s[0])
        } else {
            None
        }
    }
}

pub fn skeleton_graph(inst: &IPInstance, g: &GroebnerBasis) -> Result<SkeletonGraph> {
    check_dim(inst.a.n(), g.num_vars())?;
    let vertices = fiber(&inst.a, &inst.b)?;
    let index: HashMap<&[i64], usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for e in g.elements() {
            let w: Vec<i64> = v.iter().zip(e.vector()).map(|(x, y)| x - y).collect();
            if w.iter().all(|&x| x >= 0) {
                let j = *index.get(w.as_slice()).ok_or_else(|| Error::Internal("basis step left the fiber".into()))?;
                edges.push((i, j));
            }
        }
    }
    Ok(SkeletonGraph { vertices, edges })
}

/// Checks the two test-set conditions on the fibers of every `b` in `fibers`:
/// every non-optimal point can be improved by some `w` in `t`, and no `w`
/// applies to the optimum. Elements of `t` are oriented by `(omega, tiebreak)`.
pub fn is_test_set(
    t: &[LatticeVector],
    a: &ConfigMatrix,
    omega: &[BigRational],
    tiebreak: TieBreak,
    fibers: &[Vec<i64>],
) -> Result<bool> {
    let ord = order_for(a, omega, tiebreak)?;
    let oriented: Vec<Vec<i64>> = t
        .iter()
        .filter(|w| w.iter().any(|&x| x != 0))
        .map(|w| ord.orient(w).map(|b| b.vector().to_vec()))
        .collect::<Result<_>>()?;
    for b in fibers {
        let pts = fiber(a, b)?;
        let Some(opt) = pts.iter().min_by(|x, y| ord.compare(x, y).expect("same length")) else { continue };
        let applies = |v: &[i64], w: &[i64]| v.iter().zip(w).all(|(x, y)| x - y >= 0);
        for v in &pts {
            let improvable = oriented.iter().any(|w| applies(v, w));
            if v == opt {
                if improvable {
                    return Ok(false);
                }
            } else if !improvable {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
