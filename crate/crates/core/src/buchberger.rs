//! Buchberger's algorithm on lattice vectors.
//!
//! A binomial `x^(v+) - x^(v-)` is stored as the vector `v`, oriented so that
//! `v+` is the leading exponent. Reducing a binomial means reducing its two
//! monomials independently; any common factor of the two results is dropped,
//! since only the difference is stored. For lattice ideals (in particular toric
//! ideals) this is harmless, and every ideal passed through this module is
//! treated as such: the output is the reduced Groebner basis of the lattice
//! ideal generated by the input whenever the input already generates a
//! saturated lattice ideal.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use crate::error::{check_dim, Error, Result};
use crate::orders::{OrderKey, TermOrder};
use crate::LatticeVector;

/// An oriented binomial: `vector()`'s positive part is the leading exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    vec: Vec<i64>,
    lead_mask: u128,
}

fn support_mask(u: impl Iterator<Item = (usize, bool)>) -> u128 {
    u.filter(|&(_, nz)| nz).fold(0u128, |m, (i, _)| m | (1u128 << (i % 128)))
}

impl Binomial {
    pub(crate) fn from_oriented(vec: Vec<i64>) -> Self {
        let lead_mask = support_mask(vec.iter().map(|&x| x > 0).enumerate());
        Binomial { vec, lead_mask }
    }

    pub fn vector(&self) -> &[i64] {
        &self.vec
    }

    pub fn lead(&self) -> Vec<i64> {
        self.vec.iter().map(|&x| x.max(0)).collect()
    }

    pub fn trail(&self) -> Vec<i64> {
        self.vec.iter().map(|&x| (-x).max(0)).collect()
    }

    /// Polynomial degree: the larger of the degrees of the two terms.
    pub fn degree(&self) -> i64 {
        vector_degree(&self.vec)
    }

    #[inline]
    fn lead_divides(&self, u: &[i64], u_mask: u128) -> bool {
        self.lead_mask & !u_mask == 0 && self.vec.iter().zip(u).all(|(&g, &x)| g <= 0 || g <= x)
    }

    /// Largest `k` such that `u - k * v` stays nonnegative (at least 1 when the
    /// leading term divides `u`).
    #[inline]
    fn max_steps(&self, u: &[i64]) -> i64 {
        self.vec
            .iter()
            .zip(u)
            .filter(|(&g, _)| g > 0)
            .map(|(&g, &x)| x / g)
            .min()
            .unwrap_or(0)
    }
}

/// Larger of `|v+|` and `|v-|`.
pub fn vector_degree(v: &[i64]) -> i64 {
    let p: i64 = v.iter().filter(|&&x| x > 0).sum();
    let m: i64 = -v.iter().filter(|&&x| x < 0).sum::<i64>();
    p.max(m)
}

fn mask_of(u: &[i64]) -> u128 {
    support_mask(u.iter().map(|&x| x > 0).enumerate())
}

/// Reduces the monomial `u` in place against the leading terms of `elems`
/// (restricted to those flagged in `active`, if given), applying each reducer as
/// many times as possible in one step.
fn reduce_in_place(u: &mut [i64], elems: &[Binomial], active: Option<&[bool]>) -> Result<()> {
    'outer: loop {
        let m = mask_of(u);
        for (i, g) in elems.iter().enumerate() {
            if active.is_some_and(|a| !a[i]) {
                continue;
            }
            if g.lead_divides(u, m) {
                let k = g.max_steps(u);
                for (x, &gv) in u.iter_mut().zip(&g.vec) {
                    *x = gv.checked_mul(k).and_then(|s| x.checked_sub(s)).ok_or(Error::Overflow)?;
                }
                continue 'outer;
            }
        }
        return Ok(());
    }
}

fn normal_form_slice(u: &[i64], elems: &[Binomial]) -> Result<Vec<i64>> {
    let mut w = u.to_vec();
    reduce_in_place(&mut w, elems, None)?;
    Ok(w)
}

/// A Groebner basis of a lattice ideal, stored as oriented binomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: TermOrder,
    elements: Vec<Binomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.order.len()
    }

    /// Oriented vectors, leading part positive, in canonical order.
    pub fn vectors(&self) -> Vec<LatticeVector> {
        self.elements.iter().map(|b| b.vec.clone()).collect()
    }

    /// Minimal generators of the initial ideal.
    pub fn initial_ideal(&self) -> Vec<Vec<i64>> {
        let mut leads: Vec<Vec<i64>> = self.elements.iter().map(Binomial::lead).collect();
        leads.sort();
        leads
    }

    pub fn max_degree(&self) -> i64 {
        self.elements.iter().map(Binomial::degree).max().unwrap_or(0)
    }

    pub fn normal_form(&self, u: &[i64]) -> Result<Vec<i64>> {
        normal_form(u, self)
    }

    /// Whether `w` is strictly positive on every `lead - trail`, i.e. lies in the
    /// interior of this basis's Groebner cone.
    pub fn weight_is_interior(&self, w: &[num_bigint::BigInt]) -> bool {
        self.elements.iter().all(|b| {
            let s: num_bigint::BigInt = b.vec.iter().zip(w).map(|(&x, wi)| wi * x).sum();
            s > num_bigint::BigInt::from(0)
        })
    }

    /// Wraps already-reduced elements. Used by callers that transport a basis
    /// unchanged (e.g. restricting an elimination basis).
    pub(crate) fn from_parts(order: TermOrder, mut elements: Vec<Binomial>, reduced: bool) -> Self {
        elements.sort_by(|a, b| a.vec.cmp(&b.vec));
        GroebnerBasis { order, elements, reduced }
    }
}

/// Normal form of the monomial `x^u` with respect to `g`.
pub fn normal_form(u: &[i64], g: &GroebnerBasis) -> Result<Vec<i64>> {
    check_dim(g.num_vars(), u.len())?;
    if u.iter().any(|&x| x < 0) {
        return Err(Error::InvalidInput("exponent vector has a negative entry".into()));
    }
    normal_form_slice(u, &g.elements)
}

/// The S-vector of two oriented binomials: the lattice vector of their classical
/// S-polynomial `(m / in f) f - (m / in g) g`, which is `f - g`.
pub fn s_vector(f: &Binomial, g: &Binomial) -> LatticeVector {
    f.vec.iter().zip(&g.vec).map(|(a, b)| a - b).collect()
}

#[derive(Debug, Clone, Default)]
pub struct BuchbergerOptions {
    /// Skip a pair (i, j) when some k has `in(k) | lcm(in i, in j)` and both
    /// (i, k) and (j, k) were already treated.
    pub chain_criterion: bool,
    /// Abort once the working basis holds more than this many elements.
    pub max_elements: Option<usize>,
    /// Abort if an element of larger degree appears.
    pub max_degree: Option<i64>,
}

struct Engine<'o> {
    order: &'o TermOrder,
    opts: &'o BuchbergerOptions,
    elems: Vec<Binomial>,
    active: Vec<bool>,
    n_active: usize,
    pairs: BinaryHeap<Reverse<(OrderKey, usize, usize)>>,
    pending_pairs: HashSet<(usize, usize)>,
    todo: Vec<LatticeVector>,
}

impl<'o> Engine<'o> {
    fn nf(&self, u: &[i64]) -> Result<Vec<i64>> {
        let mut w = u.to_vec();
        reduce_in_place(&mut w, &self.elems, Some(&self.active))?;
        Ok(w)
    }

    fn add(&mut self, v: &[i64]) -> Result<()> {
        let plus: Vec<i64> = v.iter().map(|&x| x.max(0)).collect();
        let minus: Vec<i64> = v.iter().map(|&x| (-x).max(0)).collect();
        let a = self.nf(&plus)?;
        let b = self.nf(&minus)?;
        let w: Vec<i64> = match self.order.cmp_unchecked(&a, &b) {
            Ordering::Equal => return Ok(()),
            Ordering::Greater => a.iter().zip(&b).map(|(x, y)| x - y).collect(),
            Ordering::Less => b.iter().zip(&a).map(|(x, y)| x - y).collect(),
        };
        let new = Binomial::from_oriented(w);
        if let Some(md) = self.opts.max_degree {
            if new.degree() > md {
                return Err(Error::LimitExceeded(format!("Groebner element of degree {} > {md}", new.degree())));
            }
        }
        let new_lead = new.lead();
        let idx = self.elems.len();
        // elements whose leading term becomes reducible are retired and re-queued
        for k in 0..idx {
            if !self.active[k] {
                continue;
            }
            let lk = self.elems[k].lead();
            if new.lead_divides(&lk, self.elems[k].lead_mask) {
                self.active[k] = false;
                self.n_active -= 1;
                self.todo.push(self.elems[k].vec.clone());
            }
        }
        for k in 0..idx {
            if !self.active[k] {
                continue;
            }
            if self.elems[k].lead_mask & new.lead_mask == 0 {
                let lk = &self.elems[k].vec;
                if lk.iter().zip(&new.vec).all(|(&x, &y)| x <= 0 || y <= 0) {
                    continue;
                }
            }
            let lcm: Vec<i64> = self.elems[k].vec.iter().zip(&new_lead).map(|(&x, &y)| x.max(0).max(y)).collect();
            self.pairs.push(Reverse((self.order.key(&lcm), k, idx)));
            if self.opts.chain_criterion {
                self.pending_pairs.insert((k, idx));
            }
        }
        self.elems.push(new);
        self.active.push(true);
        self.n_active += 1;
        if let Some(max) = self.opts.max_elements {
            if self.n_active > max {
                return Err(Error::LimitExceeded(format!("Groebner basis exceeds {max} elements")));
            }
        }
        Ok(())
    }

    fn chain_skips(&self, i: usize, j: usize) -> bool {
        let lcm: Vec<i64> = self.elems[i].vec.iter().zip(&self.elems[j].vec).map(|(&x, &y)| x.max(0).max(y.max(0))).collect();
        let m = mask_of(&lcm);
        (0..self.elems.len()).any(|k| {
            k != i
                && k != j
                && self.active[k]
                && self.elems[k].lead_divides(&lcm, m)
                && !self.pending_pairs.contains(&(i.min(k), i.max(k)))
                && !self.pending_pairs.contains(&(j.min(k), j.max(k)))
        })
    }

    fn run(&mut self) -> Result<()> {
        loop {
            if let Some(v) = self.todo.pop() {
                self.add(&v)?;
                continue;
            }
            let Some(Reverse((_, i, j))) = self.pairs.pop() else { break };
            if self.opts.chain_criterion {
                self.pending_pairs.remove(&(i, j));
            }
            if !self.active[i] || !self.active[j] {
                continue;
            }
            if self.opts.chain_criterion && self.chain_skips(i, j) {
                continue;
            }
            let s = s_vector(&self.elems[i], &self.elems[j]);
            self.add(&s)?;
        }
        Ok(())
    }
}

/// Reduced Groebner basis of the lattice ideal generated by `gens`.
pub fn buchberger(gens: &[LatticeVector], ord: &TermOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, ord, &BuchbergerOptions::default())
}

pub fn buchberger_with(gens: &[LatticeVector], ord: &TermOrder, opts: &BuchbergerOptions) -> Result<GroebnerBasis> {
    for g in gens {
        check_dim(ord.len(), g.len())?;
    }
    let mut engine = Engine {
        order: ord,
        opts,
        elems: Vec::new(),
        active: Vec::new(),
        n_active: 0,
        pairs: BinaryHeap::new(),
        pending_pairs: HashSet::new(),
        todo: gens.iter().rev().cloned().collect(),
    };
    engine.run()?;
    let active: Vec<Binomial> = engine
        .elems
        .into_iter()
        .zip(engine.active)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();
    let elements = autoreduce(&active, ord)?;
    Ok(GroebnerBasis::from_parts(ord.clone(), elements, true))
}

/// Inter-reduces a set of binomials until no term of any element is divisible by
/// the leading term of another. Elements reducing to zero are dropped.
pub fn autoreduce(elems: &[Binomial], ord: &TermOrder) -> Result<Vec<Binomial>> {
    let mut cur: Vec<Binomial> = Vec::with_capacity(elems.len());
    for e in elems {
        check_dim(ord.len(), e.vec.len())?;
        // re-orient in case the caller's orientation came from another order
        if e.vec.iter().any(|&x| x != 0) {
            cur.push(ord.orient(&e.vec)?);
        }
    }
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cur.len() {
            let h = cur.swap_remove(i);
            let a = normal_form_slice(&h.lead(), &cur)?;
            let b = normal_form_slice(&h.trail(), &cur)?;
            let w: Vec<i64> = match ord.cmp_unchecked(&a, &b) {
                Ordering::Equal => {
                    changed = true;
                    continue;
                }
                Ordering::Greater => a.iter().zip(&b).map(|(x, y)| x - y).collect(),
                Ordering::Less => b.iter().zip(&a).map(|(x, y)| x - y).collect(),
            };
            if w != h.vec {
                changed = true;
            }
            // swap_remove moved the last element into slot i; put h back at the end
            // and restore the original order
            cur.push(Binomial::from_oriented(w));
            let last = cur.len() - 1;
            cur.swap(i, last);
            i += 1;
        }
        if !changed {
            break;
        }
    }
    cur.sort_by(|a, b| a.vec.cmp(&b.vec));
    cur.dedup();
    Ok(cur)
}
