//! Term orders on exponent vectors.
//!
//! A [`TermOrder`] compares monomials by, in turn:
//! 1. the total degree in the elimination block (the first `k` variables), if any;
//! 2. the weight `w . u`;
//! 3. a tie-break over a variable precedence list `perm` (`perm[0]` most expensive):
//!    * `Lex`: the first variable in `perm` where exponents differ decides, larger wins;
//!    * `DegRevLex`: larger total degree wins; otherwise the *last* variable in
//!      `perm` where exponents differ decides, smaller exponent wins;
//!    * `RevLex`: as `DegRevLex` without the degree step. This is only a term order
//!      when the weight is strictly positive; it is what saturation uses.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::buchberger::Binomial;
use crate::error::{check_dim, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TieBreak {
    Lex,
    DegRevLex,
    RevLex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    weight: Vec<BigInt>,
    small_weight: Option<Vec<i64>>,
    tiebreak: TieBreak,
    perm: Vec<usize>,
    elimination_block: usize,
}

/// A sort key for a monomial: comparing keys agrees with [`TermOrder::compare`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderKey {
    block: i64,
    weight: BigInt,
    tie: Vec<i64>,
}

impl TermOrder {
    /// Builds an order from a rational weight, clearing denominators.
    pub fn new(weight: &[BigRational], tiebreak: TieBreak, perm: Vec<usize>) -> Result<Self> {
        let lcm = weight.iter().fold(BigInt::one(), |l, w| l.lcm(w.denom()));
        let w: Vec<BigInt> = weight.iter().map(|x| (x * &lcm).to_integer()).collect();
        Self::from_integer_weight(w, tiebreak, perm)
    }

    pub fn from_integer_weight(weight: Vec<BigInt>, tiebreak: TieBreak, perm: Vec<usize>) -> Result<Self> {
        let n = weight.len();
        check_dim(n, perm.len())?;
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let small_weight = weight.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>();
        Ok(TermOrder { weight, small_weight, tiebreak, perm, elimination_block: 0 })
    }

    pub fn from_weight_i64(weight: &[i64], tiebreak: TieBreak) -> Self {
        let n = weight.len();
        Self::from_integer_weight(weight.iter().map(|&x| BigInt::from(x)).collect(), tiebreak, (0..n).collect())
            .expect("identity permutation")
    }

    /// Pure lexicographic order with `x_1 > x_2 > ... > x_n`.
    pub fn lex(n: usize) -> Self {
        Self::from_weight_i64(&vec![0; n], TieBreak::Lex)
    }

    /// Degree reverse lexicographic order with `x_1 > ... > x_n`.
    pub fn degrevlex(n: usize) -> Self {
        Self::from_weight_i64(&vec![1; n], TieBreak::DegRevLex)
    }

    /// Weighted reverse lexicographic order in which `last` is the cheapest variable.
    pub fn revlex_last(weight: &[i64], last: usize) -> Self {
        let n = weight.len();
        let mut perm: Vec<usize> = (0..n).filter(|&i| i != last).collect();
        perm.push(last);
        Self::from_integer_weight(weight.iter().map(|&x| BigInt::from(x)).collect(), TieBreak::RevLex, perm)
            .expect("valid permutation")
    }

    /// Makes the first `k` variables infinitely more expensive than the rest.
    pub fn with_elimination_block(mut self, k: usize) -> Self {
        self.elimination_block = k;
        self
    }

    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }

    pub fn weight(&self) -> &[BigInt] {
        &self.weight
    }

    pub fn tiebreak(&self) -> TieBreak {
        self.tiebreak
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn elimination_block(&self) -> usize {
        self.elimination_block
    }

    pub fn has_nonnegative_weight(&self) -> bool {
        !self.weight.iter().any(|w| w.is_negative())
    }

    /// Sign of `w . (u - v)`.
    fn cmp_weight(&self, u: &[i64], v: &[i64]) -> Ordering {
        if let Some(sw) = &self.small_weight {
            let mut acc: Option<i128> = Some(0);
            for ((&w, &a), &b) in sw.iter().zip(u).zip(v) {
                if a == b || w == 0 {
                    continue;
                }
                let term = (w as i128).checked_mul(a as i128 - b as i128);
                acc = match (acc, term) {
                    (Some(s), Some(t)) => s.checked_add(t),
                    _ => None,
                };
                if acc.is_none() {
                    break;
                }
            }
            if let Some(s) = acc {
                return s.cmp(&0);
            }
        }
        let mut s = BigInt::zero();
        for ((w, &a), &b) in self.weight.iter().zip(u).zip(v) {
            if a != b {
                s += w * (BigInt::from(a) - b);
            }
        }
        s.sign_cmp_zero()
    }

    fn cmp_tiebreak(&self, u: &[i64], v: &[i64]) -> Ordering {
        match self.tiebreak {
            TieBreak::Lex => {
                for &i in &self.perm {
                    match u[i].cmp(&v[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            TieBreak::DegRevLex | TieBreak::RevLex => {
                if self.tiebreak == TieBreak::DegRevLex {
                    let du: i128 = u.iter().map(|&x| x as i128).sum();
                    let dv: i128 = v.iter().map(|&x| x as i128).sum();
                    if du != dv {
                        return du.cmp(&dv);
                    }
                }
                for &i in self.perm.iter().rev() {
                    match u[i].cmp(&v[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Comparison without dimension checks; both slices must have length `self.len()`.
    pub(crate) fn cmp_unchecked(&self, u: &[i64], v: &[i64]) -> Ordering {
        if self.elimination_block > 0 {
            let k = self.elimination_block;
            let bu: i128 = u[..k].iter().map(|&x| x as i128).sum();
            let bv: i128 = v[..k].iter().map(|&x| x as i128).sum();
            if bu != bv {
                return bu.cmp(&bv);
            }
        }
        match self.cmp_weight(u, v) {
            Ordering::Equal => self.cmp_tiebreak(u, v),
            o => o,
        }
    }

    /// Compares the monomials `x^u` and `x^v`.
    pub fn compare(&self, u: &[i64], v: &[i64]) -> Result<Ordering> {
        check_dim(self.len(), u.len())?;
        check_dim(self.len(), v.len())?;
        Ok(self.cmp_unchecked(u, v))
    }

    /// Whether `x^(v+)` is the leading term of `x^(v+) - x^(v-)`.
    pub(crate) fn positive_part_leads(&self, v: &[i64]) -> bool {
        // compare v+ against v-, which is the same as comparing v against 0 for the
        // linear parts; the tie-break needs the actual parts
        let plus: Vec<i64> = v.iter().map(|&x| x.max(0)).collect();
        let minus: Vec<i64> = v.iter().map(|&x| (-x).max(0)).collect();
        self.cmp_unchecked(&plus, &minus) == Ordering::Greater
    }

    /// Orients a nonzero lattice vector so that its positive part is the leading term.
    pub fn orient(&self, v: &[i64]) -> Result<Binomial> {
        check_dim(self.len(), v.len())?;
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        if self.positive_part_leads(v) {
            Ok(Binomial::from_oriented(v.to_vec()))
        } else {
            Ok(Binomial::from_oriented(v.iter().map(|&x| -x).collect()))
        }
    }

    pub fn key(&self, u: &[i64]) -> OrderKey {
        let block = u[..self.elimination_block].iter().sum();
        let weight = self.weight.iter().zip(u).filter(|(_, &x)| x != 0).map(|(w, &x)| w * x).sum();
        let tie = match self.tiebreak {
            TieBreak::Lex => self.perm.iter().map(|&i| u[i]).collect(),
            TieBreak::DegRevLex => std::iter::once(u.iter().sum())
                .chain(self.perm.iter().rev().map(|&i| -u[i]))
                .collect(),
            TieBreak::RevLex => self.perm.iter().rev().map(|&i| -u[i]).collect(),
        };
        OrderKey { block, weight, tie }
    }
}

trait SignCmp {
    fn sign_cmp_zero(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp_zero(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compare_examples() {
        let o = TermOrder::degrevlex(3);
        assert_eq!(o.compare(&[1, 0, 1], &[1, 0, 1]).unwrap(), Ordering::Equal);
        let w = TermOrder::from_weight_i64(&[1, 0], TieBreak::Lex);
        assert_eq!(w.compare(&[1, 0], &[0, 5]).unwrap(), Ordering::Greater);
        assert!(matches!(o.compare(&[1, 0], &[0, 1, 0]), Err(Error::DimensionMismatch { .. })));
    }

    // Degree-2 monomials in 3 variables ranked by degrevlex with x1 > x2 > x3:
    // x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2.
    #[test]
    fn degrevlex_degree_two_table() {
        let table: Vec<[i64; 3]> =
            vec![[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        let o = TermOrder::degrevlex(3);
        let mut all: Vec<[i64; 3]> = Vec::new();
        for a in 0..=2 {
            for b in 0..=2 - a {
                all.push([a, b, 2 - a - b]);
            }
        }
        all.sort_by(|u, v| o.compare(v, u).unwrap());
        assert_eq!(all, table);
        // (1,0,1) vs (0,2,0): x3 exponent 1 > 0, so x1x3 is smaller
        assert_eq!(o.compare(&[1, 0, 1], &[0, 2, 0]).unwrap(), Ordering::Less);
    }

    #[test]
    fn orient_examples() {
        let o = TermOrder::from_weight_i64(&[1, 0], TieBreak::Lex);
        let b = o.orient(&[1, -1]).unwrap();
        assert_eq!(b.lead(), vec![1, 0]);
        assert_eq!(b.trail(), vec![0, 1]);
        let lex = TermOrder::lex(2);
        assert_eq!(lex.orient(&[-1, 1]).unwrap().lead(), vec![1, 0]);
        let d = TermOrder::degrevlex(3);
        let b = d.orient(&[-2, 1, 1]).unwrap();
        assert_eq!(d.compare(&b.lead(), &b.trail()).unwrap(), Ordering::Greater);
        assert_eq!(lex.orient(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn rational_weights_are_cleared() {
        let w = vec![BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())];
        let o = TermOrder::new(&w, TieBreak::Lex, vec![0, 1]).unwrap();
        assert_eq!(o.weight(), &[BigInt::from(3), BigInt::from(2)]);
    }

    #[test]
    fn elimination_block() {
        let o = TermOrder::from_weight_i64(&[0, 5, 5], TieBreak::Lex).with_elimination_block(1);
        assert_eq!(o.compare(&[1, 0, 0], &[0, 9, 9]).unwrap(), Ordering::Greater);
    }

    fn arb_order(n: usize) -> impl Strategy<Value = TermOrder> {
        (
            proptest::collection::vec(0i64..5, n),
            prop_oneof![Just(TieBreak::Lex), Just(TieBreak::DegRevLex)],
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            0usize..=n,
        )
            .prop_map(|(w, t, p, k)| {
                TermOrder::from_integer_weight(w.into_iter().map(BigInt::from).collect(), t, p)
                    .unwrap()
                    .with_elimination_block(k)
            })
    }

    fn arb_case() -> impl Strategy<Value = (TermOrder, Vec<i64>, Vec<i64>, Vec<i64>)> {
        (1usize..=8).prop_flat_map(|n| {
            (
                arb_order(n),
                proptest::collection::vec(0i64..=20, n),
                proptest::collection::vec(0i64..=20, n),
                proptest::collection::vec(0i64..=20, n),
            )
        })
    }

    proptest! {
        #[test]
        fn total_order_axioms((o, u, v, w) in arb_case()) {
            let uv = o.compare(&u, &v).unwrap();
            prop_assert_eq!(uv, o.compare(&v, &u).unwrap().reverse());
            prop_assert_eq!(uv == Ordering::Equal, u == v);
            let vw = o.compare(&v, &w).unwrap();
            if uv != Ordering::Greater && vw != Ordering::Greater {
                prop_assert_ne!(o.compare(&u, &w).unwrap(), Ordering::Greater);
            }
            let uw: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
            let vw2: Vec<i64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            prop_assert_eq!(o.compare(&uw, &vw2).unwrap(), uv);
            prop_assert_eq!(o.key(&u).cmp(&o.key(&v)), uv);
            let zero = vec![0; u.len()];
            if u != zero {
                prop_assert_eq!(o.compare(&u, &zero).unwrap(), Ordering::Greater);
            }
        }
    }
}
