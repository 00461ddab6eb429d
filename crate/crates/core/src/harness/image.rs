use std::hash::Hash;
use std::ops::{AddAssign, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use crate::poly::{Monomial, MultiPoly, Rational};

use super::sets::FiniteSet;
use super::HarnessError;

/// Scalar type used during enumeration.
trait Scalar: Clone + Eq + Hash + Zero + One + for<'a> AddAssign<&'a Self> {
    fn times(&self, other: &Self) -> Self;
}

impl Scalar for i128 {
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for BigInt {
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

impl Scalar for Rational {
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Distinct values seen so far; two accumulators over the same polynomial
/// and value mode can be merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinct {
    Small(FxHashSet<i128>),
    Big(FxHashSet<BigInt>),
    Exact(FxHashSet<Rational>),
}

impl Distinct {
    pub fn len(&self) -> usize {
        match self {
            Distinct::Small(s) => s.len(),
            Distinct::Big(s) => s.len(),
            Distinct::Exact(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Panics if the accumulators use different value modes.
    pub fn merge(&mut self, other: Distinct) {
        match (self, other) {
            (Distinct::Small(a), Distinct::Small(b)) => a.extend(b),
            (Distinct::Big(a), Distinct::Big(b)) => a.extend(b),
            (Distinct::Exact(a), Distinct::Exact(b)) => a.extend(b),
            _ => panic!("merging accumulators of different value modes"),
        }
    }
}

/// A polynomial prepared for enumeration: coordinates reordered by
/// decreasing degree, coefficients in the chosen scalar type.
struct Plan<T> {
    order: Vec<usize>,
    terms: Vec<(Monomial, T)>,
    values: Vec<Vec<T>>,
}

impl<T: Scalar> Plan<T> {
    fn block(&self, first: &T) -> FxHashSet<T> {
        let mut seen = FxHashSet::default();
        let partial = substitute(&self.terms, self.order[0], first);
        self.descend(partial, 1, &mut seen);
        seen
    }

    fn descend(&self, terms: Vec<(Monomial, T)>, level: usize, seen: &mut FxHashSet<T>) {
        let slot = self.order[level];
        if level + 1 == self.order.len() {
            let mut coeffs: Vec<T> = Vec::new();
            for (m, c) in terms {
                let e = m.exponent(slot) as usize;
                if coeffs.len() <= e {
                    coeffs.resize(e + 1, T::zero());
                }
                coeffs[e] += &c;
            }
            for a in &self.values[level] {
                let v = coeffs.iter().rev().fold(T::zero(), |acc, c| {
                    let mut next = acc.times(a);
                    next += c;
                    next
                });
                seen.insert(v);
            }
            return;
        }
        for a in &self.values[level] {
            self.descend(substitute(&terms, slot, a), level + 1, seen);
        }
    }
}

fn substitute<T: Scalar>(terms: &[(Monomial, T)], slot: usize, value: &T) -> Vec<(Monomial, T)> {
    let top = terms.iter().map(|(m, _)| m.exponent(slot)).max().unwrap_or(0) as usize;
    let mut powers = Vec::with_capacity(top + 1);
    powers.push(T::one());
    for k in 1..=top {
        powers.push(powers[k - 1].times(value));
    }
    let mut acc: FxHashMap<Monomial, T> = FxHashMap::default();
    for (m, c) in terms {
        let e = m.exponent(slot) as usize;
        let c = if e == 0 { c.clone() } else { c.times(&powers[e]) };
        *acc.entry(m.without(slot)).or_insert_with(T::zero) += &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Exact `|f(A_1 × ... × A_d)|`.
pub fn image_size(f: &MultiPoly, sets: &[FiniteSet]) -> Result<usize, HarnessError> {
    Ok(image_values(f, sets)?.len())
}

/// The distinct-value accumulator behind [`image_size`], built block by
/// block over the elements of the outermost coordinate.
pub fn image_values(f: &MultiPoly, sets: &[FiniteSet]) -> Result<Distinct, HarnessError> {
    let d = f.nvars();
    if sets.len() != d {
        return Err(HarnessError::DimensionMismatch {
            expected: d,
            found: sets.len(),
        });
    }
    if sets.iter().any(|s| s.is_empty()) {
        return Err(HarnessError::EmptySet);
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(f.degree_in(i)));

    let integral = sets.iter().all(|s| s.elements.iter().all(|a| a.is_integer()));
    if !integral {
        let terms = f.terms().to_vec();
        let values = order.iter().map(|&i| sets[i].elements.clone()).collect();
        return Ok(Distinct::Exact(run(Plan { order, terms, values })));
    }
    // Values of L*f are in bijection with values of f.
    let den = f.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let int_terms: Vec<(Monomial, BigInt)> = f
        .terms()
        .iter()
        .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
        .collect();
    let int_values: Vec<Vec<BigInt>> = order
        .iter()
        .map(|&i| sets[i].elements.iter().map(|a| a.to_integer()).collect())
        .collect();
    // Every partial sum is bounded by sum |c| * prod max|a_i|^{e_i}.
    let max_abs: Vec<BigInt> = (0..d)
        .map(|i| sets[i].elements.iter().map(|a| a.to_integer().abs()).max().expect("nonempty"))
        .collect();
    let bound: BigInt = int_terms
        .iter()
        .map(|(m, c)| {
            (0..d).fold(c.abs(), |acc, i| acc * num_traits::pow(max_abs[i].clone(), m.exponent(i) as usize))
        })
        .sum();
    if bound.bits() <= 126 {
        let terms = int_terms.iter().map(|(m, c)| (*m, c.to_i128().expect("bounded"))).collect();
        let values = int_values
            .iter()
            .map(|v| v.iter().map(|a| a.to_i128().expect("bounded")).collect())
            .collect();
        Ok(Distinct::Small(run(Plan { order, terms, values })))
    } else {
        Ok(Distinct::Big(run(Plan {
            order,
            terms: int_terms,
            values: int_values,
        })))
    }
}

fn run<T: Scalar>(plan: Plan<T>) -> FxHashSet<T> {
    if plan.order.len() == 1 {
        let mut seen = FxHashSet::default();
        plan.descend(plan.terms.clone(), 0, &mut seen);
        return seen;
    }
    let mut total: FxHashSet<T> = FxHashSet::default();
    for a in &plan.values[0] {
        let block = plan.block(a);
        if total.len() < block.len() {
            let smaller = std::mem::replace(&mut total, block);
            total.extend(smaller);
        } else {
            total.extend(block);
        }
    }
    total
}
