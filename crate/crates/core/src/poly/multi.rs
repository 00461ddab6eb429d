use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_VARS};
use super::uni::UniPoly;
use super::{write_term, PolyError, Rational};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by ascending graded-lex monomial with no zero
/// coefficients, so two polynomials over the same slots are equal exactly when
/// their term lists are equal.
#[derive(Clone)]
pub struct MultiPoly {
    names: Vec<String>,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Replacement for one variable in [`MultiPoly::substitute`].
#[derive(Debug, Clone)]
pub enum Binding {
    Value(Rational),
    /// A polynomial over the same variable slots as the target.
    Poly(MultiPoly),
}

impl MultiPoly {
    /// Zero polynomial over the given variable slots.
    ///
    /// Panics if more than [`MAX_VARS`] names are given; inputs from text go
    /// through [`super::parse`], which reports that as an error instead.
    pub fn zero(names: &[String]) -> Self {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        assert!(!names.is_empty(), "at least one variable slot");
        MultiPoly {
            names: names.to_vec(),
            terms: Vec::new(),
        }
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }

    pub fn constant(names: &[String], c: Rational) -> Self {
        let mut p = Self::zero(names);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn var(names: &[String], i: usize) -> Self {
        let mut p = Self::zero(names);
        p.terms.push((Monomial::var(i), Rational::one()));
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(names: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(names, acc)
    }

    fn from_map(names: &[String], acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        MultiPoly {
            names: names.to_vec(),
            terms,
        }
    }

    /// Lifts a univariate polynomial into slot `var`.
    pub fn from_uni(names: &[String], var: usize, p: &UniPoly) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial::ONE.with_exponent(var, e as u32), c.clone()))
            .collect();
        MultiPoly {
            names: names.to_vec(),
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Same polynomial, different display names for the slots.
    pub fn with_names(mut self, names: &[String]) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names.to_vec();
        self
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(i)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map_or(0, |(m, _)| m.total_degree())
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(i) > 0)
    }

    fn check_same_space(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars() != other.nvars() {
            return Err(PolyError::VariableCountMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<(), PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Less => {
                        terms.push((*ma, ca.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        terms.push((*mb, if negate_other { -cb } else { cb.clone() }));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let c = if negate_other { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            terms.push((*ma, c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    terms.push((*ma, ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    terms.push((*mb, if negate_other { -cb } else { cb.clone() }));
                    b.next();
                }
                (None, None) => break,
            }
        }
        MultiPoly {
            names: self.names.clone(),
            terms,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_space(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_space(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_space(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.names);
        }
        MultiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Multiplies every term by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        MultiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.names);
        }
        let (a_int, a_den) = integer_form(&self.terms);
        let (b_int, b_den) = integer_form(&other.terms);
        let den = Rational::from_integer(a_den * b_den);

        let a_max = a_int.iter().map(|(_, c)| c.abs()).max().unwrap_or_default();
        let b_l1: BigInt = b_int.iter().map(|(_, c)| c.abs()).sum();
        let names = &self.names;
        // Every partial sum is bounded by max|a| * sum|b|, so i128 accumulation is exact.
        if a_max.bits() + b_l1.bits() <= 125 {
            let a: Vec<(Monomial, i128)> =
                a_int.iter().map(|(m, c)| (*m, c.to_i128().unwrap())).collect();
            let b: Vec<(Monomial, i128)> =
                b_int.iter().map(|(m, c)| (*m, c.to_i128().unwrap())).collect();
            let (big, small) = if a.len() >= b.len() { (&a, &b) } else { (&b, &a) };
            if small.len() <= SMALL_FACTOR {
                return collect_sorted(names, merge_shifted(big, small), &den);
            }
            let mut acc: FxHashMap<Monomial, i128> = FxHashMap::default();
            acc.reserve(a.len().max(b.len()));
            for (ma, ca) in &a {
                for (mb, cb) in &b {
                    *acc.entry(ma.mul(mb)).or_insert(0) += ca * cb;
                }
            }
            collect_scaled(names, acc.into_iter().map(|(m, c)| (m, BigInt::from(c))), &den)
        } else {
            let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
            for (ma, ca) in &a_int {
                for (mb, cb) in &b_int {
                    *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            collect_scaled(names, acc, &den)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::constant(&self.names, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to slot `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        self.check_index(i)?;
        let mut terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let c = if c.is_integer() {
                    Rational::from_integer(c.numer() * e)
                } else {
                    c * Rational::from_integer(BigInt::from(e))
                };
                (m.with_exponent(i, e - 1), c)
            })
            .collect();
        terms.sort_unstable_by_key(|a| a.0);
        Ok(MultiPoly {
            names: self.names.clone(),
            terms,
        })
    }

    /// Simultaneous substitution; the slot count is unchanged and bound slots
    /// no longer occur (unless a replacement polynomial mentions them).
    pub fn substitute(&self, bindings: &[(usize, Binding)]) -> Result<Self, PolyError> {
        let mut values: Vec<(usize, &Rational)> = Vec::new();
        let mut polys: Vec<(usize, &MultiPoly)> = Vec::new();
        for (i, b) in bindings {
            self.check_index(*i)?;
            match b {
                Binding::Value(v) => values.push((*i, v)),
                Binding::Poly(p) => {
                    self.check_same_space(p)?;
                    polys.push((*i, p));
                }
            }
        }
        let mut pow_tables: Vec<(usize, Vec<Rational>)> = values
            .iter()
            .map(|&(i, v)| (i, power_table(v, self.degree_in(i))))
            .collect();
        pow_tables.sort_by_key(|(i, _)| *i);

        let poly_vars: Vec<usize> = polys.iter().map(|(i, _)| *i).collect();
        // Group the value-substituted remainder by the exponents of polynomial-bound slots.
        let mut groups: FxHashMap<Monomial, FxHashMap<Monomial, Rational>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for (i, table) in &pow_tables {
                let e = m.exponent(*i) as usize;
                if e > 0 {
                    coeff *= &table[e];
                    rest = rest.without(*i);
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let (key, rest) = rest.split(&poly_vars);
            *groups
                .entry(key)
                .or_default()
                .entry(rest)
                .or_insert_with(Rational::zero) += coeff;
        }

        let mut result = Self::zero(&self.names);
        let mut power_cache: FxHashMap<(usize, u32), MultiPoly> = FxHashMap::default();
        let mut keys: Vec<Monomial> = groups.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let body = Self::from_map(&self.names, groups.remove(&key).unwrap());
            let mut factor = Self::constant(&self.names, Rational::one());
            for &(i, p) in &polys {
                let e = key.exponent(i);
                if e > 0 {
                    let pe = power_cache.entry((i, e)).or_insert_with(|| p.pow(e));
                    factor = factor.mul_unchecked(pe);
                }
            }
            result = result.merge(&body.mul_unchecked(&factor), false);
        }
        Ok(result)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let tables: Vec<Vec<Rational>> = point
            .iter()
            .enumerate()
            .map(|(i, v)| power_table(v, self.degree_in(i)))
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, table) in tables.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t *= &table[e];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `point[v]` for every slot except `keep` and returns the
    /// resulting univariate polynomial in `x_keep`. `point[keep]` is ignored.
    pub fn restrict_to(&self, keep: usize, point: &[Rational]) -> Result<UniPoly, PolyError> {
        self.check_index(keep)?;
        let p = self.partial_evaluate(&[keep], point)?;
        Ok(p.to_uni(keep).expect("only the kept slot remains"))
    }

    /// Substitutes `point[v]` for every slot `v` not in `keep`; the slot count
    /// is unchanged. Coordinates of kept slots are ignored.
    pub fn partial_evaluate(&self, keep: &[usize], point: &[Rational]) -> Result<Self, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        for &k in keep {
            self.check_index(k)?;
        }
        let bound: Vec<usize> = (0..self.nvars()).filter(|v| !keep.contains(v)).collect();
        if point.iter().all(|v| v.is_integer()) {
            // Integer points: accumulate in integers against a common denominator.
            let (ints, den) = integer_form(&self.terms);
            let tables: Vec<(usize, Vec<BigInt>)> = bound
                .iter()
                .map(|&v| (v, int_power_table(point[v].numer(), self.degree_in(v))))
                .collect();
            let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
            for (m, c) in &ints {
                let mut t = c.clone();
                let mut rest = *m;
                for (v, table) in &tables {
                    let e = m.exponent(*v) as usize;
                    if e > 0 {
                        t *= &table[e];
                        rest = rest.without(*v);
                    }
                }
                *acc.entry(rest).or_insert_with(BigInt::zero) += t;
            }
            return Ok(collect_scaled(&self.names, acc, &Rational::from_integer(den)));
        }
        let tables: Vec<(usize, Vec<Rational>)> = bound
            .iter()
            .map(|&v| (v, power_table(&point[v], self.degree_in(v))))
            .collect();
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = *m;
            for (v, table) in &tables {
                let e = m.exponent(*v) as usize;
                if e > 0 {
                    t *= &table[e];
                    rest = rest.without(*v);
                }
            }
            *acc.entry(rest).or_insert_with(Rational::zero) += t;
        }
        Ok(Self::from_map(&self.names, acc))
    }

    /// Moves slot `v` to `mapping[v]` in a space with the given names.
    pub fn remap(&self, mapping: &[usize], names: &[String]) -> Self {
        assert_eq!(mapping.len(), self.nvars());
        assert!(mapping.iter().all(|&t| t < names.len()));
        Self::from_terms(names, self.terms.iter().map(|(m, c)| (m.remap(mapping), c.clone())))
    }

    /// Embeds into a larger space with extra trailing slots (index-stable).
    pub fn lift(&self, extra: &[String]) -> Self {
        let mut names = self.names.clone();
        names.extend(extra.iter().cloned());
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly {
            names,
            terms: self.terms.clone(),
        }
    }

    /// Collects coefficients of the monomials in the slots `vars`; each
    /// coefficient is a polynomial in the remaining slots.
    pub fn coefficients_in(&self, vars: &[usize]) -> Vec<(Monomial, MultiPoly)> {
        let mut groups: FxHashMap<Monomial, Vec<(Monomial, Rational)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(vars);
            groups.entry(inside).or_default().push((outside, c.clone()));
        }
        let mut out: Vec<(Monomial, MultiPoly)> = groups
            .into_iter()
            .map(|(k, ts)| (k, Self::from_terms(&self.names, ts)))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Univariate view when only slot `var` occurs.
    pub fn to_uni(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.without(var) != Monomial::ONE {
                return None;
            }
            coeffs[m.exponent(var) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }
}

/// Up to this many terms in one factor, products are formed by merging
/// shifted copies of the other (monomial multiplication preserves the order).
const SMALL_FACTOR: usize = 8;

fn merge_shifted(big: &[(Monomial, i128)], small: &[(Monomial, i128)]) -> Vec<(Monomial, i128)> {
    let mut acc: Vec<(Monomial, i128)> = Vec::new();
    for (ms, cs) in small {
        let shifted = big.iter().map(|(m, c)| (m.mul(ms), c * cs));
        let mut out = Vec::with_capacity(acc.len() + big.len());
        let mut left = acc.into_iter().peekable();
        let mut right = shifted.peekable();
        loop {
            let take_left = match (left.peek(), right.peek()) {
                (Some(l), Some(r)) => match l.0.cmp(&r.0) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => {
                        let (m, c) = left.next().expect("peeked");
                        let (_, d) = right.next().expect("peeked");
                        if c + d != 0 {
                            out.push((m, c + d));
                        }
                        continue;
                    }
                },
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            out.push(if take_left { left.next() } else { right.next() }.expect("peeked"));
        }
        acc = out;
    }
    acc
}

fn collect_sorted(names: &[String], terms: Vec<(Monomial, i128)>, den: &Rational) -> MultiPoly {
    let unit = den.is_one();
    let terms = terms
        .into_iter()
        .map(|(m, c)| {
            let c = Rational::from_integer(BigInt::from(c));
            (m, if unit { c } else { c / den })
        })
        .collect();
    MultiPoly {
        names: names.to_vec(),
        terms,
    }
}

fn collect_scaled<I>(names: &[String], acc: I, den: &Rational) -> MultiPoly
where
    I: IntoIterator<Item = (Monomial, BigInt)>,
{
    let unit = den.is_one();
    let mut terms: Vec<(Monomial, Rational)> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| {
            let c = Rational::from_integer(c);
            (m, if unit { c } else { c / den })
        })
        .collect();
    terms.sort_unstable_by_key(|a| a.0);
    MultiPoly {
        names: names.to_vec(),
        terms,
    }
}

/// Integer coefficients and the common denominator `L` with `c_i = int_i / L`.
fn integer_form(terms: &[(Monomial, Rational)]) -> (Vec<(Monomial, BigInt)>, BigInt) {
    if terms.iter().all(|(_, c)| c.is_integer()) {
        return (terms.iter().map(|(m, c)| (*m, c.numer().clone())).collect(), BigInt::one());
    }
    let den = terms
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints = terms
        .iter()
        .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
        .collect();
    (ints, den)
}

pub(crate) fn power_table(v: &Rational, top: u32) -> Vec<Rational> {
    let mut table = Vec::with_capacity(top as usize + 1);
    table.push(Rational::one());
    for k in 1..=top as usize {
        let next = &table[k - 1] * v;
        table.push(next);
    }
    table
}

fn int_power_table(v: &BigInt, top: u32) -> Vec<BigInt> {
    let mut table = Vec::with_capacity(top as usize + 1);
    table.push(BigInt::one());
    for k in 1..=top as usize {
        let next = &table[k - 1] * v;
        table.push(next);
    }
    table
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics when the operands live in different variable spaces.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                $body(self, rhs).expect("operands over different variable spaces")
            }
        }
    };
}

forward_binop!(Add, add, MultiPoly::checked_add);
forward_binop!(Sub, sub, MultiPoly::checked_sub);
forward_binop!(Mul, mul, MultiPoly::checked_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// `a + b`, `a - b` or `a * b` over a shared variable space.
pub fn arith(a: &MultiPoly, b: &MultiPoly, kind: ArithKind) -> Result<MultiPoly, PolyError> {
    match kind {
        ArithKind::Add => a.checked_add(b),
        ArithKind::Sub => a.checked_sub(b),
        ArithKind::Mul => a.checked_mul(b),
    }
}

/// Equality of `a.0 / a.1` and `b.0 / b.1` by cross-multiplication.
pub fn ratfn_equal(
    a: (&MultiPoly, &MultiPoly),
    b: (&MultiPoly, &MultiPoly),
) -> Result<bool, PolyError> {
    if a.1.is_zero() || b.1.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    Ok(a.0.checked_mul(b.1)? == b.0.checked_mul(a.1)?)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let body: Vec<String> = (0..self.nvars())
                .filter(|&i| m.exponent(i) > 0)
                .map(|i| match m.exponent(i) {
                    1 => self.names[i].clone(),
                    e => format!("{}^{e}", self.names[i]),
                })
                .collect();
            write_term(&mut out, idx == 0, c, &body.join("*"));
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.names.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, rat_int};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn p(text: &str, vars: &[&str]) -> MultiPoly {
        parse(text, &names(vars)).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let x = p("x", &["x"]);
        assert!((&x + &(-&x)).is_zero());
        assert!(arith(&x, &x, ArithKind::Sub).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let vars = ["x", "y"];
        let prod = &p("x + y", &vars) * &p("x - y", &vars);
        assert_eq!(prod, p("x^2 - y^2", &vars));
    }

    #[test]
    fn mismatched_spaces_rejected() {
        let err = arith(&p("x", &["x"]), &p("x", &["x", "y"]), ArithKind::Mul).unwrap_err();
        assert_eq!(err, PolyError::VariableCountMismatch { left: 1, right: 2 });
    }

    #[test]
    fn derivative_of_remark_example() {
        let f = p("x*y + z", &["x", "y", "z"]);
        assert_eq!(f.partial_derivative(2).unwrap(), p("1", &["x", "y", "z"]));
        assert_eq!(f.partial_derivative(0).unwrap(), p("y", &["x", "y", "z"]));
        assert!(p("7/3", &["x", "y"]).partial_derivative(1).unwrap().is_zero());
        assert!(matches!(
            f.partial_derivative(3),
            Err(PolyError::IndexOutOfRange { index: 3, nvars: 3 })
        ));
    }

    #[test]
    fn derivative_matches_difference_quotient_limit() {
        // Expand f(x+h), take (f(x+h) - f(x)) / h symbolically, then set h = 0.
        let vars = ["x", "y", "h"];
        let f = p("x^3*y^2", &vars);
        let shifted = f
            .substitute(&[(0, Binding::Poly(p("x + h", &vars)))])
            .unwrap();
        let diff = &shifted - &f;
        let quotient = MultiPoly::from_terms(
            diff.names(),
            diff.terms().iter().map(|(m, c)| {
                assert!(m.exponent(2) >= 1);
                (m.with_exponent(2, m.exponent(2) - 1), c.clone())
            }),
        );
        let limit = quotient.substitute(&[(2, Binding::Value(rat_int(0)))]).unwrap();
        assert_eq!(limit, f.partial_derivative(0).unwrap());
        assert_eq!(limit, p("3*x^2*y^2", &vars));
    }

    #[test]
    fn substitution_examples() {
        let vars = ["x", "y", "z"];
        let f = p("x*y + z", &vars);
        let g = f.substitute(&[(1, Binding::Value(rat_int(3)))]).unwrap();
        assert_eq!(g, p("3*x + z", &vars));
        let zero = f
            .substitute(&[
                (0, Binding::Value(rat_int(0))),
                (1, Binding::Value(rat_int(0))),
                (2, Binding::Value(rat_int(0))),
            ])
            .unwrap();
        assert!(zero.is_zero());

        let h = p("(x + y + z)^2 + 1", &vars);
        let sub = h.substitute(&[(2, Binding::Poly(p("x + 1", &vars)))]).unwrap();
        let expected = p("(2*x + y + 1)*(2*x + y + 1) + 1", &vars);
        assert_eq!(sub, expected);
    }

    #[test]
    fn evaluate_examples() {
        let vars = ["x", "y", "z"];
        let f = p("x*y + z", &vars);
        assert_eq!(f.evaluate(&[rat_int(2), rat_int(3), rat_int(5)]).unwrap(), rat_int(11));
        let g = p("3*x^2 - 4*y + 9/2", &vars);
        assert_eq!(g.evaluate(&vec![rat_int(0); 3]).unwrap(), g.constant_term());
        assert!(matches!(
            f.evaluate(&[rat_int(1)]),
            Err(PolyError::DimensionMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn restriction_matches_substitution() {
        let vars = ["x", "y", "z"];
        let f = p("x^2*y*z - 3*x*z^2 + 1/2*y - 7", &vars);
        for point in [
            vec![rat_int(0), rat_int(-3), rat_int(5)],
            vec![rat_int(0), Rational::new(1.into(), 3.into()), rat_int(2)],
        ] {
            let uni = f.restrict_to(0, &point).unwrap();
            let sub = f
                .substitute(&[
                    (1, Binding::Value(point[1].clone())),
                    (2, Binding::Value(point[2].clone())),
                ])
                .unwrap();
            assert_eq!(sub.to_uni(0).unwrap(), uni);
        }
    }

    #[test]
    fn ratfn_equal_examples() {
        let vars = ["x", "y", "z"];
        let (x, y, z) = (p("x", &vars), p("y", &vars), p("z", &vars));
        assert!(ratfn_equal((&x, &y), (&(&x * &z), &(&y * &z))).unwrap());
        assert!(!ratfn_equal((&x, &y), (&y, &x)).unwrap());
        let zero = MultiPoly::zero(x.names());
        assert_eq!(ratfn_equal((&x, &zero), (&x, &y)), Err(PolyError::ZeroDenominator));
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let vars = ["x", "y"];
        let a = p("123456789012345678901234567890*x + 98765432109876543210*y", &vars);
        let sq = &a * &a;
        let expected = p(
            "123456789012345678901234567890^2*x^2 + 2*123456789012345678901234567890*98765432109876543210*x*y + 98765432109876543210^2*y^2",
            &vars,
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn coefficients_in_groups_by_selected_slots() {
        let vars = ["x", "y", "u"];
        let f = p("u*x*y + 2*x*y - u^2", &vars);
        let coeffs = f.coefficients_in(&[0, 1]);
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[0].1, p("u + 2", &vars));
        assert_eq!(coeffs[1].1, p("-u^2", &vars));
    }

    #[test]
    fn display_is_descending_grlex() {
        let f = p("(x1 + 2)^3 - x1^3", &["x1"]);
        assert_eq!(f.to_string(), "6*x1^2 + 12*x1 + 8");
        assert_eq!(p("-x*y^2 + 1/2", &["x", "y"]).to_string(), "-x*y^2 + 1/2");
    }
}
