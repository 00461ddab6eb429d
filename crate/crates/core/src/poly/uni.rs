use std::fmt;

use num_traits::{One, Zero};

use super::{write_term, PolyError, Rational};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        UniPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|k| k * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * super::rat_int(k as i64))
                .collect(),
        )
    }

    /// The primitive vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(Rational::zero());
        out.extend(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| c / super::rat_int(k as i64 + 1)),
        );
        Self::new(out)
    }

    /// `h(self)`.
    pub fn compose_into(&self, h: &UniPoly) -> Self {
        h.0.iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(self).add(&Self::constant(c.clone())))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.0.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (Euclid with monic normalization at each
    /// step). `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            write_term(&mut out, first, c, &body);
            first = false;
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.display_in("t"))
    }
}

/// Reduced univariate rational function: `gcd(num, den) = 1`, `den` monic.
#[derive(Clone, PartialEq, Eq)]
pub struct UniRationalFn {
    num: UniPoly,
    den: UniPoly,
}

impl UniRationalFn {
    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRationalFn {
            num: p,
            den: UniPoly::constant(Rational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// No finite poles.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniRationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `lim x * r(x)` as `x` goes to infinity, when finite and nonzero.
    pub fn residue_at_infinity(&self) -> Option<Rational> {
        let (n, d) = (self.num.degree()?, self.den.degree()?);
        (n + 1 == d).then(|| self.num.leading() / self.den.leading())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.display_in(var);
        }
        format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
    }
}

impl fmt::Debug for UniRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniRationalFn({})", self.display_in("t"))
    }
}

/// Cancels the common factor of `num / den` and makes the denominator monic.
pub fn uni_reduce(num: &UniPoly, den: &UniPoly) -> Result<UniRationalFn, PolyError> {
    if den.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(UniRationalFn {
            num: UniPoly::zero(),
            den: UniPoly::constant(Rational::one()),
        });
    }
    let g = num.gcd(den);
    let (n, _) = num.div_rem(&g);
    let (d, _) = den.div_rem(&g);
    let lc = Rational::one() / d.leading();
    Ok(UniRationalFn {
        num: n.scale(&lc),
        den: d.scale(&lc),
    })
}

/// The unique polynomial of degree below `points.len()` through all points
/// (Newton divided differences).
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPoly, PolyError> {
    if points.is_empty() {
        return Err(PolyError::NoPoints);
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(PolyError::DuplicateAbscissa(super::display_rat(xi)));
        }
    }
    let n = points.len();
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            table[i] = num / den;
        }
    }
    // Horner on the Newton form.
    let mut result = UniPoly::constant(table[n - 1].clone());
    for i in (0..n - 1).rev() {
        let shift = UniPoly::new(vec![-points[i].0.clone(), Rational::one()]);
        result = result.mul(&shift).add(&UniPoly::constant(table[i].clone()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    #[test]
    fn reduce_cancels_common_factor() {
        let r = uni_reduce(&UniPoly::from_ints(&[-2, 0, 2]), &UniPoly::from_ints(&[-2, 2])).unwrap();
        assert_eq!(r.num(), &UniPoly::from_ints(&[1, 1]));
        assert_eq!(r.den(), &UniPoly::from_ints(&[1]));
    }

    #[test]
    fn reduce_zero_numerator() {
        let r = uni_reduce(&UniPoly::zero(), &UniPoly::x()).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.den(), &UniPoly::from_ints(&[1]));
        assert_eq!(
            uni_reduce(&UniPoly::x(), &UniPoly::zero()),
            Err(PolyError::ZeroDenominator)
        );
    }

    #[test]
    fn antiderivative_examples() {
        assert!(UniPoly::zero().antiderivative().is_zero());
        assert_eq!(UniPoly::from_ints(&[0, 2]).antiderivative(), UniPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn interpolate_examples() {
        let line = interpolate(&[(rat_int(0), rat_int(1)), (rat_int(1), rat_int(2))]).unwrap();
        assert_eq!(line, UniPoly::from_ints(&[1, 1]));
        let c = interpolate(&[(rat_int(0), rat_int(-4))]).unwrap();
        assert_eq!(c, UniPoly::from_ints(&[-4]));
        assert!(matches!(
            interpolate(&[(rat_int(3), rat_int(1)), (rat_int(3), rat_int(2))]),
            Err(PolyError::DuplicateAbscissa(_))
        ));
        assert_eq!(interpolate(&[]), Err(PolyError::NoPoints));
    }

    #[test]
    fn gcd_is_monic() {
        let a = UniPoly::from_ints(&[-1, 0, 1]).scale(&rat_int(6));
        let b = UniPoly::from_ints(&[-3, 3]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn residue_at_infinity_of_log_derivative() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let r = uni_reduce(&p.derivative(), &p).unwrap();
        assert_eq!(r.residue_at_infinity(), Some(rat_int(2)));
        assert_eq!(UniRationalFn::from_poly(UniPoly::x()).residue_at_infinity(), None);
    }
}
