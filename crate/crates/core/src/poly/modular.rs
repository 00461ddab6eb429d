//! Evaluation modulo the Mersenne prime 2^61 - 1.
//!
//! A nonzero residue at any point proves the polynomial nonzero; a zero
//! residue proves nothing on its own.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{MultiPoly, Monomial, Rational};

pub const PRIME: u64 = (1 << 61) - 1;

pub fn mul(a: u64, b: u64) -> u64 {
    let wide = u128::from(a) * u128::from(b);
    let lo = (wide as u64) & PRIME;
    let hi = (wide >> 61) as u64;
    reduce(lo + hi)
}

fn reduce(x: u64) -> u64 {
    let y = (x & PRIME) + (x >> 61);
    if y >= PRIME {
        y - PRIME
    } else {
        y
    }
}

pub fn add(a: u64, b: u64) -> u64 {
    reduce(a + b)
}

pub fn sub(a: u64, b: u64) -> u64 {
    reduce(a + PRIME - b)
}

pub fn pow(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, PRIME - 2))
}

fn int_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    n.mod_floor(&p).to_u64().expect("residue fits in u64")
}

/// `None` when the denominator vanishes modulo the prime.
pub fn rational_mod(r: &Rational) -> Option<u64> {
    if r.denom().is_one() {
        return Some(int_mod(r.numer()));
    }
    let d = int_mod(r.denom());
    Some(mul(int_mod(r.numer()), inv(d)?))
}

/// A polynomial with coefficients reduced modulo the prime.
#[derive(Debug, Clone)]
pub struct ModPoly {
    nvars: usize,
    degrees: Vec<u32>,
    terms: Vec<(Monomial, u64)>,
}

impl ModPoly {
    /// `None` if some coefficient denominator is divisible by the prime.
    pub fn new(p: &MultiPoly) -> Option<Self> {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| rational_mod(c).map(|r| (*m, r)))
            .collect::<Option<Vec<_>>>()?;
        Some(ModPoly {
            nvars: p.nvars(),
            degrees: (0..p.nvars()).map(|i| p.degree_in(i)).collect(),
            terms,
        })
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let tables: Vec<Vec<u64>> = point
            .iter()
            .zip(&self.degrees)
            .map(|(&v, &d)| {
                let mut t = Vec::with_capacity(d as usize + 1);
                t.push(1u64);
                for k in 1..=d as usize {
                    t.push(mul(t[k - 1], v));
                }
                t
            })
            .collect();
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, table) in tables.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = mul(t, table[e]);
                }
            }
            acc = add(acc, t);
        }
        acc
    }
}
