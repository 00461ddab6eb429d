#![allow(dead_code)]

use erpoly::poly::{MultiPoly, Rational, UniPoly};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Polynomial of degree in `1..=max_deg` with coefficients in [-5, 5].
pub fn random_uni(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<Rational> = (0..deg).map(|_| rat(rng.gen_range(-5..=5))).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-5..=5);
    }
    c.push(rat(lead));
    UniPoly::new(c)
}

/// `h` applied to a polynomial, by plain powers.
pub fn apply(h: &UniPoly, pows: impl Fn(usize) -> MultiPoly, names: &[String]) -> MultiPoly {
    let mut out = MultiPoly::zero(names);
    for (k, c) in h.coeffs().iter().enumerate() {
        out = &out + &pows(k).scale(c);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Additive,
    Multiplicative,
}

pub struct SpecialInstance {
    pub f: MultiPoly,
    pub h: UniPoly,
    pub p: Vec<UniPoly>,
    pub shape: Shape,
}

/// `h(Σ p_i)` or `h(Π p_i)` with d in {3,4,5}, deg h and deg p_i in 1..=3.
pub fn random_special(rng: &mut ChaCha8Rng, shape: Shape) -> SpecialInstance {
    let d = rng.gen_range(3..=5);
    let names = MultiPoly::default_names(d);
    let h = random_uni(rng, 3);
    let p: Vec<UniPoly> = (0..d).map(|_| random_uni(rng, 3)).collect();
    let lifted: Vec<MultiPoly> = p.iter().enumerate().map(|(i, pi)| MultiPoly::from_uni(&names, i, pi)).collect();
    let f = match shape {
        Shape::Additive => {
            let s = lifted.iter().fold(MultiPoly::zero(&names), |a, b| &a + b);
            apply(&h, |k| s.pow(k as u32), &names)
        }
        Shape::Multiplicative => apply(
            &h,
            |k| lifted.iter().fold(MultiPoly::constant(&names, rat(1)), |a, b| &a * &b.pow(k as u32)),
            &names,
        ),
    };
    SpecialInstance { f, h, p, shape }
}
