use num_traits::{One, Zero};

use crate::poly::{interpolate, rat_int, MultiPoly, Rational, UniPoly};

use super::extract::RSystem;
use super::logderiv::{divisors, solve_for_degree};
use super::sampler::{GenericPoints, MAX_REDRAWS};
use super::witness::{Decomposition, FailureWitness, Stage};
use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidate {
    Additive,
    Multiplicative,
}

/// Inner function of a special form, one univariate polynomial per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inner {
    Sum(Vec<UniPoly>),
    Product(Vec<UniPoly>),
}

impl Inner {
    pub fn parts(&self) -> &[UniPoly] {
        match self {
            Inner::Sum(p) | Inner::Product(p) => p,
        }
    }

    pub fn expand(&self, names: &[String]) -> MultiPoly {
        compose(&UniPoly::x(), self, names)
    }
}

/// Additive when no `r_i` has a finite pole, multiplicative when all do.
pub fn classify(rs: &RSystem) -> Result<Candidate, FailureWitness> {
    let poles: Vec<bool> = rs.r.iter().map(|r| !r.is_polynomial()).collect();
    if poles.iter().all(|&p| !p) {
        Ok(Candidate::Additive)
    } else if poles.iter().all(|&p| p) {
        Ok(Candidate::Multiplicative)
    } else {
        let with: Vec<usize> = (0..poles.len()).filter(|&i| poles[i]).collect();
        let first_without = poles.iter().position(|&p| !p).expect("mixed");
        Err(FailureWitness::new(
            Stage::Classification,
            vec![first_without, with[0]],
            "r has poles for some variables but not for others",
        ))
    }
}

/// `h(inner)` expanded over `names`.
pub fn compose(h: &UniPoly, inner: &Inner, names: &[String]) -> MultiPoly {
    match inner {
        Inner::Sum(p) => {
            let s = p
                .iter()
                .enumerate()
                .fold(MultiPoly::zero(names), |acc, (i, pi)| &acc + &MultiPoly::from_uni(names, i, pi));
            h.coeffs().iter().rev().fold(MultiPoly::zero(names), |acc, c| {
                &(&acc * &s) + &MultiPoly::constant(names, c.clone())
            })
        }
        Inner::Product(p) => {
            // Powers of a product of disjoint factors are products of powers.
            let mut out = MultiPoly::zero(names);
            for (k, c) in h.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let power = p.iter().enumerate().fold(
                    MultiPoly::constant(names, c.clone()),
                    |acc, (i, pi)| &acc * &MultiPoly::from_uni(names, i, &pi.pow(k as u32)),
                );
                out = &out + &power;
            }
            out
        }
    }
}

/// Interpolates `h` with `f = h(inner)` from values along `x_1` at a generic
/// point. The caller must still verify the identity.
pub fn recover_h(
    f: &MultiPoly,
    inner: &Inner,
    points: &mut GenericPoints,
) -> Result<UniPoly, AnalysisError> {
    let parts = inner.parts();
    if parts.len() != f.nvars() {
        return Err(AnalysisError::Poly(crate::poly::PolyError::DimensionMismatch {
            expected: f.nvars(),
            found: parts.len(),
        }));
    }
    let inner_deg = parts[0].degree().unwrap_or(0);
    let f_deg = f.degree_in(0) as usize;
    if inner_deg == 0 || !f_deg.is_multiple_of(inner_deg) {
        return Err(AnalysisError::DegreeMismatch);
    }
    let m = f_deg / inner_deg;
    for _ in 0..MAX_REDRAWS {
        let b = points.draw(f.nvars());
        let line = match inner {
            Inner::Sum(p) => {
                let c: Rational = p.iter().zip(&b).skip(1).map(|(pi, bi)| pi.eval(bi)).sum();
                p[0].add(&UniPoly::constant(c))
            }
            Inner::Product(p) => {
                let c: Rational = p.iter().zip(&b).skip(1).map(|(pi, bi)| pi.eval(bi)).product();
                if c.is_zero() {
                    continue;
                }
                p[0].scale(&c)
            }
        };
        let f_line = f.restrict_to(0, &b)?;
        let mut samples: Vec<(Rational, Rational)> = Vec::with_capacity(m + 1);
        let mut k: i64 = 0;
        while samples.len() < m + 1 {
            // Abscissae 0, 1, -1, 2, -2, ...
            let s = rat_int(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) });
            k += 1;
            let u = line.eval(&s);
            if samples.iter().all(|(v, _)| *v != u) {
                samples.push((u, f_line.eval(&s)));
            }
        }
        return Ok(interpolate(&samples)?);
    }
    Err(AnalysisError::DegeneratePoint)
}

fn finish(
    f: &MultiPoly,
    inner: Inner,
    points: &mut GenericPoints,
) -> Result<Decomposition, FailureWitness> {
    let h = recover_h(f, &inner, points).map_err(|e| {
        FailureWitness::new(Stage::Recovery, vec![0], format!("recovering h failed: {e}"))
    })?;
    let g = compose(&h, &inner, f.names());
    if &g != f {
        return Err(
            FailureWitness::new(Stage::Verification, vec![], "f differs from h(inner)")
                .with_certificate(super::Certificate::Polynomial(f - &g)),
        );
    }
    Ok(match inner {
        Inner::Sum(p) => Decomposition::Additive { h, p },
        Inner::Product(p) => Decomposition::Multiplicative { h, p },
    })
}

/// Builds `p_i` as primitives of `r_i` (vanishing at zero, `p_1` monic),
/// then recovers and verifies `h`.
pub fn decompose_additive(
    f: &MultiPoly,
    rs: &RSystem,
    points: &mut GenericPoints,
) -> Result<Decomposition, AnalysisError> {
    if rs.r.len() != f.nvars() || rs.r.iter().any(|r| !r.is_polynomial()) {
        return Err(AnalysisError::Precondition("additive candidate expected"));
    }
    let mut p: Vec<UniPoly> = rs
        .r
        .iter()
        .map(|r| r.num().scale(&(Rational::one() / r.den().leading())).antiderivative())
        .collect();
    if p.iter().any(|pi| pi.is_zero()) {
        return Err(AnalysisError::Precondition("every r_i nonzero"));
    }
    let s = Rational::one() / p[0].leading();
    for pi in &mut p {
        *pi = pi.scale(&s);
    }
    Ok(finish(f, Inner::Sum(p), points).unwrap_or_else(Decomposition::NotSpecial))
}

/// Solves `p_i'/p_i = r_i/lambda` with one shared `lambda`, trying the
/// divisors of `deg_{x_1} f` as the degree of `p_1`, then recovers and
/// verifies `h`.
pub fn decompose_multiplicative(
    f: &MultiPoly,
    rs: &RSystem,
    points: &mut GenericPoints,
) -> Result<Decomposition, AnalysisError> {
    let n = f.nvars();
    if rs.r.len() != n || rs.r.iter().any(|r| r.is_polynomial()) {
        return Err(AnalysisError::Precondition("multiplicative candidate expected"));
    }
    let mut mu = Vec::with_capacity(n);
    for (i, r) in rs.r.iter().enumerate() {
        match r.residue_at_infinity() {
            Some(m) => mu.push(m),
            None => {
                return Ok(Decomposition::NotSpecial(FailureWitness::new(
                    Stage::Recovery,
                    vec![i],
                    "r_i is not a logarithmic derivative (no simple decay at infinity)",
                )))
            }
        }
    }
    let mut failure = FailureWitness::new(
        Stage::Recovery,
        vec![0],
        "no degree candidate gives a consistent logarithmic derivative",
    );
    'candidate: for n0 in divisors(f.degree_in(0)) {
        let lambda = &mu[0] / rat_int(n0 as i64);
        let mut p = Vec::with_capacity(n);
        for i in 0..n {
            let ni = &mu[i] / &lambda;
            if !ni.is_integer() || ni <= Rational::zero() {
                continue 'candidate;
            }
            let Ok(ni) = usize::try_from(ni.to_integer()) else {
                continue 'candidate;
            };
            if !(f.degree_in(i) as usize).is_multiple_of(ni) {
                continue 'candidate;
            }
            match solve_for_degree(&rs.r[i], ni, &lambda) {
                Some(pi) => p.push(pi),
                None => continue 'candidate,
            }
        }
        match finish(f, Inner::Product(p), points) {
            Ok(d) => return Ok(d),
            Err(w) => failure = w,
        }
    }
    Ok(Decomposition::NotSpecial(failure))
}
