use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::{format_ratio, uni_reduce, MultiPoly, Rational, UniPoly, UniRationalFn};

use super::identity::{Certificate, Evidence, IdentityOutcome};
use super::independence::Partials;
use super::sampler::{GenericPoints, MAX_REDRAWS};
use super::AnalysisError;

/// Univariate functions `r_1..r_d` with `∂_i f / r_i(x_i)` independent of `i`.
///
/// They are determined up to one shared constant, fixed here by making the
/// numerator of `r_1` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSystem {
    pub r: Vec<UniRationalFn>,
    pub base_point: Vec<Rational>,
    /// Empty when `r_1` was already monic.
    pub scaling_note: String,
}

/// Outcome of a failed extraction: either no usable point or the system did
/// not verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractFailure {
    Degenerate,
    Unverified { pair: (usize, usize), certificate: Certificate },
}

/// Recovers `r_1..r_d` from ratios of partial derivatives restricted to a
/// generic base point and checks them with [`verify_de`].
///
/// Assumes the ratio-independence and separability tests have passed; if they
/// have not, extraction still terminates, with a failed verification.
pub fn extract_r(f: &MultiPoly, points: &mut GenericPoints) -> Result<RSystem, AnalysisError> {
    let partials = Partials::new(f);
    match extract_from(&partials, points)? {
        Ok(rs) => Ok(rs),
        Err(ExtractFailure::Degenerate) => Err(AnalysisError::DegeneratePoint),
        Err(ExtractFailure::Unverified { .. }) => {
            Err(AnalysisError::Precondition("differential system did not verify"))
        }
    }
}

pub(crate) fn extract_from(
    partials: &Partials,
    points: &mut GenericPoints,
) -> Result<Result<RSystem, ExtractFailure>, AnalysisError> {
    let n = partials.f.nvars();
    if n < 2 {
        return Err(AnalysisError::TooFewVariables { needed: 2, got: n });
    }
    if let Some(v) = partials.d.iter().position(|p| p.is_zero()) {
        return Err(AnalysisError::MissingVariable(v));
    }
    let last = n - 1;
    'draw: for _ in 0..MAX_REDRAWS {
        let b = points.draw(n);
        let mut r = Vec::with_capacity(n);
        // r_i ∝ (∂_i f / ∂_last f) with every other slot at b, for i < last.
        for i in 0..last {
            let num = partials.d[i].restrict_to(i, &b)?;
            let den = partials.d[last].restrict_to(i, &b)?;
            if num.is_zero() || den.is_zero() {
                continue 'draw;
            }
            r.push(uni_reduce(&num, &den)?);
        }
        // r_last = r_1(b_1) * (∂_last f / ∂_1 f) with every other slot at b.
        let num = partials.d[last].restrict_to(last, &b)?;
        let den = partials.d[0].restrict_to(last, &b)?;
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let c = match r[0].eval(&b[0]) {
            Some(c) if !c.is_zero() => c,
            _ => continue,
        };
        r.push(uni_reduce(&num, &den)?.scale(&c));

        let lead = r[0].num().leading();
        let s = Rational::one() / &lead;
        let r: Vec<UniRationalFn> = r.iter().map(|ri| ri.scale(&s)).collect();
        let rs = RSystem {
            r,
            base_point: b,
            scaling_note: if s.is_one() {
                String::new()
            } else {
                format!("numerator of r_1 made monic (common factor {})", format_ratio(&s))
            },
        };
        return Ok(match verify_from(partials, &rs)? {
            DeOutcome::Holds => Ok(rs),
            DeOutcome::Fails { pair, certificate } => {
                Err(ExtractFailure::Unverified { pair, certificate })
            }
        });
    }
    Ok(Err(ExtractFailure::Degenerate))
}

pub(crate) enum DeOutcome {
    Holds,
    Fails {
        pair: (usize, usize),
        certificate: Certificate,
    },
}

/// Exact check of `∂_i f · num_j(x_j) · den_i(x_i) = ∂_j f · num_i(x_i) · den_j(x_j)`.
///
/// The pairs `(1, j)` are expanded; since every `r_i` and `∂_1 f` is nonzero
/// they imply the identity for every other pair. The certificate names the
/// first failing pair and carries its nonzero difference.
pub fn verify_de(f: &MultiPoly, rs: &RSystem) -> Result<IdentityOutcome, AnalysisError> {
    let partials = Partials::new(f);
    Ok(match verify_from(&partials, rs)? {
        DeOutcome::Holds => IdentityOutcome::Holds(Evidence::Exact),
        DeOutcome::Fails { certificate, .. } => IdentityOutcome::Fails(certificate),
    })
}

pub(crate) fn verify_from(partials: &Partials, rs: &RSystem) -> Result<DeOutcome, AnalysisError> {
    let n = partials.f.nvars();
    if rs.r.len() != n {
        return Err(AnalysisError::Precondition("one r_i per variable"));
    }
    if rs.r.iter().any(|r| r.is_zero()) {
        return Err(AnalysisError::Precondition("every r_i nonzero"));
    }
    let names = partials.f.names();
    let lift = |i: usize, p: &UniPoly| MultiPoly::from_uni(names, i, p);
    // Scaling num_i and den_i together leaves each identity unchanged; integer
    // coefficients keep the products on the fast path.
    let cleared: Vec<(UniPoly, UniPoly)> = rs.r.iter().map(clear_denominators).collect();
    let num = |i: usize| lift(i, &cleared[i].0);
    let den = |i: usize| lift(i, &cleared[i].1);
    let pair_difference = |i: usize, j: usize| -> MultiPoly {
        let lhs = &(&partials.d[i] * &num(j)) * &den(i);
        let rhs = &(&partials.d[j] * &num(i)) * &den(j);
        &lhs - &rhs
    };
    if partials.d[0].is_zero() {
        // Degenerate: check all pairs directly.
        for i in 0..n {
            for j in i + 1..n {
                let diff = pair_difference(i, j);
                if !diff.is_zero() {
                    return Ok(DeOutcome::Fails {
                        pair: (i, j),
                        certificate: Certificate::Polynomial(diff),
                    });
                }
            }
        }
        return Ok(DeOutcome::Holds);
    }
    let left = &partials.d[0] * &den(0);
    let right = num(0);
    for j in 1..n {
        let lhs = &left * &num(j);
        let rhs = &(&partials.d[j] * &right) * &den(j);
        if lhs != rhs {
            return Ok(DeOutcome::Fails {
                pair: (0, j),
                certificate: Certificate::Polynomial(&lhs - &rhs),
            });
        }
    }
    Ok(DeOutcome::Holds)
}

fn clear_denominators(r: &UniRationalFn) -> (UniPoly, UniPoly) {
    let l = r
        .num()
        .coeffs()
        .iter()
        .chain(r.den().coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let l = Rational::from_integer(l);
    (r.num().scale(&l), r.den().scale(&l))
}
