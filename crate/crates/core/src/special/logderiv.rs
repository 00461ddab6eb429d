use num_traits::{One, Zero};

use crate::poly::{Rational, UniPoly, UniRationalFn};

use super::AnalysisError;

/// Polynomial `p` and scalar `lambda` with `p'/p = r/lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDerivative {
    pub p: UniPoly,
    pub lambda: Rational,
}

/// Positive divisors of `n` in increasing order (empty for 0).
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// Solves `den·p' - (num/lambda)·p = 0` for `p` of degree exactly `n`,
/// normalized to `p(0) = 1` when `p(0) != 0` and monic otherwise.
pub fn solve_for_degree(r: &UniRationalFn, n: usize, lambda: &Rational) -> Option<UniPoly> {
    if n == 0 || lambda.is_zero() {
        return None;
    }
    let num = r.num().scale(&(Rational::one() / lambda));
    let den = r.den();
    // Column k holds the coefficients of den·(x^k)' - num·x^k.
    let rows = den.coeffs().len().max(1) + n + num.coeffs().len();
    let column = |k: usize| -> Vec<Rational> {
        let mut col = vec![Rational::zero(); rows];
        if k > 0 {
            let kk = Rational::from_integer(k.into());
            for (e, c) in den.coeffs().iter().enumerate() {
                col[e + k - 1] += c * &kk;
            }
        }
        for (e, c) in num.coeffs().iter().enumerate() {
            col[e + k] -= c;
        }
        col
    };
    // Fix the leading coefficient to 1 and solve for the rest.
    let mut matrix: Vec<Vec<Rational>> = (0..rows).map(|_| Vec::with_capacity(n + 1)).collect();
    for k in 0..n {
        for (row, v) in matrix.iter_mut().zip(column(k)) {
            row.push(v);
        }
    }
    for (row, v) in matrix.iter_mut().zip(column(n)) {
        row.push(-v);
    }
    let solution = solve_linear(matrix, n)?;
    let mut coeffs = solution;
    coeffs.push(Rational::one());
    let p = UniPoly::new(coeffs);
    let c0 = p.coeff(0);
    Some(if c0.is_zero() {
        p
    } else {
        p.scale(&(Rational::one() / c0))
    })
}

/// Gaussian elimination on an augmented matrix with `unknowns` columns plus
/// the right-hand side. Returns one solution (free variables at zero), or
/// `None` if the system is inconsistent.
fn solve_linear(mut m: Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = Rational::one() / &m[row][col];
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (v, p) in other.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][unknowns].clone();
    }
    Some(x)
}

/// Finds `p` and `lambda` with `p'/p = r/lambda`, trying the degree
/// candidates from the largest down; the first consistent one wins, so a
/// true logarithmic derivative comes back with `lambda = 1`.
///
/// `lambda` is forced by the behaviour at infinity: if `x·r(x) -> mu` then a
/// degree-`n` solution needs `lambda = mu/n`.
pub fn solve_log_derivative(
    r: &UniRationalFn,
    degree_candidates: &[usize],
) -> Result<LogDerivative, AnalysisError> {
    if r.den().is_constant() {
        return Err(AnalysisError::Precondition("denominator must be nonconstant"));
    }
    if degree_candidates.is_empty() {
        return Err(AnalysisError::Precondition("degree candidates must be nonempty"));
    }
    let mu = r.residue_at_infinity().ok_or(AnalysisError::NoPolynomialSolution)?;
    let mut candidates = degree_candidates.to_vec();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    candidates.dedup();
    for n in candidates.into_iter().filter(|&n| n > 0) {
        let lambda = &mu / Rational::from_integer(n.into());
        if let Some(p) = solve_for_degree(r, n, &lambda) {
            return Ok(LogDerivative { p, lambda });
        }
    }
    Err(AnalysisError::NoPolynomialSolution)
}
