use num_traits::Zero;

use crate::poly::{MultiPoly, PolyError, Rational};

use super::AnalysisError;

/// Coefficients of `G = ∂_j f · ∂_k f(x_i→x_i') - ∂_j f(x_i→x_i') · ∂_k f` as
/// polynomials in the parameters (all variables outside the triple).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyReport {
    /// `(i, j, k)`, 0-based.
    pub triple: [usize; 3],
    /// 0-based slots of the parameters `u`.
    pub parameters: Vec<usize>,
    /// `G` over the original variables with `x_i'` appended.
    pub g: MultiPoly,
    /// Nonzero coefficients, keyed by exponents of `(x_i, x_i', x_j, x_k)`,
    /// each a polynomial over the original variables that involves only `u`.
    pub generators: Vec<([u32; 4], MultiPoly)>,
    pub identically_zero: bool,
}

impl VarietyReport {
    /// Whether every generator vanishes at `point` (only the parameter
    /// coordinates are read).
    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool, PolyError> {
        for (_, c) in &self.generators {
            if !c.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn g_coefficients(f: &MultiPoly, triple: (usize, usize, usize)) -> Result<VarietyReport, AnalysisError> {
    let n = f.nvars();
    if n < 4 {
        return Err(AnalysisError::TooFewVariables { needed: 4, got: n });
    }
    let (i, j, k) = triple;
    for v in [i, j, k] {
        if v >= n {
            return Err(PolyError::IndexOutOfRange { index: v, nvars: n }.into());
        }
    }
    if i == j || i == k || j == k {
        return Err(AnalysisError::IndicesNotDistinct);
    }
    let mut names = f.names().to_vec();
    names.push(format!("{}'", names[i]));
    let extra = &names[n..];
    let mut mapping: Vec<usize> = (0..n).collect();
    mapping[i] = n;
    let fj = f.partial_derivative(j)?;
    let fk = f.partial_derivative(k)?;
    let (fj0, fk0) = (fj.lift(extra), fk.lift(extra));
    let (fj1, fk1) = (fj.remap(&mapping, &names), fk.remap(&mapping, &names));
    let g = &(&fj0 * &fk1) - &(&fj1 * &fk0);

    let slots = [i, n, j, k];
    let mut back: Vec<usize> = (0..=n).collect();
    back[n] = 0;
    let generators: Vec<([u32; 4], MultiPoly)> = g
        .coefficients_in(&slots)
        .into_iter()
        .map(|(m, c)| {
            let exps = slots.map(|s| m.exponent(s));
            (exps, c.remap(&back, f.names()))
        })
        .collect();
    Ok(VarietyReport {
        triple: [i, j, k],
        parameters: (0..n).filter(|v| ![i, j, k].contains(v)).collect(),
        identically_zero: generators.is_empty(),
        g,
        generators,
    })
}
