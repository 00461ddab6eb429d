//! Derivative-ratio tests.
//!
//! `∂_i f / ∂_j f` is independent of `x_k` exactly when
//! `G = ∂_i f(x) ∂_j f(x') - ∂_i f(x') ∂_j f(x)` vanishes, where `x'` is `x`
//! with `x_k` replaced by a fresh slot `x_k'`.

use num_traits::Zero;

use crate::poly::modular::{self, ModPoly};
use crate::poly::MultiPoly;

use super::identity::{check, Certificate, Identity, IdentityOutcome, IdentityPolicy};
use super::sampler::{GenericPoints, MAX_REDRAWS};
use super::AnalysisError;

/// `f` with its first partial derivatives and their residue forms, plus a
/// fixed set of screening points shared by all ratio tests.
pub(crate) struct Partials {
    pub f: MultiPoly,
    pub d: Vec<MultiPoly>,
    modp: Vec<Option<ModPoly>>,
    screens: Vec<ScreenPoint>,
}

struct ScreenPoint {
    base: Vec<u64>,
    alt: Vec<u64>,
    /// `at_base[i] = ∂_i f(base)`.
    at_base: Vec<Option<u64>>,
    /// `at_alt[k][i] = ∂_i f(base with slot k set to alt[k])`.
    at_alt: Vec<Vec<Option<u64>>>,
}

impl Partials {
    pub fn new(f: &MultiPoly) -> Self {
        let d: Vec<MultiPoly> = (0..f.nvars())
            .map(|i| f.partial_derivative(i).expect("index in range"))
            .collect();
        let modp = d.iter().map(ModPoly::new).collect();
        Partials {
            f: f.clone(),
            d,
            modp,
            screens: Vec::new(),
        }
    }

    /// Precomputes residues of every partial at `rounds` random points and at
    /// their single-slot perturbations.
    pub fn prepare_screens(&mut self, rounds: usize, points: &mut GenericPoints) {
        let n = self.f.nvars();
        self.screens = (0..rounds)
            .map(|_| {
                let base = points.draw_residues(n);
                let alt = points.draw_residues(n);
                let eval_all = |pt: &[u64]| -> Vec<Option<u64>> {
                    self.modp.iter().map(|m| m.as_ref().map(|m| m.eval(pt))).collect()
                };
                let at_base = eval_all(&base);
                let at_alt = (0..n)
                    .map(|k| {
                        let mut pt = base.clone();
                        pt[k] = alt[k];
                        eval_all(&pt)
                    })
                    .collect();
                ScreenPoint {
                    base,
                    alt,
                    at_base,
                    at_alt,
                }
            })
            .collect();
    }

    fn lifted_names(&self, k: usize) -> Vec<String> {
        let mut names = self.f.names().to_vec();
        names.push(format!("{}'", names[k]));
        names
    }

    pub fn ratio_test(
        &self,
        i: usize,
        j: usize,
        k: usize,
        policy: &IdentityPolicy,
        points: &mut GenericPoints,
    ) -> Result<IdentityOutcome, AnalysisError> {
        let n = self.f.nvars();
        for &v in &[i, j, k] {
            if v >= n {
                return Err(AnalysisError::Poly(crate::poly::PolyError::IndexOutOfRange {
                    index: v,
                    nvars: n,
                }));
            }
        }
        if i == j || i == k || j == k {
            return Err(AnalysisError::IndicesNotDistinct);
        }
        for &v in &[i, j] {
            if self.d[v].is_zero() {
                return Err(AnalysisError::MissingVariable(v));
            }
        }
        let (a, b) = (&self.d[i], &self.d[j]);
        let names = self.lifted_names(k);
        let expand = || {
            let mut mapping: Vec<usize> = (0..n).collect();
            mapping[k] = n;
            let (a0, b0) = (a.lift(&names[n..]), b.lift(&names[n..]));
            let (a1, b1) = (a.remap(&mapping, &names), b.remap(&mapping, &names));
            &(&a0 * &b1) - &(&a1 * &b0)
        };
        let (ma, mb) = (&self.modp[i], &self.modp[j]);
        let screens = &self.screens;
        let mut screen = |round: usize| -> Option<(Vec<u64>, u64)> {
            let (ma, mb) = (ma.as_ref()?, mb.as_ref()?);
            let (point, vals) = match screens.get(round) {
                Some(s) => {
                    let mut point = s.base.clone();
                    point.push(s.alt[k]);
                    let vals = [s.at_base[i]?, s.at_base[j]?, s.at_alt[k][i]?, s.at_alt[k][j]?];
                    (point, vals)
                }
                None => {
                    let point = points.draw_residues(n + 1);
                    let mut alt = point[..n].to_vec();
                    alt[k] = point[n];
                    let base = &point[..n];
                    let vals = [ma.eval(base), mb.eval(base), ma.eval(&alt), mb.eval(&alt)];
                    (point, vals)
                }
            };
            let [a_x, b_x, a_alt, b_alt] = vals;
            let value = modular::sub(modular::mul(a_x, b_alt), modular::mul(a_alt, b_x));
            Some((point, value))
        };
        let cost = 2 * (a.num_terms() as u128) * (b.num_terms() as u128);
        Ok(check(
            Identity {
                cost,
                screen: &mut screen,
                expand: &expand,
            },
            policy,
        ))
    }

    pub fn separability(
        &self,
        i: usize,
        j: usize,
        points: &mut GenericPoints,
    ) -> Result<IdentityOutcome, AnalysisError> {
        let n = self.f.nvars();
        if i >= n || j >= n {
            return Err(AnalysisError::Poly(crate::poly::PolyError::IndexOutOfRange {
                index: i.max(j),
                nvars: n,
            }));
        }
        if i == j {
            return Err(AnalysisError::IndicesNotDistinct);
        }
        for &v in &[i, j] {
            if self.d[v].is_zero() {
                return Err(AnalysisError::MissingVariable(v));
            }
        }
        for _ in 0..MAX_REDRAWS {
            let b = points.draw(n);
            let num = self.d[i].partial_evaluate(&[i, j], &b)?;
            let den = self.d[j].partial_evaluate(&[i, j], &b)?;
            if num.is_zero() || den.is_zero() {
                continue;
            }
            let n00 = num.evaluate(&b)?;
            let d00 = den.evaluate(&b)?;
            if n00.is_zero() || d00.is_zero() {
                continue;
            }
            // N/D splits as ρ(s)/σ(t) iff
            // N(s,t) N(s0,t0) D(s,t0) D(s0,t) = N(s,t0) N(s0,t) D(s,t) D(s0,t0).
            let at = |p: &MultiPoly, v: usize| -> Result<MultiPoly, AnalysisError> {
                let keep = if v == i { j } else { i };
                Ok(p.partial_evaluate(&[keep], &b)?)
            };
            let (n_s_t0, n_s0_t) = (at(&num, j)?, at(&num, i)?);
            let (d_s_t0, d_s0_t) = (at(&den, j)?, at(&den, i)?);
            let lhs = (&(&num * &d_s_t0) * &d_s0_t).scale(&n00);
            let rhs = (&(&n_s_t0 * &n_s0_t) * &den).scale(&d00);
            if lhs == rhs {
                return Ok(IdentityOutcome::Holds(super::Evidence::Exact));
            }
            let cert = four_slot_certificate(&num, &den, i, j, self.f.names());
            debug_assert!(!cert.is_zero());
            return Ok(IdentityOutcome::Fails(Certificate::Polynomial(cert)));
        }
        Err(AnalysisError::DegeneratePoint)
    }
}

/// `N(s,t)N(s',t')D(s,t')D(s',t) - N(s,t')N(s',t)D(s,t)D(s',t')` over the
/// slots `(x_i, x_j, x_i', x_j')`.
fn four_slot_certificate(
    num: &MultiPoly,
    den: &MultiPoly,
    i: usize,
    j: usize,
    names: &[String],
) -> MultiPoly {
    let space = vec![
        names[i].clone(),
        names[j].clone(),
        format!("{}'", names[i]),
        format!("{}'", names[j]),
    ];
    let place = |p: &MultiPoly, si: usize, sj: usize| {
        let mut mapping = vec![0usize; p.nvars()];
        mapping[i] = si;
        mapping[j] = sj;
        p.remap(&mapping, &space)
    };
    let lhs = &(&(&place(num, 0, 1) * &place(num, 2, 3)) * &place(den, 0, 3)) * &place(den, 2, 1);
    let rhs = &(&(&place(num, 0, 3) * &place(num, 2, 1)) * &place(den, 0, 1)) * &place(den, 2, 3);
    &lhs - &rhs
}

/// Exact test that `∂_i f / ∂_j f` does not involve `x_k` (0-based slots).
///
/// On failure the certificate is the nonzero lifted polynomial `G` with the
/// fresh slot `x_k'` appended after the original variables.
pub fn ratio_independent_of(
    f: &MultiPoly,
    i: usize,
    j: usize,
    k: usize,
) -> Result<IdentityOutcome, AnalysisError> {
    ratio_independent_with(f, i, j, k, &IdentityPolicy::EXACT, &mut GenericPoints::new(0))
}

pub fn ratio_independent_with(
    f: &MultiPoly,
    i: usize,
    j: usize,
    k: usize,
    policy: &IdentityPolicy,
    points: &mut GenericPoints,
) -> Result<IdentityOutcome, AnalysisError> {
    Partials::new(f).ratio_test(i, j, k, policy, points)
}

/// Tests whether `∂_i f / ∂_j f`, with the other variables at a generic
/// point, splits as `ρ(x_i) / σ(x_j)`.
///
/// The failure certificate is the four-variable cross-multiplied difference
/// over `(x_i, x_j, x_i', x_j')`.
pub fn separability_test(
    f: &MultiPoly,
    i: usize,
    j: usize,
    points: &mut GenericPoints,
) -> Result<IdentityOutcome, AnalysisError> {
    Partials::new(f).separability(i, j, points)
}
