use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{format_ratio, Rational};

use super::HarnessError;

/// Resampling rounds for random families before giving up on distinctness.
const MAX_RESAMPLE_ROUNDS: usize = 64;

/// How the elements of one coordinate set are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `start, start + step, ...`
    Ap { start: Rational, step: Rational },
    /// `start, start * ratio, ...`
    Gp { start: Rational, ratio: Rational },
    /// Distinct uniform integers from `[lo, hi]`; `None` means `[1, 4n^2]`.
    RandomInt { range: Option<(i64, i64)> },
    /// The first `n` of the given values.
    Explicit(Vec<Rational>),
}

impl Family {
    pub fn ap() -> Self {
        Family::Ap {
            start: Rational::one(),
            step: Rational::one(),
        }
    }

    pub fn gp() -> Self {
        Family::Gp {
            start: Rational::one(),
            ratio: Rational::from_integer(2.into()),
        }
    }

    pub fn random() -> Self {
        Family::RandomInt { range: None }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Family::RandomInt { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ap { start, step } => {
                write!(f, "ap(start={},step={})", format_ratio(start), format_ratio(step))
            }
            Family::Gp { start, ratio } => {
                write!(f, "gp(start={},ratio={})", format_ratio(start), format_ratio(ratio))
            }
            Family::RandomInt { range: None } => write!(f, "random(range=[1,4n^2])"),
            Family::RandomInt { range: Some((lo, hi)) } => write!(f, "random(range=[{lo},{hi}])"),
            Family::Explicit(v) => write!(f, "explicit({})", v.len()),
        }
    }
}

/// `n` distinct rationals in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSet {
    pub elements: Vec<Rational>,
    pub family: Family,
    pub seed: u64,
}

impl FiniteSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn from_values(values: Vec<Rational>) -> Result<Self, HarnessError> {
        let n = values.len();
        gen_set(&Family::Explicit(values), n, 0)
    }
}

pub fn gen_set(family: &Family, n: usize, seed: u64) -> Result<FiniteSet, HarnessError> {
    if n == 0 {
        return Err(HarnessError::EmptySet);
    }
    let elements: BTreeSet<Rational> = match family {
        Family::Ap { start, step } => {
            if step.is_zero() {
                return Err(HarnessError::InvalidFamily("AP step must be nonzero".into()));
            }
            (0..n)
                .map(|k| start + step * Rational::from_integer(k.into()))
                .collect()
        }
        Family::Gp { start, ratio } => {
            if start.is_zero() || ratio.is_zero() || ratio.abs().is_one() {
                return Err(HarnessError::InvalidFamily(
                    "GP needs a nonzero start and a ratio outside {0, 1, -1}".into(),
                ));
            }
            let mut out = BTreeSet::new();
            let mut v = start.clone();
            for _ in 0..n {
                out.insert(v.clone());
                v *= ratio;
            }
            out
        }
        Family::RandomInt { range } => {
            let (lo, hi) = range.unwrap_or((1, 4 * (n as i64).saturating_mul(n as i64)));
            let width = (hi as i128) - (lo as i128) + 1;
            let needed = 4 * (n as i128) * (n as i128);
            if width < needed {
                return Err(HarnessError::InvalidFamily(format!(
                    "random range [{lo},{hi}] holds fewer than 4n^2 = {needed} integers"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = BTreeSet::new();
            for _ in 0..MAX_RESAMPLE_ROUNDS * n {
                if out.len() == n {
                    break;
                }
                out.insert(Rational::from_integer(rng.gen_range(lo..=hi).into()));
            }
            out
        }
        Family::Explicit(values) => {
            if values.len() < n {
                return Err(HarnessError::CannotSatisfyDistinctness { requested: n, found: values.len() });
            }
            values[..n].iter().cloned().collect()
        }
    };
    if elements.len() != n {
        return Err(HarnessError::CannotSatisfyDistinctness {
            requested: n,
            found: elements.len(),
        });
    }
    Ok(FiniteSet {
        elements: elements.into_iter().collect(),
        family: family.clone(),
        seed,
    })
}
