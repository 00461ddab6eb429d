//! Zero-testing of polynomial identities of the form `L - R ≡ 0`.
//!
//! The identity is first evaluated modulo a large prime at seeded random
//! points; a nonzero residue proves the identity false. When the exact
//! expansion is affordable (per [`IdentityPolicy::exact_budget`]) it is always
//! performed, so the answer is exact. Otherwise a screened pass is reported as
//! [`Evidence::Screened`].

use crate::poly::{modular, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityPolicy {
    /// Random residue points tried before (or instead of) exact expansion.
    pub screen_points: usize,
    /// Largest estimated number of coefficient products for which the exact
    /// expansion is carried out.
    pub exact_budget: u128,
}

impl IdentityPolicy {
    pub const EXACT: IdentityPolicy = IdentityPolicy {
        screen_points: 2,
        exact_budget: u128::MAX,
    };
}

impl Default for IdentityPolicy {
    fn default() -> Self {
        IdentityPolicy {
            screen_points: 4,
            exact_budget: 400_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// The expanded difference is the zero polynomial.
    Exact,
    /// Vanished at this many independent random residue points.
    Screened { points: usize },
}

/// Value of the difference polynomial modulo `modulus` at `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationCertificate {
    pub modulus: u64,
    pub point: Vec<u64>,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The nonzero difference polynomial itself.
    Polynomial(MultiPoly),
    /// A point where the difference is nonzero modulo a prime.
    Evaluation(EvaluationCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityOutcome {
    Holds(Evidence),
    Fails(Certificate),
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityOutcome::Holds(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            IdentityOutcome::Fails(c) => Some(c),
            IdentityOutcome::Holds(_) => None,
        }
    }
}

/// One identity to test.
pub(crate) struct Identity<'a> {
    /// Estimated coefficient products for the exact expansion.
    pub cost: u128,
    /// Screening round `r`: a residue point and the difference there, or
    /// `None` if the round is unusable.
    pub screen: &'a mut dyn FnMut(usize) -> Option<(Vec<u64>, u64)>,
    /// Exact difference polynomial.
    pub expand: &'a dyn Fn() -> MultiPoly,
}

pub(crate) fn check(identity: Identity<'_>, policy: &IdentityPolicy) -> IdentityOutcome {
    let affordable = identity.cost <= policy.exact_budget;
    let mut screened = 0;
    for round in 0..policy.screen_points {
        let Some((point, value)) = (identity.screen)(round) else {
            continue;
        };
        if value != 0 {
            if affordable {
                let diff = (identity.expand)();
                debug_assert!(!diff.is_zero());
                return IdentityOutcome::Fails(Certificate::Polynomial(diff));
            }
            return IdentityOutcome::Fails(Certificate::Evaluation(EvaluationCertificate {
                modulus: modular::PRIME,
                point,
                value,
            }));
        }
        screened += 1;
    }
    if affordable || screened == 0 {
        let diff = (identity.expand)();
        if diff.is_zero() {
            IdentityOutcome::Holds(Evidence::Exact)
        } else {
            IdentityOutcome::Fails(Certificate::Polynomial(diff))
        }
    } else {
        IdentityOutcome::Holds(Evidence::Screened { points: screened })
    }
}
