use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{format_ratio, MultiPoly, PolyJson, UniPoly};

use super::decompose::{compose, Inner};
use super::identity::Certificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Additive,
    Multiplicative,
    NotSpecial,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Additive => "additive",
            Kind::Multiplicative => "multiplicative",
            Kind::NotSpecial => "not_special",
        })
    }
}

/// Pipeline stage at which a polynomial was shown not to be special.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stage {
    MissingVariable,
    IndependenceTest,
    SeparabilityTest,
    DESystem,
    Classification,
    Recovery,
    Verification,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureWitness {
    pub stage: Stage,
    /// 0-based variable slots the failure refers to.
    pub indices: Vec<usize>,
    pub certificate: Option<Certificate>,
    pub reason: String,
}

impl FailureWitness {
    pub(crate) fn new(stage: Stage, indices: Vec<usize>, reason: impl Into<String>) -> Self {
        FailureWitness {
            stage,
            indices,
            certificate: None,
            reason: reason.into(),
        }
    }

    pub(crate) fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    /// Checks the certificate on its own: a polynomial certificate must be
    /// nonzero, an evaluation certificate must carry a nonzero residue at a
    /// point of the right arity. Structural witnesses (no certificate) pass.
    pub fn recheck(&self) -> bool {
        match &self.certificate {
            None => true,
            Some(Certificate::Polynomial(p)) => !p.is_zero(),
            Some(Certificate::Evaluation(e)) => e.value != 0 && e.value < e.modulus,
        }
    }
}

/// Verdict of the analysis. Coefficients of `h` and `p_i` are stored in
/// increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// `f = h(p_1(x_1) + ... + p_d(x_d))`
    Additive { h: UniPoly, p: Vec<UniPoly> },
    /// `f = h(p_1(x_1) * ... * p_d(x_d))`
    Multiplicative { h: UniPoly, p: Vec<UniPoly> },
    NotSpecial(FailureWitness),
}

impl Decomposition {
    pub fn kind(&self) -> Kind {
        match self {
            Decomposition::Additive { .. } => Kind::Additive,
            Decomposition::Multiplicative { .. } => Kind::Multiplicative,
            Decomposition::NotSpecial(_) => Kind::NotSpecial,
        }
    }

    pub fn witness(&self) -> Option<&FailureWitness> {
        match self {
            Decomposition::NotSpecial(w) => Some(w),
            _ => None,
        }
    }

    /// Expands `h(inner)` over the given variable names.
    pub fn recompose(&self, names: &[String]) -> Option<MultiPoly> {
        match self {
            Decomposition::Additive { h, p } => Some(compose(h, &Inner::Sum(p.clone()), names)),
            Decomposition::Multiplicative { h, p } => {
                Some(compose(h, &Inner::Product(p.clone()), names))
            }
            Decomposition::NotSpecial(_) => None,
        }
    }

    pub fn to_json(&self, names: &[String]) -> DecompositionJson {
        let coeffs = |u: &UniPoly| u.coeffs().iter().map(format_ratio).collect::<Vec<_>>();
        match self {
            Decomposition::Additive { h, p } | Decomposition::Multiplicative { h, p } => {
                DecompositionJson {
                    kind: self.kind(),
                    h: Some(coeffs(h)),
                    p: Some(p.iter().map(coeffs).collect()),
                    witness: None,
                }
            }
            Decomposition::NotSpecial(w) => DecompositionJson {
                kind: Kind::NotSpecial,
                h: None,
                p: None,
                witness: Some(WitnessJson::new(w, names)),
            },
        }
    }

    /// Readable form such as `h(t) = t^2 + 1, t = x + y + z`.
    pub fn render(&self, names: &[String]) -> String {
        let inner = |p: &[UniPoly], sep: &str, wrap: bool| {
            p.iter()
                .zip(names)
                .map(|(pi, n)| {
                    let s = pi.display_in(n);
                    if wrap && pi.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1 {
                        format!("({s})")
                    } else {
                        s
                    }
                })
                .collect::<Vec<_>>()
                .join(sep)
        };
        match self {
            Decomposition::Additive { h, p } => {
                format!("h(t) = {}, t = {}", h.display_in("t"), inner(p, " + ", false))
            }
            Decomposition::Multiplicative { h, p } => {
                format!("h(t) = {}, t = {}", h.display_in("t"), inner(p, " * ", true))
            }
            Decomposition::NotSpecial(w) => {
                let vars: Vec<&str> = w.indices.iter().map(|&i| names[i].as_str()).collect();
                format!("not special at {} ({}): {}", w.stage, vars.join(", "), w.reason)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub kind: Kind,
    pub h: Option<Vec<String>>,
    pub p: Option<Vec<Vec<String>>>,
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationJson {
    pub modulus: u64,
    pub point: Vec<u64>,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub stage: Stage,
    /// 1-based variable positions.
    pub indices: Vec<usize>,
    pub variables: Vec<String>,
    pub certificate: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evaluation: Option<EvaluationJson>,
    pub reason: String,
}

impl WitnessJson {
    fn new(w: &FailureWitness, names: &[String]) -> Self {
        let (certificate, evaluation) = match &w.certificate {
            Some(Certificate::Polynomial(p)) => (Some(PolyJson::from(p)), None),
            Some(Certificate::Evaluation(e)) => (
                None,
                Some(EvaluationJson {
                    modulus: e.modulus,
                    point: e.point.clone(),
                    value: e.value,
                }),
            ),
            None => (None, None),
        };
        WitnessJson {
            stage: w.stage,
            indices: w.indices.iter().map(|i| i + 1).collect(),
            variables: w.indices.iter().map(|&i| names[i].clone()).collect(),
            certificate,
            evaluation,
            reason: w.reason.clone(),
        }
    }
}
