use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{MultiPoly, Monomial, PolyError, Rational, MAX_VARS};

/// Canonical JSON form of a [`MultiPoly`]: terms in descending graded-lex
/// order, integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            vars: p.names().to_vec(),
            terms: p
                .terms()
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exps: m.exponents(p.nvars()),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for MultiPoly {
    type Error = PolyError;

    fn try_from(j: &PolyJson) -> Result<Self, PolyError> {
        if j.vars.is_empty() || j.vars.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(j.vars.len()));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exps.len() != j.vars.len() {
                return Err(PolyError::Json(format!(
                    "term has {} exponents for {} variables",
                    t.exps.len(),
                    j.vars.len()
                )));
            }
            let m = Monomial::from_exponents(&t.exps)
                .ok_or_else(|| PolyError::Json("exponent out of range".into()))?;
            let num = t
                .num
                .parse()
                .map_err(|_| PolyError::Json(format!("bad numerator `{}`", t.num)))?;
            let den: num_bigint::BigInt = t
                .den
                .parse()
                .map_err(|_| PolyError::Json(format!("bad denominator `{}`", t.den)))?;
            if den.is_zero() {
                return Err(PolyError::ZeroDenominator);
            }
            terms.push((m, Rational::new(num, den)));
        }
        Ok(MultiPoly::from_terms(&j.vars, terms))
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial JSON is always serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, PolyError> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Json(e.to_string()))?;
        MultiPoly::try_from(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use proptest::prelude::*;

    #[test]
    fn canonical_layout() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        let f = parse("1/2 - 3*x*y + y^2", &names).unwrap();
        assert_eq!(
            f.to_json_string(),
            r#"{"vars":["x","y"],"terms":[{"exps":[1,1],"num":"-3","den":"1"},{"exps":[0,2],"num":"1","den":"1"},{"exps":[0,0],"num":"1","den":"2"}]}"#
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(MultiPoly::from_json_str(r#"{"vars":["x"],"terms":[{"exps":[1,2],"num":"1","den":"1"}]}"#).is_err());
        assert!(MultiPoly::from_json_str(r#"{"vars":["x"],"terms":[{"exps":[1],"num":"1","den":"0"}]}"#).is_err());
        assert!(MultiPoly::from_json_str(r#"{"vars":["x"],"terms":[{"exps":[1],"num":"z","den":"1"}]}"#).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(terms in prop::collection::vec(((0u32..5, 0u32..5, 0u32..5), -50i64..50, 1i64..9), 0..12)) {
            let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
            let f = MultiPoly::from_terms(&names, terms.into_iter().map(|((i, j, k), n, d)| {
                (Monomial::from_exponents(&[i, j, k]).unwrap(), Rational::new(n.into(), d.into()))
            }));
            let back = MultiPoly::from_json_str(&f.to_json_string()).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_json_string(), f.to_json_string());
        }
    }
}
