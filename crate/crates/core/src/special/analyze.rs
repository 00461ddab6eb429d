use crate::poly::MultiPoly;

use super::decompose::{classify, decompose_additive, decompose_multiplicative, Candidate};
use super::extract::{extract_from, ExtractFailure, RSystem};
use super::identity::{Evidence, IdentityOutcome, IdentityPolicy};
use super::independence::Partials;
use super::sampler::GenericPoints;
use super::witness::{Decomposition, FailureWitness, Stage};
use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct AnalysisConfig {
    pub seed: u64,
    pub policy: IdentityPolicy,
}


#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub decomposition: Decomposition,
    /// Present once extraction succeeded.
    pub r_system: Option<RSystem>,
    /// Identity tests settled by exact expansion.
    pub exact_checks: usize,
    /// Identity tests that passed modular screening only.
    pub screened_checks: usize,
    pub notes: Vec<String>,
}

/// Decides whether `f` is `h(Σ p_i(x_i))`, `h(Π p_i(x_i))`, or neither, with
/// the default configuration.
pub fn analyze(f: &MultiPoly) -> Result<Decomposition, AnalysisError> {
    Ok(analyze_with(f, &AnalysisConfig::default())?.decomposition)
}

pub fn analyze_with(f: &MultiPoly, config: &AnalysisConfig) -> Result<AnalysisReport, AnalysisError> {
    let n = f.nvars();
    if n < 2 {
        return Err(AnalysisError::TooFewVariables { needed: 2, got: n });
    }
    let mut report = AnalysisReport {
        decomposition: Decomposition::NotSpecial(FailureWitness::new(Stage::MissingVariable, vec![], "")),
        r_system: None,
        exact_checks: 0,
        screened_checks: 0,
        notes: Vec::new(),
    };
    if n == 2 {
        report
            .notes
            .push("bivariate input: the dichotomy is stated for three or more variables".into());
    }
    report.decomposition = run(f, config, &mut report)?;
    Ok(report)
}

fn run(
    f: &MultiPoly,
    config: &AnalysisConfig,
    report: &mut AnalysisReport,
) -> Result<Decomposition, AnalysisError> {
    let n = f.nvars();
    let mut partials = Partials::new(f);
    if let Some(v) = partials.d.iter().position(|d| d.is_zero()) {
        return Ok(Decomposition::NotSpecial(FailureWitness::new(
            Stage::MissingVariable,
            vec![v],
            format!("f does not depend on {}", f.names()[v]),
        )));
    }
    let mut points = GenericPoints::new(config.seed);
    let mut screen_points = points.fork();
    partials.prepare_screens(config.policy.screen_points, &mut screen_points);

    let tally = |out: &IdentityOutcome, report: &mut AnalysisReport| match out {
        IdentityOutcome::Holds(Evidence::Exact) => report.exact_checks += 1,
        IdentityOutcome::Holds(Evidence::Screened { .. }) => report.screened_checks += 1,
        IdentityOutcome::Fails(_) => {}
    };

    for i in 0..n {
        for j in i + 1..n {
            for k in (0..n).filter(|&k| k != i && k != j) {
                let out = partials.ratio_test(i, j, k, &config.policy, &mut screen_points)?;
                tally(&out, report);
                if let IdentityOutcome::Fails(c) = out {
                    let names = f.names();
                    return Ok(Decomposition::NotSpecial(
                        FailureWitness::new(
                            Stage::IndependenceTest,
                            vec![i, j, k],
                            format!("d{}f/d{}f depends on {}", names[i], names[j], names[k]),
                        )
                        .with_certificate(c),
                    ));
                }
            }
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            let out = match partials.separability(i, j, &mut points) {
                Ok(out) => out,
                Err(AnalysisError::DegeneratePoint) => {
                    return Ok(Decomposition::NotSpecial(FailureWitness::new(
                        Stage::SeparabilityTest,
                        vec![i, j],
                        "no generic point with nonvanishing restrictions",
                    )))
                }
                Err(e) => return Err(e),
            };
            tally(&out, report);
            if let IdentityOutcome::Fails(c) = out {
                let names = f.names();
                return Ok(Decomposition::NotSpecial(
                    FailureWitness::new(
                        Stage::SeparabilityTest,
                        vec![i, j],
                        format!("d{}f/d{}f does not split into univariate factors", names[i], names[j]),
                    )
                    .with_certificate(c),
                ));
            }
        }
    }

    let rs = match extract_from(&partials, &mut points)? {
        Ok(rs) => rs,
        Err(ExtractFailure::Degenerate) => {
            return Ok(Decomposition::NotSpecial(FailureWitness::new(
                Stage::DESystem,
                vec![],
                "no generic point for extracting r",
            )))
        }
        Err(ExtractFailure::Unverified { pair, certificate }) => {
            return Ok(Decomposition::NotSpecial(
                FailureWitness::new(
                    Stage::DESystem,
                    vec![pair.0, pair.1],
                    "extracted r does not satisfy the differential system",
                )
                .with_certificate(certificate),
            ))
        }
    };
    report.exact_checks += 1;
    if !rs.scaling_note.is_empty() {
        report.notes.push(rs.scaling_note.clone());
    }
    report.r_system = Some(rs.clone());

    let decomposition = match classify(&rs) {
        Ok(Candidate::Additive) => decompose_additive(f, &rs, &mut points)?,
        Ok(Candidate::Multiplicative) => decompose_multiplicative(f, &rs, &mut points)?,
        Err(w) => Decomposition::NotSpecial(w),
    };
    if !matches!(decomposition, Decomposition::NotSpecial(_)) {
        report.exact_checks += 1;
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, UniPoly};
    use crate::special::{Certificate, Kind};

    fn p(text: &str, vars: &[&str]) -> MultiPoly {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse(text, &names).unwrap()
    }

    #[test]
    fn remark_example() {
        let f = p("x*y + z", &["x", "y", "z"]);
        let d = analyze(&f).unwrap();
        let w = d.witness().unwrap();
        assert_eq!(w.stage, Stage::IndependenceTest);
        assert_eq!(w.indices, vec![0, 2, 1]);
        assert!(matches!(&w.certificate, Some(Certificate::Polynomial(c)) if !c.is_zero()));
        assert!(w.recheck());
    }

    #[test]
    fn sum_of_variables() {
        let d = analyze(&p("x + y + z", &["x", "y", "z"])).unwrap();
        assert_eq!(
            d,
            Decomposition::Additive {
                h: UniPoly::x(),
                p: vec![UniPoly::x(); 3]
            }
        );
    }

    #[test]
    fn bivariate_specialization() {
        let f = p("x*y + 5", &["x", "y"]);
        let report = analyze_with(&f, &AnalysisConfig::default()).unwrap();
        assert_eq!(
            report.decomposition,
            Decomposition::Multiplicative {
                h: UniPoly::from_ints(&[5, 1]),
                p: vec![UniPoly::x(); 2]
            }
        );
        assert!(report.notes[0].contains("bivariate"));
    }

    #[test]
    fn missing_variable_and_univariate() {
        let f = p("x + y", &["x", "y", "z"]);
        let d = analyze(&f).unwrap();
        assert_eq!(d.witness().unwrap().stage, Stage::MissingVariable);
        assert_eq!(d.witness().unwrap().indices, vec![2]);
        assert_eq!(
            analyze(&p("x^2", &["x"])),
            Err(AnalysisError::TooFewVariables { needed: 2, got: 1 })
        );
    }

    #[test]
    fn separability_failure_in_two_variables() {
        let d = analyze(&p("x^2*y + x + y^3", &["x", "y"])).unwrap();
        assert_eq!(d.witness().unwrap().stage, Stage::SeparabilityTest);
    }

    #[test]
    fn seeds_agree_on_kind() {
        let f = p("(x^2 + 1)*(y - 3)*(z^3 + z)*2 - 4", &["x", "y", "z"]);
        for seed in 0..5 {
            let config = AnalysisConfig {
                seed,
                ..AnalysisConfig::default()
            };
            let report = analyze_with(&f, &config).unwrap();
            assert_eq!(report.decomposition.kind(), Kind::Multiplicative);
            assert_eq!(report.decomposition.recompose(f.names()).unwrap(), f);
        }
    }
}
