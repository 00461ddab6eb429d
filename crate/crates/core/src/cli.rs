//! Command-line front end. [`run`] maps an argument vector to an exit code
//! and the text to print, so it can be tested without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::harness::{
    growth_scan, ExpansionReport, ExpansionReportJson, Family, HarnessError, ScanConfig,
    DEFAULT_BUDGET,
};
use crate::poly::{format_ratio, infer_var_names, parse, parse_ratio, MultiPoly, PolyJson};
use crate::special::{analyze_with, g_coefficients, AnalysisConfig, DecompositionJson, Kind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "erpoly", version, about = "Special-form analysis and image growth of rational polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether f = h(p_1 + ... + p_d) or h(p_1 * ... * p_d).
    Analyze(AnalyzeArgs),
    /// Measure |f(A_1 x ... x A_d)| over growing sets and fit an exponent.
    Expand(ExpandArgs),
    /// Coefficients of the derivative-ratio polynomial for a triple, as
    /// polynomials in the remaining variables.
    Variety(VarietyArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Polynomial, e.g. "x*y + z" or "3/2*x1^2 - x2".
    #[arg(allow_hyphen_values = true)]
    polynomial: String,
    /// Comma-separated variable names in slot order (default x1..xd).
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, env = "ERPOLY_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[command(flatten)]
    common: Common,
    /// Set sizes, strictly increasing.
    #[arg(long = "n", value_delimiter = ',', default_value = "8,16,32,64")]
    n: Vec<usize>,
    /// ap[:start:step], gp[:start:ratio] or random[:lo:hi]; once for all
    /// coordinates or once per coordinate.
    #[arg(long)]
    family: Vec<String>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Largest allowed n_max^d.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Also write `n,image_size,elapsed_ms` rows to this file.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Debug, Args)]
struct VarietyArgs {
    #[command(flatten)]
    common: Common,
    /// Three distinct variables, by name or 1-based position.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    triple: Vec<String>,
}

/// Exit code with what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Analyze(a) => analyze_cmd(a),
        Command::Expand(a) => expand_cmd(a),
        Command::Variety(a) => variety_cmd(a),
    }
}

fn read_poly(c: &Common) -> Result<MultiPoly, Outcome> {
    let names = match &c.vars {
        Some(v) => v.iter().map(|s| s.trim().to_string()).collect(),
        None => infer_var_names(&c.polynomial).map_err(|e| {
            let mut out = parse_failure(&c.polynomial, &e);
            if matches!(e, crate::poly::PolyError::UnknownVariable { .. }) {
                out.stderr.push_str("hint: without --vars the variables must be x1, x2, ...\n");
            }
            out
        })?,
    };
    if let Some(dup) = names.iter().enumerate().find(|(i, n)| names[..*i].contains(n)) {
        return Err(Outcome::fail(EXIT_USAGE, format!("--vars: duplicate variable `{}`", dup.1)));
    }
    if names.iter().any(|n: &String| n.is_empty()) {
        return Err(Outcome::fail(EXIT_USAGE, "--vars: empty variable name"));
    }
    parse(&c.polynomial, &names).map_err(|e| parse_failure(&c.polynomial, &e))
}

fn parse_failure(text: &str, e: &crate::poly::PolyError) -> Outcome {
    Outcome::fail(EXIT_USAGE, format!("error: cannot read polynomial `{text}`: {e}"))
}

/// Invocation with every effective flag spelled out.
#[derive(Debug, Clone, Serialize)]
struct Reproducibility {
    command: String,
    seed: u64,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn base_invocation(cmd: &str, c: &Common, f: &MultiPoly) -> String {
    let mut s = format!("erpoly {cmd} {} --vars {}", quote(&c.polynomial), f.names().join(","));
    if c.json {
        s.push_str(" --json");
    }
    let _ = write!(s, " --seed {}", c.seed);
    s
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        s
    } else {
        text()
    }
}

#[derive(Debug, Serialize)]
struct RJson {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Debug, Serialize)]
struct EvidenceJson {
    exact: usize,
    screened: usize,
}

#[derive(Debug, Serialize)]
struct AnalyzeJson {
    command: &'static str,
    polynomial: String,
    vars: Vec<String>,
    decomposition: DecompositionJson,
    r: Option<Vec<RJson>>,
    evidence: EvidenceJson,
    notes: Vec<String>,
    reproducibility: Reproducibility,
}

fn analyze_cmd(a: AnalyzeArgs) -> Outcome {
    let f = match read_poly(&a.common) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let config = AnalysisConfig {
        seed: a.common.seed,
        ..AnalysisConfig::default()
    };
    let report = match analyze_with(&f, &config) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let coeffs = |u: &crate::poly::UniPoly| u.coeffs().iter().map(format_ratio).collect();
    let out = AnalyzeJson {
        command: "analyze",
        polynomial: f.to_string(),
        vars: f.names().to_vec(),
        decomposition: report.decomposition.to_json(f.names()),
        r: report.r_system.as_ref().map(|rs| {
            rs.r.iter()
                .map(|r| RJson {
                    num: coeffs(r.num()),
                    den: coeffs(r.den()),
                })
                .collect()
        }),
        evidence: EvidenceJson {
            exact: report.exact_checks,
            screened: report.screened_checks,
        },
        notes: report.notes.clone(),
        reproducibility: Reproducibility {
            command: base_invocation("analyze", &a.common, &f),
            seed: a.common.seed,
        },
    };
    let rendered = report.decomposition.render(f.names());
    Outcome::ok(emit(a.common.json, &out, || render_analyze(&out, &rendered)))
}

fn render_analyze(out: &AnalyzeJson, rendered: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f = {}", out.polynomial);
    let _ = writeln!(s, "kind: {}", out.decomposition.kind);
    let _ = writeln!(s, "{rendered}");
    if let Some(w) = &out.decomposition.witness {
        if let Some(c) = &w.certificate {
            let p = MultiPoly::try_from(c).expect("certificate round-trips");
            let _ = writeln!(s, "certificate (over {}): {p}", c.vars.join(", "));
        }
        if let Some(e) = &w.evaluation {
            let _ = writeln!(
                s,
                "certificate: value {} mod {} at {:?}",
                e.value, e.modulus, e.point
            );
        }
    }
    if out.decomposition.kind != Kind::NotSpecial {
        let _ = writeln!(s, "recomposition verified exactly");
    }
    if let Some(r) = &out.r {
        let parts: Vec<String> = r
            .iter()
            .zip(&out.vars)
            .map(|(r, v)| {
                let num = poly_text(&r.num, v);
                if r.den.len() == 1 {
                    format!("r_{v} = {num}")
                } else {
                    format!("r_{v} = ({num})/({})", poly_text(&r.den, v))
                }
            })
            .collect();
        let _ = writeln!(s, "{}", parts.join(", "));
    }
    let _ = writeln!(
        s,
        "identity checks: {} exact, {} screened",
        out.evidence.exact, out.evidence.screened
    );
    for n in &out.notes {
        let _ = writeln!(s, "note: {n}");
    }
    reproducibility_text(&mut s, &out.reproducibility);
    s
}

fn poly_text(coeffs: &[String], var: &str) -> String {
    let c: Vec<_> = coeffs.iter().map(|c| parse_ratio(c).expect("formatted ratio")).collect();
    crate::poly::UniPoly::new(c).display_in(var)
}

fn reproducibility_text(s: &mut String, r: &Reproducibility) {
    let _ = writeln!(s, "--");
    let _ = writeln!(s, "reproduce: {}", r.command);
}

fn parse_family(text: &str) -> Result<Family, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let ratio = |s: &str| parse_ratio(s).ok_or_else(|| format!("--family: bad number `{s}` in `{text}`"));
    match (parts[0], parts.len()) {
        ("ap", 1) => Ok(Family::ap()),
        ("ap", 3) => Ok(Family::Ap {
            start: ratio(parts[1])?,
            step: ratio(parts[2])?,
        }),
        ("gp", 1) => Ok(Family::gp()),
        ("gp", 3) => Ok(Family::Gp {
            start: ratio(parts[1])?,
            ratio: ratio(parts[2])?,
        }),
        ("random", 1) => Ok(Family::random()),
        ("random", 3) => {
            let int = |s: &str| s.parse::<i64>().map_err(|_| format!("--family: bad integer `{s}` in `{text}`"));
            Ok(Family::RandomInt {
                range: Some((int(parts[1])?, int(parts[2])?)),
            })
        }
        _ => Err(format!(
            "--family: expected ap[:start:step], gp[:start:ratio] or random[:lo:hi], got `{text}`"
        )),
    }
}

#[derive(Debug, Serialize)]
struct ExpandJson {
    command: &'static str,
    report: ExpansionReportJson,
    reproducibility: Reproducibility,
}

fn expand_cmd(a: ExpandArgs) -> Outcome {
    let f = match read_poly(&a.common) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let specs = if a.family.is_empty() { vec!["ap".to_string()] } else { a.family.clone() };
    let families = match specs.iter().map(|s| parse_family(s)).collect::<Result<Vec<_>, _>>() {
        Ok(v) => v,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let config = ScanConfig {
        families,
        n_grid: a.n.clone(),
        seed: a.common.seed,
        trials: a.trials,
        budget: a.budget,
    };
    let report = match growth_scan(&f, &config) {
        Ok(r) => r,
        Err(e @ HarnessError::BudgetExceeded { .. }) => {
            return Outcome::fail(EXIT_BUDGET, format!("error: {e} (raise --budget)"))
        }
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    if let Some(path) = &a.csv {
        if let Err(e) = std::fs::write(path, report.to_csv()) {
            return Outcome::fail(EXIT_USAGE, format!("error: --csv {path}: {e}"));
        }
    }
    let mut command = base_invocation("expand", &a.common, &f);
    let grid: Vec<String> = a.n.iter().map(ToString::to_string).collect();
    let _ = write!(command, " --n {}", grid.join(","));
    for fam in &specs {
        let _ = write!(command, " --family {fam}");
    }
    let _ = write!(command, " --trials {} --budget {}", a.trials, a.budget);
    if let Some(path) = &a.csv {
        let _ = write!(command, " --csv {}", quote(path));
    }
    let out = ExpandJson {
        command: "expand",
        report: report.to_json(),
        reproducibility: Reproducibility {
            command,
            seed: a.common.seed,
        },
    };
    Outcome::ok(emit(a.common.json, &out, || render_expand(&out, &report)))
}

fn render_expand(out: &ExpandJson, report: &ExpansionReport) -> String {
    let r = &out.report;
    let mut s = String::new();
    let _ = writeln!(s, "f = {}", r.polynomial);
    let _ = writeln!(s, "families: {}", r.families.join(", "));
    let _ = writeln!(s, "{:>8} {:>14} {:>12}", "n", "image_size", "elapsed_ms");
    for row in &report.rows {
        let _ = writeln!(s, "{:>8} {:>14} {:>12.3}", row.n, row.image_size, row.elapsed_ms);
    }
    let _ = writeln!(
        s,
        "fitted exponent: {} (rms residual {}, {} trials, median)",
        r.fitted_exponent, r.fit_residual, r.trials
    );
    reproducibility_text(&mut s, &out.reproducibility);
    s
}

#[derive(Debug, Serialize)]
struct GeneratorJson {
    /// Exponents of `(x_i, x_i', x_j, x_k)`.
    monomial: [u32; 4],
    coefficient: PolyJson,
}

#[derive(Debug, Serialize)]
struct VarietyJson {
    command: &'static str,
    polynomial: String,
    vars: Vec<String>,
    triple: Vec<String>,
    parameters: Vec<String>,
    identically_zero: bool,
    generators: Vec<GeneratorJson>,
    reproducibility: Reproducibility,
}

fn resolve_var(names: &[String], key: &str) -> Option<usize> {
    let key = key.trim();
    names
        .iter()
        .position(|n| n == key)
        .or_else(|| key.parse::<usize>().ok().filter(|&k| k >= 1 && k <= names.len()).map(|k| k - 1))
}

fn variety_cmd(a: VarietyArgs) -> Outcome {
    let f = match read_poly(&a.common) {
        Ok(f) => f,
        Err(o) => return o,
    };
    if a.triple.len() != 3 {
        return Outcome::fail(EXIT_USAGE, "error: --triple needs exactly three variables, e.g. --triple x,y,z");
    }
    let mut idx = [0usize; 3];
    for (slot, key) in idx.iter_mut().zip(&a.triple) {
        match resolve_var(f.names(), key) {
            Some(i) => *slot = i,
            None => return Outcome::fail(EXIT_USAGE, format!("error: --triple: unknown variable `{key}`")),
        }
    }
    let report = match g_coefficients(&f, (idx[0], idx[1], idx[2])) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let names = f.names();
    let mut command = base_invocation("variety", &a.common, &f);
    let triple: Vec<String> = idx.iter().map(|&i| names[i].clone()).collect();
    let _ = write!(command, " --triple {}", triple.join(","));
    let out = VarietyJson {
        command: "variety",
        polynomial: f.to_string(),
        vars: names.to_vec(),
        triple,
        parameters: report.parameters.iter().map(|&i| names[i].clone()).collect(),
        identically_zero: report.identically_zero,
        generators: report
            .generators
            .iter()
            .map(|(m, c)| GeneratorJson {
                monomial: *m,
                coefficient: PolyJson::from(c),
            })
            .collect(),
        reproducibility: Reproducibility {
            command,
            seed: a.common.seed,
        },
    };
    Outcome::ok(emit(a.common.json, &out, || render_variety(&out, &report)))
}

fn render_variety(out: &VarietyJson, report: &crate::special::VarietyReport) -> String {
    let mut s = String::new();
    let [x, y, z] = [&out.triple[0], &out.triple[1], &out.triple[2]];
    let _ = writeln!(s, "f = {}", out.polynomial);
    let _ = writeln!(s, "triple: ({x}, {y}, {z}), parameters: {}", out.parameters.join(", "));
    if out.identically_zero {
        let _ = writeln!(s, "G is identically zero: d{y}f/d{z}f never depends on {x}");
    } else {
        let _ = writeln!(s, "{} nonzero coefficients of G in ({x}, {x}', {y}, {z}):", report.generators.len());
        for (m, c) in &report.generators {
            let _ = writeln!(s, "  {:?}: {c}", m);
        }
    }
    reproducibility_text(&mut s, &out.reproducibility);
    s
}
