//! Acceptance criteria, run sequentially in one test so the timings are not
//! distorted by other tests sharing the core. Each criterion prints one
//! `PASS`/`FAIL` line; the test fails if any criterion does.

mod common;

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use erpoly::harness::{gen_set, growth_scan, image_size, Family, FiniteSet, ScanConfig, DEFAULT_BUDGET};
use erpoly::poly::{parse, uni_reduce, MultiPoly, Rational, UniPoly};
use erpoly::special::{
    analyze, analyze_with, divisors, g_coefficients, ratio_independent_of, solve_log_derivative, verify_de,
    AnalysisConfig, Decomposition, Kind, Stage,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{names, random_special, rat, Shape};

const REMARK_LIMIT: Duration = Duration::from_secs(1);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(60);
const EXPANSION_LIMIT: Duration = Duration::from_secs(30);
const RANDOM_EXPONENT_MIN: f64 = 1.30;
const STRUCTURED_EXPONENT_MAX: f64 = 1.05;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: u32, title: &str, out: &Outcome) -> bool {
    let tag = if out.pass { "PASS" } else { "FAIL" };
    // Straight to the stdout handle so the line shows without --nocapture.
    let line = format!("[{tag}] criterion {id}: {title}: {}\n", out.detail);
    let _ = std::io::stdout().write_all(line.as_bytes());
    out.pass
}

fn p(text: &str, vars: &[&str]) -> MultiPoly {
    parse(text, &names(vars)).unwrap()
}

fn verified(d: &Decomposition, f: &MultiPoly) -> bool {
    d.recompose(f.names()).as_ref() == Some(f)
}

fn remark() -> Outcome {
    let start = Instant::now();
    let f = p("x*y + z", &["x", "y", "z"]);
    let d = analyze(&f).unwrap();
    let w = d.witness().cloned();
    let not_special = matches!(&w, Some(w) if w.stage == Stage::IndependenceTest && w.certificate.is_some() && w.recheck());
    // Fixing one variable leaves a bivariate special form.
    let cases = [
        ("5*x + z", ["x", "z"], Kind::Additive),
        ("-3*y + z", ["y", "z"], Kind::Additive),
        ("x*y + 7", ["x", "y"], Kind::Multiplicative),
    ];
    let mut special = 0;
    for (text, vars, kind) in cases {
        let g = p(text, &vars);
        let dg = analyze(&g).unwrap();
        if dg.kind() == kind && verified(&dg, &g) {
            special += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: not_special && special == 3 && elapsed < REMARK_LIMIT,
        detail: format!(
            "xy+z not special with valid certificate: {not_special}, {special}/3 specializations special, {elapsed:.2?} (limit {REMARK_LIMIT:?})"
        ),
    }
}

fn round_trip() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut analyze_time = Duration::ZERO;
    let (mut good, mut de_good) = (0, 0);
    let mut failures = Vec::new();
    for k in 0..200 {
        let shape = if k < 100 { Shape::Additive } else { Shape::Multiplicative };
        let inst = random_special(&mut rng, shape);
        let start = Instant::now();
        let report = analyze_with(&inst.f, &AnalysisConfig::default()).unwrap();
        analyze_time += start.elapsed();
        let expected = match shape {
            Shape::Additive => Kind::Additive,
            Shape::Multiplicative => Kind::Multiplicative,
        };
        if report.decomposition.kind() == expected && verified(&report.decomposition, &inst.f) {
            good += 1;
        } else {
            failures.push(k);
        }
        if let Some(rs) = &report.r_system {
            if verify_de(&inst.f, rs).unwrap().holds() {
                de_good += 1;
            }
        }
    }
    (
        Outcome {
            pass: good == 200 && analyze_time < ROUND_TRIP_LIMIT,
            detail: format!(
                "{good}/200 correct kind with exact recomposition, analysis {analyze_time:.2?} (limit {ROUND_TRIP_LIMIT:?}){}",
                if failures.is_empty() { String::new() } else { format!(", failed {failures:?}") }
            ),
        },
        Outcome {
            pass: de_good == 200,
            detail: format!("{de_good}/200 extracted systems verify exactly"),
        },
    )
}

fn expansion() -> Outcome {
    let start = Instant::now();
    let xyz = ["x", "y", "z"];
    let scan = |text: &str, family: Family, seed: u64| {
        growth_scan(
            &p(text, &xyz),
            &ScanConfig {
                families: vec![family],
                n_grid: vec![8, 16, 32, 64],
                seed,
                trials: 3,
                budget: DEFAULT_BUDGET,
            },
        )
        .unwrap()
    };
    let random = scan("x + y*z", Family::random(), 7);
    let sums = scan("x + y + z", Family::ap(), 7);
    let products = scan("x*y*z", Family::gp(), 7);
    let exact = |r: &erpoly::harness::ExpansionReport| r.rows.iter().all(|row| row.image_size == 3 * row.n - 2);
    let elapsed = start.elapsed();
    let pass = random.fitted_exponent >= RANDOM_EXPONENT_MIN
        && exact(&sums)
        && exact(&products)
        && sums.fitted_exponent <= STRUCTURED_EXPONENT_MAX
        && products.fitted_exponent <= STRUCTURED_EXPONENT_MAX
        && elapsed < EXPANSION_LIMIT;
    Outcome {
        pass,
        detail: format!(
            "x+yz exponent {:.6} (>= {RANDOM_EXPONENT_MIN}), x+y+z exponent {:.6} sizes 3n-2: {}, xyz exponent {:.6} sizes 3n-2: {}, {elapsed:.2?} (limit {EXPANSION_LIMIT:?})",
            random.fitted_exponent,
            sums.fitted_exponent,
            exact(&sums),
            products.fitted_exponent,
            exact(&products)
        ),
    }
}

/// Evaluates `f` at every tuple.
fn naive_image(f: &MultiPoly, sets: &[FiniteSet]) -> usize {
    let mut seen: HashSet<Rational> = HashSet::new();
    let mut tuples: Vec<Vec<Rational>> = vec![vec![]];
    for s in sets {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                s.elements.iter().map(move |a| {
                    let mut t = t.clone();
                    t.push(a.clone());
                    t
                })
            })
            .collect();
    }
    for t in tuples {
        seen.insert(f.evaluate(&t).unwrap());
    }
    seen.len()
}

fn random_poly(rng: &mut ChaCha8Rng, d: usize) -> MultiPoly {
    let names = MultiPoly::default_names(d);
    let mut f = MultiPoly::zero(&names);
    for _ in 0..rng.gen_range(1..=5) {
        let mut term = MultiPoly::constant(&names, rat(rng.gen_range(-4..=4)) / rat(rng.gen_range(1..=3)));
        for i in 0..d {
            term = &term * &MultiPoly::var(&names, i).pow(rng.gen_range(0..=2));
        }
        f = &f + &term;
    }
    f
}

fn random_small_set(rng: &mut ChaCha8Rng, n: usize) -> FiniteSet {
    match rng.gen_range(0..3) {
        0 => gen_set(&Family::Ap { start: rat(rng.gen_range(-3..=3)), step: rat(rng.gen_range(1..=2)) }, n, 0).unwrap(),
        1 => gen_set(&Family::Gp { start: rat(rng.gen_range(1..=2)), ratio: rat(-2) }, n, 0).unwrap(),
        _ => {
            let mut values = Vec::new();
            while values.len() < n {
                let v = rat(rng.gen_range(-150..=150)) / rat(rng.gen_range(1..=2));
                if !values.contains(&v) {
                    values.push(v);
                }
            }
            FiniteSet::from_values(values).unwrap()
        }
    }
}

fn oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut agree = 0;
    for _ in 0..50 {
        let d = rng.gen_range(2..=4);
        let n_max = (10_000f64).powf(1.0 / d as f64).floor() as usize;
        let f = random_poly(&mut rng, d);
        let sets: Vec<FiniteSet> = (0..d)
            .map(|_| {
                let n = rng.gen_range(1..=n_max);
                random_small_set(&mut rng, n)
            })
            .collect();
        assert!(sets.iter().map(|s| s.len()).product::<usize>() <= 10_000);
        if image_size(&f, &sets).unwrap() == naive_image(&f, &sets) {
            agree += 1;
        }
    }
    Outcome {
        pass: agree == 50,
        detail: format!("{agree}/50 instances equal the naive enumeration"),
    }
}

fn variety() -> Outcome {
    let vars = ["x", "y", "z", "u"];
    let mut ok = true;
    for text in ["(x + y + z + u)^2", "x + y + u*z"] {
        ok &= g_coefficients(&p(text, &vars), (0, 1, 2)).unwrap().identically_zero;
    }
    let f = p("x + y*z + u*x*z", &vars);
    let report = g_coefficients(&f, (0, 1, 2)).unwrap();
    ok &= !report.identically_zero;
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut agree = 0;
    for _ in 0..10 {
        let u = rat(rng.gen_range(-20..=20)) / rat(rng.gen_range(1..=9));
        let point = vec![rat(0), rat(0), rat(0), u.clone()];
        let predicted = report.vanishes_at(&point).unwrap();
        let fu = p(&format!("x + y*z + ({})*x*z", erpoly::poly::format_ratio(&u)), &["x", "y", "z"]);
        let passes = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
            .iter()
            .all(|&(i, j, k)| ratio_independent_of(&fu, i, j, k).map(|o| o.holds()).unwrap_or(false));
        if passes == predicted {
            agree += 1;
        }
    }
    Outcome {
        pass: ok && agree == 10,
        detail: format!("identically-zero cases correct: {ok}, specializations agreeing {agree}/10"),
    }
}

fn log_derivative() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut good = 0;
    for _ in 0..50 {
        let mut roots: Vec<Rational> = Vec::new();
        let mut p = UniPoly::constant(rat(rng.gen_range(1..=5)) * rat(if rng.gen_bool(0.5) { 1 } else { -1 }));
        let target = rng.gen_range(1..=6);
        let mut degree = 0;
        while degree < target {
            let root = rat(rng.gen_range(-9..=9)) / rat(rng.gen_range(1..=4));
            if roots.contains(&root) {
                continue;
            }
            let mult = rng.gen_range(1..=target - degree);
            p = p.mul(&UniPoly::new(vec![-root.clone(), rat(1)]).pow(mult as u32));
            roots.push(root);
            degree += mult;
        }
        let r = uni_reduce(&p.derivative(), &p).unwrap();
        let candidates: Vec<usize> = divisors(degree as u32).into_iter().map(|k| k as usize).collect();
        if let Ok(sol) = solve_log_derivative(&r, &candidates) {
            // q'/q = p'/p  <=>  q' p = p' q
            if sol.lambda == rat(1) && sol.p.derivative().mul(&p) == p.derivative().mul(&sol.p) {
                good += 1;
            }
        }
    }
    Outcome {
        pass: good == 50,
        detail: format!("{good}/50 recovered q with q'/q = p'/p and lambda = 1"),
    }
}

fn determinism() -> Outcome {
    let invocations: Vec<Vec<&str>> = vec![
        vec!["erpoly", "analyze", "x*y + z", "--vars", "x,y,z", "--json", "--seed", "11"],
        vec!["erpoly", "analyze", "(x1^2 + x2 - 3*x3)^3 + 2", "--json", "--seed", "11"],
        vec!["erpoly", "analyze", "(x1 + 1)*(x2^2 - 2)*x3*x4 - 1", "--json", "--seed", "11"],
        vec!["erpoly", "expand", "x1 + x2*x3", "--family", "random", "--n", "8,16,32", "--seed", "11", "--json"],
        vec!["erpoly", "expand", "x1*x2*x3", "--family", "gp", "--n", "8,16,32", "--json"],
        vec!["erpoly", "variety", "x + y*z + u*x*z", "--vars", "x,y,z,u", "--triple", "x,y,z", "--json"],
    ];
    let mut same = 0;
    for args in &invocations {
        let a = erpoly::cli::run(args.iter().copied());
        let b = erpoly::cli::run(args.iter().copied());
        if a.code == 0 && a.stdout == b.stdout && !a.stdout.is_empty() {
            same += 1;
        }
    }
    // Library-level reports for a round-trip instance as well.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let inst = random_special(&mut rng, Shape::Multiplicative);
    let json = |seed| {
        let r = analyze_with(&inst.f, &AnalysisConfig { seed, ..AnalysisConfig::default() }).unwrap();
        serde_json::to_string(&r.decomposition.to_json(inst.f.names())).unwrap()
    };
    let lib_same = json(5) == json(5);
    Outcome {
        pass: same == invocations.len() && lib_same,
        detail: format!("{same}/{} CLI invocations byte-identical, library report identical: {lib_same}", invocations.len()),
    }
}

#[test]
fn acceptance() {
    let mut all = true;
    all &= report(1, "remark reproduction", &remark());
    let (rt, de) = round_trip();
    all &= report(2, "round-trip suite", &rt);
    all &= report(3, "differential-system verification", &de);
    all &= report(4, "expansion dichotomy", &expansion());
    all &= report(5, "image-size oracle equivalence", &oracle());
    all &= report(6, "exceptional-variety coefficients", &variety());
    all &= report(7, "logarithmic-derivative solver", &log_derivative());
    all &= report(8, "determinism", &determinism());
    assert!(all, "some acceptance criteria failed");
}
