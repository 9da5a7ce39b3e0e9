//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every random draw goes through `corpus::trial_rng`
//! with the seeds below, so the whole run is reproducible.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use bimatroid::bimatroid::{validate_horizontal_rectangle_axioms, validate_rectangle_axioms, Orientation};
use bimatroid::corpus::{self, trial_rng, FieldChoice};
use bimatroid::exactnum::{int, Matrix, Rational, Rationals};
use bimatroid::lorentzian::{self, bivariate_ulc_equivalence};
use bimatroid::matroid::default_labels;
use bimatroid::polynomial::{self, MultiPoly};
use bimatroid::product::{cauchy_binet_check, check_category_laws, frenk_extended, product};
use bimatroid::schema::{from_json_str, to_json_string, BimatroidJson};
use bimatroid::verify::{self, RandomParams, TheoremId, TheoremReport};
use bimatroid::{construct, Bimatroid, FieldMatrix, Matroid, MatroidMorphism, SetMap};
use rand::Rng;

const CORPUS_SEED: u64 = 1_000;
const RELATION_SEED: u64 = 2_000;
const MORPHISM_SEED: u64 = 3_000;
const PRODUCT_SEED: u64 = 4_000;
const MATRIX_PRODUCT_SEED: u64 = 5_000;
const CAUCHY_BINET_SEED: u64 = 6_000;
const SEQUENCE_SEED: u64 = 7_000;
const WEAK_SEED: u64 = 8_000;
const DETERMINISM_SEED: u64 = 9_000;

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, summary }
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Outcome { passed: false, summary: format!("{summary}; {} failures, first: {}", failures.len(), shown.join(" | ")) }
    }
}

/// The bimatroid corpus shared by criteria 1 to 3.
fn bimatroid_corpus() -> Vec<(String, Bimatroid)> {
    let mut out = Vec::new();
    for i in 0..200 {
        let (_, b) = corpus::random_matrix_bimatroid(&mut trial_rng(CORPUS_SEED, i), 5, 5, FieldChoice::Fp).unwrap();
        out.push((format!("matrix #{i}"), b));
    }
    out.extend(corpus::catalog_bimatroids());
    for i in 0..50 {
        let (pairs, m, n) = corpus::random_relation(&mut trial_rng(RELATION_SEED, i), 4, 4);
        let b = construct::from_relation(&pairs, default_labels("e", m), default_labels("f", n)).unwrap();
        out.push((format!("relation #{i}"), b));
    }
    out
}

fn morphism_corpus() -> Vec<MatroidMorphism> {
    (0..100).map(|i| corpus::random_realizable_morphism(&mut trial_rng(MORPHISM_SEED, i), 6, 3).unwrap()).collect()
}

fn property_holds(report: &TheoremReport, name: &str) -> bool {
    report.properties.iter().any(|p| p.name == name && p.holds)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let corpus = bimatroid_corpus();
    let mut failures = Vec::new();
    for (name, b) in &corpus {
        let mut fail = |what: &str| failures.push(format!("{name}: {what}"));
        if b.validate().is_err() {
            fail("minor axioms");
        }
        if b.validate_via_extended().is_err() {
            fail("extended-matroid axioms");
        }
        let table = b.rank_table();
        if table.validate().is_err() {
            fail("rank axioms");
        }
        let vertical = b.regular_rectangles(Orientation::Vertical);
        if validate_rectangle_axioms(b.m(), b.n(), &vertical).is_err() {
            fail("vertical rectangle axioms");
        }
        if validate_horizontal_rectangle_axioms(b.m(), b.n(), &b.regular_rectangles(Orientation::Horizontal)).is_err() {
            fail("horizontal rectangle axioms");
        }
        if Bimatroid::from_extended_matroid(&b.extended_matroid(), b.row_mask()).as_ref() != Ok(b) {
            fail("extended round trip");
        }
        if table.to_bimatroid(b.rows().to_vec(), b.cols().to_vec()).as_ref() != Ok(b) {
            fail("rank-table round trip");
        }
        if table != b.rank_table_via_extended() {
            fail("rank table from minors differs from rank table via extended matroid");
        }
        if Bimatroid::from_vertical_rectangles(b.rows().to_vec(), b.cols().to_vec(), &vertical).as_ref() != Ok(b) {
            fail("rectangle round trip");
        }
        let json = to_json_string(&BimatroidJson::from_bimatroid(b));
        if from_json_str::<BimatroidJson>(&json).and_then(|j| j.to_bimatroid()).as_ref() != Ok(b) {
            fail("JSON round trip");
        }
        if b.laplace_property().is_err() {
            fail("Laplace expansion");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        failures.push(format!("took {secs:.1} s, limit 30 s"));
    }
    outcome(&failures, format!("{} bimatroids, 4 views, 5 validators, Laplace; {secs:.2} s", corpus.len()))
}

fn criterion_2() -> Outcome {
    let corpus = bimatroid_corpus();
    let mut failures = Vec::new();
    for (name, b) in &corpus {
        let report = verify::check_theorem_a(b).unwrap();
        if !report.verdict {
            failures.push(format!("{name}: verdict false"));
        }
        if !property_holds(&report, "counts_match_polynomial_collapse") {
            failures.push(format!("{name}: direct count and polynomial collapse disagree"));
        }
    }
    outcome(&failures, format!("{} instances, ULC with normalization m∧n and cross-path agreement", corpus.len()))
}

fn criterion_3() -> Outcome {
    let corpus = bimatroid_corpus();
    let mut failures = Vec::new();
    let mut inequalities = 0;
    for (name, b) in &corpus {
        let report = verify::check_theorem_b(b).unwrap();
        inequalities += report.checks.len();
        if !report.verdict {
            failures.push(format!("{name}: verdict false"));
        }
        for orientation in ["RR_vertical", "RR_horizontal"] {
            if !report.checks.iter().any(|c| c.sequence.as_deref() == Some(orientation)) {
                failures.push(format!("{name}: no {orientation} inequalities"));
            }
            if !property_holds(&report, &format!("counts_match_polynomial_collapse:{orientation}")) {
                failures.push(format!("{name}: {orientation} counts disagree with the polynomial pipeline"));
            }
        }
    }
    outcome(&failures, format!("{} instances, {inequalities} inequalities with N = |E|+|F|", corpus.len()))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    for (i, phi) in morphism_corpus().iter().enumerate() {
        let report = verify::check_theorem_c(phi).unwrap();
        if !report.verdict {
            failures.push(format!("morphism #{i}: {:?}", report.checks));
        }
    }
    let catalog = corpus::catalog_matroids();
    for (name, m) in &catalog {
        let report = verify::check_mason(m).unwrap();
        if !report.verdict || !property_holds(&report, "counts_match_independent_sets") {
            failures.push(format!("{name}: Mason report failed"));
        }
        let expected: Vec<Rational> = m.independent_set_counts().iter().map(|&c| int(c as i64)).collect();
        if report.sequence_values("I") != Some(expected) {
            failures.push(format!("{name}: I_k differs from independent-set counts"));
        }
    }
    let u23 = verify::check_mason(&Matroid::uniform(2, 3).unwrap()).unwrap();
    let ok = u23.sequences["I"] == ["1", "3", "3"] && u23.checks[0].lhs == "9" && u23.checks[0].rhs == "3";
    if !ok {
        failures.push("U2,3 does not give (1,3,3) with 9 >= 3".into());
    }
    outcome(&failures, format!("100 random morphisms, {} catalog matroids to U0,1, U2,3 gives (1,3,3) with 9 >= 3", catalog.len()))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut alarms = 0;
    for (i, phi) in morphism_corpus().iter().enumerate() {
        match phi.tilde_matroid() {
            Ok(t) if t.validate_bases().is_ok() => {}
            other => failures.push(format!("morphism #{i}: padded matroid invalid: {other:?}")),
        }
        let report = verify::check_theorem_c_pipeline(phi).unwrap();
        if report.is_alarm() {
            alarms += 1;
        }
        for name in ["tilde_exchange", "q_collapse_coefficients", "q_collapse_is_weak_polynomial", "weighted_match_bivariate_collapse"] {
            if !property_holds(&report, name) {
                failures.push(format!("morphism #{i}: {name}"));
            }
        }
        if report.checks.iter().any(|c| !c.holds) {
            failures.push(format!("morphism #{i}: weighted sequence not ULC with s = r"));
        }
    }
    if alarms > 0 {
        failures.push(format!("{alarms} alarms"));
    }
    outcome(&failures, "100 morphisms: exchange, Q-collapse C(r,|T|), ULC of C(r,k)B_k with s = r; 0 alarms".into())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..50 {
        let mut rng = trial_rng(PRODUCT_SEED, i);
        let sizes: Vec<usize> = (0..4).map(|_| rng.random_range(1..=3)).collect();
        let a = corpus::random_relation_bimatroid_on(&mut rng, sizes[0], "e", sizes[1], "f").unwrap();
        let b = corpus::random_relation_bimatroid_on(&mut rng, sizes[1], "f", sizes[2], "g").unwrap();
        let c = corpus::random_relation_bimatroid_on(&mut rng, sizes[2], "g", sizes[3], "h").unwrap();
        let laws = check_category_laws(&a, &b, &c).unwrap();
        if !laws.all_hold() {
            failures.push(format!("relation triple #{i}: {laws:?}"));
        }
        if frenk_extended(&a, &b).unwrap() != product(&a, &b).unwrap().extended_matroid() {
            failures.push(format!("relation pair #{i}: union-contraction formula"));
        }
    }
    for i in 0..20 {
        let mut rng = trial_rng(MATRIX_PRODUCT_SEED, i);
        let sizes: Vec<usize> = (0..4).map(|_| rng.random_range(1..=3)).collect();
        let mut next = |k: usize, p: &str, q: &str| {
            let a = corpus::random_matrix(&mut rng, sizes[k], sizes[k + 1], FieldChoice::Fp);
            construct::from_matrix_labeled(&a, default_labels(p, sizes[k]), default_labels(q, sizes[k + 1])).unwrap()
        };
        let (a, b, c) = (next(0, "e", "f"), next(1, "f", "g"), next(2, "g", "h"));
        let laws = check_category_laws(&a, &b, &c).unwrap();
        if !laws.all_hold() {
            failures.push(format!("matrix triple #{i}: {laws:?}"));
        }
    }
    outcome(&failures, "50 relation triples and 20 matrix triples: associativity, units, dagger; 50 union-contraction pairs".into())
}

fn q(rows: &[Vec<i64>]) -> FieldMatrix {
    Matrix::from_i64_rows(Rationals, rows).unwrap().into()
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut equal = 0;
    for i in 0..200 {
        let mut rng = trial_rng(CAUCHY_BINET_SEED, i);
        let a = corpus::random_uniform_matrix(&mut rng, 4, 4, FieldChoice::Fp);
        let b = corpus::random_uniform_matrix(&mut rng, 4, 4, FieldChoice::Fp);
        let report = cauchy_binet_check(&a, &b).unwrap();
        if !report.inclusion {
            failures.push(format!("pair #{i}: inclusion fails"));
        }
        equal += report.equality as usize;
    }
    let rate = equal as f64 / 200.0;
    if rate < 0.95 {
        failures.push(format!("equality rate {rate:.3} < 0.95"));
    }
    // The product that cancels is the 1×2 row (1, 1) times the 2×1 column
    // (1, −1). The 2×1 by 1×2 reading of the same entries is an outer
    // product of rank one, whose 1×1 minors all survive, so equality holds
    // there.
    let cancelling = cauchy_binet_check(&q(&[vec![1, 1]]), &q(&[vec![1], vec![-1]])).unwrap();
    if !cancelling.inclusion || cancelling.equality {
        failures.push(format!("cancellation fixture reported {cancelling:?}"));
    }
    let outer = cauchy_binet_check(&q(&[vec![1], vec![1]]), &q(&[vec![1, -1]])).unwrap();
    if !outer.inclusion || !outer.equality {
        failures.push(format!("outer-product reading reported {outer:?}"));
    }
    outcome(
        &failures,
        format!(
            "inclusion 200/200, equality {equal}/200 ({:.1}%); (1 1)·(1 −1)ᵀ reports equality = {}",
            rate * 100.0,
            cancelling.equality
        ),
    )
}

fn poly(terms: &[(u32, u32, i64)]) -> MultiPoly {
    MultiPoly::from_terms(vec!["x".into(), "y".into()], terms.iter().map(|&(a, b, c)| (vec![a, b], int(c)))).unwrap()
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let fixtures = [
        ("x²+4xy+y²", poly(&[(2, 0, 1), (1, 1, 4), (0, 2, 1)]), true, true),
        ("xy", poly(&[(1, 1, 1)]), false, true),
        ("x²+y²", poly(&[(2, 0, 1), (0, 2, 1)]), false, false),
    ];
    for (name, p, strict, lor) in &fixtures {
        let c = lorentzian::classify(p).unwrap();
        if (c.strict, c.lorentzian) != (*strict, *lor) {
            failures.push(format!("{name}: strict {} lorentzian {}", c.strict, c.lorentzian));
        }
    }
    let catalog = corpus::catalog_matroids();
    for (name, m) in &catalog {
        if !lorentzian::is_lorentzian(&polynomial::basis_generating_poly(m).unwrap()).unwrap() {
            failures.push(format!("{name}: basis generating polynomial not Lorentzian"));
        }
    }
    let (mut lorentzian_count, mut disagreements) = (0, 0);
    for i in 0..500 {
        let mut rng = trial_rng(SEQUENCE_SEED, i);
        let len = rng.random_range(1..=8usize);
        let seq: Vec<Rational> = if rng.random_bool(0.5) {
            // coefficients of a product of linear forms x + a y: real-rooted
            let mut coeffs = vec![int(1)];
            for _ in 1..len {
                let a = int(rng.random_range(0..=3));
                let mut next = vec![int(0); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] += c * &a;
                }
                coeffs = next;
            }
            coeffs
        } else {
            (0..len).map(|_| if rng.random_bool(0.25) { int(0) } else { int(rng.random_range(1..=20)) }).collect()
        };
        match bivariate_ulc_equivalence(&seq, len - 1) {
            Ok(true) => lorentzian_count += 1,
            Ok(false) => {}
            Err(e) => {
                disagreements += 1;
                failures.push(format!("sequence #{i}: {e}"));
            }
        }
    }
    outcome(
        &failures,
        format!(
            "3 fixtures, {} catalog basis polynomials, 500 sequences ({lorentzian_count} Lorentzian, {disagreements} path disagreements)",
            catalog.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut reports = 0;
    for i in 0..50 {
        let phi = corpus::random_realizable_morphism(&mut trial_rng(WEAK_SEED, i), 5, 3).unwrap();
        for alpha in [phi.nullity(), phi.source().rank()] {
            let report = verify::check_weak_basis_poly_lorentzian(&phi, alpha).unwrap();
            reports += 1;
            if report.skipped.is_some() || !report.verdict {
                failures.push(format!("morphism #{i}, α = {alpha}: skipped {:?}, verdict {}", report.skipped, report.verdict));
            }
        }
    }
    // U2,3 → U1,1 collapsing everything to one point has nullity 1
    let source = Matroid::uniform(2, 3).unwrap();
    let target = Matroid::uniform_on(1, vec!["g0".into()]).unwrap();
    let map = SetMap::new(source.ground().to_vec(), target.ground().to_vec(), vec![0; 3]).unwrap();
    let phi = MatroidMorphism::new(source, target, map).unwrap();
    let p = polynomial::weak_basis_poly(&phi, phi.nullity()).unwrap();
    let w0: std::collections::BTreeSet<u32> = p.terms().keys().map(|e| e[0]).collect();
    if phi.nullity() != 1 || w0 != [0, 1].into() {
        failures.push(format!("nullity {} fixture has w0-degree support {w0:?}", phi.nullity()));
    }
    let r = phi.source().rank();
    if phi.basis_counts().iter().enumerate().any(|(k, &c)| c > 0 && k + 1 < r) {
        failures.push("B_k nonempty below rk M − 1".into());
    }
    outcome(&failures, format!("{reports} weak polynomials Lorentzian, none skipped; nullity-1 fixture has w0-degrees {{0,1}}"))
}

fn criterion_10(total_start: Instant) -> Outcome {
    let mut failures = Vec::new();
    let params = RandomParams::default();
    for theorem in TheoremId::ALL {
        for i in 0..10 {
            let run = || serde_json::to_string(&verify::random_trial(theorem, DETERMINISM_SEED, i, &params).unwrap()).unwrap();
            if run() != run() {
                failures.push(format!("{theorem} trial {i} not reproducible"));
            }
        }
    }
    let serialize = || {
        bimatroid_corpus().iter().map(|(_, b)| to_json_string(&BimatroidJson::from_bimatroid(b))).collect::<Vec<_>>()
    };
    if serialize() != serialize() {
        failures.push("corpus regeneration differs".into());
    }
    let secs = total_start.elapsed().as_secs_f64();
    if secs >= 300.0 {
        failures.push(format!("suite took {secs:.1} s, limit 300 s"));
    }
    outcome(&failures, format!("60 seeded reports and the corpus reproduce byte for byte; suite ran in {secs:.1} s"))
}

fn main() -> ExitCode {
    let total_start = Instant::now();
    let criteria: [(&str, &dyn Fn() -> Outcome); 10] = [
        ("cryptomorphism suite", &criterion_1),
        ("regular-minor ULC", &criterion_2),
        ("regular-rectangle ULC", &criterion_3),
        ("morphism bases and Mason", &criterion_4),
        ("padded matroid pipeline", &criterion_5),
        ("product laws", &criterion_6),
        ("Cauchy-Binet", &criterion_7),
        ("Lorentzian engine", &criterion_8),
        ("weak basis polynomials", &criterion_9),
        ("determinism and runtime", &|| criterion_10(total_start)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Outcome { passed: false, summary: "panicked".into() });
        let status = if result.passed { "PASS" } else { "FAIL" };
        failed += !result.passed as usize;
        println!(
            "criterion {:>2} [{status}] {name}: {} ({:.2} s)",
            i + 1,
            result.summary,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
