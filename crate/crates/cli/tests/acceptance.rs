//! The acceptance run: one line per criterion, then a single assertion.

use std::process::Command;
use std::time::{Duration, Instant};

use qc_core::completion::complete;
use qc_core::io::AnySpace;
use qc_core::quantale::{validate_value_quantale, FiniteQuantale, Law, QuantaleTables, ValueQuantale};
use qc_core::verify::{
    check_category_laws, check_universal_property, lattice_corpus, oracle_epsilon_reduction, oracle_filters,
    oracle_well_above, EpsPredicate, InstanceGenerator, OracleStatus, QuantaleChoice, VerificationReport,
};
use qc_core::verify::run_theorem_suite;
use serde_json::json;

const SEED: u64 = 42;
const QUANTALE_LIMIT: Duration = Duration::from_secs(1);
const WELL_ABOVE_LIMIT: Duration = Duration::from_secs(10);
const FILTER_ORACLE_LIMIT: Duration = Duration::from_secs(30);
const SUITE_LIMIT: Duration = Duration::from_secs(300);
const MIN_CORPUS: usize = 20;
const EPS_SPACES: usize = 50;
const EPS_SAMPLES: usize = 1000;
const EXT_RATIONAL_INSTANCES: usize = 200;
const Q3_INSTANCES: usize = 100;
const UNCONSTRAINED_INSTANCES: usize = 100;
const MAX_POINTS: usize = 5;
const UNIVERSAL_PAIRS: usize = 50;
const CATEGORY_SEEDS: usize = 50;
const Q1_INSTANCES: usize = 50;

type Verdict = Result<String, String>;

fn within(limit: Duration, start: Instant, detail: String) -> Verdict {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail}; {took:.2?} ≤ {limit:?}"))
    } else {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    }
}

fn failures(reports: &[VerificationReport]) -> Option<String> {
    reports.iter().find(|r| !r.passed()).map(|r| {
        let f = &r.failures[0];
        format!("{} failed on seed {}: {}", r.id, f.seed, f.witness)
    })
}

fn find<'a>(reports: &'a [VerificationReport], id: &str) -> Option<&'a VerificationReport> {
    reports.iter().find(|r| r.id == id)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    for (name, q) in [("q1", FiniteQuantale::q1()), ("q3", FiniteQuantale::q3()), ("chain4", FiniteQuantale::chain4())] {
        let report = validate_value_quantale(&q.tables()).map_err(|e| e.to_string())?;
        if !report.is_valid() {
            return Err(format!("{name} rejected:\n{report}"));
        }
    }
    let report = validate_value_quantale(&QuantaleTables::diamond_join()).map_err(|e| e.to_string())?;
    if report.failed_laws() != vec![Law::PositiveMeet] || report.violations[0].statement != "a∧b ≻ 0" {
        return Err(format!("diamond verdict:\n{report}"));
    }
    within(QUANTALE_LIMIT, start, "Q1, Q3, chain-4 accepted; diamond fails exactly `a∧b ≻ 0`".into())
}

fn criterion_2() -> (Verdict, VerificationReport) {
    let start = Instant::now();
    let corpus = lattice_corpus(5);
    let report = oracle_well_above(&corpus);
    let verdict = if corpus.len() < MIN_CORPUS {
        Err(format!("only {} lattices", corpus.len()))
    } else if let Some(f) = failures(std::slice::from_ref(&report)) {
        Err(f)
    } else {
        within(WELL_ABOVE_LIMIT, start, format!("{} lattices with |V| ≤ 5, all pairs agree", corpus.len()))
    };
    (verdict, report)
}

fn criterion_3() -> (Verdict, Vec<VerificationReport>) {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in 1..=3 {
        match oracle_filters(n) {
            Ok(r) => reports.extend(r),
            Err(e) => return (Err(e.to_string()), reports),
        }
    }
    let verdict = match failures(&reports) {
        Some(f) => Err(f),
        None => {
            let counts = (1..=3)
                .map(|n| find(&reports, &format!("oracle.filters.n{n}.principality")).map_or(0, |r| r.instances))
                .collect::<Vec<_>>();
            if counts != [2, 4, 8] {
                Err(format!("filter counts {counts:?}"))
            } else {
                within(FILTER_ORACLE_LIMIT, start, format!("{} collapse checks, filter counts 2/4/8", reports.iter().map(|r| r.instances).sum::<usize>()))
            }
        }
    };
    (verdict, reports)
}

fn criterion_4() -> (Verdict, Vec<VerificationReport>) {
    let gen = InstanceGenerator::new(SEED, QuantaleChoice::ExtRational).points(1, MAX_POINTS);
    let mut reports: Vec<VerificationReport> = EpsPredicate::ALL
        .iter()
        .map(|p| VerificationReport::new(&format!("oracle.epsilon.{}", p.id())))
        .collect();
    for inst in gen.instances(EPS_SPACES) {
        let AnySpace::Rational(space) = &inst.space else { unreachable!() };
        let data = json!(inst.space.data());
        for (p, report) in EpsPredicate::ALL.iter().zip(&mut reports) {
            match oracle_epsilon_reduction(space, *p, EPS_SAMPLES, inst.seed) {
                Ok(outcome) => report.record(inst.seed, &data, outcome),
                Err(e) => return (Err(e.to_string()), reports),
            }
        }
    }
    let verdict = match failures(&reports) {
        Some(f) => Err(f),
        None => Ok(format!(
            "{EPS_SPACES} spaces × {} predicates agree with {EPS_SAMPLES}-sample dense evaluation",
            EpsPredicate::ALL.len()
        )),
    };
    (verdict, reports)
}

const SUITE_THEOREMS: [&str; 14] = [
    "prop.cauchy_round_minimal",
    "prop.roundify_cauchy",
    "lem.roundify_round",
    "cor.roundify_minimal",
    "cor.minimal_iff_cauchy_round",
    "prop.point_filters_coincide",
    "prop.cauchy_iff_op_cauchy",
    "lem.tilde_is_uva_space",
    "thm.completion_isometric_to_tilde_quotient",
    "lem.embedding_isometry",
    "lem.embedding_dense",
    "thm.completion_cauchy_complete",
    "cor.completion_separated_uva",
    "prop.quotient_inherits_uva",
];

fn criterion_5(oracles: &OracleStatus) -> (Verdict, Vec<VerificationReport>) {
    let start = Instant::now();
    let mut all = Vec::new();
    for (choice, count) in [(QuantaleChoice::ExtRational, EXT_RATIONAL_INSTANCES), (QuantaleChoice::Q3, Q3_INSTANCES)] {
        let gen = InstanceGenerator::new(SEED, choice).points(1, MAX_POINTS).uva();
        let reports = match run_theorem_suite(&gen, count, oracles) {
            Ok(r) => r,
            Err(e) => return (Err(e.to_string()), all),
        };
        if let Some(f) = failures(&reports) {
            return (Err(format!("{choice:?}: {f}")), all);
        }
        for id in SUITE_THEOREMS {
            match find(&reports, id) {
                Some(r) if r.instances == count && r.passes > 0 => {}
                Some(r) => return (Err(format!("{choice:?}: {id} ran {} of {count}, {} passes", r.instances, r.passes)), all),
                None => return (Err(format!("{choice:?}: {id} missing")), all),
            }
        }
        all.extend(reports);
    }
    let verdict = within(
        SUITE_LIMIT,
        start,
        format!("{} theorems, {EXT_RATIONAL_INSTANCES} Q∞ + {Q3_INSTANCES} Q3 UVA instances, 0 failures", SUITE_THEOREMS.len()),
    );
    (verdict, all)
}

fn criterion_6() -> Verdict {
    let mut total = 0;
    for choice in [QuantaleChoice::ExtRational, QuantaleChoice::Q3] {
        let gen = InstanceGenerator::new(SEED, choice).points(1, 4);
        let r = check_universal_property(&gen, UNIVERSAL_PAIRS).map_err(|e| e.to_string())?;
        if let Some(f) = failures(std::slice::from_ref(&r)) {
            return Err(f);
        }
        if r.passes != UNIVERSAL_PAIRS {
            return Err(format!("{} of {UNIVERSAL_PAIRS} pairs passed", r.passes));
        }
        total += r.passes;
    }
    Ok(format!("{total} pairs: F∘ι = f, F uniformly continuous, unique by enumeration"))
}

fn criterion_7(uva_reports: &[VerificationReport], oracles: &OracleStatus) -> Verdict {
    let mut reports = uva_reports.to_vec();
    for choice in [QuantaleChoice::ExtRational, QuantaleChoice::Q3] {
        let gen = InstanceGenerator::new(SEED ^ 7, choice).points(1, MAX_POINTS);
        reports.extend(run_theorem_suite(&gen, UNCONSTRAINED_INSTANCES, oracles).map_err(|e| e.to_string())?);
    }
    let mut instances = 0;
    for id in ["structures.va_list", "structures.uva_list", "structures.uva_implies_va", "finite.collapse"] {
        let relevant: Vec<VerificationReport> = reports.iter().filter(|r| r.id == id).cloned().collect();
        if relevant.is_empty() {
            return Err(format!("{id} missing"));
        }
        if let Some(f) = failures(&relevant) {
            return Err(f);
        }
        instances = relevant.iter().map(|r| r.passes).sum();
    }
    let expected = EXT_RATIONAL_INSTANCES + Q3_INSTANCES + 2 * UNCONSTRAINED_INSTANCES;
    if instances != expected {
        return Err(format!("{instances} of {expected} instances passed"));
    }
    Ok(format!("{instances} instances: VA list, UVA list, UVA ⇒ VA and the finite collapse all consistent"))
}

fn criterion_8() -> Verdict {
    let mut reports = Vec::new();
    for choice in [QuantaleChoice::ExtRational, QuantaleChoice::Q3] {
        let gen = InstanceGenerator::new(SEED, choice).points(1, 3).uva();
        reports.extend(check_category_laws(&gen, CATEGORY_SEEDS).map_err(|e| e.to_string())?);
    }
    if let Some(f) = failures(&reports) {
        return Err(f);
    }
    let laws: std::collections::BTreeSet<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    if laws.len() != 6 {
        return Err(format!("laws checked: {laws:?}"));
    }
    Ok(format!("{} laws on {} seeds with carriers ≤ 3", laws.len(), 2 * CATEGORY_SEEDS))
}

fn criterion_9(oracles: &OracleStatus) -> Verdict {
    let gen = InstanceGenerator::new(SEED, QuantaleChoice::Q1).points(1, MAX_POINTS);
    for inst in gen.instances(Q1_INSTANCES) {
        let AnySpace::Finite(s) = &inst.space else { unreachable!() };
        if !s.has_uva().holds() {
            return Err(format!("seed {}: not UVA", inst.seed));
        }
        let c = complete(s).map_err(|e| e.to_string())?;
        if c.points.len() != 1 || s.quantale().elements().map(|e| e.len()) != Some(1) {
            return Err(format!("seed {}: completion has {} points", inst.seed, c.points.len()));
        }
    }
    let reports = run_theorem_suite(&gen, Q1_INSTANCES, oracles).map_err(|e| e.to_string())?;
    if let Some(f) = failures(&reports) {
        return Err(f);
    }
    match find(&reports, "degenerate.single_point_completion") {
        Some(r) if r.passes == Q1_INSTANCES => Ok(format!("{Q1_INSTANCES} spaces over Q1: UVA, one-point completions, suite green")),
        other => Err(format!("degenerate check: {other:?}")),
    }
}

fn criterion_10() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qc"))
            .args(["verify", "--suite", "all", "--seed", "42", "--format", "structured"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit codes {:?}, {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("structured reports differ".into());
    }
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();
    results.push((1, "quantale axioms", criterion_1()));
    let (v2, well_above) = criterion_2();
    results.push((2, "well-above closed form", v2));
    let (v3, filter_reports) = criterion_3();
    results.push((3, "filter collapse oracles", v3));
    let (v4, eps_reports) = criterion_4();
    results.push((4, "ε-reduction oracle", v4));

    let mut oracle_reports = vec![well_above];
    oracle_reports.extend(filter_reports);
    oracle_reports.extend(eps_reports);
    let oracles = OracleStatus { reports: oracle_reports };

    let (v5, suite_reports) = criterion_5(&oracles);
    results.push((5, "theorem suite", v5));
    results.push((6, "universal property", criterion_6()));
    results.push((7, "equivalence lists", criterion_7(&suite_reports, &oracles)));
    results.push((8, "category laws", criterion_8()));
    results.push((9, "degenerate quantale", criterion_9(&oracles)));
    results.push((10, "determinism", criterion_10()));

    for (n, name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("criterion {n:2} PASS  {name}: {detail}"),
            Err(why) => println!("criterion {n:2} FAIL  {name}: {why}"),
        }
    }
    let failed: Vec<u32> = results.iter().filter(|r| r.2.is_err()).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
