//! Acceptance suite: one PASS/FAIL line per criterion. Every count is
//! compared with exhaustive enumeration; tolerances are zero and the time
//! limits below are part of each criterion.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use maxcsp_core::random::{all_relations, random_affine, seeded};
use maxcsp_core::reductions::{count_independent_sets, count_maximal_independent_sets};
use maxcsp_core::selftest::{self, SuiteOutcome};
use maxcsp_core::{
    affine_decompose, classify_language, parse, ApproxComplexity, Assignment, ConstraintLanguage,
    ExactComplexity, Property, Relation,
};

const GADGET_LIMIT: Duration = Duration::from_secs(10);
const REDUCTION_LIMIT: Duration = Duration::from_secs(60);
const TRACTABLE_LIMIT: Duration = Duration::from_secs(120);

const SEED: u64 = 20_240_601;
const REDUCTION_PAIRS: usize = 300;
const MAX_ATTACHED_VARIABLES: usize = 16;
const TRACTABLE_INSTANCES: usize = 600;
const TRACTABLE_MAX_VARIABLES: usize = 14;
const PIPELINE_INSTANCES: usize = 400;
const PIPELINE_MAX_VARIABLES: usize = 12;
const AFFINE_SAMPLES: usize = 1000;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn suite_verdict(outcomes: &[SuiteOutcome], min_cases: usize) -> Verdict {
    for o in outcomes {
        if !o.passed() {
            return Err(format!(
                "{}: {} failures, first: {:?}",
                o.name,
                o.failed,
                o.failures.first()
            ));
        }
        if o.cases < min_cases {
            return Err(format!("{}: only {} cases", o.name, o.cases));
        }
    }
    Ok(outcomes
        .iter()
        .map(|o| format!("{}: {} cases", o.name, o.cases))
        .collect::<Vec<_>>()
        .join("; "))
}

fn within(limit: Duration, elapsed: Duration, verdict: Verdict) -> Verdict {
    let detail = verdict?;
    if elapsed > limit {
        return Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"));
    }
    Ok(detail)
}

fn gadgets() -> Verdict {
    let start = Instant::now();
    let outcome = selftest::gadget_exhaustive(3);
    let expected: usize = (1..=3)
        .map(|k| {
            all_relations(k)
                .filter(|r| !r.is_essentially_monotone())
                .count()
        })
        .sum();
    let verdict = suite_verdict(&[outcome], expected);
    within(GADGET_LIMIT, start.elapsed(), verdict)
}

fn reduction() -> Verdict {
    let start = Instant::now();
    let outcome = selftest::reduction_random(REDUCTION_PAIRS, MAX_ATTACHED_VARIABLES, SEED);
    let largest = outcome
        .tally
        .get("largest J' (variables)")
        .copied()
        .unwrap_or(0);
    if largest > MAX_ATTACHED_VARIABLES {
        return Err(format!("an attached instance had {largest} variables"));
    }
    within(
        REDUCTION_LIMIT,
        start.elapsed(),
        suite_verdict(&[outcome], REDUCTION_PAIRS),
    )
}

fn tractable() -> Verdict {
    let start = Instant::now();
    let outcomes: Vec<SuiteOutcome> = [
        Property::EssentiallyMonotone,
        Property::Affine,
        Property::Im2,
    ]
    .into_iter()
    .map(|p| selftest::tractable(p, TRACTABLE_INSTANCES, TRACTABLE_MAX_VARIABLES, SEED))
    .collect();
    within(
        TRACTABLE_LIMIT,
        start.elapsed(),
        suite_verdict(&outcomes, TRACTABLE_INSTANCES),
    )
}

fn pipeline() -> Verdict {
    let outcome = selftest::pipeline_steps(PIPELINE_INSTANCES, PIPELINE_MAX_VARIABLES, SEED);
    let stopped = outcome
        .tally
        .get("stopped with several variables")
        .copied()
        .unwrap_or(0);
    suite_verdict(&[outcome], PIPELINE_INSTANCES)
        .map(|d| format!("{d}; {stopped} ended with several variables"))
}

fn classifier() -> Verdict {
    let parity = Relation::from_strs(&["100", "010", "001", "111"]);
    let fixtures = [
        (
            "Implies",
            Relation::implies(),
            ExactComplexity::SharpPComplete,
            ApproxComplexity::BisEquivalent,
        ),
        (
            "OR",
            Relation::or(),
            ExactComplexity::Polynomial,
            ApproxComplexity::FpMonotone,
        ),
        (
            "Parity",
            parity,
            ExactComplexity::Polynomial,
            ApproxComplexity::FpAffine,
        ),
        (
            "NAND",
            Relation::nand(),
            ExactComplexity::SharpPComplete,
            ApproxComplexity::SatEquivalent,
        ),
    ];
    for (name, relation, exact, approx) in fixtures {
        let language = ConstraintLanguage::from_relations([(name, relation)]).unwrap();
        let c = classify_language(&language).map_err(|e| e.to_string())?;
        if (c.exact, c.approx) != (exact, approx) {
            return Err(format!(
                "{{{name}}} classified as ({}, {})",
                c.exact, c.approx
            ));
        }
    }
    Ok("4 fixtures".into())
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_maxcsp"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn reported_value(json: &str) -> Result<String, String> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    value["count"]["value"]
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| "report has no count".to_string())
}

fn paradox() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph_path = dir.path().join("edge.txt");
    let text = "left u\nright v\nedge u v\n";
    std::fs::write(&graph_path, text).map_err(|e| e.to_string())?;
    let encoded = dir.path().join("edge_bis.txt");
    let path = |p: &Path| p.to_str().unwrap().to_string();
    run_cli(&[
        "encode-bis",
        "--graph",
        &path(&graph_path),
        "--out",
        &path(&encoded),
    ])?;
    let all = reported_value(&run_cli(&[
        "count",
        "--instance",
        &path(&encoded),
        "--mode",
        "all",
        "--verify",
    ])?)?;
    let max = reported_value(&run_cli(&[
        "count",
        "--instance",
        &path(&encoded),
        "--mode",
        "max",
        "--verify",
    ])?)?;

    let graph = parse(text).unwrap().graph.unwrap();
    let independent = count_independent_sets(&graph, 24).unwrap();
    let maximal = count_maximal_independent_sets(&graph, 24).unwrap();
    let observed = (all.as_str(), independent, max.as_str(), maximal);
    if observed != ("3", 3, "1", 2) {
        return Err(format!("observed {observed:?}"));
    }
    Ok("satisfying 3 = independent sets 3; locally maximal 1, maximal independent sets 2".into())
}

fn worked_example() -> Verdict {
    let doc = parse(
        "relation R 3 000 001 100 011 111\nvar v1 v2 v3 v4 v5\n\
         constraint R v1 v2 v3\nconstraint R v3 v4 v5\n",
    )
    .unwrap();
    let i = doc.instance.unwrap();
    let s1 = Assignment::from_str_bits("00110");
    let s2 = Assignment::from_str_bits("00111");
    let s3 = Assignment::from_str_bits("11100");
    let e = |r: maxcsp_core::Result<bool>| r.map_err(|e| e.to_string());
    let checks = [
        ("sigma1 unsatisfying", !e(i.evaluate(&s1))?),
        ("sigma2 satisfying", e(i.evaluate(&s2))?),
        ("sigma2 not maximal for v2", !e(i.is_maximal_for(&s2, 1))?),
        ("sigma2 maximal for v1, v3, v4, v5", {
            let mut ok = true;
            for v in [0, 2, 3, 4] {
                ok &= e(i.is_maximal_for(&s2, v))?;
            }
            ok
        }),
        ("sigma3 satisfying", e(i.evaluate(&s3))?),
        ("sigma3 locally maximal", e(i.is_locally_maximal(&s3))?),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name} does not hold")),
        None => Ok(format!("{} fixtures", checks.len())),
    }
}

fn xor_closed(r: &Relation) -> bool {
    let t = r.codes();
    t.iter().all(|&a| {
        t.iter()
            .all(|&b| t.iter().all(|&c| r.contains_code(a ^ b ^ c)))
    })
}

fn affine_algebra() -> Verdict {
    let mut rng = seeded(SEED);
    for _ in 0..AFFINE_SAMPLES {
        let r = random_affine(&mut rng, 4);
        let k = r.arity();
        let system = affine_decompose(&r).ok_or_else(|| format!("{r} not recognised as affine"))?;
        let solutions: Vec<u64> = (0..1u64 << k)
            .filter(|&t| system.is_satisfied_by(|p| t >> (k - 1 - p) & 1 == 1))
            .collect();
        if solutions != r.codes() {
            return Err(format!("decomposition of {r} is `{system}`"));
        }
    }
    let mut exhaustive = 0;
    for k in 1..=3 {
        for r in all_relations(k) {
            exhaustive += 1;
            if r.is_affine() != xor_closed(&r) {
                return Err(format!("is_affine disagrees with xor closure on {r}"));
            }
        }
    }
    Ok(format!(
        "{AFFINE_SAMPLES} random decompositions, {exhaustive} relations checked exhaustively"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("gadgets for every relation of arity 1-3", gadgets),
        ("reduction preserves counts", reduction),
        ("tractable counters agree with enumeration", tractable),
        ("pipeline steps preserve counts", pipeline),
        ("classifier fixtures", classifier),
        ("single-edge paradox via the CLI", paradox),
        ("worked example", worked_example),
        ("affine algebra", affine_algebra),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {} {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} [{elapsed:.2?}] {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
