//! Command implementations behind the `maxcsp` binary. Each command reads
//! its input files, runs the library, and returns a [`Report`] that the
//! binary prints as JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use maxcsp_core::reductions::{
    attach_gadgets, bis_encode, hardness_witness_product, synthesize_gadget_with, HardnessTarget,
};
use maxcsp_core::selftest::{self, SuiteOutcome};
use maxcsp_core::tractable::DEFAULT_COMPONENT_CAP;
use maxcsp_core::{
    classify_language, count_max_affine, count_max_im2, count_max_monotone, count_sat_affine,
    count_sat_im2, find_witnesses, parse_with, print_graph, print_instance, Classification,
    CountReport, Error, GadgetCase, GadgetProfile, GadgetResult, Instance, Method, Oracle,
    ParseOptions, ParsedDocument, Property, Witnesses, DEFAULT_CAP,
};
use serde::Serialize;

/// Machine-readable outcome of one command. Counts are decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<CountSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gadget: Option<GadgetSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<SuiteOutcome>>,
    pub transcript: Vec<String>,
}

impl Report {
    fn new(command: &str, arguments: &[(&str, String)]) -> Self {
        Report {
            command: command.to_string(),
            arguments: arguments
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            classification: None,
            count: None,
            gadget: None,
            output: None,
            witnesses: None,
            suites: None,
            transcript: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Every satisfying assignment.
    All,
    /// Locally maximal satisfying assignments.
    Max,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::All => "all",
            CountMode::Max => "max",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Brute,
    Monotone,
    Affine,
    Im2,
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Brute => "brute",
            MethodChoice::Monotone => "monotone",
            MethodChoice::Affine => "affine",
            MethodChoice::Im2 => "im2",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountSection {
    pub mode: CountMode,
    pub method: Method,
    pub value: String,
    pub variables: usize,
    pub constraints: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub method: Method,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetSection {
    pub relation: String,
    pub case: GadgetCase,
    pub lifted: bool,
    pub profile: GadgetProfile,
    pub distinguished: String,
    pub variables: Vec<String>,
    pub constraints: Vec<String>,
    pub instance: String,
}

/// Summary of an instance written to disk.
#[derive(Debug, Clone, Serialize)]
pub struct OutputSection {
    pub path: String,
    pub variables: usize,
    pub constraints: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSection {
    #[serde(flatten)]
    pub witnesses: Witnesses,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bis_product: Option<ProductSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sat_product: Option<ProductSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductSummary {
    pub factors: Vec<String>,
    pub arity: usize,
    pub tuples: usize,
}

fn read_document(path: &Path, options: ParseOptions) -> Result<ParsedDocument> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_with(&text, options).map_err(|e| match e {
        Error::Parse { .. } => anyhow!("{}:{e}", path.display()),
        other => anyhow!("{}: {other}", path.display()),
    })
}

fn read_instance(path: &Path, options: ParseOptions) -> Result<Instance> {
    read_document(path, options)?
        .instance
        .ok_or_else(|| anyhow!("{}: no `var` or `constraint` lines", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn show(path: &Path) -> String {
    path.display().to_string()
}

/// `R(a,b,c)` for every constraint.
pub fn constraint_strings(instance: &Instance) -> Vec<String> {
    instance
        .constraints()
        .iter()
        .map(|c| {
            let scope: Vec<&str> = c.scope.iter().map(|&v| instance.variable_name(v)).collect();
            format!("{}({})", instance.relation_name(c), scope.join(","))
        })
        .collect()
}

pub fn cmd_classify(language: &Path) -> Result<Report> {
    let doc = read_document(language, ParseOptions::default())?;
    let classification = classify_language(&doc.language)?;
    let mut report = Report::new("classify", &[("language", show(language))]);
    report.transcript.push(format!(
        "{} relations: exact {}, approximate {}",
        doc.language.len(),
        classification.exact,
        classification.approx
    ));
    report.classification = Some(classification);
    Ok(report)
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub mode: CountMode,
    pub method: MethodChoice,
    pub verify: bool,
    /// Largest variable count brute force will enumerate.
    pub cap: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            mode: CountMode::Max,
            method: MethodChoice::Auto,
            verify: false,
            cap: DEFAULT_CAP,
        }
    }
}

fn uses_only(instance: &Instance, property: Property) -> bool {
    instance
        .used_relations()
        .into_iter()
        .all(|i| instance.language().by_index(i).1.has_property(property))
}

fn run_method(
    instance: &Instance,
    mode: CountMode,
    method: MethodChoice,
    oracle: &Oracle,
) -> maxcsp_core::Result<CountReport> {
    match (mode, method) {
        (CountMode::Max, MethodChoice::Brute) => oracle.count_max_sat(instance),
        (CountMode::All, MethodChoice::Brute) => oracle.count_sat(instance),
        (CountMode::Max, MethodChoice::Monotone) => count_max_monotone(instance),
        (CountMode::Max, MethodChoice::Affine) => count_max_affine(instance),
        (CountMode::All, MethodChoice::Affine) => count_sat_affine(instance),
        (CountMode::Max, MethodChoice::Im2) => count_max_im2(instance, DEFAULT_COMPONENT_CAP),
        (CountMode::All, MethodChoice::Im2) => count_sat_im2(instance, DEFAULT_COMPONENT_CAP),
        (_, MethodChoice::Auto) | (CountMode::All, MethodChoice::Monotone) => {
            unreachable!("resolved by the caller")
        }
    }
}

/// Tractable methods whose language precondition the instance meets, in
/// dispatch order.
fn applicable(instance: &Instance, mode: CountMode) -> Vec<MethodChoice> {
    let mut out = Vec::new();
    if mode == CountMode::Max && uses_only(instance, Property::EssentiallyMonotone) {
        out.push(MethodChoice::Monotone);
    }
    if uses_only(instance, Property::Affine) {
        out.push(MethodChoice::Affine);
    }
    if uses_only(instance, Property::Im2) {
        out.push(MethodChoice::Im2);
    }
    out
}

pub fn cmd_count(instance_path: &Path, options: CountOptions) -> Result<Report> {
    let instance = read_instance(instance_path, ParseOptions::default())?;
    let oracle = Oracle::with_cap(options.cap);
    let mut report = Report::new(
        "count",
        &[
            ("instance", show(instance_path)),
            ("mode", options.mode.to_string()),
            ("method", options.method.to_string()),
            ("verify", options.verify.to_string()),
            ("cap", options.cap.to_string()),
        ],
    );
    if options.mode == CountMode::All && options.method == MethodChoice::Monotone {
        bail!("the monotone method counts only locally maximal assignments; use --mode max");
    }

    let tractable = applicable(&instance, options.mode);
    let result = match options.method {
        MethodChoice::Auto => {
            let mut chosen = None;
            for &m in &tractable {
                match run_method(&instance, options.mode, m, &oracle) {
                    Ok(r) => {
                        chosen = Some(r);
                        break;
                    }
                    Err(e @ Error::TooLarge { .. }) => {
                        report.transcript.push(format!("{m} method skipped: {e}"));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            match chosen {
                Some(r) => r,
                None => {
                    report
                        .transcript
                        .push("no tractable method applies; enumerating assignments".into());
                    run_method(&instance, options.mode, MethodChoice::Brute, &oracle)?
                }
            }
        }
        m => run_method(&instance, options.mode, m, &oracle)?,
    };
    report.transcript.extend(result.notes.iter().cloned());

    let mut verification = None;
    if options.verify {
        let other = if result.method == Method::Brute {
            tractable.first().copied()
        } else {
            Some(MethodChoice::Brute)
        };
        match other {
            None => report
                .transcript
                .push("verification skipped: no tractable method applies".into()),
            Some(m) => match run_method(&instance, options.mode, m, &oracle) {
                Ok(check) => {
                    if check.value != result.value {
                        bail!(
                            "verification failed: {} counted {} but {} counted {}",
                            result.method,
                            result.value,
                            check.method,
                            check.value
                        );
                    }
                    report
                        .transcript
                        .push(format!("verified: {} agrees", check.method));
                    verification = Some(Verification {
                        method: check.method,
                        value: check.value.to_string(),
                    });
                }
                Err(e @ Error::TooLarge { .. }) => {
                    report.transcript.push(format!("verification skipped: {e}"));
                }
                Err(e) => return Err(e.into()),
            },
        }
    }

    report.count = Some(CountSection {
        mode: options.mode,
        method: result.method,
        value: result.value.to_string(),
        variables: instance.variable_count(),
        constraints: instance.constraints().len(),
        verification,
    });
    Ok(report)
}

fn gadget_section(gadget: &GadgetResult) -> GadgetSection {
    GadgetSection {
        relation: gadget.relation_name().to_string(),
        case: gadget.case,
        lifted: gadget.lifted,
        profile: gadget.profile,
        distinguished: gadget
            .instance
            .variable_name(gadget.distinguished)
            .to_string(),
        variables: gadget
            .instance
            .variables()
            .iter()
            .map(|v| v.name.clone())
            .collect(),
        constraints: constraint_strings(&gadget.instance),
        instance: print_instance(&gadget.instance),
    }
}

pub fn cmd_gadget(language: &Path, relation: &str) -> Result<Report> {
    let doc = read_document(language, ParseOptions::default())?;
    let r = doc
        .language
        .get(relation)
        .ok_or_else(|| anyhow!("{}: unknown relation `{relation}`", language.display()))?;
    let gadget = synthesize_gadget_with(relation, r, &Oracle::default())?;
    let mut report = Report::new(
        "gadget",
        &[
            ("language", show(language)),
            ("relation", relation.to_string()),
        ],
    );
    report.transcript = gadget.transcript.clone();
    report.gadget = Some(gadget_section(&gadget));
    Ok(report)
}

pub fn cmd_reduce(instance_path: &Path, relation: &str, out: &Path) -> Result<Report> {
    let instance = read_instance(
        instance_path,
        ParseOptions {
            reserve_gadget_infix: true,
        },
    )?;
    let r = instance
        .language()
        .get(relation)
        .ok_or_else(|| anyhow!("{}: unknown relation `{relation}`", instance_path.display()))?;
    let gadget = synthesize_gadget_with(relation, r, &Oracle::default())?;
    let reduced = attach_gadgets(&instance, &gadget)?;
    write_file(out, &print_instance(&reduced))?;

    let mut report = Report::new(
        "reduce",
        &[
            ("instance", show(instance_path)),
            ("relation", relation.to_string()),
            ("out", show(out)),
        ],
    );
    report.transcript = gadget.transcript.clone();
    report.transcript.push(format!(
        "attached {} gadget copies: {} variables and {} constraints became {} and {}",
        instance.variable_count(),
        instance.variable_count(),
        instance.constraints().len(),
        reduced.variable_count(),
        reduced.constraints().len()
    ));
    report.gadget = Some(gadget_section(&gadget));
    report.output = Some(OutputSection {
        path: show(out),
        variables: reduced.variable_count(),
        constraints: reduced.constraints().len(),
    });
    Ok(report)
}

pub fn cmd_encode_bis(graph_path: &Path, out: &Path) -> Result<Report> {
    let graph = read_document(graph_path, ParseOptions::default())?
        .graph
        .ok_or_else(|| {
            anyhow!(
                "{}: no `left`, `right` or `edge` lines",
                graph_path.display()
            )
        })?;
    let instance = bis_encode(&graph);
    write_file(out, &print_instance(&instance))?;
    let mut report = Report::new(
        "encode-bis",
        &[("graph", show(graph_path)), ("out", show(out))],
    );
    report.transcript.push(format!(
        "{} left and {} right vertices, {} edges",
        graph.left().len(),
        graph.right().len(),
        graph.edges().len()
    ));
    report.transcript.push("graph:".into());
    report
        .transcript
        .extend(print_graph(&graph).lines().map(|l| format!("  {l}")));
    report.output = Some(OutputSection {
        path: show(out),
        variables: instance.variable_count(),
        constraints: instance.constraints().len(),
    });
    Ok(report)
}

pub fn cmd_witness(language: &Path) -> Result<Report> {
    let doc = read_document(language, ParseOptions::default())?;
    let witnesses = find_witnesses(&doc.language)?;
    let mut report = Report::new("witness", &[("language", show(language))]);
    let mut product =
        |target: HardnessTarget, label: &str| match hardness_witness_product(&doc.language, target)
        {
            Ok(p) => {
                report.transcript.push(format!(
                    "{label} witness product {} has arity {} and {} tuples",
                    p.factors.join(" x "),
                    p.relation.arity(),
                    p.relation.len()
                ));
                Some(ProductSummary {
                    factors: p.factors,
                    arity: p.relation.arity(),
                    tuples: p.relation.len(),
                })
            }
            Err(e) => {
                report
                    .transcript
                    .push(format!("no {label} witness product: {e}"));
                None
            }
        };
    let bis_product = product(HardnessTarget::Bis, "BIS");
    let sat_product = product(HardnessTarget::Sat, "SAT");
    report.witnesses = Some(WitnessSection {
        witnesses,
        bis_product,
        sat_product,
    });
    Ok(report)
}

/// Runs the default self-test suites with a fixed seed.
pub fn cmd_selftest() -> Result<Report> {
    let suites = selftest::default_suites(0);
    let mut report = Report::new("selftest", &[]);
    for s in &suites {
        report.transcript.push(format!(
            "{}: {} cases, {} failed",
            s.name, s.cases, s.failed
        ));
    }
    let failed: Vec<&str> = suites
        .iter()
        .filter(|s| !s.passed())
        .map(|s| s.name.as_str())
        .collect();
    report.suites = Some(suites.clone());
    if !failed.is_empty() {
        bail!(
            "self-test failed in: {}\n{}",
            failed.join("; "),
            report.to_json()
        );
    }
    Ok(report)
}
