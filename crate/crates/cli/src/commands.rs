use std::path::Path;

use qc_core::completion::{self, TildeCheck};
use qc_core::io::{parse_document, AnyQuantale, AnySpace, CompletionData, FilterData, QuantaleRef, SpaceData};
use qc_core::quantale::{validate_value_quantale, ExtRat, ExtRational, QuantaleDescriptor, QuantaleTables, ValidationReport, ValueQuantale};
use qc_core::structures::{quasi_uniformity_of, topology_of, uva_equivalence_report, va_equivalence_report, EquivalenceReport};
use qc_core::verify::{run_all, search_counterexamples, Finding, InstanceGenerator, QuantaleChoice, SearchTarget, Suite, SuiteConfig};
use qc_core::{with_space, Side, VSpace, Verdict};
use serde::{Deserialize, Serialize};

use crate::output::{CliError, Output, Text};
use crate::{QuantaleArg, SideArg, SuiteArg};

const DEFAULT_MAX_POINTS: usize = 16;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Parses a document, pointing at the offending line on a syntax error.
fn load<T: for<'de> Deserialize<'de>>(path: &Path, kind: &str) -> Result<T, CliError> {
    let text = read(path)?;
    if let Err(e) = serde_json::from_str::<serde_json::Value>(&text) {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("");
        return Err(CliError::usage(format!(
            "{}:{}:{}: {e}\n  | {line}",
            path.display(),
            e.line(),
            e.column()
        )));
    }
    parse_document(&text, kind).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn load_space(path: &Path) -> Result<AnySpace, CliError> {
    let data: SpaceData = load(path, "space")?;
    data.resolve().map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// A space that satisfies the axioms; anything else is a mathematical failure.
fn load_valid_space(path: &Path) -> Result<AnySpace, CliError> {
    let space = load_space(path)?;
    let report = with_space!(&space, s => s.validate());
    if !report.is_valid() {
        return Err(CliError {
            code: 1,
            message: format!("{} is not a V-space:\n{report}", path.display()),
        });
    }
    Ok(space)
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Forward => Side::Forward,
        SideArg::Backward => Side::Backward,
    }
}

fn names<Q: ValueQuantale>(space: &VSpace<Q>, set: &qc_core::PointSet) -> Vec<String> {
    set.iter().map(|i| space.name(i).to_string()).collect()
}

fn validation_output(kind: &'static str, subject: &str, report: &ValidationReport) -> Output {
    let mut text = Text::default();
    for v in &report.violations {
        text.line(format!("  witness: ({})", v.witness.join(", ")));
        text.line(format!("violated: {}", v.statement));
    }
    let how = if report.exhaustive { "exhaustive" } else { "sampled" };
    text.line(format!(
        "{subject}: {} ({how} check)",
        if report.is_valid() { "valid" } else { "invalid" }
    ));
    Output::new(kind, report, text.finish(), !report.is_valid())
}

pub fn validate_quantale(path: &Path) -> Result<Output, CliError> {
    let q: QuantaleRef = load(path, "quantale")?;
    let tables = match &q {
        QuantaleRef::Inline(QuantaleDescriptor::Finite { elements, leq, add }) => Some(QuantaleTables {
            elements: elements.clone(),
            leq: leq.clone(),
            add: add.clone(),
        }),
        _ => match q.resolve()? {
            AnyQuantale::Finite(f) => Some(f.tables()),
            AnyQuantale::Rational(_) => None,
        },
    };
    let report = match tables {
        Some(t) => validate_value_quantale(&t).map_err(qc_core::Error::from)?,
        None => {
            let sample: Vec<ExtRat> = ["0", "1/4", "1/3", "1/2", "1", "3/2", "2", "7/3", "inf"]
                .iter()
                .map(|e| e.parse().expect("sample element"))
                .collect();
            ExtRational.validate_sampled(&sample)
        }
    };
    Ok(validation_output("quantale_validation", "quantale", &report))
}

pub fn validate_space(path: &Path) -> Result<Output, CliError> {
    let space = load_space(path)?;
    let report = with_space!(&space, s => s.validate());
    Ok(validation_output("space_validation", "space", &report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Property {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Property {
    fn new(name: &str, witness: Option<String>) -> Self {
        Property {
            name: name.into(),
            holds: witness.is_none(),
            witness,
        }
    }

    fn write(&self, text: &mut Text) {
        text.verdict(&self.name, self.holds, self.witness.as_deref());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub properties: Vec<Property>,
    pub va_conditions: Vec<Property>,
    pub uva_conditions: Vec<Property>,
}

fn conditions(report: &EquivalenceReport) -> Vec<Property> {
    report
        .conditions
        .iter()
        .map(|c| Property::new(c.name, c.witness.clone()))
        .collect()
}

fn classify_space<Q: ValueQuantale>(s: &VSpace<Q>) -> Result<Classification, CliError> {
    let q = s.quantale();
    let n = s.len();
    let asym = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| s.d(x, y) != s.d(y, x))
        .map(|(x, y)| {
            format!(
                "d({0}, {1}) = {2} but d({1}, {0}) = {3}",
                s.name(x),
                s.name(y),
                q.format_elem(s.d(x, y)),
                q.format_elem(s.d(y, x))
            )
        });
    let sep = s
        .separation_witness()
        .map(|(x, y)| format!("{} and {} are at distance 0 both ways", s.name(x), s.name(y)));
    let va = match s.has_va() {
        Verdict::Holds => None,
        Verdict::Fails((x, e)) => Some(format!("at {}, ε = {}", s.name(x), q.format_elem(&e))),
    };
    let uva = s.has_uva().witness().map(|e| format!("ε = {}", q.format_elem(e)));
    Ok(Classification {
        properties: vec![
            Property::new("symmetric", asym),
            Property::new("separated", sep),
            Property::new("vanishing asymmetry", va),
            Property::new("uniformly vanishing asymmetry", uva),
        ],
        va_conditions: conditions(&va_equivalence_report(s)?),
        uva_conditions: conditions(&uva_equivalence_report(s)?),
    })
}

pub fn classify(path: &Path) -> Result<Output, CliError> {
    let space = load_valid_space(path)?;
    let c = with_space!(&space, s => classify_space(s))?;
    let mut text = Text::default();
    for p in &c.properties {
        p.write(&mut text);
    }
    for (title, list) in [("vanishing asymmetry", &c.va_conditions), ("uniformly vanishing asymmetry", &c.uva_conditions)] {
        text.line(format!("{title}, equivalent forms:"));
        for p in list {
            if let Some(w) = &p.witness {
                text.line(format!("    witness: {w}"));
            }
            text.line(format!("  {}: {}", p.name, if p.holds { "yes" } else { "no" }));
        }
    }
    Ok(Output::new("classification", &c, text.finish(), false))
}

fn max_points() -> Result<usize, CliError> {
    match std::env::var("QC_MAX_POINTS") {
        Err(_) => Ok(DEFAULT_MAX_POINTS),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("QC_MAX_POINTS must be a number, not `{v}`"))),
    }
}

pub fn complete(path: &Path) -> Result<Output, CliError> {
    let space = load_valid_space(path)?;
    let cap = max_points()?;
    if space.len() > cap {
        return Err(CliError::usage(format!(
            "{} points exceed the completion cap of {cap} (set QC_MAX_POINTS to raise it)",
            space.len()
        )));
    }
    let (data, tilde) = with_space!(&space, s => {
        let c = completion::complete(s)?;
        (CompletionData::of(&c), c.tilde_check.clone())
    });
    let mut text = Text::default();
    text.line(format!("completion with {} points", data.points.len()));
    for p in &data.points {
        text.line(format!("  {}", p.name));
    }
    text.line("distances:");
    for (p, row) in data.points.iter().zip(&data.d) {
        text.line(format!("  {}: {}", p.name, row.join(" ")));
    }
    text.line("embedding:");
    for (x, j) in &data.embedding {
        text.line(format!("  {x} ↦ {}", data.points[*j].name));
    }
    text.line(match tilde {
        TildeCheck::Verified => "isometric to the separated quotient of all Cauchy filters: verified".to_string(),
        TildeCheck::Skipped { cauchy_filters } => {
            format!("isometry with the quotient of all Cauchy filters not checked ({cauchy_filters} filters)")
        }
    });
    Ok(Output::new("completion", &data, text.finish(), false))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighbourhood {
    pub point: String,
    pub neighbourhood: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub side: String,
    pub neighbourhoods: Vec<Neighbourhood>,
    /// Absent when the carrier is too large to list every open set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    pub hausdorff: Property,
}

fn side_name(s: SideArg) -> String {
    match s {
        SideArg::Forward => "forward".into(),
        SideArg::Backward => "backward".into(),
    }
}

pub fn topology(path: &Path, s: SideArg) -> Result<Output, CliError> {
    let space = load_valid_space(path)?;
    let report = with_space!(&space, sp => {
        let t = topology_of(sp, side(s));
        TopologyReport {
            side: side_name(s),
            neighbourhoods: (0..sp.len())
                .map(|x| Neighbourhood {
                    point: sp.name(x).to_string(),
                    neighbourhood: names(sp, t.neighbourhood(x)),
                })
                .collect(),
            opens: t.opens().ok().map(|o| o.iter().map(|u| names(sp, u)).collect()),
            hausdorff: Property::new(
                "Hausdorff",
                t.hausdorff_failure()
                    .map(|(x, y)| format!("{} and {} have no disjoint neighbourhoods", sp.name(x), sp.name(y))),
            ),
        }
    });
    let mut text = Text::default();
    report.hausdorff.write(&mut text);
    text.line(format!("minimal neighbourhoods ({}):", report.side));
    for n in &report.neighbourhoods {
        text.line(format!("  {}: {{{}}}", n.point, n.neighbourhood.join(",")));
    }
    match &report.opens {
        Some(opens) => {
            text.line(format!("{} open sets:", opens.len()));
            for u in opens {
                text.line(format!("  {{{}}}", u.join(",")));
            }
        }
        None => text.line("too many points to list the open sets"),
    }
    Ok(Output::new("topology", &report, text.finish(), false))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub side: String,
    /// Pairs in every entourage.
    pub core: Vec<(String, String)>,
    pub induces_topology: Property,
}

pub fn uniformity(path: &Path, s: SideArg) -> Result<Output, CliError> {
    let space = load_valid_space(path)?;
    let report = with_space!(&space, sp => {
        let u = quasi_uniformity_of(sp, side(s));
        let (ut, t) = (u.topology(), topology_of(sp, side(s)));
        let mismatch = t
            .refinement_failure(&ut)
            .or_else(|| ut.refinement_failure(&t))
            .map(|x| format!("neighbourhoods of {} differ", sp.name(x)));
        UniformityReport {
            side: side_name(s),
            core: u
                .pairs()
                .into_iter()
                .map(|(x, y)| (sp.name(x).to_string(), sp.name(y).to_string()))
                .collect(),
            induces_topology: Property::new("induces the open-ball topology", mismatch),
        }
    });
    let mut text = Text::default();
    report.induces_topology.write(&mut text);
    text.line(format!("core of the quasi-uniformity ({}):", report.side));
    for (x, y) in &report.core {
        text.line(format!("  ({x}, {y})"));
    }
    let failed = !report.induces_topology.holds;
    Ok(Output::new("uniformity", &report, text.finish(), failed))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundifyReport {
    pub filter: FilterData,
    pub cauchy: Property,
    pub round: Property,
    pub roundified: FilterData,
    pub roundified_round: Property,
}

fn roundify_space<Q: ValueQuantale>(s: &VSpace<Q>, core: &[String]) -> Result<RoundifyReport, CliError> {
    let q = s.quantale();
    let refs: Vec<&str> = core.iter().map(String::as_str).collect();
    let f = s.filter_of(&refs).map_err(|e| CliError::usage(e.to_string()))?;
    let r = s.roundify(&f)?;
    let cauchy = s
        .is_cauchy(&f, Side::Forward)?
        .witness()
        .map(|e| format!("no ball of radius {} is a member", q.format_elem(e)));
    let round = |g: &qc_core::Filter| -> Result<Option<String>, CliError> {
        Ok(s.is_round(g)?.witness().map(|m| {
            if s.epsilon_test_set().is_empty() {
                "no ε ≻ 0 exists".to_string()
            } else {
                format!("no ball fattening of a member lies inside {}", s.format_set(m))
            }
        }))
    };
    Ok(RoundifyReport {
        filter: FilterData::of(s, &f),
        cauchy: Property::new("Cauchy", cauchy),
        round: Property::new("round", round(&f)?),
        roundified: FilterData::of(s, &r),
        roundified_round: Property::new("roundification round", round(&r)?),
    })
}

pub fn roundify(path: &Path, core: &[String]) -> Result<Output, CliError> {
    let space = load_valid_space(path)?;
    let report = with_space!(&space, s => roundify_space(s, core))?;
    let mut text = Text::default();
    report.cauchy.write(&mut text);
    report.round.write(&mut text);
    report.roundified_round.write(&mut text);
    text.line(format!(
        "↑{{{}}} roundifies to ↑{{{}}}",
        report.filter.core.join(","),
        report.roundified.core.join(",")
    ));
    Ok(Output::new("roundification", &report, text.finish(), false))
}

pub fn verify(
    suite: SuiteArg,
    seed: u64,
    instances: Option<usize>,
    max_points: usize,
    samples: Option<usize>,
) -> Result<Output, CliError> {
    if !(1..=8).contains(&max_points) {
        return Err(CliError::usage("--max-points must be between 1 and 8"));
    }
    let mut config = SuiteConfig::new(seed);
    if let Some(k) = instances {
        config = config.with_instances(k);
    }
    config.max_points = max_points;
    if let Some(s) = samples {
        config.epsilon_samples = s;
    }
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Oracles => Suite::Oracles,
        SuiteArg::Theorems => Suite::Theorems,
        SuiteArg::Category => Suite::Category,
        SuiteArg::Universal => Suite::Universal,
    };
    let report = run_all(&config, suite)?;
    let mut text = Text::default();
    for section in &report.sections {
        for r in &section.reports {
            for f in r.failures.iter().take(3) {
                text.line(format!("  witness: {}", f.witness));
                text.line(format!("FAIL {} (seed {})", r.id, f.seed));
            }
        }
    }
    for section in &report.sections {
        text.line(format!("[{}]", section.name));
        for r in &section.reports {
            let status = if r.passed() { "ok" } else { "FAIL" };
            text.line(format!(
                "  {status:4} {}: {} instances, {} passed, {} skipped, {} failed",
                r.id,
                r.instances,
                r.passes,
                r.skipped,
                r.failures.len()
            ));
        }
    }
    text.line(if report.passed() { "all checks passed" } else { "some checks failed" });
    let failed = !report.passed();
    Ok(Output::new("verification", &report, text.finish(), failed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: SearchTarget,
    pub budget: usize,
    pub seed: u64,
    pub findings: Vec<Finding>,
}

pub fn search(target: &str, budget: usize, seed: u64, quantale: QuantaleArg, max_points: usize) -> Result<Output, CliError> {
    let target: SearchTarget = target.parse().map_err(|e: qc_core::Error| CliError::usage(e.to_string()))?;
    if !(1..=8).contains(&max_points) {
        return Err(CliError::usage("--max-points must be between 1 and 8"));
    }
    let choice = match quantale {
        QuantaleArg::ExtRational => QuantaleChoice::ExtRational,
        QuantaleArg::Q3 => QuantaleChoice::Q3,
        QuantaleArg::Q1 => QuantaleChoice::Q1,
        QuantaleArg::Chain4 => QuantaleChoice::Chain4,
    };
    let gen = InstanceGenerator::new(seed, choice).points(1, max_points);
    let findings = search_counterexamples(target, &gen, budget)?;
    let mut text = Text::default();
    for f in &findings {
        text.line(format!("  witness: {}", f.witness));
        text.line(format!(
            "finding (seed {}): {} points, shrunk to {}",
            f.seed,
            f.original.points.len(),
            f.shrunk.points.len()
        ));
    }
    text.line(format!("{target}: {} findings in {budget} instances", findings.len()));
    let report = SearchReport {
        target,
        budget,
        seed,
        findings,
    };
    Ok(Output::new("search", &report, text.finish(), false))
}
