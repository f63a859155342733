//! Per-instance checks of the theorems about filters, the completion and
//! the induced structures, plus the universal property on pairs of spaces.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::category::check_category_laws;
use super::generator::{InstanceGenerator, QuantaleChoice};
use super::oracles::{epsilon_reports, lattice_corpus, oracle_filters, oracle_well_above, OracleStatus};
use super::{Outcome, Tally, VerificationReport};
use crate::completion::{
    cauchy_filter_space, complete, completion_map, extend_to_completion, is_cauchy_complete,
    isometry_failure, tilde_isometry, TildeCheck, Uniqueness,
};
use crate::error::{Error, Result};
use crate::filters::{Filter, MinimalityMethod};
use crate::io::{AnySpace, SpaceData};
use crate::pointset::PointSet;
use crate::quantale::ValueQuantale;
use crate::structures::{
    non_closed_ball, quasi_uniformity_of, topology_of, uva_equivalence_report, va_equivalence_report,
};
use crate::vspace::{Side, VSpace};
use crate::with_space;

const NO_POSITIVE: &str = "no ε ≻ 0 in this quantale";
const NOT_UVA: &str = "hypothesis: uniformly vanishing asymmetry";
const CONV_SAMPLES: usize = 200;

type Checks = Vec<(&'static str, Outcome)>;

fn gated(holds: bool, reason: &str, check: impl FnOnce() -> Result<Outcome>) -> Result<Outcome> {
    if holds {
        check()
    } else {
        Ok(Outcome::Skip(reason.to_string()))
    }
}

/// First filter violating `bad`, described.
fn find_filter<Q: ValueQuantale>(
    space: &VSpace<Q>,
    filters: &[Filter],
    mut bad: impl FnMut(&Filter) -> Result<bool>,
) -> Result<Outcome> {
    for f in filters {
        if bad(f)? {
            return Ok(Outcome::Fail(format!("at {}", f.describe(space))));
        }
    }
    Ok(Outcome::Pass)
}

fn filter_checks<Q: ValueQuantale>(space: &VSpace<Q>, uva: bool, va: bool, rng: &mut ChaCha8Rng) -> Result<Checks> {
    let n = space.len();
    let q = space.quantale();
    let eps = space.epsilon_test_set().to_vec();
    let positive = !eps.is_empty();
    let proper: Vec<Filter> = PointSet::all_subsets(n)
        .filter(|c| !c.is_empty())
        .map(|c| Filter::principal(n, c).expect("core in carrier"))
        .collect();
    let cauchy = |f: &Filter| -> Result<bool> { Ok(space.is_cauchy(f, Side::Forward)?.holds()) };
    let round = |f: &Filter| -> Result<bool> { Ok(space.is_round(f)?.holds()) };
    let minimal = |f: &Filter| space.is_minimal_cauchy(f, MinimalityMethod::Definitional);
    let mut out = Checks::new();

    out.push((
        "prop.cauchy_round_minimal",
        find_filter(space, &proper, |f| Ok(cauchy(f)? && round(f)? && !minimal(f)?))?,
    ));
    out.push((
        "prop.roundify_cauchy",
        find_filter(space, &proper, |f| Ok(cauchy(f)? && !cauchy(&space.roundify(f)?)?))?,
    ));
    out.push((
        "lem.roundify_round",
        gated(uva, NOT_UVA, || {
            gated(positive, NO_POSITIVE, || find_filter(space, &proper, |f| Ok(!round(&space.roundify(f)?)?)))
        })?,
    ));
    out.push((
        "cor.roundify_minimal",
        gated(uva, NOT_UVA, || {
            find_filter(space, &proper, |f| {
                let r = space.roundify(f)?;
                Ok(cauchy(f)? && !(r.is_proper() && minimal(&r)?))
            })
        })?,
    ));
    out.push((
        "cor.minimal_iff_cauchy_round",
        gated(uva, NOT_UVA, || {
            gated(positive, NO_POSITIVE, || {
                find_filter(space, &proper, |f| {
                    let m = minimal(f)?;
                    let c = space.is_minimal_cauchy(f, MinimalityMethod::Characterization)?;
                    Ok(m != (cauchy(f)? && round(f)?) || m != c)
                })
            })
        })?,
    ));
    out.push((
        "filters.roundify_idempotent",
        gated(uva, NOT_UVA, || {
            find_filter(space, &proper, |f| {
                if !cauchy(f)? {
                    return Ok(false);
                }
                let r = space.roundify(f)?;
                let fixed = !round(f)? || r == *f;
                Ok(space.roundify(&r)? != r || !fixed)
            })
        })?,
    ));
    // idempotence off the Cauchy filters is observed, not claimed
    let drift = proper.iter().find(|f| {
        !cauchy(f).unwrap_or(true) && round(f).unwrap_or(false) && space.roundify(f).ok().as_ref() != Some(*f)
    });
    out.push((
        "filters.roundify_idempotent_non_cauchy",
        match drift {
            None => Outcome::Pass,
            Some(f) => Outcome::Skip(format!("observed: round non-Cauchy {} is moved", f.describe(space))),
        },
    ));
    let point_filters = |side| -> Result<Vec<Filter>> { (0..n).map(|x| space.point_filter(x, side)).collect() };
    let (fwd, bwd) = (point_filters(Side::Forward)?, point_filters(Side::Backward)?);
    out.push((
        "prop.point_filter_round",
        gated(uva, NOT_UVA, || {
            gated(positive, NO_POSITIVE, || find_filter(space, &fwd, |f| Ok(!round(f)?)))
        })?,
    ));
    out.push((
        "prop.point_filters_coincide",
        gated(va, "hypothesis: vanishing asymmetry", || {
            Ok(Outcome::first_failure((0..n).find(|&x| fwd[x] != bwd[x]).map(|x| {
                format!(
                    "F_{0} = {1} but F^{0} = {2}",
                    space.name(x),
                    fwd[x].describe(space),
                    bwd[x].describe(space)
                )
            })))
        })?,
    ));
    out.push((
        "prop.cauchy_iff_op_cauchy",
        gated(uva, NOT_UVA, || {
            find_filter(space, &proper, |f| Ok(cauchy(f)? != space.is_cauchy(f, Side::Backward)?.holds()))
        })?,
    ));
    out.push((
        "prop.conv_inequalities",
        gated(positive, NO_POSITIVE, || {
            for _ in 0..CONV_SAMPLES {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let delta = eps.choose(rng).expect("nonempty");
                let e = eps.choose(rng).expect("nonempty");
                let pick = |ball: PointSet, rng: &mut ChaCha8Rng| -> PointSet {
                    let mut s: PointSet = ball.iter().filter(|_| rng.gen_bool(0.5)).collect();
                    if s.is_empty() {
                        s.insert(ball.iter().collect::<Vec<_>>()[rng.gen_range(0..ball.len())]);
                    }
                    s
                };
                let s = pick(space.ball(x, delta, Side::Backward)?, rng);
                let t = pick(space.ball(y, e, Side::Forward)?, rng);
                let slack = q.add(delta, e);
                let first = q.leq(&space.set_distance(&s, &t), &q.add(space.d(x, y), &slack));
                let second = q.leq(space.d(y, x), &q.add(&space.set_distance(&t, &s), &slack));
                if !(first && second) {
                    return Ok(Outcome::Fail(format!(
                        "x = {}, y = {}, δ = {}, ε = {}, S = {}, T = {}",
                        space.name(x),
                        space.name(y),
                        q.format_elem(delta),
                        q.format_elem(e),
                        space.format_set(&s),
                        space.format_set(&t)
                    )));
                }
            }
            Ok(Outcome::Pass)
        })?,
    ));
    Ok(out)
}

fn completion_checks<Q: ValueQuantale>(space: &VSpace<Q>, uva: bool, rng: &mut ChaCha8Rng) -> Result<Checks> {
    let mut out = Checks::new();
    let ids = [
        "prop.quotient_inherits_uva",
        "lem.tilde_is_uva_space",
        "thm.zero_distance_intersection_cauchy",
        "thm.completion_isometric_to_tilde_quotient",
        "cor.completion_separated_uva",
        "lem.embedding_isometry",
        "cor.embedding_injective_iff_separated",
        "lem.embedding_dense",
        "thm.completion_cauchy_complete",
        "completion.idempotent",
        "completion.functorial",
    ];
    if !uva {
        out.extend(ids.map(|id| (id, Outcome::Skip(NOT_UVA.into()))));
        return Ok(out);
    }
    let q = space.quantale();
    let n = space.len();

    let (quotient, _) = space.separation_quotient()?;
    out.push((
        "prop.quotient_inherits_uva",
        Outcome::first_failure(quotient.has_uva().witness().map(|e| format!("quotient fails at ε = {}", q.format_elem(e)))),
    ));

    let tilde = cauchy_filter_space(space)?;
    let report = tilde.space.validate();
    out.push((
        "lem.tilde_is_uva_space",
        if !report.is_valid() {
            Outcome::Fail(format!("X̃ is not a V-space:\n{report}"))
        } else {
            Outcome::first_failure(tilde.space.has_uva().witness().map(|e| format!("X̃ fails at ε = {}", q.format_elem(e))))
        },
    ));

    let mut zero_pair = None;
    for f in &tilde.filters {
        for g in &tilde.filters {
            if space.filter_distance(f, g)? == q.bottom() {
                let meet = f.intersect(g)?;
                if !space.is_cauchy(&meet, Side::Forward)?.holds() {
                    zero_pair = Some(format!("{} ∩ {}", f.describe(space), g.describe(space)));
                }
            }
        }
    }
    out.push(("thm.zero_distance_intersection_cauchy", Outcome::first_failure(zero_pair)));

    let c = complete(space)?;
    out.push((
        "thm.completion_isometric_to_tilde_quotient",
        match c.tilde_check {
            TildeCheck::Skipped { cauchy_filters } => Outcome::Skip(format!("{cauchy_filters} Cauchy filters")),
            TildeCheck::Verified => Outcome::first_failure(tilde_isometry(&c)?.witness().cloned()),
        },
    ));
    let hat = &c.space;
    let separated = hat.separation_witness();
    out.push((
        "cor.completion_separated_uva",
        match (separated, hat.has_uva()) {
            (Some((a, b)), _) => Outcome::Fail(format!("{} and {} are inseparable in X̂", hat.name(a), hat.name(b))),
            (None, crate::vspace::Verdict::Fails(e)) => Outcome::Fail(format!("X̂ fails at ε = {}", q.format_elem(&e))),
            _ => Outcome::Pass,
        },
    ));
    let iota = &c.embedding;
    let mut isometry = None;
    for x in 0..n {
        for y in 0..n {
            if hat.d(iota[x], iota[y]) != space.d(x, y) {
                isometry = Some(format!(
                    "d(ι {0}, ι {1}) = {2} but d({0}, {1}) = {3}",
                    space.name(x),
                    space.name(y),
                    q.format_elem(hat.d(iota[x], iota[y])),
                    q.format_elem(space.d(x, y))
                ));
            }
        }
    }
    out.push(("lem.embedding_isometry", Outcome::first_failure(isometry)));
    let injective = (0..n).all(|x| (0..x).all(|y| iota[x] != iota[y]));
    out.push((
        "cor.embedding_injective_iff_separated",
        Outcome::check(injective == space.classify().separated, || {
            format!("ι injective: {injective}, X separated: {}", space.classify().separated)
        }),
    ));
    let mut dense = None;
    for g in 0..hat.len() {
        for e in hat.epsilon_test_set() {
            if !(0..n).any(|x| q.leq(hat.d(g, iota[x]), e)) {
                dense = Some(format!("{} is farther than {} from ι(X)", hat.name(g), q.format_elem(e)));
            }
        }
    }
    out.push(("lem.embedding_dense", Outcome::first_failure(dense)));
    out.push((
        "thm.completion_cauchy_complete",
        Outcome::first_failure(
            is_cauchy_complete(hat, Side::Forward)?
                .witness()
                .map(|f| format!("{} has no limit", f.describe(hat))),
        ),
    ));
    let cc = complete(hat)?;
    let bijective = cc.points.len() == hat.len();
    out.push((
        "completion.idempotent",
        if !bijective {
            Outcome::Fail(format!("X̂ has {} points, its completion {}", hat.len(), cc.points.len()))
        } else {
            Outcome::first_failure(isometry_failure(hat, &cc.space, &cc.embedding))
        },
    ));

    // a random uniformly continuous self-map of the separation quotient
    let (sep, _) = space.separation_quotient()?;
    let m = sep.len();
    let candidates: Vec<Vec<usize>> = (0..16)
        .map(|_| (0..m).map(|_| rng.gen_range(0..m)).collect::<Vec<usize>>())
        .collect();
    let mut uc = Vec::new();
    for f in candidates {
        if sep.is_uniformly_continuous(&f, &sep)?.holds() {
            uc.push(f);
        }
    }
    let f = uc.first().cloned().unwrap_or_else(|| (0..m).collect());
    let cs = complete(&sep)?;
    let lifted = completion_map(&f, &cs, &cs)?;
    let commutes = (0..m).find(|&x| lifted[cs.embedding[x]] != cs.embedding[f[x]]);
    out.push((
        "completion.functorial",
        match (commutes, cs.space.is_uniformly_continuous(&lifted, &cs.space)?) {
            (Some(x), _) => Outcome::Fail(format!("f = {f:?}: the lift moves ι {} off ι f", sep.name(x))),
            (None, crate::vspace::Verdict::Fails(e)) => {
                Outcome::Fail(format!("f = {f:?}: the lift is not uniformly continuous at {}", q.format_elem(&e)))
            }
            _ => Outcome::Pass,
        },
    ));
    Ok(out)
}

fn structure_checks<Q: ValueQuantale>(space: &VSpace<Q>, uva: bool, va: bool) -> Result<Checks> {
    let n = space.len();
    let q = space.quantale();
    let mut out = Checks::new();
    let describe = |r: &crate::structures::EquivalenceReport| {
        r.conditions
            .iter()
            .map(|c| format!("{}: {}", c.name, c.holds))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let va_report = va_equivalence_report(space)?;
    let uva_report = uva_equivalence_report(space)?;
    out.push(("structures.va_list", Outcome::check(va_report.consistent, || describe(&va_report))));
    out.push(("structures.uva_list", Outcome::check(uva_report.consistent, || describe(&uva_report))));
    out.push(("structures.uva_implies_va", Outcome::check(!uva || va, || "UVA holds without VA".into())));
    let zero = q.bottom();
    let zero_pattern = (0..n).all(|x| (0..n).all(|y| (*space.d(x, y) == zero) == (*space.d(y, x) == zero)));
    out.push((
        "finite.collapse",
        Outcome::check(va == uva && uva == zero_pattern, || {
            format!("VA {va}, UVA {uva}, symmetric zero pattern {zero_pattern}")
        }),
    ));
    let mut topo = None;
    for side in [Side::Forward, Side::Backward] {
        let t = topology_of(space, side);
        let u = quasi_uniformity_of(space, side).topology();
        if let Some(x) = t.refinement_failure(&u).or_else(|| u.refinement_failure(&t)) {
            topo = Some(format!("{side:?} topologies differ at {}", space.name(x)));
        }
    }
    out.push(("structures.uniformity_topology", Outcome::first_failure(topo)));
    let ball = |b: Option<(usize, Q::Elem)>| {
        b.map(|(x, e)| format!("B_{}({}) is not closed", q.format_elem(&e), space.name(x)))
    };
    out.push((
        "structures.balls_closed_op",
        Outcome::first_failure(ball(non_closed_ball(space, &topology_of(space, Side::Backward)))),
    ));
    out.push((
        "structures.balls_closed_va",
        gated(va, "hypothesis: vanishing asymmetry", || {
            Ok(Outcome::first_failure(ball(non_closed_ball(space, &topology_of(space, Side::Forward)))))
        })?,
    ));
    out.push((
        "structures.hausdorff",
        gated(va && space.classify().separated, "hypothesis: separated with vanishing asymmetry", || {
            Ok(Outcome::first_failure(
                topology_of(space, Side::Forward)
                    .hausdorff_failure()
                    .map(|(x, y)| format!("{} and {} cannot be separated", space.name(x), space.name(y))),
            ))
        })?,
    ));
    Ok(out)
}

/// All per-instance checks. Statements whose hypothesis fails are skipped.
pub(crate) fn check_instance<Q: ValueQuantale>(space: &VSpace<Q>, seed: u64) -> Result<Checks> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let uva = space.has_uva().holds();
    let va = space.has_va().holds();
    let mut out = filter_checks(space, uva, va, &mut rng)?;
    out.extend(completion_checks(space, uva, &mut rng)?);
    out.extend(structure_checks(space, uva, va)?);
    if space.quantale().elements().is_some_and(|e| e.len() == 1) {
        let c = complete(space)?;
        out.push((
            "degenerate.single_point_completion",
            Outcome::check(uva && c.points.len() == 1, || format!("{} points in the completion", c.points.len())),
        ));
    }
    Ok(out)
}

/// Runs every theorem check over `count` generated instances. Refuses
/// unless every oracle has passed.
pub fn run_theorem_suite(gen: &InstanceGenerator, count: usize, oracles: &OracleStatus) -> Result<Vec<VerificationReport>> {
    if !oracles.is_current() {
        return Err(Error::Precondition(
            "the oracles for the fast paths have not all passed".into(),
        ));
    }
    let start = Instant::now();
    let results: Vec<(u64, SpaceData, Result<Checks>)> = gen
        .instances(count)
        .into_par_iter()
        .map(|inst| {
            let data = inst.space.data();
            let checks = with_space!(&inst.space, s => check_instance(s, inst.seed));
            (inst.seed, data, checks)
        })
        .collect();
    let mut tally = Tally::default();
    for (seed, data, checks) in results {
        let instance = json!({ "generator": gen, "space": data });
        match checks {
            Ok(checks) => {
                for (id, outcome) in checks {
                    tally.record(id, seed, &instance, outcome);
                }
            }
            Err(e) => tally.record("suite.error", seed, &instance, Outcome::Fail(e.to_string())),
        }
    }
    Ok(tally.finish(start.elapsed()))
}

fn universal_pair<Q: ValueQuantale>(x: &VSpace<Q>, y: &VSpace<Q>, seed: u64) -> Result<(Vec<usize>, Outcome)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m) = (x.len(), y.len());
    let mut maps = Vec::new();
    for code in 0..m.pow(n as u32) {
        let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
        if x.is_uniformly_continuous(&f, y)?.holds() {
            maps.push(f);
        }
    }
    let f = maps.choose(&mut rng).cloned().expect("constant maps are uniformly continuous");
    let ext = match extend_to_completion(x, &f, y) {
        Ok(ext) => ext,
        Err(e) => return Ok((f, Outcome::Fail(e.to_string()))),
    };
    let hat = &ext.completion.space;
    let commutes = (0..n).all(|i| ext.map[ext.completion.embedding[i]] == f[i]);
    let outcome = if !commutes {
        Outcome::Fail(format!("F ∘ ι = {:?} differs from f", (0..n).map(|i| ext.map[ext.completion.embedding[i]]).collect::<Vec<_>>()))
    } else if !hat.is_uniformly_continuous(&ext.map, y)?.holds() {
        Outcome::Fail(format!("F = {:?} is not uniformly continuous", ext.map))
    } else {
        match ext.uniqueness {
            Uniqueness::Verified { candidates: 1 } => Outcome::Pass,
            Uniqueness::Verified { candidates } => Outcome::Fail(format!("{candidates} extensions")),
            Uniqueness::Skipped => Outcome::Fail("uniqueness was not enumerated".into()),
        }
    };
    Ok((f, outcome))
}

/// `extend_to_completion` on `pairs` pairs of separated spaces with uniformly
/// vanishing asymmetry, each with a random uniformly continuous map.
pub fn check_universal_property(gen: &InstanceGenerator, pairs: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let gen = InstanceGenerator {
        max_points: gen.max_points.min(4),
        ..gen.clone()
    }
    .uva()
    .separated();
    let mut tally = Tally::default();
    for i in 0..pairs as u64 {
        let (a, b) = (gen.instance(2 * i), gen.instance(2 * i + 1));
        let (f, outcome) = match (&a.space, &b.space) {
            (AnySpace::Rational(x), AnySpace::Rational(y)) => universal_pair(x, y, a.seed)?,
            (AnySpace::Finite(x), AnySpace::Finite(y)) => universal_pair(x, y, a.seed)?,
            _ => unreachable!("one generator yields one quantale"),
        };
        let instance = json!({ "x": a.space.data(), "y": b.space.data(), "f": f, "y_seed": b.seed });
        tally.record("cor.universal_property", a.seed, &instance, outcome);
    }
    let mut reports = tally.finish(start.elapsed());
    Ok(reports.pop().unwrap_or_else(|| VerificationReport::new("cor.universal_property")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_points: usize,
    pub ext_rational_instances: usize,
    pub q3_instances: usize,
    pub q1_instances: usize,
    pub chain4_instances: usize,
    /// Instances without forced UVA, for the equivalence lists.
    pub unconstrained_instances: usize,
    pub category_seeds: usize,
    pub universal_pairs: usize,
    pub epsilon_spaces: usize,
    pub epsilon_samples: usize,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig {
            seed,
            max_points: 5,
            ext_rational_instances: 200,
            q3_instances: 100,
            q1_instances: 20,
            chain4_instances: 50,
            unconstrained_instances: 100,
            category_seeds: 50,
            universal_pairs: 50,
            epsilon_spaces: 50,
            epsilon_samples: 1000,
        }
    }

    /// Scales every instance count to `count`, keeping the sample size.
    pub fn with_instances(mut self, count: usize) -> Self {
        self.ext_rational_instances = count;
        self.q3_instances = count;
        self.q1_instances = count.min(20);
        self.chain4_instances = count;
        self.unconstrained_instances = count;
        self.category_seeds = count;
        self.universal_pairs = count;
        self.epsilon_spaces = count;
        self
    }

    fn generator(&self, salt: u64, quantale: QuantaleChoice) -> InstanceGenerator {
        InstanceGenerator::new(super::splitmix64(self.seed ^ salt), quantale).points(1, self.max_points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub reports: Vec<VerificationReport>,
}

impl Section {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    pub config: SuiteConfig,
    pub sections: Vec<Section>,
}

impl FullReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn report(&self, id: &str) -> Option<&VerificationReport> {
        self.sections.iter().flat_map(|s| &s.reports).find(|r| r.id == id)
    }
}

/// Which parts of [`run_all`] to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracles,
    Theorems,
    Category,
    Universal,
}

/// Oracles first, then the theorem suite over each quantale family, the
/// category laws and the universal property.
pub fn run_all(config: &SuiteConfig, suite: Suite) -> Result<FullReport> {
    let mut sections = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let needs_oracles = suite != Suite::Category && suite != Suite::Universal;
    let oracles = if needs_oracles {
        let mut reports = vec![oracle_well_above(&lattice_corpus(5))];
        for n in 1..=3 {
            reports.extend(oracle_filters(n)?);
        }
        sections.push(Section {
            name: "oracles.lattices_and_filters".into(),
            reports: reports.clone(),
        });
        let eps = epsilon_reports(super::splitmix64(config.seed), config.epsilon_spaces, config.epsilon_samples, config.max_points)?;
        sections.push(Section {
            name: "oracles.epsilon_reduction".into(),
            reports: eps.clone(),
        });
        reports.extend(eps);
        Some(OracleStatus { reports })
    } else {
        None
    };
    if wants(Suite::Theorems) {
        let oracles = oracles.as_ref().expect("established above");
        for (name, salt, choice, count, uva) in [
            ("theorems.ext_rational", 1, QuantaleChoice::ExtRational, config.ext_rational_instances, true),
            ("theorems.q3", 2, QuantaleChoice::Q3, config.q3_instances, true),
            ("theorems.chain4", 3, QuantaleChoice::Chain4, config.chain4_instances, true),
            ("theorems.q1", 4, QuantaleChoice::Q1, config.q1_instances, false),
            ("theorems.unconstrained_ext_rational", 5, QuantaleChoice::ExtRational, config.unconstrained_instances, false),
            ("theorems.unconstrained_q3", 6, QuantaleChoice::Q3, config.unconstrained_instances, false),
        ] {
            let mut gen = config.generator(salt, choice);
            if uva {
                gen = gen.uva();
            }
            sections.push(Section {
                name: name.into(),
                reports: run_theorem_suite(&gen, count, oracles)?,
            });
        }
    }
    if wants(Suite::Category) {
        let mut reports = Vec::new();
        for (salt, choice) in [(7, QuantaleChoice::ExtRational), (8, QuantaleChoice::Q3)] {
            let gen = config.generator(salt, choice).points(1, 3).uva();
            reports.extend(check_category_laws(&gen, config.category_seeds)?);
        }
        sections.push(Section {
            name: "category".into(),
            reports: merge(reports),
        });
    }
    if wants(Suite::Universal) {
        let mut reports = Vec::new();
        for (salt, choice) in [(9, QuantaleChoice::ExtRational), (10, QuantaleChoice::Q3)] {
            reports.push(check_universal_property(&config.generator(salt, choice), config.universal_pairs)?);
        }
        sections.push(Section {
            name: "universal_property".into(),
            reports: merge(reports),
        });
    }
    Ok(FullReport {
        config: config.clone(),
        sections,
    })
}

/// Combines reports with the same id, keeping first-seen order.
fn merge(reports: Vec<VerificationReport>) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = Vec::new();
    for r in reports {
        match out.iter_mut().find(|o| o.id == r.id) {
            Some(o) => {
                o.instances += r.instances;
                o.passes += r.passes;
                o.skipped += r.skipped;
                for reason in r.skip_reasons {
                    if !o.skip_reasons.contains(&reason) {
                        o.skip_reasons.push(reason);
                    }
                }
                o.failures.extend(r.failures);
                o.runtime += r.runtime;
            }
            None => out.push(r),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{x2a, x2n, x3z};

    fn ids(checks: &Checks) -> Vec<(&'static str, bool)> {
        checks.iter().map(|(id, o)| (*id, !matches!(o, Outcome::Fail(_)))).collect()
    }

    #[test]
    fn fixtures_pass_every_check() {
        for space in [x2a(), x2n(), x3z()] {
            let checks = check_instance(&space, 3).unwrap();
            assert!(checks.iter().all(|(_, o)| !matches!(o, Outcome::Fail(_))), "{:?}", ids(&checks));
        }
        let checks = check_instance(&x2n(), 3).unwrap();
        let skipped = checks.iter().find(|(id, _)| *id == "lem.embedding_isometry").unwrap();
        assert_eq!(skipped.1, Outcome::Skip(NOT_UVA.into()));
    }

    #[test]
    fn suite_refuses_without_oracles() {
        let gen = InstanceGenerator::new(1, QuantaleChoice::ExtRational);
        let stale = OracleStatus { reports: Vec::new() };
        assert!(matches!(run_theorem_suite(&gen, 1, &stale), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_run_is_green_and_deterministic() {
        let config = SuiteConfig::new(7).with_instances(4);
        let config = SuiteConfig { epsilon_samples: 50, ..config };
        let a = run_all(&config, Suite::All).unwrap();
        assert!(a.passed(), "{}", serde_json::to_string_pretty(&a).unwrap());
        let b = run_all(&config, Suite::All).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn degenerate_completions_are_points() {
        let gen = InstanceGenerator::new(5, QuantaleChoice::Q1);
        for inst in gen.instances(10) {
            let AnySpace::Finite(s) = &inst.space else { unreachable!() };
            let checks = check_instance(s, inst.seed).unwrap();
            let d = checks.iter().find(|(id, _)| *id == "degenerate.single_point_completion").unwrap();
            assert_eq!(d.1, Outcome::Pass);
        }
    }
}
