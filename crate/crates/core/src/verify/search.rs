//! Mining spaces without uniformly vanishing asymmetry for failures of the
//! conclusions that assume it. A finding is a report, not a claim that one
//! must exist.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generator::InstanceGenerator;
use crate::completion::{is_cauchy_complete, maximal_cauchy_cores};
use crate::error::{Error, Result};
use crate::filters::{Filter, MinimalityMethod};
use crate::io::{AnySpace, SpaceData};
use crate::pointset::PointSet;
use crate::quantale::ValueQuantale;
use crate::vspace::{Side, VSpace};
use crate::with_space;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTarget {
    RoundifyRoundWithoutUva,
    MinimalIffWithoutUva,
    EmbeddingIsometryWithoutUva,
    CompletenessWithoutUva,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 4] = [
        SearchTarget::RoundifyRoundWithoutUva,
        SearchTarget::MinimalIffWithoutUva,
        SearchTarget::EmbeddingIsometryWithoutUva,
        SearchTarget::CompletenessWithoutUva,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::RoundifyRoundWithoutUva => "roundify-round-without-uva",
            SearchTarget::MinimalIffWithoutUva => "minimal-iff-without-uva",
            SearchTarget::EmbeddingIsometryWithoutUva => "embedding-isometry-without-uva",
            SearchTarget::CompletenessWithoutUva => "completeness-without-uva",
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SearchTarget::ALL
            .into_iter()
            .find(|t| t.name() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                let names: Vec<&str> = SearchTarget::ALL.iter().map(|t| t.name()).collect();
                Error::Precondition(format!("unknown target `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub target: SearchTarget,
    pub seed: u64,
    pub original: SpaceData,
    pub shrunk: SpaceData,
    pub witness: String,
}

fn proper_filters(n: usize) -> impl Iterator<Item = Filter> {
    PointSet::all_subsets(n)
        .filter(|c| !c.is_empty())
        .map(move |c| Filter::principal(n, c).expect("core in carrier"))
}

/// The violated conclusion on `space`, if any.
fn violation<Q: ValueQuantale>(space: &VSpace<Q>, target: SearchTarget) -> Result<Option<String>> {
    let n = space.len();
    let q = space.quantale();
    match target {
        SearchTarget::RoundifyRoundWithoutUva => {
            if space.epsilon_test_set().is_empty() {
                return Ok(None);
            }
            for f in proper_filters(n) {
                let r = space.roundify(&f)?;
                if !space.is_round(&r)?.holds() {
                    return Ok(Some(format!("{} roundifies to {}, which is not round", f.describe(space), r.describe(space))));
                }
            }
        }
        SearchTarget::MinimalIffWithoutUva => {
            for f in proper_filters(n) {
                let minimal = space.is_minimal_cauchy(&f, MinimalityMethod::Definitional)?;
                let cr = space.is_cauchy(&f, Side::Forward)?.holds() && space.is_round(&f)?.holds();
                if minimal != cr {
                    return Ok(Some(format!(
                        "{} is minimal Cauchy: {minimal}, Cauchy and round: {cr}",
                        f.describe(space)
                    )));
                }
            }
        }
        SearchTarget::EmbeddingIsometryWithoutUva => {
            let pf: Vec<Filter> = (0..n).map(|x| space.point_filter(x, Side::Forward)).collect::<Result<_>>()?;
            for x in 0..n {
                for y in 0..n {
                    let d = space.filter_distance(&pf[x], &pf[y])?;
                    if d != *space.d(x, y) {
                        return Ok(Some(format!(
                            "d(F_{0}, F_{1}) = {2} but d({0}, {1}) = {3}",
                            space.name(x),
                            space.name(y),
                            q.format_elem(&d),
                            q.format_elem(space.d(x, y))
                        )));
                    }
                }
            }
        }
        SearchTarget::CompletenessWithoutUva => {
            let points: Vec<PointSet> = maximal_cauchy_cores(space, Side::Forward);
            let d = points
                .iter()
                .map(|a| points.iter().map(|b| space.set_distance(a, b)).collect())
                .collect();
            let names = points.iter().map(|c| space.format_set(c)).collect();
            let hat = VSpace::new(q.clone(), names, d)?;
            if let Some(g) = is_cauchy_complete(&hat, Side::Forward)?.witness() {
                return Ok(Some(format!(
                    "in the space of minimal Cauchy filters, {} has no limit",
                    g.describe(&hat)
                )));
            }
        }
    }
    Ok(None)
}

/// A candidate is kept only while it is a valid space, still lacks uniform
/// vanishing asymmetry, and still violates the target.
fn interesting<Q: ValueQuantale>(space: &VSpace<Q>, target: SearchTarget) -> Result<Option<String>> {
    if !space.is_valid() || space.has_uva().holds() {
        return Ok(None);
    }
    violation(space, target)
}

/// Greedy shrinking: drop points, then coarsen entries toward 0, 1 and ∞.
fn shrink<Q: ValueQuantale>(mut space: VSpace<Q>, mut witness: String, target: SearchTarget) -> Result<(VSpace<Q>, String)> {
    'points: loop {
        for x in 0..space.len() {
            if space.len() == 1 {
                break 'points;
            }
            let mut keep = space.carrier();
            keep.remove(x);
            let smaller = space.restrict(&keep);
            if let Some(w) = interesting(&smaller, target)? {
                (space, witness) = (smaller, w);
                continue 'points;
            }
        }
        break;
    }
    let q = space.quantale().clone();
    let mut coarse = vec![q.bottom()];
    coarse.extend(q.parse_elem("1").ok());
    coarse.push(q.top());
    let n = space.len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            for c in &coarse {
                if space.d(x, y) == c {
                    break;
                }
                let mut d = space.matrix().to_vec();
                d[x][y] = c.clone();
                let candidate = VSpace::new(q.clone(), space.points().to_vec(), d)?;
                if let Some(w) = interesting(&candidate, target)? {
                    (space, witness) = (candidate, w);
                    break;
                }
            }
        }
    }
    Ok((space, witness))
}

fn probe<Q: ValueQuantale>(space: &VSpace<Q>, target: SearchTarget, seed: u64) -> Result<Option<Finding>> {
    let Some(witness) = interesting(space, target)? else {
        return Ok(None);
    };
    let (shrunk, witness) = shrink(space.clone(), witness, target)?;
    Ok(Some(Finding {
        target,
        seed,
        original: SpaceData::of(space),
        shrunk: SpaceData::of(&shrunk),
        witness,
    }))
}

/// Examines `budget` generated instances; UVA instances are passed over.
pub fn search_counterexamples(target: SearchTarget, gen: &InstanceGenerator, budget: usize) -> Result<Vec<Finding>> {
    let results: Vec<Result<Option<Finding>>> = (0..budget as u64)
        .into_par_iter()
        .map(|i| {
            let inst = gen.instance(i);
            let space: &AnySpace = &inst.space;
            with_space!(space, s => probe(s, target, inst.seed))
        })
        .collect();
    results.into_iter().filter_map(Result::transpose).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::x2n;
    use crate::verify::QuantaleChoice;

    #[test]
    fn zero_budget_is_empty() {
        let gen = InstanceGenerator::new(1, QuantaleChoice::ExtRational);
        for t in SearchTarget::ALL {
            assert!(search_counterexamples(t, &gen, 0).unwrap().is_empty());
            assert_eq!(t.name().parse::<SearchTarget>().unwrap(), t);
        }
        assert!("nonsense".parse::<SearchTarget>().is_err());
    }

    #[test]
    fn findings_are_shrunk_and_replayable() {
        let gen = InstanceGenerator::new(3, QuantaleChoice::ExtRational);
        for t in SearchTarget::ALL {
            for f in search_counterexamples(t, &gen, 60).unwrap() {
                let AnySpace::Rational(shrunk) = f.shrunk.resolve().unwrap() else { unreachable!() };
                assert!(interesting(&shrunk, t).unwrap().is_some());
                assert!(shrunk.len() <= f.original.points.len());
                let AnySpace::Rational(orig) = gen.from_seed(f.seed) else { unreachable!() };
                assert_eq!(SpaceData::of(&orig), f.original);
            }
        }
    }

    #[test]
    fn x2n_probe() {
        // X2n lacks uniform vanishing asymmetry; whatever is found must
        // reproduce on the shrunk space
        for t in SearchTarget::ALL {
            if let Some(f) = probe(&x2n(), t, 0).unwrap() {
                assert!(!f.witness.is_empty());
            }
        }
    }
}
