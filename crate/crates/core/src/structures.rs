//! The topology and quasi-uniformity induced by a finite space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::quantale::ValueQuantale;
use crate::vspace::{Side, VSpace, Verdict};

/// A topology on a finite carrier, held as the minimal open neighbourhood
/// of each point. A set is open iff it contains the neighbourhood of each
/// of its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    neighbourhoods: Vec<PointSet>,
}

/// Largest carrier for which [`FiniteTopology::opens`] lists every open set.
pub const OPENS_LIMIT: usize = 20;

impl FiniteTopology {
    pub fn from_neighbourhoods(neighbourhoods: Vec<PointSet>) -> Self {
        FiniteTopology { neighbourhoods }
    }

    pub fn len(&self) -> usize {
        self.neighbourhoods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbourhoods.is_empty()
    }

    pub fn neighbourhood(&self, x: usize) -> &PointSet {
        &self.neighbourhoods[x]
    }

    pub fn neighbourhoods(&self) -> &[PointSet] {
        &self.neighbourhoods
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        s.iter().all(|x| self.neighbourhoods[x].is_subset(s))
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.is_open(&PointSet::full(self.len()).difference(s))
    }

    /// Every open set, sorted.
    pub fn opens(&self) -> Result<Vec<PointSet>> {
        if self.len() > OPENS_LIMIT {
            return Err(Error::TooLarge(format!("{} points to list open sets", self.len())));
        }
        let mut opens = vec![PointSet::new()];
        for nb in &self.neighbourhoods {
            let extra: Vec<PointSet> = opens.iter().map(|o| o.union(nb)).collect();
            opens.extend(extra);
            opens.sort();
            opens.dedup();
        }
        Ok(opens)
    }

    /// Distinct points without disjoint neighbourhoods, if any.
    pub fn hausdorff_failure(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.neighbourhoods[x].is_disjoint(&self.neighbourhoods[y]))
    }

    /// A point of some open set of `self` whose neighbourhood in `finer`
    /// escapes it, showing `finer` does not refine `self`.
    pub fn refinement_failure(&self, finer: &FiniteTopology) -> Option<usize> {
        (0..self.len()).find(|&x| !finer.is_open(&self.neighbourhoods[x]))
    }
}

/// `{y | ε ≻ d(x,y)}`.
pub fn strict_ball<Q: ValueQuantale>(space: &VSpace<Q>, x: usize, eps: &Q::Elem, side: Side) -> PointSet {
    let q = space.quantale();
    (0..space.len())
        .filter(|&y| q.well_above(eps, space.dist(side, x, y)))
        .collect()
}

/// `O(X)`, generated by the strict balls over the test set; backward gives `O(X^op)`.
pub fn topology_of<Q: ValueQuantale>(space: &VSpace<Q>, side: Side) -> FiniteTopology {
    topology_over(space, side, space.epsilon_test_set())
}

pub(crate) fn topology_over<Q: ValueQuantale>(space: &VSpace<Q>, side: Side, eps: &[Q::Elem]) -> FiniteTopology {
    let n = space.len();
    let balls: Vec<PointSet> = (0..n)
        .flat_map(|x| eps.iter().map(move |e| (x, e)))
        .map(|(x, e)| strict_ball(space, x, e, side))
        .collect();
    let neighbourhoods = (0..n)
        .map(|x| {
            balls
                .iter()
                .filter(|b| b.contains(x))
                .fold(space.carrier(), |acc, b| acc.intersection(b))
        })
        .collect();
    FiniteTopology { neighbourhoods }
}

/// A quasi-uniformity on a finite carrier, held as the least entourage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiUniformity {
    /// Row `x` lists the `y` with `(x, y)` in the core.
    rows: Vec<PointSet>,
}

impl QuasiUniformity {
    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
            .collect()
    }

    /// The induced topology: the neighbourhoods of `x` are the sections `U[x]`.
    pub fn topology(&self) -> FiniteTopology {
        FiniteTopology {
            neighbourhoods: self.rows.clone(),
        }
    }

    /// A pair in exactly one of the two cores.
    pub fn difference(&self, other: &QuasiUniformity) -> Option<(usize, usize)> {
        for (x, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            let sym = a.difference(b).union(&b.difference(a));
            if let Some(y) = sym.first() {
                return Some((x, y));
            }
        }
        None
    }
}

/// `U(X)`, generated by `U_ε = {(x,y) | d(x,y) ≤ ε}`; its core is `⋂_ε U_ε`.
pub fn quasi_uniformity_of<Q: ValueQuantale>(space: &VSpace<Q>, side: Side) -> QuasiUniformity {
    quasi_uniformity_over(space, side, space.epsilon_test_set())
}

pub(crate) fn quasi_uniformity_over<Q: ValueQuantale>(
    space: &VSpace<Q>,
    side: Side,
    eps: &[Q::Elem],
) -> QuasiUniformity {
    QuasiUniformity {
        rows: (0..space.len())
            .map(|x| {
                eps.iter().fold(space.carrier(), |acc, e| {
                    acc.intersection(&space.ball_unchecked(x, e, side))
                })
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Condition {
    fn new(name: &'static str, witness: Option<String>) -> Self {
        Condition {
            name,
            holds: witness.is_none(),
            witness,
        }
    }
}

/// The verdicts of three conditions that should be equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub conditions: Vec<Condition>,
    pub consistent: bool,
}

impl EquivalenceReport {
    fn new(conditions: Vec<Condition>) -> Self {
        let consistent = conditions.windows(2).all(|w| w[0].holds == w[1].holds);
        EquivalenceReport {
            conditions,
            consistent,
        }
    }

    /// The common verdict, when consistent.
    pub fn verdict(&self) -> Option<bool> {
        self.consistent.then(|| self.conditions.iter().all(|c| c.holds))
    }
}

/// Vanishing asymmetry three ways: a modulus of symmetry at every point,
/// the identity `X^op → X` a homeomorphism, and `O(X) = O(X^op)` as lists
/// of open sets.
pub fn va_equivalence_report<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<EquivalenceReport> {
    let q = space.quantale();
    let modulus = match space.has_va() {
        Verdict::Holds => None,
        Verdict::Fails((x, e)) => Some(format!(
            "no modulus of symmetry at {} for ε = {}",
            space.name(x),
            q.format_elem(&e)
        )),
    };
    let fwd = topology_of(space, Side::Forward);
    let bwd = topology_of(space, Side::Backward);
    let homeo = match (fwd.refinement_failure(&bwd), bwd.refinement_failure(&fwd)) {
        (Some(x), _) => Some(format!(
            "identity X^op → X is not continuous: the neighbourhood {} is not open in O(X^op)",
            space.format_set(fwd.neighbourhood(x))
        )),
        (None, Some(x)) => Some(format!(
            "identity X → X^op is not continuous: the neighbourhood {} is not open in O(X)",
            space.format_set(bwd.neighbourhood(x))
        )),
        (None, None) => None,
    };
    let (of, ob) = (fwd.opens()?, bwd.opens()?);
    let equal = if of == ob {
        None
    } else {
        let s = of
            .iter()
            .find(|s| !ob.contains(s))
            .or_else(|| ob.iter().find(|s| !of.contains(s)))
            .expect("lists differ");
        Some(format!("{} is open in exactly one of O(X), O(X^op)", space.format_set(s)))
    };
    Ok(EquivalenceReport::new(vec![
        Condition::new("modulus of symmetry at every point", modulus),
        Condition::new("identity X^op → X is a homeomorphism", homeo),
        Condition::new("O(X) = O(X^op)", equal),
    ]))
}

/// Uniformly vanishing asymmetry three ways: a uniform modulus of symmetry,
/// both identities between `X` and `X^op` uniformly continuous, and
/// `U(X) = U(X^op)` by their cores.
pub fn uva_equivalence_report<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<EquivalenceReport> {
    let q = space.quantale();
    let modulus = space
        .has_uva()
        .witness()
        .map(|e| format!("no uniform modulus of symmetry for ε = {}", q.format_elem(e)));
    let op = space.dual();
    let id: Vec<usize> = (0..space.len()).collect();
    let uc = match (
        space.is_uniformly_continuous(&id, &op)?,
        op.is_uniformly_continuous(&id, space)?,
    ) {
        (Verdict::Fails(e), _) => Some(format!(
            "identity X → X^op is not uniformly continuous at ε = {}",
            q.format_elem(&e)
        )),
        (_, Verdict::Fails(e)) => Some(format!(
            "identity X^op → X is not uniformly continuous at ε = {}",
            q.format_elem(&e)
        )),
        _ => None,
    };
    let cores = quasi_uniformity_of(space, Side::Forward)
        .difference(&quasi_uniformity_of(space, Side::Backward))
        .map(|(x, y)| {
            format!(
                "({}, {}) lies in exactly one of the cores of U(X), U(X^op)",
                space.name(x),
                space.name(y)
            )
        });
    Ok(EquivalenceReport::new(vec![
        Condition::new("uniform modulus of symmetry", modulus),
        Condition::new("identities X ↔ X^op uniformly continuous", uc),
        Condition::new("U(X) = U(X^op)", cores),
    ]))
}

/// A ball `B_ε(x)`, with `ε` from the test set, that is not closed in the
/// given topology.
pub fn non_closed_ball<Q: ValueQuantale>(
    space: &VSpace<Q>,
    topology: &FiniteTopology,
) -> Option<(usize, Q::Elem)> {
    let eps = space.epsilon_test_set();
    (0..space.len())
        .flat_map(|x| eps.iter().map(move |e| (x, e)))
        .find(|(x, e)| !topology.is_closed(&space.ball_unchecked(*x, e, Side::Forward)))
        .map(|(x, e)| (x, e.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{x2a, x2n, x2s, x3z};

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn topologies() {
        let n = x2n();
        let t = topology_of(&n, Side::Forward);
        assert_eq!(t.opens().unwrap(), vec![set(&[]), set(&[1]), set(&[0, 1])]);
        let t = topology_of(&n, Side::Backward);
        assert_eq!(t.opens().unwrap(), vec![set(&[]), set(&[0]), set(&[0, 1])]);
        let t = topology_of(&x2s(), Side::Forward);
        assert_eq!(t.opens().unwrap().len(), 4);
        assert!(t.hausdorff_failure().is_none());
    }

    #[test]
    fn uniformities() {
        let u = quasi_uniformity_of(&x2a(), Side::Forward);
        assert_eq!(u.pairs(), vec![(0, 0), (1, 1)]);
        let u = quasi_uniformity_of(&x2n(), Side::Forward);
        assert_eq!(u.pairs(), vec![(0, 0), (0, 1), (1, 1)]);
        let s = x3z();
        assert_eq!(quasi_uniformity_of(&s, Side::Forward), quasi_uniformity_of(&s, Side::Backward));
        assert_eq!(u.topology(), topology_of(&x2n(), Side::Forward));
    }

    #[test]
    fn equivalence_lists() {
        let r = uva_equivalence_report(&x2a()).unwrap();
        assert_eq!(r.verdict(), Some(true));
        let r = uva_equivalence_report(&x2n()).unwrap();
        assert_eq!(r.verdict(), Some(false));
        assert!(r.conditions.iter().all(|c| c.witness.is_some()));
        assert!(r.conditions[0].witness.as_ref().unwrap().contains("1/2"));
        let r = va_equivalence_report(&x2s()).unwrap();
        assert_eq!(r.verdict(), Some(true));
        assert_eq!(va_equivalence_report(&x2n()).unwrap().verdict(), Some(false));
    }

    #[test]
    fn ball_closedness() {
        let n = x2n();
        // B_{1/2}(b) = {b} whose complement {a} is not open in O(X)
        let fwd = topology_of(&n, Side::Forward);
        assert_eq!(non_closed_ball(&n, &fwd), Some((1, "1/2".parse().unwrap())));
        assert!(non_closed_ball(&n, &topology_of(&n, Side::Backward)).is_none());
        let a = x2a();
        assert!(non_closed_ball(&a, &topology_of(&a, Side::Forward)).is_none());
    }
}
