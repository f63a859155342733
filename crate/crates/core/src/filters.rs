//! Filters on finite spaces.
//!
//! On a finite carrier every filter is principal, so a filter is stored as
//! its least member (the core) and the family is `{S | S ⊇ core}`. The
//! improper filter, containing every set, has the empty core.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::quantale::ValueQuantale;
use crate::vspace::{Side, VSpace, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    core: PointSet,
    carrier: usize,
}

impl Filter {
    /// `↑core` on a carrier of `carrier` points.
    pub fn principal(carrier: usize, core: PointSet) -> Result<Filter> {
        if core.bound() > carrier {
            return Err(Error::Structural(format!(
                "core {core:?} is not contained in a carrier of {carrier} points"
            )));
        }
        Ok(Filter { core, carrier })
    }

    pub fn improper(carrier: usize) -> Filter {
        Filter {
            core: PointSet::new(),
            carrier,
        }
    }

    /// `{X}`, the smallest filter.
    pub fn top(carrier: usize) -> Filter {
        Filter {
            core: PointSet::full(carrier),
            carrier,
        }
    }

    pub fn core(&self) -> &PointSet {
        &self.core
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn is_proper(&self) -> bool {
        !self.core.is_empty()
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.core.is_subset(s)
    }

    /// Inclusion of families: `self ⊆ other` iff `core(self) ⊇ core(other)`.
    pub fn is_subfilter_of(&self, other: &Filter) -> bool {
        self.carrier == other.carrier && other.core.is_subset(&self.core)
    }

    fn same_carrier(&self, other: &Filter) -> Result<()> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(self.carrier, other.carrier))
        }
    }

    /// The least filter containing every member of `family`; the empty
    /// family generates `{X}`.
    pub fn from_base(carrier: usize, family: &[PointSet]) -> Result<Filter> {
        let mut core = PointSet::full(carrier);
        for s in family {
            if s.bound() > carrier {
                return Err(Error::Structural(format!(
                    "base member {s:?} is not contained in a carrier of {carrier} points"
                )));
            }
            core = core.intersection(s);
        }
        Ok(Filter { core, carrier })
    }

    /// `F ∩ G` as families, whose core is the union of the cores.
    pub fn intersect(&self, other: &Filter) -> Result<Filter> {
        self.same_carrier(other)?;
        Ok(Filter {
            core: self.core.union(&other.core),
            carrier: self.carrier,
        })
    }

    /// `f(F) = {S | f⁻¹(S) ∈ F}`, whose core is `f(core F)`.
    pub fn image(&self, f: &[usize], target_carrier: usize) -> Result<Filter> {
        if f.len() != self.carrier || f.iter().any(|&y| y >= target_carrier) {
            return Err(Error::Structural(format!(
                "point map must send each of the {} points into the {target_carrier} target points",
                self.carrier
            )));
        }
        Ok(Filter {
            core: self.core.map(f),
            carrier: target_carrier,
        })
    }

    pub fn describe<Q: ValueQuantale>(&self, space: &VSpace<Q>) -> String {
        format!("↑{}", space.format_set(&self.core))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityMethod {
    /// No strictly smaller proper Cauchy filter, by enumeration.
    Definitional,
    /// Cauchy and round; only meaningful under uniformly vanishing asymmetry.
    Characterization,
}

/// Why a map fails to be a filter morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismFailure<E> {
    /// The map is not uniformly continuous at this `ε`.
    NotUniformlyContinuous(E),
    /// `f(F) ⊉ G`: this point of `f(core F)` lies outside `core G`.
    ImageTooLarge(usize),
}

impl<Q: ValueQuantale> VSpace<Q> {
    fn check_filter(&self, f: &Filter) -> Result<()> {
        if f.carrier == self.len() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(f.carrier, self.len()))
        }
    }

    pub fn filter(&self, core: PointSet) -> Result<Filter> {
        Filter::principal(self.len(), core)
    }

    /// The filter `↑{names}`.
    pub fn filter_of(&self, names: &[&str]) -> Result<Filter> {
        let core = names
            .iter()
            .map(|n| self.index_of(n))
            .collect::<Result<PointSet>>()?;
        self.filter(core)
    }

    pub fn filter_from_base(&self, family: &[PointSet]) -> Result<Filter> {
        Filter::from_base(self.len(), family)
    }

    pub(crate) fn point_core_over(&self, x: usize, side: Side, eps: &[Q::Elem]) -> PointSet {
        eps.iter().fold(self.carrier(), |acc, e| {
            acc.intersection(&self.ball_unchecked(x, e, side))
        })
    }

    /// `F_x`, generated by the balls `B_ε(x)` (forward) or `B^ε(x)` (backward).
    pub fn point_filter(&self, x: usize, side: Side) -> Result<Filter> {
        self.check_point(x)?;
        Ok(Filter {
            core: self.point_core_over(x, side, self.epsilon_test_set()),
            carrier: self.len(),
        })
    }

    pub(crate) fn is_cauchy_over(&self, f: &Filter, side: Side, eps: &[Q::Elem]) -> Verdict<Q::Elem> {
        eps.iter()
            .find(|e| !(0..self.len()).any(|x| f.core.is_subset(&self.ball_unchecked(x, e, side))))
            .cloned()
            .into()
    }

    /// `∀ε≻0 ∃x: B_ε(x) ∈ F`; backward gives op-Cauchy. The witness is an `ε`
    /// for which no ball is a member. The improper filter is Cauchy whenever
    /// the carrier is nonempty.
    pub fn is_cauchy(&self, f: &Filter, side: Side) -> Result<Verdict<Q::Elem>> {
        self.check_filter(f)?;
        Ok(self.is_cauchy_over(f, side, self.epsilon_test_set()))
    }

    fn round_at(&self, f: &Filter, member: &PointSet, e: &Q::Elem) -> bool {
        (0..self.len()).all(|x| {
            let b = self.ball_unchecked(x, e, Side::Forward);
            !f.core.is_subset(&b) || b.is_subset(member)
        })
    }

    pub(crate) fn is_round_over(&self, f: &Filter, eps: &[Q::Elem]) -> Verdict<PointSet> {
        if eps.iter().any(|e| self.round_at(f, &f.core, e)) {
            Verdict::Holds
        } else {
            Verdict::Fails(f.core.clone())
        }
    }

    /// Every member `M` admits `ε ≻ 0` with `B_ε(x) ∈ F ⇒ B_ε(x) ⊆ M`. Only
    /// the core needs checking, since an `ε` that works for the core works for
    /// every superset. The witness is a member admitting no `ε`.
    pub fn is_round(&self, f: &Filter) -> Result<Verdict<PointSet>> {
        self.check_filter(f)?;
        Ok(self.is_round_over(f, self.epsilon_test_set()))
    }

    /// [`VSpace::is_round`] checked against every member, for cross-checking
    /// the reduction to the core. Exponential in the size of the carrier.
    pub fn is_round_all_members(&self, f: &Filter) -> Result<Verdict<PointSet>> {
        self.check_filter(f)?;
        if self.len() >= 24 {
            return Err(Error::TooLarge(format!("{} points for member enumeration", self.len())));
        }
        let eps = self.epsilon_test_set();
        let rest = self.carrier().difference(&f.core);
        let rest_idx: Vec<usize> = rest.iter().collect();
        for mask in 0..1u64 << rest_idx.len() {
            let mut member = f.core.clone();
            for (k, &i) in rest_idx.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    member.insert(i);
                }
            }
            if !eps.iter().any(|e| self.round_at(f, &member, e)) {
                return Ok(Verdict::Fails(member));
            }
        }
        Ok(Verdict::Holds)
    }

    pub(crate) fn roundify_over(&self, f: &Filter, eps: &[Q::Elem]) -> Filter {
        let core = eps.iter().fold(self.carrier(), |acc, e| {
            acc.intersection(&self.ball_of_set_unchecked(&f.core, e, Side::Forward))
        });
        Filter {
            core,
            carrier: self.len(),
        }
    }

    /// `F_≻`, generated by the fattenings `B_ε(M)` of members; its core is
    /// `⋂_ε B_ε(core F)`. Always a subfilter of `F`.
    pub fn roundify(&self, f: &Filter) -> Result<Filter> {
        self.check_filter(f)?;
        Ok(self.roundify_over(f, self.epsilon_test_set()))
    }

    /// A proper Cauchy filter strictly contained in `f`, if one exists.
    /// Cauchy cores are closed under subsets, so the search runs over all
    /// strict supersets of the core, smallest first.
    pub fn smaller_cauchy_filter(&self, f: &Filter) -> Result<Option<Filter>> {
        self.check_filter(f)?;
        let rest: Vec<usize> = self.carrier().difference(&f.core).iter().collect();
        if rest.len() >= 24 {
            return Err(Error::TooLarge(format!("{} points outside the core", rest.len())));
        }
        let mut candidates: Vec<PointSet> = (1..1u64 << rest.len())
            .map(|mask| {
                let mut c = f.core.clone();
                for (k, &i) in rest.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        c.insert(i);
                    }
                }
                c
            })
            .collect();
        candidates.sort();
        let eps = self.epsilon_test_set();
        Ok(candidates
            .into_iter()
            .map(|core| Filter {
                core,
                carrier: self.len(),
            })
            .find(|g| self.is_cauchy_over(g, Side::Forward, eps).holds()))
    }

    /// Whether a proper filter is minimal among Cauchy filters.
    pub fn is_minimal_cauchy(&self, f: &Filter, method: MinimalityMethod) -> Result<bool> {
        self.check_filter(f)?;
        if !f.is_proper() {
            return Err(Error::Precondition("the improper filter is excluded".into()));
        }
        match method {
            MinimalityMethod::Definitional => Ok(self.is_cauchy(f, Side::Forward)?.holds()
                && self.smaller_cauchy_filter(f)?.is_none()),
            MinimalityMethod::Characterization => {
                if let Verdict::Fails(e) = self.has_uva() {
                    return Err(Error::Refused(format!(
                        "the characterization needs uniformly vanishing asymmetry, which fails at ε = {}",
                        self.quantale().format_elem(&e)
                    )));
                }
                if self.epsilon_test_set().is_empty() {
                    return Err(Error::Degenerate(
                        "no ε ≻ 0 exists, so no filter is round".into(),
                    ));
                }
                Ok(self.is_cauchy(f, Side::Forward)?.holds() && self.is_round(f)?.holds())
            }
        }
    }

    /// `F → x`: every ball around `x` is a member. Decided both through the
    /// balls and as `F_x ⊆ F`, and the two must agree.
    pub fn converges(&self, f: &Filter, x: usize, side: Side) -> Result<bool> {
        self.check_filter(f)?;
        self.check_point(x)?;
        let eps = self.epsilon_test_set();
        let by_balls = eps
            .iter()
            .all(|e| f.core.is_subset(&self.ball_unchecked(x, e, side)));
        let by_point_filter = f.core.is_subset(&self.point_core_over(x, side, eps));
        if by_balls != by_point_filter {
            return Err(Error::Inconsistent(format!(
                "convergence of {} to {} differs between balls and point filter",
                f.describe(self),
                self.name(x)
            )));
        }
        Ok(by_balls)
    }

    /// All limits of `f`.
    pub fn limits(&self, f: &Filter, side: Side) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            if self.converges(f, x, side)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// `⋁ d(S, T)` over members, attained at the cores.
    pub fn filter_distance(&self, f: &Filter, g: &Filter) -> Result<Q::Elem> {
        self.check_filter(f)?;
        self.check_filter(g)?;
        Ok(self.set_distance(&f.core, &g.core))
    }

    /// `f: (X, F) → (Y, G)` is a morphism when `f` is uniformly continuous
    /// and `f(F) ⊇ G`.
    pub fn is_filter_morphism(
        &self,
        f: &[usize],
        from: &Filter,
        target: &VSpace<Q>,
        to: &Filter,
    ) -> Result<Verdict<MorphismFailure<Q::Elem>>> {
        self.check_filter(from)?;
        target.check_filter(to)?;
        if let Verdict::Fails(e) = self.is_uniformly_continuous(f, target)? {
            return Ok(Verdict::Fails(MorphismFailure::NotUniformlyContinuous(e)));
        }
        Ok(filter_image_within(f, from, to))
    }
}

/// `f(core F) ⊆ core G`, the filter half of the morphism condition.
pub(crate) fn filter_image_within<E>(f: &[usize], from: &Filter, to: &Filter) -> Verdict<MorphismFailure<E>> {
    from.core
        .iter()
        .map(|i| f[i])
        .find(|y| !to.core.contains(*y))
        .map(MorphismFailure::ImageTooLarge)
        .into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{ExtRat, FiniteQuantale};
    use crate::samples::{x2a, x2n, x3z};

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    fn r(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    #[test]
    fn construction() {
        let z = x3z();
        let f = z.filter_from_base(&[set(&[0, 1]), set(&[1, 2])]).unwrap();
        assert_eq!(f.core(), &set(&[1]));
        let x = x2a();
        assert_eq!(x.filter_from_base(&[set(&[0])]).unwrap().core(), &set(&[0]));
        assert!(!x.filter_from_base(&[set(&[0]), set(&[1])]).unwrap().is_proper());
        assert_eq!(x.filter_from_base(&[]).unwrap(), Filter::top(2));
        assert!(matches!(x.filter_from_base(&[set(&[3])]), Err(Error::Structural(_))));
    }

    #[test]
    fn intersection_and_image() {
        let a = Filter::principal(2, set(&[0])).unwrap();
        let b = Filter::principal(2, set(&[1])).unwrap();
        assert_eq!(a.intersect(&b).unwrap().core(), &set(&[0, 1]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&Filter::improper(2)).unwrap(), a);
        assert!(matches!(a.intersect(&Filter::top(3)), Err(Error::SpaceMismatch(2, 3))));
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab.image(&[1, 1], 2).unwrap().core(), &set(&[1]));
        assert!(!Filter::improper(2).image(&[0, 1], 2).unwrap().is_proper());
        assert_eq!(ab.image(&[0, 1], 2).unwrap(), ab);
    }

    #[test]
    fn point_filters() {
        assert_eq!(x2a().point_filter(0, Side::Forward).unwrap().core(), &set(&[0]));
        assert_eq!(x3z().point_filter(0, Side::Forward).unwrap().core(), &set(&[0, 1]));
        let q1 = FiniteQuantale::q1();
        let s = VSpace::anonymous(q1.clone(), vec![vec![q1.bottom(); 3]; 3]).unwrap();
        assert_eq!(s.point_filter(1, Side::Forward).unwrap(), Filter::top(3));
    }

    #[test]
    fn cauchy_examples() {
        let x = x2a();
        let a = x.filter_of(&["a"]).unwrap();
        assert!(x.is_cauchy(&a, Side::Forward).unwrap().holds());
        let ab = x.filter_of(&["a", "b"]).unwrap();
        assert_eq!(x.is_cauchy(&ab, Side::Forward).unwrap(), Verdict::Fails(r("1/2")));
        assert!(x.is_cauchy(&Filter::improper(2), Side::Forward).unwrap().holds());
    }

    #[test]
    fn round_examples() {
        let x = x2a();
        assert!(x.is_round(&x.point_filter(0, Side::Forward).unwrap()).unwrap().holds());
        assert!(x.is_round(&Filter::top(2)).unwrap().holds());
        let z = x3z();
        let a = z.filter_of(&["a"]).unwrap();
        assert_eq!(z.is_round(&a).unwrap(), Verdict::Fails(set(&[0])));
        assert_eq!(z.is_round_all_members(&a).unwrap(), Verdict::Fails(set(&[0])));
    }

    #[test]
    fn roundify_examples() {
        let z = x3z();
        let a = z.filter_of(&["a"]).unwrap();
        assert_eq!(z.roundify(&a).unwrap().core(), &set(&[0, 1]));
        let x = x2a();
        let fa = x.point_filter(0, Side::Forward).unwrap();
        assert_eq!(x.roundify(&fa).unwrap(), fa);
        assert_eq!(x.roundify(&x.filter_of(&["a"]).unwrap()).unwrap().core(), &set(&[0]));
        assert!(!x.roundify(&Filter::improper(2)).unwrap().is_proper());
    }

    #[test]
    fn minimality() {
        use MinimalityMethod::*;
        let x = x2a();
        let fa = x.point_filter(0, Side::Forward).unwrap();
        assert!(x.is_minimal_cauchy(&fa, Definitional).unwrap());
        assert!(x.is_minimal_cauchy(&fa, Characterization).unwrap());
        let z = x3z();
        let a = z.filter_of(&["a"]).unwrap();
        assert!(!z.is_minimal_cauchy(&a, Definitional).unwrap());
        assert_eq!(z.smaller_cauchy_filter(&a).unwrap().unwrap().core(), &set(&[0, 1]));
        assert!(!x.is_minimal_cauchy(&Filter::top(2), Definitional).unwrap());
        assert!(matches!(
            x.is_minimal_cauchy(&Filter::improper(2), Definitional),
            Err(Error::Precondition(_))
        ));
        let n = x2n();
        assert!(matches!(
            n.is_minimal_cauchy(&n.filter_of(&["a"]).unwrap(), Characterization),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn convergence() {
        let z = x3z();
        let b = z.filter_of(&["b"]).unwrap();
        assert!(z.converges(&b, 0, Side::Forward).unwrap());
        assert!(z.converges(&b, 1, Side::Forward).unwrap());
        let x = x2a();
        let b = x.filter_of(&["b"]).unwrap();
        assert!(!x.converges(&b, 0, Side::Forward).unwrap());
        assert!(x.converges(&b, 1, Side::Forward).unwrap());
    }

    #[test]
    fn distances() {
        let x = x2a();
        let fa = x.point_filter(0, Side::Forward).unwrap();
        let fb = x.point_filter(1, Side::Forward).unwrap();
        assert_eq!(x.filter_distance(&fa, &fb).unwrap(), r("1"));
        assert_eq!(x.filter_distance(&fa, &fa).unwrap(), ExtRat::ZERO);
        assert_eq!(x.filter_distance(&fa, &Filter::improper(2)).unwrap(), ExtRat::Inf);
    }

    #[test]
    fn morphisms() {
        let x = x2a();
        let fa = x.filter_of(&["a"]).unwrap();
        assert!(x.is_filter_morphism(&[0, 1], &fa, &x, &fa).unwrap().holds());
        let g = x.filter_of(&["b"]).unwrap();
        assert!(x
            .is_filter_morphism(&[0, 1], &Filter::improper(2), &x, &g)
            .unwrap()
            .holds());
        assert_eq!(
            x.is_filter_morphism(&[0, 1], &fa, &x, &g).unwrap(),
            Verdict::Fails(MorphismFailure::ImageTooLarge(0))
        );
        let n = x2n();
        let a = n.filter_of(&["a"]).unwrap();
        assert_eq!(
            n.is_filter_morphism(&[1, 0], &a, &n, &a).unwrap(),
            Verdict::Fails(MorphismFailure::NotUniformlyContinuous(r("1/2")))
        );
    }
}
