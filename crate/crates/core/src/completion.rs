//! The completion of a finite space by minimal Cauchy filters.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filters::Filter;
use crate::pointset::PointSet;
use crate::quantale::ValueQuantale;
use crate::vspace::{Side, VSpace, Verdict};

/// Largest number of proper Cauchy filters for which the isometry
/// `X̃₀ ≅ X̂` is re-checked during [`complete`].
pub const TILDE_CHECK_LIMIT: usize = 1024;

/// Largest carrier whose cores are enumerated.
pub const ENUMERATION_LIMIT: usize = 24;

/// The proper Cauchy filters with the filter distance.
#[derive(Debug, Clone)]
pub struct CauchyFilterSpace<Q: ValueQuantale> {
    pub filters: Vec<Filter>,
    pub space: VSpace<Q>,
    /// Whether the base has uniformly vanishing asymmetry; without it the
    /// result need not be a V-space with that property.
    pub uva_base: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TildeCheck {
    Verified,
    Skipped { cauchy_filters: usize },
}

#[derive(Debug, Clone)]
pub struct CompletionSpace<Q: ValueQuantale> {
    pub base: VSpace<Q>,
    /// The minimal Cauchy filters, sorted by core.
    pub points: Vec<Filter>,
    pub space: VSpace<Q>,
    /// Index in `points` of the point filter of each base point.
    pub embedding: Vec<usize>,
    pub tilde_check: TildeCheck,
}

fn enumerable<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<()> {
    if space.len() >= ENUMERATION_LIMIT {
        return Err(Error::TooLarge(format!(
            "{} points exceed the enumeration limit of {}",
            space.len(),
            ENUMERATION_LIMIT - 1
        )));
    }
    Ok(())
}

fn require_uva<Q: ValueQuantale>(space: &VSpace<Q>, what: &str) -> Result<()> {
    match space.has_uva() {
        Verdict::Holds => Ok(()),
        Verdict::Fails(e) => Err(Error::Refused(format!(
            "{what} needs uniformly vanishing asymmetry, which fails at ε = {}",
            space.quantale().format_elem(&e)
        ))),
    }
}

fn require_valid<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<()> {
    let report = space.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("not a V-space:\n{report}")))
    }
}

/// All proper Cauchy filters, sorted by core.
pub fn proper_cauchy_filters<Q: ValueQuantale>(space: &VSpace<Q>, side: Side) -> Result<Vec<Filter>> {
    enumerable(space)?;
    let n = space.len();
    let eps = space.epsilon_test_set();
    let mut out: Vec<Filter> = (1..1u64 << n)
        .into_par_iter()
        .map(|bits| Filter::principal(n, PointSet::from_bits(bits)).expect("core within carrier"))
        .filter(|f| space.is_cauchy_over(f, side, eps).holds())
        .collect();
    out.sort();
    Ok(out)
}

/// The inclusion-maximal nonempty Cauchy cores, sorted.
///
/// A core is Cauchy iff it lies inside `⋂_ε B_ε(x_ε)` for some choice of
/// centres, so folding each test radius over an antichain of candidate
/// intersections yields the maximal ones without enumerating subsets.
pub fn maximal_cauchy_cores<Q: ValueQuantale>(space: &VSpace<Q>, side: Side) -> Vec<PointSet> {
    maximal_cauchy_cores_over(space, side, space.epsilon_test_set())
}

pub(crate) fn maximal_cauchy_cores_over<Q: ValueQuantale>(
    space: &VSpace<Q>,
    side: Side,
    eps: &[Q::Elem],
) -> Vec<PointSet> {
    let mut antichain = vec![space.carrier()];
    for e in eps {
        let balls: Vec<PointSet> = (0..space.len())
            .map(|x| space.ball_unchecked(x, e, side))
            .collect();
        let mut next: Vec<PointSet> = antichain
            .iter()
            .flat_map(|a| balls.iter().map(move |b| a.intersection(b)))
            .filter(|c| !c.is_empty())
            .collect();
        next.sort();
        next.dedup();
        antichain = maximal_sets(next);
    }
    antichain.retain(|c| !c.is_empty());
    antichain.sort();
    antichain
}

/// Inclusion-maximal members of a sorted, duplicate-free list.
fn maximal_sets(sets: Vec<PointSet>) -> Vec<PointSet> {
    // Sorted by size, so a strict superset can only come later.
    (0..sets.len())
        .filter(|&i| !sets[i + 1..].iter().any(|t| sets[i].is_subset(t)))
        .map(|i| sets[i].clone())
        .collect()
}

fn filter_space<Q: ValueQuantale>(space: &VSpace<Q>, filters: &[Filter]) -> Result<VSpace<Q>> {
    let names = filters.iter().map(|f| f.describe(space)).collect();
    let d = filters
        .iter()
        .map(|f| filters.iter().map(|g| space.set_distance(f.core(), g.core())).collect())
        .collect();
    VSpace::new(space.quantale().clone(), names, d)
}

/// `X̃`: all proper Cauchy filters with the filter distance.
pub fn cauchy_filter_space<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<CauchyFilterSpace<Q>> {
    let filters = proper_cauchy_filters(space, Side::Forward)?;
    if filters.len() > 4 * TILDE_CHECK_LIMIT {
        return Err(Error::TooLarge(format!(
            "{} proper Cauchy filters is too many to tabulate",
            filters.len()
        )));
    }
    Ok(CauchyFilterSpace {
        space: filter_space(space, &filters)?,
        filters,
        uva_base: space.has_uva().holds(),
    })
}

/// `x ↦ F_x`.
pub fn canonical_embedding<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<Vec<Filter>> {
    require_uva(space, "the canonical embedding")?;
    (0..space.len())
        .map(|x| space.point_filter(x, Side::Forward))
        .collect()
}

/// `X̂`: the minimal Cauchy filters with the filter distance, and the
/// embedding of the base. Requires uniformly vanishing asymmetry.
pub fn complete<Q: ValueQuantale>(space: &VSpace<Q>) -> Result<CompletionSpace<Q>> {
    require_valid(space)?;
    require_uva(space, "the completion")?;
    enumerable(space)?;
    let n = space.len();
    let points: Vec<Filter> = maximal_cauchy_cores(space, Side::Forward)
        .into_iter()
        .map(|c| Filter::principal(n, c).expect("core within carrier"))
        .collect();
    let embedding = canonical_embedding(space)?
        .iter()
        .map(|fx| {
            points.iter().position(|p| p == fx).ok_or_else(|| {
                Error::Inconsistent(format!("point filter {} is not minimal Cauchy", fx.describe(space)))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let completion = CompletionSpace {
        space: filter_space(space, &points)?,
        base: space.clone(),
        points,
        embedding,
        tilde_check: TildeCheck::Verified,
    };
    let cauchy_count = proper_cauchy_filters(space, Side::Forward)?.len();
    let tilde_check = if cauchy_count <= TILDE_CHECK_LIMIT {
        if let Verdict::Fails(why) = tilde_isometry(&completion)? {
            return Err(Error::Inconsistent(why));
        }
        TildeCheck::Verified
    } else {
        TildeCheck::Skipped {
            cauchy_filters: cauchy_count,
        }
    };
    Ok(CompletionSpace {
        tilde_check,
        ..completion
    })
}

/// Checks that `[F] ↦ F_≻` is a well-defined distance-preserving bijection
/// from the separation quotient of `X̃` onto `X̂`.
pub fn tilde_isometry<Q: ValueQuantale>(completion: &CompletionSpace<Q>) -> Result<Verdict<String>> {
    let base = &completion.base;
    let tilde = cauchy_filter_space(base)?;
    let (quotient, proj) = tilde.space.separation_quotient()?;
    let mut map: Vec<Option<usize>> = vec![None; quotient.len()];
    for (i, f) in tilde.filters.iter().enumerate() {
        let r = base.roundify(f)?;
        let Some(j) = completion.points.iter().position(|p| *p == r) else {
            return Ok(Verdict::Fails(format!(
                "roundification {} of {} is not minimal Cauchy",
                r.describe(base),
                f.describe(base)
            )));
        };
        match map[proj[i]] {
            Some(k) if k != j => {
                return Ok(Verdict::Fails(format!(
                    "class of {} has two roundifications",
                    f.describe(base)
                )))
            }
            _ => map[proj[i]] = Some(j),
        }
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("every class has a member")).collect();
    let mut hit = vec![false; completion.points.len()];
    for &j in &map {
        if hit[j] {
            return Ok(Verdict::Fails(format!(
                "{} is the image of two classes",
                completion.space.name(j)
            )));
        }
        hit[j] = true;
    }
    if let Some(j) = hit.iter().position(|h| !h) {
        return Ok(Verdict::Fails(format!("{} is not hit", completion.space.name(j))));
    }
    Ok(isometry_failure(&quotient, &completion.space, &map).into())
}

/// A pair whose distance `map` fails to preserve, described.
pub fn isometry_failure<Q: ValueQuantale>(a: &VSpace<Q>, b: &VSpace<Q>, map: &[usize]) -> Option<String> {
    let q = a.quantale();
    for x in 0..a.len() {
        for y in 0..a.len() {
            if a.d(x, y) != b.d(map[x], map[y]) {
                return Some(format!(
                    "d({}, {}) = {} but the images are at distance {}",
                    a.name(x),
                    a.name(y),
                    q.format_elem(a.d(x, y)),
                    q.format_elem(b.d(map[x], map[y]))
                ));
            }
        }
    }
    None
}

/// Every proper Cauchy filter converges (backward: every op-Cauchy filter
/// op-converges). It suffices to test the maximal Cauchy cores, since a
/// smaller core converges wherever a larger one does. The witness is a
/// non-convergent Cauchy filter.
pub fn is_cauchy_complete<Q: ValueQuantale>(space: &VSpace<Q>, side: Side) -> Result<Verdict<Filter>> {
    let n = space.len();
    for core in maximal_cauchy_cores(space, side) {
        let f = Filter::principal(n, core)?;
        if space.limits(&f, side)?.is_empty() {
            return Ok(Verdict::Fails(f));
        }
    }
    Ok(Verdict::Holds)
}

/// `X̂ → Ŷ`, `𝒢 ↦ (f 𝒢)_≻`, for a uniformly continuous `f: X → Y`.
pub fn completion_map<Q: ValueQuantale>(
    f: &[usize],
    source: &CompletionSpace<Q>,
    target: &CompletionSpace<Q>,
) -> Result<Vec<usize>> {
    let (x, y) = (&source.base, &target.base);
    x.check_map(f, y)?;
    source
        .points
        .iter()
        .map(|g| {
            let h = y.roundify(&g.image(f, y.len())?)?;
            target.points.iter().position(|p| *p == h).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "image of {} roundifies to {}, which is not minimal Cauchy",
                    g.describe(x),
                    h.describe(y)
                ))
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Uniqueness {
    /// Every map `X̂ → Y` was tried; this many satisfied both conditions.
    Verified { candidates: usize },
    Skipped,
}

#[derive(Debug, Clone)]
pub struct Extension<Q: ValueQuantale> {
    pub completion: CompletionSpace<Q>,
    /// Index in `Y` of the image of each point of `X̂`.
    pub map: Vec<usize>,
    pub uniqueness: Uniqueness,
}

/// Largest `|X̂|` and `|Y|` for which uniqueness is checked by enumeration.
pub const UNIQUENESS_LIMIT: usize = 4;

/// The unique uniformly continuous `F: X̂ → Y` with `F ∘ ι = f`, sending
/// `𝒢` to the limit of `(f 𝒢)_≻`. `X` must be separated with uniformly
/// vanishing asymmetry, `f` uniformly continuous, and `Y` separated, Cauchy
/// complete and with uniformly vanishing asymmetry.
pub fn extend_to_completion<Q: ValueQuantale>(
    x: &VSpace<Q>,
    f: &[usize],
    y: &VSpace<Q>,
) -> Result<Extension<Q>> {
    let q = x.quantale();
    x.check_map(f, y)?;
    let refuse = |what: &str, witness: String| Err(Error::Refused(format!("{what}: {witness}")));
    for (label, space) in [("source", x), ("target", y)] {
        require_valid(space)?;
        if let Some((a, b)) = space.separation_witness() {
            return refuse(
                &format!("{label} is not separated"),
                format!("{} and {} are at distance 0 both ways", space.name(a), space.name(b)),
            );
        }
        if let Verdict::Fails(e) = space.has_uva() {
            return refuse(
                &format!("{label} lacks uniformly vanishing asymmetry"),
                format!("no modulus at ε = {}", q.format_elem(&e)),
            );
        }
    }
    if let Verdict::Fails(e) = x.is_uniformly_continuous(f, y)? {
        return refuse("map is not uniformly continuous", format!("ε = {}", q.format_elem(&e)));
    }
    if let Verdict::Fails(g) = is_cauchy_complete(y, Side::Forward)? {
        return refuse(
            "target is not Cauchy complete",
            format!("{} has no limit", g.describe(y)),
        );
    }

    let completion = complete(x)?;
    let mut map = Vec::with_capacity(completion.points.len());
    for g in &completion.points {
        let h = y.roundify(&g.image(f, y.len())?)?;
        match y.limits(&h, Side::Forward)?.as_slice() {
            [lim] => map.push(*lim),
            lims => {
                return Err(Error::Inconsistent(format!(
                    "{} has {} limits in the target",
                    h.describe(y),
                    lims.len()
                )))
            }
        }
    }
    let hat = &completion.space;
    let commutes = |m: &[usize]| (0..x.len()).all(|i| m[completion.embedding[i]] == f[i]);
    if !commutes(&map) {
        return Err(Error::Inconsistent("extension does not restrict to f".into()));
    }
    if let Verdict::Fails(e) = hat.is_uniformly_continuous(&map, y)? {
        return Err(Error::Inconsistent(format!(
            "extension is not uniformly continuous at ε = {}",
            q.format_elem(&e)
        )));
    }
    let uniqueness = if hat.len() <= UNIQUENESS_LIMIT && y.len() <= UNIQUENESS_LIMIT {
        let mut candidates = 0;
        let mut g = vec![0usize; hat.len()];
        loop {
            if commutes(&g) && hat.is_uniformly_continuous(&g, y)?.holds() {
                candidates += 1;
                if g != map {
                    return Err(Error::Inconsistent(format!(
                        "a second extension {g:?} besides {map:?}"
                    )));
                }
            }
            // next map in lexicographic order
            let Some(k) = g.iter().position(|&v| v + 1 < y.len()) else {
                break;
            };
            g[k] += 1;
            g[..k].iter_mut().for_each(|v| *v = 0);
        }
        Uniqueness::Verified { candidates }
    } else {
        Uniqueness::Skipped
    };
    Ok(Extension {
        completion,
        map,
        uniqueness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::MinimalityMethod;
    use crate::quantale::{ExtRat, FiniteQuantale};
    use crate::samples::{rat_space, x2a, x2n, x3z};

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    fn r(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    #[test]
    fn tilde_examples() {
        let t = cauchy_filter_space(&x2a()).unwrap();
        let cores: Vec<_> = t.filters.iter().map(|f| f.core().clone()).collect();
        assert_eq!(cores, vec![set(&[0]), set(&[1])]);
        assert_eq!(t.space.d(0, 1), &r("1"));
        assert_eq!(t.space.d(1, 0), &r("2"));
        let t = cauchy_filter_space(&x3z()).unwrap();
        let cores: Vec<_> = t.filters.iter().map(|f| f.core().clone()).collect();
        assert_eq!(cores, vec![set(&[0]), set(&[1]), set(&[2]), set(&[0, 1])]);
        assert!(t.space.is_valid() && t.space.has_uva().holds());
        let one = rat_space(&["p"], &[&["0"]]);
        assert_eq!(cauchy_filter_space(&one).unwrap().filters.len(), 1);
    }

    #[test]
    fn completion_examples() {
        let c = complete(&x2a()).unwrap();
        assert_eq!(c.space.len(), 2);
        assert_eq!(c.embedding, vec![0, 1]);
        assert!(isometry_failure(&x2a(), &c.space, &c.embedding).is_none());
        assert_eq!(c.tilde_check, TildeCheck::Verified);

        let c = complete(&x3z()).unwrap();
        let cores: Vec<_> = c.points.iter().map(|f| f.core().clone()).collect();
        assert_eq!(cores, vec![set(&[2]), set(&[0, 1])]);
        assert_eq!(c.space.d(0, 1), &r("1"));
        assert_eq!(c.space.d(1, 0), &r("1"));
        assert_eq!(c.embedding, vec![1, 1, 0]);

        let one = rat_space(&["p"], &[&["0"]]);
        assert_eq!(complete(&one).unwrap().space.len(), 1);
        assert!(matches!(complete(&x2n()), Err(Error::Refused(_))));
    }

    #[test]
    fn degenerate_quantale_collapses() {
        let q1 = FiniteQuantale::q1();
        let s = VSpace::anonymous(q1.clone(), vec![vec![q1.bottom(); 3]; 3]).unwrap();
        let c = complete(&s).unwrap();
        assert_eq!(c.points, vec![Filter::top(3)]);
        assert_eq!(c.embedding, vec![0, 0, 0]);
    }

    #[test]
    fn maximal_cores_match_definition() {
        for space in [x2a(), x2n(), x3z(), crate::samples::x2s()] {
            let brute: Vec<PointSet> = proper_cauchy_filters(&space, Side::Forward)
                .unwrap()
                .into_iter()
                .filter(|f| space.is_minimal_cauchy(f, MinimalityMethod::Definitional).unwrap())
                .map(|f| f.core().clone())
                .collect();
            assert_eq!(maximal_cauchy_cores(&space, Side::Forward), brute);
        }
    }

    #[test]
    fn completeness() {
        assert!(is_cauchy_complete(&x2a(), Side::Forward).unwrap().holds());
        let c = complete(&x3z()).unwrap();
        assert!(is_cauchy_complete(&c.space, Side::Forward).unwrap().holds());
        let empty = rat_space(&[], &[]);
        assert!(is_cauchy_complete(&empty, Side::Forward).unwrap().holds());
        assert!(is_cauchy_complete(&x2n(), Side::Backward).unwrap().holds());
    }

    #[test]
    fn universal_property_examples() {
        let x = x2a();
        let c = complete(&x).unwrap();
        let ext = extend_to_completion(&x, &c.embedding, &c.space).unwrap();
        assert_eq!(ext.map, vec![0, 1]);
        assert_eq!(ext.uniqueness, Uniqueness::Verified { candidates: 1 });

        let ext = extend_to_completion(&x, &[0, 0], &x).unwrap();
        assert_eq!(ext.map, vec![0, 0]);

        let z = x3z();
        assert!(matches!(
            extend_to_completion(&z, &[0, 0, 1], &x),
            Err(Error::Refused(msg)) if msg.contains("not separated")
        ));
        let (q, proj) = z.separation_quotient().unwrap();
        let ext = extend_to_completion(&q, &[0, 1], &complete(&q).unwrap().space).unwrap();
        assert_eq!(ext.map.len(), 2);
        let cz = complete(&z).unwrap();
        for p in 0..3 {
            assert_eq!(cz.embedding[p], 1 - proj[p]);
        }
    }

    #[test]
    fn functorial_action() {
        let x = x2a();
        let c = complete(&x).unwrap();
        assert_eq!(completion_map(&[0, 1], &c, &c).unwrap(), vec![0, 1]);
        assert_eq!(completion_map(&[1, 1], &c, &c).unwrap(), vec![1, 1]);
    }
}
