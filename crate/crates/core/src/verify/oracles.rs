//! Independent, definition-level computations that the fast paths of the
//! library are compared against.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::generator::{InstanceGenerator, QuantaleChoice};
use super::{Outcome, Tally, VerificationReport};
use crate::completion::{maximal_cauchy_cores, maximal_cauchy_cores_over};
use crate::error::{Error, Result};
use crate::filters::{Filter, MinimalityMethod};
use crate::io::{AnySpace, SpaceData};
use crate::pointset::PointSet;
use crate::quantale::{ExtRat, ExtRational, FiniteLattice, ValueQuantale};
use crate::structures::{quasi_uniformity_of, quasi_uniformity_over, topology_of, topology_over};
use crate::vspace::{Side, VSpace};
use crate::with_space;

/// Every lattice order on `{0, …, n-1}` for `n` from 1 to `max`.
pub fn lattice_corpus(max: usize) -> Vec<Vec<Vec<bool>>> {
    let mut natural = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0..1u64 << pairs.len() {
            let mut leq = vec![vec![false; n]; n];
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                leq[i][j] = mask & (1 << k) != 0;
            }
            let transitive = (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k]))
            });
            if transitive && FiniteLattice::from_order(&leq).is_ok() {
                natural.push(leq);
            }
        }
    }
    // every relabelling, so the closed form is not tested only with the
    // bottom at index 0
    let mut out = std::collections::BTreeSet::new();
    for leq in natural {
        let n = leq.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut relabelled = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    relabelled[perm[i]][perm[j]] = leq[i][j];
                }
            }
            out.insert(relabelled);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out.into_iter().collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Greatest lower bound of `set` read off the order relation alone.
fn glb(leq: &[Vec<bool>], set: u64) -> usize {
    let n = leq.len();
    let lower: Vec<usize> = (0..n)
        .filter(|&m| (0..n).all(|s| set & (1 << s) == 0 || leq[m][s]))
        .collect();
    *lower
        .iter()
        .find(|&&l| lower.iter().all(|&m| leq[m][l]))
        .expect("complete lattice")
}

/// The closed form for `a ≻ b` against the definition over all subsets.
pub fn oracle_well_above(corpus: &[Vec<Vec<bool>>]) -> VerificationReport {
    let start = Instant::now();
    let mut tally = Tally::default();
    for leq in corpus {
        let n = leq.len();
        let lattice = FiniteLattice::from_order(leq).expect("corpus lattice");
        let instance = json!({ "leq": leq });
        let mismatch = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
            let definitional = (0..1u64 << n).all(|s| {
                !leq[glb(leq, s)][b] || (0..n).any(|m| s & (1 << m) != 0 && leq[m][a])
            });
            definitional != lattice.well_above(a, b)
        });
        tally.record(
            "oracle.well_above",
            0,
            &instance,
            Outcome::first_failure(mismatch.map(|(a, b)| format!("closed form disagrees at ({a}, {b})"))),
        );
    }
    tally.finish(start.elapsed()).pop().unwrap_or_else(|| VerificationReport::new("oracle.well_above"))
}

fn bits(s: &PointSet) -> u32 {
    s.to_bits().expect("small carrier") as u32
}

fn members(family: u64, n: usize) -> impl Iterator<Item = u32> {
    (0..1u32 << n).filter(move |s| family & (1 << s) != 0)
}

fn up(core: u32, n: usize) -> u64 {
    (0..1u32 << n)
        .filter(|s| s & core == core)
        .fold(0, |acc, s| acc | 1 << s)
}

fn is_filter_family(family: u64, n: usize) -> bool {
    family != 0
        && members(family, n).all(|a| {
            (0..1u32 << n).all(|t| t & a != a || family & (1 << t) != 0)
                && members(family, n).all(|b| family & (1 << (a & b)) != 0)
        })
}

/// The least filter containing every set of `base`.
fn generated(base: &[u32], n: usize) -> u64 {
    let full = (1u32 << n) - 1;
    let mut family = 1u64 << full;
    for &b in base {
        family |= 1 << b;
    }
    loop {
        let mut next = family;
        for a in members(family, n) {
            for b in members(family, n) {
                next |= 1 << (a & b);
            }
            next |= up(a, n);
        }
        if next == family {
            return family;
        }
        family = next;
    }
}

fn family_of(f: &Filter, n: usize) -> u64 {
    up(bits(f.core()), n)
}

/// Family-level checks of every core formula for carriers of `n ≤ 3` points.
pub fn oracle_filters(n: usize) -> Result<Vec<VerificationReport>> {
    if n == 0 || n > 3 {
        return Err(Error::TooLarge(format!(
            "family enumeration supports 1 to 3 points, not {n}"
        )));
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    let plain = json!({ "n": n });
    let families: Vec<u64> = (0..=u64::MAX >> (64 - (1 << n)))
        .filter(|&fam| is_filter_family(fam, n))
        .collect();
    tally.record(
        "oracle.filters.enumeration",
        0,
        &plain,
        Outcome::check(families.len() == 1 << n, || {
            format!("{} filters on {n} points", families.len())
        }),
    );
    let filters: Vec<Filter> = families
        .iter()
        .map(|&fam| {
            let core = members(fam, n).fold((1u32 << n) - 1, |acc, s| acc & s);
            Filter::principal(n, PointSet::from_bits(core as u64)).expect("core in carrier")
        })
        .collect();
    for (fam, f) in families.iter().zip(&filters) {
        tally.record(
            "oracle.filters.principality",
            0,
            &plain,
            Outcome::check(*fam == family_of(f, n), || format!("family {fam:#x} is not principal")),
        );
        let membership = (0..1u32 << n)
            .find(|&s| (fam & (1 << s) != 0) != f.contains(&PointSet::from_bits(s as u64)));
        tally.record(
            "oracle.filters.membership",
            0,
            &plain,
            Outcome::first_failure(membership.map(|s| format!("membership of {s:#b} in {f:?}"))),
        );
        for (gam, g) in families.iter().zip(&filters) {
            let meet = f.intersect(g)?;
            tally.record(
                "oracle.filters.intersection",
                0,
                &plain,
                Outcome::check(family_of(&meet, n) == fam & gam, || format!("{f:?} ∩ {g:?}")),
            );
        }
        let maps = (0..n.pow(n as u32)).map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect::<Vec<usize>>()
        });
        for map in maps {
            let image = (0..1u32 << n)
                .filter(|&s| {
                    let pre = (0..n).filter(|&i| s & (1 << map[i]) != 0).fold(0, |a, i| a | 1 << i);
                    fam & (1 << pre) != 0
                })
                .fold(0u64, |acc, s| acc | 1 << s);
            tally.record(
                "oracle.filters.image",
                0,
                &plain,
                Outcome::check(image == family_of(&f.image(&map, n)?, n), || {
                    format!("image of {f:?} under {map:?}")
                }),
            );
        }
    }
    for space in oracle_spaces(n) {
        with_space!(&space, s => space_checks(s, &families, &filters, &mut tally)?);
    }
    let mut reports = tally.finish(start.elapsed());
    for r in &mut reports {
        r.id = r.id.replacen("oracle.filters.", &format!("oracle.filters.n{n}."), 1);
    }
    Ok(reports)
}

fn oracle_spaces(n: usize) -> Vec<AnySpace> {
    let mut out = Vec::new();
    for (choice, count) in [
        (QuantaleChoice::ExtRational, 8),
        (QuantaleChoice::Q3, 4),
        (QuantaleChoice::Chain4, 3),
        (QuantaleChoice::Q1, 1),
    ] {
        let g = InstanceGenerator::new(0xf117e5 + n as u64, choice).points(n, n);
        out.extend(g.instances(count).into_iter().map(|i| i.space));
    }
    if n == 2 {
        use crate::samples::*;
        out.extend([x2a(), x2n(), x2s()].map(AnySpace::Rational));
    }
    if n == 3 {
        out.push(AnySpace::Rational(crate::samples::x3z()));
    }
    out
}

fn space_checks<Q: ValueQuantale>(
    space: &VSpace<Q>,
    families: &[u64],
    filters: &[Filter],
    tally: &mut Tally,
) -> Result<()> {
    let n = space.len();
    let q = space.quantale();
    let instance = serde_json::to_value(SpaceData::of(space)).expect("serializable");
    let eps = space.epsilon_test_set().to_vec();
    let ball = |x: usize, e: &Q::Elem, side: Side| -> u32 {
        (0..n)
            .filter(|&y| q.leq(space.dist(side, x, y), e))
            .fold(0, |acc, y| acc | 1 << y)
    };
    let fattening = |m: u32, e: &Q::Elem| -> u32 {
        (0..n)
            .filter(|&x| m & (1 << x) != 0)
            .fold(0, |acc, x| acc | ball(x, e, Side::Forward))
    };
    let cauchy = |fam: u64, side: Side| eps.iter().all(|e| (0..n).any(|x| fam & (1 << ball(x, e, side)) != 0));
    let mut record = |id: &str, ok: bool, what: String| {
        tally.record(id, 0, &instance, Outcome::check(ok, || what));
    };

    for (&fam, f) in families.iter().zip(filters) {
        let base: Vec<u32> = members(fam, n)
            .flat_map(|m| eps.iter().map(move |e| (m, e)))
            .map(|(m, e)| fattening(m, e))
            .collect();
        record(
            "oracle.filters.roundify",
            generated(&base, n) == family_of(&space.roundify(f)?, n),
            format!("roundification of {}", f.describe(space)),
        );
        let round = members(fam, n).all(|m| {
            eps.iter().any(|e| {
                (0..n).all(|x| {
                    let b = ball(x, e, Side::Forward);
                    fam & (1 << b) == 0 || b & !m == 0
                })
            })
        });
        record(
            "oracle.filters.round",
            round == space.is_round(f)?.holds(),
            format!("roundness of {}", f.describe(space)),
        );
        for side in [Side::Forward, Side::Backward] {
            record(
                "oracle.filters.cauchy",
                cauchy(fam, side) == space.is_cauchy(f, side)?.holds(),
                format!("{side:?} Cauchy property of {}", f.describe(space)),
            );
            for x in 0..n {
                let converges = eps.iter().all(|e| fam & (1 << ball(x, e, side)) != 0);
                record(
                    "oracle.filters.convergence",
                    converges == space.converges(f, x, side)?,
                    format!("{side:?} convergence of {} to {}", f.describe(space), space.name(x)),
                );
            }
        }
        if f.is_proper() {
            let minimal = cauchy(fam, Side::Forward)
                && !families.iter().any(|&g| {
                    g != fam && g & fam == g && g & 1 == 0 && cauchy(g, Side::Forward)
                });
            record(
                "oracle.filters.minimal_cauchy",
                minimal == space.is_minimal_cauchy(f, MinimalityMethod::Definitional)?,
                format!("minimality of {}", f.describe(space)),
            );
            record(
                "oracle.filters.maximal_cores",
                minimal == maximal_cauchy_cores(space, Side::Forward).contains(f.core()),
                format!("antichain search at {}", f.describe(space)),
            );
        }
        for (&gam, g) in families.iter().zip(filters) {
            let mut dist = q.bottom();
            for s in members(fam, n) {
                for t in members(gam, n) {
                    let mut st = q.top();
                    for a in (0..n).filter(|a| s & (1 << a) != 0) {
                        for b in (0..n).filter(|b| t & (1 << b) != 0) {
                            st = q.meet(&st, space.d(a, b));
                        }
                    }
                    dist = q.join(&dist, &st);
                }
            }
            record(
                "oracle.filters.distance",
                dist == space.filter_distance(f, g)?,
                format!("distance from {} to {}", f.describe(space), g.describe(space)),
            );
        }
    }
    for x in 0..n {
        for side in [Side::Forward, Side::Backward] {
            let base: Vec<u32> = eps.iter().map(|e| ball(x, e, side)).collect();
            record(
                "oracle.filters.point_filter",
                generated(&base, n) == family_of(&space.point_filter(x, side)?, n),
                format!("{side:?} point filter of {}", space.name(x)),
            );
        }
    }
    Ok(())
}

/// The quantified predicates whose test-set evaluation is compared against
/// dense sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsPredicate {
    HasVa,
    HasUva,
    SymmetryModulus,
    UniformContinuity,
    Cauchy,
    Round,
    Roundify,
    PointFilter,
    Convergence,
    MaximalCauchyCores,
    Topology,
    QuasiUniformity,
}

impl EpsPredicate {
    pub const ALL: [EpsPredicate; 12] = [
        EpsPredicate::HasVa,
        EpsPredicate::HasUva,
        EpsPredicate::SymmetryModulus,
        EpsPredicate::UniformContinuity,
        EpsPredicate::Cauchy,
        EpsPredicate::Round,
        EpsPredicate::Roundify,
        EpsPredicate::PointFilter,
        EpsPredicate::Convergence,
        EpsPredicate::MaximalCauchyCores,
        EpsPredicate::Topology,
        EpsPredicate::QuasiUniformity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            EpsPredicate::HasVa => "has_va",
            EpsPredicate::HasUva => "has_uva",
            EpsPredicate::SymmetryModulus => "symmetry_modulus",
            EpsPredicate::UniformContinuity => "uniform_continuity",
            EpsPredicate::Cauchy => "cauchy",
            EpsPredicate::Round => "round",
            EpsPredicate::Roundify => "roundify",
            EpsPredicate::PointFilter => "point_filter",
            EpsPredicate::Convergence => "convergence",
            EpsPredicate::MaximalCauchyCores => "maximal_cauchy_cores",
            EpsPredicate::Topology => "topology",
            EpsPredicate::QuasiUniformity => "quasi_uniformity",
        }
    }
}

/// `samples` positive radii spread over the cells cut out by the distance
/// values (each open interval, each threshold, beyond the largest), with ∞.
fn dense_radii(space: &VSpace<ExtRational>, samples: usize, rng: &mut ChaCha8Rng) -> Vec<ExtRat> {
    let mut thresholds: Vec<ExtRat> = space
        .distance_values()
        .into_iter()
        .filter(|d| *d > ExtRat::ZERO && !d.is_inf())
        .collect();
    thresholds.sort();
    let mut cuts = vec![ExtRat::ZERO];
    cuts.extend(thresholds.iter().copied());
    let beyond = thresholds.last().map_or(ExtRat::int(4), |t| *t + *t + ExtRat::int(4));
    cuts.push(beyond);
    let mut out: Vec<ExtRat> = thresholds.clone();
    out.push(ExtRat::Inf);
    let cells = cuts.len() - 1;
    let mut k = 0;
    while out.len() < samples {
        let (lo, hi) = (cuts[k % cells], cuts[k % cells + 1]);
        let (lo, hi) = (lo.finite().expect("finite cut"), hi.finite().expect("finite cut"));
        let denom: i64 = rng.gen_range(2..=97);
        let num: i64 = rng.gen_range(1..denom);
        out.push(ExtRat::Fin(lo + (hi - lo) * num / denom));
        k += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Pair-index bitmask of `{(a, b) | pred(a, b)}`.
fn pairs(n: usize, pred: impl Fn(usize, usize) -> bool) -> u64 {
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| pred(a, b))
        .fold(0, |acc, (a, b)| acc | 1 << (a * n + b))
}

/// `∀ε ∃δ`: every pair admitted at `δ` must be good at `ε`.
fn forall_exists(eps: &[ExtRat], deltas: &[ExtRat], admitted: impl Fn(&ExtRat) -> u64, bad: impl Fn(&ExtRat) -> u64, scope: u64) -> bool {
    let adm: Vec<u64> = deltas.iter().map(|d| admitted(d) & scope).collect();
    eps.iter().all(|e| {
        let b = bad(e) & scope;
        adm.iter().any(|a| a & b == 0)
    })
}

/// Evaluates `predicate` with its quantifiers ranging over the test set and
/// over `samples` stratified random radii, and reports any disagreement.
pub fn oracle_epsilon_reduction(
    space: &VSpace<ExtRational>,
    predicate: EpsPredicate,
    samples: usize,
    seed: u64,
) -> Result<Outcome> {
    let n = space.len();
    if n > 8 {
        return Err(Error::TooLarge(format!("{n} points for the pair bitmask oracle")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense = dense_radii(space, samples, &mut rng);
    let d = |a: usize, b: usize| *space.d(a, b);
    let all_pairs = pairs(n, |_, _| true);
    // d(y,x) ≤ δ admits (x,y); d(x,y) ≰ ε makes it bad
    let flip_admitted = |delta: &ExtRat| pairs(n, |x, y| d(y, x) <= *delta);
    let flip_bad = |e: &ExtRat| pairs(n, |x, y| d(x, y) > *e);
    let involving = |x: usize| pairs(n, |a, b| a == x || b == x);
    let filters: Vec<Filter> = PointSet::all_subsets(n)
        .map(|c| Filter::principal(n, c).expect("core in carrier"))
        .collect();
    let mismatch = |what: String| Ok(Outcome::Fail(what));

    match predicate {
        EpsPredicate::HasUva => {
            let dense_v = forall_exists(&dense, &dense, flip_admitted, flip_bad, all_pairs);
            if dense_v != space.has_uva().holds() {
                return mismatch(format!("has_uva: dense sampling says {dense_v}"));
            }
        }
        EpsPredicate::HasVa => {
            let dense_v = (0..n).all(|x| forall_exists(&dense, &dense, flip_admitted, flip_bad, involving(x)));
            if dense_v != space.has_va().holds() {
                return mismatch(format!("has_va: dense sampling says {dense_v}"));
            }
        }
        EpsPredicate::SymmetryModulus => {
            let mut radii = dense.clone();
            radii.extend_from_slice(space.epsilon_test_set());
            for e in &radii {
                let dense_u = forall_exists(std::slice::from_ref(e), &dense, flip_admitted, flip_bad, all_pairs);
                let test_u = space.symmetry_modulus(e, crate::vspace::Modulus::Uniform)?.is_some();
                if dense_u != test_u {
                    return mismatch(format!("uniform modulus at ε = {e}: dense {dense_u}, test set {test_u}"));
                }
                for x in 0..n {
                    let dense_p = forall_exists(std::slice::from_ref(e), &dense, flip_admitted, flip_bad, involving(x));
                    let test_p = space.symmetry_modulus(e, crate::vspace::Modulus::Pointwise(x))?.is_some();
                    if dense_p != test_p {
                        return mismatch(format!("modulus at {} for ε = {e}", space.name(x)));
                    }
                }
            }
        }
        EpsPredicate::UniformContinuity => {
            let op = space.dual();
            let mut maps: Vec<Vec<usize>> = vec![(0..n).collect()];
            for _ in 0..24 {
                maps.push((0..n).map(|_| rng.gen_range(0..n)).collect());
            }
            for (target, label) in [(space, "X"), (&op, "X^op")] {
                for f in &maps {
                    let dense_v = forall_exists(
                        &dense,
                        &dense,
                        |delta| pairs(n, |a, b| d(a, b) <= *delta),
                        |e| pairs(n, |a, b| target.d(f[a], f[b]) > e),
                        all_pairs,
                    );
                    let test_v = space.is_uniformly_continuous(f, target)?.holds();
                    if dense_v != test_v {
                        return mismatch(format!("continuity of {f:?} into {label}: dense {dense_v}"));
                    }
                }
            }
        }
        EpsPredicate::Cauchy => {
            for f in &filters {
                for side in [Side::Forward, Side::Backward] {
                    if space.is_cauchy_over(f, side, &dense).holds() != space.is_cauchy(f, side)?.holds() {
                        return mismatch(format!("{side:?} Cauchy property of {}", f.describe(space)));
                    }
                }
            }
        }
        EpsPredicate::Round => {
            for f in &filters {
                if space.is_round_over(f, &dense).holds() != space.is_round(f)?.holds() {
                    return mismatch(format!("roundness of {}", f.describe(space)));
                }
            }
        }
        EpsPredicate::Roundify => {
            for f in &filters {
                if space.roundify_over(f, &dense) != space.roundify(f)? {
                    return mismatch(format!("roundification of {}", f.describe(space)));
                }
            }
        }
        EpsPredicate::PointFilter | EpsPredicate::Convergence => {
            for x in 0..n {
                for side in [Side::Forward, Side::Backward] {
                    let dense_core = space.point_core_over(x, side, &dense);
                    let test = space.point_filter(x, side)?;
                    if predicate == EpsPredicate::PointFilter && &dense_core != test.core() {
                        return mismatch(format!("{side:?} point filter of {}", space.name(x)));
                    }
                    if predicate == EpsPredicate::Convergence {
                        for f in &filters {
                            let dense_v = dense
                                .iter()
                                .all(|e| f.core().is_subset(&space.ball_unchecked(x, e, side)));
                            if dense_v != space.converges(f, x, side)? {
                                return mismatch(format!(
                                    "{side:?} convergence of {} to {}",
                                    f.describe(space),
                                    space.name(x)
                                ));
                            }
                        }
                    }
                }
            }
        }
        EpsPredicate::MaximalCauchyCores => {
            for side in [Side::Forward, Side::Backward] {
                if maximal_cauchy_cores_over(space, side, &dense) != maximal_cauchy_cores(space, side) {
                    return mismatch(format!("{side:?} maximal Cauchy cores"));
                }
            }
        }
        EpsPredicate::Topology => {
            for side in [Side::Forward, Side::Backward] {
                if topology_over(space, side, &dense) != topology_of(space, side) {
                    return mismatch(format!("{side:?} topology"));
                }
            }
        }
        EpsPredicate::QuasiUniformity => {
            for side in [Side::Forward, Side::Backward] {
                if quasi_uniformity_over(space, side, &dense) != quasi_uniformity_of(space, side) {
                    return mismatch(format!("{side:?} quasi-uniformity"));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Runs every ε-reduction predicate over `spaces` generated spaces.
pub(crate) fn epsilon_reports(seed: u64, spaces: usize, samples: usize, max_points: usize) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let mut tally = Tally::default();
    let g = InstanceGenerator::new(seed, QuantaleChoice::ExtRational).points(1, max_points);
    for inst in g.instances(spaces) {
        let AnySpace::Rational(space) = &inst.space else {
            unreachable!("rational generator");
        };
        let instance: Value = serde_json::to_value(SpaceData::of(space)).expect("serializable");
        for p in EpsPredicate::ALL {
            let outcome = oracle_epsilon_reduction(space, p, samples, inst.seed)?;
            tally.record(&format!("oracle.epsilon.{}", p.id()), inst.seed, &instance, outcome);
        }
    }
    Ok(tally.finish(start.elapsed()))
}

/// Outcome of every oracle; the theorem suite runs only when all passed.
#[derive(Debug, Clone)]
pub struct OracleStatus {
    pub reports: Vec<VerificationReport>,
}

impl OracleStatus {
    pub fn establish(seed: u64, eps_spaces: usize, eps_samples: usize) -> Result<Self> {
        let mut reports = vec![oracle_well_above(&lattice_corpus(5))];
        for n in 1..=3 {
            reports.extend(oracle_filters(n)?);
        }
        reports.extend(epsilon_reports(seed, eps_spaces, eps_samples, 5)?);
        Ok(OracleStatus { reports })
    }

    pub fn is_current(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(|r| r.passed() && r.instances > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{x2a, x2n, x3z};

    #[test]
    fn corpus_is_large_enough() {
        let corpus = lattice_corpus(5);
        // 10 lattices up to isomorphism, 425 labelled ones
        assert_eq!(corpus.len(), 1 + 2 + 6 + 36 + 380);
        let report = oracle_well_above(&corpus);
        assert!(report.passed() && report.instances == corpus.len());
    }

    #[test]
    fn filter_oracles_pass() {
        for n in 1..=3 {
            for r in oracle_filters(n).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
        assert!(oracle_filters(4).is_err());
    }

    #[test]
    fn epsilon_examples() {
        for space in [x2a(), x2n(), x3z()] {
            for p in EpsPredicate::ALL {
                assert_eq!(oracle_epsilon_reduction(&space, p, 1000, 1).unwrap(), Outcome::Pass, "{p:?}");
            }
        }
    }

    #[test]
    fn dense_radii_cover_cells() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = dense_radii(&x2a(), 100, &mut rng);
        let half = ExtRat::new(1, 2);
        assert!(r.iter().any(|e| *e < ExtRat::int(1)) && r.contains(&ExtRat::int(2)));
        assert!(r.iter().any(|e| *e > ExtRat::int(1) && *e < ExtRat::int(2)));
        assert!(r.iter().any(|e| *e > ExtRat::int(2) && !e.is_inf()));
        assert!(r.contains(&ExtRat::Inf) && !r.contains(&ExtRat::ZERO));
        let _ = half;
    }
}
