//! Finite V-spaces: a carrier with a distance matrix valued in a quantale.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::quantale::{
    validate_quantale_morphism_with, Law, QuantaleMorphism, ValidationReport, ValueQuantale,
};

/// Which of the two balls (or point filters, or topologies) is meant:
/// forward uses `d(x, y)`, backward uses `d(y, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Forward,
    Backward,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Forward => Side::Backward,
            Side::Backward => Side::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulus {
    Pointwise(usize),
    Uniform,
}

/// A decided property, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "lowercase")]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    /// `None` (no counterexample found) means the property holds.
    fn from(counterexample: Option<W>) -> Self {
        match counterexample {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub symmetric: bool,
    pub separated: bool,
}

#[derive(Clone)]
pub struct VSpace<Q: ValueQuantale> {
    quantale: Q,
    points: Vec<String>,
    d: Vec<Vec<Q::Elem>>,
    tests: OnceLock<Vec<Q::Elem>>,
}

impl<Q: ValueQuantale> PartialEq for VSpace<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.quantale == other.quantale && self.points == other.points && self.d == other.d
    }
}

impl<Q: ValueQuantale> Eq for VSpace<Q> {}

impl<Q: ValueQuantale> fmt::Debug for VSpace<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "VSpace {:?}", self.points)?;
        for row in &self.d {
            let cells: Vec<String> = row.iter().map(|e| self.quantale.format_elem(e)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<Q: ValueQuantale> VSpace<Q> {
    /// Checks shapes, membership of entries and distinct point names only;
    /// the space axioms are checked by [`VSpace::validate`].
    pub fn new(quantale: Q, points: Vec<String>, d: Vec<Vec<Q::Elem>>) -> Result<Self> {
        let n = points.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(Error::Structural(format!(
                "distance matrix must be {n}×{n} to match the point list"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Structural(format!("duplicate point `{p}`")));
            }
        }
        for row in &d {
            for e in row {
                quantale.check(e)?;
            }
        }
        Ok(VSpace {
            quantale,
            points,
            d,
            tests: OnceLock::new(),
        })
    }

    /// Builds a space with points named `0, 1, …`.
    pub fn anonymous(quantale: Q, d: Vec<Vec<Q::Elem>>) -> Result<Self> {
        let points = (0..d.len()).map(|i| i.to_string()).collect();
        Self::new(quantale, points, d)
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn carrier(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn matrix(&self) -> &[Vec<Q::Elem>] {
        &self.d
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(format!("#{x}")))
        }
    }

    pub fn check_set(&self, s: &PointSet) -> Result<()> {
        if s.bound() <= self.len() {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "set {s:?} is not contained in a carrier of {} points",
                self.len()
            )))
        }
    }

    pub fn d(&self, x: usize, y: usize) -> &Q::Elem {
        &self.d[x][y]
    }

    pub fn dist(&self, side: Side, x: usize, y: usize) -> &Q::Elem {
        match side {
            Side::Forward => &self.d[x][y],
            Side::Backward => &self.d[y][x],
        }
    }

    pub fn format_set(&self, s: &PointSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Zero self-distance and every triangle, with one violation per failing
    /// point or triple.
    pub fn validate(&self) -> ValidationReport {
        let q = &self.quantale;
        let n = self.len();
        let mut report = ValidationReport::exhaustive();
        let zero = q.bottom();
        for x in 0..n {
            if self.d[x][x] != zero {
                report.push(Law::ZeroSelfDistance, vec![self.points[x].clone()]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !q.leq(&self.d[x][z], &q.add(&self.d[x][y], &self.d[y][z])) {
                        report.push(
                            Law::Triangle,
                            vec![self.points[x].clone(), self.points[y].clone(), self.points[z].clone()],
                        );
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// The transpose `d^op(x, y) = d(y, x)`.
    pub fn dual(&self) -> VSpace<Q> {
        let n = self.len();
        let d = (0..n)
            .map(|x| (0..n).map(|y| self.d[y][x].clone()).collect())
            .collect();
        VSpace {
            quantale: self.quantale.clone(),
            points: self.points.clone(),
            d,
            tests: self.tests.clone(),
        }
    }

    /// The subspace on `keep`, points renumbered in increasing order.
    pub fn restrict(&self, keep: &PointSet) -> VSpace<Q> {
        let idx: Vec<usize> = keep.iter().filter(|&i| i < self.len()).collect();
        VSpace {
            quantale: self.quantale.clone(),
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            d: idx
                .iter()
                .map(|&x| idx.iter().map(|&y| self.d[x][y].clone()).collect())
                .collect(),
            tests: OnceLock::new(),
        }
    }

    pub(crate) fn ball_unchecked(&self, x: usize, eps: &Q::Elem, side: Side) -> PointSet {
        (0..self.len())
            .filter(|&y| self.quantale.leq(self.dist(side, x, y), eps))
            .collect()
    }

    /// `B_ε(x) = {y | d(x,y) ≤ ε}` forward, `B^ε(x) = {y | d(y,x) ≤ ε}` backward.
    pub fn ball(&self, x: usize, eps: &Q::Elem, side: Side) -> Result<PointSet> {
        self.check_point(x)?;
        self.quantale.check(eps)?;
        Ok(self.ball_unchecked(x, eps, side))
    }

    pub(crate) fn ball_of_set_unchecked(&self, s: &PointSet, eps: &Q::Elem, side: Side) -> PointSet {
        (0..self.len())
            .filter(|&y| s.iter().any(|x| self.quantale.leq(self.dist(side, x, y), eps)))
            .collect()
    }

    pub fn ball_of_set(&self, s: &PointSet, eps: &Q::Elem, side: Side) -> Result<PointSet> {
        self.check_set(s)?;
        self.quantale.check(eps)?;
        Ok(self.ball_of_set_unchecked(s, eps, side))
    }

    /// `⋀ d(s, t)` over `s ∈ S`, `t ∈ T`; `∞` when either set is empty.
    pub fn set_distance(&self, s: &PointSet, t: &PointSet) -> Q::Elem {
        let q = &self.quantale;
        let mut acc = q.top();
        for x in s.iter() {
            for y in t.iter() {
                acc = q.meet(&acc, &self.d[x][y]);
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..x).all(|y| self.d[x][y] == self.d[y][x]))
    }

    /// Distinct points at distance 0 in both directions, if any.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let zero = self.quantale.bottom();
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.d[x][y] == zero && self.d[y][x] == zero)
    }

    pub fn classify(&self) -> Classification {
        Classification {
            symmetric: self.is_symmetric(),
            separated: self.separation_witness().is_none(),
        }
    }

    /// The separated reflection: classes of `x ~ y ⟺ d(x,y) = 0 = d(y,x)`,
    /// named `[rep]` after their first member, with the projection. Fails if
    /// representatives of two classes disagree on their distance, which
    /// cannot happen in a valid space.
    pub fn separation_quotient(&self) -> Result<(VSpace<Q>, Vec<usize>)> {
        let n = self.len();
        let zero = self.quantale.bottom();
        let mut proj = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if proj[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for y in x..n {
                if self.d[x][y] == zero && self.d[y][x] == zero {
                    proj[y] = class;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (reps[proj[x]], reps[proj[y]]);
                if self.d[x][y] != self.d[a][b] {
                    return Err(Error::Inconsistent(format!(
                        "distance between classes of {} and {} depends on representatives",
                        self.points[x], self.points[y]
                    )));
                }
            }
        }
        let points = reps.iter().map(|&r| format!("[{}]", self.points[r])).collect();
        let d = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| self.d[a][b].clone()).collect())
            .collect();
        Ok((VSpace::new(self.quantale.clone(), points, d)?, proj))
    }

    /// Distinct entries of the distance matrix.
    pub fn distance_values(&self) -> Vec<Q::Elem> {
        let mut out: Vec<Q::Elem> = Vec::new();
        for row in &self.d {
            for e in row {
                if !out.contains(e) {
                    out.push(e.clone());
                }
            }
        }
        out
    }

    /// The finite set of radii over which every `∀ε≻0` and `∃δ≻0` of this
    /// crate is evaluated for this space.
    pub fn epsilon_test_set(&self) -> &[Q::Elem] {
        self.tests
            .get_or_init(|| self.quantale.epsilon_test_set(&self.distance_values()))
    }

    pub(crate) fn modulus_admissible_over(&self, eps: &Q::Elem, delta: &Q::Elem, mode: Modulus) -> bool {
        let q = &self.quantale;
        let n = self.len();
        let flips = |x: usize, y: usize| !q.leq(&self.d[y][x], delta) || q.leq(&self.d[x][y], eps);
        match mode {
            Modulus::Uniform => (0..n).all(|x| (0..n).all(|y| flips(x, y))),
            // B^δ(x) ⊆ B_ε(x) and B_δ(x) ⊆ B^ε(x)
            Modulus::Pointwise(x) => (0..n).all(|y| flips(x, y) && flips(y, x)),
        }
    }

    pub(crate) fn symmetry_modulus_over(
        &self,
        eps: &Q::Elem,
        mode: Modulus,
        deltas: &[Q::Elem],
    ) -> Option<Q::Elem> {
        deltas
            .iter()
            .rev()
            .find(|delta| self.modulus_admissible_over(eps, delta, mode))
            .cloned()
    }

    /// The largest `δ` in the test set witnessing symmetry at `ε`: pointwise,
    /// `B^δ(x) ⊆ B_ε(x)` and `B_δ(x) ⊆ B^ε(x)`; uniformly,
    /// `d(y,x) ≤ δ ⇒ d(x,y) ≤ ε` for all pairs. `None` when no `δ ≻ 0` works.
    pub fn symmetry_modulus(&self, eps: &Q::Elem, mode: Modulus) -> Result<Option<Q::Elem>> {
        self.quantale.check(eps)?;
        if let Modulus::Pointwise(x) = mode {
            self.check_point(x)?;
        }
        if !self.quantale.is_positive(eps) {
            return Err(Error::Precondition(format!(
                "{} is not well above 0",
                self.quantale.format_elem(eps)
            )));
        }
        Ok(self.symmetry_modulus_over(eps, mode, self.epsilon_test_set()))
    }

    fn modulus_exists_over(&self, eps: &Q::Elem, mode: Modulus, deltas: &[Q::Elem]) -> bool {
        deltas.iter().any(|delta| self.modulus_admissible_over(eps, delta, mode))
    }

    pub(crate) fn has_va_over(&self, eps: &[Q::Elem], deltas: &[Q::Elem]) -> Verdict<(usize, Q::Elem)> {
        eps.iter()
            .find_map(|e| {
                (0..self.len())
                    .find(|&x| !self.modulus_exists_over(e, Modulus::Pointwise(x), deltas))
                    .map(|x| (x, e.clone()))
            })
            .into()
    }

    pub(crate) fn has_uva_over(&self, eps: &[Q::Elem], deltas: &[Q::Elem]) -> Verdict<Q::Elem> {
        eps.iter()
            .find(|e| !self.modulus_exists_over(e, Modulus::Uniform, deltas))
            .cloned()
            .into()
    }

    /// Vanishing asymmetry; the witness is a point and an `ε` with no modulus there.
    pub fn has_va(&self) -> Verdict<(usize, Q::Elem)> {
        let t = self.epsilon_test_set();
        self.has_va_over(t, t)
    }

    /// Uniformly vanishing asymmetry; the witness is an `ε` with no uniform modulus.
    pub fn has_uva(&self) -> Verdict<Q::Elem> {
        let t = self.epsilon_test_set();
        let v = self.has_uva_over(t, t);
        debug_assert!(!v.holds() || self.has_va().holds(), "UVA without VA");
        v
    }

    /// Radii deciding continuity of maps from `self` to `target`.
    pub fn combined_test_set(&self, target: &VSpace<Q>) -> Vec<Q::Elem> {
        let mut values = self.distance_values();
        for v in target.distance_values() {
            if !values.contains(&v) {
                values.push(v);
            }
        }
        self.quantale.epsilon_test_set(&values)
    }

    pub(crate) fn check_map(&self, f: &[usize], target: &VSpace<Q>) -> Result<()> {
        if self.quantale != target.quantale {
            return Err(Error::QuantaleMismatch);
        }
        if f.len() != self.len() || f.iter().any(|&y| y >= target.len()) {
            return Err(Error::Structural(format!(
                "point map must send each of the {} source points into the {} target points",
                self.len(),
                target.len()
            )));
        }
        Ok(())
    }

    pub(crate) fn uc_over(
        &self,
        f: &[usize],
        target: &VSpace<Q>,
        eps: &[Q::Elem],
        deltas: &[Q::Elem],
    ) -> Verdict<Q::Elem> {
        let q = &self.quantale;
        let n = self.len();
        let works = |e: &Q::Elem, delta: &Q::Elem| {
            (0..n).all(|a| {
                (0..n).all(|b| !q.leq(&self.d[a][b], delta) || q.leq(target.d(f[a], f[b]), e))
            })
        };
        eps.iter()
            .find(|e| !deltas.iter().any(|delta| works(e, delta)))
            .cloned()
            .into()
    }

    /// `∀ε≻0 ∃δ≻0: d(a,b) ≤ δ ⇒ d(f a, f b) ≤ ε`; the witness is a failing `ε`.
    pub fn is_uniformly_continuous(&self, f: &[usize], target: &VSpace<Q>) -> Result<Verdict<Q::Elem>> {
        self.check_map(f, target)?;
        let t = self.combined_test_set(target);
        Ok(self.uc_over(f, target, &t, &t))
    }

    /// Change of base along a quantale morphism. The morphism is checked at
    /// every distance of the space in addition to its own check points, and
    /// the result is re-validated.
    pub fn pushforward<W, M>(&self, alpha: &M) -> Result<VSpace<W>>
    where
        W: ValueQuantale,
        M: QuantaleMorphism<Q, W>,
    {
        if alpha.source() != &self.quantale {
            return Err(Error::QuantaleMismatch);
        }
        let report = validate_quantale_morphism_with(alpha, &self.distance_values());
        if !report.is_valid() {
            return Err(Error::Precondition(format!("not a quantale morphism:\n{report}")));
        }
        let own = self.validate();
        if !own.is_valid() {
            return Err(Error::Precondition(format!("not a V-space:\n{own}")));
        }
        let d = self
            .d
            .iter()
            .map(|row| row.iter().map(|e| alpha.apply(e)).collect())
            .collect();
        let out = VSpace::new(alpha.target().clone(), self.points.clone(), d)?;
        let check = out.validate();
        if !check.is_valid() {
            return Err(Error::Inconsistent(format!("pushforward is not a V-space:\n{check}")));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{ExtRat, ExtRational, FiniteQuantale, IdentityMorphism, StepMorphism};
    use crate::samples::{rat_space, x2a, x2n, x3z};

    fn r(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn validation() {
        assert!(x2a().is_valid());
        let bad = rat_space(&["a", "b", "c"], &[&["0", "1", "5"], &["1", "0", "1"], &["5", "1", "0"]]);
        let report = bad.validate();
        assert_eq!(report.failed_laws(), vec![Law::Triangle]);
        assert_eq!(report.violations[0].witness, vec!["a", "b", "c"]);
        let diag = rat_space(&["a"], &[&["1"]]);
        assert_eq!(diag.validate().failed_laws(), vec![Law::ZeroSelfDistance]);
    }

    #[test]
    fn structural_errors() {
        let q = ExtRational;
        assert!(matches!(
            VSpace::new(q, vec!["a".into()], vec![vec![]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            VSpace::new(q, vec!["a".into(), "a".into()], vec![vec![ExtRat::ZERO; 2]; 2]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn dual_and_balls() {
        let x = x2a();
        let d = x.dual();
        assert_eq!(d.d(0, 1), &r("2"));
        assert_eq!(d.dual(), x);
        assert_eq!(x.ball(0, &r("1"), Side::Forward).unwrap(), set(&[0, 1]));
        assert_eq!(x.ball(0, &r("1"), Side::Backward).unwrap(), set(&[0]));
        assert_eq!(x.ball(0, &ExtRat::Inf, Side::Forward).unwrap(), x.carrier());
        for e in ["0", "1/2", "1", "2", "inf"] {
            assert_eq!(
                x.ball(1, &r(e), Side::Backward).unwrap(),
                d.ball(1, &r(e), Side::Forward).unwrap()
            );
        }
        assert!(matches!(x.ball(5, &r("1"), Side::Forward), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn ball_of_set_and_set_distance() {
        let x = x2a();
        assert_eq!(x.ball_of_set(&set(&[0, 1]), &r("0"), Side::Forward).unwrap(), set(&[0, 1]));
        assert!(x.ball_of_set(&set(&[]), &r("1"), Side::Forward).unwrap().is_empty());
        let z = x3z();
        assert_eq!(z.ball_of_set(&set(&[0]), &r("1/2"), Side::Forward).unwrap(), set(&[0, 1]));
        assert_eq!(x.set_distance(&set(&[0]), &set(&[1])), r("1"));
        assert_eq!(x.set_distance(&set(&[0, 1]), &set(&[1])), r("0"));
        assert_eq!(x.set_distance(&set(&[]), &set(&[1])), ExtRat::Inf);
    }

    #[test]
    fn classification() {
        assert_eq!(x2a().classify(), Classification { symmetric: false, separated: true });
        assert_eq!(x3z().classify(), Classification { symmetric: true, separated: false });
        let one = rat_space(&["p"], &[&["0"]]);
        assert_eq!(one.classify(), Classification { symmetric: true, separated: true });
    }

    #[test]
    fn separation_quotient_examples() {
        let (q, proj) = x3z().separation_quotient().unwrap();
        assert_eq!(q.points(), &["[a]", "[c]"]);
        assert_eq!(proj, vec![0, 0, 1]);
        assert_eq!(q.d(0, 1), &r("1"));
        assert_eq!(q.d(1, 0), &r("1"));
        assert!(q.classify().separated);

        let (q, proj) = x2a().separation_quotient().unwrap();
        assert_eq!(proj, vec![0, 1]);
        assert_eq!(q.matrix(), x2a().matrix());

        let q1 = FiniteQuantale::q1();
        let z = q1.bottom();
        let s = VSpace::anonymous(q1, vec![vec![z; 3]; 3]).unwrap();
        assert_eq!(s.separation_quotient().unwrap().0.len(), 1);
    }

    #[test]
    fn test_sets() {
        assert_eq!(x2a().epsilon_test_set(), &[r("1/2"), r("1"), r("2"), ExtRat::Inf]);
        let q3 = FiniteQuantale::q3();
        let s = VSpace::anonymous(q3.clone(), vec![vec![q3.bottom()]]).unwrap();
        let names: Vec<String> = s.epsilon_test_set().iter().map(|e| q3.format_elem(e)).collect();
        assert_eq!(names, vec!["0", "1", "inf"]);
        let flat = rat_space(&["a", "b"], &[&["0", "0"], &["0", "0"]]);
        assert_eq!(flat.epsilon_test_set(), &[r("1"), ExtRat::Inf]);
    }

    #[test]
    fn moduli() {
        assert_eq!(x2a().symmetry_modulus(&r("1"), Modulus::Uniform).unwrap(), Some(r("1/2")));
        assert_eq!(x2n().symmetry_modulus(&r("1/2"), Modulus::Uniform).unwrap(), None);
        let s = crate::samples::x2s();
        let m = s.symmetry_modulus(&r("1"), Modulus::Uniform).unwrap().unwrap();
        assert!(s.modulus_admissible_over(&r("1"), &r("1"), Modulus::Uniform));
        assert!(r("1") <= m);
        assert!(matches!(
            x2a().symmetry_modulus(&ExtRat::ZERO, Modulus::Uniform),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn asymmetry_classes() {
        assert!(x2a().has_uva().holds());
        assert!(x2a().has_va().holds());
        assert_eq!(x2n().has_uva(), Verdict::Fails(r("1/2")));
        assert!(!x2n().has_va().holds());
        assert!(x3z().has_uva().holds());
    }

    #[test]
    fn uniform_continuity() {
        let x = x2a();
        assert!(x.is_uniformly_continuous(&[0, 1], &x).unwrap().holds());
        let n = x2n();
        assert_eq!(n.is_uniformly_continuous(&[1, 0], &n).unwrap(), Verdict::Fails(r("1/2")));
        assert!(n.is_uniformly_continuous(&[1, 1], &n).unwrap().holds());
        let (q3, c4) = (FiniteQuantale::q3(), FiniteQuantale::chain4());
        let a = VSpace::anonymous(q3.clone(), vec![vec![q3.bottom()]]).unwrap();
        let b = VSpace::anonymous(c4.clone(), vec![vec![c4.bottom()]]).unwrap();
        assert_eq!(a.is_uniformly_continuous(&[0], &b), Err(Error::QuantaleMismatch));
        assert!(matches!(
            x.is_uniformly_continuous(&[0, 2], &x),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn pushforwards() {
        let x = x2a();
        assert_eq!(x.pushforward(&IdentityMorphism(ExtRational)).unwrap(), x);
        let q3 = FiniteQuantale::q3();
        let e = |s: &str| q3.parse_elem(s).unwrap();
        let alpha =
            StepMorphism::new(q3.clone(), e("0"), vec![(ExtRat::int(1), e("1"))], e("inf")).unwrap();
        let y = x.pushforward(&alpha).unwrap();
        assert_eq!(y.d(0, 1), &e("1"));
        assert_eq!(y.d(1, 0), &e("inf"));
        assert!(crate::samples::x2s().pushforward(&alpha).unwrap().is_symmetric());
    }
}
