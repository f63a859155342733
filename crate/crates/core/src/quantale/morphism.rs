use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtRat, ExtRational, FiniteElem, FiniteQuantale, Law, QuantaleError, ValidationReport, ValueQuantale};

const STEP_SAMPLE_SEED: u64 = 0x5eed_0f_a1fa;

/// A monotone map between value quantales preserving 0 and subadditive.
pub trait QuantaleMorphism<V: ValueQuantale, W: ValueQuantale> {
    fn source(&self) -> &V;
    fn target(&self) -> &W;
    fn apply(&self, a: &V::Elem) -> W::Elem;

    /// Points at which the laws are checked, and whether they exhaust the source.
    fn check_points(&self) -> (Vec<V::Elem>, bool) {
        match self.source().elements() {
            Some(all) => (all, true),
            None => (Vec::new(), false),
        }
    }
}

/// A morphism out of a finite quantale, given by its value table.
#[derive(Debug, Clone)]
pub struct TableMorphism<W: ValueQuantale> {
    source: FiniteQuantale,
    target: W,
    table: Vec<W::Elem>,
}

impl<W: ValueQuantale> TableMorphism<W> {
    pub fn new(source: FiniteQuantale, target: W, table: Vec<W::Elem>) -> Result<Self, QuantaleError> {
        if table.len() != source.len() {
            return Err(QuantaleError::Malformed(format!(
                "partial mapping: {} of {} source elements mapped",
                table.len(),
                source.len()
            )));
        }
        for v in &table {
            target.check(v)?;
        }
        Ok(TableMorphism { source, target, table })
    }
}

impl<W: ValueQuantale> QuantaleMorphism<FiniteQuantale, W> for TableMorphism<W> {
    fn source(&self) -> &FiniteQuantale {
        &self.source
    }

    fn target(&self) -> &W {
        &self.target
    }

    fn apply(&self, a: &FiniteElem) -> W::Elem {
        self.table[a.0].clone()
    }
}

#[derive(Debug, Clone)]
pub struct IdentityMorphism<Q: ValueQuantale>(pub Q);

impl<Q: ValueQuantale> QuantaleMorphism<Q, Q> for IdentityMorphism<Q> {
    fn source(&self) -> &Q {
        &self.0
    }

    fn target(&self) -> &Q {
        &self.0
    }

    fn apply(&self, a: &Q::Elem) -> Q::Elem {
        a.clone()
    }

    fn check_points(&self) -> (Vec<Q::Elem>, bool) {
        match self.0.elements() {
            Some(all) => (all, true),
            None => {
                let mut pts = vec![self.0.bottom()];
                pts.extend(self.0.epsilon_test_set(&[]));
                (pts, false)
            }
        }
    }
}

/// A step function out of the extended rationals: `at_zero` at 0, then the
/// value paired with each bound on the half-open cell ending at (and
/// including) that bound, and `beyond` for everything past the last bound.
#[derive(Debug, Clone)]
pub struct StepMorphism<W: ValueQuantale> {
    target: W,
    at_zero: W::Elem,
    steps: Vec<(ExtRat, W::Elem)>,
    beyond: W::Elem,
    samples: usize,
}

impl<W: ValueQuantale> StepMorphism<W> {
    pub fn new(
        target: W,
        at_zero: W::Elem,
        steps: Vec<(ExtRat, W::Elem)>,
        beyond: W::Elem,
    ) -> Result<Self, QuantaleError> {
        let mut prev = ExtRat::ZERO;
        for (b, v) in &steps {
            if *b <= prev || b.is_inf() {
                return Err(QuantaleError::Malformed(
                    "step bounds must be finite, positive and increasing".into(),
                ));
            }
            target.check(v)?;
            prev = *b;
        }
        target.check(&at_zero)?;
        target.check(&beyond)?;
        Ok(StepMorphism {
            target,
            at_zero,
            steps,
            beyond,
            samples: 64,
        })
    }

    /// Number of random points added to the cell representatives.
    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }
}

impl<W: ValueQuantale> QuantaleMorphism<ExtRational, W> for StepMorphism<W> {
    fn source(&self) -> &ExtRational {
        &ExtRational
    }

    fn target(&self) -> &W {
        &self.target
    }

    fn apply(&self, a: &ExtRat) -> W::Elem {
        if *a == ExtRat::ZERO {
            return self.at_zero.clone();
        }
        self.steps
            .iter()
            .find(|(b, _)| a <= b)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| self.beyond.clone())
    }

    /// Representatives of every threshold cell (the bounds, interior
    /// midpoints, a point past the last bound, ∞) plus seeded random points.
    fn check_points(&self) -> (Vec<ExtRat>, bool) {
        let mut pts = vec![ExtRat::ZERO, ExtRat::Inf];
        let mut prev = ExtRat::ZERO;
        for (b, _) in &self.steps {
            pts.push(*b);
            pts.push(ExtRational.interpolate(&prev, b).expect("bounds increase"));
            prev = *b;
        }
        pts.push(prev + ExtRat::int(1));
        let span = prev.finite().map_or(4, |r| r.ceil().to_integer() + 2);
        let mut rng = ChaCha8Rng::seed_from_u64(STEP_SAMPLE_SEED);
        for _ in 0..self.samples {
            pts.push(ExtRat::new(rng.gen_range(0..span * 16), 16));
        }
        pts.sort();
        pts.dedup();
        (pts, false)
    }
}

/// Checks monotonicity, `α(0)=0` and subadditivity over every pair of check
/// points; exhaustive for finite sources, cell-representative sampling for
/// the extended rationals.
pub fn validate_quantale_morphism<V, W, M>(m: &M) -> ValidationReport
where
    V: ValueQuantale,
    W: ValueQuantale,
    M: QuantaleMorphism<V, W>,
{
    validate_quantale_morphism_with(m, &[])
}

/// As [`validate_quantale_morphism`], with `extra` added to the check points.
pub fn validate_quantale_morphism_with<V, W, M>(m: &M, extra: &[V::Elem]) -> ValidationReport
where
    V: ValueQuantale,
    W: ValueQuantale,
    M: QuantaleMorphism<V, W>,
{
    let (src, tgt) = (m.source(), m.target());
    let (mut points, exhaustive) = m.check_points();
    for e in extra {
        if !points.contains(e) {
            points.push(e.clone());
        }
    }
    let mut report = ValidationReport {
        exhaustive,
        violations: Vec::new(),
    };
    let fmt = |a: &V::Elem| src.format_elem(a);
    if m.apply(&src.bottom()) != tgt.bottom() {
        report.push(Law::PreservesZero, vec![tgt.format_elem(&m.apply(&src.bottom()))]);
    }
    let images: Vec<W::Elem> = points.iter().map(|a| m.apply(a)).collect();
    'outer: for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            if src.leq(a, b) && !tgt.leq(&images[i], &images[j]) {
                report.push(Law::Monotone, vec![fmt(a), fmt(b)]);
                break 'outer;
            }
        }
    }
    'outer: for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            let lhs = m.apply(&src.add(a, b));
            if !tgt.leq(&lhs, &tgt.add(&images[i], &images[j])) {
                report.push(Law::Subadditive, vec![fmt(a), fmt(b)]);
                break 'outer;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3_step() -> StepMorphism<FiniteQuantale> {
        let q3 = FiniteQuantale::q3();
        let e = |s: &str| q3.parse_elem(s).unwrap();
        StepMorphism::new(q3.clone(), e("0"), vec![(ExtRat::int(1), e("1"))], e("inf")).unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let r = validate_quantale_morphism(&IdentityMorphism(FiniteQuantale::q3()));
        assert!(r.is_valid() && r.exhaustive);
        let r = validate_quantale_morphism(&IdentityMorphism(ExtRational));
        assert!(r.is_valid() && !r.exhaustive);
    }

    #[test]
    fn step_into_q3_is_valid() {
        let m = q3_step();
        let q3 = m.target().clone();
        assert_eq!(m.apply(&ExtRat::new(1, 2)), q3.parse_elem("1").unwrap());
        assert_eq!(m.apply(&ExtRat::int(1)), q3.parse_elem("1").unwrap());
        assert_eq!(m.apply(&ExtRat::int(2)), q3.top());
        let r = validate_quantale_morphism(&m);
        assert!(r.is_valid(), "{r}");
        assert!(!r.exhaustive);
    }

    #[test]
    fn swap_on_q3_is_invalid() {
        let q3 = FiniteQuantale::q3();
        let e = |s: &str| q3.parse_elem(s).unwrap();
        let m = TableMorphism::new(q3.clone(), q3.clone(), vec![e("inf"), e("1"), e("0")]).unwrap();
        let r = validate_quantale_morphism(&m);
        let laws = r.failed_laws();
        assert!(laws.contains(&Law::PreservesZero));
        assert!(laws.contains(&Law::Monotone));
    }

    #[test]
    fn partial_table_is_structural_error() {
        let q3 = FiniteQuantale::q3();
        let e = q3.bottom();
        assert!(matches!(
            TableMorphism::new(q3.clone(), q3, vec![e]),
            Err(QuantaleError::Malformed(_))
        ));
    }

    #[test]
    fn step_that_is_not_subadditive_is_caught() {
        // α(t) = 0 for t ≤ 1, ∞ beyond: α(1 + 1) = ∞ > α(1) + α(1) = 0
        let q3 = FiniteQuantale::q3();
        let m = StepMorphism::new(q3.clone(), q3.bottom(), vec![(ExtRat::int(1), q3.bottom())], q3.top())
            .unwrap();
        assert_eq!(validate_quantale_morphism(&m).failed_laws(), vec![Law::Subadditive]);
    }
}
