use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::{Law, QuantaleDescriptor, QuantaleError, ValidationReport, ValueQuantale};

/// A non-negative rational or infinity.
///
/// The derived order is the numeric one: every finite value lies below
/// [`ExtRat::Inf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Fin(Ratio<i64>),
    Inf,
}

impl ExtRat {
    pub const ZERO: ExtRat = ExtRat::Fin(Ratio::new_raw(0, 1));

    /// `numer/denom`, normalized. Panics on a negative value or zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        let r = Ratio::new(numer, denom);
        assert!(!r.is_negative(), "negative value {r}");
        ExtRat::Fin(r)
    }

    pub fn int(n: i64) -> Self {
        Self::new(n, 1)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }

    pub fn finite(&self) -> Option<Ratio<i64>> {
        match self {
            ExtRat::Fin(r) => Some(*r),
            ExtRat::Inf => None,
        }
    }

    /// Truncated difference `max(self - other, 0)` on finite values.
    fn monus(a: Ratio<i64>, b: Ratio<i64>) -> Ratio<i64> {
        if a > b {
            a - b
        } else {
            Ratio::zero()
        }
    }
}

impl Add for ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Inf => f.write_str("inf"),
            ExtRat::Fin(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            ExtRat::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtRat {
    type Err = QuantaleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || QuantaleError::Parse(s.to_string());
        if s == "inf" || s == "∞" {
            return Ok(ExtRat::Inf);
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d <= 0 || n < 0 {
            return Err(bad());
        }
        Ok(ExtRat::new(n, d))
    }
}

/// The quantale `[0, ∞]` restricted to exact rationals, with ordinary order
/// and addition truncated at infinity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtRational;

impl ValueQuantale for ExtRational {
    type Elem = ExtRat;

    fn bottom(&self) -> ExtRat {
        ExtRat::ZERO
    }

    fn top(&self) -> ExtRat {
        ExtRat::Inf
    }

    fn contains(&self, e: &ExtRat) -> bool {
        match e {
            ExtRat::Fin(r) => !r.is_negative(),
            ExtRat::Inf => true,
        }
    }

    fn leq(&self, a: &ExtRat, b: &ExtRat) -> bool {
        a <= b
    }

    fn meet(&self, a: &ExtRat, b: &ExtRat) -> ExtRat {
        *a.min(b)
    }

    fn join(&self, a: &ExtRat, b: &ExtRat) -> ExtRat {
        *a.max(b)
    }

    fn add(&self, a: &ExtRat, b: &ExtRat) -> ExtRat {
        *a + *b
    }

    /// Strict numeric order. For `a > b` the family `S` must contain something
    /// below `a`, since otherwise `⋀S ≥ a > b`; for `a ≤ b` the family
    /// `{a + 2^-k}` (empty when `a = ∞`) defeats `a`.
    fn well_above(&self, a: &ExtRat, b: &ExtRat) -> bool {
        a > b
    }

    fn subtract(&self, a: &ExtRat, b: &ExtRat) -> ExtRat {
        match (a, b) {
            (_, ExtRat::Inf) => ExtRat::ZERO,
            (ExtRat::Inf, ExtRat::Fin(_)) => ExtRat::Inf,
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(ExtRat::monus(*a, *b)),
        }
    }

    fn find_nth_fraction(&self, eps: &ExtRat, n: u32) -> Result<ExtRat, QuantaleError> {
        if n == 0 {
            return Err(QuantaleError::Precondition("n must be at least 1".into()));
        }
        match eps {
            ExtRat::Inf => Ok(ExtRat::int(1)),
            ExtRat::Fin(r) if r.is_zero() => Err(QuantaleError::Precondition(
                "0 is not well above 0".into(),
            )),
            ExtRat::Fin(r) => Ok(ExtRat::Fin(r / i64::from(n))),
        }
    }

    fn interpolate(&self, x: &ExtRat, z: &ExtRat) -> Result<ExtRat, QuantaleError> {
        if x >= z {
            return Err(QuantaleError::Precondition(format!("{x} is not well below {z}")));
        }
        Ok(match (x, z) {
            (ExtRat::Fin(a), ExtRat::Inf) => ExtRat::Fin(a + 1),
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin((a + b) / 2),
            (ExtRat::Inf, _) => unreachable!("∞ is below nothing"),
        })
    }

    fn elements(&self) -> Option<Vec<ExtRat>> {
        None
    }

    /// `{m/2} ∪ D⁺ ∪ {∞}` where `D⁺` are the positive distances and `m` their
    /// minimum (1 stands in for `m/2` when there is no finite positive distance).
    fn epsilon_test_set(&self, distances: &[ExtRat]) -> Vec<ExtRat> {
        let mut set: Vec<ExtRat> = distances
            .iter()
            .copied()
            .filter(|d| *d > ExtRat::ZERO)
            .collect();
        let smallest = match set.iter().min() {
            Some(ExtRat::Fin(m)) => ExtRat::Fin(m / 2),
            _ => ExtRat::int(1),
        };
        set.push(smallest);
        set.push(ExtRat::Inf);
        set.sort();
        set.dedup();
        set
    }

    fn format_elem(&self, e: &ExtRat) -> String {
        e.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<ExtRat, QuantaleError> {
        s.parse()
    }

    fn descriptor(&self) -> QuantaleDescriptor {
        QuantaleDescriptor::ExtRational
    }
}

impl ExtRational {
    /// The laws on a finite sample of elements. Infinite meets are not
    /// reachable this way, so the report is marked non-exhaustive.
    pub fn validate_sampled(&self, sample: &[ExtRat]) -> ValidationReport {
        let mut report = ValidationReport {
            exhaustive: false,
            violations: Vec::new(),
        };
        let s = |e: &ExtRat| e.to_string();
        for a in sample {
            if self.add(a, &ExtRat::ZERO) != *a {
                report.push(Law::ZeroUnit, vec![s(a)]);
            }
            for b in sample {
                if self.add(a, b) != self.add(b, a) {
                    report.push(Law::AddCommutative, vec![s(a), s(b)]);
                }
                if self.is_positive(a) && self.is_positive(b) && !self.is_positive(&self.meet(a, b)) {
                    report.push(Law::PositiveMeet, vec![s(a), s(b)]);
                }
                for c in sample {
                    if self.add(&self.add(a, b), c) != self.add(a, &self.add(b, c)) {
                        report.push(Law::AddAssociative, vec![s(a), s(b), s(c)]);
                    }
                    if self.add(a, &self.meet(b, c)) != self.meet(&self.add(a, b), &self.add(a, c)) {
                        report.push(Law::MeetDistributive, vec![s(a), s(b), s(c)]);
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Bound;
    use proptest::prelude::*;

    fn r(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    #[test]
    fn lattice_bounds() {
        let q = ExtRational;
        assert_eq!(q.bound(&[], Bound::Meet).unwrap(), ExtRat::Inf);
        assert_eq!(q.bound(&[r("1/2"), r("2")], Bound::Meet).unwrap(), r("1/2"));
        assert_eq!(q.bound(&[], Bound::Join).unwrap(), ExtRat::ZERO);
    }

    #[test]
    fn arithmetic_examples() {
        let q = ExtRational;
        assert_eq!(q.add(&r("1"), &ExtRat::Inf), ExtRat::Inf);
        assert_eq!(q.add(&r("1/3"), &r("1/6")), r("1/2"));
        assert_eq!(q.subtract(&r("3"), &r("5")), ExtRat::ZERO);
        assert_eq!(q.subtract(&r("5"), &r("3")), r("2"));
        assert_eq!(q.subtract(&ExtRat::Inf, &r("3")), ExtRat::Inf);
        assert_eq!(q.subtract(&ExtRat::Inf, &ExtRat::Inf), ExtRat::ZERO);
        assert_eq!(q.find_nth_fraction(&r("1"), 2).unwrap(), r("1/2"));
        assert_eq!(q.find_nth_fraction(&ExtRat::Inf, 3).unwrap(), r("1"));
        assert!(q.find_nth_fraction(&ExtRat::ZERO, 2).is_err());
        assert_eq!(q.interpolate(&ExtRat::ZERO, &r("1")).unwrap(), r("1/2"));
        assert_eq!(q.interpolate(&r("2"), &ExtRat::Inf).unwrap(), r("3"));
        assert!(q.interpolate(&r("2"), &r("2")).is_err());
    }

    #[test]
    fn subtract_against_grid_oracle() {
        // ⋀{c : 5 ≤ 3 + c} over a grid of step 1/8 containing the candidate
        let q = ExtRational;
        let grid = (0..=80).map(|k| ExtRat::new(k, 8));
        let best = grid.filter(|c| r("5") <= r("3") + *c).min().unwrap();
        assert_eq!(q.subtract(&r("5"), &r("3")), best);
    }

    #[test]
    fn well_above_witness_families() {
        let q = ExtRational;
        // 1 ≻ 0: any family with infimum 0 has a member below 1
        let family: Vec<ExtRat> = (0..20).map(|k| ExtRat::new(1, 1 << k)).collect();
        assert!(family.iter().any(|s| *s <= r("1")));
        assert!(q.well_above(&r("1"), &ExtRat::ZERO));
        // 0 ⊁ 0: {2^-k} has infimum 0 but no member ≤ 0
        assert!(family.iter().all(|s| *s > ExtRat::ZERO));
        assert!(!q.well_above(&ExtRat::ZERO, &ExtRat::ZERO));
        assert!(q.well_above(&ExtRat::Inf, &r("7")));
        assert!(!q.well_above(&ExtRat::Inf, &ExtRat::Inf));
    }

    #[test]
    fn parse_and_format() {
        for s in ["0", "3", "1/2", "inf"] {
            assert_eq!(r(s).to_string(), s);
        }
        assert_eq!(r("2/4").to_string(), "1/2");
        assert_eq!(r("∞"), ExtRat::Inf);
        assert!("-1".parse::<ExtRat>().is_err());
        assert!("1/0".parse::<ExtRat>().is_err());
        assert!("x".parse::<ExtRat>().is_err());
    }

    #[test]
    fn test_set_examples() {
        let q = ExtRational;
        assert_eq!(
            q.epsilon_test_set(&[ExtRat::ZERO, r("1"), r("2"), ExtRat::ZERO]),
            vec![r("1/2"), r("1"), r("2"), ExtRat::Inf]
        );
        assert_eq!(q.epsilon_test_set(&[ExtRat::ZERO]), vec![r("1"), ExtRat::Inf]);
        assert_eq!(q.epsilon_test_set(&[ExtRat::Inf]), vec![r("1"), ExtRat::Inf]);
    }

    fn ext() -> impl Strategy<Value = ExtRat> {
        prop_oneof![
            9 => (0i64..40, 1i64..9).prop_map(|(n, d)| ExtRat::new(n, d)),
            1 => Just(ExtRat::Inf),
        ]
    }

    proptest! {
        #[test]
        fn subtraction_adjunction(a in ext(), b in ext(), c in ext()) {
            let q = ExtRational;
            prop_assert_eq!(q.leq(&q.subtract(&a, &b), &c), q.leq(&a, &q.add(&b, &c)));
            prop_assert_eq!(q.subtract(&q.subtract(&a, &b), &c), q.subtract(&a, &q.add(&b, &c)));
        }

        #[test]
        fn well_above_calculus(x in ext(), y in ext(), z in ext()) {
            let q = ExtRational;
            if q.well_above(&x, &y) { prop_assert!(q.leq(&y, &x)); }
            if q.well_above(&x, &y) && q.leq(&z, &y) { prop_assert!(q.well_above(&x, &z)); }
            if q.leq(&y, &x) && q.well_above(&y, &z) { prop_assert!(q.well_above(&x, &z)); }
            if q.well_above(&z, &x) {
                let m = q.interpolate(&x, &z).unwrap();
                prop_assert!(q.well_above(&m, &x) && q.well_above(&z, &m));
            }
        }

        #[test]
        fn order_via_positive_slack(a in ext(), b in ext()) {
            // a ≤ b ⟺ a ≤ b + ε for every ε ≻ 0; when a > b finite, ε = (a-b)/2 separates
            let q = ExtRational;
            match (a, b) {
                (ExtRat::Fin(x), ExtRat::Fin(y)) if x > y => {
                    let eps = ExtRat::Fin((x - y) / 2);
                    prop_assert!(!q.leq(&a, &q.add(&b, &eps)));
                }
                (ExtRat::Inf, ExtRat::Fin(_)) => {
                    prop_assert!(!q.leq(&a, &q.add(&b, &ExtRat::int(1))));
                }
                _ => {
                    for eps in [ExtRat::new(1, 1000), ExtRat::int(1), ExtRat::Inf] {
                        prop_assert!(q.leq(&a, &q.add(&b, &eps)));
                    }
                }
            }
        }

        #[test]
        fn halving_fits(eps in ext(), n in 1u32..6) {
            let q = ExtRational;
            prop_assume!(q.is_positive(&eps));
            let d = q.find_nth_fraction(&eps, n).unwrap();
            prop_assert!(q.is_positive(&d));
            prop_assert!(q.leq(&q.multiple(&d, n), &eps));
        }
    }

    #[test]
    fn sampled_laws() {
        let sample: Vec<ExtRat> = ["0", "1/3", "1/2", "1", "5/2", "inf"].iter().map(|e| e.parse().unwrap()).collect();
        let report = ExtRational.validate_sampled(&sample);
        assert!(report.is_valid() && !report.exhaustive, "{report}");
    }
}
