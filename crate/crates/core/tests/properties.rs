use proptest::prelude::*;
use qc_core::io::{AnySpace, SpaceData};
use qc_core::quantale::{ExtRat, ExtRational, FiniteQuantale, ValueQuantale};
use qc_core::verify::{InstanceGenerator, QuantaleChoice};
use qc_core::{with_space, PointSet, Side, VSpace};

fn ext_rat() -> impl Strategy<Value = ExtRat> {
    prop_oneof![
        9 => (0i64..=30, 1i64..=6).prop_map(|(n, d)| ExtRat::new(n, d)),
        1 => Just(ExtRat::Inf),
    ]
}

fn choice() -> impl Strategy<Value = QuantaleChoice> {
    prop_oneof![
        Just(QuantaleChoice::ExtRational),
        Just(QuantaleChoice::Q3),
        Just(QuantaleChoice::Chain4),
        Just(QuantaleChoice::Q1),
    ]
}

fn space() -> impl Strategy<Value = AnySpace> {
    (any::<u64>(), choice(), any::<bool>()).prop_map(|(seed, c, uva)| {
        let mut gen = InstanceGenerator::new(seed, c);
        if uva {
            gen = gen.uva();
        }
        gen.instance(0).space
    })
}

fn subset(n: usize, bits: u64) -> PointSet {
    PointSet::from_bits(bits & ((1 << n) - 1))
}

fn well_above_laws<Q: ValueQuantale>(q: &Q, a: &Q::Elem, b: &Q::Elem, c: &Q::Elem) -> Result<(), TestCaseError> {
    if q.well_above(a, b) {
        prop_assert!(q.leq(b, a));
        if q.leq(c, b) {
            prop_assert!(q.well_above(a, c));
        }
    }
    if q.leq(b, a) && q.well_above(b, c) {
        prop_assert!(q.well_above(a, c));
    }
    Ok(())
}

fn additive_laws<Q: ValueQuantale>(q: &Q, x: &Q::Elem, y: &Q::Elem, a: &Q::Elem, b: &Q::Elem) -> Result<(), TestCaseError> {
    if q.leq(x, y) && q.leq(a, b) {
        prop_assert!(q.leq(&q.add(x, a), &q.add(y, b)));
    }
    // subtract is the left adjoint of b + _
    prop_assert_eq!(q.leq(&q.subtract(x, y), a), q.leq(x, &q.add(y, a)));
    let eps = q.epsilon_test_set(&[q.subtract(x, y)]);
    let approx = eps.iter().all(|e| q.leq(x, &q.add(y, e)));
    if !eps.is_empty() {
        prop_assert_eq!(q.leq(x, y), approx);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ext_rational_order_laws(a in ext_rat(), b in ext_rat(), c in ext_rat(), d in ext_rat()) {
        well_above_laws(&ExtRational, &a, &b, &c)?;
        additive_laws(&ExtRational, &a, &b, &c, &d)?;
    }

    #[test]
    fn finite_order_laws(which in 0usize..3, i in 0usize..8, j in 0usize..8, k in 0usize..8, l in 0usize..8) {
        let q = [FiniteQuantale::q1(), FiniteQuantale::q3(), FiniteQuantale::chain4()][which].clone();
        let e = q.elements().unwrap();
        let pick = |i: usize| e[i % e.len()].clone();
        well_above_laws(&q, &pick(i), &pick(j), &pick(k))?;
        additive_laws(&q, &pick(i), &pick(j), &pick(k), &pick(l))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_spaces_satisfy_axioms_and_round_trip(s in space()) {
        with_space!(&s, sp => {
            prop_assert!(sp.is_valid());
            prop_assert_eq!(&sp.dual().dual(), sp);
            let data = SpaceData::of(sp);
            prop_assert_eq!(data.resolve().unwrap().data(), data);
        });
    }

    #[test]
    fn balls_grow_with_radius(s in space()) {
        with_space!(&s, sp => check_balls(sp)?);
    }

    #[test]
    fn set_distance_is_antitone(s in space(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        with_space!(&s, sp => {
            let q = sp.quantale();
            let n = sp.len();
            let (small, t) = (subset(n, a), subset(n, c));
            let big = small.union(&subset(n, b));
            prop_assert!(q.leq(&sp.set_distance(&big, &t), &sp.set_distance(&small, &t)));
            prop_assert!(q.leq(&sp.set_distance(&t, &big), &sp.set_distance(&t, &small)));
        });
    }

    #[test]
    fn separation_quotient_is_separated_and_exact(s in space()) {
        with_space!(&s, sp => {
            let (quotient, proj) = sp.separation_quotient().unwrap();
            prop_assert!(quotient.classify().separated);
            for x in 0..sp.len() {
                for y in 0..sp.len() {
                    prop_assert_eq!(quotient.d(proj[x], proj[y]), sp.d(x, y));
                }
            }
            if sp.has_uva().holds() {
                prop_assert!(quotient.has_uva().holds());
            }
        });
    }

    #[test]
    fn filter_operations(s in space(), a in any::<u64>(), b in any::<u64>()) {
        with_space!(&s, sp => {
            let n = sp.len();
            let f = sp.filter(subset(n, a)).unwrap();
            let g = sp.filter(subset(n, a).union(&subset(n, b))).unwrap();
            prop_assert!(g.is_subfilter_of(&f));
            let meet = f.intersect(&g).unwrap();
            prop_assert_eq!(meet.core(), g.core());
            // g ⊆ f, and enlarging a Cauchy filter keeps it Cauchy
            if sp.is_cauchy(&g, Side::Forward).unwrap().holds() {
                prop_assert!(sp.is_cauchy(&f, Side::Forward).unwrap().holds());
            }
            if !sp.epsilon_test_set().is_empty() {
                let r = sp.roundify(&f).unwrap();
                prop_assert!(r.is_subfilter_of(&f));
            }
        });
    }
}

fn check_balls<Q: ValueQuantale>(sp: &VSpace<Q>) -> Result<(), TestCaseError> {
    let q = sp.quantale();
    let mut radii = sp.distance_values();
    radii.push(q.bottom());
    for x in 0..sp.len() {
        prop_assert!(sp.ball(x, &q.bottom(), Side::Forward).unwrap().contains(x));
        for e in &radii {
            for e2 in &radii {
                if q.leq(e, e2) {
                    for side in [Side::Forward, Side::Backward] {
                        let (small, big) = (sp.ball(x, e, side).unwrap(), sp.ball(x, e2, side).unwrap());
                        prop_assert!(small.is_subset(&big));
                    }
                }
            }
        }
    }
    Ok(())
}
