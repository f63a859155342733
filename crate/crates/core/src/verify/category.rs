//! Category laws for filter morphisms, by enumerating every map between
//! carriers of at most three points.

use std::time::Instant;

use serde_json::json;

use super::generator::InstanceGenerator;
use super::{Outcome, Tally, VerificationReport};
use crate::error::{Error, Result};
use crate::filters::{filter_image_within, Filter};
use crate::io::AnySpace;
use crate::pointset::PointSet;
use crate::quantale::ValueQuantale;
use crate::vspace::{Side, VSpace};

const MAX_CARRIER: usize = 3;

fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32))
        .map(|code| (0..n).map(|i| code / m.pow(i as u32) % m).collect())
        .collect()
}

fn all_filters(n: usize) -> Vec<Filter> {
    PointSet::all_subsets(n)
        .map(|c| Filter::principal(n, c).expect("core in carrier"))
        .collect()
}

/// Maps with their uniform continuity, computed once.
struct Hom {
    maps: Vec<Vec<usize>>,
    uc: Vec<bool>,
}

impl Hom {
    fn new<Q: ValueQuantale>(x: &VSpace<Q>, y: &VSpace<Q>) -> Result<Hom> {
        let maps = all_maps(x.len(), y.len());
        let uc = maps
            .iter()
            .map(|f| Ok(x.is_uniformly_continuous(f, y)?.holds()))
            .collect::<Result<Vec<bool>>>()?;
        Ok(Hom { maps, uc })
    }

    fn morphism(&self, i: usize, from: &Filter, to: &Filter) -> bool {
        self.uc[i] && filter_image_within::<()>(&self.maps[i], from, to).holds()
    }
}

fn laws<Q: ValueQuantale>(x: &VSpace<Q>, y: &VSpace<Q>) -> Result<Vec<(&'static str, Outcome)>> {
    let (n, m) = (x.len(), y.len());
    let xy = Hom::new(x, y)?;
    let yx = Hom::new(y, x)?;
    let xx = Hom::new(x, x)?;
    let (fx, fy) = (all_filters(n), all_filters(m));
    let describe = |f: &[usize], a: &Filter, b: &Filter| format!("f = {f:?}, F = {}, G = {}", a.describe(x), b.describe(y));
    let cauchy_x: Vec<bool> = fx
        .iter()
        .map(|f| Ok(f.is_proper() && x.is_cauchy(f, Side::Forward)?.holds()))
        .collect::<Result<_>>()?;
    let cauchy_round_y: Vec<bool> = fy
        .iter()
        .map(|g| Ok(g.is_proper() && y.is_cauchy(g, Side::Forward)?.holds() && y.is_round(g)?.holds()))
        .collect::<Result<_>>()?;
    let round_x: Vec<Filter> = fx.iter().map(|f| x.roundify(f)).collect::<Result<_>>()?;
    let round_y: Vec<Filter> = fy.iter().map(|g| y.roundify(g)).collect::<Result<_>>()?;

    let mut functor = None;
    let mut adjunction = None;
    let mut left = None;
    let mut right = None;
    for (i, f) in xy.maps.iter().enumerate() {
        for (a, fa) in fx.iter().enumerate() {
            for (b, gb) in fy.iter().enumerate() {
                if xy.morphism(i, fa, gb) && !xy.morphism(i, &round_x[a], &round_y[b]) {
                    functor = Some(describe(f, fa, gb));
                }
                if cauchy_x[a] && cauchy_round_y[b] && xy.morphism(i, &round_x[a], gb) != xy.morphism(i, fa, gb) {
                    adjunction = Some(describe(f, fa, gb));
                }
            }
        }
        // (X, 𝒫X) is free and (Y, {Y}) cofree over the underlying space
        for gb in &fy {
            if xy.morphism(i, &Filter::improper(n), gb) != xy.uc[i] {
                left = Some(describe(f, &Filter::improper(n), gb));
            }
        }
        for fa in &fx {
            if xy.morphism(i, fa, &Filter::top(m)) != xy.uc[i] {
                right = Some(describe(f, fa, &Filter::top(m)));
            }
        }
    }
    let id: Vec<usize> = (0..n).collect();
    let id_index = xx.maps.iter().position(|f| *f == id).expect("identity enumerated");
    let identity = fx
        .iter()
        .find(|fa| !xx.morphism(id_index, fa, fa))
        .map(|fa| format!("identity at {}", fa.describe(x)));
    let mut composition = None;
    'outer: for (i, f) in xy.maps.iter().enumerate().filter(|(i, _)| xy.uc[*i]) {
        for (j, g) in yx.maps.iter().enumerate().filter(|(j, _)| yx.uc[*j]) {
            let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
            let k = xx.maps.iter().position(|h| *h == gf).expect("all maps enumerated");
            for fa in &fx {
                for gb in &fy {
                    if !xy.morphism(i, fa, gb) {
                        continue;
                    }
                    for hc in &fx {
                        if yx.morphism(j, gb, hc) && !xx.morphism(k, fa, hc) {
                            composition = Some(format!("{} then {g:?} at {}", describe(f, fa, gb), hc.describe(x)));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    Ok(vec![
        ("category.roundify_functor", Outcome::first_failure(functor)),
        ("category.roundify_adjunction", Outcome::first_failure(adjunction)),
        ("category.left_adjoint", Outcome::first_failure(left)),
        ("category.right_adjoint", Outcome::first_failure(right)),
        ("category.identity", Outcome::first_failure(identity)),
        ("category.composition", Outcome::first_failure(composition)),
    ])
}

/// Checks the morphism laws on `count` pairs of generated spaces with at most
/// three points each.
pub fn check_category_laws(gen: &InstanceGenerator, count: usize) -> Result<Vec<VerificationReport>> {
    if gen.max_points > MAX_CARRIER {
        return Err(Error::TooLarge(format!(
            "maps are enumerated on carriers of at most {MAX_CARRIER} points, not {}",
            gen.max_points
        )));
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    for i in 0..count as u64 {
        let (a, b) = (gen.instance(2 * i), gen.instance(2 * i + 1));
        let checks = match (&a.space, &b.space) {
            (AnySpace::Rational(x), AnySpace::Rational(y)) => laws(x, y)?,
            (AnySpace::Finite(x), AnySpace::Finite(y)) => laws(x, y)?,
            _ => unreachable!("one generator yields one quantale"),
        };
        let instance = json!({ "x": a.space.data(), "y": b.space.data(), "y_seed": b.seed });
        for (id, outcome) in checks {
            tally.record(id, a.seed, &instance, outcome);
        }
    }
    Ok(tally.finish(start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::x2s;
    use crate::verify::QuantaleChoice;

    #[test]
    fn two_point_spaces() {
        let s = x2s();
        assert_eq!(all_maps(2, 2).len(), 4);
        for (id, outcome) in laws(&s, &s).unwrap() {
            assert_eq!(outcome, Outcome::Pass, "{id}");
        }
    }

    #[test]
    fn generated_pairs() {
        let gen = InstanceGenerator::new(11, QuantaleChoice::ExtRational).points(1, 3).uva();
        for r in check_category_laws(&gen, 10).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        assert!(check_category_laws(&gen.clone().points(1, 4), 1).is_err());
    }
}
