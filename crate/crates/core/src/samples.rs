//! Small named spaces used throughout the tests and documentation.
//!
//! * `x2a`: `d(a,b)=1`, `d(b,a)=2`, asymmetric but separated and UVA.
//! * `x2n`: `d(a,b)=0`, `d(b,a)=1`, the Sierpinski space; not VA.
//! * `x2s`: symmetric, `d = 1` off the diagonal.
//! * `x3z`: `a` and `b` at distance 0, both at distance 1 from `c`.

use crate::quantale::ExtRational;
use crate::vspace::VSpace;

/// A space over the extended rationals from element strings. Panics on bad input.
pub fn rat_space(points: &[&str], rows: &[&[&str]]) -> VSpace<ExtRational> {
    let d = rows
        .iter()
        .map(|row| row.iter().map(|e| e.parse().expect("element")).collect())
        .collect();
    VSpace::new(ExtRational, points.iter().map(|p| p.to_string()).collect(), d).expect("space")
}

pub fn x2a() -> VSpace<ExtRational> {
    rat_space(&["a", "b"], &[&["0", "1"], &["2", "0"]])
}

pub fn x2n() -> VSpace<ExtRational> {
    rat_space(&["a", "b"], &[&["0", "0"], &["1", "0"]])
}

pub fn x2s() -> VSpace<ExtRational> {
    rat_space(&["a", "b"], &[&["0", "1"], &["1", "0"]])
}

pub fn x3z() -> VSpace<ExtRational> {
    rat_space(
        &["a", "b", "c"],
        &[&["0", "0", "1"], &["0", "0", "1"], &["1", "1", "0"]],
    )
}
