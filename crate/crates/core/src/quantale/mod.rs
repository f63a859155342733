//! Value quantales: complete lattices with a commutative monoid structure whose
//! unit is the bottom element, plus the derived calculus (well-above,
//! truncated subtraction, halving and interpolation).
//!
//! Order conventions follow the metric reading: `0` (bottom) is "no distance"
//! and `∞` (top) is "infinitely far". A larger element is a weaker bound.
//!
//! Two families are provided. [`FiniteQuantale`] is given by explicit tables
//! and validated exhaustively; [`ExtRational`] is the symbolic quantale of
//! non-negative rationals extended by infinity, with ordinary addition.

mod finite;
mod morphism;
mod rational;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use finite::{validate_value_quantale, FiniteElem, FiniteLattice, FiniteQuantale, QuantaleTables};
pub use morphism::{
    validate_quantale_morphism, validate_quantale_morphism_with, IdentityMorphism, QuantaleMorphism, StepMorphism, TableMorphism,
};
pub use rational::{ExtRat, ExtRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("element `{0}` does not belong to this quantale")]
    DomainMismatch(String),
    #[error("malformed quantale tables: {0}")]
    Malformed(String),
    #[error("tables do not form a value quantale:\n{0}")]
    Invalid(ValidationReport),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse element `{0}`")]
    Parse(String),
    #[error("no witness exists: {0}")]
    NoWitness(String),
}

/// Selects the lattice bound computed by [`ValueQuantale::bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

/// Serializable description of a quantale, used by the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuantaleDescriptor {
    Finite {
        elements: Vec<String>,
        leq: Vec<Vec<bool>>,
        add: Vec<Vec<usize>>,
    },
    ExtRational,
}

/// A value quantale.
///
/// Elements are plain values that are only meaningful relative to the
/// quantale that produced them. The unchecked operations assume membership;
/// the `checked_*` variants report [`QuantaleError::DomainMismatch`] instead.
pub trait ValueQuantale: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn contains(&self, e: &Self::Elem) -> bool;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `a ≻ b`: whenever `b ≥ ⋀S`, some member of `S` lies below `a`.
    fn well_above(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// The left adjoint of `b + _`: the least `c` with `a ≤ b + c`.
    fn subtract(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// A canonical `δ ≻ 0` with `n·δ ≤ ε`.
    fn find_nth_fraction(&self, eps: &Self::Elem, n: u32) -> Result<Self::Elem, QuantaleError>;

    /// A canonical `y` with `x ≺ y ≺ z`.
    fn interpolate(&self, x: &Self::Elem, z: &Self::Elem) -> Result<Self::Elem, QuantaleError>;

    /// All elements, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Finite set of radii that decides every `∀ε≻0` / `∃δ≻0` predicate built
    /// from threshold comparisons against `distances`. Sorted ascending.
    fn epsilon_test_set(&self, distances: &[Self::Elem]) -> Vec<Self::Elem>;

    fn format_elem(&self, e: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, QuantaleError>;
    fn descriptor(&self) -> QuantaleDescriptor;

    fn is_positive(&self, e: &Self::Elem) -> bool {
        self.well_above(e, &self.bottom())
    }

    fn meet_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.top(), |acc, e| self.meet(&acc, e))
    }

    fn join_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.bottom(), |acc, e| self.join(&acc, e))
    }

    /// n-fold sum; `0·e` is the bottom element.
    fn multiple(&self, e: &Self::Elem, n: u32) -> Self::Elem {
        (0..n).fold(self.bottom(), |acc, _| self.add(&acc, e))
    }

    fn check(&self, e: &Self::Elem) -> Result<(), QuantaleError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(QuantaleError::DomainMismatch(format!("{e:?}")))
        }
    }

    /// Meet or join of a finite set; empty meet is top, empty join is bottom.
    fn bound(&self, set: &[Self::Elem], which: Bound) -> Result<Self::Elem, QuantaleError> {
        set.iter().try_for_each(|e| self.check(e))?;
        Ok(match which {
            Bound::Meet => self.meet_all(set),
            Bound::Join => self.join_all(set),
        })
    }

    fn checked_add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, QuantaleError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    fn checked_well_above(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool, QuantaleError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.well_above(a, b))
    }

    fn checked_subtract(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> Result<Self::Elem, QuantaleError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.subtract(a, b))
    }
}

/// A law checked by one of the validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    PartialOrder,
    CompleteLattice,
    AddAssociative,
    AddCommutative,
    ZeroUnit,
    WellAboveApproximation,
    MeetDistributive,
    PositiveMeet,
    Monotone,
    PreservesZero,
    Subadditive,
    ZeroSelfDistance,
    Triangle,
}

impl Law {
    pub fn statement(self) -> &'static str {
        match self {
            Law::PartialOrder => "≤ is a partial order",
            Law::CompleteLattice => "every subset has a meet and a join",
            Law::AddAssociative => "(x+y)+z = x+(y+z)",
            Law::AddCommutative => "x+y = y+x",
            Law::ZeroUnit => "x+0=x",
            Law::WellAboveApproximation => "x=⋀{y | y≻x}",
            Law::MeetDistributive => "x+⋀S=⋀(x+S)",
            Law::PositiveMeet => "a∧b ≻ 0",
            Law::Monotone => "a ≤ b ⇒ α(a) ≤ α(b)",
            Law::PreservesZero => "α(0)=0",
            Law::Subadditive => "α(a+b) ≤ α(a)+α(b)",
            Law::ZeroSelfDistance => "d(x,x)=0",
            Law::Triangle => "d(x,z) ≤ d(x,y)+d(y,z)",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.statement())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub statement: String,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new(law: Law, witness: Vec<String>) -> Self {
        Violation {
            law,
            statement: law.statement().to_string(),
            witness,
        }
    }
}

/// Outcome of an exhaustive (or, where stated, sampled) law check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// False when the check relied on sampling rather than enumeration.
    pub exhaustive: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn exhaustive() -> Self {
        ValidationReport {
            exhaustive: true,
            violations: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: Law, witness: Vec<String>) {
        self.violations.push(Violation::new(law, witness));
    }

    /// Laws that failed, in first-failure order and without repeats.
    pub fn failed_laws(&self) -> Vec<Law> {
        let mut out = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.law) {
                out.push(v.law);
            }
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "  violated {}: witness ({})", v.statement, v.witness.join(", "))?;
        }
        Ok(())
    }
}
