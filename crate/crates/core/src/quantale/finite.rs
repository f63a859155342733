use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Law, QuantaleDescriptor, QuantaleError, ValidationReport, ValueQuantale};

/// Carriers up to this size get the meet-distributivity law checked over every
/// subset; larger ones fall back to binary plus empty meets, which is
/// equivalent on finite lattices.
const EXHAUSTIVE_SUBSET_LIMIT: usize = 16;

/// Raw candidate tables for a finite value quantale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleTables {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub add: Vec<Vec<usize>>,
}

impl QuantaleTables {
    /// The chain `0 < 1 < … < levels-1 < ∞` with addition truncated at `∞`.
    pub fn capped_chain(levels: usize) -> Self {
        let n = levels + 1;
        let elements = (0..n)
            .map(|i| {
                if i + 1 == n && n > 1 {
                    "inf".to_string()
                } else {
                    i.to_string()
                }
            })
            .collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        let add = (0..n)
            .map(|i| (0..n).map(|j| (i + j).min(n - 1)).collect())
            .collect();
        QuantaleTables { elements, leq, add }
    }

    /// `{0, a, b, ∞}` with `a`, `b` incomparable and `+` = join. Fails `a∧b ≻ 0`.
    pub fn diamond_join() -> Self {
        let elements = ["0", "a", "b", "inf"].map(String::from).to_vec();
        let leq = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        // join table of the diamond
        let add = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ];
        QuantaleTables { elements, leq, add }
    }

    fn check_shape(&self) -> Result<usize, QuantaleError> {
        let n = self.elements.len();
        if n == 0 {
            return Err(QuantaleError::Malformed("no elements".into()));
        }
        for (i, name) in self.elements.iter().enumerate() {
            if name.is_empty() {
                return Err(QuantaleError::Malformed(format!("element {i} has an empty name")));
            }
            if self.elements[..i].contains(name) {
                return Err(QuantaleError::Malformed(format!("duplicate element `{name}`")));
            }
        }
        if self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(QuantaleError::Malformed(format!("leq must be {n}×{n}")));
        }
        if self.add.len() != n || self.add.iter().any(|r| r.len() != n) {
            return Err(QuantaleError::Malformed(format!("add must be {n}×{n}")));
        }
        if let Some(bad) = self.add.iter().flatten().find(|&&k| k >= n) {
            return Err(QuantaleError::Malformed(format!("add entry {bad} out of range")));
        }
        Ok(n)
    }
}

/// A finite complete lattice with precomputed bounds and well-above table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    well_above: Vec<bool>,
}

impl FiniteLattice {
    /// Builds the lattice from an order matrix, or returns the failed law with
    /// a witness tuple of element indices.
    pub fn from_order(leq: &[Vec<bool>]) -> Result<Self, (Law, Vec<usize>)> {
        let n = leq.len();
        if n == 0 {
            return Err((Law::CompleteLattice, vec![]));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err((Law::PartialOrder, vec![a]));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err((Law::PartialOrder, vec![a, b]));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err((Law::PartialOrder, vec![a, b, c]));
                    }
                }
            }
        }
        // Binary meets and joins plus non-emptiness give every subset a bound.
        let glb = |a: usize, b: usize| {
            let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
            lower.iter().copied().find(|&g| lower.iter().all(|&c| leq[c][g]))
        };
        let lub = |a: usize, b: usize| {
            let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
            upper.iter().copied().find(|&g| upper.iter().all(|&c| leq[g][c]))
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = glb(a, b).ok_or((Law::CompleteLattice, vec![a, b]))?;
                join[a * n + b] = lub(a, b).ok_or((Law::CompleteLattice, vec![a, b]))?;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let mut lattice = FiniteLattice {
            n,
            leq: leq.iter().flatten().copied().collect(),
            meet,
            join,
            bottom,
            top,
            well_above: Vec::new(),
        };
        // a ≻ b  ⟺  ⋀{s | s ≰ a} ≰ b: the set of all elements not below `a` is
        // the largest family that could defeat `a`.
        let mut wa = vec![false; n * n];
        for a in 0..n {
            let spoiler = (0..n)
                .filter(|&s| !lattice.leq(s, a))
                .fold(top, |acc, s| lattice.meet(acc, s));
            for b in 0..n {
                wa[a * n + b] = !lattice.leq(spoiler, b);
            }
        }
        lattice.well_above = wa;
        Ok(lattice)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_of(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn well_above(&self, a: usize, b: usize) -> bool {
        self.well_above[a * self.n + b]
    }
}

/// Index of an element of a [`FiniteQuantale`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteElem(pub usize);

#[derive(Debug)]
struct Inner {
    names: Vec<String>,
    lattice: FiniteLattice,
    add: Vec<usize>,
    /// Elements well above 0, in ascending linear-extension order.
    positives: Vec<usize>,
}

/// A validated finite value quantale. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct FiniteQuantale {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteQuantale {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.names == other.inner.names
                && self.inner.lattice == other.inner.lattice
                && self.inner.add == other.inner.add)
    }
}

impl Eq for FiniteQuantale {}

impl FiniteQuantale {
    /// Validates `tables` and builds the quantale.
    pub fn from_tables(tables: QuantaleTables) -> Result<Self, QuantaleError> {
        let report = validate_value_quantale(&tables)?;
        if !report.is_valid() {
            return Err(QuantaleError::Invalid(report));
        }
        let n = tables.elements.len();
        let lattice = FiniteLattice::from_order(&tables.leq)
            .expect("validated tables form a lattice");
        let add: Vec<usize> = tables.add.iter().flatten().copied().collect();
        let down_size = |x: usize| (0..n).filter(|&y| lattice.leq(y, x)).count();
        let mut positives: Vec<usize> = (0..n)
            .filter(|&x| lattice.well_above(x, lattice.bottom()))
            .collect();
        positives.sort_by_key(|&x| (down_size(x), x));
        Ok(FiniteQuantale {
            inner: Arc::new(Inner {
                names: tables.elements,
                lattice,
                add,
                positives,
            }),
        })
    }

    /// The degenerate one-point quantale `{0 = ∞}`.
    pub fn q1() -> Self {
        Self::bundled(QuantaleTables::capped_chain(0))
    }

    /// The chain `{0 < 1 < ∞}` with `1 + 1 = ∞`.
    pub fn q3() -> Self {
        Self::bundled(QuantaleTables::capped_chain(2))
    }

    /// The chain `{0 < 1 < 2 < ∞}` with addition capped at `∞`.
    pub fn chain4() -> Self {
        Self::bundled(QuantaleTables::capped_chain(3))
    }

    fn bundled(tables: QuantaleTables) -> Self {
        Self::from_tables(tables).expect("bundled quantale is valid")
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.inner.lattice
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn elem(&self, name: &str) -> Option<FiniteElem> {
        self.inner.names.iter().position(|n| n == name).map(FiniteElem)
    }

    pub fn tables(&self) -> QuantaleTables {
        let n = self.len();
        let l = &self.inner.lattice;
        QuantaleTables {
            elements: self.inner.names.clone(),
            leq: (0..n).map(|a| (0..n).map(|b| l.leq(a, b)).collect()).collect(),
            add: (0..n)
                .map(|a| (0..n).map(|b| self.inner.add[a * n + b]).collect())
                .collect(),
        }
    }

    fn sum(&self, a: usize, b: usize) -> usize {
        self.inner.add[a * self.len() + b]
    }
}

impl ValueQuantale for FiniteQuantale {
    type Elem = FiniteElem;

    fn bottom(&self) -> FiniteElem {
        FiniteElem(self.inner.lattice.bottom())
    }

    fn top(&self) -> FiniteElem {
        FiniteElem(self.inner.lattice.top())
    }

    fn contains(&self, e: &FiniteElem) -> bool {
        e.0 < self.len()
    }

    fn leq(&self, a: &FiniteElem, b: &FiniteElem) -> bool {
        self.inner.lattice.leq(a.0, b.0)
    }

    fn meet(&self, a: &FiniteElem, b: &FiniteElem) -> FiniteElem {
        FiniteElem(self.inner.lattice.meet(a.0, b.0))
    }

    fn join(&self, a: &FiniteElem, b: &FiniteElem) -> FiniteElem {
        FiniteElem(self.inner.lattice.join(a.0, b.0))
    }

    fn add(&self, a: &FiniteElem, b: &FiniteElem) -> FiniteElem {
        FiniteElem(self.sum(a.0, b.0))
    }

    fn well_above(&self, a: &FiniteElem, b: &FiniteElem) -> bool {
        self.inner.lattice.well_above(a.0, b.0)
    }

    fn subtract(&self, a: &FiniteElem, b: &FiniteElem) -> FiniteElem {
        let l = &self.inner.lattice;
        FiniteElem(l.meet_of((0..self.len()).filter(|&c| l.leq(a.0, self.sum(b.0, c)))))
    }

    fn find_nth_fraction(&self, eps: &FiniteElem, n: u32) -> Result<FiniteElem, QuantaleError> {
        if n == 0 {
            return Err(QuantaleError::Precondition("n must be at least 1".into()));
        }
        if !self.is_positive(eps) {
            return Err(QuantaleError::Precondition(format!(
                "{} is not well above 0",
                self.format_elem(eps)
            )));
        }
        let l = &self.inner.lattice;
        let fits: Vec<usize> = self
            .inner
            .positives
            .iter()
            .copied()
            .filter(|&d| l.leq(self.multiple(&FiniteElem(d), n).0, eps.0))
            .collect();
        // maximal candidates, ties broken by element index
        fits.iter()
            .copied()
            .filter(|&d| !fits.iter().any(|&e| e != d && l.leq(d, e)))
            .min()
            .map(FiniteElem)
            .ok_or_else(|| {
                QuantaleError::NoWitness(format!("no δ ≻ 0 with {n}·δ ≤ {}", self.format_elem(eps)))
            })
    }

    fn interpolate(&self, x: &FiniteElem, z: &FiniteElem) -> Result<FiniteElem, QuantaleError> {
        if !self.well_above(z, x) {
            return Err(QuantaleError::Precondition(format!(
                "{} is not well below {}",
                self.format_elem(x),
                self.format_elem(z)
            )));
        }
        (0..self.len())
            .map(FiniteElem)
            .find(|y| self.well_above(y, x) && self.well_above(z, y))
            .ok_or_else(|| QuantaleError::NoWitness("interpolation failed".into()))
    }

    fn elements(&self) -> Option<Vec<FiniteElem>> {
        Some((0..self.len()).map(FiniteElem).collect())
    }

    fn epsilon_test_set(&self, _distances: &[FiniteElem]) -> Vec<FiniteElem> {
        self.inner.positives.iter().copied().map(FiniteElem).collect()
    }

    fn format_elem(&self, e: &FiniteElem) -> String {
        self.inner
            .names
            .get(e.0)
            .cloned()
            .unwrap_or_else(|| format!("#{}", e.0))
    }

    fn parse_elem(&self, s: &str) -> Result<FiniteElem, QuantaleError> {
        let s = s.trim();
        self.elem(s)
            .or_else(|| match s {
                "∞" | "inf" => Some(self.top()),
                _ => None,
            })
            .ok_or_else(|| QuantaleError::Parse(s.to_string()))
    }

    fn descriptor(&self) -> QuantaleDescriptor {
        let t = self.tables();
        QuantaleDescriptor::Finite {
            elements: t.elements,
            leq: t.leq,
            add: t.add,
        }
    }
}

/// Checks every value-quantale law on candidate tables by enumeration.
///
/// Shape problems (ragged matrices, out-of-range indices) are a
/// [`QuantaleError::Malformed`]; law failures are listed in the report with
/// one witness per failed law.
pub fn validate_value_quantale(tables: &QuantaleTables) -> Result<ValidationReport, QuantaleError> {
    let n = tables.check_shape()?;
    let name = |i: usize| tables.elements[i].clone();
    let names = |ix: &[usize]| ix.iter().map(|&i| name(i)).collect::<Vec<_>>();
    let mut report = ValidationReport::exhaustive();

    let lattice = match FiniteLattice::from_order(&tables.leq) {
        Ok(l) => l,
        Err((law, witness)) => {
            report.push(law, names(&witness));
            return Ok(report);
        }
    };
    let add = |a: usize, b: usize| tables.add[a][b];
    let zero = lattice.bottom();

    let first = |report: &mut ValidationReport, law: Law, witness: &[usize]| {
        if !report.violations.iter().any(|v| v.law == law) {
            report.push(law, names(witness));
        }
    };

    for a in 0..n {
        if add(a, zero) != a {
            first(&mut report, Law::ZeroUnit, &[a]);
        }
        for b in 0..n {
            if add(a, b) != add(b, a) {
                first(&mut report, Law::AddCommutative, &[a, b]);
            }
            for c in 0..n {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    first(&mut report, Law::AddAssociative, &[a, b, c]);
                }
            }
        }
    }

    if n <= EXHAUSTIVE_SUBSET_LIMIT {
        'subsets: for mask in 0u32..(1u32 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let m = lattice.meet_of(members.iter().copied());
            for x in 0..n {
                let shifted = lattice.meet_of(members.iter().map(|&s| add(x, s)));
                if add(x, m) != shifted {
                    let mut w = vec![x];
                    w.extend(&members);
                    first(&mut report, Law::MeetDistributive, &w);
                    break 'subsets;
                }
            }
        }
    } else {
        for x in 0..n {
            if add(x, lattice.top()) != lattice.top() {
                first(&mut report, Law::MeetDistributive, &[x]);
            }
            for a in 0..n {
                for b in 0..n {
                    if add(x, lattice.meet(a, b)) != lattice.meet(add(x, a), add(x, b)) {
                        first(&mut report, Law::MeetDistributive, &[x, a, b]);
                    }
                }
            }
        }
    }

    for x in 0..n {
        let above = lattice.meet_of((0..n).filter(|&y| lattice.well_above(y, x)));
        if above != x {
            first(&mut report, Law::WellAboveApproximation, &[x]);
        }
    }

    for a in 0..n {
        for b in 0..n {
            if lattice.well_above(a, zero)
                && lattice.well_above(b, zero)
                && !lattice.well_above(lattice.meet(a, b), zero)
            {
                first(&mut report, Law::PositiveMeet, &[a, b]);
            }
        }
    }

    Ok(report)
}
