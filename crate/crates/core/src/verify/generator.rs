use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::io::AnySpace;
use crate::quantale::{ExtRat, ExtRational, FiniteQuantale, ValueQuantale};
use crate::vspace::VSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantaleChoice {
    ExtRational,
    Q3,
    Q1,
    Chain4,
}

/// Reproducible stream of random valid spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceGenerator {
    pub seed: u64,
    pub quantale: QuantaleChoice,
    pub min_points: usize,
    pub max_points: usize,
    /// Chance, per mille, that an off-diagonal entry starts at 0.
    pub zero_permille: u32,
    /// Chance, per mille, that an off-diagonal entry starts at ∞.
    pub inf_permille: u32,
    pub force_uva: bool,
    pub force_separated: bool,
    pub force_symmetric: bool,
}

#[derive(Debug, Clone)]
pub struct Instance {
    /// Replays the instance through [`InstanceGenerator::from_seed`].
    pub seed: u64,
    pub space: AnySpace,
}

/// The splitmix64 finalizer, used to derive per-instance seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const MAX_ATTEMPTS: usize = 256;

impl InstanceGenerator {
    pub fn new(seed: u64, quantale: QuantaleChoice) -> Self {
        InstanceGenerator {
            seed,
            quantale,
            min_points: 1,
            max_points: 5,
            zero_permille: 200,
            inf_permille: 100,
            force_uva: false,
            force_separated: false,
            force_symmetric: false,
        }
    }

    pub fn points(mut self, min: usize, max: usize) -> Self {
        self.min_points = min;
        self.max_points = max.max(min);
        self
    }

    pub fn uva(mut self) -> Self {
        self.force_uva = true;
        self
    }

    pub fn separated(mut self) -> Self {
        self.force_separated = true;
        self
    }

    pub fn symmetric(mut self) -> Self {
        self.force_symmetric = true;
        self
    }

    pub fn sub_seed(&self, index: u64) -> u64 {
        splitmix64(self.seed ^ splitmix64(index))
    }

    pub fn instance(&self, index: u64) -> Instance {
        let seed = self.sub_seed(index);
        Instance {
            seed,
            space: self.from_seed(seed),
        }
    }

    pub fn instances(&self, count: usize) -> Vec<Instance> {
        (0..count as u64).map(|i| self.instance(i)).collect()
    }

    pub fn from_seed(&self, seed: u64) -> AnySpace {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self.quantale {
            QuantaleChoice::ExtRational => AnySpace::Rational(self.generate(&ExtRational, &mut rng)),
            QuantaleChoice::Q3 => AnySpace::Finite(self.generate(&FiniteQuantale::q3(), &mut rng)),
            QuantaleChoice::Q1 => AnySpace::Finite(self.generate(&FiniteQuantale::q1(), &mut rng)),
            QuantaleChoice::Chain4 => AnySpace::Finite(self.generate(&FiniteQuantale::chain4(), &mut rng)),
        }
    }

    fn generate<Q: Sample>(&self, q: &Q, rng: &mut ChaCha8Rng) -> VSpace<Q> {
        for _ in 0..MAX_ATTEMPTS {
            let n = rng.gen_range(self.min_points..=self.max_points);
            let mut d = vec![vec![q.bottom(); n]; n];
            for x in 0..n {
                for y in 0..n {
                    if x == y || (self.force_symmetric && y < x) {
                        continue;
                    }
                    d[x][y] = if rng.gen_ratio(self.zero_permille, 1000) {
                        q.bottom()
                    } else if rng.gen_ratio(self.inf_permille, 1000) {
                        q.top()
                    } else {
                        q.sample(rng)
                    };
                    if self.force_symmetric {
                        d[y][x] = d[x][y].clone();
                    }
                }
            }
            repair_triangles(q, &mut d);
            if self.force_uva {
                while symmetrize_zeros(q, &mut d) {
                    repair_triangles(q, &mut d);
                }
            }
            let mut space = VSpace::anonymous(q.clone(), d).expect("square matrix of members");
            if self.force_separated {
                let (quotient, _) = space.separation_quotient().expect("valid space");
                space = VSpace::anonymous(q.clone(), quotient.matrix().to_vec()).expect("square");
            }
            if self.force_uva && !space.has_uva().holds() {
                continue;
            }
            return space;
        }
        panic!("no instance satisfying the constraints after {MAX_ATTEMPTS} attempts");
    }
}

/// Lowers `d(x,z)` to `d(x,y) + d(y,z)` until every triangle holds; returns
/// the number of passes that changed something. Entries only ever decrease.
pub(crate) fn repair_triangles<Q: ValueQuantale>(q: &Q, d: &mut [Vec<Q::Elem>]) -> usize {
    let n = d.len();
    let mut rounds = 0;
    loop {
        let mut changed = false;
        for y in 0..n {
            for x in 0..n {
                for z in 0..n {
                    let via = q.add(&d[x][y], &d[y][z]);
                    let m = q.meet(&d[x][z], &via);
                    if m != d[x][z] {
                        d[x][z] = m;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return rounds;
        }
        rounds += 1;
        assert!(rounds <= n * n * n, "triangle repair did not converge");
    }
}

/// Sets `d(y,x) = 0` wherever `d(x,y) = 0`; returns whether anything changed.
fn symmetrize_zeros<Q: ValueQuantale>(q: &Q, d: &mut [Vec<Q::Elem>]) -> bool {
    let zero = q.bottom();
    let n = d.len();
    let mut changed = false;
    for x in 0..n {
        for y in 0..n {
            if d[x][y] == zero && d[y][x] != zero {
                d[y][x] = zero.clone();
                changed = true;
            }
        }
    }
    changed
}

/// Random non-extreme elements.
pub(crate) trait Sample: ValueQuantale {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

impl Sample for ExtRational {
    fn sample(&self, rng: &mut ChaCha8Rng) -> ExtRat {
        let denom = [1, 2, 3, 4][rng.gen_range(0..4)];
        ExtRat::new(rng.gen_range(1..=12), denom)
    }
}

impl Sample for FiniteQuantale {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        let (bottom, top) = (self.bottom(), self.top());
        let inner: Vec<_> = self
            .elements()
            .expect("finite")
            .into_iter()
            .filter(|e| *e != bottom && *e != top)
            .collect();
        if inner.is_empty() {
            if rng.gen_ratio(1, 2) {
                bottom
            } else {
                top
            }
        } else {
            inner[rng.gen_range(0..inner.len())].clone()
        }
    }
}
