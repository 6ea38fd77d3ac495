//! Deterministic set constructions: random subsets, product sets, isotropic
//! subspaces, and a hill-climbing search for small distance sets.
//!
//! All randomness comes from [`SplitMix64`]. Its update function is
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (mod 2^64)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
//! output z ^ (z >> 31)
//! ```
//!
//! and `below(n)` draws outputs until one is at least `2^64 mod n`, then
//! returns it reduced mod `n`. A random n-subset of `[0, N)` is the first `n`
//! entries of the identity permutation after the partial Fisher-Yates pass
//! `for i in 0..n { swap(i, i + below(N - i)) }`, sorted ascending.

use serde::{Deserialize, Serialize};

use crate::distance::distance_count;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::geometry::Space;
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }
}

/// Derives an independent seed from a base seed and a list of labels.
pub fn derive_seed(seed: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(SplitMix64::new(seed).next_u64(), |acc, &l| {
        SplitMix64::new(acc ^ l.wrapping_mul(0xD6E8_FEB8_6659_FD93)).next_u64()
    })
}

fn sample_indices(rng: &mut SplitMix64, universe: usize, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..universe).collect();
    for i in 0..n {
        let j = i + rng.below((universe - i) as u64) as usize;
        perm.swap(i, j);
    }
    perm.truncate(n);
    perm
}

fn check_size(space: &Space, n: usize) -> Result<()> {
    if n > space.size() {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds q^d = {}",
            space.size()
        )));
    }
    Ok(())
}

pub fn random_set(space: &Space, n: usize, seed: u64) -> Result<PointSet> {
    check_size(space, n)?;
    let mut rng = SplitMix64::new(seed);
    random_set_with(space, n, &mut rng)
}

fn random_set_with(space: &Space, n: usize, rng: &mut SplitMix64) -> Result<PointSet> {
    PointSet::from_indices(space, sample_indices(rng, space.size(), n))
}

/// A^d.
pub fn product_set(space: &Space, factor: &[Elem]) -> Result<PointSet> {
    if factor.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let field = space.field();
    let mut a: Vec<usize> = factor
        .iter()
        .map(|x| field.elem(x.0).map(Elem::index))
        .collect::<Result<_>>()?;
    a.sort_unstable();
    a.dedup();
    let q = space.q();
    let mut points = vec![0usize];
    for _ in 0..space.dim() {
        points = points
            .iter()
            .flat_map(|&p| a.iter().map(move |&c| p * q + c))
            .collect();
    }
    PointSet::from_indices(space, points)
}

/// { (t_1, i t_1, ..., t_{d/2}, i t_{d/2}) } where i is the smallest-index
/// element with i^2 = -1.
pub fn isotropic_set(space: &Space) -> Result<PointSet> {
    let d = space.dim();
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    let field = space.field();
    let i = field
        .sqrt_minus_one()
        .ok_or(Error::MinusOneNotSquare(field.q()))?;
    let q = space.q();
    let half = d / 2;
    let count = q.pow(half as u32);
    let mut coords = vec![Elem::ZERO; d];
    let mut points = Vec::with_capacity(count);
    for mut t in 0..count {
        for j in 0..half {
            let tj = Elem((t % q) as u32);
            t /= q;
            coords[2 * j] = tj;
            coords[2 * j + 1] = field.mul(i, tj);
        }
        let mut idx = 0usize;
        for c in coords.iter().rev() {
            idx = idx * q + c.index();
        }
        points.push(idx);
    }
    PointSet::from_indices(space, points)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    #[serde(skip)]
    pub set: PointSet,
    pub delta: usize,
    pub initial_delta: usize,
    /// (iteration, |Delta| of the current set); row 0 is the start.
    pub trajectory: Vec<(usize, usize)>,
}

impl SearchResult {
    pub fn trajectory_csv(&self) -> String {
        let mut out = String::from("iter,delta_card\n");
        for (i, d) in &self.trajectory {
            out.push_str(&format!("{i},{d}\n"));
        }
        out
    }
}

/// Starts from `random_set(space, n, seed)` and proposes `iters` single
/// swaps of a member for a non-member, keeping a swap only if |Delta(E, E)|
/// strictly drops.
pub fn minimize_distance_search(space: &Space, n: usize, iters: usize, seed: u64) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0, need n >= 1".into()));
    }
    check_size(space, n)?;
    let mut rng = SplitMix64::new(seed);
    let mut set = random_set_with(space, n, &mut rng)?;
    let initial_delta = distance_count(space, &set, &set)?;
    let mut delta = initial_delta;
    let mut trajectory = Vec::with_capacity(iters + 1);
    trajectory.push((0, delta));
    let outside = space.size() - n;
    for it in 1..=iters {
        if outside > 0 && delta > 1 {
            let members = set.to_vec();
            let out_rank = rng.below(outside as u64) as usize;
            let out = (0..space.size())
                .filter(|&x| !set.contains(x))
                .nth(out_rank)
                .expect("rank below complement size");
            let drop = members[rng.below(n as u64) as usize];
            set.remove(drop);
            set.insert(out);
            let cand = distance_count(space, &set, &set)?;
            if cand < delta {
                delta = cand;
            } else {
                set.remove(out);
                set.insert(drop);
            }
        }
        trajectory.push((it, delta));
    }
    Ok(SearchResult {
        set,
        delta,
        initial_delta,
        trajectory,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GenKind {
    Random,
    Product,
    Isotropic,
    Searched,
}

/// A reproducible recipe for a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub seed: u64,
    /// Target cardinality (RANDOM, SEARCHED).
    #[serde(default)]
    pub n: usize,
    /// Factor set A (PRODUCT).
    #[serde(default)]
    pub factor: Vec<Elem>,
    /// Search iterations (SEARCHED).
    #[serde(default)]
    pub iters: usize,
}

impl GenSpec {
    pub fn generate(&self, space: &Space) -> Result<PointSet> {
        match self.kind {
            GenKind::Random => random_set(space, self.n, self.seed),
            GenKind::Product => product_set(space, &self.factor),
            GenKind::Isotropic => isotropic_set(space),
            GenKind::Searched => {
                minimize_distance_search(space, self.n, self.iters, self.seed).map(|r| r.set)
            }
        }
    }
}
