//! Random-pivot Quick-Sort, the isolated-node test for Hamiltonian cycles,
//! and randomized dining philosophers.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandomizedError {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("need at least two diners")]
    TooFewDiners,
}

/// Where pivots come from: an index in `0..len`.
pub trait PivotSource {
    fn pick(&mut self, len: usize) -> usize;
}

pub struct RandomPivots<'a, R: Rng + ?Sized>(pub &'a mut R);

impl<R: Rng + ?Sized> PivotSource for RandomPivots<'_, R> {
    fn pick(&mut self, len: usize) -> usize {
        self.0.gen_range(0..len)
    }
}

/// Replays fixed choices and records how many options each pick had.
#[derive(Debug, Clone, Default)]
pub struct ScriptedPivots {
    pub choices: Vec<usize>,
    pub radices: Vec<usize>,
    cursor: usize,
}

impl PivotSource for ScriptedPivots {
    fn pick(&mut self, len: usize) -> usize {
        let c = self.choices.get(self.cursor).copied().unwrap_or(0).min(len - 1);
        self.radices.push(len);
        self.cursor += 1;
        c
    }
}

/// Sorts and counts comparisons against the pivot; each partition step
/// compares every other element with the pivot once.
pub fn quicksort_with<T: Ord + Clone, P: PivotSource + ?Sized>(arr: &[T], pivots: &mut P) -> (Vec<T>, u64) {
    if arr.len() <= 1 {
        return (arr.to_vec(), 0);
    }
    let k = pivots.pick(arr.len());
    let pivot = &arr[k];
    let (mut less, mut same, mut more) = (Vec::new(), Vec::new(), Vec::new());
    for (i, v) in arr.iter().enumerate() {
        if i == k {
            continue;
        }
        match v.cmp(pivot) {
            std::cmp::Ordering::Less => less.push(v.clone()),
            std::cmp::Ordering::Equal => same.push(v.clone()),
            std::cmp::Ordering::Greater => more.push(v.clone()),
        }
    }
    let (mut out, a) = quicksort_with(&less, pivots);
    let (right, b) = quicksort_with(&more, pivots);
    out.push(pivot.clone());
    out.extend(same);
    out.extend(right);
    (out, arr.len() as u64 - 1 + a + b)
}

pub fn quicksort_count<T: Ord + Clone, R: Rng + ?Sized>(arr: &[T], rng: &mut R) -> (Vec<T>, u64) {
    quicksort_with(arr, &mut RandomPivots(rng))
}

/// `sum_{i<j} 2/(1+j-i)` over `1..=n`.
pub fn expected_comparisons<T: Num + FromPrimitive>(n: usize) -> T {
    let mut total = T::zero();
    for d in 1..n {
        let pairs = T::from_usize(2 * (n - d)).expect("count fits");
        total = total + pairs / T::from_usize(d + 1).expect("count fits");
    }
    total
}

pub fn expected_comparisons_exact(n: usize) -> Ratio<BigInt> {
    expected_comparisons(n)
}

/// Mean comparisons over all orders of `0..n` and all pivot sequences,
/// each sequence weighted by its probability.
pub fn exhaustive_mean(n: usize) -> Ratio<BigInt> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sum = Ratio::zero();
    let mut orders = 0u64;
    loop {
        let mut choices: Vec<usize> = Vec::new();
        loop {
            let mut script = ScriptedPivots { choices: choices.clone(), ..Default::default() };
            let (sorted, count) = quicksort_with(&perm, &mut script);
            debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
            let weight = script
                .radices
                .iter()
                .fold(Ratio::<BigInt>::one(), |w, &r| w / BigInt::from(r));
            sum += weight * BigInt::from(count);
            // next sequence: odometer over the recorded radices
            let mut digits: Vec<usize> = (0..script.radices.len()).map(|i| choices.get(i).copied().unwrap_or(0)).collect();
            let mut pos = digits.len();
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                if digits[pos] + 1 < script.radices[pos] {
                    digits[pos] += 1;
                    digits.truncate(pos + 1);
                    break true;
                }
            };
            if !advanced {
                break;
            }
            choices = digits;
        }
        orders += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    sum / BigInt::from(orders)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else { return false };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("a[i] qualifies");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, RandomizedError> {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(RandomizedError::NodeOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(RandomizedError::SelfLoop(a));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(RandomizedError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(UGraph { n, edges: out })
    }

    /// `G(n, p)`: each pair joined independently with probability `p`.
    pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p.clamp(0.0, 1.0)) {
                    edges.push((a, b));
                }
            }
        }
        UGraph { n, edges }
    }

    pub fn complete(n: usize) -> Self {
        UGraph { n, edges: (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Exhaustive search; for small graphs only.
    pub fn has_hamiltonian_cycle(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        let mut adj = vec![0u32; self.n];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        fn go(adj: &[u32], at: usize, seen: u32) -> bool {
            if seen.count_ones() as usize == adj.len() {
                return adj[at] & 1 != 0;
            }
            (0..adj.len()).any(|v| adj[at] >> v & 1 == 1 && seen >> v & 1 == 0 && go(adj, v, seen | 1 << v))
        }
        assert!(self.n <= 20, "exhaustive search is for small graphs");
        go(&adj, 0, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcVerdict {
    NoHamiltonianCycle,
    /// No claim either way.
    Pass,
}

pub fn hc_heuristic(g: &UGraph) -> HcVerdict {
    if g.degrees().contains(&0) {
        HcVerdict::NoHamiltonianCycle
    } else {
        HcVerdict::Pass
    }
}

/// `1 - (1 - (1-p)^(n-1))^n`, the isolated-node rate if nodes were independent.
pub fn isolated_node_rate(n: usize, p: f64) -> f64 {
    let single = (1.0 - p).powi(n as i32 - 1);
    1.0 - (1.0 - single).powi(n as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundStats {
    pub tried: usize,
    pub ate: usize,
    /// Diners still hungry after the round.
    pub hungry: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhilosophersRun {
    /// First round after which everyone has eaten.
    pub all_ate_by: Option<u32>,
    pub rounds: Vec<RoundStats>,
    /// Diners that ate in each round, for checking exclusion.
    pub eaters: Vec<Vec<usize>>,
}

/// Each hungry diner flips a coin: heads sits still, tails grabs both
/// forks at once. A grab succeeds when neither neighbour grabs.
pub fn philosophers_sim<R: Rng + ?Sized>(n: usize, max_rounds: u32, rng: &mut R) -> Result<PhilosophersRun, RandomizedError> {
    if n < 2 {
        return Err(RandomizedError::TooFewDiners);
    }
    let mut hungry = vec![true; n];
    let mut run = PhilosophersRun { all_ate_by: None, rounds: Vec::new(), eaters: Vec::new() };
    for round in 1..=max_rounds {
        let tries: Vec<bool> = hungry.iter().map(|&h| h && rng.gen::<bool>()).collect();
        let eat: Vec<usize> = (0..n)
            .filter(|&i| tries[i] && !tries[(i + 1) % n] && !tries[(i + n - 1) % n])
            .collect();
        for &i in &eat {
            hungry[i] = false;
        }
        let left = hungry.iter().filter(|&&h| h).count();
        run.rounds.push(RoundStats { tried: tries.iter().filter(|&&t| t).count(), ate: eat.len(), hungry: left });
        run.eaters.push(eat);
        if left == 0 {
            run.all_ate_by = Some(round);
            break;
        }
    }
    Ok(run)
}
