//! Batcher's bitonic merge and merge-sort as compare-exchange schedules.

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BatcherError {
    #[error("length {0} is not a power of two")]
    SizeNotPow2(usize),
    #[error("merge input is not sorted")]
    InputUnsorted,
}

/// Layers of disjoint compare-exchange pairs `(lo, hi)`; after a pair the
/// smaller value sits at `lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareSchedule {
    pub size: usize,
    pub layers: Vec<Vec<(usize, usize)>>,
}

impl CompareSchedule {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// True if every layer is a set of disjoint in-range pairs.
    pub fn is_valid(&self) -> bool {
        self.layers.iter().all(|layer| {
            let mut seen = vec![false; self.size];
            layer.iter().all(|&(a, b)| {
                let ok = a < b && b < self.size && !seen[a] && !seen[b];
                if ok {
                    seen[a] = true;
                    seen[b] = true;
                }
                ok
            })
        })
    }

    pub fn apply<T: Ord>(&self, data: &mut [T]) {
        self.apply_by(data, |a, b| a.cmp(b));
    }

    fn apply_by<T>(&self, data: &mut [T], cmp: impl Fn(&T, &T) -> Ordering) {
        for layer in &self.layers {
            for &(lo, hi) in layer {
                if cmp(&data[lo], &data[hi]) == Ordering::Greater {
                    data.swap(lo, hi);
                }
            }
        }
    }
}

fn half_cleaners(k: u32, from: u32, layers: &mut Vec<Vec<(usize, usize)>>) {
    let n = 1usize << k;
    for j in (0..from).rev() {
        let bit = 1usize << j;
        layers.push((0..n).filter(|i| i & bit == 0).map(|i| (i, i | bit)).collect());
    }
}

/// Merge network for a bitonic array of size `2^k`: each index is compared
/// with its flip in the highest address bit, then the halves recurse.
pub fn merge_schedule(k: u32) -> CompareSchedule {
    let mut layers = Vec::new();
    half_cleaners(k, k, &mut layers);
    CompareSchedule { size: 1 << k, layers }
}

/// Full sorting network for size `2^k`. The first layer of each merge
/// stage compares mirrored positions, which folds the reversal of the
/// second half into the network.
pub fn sort_schedule(k: u32) -> CompareSchedule {
    let n = 1usize << k;
    let mut layers = Vec::new();
    for s in 1..=k {
        let block = 1usize << s;
        let mut mirror = Vec::new();
        for start in (0..n).step_by(block) {
            for i in 0..block / 2 {
                mirror.push((start + i, start + block - 1 - i));
            }
        }
        layers.push(mirror);
        let mut rest = Vec::new();
        half_cleaners(k, s - 1, &mut rest);
        layers.extend(rest);
    }
    CompareSchedule { size: n, layers }
}

fn log2_exact(n: usize) -> Option<u32> {
    n.is_power_of_two().then(|| n.trailing_zeros())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Padded<T> {
    Val(T),
    Inf,
}

/// Merges two sorted lists, padding with `+inf` up to a power of two.
pub fn bitonic_merge<T: Ord + Clone>(a: &[T], b: &[T]) -> Result<Vec<T>, BatcherError> {
    let sorted = |v: &[T]| v.windows(2).all(|w| w[0] <= w[1]);
    if !sorted(a) || !sorted(b) {
        return Err(BatcherError::InputUnsorted);
    }
    let total = a.len() + b.len();
    if total == 0 {
        return Ok(Vec::new());
    }
    let n = total.next_power_of_two();
    let mut arr: Vec<Padded<T>> = a.iter().cloned().map(Padded::Val).collect();
    arr.extend(std::iter::repeat_n(Padded::Inf, n - total));
    arr.extend(b.iter().rev().cloned().map(Padded::Val));
    merge_schedule(n.trailing_zeros()).apply(&mut arr);
    Ok(arr
        .into_iter()
        .filter_map(|p| match p {
            Padded::Val(v) => Some(v),
            Padded::Inf => None,
        })
        .collect())
}

/// Sorts a power-of-two sized array, returning the network depth used.
pub fn batcher_sort<T: Ord + Clone>(arr: &[T]) -> Result<(Vec<T>, usize), BatcherError> {
    let k = log2_exact(arr.len()).ok_or(BatcherError::SizeNotPow2(arr.len()))?;
    let net = sort_schedule(k);
    let mut out = arr.to_vec();
    net.apply(&mut out);
    Ok((out, net.depth()))
}
