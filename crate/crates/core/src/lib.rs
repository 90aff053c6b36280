//! Desk-scale models of computation, games, reductions and randomized
//! procedures, each paired with a brute-force cross-check.

pub mod machine;
pub mod utm;
pub mod cellular;
pub mod batcher;
pub mod games;
pub mod tiling;
pub mod numtheory;
pub mod rng;
pub mod sumcheck;
pub mod crypto;
pub mod randomized;
pub mod kolmogorov;

/// Residue word used by the crypto layer.
pub type Word = u64;
pub type Verdict = numtheory::MrVerdict<Word>;
/// Exact rationals for expectations.
pub type Exact = num_rational::Ratio<num_bigint::BigInt>;
