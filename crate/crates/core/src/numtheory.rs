//! Residue arithmetic, Euclid, square-and-multiply, and the Fermat /
//! Square-Root / Miller-Rabin tests.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, PrimInt, ToPrimitive, Unsigned};
use rand::distributions::uniform::SampleUniform;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("modulus {0} must be odd and at least 3")]
    BadInput(u64),
    #[error("gcd({0}, {1}) has no representation A*x - B*y with A, B >= 0")]
    Unrepresentable(u64, u64),
    #[error("no prime found after {0} candidates")]
    GenerationTimeout(usize),
    #[error("bit length {0} out of range")]
    BadBits(u32),
}

/// Unsigned words usable as residues.
pub trait Residue:
    PrimInt + Unsigned + FromPrimitive + ToPrimitive + SampleUniform + Hash + Debug + Display
{
    /// `a * b mod m` without overflow.
    fn mul_mod(self, b: Self, m: Self) -> Self;
}

impl Residue for u32 {
    fn mul_mod(self, b: u32, m: u32) -> u32 {
        (self as u64 * b as u64 % m as u64) as u32
    }
}

impl Residue for u64 {
    fn mul_mod(self, b: u64, m: u64) -> u64 {
        (self as u128 * b as u128 % m as u128) as u64
    }
}

pub fn gcd<T: Residue>(mut a: T, mut b: T) -> T {
    while b != T::zero() {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, A, B)` with `g = gcd(x, y) = A*x - B*y`. `A` is the least positive
/// solution, so `1 <= A <= max(y/g, 1)` and `0 <= B < max(x, 1)`.
pub fn ext_gcd<T: Residue>(x: T, y: T) -> Result<(T, T, T), NumError> {
    let wide = |v: T| v.to_i128().expect("word fits in i128");
    let (xw, yw) = (wide(x), wide(y));
    if yw == 0 {
        if xw == 0 {
            return Err(NumError::Unrepresentable(0, 0));
        }
        return Ok((x, T::one(), T::zero()));
    }
    if xw == 0 {
        return Err(NumError::Unrepresentable(0, y.to_u64().unwrap_or(u64::MAX)));
    }
    // a*x + b*y = g
    let (mut r0, mut r1, mut a0, mut a1) = (xw, yw, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (a0, a1) = (a1, a0 - q * a1);
    }
    let g = r0;
    let period = yw / g;
    let mut a = a0.rem_euclid(period);
    if a == 0 {
        a = period;
    }
    let b = (a * xw - g) / yw;
    let back = |v: i128| T::from_i128(v).expect("result within word range");
    Ok((back(g), back(a), back(b)))
}

/// `x^q mod p` from the squares `x^(2^i)`.
pub fn modexp<T: Residue>(x: T, q: T, p: T) -> T {
    if p == T::one() {
        return T::zero();
    }
    let mut sq = x % p;
    let mut q = q;
    let mut acc = T::one();
    while q != T::zero() {
        if q & T::one() == T::one() {
            acc = acc.mul_mod(sq, p);
        }
        sq = sq.mul_mod(sq, p);
        q = q >> 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrVerdict<T> {
    NoInfo,
    CompositeByFermat,
    Factor(T),
}

/// The chain `x_0 = x^q, x_i = x_{i-1}^2` for `d = 2^k q`, `q` odd.
pub fn square_chain<T: Residue>(x: T, p: T, d: T) -> Vec<T> {
    let k = d.trailing_zeros();
    let q = d >> k as usize;
    let mut chain = vec![modexp(x, q, p)];
    for _ in 0..k {
        let last = *chain.last().expect("nonempty");
        chain.push(last.mul_mod(last, p));
    }
    chain
}

/// One round of the test with base `x` and killing exponent `d`.
pub fn miller_rabin<T: Residue>(x: T, p: T, d: T) -> Result<MrVerdict<T>, NumError> {
    let three = T::from_u8(3).expect("3 fits");
    if p < three || p & T::one() == T::zero() || d == T::zero() {
        return Err(NumError::BadInput(p.to_u64().unwrap_or(u64::MAX)));
    }
    let x = x % p;
    if x == T::zero() {
        return Ok(MrVerdict::NoInfo);
    }
    let chain = square_chain(x, p, d);
    let minus_one = p - T::one();
    if *chain.last().expect("nonempty") != T::one() {
        let g = gcd(x, p);
        return Ok(if g > T::one() { MrVerdict::Factor(g) } else { MrVerdict::CompositeByFermat });
    }
    if chain[0] == T::one() {
        return Ok(MrVerdict::NoInfo);
    }
    for w in chain.windows(2) {
        if w[0] == minus_one {
            return Ok(MrVerdict::NoInfo);
        }
        if w[1] == T::one() {
            // w[0] is a square root of 1 other than +-1.
            return Ok(MrVerdict::Factor(gcd(p, w[0] + T::one())));
        }
    }
    unreachable!("chain ends in 1 so some step reaches it")
}

pub fn is_probable_prime<T: Residue, R: Rng + ?Sized>(p: T, rounds: u32, rng: &mut R) -> bool {
    let small = p.to_u64().unwrap_or(u64::MAX);
    if small < 4 {
        return small >= 2;
    }
    if p & T::one() == T::zero() {
        return false;
    }
    if small == 5 {
        return true;
    }
    let two = T::one() + T::one();
    let d = p - T::one();
    (0..rounds.max(1)).all(|_| {
        let x = rng.gen_range(two..=p - two);
        matches!(miller_rabin(x, p, d), Ok(MrVerdict::NoInfo))
    })
}

/// Candidates tried before giving up.
pub const CANDIDATE_BUDGET: usize = 100_000;

fn gen_with<R: Rng + ?Sized>(bits: u32, rng: &mut R, blum: bool) -> Result<(u64, usize), NumError> {
    if !(3..=63).contains(&bits) {
        return Err(NumError::BadBits(bits));
    }
    let lo = 1u64 << (bits - 1);
    for tries in 1..=CANDIDATE_BUDGET {
        let mut c = rng.gen_range(lo..lo << 1) | 1;
        if blum {
            c |= 3;
        }
        if is_probable_prime(c, 40, rng) {
            return Ok((c, tries));
        }
    }
    Err(NumError::GenerationTimeout(CANDIDATE_BUDGET))
}

/// A probable prime of exactly `bits` bits, with the number of candidates tried.
pub fn gen_prime_counted<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<(u64, usize), NumError> {
    gen_with(bits, rng, false)
}

pub fn gen_prime<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<u64, NumError> {
    gen_with(bits, rng, false).map(|r| r.0)
}

/// A probable prime `≡ 3 (mod 4)` of exactly `bits` bits.
pub fn gen_blum_prime<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<u64, NumError> {
    gen_with(bits, rng, true).map(|r| r.0)
}

/// Deterministic check by trial division; for tests and small inputs.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
