//! Time-bounded Kolmogorov complexity over a small reference machine,
//! by exhaustive program enumeration.
//!
//! A program is a 2-bit opcode and a payload; the condition `y` is a
//! second input.
//!
//! - `00 w`: LITERAL, outputs `w`.
//! - `01 γ(c) w`: REPEAT, outputs `w` repeated `c` times (`γ` is Elias gamma).
//! - `10 w`: FILL, outputs `w` repeated cyclically to length `value(y)`.
//! - `11 γ(K) rules w`: RUN-TM. Rules for states `0..K` in order `(s,0),(s,1)`,
//!   each a write bit, a direction bit (0 = L) and the next state in
//!   `ceil(log2(K+1))` bits, `K` meaning halt. The machine runs on `w y`
//!   and outputs its whole tape when it halts.
//!
//! Programs are not self-delimiting, so this is plain complexity.

use thiserror::Error;

use crate::machine::{BinaryTM, Dir, HaltMode, Rule};

/// Overhead of LITERAL.
pub const C_LIT: usize = 2;
/// Largest `max_len`; enumerating up to it runs `2^25 - 1` programs.
pub const MAX_LEN: usize = 24;
pub const DEFAULT_TMAX: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KError {
    #[error("program length {0} needs more than 2^25 runs")]
    BudgetExceeded(usize),
    #[error("string length {0} above the exhaustive limit {1}")]
    TooLong(usize, usize),
}

pub fn elias_gamma(c: u64) -> Vec<bool> {
    assert!(c >= 1);
    let width = 64 - c.leading_zeros() as usize;
    let mut out = vec![false; width - 1];
    out.extend((0..width).rev().map(|i| c >> i & 1 == 1));
    out
}

/// Decodes a gamma code at the front of `bits`; returns the value and the rest.
fn read_gamma(bits: &[bool]) -> Option<(u64, &[bool])> {
    let zeros = bits.iter().position(|&b| b)?;
    if zeros >= 63 || bits.len() < 2 * zeros + 1 {
        return None;
    }
    let v = bits[zeros..=2 * zeros].iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
    Some((v, &bits[2 * zeros + 1..]))
}

/// `y` read as a binary number, most significant bit first.
pub fn value(y: &[bool]) -> u64 {
    y.iter().fold(0u64, |acc, &b| acc.saturating_mul(2).saturating_add(b as u64))
}

/// `n` in binary without leading zeros; empty for 0.
pub fn bin(n: u64) -> Vec<bool> {
    let width = 64 - n.leading_zeros() as usize;
    (0..width).rev().map(|i| n >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToyRefVM {
    pub tmax: u64,
}

impl Default for ToyRefVM {
    fn default() -> Self {
        ToyRefVM { tmax: DEFAULT_TMAX }
    }
}

impl ToyRefVM {
    /// The output of `program` on `y`, if it is at most `max_out` bits.
    pub fn run(&self, program: &[bool], y: &[bool], max_out: usize) -> Option<Vec<bool>> {
        let (op, rest) = (program.get(..2)?, &program[2..]);
        match (op[0], op[1]) {
            (false, false) => (rest.len() <= max_out).then(|| rest.to_vec()),
            (false, true) => {
                let (c, w) = read_gamma(rest)?;
                if (w.len() as u64).saturating_mul(c) > max_out as u64 {
                    return None;
                }
                Some(w.iter().copied().cycle().take(w.len() * c as usize).collect())
            }
            (true, false) => {
                let len = value(y);
                if len > max_out as u64 || (rest.is_empty() && len > 0) {
                    return None;
                }
                Some(rest.iter().copied().cycle().take(len as usize).collect())
            }
            (true, true) => {
                let (tm, w) = decode_tm(rest)?;
                let mut input = w.to_vec();
                input.extend_from_slice(y);
                run_in_place(&tm, input, self.tmax, max_out)
            }
        }
    }
}

/// The machine of a RUN-TM payload and the remaining bits.
pub fn decode_tm(bits: &[bool]) -> Option<(BinaryTM, &[bool])> {
    let (k, mut rest) = read_gamma(bits)?;
    if k > 64 {
        return None;
    }
    let k = k as usize;
    let width = 64 - (k as u64).leading_zeros() as usize;
    let mut rules = Vec::new();
    for s in 0..k {
        for bit in [false, true] {
            if rest.len() < 2 + width {
                return None;
            }
            let next = rest[2..2 + width].iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
            if next > k {
                return None;
            }
            let dir = if rest[1] { Dir::R } else { Dir::L };
            rules.push((s, bit, Rule { next, write: rest[0], dir }));
            rest = &rest[2 + width..];
        }
    }
    let tm = BinaryTM::new(k + 1, 0, rules, [k], HaltMode::ExplicitHaltState).ok()?;
    Some((tm, rest))
}

/// Runs without copying the tape; gives up once the tape outgrows `max_out`.
fn run_in_place(tm: &BinaryTM, mut tape: Vec<bool>, tmax: u64, max_out: usize) -> Option<Vec<bool>> {
    let (mut head, mut state) = (0isize, tm.start());
    if tape.is_empty() {
        tape.push(false);
    }
    for _ in 0..=tmax {
        if tm.is_halt_state(state) || head < 0 {
            return (tape.len() <= max_out).then_some(tape);
        }
        let h = head as usize;
        if h == tape.len() {
            if tape.len() == max_out {
                return None;
            }
            tape.push(false);
        }
        let rule = tm.rule(state, tape[h])?;
        tape[h] = rule.write;
        state = rule.next;
        head += if rule.dir == Dir::R { 1 } else { -1 };
    }
    None
}

/// All programs of length `l`, as bit vectors, most significant bit first.
fn programs(l: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << l).map(move |p| (0..l).rev().map(|i| p >> i & 1 == 1).collect())
}

/// Length of the shortest program of at most `max_len` bits printing `x`
/// from `y` within `tmax` steps; `None` if there is none.
pub fn k_bounded(x: &[bool], y: &[bool], max_len: usize, tmax: u64) -> Result<Option<usize>, KError> {
    if max_len > MAX_LEN {
        return Err(KError::BudgetExceeded(max_len));
    }
    let vm = ToyRefVM { tmax };
    for l in 0..=max_len {
        if programs(l).any(|p| vm.run(&p, y, x.len()).as_deref() == Some(x)) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Strings handled by [`rarity`].
pub const RARITY_MAX_N: usize = 12;
/// Strings handled by [`census`].
pub const CENSUS_MAX_N: usize = 10;

/// `d(x) = n - K(x|n)`.
pub fn rarity(x: &[bool], tmax: u64) -> Result<i64, KError> {
    let n = x.len();
    if n > RARITY_MAX_N {
        return Err(KError::TooLong(n, RARITY_MAX_N));
    }
    let k = k_bounded(x, &bin(n as u64), n + C_LIT, tmax)?.expect("LITERAL always fits");
    Ok(n as i64 - k as i64)
}

/// `K(x|n)` for every `n`-bit `x`, indexed by `x` read most significant bit
/// first, from one pass over all programs up to `n + C_LIT` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub n: usize,
    pub k: Vec<usize>,
}

impl CensusTable {
    pub fn build(n: usize, tmax: u64) -> Result<Self, KError> {
        if n > CENSUS_MAX_N {
            return Err(KError::TooLong(n, CENSUS_MAX_N));
        }
        let vm = ToyRefVM { tmax };
        let y = bin(n as u64);
        let mut k = vec![usize::MAX; 1 << n];
        for l in 0..=n + C_LIT {
            for p in programs(l) {
                if let Some(out) = vm.run(&p, &y, n).filter(|o| o.len() == n) {
                    let slot = &mut k[value(&out) as usize];
                    *slot = (*slot).min(l);
                }
            }
        }
        debug_assert!(k.iter().all(|&v| v <= n + C_LIT));
        Ok(CensusTable { n, k })
    }

    pub fn rarity(&self, x: usize) -> i64 {
        self.n as i64 - self.k[x] as i64
    }

    /// Number of `x` with `d(x) > i`.
    pub fn count(&self, i: i64) -> usize {
        (0..self.k.len()).filter(|&x| self.rarity(x) > i).count()
    }
}

pub fn census(n: usize, i: i64, tmax: u64) -> Result<usize, KError> {
    Ok(CensusTable::build(n, tmax)?.count(i))
}
