//! Arithmetized one-player game: Merlin defends a claimed game value
//! `V_c(x)` by sending low-degree polynomials, Arthur answers with random
//! field elements until the claim reaches a terminal check.
//!
//! Positions are `s` bits `x_1..x_s`; a move is a bit `m` and `r(m, x)` is
//! given by one factor per output bit, `y_i = g_i(inputs)`, so that
//! `t(m,x,y) = prod_i eq(y_i, g_i)` where `g_i` is the multilinear extension
//! of a truth table over at most three of `m, x_1..x_s`.

use rand::Rng;
use thiserror::Error;

use crate::numtheory::{gen_prime, modexp, NumError};
use crate::rng::trial_rng;

/// Round polynomials never exceed this degree.
pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SumcheckError {
    #[error("move count {0} above cap {1}")]
    CapExceeded(u32, u32),
    #[error("claimed value is false")]
    FalseClaim,
    #[error("polynomial degree {0} above {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("bad rule: {0}")]
    BadRule(String),
    #[error("protocol state does not fit the game")]
    BadState,
    #[error(transparent)]
    Prime(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Field {
    /// `p` must be prime and below `2^32`.
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "field modulus out of range");
        Field { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        modexp(a, self.p - 2, self.p)
    }

    /// `eq(a, b) = ab + (1-a)(1-b)`.
    pub fn eq(&self, a: u64, b: u64) -> u64 {
        let one_a = self.sub(1, a);
        let one_b = self.sub(1, b);
        self.add(self.mul(a, b), self.mul(one_a, one_b))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundPoly {
    coeffs: Vec<u64>,
}

impl RoundPoly {
    pub fn new(mut coeffs: Vec<u64>) -> Result<Self, SumcheckError> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(SumcheckError::DegreeTooHigh(coeffs.len() - 1));
        }
        Ok(RoundPoly { coeffs })
    }

    /// The polynomial through `(i, values[i])`, `i = 0, 1, ...`.
    pub fn interpolate(f: &Field, values: &[u64]) -> Result<Self, SumcheckError> {
        let n = values.len();
        let mut out = vec![0u64; n];
        for (j, &yj) in values.iter().enumerate() {
            // basis = prod_{k != j} (X - k) / (j - k)
            let mut basis = vec![1u64];
            let mut denom = 1u64;
            for k in (0..n).filter(|&k| k != j) {
                let mut next = vec![0u64; basis.len() + 1];
                for (d, &c) in basis.iter().enumerate() {
                    next[d + 1] = f.add(next[d + 1], c);
                    next[d] = f.sub(next[d], f.mul(c, f.elem(k as u64)));
                }
                basis = next;
                denom = f.mul(denom, f.sub(f.elem(j as u64), f.elem(k as u64)));
            }
            let scale = f.mul(f.elem(yj), f.inv(denom));
            for (d, c) in basis.into_iter().enumerate() {
                out[d] = f.add(out[d], f.mul(c, scale));
            }
        }
        RoundPoly::new(out)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, f: &Field, r: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, r), c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    M,
    /// `X(i)` is `x_{i+1}`.
    X(usize),
}

/// Output bit `g(inputs)`; bit `b` of `table` is the value at the input
/// assignment whose bit `j` is input `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub inputs: Vec<Var>,
    pub table: u8,
}

impl Factor {
    fn get(&self, m: bool, x: u32) -> bool {
        let mut idx = 0;
        for (j, v) in self.inputs.iter().enumerate() {
            let bit = match *v {
                Var::M => m,
                Var::X(i) => x >> i & 1 == 1,
            };
            idx |= (bit as u8) << j;
        }
        self.table >> idx & 1 == 1
    }

    /// Multilinear extension at a field point.
    fn eval(&self, f: &Field, m: u64, x: &[u64]) -> u64 {
        let vals: Vec<u64> = self
            .inputs
            .iter()
            .map(|v| match *v {
                Var::M => m,
                Var::X(i) => x[i],
            })
            .collect();
        let mut acc = 0;
        for idx in 0..1u8 << vals.len() {
            if self.table >> idx & 1 == 0 {
                continue;
            }
            let mut term = 1;
            for (j, &u) in vals.iter().enumerate() {
                term = f.mul(term, if idx >> j & 1 == 1 { u } else { f.sub(1, u) });
            }
            acc = f.add(acc, term);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithGame {
    s: usize,
    factors: Vec<Factor>,
}

impl ArithGame {
    pub fn new(s: usize, factors: Vec<Factor>) -> Result<Self, SumcheckError> {
        let bad = |why: String| Err(SumcheckError::BadRule(why));
        if !(1..=16).contains(&s) || factors.len() != s {
            return bad(format!("need 1..=16 positions and one factor each, got s={s}"));
        }
        let mut uses = vec![0usize; s + 1];
        for (i, fct) in factors.iter().enumerate() {
            if fct.inputs.is_empty() || fct.inputs.len() > 3 {
                return bad(format!("factor {i} has {} inputs", fct.inputs.len()));
            }
            for (j, v) in fct.inputs.iter().enumerate() {
                if fct.inputs[..j].contains(v) {
                    return bad(format!("factor {i} repeats an input"));
                }
                let slot = match *v {
                    Var::M => s,
                    Var::X(k) if k < s => k,
                    Var::X(k) => return bad(format!("factor {i} reads x_{}", k + 1)),
                };
                uses[slot] += 1;
            }
            if fct.inputs.len() < 3 && fct.table >> (1 << fct.inputs.len()) != 0 {
                return bad(format!("factor {i} table wider than its inputs"));
            }
        }
        if uses.iter().any(|&u| u > 2) {
            return bad("a variable feeds more than two factors".into());
        }
        Ok(ArithGame { s, factors })
    }

    /// `r(m, x) = (x_2, ..., x_s, m xor x_1 x_2)`.
    pub fn shift_register(s: usize) -> Self {
        assert!((2..=16).contains(&s));
        let mut factors: Vec<Factor> = (1..s).map(|i| Factor { inputs: vec![Var::X(i)], table: 0b10 }).collect();
        // index bits: m, x1, x2; value m ^ (x1 & x2)
        let table = (0..8u8).filter(|&i| (i & 1) ^ (i >> 1 & i >> 2 & 1) == 1).fold(0, |t, i| t | 1 << i);
        factors.push(Factor { inputs: vec![Var::M, Var::X(0), Var::X(1)], table });
        ArithGame::new(s, factors).expect("shift register is well formed")
    }

    /// A random rule obeying the two-factor limit per variable.
    pub fn random<R: Rng + ?Sized>(s: usize, rng: &mut R) -> Self {
        let mut uses = vec![0usize; s + 1];
        let mut factors = Vec::new();
        for _ in 0..s {
            let want = rng.gen_range(1..=3usize);
            let mut inputs = Vec::new();
            for _ in 0..8 {
                if inputs.len() == want {
                    break;
                }
                let slot = rng.gen_range(0..=s);
                let v = if slot == s { Var::M } else { Var::X(slot) };
                if uses[slot] < 2 && !inputs.contains(&v) {
                    uses[slot] += 1;
                    inputs.push(v);
                }
            }
            if inputs.is_empty() {
                // every variable may be spent; a constant-free single input
                // is still needed, so fall back to a fresh slot or m
                let slot = (0..=s).find(|&k| uses[k] < 2).unwrap_or(s);
                uses[slot] += 1;
                inputs.push(if slot == s { Var::M } else { Var::X(slot) });
            }
            let width = 1u32 << inputs.len();
            let table = (rng.gen::<u16>() as u32 & ((1u32 << width) - 1)) as u8;
            factors.push(Factor { inputs, table });
        }
        ArithGame::new(s, factors).unwrap_or_else(|_| ArithGame::shift_register(s.max(2)))
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The boolean rule on packed positions; bit `i` holds `x_{i+1}`.
    pub fn next(&self, m: bool, x: u32) -> u32 {
        self.factors
            .iter()
            .enumerate()
            .fold(0, |acc, (i, fct)| acc | (fct.get(m, x) as u32) << i)
    }

    fn targets(&self, f: &Field, m: u64, x: &[u64]) -> Vec<u64> {
        self.factors.iter().map(|fct| fct.eval(f, m, x)).collect()
    }

    /// `t(m, x, y)`, 1 iff `y = r(m, x)` on boolean points.
    pub fn t(&self, f: &Field, m: u64, x: &[u64], y: &[u64]) -> u64 {
        self.targets(f, m, x).iter().zip(y).fold(1, |acc, (&g, &yi)| f.mul(acc, f.eq(yi, g)))
    }

    /// Largest `c` accepted by the solvers: `2^s`, at most 64.
    pub fn cap(&self) -> u32 {
        (1u32 << self.s.min(6)).min(64)
    }

    /// `B_c` for every packed position, `c = 0..=levels`.
    fn boolean_levels(&self, levels: u32) -> Vec<Vec<bool>> {
        let size = 1usize << self.s;
        let mut out = vec![(0..size).map(|x| x & 1 == 1).collect::<Vec<bool>>()];
        for c in 0..levels as usize {
            let prev = &out[c];
            let next = (0..size as u32)
                .map(|x| !(prev[self.next(false, x) as usize] && prev[self.next(true, x) as usize]))
                .collect();
            out.push(next);
        }
        out
    }
}

pub fn unpack(x: u32, s: usize) -> Vec<u64> {
    (0..s).map(|i| (x >> i & 1) as u64).collect()
}

/// Whether the player to move at `x` wins with `c` moves left.
pub fn v_brute(g: &ArithGame, c: u32, x: u32) -> Result<bool, SumcheckError> {
    if c > g.cap() {
        return Err(SumcheckError::CapExceeded(c, g.cap()));
    }
    fn go(g: &ArithGame, c: u32, x: u32) -> bool {
        if c == 0 {
            return x & 1 == 1;
        }
        !(go(g, c - 1, g.next(false, x)) && go(g, c - 1, g.next(true, x)))
    }
    Ok(go(g, c, x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProtocolState {
    /// Claim `v = V_c(x)`.
    Root { x: Vec<u64>, c: u32, v: u64 },
    /// Claim `v = sum over boolean z of V_c(y z) t(m, x, y z)`.
    Partial { m: u64, x: Vec<u64>, y: Vec<u64>, c: u32, v: u64 },
}

impl ProtocolState {
    pub fn v(&self) -> u64 {
        match self {
            ProtocolState::Root { v, .. } | ProtocolState::Partial { v, .. } => *v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundResult {
    Next(ProtocolState),
    Reject,
}

/// Product-round data: the factor `t` in front of the claim and the
/// position the next move starts from.
fn product_parts<'a>(g: &ArithGame, f: &Field, st: &'a ProtocolState) -> Option<(u64, &'a [u64], u32)> {
    match st {
        ProtocolState::Root { x, c, .. } => Some((1, x, *c)),
        ProtocolState::Partial { m, x, y, c, .. } if y.len() == g.s() => Some((g.t(f, *m, x, y), y, *c)),
        ProtocolState::Partial { .. } => None,
    }
}

/// `Some(accept)` once no moves remain.
pub fn terminal_check(g: &ArithGame, f: &Field, st: &ProtocolState) -> Option<bool> {
    match product_parts(g, f, st) {
        Some((tf, y, 0)) => Some(st.v() == f.mul(tf, f.elem(y[0]))),
        _ => None,
    }
}

/// Arthur's check of `P` against the state's claim, then his move `r`.
pub fn verifier_round(g: &ArithGame, f: &Field, st: &ProtocolState, p: &RoundPoly, r: u64) -> RoundResult {
    let (p0, p1, pr) = (p.eval(f, 0), p.eval(f, 1), p.eval(f, r));
    match product_parts(g, f, st) {
        Some((_, _, 0)) => RoundResult::Reject,
        Some((tf, y, c)) => {
            let lhs = f.mul(tf, f.sub(1, f.mul(p0, p1)));
            if lhs != st.v() {
                return RoundResult::Reject;
            }
            RoundResult::Next(ProtocolState::Partial { m: r, x: y.to_vec(), y: Vec::new(), c: c - 1, v: pr })
        }
        None => {
            let ProtocolState::Partial { m, x, y, c, v } = st else { unreachable!() };
            if f.add(p0, p1) != *v {
                return RoundResult::Reject;
            }
            let mut y = y.clone();
            y.push(r);
            RoundResult::Next(ProtocolState::Partial { m: *m, x: x.clone(), y, c: *c, v: pr })
        }
    }
}

/// The game over a fixed field with its boolean value tables, enough to
/// evaluate every `V_c` at field points.
#[derive(Debug, Clone)]
pub struct Arithmetized {
    game: ArithGame,
    field: Field,
    levels: Vec<Vec<bool>>,
}

impl Arithmetized {
    pub fn new(game: ArithGame, field: Field, c: u32) -> Result<Self, SumcheckError> {
        if c > game.cap() {
            return Err(SumcheckError::CapExceeded(c, game.cap()));
        }
        let levels = game.boolean_levels(c);
        Ok(Arithmetized { game, field, levels })
    }

    pub fn game(&self) -> &ArithGame {
        &self.game
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn max_c(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// `W_c(m, x) = sum over boolean z of V_c(z) t(m, x, z)`.
    fn w(&self, c: u32, m: u64, x: &[u64]) -> u64 {
        let f = &self.field;
        let g = self.game.targets(f, m, x);
        let neg: Vec<u64> = g.iter().map(|&v| f.sub(1, v)).collect();
        let mut acc = 0;
        for (z, &win) in self.levels[c as usize].iter().enumerate() {
            if !win {
                continue;
            }
            let mut term = 1;
            for i in 0..g.len() {
                term = f.mul(term, if z >> i & 1 == 1 { g[i] } else { neg[i] });
            }
            acc = f.add(acc, term);
        }
        acc
    }

    /// `V_c` at a field point.
    pub fn value(&self, c: u32, x: &[u64]) -> u64 {
        let f = &self.field;
        if c == 0 {
            return f.elem(x[0]);
        }
        f.sub(1, f.mul(self.w(c - 1, 0, x), self.w(c - 1, 1, x)))
    }

    fn points(&self) -> u64 {
        self.field.p().min(MAX_DEGREE as u64 + 1)
    }

    /// The exact round polynomial, regardless of the claimed `v`.
    fn true_poly(&self, st: &ProtocolState) -> Result<RoundPoly, SumcheckError> {
        let f = &self.field;
        let s = self.game.s();
        match product_parts(&self.game, f, st) {
            Some((_, _, 0)) => Err(SumcheckError::BadState),
            Some((_, y, c)) => {
                let vals: Vec<u64> = (0..self.points()).map(|mm| self.w(c - 1, mm, y)).collect();
                RoundPoly::interpolate(f, &vals)
            }
            None => {
                let ProtocolState::Partial { m, x, y, c, .. } = st else { unreachable!() };
                let rest = s - y.len() - 1;
                let tg = self.game.targets(f, *m, x);
                let mut vals = Vec::new();
                for yy in 0..self.points() {
                    let mut point = y.clone();
                    point.push(yy);
                    point.resize(s, 0);
                    let mut sum = 0;
                    for z in 0..1u64 << rest {
                        for k in 0..rest {
                            point[y.len() + 1 + k] = z >> k & 1;
                        }
                        let t = tg.iter().zip(&point).fold(1, |acc, (&gi, &wi)| f.mul(acc, f.eq(wi, gi)));
                        if t != 0 {
                            sum = f.add(sum, f.mul(self.value(*c, &point), t));
                        }
                    }
                    vals.push(sum);
                }
                RoundPoly::interpolate(f, &vals)
            }
        }
    }

    fn identity_holds(&self, st: &ProtocolState, p: &RoundPoly) -> bool {
        let f = &self.field;
        let (p0, p1) = (p.eval(f, 0), p.eval(f, 1));
        match product_parts(&self.game, f, st) {
            Some((tf, _, _)) => f.mul(tf, f.sub(1, f.mul(p0, p1))) == st.v(),
            None => f.add(p0, p1) == st.v(),
        }
    }

    /// Merlin's honest move; refuses a false claim.
    pub fn honest_prover(&self, st: &ProtocolState) -> Result<RoundPoly, SumcheckError> {
        let p = self.true_poly(st)?;
        if !self.identity_holds(st, &p) {
            return Err(SumcheckError::FalseClaim);
        }
        Ok(p)
    }

    /// Honest on true claims. On a false claim, sends the polynomial that
    /// passes the check and agrees with the true one at the most points;
    /// `None` when no polynomial passes.
    pub fn cheating_prover(&self, st: &ProtocolState) -> Result<Option<RoundPoly>, SumcheckError> {
        let f = &self.field;
        let truth = self.true_poly(st)?;
        if self.identity_holds(st, &truth) {
            return Ok(Some(truth));
        }
        let mut vals: Vec<u64> = (0..self.points()).map(|k| truth.eval(f, k)).collect();
        match product_parts(&self.game, f, st) {
            Some((tf, _, _)) => {
                if tf == 0 {
                    return Ok(None);
                }
                // need P(0) P(1) = w
                let w = f.sub(1, f.mul(st.v(), f.inv(tf)));
                if vals[0] != 0 {
                    vals[1] = f.mul(w, f.inv(vals[0]));
                } else if vals[1] != 0 {
                    vals[0] = f.mul(w, f.inv(vals[1]));
                } else {
                    vals[0] = 1;
                    vals[1] = w;
                }
            }
            None => vals[1] = f.sub(st.v(), vals[0]),
        }
        RoundPoly::interpolate(f, &vals).map(Some)
    }

    pub fn rounds(&self, c: u32) -> u32 {
        c * (self.game.s() as u32 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Honest,
    BestResponse,
}

/// One full protocol run from `st`; true iff Arthur accepts.
pub fn run_protocol<R: Rng + ?Sized>(
    a: &Arithmetized,
    st: ProtocolState,
    strategy: Strategy,
    rng: &mut R,
) -> Result<bool, SumcheckError> {
    let mut st = st;
    loop {
        if let Some(ok) = terminal_check(&a.game, &a.field, &st) {
            return Ok(ok);
        }
        let p = match strategy {
            Strategy::Honest => match a.honest_prover(&st) {
                Ok(p) => p,
                Err(SumcheckError::FalseClaim) => return Ok(false),
                Err(e) => return Err(e),
            },
            Strategy::BestResponse => match a.cheating_prover(&st)? {
                Some(p) => p,
                None => return Ok(false),
            },
        };
        let r = a.field.random(rng);
        match verifier_round(&a.game, &a.field, &st, &p, r) {
            RoundResult::Next(next) => st = next,
            RoundResult::Reject => return Ok(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoundnessReport {
    pub trials: u64,
    pub accepted: u64,
    pub rate: f64,
    /// `MAX_DEGREE * rounds / p`.
    pub bound: f64,
    /// Monte-Carlo standard deviation at the bound.
    pub sigma: f64,
    pub warning: Option<String>,
}

/// Acceptance frequency of the claim `V_c(x) = v` over independent runs.
pub fn soundness_rate(
    a: &Arithmetized,
    x: u32,
    c: u32,
    v: u64,
    strategy: Strategy,
    trials: u64,
    seed: u64,
) -> Result<SoundnessReport, SumcheckError> {
    if c > a.max_c() {
        return Err(SumcheckError::CapExceeded(c, a.max_c()));
    }
    let root = ProtocolState::Root { x: unpack(x, a.game.s()), c, v: a.field.elem(v) };
    let mut accepted = 0;
    for trial in 0..trials.max(1) {
        let mut rng = trial_rng(seed, trial);
        if run_protocol(a, root.clone(), strategy, &mut rng)? {
            accepted += 1;
        }
    }
    let trials = trials.max(1);
    let bound = (MAX_DEGREE as f64 * a.rounds(c) as f64 / a.field.p() as f64).min(1.0);
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    let warning = (bound >= 0.5).then(|| format!("field of size {} is too small for a meaningful bound", a.field.p()));
    Ok(SoundnessReport { trials, accepted, rate: accepted as f64 / trials as f64, bound, sigma, warning })
}

/// A prime of `max(2s, 17)` bits for the protocol field.
pub fn protocol_field<R: Rng + ?Sized>(s: usize, rng: &mut R) -> Result<Field, SumcheckError> {
    let bits = (2 * s as u32).clamp(17, 31);
    Ok(Field::new(gen_prime(bits, rng)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{solve_dfs, Game};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    struct Boolean<'a>(&'a ArithGame);

    impl Game for Boolean<'_> {
        type Pos = (u32, u32, i8);

        fn active(&self, x: &Self::Pos) -> i8 {
            x.2
        }

        fn moves(&self, &(x, c, a): &Self::Pos) -> Vec<Self::Pos> {
            vec![(self.0.next(false, x), c - 1, -a), (self.0.next(true, x), c - 1, -a)]
        }

        fn terminal(&self, &(x, c, a): &Self::Pos) -> Option<i8> {
            (c == 0).then(|| if x & 1 == 1 { a } else { -a })
        }

        fn key(&self, &(x, c, a): &Self::Pos) -> i64 {
            a as i64 * (1 + ((c as i64) << 20 | x as i64))
        }
    }

    fn field() -> Field {
        Field::new(65537)
    }

    #[test]
    fn brute_values() {
        let g = ArithGame::shift_register(4);
        assert!(v_brute(&g, 0, 0b0001).unwrap());
        assert!(!v_brute(&g, 0, 0b0010).unwrap());
        // both children have x_1 = x_2 = 0, losing for the mover there
        assert!(v_brute(&g, 1, 0b0001).unwrap());
        assert_eq!(v_brute(&g, 100, 0), Err(SumcheckError::CapExceeded(100, 16)));
    }

    #[test]
    fn brute_matches_game_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let g = ArithGame::random(4, &mut rng);
            for x in 0..16 {
                let dfs = solve_dfs(&Boolean(&g), &(x, 3, 1), 10).unwrap();
                assert_eq!(v_brute(&g, 3, x).unwrap(), dfs == 1);
            }
        }
    }

    #[test]
    fn arithmetization_agrees_on_boolean_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for g in [ArithGame::shift_register(5), ArithGame::random(5, &mut rng)] {
            let a = Arithmetized::new(g.clone(), field(), 4).unwrap();
            for c in 0..=4 {
                for x in 0..32 {
                    let want = v_brute(&g, c, x).unwrap() as u64;
                    assert_eq!(a.value(c, &unpack(x, 5)), want);
                }
            }
        }
    }

    #[test]
    fn t_is_transition_indicator() {
        let g = ArithGame::shift_register(3);
        let f = field();
        for x in 0..8 {
            for m in [false, true] {
                for y in 0..8 {
                    let t = g.t(&f, m as u64, &unpack(x, 3), &unpack(y, 3));
                    assert_eq!(t, (g.next(m, x) == y) as u64);
                }
            }
        }
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = field();
        let p = RoundPoly::new(vec![3, 0, 5, 1]).unwrap();
        let vals: Vec<u64> = (0..7).map(|k| p.eval(&f, k)).collect();
        assert_eq!(RoundPoly::interpolate(&f, &vals).unwrap(), p);
        assert!(matches!(RoundPoly::new(vec![1; 8]), Err(SumcheckError::DegreeTooHigh(7))));
    }

    #[test]
    fn honest_rounds_keep_identities() {
        let g = ArithGame::shift_register(4);
        let f = field();
        let a = Arithmetized::new(g.clone(), f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = v_brute(&g, 2, 0b0110).unwrap() as u64;
        let mut st = ProtocolState::Root { x: unpack(0b0110, 4), c: 2, v };
        let mut rounds = 0;
        while terminal_check(&g, &f, &st).is_none() {
            let p = a.honest_prover(&st).unwrap();
            assert!(p.degree() <= MAX_DEGREE);
            let (p0, p1) = (p.eval(&f, 0), p.eval(&f, 1));
            match product_parts(&g, &f, &st) {
                Some((tf, _, _)) => assert_eq!(f.mul(tf, f.sub(1, f.mul(p0, p1))), st.v()),
                None => assert_eq!(f.add(p0, p1), st.v()),
            }
            let RoundResult::Next(next) = verifier_round(&g, &f, &st, &p, f.random(&mut rng)) else {
                panic!("honest round rejected")
            };
            st = next;
            rounds += 1;
        }
        assert_eq!(rounds, a.rounds(2));
        assert_eq!(terminal_check(&g, &f, &st), Some(true));
    }

    #[test]
    fn false_claims() {
        let g = ArithGame::shift_register(4);
        let f = field();
        let a = Arithmetized::new(g.clone(), f, 1).unwrap();
        let v = v_brute(&g, 1, 3).unwrap() as u64;
        let st = ProtocolState::Root { x: unpack(3, 4), c: 1, v: 1 - v };
        assert_eq!(a.honest_prover(&st), Err(SumcheckError::FalseClaim));
        let bogus = RoundPoly::new(vec![0]).unwrap();
        let honest = ProtocolState::Root { x: unpack(3, 4), c: 1, v };
        // 1 - 0*0 = 1 matches only a claim of 1
        assert_eq!(matches!(verifier_round(&g, &f, &honest, &bogus, 5), RoundResult::Reject), v == 0);
        let leaf = ProtocolState::Root { x: unpack(3, 4), c: 0, v: 0 };
        assert_eq!(terminal_check(&g, &f, &leaf), Some(false));
    }

    #[test]
    fn small_field_warns() {
        let a = Arithmetized::new(ArithGame::shift_register(2), Field::new(2), 1).unwrap();
        let v = v_brute(a.game(), 1, 0).unwrap() as u64;
        let r = soundness_rate(&a, 0, 1, 1 - v, Strategy::BestResponse, 50, 1).unwrap();
        assert!(r.warning.is_some());
    }
}
