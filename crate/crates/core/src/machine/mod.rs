//! Binary-alphabet Turing machines with resource meters.

mod ww;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use ww::{is_ww, tm_ww_recognizer, ww_decide, ww_encode, WwVerdict, WW_ACCEPT, WW_REJECT};

pub type StateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::L => "L",
            Dir::R => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub next: StateId,
    pub write: bool,
    pub dir: Dir,
}

/// How a run may end. Rolling off the left end always halts; the mode
/// says what else does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltMode {
    /// Entering one of the machine's halt states.
    ExplicitHaltState,
    /// Only by the head leaving cell 0 to the left.
    LeftRollOff,
    /// Also by moving past the right end of the input.
    RightRollOff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltReason {
    State(StateId),
    LeftRollOff,
    RightRollOff,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("state {0} out of range (state count {1})")]
    StateOutOfRange(StateId, usize),
    #[error("no rule for state {0} reading {1}")]
    MissingRule(StateId, u8),
    #[error("duplicate rule for state {0} reading {1}")]
    DuplicateRule(StateId, u8),
    #[error("halt state {0} has a rule")]
    RuleOnHaltState(StateId),
    #[error("halt states are only allowed with explicit halting")]
    UnexpectedHaltStates,
    #[error("machine has no states")]
    Empty,
    #[error("step on a halted configuration")]
    StepOnHalted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryTM {
    state_count: usize,
    start: StateId,
    halt_states: BTreeSet<StateId>,
    rules: Vec<[Option<Rule>; 2]>,
    mode: HaltMode,
}

impl BinaryTM {
    /// Builds a machine from `(state, bit, rule)` triples, checking totality.
    pub fn new(
        state_count: usize,
        start: StateId,
        rules: impl IntoIterator<Item = (StateId, bool, Rule)>,
        halt_states: impl IntoIterator<Item = StateId>,
        mode: HaltMode,
    ) -> Result<Self, MachineError> {
        if state_count == 0 {
            return Err(MachineError::Empty);
        }
        let check = |s: StateId| {
            if s < state_count {
                Ok(())
            } else {
                Err(MachineError::StateOutOfRange(s, state_count))
            }
        };
        check(start)?;
        let halt_states: BTreeSet<StateId> = halt_states.into_iter().collect();
        for &h in &halt_states {
            check(h)?;
        }
        if mode != HaltMode::ExplicitHaltState && !halt_states.is_empty() {
            return Err(MachineError::UnexpectedHaltStates);
        }
        let mut table = vec![[None; 2]; state_count];
        for (s, bit, rule) in rules {
            check(s)?;
            check(rule.next)?;
            if halt_states.contains(&s) {
                return Err(MachineError::RuleOnHaltState(s));
            }
            let slot = &mut table[s][bit as usize];
            if slot.is_some() {
                return Err(MachineError::DuplicateRule(s, bit as u8));
            }
            *slot = Some(rule);
        }
        for (s, row) in table.iter().enumerate() {
            if halt_states.contains(&s) {
                continue;
            }
            if let Some(bit) = row.iter().position(Option::is_none) {
                return Err(MachineError::MissingRule(s, bit as u8));
            }
        }
        Ok(BinaryTM {
            state_count,
            start,
            halt_states,
            rules: table,
            mode,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn mode(&self) -> HaltMode {
        self.mode
    }

    pub fn halt_states(&self) -> &BTreeSet<StateId> {
        &self.halt_states
    }

    pub fn is_halt_state(&self, s: StateId) -> bool {
        self.halt_states.contains(&s)
    }

    pub fn rule(&self, s: StateId, bit: bool) -> Option<Rule> {
        self.rules.get(s).and_then(|r| r[bit as usize])
    }

    /// All rules in `(state, bit)` order.
    pub fn rules(&self) -> impl Iterator<Item = (StateId, bool, Rule)> + '_ {
        self.rules.iter().enumerate().flat_map(|(s, row)| {
            [false, true]
                .into_iter()
                .filter_map(move |b| row[b as usize].map(|r| (s, b, r)))
        })
    }

    /// Same machine with one rule replaced; used for mutation tests.
    pub fn with_rule(&self, s: StateId, bit: bool, rule: Rule) -> Result<Self, MachineError> {
        let mut rules: Vec<_> = self.rules().filter(|&(q, b, _)| (q, b) != (s, bit)).collect();
        rules.push((s, bit, rule));
        BinaryTM::new(
            self.state_count,
            self.start,
            rules,
            self.halt_states.iter().copied(),
            self.mode,
        )
    }

    pub fn initial(&self, input: &[bool]) -> TapeState {
        TapeState {
            cells: input.to_vec(),
            head: 0,
            state: self.start,
        }
    }

    pub fn halt_reason(&self, cfg: &TapeState) -> Option<HaltReason> {
        if cfg.head < 0 {
            Some(HaltReason::LeftRollOff)
        } else if self.is_halt_state(cfg.state) {
            Some(HaltReason::State(cfg.state))
        } else if self.mode == HaltMode::RightRollOff && cfg.head as usize >= cfg.cells.len() {
            Some(HaltReason::RightRollOff)
        } else {
            None
        }
    }

    pub fn is_halted(&self, cfg: &TapeState) -> bool {
        self.halt_reason(cfg).is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TapeState {
    pub cells: Vec<bool>,
    /// −1 once the head has rolled off the left end.
    pub head: isize,
    pub state: StateId,
}

impl TapeState {
    /// The tape with trailing zeros removed.
    pub fn trimmed(&self) -> &[bool] {
        let end = self.cells.iter().rposition(|&b| b).map_or(0, |i| i + 1);
        &self.cells[..end]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunMeters {
    pub steps: u64,
    pub volume: u64,
    pub space: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    pub steps: u64,
    pub space: Option<u64>,
}

impl RunLimits {
    pub fn steps(steps: u64) -> Self {
        RunLimits { steps, space: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub tape: TapeState,
    pub meters: RunMeters,
    pub halted: bool,
    pub reason: Option<HaltReason>,
}

pub fn tm_step(tm: &BinaryTM, cfg: &TapeState) -> Result<TapeState, MachineError> {
    if tm.is_halted(cfg) {
        return Err(MachineError::StepOnHalted);
    }
    let mut next = cfg.clone();
    let h = cfg.head as usize;
    if h == next.cells.len() {
        next.cells.push(false);
    }
    let bit = next.cells[h];
    let rule = tm
        .rule(cfg.state, bit)
        .ok_or(MachineError::MissingRule(cfg.state, bit as u8))?;
    next.cells[h] = rule.write;
    next.state = rule.next;
    next.head = match rule.dir {
        Dir::L => cfg.head - 1,
        Dir::R => cfg.head + 1,
    };
    if tm.mode() != HaltMode::RightRollOff && next.head as usize == next.cells.len() {
        next.cells.push(false);
    }
    Ok(next)
}

pub fn tm_run(tm: &BinaryTM, input: &[bool], limits: RunLimits) -> RunOutcome {
    let mut cfg = tm.initial(input);
    let mut meters = RunMeters::default();
    loop {
        if let Some(reason) = tm.halt_reason(&cfg) {
            return RunOutcome {
                tape: cfg,
                meters,
                halted: true,
                reason: Some(reason),
            };
        }
        let next_space = meters.space.max(cfg.head as u64 + 1);
        if meters.steps >= limits.steps || limits.space.is_some_and(|s| next_space > s) {
            return RunOutcome {
                tape: cfg,
                meters,
                halted: false,
                reason: None,
            };
        }
        cfg = tm_step(tm, &cfg).expect("machine validated total on non-halted states");
        meters.steps += 1;
        meters.volume += 1;
        meters.space = next_space;
    }
}

/// True iff the machine halts within `t` steps on `input`.
pub fn bounded_halt(tm: &BinaryTM, input: &[bool], t: u64) -> bool {
    if tm.is_halted(&tm.initial(input)) {
        return true;
    }
    t > 0 && tm_run(tm, input, RunLimits::steps(t)).halted
}

/// Parses a string of `0`/`1` characters.
pub fn bits(s: &str) -> Vec<bool> {
    s.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect()
}

pub fn bit_string(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

/// A handful of small machines used by tests and the CLI.
pub mod samples {
    use super::*;

    fn r(next: StateId, write: u8, dir: Dir) -> Rule {
        Rule {
            next,
            write: write == 1,
            dir,
        }
    }

    /// Flips every input bit, halting past the right end.
    pub fn flip_all() -> BinaryTM {
        BinaryTM::new(
            1,
            0,
            [(0, false, r(0, 1, Dir::R)), (0, true, r(0, 0, Dir::R))],
            [],
            HaltMode::RightRollOff,
        )
        .unwrap()
    }

    /// Writes 1 and moves right forever.
    pub fn write_one_right() -> BinaryTM {
        BinaryTM::new(
            1,
            0,
            [(0, false, r(0, 1, Dir::R)), (0, true, r(0, 1, Dir::R))],
            [],
            HaltMode::LeftRollOff,
        )
        .unwrap()
    }

    /// Rolls off the left end at once.
    pub fn halt_left() -> BinaryTM {
        BinaryTM::new(
            1,
            0,
            [(0, false, r(0, 0, Dir::L)), (0, true, r(0, 1, Dir::L))],
            [],
            HaltMode::LeftRollOff,
        )
        .unwrap()
    }

    /// Walks right over `k` cells then walks back and rolls off: halts in `2k+1` steps.
    pub fn out_and_back(k: usize) -> BinaryTM {
        let mut rules = Vec::new();
        for s in 0..k {
            for b in [false, true] {
                rules.push((s, b, Rule { next: s + 1, write: b, dir: Dir::R }));
            }
        }
        for b in [false, true] {
            rules.push((k, b, Rule { next: k, write: b, dir: Dir::L }));
        }
        BinaryTM::new(k + 1, 0, rules, [], HaltMode::LeftRollOff).unwrap()
    }

    /// Binary increment of a little-endian counter, then roll off.
    pub fn increment() -> BinaryTM {
        BinaryTM::new(
            2,
            0,
            [
                (0, true, r(0, 0, Dir::R)),
                (0, false, r(1, 1, Dir::L)),
                (1, false, r(1, 0, Dir::L)),
                (1, true, r(1, 1, Dir::L)),
            ],
            [],
            HaltMode::LeftRollOff,
        )
        .unwrap()
    }

    /// Explicit-halt machine: skips over 1s, halts on the first 0.
    pub fn seek_zero() -> BinaryTM {
        BinaryTM::new(
            2,
            0,
            [(0, true, r(0, 1, Dir::R)), (0, false, r(1, 1, Dir::R))],
            [1],
            HaltMode::ExplicitHaltState,
        )
        .unwrap()
    }
}
