//! Ikeno's 11-state, 6-symbol universal Turing machine.
//!
//! The program image is a list of segments `*S d b`, one per command
//! `(s,b) -> (s',b',d)` of the simulated machine M, followed by a `*` and
//! M's tape. Segments are laid out in descending `(s,b)` order behind a
//! boot segment at index 0, so that the command for `(s,1)` sits one
//! segment left of the command for `(s,0)`. `S` is `0^k` when the next
//! command group lies `k` segments to the right and `1^k` when it lies to
//! the left. The direction digit is `0` for L and `1` for R.

use std::fmt;

use thiserror::Error;

use crate::machine::{BinaryTM, Dir, HaltMode, StateId, TapeState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UtmSymbol {
    One,
    Zero,
    Star,
    OneP,
    ZeroP,
    StarP,
}

impl UtmSymbol {
    pub const ALL: [UtmSymbol; 6] = [
        UtmSymbol::One,
        UtmSymbol::Zero,
        UtmSymbol::Star,
        UtmSymbol::OneP,
        UtmSymbol::ZeroP,
        UtmSymbol::StarP,
    ];

    fn column(self) -> usize {
        self as usize
    }

    pub fn is_primed(self) -> bool {
        self.column() >= 3
    }

    pub fn toggled(self) -> Self {
        Self::ALL[(self.column() + 3) % 6]
    }

    pub fn unprimed(self) -> Self {
        if self.is_primed() {
            self.toggled()
        } else {
            self
        }
    }

    pub fn primed(self) -> Self {
        self.unprimed().toggled()
    }

    pub fn bit(bit: bool) -> Self {
        if bit {
            UtmSymbol::One
        } else {
            UtmSymbol::Zero
        }
    }

    /// `0 1 *` and `o i x` for the primed variants.
    pub fn to_char(self) -> char {
        match self {
            UtmSymbol::One => '1',
            UtmSymbol::Zero => '0',
            UtmSymbol::Star => '*',
            UtmSymbol::OneP => 'i',
            UtmSymbol::ZeroP => 'o',
            UtmSymbol::StarP => 'x',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.to_char() == c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UtmState {
    A,
    B,
    LowF,
    F,
    D,
    E,
    LowD,
    LowB,
    LowA,
    LowC,
    LowE,
    Halt,
}

impl UtmState {
    const MACHINE: [UtmState; 11] = [
        UtmState::A,
        UtmState::B,
        UtmState::LowF,
        UtmState::F,
        UtmState::D,
        UtmState::E,
        UtmState::LowD,
        UtmState::LowB,
        UtmState::LowA,
        UtmState::LowC,
        UtmState::LowE,
    ];

    pub fn letter(self) -> char {
        match self {
            UtmState::A => 'A',
            UtmState::B => 'B',
            UtmState::LowF => 'f',
            UtmState::F => 'F',
            UtmState::D => 'D',
            UtmState::E => 'E',
            UtmState::LowD => 'd',
            UtmState::LowB => 'b',
            UtmState::LowA => 'a',
            UtmState::LowC => 'c',
            UtmState::LowE => 'e',
            UtmState::Halt => '=',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Self::MACHINE.into_iter().find(|s| s.letter() == c)
    }

    /// Lower-case states look left, upper-case look right.
    pub fn facing(self) -> Option<Dir> {
        match self {
            UtmState::Halt => None,
            s if s.letter().is_ascii_lowercase() => Some(Dir::L),
            _ => Some(Dir::R),
        }
    }
}

impl fmt::Display for UtmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Columns `1 0 * 1' 0' *'`, rows in [`UtmState::MACHINE`] order, cells as printed.
const TABLE: [[&str; 6]; 11] = [
    ["f", "f", "e0", "", "", ""],
    ["F", "F", "e1", "", "", ""],
    ["b*", "a*", "F", "", "", "c"],
    ["b*", "a*", "F", "", "", "c"],
    ["d'", "--", "", "", "", "e'"],
    ["=", "--", "'", "'", "'", "e'"],
    ["'", "'", "", "'", "'", "D"],
    ["'", "'", "'", "", "a'", "D"],
    ["'", "'", "'", "b'", "F", "E'"],
    ["'", "'", "", "=", "F", "E'"],
    ["'", "'", "'", "B", "A", "A/B"],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Choice {
    #[default]
    A,
    B,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UtmError {
    #[error("unreachable table entry ({0}, {1})")]
    UnreachableEntry(UtmState, char),
    #[error("transition requested from the halt state")]
    Halted,
    #[error("machine has no non-halting state")]
    NoCommands,
    #[error("segment {0} points outside the image")]
    BadOffset(usize),
    #[error("cycle did not close within {0} steps")]
    CycleBudget(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UtmTransition {
    pub state: UtmState,
    pub write: UtmSymbol,
}

/// One table lookup. A letter in the cell sets the state, a digit or `*`
/// sets the written base symbol, and the result is primed iff `'` is shown.
pub fn utm_transition(st: UtmState, sym: UtmSymbol, choice: Choice) -> Result<UtmTransition, UtmError> {
    let row = UtmState::MACHINE
        .iter()
        .position(|&s| s == st)
        .ok_or(UtmError::Halted)?;
    let cell = TABLE[row][sym.column()];
    match cell {
        "--" => return Err(UtmError::UnreachableEntry(st, sym.to_char())),
        "=" => {
            return Ok(UtmTransition {
                state: UtmState::Halt,
                write: sym,
            })
        }
        _ => {}
    }
    let cell = match (cell, choice) {
        ("A/B", Choice::A) => "A",
        ("A/B", Choice::B) => "B",
        (c, _) => c,
    };
    let mut state = st;
    let mut base = sym.unprimed();
    let mut primed = false;
    for ch in cell.chars() {
        match ch {
            '\'' => primed = true,
            '0' => base = UtmSymbol::Zero,
            '1' => base = UtmSymbol::One,
            '*' => base = UtmSymbol::Star,
            c => state = UtmState::from_letter(c).expect("table letters are states"),
        }
    }
    Ok(UtmTransition {
        state,
        write: if primed { base.primed() } else { base },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    /// Positive: `0^k`, negative: `1^k`.
    pub offset: i64,
    pub dir: Dir,
    pub write: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramImage {
    /// Non-halting states of M in encoding order.
    pub states: Vec<StateId>,
    /// Boot segment first, then one per command.
    pub segments: Vec<Segment>,
    pub mode: HaltMode,
}

/// A decoded command; `next = None` means M halts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodedRule {
    pub next: Option<StateId>,
    pub write: bool,
    pub dir: Dir,
}

fn dir_digit(d: Dir) -> UtmSymbol {
    match d {
        Dir::L => UtmSymbol::Zero,
        Dir::R => UtmSymbol::One,
    }
}

impl ProgramImage {
    fn k(&self) -> usize {
        self.states.len()
    }

    /// Segment index of the command for dense state `s` reading `b`.
    pub fn slot(&self, s: usize, b: bool) -> usize {
        2 * (self.k() - 1 - s) + (1 - b as usize) + 1
    }

    fn decode_target(&self, target: i64) -> Option<usize> {
        if target < 1 {
            return None;
        }
        let i = (target - 1) as usize;
        (i % 2 == 1 && i / 2 < self.k()).then(|| self.k() - 1 - i / 2)
    }

    /// Recovers the command table; fails if any pointer is dangling.
    pub fn decode(&self) -> Result<Vec<(StateId, bool, DecodedRule)>, UtmError> {
        let mut out = Vec::new();
        for (dense, &s) in self.states.iter().enumerate() {
            for b in [false, true] {
                let p = self.slot(dense, b);
                let seg = self.segments[p];
                let target = p as i64 + seg.offset;
                let next = if target < 0 {
                    None
                } else {
                    Some(self.states[self.decode_target(target).ok_or(UtmError::BadOffset(p))?])
                };
                out.push((s, b, DecodedRule { next, write: seg.write, dir: seg.dir }));
            }
        }
        Ok(out)
    }

    /// The image as U's tape, ending with the separator before M's tape.
    pub fn tape(&self) -> Vec<UtmSymbol> {
        let mut t = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            let digit = UtmSymbol::bit(seg.offset < 0);
            let run = std::iter::repeat_n(digit, seg.offset.unsigned_abs() as usize);
            if i == 0 {
                t.push(UtmSymbol::StarP);
                t.extend(run.map(UtmSymbol::primed));
            } else {
                t.push(UtmSymbol::Star);
                t.extend(run);
            }
            t.push(dir_digit(seg.dir));
            t.push(UtmSymbol::bit(seg.write));
        }
        t.push(UtmSymbol::Star);
        t
    }
}

pub fn encode_program(tm: &BinaryTM) -> Result<ProgramImage, UtmError> {
    let states: Vec<StateId> = (0..tm.state_count()).filter(|&s| !tm.is_halt_state(s)).collect();
    if states.is_empty() {
        return Err(UtmError::NoCommands);
    }
    let dense = |s: StateId| states.iter().position(|&q| q == s);
    let k = states.len();
    let mut img = ProgramImage {
        states: states.clone(),
        segments: vec![Segment { offset: 0, dir: Dir::L, write: false }; 2 * k + 1],
        mode: tm.mode(),
    };
    let offset_from = |img: &ProgramImage, p: usize, next: StateId| -> i64 {
        match dense(next) {
            Some(d) => img.slot(d, false) as i64 - p as i64,
            None => -(p as i64 + 1),
        }
    };
    img.segments[0].offset = offset_from(&img, 0, tm.start());
    for (d, &s) in states.iter().enumerate() {
        for b in [false, true] {
            let rule = tm.rule(s, b).expect("non-halt states have total rules");
            let p = img.slot(d, b);
            img.segments[p] = Segment {
                offset: offset_from(&img, p, rule.next),
                dir: rule.dir,
                write: rule.write,
            };
        }
    }
    img.decode()?;
    Ok(img)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtmTape {
    pub symbols: Vec<UtmSymbol>,
    pub head: isize,
    pub state: UtmState,
}

impl fmt::Display for UtmTape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i as isize == self.head {
                write!(f, "[{}]", self.state)?;
            }
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UtmHalt {
    /// U's head left its tape: the simulated command pointed at a halt state.
    RolledOff,
    /// M's head left cell 0.
    SimulatedLeftRollOff,
    /// M moved past the right end of its input.
    SimulatedRightRollOff,
    /// A `=` table entry.
    Table,
}

/// The simulated tape at a cycle boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub cells: Vec<bool>,
    pub head: isize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleEvent {
    Cycle(Snapshot),
    Halted(UtmHalt),
}

/// Steps U cycle by cycle.
#[derive(Debug, Clone)]
pub struct UtmRunner {
    pub tape: UtmTape,
    base: usize,
    input_len: usize,
    mode: HaltMode,
    choice: Choice,
    halted: Option<UtmHalt>,
    reported: bool,
    pub steps: u64,
}

impl UtmRunner {
    pub fn new(prog: &ProgramImage, input: &[bool], choice: Choice) -> Self {
        let mut symbols = prog.tape();
        let base = symbols.len();
        symbols.extend(input.iter().map(|&b| UtmSymbol::bit(b)));
        if input.is_empty() {
            symbols.push(UtmSymbol::Zero);
        }
        UtmRunner {
            tape: UtmTape { symbols, head: base as isize, state: UtmState::F },
            base,
            input_len: input.len(),
            mode: prog.mode,
            choice,
            halted: None,
            reported: false,
            steps: 0,
        }
    }

    pub fn halted(&self) -> Option<UtmHalt> {
        self.halted
    }

    fn at_boundary(&self) -> bool {
        let h = self.tape.head;
        matches!(self.tape.state, UtmState::F | UtmState::LowF)
            && h >= self.base as isize
            && matches!(self.tape.symbols[h as usize], UtmSymbol::Zero | UtmSymbol::One)
    }

    /// The simulated region decoded as bits.
    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            cells: self.tape.symbols[self.base..]
                .iter()
                .map(|s| s.unprimed() == UtmSymbol::One)
                .collect(),
            head: self.tape.head - self.base as isize,
        }
    }

    fn halt(&mut self, why: UtmHalt) -> CycleEvent {
        self.halted = Some(why);
        CycleEvent::Halted(why)
    }

    /// Runs to the next cycle boundary. The first call reports the initial configuration.
    pub fn next_cycle(&mut self, step_budget: u64) -> Result<CycleEvent, UtmError> {
        if let Some(h) = self.halted {
            return Ok(CycleEvent::Halted(h));
        }
        let mut taken = 0u64;
        loop {
            if !self.reported && self.at_boundary() {
                self.reported = true;
                let snap = self.snapshot();
                if self.mode == HaltMode::RightRollOff && snap.head as usize >= self.input_len {
                    return Ok(self.halt(UtmHalt::SimulatedRightRollOff));
                }
                return Ok(CycleEvent::Cycle(snap));
            }
            if self.tape.state == UtmState::LowF && self.tape.head == self.base as isize - 1 {
                return Ok(self.halt(UtmHalt::SimulatedLeftRollOff));
            }
            if taken >= step_budget {
                return Err(UtmError::CycleBudget(step_budget));
            }
            let h = self.tape.head as usize;
            let tr = utm_transition(self.tape.state, self.tape.symbols[h], self.choice)?;
            self.tape.symbols[h] = tr.write;
            self.steps += 1;
            taken += 1;
            self.reported = false;
            self.tape.state = tr.state;
            match tr.state.facing() {
                None => return Ok(self.halt(UtmHalt::Table)),
                Some(Dir::L) => self.tape.head -= 1,
                Some(Dir::R) => self.tape.head += 1,
            }
            if self.tape.head < 0 {
                self.tape.head = -1;
                return Ok(self.halt(UtmHalt::RolledOff));
            }
            if self.tape.head as usize == self.tape.symbols.len() {
                self.tape.symbols.push(UtmSymbol::Zero);
            }
        }
    }

    /// Next cycle with a budget scaled to the tape size. Simulated roll-offs
    /// also yield the final simulated tape.
    pub fn advance(&mut self) -> Result<(Option<Snapshot>, Option<UtmHalt>), UtmError> {
        let n = self.tape.symbols.len() as u64 + 16;
        Ok(match self.next_cycle(64 * n * n)? {
            CycleEvent::Cycle(s) => (Some(s), None),
            CycleEvent::Halted(h @ (UtmHalt::SimulatedLeftRollOff | UtmHalt::SimulatedRightRollOff)) => {
                (Some(self.snapshot()), Some(h))
            }
            CycleEvent::Halted(h) => (None, Some(h)),
        })
    }
}
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtmRun {
    pub tape: UtmTape,
    pub cycles: u64,
    pub halt: Option<UtmHalt>,
    pub snapshots: Vec<Snapshot>,
}

/// Runs U until it halts or `cycle_limit` cycles complete.
pub fn utm_run(prog: &ProgramImage, input: &[bool], cycle_limit: u64) -> Result<UtmRun, UtmError> {
    utm_run_with(prog, input, cycle_limit, Choice::A)
}

pub fn utm_run_with(
    prog: &ProgramImage,
    input: &[bool],
    cycle_limit: u64,
    choice: Choice,
) -> Result<UtmRun, UtmError> {
    let mut r = UtmRunner::new(prog, input, choice);
    let mut snapshots = Vec::new();
    while snapshots.len() as u64 <= cycle_limit {
        let (snap, halt) = r.advance()?;
        snapshots.extend(snap);
        if halt.is_some() {
            let cycles = snapshots.len().saturating_sub(1) as u64;
            return Ok(UtmRun { tape: r.tape, cycles, halt, snapshots });
        }
    }
    Ok(UtmRun {
        tape: r.tape,
        cycles: cycle_limit,
        halt: None,
        snapshots,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Correspondence {
    Exact { cycles: u64, halted: bool },
    Divergence { cycle: u64, expected: Snapshot, found: Option<Snapshot> },
    HaltMismatch { cycle: u64, machine_halted: bool },
}

fn normalize(cells: &[bool]) -> &[bool] {
    let end = cells.iter().rposition(|&b| b).map_or(0, |i| i + 1);
    &cells[..end]
}

fn same(a: &Snapshot, b: &Snapshot) -> bool {
    a.head == b.head && normalize(&a.cells) == normalize(&b.cells)
}

fn as_snapshot(cfg: &TapeState) -> Snapshot {
    Snapshot { cells: cfg.cells.clone(), head: cfg.head }
}

/// Runs M directly and through U side by side for `n_cycles` cycles.
pub fn cycle_correspondence(tm: &BinaryTM, input: &[bool], n_cycles: u64) -> Result<Correspondence, UtmError> {
    let prog = encode_program(tm)?;
    cycle_correspondence_image(tm, &prog, input, n_cycles)
}

/// As [`cycle_correspondence`] but against a given (possibly altered) image.
pub fn cycle_correspondence_image(
    tm: &BinaryTM,
    prog: &ProgramImage,
    input: &[bool],
    n_cycles: u64,
) -> Result<Correspondence, UtmError> {
    let mut runner = UtmRunner::new(prog, input, Choice::A);
    let mut cfg = tm.initial(input);
    for c in 0..=n_cycles {
        let expected = as_snapshot(&cfg);
        let (found, halt) = match runner.advance() {
            Ok(x) => x,
            Err(UtmError::UnreachableEntry(..) | UtmError::CycleBudget(_)) => (None, None),
            Err(e) => return Err(e),
        };
        match &found {
            Some(f) if same(f, &expected) => {}
            _ => return Ok(Correspondence::Divergence { cycle: c, expected, found }),
        }
        let m_halted = tm.is_halted(&cfg);
        let u_halted = halt.is_some() || peek_halt(&runner);
        if m_halted != u_halted {
            return Ok(Correspondence::HaltMismatch { cycle: c, machine_halted: m_halted });
        }
        if m_halted {
            return Ok(Correspondence::Exact { cycles: c, halted: true });
        }
        if c == n_cycles {
            break;
        }
        cfg = crate::machine::tm_step(tm, &cfg).expect("not halted");
    }
    Ok(Correspondence::Exact { cycles: n_cycles, halted: false })
}

/// Whether U stops during the navigation that follows the current boundary.
fn peek_halt(r: &UtmRunner) -> bool {
    let mut probe = r.clone();
    matches!(probe.advance(), Ok((_, Some(UtmHalt::RolledOff | UtmHalt::Table))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{bits, samples, tm_run, RunLimits};

    #[test]
    fn table_examples() {
        let t = utm_transition(UtmState::A, UtmSymbol::Star, Choice::A).unwrap();
        assert_eq!((t.state, t.write), (UtmState::LowE, UtmSymbol::Zero));
        let t = utm_transition(UtmState::LowF, UtmSymbol::One, Choice::A).unwrap();
        assert_eq!((t.state, t.write), (UtmState::LowB, UtmSymbol::Star));
        let t = utm_transition(UtmState::E, UtmSymbol::One, Choice::A).unwrap();
        assert_eq!(t.state, UtmState::Halt);
        assert_eq!(
            utm_transition(UtmState::D, UtmSymbol::Zero, Choice::A),
            Err(UtmError::UnreachableEntry(UtmState::D, '0'))
        );
    }

    #[test]
    fn prime_toggle_is_involution() {
        for s in UtmSymbol::ALL {
            assert_eq!(s.toggled().toggled(), s);
            assert_ne!(s.toggled(), s);
            assert_eq!(UtmSymbol::from_char(s.to_char()), Some(s));
        }
    }

    #[test]
    fn halt_left_encodes_two_left_segments() {
        let img = encode_program(&samples::halt_left()).unwrap();
        assert_eq!(img.segments.len(), 3);
        assert!(img.segments[1..].iter().all(|s| s.dir == Dir::L));
    }

    #[test]
    fn decode_round_trip() {
        let tm = samples::increment();
        let img = encode_program(&tm).unwrap();
        let dec = img.decode().unwrap();
        for (s, b, r) in dec {
            let orig = tm.rule(s, b).unwrap();
            assert_eq!(r.next, Some(orig.next));
            assert_eq!((r.write, r.dir), (orig.write, orig.dir));
        }
    }

    #[test]
    fn flip_all_exact() {
        let tm = samples::flip_all();
        let rep = cycle_correspondence(&tm, &bits("101"), 3).unwrap();
        assert_eq!(rep, Correspondence::Exact { cycles: 3, halted: true });
    }

    #[test]
    fn zero_cycles_leave_tape() {
        let img = encode_program(&samples::increment()).unwrap();
        let run = utm_run(&img, &bits("11"), 0).unwrap();
        assert_eq!(run.snapshots.len(), 1);
        assert_eq!(run.tape.symbols[..img.tape().len()], img.tape()[..]);
        assert_eq!(run.snapshots[0].cells, bits("11"));
    }

    #[test]
    fn halting_cycle_counts_match() {
        for (tm, x) in [
            (samples::increment(), bits("1101")),
            (samples::out_and_back(3), bits("")),
            (samples::seek_zero(), bits("1110")),
            (samples::halt_left(), bits("0")),
        ] {
            let direct = tm_run(&tm, &x, RunLimits::steps(100));
            assert!(direct.halted);
            let run = utm_run(&encode_program(&tm).unwrap(), &x, 100).unwrap();
            assert!(run.halt.is_some());
            assert_eq!(run.cycles, direct.meters.steps);
        }
    }

    #[test]
    fn non_halting_runs_to_limit() {
        let img = encode_program(&samples::write_one_right()).unwrap();
        let run = utm_run(&img, &bits("0"), 7).unwrap();
        assert_eq!(run.halt, None);
        assert_eq!(run.cycles, 7);
    }
}
