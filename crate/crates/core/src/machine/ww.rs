//! The `ww` recognizer, authored over `{_, a, b, A, B}` and compiled to bits.
//!
//! Cells take three bits: blank `000`, `a` `100`, `b` `101`, `A` `110`, `B` `111`.
//! The machine first shifts the input one cell right so that a blank marks
//! the left end, then capitalizes both ends alternately to find the middle,
//! lowers the right half back and finally compares the halves letter by
//! letter, lowering compared left letters and erasing compared right ones.

use std::collections::HashMap;

use super::{BinaryTM, Dir, HaltMode, Rule, RunLimits, StateId};

pub const WW_ACCEPT: StateId = 0;
pub const WW_REJECT: StateId = 1;

const BLANK: u8 = 0;
const LA: u8 = 1;
const LB: u8 = 2;
const UA: u8 = 3;
const UB: u8 = 4;

fn code(sym: u8) -> [bool; 3] {
    match sym {
        BLANK => [false, false, false],
        LA => [true, false, false],
        LB => [true, false, true],
        UA => [true, true, false],
        UB => [true, true, true],
        _ => unreachable!(),
    }
}

fn decode(bits: [bool; 3]) -> Option<u8> {
    (0..5).find(|&s| code(s) == bits)
}

fn is_lower(s: u8) -> bool {
    s == LA || s == LB
}

fn is_upper(s: u8) -> bool {
    s == UA || s == UB
}

fn upper(s: u8) -> u8 {
    s + 2
}

fn lower(s: u8) -> u8 {
    s - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Macro {
    Start,
    Carry(u8),
    Back,
    CapLeft,
    ToRightEnd,
    CapRight,
    AfterCap,
    ScanLeft,
    LowerRight,
    Home,
    Find,
    Seek(u8),
    Return,
    Accept,
    Reject,
}

/// One macro step: `(write, dir, next)`.
fn delta(q: Macro, s: u8) -> (u8, Dir, Macro) {
    use Dir::{L, R};
    use Macro::*;
    match q {
        Start if s == BLANK => (s, R, Accept),
        Start => (BLANK, R, Carry(s)),
        Carry(c) if s == BLANK => (c, L, Back),
        Carry(c) => (c, R, Carry(s)),
        Back if s == BLANK => (s, R, CapLeft),
        Back => (s, L, Back),
        CapLeft if is_lower(s) => (upper(s), R, ToRightEnd),
        CapLeft => (s, R, Reject),
        ToRightEnd if is_lower(s) => (s, R, ToRightEnd),
        ToRightEnd => (s, L, CapRight),
        CapRight if is_lower(s) => (upper(s), L, AfterCap),
        CapRight => (s, R, Reject),
        AfterCap if is_upper(s) => (s, R, LowerRight),
        AfterCap => (s, L, ScanLeft),
        ScanLeft if is_lower(s) => (s, L, ScanLeft),
        ScanLeft => (s, R, CapLeft),
        LowerRight if is_upper(s) => (lower(s), R, LowerRight),
        LowerRight => (s, L, Home),
        Home if s == BLANK => (s, R, Find),
        Home => (s, L, Home),
        Find if is_lower(s) => (s, R, Find),
        Find if is_upper(s) => (lower(s), R, Seek(lower(s))),
        Find => (s, R, Accept),
        Seek(_) if !is_lower(s) => (s, R, q),
        Seek(c) if s == c => (BLANK, L, Return),
        Seek(_) => (s, R, Reject),
        Return if s == BLANK => (s, L, Return),
        Return => (s, L, Home),
        Accept | Reject => unreachable!("halt states have no moves"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Micro {
    Read(Macro, u8, u8),
    Write(Macro, [bool; 3], Dir, u8),
    Skip(Macro, Dir, u8),
}

struct Compiler {
    ids: HashMap<Micro, StateId>,
    queue: Vec<Micro>,
    rules: Vec<(StateId, bool, Rule)>,
}

impl Compiler {
    fn id(&mut self, m: Micro) -> StateId {
        if let Some(&id) = self.ids.get(&m) {
            return id;
        }
        let id = self.ids.len() + 2;
        self.ids.insert(m, id);
        self.queue.push(m);
        id
    }

    fn target(&mut self, q: Macro) -> StateId {
        match q {
            Macro::Accept => WW_ACCEPT,
            Macro::Reject => WW_REJECT,
            _ => self.id(Micro::Read(q, 0, 0)),
        }
    }

    fn emit(&mut self, m: Micro) {
        let from = self.ids[&m];
        for bit in [false, true] {
            let rule = match m {
                Micro::Read(q, n, acc) if n < 2 => Rule {
                    next: self.id(Micro::Read(q, n + 1, acc << 1 | bit as u8)),
                    write: bit,
                    dir: Dir::R,
                },
                Micro::Read(q, _, acc) => {
                    let raw = acc << 1 | bit as u8;
                    let bits = [raw & 4 != 0, raw & 2 != 0, raw & 1 != 0];
                    match decode(bits) {
                        None => Rule { next: WW_REJECT, write: bit, dir: Dir::R },
                        Some(sym) => {
                            let (w, d, nq) = delta(q, sym);
                            if matches!(nq, Macro::Accept | Macro::Reject) {
                                Rule { next: self.target(nq), write: bit, dir: Dir::R }
                            } else {
                                let wb = code(w);
                                Rule {
                                    next: self.id(Micro::Write(nq, wb, d, 1)),
                                    write: wb[2],
                                    dir: Dir::L,
                                }
                            }
                        }
                    }
                }
                Micro::Write(q, wb, d, 1) => Rule {
                    next: self.id(Micro::Write(q, wb, d, 0)),
                    write: wb[1],
                    dir: Dir::L,
                },
                Micro::Write(q, wb, d, _) => Rule {
                    next: self.id(Micro::Skip(q, d, 2)),
                    write: wb[0],
                    dir: d,
                },
                Micro::Skip(q, d, 2) => Rule {
                    next: self.id(Micro::Skip(q, d, 1)),
                    write: bit,
                    dir: d,
                },
                Micro::Skip(q, d, _) => Rule {
                    next: self.target(q),
                    write: bit,
                    dir: d,
                },
            };
            self.rules.push((from, bit, rule));
        }
    }
}

/// The compiled recognizer: halts in [`WW_ACCEPT`] or [`WW_REJECT`].
pub fn tm_ww_recognizer() -> BinaryTM {
    let mut c = Compiler {
        ids: HashMap::new(),
        queue: Vec::new(),
        rules: Vec::new(),
    };
    let start = c.target(Macro::Start);
    while let Some(m) = c.queue.pop() {
        c.emit(m);
    }
    let n = c.ids.len() + 2;
    BinaryTM::new(n, start, c.rules, [WW_ACCEPT, WW_REJECT], HaltMode::ExplicitHaltState)
        .expect("compiled recognizer is total")
}

/// Bit encoding of an `{a,b}` word; other characters are rejected.
pub fn ww_encode(word: &str) -> Option<Vec<bool>> {
    let mut out = Vec::with_capacity(3 * word.len());
    for ch in word.chars() {
        let sym = match ch {
            'a' => LA,
            'b' => LB,
            _ => return None,
        };
        out.extend(code(sym));
    }
    Some(out)
}

pub fn is_ww(word: &str) -> bool {
    let n = word.len();
    n.is_multiple_of(2) && word[..n / 2] == word[n / 2..]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WwVerdict {
    pub accept: bool,
    pub steps: u64,
}

/// Runs the compiled recognizer on an `{a,b}` word.
pub fn ww_decide(tm: &BinaryTM, word: &str) -> Option<WwVerdict> {
    let input = ww_encode(word)?;
    let n = word.len() as u64;
    let out = super::tm_run(tm, &input, RunLimits::steps(64 * (n + 2) * (n + 2)));
    out.halted.then_some(WwVerdict {
        accept: out.tape.state == WW_ACCEPT,
        steps: out.meters.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let tm = tm_ww_recognizer();
        assert!(ww_decide(&tm, "abab").unwrap().accept);
        assert!(!ww_decide(&tm, "abba").unwrap().accept);
        assert!(ww_decide(&tm, "").unwrap().accept);
        assert!(!ww_decide(&tm, "aba").unwrap().accept);
    }

    #[test]
    fn agrees_with_predicate_up_to_8() {
        let tm = tm_ww_recognizer();
        for n in 0..=8 {
            for m in 0..1u32 << n {
                let w: String = (0..n).map(|i| if m >> i & 1 == 1 { 'b' } else { 'a' }).collect();
                assert_eq!(ww_decide(&tm, &w).unwrap().accept, is_ww(&w), "{w}");
            }
        }
    }
}
