//! The Halting Game: L claims that M rolls off the left end within
//! `2^|x|` steps and defends the claim one space-time cell at a time.
//!
//! A cell of the space-time table holds a bit and either no head, the head
//! in some state, or the mark that the head rolled off (only at cell 0).
//! At `(p, t, A)` L must name the three cells `B` above `A` (at time `t`,
//! positions `p-1, p, p+1`) so that they determine `A`; S then picks one of
//! them to challenge. At `t = 1` the named cells must match the input.

use super::{Game, GameError};
use crate::machine::{BinaryTM, Dir, HaltMode, StateId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Head {
    None,
    At(StateId),
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HCell {
    /// Left of cell 0.
    Edge,
    Cell { bit: bool, head: Head },
}

impl HCell {
    fn has_head(self) -> bool {
        matches!(self, HCell::Cell { head: Head::At(_) | Head::Off, .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// The head has rolled off by now, whatever the bit.
    Halted,
    Exact(HCell),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HgPos {
    L { p: usize, t: u32, a: Claim },
    S { p: usize, t: u32, b: [HCell; 3] },
}

#[derive(Debug, Clone)]
pub struct HaltingGame {
    tm: BinaryTM,
    input: Vec<bool>,
    cells: Vec<HCell>,
}

pub fn halting_game(tm: &BinaryTM, x: &[bool]) -> Result<HaltingGame, GameError> {
    if tm.mode() != HaltMode::LeftRollOff {
        return Err(GameError::NotRollOff);
    }
    if x.len() > 4 {
        return Err(GameError::InputTooLong);
    }
    let mut cells = Vec::new();
    for bit in [false, true] {
        cells.push(HCell::Cell { bit, head: Head::None });
        cells.push(HCell::Cell { bit, head: Head::Off });
        for q in 0..tm.state_count() {
            cells.push(HCell::Cell { bit, head: Head::At(q) });
        }
    }
    Ok(HaltingGame { tm: tm.clone(), input: x.to_vec(), cells })
}

impl HaltingGame {
    pub fn horizon(&self) -> u32 {
        1 << self.input.len()
    }

    pub fn start(&self) -> HgPos {
        HgPos::L { p: 0, t: self.horizon(), a: Claim::Halted }
    }

    /// Cell `i` of the initial configuration.
    fn initial(&self, i: isize) -> HCell {
        if i < 0 {
            return HCell::Edge;
        }
        let i = i as usize;
        let bit = self.input.get(i).copied().unwrap_or(false);
        let head = if i == 0 { Head::At(self.tm.start()) } else { Head::None };
        HCell::Cell { bit, head }
    }

    /// The cell at position `p`, one step after the window `b`.
    pub fn next(&self, p: usize, b: [HCell; 3]) -> Option<HCell> {
        let HCell::Cell { bit, head } = b[1] else { return None };
        let arriving = |c: HCell, from: Dir| match c {
            HCell::Cell { bit, head: Head::At(q) } => {
                let r = self.tm.rule(q, bit)?;
                let toward = match from {
                    Dir::L => Dir::R,
                    Dir::R => Dir::L,
                };
                (r.dir == toward).then_some(r.next)
            }
            _ => None,
        };
        Some(match head {
            Head::Off => b[1],
            Head::At(q) => {
                let r = self.tm.rule(q, bit)?;
                let head = if r.dir == Dir::L && p == 0 { Head::Off } else { Head::None };
                HCell::Cell { bit: r.write, head }
            }
            Head::None => {
                let head = arriving(b[0], Dir::L)
                    .or_else(|| arriving(b[2], Dir::R))
                    .map_or(Head::None, Head::At);
                HCell::Cell { bit, head }
            }
        })
    }

    fn legal(&self, p: usize, t: u32, a: Claim, b: [HCell; 3]) -> bool {
        if b.iter().filter(|c| c.has_head()).count() > 1 {
            return false;
        }
        for (s, c) in b.iter().enumerate() {
            let pos = p as isize + s as isize - 1;
            let off = matches!(c, HCell::Cell { head: Head::Off, .. });
            if off && pos != 0 || (*c == HCell::Edge) != (pos < 0) {
                return false;
            }
        }
        let fits = match (self.next(p, b), a) {
            (Some(HCell::Cell { head: Head::Off, .. }), Claim::Halted) => true,
            (Some(c), Claim::Exact(want)) => c == want,
            _ => false,
        };
        fits && (t != 1 || (0..3).all(|s| b[s] == self.initial(p as isize + s as isize - 1)))
    }
}

impl Game for HaltingGame {
    type Pos = HgPos;

    fn active(&self, x: &HgPos) -> i8 {
        match x {
            HgPos::L { .. } => 1,
            HgPos::S { .. } => -1,
        }
    }

    fn moves(&self, x: &HgPos) -> Vec<HgPos> {
        match *x {
            HgPos::L { p, t, a } => {
                let left: Vec<HCell> = if p == 0 { vec![HCell::Edge] } else { self.cells.clone() };
                let mut out = Vec::new();
                for &l in &left {
                    for &m in &self.cells {
                        for &r in &self.cells {
                            let b = [l, m, r];
                            if self.legal(p, t, a, b) {
                                out.push(HgPos::S { p, t, b });
                            }
                        }
                    }
                }
                out
            }
            HgPos::S { t: 1, .. } => Vec::new(),
            HgPos::S { p, t, b } => (0..3)
                .filter(|&s| p + s >= 1)
                .map(|s| HgPos::L { p: p + s - 1, t: t - 1, a: Claim::Exact(b[s]) })
                .collect(),
        }
    }

    fn key(&self, x: &HgPos) -> i64 {
        let code = |c: &HCell| match c {
            HCell::Edge => 0i64,
            HCell::Cell { bit, head } => {
                let h = match head {
                    Head::None => 0,
                    Head::Off => 1,
                    Head::At(q) => 2 + *q as i64,
                };
                1 + (*bit as i64) + 2 * h
            }
        };
        let base = 2 * (self.tm.state_count() as i64 + 3);
        match x {
            HgPos::L { p, t, a } => {
                let a = match a {
                    Claim::Halted => 0,
                    Claim::Exact(c) => 1 + code(c),
                };
                1 + ((*p as i64 * 64 + *t as i64) * base + a) * 2
            }
            HgPos::S { p, t, b } => {
                let mut k = *p as i64 * 64 + *t as i64;
                for c in b {
                    k = k * base + code(c);
                }
                -(2 + k * 2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{solve_dfs, solve_retrograde};
    use super::*;
    use crate::machine::{bits, bounded_halt, samples};

    fn value(tm: &BinaryTM, x: &[bool]) -> i8 {
        let g = halting_game(tm, x).unwrap();
        let s = g.start();
        solve_retrograde(&g, &[s], 1_000_000).unwrap().get(&s).unwrap()
    }

    #[test]
    fn halting_machine_l_wins() {
        let tm = samples::halt_left();
        assert_eq!(value(&tm, &bits("1")), 1);
        assert_eq!(value(&samples::out_and_back(1), &bits("10")), 1);
    }

    #[test]
    fn looping_machine_s_wins() {
        assert_eq!(value(&samples::write_one_right(), &bits("01")), -1);
    }

    #[test]
    fn truthful_first_row_is_legal() {
        let tm = samples::halt_left();
        let g = halting_game(&tm, &bits("1")).unwrap();
        let b = [HCell::Edge, g.initial(0), g.initial(1)];
        let a = g.next(0, b).unwrap();
        assert!(g.legal(0, 1, Claim::Exact(a), b));
        assert!(g.moves(&HgPos::S { p: 0, t: 1, b }).is_empty());
    }

    #[test]
    fn agrees_with_bounded_halt_and_dfs() {
        for tm in [samples::increment(), samples::out_and_back(2), samples::halt_left()] {
            for x in ["", "0", "1", "11", "01"] {
                let x = bits(x);
                let v = value(&tm, &x);
                assert_eq!(v == 1, bounded_halt(&tm, &x, 1 << x.len()), "{x:?}");
                let g = halting_game(&tm, &x).unwrap();
                assert_eq!(solve_dfs(&g, &g.start(), 64).unwrap(), v);
            }
        }
    }
}
