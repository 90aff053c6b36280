//! One-dimensional cellular automata, the Game of Life, and a linear-depth
//! `ww` recognizer built as a CA.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CaError {
    #[error("symbol {0:?} is not in the alphabet")]
    SymbolOutOfAlphabet(char),
    #[error("no rule for neighbourhood {0:?}")]
    MissingRule(String),
    #[error("quiescent symbol {0:?} must map to itself")]
    NotQuiescent(char),
    #[error("row is empty")]
    EmptyRow,
    #[error("grid dimensions must be positive")]
    EmptyGrid,
}

/// A radius-1 neighbourhood rule. Cells beyond the row read as [`LocalRule::border`].
pub trait LocalRule {
    type Cell: Clone + PartialEq;

    fn border(&self) -> Self::Cell;

    fn apply(&self, left: &Self::Cell, me: &Self::Cell, right: &Self::Cell) -> Self::Cell;
}

/// One synchronous update of a finite row.
pub fn evolve<R: LocalRule>(rule: &R, row: &[R::Cell]) -> Vec<R::Cell> {
    let edge = rule.border();
    (0..row.len())
        .map(|i| {
            let l = if i == 0 { &edge } else { &row[i - 1] };
            let r = row.get(i + 1).unwrap_or(&edge);
            rule.apply(l, &row[i], r)
        })
        .collect()
}

/// A table-driven CA over single-character symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ca1d {
    alphabet: BTreeSet<char>,
    quiescent: char,
    rule: HashMap<[char; 3], char>,
}

impl Ca1d {
    pub fn new(
        alphabet: impl IntoIterator<Item = char>,
        quiescent: char,
        rules: impl IntoIterator<Item = ([char; 3], char)>,
    ) -> Result<Self, CaError> {
        let alphabet: BTreeSet<char> = alphabet.into_iter().collect();
        let known = |c: char| {
            if alphabet.contains(&c) {
                Ok(c)
            } else {
                Err(CaError::SymbolOutOfAlphabet(c))
            }
        };
        known(quiescent)?;
        let mut rule = HashMap::new();
        for (k, v) in rules {
            for c in k {
                known(c)?;
            }
            rule.insert(k, known(v)?);
        }
        for &a in &alphabet {
            for &b in &alphabet {
                for &c in &alphabet {
                    if !rule.contains_key(&[a, b, c]) {
                        return Err(CaError::MissingRule([a, b, c].iter().collect()));
                    }
                }
            }
        }
        if rule[&[quiescent; 3]] != quiescent {
            return Err(CaError::NotQuiescent(quiescent));
        }
        Ok(Ca1d { alphabet, quiescent, rule })
    }

    /// Builds a total table from a function on neighbourhoods.
    pub fn from_fn(alphabet: &[char], quiescent: char, f: impl Fn(char, char, char) -> char) -> Result<Self, CaError> {
        let mut rules = Vec::new();
        for &a in alphabet {
            for &b in alphabet {
                for &c in alphabet {
                    rules.push(([a, b, c], f(a, b, c)));
                }
            }
        }
        Ca1d::new(alphabet.iter().copied(), quiescent, rules)
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn quiescent(&self) -> char {
        self.quiescent
    }
}

impl LocalRule for Ca1d {
    type Cell = char;

    fn border(&self) -> char {
        self.quiescent
    }

    fn apply(&self, l: &char, s: &char, r: &char) -> char {
        self.rule[&[*l, *s, *r]]
    }
}

/// All rows from the input through `steps` updates.
pub fn ca_run(ca: &Ca1d, row: &str, steps: usize) -> Result<Vec<String>, CaError> {
    let mut cur: Vec<char> = row.chars().collect();
    if cur.is_empty() {
        return Err(CaError::EmptyRow);
    }
    if let Some(&bad) = cur.iter().find(|c| !ca.alphabet.contains(c)) {
        return Err(CaError::SymbolOutOfAlphabet(bad));
    }
    let mut out = vec![row.to_string()];
    for _ in 0..steps {
        cur = evolve(ca, &cur);
        out.push(cur.iter().collect());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Boundary {
    #[default]
    Torus,
    DeadEdge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LifeGrid {
    width: usize,
    height: usize,
    cells: Vec<bool>,
    pub boundary: Boundary,
}

impl LifeGrid {
    pub fn new(width: usize, height: usize, boundary: Boundary) -> Result<Self, CaError> {
        if width == 0 || height == 0 {
            return Err(CaError::EmptyGrid);
        }
        Ok(LifeGrid { width, height, cells: vec![false; width * height], boundary })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, alive: bool) {
        self.cells[y * self.width + x] = alive;
    }

    pub fn population(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    fn neighbour(&self, x: usize, y: usize, dx: isize, dy: isize) -> bool {
        let (w, h) = (self.width as isize, self.height as isize);
        let (nx, ny) = (x as isize + dx, y as isize + dy);
        match self.boundary {
            Boundary::Torus => self.get(nx.rem_euclid(w) as usize, ny.rem_euclid(h) as usize),
            Boundary::DeadEdge => {
                (0..w).contains(&nx) && (0..h).contains(&ny) && self.get(nx as usize, ny as usize)
            }
        }
    }

    /// The grid shifted by `(dx, dy)` with wrap-around.
    pub fn translated(&self, dx: usize, dy: usize) -> Self {
        let mut g = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                g.set((x + dx) % self.width, (y + dy) % self.height, self.get(x, y));
            }
        }
        g
    }
}

impl fmt::Display for LifeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in 0..self.height {
            let row: String = (0..self.width).map(|x| if self.get(x, y) { 'O' } else { '.' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

pub fn life_step(g: &LifeGrid) -> LifeGrid {
    let mut next = g.clone();
    for y in 0..g.height {
        for x in 0..g.width {
            let mut i = 0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if (dx, dy) != (0, 0) && g.neighbour(x, y, dx, dy) {
                        i += 1;
                    }
                }
            }
            next.set(x, y, i == 3 || (i == 2 && g.get(x, y)));
        }
    }
    next
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CopyField {
    letter: bool,
    released: bool,
    settled: bool,
    ok: bool,
    first: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Fast {
    returning: bool,
    /// Position parity of the cell the signal sits on.
    parity: bool,
}

/// Cell of the `ww` CA. `input` is the `i` field and `copy` the `c` field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WwCell {
    border: bool,
    input: bool,
    copy: Option<CopyField>,
    fast: Option<Fast>,
    slow: Option<u8>,
    verdict: Option<bool>,
}

/// Two signals leave the left end: one at speed 1 that bounces off the
/// right end, one at speed 1/3 that copies `i` into `c` as it goes. They
/// meet at the middle, after which the copies drift right, pack against
/// the right end and compare with the right half.
#[derive(Debug, Clone, Copy, Default)]
pub struct WwRule;

fn moves(cell: &WwCell, right: &WwCell) -> bool {
    matches!(cell.copy, Some(c) if c.released && !c.settled) && !right.border && right.copy.is_none()
}

impl LocalRule for WwRule {
    type Cell = WwCell;

    fn border(&self) -> WwCell {
        WwCell { border: true, ..WwCell::default() }
    }

    fn apply(&self, l: &WwCell, s: &WwCell, r: &WwCell) -> WwCell {
        if s.border {
            return *s;
        }
        let mut n = *s;
        if let Some(v) = l.verdict.or(s.verdict).or(r.verdict) {
            n.verdict = Some(v);
            return n;
        }
        let meeting = s.slow.is_some() && matches!(r.fast, Some(f) if f.returning);

        n.fast = None;
        if let Some(f) = s.fast {
            if f.returning && r.border && !f.parity {
                n.verdict = Some(false);
                return n;
            }
        }
        if let Some(f) = l.fast.filter(|f| !f.returning) {
            n.fast = Some(Fast { returning: r.border, parity: !f.parity });
        }
        if let Some(f) = r.fast.filter(|f| f.returning) {
            if s.slow.is_none() {
                n.fast = Some(Fast { returning: true, parity: !f.parity });
            }
        }

        n.slow = match s.slow {
            Some(_) if meeting => None,
            Some(p) if p < 2 => Some(p + 1),
            _ => None,
        };
        let arrived = l.slow == Some(2) && !matches!(s.fast, Some(f) if f.returning);
        if arrived {
            n.slow = Some(0);
        }

        let mut copy = if moves(s, r) { None } else { s.copy };
        if moves(l, s) {
            copy = l.copy;
        } else if arrived {
            copy = Some(CopyField { letter: s.input, released: false, settled: false, ok: false, first: false });
        }
        if let Some(c) = copy.as_mut().filter(|_| !moves(s, r) && s.copy.is_some()) {
            if meeting || matches!(r.copy, Some(rc) if rc.released) {
                c.released = true;
            }
            if c.released && !c.settled {
                let right_settled = matches!(r.copy, Some(rc) if rc.settled);
                if r.border || right_settled {
                    c.settled = true;
                    c.ok = c.letter == s.input && (r.border || r.copy.is_some_and(|rc| rc.ok));
                    if !c.ok {
                        n.verdict = Some(false);
                    } else if c.first {
                        n.verdict = Some(true);
                    }
                }
            }
        }
        n.copy = copy;
        n
    }
}

fn ww_initial(word: &[bool]) -> Vec<WwCell> {
    word.iter()
        .enumerate()
        .map(|(i, &input)| {
            let mut c = WwCell { input, ..WwCell::default() };
            if i == 0 {
                c.fast = Some(Fast { returning: word.len() == 1, parity: false });
                c.slow = Some(0);
                c.copy = Some(CopyField { letter: input, released: false, settled: false, ok: false, first: true });
            }
            c
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaVerdict {
    pub accept: bool,
    pub depth: u64,
}

/// Runs the `ww` CA on a word over `{a,b}` until some cell shows a verdict.
pub fn ww_ca_recognizer(word: &str) -> Option<CaVerdict> {
    let bits: Vec<bool> = word
        .chars()
        .map(|c| match c {
            'a' => Some(false),
            'b' => Some(true),
            _ => None,
        })
        .collect::<Option<_>>()?;
    if bits.is_empty() {
        return Some(CaVerdict { accept: true, depth: 0 });
    }
    let mut row = ww_initial(&bits);
    let limit = 8 * bits.len() as u64 + 16;
    for depth in 1..=limit {
        row = evolve(&WwRule, &row);
        if let Some(v) = row.iter().find_map(|c| c.verdict) {
            return Some(CaVerdict { accept: v, depth });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::is_ww;

    fn grid(rows: &[&str], boundary: Boundary) -> LifeGrid {
        let mut g = LifeGrid::new(rows[0].len(), rows.len(), boundary).unwrap();
        for (y, row) in rows.iter().enumerate() {
            for (x, ch) in row.chars().enumerate() {
                g.set(x, y, ch == 'O');
            }
        }
        g
    }

    #[test]
    fn block_is_still() {
        let g = grid(&["....", ".OO.", ".OO.", "...."], Boundary::DeadEdge);
        assert_eq!(life_step(&g), g);
        let e = LifeGrid::new(5, 5, Boundary::Torus).unwrap();
        assert_eq!(life_step(&e), e);
    }

    #[test]
    fn blinker_period_two() {
        let v = grid(&[".....", "..O..", "..O..", "..O..", "....."], Boundary::Torus);
        let h = grid(&[".....", ".....", ".OOO.", ".....", "....."], Boundary::Torus);
        assert_eq!(life_step(&v), h);
        assert_eq!(life_step(&h), v);
    }

    #[test]
    fn shift_and_identity() {
        let shift = Ca1d::from_fn(&['0', '1'], '0', |l, _, _| l).unwrap();
        assert_eq!(ca_run(&shift, "100", 2).unwrap(), ["100", "010", "001"]);
        let id = Ca1d::from_fn(&['0', '1'], '0', |_, s, _| s).unwrap();
        assert_eq!(ca_run(&id, "101", 3).unwrap(), ["101"; 4]);
        assert_eq!(ca_run(&id, "000", 2).unwrap(), ["000"; 3]);
        assert_eq!(ca_run(&id, "102", 1), Err(CaError::SymbolOutOfAlphabet('2')));
    }

    #[test]
    fn ww_examples() {
        assert!(ww_ca_recognizer("aabbaabb").unwrap().accept);
        assert!(!ww_ca_recognizer("ab").unwrap().accept);
        assert!(ww_ca_recognizer("aa").unwrap().accept);
        assert!(!ww_ca_recognizer("aab").unwrap().accept);
    }

    #[test]
    fn ww_small_exhaustive() {
        for n in 1..=10 {
            for m in 0..1u32 << n {
                let w: String = (0..n).map(|i| if m >> i & 1 == 1 { 'b' } else { 'a' }).collect();
                let v = ww_ca_recognizer(&w).unwrap_or_else(|| panic!("no verdict on {w}"));
                assert_eq!(v.accept, is_ww(&w), "{w}");
            }
        }
    }
}
