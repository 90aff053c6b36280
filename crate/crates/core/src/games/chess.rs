//! Linear Chess and its table-driven 1d-Chess variant.
//!
//! A piece is one byte: bit 7 is loyalty (0 = W, 1 = S), bit 6 gender,
//! bits 0..6 rank. W pieces fill the board left of all S pieces and only
//! the two pieces at the border fight.

use std::collections::{BTreeSet, HashMap};

use super::{Game, GameError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    W,
    S,
}

impl Side {
    pub fn of(piece: u8) -> Side {
        if piece & 0x80 == 0 {
            Side::W
        } else {
            Side::S
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Side::W => 1,
            Side::S => -1,
        }
    }
}

fn gender(piece: u8) -> bool {
    piece & 0x40 != 0
}

/// Same sex: W loses. Different sexes: S loses.
pub fn gender_winner(w: u8, s: u8) -> Side {
    if gender(w) == gender(s) {
        Side::S
    } else {
        Side::W
    }
}

/// Result of the fight between border pieces `(L, R)`. Each option is
/// `(winner's new piece, replacement for the loser)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FightOutcome {
    pub winner: Side,
    pub options: Vec<(u8, u8)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChessGame {
    table: HashMap<(u8, u8), FightOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChessPos {
    pub board: Vec<u8>,
    pub budget: u32,
}

impl ChessPos {
    pub fn new(board: Vec<u8>, budget: u32) -> Self {
        ChessPos { board, budget }
    }

    fn border(&self) -> Option<usize> {
        let w = self.board.iter().take_while(|&&p| Side::of(p) == Side::W).count();
        (w > 0 && w < self.board.len()).then(|| w - 1)
    }
}

impl ChessGame {
    pub fn outcome(&self, l: u8, r: u8) -> Option<&FightOutcome> {
        self.table.get(&(l, r))
    }

    fn fight(&self, x: &ChessPos) -> Option<(usize, &FightOutcome)> {
        let w = x.border()?;
        self.table.get(&(x.board[w], x.board[w + 1])).map(|o| (w, o))
    }
}

/// Linear Chess from a set of piece types and allowed `(A, B, C)` triples:
/// winner `A` beats `B`, which is replaced by `C`.
pub fn linear_chess(types: &BTreeSet<u8>, triples: &[(u8, u8, u8)]) -> Result<ChessGame, GameError> {
    let mut table: HashMap<(u8, u8), FightOutcome> = HashMap::new();
    for &w in types.iter().filter(|&&p| Side::of(p) == Side::W) {
        for &s in types.iter().filter(|&&p| Side::of(p) == Side::S) {
            table.insert((w, s), FightOutcome { winner: gender_winner(w, s), options: Vec::new() });
        }
    }
    for &(a, b, c) in triples {
        let bad = || GameError::MalformedTriple(a, b, c);
        if ![a, b, c].iter().all(|p| types.contains(p)) || Side::of(a) == Side::of(b) {
            return Err(bad());
        }
        let (w, s) = if Side::of(a) == Side::W { (a, b) } else { (b, a) };
        let winner = gender_winner(w, s);
        if Side::of(a) != winner || Side::of(c) != winner {
            return Err(bad());
        }
        let entry = table.get_mut(&(w, s)).expect("all W/S pairs tabled");
        if !entry.options.contains(&(a, c)) {
            entry.options.push((a, c));
        }
    }
    Ok(ChessGame { table })
}

/// 1d-Chess: the fight outcome and any promotion come from the table.
pub fn one_d_chess(types: &BTreeSet<u8>, table: HashMap<(u8, u8), FightOutcome>) -> Result<ChessGame, GameError> {
    for &w in types.iter().filter(|&&p| Side::of(p) == Side::W) {
        for &s in types.iter().filter(|&&p| Side::of(p) == Side::S) {
            if !table.contains_key(&(w, s)) {
                return Err(GameError::MalformedTable(w, s, "missing entry".into()));
            }
        }
    }
    for (&(l, r), o) in &table {
        let bad = |why: &str| Err(GameError::MalformedTable(l, r, why.into()));
        if Side::of(l) != Side::W || Side::of(r) != Side::S {
            return bad("left piece must be W and right piece S");
        }
        for &(promoted, replacement) in &o.options {
            if !types.contains(&promoted) || !types.contains(&replacement) {
                return bad("unknown piece type");
            }
            if Side::of(promoted) != o.winner || Side::of(replacement) != o.winner {
                return bad("option piece not on the winner's side");
            }
        }
    }
    Ok(ChessGame { table })
}

impl Game for ChessGame {
    type Pos = ChessPos;

    fn active(&self, x: &ChessPos) -> i8 {
        match self.fight(x) {
            Some((_, o)) => o.winner.sign(),
            None => x.board.first().map_or(1, |&p| Side::of(p).sign()),
        }
    }

    fn moves(&self, x: &ChessPos) -> Vec<ChessPos> {
        let Some((w, o)) = self.fight(x) else { return Vec::new() };
        let (win_at, lose_at) = match o.winner {
            Side::W => (w, w + 1),
            Side::S => (w + 1, w),
        };
        o.options
            .iter()
            .map(|&(promoted, replacement)| {
                let mut board = x.board.clone();
                board[win_at] = promoted;
                board[lose_at] = replacement;
                ChessPos::new(board, x.budget - 1)
            })
            .collect()
    }

    /// One side eliminated: it lost. Budget exhausted: the side to move loses.
    fn terminal(&self, x: &ChessPos) -> Option<i8> {
        if x.border().is_none() {
            return Some(x.board.first().map_or(1, |&p| Side::of(p).sign()));
        }
        (x.budget == 0).then(|| -self.active(x))
    }

    fn key(&self, x: &ChessPos) -> i64 {
        let mut k: i64 = 1;
        for &p in &x.board {
            k = k.wrapping_mul(257).wrapping_add(p as i64 + 1);
        }
        k = k.wrapping_mul(1 << 16).wrapping_add(x.budget as i64 & 0xffff);
        let k = (k & i64::MAX).max(1);
        self.active(x) as i64 * k
    }
}
