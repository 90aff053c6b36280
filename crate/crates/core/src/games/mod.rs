//! Full-information two-player games with retrograde and depth-first solvers.
//!
//! Values are from player `+1`'s point of view. A position's active player
//! is `a(x)`; a player without moves loses.

mod chess;
mod halting;
mod matches;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use chess::{gender_winner, linear_chess, one_d_chess, ChessGame, ChessPos, FightOutcome, Side};
pub use halting::{halting_game, HCell, HaltingGame, HgPos};
pub use matches::{match_game, MatchGame, MatchPos};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("more than {0} positions reachable")]
    StateSpaceOverflow(usize),
    #[error("search deeper than {0}")]
    DepthOverflow(usize),
    #[error("malformed triple ({0:#04x}, {1:#04x}, {2:#04x})")]
    MalformedTriple(u8, u8, u8),
    #[error("malformed table entry for ({0:#04x}, {1:#04x}): {2}")]
    MalformedTable(u8, u8, String),
    #[error("halting game needs a left-roll-off machine")]
    NotRollOff,
    #[error("input too long for an enumerable time bound")]
    InputTooLong,
}

pub trait Game {
    type Pos: Clone + Eq + Hash + Debug;

    /// `+1` or `-1`.
    fn active(&self, x: &Self::Pos) -> i8;

    /// Successors `r(x, m)` over the legal moves `m`.
    fn moves(&self, x: &Self::Pos) -> Vec<Self::Pos>;

    /// `Some(v)` on terminal positions.
    fn terminal(&self, _x: &Self::Pos) -> Option<i8> {
        None
    }

    /// Integer key whose sign is the active player.
    fn key(&self, x: &Self::Pos) -> i64;
}

/// The solved values of every position reachable from the seeds.
#[derive(Debug, Clone)]
pub struct ValueTable<P> {
    pub values: HashMap<P, i8>,
    /// Positions resolved in each pass, in resolution order.
    pub cycles: Vec<Vec<(P, i8)>>,
}

impl<P: Eq + Hash> ValueTable<P> {
    pub fn get(&self, x: &P) -> Option<i8> {
        self.values.get(x).copied()
    }
}

/// Enumerates reachable positions, then repeats
/// `V(x) <- a(x) sup_m a(x) V(r(x,m))` until nothing changes.
pub fn solve_retrograde<G: Game>(g: &G, seeds: &[G::Pos], cap: usize) -> Result<ValueTable<G::Pos>, GameError> {
    let mut index: HashMap<G::Pos, usize> = HashMap::new();
    let mut nodes: Vec<G::Pos> = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    for s in seeds {
        if !index.contains_key(s) {
            index.insert(s.clone(), nodes.len());
            nodes.push(s.clone());
            pending.push(nodes.len() - 1);
        }
    }
    let mut cursor = 0;
    while cursor < nodes.len() {
        let x = nodes[cursor].clone();
        let mut kids = Vec::new();
        if g.terminal(&x).is_none() {
            for y in g.moves(&x) {
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if nodes.len() >= cap {
                            return Err(GameError::StateSpaceOverflow(cap));
                        }
                        index.insert(y.clone(), nodes.len());
                        nodes.push(y);
                        nodes.len() - 1
                    }
                };
                kids.push(id);
            }
        }
        children.push(kids);
        cursor += 1;
    }

    let mut v = vec![0i8; nodes.len()];
    let mut cycles = Vec::new();
    let mut first = Vec::new();
    for (i, x) in nodes.iter().enumerate() {
        if let Some(t) = g.terminal(x) {
            v[i] = t;
            first.push((x.clone(), t));
        }
    }
    if !first.is_empty() {
        cycles.push(first);
    }
    loop {
        let mut changed = Vec::new();
        for i in 0..nodes.len() {
            if v[i] != 0 {
                continue;
            }
            let a = g.active(&nodes[i]);
            let mut best = -1i8;
            for &c in &children[i] {
                best = best.max(a * v[c]);
            }
            if best != 0 {
                changed.push((i, a * best));
            }
        }
        if changed.is_empty() {
            break;
        }
        for &(i, val) in &changed {
            v[i] = val;
        }
        cycles.push(changed.into_iter().map(|(i, val)| (nodes[i].clone(), val)).collect());
    }
    debug_assert!(v.iter().all(|&x| x != 0), "finite games leave no unknowns");
    let values = nodes.into_iter().zip(v).collect();
    Ok(ValueTable { values, cycles })
}

/// Depth-first evaluation; memory is proportional to the depth.
pub fn solve_dfs<G: Game>(g: &G, x: &G::Pos, max_depth: usize) -> Result<i8, GameError> {
    fn go<G: Game>(g: &G, x: &G::Pos, depth: usize, max: usize) -> Result<i8, GameError> {
        if let Some(t) = g.terminal(x) {
            return Ok(t);
        }
        if depth > max {
            return Err(GameError::DepthOverflow(max));
        }
        let a = g.active(x);
        for y in g.moves(x) {
            if a * go(g, &y, depth + 1, max)? == 1 {
                return Ok(a);
            }
        }
        Ok(-a)
    }
    go(g, x, 0, max_depth)
}
