//! Corner-lettered tiles, the reduction from bounded TM runs, and two
//! solvers: exhaustive backtracking and a column DP for short boards.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::machine::{BinaryTM, Dir, HaltMode, StateId};

pub type Letter = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub nw: Letter,
    pub ne: Letter,
    pub sw: Letter,
    pub se: Letter,
}

impl Tile {
    pub fn new(nw: Letter, ne: Letter, sw: Letter, se: Letter) -> Self {
        Tile { nw, ne, sw, se }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Right,
    Below,
}

/// Whether `t2` may sit right of / below `t1`.
pub fn sides_match(t1: &Tile, t2: &Tile, d: Direction) -> bool {
    match d {
        Direction::Right => (t1.ne, t1.se) == (t2.nw, t2.sw),
        Direction::Below => (t1.sw, t1.se) == (t2.nw, t2.ne),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("first row tiles {0} and {1} do not match")]
    FirstRowMismatch(usize, usize),
    #[error("height must be at least 1")]
    ZeroHeight,
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("height {height} too large for width {width}")]
    HeightTooLarge { height: usize, width: usize },
    #[error("reduction needs width >= 1 and height >= 2")]
    BadShape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingInstance {
    pub tiles: Vec<Tile>,
    pub first_row: Vec<Tile>,
    pub height: usize,
    /// Optional letter names for display.
    pub names: BTreeMap<Letter, String>,
}

impl TilingInstance {
    pub fn new(tiles: Vec<Tile>, first_row: Vec<Tile>, height: usize) -> Result<Self, TilingError> {
        if height == 0 {
            return Err(TilingError::ZeroHeight);
        }
        for j in 1..first_row.len() {
            if !sides_match(&first_row[j - 1], &first_row[j], Direction::Right) {
                return Err(TilingError::FirstRowMismatch(j - 1, j));
            }
        }
        Ok(TilingInstance { tiles, first_row, height, names: BTreeMap::new() })
    }

    pub fn width(&self) -> usize {
        self.first_row.len()
    }

    pub fn alphabet_size(&self) -> usize {
        let mut s = HashSet::new();
        for t in self.tiles.iter().chain(&self.first_row) {
            s.extend([t.nw, t.ne, t.sw, t.se]);
        }
        s.len()
    }

    pub fn letter_name(&self, l: Letter) -> String {
        self.names.get(&l).cloned().unwrap_or_else(|| l.to_string())
    }

    /// Checks a full tiling: first row fixed, all neighbours matching.
    pub fn check(&self, grid: &[Vec<Tile>]) -> bool {
        grid.len() == self.height
            && grid[0] == self.first_row
            && grid.iter().all(|row| row.len() == self.width())
            && grid.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, t)| {
                    (j == 0 || sides_match(&row[j - 1], t, Direction::Right))
                        && (i == 0 || sides_match(&grid[i - 1][j], t, Direction::Below))
                        && (i == 0 || self.tiles.contains(t))
                })
            })
    }
}

impl fmt::Display for TilingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |l| self.letter_name(l);
        for t in &self.tiles {
            writeln!(f, "tile {} {} {} {}", n(t.nw), n(t.ne), n(t.sw), n(t.se))?;
        }
        let ids: Vec<String> = self
            .first_row
            .iter()
            .map(|t| self.tiles.iter().position(|u| u == t).map_or("?".into(), |i| i.to_string()))
            .collect();
        writeln!(f, "firstrow: {}", ids.join(" "))?;
        writeln!(f, "height: {}", self.height)
    }
}

/// Exhaustive row-by-row search. Returns a witness tiling if one exists.
pub fn solve_backtrack(inst: &TilingInstance, budget: u64) -> Result<Option<Vec<Vec<Tile>>>, TilingError> {
    let w = inst.width();
    if w == 0 {
        return Ok(Some(vec![Vec::new(); inst.height]));
    }
    let mut by_top: HashMap<(Letter, Letter), Vec<Tile>> = HashMap::new();
    let mut uniq = inst.tiles.clone();
    uniq.sort();
    uniq.dedup();
    for t in uniq {
        by_top.entry((t.nw, t.ne)).or_default().push(t);
    }
    let mut grid = vec![inst.first_row.clone()];
    grid.extend((1..inst.height).map(|_| Vec::with_capacity(w)));
    let mut nodes = 0u64;

    fn go(
        inst: &TilingInstance,
        by_top: &HashMap<(Letter, Letter), Vec<Tile>>,
        grid: &mut Vec<Vec<Tile>>,
        cell: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool, TilingError> {
        let w = inst.width();
        let (i, j) = (cell / w + 1, cell % w);
        if i >= inst.height {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(TilingError::BudgetExceeded(budget));
        }
        let above = grid[i - 1][j];
        let Some(cands) = by_top.get(&(above.sw, above.se)) else { return Ok(false) };
        for &t in cands {
            if j > 0 && !sides_match(&grid[i][j - 1], &t, Direction::Right) {
                continue;
            }
            grid[i].push(t);
            if go(inst, by_top, grid, cell + 1, nodes, budget)? {
                return Ok(true);
            }
            grid[i].pop();
        }
        Ok(false)
    }

    Ok(go(inst, &by_top, &mut grid, 0, &mut nodes, budget)?.then_some(grid))
}

/// Column-by-column DP: the state is one whole column of tiles.
pub fn solve_narrow_dp(inst: &TilingInstance) -> Result<bool, TilingError> {
    let w = inst.width();
    let h = inst.height;
    let limit = 2.0 * (w.max(2) as f64).log2() + 2.0;
    if h as f64 > limit {
        return Err(TilingError::HeightTooLarge { height: h, width: w });
    }
    if w == 0 {
        return Ok(true);
    }
    let mut uniq = inst.tiles.clone();
    uniq.sort();
    uniq.dedup();
    let mut by_top: HashMap<(Letter, Letter), Vec<Tile>> = HashMap::new();
    for &t in &uniq {
        by_top.entry((t.nw, t.ne)).or_default().push(t);
    }

    // Columns below the fixed top tile, optionally constrained on the left.
    fn columns(
        by_top: &HashMap<(Letter, Letter), Vec<Tile>>,
        col: &mut Vec<Tile>,
        h: usize,
        left: Option<&[Tile]>,
        out: &mut HashSet<Vec<Tile>>,
    ) {
        if col.len() == h {
            out.insert(col.clone());
            return;
        }
        let above = col[col.len() - 1];
        let Some(cands) = by_top.get(&(above.sw, above.se)) else { return };
        for &t in cands {
            if let Some(l) = left {
                if !sides_match(&l[col.len()], &t, Direction::Right) {
                    continue;
                }
            }
            col.push(t);
            columns(by_top, col, h, left, out);
            col.pop();
        }
    }

    let mut frontier = HashSet::new();
    columns(&by_top, &mut vec![inst.first_row[0]], h, None, &mut frontier);
    for j in 1..w {
        let mut next = HashSet::new();
        for prev in &frontier {
            columns(&by_top, &mut vec![inst.first_row[j]], h, Some(prev), &mut next);
        }
        if next.is_empty() {
            return Ok(false);
        }
        frontier = next;
    }
    Ok(!frontier.is_empty())
}

/// Arrival marker of a head in a run cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Arrival {
    Init,
    FromLeft,
    FromRight,
}

/// A cell of the space-time table behind the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum TCell {
    Edge,
    Top,
    /// First table row: input bits, `?` witness slots (`None`), head mark.
    Pre { bit: Option<bool>, head: bool },
    Run { bit: bool, head: Option<(StateId, Arrival)> },
}

impl fmt::Display for TCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TCell::Edge => write!(f, "|"),
            TCell::Top => write!(f, "^"),
            TCell::Pre { bit, head } => {
                let b = bit.map_or('?', |b| if b { '1' } else { '0' });
                write!(f, "p{b}{}", if *head { "h" } else { "" })
            }
            TCell::Run { bit, head } => {
                write!(f, "{}", *bit as u8)?;
                if let Some((q, a)) = head {
                    let m = match a {
                        Arrival::Init => 'i',
                        Arrival::FromLeft => 'l',
                        Arrival::FromRight => 'r',
                    };
                    write!(f, "q{q}{m}")?;
                }
                Ok(())
            }
        }
    }
}

fn same_row_kind(a: TCell, b: TCell) -> bool {
    use std::mem::discriminant;
    a == TCell::Edge || b == TCell::Edge || discriminant(&a) == discriminant(&b)
}

struct Reduction<'a> {
    tm: &'a BinaryTM,
}

impl Reduction<'_> {
    fn moves(&self, c: TCell) -> Option<(Dir, StateId, bool)> {
        match c {
            TCell::Run { bit, head: Some((q, _)) } => {
                let r = self.tm.rule(q, bit)?;
                Some((r.dir, r.next, r.write))
            }
            _ => None,
        }
    }

    fn column_ok(&self, top: TCell, bottom: TCell) -> bool {
        use TCell::*;
        match (top, bottom) {
            (Edge, b) => b == Edge,
            (_, Edge) => false,
            (Top, b) => matches!(b, Pre { .. }),
            (Pre { bit, head }, Run { bit: b, head: h }) => {
                bit.is_none_or(|x| x == b)
                    && match h {
                        None => !head,
                        Some((q, Arrival::Init)) => head && q == self.tm.start(),
                        Some(_) => false,
                    }
            }
            (Run { bit, head }, Run { bit: b, head: h }) => match head {
                Some(_) => match self.moves(top) {
                    Some((_, _, w)) => b == w && h.is_none(),
                    None => false,
                },
                None => b == bit && !matches!(h, Some((_, Arrival::Init))),
            },
            _ => false,
        }
    }

    fn window_ok(&self, tl: TCell, tr: TCell, bl: TCell, br: TCell) -> bool {
        if !self.column_ok(tl, bl) || !self.column_ok(tr, br) || !same_row_kind(tl, tr) {
            return false;
        }
        let run_top = matches!(tl, TCell::Run { .. }) || matches!(tr, TCell::Run { .. });
        if !run_top {
            // rows above the run: only pre->run copying, which is columnwise
            return !matches!(bl, TCell::Run { head: Some((_, Arrival::FromLeft | Arrival::FromRight)), .. })
                && !matches!(br, TCell::Run { head: Some((_, Arrival::FromLeft | Arrival::FromRight)), .. });
        }
        let right_move = match self.moves(tl) {
            Some((Dir::R, q, _)) => Some(q),
            _ => None,
        };
        let left_move = match self.moves(tr) {
            Some((Dir::L, q, _)) => Some(q),
            _ => None,
        };
        let arrived = |c: TCell, how: Arrival| match c {
            TCell::Run { head: Some((q, a)), .. } if a == how => Some(q),
            _ => None,
        };
        right_move == arrived(br, Arrival::FromLeft) && left_move == arrived(bl, Arrival::FromRight)
    }
}

/// Tiles for the runs of `tm` on `v` followed by `witness` free cells,
/// on a tape of `width` cells, `height` tile rows.
///
/// The board can be completed iff some witness keeps the run going for
/// `height - 2` steps without halting or leaving the tape.
pub fn tiles_from_run(
    tm: &BinaryTM,
    v: &[bool],
    witness: usize,
    width: usize,
    height: usize,
) -> Result<TilingInstance, TilingError> {
    if width == 0 || height < 1 || v.len() + witness > width {
        return Err(TilingError::BadShape);
    }
    let red = Reduction { tm };
    let mut alphabet = vec![TCell::Edge, TCell::Top];
    for bit in [None, Some(false), Some(true)] {
        for head in [false, true] {
            alphabet.push(TCell::Pre { bit, head });
        }
    }
    let halting = |q: StateId| tm.mode() == HaltMode::ExplicitHaltState && tm.is_halt_state(q);
    for bit in [false, true] {
        alphabet.push(TCell::Run { bit, head: None });
        for q in (0..tm.state_count()).filter(|&q| !halting(q)) {
            for a in [Arrival::Init, Arrival::FromLeft, Arrival::FromRight] {
                alphabet.push(TCell::Run { bit, head: Some((q, a)) });
            }
        }
    }
    let letter: HashMap<TCell, Letter> = alphabet.iter().enumerate().map(|(i, &c)| (c, i as Letter)).collect();
    let tile = |tl, tr, bl, br| Tile::new(letter[&tl], letter[&tr], letter[&bl], letter[&br]);

    let mut tiles = Vec::new();
    for &tl in &alphabet {
        for &bl in &alphabet {
            if !red.column_ok(tl, bl) {
                continue;
            }
            for &tr in &alphabet {
                for &br in &alphabet {
                    if (tl, bl) == (TCell::Edge, TCell::Edge) && (tr, br) == (TCell::Edge, TCell::Edge) {
                        continue;
                    }
                    if red.window_ok(tl, tr, bl, br) {
                        tiles.push(tile(tl, tr, bl, br));
                    }
                }
            }
        }
    }

    let mut pre = vec![TCell::Edge];
    for i in 0..width {
        let bit = if i < v.len() {
            Some(v[i])
        } else if i < v.len() + witness {
            None
        } else {
            Some(false)
        };
        pre.push(TCell::Pre { bit, head: i == 0 });
    }
    pre.push(TCell::Edge);
    let top: Vec<TCell> = (0..width + 2)
        .map(|i| if i == 0 || i == width + 1 { TCell::Edge } else { TCell::Top })
        .collect();
    let first_row = (0..=width).map(|j| tile(top[j], top[j + 1], pre[j], pre[j + 1])).collect();
    let mut inst = TilingInstance::new(tiles, first_row, height)?;
    inst.names = alphabet.iter().map(|c| (letter[c], c.to_string())).collect();
    Ok(inst)
}
