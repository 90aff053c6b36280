//! Line-based description files. `#` starts a comment; blank lines are
//! ignored. Every error carries a 1-based line and column.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;
use workbench::cellular::{Boundary, Ca1d, LifeGrid};
use workbench::crypto::{BlumKey, Ciphertext};
use workbench::games::{FightOutcome, Side};
use workbench::machine::{BinaryTM, Dir, HaltMode, Rule};
use workbench::tiling::{Letter, Tile, TilingInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Tm,
    Ca,
    Life,
    Tiles,
    Game,
    Keys,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecFile {
    Tm(TmFile),
    Ca(Ca1d),
    Life(LifeGrid),
    Tiles(TilingInstance),
    Game(GameFile),
    Keys(KeyFile),
}

pub fn parse_spec(text: &str, kind: Kind) -> Result<SpecFile, SyntaxError> {
    Ok(match kind {
        Kind::Tm => SpecFile::Tm(parse_tm(text)?),
        Kind::Ca => SpecFile::Ca(parse_ca(text)?),
        Kind::Life => SpecFile::Life(parse_life(text, Boundary::Torus)?),
        Kind::Tiles => SpecFile::Tiles(parse_tiles(text)?),
        Kind::Game => SpecFile::Game(parse_game(text)?),
        Kind::Keys => SpecFile::Keys(parse_keys(text)?),
    })
}

pub fn print_spec(spec: &SpecFile) -> String {
    match spec {
        SpecFile::Tm(t) => print_tm(t),
        SpecFile::Ca(c) => print_ca(c),
        SpecFile::Life(g) => g.to_string(),
        SpecFile::Tiles(t) => t.to_string(),
        SpecFile::Game(g) => print_game(g),
        SpecFile::Keys(k) => print_keys(k),
    }
}

/// A token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
    /// Column just past the last token.
    end: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: self.no, col, message: message.into() }
    }

    fn at(&self, i: usize, what: &str) -> Result<Tok<'a>, SyntaxError> {
        self.toks.get(i).copied().ok_or_else(|| self.err(self.end, format!("expected {what}")))
    }

    fn no_more(&self, i: usize) -> Result<(), SyntaxError> {
        match self.toks.get(i) {
            Some(t) => Err(self.err(t.col, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    toks.push(Tok { text: &body[s..j], col: body[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        let end = body.trim_end().chars().count() + 1;
        (!toks.is_empty()).then_some(Line { no: i + 1, toks, end })
    })
}

fn number<T: std::str::FromStr>(line: &Line, t: Tok, what: &str) -> Result<T, SyntaxError> {
    t.text.parse().map_err(|_| line.err(t.col, format!("expected {what}, found `{}`", t.text)))
}

/// A machine with its state names, `names[id]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmFile {
    pub tm: BinaryTM,
    pub names: Vec<String>,
}

/// ```text
/// states: q0 q1 qh    # optional; fixes the numbering
/// start: q0
/// halt: qh            # optional; switches to explicit halt states
/// mode: left-rolloff  # or right-rolloff / explicit
/// rule q0 0 -> q1 1 R
/// ```
pub fn parse_tm(text: &str) -> Result<TmFile, SyntaxError> {
    let mut names: Vec<String> = Vec::new();
    let mut id = |name: &str| match names.iter().position(|n| n == name) {
        Some(i) => i,
        None => {
            names.push(name.to_string());
            names.len() - 1
        }
    };
    let mut start = None;
    let mut halts: Vec<usize> = Vec::new();
    let mut saw_halt = false;
    let mut mode = None;
    let mut rules = Vec::new();
    let mut first_line = 1;
    let bit = |line: &Line, t: Tok| match t.text {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(line.err(t.col, format!("expected bit 0 or 1, found `{}`", t.text))),
    };
    for line in lines(text) {
        if first_line == 1 {
            first_line = line.no;
        }
        let head = line.toks[0];
        match head.text {
            "states:" => {
                for t in &line.toks[1..] {
                    id(t.text);
                }
            }
            "start:" => {
                start = Some(id(line.at(1, "state name")?.text));
                line.no_more(2)?;
            }
            "halt:" => {
                saw_halt = true;
                for t in &line.toks[1..] {
                    halts.push(id(t.text));
                }
            }
            "mode:" => {
                let t = line.at(1, "halt mode")?;
                mode = Some(match t.text {
                    "explicit" => HaltMode::ExplicitHaltState,
                    "left-rolloff" => HaltMode::LeftRollOff,
                    "right-rolloff" => HaltMode::RightRollOff,
                    other => return Err(line.err(t.col, format!("unknown halt mode `{other}`"))),
                });
                line.no_more(2)?;
            }
            "rule" => {
                let s = line.at(1, "state name")?;
                let b = bit(&line, line.at(2, "bit")?)?;
                let arrow = line.at(3, "`->`")?;
                if arrow.text != "->" {
                    return Err(line.err(arrow.col, format!("expected `->`, found `{}`", arrow.text)));
                }
                let s2 = line.at(4, "state name")?;
                let w = bit(&line, line.at(5, "bit")?)?;
                let d = line.at(6, "direction")?;
                let dir = match d.text {
                    "L" => Dir::L,
                    "R" => Dir::R,
                    other => return Err(line.err(d.col, format!("expected L or R, found `{other}`"))),
                };
                line.no_more(7)?;
                let (s, s2) = (id(s.text), id(s2.text));
                rules.push((line.no, s, b, Rule { next: s2, write: w, dir }));
            }
            other => return Err(line.err(head.col, format!("unknown directive `{other}`"))),
        }
    }
    let at_top = |message: String| SyntaxError { line: first_line, col: 1, message };
    let start = start.ok_or_else(|| at_top("missing `start:`".into()))?;
    let mode = mode.unwrap_or(if saw_halt { HaltMode::ExplicitHaltState } else { HaltMode::LeftRollOff });
    let err_line = rules.last().map_or(first_line, |r| r.0);
    let tm = BinaryTM::new(
        names.len(),
        start,
        rules.iter().map(|&(_, s, b, r)| (s, b, r)),
        halts,
        mode,
    )
    .map_err(|e| SyntaxError { line: err_line, col: 1, message: e.to_string() })?;
    Ok(TmFile { tm, names })
}

pub fn print_tm(t: &TmFile) -> String {
    let mut out = String::new();
    let n = |s: usize| t.names[s].as_str();
    writeln!(out, "states: {}", t.names.join(" ")).unwrap();
    writeln!(out, "start: {}", n(t.tm.start())).unwrap();
    let mode = match t.tm.mode() {
        HaltMode::ExplicitHaltState => "explicit",
        HaltMode::LeftRollOff => "left-rolloff",
        HaltMode::RightRollOff => "right-rolloff",
    };
    writeln!(out, "mode: {mode}").unwrap();
    if !t.tm.halt_states().is_empty() {
        let hs: Vec<&str> = t.tm.halt_states().iter().map(|&h| n(h)).collect();
        writeln!(out, "halt: {}", hs.join(" ")).unwrap();
    }
    for (s, b, r) in t.tm.rules() {
        writeln!(out, "rule {} {} -> {} {} {}", n(s), b as u8, n(r.next), r.write as u8, r.dir).unwrap();
    }
    out
}

/// ```text
/// quiescent: 0
/// alphabet: 01   # optional, else every symbol in the rules
/// rule 010 -> 1
/// ```
pub fn parse_ca(text: &str) -> Result<Ca1d, SyntaxError> {
    let mut quiescent = None;
    let mut alphabet: BTreeSet<char> = BTreeSet::new();
    let mut rules = Vec::new();
    let mut last = 1;
    for line in lines(text) {
        last = line.no;
        let head = line.toks[0];
        match head.text {
            "quiescent:" => {
                let t = line.at(1, "symbol")?;
                let mut cs = t.text.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => quiescent = Some(c),
                    _ => return Err(line.err(t.col, "expected a single symbol")),
                }
                line.no_more(2)?;
            }
            "alphabet:" => {
                for t in &line.toks[1..] {
                    alphabet.extend(t.text.chars());
                }
            }
            "rule" => {
                let k = line.at(1, "three-symbol neighbourhood")?;
                let ks: Vec<char> = k.text.chars().collect();
                if ks.len() != 3 {
                    return Err(line.err(k.col, format!("expected three symbols, found `{}`", k.text)));
                }
                let arrow = line.at(2, "`->`")?;
                if arrow.text != "->" {
                    return Err(line.err(arrow.col, format!("expected `->`, found `{}`", arrow.text)));
                }
                let v = line.at(3, "symbol")?;
                let vs: Vec<char> = v.text.chars().collect();
                if vs.len() != 1 {
                    return Err(line.err(v.col, format!("expected one symbol, found `{}`", v.text)));
                }
                line.no_more(4)?;
                alphabet.extend(ks.iter().chain(&vs));
                rules.push(([ks[0], ks[1], ks[2]], vs[0]));
            }
            other => return Err(line.err(head.col, format!("unknown directive `{other}`"))),
        }
    }
    let q = quiescent.ok_or(SyntaxError { line: 1, col: 1, message: "missing `quiescent:`".into() })?;
    alphabet.insert(q);
    Ca1d::new(alphabet, q, rules).map_err(|e| SyntaxError { line: last, col: 1, message: e.to_string() })
}

pub fn print_ca(ca: &Ca1d) -> String {
    let mut out = String::new();
    writeln!(out, "quiescent: {}", ca.quiescent()).unwrap();
    writeln!(out, "alphabet: {}", ca.alphabet().iter().collect::<String>()).unwrap();
    for &a in ca.alphabet() {
        for &b in ca.alphabet() {
            for &c in ca.alphabet() {
                let v = workbench::cellular::LocalRule::apply(ca, &a, &b, &c);
                writeln!(out, "rule {a}{b}{c} -> {v}").unwrap();
            }
        }
    }
    out
}

/// Rows of `.` (dead) and `O` (alive), all the same width.
pub fn parse_life(text: &str, boundary: Boundary) -> Result<LifeGrid, SyntaxError> {
    let rows: Vec<Line> = lines(text).collect();
    let first = rows.first().ok_or(SyntaxError { line: 1, col: 1, message: "empty grid".into() })?;
    let width = first.toks[0].text.chars().count();
    let mut g = LifeGrid::new(width, rows.len(), boundary)
        .map_err(|e| SyntaxError { line: first.no, col: 1, message: e.to_string() })?;
    for (y, line) in rows.iter().enumerate() {
        line.no_more(1)?;
        let t = line.toks[0];
        if t.text.chars().count() != width {
            return Err(line.err(t.col, format!("row width {} differs from {width}", t.text.chars().count())));
        }
        for (x, ch) in t.text.chars().enumerate() {
            match ch {
                '.' => {}
                'O' => g.set(x, y, true),
                other => return Err(line.err(t.col + x, format!("expected `.` or `O`, found `{other}`"))),
            }
        }
    }
    Ok(g)
}

/// ```text
/// tile a x m r
/// firstrow: 0 1    # tile indices, 0-based
/// height: 2        # optional
/// ```
pub fn parse_tiles(text: &str) -> Result<TilingInstance, SyntaxError> {
    let mut letters: BTreeMap<String, Letter> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut tiles = Vec::new();
    let mut first = None;
    let mut height = None;
    let mut last = 1;
    for line in lines(text) {
        last = line.no;
        let head = line.toks[0];
        match head.text {
            "tile" => {
                let mut q = [0; 4];
                for (i, slot) in q.iter_mut().enumerate() {
                    let t = line.at(i + 1, "letter")?;
                    let next = letters.len() as Letter;
                    *slot = *letters.entry(t.text.to_string()).or_insert_with(|| {
                        order.push(t.text.to_string());
                        next
                    });
                }
                line.no_more(5)?;
                tiles.push(Tile::new(q[0], q[1], q[2], q[3]));
            }
            "firstrow:" => {
                let mut row = Vec::new();
                for t in &line.toks[1..] {
                    let i: usize = number(&line, *t, "tile index")?;
                    let tile = tiles.get(i).ok_or_else(|| line.err(t.col, format!("no tile {i}")))?;
                    row.push(*tile);
                }
                first = Some(row);
            }
            "height:" => {
                height = Some(number(&line, line.at(1, "height")?, "height")?);
                line.no_more(2)?;
            }
            other => return Err(line.err(head.col, format!("unknown directive `{other}`"))),
        }
    }
    let first = first.ok_or(SyntaxError { line: last, col: 1, message: "missing `firstrow:`".into() })?;
    let mut inst = TilingInstance::new(tiles, first, height.unwrap_or(1))
        .map_err(|e| SyntaxError { line: last, col: 1, message: e.to_string() })?;
    inst.names = order.into_iter().enumerate().map(|(i, n)| (i as Letter, n)).collect();
    Ok(inst)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameRules {
    /// `(A, B, C)`: A beats B, which is replaced by C.
    Linear(Vec<(u8, u8, u8)>),
    OneD(HashMap<(u8, u8), FightOutcome>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFile {
    pub types: BTreeSet<u8>,
    pub rules: GameRules,
    pub board: Vec<u8>,
    pub budget: u32,
}

/// Pieces are hex bytes.
///
/// ```text
/// types: 01 41 81 c1
/// triple 81 01 c1              # Linear Chess
/// fight 01 81 -> S c1:81 81:81 # 1d-Chess: winner, then promoted:replacement
/// board: 01 01 81 81
/// budget: 8
/// ```
pub fn parse_game(text: &str) -> Result<GameFile, SyntaxError> {
    let hex = |line: &Line, t: Tok| {
        u8::from_str_radix(t.text, 16).map_err(|_| line.err(t.col, format!("expected hex byte, found `{}`", t.text)))
    };
    let mut types = BTreeSet::new();
    let mut triples = Vec::new();
    let mut fights = HashMap::new();
    let mut board = None;
    let mut budget = None;
    let mut last = 1;
    for line in lines(text) {
        last = line.no;
        let head = line.toks[0];
        match head.text {
            "types:" => {
                for t in &line.toks[1..] {
                    types.insert(hex(&line, *t)?);
                }
            }
            "triple" => {
                let a = hex(&line, line.at(1, "piece")?)?;
                let b = hex(&line, line.at(2, "piece")?)?;
                let c = hex(&line, line.at(3, "piece")?)?;
                line.no_more(4)?;
                triples.push((a, b, c));
            }
            "fight" => {
                let w = hex(&line, line.at(1, "piece")?)?;
                let s = hex(&line, line.at(2, "piece")?)?;
                let arrow = line.at(3, "`->`")?;
                if arrow.text != "->" {
                    return Err(line.err(arrow.col, format!("expected `->`, found `{}`", arrow.text)));
                }
                let side = line.at(4, "winner W or S")?;
                let winner = match side.text {
                    "W" => Side::W,
                    "S" => Side::S,
                    other => return Err(line.err(side.col, format!("expected W or S, found `{other}`"))),
                };
                let mut options = Vec::new();
                for t in &line.toks[5..] {
                    let (a, b) = t
                        .text
                        .split_once(':')
                        .ok_or_else(|| line.err(t.col, "expected promoted:replacement"))?;
                    let b_col = t.col + a.len() + 1;
                    let a = hex(&line, Tok { text: a, col: t.col })?;
                    let b = hex(&line, Tok { text: b, col: b_col })?;
                    options.push((a, b));
                }
                fights.insert((w, s), FightOutcome { winner, options });
            }
            "board:" => {
                board = Some(line.toks[1..].iter().map(|t| hex(&line, *t)).collect::<Result<Vec<u8>, _>>()?);
            }
            "budget:" => {
                budget = Some(number(&line, line.at(1, "move budget")?, "move budget")?);
                line.no_more(2)?;
            }
            other => return Err(line.err(head.col, format!("unknown directive `{other}`"))),
        }
    }
    let missing = |what: &str| SyntaxError { line: last, col: 1, message: format!("missing `{what}`") };
    if !triples.is_empty() && !fights.is_empty() {
        return Err(SyntaxError { line: last, col: 1, message: "mixes `triple` and `fight` lines".into() });
    }
    let rules = if fights.is_empty() { GameRules::Linear(triples) } else { GameRules::OneD(fights) };
    Ok(GameFile { types, rules, board: board.ok_or_else(|| missing("board:"))?, budget: budget.ok_or_else(|| missing("budget:"))? })
}

pub fn print_game(g: &GameFile) -> String {
    let mut out = String::new();
    let hexes = |v: &mut dyn Iterator<Item = u8>| v.map(|b| format!("{b:02x}")).collect::<Vec<_>>().join(" ");
    writeln!(out, "types: {}", hexes(&mut g.types.iter().copied())).unwrap();
    match &g.rules {
        GameRules::Linear(ts) => {
            for (a, b, c) in ts {
                writeln!(out, "triple {a:02x} {b:02x} {c:02x}").unwrap();
            }
        }
        GameRules::OneD(fs) => {
            let mut keys: Vec<_> = fs.keys().copied().collect();
            keys.sort_unstable();
            for (w, s) in keys {
                let o = &fs[&(w, s)];
                let side = if o.winner == Side::W { "W" } else { "S" };
                let opts: Vec<String> = o.options.iter().map(|(a, b)| format!("{a:02x}:{b:02x}")).collect();
                writeln!(out, "fight {w:02x} {s:02x} -> {side} {}", opts.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "board: {}", hexes(&mut g.board.iter().copied())).unwrap();
    writeln!(out, "budget: {}", g.budget).unwrap();
    out
}

/// `n:` always; `p:` and `q:` only in private keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFile {
    pub n: u64,
    pub p: Option<u64>,
    pub q: Option<u64>,
}

impl KeyFile {
    pub fn private(&self) -> Option<BlumKey> {
        BlumKey::from_primes(self.p?, self.q?).ok()
    }
}

type Fields<'a> = BTreeMap<String, (usize, Tok<'a>)>;

fn fields<'a>(text: &'a str, allowed: &[&str]) -> Result<(Fields<'a>, usize), SyntaxError> {
    let mut out = BTreeMap::new();
    let mut last = 1;
    for line in lines(text) {
        last = line.no;
        let head = line.toks[0];
        let Some(key) = head.text.strip_suffix(':').filter(|k| allowed.contains(k)) else {
            return Err(line.err(head.col, format!("unknown directive `{}`", head.text)));
        };
        let v = line.at(1, "value")?;
        line.no_more(2)?;
        out.insert(key.to_string(), (line.no, v));
    }
    Ok((out, last))
}

fn field_u64(map: &BTreeMap<String, (usize, Tok)>, key: &str) -> Result<Option<u64>, SyntaxError> {
    map.get(key)
        .map(|(no, t)| {
            t.text
                .parse()
                .map_err(|_| SyntaxError { line: *no, col: t.col, message: format!("expected decimal integer, found `{}`", t.text) })
        })
        .transpose()
}

pub fn parse_keys(text: &str) -> Result<KeyFile, SyntaxError> {
    let (map, last) = fields(text, &["n", "p", "q"])?;
    let n = field_u64(&map, "n")?.ok_or(SyntaxError { line: last, col: 1, message: "missing `n:`".into() })?;
    let key = KeyFile { n, p: field_u64(&map, "p")?, q: field_u64(&map, "q")? };
    if key.p.is_some() != key.q.is_some() || key.p.is_some() && key.private().is_none_or(|k| k.n != n) {
        return Err(SyntaxError { line: last, col: 1, message: "p and q must be Blum primes with p*q = n".into() });
    }
    Ok(key)
}

pub fn print_keys(k: &KeyFile) -> String {
    let mut out = format!("n: {}\n", k.n);
    if let (Some(p), Some(q)) = (k.p, k.q) {
        write!(out, "p: {p}\nq: {q}\n").unwrap();
    }
    out
}

pub fn parse_ciphertext(text: &str) -> Result<Ciphertext, SyntaxError> {
    let (map, last) = fields(text, &["n", "x", "s_k", "body"])?;
    let need = |k: &str| field_u64(&map, k)?.ok_or(SyntaxError { line: last, col: 1, message: format!("missing `{k}:`") });
    let (no, t) = map.get("body").ok_or(SyntaxError { line: last, col: 1, message: "missing `body:`".into() })?;
    let body = parse_bits(t.text).map_err(|c| SyntaxError { line: *no, col: t.col + c, message: "expected bits".into() })?;
    Ok(Ciphertext { n: need("n")?, x: need("x")?, s_k: need("s_k")?, body })
}

pub fn print_ciphertext(c: &Ciphertext) -> String {
    let body: String = c.body.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let body = if body.is_empty() { "-".to_string() } else { body };
    format!("n: {}\nx: {}\ns_k: {}\nbody: {}\n", c.n, c.x, c.s_k, body)
}

/// `0`/`1` characters; `-` alone is the empty string. On error, the
/// 0-based offset of the bad character.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, usize> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(i),
        })
        .collect()
}
