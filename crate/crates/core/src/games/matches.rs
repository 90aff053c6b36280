use super::Game;

/// Three boxes of matches. A move takes at least one match from one box;
/// emptying the table is not allowed.
#[derive(Debug, Clone, Copy, Default)]
pub struct MatchGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchPos {
    pub boxes: [u8; 3],
    pub player: i8,
}

impl MatchPos {
    pub fn new(boxes: [u8; 3], player: i8) -> Self {
        MatchPos { boxes, player }
    }
}

pub fn match_game() -> MatchGame {
    MatchGame
}

impl Game for MatchGame {
    type Pos = MatchPos;

    fn active(&self, x: &MatchPos) -> i8 {
        x.player
    }

    fn moves(&self, x: &MatchPos) -> Vec<MatchPos> {
        let mut out = Vec::new();
        for i in 0..3 {
            for k in 1..=x.boxes[i] {
                let mut b = x.boxes;
                b[i] -= k;
                if b != [0, 0, 0] {
                    out.push(MatchPos::new(b, -x.player));
                }
            }
        }
        out
    }

    fn key(&self, x: &MatchPos) -> i64 {
        let [a, b, c] = x.boxes.map(i64::from);
        x.player as i64 * (a << 16 | b << 8 | c | 1 << 24)
    }
}
