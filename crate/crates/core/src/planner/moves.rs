//! Move shorthand: `"2r, 4w, 6n"` is two clockwise quarter-turns, four unit
//! moves west, then six unit moves north.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Compass {
    North,
    East,
    South,
    West,
}

impl Compass {
    pub const ALL: [Compass; 4] = [Compass::North, Compass::East, Compass::South, Compass::West];

    pub fn offset(self) -> (i32, i32) {
        match self {
            Compass::North => (0, 1),
            Compass::East => (1, 0),
            Compass::South => (0, -1),
            Compass::West => (-1, 0),
        }
    }

    /// Direction after `turns` clockwise quarter-turns.
    pub fn rotated_cw(self, turns: u8) -> Compass {
        Compass::ALL[(self as usize + turns as usize) % 4]
    }

    pub fn letter(self) -> char {
        match self {
            Compass::North => 'n',
            Compass::East => 'e',
            Compass::South => 's',
            Compass::West => 'w',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Go(Compass),
    /// Clockwise quarter-turn of the field.
    Rotate,
}

impl MoveKind {
    pub fn letter(self) -> char {
        match self {
            MoveKind::Go(c) => c.letter(),
            MoveKind::Rotate => 'r',
        }
    }

    fn from_letter(c: char) -> Option<MoveKind> {
        Some(match c {
            'n' => MoveKind::Go(Compass::North),
            'e' => MoveKind::Go(Compass::East),
            's' => MoveKind::Go(Compass::South),
            'w' => MoveKind::Go(Compass::West),
            'r' => MoveKind::Rotate,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub count: u32,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.count, self.kind.letter())
    }
}

/// Run-length encoded command list; adjacent moves of one kind are merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MoveSequence {
    moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, kind: MoveKind, count: u32) {
        if count == 0 {
            return;
        }
        match self.moves.last_mut() {
            Some(last) if last.kind == kind => last.count += count,
            _ => self.moves.push(Move { kind, count }),
        }
    }

    pub fn with(&self, kind: MoveKind, count: u32) -> MoveSequence {
        let mut next = self.clone();
        next.push(kind, count);
        next
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Unit translations only; rotations are not counted.
    pub fn translation_steps(&self) -> u32 {
        self.moves.iter().filter(|m| m.kind != MoveKind::Rotate).map(|m| m.count).sum()
    }

    pub fn rotations(&self) -> u32 {
        self.moves.iter().filter(|m| m.kind == MoveKind::Rotate).map(|m| m.count).sum()
    }

    /// Every unit command in order, e.g. `2r, 1n` becomes `[r, r, n]`.
    pub fn unit_commands(&self) -> impl Iterator<Item = MoveKind> + '_ {
        self.moves.iter().flat_map(|m| std::iter::repeat_n(m.kind, m.count as usize))
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

pub fn format_moves(seq: &MoveSequence) -> String {
    seq.to_string()
}

/// Parses the `<count><op>` shorthand. Token positions in errors are 1-based.
pub fn parse_moves(text: &str) -> Result<MoveSequence> {
    let mut seq = MoveSequence::new();
    if text.trim().is_empty() {
        return Ok(seq);
    }
    for (i, token) in text.split(',').enumerate() {
        let position = i + 1;
        let token = token.trim();
        let err = |message: String| Error::Parse { token: position, message };
        let Some(op) = token.chars().last() else {
            return Err(err("empty token".into()));
        };
        let kind = MoveKind::from_letter(op)
            .ok_or_else(|| err(format!("unknown move {op:?} in {token:?}")))?;
        let digits = &token[..token.len() - op.len_utf8()];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(format!("missing or bad count in {token:?}")));
        }
        let count: u32 = digits.parse().map_err(|_| err(format!("count overflow in {token:?}")))?;
        if count == 0 {
            return Err(err(format!("zero count in {token:?}")));
        }
        match seq.moves.last() {
            Some(last) if last.kind == kind => {
                return Err(err(format!("{token:?} repeats the previous move kind")))
            }
            _ => seq.moves.push(Move { kind, count }),
        }
    }
    Ok(seq)
}
