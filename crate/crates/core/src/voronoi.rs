//! Positions, exact scores and the graph Voronoi partition.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{multi_source_bfs, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Player::A => 'A',
            Player::B => 'B',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Claimed vertices of both players in move order. A moves first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub claimed_a: Vec<usize>,
    pub claimed_b: Vec<usize>,
}

impl Position {
    pub fn new() -> Position {
        Position::default()
    }

    /// Replays an interleaved move list `a1, b1, a2, b2, ...`.
    pub fn from_moves(moves: &[usize]) -> Position {
        let mut pos = Position::new();
        for &m in moves {
            pos.push(m);
        }
        pos
    }

    pub fn to_move(&self) -> Player {
        if self.claimed_a.len() == self.claimed_b.len() {
            Player::A
        } else {
            Player::B
        }
    }

    pub fn plies(&self) -> usize {
        self.claimed_a.len() + self.claimed_b.len()
    }

    /// Number of completed rounds.
    pub fn rounds_completed(&self) -> usize {
        self.claimed_b.len()
    }

    pub fn claims(&self, player: Player) -> &[usize] {
        match player {
            Player::A => &self.claimed_a,
            Player::B => &self.claimed_b,
        }
    }

    pub fn is_claimed(&self, v: usize) -> bool {
        self.claimed_a.contains(&v) || self.claimed_b.contains(&v)
    }

    /// Appends a move for the side to move; no legality check.
    pub fn push(&mut self, v: usize) {
        match self.to_move() {
            Player::A => self.claimed_a.push(v),
            Player::B => self.claimed_b.push(v),
        }
    }

    pub fn pop(&mut self) -> Option<usize> {
        match self.to_move() {
            Player::A => self.claimed_b.pop(),
            Player::B => self.claimed_a.pop(),
        }
    }

    pub fn moves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.plies());
        for i in 0..self.claimed_a.len() {
            out.push(self.claimed_a[i]);
            if let Some(&b) = self.claimed_b.get(i) {
                out.push(b);
            }
        }
        out
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let (a, b) = (self.claimed_a.len(), self.claimed_b.len());
        if a != b && a != b + 1 {
            return Err(Error::BadAlternation { a, b });
        }
        let mut seen = vec![false; n];
        for &v in self.claimed_a.iter().chain(&self.claimed_b) {
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateClaim(v));
            }
        }
        Ok(())
    }
}

/// A's payoff in half-vertex units, out of `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Score {
    pub a_half_units: u64,
    pub n: usize,
}

impl Score {
    pub fn new(a_half_units: u64, n: usize) -> Score {
        debug_assert!(a_half_units <= 2 * n as u64);
        Score { a_half_units, n }
    }

    pub fn b_half_units(&self) -> u64 {
        2 * self.n as u64 - self.a_half_units
    }

    pub fn half_units(&self, player: Player) -> u64 {
        match player {
            Player::A => self.a_half_units,
            Player::B => self.b_half_units(),
        }
    }

    /// The Voronoi ratio `a_half_units / 2n`, reduced.
    pub fn ratio(&self) -> Ratio<i64> {
        Ratio::new(self.a_half_units as i64, 2 * self.n as i64)
    }
}

impl Serialize for Score {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Score", 2)?;
        st.serialize_field("half_units", &self.a_half_units)?;
        st.serialize_field("n", &self.n)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            half_units: u64,
            n: usize,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Score::new(raw.half_units, raw.n))
    }
}

pub fn ratio_string(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    A,
    B,
    Tied,
}

impl Owner {
    /// Half-units this ownership is worth to `player`.
    pub fn half_units_for(self, player: Player) -> u64 {
        match (self, player) {
            (Owner::Tied, _) => 1,
            (Owner::A, Player::A) | (Owner::B, Player::B) => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub owners: Vec<Owner>,
    pub score: Score,
}

impl Partition {
    /// Half-units of `player` counted over the vertices where `mask` is set.
    pub fn half_units_on(&self, player: Player, mask: &[bool]) -> u64 {
        self.owners.iter().zip(mask).filter(|(_, &m)| m).map(|(o, _)| o.half_units_for(player)).sum()
    }
}

/// Voronoi partition of `g` for the claims in `pos`. Claimed vertices sit at
/// distance 0 from their claimer and always belong to it.
pub fn partition(g: &Graph, pos: &Position) -> Result<Partition> {
    pos.validate(g.n())?;
    if pos.claimed_a.is_empty() {
        return Err(Error::EmptyClaims('A'));
    }
    if pos.claimed_b.is_empty() {
        return Err(Error::EmptyClaims('B'));
    }
    let da = multi_source_bfs(g, &pos.claimed_a);
    let db = multi_source_bfs(g, &pos.claimed_b);
    let mut half = 0u64;
    let owners = da
        .iter()
        .zip(&db)
        .map(|(&x, &y)| match x.cmp(&y) {
            std::cmp::Ordering::Less => {
                half += 2;
                Owner::A
            }
            std::cmp::Ordering::Equal => {
                half += 1;
                Owner::Tied
            }
            std::cmp::Ordering::Greater => Owner::B,
        })
        .collect();
    Ok(Partition { owners, score: Score::new(half, g.n()) })
}

/// `H(x)`: the vertices strictly closer to `x` than to `v`.
pub fn dominance_region(g: &Graph, x: usize, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(x)?;
    g.check_vertex(v)?;
    if x == v {
        return Err(Error::InvalidParameter(format!("dominance region needs x != v (both {x})")));
    }
    let dx = g.distances(x);
    let dv = g.distances(v);
    Ok((0..g.n()).filter(|&w| dx[w] < dv[w]).collect())
}
