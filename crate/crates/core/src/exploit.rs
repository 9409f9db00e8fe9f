//! Worst-case evaluation of a fixed strategy against an exhaustive adversary.
//!
//! Only the adversary's moves branch; the holder's moves come from the
//! strategy, so the search tree has about `n^t` leaves.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{Budget, GameSpec};
use crate::strategies::Strategy;
use crate::voronoi::{partition, ratio_string, Player, Position, Score};

/// Round at which a per-round predicate failed, with the line so far.
type Failure = (usize, Vec<usize>);

/// What the holder's payoff is measured on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    Whole,
    /// Only vertices where the mask is set count.
    Subset(Vec<bool>),
}

impl Objective {
    pub fn subset(n: usize, vertices: &[usize]) -> Objective {
        let mut mask = vec![false; n];
        for &v in vertices {
            mask[v] = true;
        }
        Objective::Subset(mask)
    }

    pub fn size(&self, n: usize) -> usize {
        match self {
            Objective::Whole => n,
            Objective::Subset(mask) => mask.iter().filter(|&&m| m).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploitResult {
    pub strategy: String,
    pub holder: Player,
    /// Holder's half-units on the objective at the worst adversary line.
    pub guaranteed_half_units: u64,
    pub objective_size: usize,
    /// Whole-graph score (A's half-units) at the end of the witness line.
    pub value: Score,
    /// The adversary's moves on the lexicographically first worst line.
    pub witness_line: Vec<usize>,
    /// The complete interleaved game of the witness line.
    pub moves: Vec<usize>,
    pub nodes_searched: u64,
}

impl ExploitResult {
    /// Guaranteed share of the objective, in `[0, 1]`.
    pub fn guaranteed_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.guaranteed_half_units as i64, 2 * self.objective_size as i64)
    }
}

#[derive(Serialize)]
struct ExploitJson<'a> {
    strategy: &'a str,
    holder: Player,
    guaranteed: Guaranteed,
    ratio: String,
    value: Score,
    witness_line: &'a [usize],
    moves: &'a [usize],
    nodes_searched: u64,
}

#[derive(Serialize)]
struct Guaranteed {
    half_units: u64,
    n: usize,
}

impl Serialize for ExploitResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExploitJson {
            strategy: &self.strategy,
            holder: self.holder,
            guaranteed: Guaranteed { half_units: self.guaranteed_half_units, n: self.objective_size },
            ratio: ratio_string(self.guaranteed_ratio()),
            value: self.value,
            witness_line: &self.witness_line,
            moves: &self.moves,
            nodes_searched: self.nodes_searched,
        }
        .serialize(s)
    }
}

/// Outcome of [`per_round_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum RoundCheck {
    Pass {
        lines: u64,
    },
    /// The predicate failed after `round` on the interleaved line `witness`.
    Fail {
        round: usize,
        witness: Vec<usize>,
    },
}

impl RoundCheck {
    pub fn passed(&self) -> bool {
        matches!(self, RoundCheck::Pass { .. })
    }
}

struct Walker<'a> {
    g: &'a Graph,
    strat: &'a dyn Strategy,
    holder: Player,
    plies: usize,
    budget: &'a Budget,
    nodes: AtomicU64,
    start: Instant,
}

impl Walker<'_> {
    fn tick(&self) -> Result<()> {
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        self.budget.check(nodes, self.start)
    }

    fn holder_move(&self, pos: &Position) -> Result<usize> {
        let m = self.strat.choose(self.g, pos)?;
        if m >= self.g.n() || pos.is_claimed(m) {
            return Err(Error::IllegalMove { strategy: self.strat.name(), vertex: m, history: pos.moves() });
        }
        Ok(m)
    }

    fn first_adversary_ply(&self) -> usize {
        match self.holder {
            Player::A => 1,
            Player::B => 0,
        }
    }

    fn adversary_moves(&self, pos: &Position) -> Vec<usize> {
        (0..self.g.n()).filter(|&v| !pos.is_claimed(v)).collect()
    }

    /// Minimum of `leaf` over adversary play from `pos`, with the rest of
    /// the line that reaches it.
    fn min_line<F>(&self, pos: &mut Position, leaf: &F) -> Result<(u64, Vec<usize>)>
    where
        F: Fn(&Position) -> Result<u64> + Sync,
    {
        self.tick()?;
        if pos.plies() == self.plies {
            return Ok((leaf(pos)?, Vec::new()));
        }
        if pos.to_move() == self.holder {
            let m = self.holder_move(pos)?;
            pos.push(m);
            let r = self.min_line(pos, leaf);
            pos.pop();
            let (v, mut line) = r?;
            line.insert(0, m);
            return Ok((v, line));
        }
        let moves = self.adversary_moves(pos);
        let results: Vec<Result<(u64, Vec<usize>)>> = if pos.plies() == self.first_adversary_ply() {
            moves
                .par_iter()
                .map(|&m| {
                    let mut p = pos.clone();
                    p.push(m);
                    self.min_line(&mut p, leaf)
                })
                .collect()
        } else {
            moves
                .iter()
                .map(|&m| {
                    pos.push(m);
                    let r = self.min_line(pos, leaf);
                    pos.pop();
                    r
                })
                .collect()
        };
        let mut best: Option<(u64, Vec<usize>)> = None;
        for (&m, r) in moves.iter().zip(results) {
            let (v, line) = r?;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                let mut full = Vec::with_capacity(line.len() + 1);
                full.push(m);
                full.extend(line);
                best = Some((v, full));
            }
        }
        Ok(best.expect("2t <= n leaves the adversary a move"))
    }

    /// Lines visited, and the first failing round with its line.
    fn first_failure<P>(&self, pos: &mut Position, pred: &P) -> Result<(u64, Option<Failure>)>
    where
        P: Fn(&Graph, &Position, usize) -> bool + Sync,
    {
        self.tick()?;
        if pos.plies() > 0 && pos.plies().is_multiple_of(2) {
            let round = pos.plies() / 2;
            if !pred(self.g, pos, round) {
                return Ok((1, Some((round, pos.moves()))));
            }
        }
        if pos.plies() == self.plies {
            return Ok((1, None));
        }
        if pos.to_move() == self.holder {
            let m = self.holder_move(pos)?;
            pos.push(m);
            let r = self.first_failure(pos, pred);
            pos.pop();
            return r;
        }
        let moves = self.adversary_moves(pos);
        let mut lines = 0;
        if pos.plies() == self.first_adversary_ply() {
            let results: Vec<_> = moves
                .par_iter()
                .map(|&m| {
                    let mut p = pos.clone();
                    p.push(m);
                    self.first_failure(&mut p, pred)
                })
                .collect();
            for r in results {
                let (l, fail) = r?;
                lines += l;
                if fail.is_some() {
                    return Ok((lines, fail));
                }
            }
        } else {
            for m in moves {
                pos.push(m);
                let r = self.first_failure(pos, pred);
                pos.pop();
                let (l, fail) = r?;
                lines += l;
                if fail.is_some() {
                    return Ok((lines, fail));
                }
            }
        }
        Ok((lines, None))
    }
}

/// Exact worst-case payoff of `strat` playing for `holder` over all
/// adversary lines. The witness is the lexicographically first line (in
/// adversary vertex ids) reaching the minimum.
pub fn exploit(
    spec: &GameSpec,
    strat: &dyn Strategy,
    holder: Player,
    objective: &Objective,
    budget: &Budget,
) -> Result<ExploitResult> {
    let g = spec.graph;
    if let Objective::Subset(mask) = objective {
        if mask.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "objective mask has {} entries for {} vertices",
                mask.len(),
                g.n()
            )));
        }
    }
    let walker =
        Walker { g, strat, holder, plies: spec.plies(), budget, nodes: AtomicU64::new(0), start: Instant::now() };
    let leaf = |pos: &Position| -> Result<u64> {
        let p = partition(g, pos)?;
        Ok(match objective {
            Objective::Whole => p.score.half_units(holder),
            Objective::Subset(mask) => p.half_units_on(holder, mask),
        })
    };
    let (guaranteed, moves) = walker.min_line(&mut Position::new(), &leaf)?;
    let value = partition(g, &Position::from_moves(&moves))?.score;
    let witness_line = adversary_moves(&moves, holder);
    Ok(ExploitResult {
        strategy: strat.name(),
        holder,
        guaranteed_half_units: guaranteed,
        objective_size: objective.size(g.n()),
        value,
        witness_line,
        moves,
        nodes_searched: walker.nodes.load(Ordering::Relaxed),
    })
}

/// Plays `strat` for `holder` against every adversary line and evaluates
/// `predicate(graph, position, round)` after each completed round. Returns
/// the first failing line in adversary-id order.
pub fn per_round_check<P>(
    spec: &GameSpec,
    strat: &dyn Strategy,
    holder: Player,
    predicate: P,
    budget: &Budget,
) -> Result<RoundCheck>
where
    P: Fn(&Graph, &Position, usize) -> bool + Sync,
{
    let walker = Walker {
        g: spec.graph,
        strat,
        holder,
        plies: spec.plies(),
        budget,
        nodes: AtomicU64::new(0),
        start: Instant::now(),
    };
    let (lines, fail) = walker.first_failure(&mut Position::new(), &predicate)?;
    Ok(match fail {
        None => RoundCheck::Pass { lines },
        Some((round, witness)) => RoundCheck::Fail { round, witness },
    })
}

/// Plays `strat` for `holder` against a fixed adversary line and returns
/// the complete interleaved game.
pub fn replay(g: &Graph, strat: &dyn Strategy, holder: Player, adversary: &[usize]) -> Result<Vec<usize>> {
    let mut pos = Position::new();
    let mut rest = adversary.iter();
    while pos.plies() < 2 * adversary.len() {
        if pos.to_move() == holder {
            let m = strat.choose(g, &pos)?;
            if m >= g.n() || pos.is_claimed(m) {
                return Err(Error::IllegalMove { strategy: strat.name(), vertex: m, history: pos.moves() });
            }
            pos.push(m);
        } else {
            let &m = rest.next().expect("one adversary move per round");
            g.check_vertex(m)?;
            if pos.is_claimed(m) {
                return Err(Error::DuplicateClaim(m));
            }
            pos.push(m);
        }
    }
    Ok(pos.moves())
}

fn adversary_moves(moves: &[usize], holder: Player) -> Vec<usize> {
    let skip = match holder {
        Player::A => 1,
        Player::B => 0,
    };
    moves.iter().skip(skip).step_by(2).copied().collect()
}
