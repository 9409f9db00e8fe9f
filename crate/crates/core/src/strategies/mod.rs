//! Deterministic strategies and the registry the CLI uses to find them.

mod gcc;
mod hub;
mod neighbor;
mod projection;
mod simplex;

pub use gcc::GridCyclesB;
pub use hub::{HubMirrorA, SolverReply};
pub use neighbor::BestNeighborB;
pub use projection::{project_pi, Projection};
pub use simplex::SimplexB;

use crate::error::{Error, Result};
use crate::graph::{multi_source_bfs, Graph, UNREACHABLE};
use crate::tree::{CentralA, LegDefenseB, TwoRoundA};
use crate::voronoi::{Player, Position};

/// A fixed rule mapping the game so far to the next move of the player it
/// plays for. Implementations must be deterministic and return an
/// unclaimed vertex.
pub trait Strategy: Send + Sync {
    fn name(&self) -> String;

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize>;
}

/// Lowest-id unclaimed vertex.
pub fn lowest_free(g: &Graph, pos: &Position) -> Option<usize> {
    (0..g.n()).find(|&v| !pos.is_claimed(v))
}

/// The unclaimed vertex that maximizes `player`'s immediate half-units,
/// ties by lowest id. Before the opponent has moved every vertex scores the
/// same and the lowest free id is returned.
pub fn greedy_move(g: &Graph, pos: &Position, player: Player) -> Option<usize> {
    let n = g.n();
    let opp = pos.claims(player.other());
    let first = lowest_free(g, pos)?;
    if opp.is_empty() {
        return Some(first);
    }
    let own = pos.claims(player);
    let d_own = if own.is_empty() { vec![UNREACHABLE; n] } else { multi_source_bfs(g, own) };
    let d_opp = multi_source_bfs(g, opp);
    let base: i64 = (0..n).map(|w| share(d_own[w], d_opp[w])).sum();
    let mut best = (i64::MIN, first);
    for v in (0..n).filter(|&v| !pos.is_claimed(v)) {
        let row = g.distances(v);
        let mut gain = 0;
        for w in 0..n {
            if row[w] < d_own[w] {
                gain += share(row[w], d_opp[w]) - share(d_own[w], d_opp[w]);
            }
        }
        if base + gain > best.0 {
            best = (base + gain, v);
        }
    }
    Some(best.1)
}

fn share(own: u32, opp: u32) -> i64 {
    match own.cmp(&opp) {
        std::cmp::Ordering::Less => 2,
        std::cmp::Ordering::Equal => 1,
        std::cmp::Ordering::Greater => 0,
    }
}

pub(crate) fn no_move(name: &str, pos: &Position) -> Error {
    Error::StrategyFailure {
        strategy: name.to_string(),
        history: pos.moves(),
        reason: "no unclaimed vertex left".into(),
    }
}

/// Greedy play for whichever side is to move.
#[derive(Debug, Clone, Copy, Default)]
pub struct Greedy;

impl Strategy for Greedy {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        greedy_move(g, pos, pos.to_move()).ok_or_else(|| no_move("greedy", pos))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LowestFree;

impl Strategy for LowestFree {
    fn name(&self) -> String {
        "lowest-free".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        lowest_free(g, pos).ok_or_else(|| no_move("lowest-free", pos))
    }
}

/// Registered strategy names, with the player each one plays for (`None`
/// when it plays for whoever is to move).
pub const STRATEGY_NAMES: &[(&str, Option<Player>)] = &[
    ("central", Some(Player::A)),
    ("two-round", Some(Player::A)),
    ("leg-defense", Some(Player::B)),
    ("simplex", Some(Player::B)),
    ("grid-cycles", Some(Player::B)),
    ("best-neighbor", Some(Player::B)),
    ("hub-mirror", Some(Player::A)),
    ("greedy", None),
    ("lowest-free", None),
];

/// Builds a strategy by name for play on `g`. Family-aware strategies read
/// the graph's metadata and fail if it is missing.
pub fn by_name(name: &str, g: &Graph) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "central" => Box::new(CentralA::new(g)?),
        "two-round" => Box::new(TwoRoundA::new(g)?),
        "leg-defense" => Box::new(LegDefenseB::new(g)?),
        "simplex" => Box::new(SimplexB::new(g)?),
        "grid-cycles" => Box::new(GridCyclesB::new(g)?),
        "best-neighbor" => Box::new(BestNeighborB),
        "hub-mirror" => Box::new(HubMirrorA::new(g, Box::new(SolverReply::default()))?),
        "greedy" => Box::new(Greedy),
        "lowest-free" => Box::new(LowestFree),
        other => {
            let known: Vec<&str> = STRATEGY_NAMES.iter().map(|(n, _)| *n).collect();
            return Err(Error::InvalidParameter(format!("unknown strategy {other:?}; known: {}", known.join(", "))));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_path, gen_star};
    use crate::voronoi::partition;

    #[test]
    fn greedy_matches_brute_force() {
        let g = gen_path(7).unwrap();
        let pos = Position::from_moves(&[1]);
        let m = greedy_move(&g, &pos, Player::B).unwrap();
        let best = (0..7)
            .filter(|&v| v != 1)
            .min_by_key(|&v| (partition(&g, &Position::from_moves(&[1, v])).unwrap().score.a_half_units, v))
            .unwrap();
        assert_eq!(m, best);
        assert_eq!(m, 2);
    }

    #[test]
    fn greedy_first_move_is_lowest_free() {
        let g = gen_star(3).unwrap();
        assert_eq!(greedy_move(&g, &Position::new(), Player::A), Some(0));
    }

    #[test]
    fn lowest_free_skips_claims() {
        let g = gen_path(3).unwrap();
        assert_eq!(lowest_free(&g, &Position::from_moves(&[0, 1])), Some(2));
        assert_eq!(lowest_free(&g, &Position::from_moves(&[0, 1, 2])), None);
    }

    #[test]
    fn registry_knows_every_name() {
        let g = gen_star(3).unwrap();
        for (name, _) in STRATEGY_NAMES {
            match by_name(name, &g) {
                Ok(s) => assert_eq!(s.name().split('(').next().unwrap(), *name),
                Err(Error::MissingMetadata(_)) | Err(Error::NotATree { .. }) => {}
                Err(e) => panic!("{name}: {e}"),
            }
        }
        assert!(by_name("nope", &g).is_err());
    }
}
