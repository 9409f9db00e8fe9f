use crate::error::{Error, Result};
use crate::families::FamilyMetadata;
use crate::graph::Graph;
use crate::solver::{solve_position, SolverConfig};
use crate::voronoi::Position;

use super::{lowest_free, no_move, Strategy};

/// Plays an optimal move for the side to move, looking ahead only to the end
/// of the current round.
#[derive(Debug, Clone, Default)]
pub struct SolverReply {
    pub config: SolverConfig,
}

impl Strategy for SolverReply {
    fn name(&self) -> String {
        "solver-reply".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        let rounds = pos.plies() / 2 + 1;
        let res = solve_position(g, pos, rounds, &self.config)?;
        res.principal_variation.first().copied().ok_or_else(|| no_move("solver-reply", pos))
    }
}

/// A on a hub joined to `delta` copies of a graph: take the hub, then answer
/// each B move inside the same copy with `inner`, which sees the copy alone
/// with B as its first player.
pub struct HubMirrorA {
    hub: usize,
    copies: Vec<Vec<usize>>,
    copy_of: Vec<Option<usize>>,
    local_id: Vec<usize>,
    local: Vec<Graph>,
    inner: Box<dyn Strategy>,
}

impl HubMirrorA {
    pub fn new(g: &Graph, inner: Box<dyn Strategy>) -> Result<HubMirrorA> {
        let Some(FamilyMetadata::DeltaCopies(meta)) = g.family() else {
            return Err(Error::MissingMetadata("delta-copies"));
        };
        let mut local_id = vec![usize::MAX; g.n()];
        for copy in &meta.copies {
            for (j, &v) in copy.iter().enumerate() {
                local_id[v] = j;
            }
        }
        let local = meta.copies.iter().map(|c| g.induced(c)).collect::<Result<Vec<_>>>()?;
        Ok(HubMirrorA {
            hub: meta.hub,
            copies: meta.copies.clone(),
            copy_of: meta.copy_of(g.n()),
            local_id,
            local,
            inner,
        })
    }

    fn inner_reply(&self, pos: &Position, i: usize) -> Result<Option<usize>> {
        let in_copy = |claims: &[usize]| -> Vec<usize> {
            claims.iter().filter(|&&v| self.copy_of[v] == Some(i)).map(|&v| self.local_id[v]).collect()
        };
        let local_pos = Position { claimed_a: in_copy(&pos.claimed_b), claimed_b: in_copy(&pos.claimed_a) };
        if local_pos.claimed_a.len() != local_pos.claimed_b.len() + 1 {
            return Ok(None);
        }
        let m = self.inner.choose(&self.local[i], &local_pos)?;
        let global = self.copies[i].get(m).copied();
        Ok(global.filter(|&v| !pos.is_claimed(v)))
    }
}

impl Strategy for HubMirrorA {
    fn name(&self) -> String {
        format!("hub-mirror({})", self.inner.name())
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        if pos.claimed_a.is_empty() && !pos.is_claimed(self.hub) {
            return Ok(self.hub);
        }
        if let Some(i) = pos.claimed_b.last().and_then(|&b| self.copy_of[b]) {
            if let Some(v) = self.inner_reply(pos, i)? {
                return Ok(v);
            }
            if let Some(&v) = self.copies[i].iter().find(|&&v| !pos.is_claimed(v)) {
                return Ok(v);
            }
        }
        lowest_free(g, pos).ok_or_else(|| no_move("hub-mirror", pos))
    }
}
