use crate::error::{Error, Result};
use crate::families::{BroomLegMeta, FamilyMetadata};
use crate::graph::Graph;
use crate::strategies::{greedy_move, no_move, Strategy};
use crate::voronoi::{Player, Position};

use super::orientation::{require_tree, weight_and_orient};
use super::threshold::{find_threshold, tree_path, ThresholdResult};

fn greedy(g: &Graph, pos: &Position, player: Player, name: &str) -> Result<usize> {
    greedy_move(g, pos, player).ok_or_else(|| no_move(name, pos))
}

/// One-round tree play for A: the central vertex (or the lower endpoint of
/// the central edge), then greedy.
#[derive(Debug, Clone)]
pub struct CentralA {
    center: usize,
}

impl CentralA {
    pub fn new(g: &Graph) -> Result<CentralA> {
        Ok(CentralA { center: weight_and_orient(g)?.central_choice() })
    }
}

impl Strategy for CentralA {
    fn name(&self) -> String {
        "central".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        if pos.claimed_a.is_empty() && !pos.is_claimed(self.center) {
            return Ok(self.center);
        }
        greedy(g, pos, Player::A, "central")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plan {
    Single {
        c: usize,
    },
    /// Open on `first`; take `second` unless B did, in which case take
    /// `prime`, the child of `second` with the largest outer component.
    Pair {
        first: usize,
        second: usize,
        prime: Option<usize>,
    },
}

/// Two-round tree play for A built on the threshold split.
#[derive(Debug, Clone)]
pub struct TwoRoundA {
    plan: Plan,
}

impl TwoRoundA {
    pub fn new(g: &Graph) -> Result<TwoRoundA> {
        let plan = match find_threshold(g)? {
            ThresholdResult::Single { c } => Plan::Single { c },
            ThresholdResult::Pair { u, v, .. } => {
                let path = tree_path(g, u, v);
                let (next_u, next_v) = (path[1], path[path.len() - 2]);
                let mut best: Option<(usize, usize, usize)> = None; // (size, child, owner)
                for (owner, skip) in [(u, next_u), (v, next_v)] {
                    for &x in g.neighbors(owner).iter().filter(|&&x| x != skip) {
                        let size = outer_size(g, x, u, v);
                        if best.is_none_or(|(s, c, _)| size > s || (size == s && x < c)) {
                            best = Some((size, x, owner));
                        }
                    }
                }
                match best {
                    Some((_, child, owner)) if owner == u => Plan::Pair { first: v, second: u, prime: Some(child) },
                    Some((_, child, _)) => Plan::Pair { first: u, second: v, prime: Some(child) },
                    None => Plan::Pair { first: v, second: u, prime: None },
                }
            }
        };
        Ok(TwoRoundA { plan })
    }

    /// The vertices the strategy opens with and aims for next.
    pub fn opening(&self) -> (usize, Option<usize>) {
        match self.plan {
            Plan::Single { c } => (c, None),
            Plan::Pair { first, second, .. } => (first, Some(second)),
        }
    }
}

/// Size of the component of `x` in `T - {u, v}`.
fn outer_size(g: &Graph, x: usize, u: usize, v: usize) -> usize {
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    seen[u] = true;
    seen[v] = true;
    let mut stack = vec![x];
    let mut count = 0;
    while let Some(y) = stack.pop() {
        count += 1;
        for &z in g.neighbors(y) {
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    count
}

impl Strategy for TwoRoundA {
    fn name(&self) -> String {
        "two-round".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        let free = |v: usize| !pos.is_claimed(v);
        match (pos.claimed_a.len(), self.plan) {
            (0, Plan::Single { c }) => return Ok(c),
            (0, Plan::Pair { first, .. }) => return Ok(first),
            (1, Plan::Pair { second, prime, .. }) => {
                if free(second) {
                    return Ok(second);
                }
                if let Some(p) = prime.filter(|&p| free(p)) {
                    return Ok(p);
                }
            }
            _ => {}
        }
        greedy(g, pos, Player::A, "two-round")
    }
}

/// B's defence on the broom-leg tree: answer a first move on the center with
/// the head and then hold one untouched leg, otherwise take the center and
/// hold every leg A enters, keeping a pebble right below each of A's.
#[derive(Debug, Clone)]
pub struct LegDefenseB {
    meta: BroomLegMeta,
    /// Leg index of every path vertex and leg broom leaf.
    leg_of: Vec<Option<usize>>,
    /// Position on its leg path of every path vertex.
    path_index: Vec<Option<usize>>,
    /// Broom anchor of every leg broom leaf.
    anchor_of: Vec<Option<usize>>,
    in_head: Vec<bool>,
}

impl LegDefenseB {
    pub fn new(g: &Graph) -> Result<LegDefenseB> {
        require_tree(g)?;
        let Some(FamilyMetadata::BroomLeg(meta)) = g.family() else {
            return Err(Error::MissingMetadata("broom-leg"));
        };
        let n = g.n();
        let mut leg_of = vec![None; n];
        let mut path_index = vec![None; n];
        let mut anchor_of = vec![None; n];
        let mut in_head = vec![false; n];
        in_head[meta.head] = true;
        for &l in &meta.head_leaves {
            in_head[l] = true;
        }
        for (i, leg) in meta.legs.iter().enumerate() {
            for (j, &p) in leg.path.iter().enumerate() {
                leg_of[p] = Some(i);
                path_index[p] = Some(j);
            }
            for broom in &leg.brooms {
                for &l in &broom.leaves {
                    leg_of[l] = Some(i);
                    anchor_of[l] = Some(broom.anchor);
                }
            }
        }
        Ok(LegDefenseB { meta: meta.clone(), leg_of, path_index, anchor_of, in_head })
    }

    /// The vertex right below a path vertex, or the anchor of a broom leaf.
    fn cover(&self, v: usize) -> Option<usize> {
        if let (Some(l), Some(j)) = (self.leg_of[v], self.path_index[v]) {
            return self.meta.legs[l].path.get(j + 1).copied();
        }
        self.anchor_of[v]
    }

    fn defend(&self, g: &Graph, pos: &Position, v: usize) -> Result<usize> {
        match self.cover(v) {
            Some(w) if !pos.is_claimed(w) => Ok(w),
            _ => greedy(g, pos, Player::B, "leg-defense"),
        }
    }
}

impl Strategy for LegDefenseB {
    fn name(&self) -> String {
        "leg-defense".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        let m = &self.meta;
        let a = &pos.claimed_a;
        let round = pos.claimed_b.len();
        let Some(&last) = a.last() else {
            return Err(no_move("leg-defense", pos));
        };
        if round == 0 {
            let reply = if last == m.center { m.head } else { m.center };
            return Ok(reply);
        }
        if a[0] == m.center {
            if round == 1 {
                let untouched = (0..m.legs.len()).find(|&l| a.iter().all(|&v| self.leg_of[v] != Some(l)));
                if let Some(top) = untouched.map(|l| m.legs[l].path[0]).filter(|&t| !pos.is_claimed(t)) {
                    return Ok(top);
                }
                return greedy(g, pos, Player::B, "leg-defense");
            }
            let held = self.leg_of[pos.claimed_b[1]];
            if held.is_some() && self.leg_of[last] == held {
                return self.defend(g, pos, last);
            }
            return greedy(g, pos, Player::B, "leg-defense");
        }
        if self.leg_of[last].is_some() {
            return self.defend(g, pos, last);
        }
        if self.in_head[last] && self.leg_of[a[0]].is_some() {
            // catch up on the leg A entered with her first move
            return self.defend(g, pos, a[0]);
        }
        greedy(g, pos, Player::B, "leg-defense")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_broom_leg_tree, gen_path, gen_star};

    #[test]
    fn central_takes_the_center() {
        let g = gen_path(5).unwrap();
        assert_eq!(CentralA::new(&g).unwrap().choose(&g, &Position::new()).unwrap(), 2);
        let g = gen_path(6).unwrap();
        assert_eq!(CentralA::new(&g).unwrap().choose(&g, &Position::new()).unwrap(), 2);
    }

    #[test]
    fn two_round_on_a_star_takes_the_center() {
        let g = gen_star(5).unwrap();
        let s = TwoRoundA::new(&g).unwrap();
        assert_eq!(s.opening(), (0, None));
    }

    #[test]
    fn two_round_pair_plan_on_p9() {
        // u=3, v=5; children 2 (outer size 3) and 6 (size 3); the tie goes to 2, a child of u
        let g = gen_path(9).unwrap();
        let s = TwoRoundA::new(&g).unwrap();
        assert_eq!(s.opening(), (5, Some(3)));
        assert_eq!(s.choose(&g, &Position::from_moves(&[5, 0])).unwrap(), 3);
        assert_eq!(s.choose(&g, &Position::from_moves(&[5, 3])).unwrap(), 2);
    }

    #[test]
    fn leg_defense_opening_replies() {
        let g = gen_broom_leg_tree(3, 2).unwrap();
        let Some(FamilyMetadata::BroomLeg(m)) = g.family() else { panic!() };
        let s = LegDefenseB::new(&g).unwrap();
        assert_eq!(s.choose(&g, &Position::from_moves(&[m.center])).unwrap(), m.head);
        assert_eq!(s.choose(&g, &Position::from_moves(&[m.head])).unwrap(), m.center);
        // A opened on c and then entered leg 0: B tops leg 1
        let top0 = m.legs[0].path[0];
        let pos = Position::from_moves(&[m.center, m.head, top0]);
        assert_eq!(s.choose(&g, &pos).unwrap(), m.legs[1].path[0]);
    }

    #[test]
    fn leg_defense_covers_below() {
        let g = gen_broom_leg_tree(3, 2).unwrap();
        let Some(FamilyMetadata::BroomLeg(m)) = g.family() else { panic!() };
        let s = LegDefenseB::new(&g).unwrap();
        let leg = &m.legs[1];
        // A's first move on a leg path vertex: B takes c, then answers the head by covering below it
        let pos = Position::from_moves(&[leg.path[1], m.center, m.head_leaves[0]]);
        assert_eq!(s.choose(&g, &pos).unwrap(), leg.path[2]);
        // a broom leaf is covered by its anchor
        let leaf = leg.brooms[2].leaves[0];
        let pos = Position::from_moves(&[m.head, m.center, leaf]);
        assert_eq!(s.choose(&g, &pos).unwrap(), leg.brooms[2].anchor);
    }

    #[test]
    fn leg_defense_needs_metadata() {
        let g = gen_path(5).unwrap();
        assert!(matches!(LegDefenseB::new(&g), Err(Error::MissingMetadata(_))));
    }
}
