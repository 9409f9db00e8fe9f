//! Bound verifiers. Every check compares exact rationals and produces a
//! [`BoundReport`].

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::enumerate::{enumerate_connected, enumerate_trees, random_bounded_degree, random_tree};
use crate::error::{Error, Result};
use crate::exploit::{exploit, per_round_check, Objective, RoundCheck};
use crate::families::{
    gen_broom_leg_tree, gen_delta_copies, gen_nine_vertex, gen_path, gen_simplex, gen_spider, gen_star,
    DeltaCopiesParams, FamilyMetadata, GridCyclesParams,
};
use crate::graph::{multi_source_bfs, Graph};
use crate::solver::{solve, Budget, GameSpec, SolverConfig};
use crate::strategies::{BestNeighborB, HubMirrorA, SimplexB, SolverReply, Strategy};
use crate::tree::{
    find_threshold, threshold_vertices, weight_and_orient, CentralA, LegDefenseB, ThresholdResult, TwoRoundA,
};
use crate::voronoi::{partition, ratio_string, Player, Position};

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    /// `lhs <= value <= rhs`.
    Within,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Within => "in",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound: String,
    pub instance: String,
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: Q,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: Q,
    pub relation: Relation,
    /// The checked quantity for [`Relation::Within`].
    #[serde(serialize_with = "ser_opt_ratio", skip_serializing_if = "Option::is_none")]
    pub value: Option<Q>,
    pub pass: bool,
    pub witness: Option<Vec<usize>>,
    pub seed: Option<u64>,
}

fn ser_ratio<S: Serializer>(r: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(*r))
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ratio_string(*r)),
        None => s.serialize_none(),
    }
}

impl BoundReport {
    pub fn compare(bound: &str, instance: &str, lhs: Q, relation: Relation, rhs: Q) -> BoundReport {
        let pass = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Within => panic!("use BoundReport::within"),
        };
        BoundReport {
            bound: bound.into(),
            instance: instance.into(),
            lhs,
            rhs,
            relation,
            value: None,
            pass,
            witness: None,
            seed: None,
        }
    }

    pub fn within(bound: &str, instance: &str, lo: Q, value: Q, hi: Q) -> BoundReport {
        BoundReport {
            bound: bound.into(),
            instance: instance.into(),
            lhs: lo,
            rhs: hi,
            relation: Relation::Within,
            value: Some(value),
            pass: lo <= value && value <= hi,
            witness: None,
            seed: None,
        }
    }

    fn with_witness(mut self, w: Vec<usize>) -> Self {
        self.witness = Some(w);
        self
    }

    fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    /// `lhs op rhs` with exact rationals, e.g. `4/5 = 4/5`.
    pub fn claim(&self) -> String {
        let r = ratio_string;
        match (self.relation, self.value) {
            (Relation::Within, Some(v)) => format!("{} in [{}, {}]", r(v), r(self.lhs), r(self.rhs)),
            _ => format!("{} {} {}", r(self.lhs), self.relation.symbol(), r(self.rhs)),
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} [{}] {}", self.bound, self.instance, self.claim())
    }
}

fn q(a: i64, b: i64) -> Q {
    Ratio::new(a, b)
}

fn vr(g: &Graph, t: usize, cfg: &SolverConfig) -> Result<(Q, Vec<usize>)> {
    let res = solve(&GameSpec::new(g, t)?, cfg)?;
    Ok((res.value.ratio(), res.principal_variation))
}

/// `VR(S_k, t) = 1 - t / (k + 1)`.
pub fn verify_star(k: usize, t: usize, cfg: &SolverConfig) -> Result<BoundReport> {
    let g = gen_star(k)?;
    let (v, pv) = vr(&g, t, cfg)?;
    let expected = q(1, 1) - q(t as i64, k as i64 + 1);
    Ok(BoundReport::compare("star", &format!("star:k={k}:t={t}"), v, Relation::Eq, expected).with_witness(pv))
}

/// Paths end in a draw, except that A wins odd paths in one round.
pub fn verify_path(n: usize, t: usize, cfg: &SolverConfig) -> Result<BoundReport> {
    if 2 * t >= n {
        return Err(Error::InvalidParameter(format!("path results need t < n/2 (got n={n}, t={t})")));
    }
    let g = gen_path(n)?;
    let (v, pv) = vr(&g, t, cfg)?;
    let expected = if n % 2 == 1 && t == 1 { q(n as i64 + 1, 2 * n as i64) } else { q(1, 2) };
    Ok(BoundReport::compare("path", &format!("path:n={n}:t={t}"), v, Relation::Eq, expected).with_witness(pv))
}

pub fn verify_nine_vertex(cfg: &SolverConfig) -> Result<BoundReport> {
    let (v, pv) = vr(&gen_nine_vertex()?, 1, cfg)?;
    Ok(BoundReport::compare("nine-vertex", "nine-vertex:t=1", v, Relation::Eq, q(4, 9)).with_witness(pv))
}

/// `VR(G,1)/2 <= VR(G,t) <= (VR(G,1) + 1)/2`.
pub fn verify_sandwich(g: &Graph, instance: &str, t: usize, cfg: &SolverConfig) -> Result<BoundReport> {
    let (v1, _) = vr(g, 1, cfg)?;
    let (vt, pv) = vr(g, t, cfg)?;
    let half = q(1, 2);
    let r = BoundReport::within("sandwich", &format!("{instance}:t={t}"), v1 * half, vt, (v1 + 1) * half);
    Ok(r.with_witness(pv))
}

/// Tree lower bounds: `VR(T,1) >= 1/2`, `VR(T,2) > 1/3` and `VR(T,t) >= 1/4`,
/// each reported where the tree is large enough to play it.
pub fn verify_tree_bounds(g: &Graph, instance: &str, t: usize, cfg: &SolverConfig) -> Result<Vec<BoundReport>> {
    if !g.is_tree() {
        return Err(Error::NotATree { n: g.n(), edges: g.edge_count() });
    }
    let mut out = Vec::new();
    if g.n() >= 2 {
        let (v1, pv) = vr(g, 1, cfg)?;
        out.push(BoundReport::compare("tree-one-round", instance, v1, Relation::Ge, q(1, 2)).with_witness(pv));
    }
    if g.n() >= 4 {
        let (v2, pv) = vr(g, 2, cfg)?;
        out.push(BoundReport::compare("tree-two-round", instance, v2, Relation::Gt, q(1, 3)).with_witness(pv.clone()));
        if t == 2 {
            let inst = format!("{instance}:t=2");
            out.push(BoundReport::compare("tree-quarter", &inst, v2, Relation::Ge, q(1, 4)).with_witness(pv));
        }
    }
    if t != 2 && 2 * t <= g.n() {
        let (vt, pv) = vr(g, t, cfg)?;
        let inst = format!("{instance}:t={t}");
        out.push(BoundReport::compare("tree-quarter", &inst, vt, Relation::Ge, q(1, 4)).with_witness(pv));
    }
    Ok(out)
}

/// `VR(G,1) <= 1 - 1/D + 1/(nD)` and `VR(G,t) <= 1 - 1/(2D) + 1/(2nD)`.
pub fn verify_degree_bounds(g: &Graph, instance: &str, t: usize, cfg: &SolverConfig) -> Result<Vec<BoundReport>> {
    let (n, delta) = (g.n() as i64, g.max_degree() as i64);
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    let (v1, pv) = vr(g, 1, cfg)?;
    let one = q(1, 1) - q(1, delta) + q(1, n * delta);
    out.push(BoundReport::compare("degree-one-round", instance, v1, Relation::Le, one).with_witness(pv));
    if 2 * t <= g.n() {
        let (vt, pv) = vr(g, t, cfg)?;
        let many = q(1, 1) - q(1, 2 * delta) + q(1, 2 * n * delta);
        let inst = format!("{instance}:t={t}");
        out.push(BoundReport::compare("degree-many-rounds", &inst, vt, Relation::Le, many).with_witness(pv));
    }
    Ok(out)
}

/// Sizes of the components left after deleting `removed`, by plain search.
pub fn component_sizes_without(g: &Graph, removed: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    for &r in removed {
        seen[r] = true;
    }
    let mut sizes = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Checks the threshold split by direct component counting: the largest
/// remaining component is at most `n/3`, both sides of a pair exceed `n/3`,
/// and there are one or two threshold vertices.
pub fn verify_threshold(g: &Graph, instance: &str) -> Result<Vec<BoundReport>> {
    let n = g.n() as i64;
    let o = weight_and_orient(g)?;
    let count = threshold_vertices(&o).len() as i64;
    let result = find_threshold(g)?;
    let removed = match result {
        ThresholdResult::Single { c } => vec![c],
        ThresholdResult::Pair { u, v, .. } => vec![u, v],
    };
    let largest = component_sizes_without(g, &removed).into_iter().max().unwrap_or(0) as i64;
    let mut out = vec![
        BoundReport::compare("threshold-components", instance, q(largest, n), Relation::Le, q(1, 3))
            .with_witness(removed.clone()),
        BoundReport::within("threshold-count", instance, q(1, 1), q(count, 1), q(2, 1)),
    ];
    if let ThresholdResult::Pair { u, v, .. } = result {
        let (tu, tv) = crate::tree::side_sizes(g, u, v);
        let smaller = tu.min(tv) as i64;
        out.push(
            BoundReport::compare("threshold-sides", instance, q(smaller, n), Relation::Gt, q(1, 3))
                .with_witness(removed),
        );
    }
    Ok(out)
}

/// Fully optimized search agrees with plain minimax, and its principal
/// variation replays to the value.
pub fn verify_solver_consistency(g: &Graph, instance: &str, t: usize) -> Result<BoundReport> {
    let spec = GameSpec::new(g, t)?;
    let fast = solve(&spec, &SolverConfig::default())?;
    let plain = solve(&spec, &SolverConfig::plain())?;
    let replayed = partition(g, &Position::from_moves(&fast.principal_variation))?.score;
    let inst = format!("{instance}:t={t}");
    let mut r =
        BoundReport::compare("solver-consistency", &inst, fast.value.ratio(), Relation::Eq, plain.value.ratio());
    r.pass &= replayed == fast.value;
    Ok(r.with_witness(fast.principal_variation))
}

/// Compares the share A's `strat` guarantees over `t` rounds with `rhs`.
fn a_guarantee(
    bound: &str,
    instance: &str,
    spec: &GameSpec,
    strat: &dyn Strategy,
    relation: Relation,
    rhs: Q,
    budget: &Budget,
) -> Result<BoundReport> {
    let res = exploit(spec, strat, Player::A, &Objective::Whole, budget)?;
    let inst = format!("{instance}:t={}", spec.rounds);
    Ok(BoundReport::compare(bound, &inst, res.guaranteed_ratio(), relation, rhs).with_witness(res.moves))
}

/// A's one-round central-vertex strategy keeps at least half of a tree.
pub fn verify_central(g: &Graph, instance: &str, budget: &Budget) -> Result<BoundReport> {
    let spec = GameSpec::new(g, 1)?;
    a_guarantee("central-strategy", instance, &spec, &CentralA::new(g)?, Relation::Ge, q(1, 2), budget)
}

/// A's two-round tree strategy keeps more than a third.
pub fn verify_two_round(g: &Graph, instance: &str, budget: &Budget) -> Result<BoundReport> {
    let spec = GameSpec::new(g, 2)?;
    a_guarantee("two-round-strategy", instance, &spec, &TwoRoundA::new(g)?, Relation::Gt, q(1, 3), budget)
}

/// B's best-neighbour reply takes at least `(n-1)/D` vertices against every
/// first move of A.
pub fn verify_best_neighbor(g: &Graph, instance: &str) -> Result<BoundReport> {
    let (n, delta) = (g.n() as i64, g.max_degree() as i64);
    let mut worst: Option<(u64, Vec<usize>)> = None;
    for v in 0..g.n() {
        let mut pos = Position::from_moves(&[v]);
        pos.push(BestNeighborB.choose(g, &pos)?);
        let b = partition(g, &pos)?.score.b_half_units();
        if worst.as_ref().is_none_or(|(w, _)| b < *w) {
            worst = Some((b, pos.moves()));
        }
    }
    let (b, line) = worst.ok_or(Error::EmptyGraph)?;
    let r = BoundReport::compare("best-neighbor", instance, q(b as i64, 2), Relation::Ge, q(n - 1, delta));
    Ok(r.with_witness(line))
}

/// Ring-node distances on grid-connected cycles track the grid metric:
/// `6d|x-y| - 1 <= dist <= 6d|x-y| + 5d` and `floor((dist+1)/(6d)) = |x-y|`.
/// Reports the number of violating pairs (expected zero).
pub fn verify_grid_metric(d: usize, side: usize) -> Result<BoundReport> {
    let g = GridCyclesParams::with_side(d, side, 1).build()?;
    let Some(FamilyMetadata::GridCycles(meta)) = g.family() else {
        return Err(Error::MissingMetadata("grid-cycles"));
    };
    let ring_nodes: Vec<(usize, usize)> =
        meta.rings.iter().enumerate().flat_map(|(p, r)| r.iter().map(move |&v| (v, p))).collect();
    let six_d = 6 * d as i64;
    let check = |&(u, p): &(usize, usize)| -> (u64, Option<Vec<usize>>) {
        let dist = g.all_distances_from(u).expect("ring node id is valid");
        let mut bad = 0;
        let mut first = None;
        for &(v, r) in &ring_nodes {
            let l1: i64 = meta.points[p].iter().zip(&meta.points[r]).map(|(&a, &b)| (a as i64 - b as i64).abs()).sum();
            let dv = dist[v] as i64;
            let ok = six_d * l1 - 1 <= dv && dv <= six_d * l1 + 5 * d as i64 && (dv + 1) / six_d == l1;
            if !ok {
                bad += 1;
                first.get_or_insert(vec![u, v]);
            }
        }
        (bad, first)
    };
    let per_source: Vec<_> = ring_nodes.par_iter().map(check).collect();
    let violations: u64 = per_source.iter().map(|(b, _)| b).sum();
    let witness = per_source.into_iter().find_map(|(_, w)| w);
    let mut r = BoundReport::compare(
        "grid-metric",
        &format!("grid-cycles:d={d}:L={side}"),
        q(violations as i64, 1),
        Relation::Eq,
        q(0, 1),
    );
    r.witness = witness;
    Ok(r)
}

/// Against B's projection strategy over `t0` rounds, A's share is at most
/// one corner's leaves plus the whole lattice: `(N + |S|) / (dN + |S|)`.
pub fn verify_simplex_share(d: usize, t0: usize, leaves: usize, budget: &Budget) -> Result<BoundReport> {
    let g = gen_simplex(d, t0, leaves)?;
    let Some(FamilyMetadata::Simplex(meta)) = g.family() else { unreachable!() };
    let s = meta.coords.len() as i64;
    let n = g.n() as i64;
    let res = exploit(&GameSpec::new(&g, t0)?, &SimplexB::new(&g)?, Player::B, &Objective::Whole, budget)?;
    let a_share = q(2 * n - res.guaranteed_half_units as i64, 2 * n);
    let rhs = q(leaves as i64 + s, d as i64 * leaves as i64 + s);
    let inst = format!("simplex:d={d}:t0={t0}:N={leaves}");
    Ok(BoundReport::compare("simplex-share", &inst, a_share, Relation::Le, rhs).with_witness(res.moves))
}

/// Corners strictly closer to `player`'s pebbles than to the other side's,
/// given each corner's distance row.
pub fn corners_closer(corner_dist: &[Vec<u32>], pos: &Position, player: Player) -> usize {
    let near = |row: &[u32], claims: &[usize]| claims.iter().map(|&v| row[v]).min().unwrap_or(u32::MAX);
    corner_dist.iter().filter(|row| near(row, pos.claims(player)) < near(row, pos.claims(player.other()))).count()
}

/// After every round `r <= t0`, on every adversary line, B is strictly
/// closer than A to at least `d - r` corners.
pub fn verify_simplex_corners(d: usize, t0: usize, leaves: usize, budget: &Budget) -> Result<BoundReport> {
    let g = gen_simplex(d, t0, leaves)?;
    let Some(FamilyMetadata::Simplex(meta)) = g.family() else { unreachable!() };
    let corner_dist: Vec<Vec<u32>> = meta.corners.iter().map(|&c| multi_source_bfs(&g, &[c])).collect();
    let pred = |_: &Graph, pos: &Position, round: usize| corners_closer(&corner_dist, pos, Player::B) + round >= d;
    let check = per_round_check(&GameSpec::new(&g, t0)?, &SimplexB::new(&g)?, Player::B, pred, budget)?;
    let inst = format!("simplex:d={d}:t0={t0}:N={leaves}");
    Ok(match check {
        RoundCheck::Pass { .. } => BoundReport::compare("simplex-corners", &inst, q(0, 1), Relation::Eq, q(0, 1)),
        RoundCheck::Fail { round, witness } => {
            let mut pos = Position::from_moves(&witness);
            pos.claimed_b.truncate(round);
            let have = corners_closer(&corner_dist, &pos, Player::B) as i64;
            BoundReport::compare(
                "simplex-corners",
                &format!("{inst}:round={round}"),
                q(have, 1),
                Relation::Ge,
                q((d - round) as i64, 1),
            )
            .with_witness(witness)
        }
    })
}

/// B's leg defence keeps at least `2kN - tN` broom vertices.
pub fn verify_leg_defense(k: usize, broom_size: usize, t: usize, budget: &Budget) -> Result<BoundReport> {
    let g = gen_broom_leg_tree(k, broom_size)?;
    let Some(FamilyMetadata::BroomLeg(meta)) = g.family() else { unreachable!() };
    let objective = Objective::subset(g.n(), &meta.broom_vertices());
    let res = exploit(&GameSpec::new(&g, t)?, &LegDefenseB::new(&g)?, Player::B, &objective, budget)?;
    let (k, nb, t) = (k as i64, broom_size as i64, t as i64);
    let inst = format!("broom-leg:k={k}:N={broom_size}:t={t}");
    let r = BoundReport::compare(
        "leg-defense",
        &inst,
        q(res.guaranteed_half_units as i64, 2),
        Relation::Ge,
        q(2 * k * nb - t * nb, 1),
    );
    Ok(r.with_witness(res.moves))
}

/// The broom-leg tree holds A below `1/3 + 1/9` in two rounds.
pub fn verify_broom_upper(k: usize, broom_size: usize, cfg: &SolverConfig) -> Result<BoundReport> {
    let g = gen_broom_leg_tree(k, broom_size)?;
    let (v, pv) = vr(&g, 2, cfg)?;
    let inst = format!("broom-leg:k={k}:N={broom_size}:t=2");
    Ok(BoundReport::compare("broom-upper", &inst, v, Relation::Lt, q(1, 3) + q(1, 9)).with_witness(pv))
}

/// On spiders `VR(S_{k,N}, 1)` stays below the one-round degree bound and
/// its distance to `1 - 1/k` shrinks along `arm_lens`: one `spider-degree`
/// report per arm length, one `spider-approach` report per later length.
pub fn verify_spider(k: usize, arm_lens: &[usize], cfg: &SolverConfig) -> Result<Vec<BoundReport>> {
    let limit = q(1, 1) - q(1, k as i64);
    let mut out = Vec::new();
    let mut prev_gap: Option<Q> = None;
    for &len in arm_lens {
        let g = gen_spider(k, len)?;
        let (v, pv) = vr(&g, 1, cfg)?;
        let (n, delta) = (g.n() as i64, g.max_degree() as i64);
        let bound = q(1, 1) - q(1, delta) + q(1, n * delta);
        let inst = format!("spider:k={k}:N={len}");
        out.push(BoundReport::compare("spider-degree", &inst, v, Relation::Le, bound).with_witness(pv));
        let gap = if v >= limit { v - limit } else { limit - v };
        if let Some(p) = prev_gap {
            out.push(BoundReport::compare("spider-approach", &inst, gap, Relation::Lt, p));
        }
        prev_gap = Some(gap);
    }
    Ok(out)
}

/// A's hub strategy on `delta` copies of the nine-vertex graph, answering
/// inside each copy with a one-round solver reply. The guarantee is compared
/// with `1 - 1/delta - VR(copy, t)`.
pub fn verify_hub_mirror(delta: usize, t: usize, budget: &Budget) -> Result<BoundReport> {
    let inner = gen_nine_vertex()?;
    let g = gen_delta_copies(&DeltaCopiesParams { delta, attach: None }, &inner)?;
    let strat = HubMirrorA::new(&g, Box::new(SolverReply::default()))?;
    let res = exploit(&GameSpec::new(&g, t)?, &strat, Player::A, &Objective::Whole, budget)?;
    let (loss, _) = vr(&inner, t, &SolverConfig::default())?;
    let rhs = q(1, 1) - q(1, delta as i64) - loss;
    let inst = format!("hub-copies:delta={delta}:inner=nine-vertex:t={t}");
    Ok(BoundReport::compare("hub-mirror", &inst, res.guaranteed_ratio(), Relation::Ge, rhs).with_witness(res.moves))
}

/// A named family of test graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corpus {
    /// Every connected graph with `1..=max_n` vertices.
    Connected { max_n: usize },
    /// Every tree with `1..=max_n` vertices.
    Trees { max_n: usize },
    /// `count` random trees, sizes uniform in `2..=max_n`.
    RandomTrees { count: usize, max_n: usize, seed: u64 },
    /// `count` random connected graphs of maximum degree 3, sizes uniform
    /// in `4..=max_n`.
    RandomDegreeThree { count: usize, max_n: usize, seed: u64 },
}

pub const DEFAULT_SEED: u64 = 20_140_101;

impl FromStr for Corpus {
    type Err = Error;

    /// `connected:N`, `trees:N`, `random-trees:COUNT:MAXN[:SEED]`,
    /// `random-deg3:COUNT:MAXN[:SEED]`.
    fn from_str(s: &str) -> Result<Corpus> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u64> {
            parts
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("corpus {s:?} is missing field {i}")))?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("corpus {s:?}: field {i} is not a number")))
        };
        let seed = || -> Result<u64> {
            if parts.len() > 3 {
                num(3)
            } else {
                Ok(DEFAULT_SEED)
            }
        };
        Ok(match parts[0] {
            "connected" => Corpus::Connected { max_n: num(1)? as usize },
            "trees" => Corpus::Trees { max_n: num(1)? as usize },
            "random-trees" => Corpus::RandomTrees { count: num(1)? as usize, max_n: num(2)? as usize, seed: seed()? },
            "random-deg3" => {
                Corpus::RandomDegreeThree { count: num(1)? as usize, max_n: num(2)? as usize, seed: seed()? }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown corpus {other:?}; use connected:N, trees:N, random-trees:COUNT:MAXN[:SEED] or random-deg3:COUNT:MAXN[:SEED]"
                )))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub descriptor: String,
    pub graph: Graph,
    pub seed: Option<u64>,
}

impl Corpus {
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        match *self {
            Corpus::Connected { max_n } => {
                for n in 1..=max_n {
                    for (i, graph) in enumerate_connected(n)?.into_iter().enumerate() {
                        out.push(Instance { descriptor: format!("connected:n={n}:#{i}"), graph, seed: None });
                    }
                }
            }
            Corpus::Trees { max_n } => {
                for n in 1..=max_n {
                    for (i, graph) in enumerate_trees(n)?.into_iter().enumerate() {
                        out.push(Instance { descriptor: format!("tree:n={n}:#{i}"), graph, seed: None });
                    }
                }
            }
            Corpus::RandomTrees { count, max_n, seed } => {
                if max_n < 2 {
                    return Err(Error::InvalidParameter("random trees need max_n >= 2".into()));
                }
                for i in 0..count {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    let n = rng.gen_range(2..=max_n);
                    let graph = random_tree(n, &mut rng)?;
                    out.push(Instance {
                        descriptor: format!("random-tree:seed={seed}:#{i}:n={n}"),
                        graph,
                        seed: Some(seed),
                    });
                }
            }
            Corpus::RandomDegreeThree { count, max_n, seed } => {
                if max_n < 4 {
                    return Err(Error::InvalidParameter("degree-3 graphs need max_n >= 4".into()));
                }
                for i in 0..count {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    let n = rng.gen_range(4..=max_n);
                    let graph = random_bounded_degree(n, 3, &mut rng)?;
                    out.push(Instance {
                        descriptor: format!("random-deg3:seed={seed}:#{i}:n={n}"),
                        graph,
                        seed: Some(seed),
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Bounds that run over a corpus.
pub const CORPUS_BOUNDS: &[&str] = &[
    "sandwich",
    "tree-bounds",
    "degree-bounds",
    "threshold",
    "solver-consistency",
    "central-strategy",
    "two-round-strategy",
    "best-neighbor",
];

/// Runs one corpus bound on a single graph. Instances too small for the
/// bound give no reports.
pub fn run_bound_on(bound: &str, g: &Graph, name: &str, t: usize, cfg: &SolverConfig) -> Result<Vec<BoundReport>> {
    let fits = 2 * t <= g.n();
    Ok(match bound {
        "sandwich" if fits => vec![verify_sandwich(g, name, t, cfg)?],
        "tree-bounds" => verify_tree_bounds(g, name, t, cfg)?,
        "degree-bounds" => verify_degree_bounds(g, name, t, cfg)?,
        "threshold" => verify_threshold(g, name)?,
        "solver-consistency" if fits => vec![verify_solver_consistency(g, name, t)?],
        "central-strategy" if g.n() >= 2 => vec![verify_central(g, name, &cfg.budget)?],
        "two-round-strategy" if g.n() >= 4 => vec![verify_two_round(g, name, &cfg.budget)?],
        "best-neighbor" if g.n() >= 2 => vec![verify_best_neighbor(g, name)?],
        b if CORPUS_BOUNDS.contains(&b) => Vec::new(),
        other => return Err(Error::InvalidParameter(format!("{other:?} is not a corpus bound"))),
    })
}

/// Runs a corpus bound on every instance, in parallel, keeping the corpus
/// order.
pub fn run_corpus_bound(bound: &str, corpus: &Corpus, t: usize, cfg: &SolverConfig) -> Result<Vec<BoundReport>> {
    if !CORPUS_BOUNDS.contains(&bound) {
        return Err(Error::InvalidParameter(format!(
            "{bound:?} is not a corpus bound; corpus bounds: {}",
            CORPUS_BOUNDS.join(", ")
        )));
    }
    let instances = corpus.instances()?;
    let results: Vec<Result<Vec<BoundReport>>> = instances
        .par_iter()
        .map(|inst| {
            let reports = run_bound_on(bound, &inst.graph, &inst.descriptor, t, cfg)?;
            Ok(reports.into_iter().map(|r| r.with_seed(inst.seed)).collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_path_reports() {
        let cfg = SolverConfig::default();
        let r = verify_star(4, 1, &cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.claim(), "4/5 = 4/5");
        assert!(verify_star(6, 2, &cfg).unwrap().pass);
        assert!(verify_path(5, 1, &cfg).unwrap().pass);
        assert!(verify_path(6, 2, &cfg).unwrap().pass);
        assert!(verify_path(4, 2, &cfg).is_err());
    }

    #[test]
    fn sandwich_on_nine_vertex() {
        let g = gen_nine_vertex().unwrap();
        let r = verify_sandwich(&g, "nine-vertex", 2, &SolverConfig::default()).unwrap();
        assert!(r.pass);
        assert_eq!((r.lhs, r.rhs), (q(2, 9), q(13, 18)));
    }

    #[test]
    fn star_sandwich_values() {
        let g = gen_star(6).unwrap();
        let r = verify_sandwich(&g, "star:k=6", 3, &SolverConfig::default()).unwrap();
        assert_eq!(r.value, Some(q(4, 7)));
        assert_eq!((r.lhs, r.rhs), (q(3, 7), q(13, 14)));
        assert!(r.pass);
    }

    #[test]
    fn degree_bound_on_nine_vertex() {
        let g = gen_nine_vertex().unwrap();
        let r = verify_degree_bounds(&g, "nine-vertex", 2, &SolverConfig::default()).unwrap();
        assert_eq!(r[0].lhs, q(4, 9));
        assert_eq!(r[0].rhs, q(19, 27));
        assert!(r.iter().all(|r| r.pass));
    }

    #[test]
    fn failing_comparison_is_reported() {
        let r = BoundReport::compare("x", "y", q(1, 2), Relation::Gt, q(1, 2));
        assert!(!r.pass);
        assert_eq!(r.to_string(), "FAIL x [y] 1/2 > 1/2");
    }

    #[test]
    fn report_json_uses_ratio_strings() {
        let r = BoundReport::within("sandwich", "g", q(1, 4), q(1, 2), q(3, 4));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lhs"], "1/4");
        assert_eq!(v["value"], "1/2");
        assert_eq!(v["relation"], "within");
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn corpus_parsing() {
        assert_eq!("connected:5".parse::<Corpus>().unwrap(), Corpus::Connected { max_n: 5 });
        assert_eq!(
            "random-trees:10:30:4".parse::<Corpus>().unwrap(),
            Corpus::RandomTrees { count: 10, max_n: 30, seed: 4 }
        );
        assert!("nope:3".parse::<Corpus>().is_err());
        assert!("trees:x".parse::<Corpus>().is_err());
    }

    #[test]
    fn corpus_reports_keep_order_and_seed() {
        let corpus = Corpus::RandomTrees { count: 5, max_n: 12, seed: 9 };
        let reports = run_corpus_bound("threshold", &corpus, 2, &SolverConfig::default()).unwrap();
        assert!(reports.iter().all(|r| r.pass && r.seed == Some(9)));
        assert!(reports[0].instance.contains("#0"));
        let again = run_corpus_bound("threshold", &corpus, 2, &SolverConfig::default()).unwrap();
        assert_eq!(reports, again);
    }

    #[test]
    fn small_grid_metric() {
        assert!(verify_grid_metric(2, 2).unwrap().pass);
    }

    #[test]
    fn small_simplex_checks() {
        let budget = Budget::unlimited();
        assert!(verify_simplex_share(3, 1, 5, &budget).unwrap().pass);
        assert!(verify_simplex_corners(3, 1, 2, &budget).unwrap().pass);
    }

    #[test]
    fn spider_values_approach_limit() {
        let r = verify_spider(3, &[2, 5, 10], &SolverConfig::default()).unwrap();
        assert!(r.iter().all(|r| r.pass));
        let approach: Vec<_> = r.iter().filter(|r| r.bound == "spider-approach").collect();
        // VR = 5/7, 11/16, 21/31, so the gaps to 2/3 are 1/21, 1/48, 1/93
        assert_eq!((approach[0].lhs, approach[0].rhs), (q(1, 48), q(1, 21)));
        assert_eq!(approach[1].lhs, q(1, 93));
    }

    #[test]
    fn small_leg_defense() {
        assert!(verify_leg_defense(2, 3, 2, &Budget::unlimited()).unwrap().pass);
    }
}
