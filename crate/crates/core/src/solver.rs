//! Exact game values by minimax search.
//!
//! A maximizes her half-unit payoff and B minimizes it over all `2t` plies.
//! The default configuration adds alpha-beta pruning, a transposition table
//! keyed by the two claimed sets, twin-class move pruning and degree-first
//! move ordering. None of these change the value; the principal variation is
//! rebuilt afterwards with lowest-id tie-breaking, so it does not depend on
//! the search configuration either.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{multi_source_bfs, Graph, UNREACHABLE};
use crate::voronoi::{ratio_string, Position, Score};

#[derive(Debug, Clone, Copy)]
pub struct GameSpec<'g> {
    pub graph: &'g Graph,
    pub rounds: usize,
}

impl<'g> GameSpec<'g> {
    pub fn new(graph: &'g Graph, rounds: usize) -> Result<GameSpec<'g>> {
        if rounds == 0 {
            return Err(Error::InvalidParameter("rounds must be positive".into()));
        }
        let needed = rounds.saturating_mul(2);
        if needed > graph.n() {
            return Err(Error::TooManyRounds { rounds, needed, n: graph.n() });
        }
        Ok(GameSpec { graph, rounds })
    }

    pub fn plies(&self) -> usize {
        2 * self.rounds
    }
}

#[derive(Debug, Clone, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub(crate) fn check(&self, nodes: u64, start: Instant) -> Result<()> {
        let over_nodes = self.max_nodes.is_some_and(|m| nodes > m);
        let over_time = nodes.is_multiple_of(1024) && self.max_time.is_some_and(|t| start.elapsed() > t);
        if over_nodes || over_time {
            Err(Error::BudgetExceeded { nodes, elapsed: start.elapsed() })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub memoize: bool,
    pub alpha_beta: bool,
    /// Only try the lowest unclaimed vertex of each twin class (vertices
    /// with equal open or closed neighbourhoods are interchangeable).
    pub twin_reduction: bool,
    /// Try high-degree vertices first.
    pub degree_ordering: bool,
    pub budget: Budget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            memoize: true,
            alpha_beta: true,
            twin_reduction: true,
            degree_ordering: true,
            budget: Budget::unlimited(),
        }
    }
}

impl SolverConfig {
    /// Full-width minimax with no pruning, caching or symmetry.
    pub fn plain() -> Self {
        SolverConfig {
            memoize: false,
            alpha_beta: false,
            twin_reduction: false,
            degree_ordering: false,
            budget: Budget::unlimited(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: Score,
    /// Optimal continuation from the searched position (the whole game for
    /// [`solve`]).
    pub principal_variation: Vec<usize>,
    pub nodes_searched: u64,
}

#[derive(Serialize)]
struct SolveResultJson<'a> {
    value: Score,
    ratio: String,
    principal_variation: &'a [usize],
    nodes_searched: u64,
}

impl Serialize for SolveResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SolveResultJson {
            value: self.value,
            ratio: ratio_string(self.value.ratio()),
            principal_variation: &self.principal_variation,
            nodes_searched: self.nodes_searched,
        }
        .serialize(s)
    }
}

/// `VR(G, t)` with an optimal line of play.
pub fn solve(spec: &GameSpec, cfg: &SolverConfig) -> Result<SolveResult> {
    solve_position(spec.graph, &Position::new(), spec.rounds, cfg)
}

/// Value of `pos` when play continues until `rounds` rounds are complete.
pub fn solve_position(g: &Graph, pos: &Position, rounds: usize, cfg: &SolverConfig) -> Result<SolveResult> {
    pos.validate(g.n())?;
    let total = 2 * rounds;
    if pos.plies() > total {
        return Err(Error::InvalidParameter(format!(
            "position has {} plies, more than {rounds} rounds allow",
            pos.plies()
        )));
    }
    let remaining = total - pos.plies();
    if pos.plies() + remaining > g.n() {
        return Err(Error::TooManyRounds { rounds, needed: total, n: g.n() });
    }
    if remaining == 0 && (pos.claimed_a.is_empty() || pos.claimed_b.is_empty()) {
        return Err(Error::EmptyClaims(if pos.claimed_a.is_empty() { 'A' } else { 'B' }));
    }
    let mut search = Search::new(g, pos, remaining, cfg);
    let value = search.search(0, -1, search.top())?;
    let principal_variation = search.principal_variation(value)?;
    Ok(SolveResult { value: Score::new(value as u64, g.n()), principal_variation, nodes_searched: search.nodes })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum StateKey {
    Small(u64, u64),
    Large(Box<[u64]>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Exact,
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    value: i64,
    bound: Bound,
}

struct Search<'g, 'c> {
    g: &'g Graph,
    cfg: &'c SolverConfig,
    plies: usize,
    a_first: bool,
    set_a: Vec<u64>,
    set_b: Vec<u64>,
    /// `dist_a[k]`: distance to A's nearest pebble after `k` searched A moves.
    dist_a: Vec<Vec<u32>>,
    dist_b: Vec<Vec<u32>>,
    ka: usize,
    kb: usize,
    order: Vec<usize>,
    class_of: Vec<usize>,
    class_members: Vec<Vec<usize>>,
    tt: HashMap<StateKey, Entry>,
    nodes: u64,
    start: Instant,
}

impl<'g, 'c> Search<'g, 'c> {
    fn new(g: &'g Graph, pos: &Position, plies: usize, cfg: &'c SolverConfig) -> Self {
        let n = g.n();
        let words = n.div_ceil(64);
        let mut set_a = vec![0u64; words];
        let mut set_b = vec![0u64; words];
        for &v in &pos.claimed_a {
            set_a[v / 64] |= 1 << (v % 64);
        }
        for &v in &pos.claimed_b {
            set_b[v / 64] |= 1 << (v % 64);
        }
        let start_dist = |claims: &[usize]| {
            if claims.is_empty() {
                vec![UNREACHABLE; n]
            } else {
                multi_source_bfs(g, claims)
            }
        };
        let levels = plies / 2 + 2;
        let mut dist_a = vec![Vec::new(); levels];
        let mut dist_b = vec![Vec::new(); levels];
        dist_a[0] = start_dist(&pos.claimed_a);
        dist_b[0] = start_dist(&pos.claimed_b);

        let mut order: Vec<usize> = (0..n).collect();
        if cfg.degree_ordering {
            order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        }
        let (class_of, class_members) =
            if cfg.twin_reduction { twin_classes(g) } else { ((0..n).collect(), (0..n).map(|v| vec![v]).collect()) };

        Search {
            g,
            cfg,
            plies,
            a_first: pos.claimed_a.len() == pos.claimed_b.len(),
            set_a,
            set_b,
            dist_a,
            dist_b,
            ka: 0,
            kb: 0,
            order,
            class_of,
            class_members,
            tt: HashMap::new(),
            nodes: 0,
            start: Instant::now(),
        }
    }

    fn top(&self) -> i64 {
        2 * self.g.n() as i64 + 1
    }

    fn a_to_move(&self, ply: usize) -> bool {
        ply.is_multiple_of(2) == self.a_first
    }

    fn claimed(&self, v: usize) -> bool {
        let (w, b) = (v / 64, 1u64 << (v % 64));
        (self.set_a[w] | self.set_b[w]) & b != 0
    }

    fn key(&self) -> StateKey {
        if self.set_a.len() == 1 {
            StateKey::Small(self.set_a[0], self.set_b[0])
        } else {
            StateKey::Large(self.set_a.iter().chain(&self.set_b).copied().collect())
        }
    }

    fn moves(&self) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&v| {
                if self.claimed(v) {
                    return false;
                }
                // keep only the lowest unclaimed member of the twin class
                for &u in &self.class_members[self.class_of[v]] {
                    if u == v {
                        return true;
                    }
                    if !self.claimed(u) {
                        return false;
                    }
                }
                true
            })
            .collect()
    }

    fn play(&mut self, v: usize, is_a: bool) {
        let row = self.g.distances(v);
        let (set, dist, k) = if is_a {
            (&mut self.set_a, &mut self.dist_a, &mut self.ka)
        } else {
            (&mut self.set_b, &mut self.dist_b, &mut self.kb)
        };
        set[v / 64] |= 1 << (v % 64);
        let (lo, hi) = dist.split_at_mut(*k + 1);
        let next = &mut hi[0];
        next.clear();
        next.extend(lo[*k].iter().zip(row.iter()).map(|(&x, &y)| x.min(y)));
        *k += 1;
    }

    fn undo(&mut self, v: usize, is_a: bool) {
        let (set, k) = if is_a { (&mut self.set_a, &mut self.ka) } else { (&mut self.set_b, &mut self.kb) };
        set[v / 64] &= !(1 << (v % 64));
        *k -= 1;
    }

    fn leaf(&self) -> i64 {
        let da = &self.dist_a[self.ka];
        let db = &self.dist_b[self.kb];
        da.iter()
            .zip(db)
            .map(|(&x, &y)| match x.cmp(&y) {
                std::cmp::Ordering::Less => 2,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => 0,
            })
            .sum()
    }

    fn search(&mut self, ply: usize, mut alpha: i64, mut beta: i64) -> Result<i64> {
        self.nodes += 1;
        self.cfg.budget.check(self.nodes, self.start)?;
        if ply == self.plies {
            return Ok(self.leaf());
        }
        let key = self.cfg.memoize.then(|| self.key());
        if let Some(e) = key.as_ref().and_then(|k| self.tt.get(k)) {
            match e.bound {
                Bound::Exact => return Ok(e.value),
                Bound::Lower if e.value >= beta => return Ok(e.value),
                Bound::Upper if e.value <= alpha => return Ok(e.value),
                _ => {}
            }
        }
        let (alpha0, beta0) = (alpha, beta);
        let maximizing = self.a_to_move(ply);
        let mut best = if maximizing { -1 } else { self.top() };
        for m in self.moves() {
            self.play(m, maximizing);
            let v = self.search(ply + 1, alpha, beta);
            self.undo(m, maximizing);
            let v = v?;
            if maximizing {
                best = best.max(v);
                alpha = alpha.max(v);
            } else {
                best = best.min(v);
                beta = beta.min(v);
            }
            if self.cfg.alpha_beta && alpha >= beta {
                break;
            }
        }
        if let Some(k) = key {
            let bound = if !self.cfg.alpha_beta {
                Bound::Exact
            } else if best <= alpha0 {
                Bound::Upper
            } else if best >= beta0 {
                Bound::Lower
            } else {
                Bound::Exact
            };
            self.tt.insert(k, Entry { value: best, bound });
        }
        Ok(best)
    }

    /// Rebuilds an optimal line, taking the lowest-id optimal move at each ply.
    fn principal_variation(&mut self, value: i64) -> Result<Vec<usize>> {
        let mut line = Vec::with_capacity(self.plies);
        for ply in 0..self.plies {
            let maximizing = self.a_to_move(ply);
            let mut moves = self.moves();
            moves.sort_unstable();
            let mut chosen = None;
            for m in moves {
                self.play(m, maximizing);
                let (lo, hi) = match (self.cfg.alpha_beta, maximizing) {
                    (false, _) => (-1, self.top()),
                    (true, true) => (value - 1, value),
                    (true, false) => (value, value + 1),
                };
                let v = self.search(ply + 1, lo, hi);
                if let Ok(v) = v {
                    if (maximizing && v >= value) || (!maximizing && v <= value) {
                        chosen = Some(m);
                        break;
                    }
                }
                self.undo(m, maximizing);
                v?;
            }
            let m = chosen.expect("an optimal move exists at every ply");
            line.push(m);
        }
        for ply in (0..self.plies).rev() {
            let maximizing = self.a_to_move(ply);
            self.undo(line[ply], maximizing);
        }
        Ok(line)
    }
}

/// Groups vertices with identical open neighbourhoods (false twins), then
/// the remaining ones by identical closed neighbourhoods (true twins).
/// Swapping two twins is a graph automorphism.
fn twin_classes(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.n();
    let mut by_open: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for v in 0..n {
        by_open.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut open_groups: Vec<Vec<usize>> = by_open.into_values().filter(|c| c.len() > 1).collect();
    open_groups.sort();
    for group in open_groups {
        for &v in &group {
            class_of[v] = members.len();
        }
        members.push(group);
    }
    let mut by_closed: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for v in (0..n).filter(|&v| class_of[v] == usize::MAX) {
        let mut closed = g.neighbors(v).to_vec();
        closed.push(v);
        closed.sort_unstable();
        by_closed.entry(closed).or_default().push(v);
    }
    let mut closed_groups: Vec<Vec<usize>> = by_closed.into_values().collect();
    closed_groups.sort();
    for group in closed_groups {
        for &v in &group {
            class_of[v] = members.len();
        }
        members.push(group);
    }
    (class_of, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_nine_vertex, gen_path, gen_star};
    use crate::voronoi::partition;
    use num_rational::Ratio;

    fn vr(g: &Graph, t: usize) -> Ratio<i64> {
        solve(&GameSpec::new(g, t).unwrap(), &SolverConfig::default()).unwrap().value.ratio()
    }

    #[test]
    fn star_one_round() {
        assert_eq!(vr(&gen_star(4).unwrap(), 1), Ratio::new(4, 5));
    }

    #[test]
    fn small_paths() {
        assert_eq!(vr(&gen_path(2).unwrap(), 1), Ratio::new(1, 2));
        assert_eq!(vr(&gen_path(5).unwrap(), 1), Ratio::new(3, 5));
    }

    #[test]
    fn nine_vertex_one_round() {
        assert_eq!(vr(&gen_nine_vertex().unwrap(), 1), Ratio::new(4, 9));
    }

    #[test]
    fn principal_variation_replays_to_the_value() {
        let g = gen_nine_vertex().unwrap();
        for t in 1..=3 {
            let res = solve(&GameSpec::new(&g, t).unwrap(), &SolverConfig::default()).unwrap();
            assert_eq!(res.principal_variation.len(), 2 * t);
            let p = partition(&g, &Position::from_moves(&res.principal_variation)).unwrap();
            assert_eq!(p.score, res.value);
        }
    }

    #[test]
    fn configuration_does_not_change_value_or_line() {
        let g = gen_nine_vertex().unwrap();
        let spec = GameSpec::new(&g, 2).unwrap();
        let fast = solve(&spec, &SolverConfig::default()).unwrap();
        let plain = solve(&spec, &SolverConfig::plain()).unwrap();
        assert_eq!(fast.value, plain.value);
        assert_eq!(fast.principal_variation, plain.principal_variation);
        assert!(fast.nodes_searched < plain.nodes_searched);
    }

    #[test]
    fn too_many_rounds() {
        let g = gen_path(3).unwrap();
        assert!(matches!(GameSpec::new(&g, 2), Err(Error::TooManyRounds { .. })));
        assert!(GameSpec::new(&g, 0).is_err());
    }

    #[test]
    fn node_budget_is_an_error() {
        let g = gen_path(8).unwrap();
        let spec = GameSpec::new(&g, 2).unwrap();
        let cfg = SolverConfig::plain().with_budget(Budget { max_nodes: Some(10), max_time: None });
        assert!(matches!(solve(&spec, &cfg), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn solving_from_a_position() {
        // B's best reply to A on the star center takes a leaf
        let g = gen_star(4).unwrap();
        let res = solve_position(&g, &Position::from_moves(&[0]), 1, &SolverConfig::default()).unwrap();
        assert_eq!(res.value.a_half_units, 8);
        assert_eq!(res.principal_variation, vec![1]);
    }

    #[test]
    fn twin_classes_group_leaves() {
        let (class_of, members) = twin_classes(&gen_star(4).unwrap());
        assert!((2..=4).all(|v| class_of[v] == class_of[1]));
        assert_eq!(members[class_of[0]], vec![0]);
        // the two endpoints of P_2 are true twins
        let (class_of, _) = twin_classes(&gen_path(2).unwrap());
        assert_eq!(class_of[0], class_of[1]);
    }

    #[test]
    fn json_shape() {
        let g = gen_star(4).unwrap();
        let res = solve(&GameSpec::new(&g, 1).unwrap(), &SolverConfig::default()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&res).unwrap();
        assert_eq!(v["value"]["half_units"], 8);
        assert_eq!(v["value"]["n"], 5);
        assert_eq!(v["ratio"], "4/5");
        assert_eq!(v["principal_variation"], serde_json::json!([0, 1]));
    }
}
