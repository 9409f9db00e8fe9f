use std::collections::VecDeque;

use dvg_core::enumerate::{prufer_edges, random_bounded_degree};
use dvg_core::strategies::{BestNeighborB, Greedy};
use dvg_core::tree::CentralA;
use dvg_core::{
    dominance_region, exploit, partition, solve, Budget, GameSpec, Graph, Objective, Owner, Player, Position,
    SolverConfig, Strategy as _,
};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

fn tree_from_code(code: &[usize]) -> Graph {
    let n = code.len() + 2;
    Graph::from_edges(n, &prufer_edges(n, code)).unwrap()
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n - 2)).prop_map(|code| tree_from_code(&code))
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (5..=max_n, any::<u64>())
        .prop_map(|(n, seed)| random_bounded_degree(n, 3, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap())
}

/// A graph with a line of `2t` distinct moves.
fn arb_position(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        let line = (1..=n / 2)
            .prop_flat_map(move |t| prop::sample::subsequence((0..n).collect::<Vec<_>>(), 2 * t).prop_shuffle());
        (Just(g), line)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_matches_nearest_claim((g, moves) in arb_position(12)) {
        let pos = Position::from_moves(&moves);
        let part = partition(&g, &pos).unwrap();
        let da: Vec<Vec<usize>> = pos.claimed_a.iter().map(|&c| bfs(&g, c)).collect();
        let db: Vec<Vec<usize>> = pos.claimed_b.iter().map(|&c| bfs(&g, c)).collect();
        let mut a_half = 0;
        for v in 0..g.n() {
            let a = da.iter().map(|d| d[v]).min().unwrap();
            let b = db.iter().map(|d| d[v]).min().unwrap();
            let expected = match a.cmp(&b) {
                std::cmp::Ordering::Less => Owner::A,
                std::cmp::Ordering::Greater => Owner::B,
                std::cmp::Ordering::Equal => Owner::Tied,
            };
            prop_assert_eq!(part.owners[v], expected);
            a_half += part.owners[v].half_units_for(Player::A);
        }
        prop_assert_eq!(part.score.a_half_units, a_half);
        prop_assert_eq!(part.score.a_half_units + part.score.b_half_units(), 2 * g.n() as u64);
    }

    #[test]
    fn swapping_sides_mirrors_the_score((g, moves) in arb_position(12)) {
        let pos = Position::from_moves(&moves);
        let swapped = Position { claimed_a: pos.claimed_b.clone(), claimed_b: pos.claimed_a.clone() };
        let a = partition(&g, &pos).unwrap().score;
        let b = partition(&g, &swapped).unwrap().score;
        prop_assert_eq!(a.a_half_units, b.b_half_units());
    }

    #[test]
    fn dominance_regions_cover_the_rest(g in arb_graph(14), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.n());
        let mut covered = vec![false; g.n()];
        let mut largest = 0;
        for &x in g.neighbors(v) {
            let h = dominance_region(&g, x, v).unwrap();
            largest = largest.max(h.len());
            let dx = bfs(&g, x);
            let dv = bfs(&g, v);
            for &w in &h {
                prop_assert!(dx[w] < dv[w]);
                covered[w] = true;
            }
        }
        for (w, c) in covered.iter().enumerate() {
            prop_assert_eq!(*c, w != v);
        }
        // pigeonhole: some neighbour dominates at least (n-1)/deg(v) vertices
        prop_assert!(largest * g.degree(v) >= g.n() - 1);
    }

    #[test]
    fn optimized_solver_matches_plain(g in arb_graph(8), t in 1usize..=2) {
        prop_assume!(2 * t <= g.n());
        let spec = GameSpec::new(&g, t).unwrap();
        let fast = solve(&spec, &SolverConfig::default()).unwrap();
        let plain = solve(&spec, &SolverConfig::plain()).unwrap();
        prop_assert_eq!(fast.value, plain.value);
        prop_assert_eq!(&fast.principal_variation, &plain.principal_variation);
        let replay = partition(&g, &Position::from_moves(&fast.principal_variation)).unwrap();
        prop_assert_eq!(replay.score, fast.value);
    }

    #[test]
    fn strategies_never_beat_the_game_value(g in arb_graph(9), t in 1usize..=2) {
        prop_assume!(2 * t <= g.n());
        let spec = GameSpec::new(&g, t).unwrap();
        let value = solve(&spec, &SolverConfig::default()).unwrap().value.ratio();
        let budget = Budget::unlimited();
        let a = exploit(&spec, &Greedy, Player::A, &Objective::Whole, &budget).unwrap();
        prop_assert!(a.guaranteed_ratio() <= value);
        let b = exploit(&spec, &BestNeighborB, Player::B, &Objective::Whole, &budget).unwrap();
        prop_assert!(b.guaranteed_ratio() <= Ratio::from_integer(1) - value);
    }

    #[test]
    fn central_vertex_keeps_half_a_tree(g in arb_tree(40)) {
        let strat = CentralA::new(&g).unwrap();
        let res = exploit(&GameSpec::new(&g, 1).unwrap(), &strat, Player::A, &Objective::Whole, &Budget::unlimited()).unwrap();
        prop_assert!(res.guaranteed_ratio() >= Ratio::new(1, 2));
        prop_assert!(strat.choose(&g, &Position::new()).is_ok());
    }

    #[test]
    fn best_neighbor_reply_gets_its_share(g in arb_graph(30), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.n());
        let mut pos = Position::from_moves(&[v]);
        pos.push(BestNeighborB.choose(&g, &pos).unwrap());
        let b = partition(&g, &pos).unwrap().score.b_half_units();
        // B holds at least (n-1)/D vertices, i.e. 2(n-1)/D half-units
        prop_assert!(b as usize * g.max_degree() >= 2 * (g.n() - 1));
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph(20)) {
        let back = Graph::from_json_str(&g.to_json_string().unwrap()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn bounded_degree_generator(n in 4usize..40, seed in any::<u64>()) {
        let g = random_bounded_degree(n, 3, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(g.max_degree(), 3);
        prop_assert!(bfs(&g, 0).iter().all(|&d| d != usize::MAX));
    }
}
