use crate::error::Result;
use crate::graph::Graph;
use crate::voronoi::Position;

use super::{lowest_free, no_move, Strategy};

/// B answers A's last move `v` with the neighbour `x` whose dominance region
/// `H(x)` (vertices strictly closer to `x` than to `v`) is largest, ties by
/// lowest id.
#[derive(Debug, Clone, Copy, Default)]
pub struct BestNeighborB;

impl Strategy for BestNeighborB {
    fn name(&self) -> String {
        "best-neighbor".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        let &v = pos.claimed_a.last().ok_or_else(|| no_move("best-neighbor", pos))?;
        let dv = g.distances(v);
        let mut best: Option<(usize, usize)> = None;
        for &x in g.neighbors(v).iter().filter(|&&x| !pos.is_claimed(x)) {
            let dx = g.distances(x);
            let size = (0..g.n()).filter(|&w| dx[w] < dv[w]).count();
            if best.is_none_or(|(s, _)| size > s) {
                best = Some((size, x));
            }
        }
        match best {
            Some((_, x)) => Ok(x),
            None => lowest_free(g, pos).ok_or_else(|| no_move("best-neighbor", pos)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_nine_vertex, gen_star};
    use crate::voronoi::{dominance_region, partition};

    #[test]
    fn nine_vertex_replies() {
        let g = gen_nine_vertex().unwrap();
        // A on a degree-2 cycle vertex: the degree-3 neighbour dominates five vertices
        let x = BestNeighborB.choose(&g, &Position::from_moves(&[1])).unwrap();
        assert_eq!(x, 0);
        assert_eq!(dominance_region(&g, x, 1).unwrap().len(), 5);
        let p = partition(&g, &Position::from_moves(&[1, x])).unwrap();
        assert_eq!(p.score.b_half_units(), 10);
        // A on a degree-3 vertex: a neighbour only reaches four; the opposite vertex would take five
        let x = BestNeighborB.choose(&g, &Position::from_moves(&[0])).unwrap();
        assert_eq!(dominance_region(&g, x, 0).unwrap().len(), 4);
        let opposite = partition(&g, &Position::from_moves(&[0, 3])).unwrap();
        assert_eq!(opposite.score.b_half_units(), 10);
    }

    #[test]
    fn star_center_leaves_one_leaf() {
        let g = gen_star(5).unwrap();
        let x = BestNeighborB.choose(&g, &Position::from_moves(&[0])).unwrap();
        assert_eq!(x, 1);
        let p = partition(&g, &Position::from_moves(&[0, x])).unwrap();
        assert_eq!(p.score.b_half_units(), 2);
    }
}
