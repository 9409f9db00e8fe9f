use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::families::FamilyMetadata;
use crate::graph::Graph;
use crate::voronoi::Position;

use super::projection::{argmax, project_pi, Projection};
use super::{lowest_free, no_move, Strategy};

/// B on grid-connected cycles. Every vertex stands for a grid point (its
/// ring, the lower end of its connection path, or the corner of its tail);
/// B plays the cube projection chain on those points and claims the lowest
/// free node of the chosen ring. A move onto an already used point is
/// answered with the lowest free vertex.
#[derive(Debug, Clone)]
pub struct GridCyclesB {
    d: usize,
    side: u32,
    points: Vec<Vec<u32>>,
    rings: Vec<Vec<usize>>,
    interpretation: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
}

impl GridCyclesB {
    pub fn new(g: &Graph) -> Result<GridCyclesB> {
        let Some(FamilyMetadata::GridCycles(meta)) = g.family() else {
            return Err(Error::MissingMetadata("grid-cycles"));
        };
        let index = meta.points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(GridCyclesB {
            d: meta.d,
            side: meta.side as u32,
            points: meta.points.clone(),
            rings: meta.rings.clone(),
            interpretation: meta.interpretation.clone(),
            index,
        })
    }

    /// Grid point a vertex is read as.
    pub fn interpret(&self, v: usize) -> usize {
        self.interpretation[v]
    }
}

impl Strategy for GridCyclesB {
    fn name(&self) -> String {
        "grid-cycles".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        let (&last, earlier) = pos.claimed_a.split_last().ok_or_else(|| no_move("grid-cycles", pos))?;
        let used: HashSet<usize> = earlier.iter().chain(&pos.claimed_b).map(|&v| self.interpretation[v]).collect();
        let p = self.interpretation[last];
        if !used.contains(&p) {
            let mut x = self.points[p].clone();
            let i = argmax(&x);
            while let Ok(y) = project_pi(&x, i, Projection::Cube { d: self.d, side: self.side }) {
                let Some(&q) = self.index.get(&y) else { break };
                if !used.contains(&q) {
                    if let Some(&node) = self.rings[q].iter().find(|&&r| !pos.is_claimed(r)) {
                        return Ok(node);
                    }
                }
                x = y;
            }
        }
        lowest_free(g, pos).ok_or_else(|| no_move("grid-cycles", pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{GridCyclesMeta, GridCyclesParams};

    fn meta(g: &Graph) -> &GridCyclesMeta {
        match g.family() {
            Some(FamilyMetadata::GridCycles(m)) => m,
            _ => panic!(),
        }
    }

    fn point(m: &GridCyclesMeta, c: [u32; 2]) -> usize {
        m.points.iter().position(|p| p.as_slice() == c).unwrap()
    }

    #[test]
    fn ring_move_gets_the_projection_ring() {
        let g = GridCyclesParams::with_side(2, 4, 2).build().unwrap();
        let m = meta(&g);
        let s = GridCyclesB::new(&g).unwrap();
        let a = m.rings[point(m, [4, 4])][3];
        let reply = s.choose(&g, &Position::from_moves(&[a])).unwrap();
        assert_eq!(reply, m.rings[point(m, [3, 4])][0]);
    }

    #[test]
    fn connection_interior_reads_as_lower_point() {
        let g = GridCyclesParams::with_side(2, 4, 2).build().unwrap();
        let m = meta(&g);
        let s = GridCyclesB::new(&g).unwrap();
        let c = m.connections.iter().find(|c| m.points[c.lower] == [4, 2] && c.dir == 1).unwrap();
        assert_eq!(s.interpret(c.interior[5]), point(m, [4, 2]));
        // projection of (4, 2) along coordinate 0 is (3, 3)
        let reply = s.choose(&g, &Position::from_moves(&[c.interior[5]])).unwrap();
        assert_eq!(reply, m.rings[point(m, [3, 3])][0]);
    }

    #[test]
    fn repeated_ring_is_wasted() {
        let g = GridCyclesParams::with_side(2, 4, 2).build().unwrap();
        let m = meta(&g);
        let s = GridCyclesB::new(&g).unwrap();
        let ring = &m.rings[point(m, [2, 4])];
        let first = s.choose(&g, &Position::from_moves(&[ring[0]])).unwrap();
        let pos = Position::from_moves(&[ring[0], first, ring[1]]);
        let lowest = (0..g.n()).find(|&v| !pos.is_claimed(v)).unwrap();
        assert_eq!(s.choose(&g, &pos).unwrap(), lowest);
    }

    #[test]
    fn tail_reads_as_its_corner() {
        let g = GridCyclesParams::with_side(2, 4, 3).build().unwrap();
        let m = meta(&g);
        let s = GridCyclesB::new(&g).unwrap();
        let tail = &m.tails[0];
        assert_eq!(s.interpret(tail.path[2]), tail.point);
        let reply = s.choose(&g, &Position::from_moves(&[tail.path[2]])).unwrap();
        // corner (4, 0) projects to (3, 1)
        assert_eq!(reply, m.rings[point(m, [3, 1])][0]);
    }
}
