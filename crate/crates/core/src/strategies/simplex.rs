use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::families::FamilyMetadata;
use crate::graph::Graph;
use crate::voronoi::Position;

use super::projection::{argmax, project_pi, Projection};
use super::{lowest_free, no_move, Strategy};

/// B on the simplex family: read A's move as a lattice point (a leaf counts
/// as its anchor), then walk `pi_i(x), pi_i(pi_i(x)), ...` along A's largest
/// coordinate `i` and take the first unclaimed point.
#[derive(Debug, Clone)]
pub struct SimplexB {
    d: usize,
    coords: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// Lattice point standing for each vertex.
    anchor: Vec<usize>,
}

impl SimplexB {
    pub fn new(g: &Graph) -> Result<SimplexB> {
        let Some(FamilyMetadata::Simplex(meta)) = g.family() else {
            return Err(Error::MissingMetadata("simplex"));
        };
        let mut anchor: Vec<usize> = (0..g.n()).collect();
        for group in &meta.leaf_groups {
            for &l in &group.leaves {
                anchor[l] = group.anchor;
            }
        }
        let index = meta.coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(SimplexB { d: meta.d, coords: meta.coords.clone(), index, anchor })
    }
}

impl Strategy for SimplexB {
    fn name(&self) -> String {
        "simplex".into()
    }

    fn choose(&self, g: &Graph, pos: &Position) -> Result<usize> {
        let &last = pos.claimed_a.last().ok_or_else(|| no_move("simplex", pos))?;
        let mut x = self.coords[self.anchor[last]].clone();
        let i = argmax(&x);
        while let Ok(y) = project_pi(&x, i, Projection::Simplex { d: self.d }) {
            let v = self.index[&y];
            if !pos.is_claimed(v) {
                return Ok(v);
            }
            x = y;
        }
        lowest_free(g, pos).ok_or_else(|| no_move("simplex", pos))
    }
}
