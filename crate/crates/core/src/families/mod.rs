//! Generators for the graph families: stars, paths, spiders, the nine-vertex
//! example, simplex slices, cut-corner cubes, grid-connected cycles,
//! broom-leg trees and hub-joined copies.
//!
//! Every generator returns a validated [`Graph`] carrying a
//! [`FamilyMetadata`] block.

mod broom;
mod copies;
mod gcc;
mod lattice;
mod meta;

pub use broom::gen_broom_leg_tree;
pub use copies::{gen_delta_copies, DeltaCopiesParams};
pub use gcc::{gen_grid_connected_cycles, GridCyclesParams};
pub use lattice::{cube_corner_distance, gen_cut_corner_cube, gen_simplex, CubeParams, SimplexParams};
pub use meta::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

/// Default upper bound on generated vertex counts.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

pub(crate) fn check_cap(requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::SizeCap { requested, cap })
    } else {
        Ok(())
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::InvalidParameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// Star `S_k`: center 0 and leaves `1..=k`.
pub fn gen_star(k: usize) -> Result<Graph> {
    positive("k", k)?;
    check_cap(k + 1, DEFAULT_SIZE_CAP)?;
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    let mut labels = vec![Some(Label::Leaf); k + 1];
    labels[0] = Some(Label::Center);
    Graph::from_edges(k + 1, &edges)?
        .with_labels(labels)?
        .with_family(FamilyMetadata::Star { center: 0, leaves: (1..=k).collect() })
}

/// Path `P_n` on vertices `0..n` in order.
pub fn gen_path(n: usize) -> Result<Graph> {
    positive("n", n)?;
    check_cap(n, DEFAULT_SIZE_CAP)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)?.with_family(FamilyMetadata::Path { vertices: (0..n).collect() })
}

/// The nine-vertex graph: cycle `0..6` with leaves 6, 7, 8 on cycle
/// vertices 0, 2, 4.
pub fn gen_nine_vertex() -> Result<Graph> {
    let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(0, 6), (2, 7), (4, 8)]);
    let mut labels = vec![Some(Label::Cycle); 6];
    labels.extend([Some(Label::Leaf); 3]);
    Graph::from_edges(9, &edges)?
        .with_labels(labels)?
        .with_family(FamilyMetadata::NineVertex { cycle: (0..6).collect(), leaves: vec![6, 7, 8] })
}

/// Spider `S_{k,N}`: a star whose leaves are replaced by paths of `N`
/// vertices.
pub fn gen_spider(k: usize, arm_len: usize) -> Result<Graph> {
    positive("k", k)?;
    positive("N", arm_len)?;
    let n = k
        .checked_mul(arm_len)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::SizeCap { requested: usize::MAX, cap: DEFAULT_SIZE_CAP })?;
    check_cap(n, DEFAULT_SIZE_CAP)?;
    let mut edges = Vec::with_capacity(n - 1);
    let mut arms = Vec::with_capacity(k);
    for j in 0..k {
        let arm: Vec<usize> = (0..arm_len).map(|i| 1 + j * arm_len + i).collect();
        edges.push((0, arm[0]));
        edges.extend(arm.windows(2).map(|w| (w[0], w[1])));
        arms.push(arm);
    }
    let mut labels = vec![Some(Label::Arm); n];
    labels[0] = Some(Label::Center);
    Graph::from_edges(n, &edges)?.with_labels(labels)?.with_family(FamilyMetadata::Spider { center: 0, arm_len, arms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_counts() {
        let g = gen_star(4).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.max_degree()), (5, 4, 4));
    }

    #[test]
    fn nine_vertex_counts() {
        let g = gen_nine_vertex().unwrap();
        assert_eq!((g.n(), g.edge_count(), g.max_degree()), (9, 9, 3));
        assert_eq!([0, 2, 4].map(|v| g.degree(v)), [3, 3, 3]);
    }

    #[test]
    fn spider_counts() {
        let g = gen_spider(3, 5).unwrap();
        assert_eq!((g.n(), g.max_degree()), (16, 3));
        let Some(FamilyMetadata::Spider { arms, .. }) = g.family() else { panic!() };
        assert!(arms.iter().all(|a| a.len() == 5));
        assert_eq!(g.distance(0, arms[2][4]), 5);
    }

    #[test]
    fn non_positive_parameters_fail() {
        assert!(gen_star(0).is_err());
        assert!(gen_path(0).is_err());
        assert!(gen_spider(0, 3).is_err());
        assert!(gen_spider(3, 0).is_err());
    }

    #[test]
    fn family_survives_json() {
        let g = gen_spider(2, 3).unwrap();
        let back = Graph::from_json_str(&g.to_json_string().unwrap()).unwrap();
        assert_eq!(back.family(), g.family());
        assert_eq!(back.label(0), Some(Label::Center));
    }
}
