//! Edge weights, orientation and threshold split of trees, and the tree
//! strategies built on them.

mod orientation;
mod strategies;
mod threshold;

pub use orientation::{weight_and_orient, Roots, WeightedEdge, WeightedOrientation};
pub use strategies::{CentralA, LegDefenseB, TwoRoundA};
pub use threshold::{find_threshold, side_sizes, threshold_vertices, tree_path, ThresholdResult};
