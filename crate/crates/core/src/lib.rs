//! Exact solving, strategy evaluation and bound checking for the discrete
//! Voronoi game on graphs.
//!
//! Two players, A (first) and B, alternately claim vertices for `t` rounds.
//! Every vertex then goes to the player with the nearer claimed vertex, and
//! equidistant vertices are split. All payoffs are counted exactly in
//! half-vertex units.

pub mod enumerate;
pub mod error;
pub mod exploit;
pub mod families;
pub mod graph;
pub mod report;
pub mod solver;
pub mod strategies;
pub mod tree;
pub mod verify;
pub mod voronoi;

pub use error::{Error, Result};
pub use exploit::{exploit, per_round_check, replay, ExploitResult, Objective, RoundCheck};
pub use graph::{Graph, GraphJson, Label};
pub use solver::{solve, solve_position, Budget, GameSpec, SolveResult, SolverConfig};
pub use strategies::Strategy;
pub use verify::{BoundReport, Corpus, Relation};
pub use voronoi::{dominance_region, partition, Owner, Partition, Player, Position, Score};
