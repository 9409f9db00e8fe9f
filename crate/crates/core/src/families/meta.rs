use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structure recorded by a generator so that family-aware strategies can
/// find the corners, rings, legs or copies of the graph they play on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyMetadata {
    Star {
        center: usize,
        leaves: Vec<usize>,
    },
    Path {
        vertices: Vec<usize>,
    },
    /// Six-cycle with a leaf on every other cycle vertex; `leaves[i]` hangs
    /// off `cycle[2 * i]`.
    NineVertex {
        cycle: Vec<usize>,
        leaves: Vec<usize>,
    },
    Spider {
        center: usize,
        arm_len: usize,
        /// Each arm listed from the vertex next to the center outwards.
        arms: Vec<Vec<usize>>,
    },
    Simplex(SimplexMeta),
    CutCornerCube(CubeMeta),
    GridCycles(GridCyclesMeta),
    BroomLeg(BroomLegMeta),
    DeltaCopies(DeltaCopiesMeta),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafGroup {
    pub anchor: usize,
    pub leaves: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexMeta {
    pub d: usize,
    pub t0: usize,
    pub leaves_per_anchor: usize,
    pub attach_everywhere: bool,
    /// Coordinates of lattice vertex `i` (lattice vertices are `0..coords.len()`).
    pub coords: Vec<Vec<u32>>,
    /// `corners[i]` is the point with coordinate `i` equal to `d^2 t0`.
    pub corners: Vec<usize>,
    pub leaf_groups: Vec<LeafGroup>,
}

impl SimplexMeta {
    pub fn coordinate_sum(&self) -> u32 {
        (self.d * self.d * self.t0) as u32
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeMeta {
    pub d: usize,
    pub side: usize,
    pub coords: Vec<Vec<u32>>,
    pub corners: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Connection {
    /// Coordinate that differs between the two endpoints.
    pub dir: usize,
    /// Grid point index of the endpoint with the smaller coordinate.
    pub lower: usize,
    pub upper: usize,
    /// Interior vertices from the lower ring towards the upper ring.
    pub interior: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tail {
    /// Index `j` of the corner `L e_j`.
    pub corner: usize,
    pub point: usize,
    /// Ring node the tail hangs off.
    pub attach: usize,
    /// Tail vertices from the attachment outwards.
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCyclesMeta {
    pub d: usize,
    pub side: usize,
    pub tail_len: usize,
    /// Grid points of the cut-corner cube.
    pub points: Vec<Vec<u32>>,
    /// `rings[p]` lists the `2d` ring nodes of point `p` in cyclic order
    /// `1+, 1-, 2+, 2-, ..., d+, d-`.
    pub rings: Vec<Vec<usize>>,
    pub connections: Vec<Connection>,
    pub tails: Vec<Tail>,
    /// Interpretation map: grid point index for every vertex. Ring nodes map
    /// to their point, connection-path interiors to their lower endpoint and
    /// tail vertices to their corner.
    pub interpretation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Broom {
    pub anchor: usize,
    pub leaves: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    /// Path vertices from the top (next to the center) downwards.
    pub path: Vec<usize>,
    pub brooms: Vec<Broom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BroomLegMeta {
    pub k: usize,
    pub broom_size: usize,
    pub center: usize,
    pub head: usize,
    pub head_leaves: Vec<usize>,
    pub legs: Vec<Leg>,
}

impl BroomLegMeta {
    /// Every leaf of every broom, including the head broom.
    pub fn broom_vertices(&self) -> Vec<usize> {
        let mut out = self.head_leaves.clone();
        for leg in &self.legs {
            for broom in &leg.brooms {
                out.extend(&broom.leaves);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaCopiesMeta {
    pub delta: usize,
    pub hub: usize,
    /// Local index (within the inner graph) of the vertex joined to the hub.
    pub attach_local: usize,
    /// `copies[i][j]` is the global id of local vertex `j` in copy `i`.
    pub copies: Vec<Vec<usize>>,
}

impl DeltaCopiesMeta {
    pub fn copy_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (i, copy) in self.copies.iter().enumerate() {
            for &v in copy {
                out[v] = Some(i);
            }
        }
        out
    }
}

impl FamilyMetadata {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyMetadata::Star { .. } => "star",
            FamilyMetadata::Path { .. } => "path",
            FamilyMetadata::NineVertex { .. } => "nine-vertex",
            FamilyMetadata::Spider { .. } => "spider",
            FamilyMetadata::Simplex(_) => "simplex",
            FamilyMetadata::CutCornerCube(_) => "cut-corner-cube",
            FamilyMetadata::GridCycles(_) => "grid-cycles",
            FamilyMetadata::BroomLeg(_) => "broom-leg",
            FamilyMetadata::DeltaCopies(_) => "delta-copies",
        }
    }

    /// Checks that every referenced id exists and ring shapes are right.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut ids: Vec<usize> = Vec::new();
        match self {
            FamilyMetadata::Star { center, leaves } => {
                ids.push(*center);
                ids.extend(leaves);
            }
            FamilyMetadata::Path { vertices } => ids.extend(vertices),
            FamilyMetadata::NineVertex { cycle, leaves } => {
                ids.extend(cycle);
                ids.extend(leaves);
            }
            FamilyMetadata::Spider { center, arms, .. } => {
                ids.push(*center);
                ids.extend(arms.iter().flatten());
            }
            FamilyMetadata::Simplex(m) => {
                if m.coords.len() > n {
                    return Err(Error::InvalidParameter("more lattice points than vertices".into()));
                }
                ids.extend(&m.corners);
                for g in &m.leaf_groups {
                    ids.push(g.anchor);
                    ids.extend(&g.leaves);
                }
            }
            FamilyMetadata::CutCornerCube(m) => {
                if m.coords.len() != n {
                    return Err(Error::InvalidParameter("cube coordinates do not cover the graph".into()));
                }
                ids.extend(&m.corners);
            }
            FamilyMetadata::GridCycles(m) => {
                for ring in &m.rings {
                    if ring.len() != 2 * m.d {
                        return Err(Error::InvalidParameter(format!(
                            "ring of {} nodes, expected {}",
                            ring.len(),
                            2 * m.d
                        )));
                    }
                    ids.extend(ring);
                }
                for c in &m.connections {
                    ids.extend(&c.interior);
                }
                for t in &m.tails {
                    ids.push(t.attach);
                    ids.extend(&t.path);
                }
                if m.interpretation.len() != n {
                    return Err(Error::InvalidParameter("interpretation map does not cover the graph".into()));
                }
            }
            FamilyMetadata::BroomLeg(m) => {
                ids.push(m.center);
                ids.push(m.head);
                ids.extend(&m.head_leaves);
                for leg in &m.legs {
                    ids.extend(&leg.path);
                    for b in &leg.brooms {
                        ids.push(b.anchor);
                        ids.extend(&b.leaves);
                    }
                }
            }
            FamilyMetadata::DeltaCopies(m) => {
                ids.push(m.hub);
                ids.extend(m.copies.iter().flatten());
            }
        }
        match ids.into_iter().find(|&v| v >= n) {
            Some(v) => Err(Error::InvalidVertex { vertex: v, n }),
            None => Ok(()),
        }
    }
}
