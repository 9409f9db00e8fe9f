use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

use super::lattice::{cube_corners, cube_points};
use super::meta::{Connection, FamilyMetadata, GridCyclesMeta, Tail};
use super::{check_cap, DEFAULT_SIZE_CAP};

/// Grid-connected cycles over the cut-corner cube of side `side`: every grid
/// point becomes a ring of `2d` nodes, neighbouring points are joined by
/// connection paths of `6d - 1` edges, and each corner ring gets a tail of
/// `tail_len` vertices.
#[derive(Debug, Clone)]
pub struct GridCyclesParams {
    pub d: usize,
    pub side: usize,
    pub tail_len: usize,
    pub cap: usize,
}

impl GridCyclesParams {
    /// Side `L = d^2 t`.
    pub fn for_rounds(d: usize, t: usize, tail_len: usize) -> Self {
        GridCyclesParams { d, side: d * d * t, tail_len, cap: DEFAULT_SIZE_CAP }
    }

    pub fn with_side(d: usize, side: usize, tail_len: usize) -> Self {
        GridCyclesParams { d, side, tail_len, cap: DEFAULT_SIZE_CAP }
    }

    pub fn interior_len(&self) -> usize {
        6 * self.d - 2
    }

    pub fn build(&self) -> Result<Graph> {
        let d = self.d;
        let points = cube_points(d, self.side, self.cap)?;
        let ring_len = 2 * d;
        let interior_len = self.interior_len();
        // crude upper bound before allocating anything large
        let bound = points
            .len()
            .checked_mul(ring_len + d * interior_len)
            .and_then(|x| x.checked_add(d * self.tail_len))
            .ok_or(Error::SizeCap { requested: usize::MAX, cap: self.cap })?;
        if bound > self.cap {
            // the exact count may still fit; compute it
            let edges_h: usize = points.iter().map(|x| x.iter().filter(|&&c| (c as usize) < self.side).count()).sum();
            check_cap(points.len() * ring_len + edges_h * interior_len + d * self.tail_len, self.cap)?;
        }

        let index: HashMap<&[u32], usize> = points.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();

        let mut edges = Vec::new();
        let mut labels = Vec::new();
        let mut interpretation = Vec::new();
        let mut rings = Vec::with_capacity(points.len());
        for p in 0..points.len() {
            let base = p * ring_len;
            let ring: Vec<usize> = (base..base + ring_len).collect();
            for i in 0..ring_len {
                edges.push((ring[i], ring[(i + 1) % ring_len]));
            }
            labels.extend(std::iter::repeat_n(Some(Label::RingNode), ring_len));
            interpretation.extend(std::iter::repeat_n(p, ring_len));
            rings.push(ring);
        }

        let mut next = points.len() * ring_len;
        let mut connections = Vec::new();
        let mut y = vec![0u32; d];
        for (p, x) in points.iter().enumerate() {
            for dir in 0..d {
                if x[dir] as usize == self.side {
                    continue;
                }
                y.copy_from_slice(x);
                y[dir] += 1;
                let q = index[y.as_slice()];
                // x(i+) to (x + e_i)(i-)
                let from = rings[p][2 * dir];
                let to = rings[q][2 * dir + 1];
                let interior: Vec<usize> = (next..next + interior_len).collect();
                next += interior_len;
                let mut chain = Vec::with_capacity(interior_len + 2);
                chain.push(from);
                chain.extend(&interior);
                chain.push(to);
                edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
                labels.extend(std::iter::repeat_n(Some(Label::ConnectionPath), interior_len));
                interpretation.extend(std::iter::repeat_n(p, interior_len));
                connections.push(Connection { dir, lower: p, upper: q, interior });
            }
        }

        let mut degree = vec![0usize; next];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let corners = cube_corners(&index, d, self.side);
        let mut tails = Vec::with_capacity(d);
        for (j, &point) in corners.iter().enumerate() {
            let attach =
                *rings[point].iter().find(|&&r| degree[r] == 2).expect("corner rings always have unused connections");
            degree[attach] += 1;
            let path: Vec<usize> = (next..next + self.tail_len).collect();
            next += self.tail_len;
            let mut prev = attach;
            for &v in &path {
                edges.push((prev, v));
                prev = v;
            }
            labels[attach] = Some(Label::Corner);
            labels.extend(std::iter::repeat_n(Some(Label::Tail), self.tail_len));
            interpretation.extend(std::iter::repeat_n(point, self.tail_len));
            tails.push(Tail { corner: j, point, attach, path });
        }

        let meta = GridCyclesMeta {
            d,
            side: self.side,
            tail_len: self.tail_len,
            points,
            rings,
            connections,
            tails,
            interpretation,
        };
        Graph::from_edges(next, &edges)?.with_labels(labels)?.with_family(FamilyMetadata::GridCycles(meta))
    }
}

/// Grid-connected cycles for `t` rounds (side `L = d^2 t`) with tails of
/// `tail_len` vertices.
pub fn gen_grid_connected_cycles(d: usize, t: usize, tail_len: usize) -> Result<Graph> {
    if t < 1 {
        return Err(Error::InvalidParameter("grid-connected cycles need t >= 1".into()));
    }
    GridCyclesParams::for_rounds(d, t, tail_len).build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(g: &Graph) -> &GridCyclesMeta {
        match g.family() {
            Some(FamilyMetadata::GridCycles(m)) => m,
            _ => panic!("no grid-cycles metadata"),
        }
    }

    #[test]
    fn smallest_instance_counts() {
        let n_tail = 3;
        let g = GridCyclesParams::with_side(2, 1, n_tail).build().unwrap();
        let m = meta(&g);
        assert_eq!(m.points.len(), 3);
        assert_eq!(m.connections.len(), 2);
        assert!(m.connections.iter().all(|c| c.interior.len() == 10));
        assert_eq!(m.tails.len(), 2);
        assert_eq!(g.n(), 3 * 4 + 2 * 10 + 2 * n_tail);
    }

    #[test]
    fn max_degree_three() {
        for (d, side) in [(2, 1), (2, 4), (3, 2)] {
            let g = GridCyclesParams::with_side(d, side, 2).build().unwrap();
            assert!(g.max_degree() <= 3, "d={d} L={side}");
            assert_eq!(g.max_degree(), 3);
        }
    }

    #[test]
    fn connection_paths_have_6d_minus_1_edges() {
        let g = GridCyclesParams::with_side(3, 2, 1).build().unwrap();
        let m = meta(&g);
        for c in &m.connections {
            let from = m.rings[c.lower][2 * c.dir];
            let to = m.rings[c.upper][2 * c.dir + 1];
            assert_eq!(g.distance(from, to), 17);
            assert_eq!(m.points[c.upper][c.dir], m.points[c.lower][c.dir] + 1);
        }
    }

    #[test]
    fn tails_hang_off_corner_rings() {
        let g = gen_grid_connected_cycles(2, 1, 5).unwrap();
        let m = meta(&g);
        for t in &m.tails {
            assert_eq!(m.points[t.point][t.corner] as usize, m.side);
            assert!(m.rings[t.point].contains(&t.attach));
            assert_eq!(g.degree(t.attach), 3);
            assert_eq!(t.path.len(), 5);
            assert_eq!(g.distance(t.attach, *t.path.last().unwrap()), 5);
        }
    }

    #[test]
    fn interpretation_maps_interiors_to_lower_endpoint() {
        let g = GridCyclesParams::with_side(2, 2, 1).build().unwrap();
        let m = meta(&g);
        for c in &m.connections {
            assert!(c.interior.iter().all(|&v| m.interpretation[v] == c.lower));
        }
        for (p, ring) in m.rings.iter().enumerate() {
            assert!(ring.iter().all(|&v| m.interpretation[v] == p));
        }
    }
}
