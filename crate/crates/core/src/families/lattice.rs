use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

use super::meta::{CubeMeta, FamilyMetadata, LeafGroup, SimplexMeta};
use super::{check_cap, DEFAULT_SIZE_CAP};

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Nonnegative integer vectors of length `d` with coordinate sum `sum`,
/// ordered so that `(sum, 0, ..., 0)` comes first.
fn compositions(sum: u32, d: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == d {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in (0..=rest).rev() {
            prefix.push(x);
            rec(rest - x, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(sum, d, &mut Vec::with_capacity(d), &mut out);
    out
}

#[derive(Debug, Clone)]
pub struct SimplexParams {
    pub d: usize,
    pub t0: usize,
    pub leaves: usize,
    /// Attach the leaves to every lattice vertex instead of only the corners.
    pub attach_everywhere: bool,
    pub cap: usize,
}

impl SimplexParams {
    pub fn new(d: usize, t0: usize, leaves: usize) -> Self {
        SimplexParams { d, t0, leaves, attach_everywhere: false, cap: DEFAULT_SIZE_CAP }
    }

    pub fn build(&self) -> Result<Graph> {
        let (d, t0, leaves) = (self.d, self.t0, self.leaves);
        if d < 2 || t0 < 1 {
            return Err(Error::InvalidParameter(format!("simplex needs d >= 2 and t0 >= 1 (got d={d}, t0={t0})")));
        }
        let too_big = Error::SizeCap { requested: usize::MAX, cap: self.cap };
        let sum = (d as u128).checked_mul(d as u128).and_then(|x| x.checked_mul(t0 as u128));
        let sum = sum.filter(|&s| s <= u32::MAX as u128).ok_or(too_big)?;
        let points = binomial(sum + d as u128 - 1, d as u128 - 1)
            .filter(|&p| p <= self.cap as u128)
            .ok_or(Error::SizeCap { requested: usize::MAX, cap: self.cap })? as usize;
        let anchors = if self.attach_everywhere { points } else { d };
        let total = anchors
            .checked_mul(leaves)
            .and_then(|x| x.checked_add(points))
            .ok_or(Error::SizeCap { requested: usize::MAX, cap: self.cap })?;
        check_cap(total, self.cap)?;

        let coords = compositions(sum as u32, d);
        debug_assert_eq!(coords.len(), points);
        let index: HashMap<&[u32], usize> = coords.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();

        let mut edges = Vec::new();
        let mut y = vec![0u32; d];
        for (u, x) in coords.iter().enumerate() {
            // neighbours x + e_i - e_j at L1 distance 2
            for i in 0..d {
                for j in 0..d {
                    if i == j || x[j] == 0 {
                        continue;
                    }
                    y.copy_from_slice(x);
                    y[i] += 1;
                    y[j] -= 1;
                    let v = index[y.as_slice()];
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }

        let corners: Vec<usize> = (0..d)
            .map(|i| {
                let mut c = vec![0u32; d];
                c[i] = sum as u32;
                index[c.as_slice()]
            })
            .collect();
        let mut labels = vec![Some(Label::Lattice); points];
        for &c in &corners {
            labels[c] = Some(Label::Corner);
        }
        let anchor_ids: Vec<usize> = if self.attach_everywhere { (0..points).collect() } else { corners.clone() };
        let mut next = points;
        let mut leaf_groups = Vec::with_capacity(anchor_ids.len());
        for &anchor in &anchor_ids {
            let group: Vec<usize> = (next..next + leaves).collect();
            next += leaves;
            edges.extend(group.iter().map(|&l| (anchor, l)));
            labels.extend(std::iter::repeat_n(Some(Label::Leaf), leaves));
            leaf_groups.push(LeafGroup { anchor, leaves: group });
        }

        let meta = SimplexMeta {
            d,
            t0,
            leaves_per_anchor: leaves,
            attach_everywhere: self.attach_everywhere,
            coords,
            corners,
            leaf_groups,
        };
        Graph::from_edges(total, &edges)?.with_labels(labels)?.with_family(FamilyMetadata::Simplex(meta))
    }
}

/// Simplex slice `{x >= 0 : sum x = d^2 t0}` with `leaves` leaves on each
/// corner.
pub fn gen_simplex(d: usize, t0: usize, leaves: usize) -> Result<Graph> {
    SimplexParams::new(d, t0, leaves).build()
}

#[derive(Debug, Clone)]
pub struct CubeParams {
    pub d: usize,
    pub side: usize,
    pub cap: usize,
}

impl CubeParams {
    /// Side length `L = d^2 t`.
    pub fn for_rounds(d: usize, t: usize) -> Self {
        CubeParams { d, side: d * d * t, cap: DEFAULT_SIZE_CAP }
    }

    pub fn with_side(d: usize, side: usize) -> Self {
        CubeParams { d, side, cap: DEFAULT_SIZE_CAP }
    }

    pub fn build(&self) -> Result<Graph> {
        let coords = cube_points(self.d, self.side, self.cap)?;
        let index: HashMap<&[u32], usize> = coords.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let mut edges = Vec::new();
        let mut y = vec![0u32; self.d];
        for (u, x) in coords.iter().enumerate() {
            for i in 0..self.d {
                if x[i] as usize == self.side {
                    continue;
                }
                y.copy_from_slice(x);
                y[i] += 1;
                edges.push((u, index[y.as_slice()]));
            }
        }
        let corners = cube_corners(&index, self.d, self.side);
        let mut labels = vec![Some(Label::Lattice); coords.len()];
        for &c in &corners {
            labels[c] = Some(Label::Corner);
        }
        let meta = CubeMeta { d: self.d, side: self.side, coords, corners };
        Graph::from_edges(meta.coords.len(), &edges)?
            .with_labels(labels)?
            .with_family(FamilyMetadata::CutCornerCube(meta))
    }
}

/// The lattice graph `H`: points of `[0, L]^d` with coordinate sum at least
/// `L`, joined at L1 distance 1, with `L = d^2 t`.
pub fn gen_cut_corner_cube(d: usize, t: usize) -> Result<Graph> {
    if t < 1 {
        return Err(Error::InvalidParameter("cube needs t >= 1".into()));
    }
    CubeParams::for_rounds(d, t).build()
}

/// Distance from a point of `H` to the `j`-th corner: `L + sum x - 2 x_j`.
pub fn cube_corner_distance(x: &[u32], j: usize, side: usize) -> u64 {
    let sum: u64 = x.iter().map(|&c| c as u64).sum();
    side as u64 + sum - 2 * x[j] as u64
}

/// Points of the cut-corner cube in lexicographic order.
pub(crate) fn cube_points(d: usize, side: usize, cap: usize) -> Result<Vec<Vec<u32>>> {
    if d < 2 || side < 1 {
        return Err(Error::InvalidParameter(format!("cube needs d >= 2 and L >= 1 (got d={d}, L={side})")));
    }
    let too_big = Error::SizeCap { requested: usize::MAX, cap };
    let full = (side as u128 + 1).checked_pow(d as u32).ok_or(too_big)?;
    // points with sum < L
    let cut = binomial(side as u128 - 1 + d as u128, d as u128).unwrap_or(0);
    let count = full - cut;
    if count > cap as u128 {
        return Err(Error::SizeCap { requested: count.min(usize::MAX as u128) as usize, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut x = vec![0u32; d];
    loop {
        if x.iter().map(|&c| c as usize).sum::<usize>() >= side {
            out.push(x.clone());
        }
        // odometer increment, last coordinate fastest
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (x[i] as usize) < side {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

pub(crate) fn cube_corners(index: &HashMap<&[u32], usize>, d: usize, side: usize) -> Vec<usize> {
    (0..d)
        .map(|i| {
            let mut c = vec![0u32; d];
            c[i] = side as u32;
            index[c.as_slice()]
        })
        .collect()
}
