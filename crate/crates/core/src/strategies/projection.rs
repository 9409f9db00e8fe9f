use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// Points with coordinate sum `d^2 t0`.
    Simplex { d: usize },
    /// The cut-corner cube of side `side`; raised coordinates clamp at `side`.
    Cube { d: usize, side: u32 },
}

/// `pi_i(x)`: lower coordinate `i` by `d - 1` and raise every other one by
/// one (clamped in the cube). Every corner other than the `i`-th gets
/// strictly closer.
pub fn project_pi(x: &[u32], i: usize, variant: Projection) -> Result<Vec<u32>> {
    let d = match variant {
        Projection::Simplex { d } | Projection::Cube { d, .. } => d,
    };
    if x.len() != d || i >= d {
        return Err(Error::InvalidParameter(format!("point {x:?} or index {i} does not fit dimension {d}")));
    }
    let step = (d - 1) as u32;
    if x[i] < step {
        return Err(Error::OutsideVertexSet(format!("coordinate {i} of {x:?} is below {step}")));
    }
    let mut y = x.to_vec();
    for (j, c) in y.iter_mut().enumerate() {
        if j == i {
            *c -= step;
        } else {
            *c = match variant {
                Projection::Simplex { .. } => *c + 1,
                Projection::Cube { side, .. } => (*c + 1).min(side),
            };
        }
    }
    if let Projection::Cube { side, .. } = variant {
        let sum: u64 = y.iter().map(|&c| c as u64).sum();
        if x.iter().any(|&c| c > side) || sum < side as u64 {
            return Err(Error::OutsideVertexSet(format!("{y:?} leaves the cut-corner cube of side {side}")));
        }
    }
    Ok(y)
}

/// Index of the largest coordinate, ties to the lowest index.
pub(crate) fn argmax(x: &[u32]) -> usize {
    let mut best = 0;
    for (j, &c) in x.iter().enumerate() {
        if c > x[best] {
            best = j;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cube_corner_distance;
    use proptest::prelude::*;

    fn l1(a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum()
    }

    #[test]
    fn simplex_example() {
        assert_eq!(project_pi(&[9, 0, 0], 0, Projection::Simplex { d: 3 }).unwrap(), vec![7, 1, 1]);
    }

    #[test]
    fn cube_example() {
        let y = project_pi(&[4, 4], 0, Projection::Cube { d: 2, side: 4 }).unwrap();
        assert_eq!(y, vec![3, 4]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(project_pi(&[1, 8, 0], 0, Projection::Simplex { d: 3 }), Err(Error::OutsideVertexSet(_))));
        // (1, 3) -> (0, 4) has sum 4 and stays; (1, 2) -> (0, 3) drops below the cut
        assert!(project_pi(&[1, 3], 0, Projection::Cube { d: 2, side: 4 }).is_ok());
        assert!(project_pi(&[1, 2], 0, Projection::Cube { d: 2, side: 4 }).is_err());
    }

    #[test]
    fn simplex_corners_move_as_claimed() {
        // exhaustive over d = 3, t0 = 1: sum 9, corner distance is half the L1 distance
        let (d, s) = (3usize, 9u32);
        let corners: Vec<Vec<u32>> = (0..d).map(|j| (0..d).map(|k| if k == j { s } else { 0 }).collect()).collect();
        for a in 0..=s {
            for b in 0..=s - a {
                let x = vec![a, b, s - a - b];
                let i = argmax(&x);
                if x[i] < d as u32 {
                    continue;
                }
                let y = project_pi(&x, i, Projection::Simplex { d }).unwrap();
                assert_eq!(y.iter().sum::<u32>(), s);
                for (j, c) in corners.iter().enumerate() {
                    if j == i {
                        assert!(l1(&y, c) > l1(&x, c));
                    } else {
                        assert!(l1(&y, c) < l1(&x, c));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn cube_projection_approaches_other_corners(x in prop::collection::vec(0u32..=6, 3), i in 0usize..3) {
            let side = 6;
            prop_assume!(x.iter().sum::<u32>() >= side);
            if let Ok(y) = project_pi(&x, i, Projection::Cube { d: 3, side }) {
                prop_assert_ne!(&y, &x);
                for j in 0..3 {
                    let before = cube_corner_distance(&x, j, side as usize);
                    let after = cube_corner_distance(&y, j, side as usize);
                    if j == i {
                        prop_assert!(after > before);
                    } else {
                        prop_assert!(after < before);
                    }
                }
            }
        }
    }
}
