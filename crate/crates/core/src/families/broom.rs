use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

use super::meta::{Broom, BroomLegMeta, FamilyMetadata, Leg};
use super::{check_cap, DEFAULT_SIZE_CAP};

/// Two legs and a head hung off a center `c` of degree three.
///
/// A leg is a path of `2^(k-1)` vertices whose brooms (a path vertex plus
/// `broom_size` leaves) sit at path positions `1, 2, 4, ..., 2^(k-1)`
/// counted from the center, so consecutive brooms are `1, 2, 4, ...` apart.
/// The head is a vertex `h` next to `c` carrying `k * broom_size` leaves.
///
/// Layout: `c = 0`, `h = 1`, head leaves, then each leg's path followed by
/// its broom leaves.
pub fn gen_broom_leg_tree(k: usize, broom_size: usize) -> Result<Graph> {
    if k == 0 || broom_size == 0 {
        return Err(Error::InvalidParameter(format!(
            "broom-leg tree needs k >= 1 and N >= 1 (got k={k}, N={broom_size})"
        )));
    }
    if k > 24 {
        return Err(Error::SizeCap { requested: usize::MAX, cap: DEFAULT_SIZE_CAP });
    }
    let path_len = 1usize << (k - 1);
    let mass = k.checked_mul(broom_size).ok_or(Error::SizeCap { requested: usize::MAX, cap: DEFAULT_SIZE_CAP })?;
    let n = 2 + mass + 2 * (path_len + mass);
    check_cap(n, DEFAULT_SIZE_CAP)?;

    let (center, head) = (0, 1);
    let mut edges = vec![(center, head)];
    let mut labels = vec![Some(Label::Center), Some(Label::Head)];
    let head_leaves: Vec<usize> = (2..2 + mass).collect();
    edges.extend(head_leaves.iter().map(|&l| (head, l)));
    labels.extend(std::iter::repeat_n(Some(Label::BroomLeaf), mass));

    let mut next = 2 + mass;
    let mut legs = Vec::with_capacity(2);
    for _ in 0..2 {
        let path: Vec<usize> = (next..next + path_len).collect();
        next += path_len;
        edges.push((center, path[0]));
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        labels.extend(std::iter::repeat_n(Some(Label::LegPath), path_len));
        let mut brooms = Vec::with_capacity(k);
        for j in 0..k {
            let anchor = path[(1usize << j) - 1];
            let leaves: Vec<usize> = (next..next + broom_size).collect();
            next += broom_size;
            edges.extend(leaves.iter().map(|&l| (anchor, l)));
            labels.extend(std::iter::repeat_n(Some(Label::BroomLeaf), broom_size));
            brooms.push(Broom { anchor, leaves });
        }
        legs.push(Leg { path, brooms });
    }
    debug_assert_eq!(next, n);

    let meta = BroomLegMeta { k, broom_size, center, head, head_leaves, legs };
    Graph::from_edges(n, &edges)?.with_labels(labels)?.with_family(FamilyMetadata::BroomLeg(meta))
}
