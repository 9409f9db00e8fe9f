use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;

use super::orientation::{weight_and_orient, Roots, WeightedOrientation};

/// Split of a tree into pieces of at most a third: either one vertex whose
/// removal leaves only such components, or a pair `u, v` whose removal does
/// and whose sides `T_u`, `T_v` (after deleting the `u`-`v` path edges) both
/// exceed a third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ThresholdResult {
    Single { c: usize },
    Pair { u: usize, v: usize, tu: usize, tv: usize },
}

/// Vertices whose incoming arcs all weigh at most `n/3` and whose outgoing
/// arc, if any, weighs more. Found by walking from the roots down every arc
/// heavier than `n/3`. Sorted by id.
pub fn threshold_vertices(o: &WeightedOrientation) -> Vec<usize> {
    let n = o.n;
    let mut found = Vec::new();
    let mut stack = o.root_vertices();
    while let Some(x) = stack.pop() {
        let heavy: Vec<usize> = o.incoming(x).iter().filter(|&&(_, w)| 3 * w > n).map(|&(t, _)| t).collect();
        if heavy.is_empty() {
            found.push(x);
        } else {
            stack.extend(heavy);
        }
    }
    found.sort_unstable();
    found
}

pub fn find_threshold(g: &Graph) -> Result<ThresholdResult> {
    let o = weight_and_orient(g)?;
    let th = threshold_vertices(&o);
    let (u, v) = match (o.roots, th.as_slice()) {
        (Roots::Vertex { c }, &[x]) if x == c => return Ok(ThresholdResult::Single { c }),
        (Roots::Vertex { c }, &[x]) => (x, c),
        (_, &[a, b]) => (a, b),
        (_, other) => unreachable!("a tree has one or two threshold vertices, found {other:?}"),
    };
    let (tu, tv) = side_sizes(g, u, v);
    Ok(ThresholdResult::Pair { u, v, tu, tv })
}

/// Vertex sequence of the unique `u`-`v` path.
pub fn tree_path(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[v] = v;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        if x == u {
            break;
        }
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![u];
    let mut x = u;
    while x != v {
        x = parent[x];
        path.push(x);
    }
    path
}

/// `|T_u|` and `|T_v|`: component sizes of `u` and `v` once the path edges
/// between them are deleted.
pub fn side_sizes(g: &Graph, u: usize, v: usize) -> (usize, usize) {
    let path = tree_path(g, u, v);
    let on_path: std::collections::HashSet<(usize, usize)> =
        path.windows(2).flat_map(|w| [(w[0], w[1]), (w[1], w[0])]).collect();
    let count = |s: usize| {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut stack = vec![s];
        let mut c = 0;
        while let Some(x) = stack.pop() {
            c += 1;
            for &y in g.neighbors(x) {
                if !seen[y] && !on_path.contains(&(x, y)) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        c
    };
    (count(u), count(v))
}
