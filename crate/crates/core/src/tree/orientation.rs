use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Roots {
    /// The central vertex.
    Vertex { c: usize },
    /// Endpoints of the central edge, `c1 < c2`.
    Edge { c1: usize, c2: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    /// Size of the smaller side after removing the edge.
    pub weight: usize,
    /// Endpoint on the larger side; `None` for the central edge.
    pub head: Option<usize>,
}

/// Every edge of a tree weighted by its smaller side and directed from the
/// smaller side to the larger one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedOrientation {
    pub n: usize,
    pub edges: Vec<WeightedEdge>,
    pub roots: Roots,
    /// Outgoing arc of each vertex as `(head, weight)`.
    #[serde(skip)]
    out: Vec<Option<(usize, usize)>>,
    /// Incoming arcs of each vertex as `(tail, weight)`, by tail id.
    #[serde(skip)]
    incoming: Vec<Vec<(usize, usize)>>,
}

impl WeightedOrientation {
    pub fn outgoing(&self, v: usize) -> Option<(usize, usize)> {
        self.out[v]
    }

    pub fn incoming(&self, v: usize) -> &[(usize, usize)] {
        &self.incoming[v]
    }

    pub fn root_vertices(&self) -> Vec<usize> {
        match self.roots {
            Roots::Vertex { c } => vec![c],
            Roots::Edge { c1, c2 } => vec![c1, c2],
        }
    }

    /// The central vertex, or the lower endpoint of the central edge.
    pub fn central_choice(&self) -> usize {
        match self.roots {
            Roots::Vertex { c } => c,
            Roots::Edge { c1, .. } => c1,
        }
    }
}

pub(crate) fn require_tree(g: &Graph) -> Result<()> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree { n: g.n(), edges: g.edge_count() })
    }
}

/// Parent of every vertex when the tree hangs from vertex 0, with the
/// visiting order (parents before children).
pub(crate) fn rooted_order(g: &Graph) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    (parent, order)
}

pub fn weight_and_orient(g: &Graph) -> Result<WeightedOrientation> {
    require_tree(g)?;
    let n = g.n();
    let (parent, order) = rooted_order(g);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            size[p] += size[v];
        }
    }
    let mut out = vec![None; n];
    let mut incoming = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut central_edge = None;
    for (u, v) in g.edges() {
        let (child, par) = if parent[v] == Some(u) { (v, u) } else { (u, v) };
        let below = size[child];
        let above = n - below;
        let weight = below.min(above);
        let head = match below.cmp(&above) {
            std::cmp::Ordering::Less => Some(par),
            std::cmp::Ordering::Greater => Some(child),
            std::cmp::Ordering::Equal => None,
        };
        match head {
            Some(h) => {
                let tail = if h == par { child } else { par };
                out[tail] = Some((h, weight));
                incoming[h].push((tail, weight));
            }
            None => central_edge = Some((u, v)),
        }
        edges.push(WeightedEdge { u, v, weight, head });
    }
    for list in &mut incoming {
        list.sort_unstable();
    }
    let roots = match central_edge {
        Some((c1, c2)) => Roots::Edge { c1, c2 },
        None => {
            let c = (0..n).find(|&v| out[v].is_none()).expect("a finite tree has a sink");
            Roots::Vertex { c }
        }
    };
    Ok(WeightedOrientation { n, edges, roots, out, incoming })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_path, gen_star};

    /// Side sizes by deleting the edge and counting with a BFS.
    fn smaller_side(g: &Graph, u: usize, v: usize) -> usize {
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut stack = vec![u];
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for &y in g.neighbors(x) {
                if !seen[y] && !(x == u && y == v) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        count.min(g.n() - count)
    }

    #[test]
    fn even_path_has_a_central_edge() {
        let o = weight_and_orient(&gen_path(4).unwrap()).unwrap();
        assert_eq!(o.roots, Roots::Edge { c1: 1, c2: 2 });
        let central = o.edges.iter().find(|e| e.head.is_none()).unwrap();
        assert_eq!(central.weight, 2);
    }

    #[test]
    fn odd_path_has_a_central_vertex() {
        let o = weight_and_orient(&gen_path(5).unwrap()).unwrap();
        assert_eq!(o.roots, Roots::Vertex { c: 2 });
        assert_eq!(o.outgoing(2), None);
        assert_eq!(o.incoming(2), &[(1, 2), (3, 2)]);
    }

    #[test]
    fn star_edges_weigh_one() {
        let o = weight_and_orient(&gen_star(5).unwrap()).unwrap();
        assert_eq!(o.roots, Roots::Vertex { c: 0 });
        assert!(o.edges.iter().all(|e| e.weight == 1 && e.head == Some(0)));
    }

    #[test]
    fn weights_match_edge_deletion() {
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6), (6, 7)]).unwrap();
        let o = weight_and_orient(&g).unwrap();
        for e in &o.edges {
            assert_eq!(e.weight, smaller_side(&g, e.u, e.v));
        }
        for v in 0..8 {
            if let Some((h, w)) = o.outgoing(v) {
                if let Some((_, w2)) = o.outgoing(h) {
                    assert!(w2 > w);
                }
            }
        }
    }

    #[test]
    fn rejects_cycles() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(weight_and_orient(&g), Err(Error::NotATree { .. })));
    }
}
