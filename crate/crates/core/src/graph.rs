//! Immutable simple undirected graphs with optional role labels and family
//! metadata, plus unweighted shortest-path distances.
//!
//! Graphs are validated once at construction: symmetric adjacency, no
//! self-loops, no parallel edges, and connectivity. After that every query is
//! pure, and a `Graph` can be shared freely across threads.

use std::borrow::Cow;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyMetadata;

/// Marker for "no path"; never observed on a validated graph.
pub const UNREACHABLE: u32 = u32::MAX;

/// Default bound on the number of cached distance entries (n * n).
pub const DEFAULT_DISTANCE_CAP: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Center,
    Leaf,
    Cycle,
    Arm,
    Lattice,
    Corner,
    RingNode,
    ConnectionPath,
    Tail,
    Hub,
    Head,
    LegPath,
    BroomLeaf,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Center => "center",
            Label::Leaf => "leaf",
            Label::Cycle => "cycle",
            Label::Arm => "arm",
            Label::Lattice => "lattice",
            Label::Corner => "corner",
            Label::RingNode => "ring-node",
            Label::ConnectionPath => "connection-path",
            Label::Tail => "tail",
            Label::Hub => "hub",
            Label::Head => "head",
            Label::LegPath => "leg-path",
            Label::BroomLeaf => "broom-leaf",
        }
    }
}

/// Lazily filled single-source distance rows, bounded by an entry cap.
///
/// Rows are written at most once through `OnceLock`, so concurrent readers
/// always observe the same BFS result.
#[derive(Debug, Clone)]
struct DistanceCache {
    rows: Vec<OnceLock<Box<[u32]>>>,
    enabled: bool,
}

impl DistanceCache {
    fn new(n: usize, cap: usize) -> Self {
        let enabled = n.checked_mul(n).is_some_and(|entries| entries <= cap);
        let rows = if enabled { (0..n).map(|_| OnceLock::new()).collect() } else { Vec::new() };
        DistanceCache { rows, enabled }
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Vec<Option<Label>>,
    family: Option<FamilyMetadata>,
    cache: DistanceCache,
}

impl Graph {
    /// Builds a validated graph from an edge list on vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let dist = bfs(&adj, 0);
        if let Some(unreachable) = dist.iter().position(|&d| d == UNREACHABLE) {
            return Err(Error::Disconnected { unreachable });
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
            labels: vec![None; n],
            family: None,
            cache: DistanceCache::new(n, DEFAULT_DISTANCE_CAP),
        })
    }

    pub fn with_labels(mut self, labels: Vec<Option<Label>>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter(format!("{} labels for {} vertices", labels.len(), self.n())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_family(mut self, family: FamilyMetadata) -> Result<Graph> {
        family.validate(self.n())?;
        self.family = Some(family);
        Ok(self)
    }

    /// Re-sizes the distance cache; graphs with more than `cap` vertex pairs
    /// answer every distance query with a fresh BFS.
    pub fn with_distance_cap(mut self, cap: usize) -> Graph {
        self.cache = DistanceCache::new(self.n(), cap);
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.n()
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.labels[v]
    }

    pub fn family(&self) -> Option<&FamilyMetadata> {
        self.family.as_ref()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    /// Hop distances from `source` to every vertex.
    pub fn all_distances_from(&self, source: usize) -> Result<Vec<u32>> {
        self.check_vertex(source)?;
        Ok(self.distances(source).into_owned())
    }

    /// Distance row for a vertex already known to be valid. Served from the
    /// cache when the graph is small enough, otherwise recomputed.
    pub fn distances(&self, source: usize) -> Cow<'_, [u32]> {
        if self.cache.enabled {
            Cow::Borrowed(self.cache.rows[source].get_or_init(|| bfs(&self.adj, source).into_boxed_slice()))
        } else {
            Cow::Owned(bfs(&self.adj, source))
        }
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.distances(u)[v]
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Fails if the induced subgraph is disconnected.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v]).collect();
        Graph::from_edges(vertices.len(), &edges)?.with_labels(labels)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.iter().enumerate().filter_map(|(v, l)| l.map(|l| (v, l))).collect(),
            family: self.family.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(json.n, &edges)?;
        let mut labels = vec![None; json.n];
        for (&v, &l) in &json.labels {
            g.check_vertex(v)?;
            labels[v] = Some(l);
        }
        let g = g.with_labels(labels)?;
        match &json.family {
            Some(f) => g.with_family(f.clone()),
            None => Ok(g),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json())?)
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        let json: GraphJson = serde_json::from_str(s)?;
        Graph::from_json(&json)
    }

    /// Graphviz rendering. `highlight` colors selected vertices, e.g. roots or
    /// threshold vertices.
    pub fn to_dot(&self, highlight: &[(usize, &str)]) -> String {
        let mut out = String::from("graph G {\n  node [shape=circle];\n");
        for v in 0..self.n() {
            let mut attrs = Vec::new();
            if let Some(l) = self.labels[v] {
                attrs.push(format!("label=\"{v}\\n{}\"", l.as_str()));
            }
            if let Some((_, color)) = highlight.iter().find(|(h, _)| *h == v) {
                attrs.push(format!("style=filled, fillcolor=\"{color}\""));
            }
            if attrs.is_empty() {
                let _ = writeln!(out, "  {v};");
            } else {
                let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// On-disk graph schema: `{ "n", "edges", "labels", "family" }`, 0-based ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyMetadata>,
}

pub(crate) fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut queue = VecDeque::with_capacity(adj.len());
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in &adj[u] {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Multi-source BFS: distance from every vertex to the nearest of `sources`.
pub(crate) fn multi_source_bfs(g: &Graph, sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn path_distances() {
        assert_eq!(path(3).all_distances_from(0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn star_distances_from_center() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g.all_distances_from(0).unwrap(), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn invalid_source_is_rejected() {
        assert!(matches!(path(3).all_distances_from(3), Err(Error::InvalidVertex { vertex: 3, n: 3 })));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph)));
        assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::ParallelEdge(0, 1))));
        assert!(matches!(Graph::from_edges(3, &[(0, 1)]), Err(Error::Disconnected { unreachable: 2 })));
        assert!(matches!(Graph::from_edges(2, &[(0, 5)]), Err(Error::InvalidVertex { vertex: 5, .. })));
    }

    #[test]
    fn uncached_distances_match_cached() {
        let g = path(9);
        let uncached = g.clone().with_distance_cap(0);
        for v in 0..9 {
            assert_eq!(g.distances(v), uncached.distances(v));
        }
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let g = path(4).with_labels(vec![Some(Label::Leaf), None, None, Some(Label::Leaf)]).unwrap();
        let back = Graph::from_json_str(&g.to_json_string().unwrap()).unwrap();
        assert_eq!(back.n(), 4);
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(back.label(3), Some(Label::Leaf));
        assert_eq!(back.label(1), None);
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = path(3).to_dot(&[(1, "red")]);
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("fillcolor=\"red\""));
    }
}
