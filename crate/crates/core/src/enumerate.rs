//! Small-graph corpora: every tree or connected graph up to isomorphism, and
//! seeded random trees and bounded-degree graphs.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const TREE_CAP: usize = 14;
pub const CONNECTED_CAP: usize = 7;

/// All non-isomorphic trees on `n` vertices, ordered by canonical code.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > TREE_CAP {
        return Err(Error::EnumerationCap { n, cap: TREE_CAP });
    }
    let mut level: BTreeMap<String, Vec<Vec<usize>>> = BTreeMap::new();
    level.insert(tree_code(&[vec![]]), vec![vec![]]);
    for size in 1..n {
        let mut next = BTreeMap::new();
        for adj in level.values() {
            for v in 0..size {
                let mut grown = adj.clone();
                grown[v].push(size);
                grown.push(vec![v]);
                next.entry(tree_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    level.values().map(|adj| graph_from_adj(adj)).collect()
}

fn graph_from_adj(adj: &[Vec<usize>]) -> Result<Graph> {
    let edges: Vec<(usize, usize)> =
        adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v))).collect();
    Graph::from_edges(adj.len(), &edges)
}

/// Centre vertices (one or two) found by peeling leaves.
fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut parts: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, w, v)).collect();
    parts.sort_unstable();
    let mut s = String::with_capacity(2 + parts.iter().map(String::len).sum::<usize>());
    s.push('(');
    for p in parts {
        s.push_str(&p);
    }
    s.push(')');
    s
}

/// Isomorphism-invariant code of a tree: the smallest parenthesis encoding
/// over its centres.
fn tree_code(adj: &[Vec<usize>]) -> String {
    tree_centers(adj).into_iter().map(|c| rooted_code(adj, c, usize::MAX)).min().expect("non-empty tree")
}

/// All connected graphs on `n` vertices up to isomorphism, ordered by
/// canonical form.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > CONNECTED_CAP {
        return Err(Error::EnumerationCap { n, cap: CONNECTED_CAP });
    }
    // every connected graph has a vertex whose removal keeps it connected,
    // so all of them arise by adding one vertex to a smaller connected graph
    let mut level: BTreeSet<Vec<u16>> = BTreeSet::from([vec![0u16]]);
    for size in 1..n {
        let mut next = BTreeSet::new();
        for rows in &level {
            for subset in 1u16..(1 << size) {
                let mut grown = rows.clone();
                for (i, row) in grown.iter_mut().enumerate() {
                    if subset >> i & 1 == 1 {
                        *row |= 1 << size;
                    }
                }
                grown.push(subset);
                next.insert(canonical_rows(&grown));
            }
        }
        level = next;
    }
    level
        .iter()
        .map(|rows| {
            let k = rows.len();
            let edges: Vec<(usize, usize)> =
                (0..k).flat_map(|u| (u + 1..k).filter(move |&v| rows[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
            Graph::from_edges(k, &edges)
        })
        .collect()
}

/// Canonical adjacency rows: vertices are grouped by an invariant colour
/// (degree, then neighbour degrees) and the lexicographically smallest
/// relabelling within the colour classes is chosen.
fn canonical_rows(rows: &[u16]) -> Vec<u16> {
    let n = rows.len();
    let degree: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let colour: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(|w| degree[w]).collect();
            nd.sort_unstable();
            (degree[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| colour[a].cmp(&colour[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if colour[cell[0]] == colour[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<Vec<u16>> = None;
    let mut perm = Vec::with_capacity(n);
    search_cells(rows, &mut cells, 0, &mut perm, &mut best);
    best.expect("at least one labelling")
}

fn search_cells(rows: &[u16], cells: &mut [Vec<usize>], ci: usize, perm: &mut Vec<usize>, best: &mut Option<Vec<u16>>) {
    if ci == cells.len() {
        // perm[new] = old
        let n = perm.len();
        let mut pos = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        let relabelled: Vec<u16> = perm
            .iter()
            .map(|&old| (0..n).filter(|&w| rows[old] >> w & 1 == 1).fold(0u16, |acc, w| acc | 1 << pos[w]))
            .collect();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            *best = Some(relabelled);
        }
        return;
    }
    let len = cells[ci].len();
    permute(rows, cells, ci, 0, len, perm, best);
}

fn permute(
    rows: &[u16],
    cells: &mut [Vec<usize>],
    ci: usize,
    k: usize,
    len: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<Vec<u16>>,
) {
    if k == len {
        let added = cells[ci].clone();
        perm.extend(&added);
        search_cells(rows, cells, ci + 1, perm, best);
        perm.truncate(perm.len() - len);
        return;
    }
    for i in k..len {
        cells[ci].swap(k, i);
        permute(rows, cells, ci, k + 1, len, perm, best);
        cells[ci].swap(k, i);
    }
}

/// Uniform random labelled tree on `n` vertices from a random Prüfer code.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n <= 2 {
        let edges: Vec<(usize, usize)> = if n == 2 { vec![(0, 1)] } else { vec![] };
        return Graph::from_edges(n, &edges);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::from_edges(n, &prufer_edges(n, &code))
}

/// Edges of the tree with Prüfer code `code` on `code.len() + 2` vertices.
pub fn prufer_edges(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = leaves.pop_first().expect("a Prüfer code always leaves a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// Random connected graph on `n` vertices with maximum degree exactly
/// `max_degree`: a random tree respecting the bound plus random extra edges.
pub fn random_bounded_degree<R: Rng>(n: usize, max_degree: usize, rng: &mut R) -> Result<Graph> {
    if max_degree < 2 || n <= max_degree {
        return Err(Error::InvalidParameter(format!(
            "need max degree >= 2 and n > max degree (got n={n}, max degree={max_degree})"
        )));
    }
    loop {
        let mut degree = vec![0usize; n];
        let mut edges = BTreeSet::new();
        for v in 1..n {
            let open: Vec<usize> = (0..v).filter(|&u| degree[u] < max_degree).collect();
            let &u = open.choose(rng).expect("a tree with max degree >= 2 always has room");
            edges.insert((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
        let extra = rng.gen_range(0..=n);
        for _ in 0..extra {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (u, v) = (u.min(v), u.max(v));
            if u != v && degree[u] < max_degree && degree[v] < max_degree && edges.insert((u, v)) {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        if degree.contains(&max_degree) {
            let edges: Vec<(usize, usize)> = edges.into_iter().collect();
            return Graph::from_edges(n, &edges);
        }
    }
}
