use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

use super::meta::{DeltaCopiesMeta, FamilyMetadata};
use super::{check_cap, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone)]
pub struct DeltaCopiesParams {
    pub delta: usize,
    /// Vertex of the inner graph joined to the hub; defaults to the lowest
    /// id among the minimum-degree vertices.
    pub attach: Option<usize>,
}

/// `delta` disjoint copies of `inner` plus a hub joined to each copy by a
/// single edge. Copy `i` occupies ids `i * m .. (i + 1) * m`; the hub is the
/// last vertex.
///
/// The attachment may not push any degree above `max(delta, max_degree(inner))`.
pub fn gen_delta_copies(params: &DeltaCopiesParams, inner: &Graph) -> Result<Graph> {
    let delta = params.delta;
    if delta == 0 {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    let m = inner.n();
    let n = delta
        .checked_mul(m)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::SizeCap { requested: usize::MAX, cap: DEFAULT_SIZE_CAP })?;
    check_cap(n, DEFAULT_SIZE_CAP)?;
    let attach = match params.attach {
        Some(a) => {
            inner.check_vertex(a)?;
            a
        }
        None => (0..m).min_by_key(|&v| (inner.degree(v), v)).expect("graphs are non-empty"),
    };
    let bound = delta.max(inner.max_degree());
    if inner.degree(attach) + 1 > bound {
        return Err(Error::DegreeBound { degree: inner.degree(attach), bound });
    }

    let hub = delta * m;
    let mut edges = Vec::with_capacity(delta * (inner.edge_count() + 1));
    let mut labels = Vec::with_capacity(n);
    let mut copies = Vec::with_capacity(delta);
    for i in 0..delta {
        let base = i * m;
        edges.extend(inner.edges().map(|(u, v)| (base + u, base + v)));
        edges.push((hub, base + attach));
        labels.extend((0..m).map(|v| inner.label(v)));
        copies.push((base..base + m).collect());
    }
    labels.push(Some(Label::Hub));

    let meta = DeltaCopiesMeta { delta, hub, attach_local: attach, copies };
    Graph::from_edges(n, &edges)?.with_labels(labels)?.with_family(FamilyMetadata::DeltaCopies(meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_nine_vertex, gen_path};

    #[test]
    fn three_copies_of_p3() {
        let g = gen_delta_copies(&DeltaCopiesParams { delta: 3, attach: None }, &gen_path(3).unwrap()).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.degree(9), 3);
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn removing_hub_leaves_delta_components() {
        let inner = gen_path(4).unwrap();
        let g = gen_delta_copies(&DeltaCopiesParams { delta: 3, attach: None }, &inner).unwrap();
        let Some(FamilyMetadata::DeltaCopies(meta)) = g.family() else { panic!() };
        // every path between copies runs through the hub
        for (i, a) in meta.copies.iter().enumerate() {
            for b in &meta.copies[i + 1..] {
                let (u, v) = (a[0], b[0]);
                assert_eq!(g.distance(u, v), g.distance(u, meta.hub) + g.distance(meta.hub, v));
            }
        }
        let copy_of = meta.copy_of(g.n());
        for (u, v) in g.edges() {
            if u != meta.hub && v != meta.hub {
                assert_eq!(copy_of[u], copy_of[v]);
            }
        }
    }

    #[test]
    fn nine_vertex_copies_attach_at_a_leaf() {
        let g = gen_delta_copies(&DeltaCopiesParams { delta: 2, attach: None }, &gen_nine_vertex().unwrap()).unwrap();
        assert_eq!(g.n(), 19);
        assert_eq!(g.max_degree(), 3);
        let Some(FamilyMetadata::DeltaCopies(meta)) = g.family() else { panic!() };
        assert_eq!(meta.attach_local, 6);
        assert_eq!(g.degree(meta.hub), 2);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let inner = gen_nine_vertex().unwrap();
        let err = gen_delta_copies(&DeltaCopiesParams { delta: 2, attach: Some(0) }, &inner);
        assert!(matches!(err, Err(Error::DegreeBound { degree: 3, bound: 3 })));
    }

    #[test]
    fn single_copy() {
        let g = gen_delta_copies(&DeltaCopiesParams { delta: 1, attach: None }, &gen_path(3).unwrap()).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degree(3), 1);
    }
}
