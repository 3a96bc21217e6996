//! Edge labelings, the vertex coloring they induce, and labeled surgery.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{merge_vertices, split_vertex, split_vertices, Edge, Graph, Split, Surgery, VertexId};

/// Edge -> positive integer label. Whether the labels form a bijection onto
/// `[1, q]` is checked by [`crate::certify`], not enforced here, so broken
/// labelings can still be inspected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<LabeledEdge>", into = "Vec<LabeledEdge>")]
pub struct EdgeLabeling {
    labels: BTreeMap<Edge, u32>,
}

/// Serialized form: edge maps cannot key a JSON object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub a: VertexId,
    pub b: VertexId,
    pub label: u32,
}

impl From<Vec<LabeledEdge>> for EdgeLabeling {
    fn from(v: Vec<LabeledEdge>) -> Self {
        v.into_iter().map(|e| (Edge::new(e.a, e.b), e.label)).collect()
    }
}

impl From<EdgeLabeling> for Vec<LabeledEdge> {
    fn from(f: EdgeLabeling) -> Self {
        f.labels
            .into_iter()
            .map(|(e, label)| LabeledEdge {
                a: e.a().clone(),
                b: e.b().clone(),
                label,
            })
            .collect()
    }
}

impl EdgeLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge, label: u32) -> Option<u32> {
        self.labels.insert(e, label)
    }

    pub fn get(&self, e: &Edge) -> Option<u32> {
        self.labels.get(e).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, u32)> + '_ {
        self.labels.iter().map(|(e, &l)| (e, l))
    }

    /// Carry labels across a surgery, edge by edge.
    pub fn transfer(&self, edge_map: &BTreeMap<Edge, Edge>) -> EdgeLabeling {
        let labels = self
            .labels
            .iter()
            .map(|(e, &l)| (edge_map.get(e).cloned().unwrap_or_else(|| e.clone()), l))
            .collect();
        EdgeLabeling { labels }
    }
}

impl FromIterator<(Edge, u32)> for EdgeLabeling {
    fn from_iter<I: IntoIterator<Item = (Edge, u32)>>(iter: I) -> Self {
        EdgeLabeling {
            labels: iter.into_iter().collect(),
        }
    }
}

/// Vertex -> sum of incident edge labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedColoring {
    pub colors: BTreeMap<VertexId, u64>,
    pub palette: Vec<u64>,
}

impl InducedColoring {
    pub fn count(&self) -> usize {
        self.palette.len()
    }

    pub fn color(&self, v: &VertexId) -> Option<u64> {
        self.colors.get(v).copied()
    }
}

/// Sum labels around every vertex. The labeling must cover exactly the
/// graph's edges.
pub fn induce_coloring(g: &Graph, f: &EdgeLabeling) -> Result<InducedColoring, GraphError> {
    if let Some((e, _)) = f.iter().find(|(e, _)| !g.contains_edge(e)) {
        return Err(GraphError::LabelDomainMismatch(format!("{e} is not an edge")));
    }
    if f.len() != g.size() {
        let missing = g.edges().find(|e| f.get(e).is_none());
        return Err(GraphError::LabelDomainMismatch(match missing {
            Some(e) => format!("{e} is unlabeled"),
            None => "label count differs from size".into(),
        }));
    }
    Ok(sum_colors(g, f))
}

/// Colors without the domain check; unlabeled edges count as zero.
pub(crate) fn sum_colors(g: &Graph, f: &EdgeLabeling) -> InducedColoring {
    let mut colors: BTreeMap<VertexId, u64> = g.vertices().map(|v| (v.clone(), 0)).collect();
    for (e, l) in f.iter() {
        if let Some(c) = colors.get_mut(e.a()) {
            *c += u64::from(l);
        }
        if let Some(c) = colors.get_mut(e.b()) {
            *c += u64::from(l);
        }
    }
    let palette: BTreeSet<u64> = colors.values().copied().collect();
    InducedColoring {
        colors,
        palette: palette.into_iter().collect(),
    }
}

/// A graph together with its edge labeling, kept in step through surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labeling: EdgeLabeling,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labeling: EdgeLabeling) -> Self {
        LabeledGraph { graph, labeling }
    }

    fn apply(&self, s: Surgery) -> LabeledGraph {
        LabeledGraph {
            labeling: self.labeling.transfer(&s.edge_map),
            graph: s.graph,
        }
    }

    pub fn merge(&self, blocks: &[Vec<VertexId>], new_ids: &[VertexId]) -> Result<LabeledGraph, GraphError> {
        Ok(self.apply(merge_vertices(&self.graph, blocks, new_ids)?))
    }

    pub fn split(
        &self,
        v: &VertexId,
        part1: &[Edge],
        part2: &[Edge],
        id1: VertexId,
        id2: VertexId,
    ) -> Result<LabeledGraph, GraphError> {
        Ok(self.apply(split_vertex(&self.graph, v, part1, part2, id1, id2)?))
    }

    /// Split `v` by neighbours: edges to `first` go to `id1`, the rest to `id2`.
    pub fn split_by_neighbors(
        &self,
        v: &VertexId,
        first: &[VertexId],
        id1: VertexId,
        id2: VertexId,
    ) -> Result<LabeledGraph, GraphError> {
        self.split_many_by_neighbors(&[(v.clone(), first.to_vec(), id1, id2)])
    }

    /// Several neighbour splits of distinct vertices, in one surgery.
    pub fn split_many_by_neighbors(
        &self,
        splits: &[(VertexId, Vec<VertexId>, VertexId, VertexId)],
    ) -> Result<LabeledGraph, GraphError> {
        let mut plan = Vec::with_capacity(splits.len());
        for (v, first, id1, id2) in splits {
            let (p1, p2): (Vec<Edge>, Vec<Edge>) = self
                .graph
                .incident_edges(v)
                .into_iter()
                .partition(|e| e.other(v).is_some_and(|n| first.contains(n)));
            if p1.len() != first.len() {
                let stray = first
                    .iter()
                    .find(|n| !self.graph.is_adjacent(v, n))
                    .expect("some requested neighbour is missing");
                return Err(GraphError::NotIncident(Edge::new(v.clone(), stray.clone()), v.clone()));
            }
            plan.push(Split {
                vertex: v.clone(),
                part1: p1,
                part2: p2,
                id1: id1.clone(),
                id2: id2.clone(),
            });
        }
        Ok(self.apply(split_vertices(&self.graph, &plan)?))
    }

    pub fn coloring(&self) -> Result<InducedColoring, GraphError> {
        induce_coloring(&self.graph, &self.labeling)
    }
}
