//! Simple undirected graphs with role-annotated vertices, plus the two
//! surgeries the constructions are built from: merging blocks of vertices
//! and splitting a vertex into two halves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::GraphError;

/// Vertex family. Split halves carry the half number (1 or 2) as their first
/// index; `B` names block vertices produced by merges the constructions leave
/// unnamed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    U,
    V,
    W,
    X,
    Y,
    Z,
    Xh,
    Zh,
    B,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::U => "u",
            Role::V => "v",
            Role::W => "w",
            Role::X => "x",
            Role::Y => "y",
            Role::Z => "z",
            Role::Xh => "xh",
            Role::Zh => "zh",
            Role::B => "b",
        }
    }
}

impl FromStr for Role {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "u" => Role::U,
            "v" => Role::V,
            "w" => Role::W,
            "x" => Role::X,
            "y" => Role::Y,
            "z" => Role::Z,
            "xh" => Role::Xh,
            "zh" => Role::Zh,
            "b" => Role::B,
            other => return Err(GraphError::BadVertexId(other.to_string())),
        })
    }
}

/// A vertex name: family plus up to three 1-based subscripts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub role: Role,
    pub indices: SmallVec<[u32; 3]>,
}

impl VertexId {
    pub fn new(role: Role, indices: &[u32]) -> Self {
        debug_assert!(indices.len() <= 3);
        VertexId {
            role,
            indices: SmallVec::from_slice(indices),
        }
    }

    pub fn u(i: u32) -> Self {
        Self::new(Role::U, &[i])
    }
    pub fn v(i: u32) -> Self {
        Self::new(Role::V, &[i])
    }
    pub fn w(i: u32) -> Self {
        Self::new(Role::W, &[i])
    }
    pub fn x(i: u32) -> Self {
        Self::new(Role::X, &[i])
    }
    pub fn y(i: u32) -> Self {
        Self::new(Role::Y, &[i])
    }
    pub fn z(i: u32) -> Self {
        Self::new(Role::Z, &[i])
    }
    pub fn block(b: u32) -> Self {
        Self::new(Role::B, &[b])
    }
    /// Unsubscripted vertex of the given role (the fan hub `x`, for instance).
    pub fn bare(role: Role) -> Self {
        Self::new(role, &[])
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.role.as_str())?;
        if !self.indices.is_empty() {
            f.write_str("/")?;
            for (n, i) in self.indices.iter().enumerate() {
                if n > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for VertexId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadVertexId(s.to_string());
        let (role, rest) = match s.split_once('/') {
            Some((r, rest)) => (r, Some(rest)),
            None => (s, None),
        };
        let role: Role = role.parse().map_err(|_| bad())?;
        let indices = match rest {
            None => SmallVec::new(),
            Some(rest) => rest
                .split(',')
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<SmallVec<_>, _>>()?,
        };
        if indices.len() > 3 {
            return Err(bad());
        }
        Ok(VertexId { role, indices })
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn a(&self) -> &VertexId {
        &self.0
    }

    pub fn b(&self) -> &VertexId {
        &self.1
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        &self.0 == v || &self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.0 == v {
            Some(&self.1)
        } else if &self.1 == v {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}", self.0, self.1)
    }
}

/// Shorthand for `Edge::new`.
pub fn edge(a: VertexId, b: VertexId) -> Edge {
    Edge::new(a, b)
}

/// Simple undirected graph. Adjacency is kept symmetric; loops and parallel
/// edges are rejected at insertion, so the edge set is always a set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::Loop(a));
        }
        if self.adj.get(&a).is_some_and(|n| n.contains(&b)) {
            return Err(GraphError::ParallelEdge(Edge::new(a, b)));
        }
        self.adj.entry(a.clone()).or_default().insert(b.clone());
        self.adj.entry(b.clone()).or_default().insert(a.clone());
        self.edge_count += 1;
        Ok(Edge::new(a, b))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.adj.contains_key(v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.adj.get(e.a()).is_some_and(|n| n.contains(e.b()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.adj.keys()
    }

    pub fn neighbors(&self, v: &VertexId) -> Option<&BTreeSet<VertexId>> {
        self.adj.get(v)
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.adj.get(v).map_or(0, BTreeSet::len)
    }

    pub fn is_adjacent(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adj.get(a).is_some_and(|n| n.contains(b))
    }

    /// Edges in canonical (sorted) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(a, ns)| {
            ns.range(a..)
                .filter(move |b| *b != a)
                .map(move |b| Edge(a.clone(), b.clone()))
        })
    }

    pub fn incident_edges(&self, v: &VertexId) -> Vec<Edge> {
        self.adj
            .get(v)
            .map(|ns| ns.iter().map(|n| Edge::new(v.clone(), n.clone())).collect())
            .unwrap_or_default()
    }

    pub fn share_neighbor(&self, a: &VertexId, b: &VertexId) -> bool {
        match (self.adj.get(a), self.adj.get(b)) {
            (Some(na), Some(nb)) => !na.is_disjoint(nb),
            _ => false,
        }
    }

    /// Connected components, each as a sorted vertex list; components are
    /// ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.adj.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.push(v.clone());
                for n in &self.adj[v] {
                    if seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for v in keep {
            if self.contains_vertex(v) {
                g.add_vertex(v.clone());
            }
        }
        for e in self.edges() {
            if keep.contains(e.a()) && keep.contains(e.b()) {
                g.add_edge(e.0, e.1).expect("subgraph of a simple graph");
            }
        }
        g
    }

    pub fn has_triangle(&self) -> bool {
        self.find_triangle().is_some()
    }

    pub fn find_triangle(&self) -> Option<[VertexId; 3]> {
        for (a, na) in &self.adj {
            for b in na.range(a..).filter(|b| *b != a) {
                let nb = &self.adj[b];
                if let Some(c) = na.intersection(nb).find(|c| *c > b) {
                    return Some([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        None
    }

    /// Number of triangles (each counted once).
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (a, na) in &self.adj {
            for b in na.range(a..).filter(|b| *b != a) {
                count += na.intersection(&self.adj[b]).filter(|c| *c > b).count();
            }
        }
        count
    }
}

/// Exact degree census: degree -> number of vertices of that degree.
pub fn degree_census(g: &Graph) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for ns in g.adj.values() {
        *census.entry(ns.len()).or_insert(0) += 1;
    }
    census
}

/// Result of a vertex surgery: the new graph and where every old edge went.
#[derive(Clone, Debug)]
pub struct Surgery {
    pub graph: Graph,
    pub edge_map: BTreeMap<Edge, Edge>,
}

/// Replace each block by a single new vertex that inherits all incident edges.
///
/// Rejects blocks containing adjacent members (the merge would create a loop)
/// and any merge under which two edges collapse onto one pair, which covers
/// block members with a common neighbour as well as two blocks joined twice.
pub fn merge_vertices(
    g: &Graph,
    blocks: &[Vec<VertexId>],
    new_ids: &[VertexId],
) -> Result<Surgery, GraphError> {
    if blocks.len() != new_ids.len() {
        return Err(GraphError::BlockCountMismatch {
            blocks: blocks.len(),
            ids: new_ids.len(),
        });
    }
    let mut image: BTreeMap<&VertexId, &VertexId> = BTreeMap::new();
    for (block, id) in blocks.iter().zip(new_ids) {
        for v in block {
            if !g.contains_vertex(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
            if image.insert(v, id).is_some() {
                return Err(GraphError::OverlappingBlocks(v.clone()));
            }
        }
    }
    let mut fresh = BTreeSet::new();
    for id in new_ids {
        if !fresh.insert(id) {
            return Err(GraphError::DuplicateVertex(id.clone()));
        }
        if g.contains_vertex(id) && !image.contains_key(id) {
            return Err(GraphError::DuplicateVertex(id.clone()));
        }
    }

    let map = |v: &VertexId| -> VertexId { image.get(v).map_or_else(|| v.clone(), |&n| n.clone()) };
    let mut graph = Graph::new();
    for v in g.vertices() {
        graph.add_vertex(map(v));
    }
    let mut edge_map: BTreeMap<Edge, Edge> = BTreeMap::new();
    for e in g.edges() {
        let (a, b) = (map(e.a()), map(e.b()));
        if a == b {
            return Err(GraphError::MergeWouldCreateLoop(e));
        }
        match graph.add_edge(a, b) {
            Ok(ne) => {
                edge_map.insert(e, ne);
            }
            Err(_) => {
                let ne = Edge::new(map(e.a()), map(e.b()));
                let prev = edge_map.iter().find(|(_, m)| **m == ne).map(|(o, _)| o.clone());
                return Err(GraphError::MergeWouldCreateParallelEdge(prev.expect("an earlier edge took the pair"), e));
            }
        }
    }
    Ok(Surgery { graph, edge_map })
}

/// One vertex split: `vertex` becomes `id1` (keeping `part1`) and `id2`
/// (keeping `part2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub vertex: VertexId,
    pub part1: Vec<Edge>,
    pub part2: Vec<Edge>,
    pub id1: VertexId,
    pub id2: VertexId,
}

/// Split `v` into `id1` (keeping `part1`) and `id2` (keeping `part2`).
pub fn split_vertex(
    g: &Graph,
    v: &VertexId,
    part1: &[Edge],
    part2: &[Edge],
    id1: VertexId,
    id2: VertexId,
) -> Result<Surgery, GraphError> {
    split_vertices(
        g,
        &[Split {
            vertex: v.clone(),
            part1: part1.to_vec(),
            part2: part2.to_vec(),
            id1,
            id2,
        }],
    )
}

/// Several splits of distinct vertices in one pass.
pub fn split_vertices(g: &Graph, splits: &[Split]) -> Result<Surgery, GraphError> {
    // vertex -> (edge -> new id)
    let mut side: BTreeMap<&VertexId, BTreeMap<Edge, &VertexId>> = BTreeMap::new();
    let mut fresh: BTreeSet<&VertexId> = BTreeSet::new();
    for sp in splits {
        let v = &sp.vertex;
        let incident: BTreeSet<Edge> = match g.neighbors(v) {
            Some(_) => g.incident_edges(v).into_iter().collect(),
            None => return Err(GraphError::UnknownVertex(v.clone())),
        };
        if sp.part1.is_empty() || sp.part2.is_empty() {
            return Err(GraphError::EmptyPart(v.clone()));
        }
        let mut map: BTreeMap<Edge, &VertexId> = BTreeMap::new();
        for (part, id) in [(&sp.part1, &sp.id1), (&sp.part2, &sp.id2)] {
            for e in part {
                if !incident.contains(e) {
                    return Err(GraphError::NotIncident(e.clone(), v.clone()));
                }
                if map.insert(e.clone(), id).is_some() {
                    return Err(GraphError::PartsOverlap(e.clone()));
                }
            }
        }
        if map.len() != incident.len() {
            let missing = incident.iter().find(|e| !map.contains_key(*e)).cloned();
            return Err(GraphError::PartsIncomplete(missing.expect("some edge uncovered")));
        }
        if side.insert(v, map).is_some() {
            return Err(GraphError::DuplicateVertex(v.clone()));
        }
        for id in [&sp.id1, &sp.id2] {
            if !fresh.insert(id) {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
    }
    for id in &fresh {
        if g.contains_vertex(id) && !side.contains_key(id) {
            return Err(GraphError::DuplicateVertex((*id).clone()));
        }
    }

    let mut graph = Graph::new();
    for u in g.vertices().filter(|u| !side.contains_key(u)) {
        graph.add_vertex(u.clone());
    }
    for id in &fresh {
        graph.add_vertex((*id).clone());
    }
    let end = |v: &VertexId, e: &Edge| -> VertexId {
        side.get(v).map_or_else(|| v.clone(), |m| m[e].clone())
    };
    let mut edge_map = BTreeMap::new();
    for e in g.edges() {
        let ne = Edge::new(end(e.a(), &e), end(e.b(), &e));
        graph
            .add_edge(ne.0.clone(), ne.1.clone())
            .expect("splitting never creates parallel edges");
        edge_map.insert(e, ne);
    }
    Ok(Surgery { graph, edge_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges([(VertexId::u(1), VertexId::w(1)), (VertexId::w(1), VertexId::v(1))]).unwrap()
    }

    #[test]
    fn vertex_id_text_round_trip() {
        for s in ["x", "u/3", "x/2,3", "zh/1,14", "b/7"] {
            let v: VertexId = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("q/1".parse::<VertexId>().is_err());
        assert!("u/a".parse::<VertexId>().is_err());
        assert!("u/1,2,3,4".parse::<VertexId>().is_err());
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = path3();
        assert!(matches!(g.add_edge(VertexId::u(1), VertexId::u(1)), Err(GraphError::Loop(_))));
        assert!(matches!(
            g.add_edge(VertexId::w(1), VertexId::u(1)),
            Err(GraphError::ParallelEdge(_))
        ));
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = path3();
        for v in g.vertices() {
            for n in g.neighbors(v).unwrap() {
                assert!(g.neighbors(n).unwrap().contains(v));
            }
        }
        assert_eq!(g.edges().count(), g.size());
    }

    #[test]
    fn empty_merge_is_identity() {
        let g = path3();
        let s = merge_vertices(&g, &[], &[]).unwrap();
        assert_eq!(s.graph, g);
        assert!(s.edge_map.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn merge_rejects_loop_parallel_and_overlap() {
        let g = path3();
        let err = merge_vertices(&g, &[vec![VertexId::u(1), VertexId::w(1)]], &[VertexId::x(1)]);
        assert!(matches!(err, Err(GraphError::MergeWouldCreateLoop(_))));
        let err = merge_vertices(&g, &[vec![VertexId::u(1), VertexId::v(1)]], &[VertexId::x(1)]);
        assert!(matches!(err, Err(GraphError::MergeWouldCreateParallelEdge(..))));
        let err = merge_vertices(
            &g,
            &[vec![VertexId::u(1)], vec![VertexId::u(1)]],
            &[VertexId::x(1), VertexId::x(2)],
        );
        assert!(matches!(err, Err(GraphError::OverlappingBlocks(_))));
    }

    #[test]
    fn split_degree_two_vertex() {
        let g = path3();
        let w = VertexId::w(1);
        let e1 = edge(w.clone(), VertexId::u(1));
        let e2 = edge(w.clone(), VertexId::v(1));
        let s = split_vertex(&g, &w, std::slice::from_ref(&e1), std::slice::from_ref(&e2), VertexId::x(1), VertexId::x(2)).unwrap();
        assert_eq!(s.graph.size(), 2);
        assert_eq!(s.graph.order(), 4);
        assert_eq!(s.graph.degree(&VertexId::x(1)), 1);
        assert_eq!(s.graph.components().len(), 2);
        assert!(matches!(
            split_vertex(&g, &w, std::slice::from_ref(&e1), &[], VertexId::x(1), VertexId::x(2)),
            Err(GraphError::EmptyPart(_))
        ));
        let stray = edge(VertexId::u(1), VertexId::v(1));
        assert!(matches!(
            split_vertex(&g, &w, &[e1], &[stray], VertexId::x(1), VertexId::x(2)),
            Err(GraphError::NotIncident(..))
        ));
    }

    #[test]
    fn triangles() {
        let k3 = Graph::from_edges([
            (VertexId::u(1), VertexId::u(2)),
            (VertexId::u(2), VertexId::u(3)),
            (VertexId::u(1), VertexId::u(3)),
        ])
        .unwrap();
        assert!(k3.has_triangle());
        assert_eq!(k3.triangle_count(), 1);
        assert!(!path3().has_triangle());
    }
}
