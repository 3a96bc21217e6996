//! Exact local antimagic chromatic number for desk-scale graphs, by
//! depth-first assignment of labels to edges with pruning.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::graph::{Edge, Graph, VertexId};
use crate::labeling::{sum_colors, EdgeLabeling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_edges: usize,
    /// Stop as soon as a labeling with at most this many colors is found.
    pub target_colors: Option<usize>,
    pub symmetry_pruning: bool,
    pub time_budget: Option<Duration>,
    pub node_budget: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_edges: 10,
            target_colors: None,
            symmetry_pruning: true,
            time_budget: None,
            node_budget: Some(200_000_000),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// The search finished: `chi_la` is the minimum (or no labeling exists).
    Exact,
    /// A target was met before the search finished; `chi_la` is an upper bound.
    TargetReached,
    /// Out of nodes or time; `chi_la` is the best upper bound found.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub chi_la: Option<usize>,
    pub witness: Option<EdgeLabeling>,
    pub status: SolveStatus,
    pub lower_bound: usize,
    pub nodes: u64,
}

/// 3 with a triangle, 2 with any edge, 1 otherwise: the chromatic bound.
pub fn verify_lower_bound(g: &Graph) -> usize {
    if g.has_triangle() {
        3
    } else if g.size() > 0 {
        2
    } else {
        1
    }
}

/// Disjoint-set forest over edge positions.
fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Is there an automorphism extending the partial map `fixed`?
fn extends_to_automorphism(adj: &[Vec<bool>], fixed: &[(usize, usize)]) -> bool {
    let n = adj.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in fixed {
        if map[a] != usize::MAX && map[a] != b || used[b] && map[a] != b {
            return false;
        }
        map[a] = b;
        used[b] = true;
    }
    let degree: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let consistent = |map: &[usize], v: usize, img: usize| {
        degree[v] == degree[img] && (0..n).all(|w| map[w] == usize::MAX || adj[v][w] == adj[img][map[w]])
    };
    if !fixed.iter().all(|&(a, b)| consistent(&map, a, b)) {
        return false;
    }
    fn go(
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
        check: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        let n = map.len();
        if v == n {
            return true;
        }
        if map[v] != usize::MAX {
            return go(v + 1, map, used, check);
        }
        for img in 0..n {
            if used[img] || !check(map, v, img) {
                continue;
            }
            map[v] = img;
            used[img] = true;
            if go(v + 1, map, used, check) {
                return true;
            }
            map[v] = usize::MAX;
            used[img] = false;
        }
        false
    }
    go(0, &mut map, &mut used, &consistent)
}

/// Orbit representative (smallest position) of each edge position under the
/// automorphism group.
fn edge_orbit_reps(adj: &[Vec<bool>], ends: &[(usize, usize)]) -> Vec<usize> {
    let m = ends.len();
    let mut parent: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let (a, b) = ends[i];
            let (c, d) = ends[j];
            if extends_to_automorphism(adj, &[(a, c), (b, d)]) || extends_to_automorphism(adj, &[(a, d), (b, c)]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    (0..m).map(|i| find(&mut parent, i)).collect()
}

struct Search<'a> {
    ends: &'a [(usize, usize)],
    neighbors: &'a [Vec<usize>],
    reps: Option<Vec<usize>>,
    q: u32,
    label_of: Vec<u32>,
    used: Vec<bool>,
    sum: Vec<u64>,
    remaining: Vec<usize>,
    /// Completed-vertex color -> how many completed vertices carry it.
    completed: BTreeMap<u64, usize>,
    best: usize,
    best_labels: Option<Vec<u32>>,
    stop_at: usize,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    out_of_budget: bool,
}

impl Search<'_> {
    fn clashes(&self, v: usize) -> bool {
        self.neighbors[v]
            .iter()
            .any(|&w| self.remaining[w] == 0 && self.sum[w] == self.sum[v])
    }

    fn complete(&mut self, v: usize) {
        *self.completed.entry(self.sum[v]).or_default() += 1;
    }

    fn uncomplete(&mut self, v: usize) {
        let c = self.completed.get_mut(&self.sum[v]).expect("was completed");
        *c -= 1;
        if *c == 0 {
            self.completed.remove(&self.sum[v]);
        }
    }

    fn done(&self) -> bool {
        self.out_of_budget || self.best <= self.stop_at
    }

    fn dfs(&mut self, pos: usize) {
        if pos == self.ends.len() {
            // every vertex is complete, so the color count is exact
            self.best = self.completed.len();
            self.best_labels = Some(self.label_of.clone());
            return;
        }
        for l in 1..=self.q {
            if self.done() {
                return;
            }
            if self.used[l as usize] {
                continue;
            }
            if l == self.q {
                if let Some(reps) = &self.reps {
                    if reps[pos] != pos {
                        continue;
                    }
                }
            }
            self.nodes += 1;
            if self.nodes >= self.node_budget
                || (self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d))
            {
                self.out_of_budget = true;
                return;
            }
            let (a, b) = self.ends[pos];
            self.used[l as usize] = true;
            self.label_of[pos] = l;
            let mut finished = Vec::with_capacity(2);
            for v in [a, b] {
                self.sum[v] += u64::from(l);
                self.remaining[v] -= 1;
                if self.remaining[v] == 0 {
                    finished.push(v);
                }
            }
            let ok = finished.iter().all(|&v| !self.clashes(v));
            if ok {
                for &v in &finished {
                    self.complete(v);
                }
                if self.completed.len() < self.best {
                    self.dfs(pos + 1);
                }
                for &v in finished.iter().rev() {
                    self.uncomplete(v);
                }
            }
            for v in [a, b] {
                self.sum[v] -= u64::from(l);
                self.remaining[v] += 1;
            }
            self.used[l as usize] = false;
            self.label_of[pos] = 0;
        }
    }
}

fn reject_k2(g: &Graph) -> Result<(), SolveError> {
    for comp in g.components() {
        if comp.len() == 2 {
            let e = Edge::new(comp[0].clone(), comp[1].clone());
            if g.contains_edge(&e) {
                return Err(SolveError::K2Component(e));
            }
        }
    }
    Ok(())
}

pub fn solve_chi_la(g: &Graph, cfg: &SearchConfig) -> Result<SolveResult, SolveError> {
    solve_with_incumbent(g, cfg, None)
}

/// As [`solve_chi_la`], starting from a known local antimagic labeling. An
/// incumbent that is not a valid labeling of `g` is ignored.
pub fn solve_with_incumbent(
    g: &Graph,
    cfg: &SearchConfig,
    incumbent: Option<&EdgeLabeling>,
) -> Result<SolveResult, SolveError> {
    reject_k2(g)?;
    let lower_bound = verify_lower_bound(g);
    let q = g.size();
    if q > cfg.max_edges {
        return Err(SolveError::InfeasibleSize {
            edges: q,
            cap: cfg.max_edges,
        });
    }

    let vertices: Vec<&VertexId> = g.vertices().collect();
    let index: BTreeMap<&VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges: Vec<Edge> = g.edges().collect();
    // constrain hubs first
    edges.sort_by_key(|e| std::cmp::Reverse(g.degree(e.a()) + g.degree(e.b())));
    let ends: Vec<(usize, usize)> = edges.iter().map(|e| (index[e.a()], index[e.b()])).collect();
    let n = vertices.len();
    let mut incident = vec![Vec::new(); n];
    for (p, &(a, b)) in ends.iter().enumerate() {
        incident[a].push(p);
        incident[b].push(p);
    }
    let neighbors: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| g.neighbors(v).into_iter().flatten().map(|w| index[w]).collect())
        .collect();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in &ends {
        adj[a][b] = true;
        adj[b][a] = true;
    }

    let mut best = usize::MAX;
    let mut best_labels = None;
    if let Some(f) = incumbent {
        let cert = crate::certify::certify(g, f, None);
        if cert.is_bijective && cert.is_local_antimagic {
            best = cert.color_count;
            best_labels = Some(edges.iter().map(|e| f.get(e).expect("bijective")).collect::<Vec<u32>>());
        }
    }

    let mut search = Search {
        ends: &ends,
        neighbors: &neighbors,
        reps: cfg.symmetry_pruning.then(|| edge_orbit_reps(&adj, &ends)),
        q: q as u32,
        label_of: vec![0; q],
        used: vec![false; q + 1],
        sum: vec![0; n],
        remaining: incident.iter().map(Vec::len).collect(),
        completed: BTreeMap::new(),
        best,
        best_labels,
        stop_at: cfg.target_colors.unwrap_or(0).max(lower_bound),
        nodes: 0,
        node_budget: cfg.node_budget.unwrap_or(u64::MAX),
        deadline: cfg.time_budget.map(|d| Instant::now() + d),
        out_of_budget: false,
    };
    // isolated vertices are complete from the start
    for v in 0..n {
        if search.remaining[v] == 0 {
            search.complete(v);
        }
    }
    if q == 0 {
        search.best = search.completed.len();
        search.best_labels = Some(Vec::new());
    } else if !search.done() {
        search.dfs(0);
    }

    let status = if search.out_of_budget {
        SolveStatus::BudgetExhausted
    } else if search.best > lower_bound && search.best <= search.stop_at {
        SolveStatus::TargetReached
    } else {
        SolveStatus::Exact
    };
    let witness: Option<EdgeLabeling> = search
        .best_labels
        .map(|ls| edges.iter().cloned().zip(ls).collect());
    if let Some(w) = &witness {
        debug_assert_eq!(sum_colors(g, w).count(), search.best);
    }
    Ok(SolveResult {
        chi_la: witness.as_ref().map(|_| search.best),
        witness,
        status,
        lower_bound,
        nodes: search.nodes,
    })
}

/// Small named graphs for the solver.
pub mod small {
    use crate::graph::{Graph, Role, VertexId};

    fn from_pairs(pairs: &[(VertexId, VertexId)]) -> Graph {
        Graph::from_edges(pairs.iter().cloned()).expect("simple")
    }

    /// FB(1): the path `u w v` joined to `x`.
    pub fn fb1() -> Graph {
        let (u, v, w, x) = (VertexId::u(1), VertexId::v(1), VertexId::w(1), VertexId::bare(Role::X));
        from_pairs(&[
            (u.clone(), w.clone()),
            (v.clone(), w.clone()),
            (x.clone(), w),
            (x.clone(), u),
            (x, v),
        ])
    }

    pub fn path(n: u32) -> Graph {
        let mut g = Graph::new();
        g.add_vertex(VertexId::u(1));
        for i in 1..n {
            g.add_edge(VertexId::u(i), VertexId::u(i + 1)).expect("simple");
        }
        g
    }

    pub fn cycle(n: u32) -> Graph {
        let mut g = path(n);
        g.add_edge(VertexId::u(n), VertexId::u(1)).expect("n at least 3");
        g
    }

    /// Look a graph up by name: `fb1`, `k2`, `k3`, `p<n>` (n vertices), `c<n>`.
    pub fn named(name: &str) -> Option<Graph> {
        let num = |s: &str| s.parse::<u32>().ok();
        match name.to_ascii_lowercase().as_str() {
            "fb1" => Some(fb1()),
            "k2" => Some(path(2)),
            "k3" => Some(cycle(3)),
            s if s.starts_with('p') => num(&s[1..]).filter(|&n| n >= 1).map(path),
            s if s.starts_with('c') => num(&s[1..]).filter(|&n| n >= 3).map(cycle),
            _ => None,
        }
    }
}
