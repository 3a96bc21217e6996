//! Search for a partition of candidate vertices into equal blocks whose
//! members are pairwise non-adjacent and share no neighbour, so that merging
//! each block is a legal simple-graph surgery.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

const NODE_BUDGET: u64 = 500_000;

fn conflicts(g: &Graph, candidates: &[VertexId]) -> Vec<Vec<usize>> {
    let index: BTreeMap<&VertexId, usize> = candidates.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut by_neighbor: BTreeMap<&VertexId, Vec<usize>> = BTreeMap::new();
    let mut out = vec![Vec::new(); candidates.len()];
    for (i, v) in candidates.iter().enumerate() {
        for n in g.neighbors(v).into_iter().flatten() {
            by_neighbor.entry(n).or_default().push(i);
            if let Some(&j) = index.get(n) {
                out[i].push(j);
            }
        }
    }
    for group in by_neighbor.values() {
        for &a in group {
            for &b in group {
                if a != b {
                    out[a].push(b);
                }
            }
        }
    }
    for list in &mut out {
        list.sort_unstable();
        list.dedup();
    }
    out
}

/// Depth-first order of the conflict graph, so that vertices which clash
/// tend to sit next to each other and round-robin placement separates them.
fn walk_order(conf: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![false; conf.len()];
    let mut order = Vec::with_capacity(conf.len());
    for start in 0..conf.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            order.push(v);
            for &n in conf[v].iter().rev() {
                if !seen[n] {
                    stack.push(n);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    conf: &'a [Vec<usize>],
    order: Vec<usize>,
    block_of: Vec<Option<usize>>,
    fill: Vec<usize>,
    size: usize,
    seed: usize,
    budget: u64,
}

impl Search<'_> {
    fn place(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let v = self.order[pos];
        let r = self.fill.len();
        let mut tried_empty = false;
        for t in 0..r {
            let b = (pos + self.seed + t) % r;
            if self.fill[b] == self.size {
                continue;
            }
            if self.fill[b] == 0 {
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            if self.conf[v].iter().any(|&c| self.block_of[c] == Some(b)) {
                continue;
            }
            self.block_of[v] = Some(b);
            self.fill[b] += 1;
            if self.place(pos + 1) {
                return true;
            }
            self.fill[b] -= 1;
            self.block_of[v] = None;
        }
        false
    }
}

/// Partition `candidates` into `blocks` blocks of `size` mutually
/// non-conflicting vertices. `seed` rotates the round-robin start; different
/// seeds may give different valid partitions. Blocks come out in the order of
/// their first member in `candidates`, members in candidate order.
pub(crate) fn find_blocks(
    g: &Graph,
    candidates: &[VertexId],
    blocks: usize,
    size: usize,
    seed: u64,
) -> Option<Vec<Vec<VertexId>>> {
    if blocks == 0 || blocks * size != candidates.len() {
        return None;
    }
    let conf = conflicts(g, candidates);
    let mut search = Search {
        order: walk_order(&conf),
        conf: &conf,
        block_of: vec![None; candidates.len()],
        fill: vec![0; blocks],
        size,
        seed: (seed % blocks as u64) as usize,
        budget: NODE_BUDGET,
    };
    if !search.place(0) {
        return None;
    }
    let mut grouped: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for (v, b) in search.block_of.iter().enumerate() {
        grouped[b.expect("all placed")].push(v);
    }
    grouped.sort_by_key(|b| b[0]);
    Some(
        grouped
            .into_iter()
            .map(|b| b.into_iter().map(|i| candidates[i].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Vertices c_0..c_{n-1} around a cycle, each pair of consecutive ones
    /// sharing a private neighbour.
    fn shared_cycle(n: u32) -> (Graph, Vec<VertexId>) {
        let mut g = Graph::new();
        let cs: Vec<VertexId> = (0..n).map(VertexId::z).collect();
        for i in 0..n {
            let hub = VertexId::u(i);
            g.add_edge(hub.clone(), cs[i as usize].clone()).unwrap();
            g.add_edge(hub, cs[((i + 1) % n) as usize].clone()).unwrap();
        }
        (g, cs)
    }

    #[test]
    fn odd_cycle_into_three_blocks() {
        let (g, cs) = shared_cycle(9);
        let blocks = find_blocks(&g, &cs, 3, 3, 0).unwrap();
        for b in &blocks {
            for a in b {
                for c in b {
                    assert!(a == c || !g.share_neighbor(a, c));
                }
            }
        }
    }

    #[test]
    fn impossible_sizes() {
        let (g, cs) = shared_cycle(5);
        // an independent set of a 5-cycle has at most 2 vertices
        assert!(find_blocks(&g, &cs, 1, 5, 0).is_none());
        assert!(find_blocks(&g, &cs, 2, 2, 0).is_none());
    }

    #[test]
    fn seeds_give_valid_partitions() {
        let (g, cs) = shared_cycle(15);
        for seed in 0..5 {
            let blocks = find_blocks(&g, &cs, 5, 3, seed).unwrap();
            assert_eq!(blocks.len(), 5);
            assert!(blocks.iter().all(|b| b.len() == 3));
        }
    }
}
