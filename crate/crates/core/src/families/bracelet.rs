//! Peanut graphs, triangular bracelets, and what the split/merge surgery makes
//! of them.
//!
//! Pt(2k) has rails `P1 = x u_1 ... u_{4k+1} y` and `P2 = x v_1 ... v_{4k+1} y`
//! and rungs `u_{2j-1} v_{2j-1}`. Rail edges are indexed by the position `a`
//! of their lower end, with `x` at 0 and `y` at `4k+2`.

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::error::FamilyError;
use crate::graph::{degree_census, edge, Graph, Role, VertexId};
use crate::labeling::{EdgeLabeling, LabeledGraph};

use super::{choose_blocks, merge_into_blocks, u, BraceletBase, Built, FamilyInstance, FamilyTag};

fn rail(k: u32, side: Role, a: u32) -> VertexId {
    match a {
        0 => VertexId::bare(Role::X),
        a if a == 4 * k + 2 => VertexId::bare(Role::Y),
        a => VertexId::new(side, &[a]),
    }
}

/// `f1` on the rail edge with lower end at position `a`. The same items
/// serve both parities of `k`: for odd `k` the last segment runs out of rail
/// after its fourth edge, which is exactly the printed exclusion.
fn f1(k: u32, a: u32) -> u32 {
    match a {
        0 => 3 * k + 2,
        1 => 2 * k + 1,
        _ => {
            let (i, off) = ((a - 2) / 8 + 1, (a - 2) % 8);
            match off {
                0 => 8 * k + 3 + 2 * i,
                1 => 8 * k + 5 - i,
                2 => 2 * k + 1 + i,
                3 => 2 * k + 2 - 2 * i,
                4 => 8 * k + 4 + 2 * i,
                5 => 7 * k + 4 - i,
                6 => 3 * k + 2 + i,
                _ => 2 * k + 1 - 2 * i,
            }
        }
    }
}

fn f2(k: u32, a: u32) -> u32 {
    match a {
        0 => 7 * k + 4,
        1 => 10 * k + 5,
        _ => {
            let (i, off) = ((a - 2) / 8 + 1, (a - 2) % 8);
            match off {
                0 => 2 * i - 1,
                1 => 4 * k + 3 - i,
                2 => 6 * k + 3 + i,
                3 => 10 * k + 6 - 2 * i,
                4 => 2 * i,
                5 => 3 * k + 2 - i,
                6 => 7 * k + 4 + i,
                _ => 10 * k + 5 - 2 * i,
            }
        }
    }
}

/// `f3` on the rung at odd position `b`.
fn f3(k: u32, b: u32) -> u32 {
    if b == 1 {
        return 4 * k + 3;
    }
    match b % 8 {
        3 => 5 * k + 4 - (b + 5) / 8,
        5 => 5 * k + 3 + (b + 3) / 8,
        7 => 6 * k + 4 - (b + 1) / 8,
        _ => 4 * k + 3 + (b - 1) / 8,
    }
}

fn even_k(n: u32) -> Result<u32, FamilyError> {
    if n < 2 || n % 2 == 1 {
        return Err(FamilyError::InvalidParity(format!("n = {n} must be even and at least 2")));
    }
    Ok(n / 2)
}

fn pt_graph(k: u32) -> LabeledGraph {
    let mut g = Graph::new();
    let mut f = EdgeLabeling::new();
    let mut add = |a: VertexId, b: VertexId, l: u32| {
        g.add_edge(a.clone(), b.clone()).expect("peanut graph is simple");
        f.insert(edge(a, b), l);
    };
    for a in 0..=4 * k + 1 {
        add(rail(k, Role::U, a), rail(k, Role::U, a + 1), f1(k, a));
        add(rail(k, Role::V, a), rail(k, Role::V, a + 1), f2(k, a));
    }
    for b in (1..=4 * k + 1).step_by(2) {
        add(VertexId::u(b), VertexId::v(b), f3(k, b));
    }
    LabeledGraph::new(g, f)
}

fn pt_instance(n: u32, k: u32) -> Result<FamilyInstance, FamilyError> {
    let k_ = u(k);
    Ok(FamilyInstance::new(FamilyTag::Pt, &[("n", n.into()), ("k", k.into())])
        .with_palette(&[(10 * k_ + 6, "10k+6"), (9 * k_ + 6, "9k+6"), (21 * k_ + 12, "21k+12")])?
        .with_census(&[(2, 2 * u(n) + 2), (3, 2 * u(n) + 2)]))
}

pub fn build_pt(n: u32) -> Result<Built, FamilyError> {
    let k = even_k(n)?;
    Ok(Built::from_labeled(pt_graph(k), pt_instance(n, k)?))
}

type GnKey = (u32, Vec<u32>);

thread_local! {
    // sweeps build many instances over the same base in a row
    static LAST_TB: RefCell<Option<(u32, LabeledGraph)>> = const { RefCell::new(None) };
    static LAST_GN: RefCell<Option<(GnKey, LabeledGraph)>> = const { RefCell::new(None) };
}

fn tb_graph(k: u32) -> Result<LabeledGraph, FamilyError> {
    if let Some(lg) = LAST_TB.with_borrow(|c| c.as_ref().filter(|(key, _)| *key == k).map(|(_, lg)| lg.clone())) {
        return Ok(lg);
    }
    let lg = tb_graph_uncached(k)?;
    LAST_TB.set(Some((k, lg.clone())));
    Ok(lg)
}

fn tb_graph_uncached(k: u32) -> Result<LabeledGraph, FamilyError> {
    let mut blocks = vec![vec![VertexId::bare(Role::X), VertexId::bare(Role::Y)]];
    let mut ids = vec![VertexId::z(0)];
    for i in 1..=2 * k {
        blocks.push(vec![VertexId::u(2 * i), VertexId::v(2 * i)]);
        ids.push(VertexId::z(2 * i));
    }
    Ok(pt_graph(k).merge(&blocks, &ids)?)
}

fn tb_instance(tag: FamilyTag, n: u32, k: u32) -> Result<FamilyInstance, FamilyError> {
    let k_ = u(k);
    Ok(FamilyInstance::new(tag, &[("n", n.into()), ("k", k.into())])
        .with_palette(&[(9 * k_ + 6, "9k+6"), (21 * k_ + 12, "21k+12"), (20 * k_ + 12, "20k+12")])?
        .with_census(&[(3, 2 * u(n) + 2), (4, u(n) + 1)]))
}

pub fn build_tb(n: u32) -> Result<Built, FamilyError> {
    let k = even_k(n)?;
    Ok(Built::from_labeled(tb_graph(k)?, tb_instance(FamilyTag::Tb, n, k)?))
}

fn odd_at_least(x: u32, min: u32) -> bool {
    x % 2 == 1 && x >= min
}

/// Pt¹/Pt²/Pt³ and TB¹/TB²/TB³: merge degree-3 vertices of color `9k+6`
/// (variant 1) or `21k+12` (variant 2), or the degree-2 (Pt) / degree-4 (TB)
/// vertices (variant 3), in `r` blocks.
pub fn build_pt_tb_merged(
    base: BraceletBase,
    variant: u8,
    n: u32,
    r: u32,
    assignment: Option<&[Vec<VertexId>]>,
    seed: u64,
) -> Result<Built, FamilyError> {
    let k = even_k(n)?;
    let (k_, n_) = (u(k), u(n));
    let lg = match base {
        BraceletBase::Pt => pt_graph(k),
        BraceletBase::Tb => tb_graph(k)?,
    };
    let bad = |m: String| Err(FamilyError::InvalidFactorization(m));
    let pool = if (base, variant) == (BraceletBase::Pt, 3) { 2 * n + 2 } else { n + 1 };
    if r == 0 || pool % r != 0 {
        return bad(format!("r = {r} does not divide {pool}"));
    }
    let s = pool / r;
    match (base, variant) {
        (BraceletBase::Pt, 1 | 2) if !(r % 2 == 1 && odd_at_least(s, 3)) => {
            return bad(format!("need r odd and s = {s} odd and at least 3"))
        }
        (BraceletBase::Pt, 3) if !(r >= 2 && (2..=n + 1).contains(&s)) => {
            return bad(format!("need r at least 2 and 2 <= s = {s} <= n+1"))
        }
        (BraceletBase::Tb, 1 | 2) if !(odd_at_least(r, 3) && odd_at_least(s, 3)) => {
            return bad(format!("need r = {r} and s = {s} odd and at least 3"))
        }
        (BraceletBase::Tb, 3) if !(n >= 8 && odd_at_least(r, 3) && odd_at_least(s, 3)) => {
            return bad(format!("need n >= 8 and r = {r}, s = {s} odd and at least 3"))
        }
        (_, 1..=3) => {}
        (_, v) => return Err(FamilyError::InvalidParams(format!("variant {v} (expected 1, 2 or 3)"))),
    }

    let g = &lg.graph;
    let colors = lg.coloring()?;
    let cands: Vec<VertexId> = match variant {
        1 | 2 => {
            let want = if variant == 1 { 9 * k_ + 6 } else { 21 * k_ + 12 };
            g.vertices()
                .filter(|v| g.degree(v) == 3 && colors.color(v) == Some(want))
                .cloned()
                .collect()
        }
        _ => {
            let d = if base == BraceletBase::Pt { 2 } else { 4 };
            g.vertices().filter(|v| g.degree(v) == d).cloned().collect()
        }
    };
    let tag = match (base, variant) {
        (BraceletBase::Pt, 1) => FamilyTag::Pt1,
        (BraceletBase::Pt, 2) => FamilyTag::Pt2,
        (BraceletBase::Pt, _) => FamilyTag::Pt3,
        (BraceletBase::Tb, 1) => FamilyTag::Tb1,
        (BraceletBase::Tb, 2) => FamilyTag::Tb2,
        (BraceletBase::Tb, _) => FamilyTag::Tb3,
    };
    let blocks = choose_blocks(g, &cands, r as usize, s as usize, assignment, seed, tag.as_str())?;
    let merged = merge_into_blocks(&lg, &blocks)?;

    let (r_, s_) = (u(r), u(s));
    let params = [("n", i64::from(n)), ("k", k.into()), ("r", r.into()), ("s", s.into())];
    let inst = FamilyInstance::new(tag, &params);
    let inst = match tag {
        FamilyTag::Pt1 => inst
            .with_palette(&[(10 * k_ + 6, "10k+6"), (s_ * (9 * k_ + 6), "s(9k+6)"), (21 * k_ + 12, "21k+12")])?
            .with_census(&[(2, 2 * n_ + 2), (3, n_ + 1), (3 * s_, r_)]),
        FamilyTag::Pt2 => inst
            .with_palette(&[(10 * k_ + 6, "10k+6"), (9 * k_ + 6, "9k+6"), (s_ * (21 * k_ + 12), "s(21k+12)")])?
            .with_census(&[(2, 2 * n_ + 2), (3, n_ + 1), (3 * s_, r_)]),
        FamilyTag::Pt3 => inst
            .with_palette(&[(s_ * (10 * k_ + 6), "s(10k+6)"), (9 * k_ + 6, "9k+6"), (21 * k_ + 12, "21k+12")])?
            .with_census(&[(2 * s_, r_), (3, 2 * n_ + 2)]),
        FamilyTag::Tb1 => inst
            .with_palette(&[(s_ * (9 * k_ + 6), "s(9k+6)"), (21 * k_ + 12, "21k+12"), (20 * k_ + 12, "20k+12")])?
            .with_census(&[(3, n_ + 1), (4, n_ + 1), (3 * s_, r_)]),
        FamilyTag::Tb2 => inst
            .with_palette(&[(9 * k_ + 6, "9k+6"), (s_ * (21 * k_ + 12), "s(21k+12)"), (20 * k_ + 12, "20k+12")])?
            .with_census(&[(3, n_ + 1), (4, n_ + 1), (3 * s_, r_)]),
        _ => inst
            .with_palette(&[(9 * k_ + 6, "9k+6"), (21 * k_ + 12, "21k+12"), (s_ * (20 * k_ + 12), "s(20k+12)")])?
            .with_census(&[(3, 2 * n_ + 2), (4 * s_, r_)]),
    };
    let mut inst = inst;
    inst.blocks = blocks;
    Ok(Built::from_labeled(merged, inst))
}

fn check_gn(n: u32, indices: &[u32]) -> Result<(), FamilyError> {
    if indices.is_empty() || indices[0] == 0 || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FamilyError::InvalidIndices(format!(
            "{indices:?} must be a nonempty strictly increasing list of positive integers"
        )));
    }
    for w in indices.windows(2) {
        if 8 * w[1] <= 16 * w[0] - 2 {
            return Err(FamilyError::ConditionViolated {
                which: 'a',
                detail: format!("8*{} = {} <= 16*{}-2 = {}", w[1], 8 * w[1], w[0], 16 * w[0] - 2),
            });
        }
    }
    let last = *indices.last().expect("nonempty");
    if n < 8 * last - 2 {
        return Err(FamilyError::ConditionViolated {
            which: 'b',
            detail: format!("n = {n} < 8*{last}-2 = {}", 8 * last - 2),
        });
    }
    Ok(())
}

/// All index lists satisfying (a) and (b) for `n`.
pub fn gn_index_lists(n: u32) -> Vec<Vec<u32>> {
    fn extend(n: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let from = current.last().map_or(1, |&i| (16 * i - 2) / 8 + 1);
        for i in from.. {
            if n < 8 * i - 2 {
                break;
            }
            current.push(i);
            out.push(current.clone());
            extend(n, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) && n >= 2 {
        extend(n, &mut Vec::new(), &mut out);
    }
    out
}

fn zh(h: u32, m: u32) -> VertexId {
    VertexId::new(Role::Zh, &[h, m])
}

fn gn_graph(n: u32, indices: &[u32]) -> Result<LabeledGraph, FamilyError> {
    let hit = LAST_GN.with_borrow(|c| {
        c.as_ref()
            .filter(|((m, i), _)| *m == n && i == indices)
            .map(|(_, lg)| lg.clone())
    });
    if let Some(lg) = hit {
        return Ok(lg);
    }
    let lg = gn_graph_uncached(n, indices)?;
    LAST_GN.set(Some(((n, indices.to_vec()), lg.clone())));
    Ok(lg)
}

fn gn_graph_uncached(n: u32, indices: &[u32]) -> Result<LabeledGraph, FamilyError> {
    check_gn(n, indices)?;
    let k = even_k(n)?;
    // every p = 8i-2 and q = 16i-4 is distinct, so all cuts happen at once
    let mut splits = Vec::new();
    let (mut blocks, mut ids) = (Vec::new(), Vec::new());
    for &i in indices {
        let (p, q) = (8 * i - 2, 16 * i - 4);
        for m in [p, q] {
            splits.push((VertexId::z(m), vec![VertexId::u(m - 1), VertexId::v(m - 1)], zh(1, m), zh(2, m)));
        }
        blocks.extend([vec![zh(1, p), zh(2, q)], vec![zh(2, p), zh(1, q)]]);
        ids.extend([VertexId::z(p), VertexId::z(q)]);
    }
    let lg = tb_graph(k)?.split_many_by_neighbors(&splits)?.merge(&blocks, &ids)?;
    Ok(lg)
}

/// G(n): TB(n) cut into `TB(s) + TB(4i_1-2) + ... + TB(4i_r-2)`.
pub fn build_gn(n: u32, indices: &[u32]) -> Result<Built, FamilyError> {
    let lg = gn_graph(n, indices)?;
    let k = n / 2;
    let mut inst = tb_instance(FamilyTag::Gn, n, k)?;
    inst.indices = indices.to_vec();
    let cut: u32 = indices.iter().map(|i| 4 * i - 1).sum();
    inst.bracelets = std::iter::once(n - cut).chain(indices.iter().map(|i| 4 * i - 2)).collect();
    Ok(Built::from_labeled(lg, inst))
}

/// Bracelet sizes of the components, ascending, if every component has the
/// order, size and degree census of some TB(m).
pub fn bracelet_decomposition(g: &Graph) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&comp.iter().cloned().collect());
        let order = sub.order();
        if order < 9 || !order.is_multiple_of(3) {
            return None;
        }
        let m = order / 3 - 1;
        let want: BTreeMap<usize, usize> = [(3, 2 * m + 2), (4, m + 1)].into_iter().collect();
        if sub.size() != 5 * m + 5 || degree_census(&sub) != want || sub.triangle_count() != 2 * m + 2 {
            return None;
        }
        out.push(m as u32);
    }
    out.sort_unstable();
    Some(out)
}

/// GB(n): merge the degree-4 hubs of TB(n), or of G(n) when `indices` is
/// given, into `r` blocks.
pub fn build_gb(
    n: u32,
    r: u32,
    indices: Option<&[u32]>,
    assignment: Option<&[Vec<VertexId>]>,
    seed: u64,
) -> Result<Built, FamilyError> {
    let k = even_k(n)?;
    if n < 8 || r == 0 || !(n + 1).is_multiple_of(r) || !odd_at_least(r, 3) || !odd_at_least((n + 1) / r, 3) {
        return Err(FamilyError::InvalidFactorization(format!(
            "need n >= 8 and n+1 = {} = r*s with r = {r}, s at least 3",
            n + 1
        )));
    }
    let s = (n + 1) / r;
    let lg = match indices {
        Some(i) => gn_graph(n, i)?,
        None => tb_graph(k)?,
    };
    let g = &lg.graph;
    let cands: Vec<VertexId> = g.vertices().filter(|v| g.degree(v) == 4).cloned().collect();
    let blocks = choose_blocks(g, &cands, r as usize, s as usize, assignment, seed, "GB")?;
    let merged = merge_into_blocks(&lg, &blocks)?;
    let (k_, r_, s_) = (u(k), u(r), u(s));
    let mut inst = FamilyInstance::new(FamilyTag::Gb, &[("n", n.into()), ("k", k.into()), ("r", r.into()), ("s", s.into())])
        .with_palette(&[(9 * k_ + 6, "9k+6"), (21 * k_ + 12, "21k+12"), (s_ * (20 * k_ + 12), "s(20k+12)")])?
        .with_census(&[(3, 2 * u(n) + 2), (4 * s_, r_)]);
    inst.indices = indices.map(<[u32]>::to_vec).unwrap_or_default();
    inst.blocks = blocks;
    Ok(Built::from_labeled(merged, inst))
}
