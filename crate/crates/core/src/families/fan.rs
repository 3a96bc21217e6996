//! Fans and diamond fans over copies of FB(1), labeled by the five-row table.

use std::collections::BTreeMap;

use crate::error::FamilyError;
use crate::graph::{edge, Graph, Role, VertexId};
use crate::labeling::{EdgeLabeling, LabeledGraph};
use crate::partition::{partition_ap, ApSpec};
use crate::tables::table_m1;

use super::{choose_blocks, merge_into_blocks, u, Built, FamilyInstance, FamilyTag};

fn hub() -> VertexId {
    VertexId::bare(Role::X)
}

fn half(h: u32, i: u32) -> VertexId {
    VertexId::new(Role::Xh, &[h, i])
}

/// `(2k+1)FB(1)`: copy `i` is the path `u_i w_i v_i` joined to `x_i`.
fn copies(k: u32) -> Result<LabeledGraph, FamilyError> {
    let t = table_m1(k)?;
    let mut g = Graph::new();
    let mut f = EdgeLabeling::new();
    for i in 1..=t.columns() {
        let (ui, vi, wi, xi) = (VertexId::u(i), VertexId::v(i), VertexId::w(i), VertexId::x(i));
        let rows = [
            (ui.clone(), wi.clone()),
            (vi.clone(), wi.clone()),
            (xi.clone(), wi),
            (xi.clone(), ui),
            (xi, vi),
        ];
        for (row, (a, b)) in rows.into_iter().enumerate() {
            g.add_edge(a.clone(), b.clone())?;
            f.insert(edge(a, b), t.at(row, i));
        }
    }
    Ok(LabeledGraph::new(g, f))
}

fn odd_k(m: u32, what: &str) -> Result<u32, FamilyError> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(FamilyError::InvalidParity(format!("{what} = {m} must be odd and at least 3")));
    }
    Ok((m - 1) / 2)
}

/// Color of `x_i` before any merge.
fn x_color(k: u32, i: u32) -> u64 {
    23 * u(k) + 14 - 2 * u(i)
}

pub fn build_fb(n: u32) -> Result<Built, FamilyError> {
    let k = odd_k(n, "n")?;
    let lg = copies(k)?;
    let all: Vec<VertexId> = (1..=n).map(VertexId::x).collect();
    let lg = lg.merge(&[all], &[hub()])?;
    let k_ = u(k);
    let inst = FamilyInstance::new(FamilyTag::Fb, &[("n", n.into()), ("k", k.into())])
        .with_palette(&[
            (9 * k_ + 6, "9k+6"),
            (10 * k_ + 6, "10k+6"),
            ((7 * k_ + 4) * (6 * k_ + 3), "(7k+4)(6k+3)"),
        ])?
        .with_census(&[(2, 2 * u(n)), (3, u(n)), (3 * u(n), 1)]);
    Ok(Built::from_labeled(lg, inst))
}

fn check_blocks(k: u32, t: u32, s: u32, blocks: &[Vec<u32>]) -> Result<(), FamilyError> {
    let bad = |m: String| Err(FamilyError::InvalidParams(m));
    if blocks.len() != t as usize || blocks.iter().any(|b| b.len() != s as usize) {
        return bad(format!("expected {t} blocks of {s} hub indices"));
    }
    let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
    all.sort_unstable();
    if all != (1..=t * s).collect::<Vec<_>>() {
        return bad(format!("blocks must cover 1..={} exactly once", t * s));
    }
    let target = u(s) * (21 * u(k) + 12);
    for b in blocks {
        let sum: u64 = b.iter().map(|&i| x_color(k, i)).sum();
        if sum != target {
            return bad(format!("block {b:?} has hub sum {sum}, not {target}"));
        }
    }
    Ok(())
}

/// tFB(s): `t` fans of `s` blades each. Hub `y_a` merges the `x_i` of block `a`.
pub fn build_tfb(t: u32, s: u32, blocks: Option<&[Vec<u32>]>) -> Result<Built, FamilyError> {
    let (lg, inst) = tfb_parts(t, s, blocks)?;
    Ok(Built::from_labeled(lg, inst))
}

fn tfb_parts(t: u32, s: u32, blocks: Option<&[Vec<u32>]>) -> Result<(LabeledGraph, FamilyInstance), FamilyError> {
    if t < 3 || s < 3 || t.is_multiple_of(2) || s.is_multiple_of(2) {
        return Err(FamilyError::InvalidFactorization(format!("t = {t}, s = {s} must both be odd and at least 3")));
    }
    let k = (t * s - 1) / 2;
    let blocks: Vec<Vec<u32>> = match blocks {
        Some(b) => b.to_vec(),
        None => {
            // x_i has color 23k+14-2i, so rank i in the descending progression is x_i itself
            let spec = ApSpec {
                first: 19 * i64::from(k) + 12,
                step: 2,
                length: u64::from(t * s),
            };
            let p = partition_ap(&spec, t.into(), s.into())?;
            p.ranks
                .iter()
                .map(|b| b.iter().map(|&r| r as u32).collect())
                .collect()
        }
    };
    check_blocks(k, t, s, &blocks)?;
    let vblocks: Vec<Vec<VertexId>> = blocks
        .iter()
        .map(|b| b.iter().map(|&i| VertexId::x(i)).collect())
        .collect();
    let ids: Vec<VertexId> = (1..=t).map(VertexId::y).collect();
    let lg = copies(k)?.merge(&vblocks, &ids)?;
    let k_ = u(k);
    let mut inst = FamilyInstance::new(FamilyTag::Tfb, &[("t", t.into()), ("s", s.into()), ("k", k.into())])
        .with_palette(&[
            (9 * k_ + 6, "9k+6"),
            (10 * k_ + 6, "10k+6"),
            (u(s) * (21 * k_ + 12), "s(21k+12)"),
        ])?
        .with_census(&[(2, 2 * u(t * s)), (3, u(t * s)), (3 * u(s), u(t))]);
    inst.blocks = vblocks;
    Ok((lg, inst))
}

/// `rDF(2s) + FB(s)` from `(2r+1)s` copies of FB(1).
pub fn build_df(r: u32, s: u32) -> Result<Built, FamilyError> {
    let (lg, inst) = df_parts(r, s)?;
    Ok(Built::from_labeled(lg, inst))
}

fn df_parts(r: u32, s: u32) -> Result<(LabeledGraph, FamilyInstance), FamilyError> {
    if r < 1 || s < 1 || s.is_multiple_of(2) {
        return Err(FamilyError::InvalidParams(format!("r = {r} must be at least 1 and s = {s} odd")));
    }
    let k = ((2 * r + 1) * s - 1) / 2;
    let copy = |block: u32, a: u32| (block - 1) * s + a;
    let splits: Vec<_> = (1..=2 * r + 1)
        .filter(|&b| b != r + 1)
        .flat_map(|block| (1..=s).map(move |a| copy(block, a)))
        .map(|i| (VertexId::x(i), vec![VertexId::w(i)], half(1, i), half(2, i)))
        .collect();
    let lg = copies(k)?.split_many_by_neighbors(&splits)?;
    let mut blocks = Vec::new();
    let mut ids = Vec::new();
    for j in 1..=r {
        let mirror = 2 * r + 2 - j;
        blocks.push((1..=s).flat_map(|a| [half(1, copy(j, a)), half(2, copy(mirror, a))]).collect());
        ids.push(VertexId::y(j));
        blocks.push((1..=s).flat_map(|a| [half(2, copy(j, a)), half(1, copy(mirror, a))]).collect());
        ids.push(VertexId::z(j));
    }
    blocks.push((1..=s).map(|a| VertexId::x(copy(r + 1, a))).collect());
    ids.push(hub());
    let lg = lg.merge(&blocks, &ids)?;

    let k_ = u(k);
    let (r_, s_) = (u(r), u(s));
    let inst = FamilyInstance::new(FamilyTag::Df, &[("r", r.into()), ("s", s.into()), ("k", k.into())])
        .with_palette(&[
            (9 * k_ + 6, "9k+6"),
            (10 * k_ + 6, "10k+6"),
            (s_ * (21 * k_ + 12), "s(21k+12)"),
        ])?
        .with_census(&[(2, (4 * r_ + 2) * s_), (3, (2 * r_ + 1) * s_), (3 * s_, 2 * r_ + 1)]);
    Ok((lg, inst))
}

fn excluded_residue(k: u32) -> Result<(), FamilyError> {
    if k % 4 == 2 {
        return Err(FamilyError::PaletteCollision(format!("k = {k} is 2 mod 4, which the construction excludes")));
    }
    Ok(())
}

/// FB¹(r,s) merges the `j`-th blade ends `u`, `v` across the `r` fans of
/// tFB(s); FB²(r,s) merges the `j`-th blade centres `w`.
pub fn build_fb_merged(variant: u8, r: u32, s: u32) -> Result<Built, FamilyError> {
    if !(1..=2).contains(&variant) {
        return Err(FamilyError::InvalidParams(format!("FB variant {variant} (expected 1 or 2)")));
    }
    let (base, tfb) = tfb_parts(r, s, None)?;
    let k = (r * s - 1) / 2;
    if variant == 1 {
        excluded_residue(k)?;
    }
    // blade j of fan i is the j-th copy of block i, in ascending copy order
    let fans: Vec<Vec<u32>> = tfb
        .blocks
        .iter()
        .map(|b| {
            let mut c: Vec<u32> = b.iter().map(|x| x.indices[0]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let blade = |j: usize, role: fn(u32) -> VertexId| -> Vec<VertexId> { fans.iter().map(|f| role(f[j])).collect() };
    let (mut blocks, mut ids) = (Vec::new(), Vec::new());
    for j in 0..s as usize {
        let jj = j as u32 + 1;
        if variant == 1 {
            blocks.push(blade(j, VertexId::u));
            ids.push(VertexId::new(Role::U, &[0, jj]));
            blocks.push(blade(j, VertexId::v));
            ids.push(VertexId::new(Role::V, &[0, jj]));
        } else {
            blocks.push(blade(j, VertexId::w));
            ids.push(VertexId::new(Role::W, &[0, jj]));
        }
    }
    let lg = base.merge(&blocks, &ids)?;

    let (k_, r_, s_) = (u(k), u(r), u(s));
    let params = [("r", i64::from(r)), ("s", s.into()), ("k", k.into())];
    let hubs = (u(s) * (21 * k_ + 12), "s(21k+12)");
    let inst = if variant == 1 {
        FamilyInstance::new(FamilyTag::Fb1, &params)
            .with_palette(&[(9 * k_ + 6, "9k+6"), (r_ * (10 * k_ + 6), "r(10k+6)"), hubs])?
            .with_census(&[(3, r_ * s_), (2 * r_, 2 * s_), (3 * s_, r_)])
    } else {
        FamilyInstance::new(FamilyTag::Fb2, &params)
            .with_palette(&[(10 * k_ + 6, "10k+6"), (r_ * (9 * k_ + 6), "r(9k+6)"), hubs])?
            .with_census(&[(2, 2 * r_ * s_), (3 * r_, s_), (3 * s_, r_)])
    };
    let mut inst = inst;
    inst.blocks = blocks;
    Ok(Built::from_labeled(lg, inst))
}

/// Component index of every vertex, for block quota checks.
fn component_of(g: &Graph) -> BTreeMap<VertexId, usize> {
    g.components()
        .into_iter()
        .enumerate()
        .flat_map(|(c, vs)| vs.into_iter().map(move |v| (v, c)))
        .collect()
}

/// DF¹ and DF² blocks take one vertex from FB(s) and two from each DF(2s).
fn check_quotas(g: &Graph, blocks: &[Vec<VertexId>]) -> Result<(), FamilyError> {
    let comp = component_of(g);
    let fan = comp[&hub()];
    for b in blocks {
        let mut per: BTreeMap<usize, usize> = BTreeMap::new();
        for v in b {
            *per.entry(comp[v]).or_default() += 1;
        }
        let ok = per.iter().all(|(&c, &n)| n == if c == fan { 1 } else { 2 });
        let all_components = per.len() == g.components().len();
        if !ok || !all_components {
            return Err(FamilyError::NoValidPartition(format!(
                "block {:?} does not take one vertex from FB(s) and two from each DF(2s)",
                b.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

/// DF¹ merges degree-2 vertices, DF² the blade centres, DF³ the hubs.
pub fn build_df_merged(
    variant: u8,
    r: u32,
    s: u32,
    r1: Option<u32>,
    assignment: Option<&[Vec<VertexId>]>,
    seed: u64,
) -> Result<Built, FamilyError> {
    let (base, _) = df_parts(r, s)?;
    let k = ((2 * r + 1) * s - 1) / 2;
    let (k_, r_, s_) = (u(k), u(r), u(s));
    let g = &base.graph;
    let params = |extra: Option<(&'static str, i64)>| {
        let mut p = vec![("r", i64::from(r)), ("s", s.into()), ("k", k.into())];
        p.extend(extra);
        p
    };
    let hubs = (s_ * (21 * k_ + 12), "s(21k+12)");
    let (blocks, inst) = match variant {
        1 => {
            excluded_residue(k)?;
            let cands: Vec<VertexId> = g.vertices().filter(|v| g.degree(v) == 2).cloned().collect();
            let blocks = choose_blocks(g, &cands, 2 * s as usize, 2 * r as usize + 1, assignment, seed, "DF1")?;
            check_quotas(g, &blocks)?;
            let inst = FamilyInstance::new(FamilyTag::Df1, &params(None))
                .with_palette(&[(9 * k_ + 6, "9k+6"), ((2 * r_ + 1) * (10 * k_ + 6), "(2r+1)(10k+6)"), hubs])?
                .with_census(&[(2 * (2 * r_ + 1), 2 * s_), (3, (2 * r_ + 1) * s_), (3 * s_, 2 * r_ + 1)]);
            (blocks, inst)
        }
        2 => {
            let cands: Vec<VertexId> = g.vertices().filter(|v| v.role == Role::W).cloned().collect();
            let blocks = choose_blocks(g, &cands, s as usize, 2 * r as usize + 1, assignment, seed, "DF2")?;
            check_quotas(g, &blocks)?;
            let inst = FamilyInstance::new(FamilyTag::Df2, &params(None))
                .with_palette(&[(10 * k_ + 6, "10k+6"), ((2 * r_ + 1) * (9 * k_ + 6), "(2r+1)(9k+6)"), hubs])?
                .with_census(&[(2, (4 * r_ + 2) * s_), (3 * (2 * r_ + 1), s_), (3 * s_, 2 * r_ + 1)]);
            (blocks, inst)
        }
        3 => {
            let r1 = r1.ok_or_else(|| FamilyError::InvalidParams("DF3 needs r1".into()))?;
            if r1 < 3 || !(2 * r + 1).is_multiple_of(r1) || (2 * r + 1) / r1 < 3 {
                return Err(FamilyError::InvalidFactorization(format!(
                    "2r+1 = {} is not r1 * r2 with r1 = {r1} and r2 at least 3",
                    2 * r + 1
                )));
            }
            let r2 = (2 * r + 1) / r1;
            let cands: Vec<VertexId> = g.vertices().filter(|v| g.degree(v) == 3 * s as usize && v.role != Role::W).cloned().collect();
            let blocks = choose_blocks(g, &cands, r1 as usize, r2 as usize, assignment, seed, "DF3")?;
            let r2_ = u(r2);
            let inst = FamilyInstance::new(FamilyTag::Df3, &params(Some(("r1", r1.into()))))
                .with_palette(&[
                    (10 * k_ + 6, "10k+6"),
                    (9 * k_ + 6, "9k+6"),
                    (r2_ * s_ * (21 * k_ + 12), "r2*s(21k+12)"),
                ])?
                .with_census(&[(2, (4 * r_ + 2) * s_), (3, (2 * r_ + 1) * s_), (3 * s_ * r2_, u(r1))]);
            let mut inst = inst;
            inst.params.insert("r2".into(), r2.into());
            (blocks, inst)
        }
        other => return Err(FamilyError::InvalidParams(format!("DF variant {other} (expected 1, 2 or 3)"))),
    };
    let lg = merge_into_blocks(&base, &blocks)?;
    let mut inst = inst;
    inst.blocks = blocks;
    Ok(Built::from_labeled(lg, inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fb9_palette() {
        let b = build_fb(9).unwrap();
        assert_eq!(b.instance.palette(), vec![42, 46, 864]);
        let c = b.check().unwrap();
        assert!(c.certifies_chi_la_three());
        assert_eq!(b.graph.degree(&hub()), 27);
    }

    #[test]
    fn fb_parity() {
        assert!(matches!(build_fb(8), Err(FamilyError::InvalidParity(_))));
        assert!(matches!(build_fb(1), Err(FamilyError::InvalidParity(_))));
    }

    #[test]
    fn printed_k4_blocks() {
        let blocks = vec![vec![1, 5, 9], vec![3, 4, 8], vec![2, 6, 7]];
        let b = build_tfb(3, 3, Some(&blocks)).unwrap();
        b.check().unwrap();
        let col = b.certificate();
        assert_eq!(col.palette, vec![42, 46, 288]);
        assert!(build_tfb(3, 3, Some(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])).is_err());
    }

    #[test]
    fn df_examples() {
        let b = build_df(1, 3).unwrap();
        assert_eq!(b.instance.palette(), vec![42, 46, 288]);
        b.check().unwrap();
        assert_eq!(b.graph.components().len(), 2);
        let b = build_df(4, 1).unwrap();
        b.check().unwrap();
        assert_eq!(b.graph.components().len(), 5);
        // the first DF(2) comes from copies 1 and 9
        assert!(b.graph.is_adjacent(&VertexId::y(1), &VertexId::w(1)));
        assert!(b.graph.is_adjacent(&VertexId::y(1), &VertexId::u(9)));
        assert_eq!(build_df(1, 1).unwrap().instance.palette(), vec![15, 16, 33]);
    }

    #[test]
    fn merged_examples() {
        let b = build_fb_merged(2, 3, 3).unwrap();
        assert_eq!(b.instance.palette(), vec![46, 126, 288]);
        b.check().unwrap();
        let b = build_fb_merged(1, 3, 3).unwrap();
        assert_eq!(b.instance.palette(), vec![42, 138, 288]);
        b.check().unwrap();
        // k = 10 is 2 mod 4
        assert!(matches!(build_fb_merged(1, 3, 7), Err(FamilyError::PaletteCollision(_))));
        let b = build_df_merged(2, 1, 3, None, None, 0).unwrap();
        assert_eq!(b.instance.palette(), vec![46, 126, 288]);
        b.check().unwrap();
        let b = build_df_merged(3, 4, 1, Some(3), None, 0).unwrap();
        assert_eq!(b.instance.palette(), vec![42, 46, 288]);
        b.check().unwrap();
        build_df_merged(1, 1, 3, None, None, 0).unwrap().check().unwrap();
    }
}
