//! `(2k+1)P3 v O3`: copies of `P3 v O3` labeled by the eleven-row table,
//! with the `a`-th independent vertices merged across copies.

use crate::error::FamilyError;
use crate::graph::{edge, Graph, Role, VertexId};
use crate::labeling::{EdgeLabeling, LabeledGraph};
use crate::tables::table_m3;

use super::{u, Built, FamilyInstance, FamilyTag};

fn xa(i: u32, a: u32) -> VertexId {
    VertexId::new(Role::X, &[i, a])
}

pub fn build_np3_o3(n: u32) -> Result<Built, FamilyError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FamilyError::InvalidParity(format!("n = {n} must be odd and at least 3")));
    }
    let k = (n - 1) / 2;
    let t = table_m3(k)?;
    let mut g = Graph::new();
    let mut f = EdgeLabeling::new();
    for i in 1..=n {
        let (ui, vi, wi) = (VertexId::u(i), VertexId::v(i), VertexId::w(i));
        // rows L, R, C1..C3, L1..L3, R1..R3
        let mut rows = vec![(ui.clone(), wi.clone()), (vi.clone(), wi.clone())];
        rows.extend((1..=3).map(|a| (wi.clone(), xa(i, a))));
        rows.extend((1..=3).map(|a| (ui.clone(), xa(i, a))));
        rows.extend((1..=3).map(|a| (vi.clone(), xa(i, a))));
        for (row, (p, q)) in rows.into_iter().enumerate() {
            g.add_edge(p.clone(), q.clone())?;
            f.insert(edge(p, q), t.at(row, i));
        }
    }
    let blocks: Vec<Vec<VertexId>> = (1..=3).map(|a| (1..=n).map(|i| xa(i, a)).collect()).collect();
    let ids: Vec<VertexId> = (1..=3).map(VertexId::x).collect();
    let lg = LabeledGraph::new(g, f).merge(&blocks, &ids)?;
    let (k_, n_) = (u(k), u(n));
    let inst = FamilyInstance::new(FamilyTag::Np3o3, &[("n", n.into()), ("k", k.into())])
        .with_palette(&[
            (25 * k_ + 15, "25k+15"),
            (50 * k_ + 27, "50k+27"),
            ((2 * k_ + 1) * (39 * k_ + 21), "(2k+1)(39k+21)"),
        ])?
        .with_census(&[(4, 2 * n_), (5, n_), (3 * n_, 3)]);
    Ok(Built::from_labeled(lg, inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_and_n5() {
        let b = build_np3_o3(3).unwrap();
        assert_eq!(b.instance.palette(), vec![40, 77, 180]);
        b.check().unwrap();
        assert_eq!(b.labeling.get(&edge(VertexId::w(1), VertexId::x(1))), Some(9));
        let b = build_np3_o3(5).unwrap();
        assert_eq!(b.instance.palette(), vec![65, 127, 495]);
        let c = b.check().unwrap();
        assert!(c.certifies_chi_la_three());
    }
}
