//! Certification of a labeled graph: bijectivity onto `[1, q]`, distinct
//! colors across every edge, the palette, and a per-degree color census.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph};
use crate::labeling::{sum_colors, EdgeLabeling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateLabel { label: u32, edges: Vec<Edge> },
    LabelOutOfRange { edge: Edge, label: u32 },
    MissingLabel { label: u32 },
    UnlabeledEdge { edge: Edge },
    ForeignEdge { edge: Edge, label: u32 },
    ColorClash { edge: Edge, color: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClass {
    pub vertices: usize,
    pub colors: BTreeSet<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub order: usize,
    pub size: usize,
    pub is_bijective: bool,
    pub is_local_antimagic: bool,
    pub color_count: usize,
    pub palette: Vec<u64>,
    pub degree_census: BTreeMap<usize, DegreeClass>,
    pub has_triangle: bool,
    pub components: usize,
    pub expected_palette: Option<Vec<u64>>,
    pub palette_matches: Option<bool>,
    pub violations: Vec<Violation>,
}

impl Certificate {
    /// Bijective, local antimagic, and (if an expected palette was given) on palette.
    pub fn passed(&self) -> bool {
        self.is_bijective && self.is_local_antimagic && self.palette_matches != Some(false)
    }

    /// The labeling is a local antimagic 3-coloring and the graph contains a
    /// triangle, so the local antimagic chromatic number is exactly 3.
    pub fn certifies_chi_la_three(&self) -> bool {
        self.passed() && self.color_count == 3 && self.has_triangle
    }

    /// First problem found, for one-line reports.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(v) = self.violations.first() {
            return Some(format!("{v:?}"));
        }
        if self.palette_matches == Some(false) {
            return Some(format!(
                "palette {:?} differs from expected {:?}",
                self.palette,
                self.expected_palette.as_deref().unwrap_or_default()
            ));
        }
        None
    }
}

/// Check `f` against `g`. Never fails: every problem is recorded in the
/// certificate, exhaustively.
pub fn certify(g: &Graph, f: &EdgeLabeling, expected_palette: Option<&[u64]>) -> Certificate {
    let q = g.size();
    let mut violations = Vec::new();

    let mut by_label: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for (e, l) in f.iter() {
        if !g.contains_edge(e) {
            violations.push(Violation::ForeignEdge { edge: e.clone(), label: l });
            continue;
        }
        if l == 0 || l as usize > q {
            violations.push(Violation::LabelOutOfRange { edge: e.clone(), label: l });
        }
        by_label.entry(l).or_default().push(e.clone());
    }
    for e in g.edges() {
        if f.get(&e).is_none() {
            violations.push(Violation::UnlabeledEdge { edge: e });
        }
    }
    for (&label, edges) in &by_label {
        if edges.len() > 1 {
            violations.push(Violation::DuplicateLabel { label, edges: edges.clone() });
        }
    }
    for label in 1..=q as u32 {
        if !by_label.contains_key(&label) {
            violations.push(Violation::MissingLabel { label });
        }
    }
    let is_bijective = violations.is_empty();

    let coloring = sum_colors(g, f);
    let mut clash = false;
    for e in g.edges() {
        let ca = coloring.colors[e.a()];
        if ca == coloring.colors[e.b()] {
            clash = true;
            violations.push(Violation::ColorClash { edge: e, color: ca });
        }
    }

    let mut degree_census: BTreeMap<usize, DegreeClass> = BTreeMap::new();
    for (v, &c) in &coloring.colors {
        let class = degree_census.entry(g.degree(v)).or_default();
        class.vertices += 1;
        class.colors.insert(c);
    }

    let expected = expected_palette.map(|p| {
        let mut p = p.to_vec();
        p.sort_unstable();
        p.dedup();
        p
    });
    let palette_matches = expected.as_ref().map(|p| *p == coloring.palette);

    Certificate {
        order: g.order(),
        size: q,
        is_bijective,
        is_local_antimagic: !clash,
        color_count: coloring.palette.len(),
        palette: coloring.palette,
        degree_census,
        has_triangle: g.has_triangle(),
        components: g.components().len(),
        expected_palette: expected,
        palette_matches,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge, VertexId};

    fn p3(labels: [u32; 2]) -> (Graph, EdgeLabeling) {
        let (a, b, c) = (VertexId::u(1), VertexId::w(1), VertexId::v(1));
        let g = Graph::from_edges([(a.clone(), b.clone()), (b.clone(), c.clone())]).unwrap();
        let f = [(edge(a, b.clone()), labels[0]), (edge(b, c), labels[1])]
            .into_iter()
            .collect();
        (g, f)
    }

    #[test]
    fn path_is_local_antimagic() {
        let (g, f) = p3([1, 2]);
        let c = certify(&g, &f, Some(&[3, 1, 2]));
        assert!(c.is_bijective && c.is_local_antimagic);
        assert_eq!(c.color_count, 3);
        assert_eq!(c.palette_matches, Some(true));
        assert!(c.violations.is_empty());
        assert!(!c.has_triangle);
    }

    #[test]
    fn duplicate_label_is_reported() {
        let (g, f) = p3([1, 1]);
        let c = certify(&g, &f, None);
        assert!(!c.is_bijective);
        assert!(c
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicateLabel { label: 1, edges } if edges.len() == 2)));
        assert!(c.violations.iter().any(|v| matches!(v, Violation::MissingLabel { label: 2 })));
    }

    #[test]
    fn violations_are_collected_exhaustively() {
        let vs: Vec<VertexId> = (1..=4).map(VertexId::u).collect();
        let g = Graph::from_edges([
            (vs[0].clone(), vs[1].clone()),
            (vs[1].clone(), vs[2].clone()),
            (vs[2].clone(), vs[3].clone()),
        ])
        .unwrap();
        // labels 1,2,1 give colors 1,3,3,1: a duplicate, a missing 3 and a clash
        let f: EdgeLabeling = [
            (edge(vs[0].clone(), vs[1].clone()), 1),
            (edge(vs[1].clone(), vs[2].clone()), 2),
            (edge(vs[2].clone(), vs[3].clone()), 1),
        ]
        .into_iter()
        .collect();
        let c = certify(&g, &f, Some(&[1, 3]));
        assert!(!c.is_bijective);
        assert!(!c.is_local_antimagic);
        assert_eq!(c.palette_matches, Some(true));
        assert_eq!(c.violations.len(), 3);
        assert!(matches!(c.violations[2], Violation::ColorClash { color: 3, .. }));
        assert!(!c.passed());
    }

    #[test]
    fn pure() {
        let (g, f) = p3([2, 1]);
        assert_eq!(certify(&g, &f, None), certify(&g, &f, None));
    }
}
