//! Labeled graph families built from the label tables by merging and
//! splitting vertices. Labels follow edges through every surgery; nothing is
//! recomputed after the base tables are laid down.

mod blocks;
mod bracelet;
mod fan;
mod join;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certify::{certify, Certificate};
use crate::error::FamilyError;
use crate::graph::{degree_census, Graph, VertexId};
use crate::labeling::{EdgeLabeling, LabeledGraph};

pub use bracelet::{bracelet_decomposition, build_gb, build_gn, build_pt, build_pt_tb_merged, build_tb, gn_index_lists};
pub use fan::{build_df, build_df_merged, build_fb, build_fb_merged, build_tfb};
pub use join::build_np3_o3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "FB")]
    Fb,
    #[serde(rename = "tFB")]
    Tfb,
    #[serde(rename = "DF")]
    Df,
    #[serde(rename = "FB1")]
    Fb1,
    #[serde(rename = "FB2")]
    Fb2,
    #[serde(rename = "DF1")]
    Df1,
    #[serde(rename = "DF2")]
    Df2,
    #[serde(rename = "DF3")]
    Df3,
    #[serde(rename = "PT")]
    Pt,
    #[serde(rename = "TB")]
    Tb,
    #[serde(rename = "PT1")]
    Pt1,
    #[serde(rename = "PT2")]
    Pt2,
    #[serde(rename = "PT3")]
    Pt3,
    #[serde(rename = "TB1")]
    Tb1,
    #[serde(rename = "TB2")]
    Tb2,
    #[serde(rename = "TB3")]
    Tb3,
    #[serde(rename = "GN")]
    Gn,
    #[serde(rename = "GB")]
    Gb,
    #[serde(rename = "NP3O3")]
    Np3o3,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 19] = [
        FamilyTag::Fb,
        FamilyTag::Tfb,
        FamilyTag::Df,
        FamilyTag::Fb1,
        FamilyTag::Fb2,
        FamilyTag::Df1,
        FamilyTag::Df2,
        FamilyTag::Df3,
        FamilyTag::Pt,
        FamilyTag::Tb,
        FamilyTag::Pt1,
        FamilyTag::Pt2,
        FamilyTag::Pt3,
        FamilyTag::Tb1,
        FamilyTag::Tb2,
        FamilyTag::Tb3,
        FamilyTag::Gn,
        FamilyTag::Gb,
        FamilyTag::Np3o3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Fb => "FB",
            FamilyTag::Tfb => "tFB",
            FamilyTag::Df => "DF",
            FamilyTag::Fb1 => "FB1",
            FamilyTag::Fb2 => "FB2",
            FamilyTag::Df1 => "DF1",
            FamilyTag::Df2 => "DF2",
            FamilyTag::Df3 => "DF3",
            FamilyTag::Pt => "PT",
            FamilyTag::Tb => "TB",
            FamilyTag::Pt1 => "PT1",
            FamilyTag::Pt2 => "PT2",
            FamilyTag::Pt3 => "PT3",
            FamilyTag::Tb1 => "TB1",
            FamilyTag::Tb2 => "TB2",
            FamilyTag::Tb3 => "TB3",
            FamilyTag::Gn => "GN",
            FamilyTag::Gb => "GB",
            FamilyTag::Np3o3 => "NP3O3",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraceletBase {
    Pt,
    Tb,
}

/// Everything needed to rebuild one instance. `assignment`, where present,
/// replaces the block search with explicit merge blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Fb {
        n: u32,
    },
    Tfb {
        t: u32,
        s: u32,
        /// 1-based hub indices per block, as in `{x1,x5,x9}`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        blocks: Option<Vec<Vec<u32>>>,
    },
    Df {
        r: u32,
        s: u32,
    },
    FbMerged {
        variant: u8,
        r: u32,
        s: u32,
    },
    DfMerged {
        variant: u8,
        r: u32,
        s: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r1: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        assignment: Option<Vec<Vec<VertexId>>>,
    },
    Pt {
        n: u32,
    },
    Tb {
        n: u32,
    },
    PtTbMerged {
        base: BraceletBase,
        variant: u8,
        n: u32,
        r: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        assignment: Option<Vec<Vec<VertexId>>>,
    },
    Gn {
        n: u32,
        indices: Vec<u32>,
    },
    Gb {
        n: u32,
        r: u32,
        /// Index list of the G(n) base; `None` builds on TB(n).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        indices: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        assignment: Option<Vec<Vec<VertexId>>>,
    },
    Np3o3 {
        n: u32,
    },
}

impl FamilySpec {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilySpec::Fb { .. } => FamilyTag::Fb,
            FamilySpec::Tfb { .. } => FamilyTag::Tfb,
            FamilySpec::Df { .. } => FamilyTag::Df,
            FamilySpec::FbMerged { variant: 1, .. } => FamilyTag::Fb1,
            FamilySpec::FbMerged { .. } => FamilyTag::Fb2,
            FamilySpec::DfMerged { variant: 1, .. } => FamilyTag::Df1,
            FamilySpec::DfMerged { variant: 2, .. } => FamilyTag::Df2,
            FamilySpec::DfMerged { .. } => FamilyTag::Df3,
            FamilySpec::Pt { .. } => FamilyTag::Pt,
            FamilySpec::Tb { .. } => FamilyTag::Tb,
            FamilySpec::PtTbMerged { base, variant, .. } => match (base, variant) {
                (BraceletBase::Pt, 1) => FamilyTag::Pt1,
                (BraceletBase::Pt, 2) => FamilyTag::Pt2,
                (BraceletBase::Pt, _) => FamilyTag::Pt3,
                (BraceletBase::Tb, 1) => FamilyTag::Tb1,
                (BraceletBase::Tb, 2) => FamilyTag::Tb2,
                (BraceletBase::Tb, _) => FamilyTag::Tb3,
            },
            FamilySpec::Gn { .. } => FamilyTag::Gn,
            FamilySpec::Gb { .. } => FamilyTag::Gb,
            FamilySpec::Np3o3 { .. } => FamilyTag::Np3o3,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Fb { n } | FamilySpec::Pt { n } | FamilySpec::Tb { n } | FamilySpec::Np3o3 { n } => {
                write!(f, "{}(n={n})", self.tag())
            }
            FamilySpec::Tfb { t, s, .. } => write!(f, "tFB(t={t},s={s})"),
            FamilySpec::Df { r, s } | FamilySpec::FbMerged { r, s, .. } => write!(f, "{}(r={r},s={s})", self.tag()),
            FamilySpec::DfMerged { r, s, r1, .. } => match r1 {
                Some(r1) => write!(f, "{}(r={r},s={s},r1={r1})", self.tag()),
                None => write!(f, "{}(r={r},s={s})", self.tag()),
            },
            FamilySpec::PtTbMerged { n, r, .. } => write!(f, "{}(n={n},r={r})", self.tag()),
            FamilySpec::Gn { n, indices } => write!(f, "GN(n={n},i=[{}])", list(indices)),
            FamilySpec::Gb { n, r, indices, .. } => match indices {
                Some(i) => write!(f, "GB(n={n},r={r},base=GN[{}])", list(i)),
                None => write!(f, "GB(n={n},r={r},base=TB)"),
            },
        }
    }
}

/// One closed-form color value and the formula it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedColor {
    pub value: u64,
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub family: FamilyTag,
    pub params: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<u32>,
    /// Merge blocks actually used, so a searched partition can be replayed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<Vec<VertexId>>,
    pub expected_palette: Vec<ExpectedColor>,
    pub expected_census: BTreeMap<usize, usize>,
    /// Bracelet sizes `m` of the `TB(m)` components, for G(n).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bracelets: Vec<u32>,
}

impl FamilyInstance {
    fn new(family: FamilyTag, params: &[(&str, i64)]) -> Self {
        FamilyInstance {
            family,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            indices: Vec::new(),
            blocks: Vec::new(),
            expected_palette: Vec::new(),
            expected_census: BTreeMap::new(),
            bracelets: Vec::new(),
        }
    }

    /// Expected color values, ascending.
    pub fn palette(&self) -> Vec<u64> {
        let mut p: Vec<u64> = self.expected_palette.iter().map(|c| c.value).collect();
        p.sort_unstable();
        p
    }

    fn with_palette(mut self, colors: &[(u64, &str)]) -> Result<Self, FamilyError> {
        let distinct: BTreeSet<u64> = colors.iter().map(|c| c.0).collect();
        if distinct.len() != colors.len() {
            let shown: Vec<String> = colors.iter().map(|(v, f)| format!("{f}={v}")).collect();
            return Err(FamilyError::PaletteCollision(shown.join(", ")));
        }
        self.expected_palette = colors
            .iter()
            .map(|&(value, formula)| ExpectedColor {
                value,
                formula: formula.to_string(),
            })
            .collect();
        Ok(self)
    }

    fn with_census(mut self, classes: &[(u64, u64)]) -> Self {
        for &(degree, count) in classes {
            *self.expected_census.entry(degree as usize).or_default() += count as usize;
        }
        self
    }
}

/// A built family member: graph, labeling, and what it should certify to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub graph: Graph,
    pub labeling: EdgeLabeling,
    pub instance: FamilyInstance,
}

impl Built {
    fn from_labeled(lg: LabeledGraph, instance: FamilyInstance) -> Self {
        Built {
            graph: lg.graph,
            labeling: lg.labeling,
            instance,
        }
    }

    pub fn certificate(&self) -> Certificate {
        certify(&self.graph, &self.labeling, Some(&self.instance.palette()))
    }

    pub fn census_matches(&self) -> bool {
        degree_census(&self.graph) == self.instance.expected_census
    }

    /// Certificate if every family claim holds, otherwise the first failure.
    pub fn check(&self) -> Result<Certificate, String> {
        let cert = self.certificate();
        if let Some(problem) = cert.first_failure() {
            return Err(problem);
        }
        if cert.color_count != 3 {
            return Err(format!("{} colors, expected 3", cert.color_count));
        }
        if !self.census_matches() {
            return Err(format!(
                "degree census {:?} differs from expected {:?}",
                degree_census(&self.graph),
                self.instance.expected_census
            ));
        }
        if !self.instance.bracelets.is_empty() {
            let mut want = self.instance.bracelets.clone();
            want.sort_unstable();
            if bracelet_decomposition(&self.graph).as_ref() != Some(&want) {
                return Err(format!("components are not the bracelets {want:?}"));
            }
        }
        Ok(cert)
    }
}

pub fn build(spec: &FamilySpec) -> Result<Built, FamilyError> {
    build_seeded(spec, 0)
}

/// Build with a tie-breaking seed for any block search.
pub fn build_seeded(spec: &FamilySpec, seed: u64) -> Result<Built, FamilyError> {
    match spec {
        FamilySpec::Fb { n } => build_fb(*n),
        FamilySpec::Tfb { t, s, blocks } => build_tfb(*t, *s, blocks.as_deref()),
        FamilySpec::Df { r, s } => build_df(*r, *s),
        FamilySpec::FbMerged { variant, r, s } => build_fb_merged(*variant, *r, *s),
        FamilySpec::DfMerged {
            variant,
            r,
            s,
            r1,
            assignment,
        } => build_df_merged(*variant, *r, *s, *r1, assignment.as_deref(), seed),
        FamilySpec::Pt { n } => build_pt(*n),
        FamilySpec::Tb { n } => build_tb(*n),
        FamilySpec::PtTbMerged {
            base,
            variant,
            n,
            r,
            assignment,
        } => build_pt_tb_merged(*base, *variant, *n, *r, assignment.as_deref(), seed),
        FamilySpec::Gn { n, indices } => build_gn(*n, indices),
        FamilySpec::Gb {
            n,
            r,
            indices,
            assignment,
        } => build_gb(*n, *r, indices.as_deref(), assignment.as_deref(), seed),
        FamilySpec::Np3o3 { n } => build_np3_o3(*n),
    }
}

/// How one sweep instance came out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Pass {
        palette: Vec<u64>,
        census: BTreeMap<usize, usize>,
    },
    /// A parameter choice the construction deliberately leaves out.
    Excluded { reason: String },
    /// No admissible merge partition was found; not a failure of the labeling.
    Skipped { reason: String },
    Fail { reason: String },
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

/// Build and fully check one instance.
pub fn run_instance(spec: &FamilySpec, seed: u64) -> Outcome {
    match build_seeded(spec, seed) {
        Ok(b) => match b.check() {
            Ok(cert) => Outcome::Pass {
                palette: cert.palette,
                census: b.instance.expected_census,
            },
            Err(reason) => Outcome::Fail { reason },
        },
        Err(e @ FamilyError::PaletteCollision(_)) if matches!(spec.tag(), FamilyTag::Fb1 | FamilyTag::Df1) => {
            Outcome::Excluded { reason: e.to_string() }
        }
        Err(e @ FamilyError::NoValidPartition(_)) => Outcome::Skipped { reason: e.to_string() },
        Err(e) => Outcome::Fail { reason: e.to_string() },
    }
}

/// Odd divisor pairs `(a, b)` with `a * b = m`, both at least `min`.
fn odd_factorizations(m: u32, min: u32) -> Vec<(u32, u32)> {
    (min..=m)
        .filter(|a| a % 2 == 1 && m.is_multiple_of(*a))
        .map(|a| (a, m / a))
        .filter(|&(_, b)| b >= min && b % 2 == 1)
        .collect()
}

/// Every parameterization of `tag` at table parameter `k` (the one whose
/// table has `2k+1` columns). Builders may still reject some, for example
/// the excluded residues of `k`.
pub fn enumerate(tag: FamilyTag, k: u32) -> Vec<FamilySpec> {
    let m = 2 * k + 1;
    let n = 2 * k;
    let df_pairs = || {
        (1..=k)
            .filter(move |r| m.is_multiple_of(2 * r + 1))
            .map(move |r| (r, m / (2 * r + 1)))
    };
    match tag {
        FamilyTag::Fb => vec![FamilySpec::Fb { n: m }],
        FamilyTag::Tfb => odd_factorizations(m, 3)
            .into_iter()
            .map(|(t, s)| FamilySpec::Tfb { t, s, blocks: None })
            .collect(),
        FamilyTag::Df => df_pairs().map(|(r, s)| FamilySpec::Df { r, s }).collect(),
        FamilyTag::Fb1 | FamilyTag::Fb2 => odd_factorizations(m, 3)
            .into_iter()
            .map(|(r, s)| FamilySpec::FbMerged {
                variant: if tag == FamilyTag::Fb1 { 1 } else { 2 },
                r,
                s,
            })
            .collect(),
        FamilyTag::Df1 | FamilyTag::Df2 => df_pairs()
            .map(|(r, s)| FamilySpec::DfMerged {
                variant: if tag == FamilyTag::Df1 { 1 } else { 2 },
                r,
                s,
                r1: None,
                assignment: None,
            })
            .collect(),
        FamilyTag::Df3 => df_pairs()
            .flat_map(|(r, s)| {
                odd_factorizations(2 * r + 1, 3)
                    .into_iter()
                    .map(move |(r1, _)| FamilySpec::DfMerged {
                        variant: 3,
                        r,
                        s,
                        r1: Some(r1),
                        assignment: None,
                    })
            })
            .collect(),
        FamilyTag::Pt => vec![FamilySpec::Pt { n }],
        FamilyTag::Tb => vec![FamilySpec::Tb { n }],
        FamilyTag::Pt1 | FamilyTag::Pt2 => odd_factorizations(m, 1)
            .into_iter()
            .filter(|&(_, s)| s >= 3)
            .map(|(r, _)| FamilySpec::PtTbMerged {
                base: BraceletBase::Pt,
                variant: if tag == FamilyTag::Pt1 { 1 } else { 2 },
                n,
                r,
                assignment: None,
            })
            .collect(),
        FamilyTag::Pt3 => (2..=2 * n + 2)
            .filter(|r| (2 * n + 2).is_multiple_of(*r) && (2..=n + 1).contains(&((2 * n + 2) / r)))
            .map(|r| FamilySpec::PtTbMerged {
                base: BraceletBase::Pt,
                variant: 3,
                n,
                r,
                assignment: None,
            })
            .collect(),
        FamilyTag::Tb1 | FamilyTag::Tb2 | FamilyTag::Tb3 => {
            if tag == FamilyTag::Tb3 && n < 8 {
                return Vec::new();
            }
            let variant = match tag {
                FamilyTag::Tb1 => 1,
                FamilyTag::Tb2 => 2,
                _ => 3,
            };
            odd_factorizations(m, 3)
                .into_iter()
                .map(|(r, _)| FamilySpec::PtTbMerged {
                    base: BraceletBase::Tb,
                    variant,
                    n,
                    r,
                    assignment: None,
                })
                .collect()
        }
        FamilyTag::Gn => gn_index_lists(n)
            .into_iter()
            .map(|indices| FamilySpec::Gn { n, indices })
            .collect(),
        FamilyTag::Gb => {
            if n < 8 {
                return Vec::new();
            }
            let bases: Vec<Option<Vec<u32>>> = std::iter::once(None).chain(gn_index_lists(n).into_iter().map(Some)).collect();
            let rs = odd_factorizations(m, 3);
            bases
                .into_iter()
                .flat_map(|b| {
                    rs.iter().map(move |&(r, _)| FamilySpec::Gb {
                        n,
                        r,
                        indices: b.clone(),
                        assignment: None,
                    })
                })
                .collect()
        }
        FamilyTag::Np3o3 => vec![FamilySpec::Np3o3 { n: m }],
    }
}

/// Blocks for a merge: explicit ones are checked for shape and membership,
/// otherwise they are searched for among `candidates`.
fn choose_blocks(
    g: &Graph,
    candidates: &[VertexId],
    count: usize,
    size: usize,
    explicit: Option<&[Vec<VertexId>]>,
    seed: u64,
    what: &str,
) -> Result<Vec<Vec<VertexId>>, FamilyError> {
    match explicit {
        Some(blocks) => {
            if blocks.len() != count || blocks.iter().any(|b| b.len() != size) {
                return Err(FamilyError::InvalidParams(format!(
                    "{what}: expected {count} blocks of {size}"
                )));
            }
            let pool: BTreeSet<&VertexId> = candidates.iter().collect();
            let mut seen = BTreeSet::new();
            for v in blocks.iter().flatten() {
                if !pool.contains(v) {
                    return Err(FamilyError::InvalidParams(format!("{what}: {v} is not a candidate")));
                }
                if !seen.insert(v) {
                    return Err(FamilyError::InvalidParams(format!("{what}: {v} listed twice")));
                }
            }
            Ok(blocks.to_vec())
        }
        None => blocks::find_blocks(g, candidates, count, size, seed).ok_or_else(|| {
            FamilyError::NoValidPartition(format!("{what}: {} vertices into {count} blocks of {size}", candidates.len()))
        }),
    }
}

/// Merge each block into a fresh `b/j` vertex.
fn merge_into_blocks(lg: &LabeledGraph, blocks: &[Vec<VertexId>]) -> Result<LabeledGraph, FamilyError> {
    let ids: Vec<VertexId> = (1..=blocks.len() as u32).map(VertexId::block).collect();
    Ok(lg.merge(blocks, &ids)?)
}

fn u(x: u32) -> u64 {
    u64::from(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in FamilyTag::ALL {
            assert_eq!(t.as_str().parse::<FamilyTag>().unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.as_str()));
        }
    }

    #[test]
    fn factorizations() {
        assert_eq!(odd_factorizations(9, 3), vec![(3, 3)]);
        assert_eq!(odd_factorizations(15, 3), vec![(3, 5), (5, 3)]);
        assert!(odd_factorizations(7, 3).is_empty());
    }

    #[test]
    fn enumerate_k4() {
        assert_eq!(enumerate(FamilyTag::Tfb, 4).len(), 1);
        // 9 = 3*3 = 9*1: r = 1, s = 3 and r = 4, s = 1
        assert_eq!(enumerate(FamilyTag::Df, 4).len(), 2);
        assert_eq!(enumerate(FamilyTag::Df3, 4).len(), 1);
    }
}
