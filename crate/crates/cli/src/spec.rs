//! Family flags to a `FamilySpec`.

use antimagic::families::BraceletBase;
use antimagic::{FamilySpec, FamilyTag, VertexId};
use clap::Args;
use serde::Serialize;

#[derive(Args, Debug, Clone, Serialize)]
pub struct FamilyArgs {
    /// FB tFB DF FB1 FB2 DF1 DF2 DF3 PT TB PT1 PT2 PT3 TB1 TB2 TB3 GN GB NP3O3
    #[arg(long)]
    pub family: FamilyTag,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Number of hub blocks for DF3.
    #[arg(long)]
    pub r1: Option<u32>,
    /// Index list for GN, or the GN base of GB: `1,2,4`.
    #[arg(long, value_delimiter = ',')]
    pub indices: Option<Vec<u32>>,
    /// tFB hub blocks: `1,5,9;3,4,8;2,6,7`.
    #[arg(long)]
    pub blocks: Option<String>,
    /// Explicit merge blocks of vertex ids: `u/1,u/4;u/2,u/5`.
    #[arg(long)]
    pub assignment: Option<String>,
}

fn need(v: Option<u32>, flag: &str, tag: FamilyTag) -> Result<u32, String> {
    v.ok_or_else(|| format!("--{flag} is required for {tag}"))
}

fn groups<T>(text: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<Vec<T>>, String> {
    text.split(';')
        .map(|g| g.split(',').map(|x| item(x.trim())).collect())
        .collect()
}

impl FamilyArgs {
    fn assignment(&self) -> Result<Option<Vec<Vec<VertexId>>>, String> {
        self.assignment
            .as_deref()
            .map(|a| groups(a, |x| x.parse::<VertexId>().map_err(|e| e.to_string())))
            .transpose()
    }

    pub fn spec(&self) -> Result<FamilySpec, String> {
        let tag = self.family;
        let n = || need(self.n, "n", tag);
        let r = || need(self.r, "r", tag);
        let s = || need(self.s, "s", tag);
        let bracelet = |base, variant| -> Result<FamilySpec, String> {
            Ok(FamilySpec::PtTbMerged {
                base,
                variant,
                n: n()?,
                r: r()?,
                assignment: self.assignment()?,
            })
        };
        let df = |variant| -> Result<FamilySpec, String> {
            Ok(FamilySpec::DfMerged {
                variant,
                r: r()?,
                s: s()?,
                r1: self.r1,
                assignment: self.assignment()?,
            })
        };
        Ok(match tag {
            FamilyTag::Fb => FamilySpec::Fb { n: n()? },
            FamilyTag::Tfb => FamilySpec::Tfb {
                t: need(self.t, "t", tag)?,
                s: s()?,
                blocks: self
                    .blocks
                    .as_deref()
                    .map(|b| groups(b, |x| x.parse::<u32>().map_err(|e| format!("{x:?}: {e}"))))
                    .transpose()?,
            },
            FamilyTag::Df => FamilySpec::Df { r: r()?, s: s()? },
            FamilyTag::Fb1 => FamilySpec::FbMerged { variant: 1, r: r()?, s: s()? },
            FamilyTag::Fb2 => FamilySpec::FbMerged { variant: 2, r: r()?, s: s()? },
            FamilyTag::Df1 => df(1)?,
            FamilyTag::Df2 => df(2)?,
            FamilyTag::Df3 => df(3)?,
            FamilyTag::Pt => FamilySpec::Pt { n: n()? },
            FamilyTag::Tb => FamilySpec::Tb { n: n()? },
            FamilyTag::Pt1 => bracelet(BraceletBase::Pt, 1)?,
            FamilyTag::Pt2 => bracelet(BraceletBase::Pt, 2)?,
            FamilyTag::Pt3 => bracelet(BraceletBase::Pt, 3)?,
            FamilyTag::Tb1 => bracelet(BraceletBase::Tb, 1)?,
            FamilyTag::Tb2 => bracelet(BraceletBase::Tb, 2)?,
            FamilyTag::Tb3 => bracelet(BraceletBase::Tb, 3)?,
            FamilyTag::Gn => FamilySpec::Gn {
                n: n()?,
                indices: self.indices.clone().ok_or("--indices is required for GN")?,
            },
            FamilyTag::Gb => FamilySpec::Gb {
                n: n()?,
                r: r()?,
                indices: self.indices.clone(),
                assignment: self.assignment()?,
            },
            FamilyTag::Np3o3 => FamilySpec::Np3o3 { n: n()? },
        })
    }
}

/// File stem for an instance: `GN(n=30,i=[1,2,4])` becomes `gn-n30-i1-2-4`.
pub fn slug(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !"=[])".contains(c) && !out.is_empty() && !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_end_matches('-').to_string()
}
