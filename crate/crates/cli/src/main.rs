mod manifest;
mod spec;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use antimagic::export::to_edge_csv;
use antimagic::families::build_seeded;
use antimagic::solver::small;
use antimagic::tables::{check_m1_observations, check_m3_observations, trace_sequences};
use antimagic::{
    certify, degree_census, enumerate, from_json, partition_ap, run_instance, solve_with_incumbent, table, to_dot,
    ApSpec, FamilyError, FamilyTag, GraphDoc, Outcome, SearchConfig, SolveError, TableKind,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use manifest::RunManifest;
use spec::{slug, FamilyArgs};

#[derive(Parser, Debug, Serialize)]
#[command(name = "antimagic", version, about = "Local antimagic 3-colorings: tables, families, certificates")]
struct Cli {
    /// Tie-breaking seed for merge block searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write outputs and manifest.jsonl here instead of stdout/stderr.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, visible_alias = "emit")]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Print a label table.
    Table(TableArgs),
    /// Build one family instance.
    Build(BuildArgs),
    /// Equal-sum blocks of an arithmetic progression.
    Partition(PartitionArgs),
    /// Build and certify every parameterization in a range of k.
    Sweep(SweepArgs),
    /// Exact local antimagic chromatic number of a small graph.
    Solve(SolveArgs),
    /// Certify a labeled graph document.
    Certify(CertifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct TableArgs {
    #[arg(long, value_parser = parse_kind)]
    #[serde(serialize_with = "kind_name")]
    kind: TableKind,
    #[arg(long)]
    k: u32,
    /// Also run the table's observation suite.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug, Serialize)]
struct BuildArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    certify: bool,
    /// `auto` for the closed-form palette, or an explicit `a,b,c`.
    #[arg(long)]
    expect_palette: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct PartitionArgs {
    #[arg(long, allow_negative_numbers = true)]
    first: i64,
    #[arg(long, allow_negative_numbers = true)]
    step: i64,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    s: u64,
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    /// A family tag, or `all`.
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long, default_value_t = 1)]
    k_min: u32,
    #[arg(long)]
    k_max: u32,
    /// Per-instance outcomes as JSON lines.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct SolveArgs {
    /// Graph document; its labels, if any, seed the search.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    input: Option<PathBuf>,
    /// fb1, k2, k3, p<n> or c<n>.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, default_value_t = 10)]
    max_edges: usize,
    /// Stop once a labeling with this many colors is found.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    no_symmetry: bool,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    node_budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct CertifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// `auto` uses the palette recorded in the document.
    #[arg(long)]
    expect_palette: Option<String>,
}

fn parse_kind(s: &str) -> Result<TableKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "m1" => Ok(TableKind::M1),
        "pt" => Ok(TableKind::Pt),
        "m3" => Ok(TableKind::M3),
        _ => Err(format!("unknown table kind {s:?} (m1, pt or m3)")),
    }
}

fn kind_name<S: serde::Serializer>(k: &TableKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(k.as_str())
}

/// Why a run did not pass.
#[derive(Debug)]
enum Failure {
    /// Bad flags or parameters the constructions reject: exit 2.
    Usage(String),
    /// A certificate or observation failed: exit 1.
    Invariant(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Where outputs go, and what the manifest records about them.
struct Run<'a> {
    out: Option<&'a Path>,
    manifest: RunManifest,
}

impl Run<'_> {
    fn emit(&mut self, name: &str, content: &str) -> Result<(), Failure> {
        match self.out {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(usage)?;
                let path = dir.join(name);
                std::fs::write(&path, content).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                self.manifest.outputs.push(path.display().to_string());
            }
            None => print!("{content}"),
        }
        Ok(())
    }
}

fn parse_palette(text: &str) -> Result<Vec<u64>, Failure> {
    let mut p = text
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| usage(format!("palette entry {x:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    p.sort_unstable();
    Ok(p)
}

fn cmd_table(a: &TableArgs, fmt: Format, run: &mut Run) -> Result<String, Failure> {
    let t = table(a.kind, a.k).map_err(usage)?;
    let body = match fmt {
        Format::Csv => t.to_csv(),
        Format::Json => json(&t),
        Format::Dot => return Err(usage("tables are emitted as csv or json")),
    };
    run.emit(&format!("table-{}-k{}.{}", a.kind.as_str(), a.k, ext(fmt)), &body)?;
    if !a.check {
        return Ok("pass".into());
    }
    let checked = match a.kind {
        TableKind::M1 => check_m1_observations(&t, None).map(|r| r.checked.len()),
        TableKind::M3 => check_m3_observations(&t).map(|r| r.checked.len()),
        TableKind::Pt => trace_sequences(&t).map(|_| 3),
    }
    .map_err(|e| Failure::Invariant(e.to_string()))?;
    eprintln!("{} k={}: {checked} observations hold", a.kind.as_str(), a.k);
    Ok(format!("pass: {checked} observations"))
}

fn cmd_build(a: &BuildArgs, fmt: Format, seed: u64, run: &mut Run) -> Result<String, Failure> {
    let spec = a.family.spec().map_err(usage)?;
    let b = build_seeded(&spec, seed).map_err(|e| match e {
        FamilyError::PaletteCollision(_) => usage(format!("{spec} is excluded: {e}")),
        e => usage(format!("{spec}: {e}")),
    })?;
    let body = match fmt {
        Format::Json => GraphDoc::from_built(&b).to_json(),
        Format::Dot => to_dot(&b.graph, Some(&b.labeling), &spec.to_string()),
        Format::Csv => to_edge_csv(&b.graph, &b.labeling).map_err(usage)?,
    };
    run.emit(&format!("{}.{}", slug(&spec.to_string()), ext(fmt)), &body)?;
    let mut summary = format!("{spec}: {} vertices, {} edges", b.graph.order(), b.graph.size());
    if !b.instance.bracelets.is_empty() {
        let parts: Vec<String> = b.instance.bracelets.iter().map(|m| format!("TB({m})")).collect();
        summary += &format!(", {}", parts.join("+"));
    }
    if a.certify || a.expect_palette.is_some() {
        let cert = b.check().map_err(|e| Failure::Invariant(format!("{spec}: {e}")))?;
        if let Some(p) = a.expect_palette.as_deref().filter(|p| *p != "auto") {
            let want = parse_palette(p)?;
            if cert.palette != want {
                return Err(Failure::Invariant(format!("{spec}: palette {:?}, expected {want:?}", cert.palette)));
            }
        }
        summary += &format!(", certified: {} colors {:?}", cert.color_count, cert.palette);
    }
    eprintln!("{summary}");
    Ok("pass".into())
}

fn cmd_partition(a: &PartitionArgs, fmt: Format, run: &mut Run) -> Result<String, Failure> {
    let spec = ApSpec {
        first: a.first,
        step: a.step,
        length: a.t * a.s,
    };
    let p = partition_ap(&spec, a.t, a.s).map_err(usage)?;
    let body = match fmt {
        Format::Csv => {
            let mut out = String::from("block,sum");
            for j in 1..=a.s {
                out += &format!(",v{j}");
            }
            out.push('\n');
            for (i, b) in p.blocks.iter().enumerate() {
                let vals: Vec<String> = b.iter().map(i64::to_string).collect();
                out += &format!("{},{},{}\n", i + 1, p.target, vals.join(","));
            }
            out
        }
        Format::Json => json(&p),
        Format::Dot => return Err(usage("partitions are emitted as csv or json")),
    };
    run.emit(&format!("partition-{}-{}-t{}-s{}.{}", a.first, a.step, a.t, a.s, ext(fmt)), &body)?;
    Ok(format!("pass: {} blocks of sum {}", a.t, p.target))
}

#[derive(Serialize)]
struct ReportLine<'a> {
    instance: String,
    spec: &'a antimagic::FamilySpec,
    #[serde(flatten)]
    outcome: &'a Outcome,
}

fn cmd_sweep(a: &SweepArgs, seed: u64, run: &mut Run) -> Result<String, Failure> {
    if a.k_min == 0 || a.k_min > a.k_max {
        return Err(usage(format!("empty k range {}..={}", a.k_min, a.k_max)));
    }
    let tags: Vec<FamilyTag> = if a.family.eq_ignore_ascii_case("all") {
        FamilyTag::ALL.to_vec()
    } else {
        vec![a.family.parse().map_err(usage)?]
    };
    let specs: Vec<_> = tags
        .iter()
        .flat_map(|&t| (a.k_min..=a.k_max).flat_map(move |k| enumerate(t, k)))
        .collect();
    let outcomes: Vec<Outcome> = specs.par_iter().map(|s| run_instance(s, seed)).collect();

    let mut table: BTreeMap<usize, [usize; 4]> = BTreeMap::new();
    for (s, o) in specs.iter().zip(&outcomes) {
        let pos = tags.iter().position(|t| *t == s.tag()).unwrap();
        let slot = match o {
            Outcome::Pass { .. } => 0,
            Outcome::Excluded { .. } => 1,
            Outcome::Skipped { .. } => 2,
            Outcome::Fail { .. } => 3,
        };
        table.entry(pos).or_default()[slot] += 1;
    }
    println!("{:<7} {:>7} {:>9} {:>8} {:>5}", "family", "pass", "excluded", "skipped", "fail");
    for (pos, [p, e, s, f]) in &table {
        println!("{:<7} {p:>7} {e:>9} {s:>8} {f:>5}", tags[*pos].as_str());
    }
    if let Some(path) = &a.report {
        let mut lines = String::new();
        for (s, o) in specs.iter().zip(&outcomes) {
            let line = ReportLine {
                instance: s.to_string(),
                spec: s,
                outcome: o,
            };
            lines += &serde_json::to_string(&line).expect("report lines serialize");
            lines.push('\n');
        }
        std::fs::write(path, lines).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        run.manifest.outputs.push(path.display().to_string());
    }
    let [p, e, s, f] = table.values().fold([0; 4], |acc, c| std::array::from_fn(|i| acc[i] + c[i]));
    if let Some((spec, Outcome::Fail { reason })) = specs.iter().zip(&outcomes).find(|(_, o)| o.is_fail()) {
        return Err(Failure::Invariant(format!("{f} failures; first: {spec}: {reason}")));
    }
    Ok(format!("pass: {p} pass, {e} excluded, {s} skipped"))
}

fn cmd_solve(a: &SolveArgs, run: &mut Run) -> Result<String, Failure> {
    let (g, incumbent) = match (&a.input, &a.graph) {
        (Some(path), _) => {
            let text = run.manifest.read_input(path)?;
            let (g, f, _) = from_json(&text).map_err(usage)?;
            (g, f)
        }
        (None, Some(name)) => (
            small::named(name).ok_or_else(|| usage(format!("unknown graph {name:?}")))?,
            None,
        ),
        (None, None) => return Err(usage("give --input or --graph")),
    };
    let cfg = SearchConfig {
        max_edges: a.max_edges,
        target_colors: a.target,
        symmetry_pruning: !a.no_symmetry,
        time_budget: a.time_limit.map(Duration::from_secs_f64),
        node_budget: a.node_budget.or(SearchConfig::default().node_budget),
    };
    let r = solve_with_incumbent(&g, &cfg, incumbent.as_ref()).map_err(|e| match e {
        SolveError::K2Component(_) => usage(format!("rejected: {e}")),
        e => usage(e),
    })?;
    let name = a
        .input
        .as_deref()
        .and_then(Path::file_stem)
        .map(|s| s.to_string_lossy().into_owned())
        .or_else(|| a.graph.clone())
        .unwrap_or_default();
    run.emit(&format!("solve-{}.json", slug(&name)), &json(&r))?;
    let chi = r.chi_la.map_or("none".into(), |c| c.to_string());
    eprintln!("chi_la = {chi} ({:?}, lower bound {}, {} nodes)", r.status, r.lower_bound, r.nodes);
    Ok(format!("chi_la={chi} {:?}", r.status))
}

fn cmd_certify(a: &CertifyArgs, run: &mut Run) -> Result<String, Failure> {
    let text = run.manifest.read_input(&a.input)?;
    let (g, f, inst) = from_json(&text).map_err(usage)?;
    let f = f.ok_or_else(|| usage(format!("{} carries no labels", a.input.display())))?;
    let expected = match a.expect_palette.as_deref() {
        None => None,
        Some("auto") => Some(
            inst.as_ref()
                .map(|i| i.palette())
                .ok_or_else(|| usage("--expect-palette auto needs an instance in the document"))?,
        ),
        Some(p) => Some(parse_palette(p)?),
    };
    let cert = certify(&g, &f, expected.as_deref());
    let name = a.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    run.emit(&format!("{}-certificate.json", slug(&name)), &json(&cert))?;
    if let Some(problem) = cert.first_failure() {
        return Err(Failure::Invariant(problem));
    }
    if let Some(i) = inst.as_ref().filter(|i| !i.expected_census.is_empty()) {
        if degree_census(&g) != i.expected_census {
            return Err(Failure::Invariant("degree census differs from the instance".into()));
        }
    }
    eprintln!("certified: {} colors {:?}", cert.color_count, cert.palette);
    Ok(format!("pass: {} colors", cert.color_count))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

fn ext(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Csv => "csv",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let params = serde_json::to_value(&cli.command).expect("arguments serialize");
    let (name, params) = match params {
        serde_json::Value::Object(m) if m.len() == 1 => m.into_iter().next().unwrap(),
        other => ("run".to_string(), other),
    };
    let mut params = params;
    if let serde_json::Value::Object(m) = &mut params {
        m.insert("seed".into(), cli.seed.into());
        if let Some(f) = cli.format {
            m.insert("format".into(), serde_json::to_value(f).unwrap());
        }
    }
    let mut run = Run {
        out: cli.out.as_deref(),
        manifest: RunManifest::new(&name, params),
    };
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a, cli.format.unwrap_or(Format::Csv), &mut run),
        Command::Build(a) => cmd_build(a, cli.format.unwrap_or(Format::Json), cli.seed, &mut run),
        Command::Partition(a) => cmd_partition(a, cli.format.unwrap_or(Format::Csv), &mut run),
        Command::Sweep(a) => cmd_sweep(a, cli.seed, &mut run),
        Command::Solve(a) => cmd_solve(a, &mut run),
        Command::Certify(a) => cmd_certify(a, &mut run),
    };
    let code = match &result {
        Ok(outcome) => {
            run.manifest.outcome = outcome.clone();
            0
        }
        Err(Failure::Invariant(why)) => {
            eprintln!("error: {why}");
            run.manifest.outcome = format!("fail: {why}");
            1
        }
        Err(Failure::Usage(why)) => {
            eprintln!("error: {why}");
            run.manifest.outcome = format!("error: {why}");
            2
        }
    };
    if let Err(e) = run.manifest.record(cli.out.as_deref()) {
        eprintln!("error: manifest: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
