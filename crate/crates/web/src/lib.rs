//! Browser bindings: build and certify an instance, print a table, solve a
//! small graph. Everything crosses the boundary as JSON or CSV text.

use antimagic::solver::small;
use antimagic::{build_seeded, from_json, solve_with_incumbent, table, FamilySpec, GraphDoc, SearchConfig, TableKind};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest instance the page will draw; larger ones still certify.
pub const MAX_EDGES_DRAWN: usize = 1200;

#[derive(Serialize)]
struct Built {
    name: String,
    drawable: bool,
    doc: GraphDoc,
}

/// `spec` is a family spec in its JSON form, e.g. `{"family":"gn","n":30,"indices":[1,2,4]}`.
pub fn build_json(spec: &str, seed: u64) -> Result<String, String> {
    let spec: FamilySpec = serde_json::from_str(spec).map_err(|e| format!("spec: {e}"))?;
    let b = build_seeded(&spec, seed).map_err(|e| format!("{spec}: {e}"))?;
    let out = Built {
        name: spec.to_string(),
        drawable: b.graph.size() <= MAX_EDGES_DRAWN,
        doc: GraphDoc::from_built(&b),
    };
    Ok(serde_json::to_string(&out).expect("documents serialize"))
}

pub fn table_csv(kind: &str, k: u32) -> Result<String, String> {
    let kind = match kind {
        "m1" => TableKind::M1,
        "pt" => TableKind::Pt,
        "m3" => TableKind::M3,
        other => return Err(format!("unknown table {other:?}")),
    };
    table(kind, k).map(|t| t.to_csv()).map_err(|e| e.to_string())
}

/// `graph` is a name (`fb1`, `k3`, `p4`, `c5`) or a graph document; labels
/// in a document seed the search.
pub fn solve_json(graph: &str, max_edges: usize) -> Result<String, String> {
    let (g, incumbent) = match small::named(graph.trim()) {
        Some(g) => (g, None),
        None => {
            let (g, f, _) = from_json(graph).map_err(|e| format!("not a graph name or document: {e}"))?;
            (g, f)
        }
    };
    let cfg = SearchConfig {
        max_edges: max_edges.min(12),
        // no clock on wasm32-unknown-unknown, so nodes are the only budget
        time_budget: None,
        node_budget: Some(50_000_000),
        ..SearchConfig::default()
    };
    let r = solve_with_incumbent(&g, &cfg, incumbent.as_ref()).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&r).expect("results serialize"))
}

#[wasm_bindgen(start)]
pub fn start() {
    console_error_panic_hook::set_once();
}

#[wasm_bindgen(js_name = build)]
pub fn build_js(spec: &str, seed: u32) -> Result<String, JsError> {
    build_json(spec, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = table)]
pub fn table_js(kind: &str, k: u32) -> Result<String, JsError> {
    table_csv(kind, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(graph: &str, max_edges: u32) -> Result<String, JsError> {
    solve_json(graph, max_edges as usize).map_err(|e| JsError::new(&e))
}
