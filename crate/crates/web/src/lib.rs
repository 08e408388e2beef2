//! Browser demo: draw a pasted graph, find an exact optimum for a small one,
//! or sample a random graph. Every call returns a JSON string carrying the
//! numbers and an SVG rendering.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rectcross::crossings::{min_rectilinear_crossing, CrossingValue};
use rectcross::experiment::gnp;
use rectcross::geom::{format_rational, parse_rational};
use rectcross::graph::{format_graph, parse_graph, AnyGraph, Graph};
use rectcross::pipeline::{run_pipeline_with, CatalogCache, PipelineConfig};
use rectcross::svg::{render_svg, SvgOptions};

/// Largest graph the page accepts; keeps the tab responsive.
pub const MAX_VERTICES: usize = 400;

fn read(text: &str) -> Result<AnyGraph, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    if g.n() > MAX_VERTICES {
        return Err(format!("the demo is limited to {MAX_VERTICES} vertices"));
    }
    Ok(g)
}

fn plain(g: AnyGraph) -> Result<Graph, String> {
    match g {
        AnyGraph::Plain(g) => Ok(g),
        AnyGraph::Weighted(w) if w.is_unweighted() => Graph::new(w.n(), w.positive_edges()).map_err(|e| e.to_string()),
        AnyGraph::Weighted(_) => Err("weights are only supported by the exact search".into()),
    }
}

/// Runs the full pipeline. The reply is the result JSON plus an `svg` field.
pub fn draw_json(text: &str, epsilon: &str, seed: u64) -> Result<String, String> {
    let g = plain(read(text)?)?;
    let cfg = PipelineConfig {
        epsilon: parse_rational(epsilon).map_err(|e| e.to_string())?,
        seed,
        ..PipelineConfig::default()
    };
    let r = run_pipeline_with(&g, &cfg, &mut CatalogCache::default()).map_err(|e| e.to_string())?;
    let mut v = r.to_json();
    let opts = SvgOptions {
        partition: Some(&r.partition),
        ..SvgOptions::default()
    };
    v["svg"] = Value::String(render_svg(&r.drawing, &opts));
    Ok(v.to_string())
}

/// Exact minimum over the bundled catalogs (up to 8 vertices).
pub fn exact_json(text: &str) -> Result<String, String> {
    let g = read(text)?;
    let mut cache = CatalogCache::default();
    let cat = cache.get(g.n()).map_err(|e| e.to_string())?;
    let min = min_rectilinear_crossing(&g, cat).map_err(|e| e.to_string())?;
    let value = match &min.value {
        CrossingValue::Count(c) => json!(c),
        CrossingValue::Weighted(r) => json!(format_rational(r)),
    };
    Ok(json!({
        "n": g.n(),
        "crossing_count": value,
        "catalog_entries": cat.len(),
        "svg": render_svg(&min.drawing, &SvgOptions::default()),
    })
    .to_string())
}

/// A `G(n, p)` sample in the graph text format, ready for the text box.
pub fn random_graph_text(n: usize, p: &str, seed: u64) -> Result<String, String> {
    if n > MAX_VERTICES {
        return Err(format!("the demo is limited to {MAX_VERTICES} vertices"));
    }
    let p = parse_rational(p).map_err(|e| e.to_string())?;
    let g = gnp(n, &p, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| e.to_string())?;
    Ok(format_graph(&g.into()))
}

#[wasm_bindgen]
pub fn draw(text: &str, epsilon: &str, seed: u64) -> Result<String, JsError> {
    draw_json(text, epsilon, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn exact(text: &str) -> Result<String, JsError> {
    exact_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_graph(n: usize, p: &str, seed: u64) -> Result<String, JsError> {
    random_graph_text(n, p, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

    #[test]
    fn exact_k5() {
        let v: Value = serde_json::from_str(&exact_json(K5).unwrap()).unwrap();
        assert_eq!(v["crossing_count"], 1);
        assert!(v["svg"].as_str().unwrap().starts_with("<svg"));
    }

    #[test]
    fn random_graph_round_trips_through_draw() {
        let text = random_graph_text(30, "1/2", 7).unwrap();
        let v: Value = serde_json::from_str(&draw_json(&text, "1/4", 0).unwrap()).unwrap();
        assert_eq!(v["n"], 30);
        assert_eq!(v["diagnostics"]["bound_holds"], true);
    }

    #[test]
    fn errors_are_messages() {
        assert!(draw_json("2 1\n0 5\n", "1/4", 0).is_err());
        assert!(exact_json(&random_graph_text(12, "1/2", 0).unwrap()).is_err());
        assert!(random_graph_text(10, "2", 0).is_err());
    }
}
