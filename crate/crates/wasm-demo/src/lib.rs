//! Browser bindings: generate a family member, evaluate the degree
//! conditions, and search for a Hamilton cycle. Every call returns JSON.

use dicycle::conditions::Condition;
use dicycle::constructions::{generate, Family, FamilyParams};
use dicycle::solver::has_hamilton_cycle;
use dicycle::text::{parse_text, to_text};
use dicycle::{parse_rational, ApproxParams, Digraph, SolveBudget};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// The demo never runs the DP past this size, to keep the page responsive.
const DEMO_MAX_N: usize = 20;

fn graph_json(g: &Digraph) -> Value {
    json!({"n": g.n(), "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(), "text": to_text(g)})
}

pub fn generate_json(family: &str, n: usize, k: Option<usize>, alpha: Option<String>) -> Result<String, String> {
    let family: Family = family.parse().map_err(|e: dicycle::Error| e.to_string())?;
    if n > 200 {
        return Err(format!("n = {n} is too large for the demo"));
    }
    let alpha = alpha
        .map(|a| parse_rational(&a))
        .transpose()
        .map_err(|e| e.to_string())?;
    let (g, spec, expected) = generate(family, FamilyParams { n, k, alpha }).map_err(|e| e.to_string())?;
    Ok(json!({"graph": graph_json(&g), "spec": spec, "expected": expected}).to_string())
}

pub fn check_conditions_json(text: &str, eta: Option<String>) -> Result<String, String> {
    let g = parse_text(text).map_err(|e| e.to_string())?;
    let params = eta
        .filter(|e| !e.trim().is_empty())
        .map(|e| parse_rational(&e).and_then(ApproxParams::new))
        .transpose()
        .map_err(|e| e.to_string())?;
    let symmetric = g.edges().all(|(u, v)| g.has_edge(v, u));
    let mut reports = serde_json::Map::new();
    for c in Condition::ALL {
        if (c.needs_eta() && params.is_none()) || (c == Condition::Chvatal && !symmetric) {
            continue;
        }
        let rep = c.evaluate(&g, params).map_err(|e| e.to_string())?;
        reports.insert(c.name().into(), serde_json::to_value(rep).map_err(|e| e.to_string())?);
    }
    Ok(json!({
        "degree_sequences": g.degree_sequences(),
        "strongly_connected": g.is_strongly_connected(),
        "conditions": reports,
    })
    .to_string())
}

pub fn solve_hamilton_json(text: &str) -> Result<String, String> {
    let g = parse_text(text).map_err(|e| e.to_string())?;
    if g.n() > DEMO_MAX_N {
        return Err(format!(
            "the demo solves up to n = {DEMO_MAX_N}; use the CLI for larger digraphs"
        ));
    }
    let res = has_hamilton_cycle(&g, &SolveBudget::new(DEMO_MAX_N, 2_000_000));
    Ok(json!({"search": res}).to_string())
}

#[wasm_bindgen]
pub fn generate_family(family: &str, n: usize, k: Option<usize>, alpha: Option<String>) -> Result<String, JsValue> {
    generate_json(family, n, k, alpha).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn check_conditions(text: &str, eta: Option<String>) -> Result<String, JsValue> {
    check_conditions_json(text, eta).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_hamilton(text: &str) -> Result<String, JsValue> {
    solve_hamilton_json(text).map_err(|e| JsValue::from_str(&e))
}
