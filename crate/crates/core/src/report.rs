//! Text, CSV, JSON and DOT renderings of classification results.

use std::fmt::Write as _;

use serde::Serialize;

use crate::equilibria::{ProfileClassification, PureProfile};
use crate::game::EgnInstance;
use crate::graph::Graph;

pub const COOPERATOR_COLOR: &str = "yellow";
pub const DEFECTOR_COLOR: &str = "red";

#[derive(Serialize)]
struct ClassificationJson<'a> {
    profile: String,
    #[serde(flatten)]
    classification: &'a ProfileClassification,
}

/// `{"profile": "110", "verdict": "not-NE", "vertices": [...]}`, with the
/// bitstring listing player 1 first.
pub fn classification_json(p: PureProfile, c: &ProfileClassification) -> serde_json::Value {
    serde_json::to_value(ClassificationJson {
        profile: p.to_string(),
        classification: c,
    })
    .expect("plain data serializes")
}

pub fn classification_text(inst: &EgnInstance, p: PureProfile, c: &ProfileClassification) -> String {
    let mut out = format!("profile {p}: {}\n", c.verdict);
    let _ = writeln!(
        out,
        "{:>6}  {:>8}  {:>12}  {:>3}  {:>3}  condition",
        "vertex", "status", "lambda", "N_C", "N_D"
    );
    for r in &c.vertices {
        let cond = r.condition.inequality();
        let class = inst.class(r.vertex - 1);
        let status = match r.status {
            crate::equilibria::Status::Strict => "strict",
            crate::equilibria::Status::Tight => "tight",
            crate::equilibria::Status::Violated => "VIOLATED",
        };
        let _ = writeln!(
            out,
            "{:>6}  {:>8}  {:>12.6}  {:>3}  {:>3}  {cond} ({class})",
            r.vertex, status, r.lambda, r.counts.n_c, r.counts.n_d
        );
    }
    out
}

/// `index,bitstring,verdict` rows.
pub fn summary_csv(rows: &[(PureProfile, ProfileClassification)]) -> String {
    let mut out = String::from("index,bitstring,verdict\n");
    for (p, c) in rows {
        let _ = writeln!(out, "{},{},{}", p.index(), p, c.verdict);
    }
    out
}

/// Undirected DOT graph with cooperators filled yellow and defectors red.
pub fn profile_dot(g: &Graph, p: PureProfile) -> String {
    let mut out = String::from("graph egn {\n  node [style=filled, shape=circle];\n");
    for v in 0..g.n() {
        let (color, strategy) = if p.cooperates(v) {
            (COOPERATOR_COLOR, "C")
        } else {
            (DEFECTOR_COLOR, "D")
        };
        let _ = writeln!(out, "  {} [fillcolor={color}, strategy={strategy}];", v + 1);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}
