//! Instance files.
//!
//! ```json
//! {
//!   "graph": { "n": 3, "edges": [[1, 2], [2, 3]] },
//!   "payoffs": {
//!     "default": [[2.1, 0], [0, 1]],
//!     "overrides": { "3": [[3, 0], [0, 2]] }
//!   }
//! }
//! ```
//!
//! Vertices are 1-based. Matrices are `[[b_CC, b_CD], [b_DC, b_DD]]`.
//! `default` may be omitted only if `overrides` names every vertex. Unknown
//! keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{EgnInstance, PayoffMatrix};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub graph: GraphSection,
    pub payoffs: PayoffSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<PayoffMatrix>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, PayoffMatrix>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<EgnInstance> {
        let edges: Vec<(usize, usize)> = self.graph.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = Graph::from_edge_list(self.graph.n, &edges).map_err(|e| Error::Instance(format!("graph: {e}")))?;
        let n = graph.n();
        let mut payoffs: Vec<Option<PayoffMatrix>> = vec![self.payoffs.default; n];
        for (key, b) in self.payoffs.overrides {
            let v: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::Instance(format!("payoffs.overrides: key {key:?} is not a vertex number")))?;
            if v == 0 || v > n {
                return Err(Error::Instance(format!(
                    "payoffs.overrides: vertex {v} is out of range 1..={n}"
                )));
            }
            payoffs[v - 1] = Some(b);
        }
        let payoffs = payoffs
            .into_iter()
            .enumerate()
            .map(|(v, b)| {
                b.ok_or_else(|| {
                    Error::Instance(format!(
                        "payoffs: vertex {} has no matrix and there is no default",
                        v + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        EgnInstance::new(graph, payoffs)
    }

    /// Writes the most common matrix as the default and the rest as overrides.
    pub fn from_instance(inst: &EgnInstance) -> Self {
        let g = inst.graph();
        let payoffs = inst.payoffs();
        let default = payoffs
            .iter()
            .max_by_key(|b| payoffs.iter().filter(|o| o == b).count())
            .copied();
        let overrides = payoffs
            .iter()
            .enumerate()
            .filter(|(_, b)| Some(**b) != default)
            .map(|(v, b)| ((v + 1).to_string(), *b))
            .collect();
        InstanceFile {
            graph: GraphSection {
                n: g.n(),
                edges: g.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
            },
            payoffs: PayoffSection { default, overrides },
        }
    }
}

pub fn parse_instance(json: &str) -> Result<EgnInstance> {
    let file: InstanceFile = serde_json::from_str(json)?;
    file.into_instance()
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<EgnInstance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn instance_to_json(inst: &EgnInstance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("plain data serializes")
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    Graph::parse_edge_list(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let inst = parse_instance(
            r#"{"graph": {"n": 3, "edges": [[1,2],[2,3]]},
                "payoffs": {"default": [[2.1,0],[0,1]], "overrides": {"3": [[3,0],[0,2]]}}}"#,
        )
        .unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.payoff(2), &PayoffMatrix::new(3.0, 0.0, 0.0, 2.0));
        assert_eq!(inst.payoff(0), &PayoffMatrix::new(2.1, 0.0, 0.0, 1.0));
        assert_eq!(parse_instance(&instance_to_json(&inst)).unwrap(), inst);
    }

    #[test]
    fn rejects_bad_files() {
        let cases = [
            r#"{"graph": {"n": 2, "edges": [[0,1]]}, "payoffs": {"default": [[1,0],[0,1]]}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]]}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]]}, "payoffs": {"default": [[1,0],[0,1]]}, "extra": 1}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]], "weights": []}, "payoffs": {"default": [[1,0],[0,1]]}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]]}, "payoffs": {"overrides": {"1": [[1,0],[0,1]]}}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]]}, "payoffs": {"default": [[1,0],[0,1]], "overrides": {"x": [[1,0],[0,1]]}}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]]}, "payoffs": {"default": [[1,0],[0,1]], "overrides": {"3": [[1,0],[0,1]]}}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,1]]}, "payoffs": {"default": [[1,0],[0,1]]}}"#,
            r#"{"graph": {"n": 2, "edges": [[1,2]]}, "payoffs": {"default": [[1,0,3],[0,1]]}}"#,
        ];
        for json in cases {
            assert!(parse_instance(json).is_err(), "accepted {json}");
        }
    }

    #[test]
    fn overrides_can_replace_default() {
        let inst = parse_instance(
            r#"{"graph": {"n": 2, "edges": [[1,2]]},
                "payoffs": {"overrides": {"1": [[1,0],[0,1]], "2": [[0,1],[1,0]]}}}"#,
        )
        .unwrap();
        assert_eq!(inst.payoff(1), &PayoffMatrix::new(0.0, 1.0, 1.0, 0.0));
    }
}
