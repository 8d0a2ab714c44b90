use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Dfao, DfaoMeta};
use crate::error::{Error, Result};
use crate::substitution::ParrySubstitution;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaoDocument {
    format_version: u32,
    substitution: ParrySubstitution,
    meta: DfaoMeta,
    alphabet_max_digit: u32,
    delta: Vec<Vec<usize>>,
    tau_ac: Vec<u32>,
    tau_b: Vec<u32>,
}

impl Dfao {
    pub fn to_json(&self) -> Result<String> {
        let doc = DfaoDocument {
            format_version: FORMAT_VERSION,
            substitution: self.substitution.clone(),
            meta: self.meta.clone(),
            alphabet_max_digit: self.alphabet_max_digit,
            delta: self.delta.clone(),
            tau_ac: self.tau_ac.clone(),
            tau_b: self.tau_b.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(json: &str) -> Result<Dfao> {
        let doc: DfaoDocument = serde_json::from_str(json)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::Syntax(format!(
                "unsupported format_version {}",
                doc.format_version
            )));
        }
        if doc.alphabet_max_digit != doc.substitution.alpha0() {
            return Err(Error::ShapeMismatch(format!(
                "alphabet_max_digit {} but the substitution has α₀ = {}",
                doc.alphabet_max_digit,
                doc.substitution.alpha0()
            )));
        }
        Dfao::from_parts(
            doc.substitution,
            doc.alphabet_max_digit,
            doc.delta,
            doc.tau_ac,
            doc.tau_b,
            doc.meta,
        )
    }

    /// Graphviz digraph. Parallel edges are merged into one edge whose label
    /// lists the digits.
    pub fn to_dot(&self) -> String {
        let mut s =
            String::from("digraph dfao {\n  rankdir=LR;\n  start [shape=point];\n  start -> s0;\n");
        for q in 0..self.num_states() {
            let shape = if Some(q) == self.meta.sink {
                "box"
            } else {
                "circle"
            };
            let _ = writeln!(
                s,
                "  s{q} [shape={shape}, label=\"{q} / τ={} τ_B={}\"];",
                self.tau_ac[q], self.tau_b[q]
            );
        }
        for (q, row) in self.delta.iter().enumerate() {
            let mut edges: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for (d, &t) in row.iter().enumerate() {
                edges.entry(t).or_default().push(d.to_string());
            }
            for (t, digits) in edges {
                let _ = writeln!(s, "  s{q} -> s{t} [label=\"{}\"];", digits.join(","));
            }
        }
        s.push_str("}\n");
        s
    }
}
