//! Proof JSON and indented text rendering.
//!
//! JSON node: `{"rule": "Ax"|"/L"|"/R"|"\\L"|"\\R"|"-oR", "sequent": "...",
//! "split": [u, t]` (left rules) `| "insert": k` (`-oR`) `, "premises": [...]}`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{ProofTree, Rule};
use crate::error::SyntaxError;
use crate::sequent::parse_sequent;

#[derive(Debug, Error)]
pub enum ProofJsonError {
    #[error("invalid proof JSON: {0}")]
    Shape(String),
    #[error("invalid sequent in proof JSON: {0}")]
    Sequent(#[from] SyntaxError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn proof_to_json(t: &ProofTree) -> Value {
    let mut node = Map::new();
    node.insert("rule".into(), json!(t.rule.name()));
    node.insert("sequent".into(), json!(t.conclusion.to_string()));
    match t.rule {
        Rule::OverL { u, t } | Rule::UnderL { u, t } => {
            node.insert("split".into(), json!([u, t]));
        }
        Rule::LinImpR { insert } => {
            node.insert("insert".into(), json!(insert));
        }
        _ => {}
    }
    node.insert(
        "premises".into(),
        Value::Array(t.premises.iter().map(proof_to_json).collect()),
    );
    Value::Object(node)
}

pub fn proof_from_json(v: &Value) -> Result<ProofTree, ProofJsonError> {
    let shape = |msg: &str| ProofJsonError::Shape(msg.to_string());
    let obj = v
        .as_object()
        .ok_or_else(|| shape("node is not an object"))?;
    let name = obj
        .get("rule")
        .and_then(Value::as_str)
        .ok_or_else(|| shape("missing \"rule\""))?;
    let sequent = obj
        .get("sequent")
        .and_then(Value::as_str)
        .ok_or_else(|| shape("missing \"sequent\""))?;
    let index = |v: &Value| {
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| shape("expected a nonnegative integer"))
    };
    let split = || -> Result<(usize, usize), ProofJsonError> {
        match obj
            .get("split")
            .and_then(Value::as_array)
            .map(Vec::as_slice)
        {
            Some([u, t]) => Ok((index(u)?, index(t)?)),
            _ => Err(shape("left rule needs \"split\": [u, t]")),
        }
    };
    let rule = match name {
        "Ax" => Rule::Ax,
        "/R" => Rule::OverR,
        "\\R" => Rule::UnderR,
        "/L" => {
            let (u, t) = split()?;
            Rule::OverL { u, t }
        }
        "\\L" => {
            let (u, t) = split()?;
            Rule::UnderL { u, t }
        }
        "-oR" => {
            let insert = obj
                .get("insert")
                .ok_or_else(|| shape("-oR needs \"insert\""))?;
            Rule::LinImpR {
                insert: index(insert)?,
            }
        }
        other => return Err(ProofJsonError::Shape(format!("unknown rule {other:?}"))),
    };
    let premises = match obj.get("premises") {
        None => Vec::new(),
        Some(Value::Array(ps)) => ps.iter().map(proof_from_json).collect::<Result<_, _>>()?,
        Some(_) => return Err(shape("\"premises\" must be an array")),
    };
    Ok(ProofTree {
        rule,
        conclusion: parse_sequent(sequent)?,
        premises,
    })
}

fn label(rule: Rule) -> String {
    match rule {
        Rule::OverL { u, t } | Rule::UnderL { u, t } => format!("{} [{u},{t}]", rule.name()),
        Rule::LinImpR { insert } => format!("{} [{insert}]", rule.name()),
        _ => rule.name().to_string(),
    }
}

/// One node per line, premises indented under their conclusion, rule
/// labels right-aligned in a common column.
pub fn render_text(t: &ProofTree) -> String {
    let mut rows = Vec::new();
    collect_rows(t, 0, &mut rows);
    let left = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0);
    let right = rows.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, r) in rows {
        let pad = left - l.chars().count();
        out.push_str(&format!("{l}{}  {r:>right$}\n", " ".repeat(pad)));
    }
    out
}

fn collect_rows(t: &ProofTree, depth: usize, rows: &mut Vec<(String, String)>) {
    rows.push((
        format!("{}{}", "  ".repeat(depth), t.conclusion),
        label(t.rule),
    ));
    for p in &t.premises {
        collect_rows(p, depth + 1, rows);
    }
}
