//! Text format for signed graphs.
//!
//! ```text
//! # comment
//! nodes 2
//! edge 1 link 1 2 +
//! edge 2 loop 2 -
//! edge 3 half 1
//! edge 4 loose
//! ```
//!
//! Node ids are 1-based. Edge ids must run 1, 2, ... in order. Blank lines
//! and `#` comment lines are ignored; anything else unknown is an error.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::signed_graph::{Edge, Sign, SignedGraph};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, format!("expected {what}, found `{tok}`")));
    }
    tok.parse()
        .map_err(|_| err(line, format!("{what} `{tok}` is out of range")))
}

fn node(line: usize, tok: &str, n_nodes: usize) -> Result<usize> {
    let v = number(line, tok, "node id")?;
    if v == 0 || v > n_nodes {
        return Err(err(line, format!("node id {v} is not in 1..{n_nodes}")));
    }
    Ok(v - 1)
}

fn sign(line: usize, tok: &str) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        _ => Err(err(line, format!("expected sign `+` or `-`, found `{tok}`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let mut n_nodes: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks[0] {
            "nodes" => {
                if n_nodes.is_some() {
                    return Err(err(line, "duplicate `nodes` line"));
                }
                let [_, n] = toks[..] else {
                    return Err(err(line, "expected `nodes <n>`"));
                };
                n_nodes = Some(number(line, n, "node count")?);
            }
            "edge" => {
                let n = n_nodes.ok_or_else(|| err(line, "`edge` before `nodes`"))?;
                if toks.len() < 3 {
                    return Err(err(line, "expected `edge <id> <kind> ...`"));
                }
                let id = number(line, toks[1], "edge id")?;
                if id != edges.len() + 1 {
                    return Err(err(line, format!("expected edge id {}, found {id}", edges.len() + 1)));
                }
                let edge = match (toks[2], &toks[3..]) {
                    ("link", [u, v, s]) => {
                        let (u, v) = (node(line, u, n)?, node(line, v, n)?);
                        if u == v {
                            return Err(err(line, "link endpoints must differ"));
                        }
                        Edge::Link(u, v, sign(line, s)?)
                    }
                    ("loop", [v, s]) => Edge::Loop(node(line, v, n)?, sign(line, s)?),
                    ("half", [v]) => Edge::Half(node(line, v, n)?),
                    ("loose", []) => Edge::Loose,
                    ("link" | "loop" | "half" | "loose", _) => {
                        return Err(err(line, format!("wrong number of fields for `{}`", toks[2])))
                    }
                    (kind, _) => return Err(err(line, format!("unknown edge kind `{kind}`"))),
                };
                edges.push(edge);
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = n_nodes.ok_or_else(|| err(text.lines().count().max(1), "missing `nodes` line"))?;
    SignedGraph::new(n, edges).map_err(|e| err(0, e.to_string()))
}

pub fn write_graph(g: &SignedGraph) -> String {
    let mut out = String::new();
    let s = |sign: Sign| if sign.is_negative() { '-' } else { '+' };
    writeln!(out, "nodes {}", g.n_nodes()).unwrap();
    for (i, e) in g.edges().iter().enumerate() {
        let id = i + 1;
        match *e {
            Edge::Link(u, v, sign) => writeln!(out, "edge {id} link {} {} {}", u + 1, v + 1, s(sign)),
            Edge::Loop(v, sign) => writeln!(out, "edge {id} loop {} {}", v + 1, s(sign)),
            Edge::Half(v) => writeln!(out, "edge {id} half {}", v + 1),
            Edge::Loose => writeln!(out, "edge {id} loose"),
        }
        .unwrap();
    }
    out
}
