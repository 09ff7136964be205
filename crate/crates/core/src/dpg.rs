//! The line-oriented DPG v1 text format.
//!
//! ```text
//! # comment lines start with '#'
//! DPG 1
//! vertices <V> facets <n>
//! <i>: <j1> <j2> ...
//! embed <i>: <a> <b> <c>
//! ```
//!
//! One line per vertex `i = 1..V-1` in increasing order lists its lower
//! neighbors; vertex 0 has no line. `embed` lines are optional and give a
//! cyclic neighbor order per vertex. The serializer writes neighbors in
//! descending order, so `serialize(parse(t))` is the normal form of `t`.

use std::fmt::Write as _;

use crate::error::{DpgError, DpgErrorKind};
use crate::graph::{PolytopeDigraph, VertexId};

/// A parsed file together with its comment lines.
#[derive(Clone, Debug)]
pub struct DpgDocument {
    pub graph: PolytopeDigraph,
    pub comments: Vec<String>,
}

impl DpgDocument {
    /// The vertex named by a `# start: <index>` comment, if any.
    pub fn start(&self) -> Option<VertexId> {
        self.comment_value("start")
            .and_then(|s| s.parse().ok())
            .map(VertexId)
    }

    /// Value of a `# key: value` comment.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.split_once(':')?;
            (k.trim() == key).then(|| v.trim())
        })
    }
}

pub fn parse_dpg(text: &str) -> Result<PolytopeDigraph, DpgError> {
    parse_dpg_document(text).map(|d| d.graph)
}

pub fn parse_dpg_document(text: &str) -> Result<DpgDocument, DpgError> {
    let err = |line: usize, kind: DpgErrorKind| DpgError { line, kind };
    let mut comments = Vec::new();
    let mut header_seen = false;
    let mut sizes: Option<(usize, usize)> = None;
    let mut down: Vec<Vec<usize>> = Vec::new();
    let mut next_vertex = 1usize;
    let mut embed: Vec<Option<[usize; 3]>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = raw.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let content = match trimmed.split_once('#') {
            Some((before, _)) => before.trim(),
            None => trimmed,
        };
        if content.is_empty() {
            continue;
        }
        let malformed = || err(line_no, DpgErrorKind::Malformed(content.to_string()));

        if !header_seen {
            let mut parts = content.split_whitespace();
            if parts.next() != Some("DPG") {
                return Err(err(line_no, DpgErrorKind::MissingHeader));
            }
            match (parts.next(), parts.next()) {
                (Some("1"), None) => header_seen = true,
                (Some(v), None) => {
                    return Err(err(line_no, DpgErrorKind::UnsupportedVersion(v.into())))
                }
                _ => return Err(malformed()),
            }
            continue;
        }

        if sizes.is_none() {
            let parts: Vec<&str> = content.split_whitespace().collect();
            match parts.as_slice() {
                ["vertices", v, "facets", n] => {
                    let v: usize = v.parse().map_err(|_| malformed())?;
                    let n: usize = n.parse().map_err(|_| malformed())?;
                    sizes = Some((v, n));
                    down = vec![Vec::new(); v];
                    embed = vec![None; v];
                }
                _ => return Err(malformed()),
            }
            continue;
        }
        let (vcount, _) = sizes.expect("sizes parsed");

        if let Some(rest) = content.strip_prefix("embed") {
            let (head, tail) = rest.split_once(':').ok_or_else(malformed)?;
            let v: usize = head.trim().parse().map_err(|_| malformed())?;
            if v >= vcount {
                return Err(err(line_no, DpgErrorKind::OutOfRange(v)));
            }
            let nbrs = parse_indices(tail).ok_or_else(malformed)?;
            if nbrs.len() != 3 {
                return Err(malformed());
            }
            for &w in &nbrs {
                if w >= vcount {
                    return Err(err(line_no, DpgErrorKind::OutOfRange(w)));
                }
            }
            if embed[v].is_some() {
                return Err(err(line_no, DpgErrorKind::OutOfOrder(v)));
            }
            embed[v] = Some([nbrs[0], nbrs[1], nbrs[2]]);
            continue;
        }

        let (head, tail) = content.split_once(':').ok_or_else(malformed)?;
        let v: usize = head.trim().parse().map_err(|_| malformed())?;
        if v >= vcount || v == 0 {
            return Err(err(line_no, DpgErrorKind::OutOfRange(v)));
        }
        if v != next_vertex {
            return Err(err(line_no, DpgErrorKind::OutOfOrder(v)));
        }
        next_vertex += 1;
        let nbrs = parse_indices(tail).ok_or_else(malformed)?;
        for (i, &w) in nbrs.iter().enumerate() {
            if w >= vcount {
                return Err(err(line_no, DpgErrorKind::OutOfRange(w)));
            }
            if w >= v {
                return Err(err(
                    line_no,
                    DpgErrorKind::NotLower {
                        vertex: v,
                        neighbor: w,
                    },
                ));
            }
            if nbrs[..i].contains(&w) {
                return Err(err(
                    line_no,
                    DpgErrorKind::DuplicateNeighbor {
                        vertex: v,
                        neighbor: w,
                    },
                ));
            }
        }
        down[v] = nbrs;
    }

    if !header_seen {
        return Err(err(last_line.max(1), DpgErrorKind::MissingHeader));
    }
    let (vcount, facets) =
        sizes.ok_or_else(|| err(last_line, DpgErrorKind::Malformed("missing size line".into())))?;
    if vcount > 0 && next_vertex < vcount {
        return Err(err(last_line, DpgErrorKind::MissingVertex(next_vertex)));
    }
    let mut graph = PolytopeDigraph::new(facets, down).expect("checked while parsing");
    if embed.iter().any(Option::is_some) {
        if let Some(v) = embed.iter().position(Option::is_none) {
            return Err(err(last_line, DpgErrorKind::MissingVertex(v)));
        }
        graph = graph.with_embedding(embed.into_iter().map(|e| e.expect("checked")).collect());
    }
    Ok(DpgDocument { graph, comments })
}

fn parse_indices(s: &str) -> Option<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

/// Normal-form serialization.
pub fn serialize_dpg(g: &PolytopeDigraph) -> String {
    serialize_dpg_with_comments(g, &[])
}

/// Serialization preceded by `# <comment>` lines.
pub fn serialize_dpg_with_comments(g: &PolytopeDigraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    out.push_str("DPG 1\n");
    let _ = writeln!(
        out,
        "vertices {} facets {}",
        g.vertex_count(),
        g.facet_count()
    );
    for v in 1..g.vertex_count() {
        let mut list = g.down(v).to_vec();
        list.sort_unstable_by(|a, b| b.cmp(a));
        out.push_str(&v.to_string());
        out.push(':');
        for w in list {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    if let Some(embedding) = g.embedding() {
        for (v, [a, b, c]) in embedding.iter().enumerate() {
            let _ = writeln!(out, "embed {v}: {a} {b} {c}");
        }
    }
    out
}
