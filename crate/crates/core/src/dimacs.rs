//! DIMACS-like graph exchange format with role annotations.
//!
//! ```text
//! c name K4*
//! p edge <V> <E>
//! c role <v> base <i>
//! c role <v> pendant <i> <t>
//! e <u> <v>
//! ```
//!
//! All indices on the wire are 1-based; in-memory indices are 0-based.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexRole};
use crate::vset::VertexSet;

/// Writes `g` in the format above, vertices and edges in ascending order.
pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "c name {}", g.name())?;
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for (v, role) in g.roles().iter().enumerate() {
        match role {
            VertexRole::Base { index } => writeln!(out, "c role {} base {}", v + 1, index + 1)?,
            VertexRole::Pendant { base, position } => {
                writeln!(out, "c role {} pendant {} {}", v + 1, base + 1, position)?
            }
        }
    }
    for u in 0..g.vertex_count() {
        for w in g.neighbors(u).iter() {
            if u < w {
                writeln!(out, "e {} {}", u + 1, w + 1)?;
            }
        }
    }
    Ok(())
}

/// Serializes `g` to a string.
pub fn to_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("output is ASCII")
}

/// Parses a graph written by [`write_graph`]. Unknown comment lines are
/// ignored; vertices without a role annotation default to `Base`.
pub fn read_graph<R: BufRead>(input: R) -> Result<Graph> {
    let mut name = String::from("dimacs");
    let mut header: Option<(usize, usize)> = None;
    let mut adjacency: Vec<VertexSet> = Vec::new();
    let mut roles: Vec<VertexRole> = Vec::new();
    let mut edge_lines = 0usize;

    for (lineno, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Io(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        let tag = tokens.next().unwrap();
        let parse_err = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        match tag {
            "c" => {
                let rest: Vec<&str> = tokens.collect();
                match rest.as_slice() {
                    ["name", n @ ..] if !n.is_empty() => name = n.join(" "),
                    ["role", v, "base", i] => {
                        let (v, i) = (parse_index(v, lineno)?, parse_index(i, lineno)?);
                        set_role(&mut roles, header, v, VertexRole::Base { index: i }, lineno)?;
                    }
                    ["role", v, "pendant", i, t] => {
                        let v = parse_index(v, lineno)?;
                        let i = parse_index(i, lineno)?;
                        let t: usize = t.parse().map_err(|_| parse_err("bad pendant position"))?;
                        if t == 0 {
                            return Err(parse_err("pendant position must be >= 1"));
                        }
                        set_role(
                            &mut roles,
                            header,
                            v,
                            VertexRole::Pendant {
                                base: i,
                                position: t,
                            },
                            lineno,
                        )?;
                    }
                    _ => {} // ordinary comment
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(parse_err("duplicate p line"));
                }
                let kind = tokens.next().ok_or_else(|| parse_err("missing format"))?;
                if kind != "edge" {
                    return Err(parse_err("expected `p edge`"));
                }
                let v: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad vertex count"))?;
                let e: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad edge count"))?;
                header = Some((v, e));
                adjacency = vec![VertexSet::empty(v); v];
                roles = (0..v).map(|i| VertexRole::Base { index: i }).collect();
            }
            "e" => {
                let (v_count, _) = header.ok_or_else(|| parse_err("e line before p line"))?;
                let u = parse_index(
                    tokens.next().ok_or_else(|| parse_err("missing endpoint"))?,
                    lineno,
                )?;
                let w = parse_index(
                    tokens.next().ok_or_else(|| parse_err("missing endpoint"))?,
                    lineno,
                )?;
                if u >= v_count || w >= v_count {
                    return Err(parse_err("edge endpoint out of range"));
                }
                if u == w {
                    return Err(parse_err("self-loop"));
                }
                adjacency[u].insert(w);
                adjacency[w].insert(u);
                edge_lines += 1;
            }
            _ => return Err(parse_err("unknown line tag")),
        }
    }

    let (v, e) = header.ok_or_else(|| Error::Parse("missing p line".into()))?;
    let _ = v;
    let actual: usize = adjacency.iter().map(|r| r.cardinality()).sum::<usize>() / 2;
    if actual != e && edge_lines != e {
        return Err(Error::Parse(format!(
            "header declares {e} edges, found {actual}"
        )));
    }
    Graph::from_parts(name, adjacency, roles)
}

/// Parses a graph from a string.
pub fn from_str(s: &str) -> Result<Graph> {
    read_graph(s.as_bytes())
}

fn parse_index(token: &str, lineno: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .map_err(|_| Error::Parse(format!("line {}: bad index `{token}`", lineno + 1)))?;
    if v == 0 {
        return Err(Error::Parse(format!(
            "line {}: indices are 1-based",
            lineno + 1
        )));
    }
    Ok(v - 1)
}

fn set_role(
    roles: &mut [VertexRole],
    header: Option<(usize, usize)>,
    v: usize,
    role: VertexRole,
    lineno: usize,
) -> Result<()> {
    let (count, _) = header
        .ok_or_else(|| Error::Parse(format!("line {}: role line before p line", lineno + 1)))?;
    if v >= count {
        return Err(Error::Parse(format!(
            "line {}: role vertex out of range",
            lineno + 1
        )));
    }
    roles[v] = role;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pendant_complete;

    #[test]
    fn round_trip_pendant_complete() {
        let g = pendant_complete(4).unwrap();
        let text = to_string(&g);
        assert!(text.contains("p edge 8 10"));
        assert!(text.contains("c role 5 pendant 1 1"));
        let h = from_str(&text).unwrap();
        assert_eq!(h.vertex_count(), g.vertex_count());
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.roles(), g.roles());
        assert_eq!(h.name(), "K4*");
        for u in 0..8 {
            for w in 0..8 {
                assert_eq!(g.is_edge(u, w), h.is_edge(u, w));
            }
        }
    }

    #[test]
    fn plain_graph_defaults_to_base_roles() {
        let g = from_str("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.base_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(from_str("").is_err());
        assert!(from_str("p edge 2 1\ne 1 1\n").is_err());
        assert!(from_str("p edge 2 1\ne 1 3\n").is_err());
        assert!(from_str("p edge 2 2\ne 1 2\n").is_err());
        assert!(from_str("e 1 2\np edge 2 1\n").is_err());
    }
}
