//! graph6, edge-list, DOT and JSON serialisation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Vertex};

/// Encodes a graph in graph6. Vertices are taken in increasing id order and
/// renumbered `0..n`.
pub fn to_graph6(g: &Graph) -> String {
    let (compact, _) = g.compact();
    let n = compact.order();
    let mut out = String::new();
    if n < 63 {
        out.push((n as u8 + 63) as char);
    } else if n < 258_048 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(compact.has_edge(i as Vertex, j as Vertex));
        }
    }
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                x |= 1 << (5 - k);
            }
        }
        out.push((x + 63) as char);
    }
    out
}

pub fn from_graph6(line: &str) -> Result<Graph> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes: Vec<u8> = line.bytes().collect();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {b}")));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = bytes[2..8].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
        (n, &bytes[8..])
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {need} for n={n}",
            rest.len()
        )));
    }
    let mut g = Graph::with_vertices(0..n as Vertex);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i as Vertex, j as Vertex);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// `n m` header followed by one `u v` line per edge, vertices renumbered
/// `0..n` in id order.
pub fn to_edge_list(g: &Graph) -> String {
    let (compact, _) = g.compact();
    let mut out = format!("{} {}\n", compact.order(), compact.size());
    for (u, v) in compact.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
    let nums = parse_pair(header)?;
    let (n, m) = (nums.0 as usize, nums.1 as usize);
    let mut g = Graph::with_vertices(0..n as Vertex);
    let mut count = 0;
    for line in lines {
        let (u, v) = parse_pair(line)?;
        if u as usize >= n || v as usize >= n {
            return Err(Error::Parse(format!("edge {u} {v} outside 0..{n}")));
        }
        g.try_add_edge(u, v)?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse(format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Result<(Vertex, Vertex)> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected two integers, got `{line}`")));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{}`", parts[0])))?;
    let b = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{}`", parts[1])))?;
    Ok((a, b))
}

/// DOT output: vertex colour as `label`, edge colour as `style`.
pub fn to_dot(g: &ColoredGraph) -> String {
    const STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];
    let mut out = String::from("graph G {\n");
    for (&v, &c) in g.vertex_colors() {
        let _ = writeln!(out, "  {v} [label=\"{v}:{c}\"];");
    }
    for (&(u, v), &c) in g.edge_colors() {
        let style = STYLES.get(c as usize).copied().unwrap_or("solid");
        let _ = writeln!(out, "  {u} -- {v} [style={style}, color={c}];");
    }
    out.push_str("}\n");
    out
}

pub fn to_json(g: &ColoredGraph) -> String {
    serde_json::to_string_pretty(g).expect("coloured graphs always serialise")
}

pub fn from_json(text: &str) -> Result<ColoredGraph> {
    Ok(serde_json::from_str(text)?)
}

/// Graph input by sniffing the format: JSON object, edge list, or graph6.
pub fn read_graph(text: &str) -> Result<ColoredGraph> {
    let t = text.trim_start();
    if t.starts_with('{') {
        return from_json(t);
    }
    let first = t.lines().next().unwrap_or("");
    if first.split_whitespace().count() == 2 {
        return from_edge_list(t).map(ColoredGraph::from);
    }
    from_graph6(first).map(ColoredGraph::from)
}

/// Every graph in a file holding one graph6 string per line.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(from_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, wheel};

    #[test]
    fn graph6_known_strings() {
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&cycle(5)), "Dhc");
        assert_eq!(from_graph6("C~").unwrap(), complete(4));
    }

    #[test]
    fn graph6_large_header() {
        let g = cycle(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = wheel(5);
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(from_edge_list("3 2\n0 1\n").is_err());
    }

    #[test]
    fn dot_mentions_colours() {
        let mut g = ColoredGraph::empty(2, 3).unwrap();
        g.add_vertex(0, 2).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        let dot = to_dot(&g);
        assert!(dot.contains("label=\"0:2\""));
        assert!(dot.contains("style=dashed"));
    }

    #[test]
    fn sniffing() {
        assert_eq!(read_graph("C~").unwrap().graph(), &complete(4));
        assert_eq!(read_graph("2 1\n0 1\n").unwrap().graph().size(), 1);
    }
}
