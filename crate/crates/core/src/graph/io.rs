//! graph6 and edge-list codecs.

use super::Graph;
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Encodes `g` as a graph6 line (without header or trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes one graph6 line; an optional `>>graph6<<` header is accepted.
pub fn from_graph6(line: &str) -> Result<Graph> {
    let err = |msg: &str| Error::Parse { line: 1, msg: msg.to_string() };
    let s = line.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    if s.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("byte outside the graph6 range 63..=126"));
    }
    let (n, body) = match s {
        [] => return Err(err("empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err("truncated order field"));
            }
            (rest[..6].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated order field"));
            }
            (rest[..3].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize), &rest[3..])
        }
        [b, rest @ ..] => ((*b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(err(&format!("expected {} data bytes for order {n}, found {}", bits.div_ceil(6), body.len())));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
            idx += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Edge-list text: an `# n=<order>` header line, then one `u v` pair per line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("# n={}\n", g.order());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses an edge list. Lines starting with `#` are comments; a comment of
/// the form `# n=<order>` fixes the order, otherwise it is one more than the
/// largest label.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(v) = c.trim().strip_prefix("n=") {
                order = Some(v.trim().parse().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad order `{v}`") })?);
            }
            continue;
        }
        let mut it = line.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = it.next().ok_or(Error::Parse { line: i + 1, msg: "expected two vertex labels".into() })?;
            tok.parse().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad vertex label `{tok}`") })
        };
        let (u, v) = (next()?, next()?);
        if it.next().is_some() {
            return Err(Error::Parse { line: i + 1, msg: "more than two fields".into() });
        }
        edges.push((u, v));
    }
    let n = order.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

/// Parses graph text in either format: graph6 (one graph per line, detected
/// by a first byte in `63..=126`) or a single edge list.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let first = text.bytes().find(|b| !b.is_ascii_whitespace());
    match first {
        Some(b) if (63..=126).contains(&b) => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, l)| {
                from_graph6(l.trim()).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                    other => other,
                })
            })
            .collect(),
        _ => Ok(vec![from_edge_list(text)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Adjacency;

    #[test]
    fn known_graph6_strings() {
        assert_eq!(to_graph6(&Graph::complete(5)), "D~{");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::path(3)), "Bg");
        assert_eq!(from_graph6(">>graph6<<D~{").unwrap(), Graph::complete(5));
        let petersen = from_graph6("IheA@GUAo").unwrap();
        assert_eq!(petersen.order(), 10);
        assert_eq!(petersen.edge_count(), 15);
        assert_eq!(petersen.regular_degree(), Some(3));
    }

    #[test]
    fn large_order_round_trip() {
        let g = Graph::cycle(100);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_graph6("D~").is_err());
        assert!(from_graph6("A`").is_err()); // padding bit set
        assert!(from_edge_list("0 1 2").is_err());
        assert!(from_edge_list("0 0").is_err());
        assert!(from_edge_list("# n=2\n0 3").is_err());
    }

    #[test]
    fn edge_list_round_trip_and_detection() {
        let g = Graph::from_edges(6, [(0, 5), (1, 2)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(parse_graphs(&text).unwrap(), vec![g.clone()]);
        assert_eq!(parse_graphs("0 1\n1 2\n").unwrap(), vec![Graph::path(3)]);
        let both = format!("{}\n{}\n", to_graph6(&g), to_graph6(&Graph::complete(5)));
        assert_eq!(parse_graphs(&both).unwrap(), vec![g, Graph::complete(5)]);
    }
}
