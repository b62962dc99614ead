//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` with
//! 0-based vertex labels. Blank lines and lines starting with `#` are
//! ignored.

use std::fmt::Write as _;

use super::{Graph, GraphError};

pub fn read_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: header_line,
            message: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Parse {
            line,
            message: format!("expected two integers, found {:?}", text),
        });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| GraphError::Parse {
            line,
            message: format!("`{f}` is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.order(), g.size()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::complete_bipartite(2, 3);
        assert_eq!(read_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            read_edge_list("3 2\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            read_edge_list("3 1\n2 2\n"),
            Err(GraphError::SelfLoop(2))
        ));
        assert!(matches!(
            read_edge_list("3 2\n0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            read_edge_list("3 1\n0 x\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(read_edge_list(""), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = read_edge_list("# triangle\n3 3\n\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }
}
