use std::io::{self, BufRead, Write};

use districts_core::{GraphBuilder, GraphError, RoadGraph};

use super::{field, syntax, ParseError};

/// Reads `u<TAB>v<TAB>w` edge lines. `#node u x y` sets coordinates and
/// `#node u` declares a node without them; other `#` lines are comments.
/// Any run of whitespace separates fields.
pub fn parse_tsv(input: impl BufRead) -> Result<RoadGraph, ParseError> {
    let mut b = GraphBuilder::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let invalid = |source| ParseError::Invalid { line: lineno, source };
        if let Some(rest) = trimmed.strip_prefix("#node") {
            let mut tok = rest.split_ascii_whitespace();
            let id: u64 = field(tok.next(), lineno, "node id")?;
            b.add_node(id);
            match tok.next() {
                None => {}
                Some(x) => {
                    let x: f64 = field(Some(x), lineno, "x coordinate")?;
                    let y: f64 = field(tok.next(), lineno, "y coordinate")?;
                    b.set_coord(id, x, y).map_err(invalid)?;
                }
            }
            if tok.next().is_some() {
                return Err(syntax(lineno, "trailing fields after node coordinates"));
            }
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let mut tok = trimmed.split_ascii_whitespace();
        let u: u64 = field(tok.next(), lineno, "source node")?;
        let v: u64 = field(tok.next(), lineno, "target node")?;
        let w: f64 = field(tok.next(), lineno, "weight")?;
        if tok.next().is_some() {
            return Err(syntax(lineno, "trailing fields after weight"));
        }
        b.add_edge(u, v, w).map_err(invalid)?;
    }
    b.build().map_err(|e| match e {
        GraphError::Empty => ParseError::Content("empty graph".into()),
        other => other.into(),
    })
}

/// Writes a graph so that [`parse_tsv`] reads back an identical graph.
pub fn write_tsv(g: &RoadGraph, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "# nodes {} edges {}", g.node_count(), g.edge_count())?;
    for u in 0..g.node_count() {
        match g.coords() {
            Some(c) => writeln!(out, "#node\t{}\t{}\t{}", g.original_id(u), c[u].0, c[u].1)?,
            None => writeln!(out, "#node\t{}", g.original_id(u))?,
        }
    }
    for (u, v, w) in g.edges() {
        writeln!(out, "{}\t{}\t{}", g.original_id(u), g.original_id(v), w)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use districts_core::grid::grid_graph;
    use proptest::prelude::*;

    #[test]
    fn path_p3() {
        let g = parse_tsv("1 2 1.0\n2 3 1.0\n".as_bytes()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.coords().is_none());
    }

    #[test]
    fn empty_and_self_loop_rejected() {
        assert!(matches!(parse_tsv("".as_bytes()), Err(ParseError::Content(_))));
        assert!(matches!(parse_tsv("# just a comment\n".as_bytes()), Err(ParseError::Content(_))));
        match parse_tsv("1\t2\t1\n1\t1\t2.0\n".as_bytes()) {
            Err(ParseError::Invalid { line: 2, source: GraphError::SelfLoop { node: 1 } }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_tsv("1 2 0\n".as_bytes()), Err(ParseError::Invalid { line: 1, .. })));
        assert!(matches!(parse_tsv("1 2\n".as_bytes()), Err(ParseError::Syntax { line: 1, .. })));
    }

    #[test]
    fn coordinates() {
        let g = parse_tsv("#node 1 0.5 2\n#node 2 1 1\n1\t2\t3\n".as_bytes()).unwrap();
        assert_eq!(g.coords().unwrap(), &[(0.5, 2.0), (1.0, 1.0)]);
        assert!(parse_tsv("#node 1 0.5 2\n1\t2\t3\n".as_bytes()).is_err());
    }

    fn round_trip(g: &RoadGraph) -> RoadGraph {
        let mut buf = Vec::new();
        write_tsv(g, &mut buf).unwrap();
        parse_tsv(buf.as_slice()).unwrap()
    }

    #[test]
    fn isolated_nodes_survive_round_trip() {
        let g = parse_tsv("#node 9\n1 2 0.1\n".as_bytes()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(round_trip(&g), g);
    }

    proptest! {
        #[test]
        fn serialize_parse_identity(w in 1usize..8, h in 1usize..8, seed in any::<u64>(), with_coords in any::<bool>()) {
            let g = grid_graph(w, h, Some(seed));
            let g = if with_coords {
                g
            } else {
                let mut b = GraphBuilder::new();
                for u in 0..g.node_count() {
                    b.add_node(g.original_id(u) * 3 + 1);
                }
                for (u, v, wt) in g.edges() {
                    b.add_edge(g.original_id(u) * 3 + 1, g.original_id(v) * 3 + 1, wt / 7.0).unwrap();
                }
                b.build().unwrap()
            };
            prop_assert_eq!(round_trip(&g), g);
        }
    }
}
