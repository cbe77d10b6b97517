use std::io::BufRead;

use districts_core::{GraphBuilder, RoadGraph};

use super::{field, syntax, ParseError};

/// Reads a DIMACS shortest-path graph (`p sp n m`, `a u v w`) and, when
/// given, its coordinate file (`v id x y`).
///
/// Arcs are symmetrized and duplicates collapse to the minimum weight. All
/// `n` declared nodes exist in the result, including isolated ones.
pub fn parse_dimacs(gr: impl BufRead, co: Option<impl BufRead>) -> Result<RoadGraph, ParseError> {
    let mut b = GraphBuilder::new();
    let mut n: Option<u64> = None;
    for (i, line) in gr.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let mut tok = line.split_ascii_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(lineno, "duplicate problem line"));
                }
                if tok.next() != Some("sp") {
                    return Err(syntax(lineno, "malformed header, expected `p sp <n> <m>`"));
                }
                let count: u64 = field(tok.next(), lineno, "node count")?;
                let _arcs: u64 = field(tok.next(), lineno, "arc count")?;
                if tok.next().is_some() {
                    return Err(syntax(lineno, "malformed header, trailing fields"));
                }
                for id in 1..=count {
                    b.add_node(id);
                }
                n = Some(count);
            }
            Some("a") => {
                let n = n.ok_or_else(|| syntax(lineno, "arc before problem line"))?;
                let u: u64 = field(tok.next(), lineno, "arc tail")?;
                let v: u64 = field(tok.next(), lineno, "arc head")?;
                let w: f64 = field(tok.next(), lineno, "arc weight")?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(syntax(lineno, format!("arc references node {id}, valid ids are 1..={n}")));
                    }
                }
                b.add_edge(u, v, w)
                    .map_err(|source| ParseError::Invalid { line: lineno, source })?;
            }
            Some(other) => return Err(syntax(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| ParseError::Content("missing problem line `p sp <n> <m>`".into()))?;

    if let Some(co) = co {
        read_coords(co, n, &mut b).map_err(|e| ParseError::Coordinates(Box::new(e)))?;
    }
    Ok(b.build()?)
}

fn read_coords(co: impl BufRead, n: u64, b: &mut GraphBuilder) -> Result<(), ParseError> {
    for (i, line) in co.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let mut tok = line.split_ascii_whitespace();
        match tok.next() {
            None | Some("c") | Some("p") => {}
            Some("v") => {
                let id: u64 = field(tok.next(), lineno, "node id")?;
                let x: f64 = field(tok.next(), lineno, "x coordinate")?;
                let y: f64 = field(tok.next(), lineno, "y coordinate")?;
                if id == 0 || id > n {
                    return Err(syntax(lineno, format!("coordinate for unknown node {id}")));
                }
                b.set_coord(id, x, y)
                    .map_err(|source| ParseError::Invalid { line: lineno, source })?;
            }
            Some(other) => return Err(syntax(lineno, format!("unknown line type {other:?}"))),
        }
    }
    Ok(())
}
