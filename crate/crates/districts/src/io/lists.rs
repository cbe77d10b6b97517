use std::io::BufRead;

use districts_core::RoadGraph;

use super::{field, syntax, ParseError};

fn entries(input: impl BufRead) -> impl Iterator<Item = Result<(usize, String), ParseError>> {
    input.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.trim();
            (!t.is_empty() && !t.starts_with('#')).then(|| Ok((i + 1, t.to_owned())))
        }
    })
}

/// One original node id per line, in center order.
pub fn read_centers(input: impl BufRead, g: &RoadGraph) -> Result<Vec<usize>, ParseError> {
    entries(input)
        .map(|e| {
            let (line, text) = e?;
            let id: u64 = field(Some(&text), line, "center id")?;
            g.index_of(id)
                .ok_or_else(|| syntax(line, format!("center {id} is not a node of the graph")))
        })
        .collect()
}

/// One positive quota per line, in center order.
pub fn read_quotas(input: impl BufRead) -> Result<Vec<usize>, ParseError> {
    entries(input)
        .map(|e| {
            let (line, text) = e?;
            field(Some(&text), line, "quota")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use districts_core::grid::path_graph;

    #[test]
    fn centers_map_to_dense_ids() {
        let g = path_graph(5);
        assert_eq!(read_centers("# c\n4\n\n0\n".as_bytes(), &g).unwrap(), [4, 0]);
        assert!(matches!(
            read_centers("1\n7\n".as_bytes(), &g),
            Err(ParseError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn quotas() {
        assert_eq!(read_quotas("3\n2\n".as_bytes()).unwrap(), [3, 2]);
        assert!(read_quotas("3\n-2\n".as_bytes()).is_err());
    }
}
