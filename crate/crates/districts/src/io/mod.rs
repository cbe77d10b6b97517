//! Text formats: DIMACS and TSV graphs, assignments, center and quota lists.

mod assignment;
mod dimacs;
mod lists;
mod trace;
mod tsv;

use std::io;

use districts_core::GraphError;
use thiserror::Error;

pub use assignment::{
    read_assignment, read_assignment_inferring_centers, summarize, write_assignment, Summary,
    ASSIGNMENT_HEADER,
};
pub use dimacs::parse_dimacs;
pub use lists::{read_centers, read_quotas};
pub use trace::TraceWriter;
pub use tsv::{parse_tsv, write_tsv};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    /// A problem with the file as a whole rather than one line.
    #[error("{0}")]
    Content(String),
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// An error in the coordinate file that accompanies a graph.
    #[error("coordinates: {0}")]
    Coordinates(Box<ParseError>),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub(crate) fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub(crate) fn field<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} {token:?}")))
}
