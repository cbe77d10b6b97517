use std::io::{self, BufRead, Write};

use districts_core::{Assignment, Instance, RoadGraph};
use serde::Serialize;

use super::{field, syntax, ParseError};

pub const ASSIGNMENT_HEADER: &str = "node_original_id\tcenter_original_id\tdistance";

/// One row per node in dense order, ids as in the source graph.
pub fn write_assignment(inst: &Instance<'_>, a: &Assignment, mut out: impl Write) -> io::Result<()> {
    let g = inst.graph();
    writeln!(out, "{ASSIGNMENT_HEADER}")?;
    for (u, (&c, &d)) in a.center_of.iter().zip(&a.dist).enumerate() {
        writeln!(
            out,
            "{}\t{}\t{}",
            g.original_id(u),
            g.original_id(inst.centers()[c]),
            d
        )?;
    }
    out.flush()
}

struct Row {
    center: usize,
    dist: f64,
    line: usize,
}

/// One row per dense node: the dense center node, distance, and source line.
fn read_rows(input: impl BufRead, g: &RoadGraph) -> Result<Vec<Row>, ParseError> {
    let n = g.node_count();
    let mut rows: Vec<Option<Row>> = (0..n).map(|_| None).collect();
    let mut lines = input.lines().enumerate();
    let header = lines.next().map(|(_, l)| l).transpose()?;
    if header.as_deref().map(str::trim_end) != Some(ASSIGNMENT_HEADER) {
        return Err(syntax(1, format!("expected header {ASSIGNMENT_HEADER:?}")));
    }
    for (i, line) in lines {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut tok = line.split('\t');
        let node: u64 = field(tok.next(), lineno, "node id")?;
        let center: u64 = field(tok.next(), lineno, "center id")?;
        let dist: f64 = field(tok.next(), lineno, "distance")?;
        let u = g
            .index_of(node)
            .ok_or_else(|| syntax(lineno, format!("node {node} is not in the graph")))?;
        let c = g
            .index_of(center)
            .ok_or_else(|| syntax(lineno, format!("center {center} is not in the graph")))?;
        if rows[u].replace(Row { center: c, dist, line: lineno }).is_some() {
            return Err(syntax(lineno, format!("node {node} assigned twice")));
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(u, r)| r.ok_or_else(|| ParseError::Content(format!("node {} has no assignment", g.original_id(u)))))
        .collect()
}

/// Reads an assignment against a known center list.
pub fn read_assignment(input: impl BufRead, g: &RoadGraph, centers: &[usize]) -> Result<Assignment, ParseError> {
    let mut index = vec![usize::MAX; g.node_count()];
    for (i, &c) in centers.iter().enumerate() {
        index[c] = i;
    }
    let rows = read_rows(input, g)?;
    let mut center_of = Vec::with_capacity(rows.len());
    let mut dist = Vec::with_capacity(rows.len());
    for (u, row) in rows.into_iter().enumerate() {
        if index[row.center] == usize::MAX {
            return Err(syntax(
                row.line,
                format!(
                    "node {} is assigned to {}, which is not a center",
                    g.original_id(u),
                    g.original_id(row.center)
                ),
            ));
        }
        center_of.push(index[row.center]);
        dist.push(row.dist);
    }
    Ok(Assignment { center_of, dist })
}

/// Reads an assignment and takes its centers to be the distinct center ids
/// it mentions, in ascending node order.
pub fn read_assignment_inferring_centers(
    input: impl BufRead,
    g: &RoadGraph,
) -> Result<(Vec<usize>, Assignment), ParseError> {
    let rows = read_rows(input, g)?;
    let mut centers: Vec<usize> = rows.iter().map(|r| r.center).collect();
    centers.sort_unstable();
    centers.dedup();
    let center_of = rows
        .iter()
        .map(|r| centers.binary_search(&r.center).expect("collected above"))
        .collect();
    let dist = rows.iter().map(|r| r.dist).collect();
    Ok((centers, Assignment { center_of, dist }))
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterSummary {
    pub center: u64,
    pub quota: usize,
    pub members: usize,
    pub max_distance: f64,
    pub mean_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    pub max_distance: f64,
    pub mean_distance: f64,
    pub centers: Vec<CenterSummary>,
}

pub fn summarize(inst: &Instance<'_>, a: &Assignment, algorithm: Option<&str>) -> Summary {
    let k = inst.center_count();
    let mut members = vec![0usize; k];
    let mut max = vec![0f64; k];
    let mut sum = vec![0f64; k];
    for (&c, &d) in a.center_of.iter().zip(&a.dist) {
        members[c] += 1;
        max[c] = max[c].max(d);
        sum[c] += d;
    }
    let n = a.center_of.len();
    let centers = (0..k)
        .map(|c| CenterSummary {
            center: inst.graph().original_id(inst.centers()[c]),
            quota: inst.quotas()[c],
            members: members[c],
            max_distance: max[c],
            mean_distance: if members[c] > 0 { sum[c] / members[c] as f64 } else { 0.0 },
        })
        .collect();
    Summary {
        n,
        m: inst.graph().edge_count(),
        k,
        algorithm: algorithm.map(str::to_owned),
        max_distance: a.dist.iter().copied().fold(0.0, f64::max),
        mean_distance: if n > 0 { a.dist.iter().sum::<f64>() / n as f64 } else { 0.0 },
        centers,
    }
}
