//! District maps: SVG for viewing, GeoJSON for GIS tools.

use std::fmt::Write as _;

use districts_core::{Assignment, Instance};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("the graph has no node coordinates")]
    MissingCoordinates,
}

pub const DEFAULT_PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf", "#8c564b", "#e377c2",
    "#bcbd22", "#393b79",
];

pub const BOUNDARY_COLOR: &str = "#999999";

#[derive(Debug, Clone)]
pub struct SvgOptions {
    /// Width of the drawing in SVG user units; height follows the aspect ratio.
    pub width: f64,
    pub stroke_width: f64,
    pub marker_radius: f64,
    pub palette: Vec<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 1000.0,
            stroke_width: 1.0,
            marker_radius: 6.0,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl SvgOptions {
    pub fn color(&self, center: usize) -> &str {
        &self.palette[center % self.palette.len()]
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
    pad: f64,
}

impl Frame {
    fn fit(coords: &[(f64, f64)], opts: &SvgOptions) -> Frame {
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in coords {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        let span_x = max_x - min_x;
        let span_y = max_y - min_y;
        let span = span_x.max(span_y);
        let scale = if span > 0.0 { opts.width / span } else { 1.0 };
        Frame {
            min_x,
            max_y,
            scale,
            width: (span_x * scale).max(1.0),
            height: (span_y * scale).max(1.0),
            pad: opts.marker_radius + opts.stroke_width,
        }
    }

    // y grows downwards on screen
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.min_x) * self.scale, (self.max_y - y) * self.scale)
    }
}

fn push_segment(d: &mut String, a: (f64, f64), b: (f64, f64)) {
    if !d.is_empty() {
        d.push(' ');
    }
    write!(d, "M{:.2} {:.2}L{:.2} {:.2}", a.0, a.1, b.0, b.1).unwrap();
}

/// Draws every edge in its district's color when both endpoints share a
/// district and in gray otherwise, plus a marker per center. Districts are
/// drawn exactly as assigned, disconnected pieces included.
pub fn render_svg(inst: &Instance<'_>, a: &Assignment, opts: &SvgOptions) -> Result<String, RenderError> {
    let g = inst.graph();
    let coords = g.coords().ok_or(RenderError::MissingCoordinates)?;
    let frame = Frame::fit(coords, opts);
    let k = inst.center_count();

    let mut district_paths = vec![String::new(); k];
    let mut boundary = String::new();
    for (u, v, _) in g.edges() {
        let (p, q) = (frame.map(coords[u]), frame.map(coords[v]));
        let (cu, cv) = (a.center_of[u], a.center_of[v]);
        if cu == cv {
            push_segment(&mut district_paths[cu], p, q);
        } else {
            push_segment(&mut boundary, p, q);
        }
    }

    let mut svg = String::new();
    let pad = frame.pad;
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        -pad,
        -pad,
        frame.width + 2.0 * pad,
        frame.height + 2.0 * pad
    )
    .unwrap();
    writeln!(
        svg,
        r#"<g fill="none" stroke-width="{:.2}" stroke-linecap="round">"#,
        opts.stroke_width
    )
    .unwrap();
    for (c, d) in district_paths.iter().enumerate() {
        if !d.is_empty() {
            writeln!(svg, r#"<path class="district" data-center="{}" stroke="{}" d="{d}"/>"#, g.original_id(inst.centers()[c]), opts.color(c)).unwrap();
        }
    }
    if !boundary.is_empty() {
        writeln!(svg, r#"<path class="boundary" stroke="{BOUNDARY_COLOR}" d="{boundary}"/>"#).unwrap();
    }
    writeln!(svg, "</g>").unwrap();
    writeln!(svg, r##"<g stroke="#000000" stroke-width="{:.2}">"##, opts.stroke_width).unwrap();
    for (c, &node) in inst.centers().iter().enumerate() {
        let (x, y) = frame.map(coords[node]);
        writeln!(
            svg,
            r#"<circle class="center" data-center="{}" cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="{}"/>"#,
            g.original_id(node),
            opts.marker_radius,
            opts.color(c)
        )
        .unwrap();
    }
    writeln!(svg, "</g>").unwrap();
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// One Point per node carrying `{node, center, distance}` and one Point per
/// center carrying `{role: "center", center, quota}`. Ids are original ids.
/// Coordinates are multiplied by `coord_scale` (use `1e-6` for DIMACS
/// micro-degrees).
pub fn render_geojson(inst: &Instance<'_>, a: &Assignment, coord_scale: f64) -> Result<Value, RenderError> {
    let g = inst.graph();
    let coords = g.coords().ok_or(RenderError::MissingCoordinates)?;
    let point = |u: usize| json!({"type": "Point", "coordinates": [coords[u].0 * coord_scale, coords[u].1 * coord_scale]});
    let mut features = Vec::with_capacity(g.node_count() + inst.center_count());
    for u in 0..g.node_count() {
        features.push(json!({
            "type": "Feature",
            "geometry": point(u),
            "properties": {
                "node": g.original_id(u),
                "center": g.original_id(inst.centers()[a.center_of[u]]),
                "distance": a.dist[u],
            },
        }));
    }
    for (c, &node) in inst.centers().iter().enumerate() {
        features.push(json!({
            "type": "Feature",
            "geometry": point(node),
            "properties": {
                "role": "center",
                "center": g.original_id(node),
                "quota": inst.quotas()[c],
            },
        }));
    }
    Ok(json!({"type": "FeatureCollection", "features": features}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use districts_core::circle::solve_circle_growing;
    use districts_core::grid::{grid_graph, path_graph};
    use districts_core::GraphBuilder;

    fn path_without_coords(n: u64) -> districts_core::RoadGraph {
        let mut b = GraphBuilder::new();
        for u in 1..n {
            b.add_edge(u - 1, u, 1.0).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn p3_single_district() {
        let g = path_graph(3);
        let inst = Instance::new(&g, vec![1], vec![3]).unwrap();
        let a = solve_circle_growing(&inst);
        let svg = render_svg(&inst, &a, &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains(BOUNDARY_COLOR));
        assert_eq!(svg, render_svg(&inst, &a, &SvgOptions::default()).unwrap());
    }

    #[test]
    fn p6_two_districts_one_boundary() {
        let g = path_graph(6);
        let inst = Instance::new(&g, vec![0, 5], vec![3, 3]).unwrap();
        let a = solve_circle_growing(&inst);
        let svg = render_svg(&inst, &a, &SvgOptions::default()).unwrap();
        let districts: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="district""#)).collect();
        assert_eq!(districts.len(), 2);
        for d in &districts {
            assert_eq!(d.matches('M').count(), 2, "{d}");
        }
        let boundary: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="boundary""#)).collect();
        assert_eq!(boundary.len(), 1);
        // edge 2–3 spans x = 2..3 of 5, scaled to width 1000
        assert!(boundary[0].contains(r#"d="M400.00 0.00L600.00 0.00""#), "{}", boundary[0]);
    }

    #[test]
    fn y_axis_flipped() {
        let g = grid_graph(2, 2, None);
        let inst = Instance::new(&g, vec![0], vec![4]).unwrap();
        let a = solve_circle_growing(&inst);
        let svg = render_svg(&inst, &a, &SvgOptions::default()).unwrap();
        // node 0 sits at (0, 0), the bottom-left corner
        assert!(svg.contains(r#"cx="0.00" cy="1000.00""#), "{svg}");
    }

    #[test]
    fn missing_coordinates() {
        let g = path_without_coords(3);
        let inst = Instance::new(&g, vec![0], vec![3]).unwrap();
        let a = solve_circle_growing(&inst);
        assert_eq!(render_svg(&inst, &a, &SvgOptions::default()), Err(RenderError::MissingCoordinates));
        assert_eq!(render_geojson(&inst, &a, 1.0), Err(RenderError::MissingCoordinates));
    }

    #[test]
    fn geojson_features() {
        let g = grid_graph(4, 3, Some(2));
        let inst = Instance::new(&g, vec![0, 11], vec![6, 6]).unwrap();
        let a = solve_circle_growing(&inst);
        let v = render_geojson(&inst, &a, 1.0).unwrap();
        assert_eq!(v["type"], "FeatureCollection");
        let f = v["features"].as_array().unwrap();
        assert_eq!(f.len(), 14);
        for (u, feat) in f.iter().enumerate() {
            assert_eq!(feat["type"], "Feature");
            assert_eq!(feat["geometry"]["type"], "Point");
            assert_eq!(feat["geometry"]["coordinates"].as_array().unwrap().len(), 2);
            if u < 12 {
                assert_eq!(feat["properties"]["distance"].as_f64().unwrap(), a.dist[u]);
            }
        }
        assert_eq!(f[13]["properties"]["role"], "center");
        assert_eq!(f[13]["properties"]["quota"], 6);
    }
}
