//! SVG drawing via a Tutte (barycentric) embedding.
//!
//! The embedded graph is the barycentric subdivision of the map: one node per
//! vertex, edge midpoint and face. The largest face is removed and its boundary
//! pinned to a regular polygon; every other node sits at the mean of its neighbours.

use std::fmt::Write as _;

use crate::diagram::{Diagram, VertexKind};
use crate::epd::EpdCode;
use crate::planar_map::{ccw_next, slot_of, vertex_of};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;
const GAP: f64 = 0.28;

type Point = (f64, f64);

struct Layout {
    vertex: Vec<Point>,
    /// midpoint of the edge holding dart `d`, indexed by `min(d, opp d)`
    mid: Vec<Point>,
}

fn layout(diagram: &Diagram) -> Layout {
    let map = &diagram.map;
    let n = map.vertex_count();
    let nd = map.dart_count();
    let ft = map.face_table();
    let outer = (0..ft.faces.len())
        .max_by_key(|&f| (ft.faces[f].size(), std::cmp::Reverse(f)))
        .expect("at least one face");
    // node ids: vertices, then edges (by smaller dart), then faces
    let edge_node = |d: usize| n + d.min(map.opp(d));
    let face_node = |f: usize| n + nd + f;
    let total = n + nd + ft.faces.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    let add = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    };
    for d in 0..nd {
        let v = vertex_of(d);
        add(v, edge_node(d), &mut adj);
        let f = ft.face_of[d];
        if f != outer {
            add(v, face_node(f), &mut adj);
            add(edge_node(d), face_node(f), &mut adj);
        }
        // the edge also borders the face on its other side
        let g = ft.face_of[ccw_next(d)];
        if g != outer {
            add(edge_node(d), face_node(g), &mut adj);
        }
    }
    let mut pos = vec![(SIZE / 2.0, SIZE / 2.0); total];
    let mut fixed = vec![false; total];
    // pin the outer face boundary: vertex, edge, vertex, edge, ...
    let boundary: Vec<usize> = ft.faces[outer]
        .darts
        .iter()
        .flat_map(|&d| [vertex_of(d), edge_node(d)])
        .collect();
    let r = SIZE / 2.0 - MARGIN;
    for (i, &node) in boundary.iter().enumerate() {
        if fixed[node] {
            continue;
        }
        let a = std::f64::consts::TAU * i as f64 / boundary.len() as f64;
        pos[node] = (SIZE / 2.0 + r * a.cos(), SIZE / 2.0 - r * a.sin());
        fixed[node] = true;
    }
    // fixed-point iteration; the system is diagonally dominant so this converges
    for _ in 0..4000 {
        let mut delta: f64 = 0.0;
        for v in 0..total {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let k = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            let p = (sx / k, sy / k);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < 1e-9 {
            break;
        }
    }
    Layout {
        vertex: pos[..n].to_vec(),
        mid: (0..nd).map(|d| pos[edge_node(d)]).collect(),
    }
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

/// SVG document for `code`: strands as polylines with gaps under each classical
/// crossing, and a bar at each marked vertex.
pub fn render_svg(code: &EpdCode) -> String {
    render_diagram_svg(&code.to_diagram(), Some(code))
}

pub fn render_diagram_svg(diagram: &Diagram, code: Option<&EpdCode>) -> String {
    let map = &diagram.map;
    let lay = layout(diagram);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    )
    .unwrap();
    if let Some(c) = code {
        writeln!(s, "<title>{c}</title>").unwrap();
    }
    writeln!(s, r##"<rect width="100%" height="100%" fill="#fff"/>"##).unwrap();
    writeln!(s, r##"<g class="strands" fill="none" stroke="#222" stroke-width="2.5" stroke-linejoin="round">"##).unwrap();
    let end = |d: usize| {
        let v = vertex_of(d);
        let p = lay.vertex[v];
        let under = matches!(diagram.kinds[v], VertexKind::Crossing { .. }) && !diagram.kinds[v].is_over(slot_of(d));
        if under {
            lerp(p, lay.mid[d], GAP)
        } else {
            p
        }
    };
    for d in 0..map.dart_count() {
        let t = map.opp(d);
        if t < d {
            continue;
        }
        let (a, m, b) = (end(d), lay.mid[d], end(t));
        let label = code.map(|c| c.records()[vertex_of(d)].quad[slot_of(d)]);
        let attr = label.map(|l| format!(r#" data-edge="{l}""#)).unwrap_or_default();
        writeln!(
            s,
            r#"<polyline{attr} points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
            a.0, a.1, m.0, m.1, b.0, b.1
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    for (v, kind) in diagram.kinds.iter().enumerate() {
        let p = lay.vertex[v];
        match *kind {
            VertexKind::Marker { plus } => {
                // bar across the corners between slots plus/plus+1 and plus+2/plus+3
                let k = plus as usize;
                let dir = |slot: usize| {
                    let q = lay.mid[4 * v + slot];
                    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
                    let l = (dx * dx + dy * dy).sqrt().max(1e-9);
                    (dx / l, dy / l)
                };
                let (a, b) = (dir(k), dir(k + 1));
                let (mut bx, mut by) = (a.0 + b.0, a.1 + b.1);
                let l = (bx * bx + by * by).sqrt().max(1e-9);
                bx *= 9.0 / l;
                by *= 9.0 / l;
                writeln!(
                    s,
                    r##"<g class="marked" data-vertex="{v}"><circle cx="{:.2}" cy="{:.2}" r="4" fill="#222"/><line class="marker" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c00" stroke-width="5"/></g>"##,
                    p.0, p.1, p.0 - bx, p.1 - by, p.0 + bx, p.1 + by
                )
                .unwrap();
            }
            VertexKind::Crossing { .. } => {
                writeln!(
                    s,
                    r#"<g class="crossing" data-vertex="{v}"><circle cx="{:.2}" cy="{:.2}" r="7" fill="none" stroke="none"/></g>"#,
                    p.0, p.1
                )
                .unwrap();
            }
            VertexKind::Flat => {
                writeln!(
                    s,
                    r##"<g class="flat" data-vertex="{v}"><circle cx="{:.2}" cy="{:.2}" r="3" fill="#222"/></g>"##,
                    p.0, p.1
                )
                .unwrap();
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE_AND_P2: &str = "X[1, 5, 2, 4], X[18, 10, 19, 1], Y[5, 19, 6, 20], X[14, 2, 15, 3], X[3, 13, 4, 14], X[17, 12, 18, 13], X[9, 6, 10, 7], X[20, 16, 17, 15], X[7, 12, 8, 11], X[16, 9, 11, 8]";

    fn segments(svg: &str) -> Vec<[Point; 2]> {
        let mut out = Vec::new();
        for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
            let pts: Vec<Point> = line
                .split("points=\"")
                .nth(1)
                .unwrap()
                .trim_end_matches("\"/>")
                .split(' ')
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect();
            out.push([pts[0], pts[1]]);
            out.push([pts[1], pts[2]]);
        }
        out
    }

    fn proper_cross(a: [Point; 2], b: [Point; 2]) -> bool {
        let orient = |p: Point, q: Point, r: Point| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
        let eps = 1e-6;
        let d1 = orient(a[0], a[1], b[0]);
        let d2 = orient(a[0], a[1], b[1]);
        let d3 = orient(b[0], b[1], a[0]);
        let d4 = orient(b[0], b[1], a[1]);
        ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
    }

    #[test]
    fn sphere_and_p2_glyphs() {
        let svg = render_svg(&EpdCode::parse(SPHERE_AND_P2).unwrap());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 9);
        assert_eq!(svg.matches(r#"class="marked""#).count(), 1);
        assert_eq!(svg.matches(r#"class="marker""#).count(), 1);
        assert_eq!(svg.matches("<polyline").count(), 20);
    }

    #[test]
    fn drawing_is_planar() {
        let svg = render_svg(&EpdCode::parse(SPHERE_AND_P2).unwrap());
        let segs = segments(&svg);
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                assert!(!proper_cross(segs[i], segs[j]), "segments {i} and {j} cross");
            }
        }
    }

    #[test]
    fn deterministic() {
        let c = EpdCode::parse(SPHERE_AND_P2).unwrap();
        assert_eq!(render_svg(&c), render_svg(&c));
    }
}
