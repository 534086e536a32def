//! CSV and SVG export of trajectories.
//!
//! The beam is drawn as the polyline through successive alcove centroids.
//! Segments traversed more often are drawn darker.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::subwords::TrajectoryLog;

/// `hit_index,kept,x,y[,z…]` with coordinates in the orthonormal basis of
/// `V`. Row 0 is the starting alcove.
pub fn trajectory_csv(rs: &RootSystem, log: &TrajectoryLog) -> String {
    let r = rs.rank();
    let names = ["x", "y", "z"];
    let mut out = String::from("hit_index,kept");
    for i in 0..r {
        match names.get(i) {
            Some(n) => write!(out, ",{n}").unwrap(),
            None => write!(out, ",c{i}").unwrap(),
        }
    }
    out.push('\n');
    let start = rs.to_v_coords(&rs.fundamental_centroid().to_f64());
    write_row(&mut out, 0, true, &start);
    for h in &log.hits {
        write_row(&mut out, h.index, h.crossed, &rs.to_v_coords(&h.centroid));
    }
    out
}

fn write_row(out: &mut String, index: u64, kept: bool, coords: &[f64]) {
    write!(out, "{index},{}", u8::from(kept)).unwrap();
    for c in coords {
        write!(out, ",{c}").unwrap();
    }
    out.push('\n');
}

#[derive(Clone, Debug)]
pub struct SvgStyle {
    pub width: f64,
    pub margin: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 800.0,
            margin: 0.75,
        }
    }
}

type Key = (i64, i64, i64, i64);

fn segment_key(a: &[f64], b: &[f64]) -> Key {
    let k = |x: f64| (x * 1e6).round() as i64;
    let (p, q) = ((k(a[0]), k(a[1])), (k(b[0]), k(b[1])));
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    (p.0, p.1, q.0, q.1)
}

/// Clips the line `{y : ⟨b, y⟩ = c}` to the box, if it meets it.
fn clip_line(b: [f64; 2], c: f64, lo: [f64; 2], hi: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
    let mut pts: Vec<[f64; 2]> = Vec::new();
    if b[1].abs() > 1e-12 {
        for x in [lo[0], hi[0]] {
            let y = (c - b[0] * x) / b[1];
            if y >= lo[1] - 1e-9 && y <= hi[1] + 1e-9 {
                pts.push([x, y]);
            }
        }
    }
    if b[0].abs() > 1e-12 {
        for y in [lo[1], hi[1]] {
            let x = (c - b[1] * y) / b[0];
            if x >= lo[0] - 1e-9 && x <= hi[0] + 1e-9 {
                pts.push([x, y]);
            }
        }
    }
    let first = *pts.first()?;
    let far = pts
        .iter()
        .copied()
        .max_by(|p, q| {
            let d = |r: &[f64; 2]| (r[0] - first[0]).hypot(r[1] - first[1]);
            d(p).total_cmp(&d(q))
        })
        .unwrap();
    ((far[0] - first[0]).hypot(far[1] - first[1]) > 1e-9).then_some((first, far))
}

/// SVG of a rank-2 trajectory over the alcove arrangement.
pub fn trajectory_svg(rs: &RootSystem, log: &TrajectoryLog, style: &SvgStyle) -> Result<String> {
    if rs.rank() != 2 {
        return Err(Error::InadmissibleType {
            family: rs.family().letter(),
            rank: rs.rank(),
            reason: "plotting is available for rank 2 only",
        });
    }
    let start = rs.to_v_coords(&rs.fundamental_centroid().to_f64());
    let mut path = vec![start.clone()];
    for h in log.hits.iter().filter(|h| h.crossed) {
        path.push(rs.to_v_coords(&h.centroid));
    }

    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &path {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
    for i in 0..2 {
        let mid = (lo[i] + hi[i]) / 2.0;
        lo[i] = mid - span / 2.0 - style.margin;
        hi[i] = mid + span / 2.0 + style.margin;
    }
    let world = hi[0] - lo[0];
    let px = style.width / world;
    let to_px = |p: [f64; 2]| ((p[0] - lo[0]) * px, (hi[1] - p[1]) * px);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{w:.0}" viewBox="0 0 {w:.2} {w:.2}">"#,
        w = style.width
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    writeln!(svg, r##"<g stroke="#9a9a9a" stroke-width="0.6" fill="none">"##).unwrap();
    for beta in rs.positive_roots() {
        let b = rs.to_v_coords(&beta.to_f64());
        let b = [b[0], b[1]];
        let corners = [[lo[0], lo[1]], [lo[0], hi[1]], [hi[0], lo[1]], [hi[0], hi[1]]];
        let vals: Vec<f64> = corners.iter().map(|c| b[0] * c[0] + b[1] * c[1]).collect();
        let kmin = vals.iter().copied().fold(f64::INFINITY, f64::min).ceil() as i64;
        let kmax = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max).floor() as i64;
        for k in kmin..=kmax {
            if let Some((a, c)) = clip_line(b, k as f64, lo, hi) {
                let (x1, y1) = to_px(a);
                let (x2, y2) = to_px(c);
                writeln!(svg, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#).unwrap();
            }
        }
    }
    writeln!(svg, "</g>").unwrap();

    let mut counts: HashMap<Key, (usize, [f64; 2], [f64; 2])> = HashMap::new();
    let mut order = Vec::new();
    for w in path.windows(2) {
        let key = segment_key(&w[0], &w[1]);
        let e = counts.entry(key).or_insert_with(|| {
            order.push(key);
            (0, [w[0][0], w[0][1]], [w[1][0], w[1][1]])
        });
        e.0 += 1;
    }
    let max = counts.values().map(|v| v.0).max().unwrap_or(1) as f64;
    writeln!(svg, r##"<g stroke="#b3001b" stroke-width="1.4" stroke-linecap="round">"##).unwrap();
    for key in &order {
        let (n, a, c) = counts[key];
        let opacity = 0.15 + 0.85 * n as f64 / max;
        let (x1, y1) = to_px(a);
        let (x2, y2) = to_px(c);
        writeln!(
            svg,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-opacity="{opacity:.3}"/>"#
        )
        .unwrap();
    }
    writeln!(svg, "</g>").unwrap();

    let (sx, sy) = to_px([start[0], start[1]]);
    writeln!(svg, r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="4" fill="#1f4e9c"/>"##).unwrap();
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}
