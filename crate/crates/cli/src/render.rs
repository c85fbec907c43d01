//! Deterministic SVG renderings of 1-D and 2-D sets.

use std::fmt::Write;

use symlab_core::{Dyadic, FinitePointSet, GridSet, SetRep};

use crate::CliError;

const WIDTH: f64 = 800.0;

/// World-space viewport with `y` pointing up.
struct View {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    size: f64,
}

impl View {
    fn new(bbox: [f64; 4]) -> View {
        let [mut x0, mut y0, mut x1, mut y1] = bbox;
        let size = (x1 - x0).max(y1 - y0).max(1e-9);
        let pad = 0.05 * size;
        x0 -= pad;
        y0 -= pad;
        x1 += pad;
        y1 += pad;
        View { x0, y0, x1, y1, size }
    }

    fn header(&self, out: &mut String) {
        let (w, h) = (self.x1 - self.x0, self.y1 - self.y0);
        let height = WIDTH * h / w;
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
            self.x0, -self.y1, w, h
        );
        let _ = writeln!(out, r#"<rect x="{:.6}" y="{:.6}" width="{w:.6}" height="{h:.6}" fill="white"/>"#, self.x0, -self.y1);
    }
}

fn rect(out: &mut String, x0: f64, y0: f64, x1: f64, y1: f64, style: &str) {
    let _ = writeln!(out, r#"<rect x="{x0:.6}" y="{:.6}" width="{:.6}" height="{:.6}" {style}/>"#, -y1, x1 - x0, y1 - y0);
}

fn grid_bbox(g: &GridSet) -> [f64; 4] {
    let h = g.spacing().to_f64();
    let (lo, hi) = g.bbox();
    if g.dim() == 1 {
        [lo[0] as f64 * h, 0.0, (hi[0] + 1) as f64 * h, 0.0]
    } else {
        [lo[0] as f64 * h, lo[1] as f64 * h, (hi[0] + 1) as f64 * h, (hi[1] + 1) as f64 * h]
    }
}

fn points_bbox(p: &FinitePointSet) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for q in p.points_f64() {
        b = [b[0].min(q[0]), b[1].min(q[1]), b[2].max(q[0]), b[3].max(q[1])];
    }
    b
}

/// Renders a 1-D or 2-D set. Grid cells are drawn as squares (merged along
/// rows), point sets as dots, polygons as closed paths and intervals as bars.
pub fn svg(set: &SetRep) -> Result<String, CliError> {
    if set.dim() > 2 {
        return Err(CliError::Usage(format!("cannot render a {}-D set; pick a layer with --slice", set.dim())));
    }
    let bbox = match set {
        SetRep::Grid(g) => grid_bbox(g),
        SetRep::Points(p) => points_bbox(p),
        SetRep::Polygon(p) => p.bbox(),
        SetRep::Intervals(iv) => [iv.min().to_f64(), 0.0, iv.max().to_f64(), 0.0],
    };
    let view = View::new(bbox);
    let mut out = String::new();
    view.header(&mut out);
    let bar = view.size / 40.0;
    let fill = r##"fill="#3465a4""##;
    match set {
        SetRep::Grid(g) => {
            let h = g.spacing().to_f64();
            for (key, runs) in g.rows() {
                let (y0, y1) = if g.dim() == 1 { (-bar, bar) } else { (key[0] as f64 * h, (key[0] + 1) as f64 * h) };
                for &(s, e) in runs {
                    rect(&mut out, s as f64 * h, y0, (e + 1) as f64 * h, y1, fill);
                }
            }
        }
        SetRep::Points(p) => {
            let r = view.size / 200.0;
            for q in p.points_f64() {
                let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{r:.6}" {fill}/>"#, q[0], -q[1]);
            }
        }
        SetRep::Polygon(p) => {
            let mut d = String::new();
            for (i, v) in p.vertices().iter().enumerate() {
                let _ = write!(d, "{}{:.6} {:.6} ", if i == 0 { "M" } else { "L" }, v[0], -v[1]);
            }
            let stroke = view.size / 400.0;
            let _ = writeln!(
                out,
                r##"<path d="{d}Z" fill="#3465a4" fill-opacity="0.6" stroke="#204a87" stroke-width="{stroke:.6}"/>"##
            );
        }
        SetRep::Intervals(iv) => {
            let tick = view.size / 400.0;
            for &(a, b) in iv.intervals() {
                let (a, b) = (a.to_f64(), b.to_f64());
                rect(&mut out, a - if a == b { tick } else { 0.0 }, -bar, b + if a == b { tick } else { 0.0 }, bar, fill);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The layer `z = k` of a 3-D set as a 2-D set: cells with third index `k`
/// for grids, points with third coordinate `k` for point sets.
pub fn slice(set: &SetRep, k: i64) -> Result<SetRep, CliError> {
    let empty = || CliError::Usage(format!("layer {k} of the set is empty"));
    match set {
        SetRep::Grid(g) if g.dim() == 3 => {
            let cells: Vec<[i64; 3]> = g.cells().into_iter().filter(|c| c[2] == k).map(|c| [c[0], c[1], 0]).collect();
            if cells.is_empty() {
                return Err(empty());
            }
            Ok(GridSet::new(2, g.spacing(), cells).map_err(|e| CliError::Usage(e.to_string()))?.into())
        }
        SetRep::Points(p) if p.dim() == 3 => {
            let z = Dyadic::from_int(k);
            let pts: Vec<Vec<Dyadic>> = p.points_dyadic().into_iter().filter(|q| q[2] == z).map(|q| q[..2].to_vec()).collect();
            if pts.is_empty() {
                return Err(empty());
            }
            Ok(FinitePointSet::from_dyadic(2, &pts, p.snap_exp()).map_err(|e| CliError::Usage(e.to_string()))?.into())
        }
        other => Err(CliError::Usage(format!("--slice applies to 3-D grids and point sets, got a {}-D {}", other.dim(), other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use symlab_core::parse_set;

    #[test]
    fn grid_rows_become_merged_rects() {
        let g = parse_set("rep=grid dim=2 h=1\ncell 0 0\ncell 1 0\ncell 3 0\ncell 0 1\n").unwrap();
        let s = svg(&g).unwrap();
        assert_eq!(s.matches("<rect").count(), 1 + 3);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert_eq!(s, svg(&g).unwrap());
    }

    #[test]
    fn every_kind_renders() {
        let pts = parse_set("rep=pointset dim=2\npoint -1 0\npoint 1 0\n").unwrap();
        assert_eq!(svg(&pts).unwrap().matches("<circle").count(), 2);
        let poly = parse_set("rep=polygon dim=2\npoint 0 0\npoint 1 0\npoint 0 1\n").unwrap();
        assert_eq!(svg(&poly).unwrap().matches("<path").count(), 1);
        let iv = parse_set("rep=intervals dim=1\ninterval -1 -0.5\ninterval 1 1\n").unwrap();
        assert_eq!(svg(&iv).unwrap().matches("<rect").count(), 1 + 2);
    }

    #[test]
    fn three_dimensional_sets_need_a_slice() {
        let g = parse_set("rep=grid dim=3 h=1\ncell 0 0 0\ncell 1 0 0\ncell 0 0 1\n").unwrap();
        assert!(matches!(svg(&g), Err(CliError::Usage(_))));
        let layer = slice(&g, 0).unwrap();
        assert_eq!(layer.as_grid().unwrap().cell_count(), 2);
        assert!(slice(&g, 5).is_err());
    }
}
