//! Plain-text set literals.
//!
//! ```text
//! rep=pointset dim=2
//! point -1 0
//! point 1 0
//! ```
//!
//! The header is `rep=<pointset|intervals|grid|polygon> dim=<n>`, plus
//! `h=<spacing>` for grids and an optional `snap=<δ>` for point sets.
//! Records are `point x y [z]`, `interval a b` and `cell i j [k]`; blank
//! lines and `#` comments are ignored. Dyadic values are written as exact
//! decimals, so exact representations round-trip bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::sets::grid::GridSet;
use crate::sets::intervals::IntervalUnion;
use crate::sets::point_set::FinitePointSet;
use crate::sets::polygon::ConvexPolygon;
use crate::sets::SetRep;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn floor_log2(x: f64) -> i32 {
    let d = Dyadic::from_f64(x).expect("finite");
    // exponent of the leading bit
    let bits = 128 - d.mantissa().unsigned_abs().leading_zeros() as i32;
    d.exponent() + bits - 1
}

/// Parses a set literal.
pub fn parse_set(text: &str) -> Result<SetRep> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header line"))?;
    let mut keys: BTreeMap<&str, &str> = BTreeMap::new();
    for tok in header.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| err(hline, format!("expected key=value, got `{tok}`")))?;
        keys.insert(k, v);
    }
    let rep = *keys.get("rep").ok_or_else(|| err(hline, "header needs rep=<pointset|intervals|grid|polygon>"))?;
    let dim: usize = keys
        .get("dim")
        .ok_or_else(|| err(hline, "header needs dim=<n>"))?
        .parse()
        .map_err(|_| err(hline, "dim must be an integer"))?;
    if !(1..=3).contains(&dim) {
        return Err(err(hline, format!("dim must be 1, 2 or 3, got {dim}")));
    }
    let records: Vec<(usize, Vec<&str>)> = lines.map(|(i, l)| (i, l.split_whitespace().collect())).collect();
    let expect = |kind: &str, arity: usize| -> Result<Vec<(usize, Vec<&str>)>> {
        records
            .iter()
            .map(|(i, toks)| {
                if toks[0] != kind {
                    return Err(err(*i, format!("expected a `{kind}` record, got `{}`", toks[0])));
                }
                if toks.len() != arity + 1 {
                    return Err(err(*i, format!("`{kind}` takes {arity} values, got {}", toks.len() - 1)));
                }
                Ok((*i, toks[1..].to_vec()))
            })
            .collect()
    };
    match rep {
        "pointset" => {
            let recs = expect("point", dim)?;
            if recs.is_empty() {
                return Err(err(hline, "a point set needs at least one point"));
            }
            let snap = match keys.get("snap") {
                Some(s) => Some(s.parse::<f64>().map_err(|_| err(hline, "snap must be a number"))?),
                None => None,
            };
            let exact: Option<Vec<Vec<Dyadic>>> =
                recs.iter().map(|(_, v)| v.iter().map(|t| t.parse::<Dyadic>().ok()).collect()).collect();
            let set = match exact {
                Some(pts) => {
                    let snap_exp = match snap {
                        Some(s) if s > 0.0 => floor_log2(s),
                        Some(_) => return Err(err(hline, "snap must be positive")),
                        None => {
                            let f: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|x| x.to_f64()).collect()).collect();
                            let default = FinitePointSet::from_points(dim, &f, None)?.snap_exp();
                            let finest = pts.iter().flatten().filter(|x| !x.is_zero()).map(|x| x.exponent()).min();
                            finest.map_or(default, |e| e.min(default))
                        }
                    };
                    FinitePointSet::from_dyadic(dim, &pts, snap_exp)?
                }
                None => {
                    let pts = recs
                        .iter()
                        .map(|(i, v)| v.iter().map(|t| t.parse::<f64>().map_err(|_| err(*i, format!("bad number `{t}`")))).collect())
                        .collect::<Result<Vec<Vec<f64>>>>()?;
                    FinitePointSet::from_points(dim, &pts, snap)?
                }
            };
            Ok(SetRep::Points(set))
        }
        "polygon" => {
            if dim != 2 {
                return Err(err(hline, "polygons live in dim=2"));
            }
            let recs = expect("point", 2)?;
            let pts = recs
                .iter()
                .map(|(i, v)| {
                    let x: f64 = v[0].parse().map_err(|_| err(*i, format!("bad number `{}`", v[0])))?;
                    let y: f64 = v[1].parse().map_err(|_| err(*i, format!("bad number `{}`", v[1])))?;
                    Ok([x, y])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetRep::Polygon(ConvexPolygon::from_points(&pts).map_err(|e| err(hline, e.to_string()))?))
        }
        "intervals" => {
            if dim != 1 {
                return Err(err(hline, "interval unions live in dim=1"));
            }
            let recs = expect("interval", 2)?;
            let ivs = recs
                .iter()
                .map(|(i, v)| {
                    let a: Dyadic = v[0].parse().map_err(|e: Error| err(*i, e.to_string()))?;
                    let b: Dyadic = v[1].parse().map_err(|e: Error| err(*i, e.to_string()))?;
                    if a > b {
                        return Err(err(*i, format!("interval [{a}, {b}] is reversed")));
                    }
                    Ok((a, b))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetRep::Intervals(IntervalUnion::new(ivs).map_err(|e| err(hline, e.to_string()))?))
        }
        "grid" => {
            let h: Dyadic = keys
                .get("h")
                .ok_or_else(|| err(hline, "grid header needs h=<spacing>"))?
                .parse()
                .map_err(|e: Error| err(hline, e.to_string()))?;
            let recs = expect("cell", dim)?;
            let cells = recs
                .iter()
                .map(|(i, v)| {
                    let mut c = [0i64; 3];
                    for (k, t) in v.iter().enumerate() {
                        c[k] = t.parse().map_err(|_| err(*i, format!("bad cell index `{t}`")))?;
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetRep::Grid(GridSet::new(dim, h, cells).map_err(|e| err(hline, e.to_string()))?))
        }
        other => Err(err(hline, format!("unknown representation `{other}`"))),
    }
}

/// Writes a set literal.
pub fn format_set(set: &SetRep) -> String {
    let mut out = String::new();
    match set {
        SetRep::Points(s) => {
            let _ = writeln!(out, "rep=pointset dim={} snap={}", s.dim(), Dyadic::pow2(s.snap_exp()));
            for p in s.points_dyadic() {
                let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "point {}", coords.join(" "));
            }
        }
        SetRep::Polygon(p) => {
            let _ = writeln!(out, "rep=polygon dim=2");
            for v in p.vertices() {
                let _ = writeln!(out, "point {} {}", v[0], v[1]);
            }
        }
        SetRep::Intervals(k) => {
            let _ = writeln!(out, "rep=intervals dim=1");
            for (a, b) in k.intervals() {
                let _ = writeln!(out, "interval {a} {b}");
            }
        }
        SetRep::Grid(g) => {
            let _ = writeln!(out, "rep=grid dim={} h={}", g.dim(), g.spacing());
            for c in g.cells() {
                let coords: Vec<String> = c[..g.dim()].iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "cell {}", coords.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_round_trip() {
        let s = parse_set("rep=pointset dim=2\npoint -1 0\npoint 1 0\npoint 0.5 -0.375 # comment\n").unwrap();
        let text = format_set(&s);
        assert_eq!(parse_set(&text).unwrap(), s);
        assert!(text.contains("point 0.5 -0.375"));
    }

    #[test]
    fn grid_and_intervals_round_trip() {
        for src in ["rep=grid dim=3 h=0.25\ncell 0 1 2\ncell -3 0 0\n", "rep=intervals dim=1\ninterval -1 -0.5\ninterval 0.5 1\n"] {
            let s = parse_set(src).unwrap();
            assert_eq!(parse_set(&format_set(&s)).unwrap(), s);
        }
    }

    #[test]
    fn polygon_round_trip() {
        let s = parse_set("rep=polygon dim=2\npoint 0.1 0\npoint 1 0.3\npoint 0 1\n").unwrap();
        assert_eq!(parse_set(&format_set(&s)).unwrap(), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_set("rep=grid dim=2 h=1\ncell 0 0\ncell 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "`cell` takes 2 values, got 1".into() });
        assert!(matches!(parse_set("rep=intervals dim=1\ninterval 0.1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_set("rep=cloud dim=2\n"), Err(Error::Parse { line: 1, .. })));
    }
}
