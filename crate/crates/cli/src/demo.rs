//! Built-in reproductions. Each prints one PASS/FAIL line per statement.

use std::f64::consts::PI;
use std::io::Write;

use symlab_core::boundary::{boundary_sum_check, common_boundary_witness, fiber_klain_run, klartag_rounding_run};
use symlab_core::sequences::checks::{hadwiger_rounding_run, iterated_central_limit_check, sfs_gap};
use symlab_core::sequences::{idempotency_index_1d, mean_index_1d, run_schedule_with, RunOptions};
use symlab_core::{
    minkowski_symmetrize, ConvexPolygon, Dyadic, Error, FinitePointSet, GridSet, IntervalUnion, Operator, Schedule, ScheduleSpec,
    SetRep, Subspace,
};

use crate::CliError;

pub const NAMES: [&str; 6] = ["klain-two-point", "idempotency-1d", "sfs-gap", "boundary-sum", "fiber-3d", "hadwiger"];

struct Line {
    pass: bool,
    statement: &'static str,
    detail: String,
}

fn line(pass: bool, statement: &'static str, detail: impl Into<String>) -> Line {
    Line { pass, statement, detail: detail.into() }
}

type Lines = symlab_core::Result<Vec<Line>>;

fn d(s: &str) -> Dyadic {
    s.parse().expect("dyadic literal")
}

fn sorted(s: &SetRep) -> Vec<Vec<Dyadic>> {
    let mut p = s.as_points().expect("point set").points_dyadic();
    p.sort();
    p
}

fn klain_two_point() -> Lines {
    let y = Subspace::axes(2, &[1])?;
    let pt = |x: &str| vec![d(x), Dyadic::ZERO];
    let c: SetRep = FinitePointSet::from_dyadic(2, &[pt("-1"), pt("1")], -40)?.into();
    let (k1, _) = minkowski_symmetrize(&c, &y)?;
    let (k2, _) = minkowski_symmetrize(&k1, &y)?;
    let mut out = vec![
        line(sorted(&k1) == vec![pt("-1"), pt("0"), pt("1")], "two-point example, first symmetral", "{(-1,0), (0,0), (1,0)} exactly"),
        line(
            sorted(&k2) == vec![pt("-1"), pt("-0.5"), pt("0"), pt("0.5"), pt("1")],
            "two-point example, second symmetral",
            "{(±1,0), (±1/2,0), (0,0)} exactly",
        ),
    ];
    let spec = ScheduleSpec::single(y.clone(), 8, 1e-12, Operator::Minkowski)?;
    let segment = SetRep::from(ConvexPolygon::from_points(&[[-1.0, 0.0], [1.0, 0.0]])?);
    let opts = RunOptions { reference: Some(segment), resolution: Some(1e-9), ..RunOptions::default() };
    let (last, report) = run_schedule_with(&c, &spec, &opts)?;
    let on_rate = report.records.iter().all(|r| {
        let (v, err) = r.dh_ref.expect("reference");
        (v - 0.5 * 2f64.powi(1 - r.step as i32)).abs() <= err
    });
    out.push(line(on_rate, "iterates converge to the segment", format!("d_H(K_m, [-1,1]×{{0}}) = 2^-(m-1)/2 for m = 1..{}", report.steps())));
    let (refl, _) = last.reflect(&y)?;
    out.push(line(sorted(&refl) == sorted(&last), "limit symmetry", "every iterate is symmetric about the y-axis"));
    Ok(out)
}

fn idempotency_1d() -> Lines {
    let k = IntervalUnion::new([(d("-1"), d("-0.5")), (d("0.5"), d("1"))])?;
    let w = idempotency_index_1d(&k, 30)?;
    let pair = IntervalUnion::points([d("-1"), d("1")])?;
    let p = idempotency_index_1d(&pair, 30)?;
    let mean = mean_index_1d(&IntervalUnion::new([(d("0"), d("0.25")), (d("0.75"), d("1"))])?, 30)?;
    Ok(vec![
        line(
            w.ell == Some(2) && w.last == IntervalUnion::interval(d("-1"), d("1"))?,
            "central symmetrization stabilizes in finitely many steps",
            format!("[-1,-1/2]∪[1/2,1]: ℓ = {:?}, M_o²K = [-1,1]", w.ell),
        ),
        line(w.bound_holds(), "idempotency index bound", format!("ℓ = {:?} ≤ ⌈log₂(4M/ε−1)⌉+1 = {:?}", w.ell, w.bound)),
        line(
            !p.certified && p.endpoint_isolated,
            "isolated endpoints never stabilize",
            format!("{{-1,1}}: {} components after {} steps, still not convex", p.last.len(), p.steps_run),
        ),
        line(
            mean.ell == Some(2) && mean.bound_holds(),
            "averaged sums stabilize in finitely many steps",
            format!("[0,1/4]∪[3/4,1]: ℓ = {:?}, bound {:?}", mean.ell, mean.bound),
        ),
    ])
}

fn sfs() -> Lines {
    let bit: SetRep = FinitePointSet::from_points(1, &[vec![0.0], vec![1.0]], None)?.into();
    let mut ok = true;
    for k in 1..=6 {
        let g = sfs_gap(&vec![bit.clone(); k])?;
        ok &= g.holds() && g.gap == 0.5;
    }
    let two: SetRep = FinitePointSet::from_points(2, &[vec![-1.0, 0.0], vec![1.0, 0.0]], None)?.into();
    let g2 = sfs_gap(&[two.clone(), two.clone(), two])?;
    let tri: SetRep = ConvexPolygon::from_points(&[[0.0, 0.0], [1.0, 0.2], [0.3, 1.0]])?.into();
    let sq: SetRep = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 2.0)?.into();
    let g3 = sfs_gap(&[tri, sq])?;
    let cloud: SetRep = FinitePointSet::from_points(2, &[vec![0.0, 0.0], vec![1.0, 0.3], vec![0.2, 0.9]], None)?.into();
    let c = iterated_central_limit_check(&cloud, &Subspace::line_2d(PI / 3.0), 40, 1e-6, &RunOptions::default())?;
    let last = c.report.last().expect("a step");
    Ok(vec![
        line(ok, "Shapley–Folkman–Starr bound, 1-D", "sums of k copies of {0,1}: gap 1/2 ≤ √1·1 for k = 1..6"),
        line(g2.holds(), "Shapley–Folkman–Starr bound, 2-D", format!("three two-point sets: gap {:.3} ≤ {:.3}", g2.gap, g2.bound)),
        line(g3.gap < 1e-12, "sums of convex sets are convex", format!("triangle + rectangle: gap {:.1e}", g3.gap)),
        line(
            c.violation.is_none(),
            "iterated symmetrals approach conv(M_H A) at rate √2·D/2^(m-1)",
            format!("{} steps ({}), last d_H {:.3e} ≤ {:.3e}", c.report.steps(), c.report.stop_reason, last.dh_ref.expect("ref").0, c.bounds[c.bounds.len() - 1]),
        ),
    ])
}

fn rect(x0: i64, y0: i64, x1: i64, y1: i64) -> symlab_core::Result<GridSet> {
    GridSet::block(2, Dyadic::ONE, [x0, y0, 0], [x1, y1, 0])
}

fn boundary_sum() -> Lines {
    let wide = rect(0, 0, 9, 2)?;
    let tall = rect(0, 0, 2, 9)?;
    let a = boundary_sum_check(&wide, &tall)?;
    let ring = rect(0, 0, 9, 9)?.difference(&rect(2, 2, 7, 7)?)?.expect("ring");
    let b = boundary_sum_check(&ring, &rect(20, 20, 29, 29)?)?;
    let c = boundary_sum_check(&rect(0, 0, 1, 1)?, &rect(0, 0, 9, 9)?)?;
    let w = common_boundary_witness(&wide, &tall)?;
    Ok(vec![
        line(a.gate.passes() && a.equal, "boundary-sum identity", "10×3 block + 3×10 block: K⊕L = ∂K⊕∂L cell for cell"),
        line(b.gate.passes() && b.equal, "boundary-sum identity with holes", "10×10 ring of width 2 + 10×10 block: equal"),
        line(
            !c.gate.passes() && c.inclusion && !c.equal,
            "strict containment breaks the identity",
            format!("2×2 block + 10×10 block: gate fails, ∂K⊕∂L ⊆ K⊕L holds, cell {:?} is missing", c.witness),
        ),
        line(w.point.is_some(), "intersecting bodies share a boundary point", format!("common lattice vertex {:?}", w.point)),
    ])
}

fn shell(a: i64, b: i64, c: i64) -> symlab_core::Result<GridSet> {
    let outer = GridSet::block(3, Dyadic::ONE, [0, 0, 0], [a - 1, b - 1, c - 1])?;
    let inner = GridSet::block(3, Dyadic::ONE, [1, 1, 1], [a - 2, b - 2, c - 2])?;
    Ok(outer.difference(&inner)?.expect("shell"))
}

fn fiber_3d() -> Lines {
    let z = Subspace::axes(3, &[2])?;
    let lines: Vec<Subspace> = (0..3).map(|k| Subspace::axes(3, &[k])).collect::<symlab_core::Result<_>>()?;
    let one = fiber_klain_run(&shell(6, 8, 10)?, &ScheduleSpec::single(z, 5, 1e-9, Operator::Fiber)?)?;
    let all = fiber_klain_run(&shell(7, 5, 9)?, &ScheduleSpec::new(lines.clone(), Schedule::Cyclic, 5, 1e-9, Operator::Fiber)?)?;
    let open = shell(6, 6, 6)?.difference(&GridSet::block(3, Dyadic::ONE, [1, 1, 5], [4, 4, 5])?)?.expect("open box");
    let refused = matches!(
        fiber_klain_run(&open, &ScheduleSpec::new(lines, Schedule::Cyclic, 5, 1e-9, Operator::Fiber)?),
        Err(Error::Hypothesis(_))
    );
    Ok(vec![
        line(one.sections_convex, "sections are convex after one fiber step", format!("6×8×10 shell, z-lines: gap {:.3}", one.section_gap)),
        line(one.holds(), "fiber symmetrals of a shell match the filled hull", format!("z-lines: limit gap {:.3} ≤ collar {:.3}", one.limit_dh.0, one.collar)),
        line(all.holds(), "fiber symmetrals of a shell match the filled hull", format!("cyclic x,y,z: {} steps, limit gap {:.3}", all.report.steps(), all.limit_dh.0)),
        line(refused, "the hull-boundary hypothesis is required", "a box with an open lid is refused"),
    ])
}

fn hadwiger() -> Lines {
    let square: SetRep = ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0)?.into();
    let h = hadwiger_rounding_run(&square, &[1, 2, 4, 8, 16, 64], 0.05)?;
    let ratios: Vec<String> = h.rows.iter().map(|r| format!("N={}: {:.4}", r.n, r.ratio)).collect();
    let (sin, cos) = 10f64.to_radians().sin_cos();
    let corners = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
    let mut pts = Vec::new();
    for i in 0..4 {
        let (p, q) = (corners[i], corners[(i + 1) % 4]);
        for j in 0..100 {
            let t = j as f64 / 100.0;
            let (x, y) = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]));
            pts.push(vec![cos * x - sin * y, sin * x + cos * y]);
        }
    }
    let boundary: SetRep = FinitePointSet::from_points(2, &pts, Some(1e-12))?.into();
    let family = (0..8).map(|k| Subspace::line_2d(k as f64 * PI / 8.0)).collect();
    let k = klartag_rounding_run(&boundary, &ScheduleSpec::new(family, Schedule::Cyclic, 64, 1e-12, Operator::Minkowski)?, 0.02)?;
    Ok(vec![
        line(h.holds(), "rotation means round a convex body", ratios.join(", ")),
        line(k.mean_width_drift() <= 1e-9, "symmetrization preserves mean width", format!("relative drift {:.1e} over {} steps", k.mean_width_drift(), k.steps.len() - 1)),
        line(
            k.holds() && k.final_ratio() <= 1.05,
            "symmetrals of a hull boundary round like the hull",
            format!("square boundary rotated 10°, lines kπ/8: ratio {:.4} -> {:.4}", k.steps[0].ratio, k.final_ratio()),
        ),
    ])
}

/// Runs a demo, printing its table to `out`. Returns whether every line passed.
pub fn run(name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let lines = match name {
        "klain-two-point" => klain_two_point(),
        "idempotency-1d" => idempotency_1d(),
        "sfs-gap" => sfs(),
        "boundary-sum" => boundary_sum(),
        "fiber-3d" => fiber_3d(),
        "hadwiger" => hadwiger(),
        other => return Err(CliError::Usage(format!("unknown demo `{other}` (expected one of {})", NAMES.join(", ")))),
    }
    .map_err(|e| CliError::Assertion(format!("demo {name} failed: {e}")))?;
    let _ = writeln!(out, "demo {name}");
    for l in &lines {
        let _ = writeln!(out, "  {}  {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.statement, l.detail);
    }
    Ok(lines.iter().all(|l| l.pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_passes() {
        for name in NAMES {
            let mut out = Vec::new();
            let ok = run(name, &mut out).unwrap();
            let text = String::from_utf8(out).unwrap();
            assert!(ok, "{text}");
            assert!(!text.contains("FAIL"));
        }
    }

    #[test]
    fn unknown_demo() {
        assert!(matches!(run("nope", &mut Vec::new()), Err(CliError::Usage(_))));
    }
}
