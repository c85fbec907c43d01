//! Quantitative checks on iterated symmetrals: the convexification rate of
//! averaged sums, limit symmetry, and rounding by rotation means.

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::sets::SetRep;
use crate::symmetrize::{blaschke_rotation_mean, Operator};

use super::{distance, run_schedule_observed, step, ConvergenceReport, RunOptions, ScheduleSpec, StopReason};

/// Outcome of [`iterated_central_limit_check`].
#[derive(Clone, Debug)]
pub struct CentralLimitCheck {
    pub report: ConvergenceReport,
    /// `conv(M_H A)`.
    pub reference: SetRep,
    /// `√n·D(K_1)/2^{m-1} + budget_m` for each recorded step.
    pub bounds: Vec<f64>,
    /// First step whose certified upper distance exceeds its bound.
    pub violation: Option<usize>,
    /// Whether some iterate came within `tol` of the reference.
    pub reached_tol: bool,
}

impl CentralLimitCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none() && self.reached_tol
    }
}

/// Repeats `M_H` on `a` and measures every iterate against the limit
/// `conv(M_H A)`, checking the rate `√n·D(K_1)/2^{m-1}` plus the recorded
/// rounding budget at every step.
pub fn iterated_central_limit_check(
    a: &SetRep,
    h: &Subspace,
    m_max: usize,
    tol: f64,
    opts: &RunOptions,
) -> Result<CentralLimitCheck> {
    let spec = ScheduleSpec::single(h.clone(), m_max, tol, Operator::Minkowski)?;
    let (k1, _) = step(Operator::Minkowski, a, h, opts)?;
    let reference = k1.convex_hull()?;
    let d1 = k1.diameter();
    let root_n = (a.dim() as f64).sqrt();
    let mut bounds = Vec::new();
    let mut dists = Vec::new();
    let mut violation = None;
    let mut reached_tol = false;
    let (_, mut report) = run_schedule_observed(a, &spec, opts, |r, k| {
        let bound = root_n * d1 / 2f64.powi(r.step as i32 - 1) + r.budget;
        // fine enough to certify both the bound and the tolerance
        let res = opts.resolution.unwrap_or((tol / 4.0).max(bound / 64.0));
        let (v, err) = k.hausdorff_with(&reference, res)?;
        if v - err > bound && violation.is_none() {
            violation = Some(r.step);
        }
        reached_tol |= v + err < tol;
        bounds.push(bound);
        dists.push((v, err));
        Ok(())
    })?;
    for (r, d) in report.records.iter_mut().zip(dists) {
        r.dh_ref = Some(d);
    }
    Ok(CentralLimitCheck { report, reference, bounds, violation, reached_tol })
}

/// Distance of a Minkowski sum from its hull against the convexification
/// bound `√n·max D(A_j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SfsGap {
    pub gap: f64,
    /// Error bound of `gap`.
    pub err: f64,
    pub bound: f64,
}

impl SfsGap {
    pub fn holds(&self) -> bool {
        self.gap <= self.bound + self.err
    }
}

/// `d_H(ΣA_j, conv ΣA_j)` and `√n·max_j D(A_j)`.
pub fn sfs_gap(sets: &[SetRep]) -> Result<SfsGap> {
    let first = sets.first().ok_or(Error::EmptySet)?;
    if first.dim() == 3 {
        return Err(Error::Unsupported("hull distances are available in dimensions 1 and 2".into()));
    }
    let mut sum = first.clone();
    for s in &sets[1..] {
        sum = sum.minkowski_sum(s)?;
    }
    let hull = sum.convex_hull()?;
    let (gap, err) = sum.hausdorff(&hull)?;
    let dmax = sets.iter().map(SetRep::diameter).fold(0.0, f64::max);
    Ok(SfsGap { gap, err, bound: (first.dim() as f64).sqrt() * dmax })
}

/// Reflection test for one family member.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KlainMember {
    pub index: usize,
    /// `d_H(final, R_Q final)` and its error bound.
    pub dist: f64,
    pub err: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlainCheck {
    /// Whether the run stopped on tolerance.
    pub converged: bool,
    pub members: Vec<KlainMember>,
}

impl KlainCheck {
    pub fn all_hold(&self) -> bool {
        self.members.iter().all(|m| m.holds)
    }
}

/// Checks `d_H(final, R_Q final) ≤ 2·tol` for every family member used in
/// the last quarter of the executed steps, the finite-run stand-in for
/// "used infinitely often".
pub fn klain_limit_symmetry_check(report: &ConvergenceReport, spec: &ScheduleSpec, last: &SetRep) -> Result<KlainCheck> {
    let n = report.steps();
    let tail = n.div_ceil(4);
    let mut used: Vec<usize> = report.records[n - tail..].iter().map(|r| r.subspace).collect();
    used.sort_unstable();
    used.dedup();
    let mut members = Vec::with_capacity(used.len());
    for index in used {
        let (img, e) = last.reflect(&spec.family[index])?;
        let (dist, err) = last.hausdorff(&img)?;
        let err = err + e;
        members.push(KlainMember { index, dist, err, holds: dist <= 2.0 * spec.tol });
    }
    Ok(KlainCheck { converged: report.stop_reason == StopReason::ToleranceMet, members })
}

/// One row of a rotation-mean run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HadwigerRow {
    pub n: usize,
    pub circumradius: f64,
    pub inradius: f64,
    pub ratio: f64,
    pub mean_width: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HadwigerReport {
    pub rows: Vec<HadwigerRow>,
    pub tol_ball: f64,
}

impl HadwigerReport {
    pub fn first_ratio(&self) -> f64 {
        self.rows.first().map_or(f64::NAN, |r| r.ratio)
    }

    pub fn final_ratio(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.ratio)
    }

    pub fn holds(&self) -> bool {
        self.final_ratio() < self.first_ratio() && self.final_ratio() < 1.0 + self.tol_ball
    }
}

/// Default ball tolerance for [`hadwiger_rounding_run`].
pub const DEFAULT_TOL_BALL: f64 = 0.05;

/// Rotation means `(1/N) Σ R_{2πk/N} conv A` for each `N` in `counts`,
/// recording the circumradius/inradius ratio about the origin. The hull of
/// a rotation mean of `A` is the rotation mean of its hull, so the hull is
/// used throughout.
pub fn hadwiger_rounding_run(a: &SetRep, counts: &[usize], tol_ball: f64) -> Result<HadwigerReport> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: a.dim() });
    }
    let hull = a.hull_polygon()?;
    if hull.len() < 2 {
        return Err(Error::Hypothesis("the hull is a single point".into()));
    }
    let hull = SetRep::from(hull);
    let mut rows = Vec::with_capacity(counts.len());
    for &n in counts {
        let (m, _) = blaschke_rotation_mean(&hull, n)?;
        let p = m.as_polygon().expect("polygon in, polygon out");
        let (circumradius, inradius) = (p.circumradius(), p.inradius());
        rows.push(HadwigerRow { n, circumradius, inradius, ratio: circumradius / inradius, mean_width: p.mean_width() });
    }
    Ok(HadwigerReport { rows, tol_ball })
}

/// Lockstep comparison of a run from `A` with the run from `conv A`.
#[derive(Clone, Debug)]
pub struct HullComparison {
    pub report: ConvergenceReport,
    pub hull_report: ConvergenceReport,
    /// `(d_H(K_m(A), K_m(conv A)), error, bound)` per step, where the bound
    /// is `√n·D(A)/t_m` plus the rounding budget.
    pub steps: Vec<(f64, f64, f64)>,
    pub violation: Option<usize>,
    /// Distance between the two final sets and its error bound.
    pub final_dh: (f64, f64),
    pub tol: f64,
}

impl HullComparison {
    pub fn limits_agree(&self) -> bool {
        self.final_dh.0 <= 2.0 * self.tol
    }

    pub fn holds(&self) -> bool {
        self.violation.is_none() && self.limits_agree()
    }
}

fn hull_rep(a: &SetRep) -> Result<SetRep> {
    match a {
        SetRep::Grid(g) => Ok(g.hull_fill().into()),
        SetRep::Points(s) if s.dim() == 3 => Err(Error::Unsupported("3-D point hulls have no body representation".into())),
        _ => a.convex_hull(),
    }
}

/// Runs `spec` from `A` and from `conv A`, checking at each step the
/// averaged-sum bound `d_H(K_m(A), K_m(conv A)) ≤ √n·D(A)/t_m + budget`.
pub fn compare_with_hull_run(a: &SetRep, spec: &ScheduleSpec, opts: &RunOptions) -> Result<HullComparison> {
    if !matches!(spec.operator, Operator::Minkowski | Operator::IsometryMean) {
        return Err(Error::Unsupported(format!("hull comparison needs an averaging operator, got {}", spec.operator)));
    }
    let hull = hull_rep(a)?;
    let root_n = (a.dim() as f64).sqrt();
    let d0 = a.diameter();
    let mut shadow = hull.clone();
    let mut steps = Vec::new();
    let mut violation = None;
    let (last, report) = run_schedule_observed(a, spec, opts, |r, k| {
        shadow = step(spec.operator, &shadow, &spec.family[r.subspace], opts)?.0;
        let t = r.summands.expect("averaging operator") as f64;
        let bound = root_n * d0 / t + r.budget;
        let res = opts.resolution.unwrap_or(bound / 16.0).max(f64::MIN_POSITIVE);
        let (d, err) = k.hausdorff_with(&shadow, res)?;
        if d - err > bound && violation.is_none() {
            violation = Some(r.step);
        }
        steps.push((d, err, bound));
        Ok(())
    })?;
    let (hull_last, hull_report) = run_schedule_observed(&hull, spec, opts, |_, _| Ok(()))?;
    let res = opts.resolution.unwrap_or(spec.tol / 2.0);
    let final_dh = distance(&last, &hull_last, Some(res))?;
    Ok(HullComparison { report, hull_report, steps, violation, final_dh, tol: spec.tol })
}
