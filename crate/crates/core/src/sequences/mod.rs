//! Iterated symmetrization along schedules drawn from a finite family of
//! subspaces, with per-step telemetry.

pub mod checks;
pub mod idempotency;

use std::fmt::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::sets::point_set::DEFAULT_PAIR_CAP;
use crate::sets::SetRep;
use crate::symmetrize::{apply_operator, Operator};

pub use checks::{
    compare_with_hull_run, hadwiger_rounding_run, iterated_central_limit_check, klain_limit_symmetry_check, sfs_gap,
    CentralLimitCheck, HadwigerReport, HullComparison, KlainCheck, SfsGap,
};
pub use idempotency::{idempotency_index_1d, mean_index_1d, IdempotencyWitness, WitnessStop};

/// Number of consecutive sub-tolerance steps that count as convergence.
pub const CAUCHY_WINDOW: usize = 3;

/// Grid refinements allowed below the input spacing in 1-D and 2-D.
pub const GRID_REFINE_CAP_2D: u32 = 8;
/// Grid refinements allowed below the input spacing in 3-D.
pub const GRID_REFINE_CAP_3D: u32 = 5;

/// Order in which family members are visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// The given indices into the family, in order.
    Explicit(Vec<usize>),
    /// `Q_1, Q_2, …, Q_s, Q_1, …`
    Cyclic,
    /// Uniform draws from a ChaCha8 stream.
    Random { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ScheduleSpec {
    pub family: Vec<Subspace>,
    pub schedule: Schedule,
    pub max_steps: usize,
    pub tol: f64,
    pub operator: Operator,
}

impl ScheduleSpec {
    pub fn new(family: Vec<Subspace>, schedule: Schedule, max_steps: usize, tol: f64, operator: Operator) -> Result<Self> {
        let spec = ScheduleSpec { family, schedule, max_steps, tol, operator };
        spec.validate()?;
        Ok(spec)
    }

    /// A single subspace applied repeatedly.
    pub fn single(h: Subspace, max_steps: usize, tol: f64, operator: Operator) -> Result<Self> {
        Self::new(vec![h], Schedule::Cyclic, max_steps, tol, operator)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSchedule(m));
        if self.family.is_empty() {
            return bad("the subspace family is empty".into());
        }
        let n = self.family[0].ambient_dim();
        if let Some(q) = self.family.iter().find(|q| q.ambient_dim() != n) {
            return bad(format!("family mixes ambient dimensions {n} and {}", q.ambient_dim()));
        }
        if self.max_steps == 0 {
            return bad("max_steps must be at least 1".into());
        }
        if self.tol.is_nan() || self.tol <= 0.0 || !self.tol.is_finite() {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if let Schedule::Explicit(ix) = &self.schedule {
            if ix.is_empty() {
                return bad("explicit schedule is empty".into());
            }
            if let Some(&i) = ix.iter().find(|&&i| i >= self.family.len()) {
                return bad(format!("schedule index {i} out of range for a family of {}", self.family.len()));
            }
        }
        Ok(())
    }

    /// Family indices `H_1, H_2, …` for the steps that may be executed.
    pub fn indices(&self) -> Vec<usize> {
        let s = self.family.len();
        match &self.schedule {
            Schedule::Explicit(ix) => ix.iter().copied().take(self.max_steps).collect(),
            Schedule::Cyclic => (0..self.max_steps).map(|m| m % s).collect(),
            Schedule::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..self.max_steps).map(|_| rng.gen_range(0..s)).collect()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    ToleranceMet,
    MaxSteps,
    CapExceeded,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::ToleranceMet => "tolerance_met",
            StopReason::MaxSteps => "max_steps",
            StopReason::CapExceeded => "cap_exceeded",
        })
    }
}

/// Telemetry for step `m` (the set `K_m`).
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    /// Index of `H_m` in the family.
    pub subspace: usize,
    /// `d_H(K_m, K_{m-1})` and its error bound.
    pub dh_prev: f64,
    pub dh_prev_err: f64,
    /// `d_H(K_m, reference)` and its error bound, when a reference is given.
    pub dh_ref: Option<(f64, f64)>,
    pub diameter: f64,
    pub volume: f64,
    pub mean_width: Option<f64>,
    /// Number of isometric copies of the input averaged into `K_m`, for
    /// operators that are isometry means.
    pub summands: Option<u64>,
    /// Accumulated rounding error of `K_m` against the exact iterate.
    pub budget: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub records: Vec<StepRecord>,
    pub stop_reason: StopReason,
    /// Message of the error that stopped a capped run.
    pub cap_detail: Option<String>,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str = "step,subspace,dh_prev,dh_ref,diameter,volume,mean_width";

    pub fn steps(&self) -> usize {
        self.records.len()
    }

    pub fn last(&self) -> Option<&StepRecord> {
        self.records.last()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.step,
                r.subspace,
                r.dh_prev,
                opt(r.dh_ref.map(|d| d.0)),
                r.diameter,
                r.volume,
                opt(r.mean_width)
            );
        }
        out
    }
}

/// Knobs of [`run_schedule_with`] beyond the schedule itself.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Limit set to measure each iterate against.
    pub reference: Option<SetRep>,
    /// Sampling resolution for mixed polygon distances (default: relative).
    pub resolution: Option<f64>,
    /// Pairwise-sum cap for point sets.
    pub pair_cap: usize,
    /// Grid refinements allowed below the input spacing (default by dimension).
    pub refine_cap: Option<u32>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { reference: None, resolution: None, pair_cap: DEFAULT_PAIR_CAP, refine_cap: None }
    }
}

pub(crate) fn distance(a: &SetRep, b: &SetRep, resolution: Option<f64>) -> Result<(f64, f64)> {
    match resolution {
        Some(r) => a.hausdorff_with(b, r),
        None => a.hausdorff(b),
    }
}

pub(crate) fn step(op: Operator, k: &SetRep, h: &Subspace, opts: &RunOptions) -> Result<(SetRep, f64)> {
    match (op, k) {
        (Operator::Minkowski, SetRep::Points(s)) => {
            let (m, e) = s.minkowski_symmetrize_capped(h, opts.pair_cap)?;
            Ok((m.into(), e))
        }
        (Operator::IsometryMean, SetRep::Points(s)) => {
            let (m, e) = s.isometry_mean_capped(&[crate::linalg::Isometry::identity(s.dim()), h.reflection()], opts.pair_cap)?;
            Ok((m.into(), e))
        }
        (_, SetRep::Grid(_)) => {
            let (g, e) = apply_operator(op, k, h)?;
            Ok((g.as_grid().expect("grid in, grid out").coarsen().into(), e))
        }
        _ => apply_operator(op, k, h),
    }
}

fn refinements(input: &SetRep, k: &SetRep) -> u32 {
    match (input, k) {
        (SetRep::Grid(a), SetRep::Grid(b)) => (a.spacing().exponent() - b.spacing().exponent()).max(0) as u32,
        _ => 0,
    }
}

/// Runs `spec` from `a` with default options.
pub fn run_schedule(a: &SetRep, spec: &ScheduleSpec) -> Result<(SetRep, ConvergenceReport)> {
    run_schedule_with(a, spec, &RunOptions::default())
}

/// `K_m = ◇_{H_m} ⋯ ◇_{H_1} A`, stopping after at least [`CAUCHY_WINDOW`]
/// consecutive steps moving less than `tol` that between them use every
/// subspace of the schedule, at a fixed point of every family member,
/// at `max_steps`, or when a size cap is hit.
pub fn run_schedule_with(a: &SetRep, spec: &ScheduleSpec, opts: &RunOptions) -> Result<(SetRep, ConvergenceReport)> {
    run_schedule_observed(a, spec, opts, |_, _| Ok(()))
}

/// [`run_schedule_with`], calling `observe` on every recorded iterate.
pub fn run_schedule_observed(
    a: &SetRep,
    spec: &ScheduleSpec,
    opts: &RunOptions,
    mut observe: impl FnMut(&StepRecord, &SetRep) -> Result<()>,
) -> Result<(SetRep, ConvergenceReport)> {
    spec.validate()?;
    if spec.family[0].ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: spec.family[0].ambient_dim() });
    }
    if let SetRep::Grid(_) = a {
    } else if matches!(spec.operator, Operator::Fiber | Operator::Steiner) {
        return Err(Error::RepresentationMismatch(format!("{} symmetrization needs a grid, got {}", spec.operator, a.kind())));
    }
    let refine_cap = opts.refine_cap.unwrap_or(if a.dim() == 3 { GRID_REFINE_CAP_3D } else { GRID_REFINE_CAP_2D });
    let averages = matches!(spec.operator, Operator::Minkowski | Operator::IsometryMean);

    let mut cur = a.clone();
    let mut records = Vec::new();
    let mut budget = 0.0;
    let mut quiet = 0usize;
    // a repeated subspace leaves its own symmetral unchanged, so a quiet
    // streak only counts once it has exercised every scheduled subspace
    let indices = spec.indices();
    let mut unused = vec![true; spec.family.len()];
    for &i in &indices {
        unused[i] = false;
    }
    let mut covered = unused.clone();
    let mut stop = StopReason::MaxSteps;
    let mut cap_detail = None;
    for (m, &qi) in indices.iter().enumerate() {
        let h = &spec.family[qi];
        let next = match step(spec.operator, &cur, h, opts) {
            Ok((k, e)) if refinements(a, &k) <= refine_cap => {
                budget += e;
                k
            }
            Ok(_) => {
                stop = StopReason::CapExceeded;
                cap_detail = Some(format!("grid refinement beyond {refine_cap} levels"));
                break;
            }
            Err(Error::CapExceeded(msg)) => {
                stop = StopReason::CapExceeded;
                cap_detail = Some(msg);
                break;
            }
            Err(e) => return Err(e),
        };
        let (dh, dh_err) = distance(&next, &cur, opts.resolution)?;
        let dh_ref = match &opts.reference {
            Some(r) => Some(distance(&next, r, opts.resolution)?),
            None => None,
        };
        records.push(StepRecord {
            step: m + 1,
            subspace: qi,
            dh_prev: dh,
            dh_prev_err: dh_err,
            dh_ref,
            diameter: next.diameter(),
            volume: next.volume().to_f64(),
            mean_width: next.mean_width_2d().ok(),
            summands: averages.then(|| 1u64.checked_shl(m as u32 + 1).unwrap_or(u64::MAX)),
            budget,
        });
        observe(records.last().expect("just pushed"), &next)?;
        cur = next;
        if dh + dh_err < spec.tol {
            quiet += 1;
            covered[qi] = true;
            let streak_done = quiet >= CAUCHY_WINDOW && covered.iter().all(|&c| c);
            if streak_done || is_fixed_point(&cur, spec, opts)? {
                stop = StopReason::ToleranceMet;
                break;
            }
        } else {
            quiet = 0;
            covered.clone_from(&unused);
        }
    }
    Ok((cur, ConvergenceReport { records, stop_reason: stop, cap_detail }))
}

/// Whether every family member moves `k` by less than `tol`.
fn is_fixed_point(k: &SetRep, spec: &ScheduleSpec, opts: &RunOptions) -> Result<bool> {
    let mut seen = vec![false; spec.family.len()];
    for &i in &spec.indices() {
        if std::mem::replace(&mut seen[i], true) {
            continue;
        }
        let moved = match step(spec.operator, k, &spec.family[i], opts) {
            Ok((next, e)) => {
                let (d, err) = distance(&next, k, opts.resolution)?;
                d + err + e
            }
            Err(Error::CapExceeded(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if moved >= spec.tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::sets::grid::GridSet;
    use crate::sets::point_set::FinitePointSet;
    use crate::sets::polygon::ConvexPolygon;

    fn two_point() -> SetRep {
        FinitePointSet::from_points(2, &[vec![-1.0, 0.0], vec![1.0, 0.0]], None).unwrap().into()
    }

    #[test]
    fn schedule_indices() {
        let fam = vec![Subspace::axes(2, &[0]).unwrap(), Subspace::axes(2, &[1]).unwrap()];
        let s = ScheduleSpec::new(fam.clone(), Schedule::Cyclic, 5, 1e-6, Operator::Minkowski).unwrap();
        assert_eq!(s.indices(), vec![0, 1, 0, 1, 0]);
        let r = ScheduleSpec::new(fam.clone(), Schedule::Random { seed: 7 }, 50, 1e-6, Operator::Minkowski).unwrap();
        assert_eq!(r.indices(), r.indices());
        assert!(r.indices().contains(&0) && r.indices().contains(&1));
        assert!(ScheduleSpec::new(fam.clone(), Schedule::Explicit(vec![0, 2]), 5, 1e-6, Operator::Minkowski).is_err());
        assert!(ScheduleSpec::new(vec![], Schedule::Cyclic, 5, 1e-6, Operator::Minkowski).is_err());
        assert!(ScheduleSpec::new(fam.clone(), Schedule::Cyclic, 0, 1e-6, Operator::Minkowski).is_err());
        assert!(ScheduleSpec::new(fam, Schedule::Cyclic, 3, 0.0, Operator::Minkowski).is_err());
    }

    #[test]
    fn two_point_run_halves_toward_segment() {
        let spec = ScheduleSpec::single(Subspace::axes(2, &[1]).unwrap(), 40, 1e-6, Operator::Minkowski).unwrap();
        let (_, rep) = run_schedule(&two_point(), &spec).unwrap();
        assert_eq!(rep.stop_reason, StopReason::CapExceeded);
        assert!(rep.steps() >= 8);
        for w in rep.records.windows(2).skip(1) {
            assert_eq!(w[1].dh_prev * 2.0, w[0].dh_prev);
        }
    }

    #[test]
    fn symmetric_convex_polygon_stops_at_step_one() {
        let p: SetRep = ConvexPolygon::regular(6, 1.0, 0.0).unwrap().into();
        let spec = ScheduleSpec::single(Subspace::axes(2, &[0]).unwrap(), 20, 1e-9, Operator::Minkowski).unwrap();
        let (out, rep) = run_schedule(&p, &spec).unwrap();
        assert_eq!(rep.stop_reason, StopReason::ToleranceMet);
        assert_eq!(rep.steps(), 1);
        assert!(out.as_polygon().unwrap().hausdorff(p.as_polygon().unwrap()) < 1e-12);
    }

    #[test]
    fn repeated_subspace_is_not_convergence() {
        let tri: SetRep = ConvexPolygon::from_points(&[[0.0, 0.0], [2.0, 0.3], [0.5, 1.5]]).unwrap().into();
        let fam = vec![Subspace::line_2d(0.0), Subspace::line_2d(std::f64::consts::FRAC_PI_4)];
        let mut ix = vec![0; 6];
        ix.extend([1, 0].repeat(40));
        let spec = ScheduleSpec::new(fam, Schedule::Explicit(ix), 200, 1e-9, Operator::Minkowski).unwrap();
        let (out, rep) = run_schedule(&tri, &spec).unwrap();
        assert!(rep.steps() > 6);
        assert_eq!(rep.stop_reason, StopReason::ToleranceMet);
        let q = out.reflect(&spec.family[1]).unwrap().0;
        assert!(out.hausdorff(&q).unwrap().0 < 1e-8);
    }

    #[test]
    fn grid_runs_respect_refinement_cap() {
        let g: SetRep = GridSet::new(2, Dyadic::ONE, [[0, 0, 0], [3, 2, 0]]).unwrap().into();
        let spec = ScheduleSpec::single(Subspace::axes(2, &[0]).unwrap(), 30, 1e-9, Operator::Minkowski).unwrap();
        let (out, rep) = run_schedule(&g, &spec).unwrap();
        assert_eq!(rep.stop_reason, StopReason::CapExceeded);
        assert!(refinements(&g, &out) <= GRID_REFINE_CAP_2D);
    }

    #[test]
    fn csv_layout() {
        let spec = ScheduleSpec::single(Subspace::axes(2, &[1]).unwrap(), 2, 1e-6, Operator::Minkowski).unwrap();
        let (_, rep) = run_schedule(&two_point(), &spec).unwrap();
        let csv = rep.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], ConvergenceReport::CSV_HEADER);
        // the hull is the segment [-1, 1] × {0}, of mean width 4/π
        let w = 4.0 / std::f64::consts::PI;
        assert_eq!(lines[1], format!("1,0,1,,2,0,{w}"));
        assert_eq!(lines[2], format!("2,0,0.5,,2,0,{w}"));
    }

    #[test]
    fn fiber_needs_grid() {
        let spec = ScheduleSpec::single(Subspace::axes(2, &[1]).unwrap(), 2, 1e-6, Operator::Fiber).unwrap();
        assert!(matches!(run_schedule(&two_point(), &spec), Err(Error::RepresentationMismatch(_))));
    }
}
