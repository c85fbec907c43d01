//! Boundaries of grid sets and the boundary-sum identities.
//!
//! All topological hypotheses are decided on the realized set (the union
//! of closed cubes), where they are exact:
//!
//! * the boundary is the union of faces between member and non-member
//!   cells; two faces are connected when they share a lattice vertex;
//! * `A + x ⊂ int B` for some real `x` iff some integer translate of
//!   `A ⊕ {0,1}ⁿ` (the cell-wise sum with one cell) lies in `B`;
//! * holes are the bounded components of the complement, found by flood
//!   fill through faces.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::sequences::{run_schedule, ConvergenceReport, ScheduleSpec, StopReason};
use crate::sets::grid::{GridSet, MAX_ENUMERATED_CELLS};
use crate::sets::polygon::ConvexPolygon;
use crate::sets::SetRep;
use crate::symmetrize::{minkowski_symmetrize, Operator};

type Cell = [i64; 3];

fn face_steps(dim: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(2 * dim);
    for a in 0..dim {
        for s in [-1, 1] {
            let mut d = [0; 3];
            d[a] = s;
            out.push(d);
        }
    }
    out
}

fn add(a: Cell, b: Cell) -> Cell {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Cells with a face neighbour outside `A`.
pub fn grid_boundary(a: &GridSet) -> GridSet {
    a.rim()
}

fn padded_box(a: &GridSet) -> Result<(Cell, Cell)> {
    let (mut lo, mut hi) = a.bbox();
    let mut total: u64 = 1;
    for k in 0..a.dim() {
        lo[k] -= 1;
        hi[k] += 1;
        total = total.saturating_mul((hi[k] - lo[k] + 1) as u64);
    }
    if total > MAX_ENUMERATED_CELLS {
        return Err(Error::CapExceeded(format!("{total} cells in the padded bounding box")));
    }
    Ok((lo, hi))
}

/// Complement cells of the padded bounding box reachable from its corner.
fn exterior(a: &GridSet) -> Result<HashSet<Cell>> {
    let (lo, hi) = padded_box(a)?;
    let members: HashSet<Cell> = a.cells().into_iter().collect();
    let steps = face_steps(a.dim());
    let inside = |c: &Cell| (0..3).all(|k| lo[k] <= c[k] && c[k] <= hi[k]);
    let mut seen = HashSet::from([lo]);
    let mut queue = VecDeque::from([lo]);
    while let Some(c) = queue.pop_front() {
        for &d in &steps {
            let n = add(c, d);
            if inside(&n) && !members.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    Ok(seen)
}

/// `A` with its holes filled: the complement of the unbounded component of
/// `ℝⁿ ∖ A`.
pub fn fill_holes(a: &GridSet) -> Result<GridSet> {
    let (lo, hi) = padded_box(a)?;
    let ext = exterior(a)?;
    let mut cells = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                if !ext.contains(&[x, y, z]) {
                    cells.push([x, y, z]);
                }
            }
        }
    }
    GridSet::new(a.dim(), a.spacing(), cells)
}

/// Boundary cells adjacent to the unbounded component of the complement;
/// rims of holes are excluded.
pub fn external_boundary(a: &GridSet) -> Result<GridSet> {
    let ext = exterior(a)?;
    let steps = face_steps(a.dim());
    let cells: Vec<Cell> = a.rim().cells().into_iter().filter(|&c| steps.iter().any(|&d| ext.contains(&add(c, d)))).collect();
    GridSet::new(a.dim(), a.spacing(), cells)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.parent[a] = b;
    }
}

/// Lattice vertices of every boundary face, one list per face.
fn boundary_faces(a: &GridSet) -> Vec<Vec<Cell>> {
    let n = a.dim();
    let members: HashSet<Cell> = a.cells().into_iter().collect();
    let mut faces = Vec::new();
    for &c in &members {
        for axis in 0..n {
            for s in [-1i64, 1] {
                let mut d = [0; 3];
                d[axis] = s;
                if members.contains(&add(c, d)) {
                    continue;
                }
                let others: Vec<usize> = (0..n).filter(|&k| k != axis).collect();
                let mut verts = Vec::with_capacity(1 << others.len());
                for bits in 0..(1usize << others.len()) {
                    let mut v = c;
                    v[axis] += (s + 1) / 2;
                    for (j, &k) in others.iter().enumerate() {
                        v[k] += ((bits >> j) & 1) as i64;
                    }
                    verts.push(v);
                }
                faces.push(verts);
            }
        }
    }
    faces
}

/// Number of connected components of the topological boundary of the
/// realized set.
pub fn boundary_components(a: &GridSet) -> usize {
    let faces = boundary_faces(a);
    let mut ids: HashMap<Cell, usize> = HashMap::new();
    for f in &faces {
        for v in f {
            let next = ids.len();
            ids.entry(*v).or_insert(next);
        }
    }
    let mut dsu = Dsu { parent: (0..ids.len()).collect() };
    for f in &faces {
        for v in &f[1..] {
            dsu.union(ids[&f[0]], ids[v]);
        }
    }
    let mut roots: Vec<usize> = (0..ids.len()).map(|i| dsu.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

fn boundary_vertices(a: &GridSet) -> HashSet<Cell> {
    boundary_faces(a).into_iter().flatten().collect()
}

/// An integer translate `t` with `A' + t ⊆ B` for `A' = A ⊕ {0,1}ⁿ`, i.e.
/// a translate placing `A` in the interior of `B`.
pub fn interior_translate(a: &GridSet, b: &GridSet) -> Result<Option<Cell>> {
    let (a, b) = a.aligned(b)?;
    let unit = GridSet::new(a.dim(), a.spacing(), [[0, 0, 0]])?;
    let thick = a.minkowski_sum(&unit)?;
    let (alo, ahi) = thick.bbox();
    let (blo, bhi) = b.bbox();
    let n = a.dim();
    let mut lo = [0; 3];
    let mut hi = [0; 3];
    for k in 0..n {
        lo[k] = blo[k] - alo[k];
        hi[k] = bhi[k] - ahi[k];
        if lo[k] > hi[k] {
            return Ok(None);
        }
    }
    let members: HashSet<Cell> = b.cells().into_iter().collect();
    let cells = thick.cells();
    let mut shifts = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                shifts.push([x, y, z]);
            }
        }
    }
    Ok(shifts.into_par_iter().find_first(|&t| cells.iter().all(|&c| members.contains(&add(c, t)))))
}

/// Hypotheses of the boundary-sum identity, checked on the hole-filled sets.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySumGate {
    pub dim_ok: bool,
    pub k_boundary_connected: bool,
    pub l_boundary_connected: bool,
    /// A translate `t` with `K + t ⊂ int(−L)`.
    pub k_inside_neg_l: Option<Cell>,
    /// A translate `t` with `−L + t ⊂ int K`.
    pub neg_l_inside_k: Option<Cell>,
}

impl BoundarySumGate {
    pub fn passes(&self) -> bool {
        self.dim_ok
            && self.k_boundary_connected
            && self.l_boundary_connected
            && self.k_inside_neg_l.is_none()
            && self.neg_l_inside_k.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySumCheck {
    pub gate: BoundarySumGate,
    /// `∂K ⊕ ∂L ⊆ K ⊕ L`.
    pub inclusion: bool,
    /// `K ⊕ L = ∂K ⊕ ∂L`.
    pub equal: bool,
    /// A cell of `K ⊕ L` missing from `∂K ⊕ ∂L`.
    pub witness: Option<Cell>,
}

impl BoundarySumCheck {
    /// The identity holds, or its hypotheses fail (no claim).
    pub fn consistent(&self) -> bool {
        self.inclusion && (!self.gate.passes() || self.equal)
    }
}

/// Compares `K ⊕ L` with `∂K ⊕ ∂L` cell by cell and reports the
/// hypotheses: connected boundaries and no translate of `K` strictly inside
/// `−L` or vice versa (both for the hole-filled sets).
pub fn boundary_sum_check(k: &GridSet, l: &GridSet) -> Result<BoundarySumCheck> {
    let (k, l) = k.aligned(l)?;
    let (kf, lf) = (fill_holes(&k)?, fill_holes(&l)?);
    let neg_lf = lf.negate();
    let gate = BoundarySumGate {
        dim_ok: k.dim() >= 2,
        k_boundary_connected: boundary_components(&kf) == 1,
        l_boundary_connected: boundary_components(&lf) == 1,
        k_inside_neg_l: interior_translate(&kf, &neg_lf)?,
        neg_l_inside_k: interior_translate(&neg_lf, &kf)?,
    };
    let full = k.minkowski_sum(&l)?;
    let rims = k.rim().minkowski_sum(&l.rim())?;
    let inclusion = rims.is_subset_of(&full)?;
    let witness = full.difference(&rims)?.map(|d| d.cells()[0]);
    Ok(BoundarySumCheck { gate, inclusion, equal: inclusion && witness.is_none(), witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryHypothesis {
    KBoundaryDisconnected,
    LBoundaryDisconnected,
    Disjoint,
    KStrictlyInsideL,
    LStrictlyInsideK,
}

/// A point of `∂K ∩ ∂L`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonBoundary {
    /// Lattice vertex on both boundaries, in exact coordinates.
    pub point: Option<Vec<Dyadic>>,
    /// A boundary cell shared by both sets, when one exists.
    pub cell: Option<Cell>,
    pub failed: Option<BoundaryHypothesis>,
}

fn strictly_inside(a: &GridSet, b: &GridSet) -> bool {
    // every cube of `a` together with its 3ⁿ − 1 neighbours lies in `b`
    let members: HashSet<Cell> = b.cells().into_iter().collect();
    let n = a.dim();
    let offsets: Vec<Cell> = (0..3usize.pow(n as u32))
        .map(|i| {
            let mut d = [0; 3];
            for (k, slot) in d.iter_mut().enumerate().take(n) {
                *slot = ((i / 3usize.pow(k as u32)) % 3) as i64 - 1;
            }
            d
        })
        .collect();
    a.cells().iter().all(|&c| offsets.iter().all(|&d| members.contains(&add(c, d))))
}

/// A common boundary point of `K` and `L` when both boundaries are
/// connected, the sets share a cell and neither lies in the interior of
/// the other.
pub fn common_boundary_witness(k: &GridSet, l: &GridSet) -> Result<CommonBoundary> {
    let (k, l) = k.aligned(l)?;
    let none = |h| Ok(CommonBoundary { point: None, cell: None, failed: Some(h) });
    if boundary_components(&k) != 1 {
        return none(BoundaryHypothesis::KBoundaryDisconnected);
    }
    if boundary_components(&l) != 1 {
        return none(BoundaryHypothesis::LBoundaryDisconnected);
    }
    if k.intersection(&l)?.is_none() {
        return none(BoundaryHypothesis::Disjoint);
    }
    if strictly_inside(&k, &l) {
        return none(BoundaryHypothesis::KStrictlyInsideL);
    }
    if strictly_inside(&l, &k) {
        return none(BoundaryHypothesis::LStrictlyInsideK);
    }
    let vl = boundary_vertices(&l);
    let mut common: Vec<Cell> = boundary_vertices(&k).into_iter().filter(|v| vl.contains(v)).collect();
    common.sort_unstable();
    let h = k.spacing();
    let point = common.first().map(|v| v[..k.dim()].iter().map(|&x| Dyadic::from_int(x) * h).collect());
    let cell = k.rim().intersection(&l.rim())?.map(|g| g.cells()[0]);
    Ok(CommonBoundary { point, cell, failed: None })
}

/// `d_H(A, hull_fill A)` with its error bound; zero for grid-convex sets.
pub fn convexity_gap(a: &GridSet) -> Result<(f64, f64)> {
    a.hausdorff(&a.hull_fill())
}

/// The grid form of `∂ conv C ⊆ C`: the hull fill `F` of `C` has a
/// connected boundary and its rim lies in `C`. Then `M_H C = M_H F` cell
/// for cell. (A union of cubes contains the boundary of its own hull only
/// when that hull is a box.)
pub fn contains_hull_boundary(c: &GridSet) -> Result<bool> {
    let f = c.hull_fill();
    Ok(boundary_components(&f) == 1 && f.rim().is_subset_of(c)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexificationCheck {
    pub gate: bool,
    /// `d_H(M_H C, M_H conv C)` and its error bound.
    pub dh: (f64, f64),
    /// `d_H(M_H C, hull_fill(M_H C))` and its error bound.
    pub convexity_gap: (f64, f64),
    /// Whether `M_H C` passes the exact grid convexity test.
    pub grid_convex: bool,
    /// One-cell collar `h√n` at the spacing of `M_H C`.
    pub collar: f64,
    pub holds: bool,
}

/// After checking `∂ conv C ⊆ C`, compares `M_H C` with `M_H conv C`
/// (the hull fill standing in for `conv C`); both agree and are convex up
/// to a one-cell collar.
pub fn one_step_convexification_check(c: &SetRep, h: &Subspace) -> Result<ConvexificationCheck> {
    let g = c
        .as_grid()
        .ok_or_else(|| Error::Unsupported(format!("the hull-boundary hypothesis is decided on grids, got {}", c.kind())))?;
    let gate = contains_hull_boundary(g)?;
    let (m, _) = minkowski_symmetrize(c, h)?;
    let (mh, _) = minkowski_symmetrize(&SetRep::from(g.hull_fill()), h)?;
    let (m, mh) = (m.as_grid().expect("grid").clone(), mh.as_grid().expect("grid").clone());
    let dh = m.hausdorff(&mh)?;
    let gap = convexity_gap(&m)?;
    let collar = m.collar();
    Ok(ConvexificationCheck {
        gate,
        dh,
        convexity_gap: gap,
        grid_convex: m.is_grid_convex(),
        collar,
        holds: gate && dh.0 <= collar && gap.0 <= collar,
    })
}

/// Sections of a 3-D grid orthogonal to axis `axis`, as 2-D grids.
fn sections(g: &GridSet, axis: usize) -> Result<Vec<GridSet>> {
    let keep: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    let mut by: HashMap<i64, Vec<Cell>> = HashMap::new();
    for c in g.cells() {
        by.entry(c[axis]).or_default().push([c[keep[0]], c[keep[1]], 0]);
    }
    let mut keys: Vec<i64> = by.keys().copied().collect();
    keys.sort_unstable();
    keys.into_iter().map(|k| GridSet::new(2, g.spacing(), by.remove(&k).expect("key"))).collect()
}

#[derive(Clone, Debug)]
pub struct FiberKlainReport {
    pub report: ConvergenceReport,
    pub hull_report: ConvergenceReport,
    /// Largest section convexity gap after the first step.
    pub section_gap: f64,
    pub sections_convex: bool,
    /// The last step moved the set by at most one collar.
    pub cauchy: bool,
    /// `d_H` between the final sets of the two runs and its error bound.
    pub limit_dh: (f64, f64),
    pub collar: f64,
}

impl FiberKlainReport {
    pub fn limits_match(&self) -> bool {
        self.limit_dh.0 <= self.collar
    }

    pub fn holds(&self) -> bool {
        self.sections_convex && self.cauchy && self.limits_match()
    }
}

/// Fiber symmetrization along lines of `ℝ³` from a set containing the
/// boundary of its hull, compared with the run from the filled hull.
pub fn fiber_klain_run(c: &GridSet, spec: &ScheduleSpec) -> Result<FiberKlainReport> {
    if c.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: c.dim() });
    }
    if spec.operator != Operator::Fiber {
        return Err(Error::InvalidSchedule(format!("fiber runs need the fiber operator, got {}", spec.operator)));
    }
    if let Some(q) = spec.family.iter().find(|q| q.dim() != 1 || !q.is_axis_aligned()) {
        return Err(Error::InvalidSchedule(format!("fiber runs need axis-aligned lines, got a {}-dimensional subspace", q.dim())));
    }
    if !contains_hull_boundary(c)? {
        return Err(Error::Hypothesis("the set does not contain the boundary of its hull".into()));
    }
    let a = SetRep::from(c.clone());
    let (last, report) = run_schedule(&a, spec)?;
    let hull = SetRep::from(c.hull_fill());
    let (hull_last, hull_report) = run_schedule(&hull, spec)?;
    let first = spec.indices()[0];
    let axis = spec.family[first].axis_indices().expect("axis-aligned")[0];
    let (k1, _) = crate::symmetrize::apply_operator(Operator::Fiber, &a, &spec.family[first])?;
    let k1 = k1.as_grid().expect("grid").clone();
    let mut section_gap: f64 = 0.0;
    for s in sections(&k1, axis)? {
        section_gap = section_gap.max(convexity_gap(&s)?.0);
    }
    let lg = last.as_grid().expect("grid");
    let collar = lg.collar();
    let cauchy = report.stop_reason == StopReason::ToleranceMet || report.last().is_some_and(|r| r.dh_prev <= collar);
    let limit_dh = lg.hausdorff(hull_last.as_grid().expect("grid"))?;
    Ok(FiberKlainReport {
        report,
        hull_report,
        section_gap,
        sections_convex: section_gap <= k1.collar(),
        cauchy,
        limit_dh,
        collar,
    })
}

/// One step of a rounding run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundingStep {
    pub step: usize,
    /// Family index of the line used (none at step 0).
    pub line: Option<usize>,
    pub circumradius: f64,
    pub inradius: f64,
    pub ratio: f64,
    pub mean_width: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KlartagReport {
    /// `sup_{x ∈ ∂ conv C} d(x, C)`: how far `C` is from containing the
    /// boundary of its hull.
    pub gate_gap: f64,
    pub gate_tol: f64,
    /// `d_H(M_{H_1} C, M_{H_1} conv C)` and its error bound.
    pub first_step_dh: (f64, f64),
    pub steps: Vec<RoundingStep>,
}

impl KlartagReport {
    pub fn gate_passes(&self) -> bool {
        self.gate_gap <= self.gate_tol
    }

    /// Largest relative deviation of the mean width from its initial value.
    pub fn mean_width_drift(&self) -> f64 {
        let w0 = self.steps[0].mean_width;
        self.steps.iter().map(|s| (s.mean_width - w0).abs() / w0).fold(0.0, f64::max)
    }

    pub fn final_ratio(&self) -> f64 {
        self.steps.last().expect("step 0 is always recorded").ratio
    }

    /// Mean width constant to `1e-9` and the sandwich ratio improved.
    pub fn holds(&self) -> bool {
        self.gate_passes() && self.mean_width_drift() <= 1e-9 && self.final_ratio() <= self.steps[0].ratio
    }
}

fn rounding_step(step: usize, line: Option<usize>, p: &ConvexPolygon) -> RoundingStep {
    let (circumradius, inradius) = (p.circumradius(), p.inradius());
    RoundingStep { step, line, circumradius, inradius, ratio: circumradius / inradius, mean_width: p.mean_width() }
}

fn boundary_gap(c: &SetRep) -> Result<f64> {
    match c {
        SetRep::Polygon(_) => Ok(0.0),
        SetRep::Points(s) => {
            let hull = c.hull_polygon()?;
            let tree = s.kdtree();
            let v = hull.vertices();
            let res = c.diameter() * crate::sets::hausdorff::DEFAULT_RELATIVE_RESOLUTION;
            let mut worst: f64 = 0.0;
            for i in 0..v.len() {
                let edge = ConvexPolygon::from_points(&[v[i], v[(i + 1) % v.len()]])?;
                let (d, e) = crate::sets::hausdorff::polygon_excess_from_points(&edge, &tree, res);
                worst = worst.max(d + e);
            }
            Ok(worst)
        }
        _ => Err(Error::Unsupported(format!("rounding runs take point sets or polygons, got {}", c.kind()))),
    }
}

/// Minkowski symmetrizations of a planar set along a schedule of lines,
/// recording the circumradius/inradius ratio about the origin and the
/// mean width of the hull at every step. The first symmetral of a set
/// containing the boundary of its hull is convex, so the run continues
/// from its hull.
pub fn klartag_rounding_run(c: &SetRep, spec: &ScheduleSpec, gate_tol: f64) -> Result<KlartagReport> {
    if c.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: c.dim() });
    }
    if spec.operator != Operator::Minkowski {
        return Err(Error::InvalidSchedule(format!("rounding runs use Minkowski symmetrization, got {}", spec.operator)));
    }
    let gate_gap = boundary_gap(c)?;
    if gate_gap > gate_tol {
        return Err(Error::Hypothesis(format!(
            "the boundary of the hull is {gate_gap} away from the set (tolerance {gate_tol})"
        )));
    }
    let hull = c.hull_polygon()?;
    let mut steps = vec![rounding_step(0, None, &hull)];
    let idx = spec.indices();
    let h1 = &spec.family[idx[0]];
    let (k1, _) = minkowski_symmetrize(c, h1)?;
    let c1 = hull.minkowski_symmetrize(h1)?;
    let first_step_dh = k1.hausdorff(&SetRep::from(c1.clone()))?;
    let mut cur = k1.hull_polygon()?;
    steps.push(rounding_step(1, Some(idx[0]), &cur));
    for (m, &qi) in idx.iter().enumerate().skip(1) {
        cur = cur.minkowski_symmetrize(&spec.family[qi])?;
        steps.push(rounding_step(m + 1, Some(qi), &cur));
    }
    Ok(KlartagReport { gate_gap, gate_tol, first_step_dh, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(lo: [i64; 2], hi: [i64; 2]) -> GridSet {
        GridSet::block(2, Dyadic::ONE, [lo[0], lo[1], 0], [hi[0], hi[1], 0]).unwrap()
    }

    fn ring(size: i64, width: i64) -> GridSet {
        let outer = block([0, 0], [size - 1, size - 1]);
        let hole = block([width, width], [size - 1 - width, size - 1 - width]);
        outer.difference(&hole).unwrap().unwrap()
    }

    #[test]
    fn rim_counts() {
        assert_eq!(grid_boundary(&block([0, 0], [2, 2])).cell_count(), 8);
        assert_eq!(grid_boundary(&block([0, 0], [3, 3])).cell_count(), 12);
        let one = block([4, 4], [4, 4]);
        assert_eq!(grid_boundary(&one), one);
        assert_eq!(external_boundary(&one).unwrap(), one);
    }

    #[test]
    fn external_boundary_skips_holes() {
        let b = block([0, 0], [5, 5]);
        assert_eq!(external_boundary(&b).unwrap(), grid_boundary(&b));
        let r = ring(8, 2);
        let ext = external_boundary(&r).unwrap();
        assert_eq!(ext.cell_count(), 28);
        assert_eq!(grid_boundary(&r).cell_count(), 28 + 16);
        assert!(ext.is_subset_of(&grid_boundary(&r)).unwrap());
        assert_eq!(fill_holes(&r).unwrap(), block([0, 0], [7, 7]));
    }

    #[test]
    fn boundary_components_counts() {
        assert_eq!(boundary_components(&block([0, 0], [3, 3])), 1);
        assert_eq!(boundary_components(&ring(5, 1)), 2);
        let two = block([0, 0], [1, 1]).union(&block([5, 0], [6, 1])).unwrap();
        assert_eq!(boundary_components(&two), 2);
        // squares meeting at a corner have a figure-eight boundary
        let diag = GridSet::new(2, Dyadic::ONE, [[0, 0, 0], [1, 1, 0]]).unwrap();
        assert_eq!(boundary_components(&diag), 1);
        let cube = GridSet::block(3, Dyadic::ONE, [0, 0, 0], [2, 2, 2]).unwrap();
        let shell = cube.difference(&GridSet::new(3, Dyadic::ONE, [[1, 1, 1]]).unwrap()).unwrap().unwrap();
        assert_eq!(boundary_components(&shell), 2);
    }

    #[test]
    fn interior_translates() {
        let big = block([0, 0], [4, 4]);
        let one = block([0, 0], [0, 0]);
        assert!(interior_translate(&one, &big).unwrap().is_some());
        // a unit square fits in the open 2×2 square
        assert!(interior_translate(&one, &block([0, 0], [1, 1])).unwrap().is_some());
        assert!(interior_translate(&block([0, 0], [1, 1]), &block([0, 0], [1, 1])).unwrap().is_none());
        assert!(interior_translate(&one, &ring(5, 1)).unwrap().is_none());
    }

    #[test]
    fn boundary_sum_examples() {
        let b5 = block([0, 0], [4, 4]);
        let c = boundary_sum_check(&b5, &b5).unwrap();
        assert!(c.gate.passes() && c.equal);
        let c = boundary_sum_check(&ring(5, 1), &block([0, 0], [4, 4])).unwrap();
        assert!(c.gate.passes() && c.equal);
        let c = boundary_sum_check(&ring(6, 2), &block([0, 0], [2, 7])).unwrap();
        assert!(c.gate.passes() && c.equal, "{c:?}");
        let c = boundary_sum_check(&block([0, 0], [9, 9]), &block([0, 0], [1, 1])).unwrap();
        assert!(!c.gate.passes() && c.gate.neg_l_inside_k.is_some());
        assert!(c.inclusion && !c.equal);
        assert!(c.consistent());
    }

    #[test]
    fn common_boundary_examples() {
        let a = block([0, 0], [3, 3]);
        let b = block([2, 0], [5, 3]);
        let w = common_boundary_witness(&a, &b).unwrap();
        assert!(w.failed.is_none() && w.point.is_some() && w.cell.is_some());
        let w = common_boundary_witness(&a, &a).unwrap();
        assert!(w.cell.is_some());
        let w = common_boundary_witness(&block([3, 3], [4, 4]), &block([0, 0], [7, 7])).unwrap();
        assert_eq!(w.failed, Some(BoundaryHypothesis::KStrictlyInsideL));
    }

    #[test]
    fn convexification_examples() {
        let x = Subspace::axes(2, &[0]).unwrap();
        let ringc = SetRep::from(ring(6, 1));
        let c = one_step_convexification_check(&ringc, &x).unwrap();
        assert!(c.gate && c.holds && c.grid_convex && c.dh.0 == 0.0, "{c:?}");
        let blk = SetRep::from(block([0, 0], [3, 5]));
        assert!(one_step_convexification_check(&blk, &x).unwrap().holds);
        let two = SetRep::from(GridSet::new(2, Dyadic::ONE, [[0, 0, 0], [5, 3, 0]]).unwrap());
        let c = one_step_convexification_check(&two, &x).unwrap();
        assert!(!c.gate && !c.holds);
    }

    #[test]
    fn rim_and_body_symmetrize_alike() {
        let b = block([-2, 1], [3, 4]);
        for h in [Subspace::axes(2, &[0]).unwrap(), Subspace::axes(2, &[1]).unwrap(), Subspace::origin(2)] {
            assert_eq!(b.minkowski_symmetrize(&h).unwrap(), b.rim().minkowski_symmetrize(&h).unwrap());
        }
    }
}
