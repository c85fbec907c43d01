//! Occupancy sets on a dyadic lattice.
//!
//! A `GridSet` realizes the union of closed cubes `[c h, (c + 1) h]` over
//! its cells. Cells are stored run-length encoded along axis 0 and keyed by
//! the remaining coordinates (padded with zeros), which keeps hollow shells
//! and convex blocks compact.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::{Isometry, Subspace};
use crate::scalar::Scalar;
use crate::sets::hull::{hull_2d, hull_2d_x_interval, hull_3d, Hull3d};
use crate::sets::kdtree::KdTree;
use crate::sets::point_set::FinitePointSet;
use crate::sets::polygon::ConvexPolygon;

pub type Key = [i64; 2];
/// Sorted, disjoint, non-touching inclusive runs.
pub type Runs = Vec<(i64, i64)>;
pub type Rows = BTreeMap<Key, Runs>;

/// Largest cell count a conversion may enumerate.
pub const MAX_ENUMERATED_CELLS: u64 = 1 << 27;

#[derive(Clone, Debug)]
pub struct GridSet {
    dim: usize,
    spacing: Dyadic,
    rows: Rows,
}

impl PartialEq for GridSet {
    /// Equality of realized sets (spacings are compared after coarsening).
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let (a, b) = (self.coarsen(), other.coarsen());
        a.spacing == b.spacing && a.rows == b.rows
    }
}

pub(crate) fn normalize(runs: &mut Runs) {
    if runs.len() <= 1 {
        return;
    }
    runs.sort_unstable();
    let mut out: Runs = Vec::with_capacity(runs.len());
    for &(s, e) in runs.iter() {
        match out.last_mut() {
            Some(last) if s <= last.1 + 1 => last.1 = last.1.max(e),
            _ => out.push((s, e)),
        }
    }
    *runs = out;
}

fn runs_count(r: &Runs) -> u64 {
    r.iter().map(|&(s, e)| (e - s + 1) as u64).sum()
}

fn runs_contains(r: &Runs, x: i64) -> bool {
    let i = r.partition_point(|&(_, e)| e < x);
    i < r.len() && r[i].0 <= x
}

pub(crate) fn runs_intersect(a: &Runs, b: &Runs) -> Runs {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        let s = a[i].0.max(b[j].0);
        let e = a[i].1.min(b[j].1);
        if s <= e {
            out.push((s, e));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

pub(crate) fn runs_diff(a: &Runs, b: &Runs) -> Runs {
    let mut out = Vec::new();
    let mut j = 0;
    for &(s, e) in a {
        let mut cur = s;
        while j < b.len() && b[j].1 < cur {
            j += 1;
        }
        let mut k = j;
        while k < b.len() && b[k].0 <= e {
            if b[k].0 > cur {
                out.push((cur, b[k].0 - 1));
            }
            cur = cur.max(b[k].1 + 1);
            k += 1;
        }
        if cur <= e {
            out.push((cur, e));
        }
    }
    out
}

fn runs_is_subset(a: &Runs, b: &Runs) -> bool {
    runs_diff(a, b).is_empty()
}

/// Cells `0/1` offsets along the key axes: `{0,1}^(dim-1)` padded.
fn key_offsets(dim: usize) -> Vec<Key> {
    match dim {
        1 => vec![[0, 0]],
        2 => vec![[0, 0], [1, 0]],
        _ => vec![[0, 0], [1, 0], [0, 1], [1, 1]],
    }
}

fn neighbour_keys(dim: usize) -> Vec<Key> {
    match dim {
        1 => vec![],
        2 => vec![[1, 0], [-1, 0]],
        _ => vec![[1, 0], [-1, 0], [0, 1], [0, -1]],
    }
}

fn add_key(a: Key, b: Key) -> Key {
    [a[0] + b[0], a[1] + b[1]]
}

fn cell_of(key: Key, x: i64) -> [i64; 3] {
    [x, key[0], key[1]]
}

fn merge_rows(mut a: Rows, b: Rows) -> Rows {
    for (k, mut r) in b {
        a.entry(k).or_default().append(&mut r);
    }
    a
}

fn finish(mut rows: Rows) -> Rows {
    rows.retain(|_, r| {
        normalize(r);
        !r.is_empty()
    });
    rows
}

fn check_dim(dim: usize) -> Result<()> {
    if !(1..=3).contains(&dim) {
        return Err(Error::Unsupported(format!("grid sets live in R^1..R^3, got R^{dim}")));
    }
    Ok(())
}

impl GridSet {
    fn build(dim: usize, spacing: Dyadic, rows: Rows) -> Result<Self> {
        check_dim(dim)?;
        if spacing.signum() <= 0 {
            return Err(Error::InvalidScale(format!("grid spacing {spacing} must be positive")));
        }
        let rows = finish(rows);
        if rows.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(GridSet { dim, spacing, rows })
    }

    /// Grid set from explicit cells (unused coordinates ignored).
    pub fn new(dim: usize, spacing: Dyadic, cells: impl IntoIterator<Item = [i64; 3]>) -> Result<Self> {
        check_dim(dim)?;
        let mut rows = Rows::new();
        for c in cells {
            let key = match dim {
                1 => [0, 0],
                2 => [c[1], 0],
                _ => [c[1], c[2]],
            };
            rows.entry(key).or_default().push((c[0], c[0]));
        }
        Self::build(dim, spacing, rows)
    }

    /// Cells from coordinate slices of length `dim`.
    pub fn from_cells(dim: usize, spacing: Dyadic, cells: &[Vec<i64>]) -> Result<Self> {
        let mut out = Vec::with_capacity(cells.len());
        for c in cells {
            if c.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.len() });
            }
            let mut p = [0i64; 3];
            p[..dim].copy_from_slice(c);
            out.push(p);
        }
        Self::new(dim, spacing, out)
    }

    /// Box of cells `lo..=hi` (unused coordinates ignored).
    pub fn block(dim: usize, spacing: Dyadic, lo: [i64; 3], hi: [i64; 3]) -> Result<Self> {
        check_dim(dim)?;
        let mut rows = Rows::new();
        let (y0, y1) = if dim >= 2 { (lo[1], hi[1]) } else { (0, 0) };
        let (z0, z1) = if dim >= 3 { (lo[2], hi[2]) } else { (0, 0) };
        if lo[0] <= hi[0] {
            for y in y0..=y1 {
                for z in z0..=z1 {
                    rows.insert([y, z], vec![(lo[0], hi[0])]);
                }
            }
        }
        Self::build(dim, spacing, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacing(&self) -> Dyadic {
        self.spacing
    }

    pub fn rows(&self) -> &Rows {
        &self.rows
    }

    pub fn cell_count(&self) -> u64 {
        self.rows.values().map(runs_count).sum()
    }

    pub fn cells(&self) -> Vec<[i64; 3]> {
        let mut out = Vec::new();
        for (&k, r) in &self.rows {
            for &(s, e) in r {
                out.extend((s..=e).map(|x| cell_of(k, x)));
            }
        }
        out
    }

    pub fn contains_cell(&self, c: [i64; 3]) -> bool {
        let key = match self.dim {
            1 => [0, 0],
            2 => [c[1], 0],
            _ => [c[1], c[2]],
        };
        self.rows.get(&key).is_some_and(|r| runs_contains(r, c[0]))
    }

    /// Inclusive cell bounding box.
    pub fn bbox(&self) -> ([i64; 3], [i64; 3]) {
        let mut lo = [i64::MAX, i64::MAX, i64::MAX];
        let mut hi = [i64::MIN, i64::MIN, i64::MIN];
        for (k, r) in &self.rows {
            lo[0] = lo[0].min(r[0].0);
            hi[0] = hi[0].max(r[r.len() - 1].1);
            for i in 0..2 {
                lo[i + 1] = lo[i + 1].min(k[i]);
                hi[i + 1] = hi[i + 1].max(k[i]);
            }
        }
        lo
            .iter_mut()
            .zip(hi.iter_mut())
            .skip(self.dim)
            .for_each(|(l, h)| {
                *l = 0;
                *h = 0;
            });
        (lo, hi)
    }

    /// `|cells| · h^n`, exact.
    pub fn volume(&self) -> Dyadic {
        let mut v = Dyadic::from_int(self.cell_count() as i64);
        for _ in 0..self.dim {
            v = v * self.spacing;
        }
        v
    }

    /// Collar width `h√n` used by grid convexity claims.
    pub fn collar(&self) -> f64 {
        self.spacing.to_f64() * (self.dim as f64).sqrt()
    }

    fn same_dim(&self, other: &GridSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    fn same_spacing(&self, other: &GridSet) -> Result<()> {
        self.same_dim(other)?;
        if self.spacing != other.spacing {
            return Err(Error::SpacingMismatch(self.spacing.to_string(), other.spacing.to_string()));
        }
        Ok(())
    }

    /// Exact cell-wise Minkowski sum at a common spacing: cells `a + b + e`
    /// for `e ∈ {0,1}^n`.
    pub fn minkowski_sum(&self, other: &GridSet) -> Result<GridSet> {
        self.same_spacing(other)?;
        let partial: Rows = self
            .rows
            .par_iter()
            .fold(Rows::new, |mut acc, (ka, ra)| {
                for (kb, rb) in &other.rows {
                    let entry = acc.entry(add_key(*ka, *kb)).or_default();
                    for &(s1, e1) in ra {
                        for &(s2, e2) in rb {
                            entry.push((s1 + s2, e1 + e2 + 1));
                        }
                    }
                    if entry.len() > 64 && entry.len().is_power_of_two() {
                        normalize(entry);
                    }
                }
                acc
            })
            .reduce(Rows::new, merge_rows);
        let sums = finish(partial);
        let mut out = Rows::new();
        for (k, r) in sums {
            for e in key_offsets(self.dim) {
                out.entry(add_key(k, e)).or_default().extend_from_slice(&r);
            }
        }
        Self::build(self.dim, self.spacing, out)
    }

    /// Homothety by a power of two: the spacing is rescaled, cells unchanged.
    pub fn scale(&self, t: &Scalar) -> Result<GridSet> {
        let k = t
            .power_of_two_exponent()
            .ok_or_else(|| Error::InvalidScale(format!("grid scale factor {t:?} must be a power of two")))?;
        Ok(GridSet { spacing: self.spacing.shift(k), ..self.clone() })
    }

    /// Translation by whole cells.
    pub fn translate(&self, v: [i64; 3]) -> GridSet {
        let key_shift = [v[1], v[2]];
        let rows = self
            .rows
            .iter()
            .map(|(k, r)| (add_key(*k, key_shift), r.iter().map(|&(s, e)| (s + v[0], e + v[0])).collect()))
            .collect();
        GridSet { rows, ..self.clone() }
    }

    /// Image under a signed coordinate permutation, mapping cubes to cubes:
    /// a negated axis sends cell `c` to `-c - 1`.
    pub fn apply_signed_perm(&self, perm: &[(usize, bool)]) -> GridSet {
        assert_eq!(perm.len(), self.dim, "permutation dimension");
        let mut rows = Rows::new();
        let map = |c: [i64; 3], i: usize| {
            let (j, neg) = perm[i];
            if neg { -c[j] - 1 } else { c[j] }
        };
        if perm[0].0 == 0 {
            for (&k, r) in &self.rows {
                let c = cell_of(k, 0);
                let mut key = [0i64; 2];
                for i in 1..self.dim {
                    key[i - 1] = map(c, i);
                }
                let runs: Runs = if perm[0].1 { r.iter().map(|&(s, e)| (-e - 1, -s - 1)).collect() } else { r.clone() };
                rows.entry(key).or_default().extend(runs);
            }
        } else {
            for c in self.cells() {
                let mut key = [0i64; 2];
                for i in 1..self.dim {
                    key[i - 1] = map(c, i);
                }
                let x = map(c, 0);
                rows.entry(key).or_default().push((x, x));
            }
        }
        GridSet { rows: finish(rows), ..self.clone() }
    }

    pub fn apply(&self, iso: &Isometry) -> Result<GridSet> {
        if iso.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: iso.dim() });
        }
        let perm = iso.signed_permutation().ok_or(Error::NotAxisAligned("grid isometry"))?;
        Ok(self.apply_signed_perm(perm))
    }

    pub fn reflect(&self, h: &Subspace) -> Result<GridSet> {
        if h.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: h.ambient_dim() });
        }
        if !h.is_axis_aligned() {
            return Err(Error::NotAxisAligned("grid reflection"));
        }
        self.apply(&h.reflection())
    }

    /// `-A`, i.e. cells `c -> -c - 1`.
    pub fn negate(&self) -> GridSet {
        self.apply_signed_perm(&(0..self.dim).map(|i| (i, true)).collect::<Vec<_>>())
    }

    /// `(1/m) Σ_j A_j K` for signed permutations and `m` a power of two.
    pub fn isometry_mean(&self, isos: &[Isometry]) -> Result<GridSet> {
        let m = isos.len();
        if m == 0 || !m.is_power_of_two() {
            return Err(Error::Unsupported(format!("grid isometry means need a power-of-two count, got {m}")));
        }
        let images = isos.iter().map(|iso| self.apply(iso)).collect::<Result<Vec<_>>>()?;
        let mut acc = images[0].clone();
        for img in &images[1..] {
            acc = acc.minkowski_sum(img)?;
        }
        Ok(GridSet { spacing: acc.spacing.shift(-(m.trailing_zeros() as i32)), ..acc })
    }

    /// `M_H A = ½(A + R_H A)`, exact; the spacing halves.
    pub fn minkowski_symmetrize(&self, h: &Subspace) -> Result<GridSet> {
        if h.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: h.ambient_dim() });
        }
        if !h.is_axis_aligned() {
            return Err(Error::NotAxisAligned("grid symmetrization"));
        }
        let s = self.minkowski_sum(&self.reflect(h)?)?;
        Ok(GridSet { spacing: s.spacing.halve(), ..s })
    }

    /// `(A - A) / 2`.
    pub fn central_symmetrize(&self) -> GridSet {
        self.minkowski_symmetrize(&Subspace::origin(self.dim)).expect("origin is axis-aligned")
    }

    /// Splits every cell into `2^k` cells per axis.
    pub fn refine(&self, k: u32) -> GridSet {
        if k == 0 {
            return self.clone();
        }
        let f = 1i64 << k;
        let mut rows = Rows::new();
        for (key, r) in &self.rows {
            let runs: Runs = r.iter().map(|&(s, e)| (s * f, e * f + f - 1)).collect();
            let ys = if self.dim >= 2 { 0..f } else { 0..1 };
            for dy in ys {
                let zs = if self.dim >= 3 { 0..f } else { 0..1 };
                for dz in zs {
                    let nk = [if self.dim >= 2 { key[0] * f + dy } else { 0 }, if self.dim >= 3 { key[1] * f + dz } else { 0 }];
                    rows.insert(nk, runs.clone());
                }
            }
        }
        GridSet { dim: self.dim, spacing: self.spacing.shift(-(k as i32)), rows }
    }

    /// Coarsest grid with the same realized set.
    pub fn coarsen(&self) -> GridSet {
        let mut cur = self.clone();
        while let Some(next) = cur.coarsen_once() {
            cur = next;
        }
        cur
    }

    fn coarsen_once(&self) -> Option<GridSet> {
        let aligned = |r: &Runs| r.iter().all(|&(s, e)| s % 2 == 0 && (e - s) % 2 == 1);
        let mut rows = Rows::new();
        for (k, r) in &self.rows {
            if !aligned(r) {
                return None;
            }
            let base = [if self.dim >= 2 { k[0].div_euclid(2) * 2 } else { 0 }, if self.dim >= 3 { k[1].div_euclid(2) * 2 } else { 0 }];
            for off in key_offsets(self.dim) {
                if self.rows.get(&add_key(base, off)) != Some(r) {
                    return None;
                }
            }
            let nk = [k[0].div_euclid(if self.dim >= 2 { 2 } else { 1 }), k[1].div_euclid(if self.dim >= 3 { 2 } else { 1 })];
            rows.insert(nk, r.iter().map(|&(s, e)| (s / 2, (e - 1) / 2)).collect());
        }
        Some(GridSet { dim: self.dim, spacing: self.spacing.shift(1), rows })
    }

    /// The same realized set at a finer spacing `h`.
    pub fn at_spacing(&self, h: Dyadic) -> Result<GridSet> {
        if h == self.spacing {
            return Ok(self.clone());
        }
        let mut k = 0u32;
        let mut cur = self.spacing;
        while cur > h && k < 62 {
            cur = cur.halve();
            k += 1;
        }
        if cur != h {
            return Err(Error::SpacingMismatch(self.spacing.to_string(), h.to_string()));
        }
        Ok(self.refine(k))
    }

    /// Both sets at the finer of the two spacings.
    pub fn aligned(&self, other: &GridSet) -> Result<(GridSet, GridSet)> {
        self.same_dim(other)?;
        let h = self.spacing.min(other.spacing);
        Ok((self.at_spacing(h)?, other.at_spacing(h)?))
    }

    /// Realized-set inclusion (exact).
    pub fn is_subset_of(&self, other: &GridSet) -> Result<bool> {
        let (a, b) = self.aligned(other)?;
        Ok(a.rows.iter().all(|(k, r)| b.rows.get(k).is_some_and(|rb| runs_is_subset(r, rb))))
    }

    /// Cells of `self` not in `other` (same spacing), or `None` when empty.
    pub fn difference(&self, other: &GridSet) -> Result<Option<GridSet>> {
        self.same_spacing(other)?;
        let rows: Rows = self
            .rows
            .iter()
            .map(|(k, r)| (*k, other.rows.get(k).map_or_else(|| r.clone(), |rb| runs_diff(r, rb))))
            .collect();
        Ok(Self::build(self.dim, self.spacing, rows).ok())
    }

    /// Common cells (same spacing), or `None` when empty.
    pub fn intersection(&self, other: &GridSet) -> Result<Option<GridSet>> {
        self.same_spacing(other)?;
        let rows: Rows =
            self.rows.iter().filter_map(|(k, r)| other.rows.get(k).map(|rb| (*k, runs_intersect(r, rb)))).collect();
        Ok(Self::build(self.dim, self.spacing, rows).ok())
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        self.same_spacing(other)?;
        Self::build(self.dim, self.spacing, merge_rows(self.rows.clone(), other.rows.clone()))
    }

    /// Cells with at least one of their `2n` face neighbours outside the set.
    pub fn rim(&self) -> GridSet {
        let mut rows = Rows::new();
        for (k, r) in &self.rows {
            let mut out: Runs = Vec::new();
            for &(s, e) in r {
                out.push((s, s));
                out.push((e, e));
            }
            for d in neighbour_keys(self.dim) {
                match self.rows.get(&add_key(*k, d)) {
                    Some(n) => out.extend(runs_diff(r, n)),
                    None => out.extend_from_slice(r),
                }
            }
            rows.insert(*k, out);
        }
        Self::build(self.dim, self.spacing, rows).expect("rim of a nonempty set is nonempty")
    }

    /// Cell sections of the axes `hperp`, keyed by the remaining coordinates.
    fn split_sections(&self, hperp: &[usize]) -> BTreeMap<Vec<i64>, Rows> {
        let hax: Vec<usize> = (0..self.dim).filter(|a| !hperp.contains(a)).collect();
        let mut out: BTreeMap<Vec<i64>, Rows> = BTreeMap::new();
        let local_key = |c: [i64; 3]| {
            let mut k = [0i64; 2];
            for (i, &a) in hperp.iter().enumerate().skip(1) {
                k[i - 1] = c[a];
            }
            k
        };
        for (&k, r) in &self.rows {
            if hperp[0] == 0 {
                let c = cell_of(k, 0);
                let hk: Vec<i64> = hax.iter().map(|&a| c[a]).collect();
                out.entry(hk).or_default().entry(local_key(c)).or_default().extend_from_slice(r);
            } else {
                for &(s, e) in r {
                    for x in s..=e {
                        let c = cell_of(k, x);
                        let hk: Vec<i64> = hax.iter().map(|&a| c[a]).collect();
                        let lx = c[hperp[0]];
                        out.entry(hk).or_default().entry(local_key(c)).or_default().push((lx, lx));
                    }
                }
            }
        }
        for rows in out.values_mut() {
            *rows = finish(std::mem::take(rows));
        }
        out
    }

    /// Reassembles sections; with `double` the fixed coordinates `j` become
    /// `{2j, 2j + 1}` (the spacing is halved by the caller).
    fn join_sections(dim: usize, hperp: &[usize], sections: &BTreeMap<Vec<i64>, Rows>, double: bool) -> Rows {
        let hax: Vec<usize> = (0..dim).filter(|a| !hperp.contains(a)).collect();
        let choices: Vec<Vec<i64>> = if double {
            (0..1usize << hax.len()).map(|m| (0..hax.len()).map(|i| ((m >> i) & 1) as i64).collect()).collect()
        } else {
            vec![vec![0; hax.len()]]
        };
        let f = if double { 2 } else { 1 };
        let mut rows = Rows::new();
        for (hk, srows) in sections {
            for (lk, runs) in srows {
                let mut c = [0i64; 3];
                for (i, &a) in hperp.iter().enumerate().skip(1) {
                    c[a] = lk[i - 1];
                }
                for ch in &choices {
                    for (i, &a) in hax.iter().enumerate() {
                        c[a] = hk[i] * f + ch[i];
                    }
                    if hperp[0] == 0 {
                        rows.entry([c[1], c[2]]).or_default().extend_from_slice(runs);
                    } else if ch.first() == Some(&0) {
                        // axis 0 is fixed; emit whole 0/1 pairs along it
                        for &(s, e) in runs {
                            for x in s..=e {
                                c[hperp[0]] = x;
                                let key = [c[1], c[2]];
                                rows.entry(key).or_default().push((c[0], c[0] + f - 1));
                            }
                        }
                    }
                }
            }
        }
        rows
    }

    fn hperp_of(&self, h: &Subspace) -> Result<Vec<usize>> {
        if h.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: h.ambient_dim() });
        }
        h.orthogonal_axes().ok_or(Error::NotAxisAligned("grid section operations"))
    }

    /// Fiber symmetrization: central symmetrization of every `H⊥`-section.
    pub fn fiber_symmetrize(&self, h: &Subspace) -> Result<GridSet> {
        let hperp = self.hperp_of(h)?;
        if h.dim() == 0 || h.dim() >= self.dim {
            return Err(Error::InvalidSubspace(format!("fiber symmetrization needs 1 <= dim H <= n-1, got {}", h.dim())));
        }
        let k = hperp.len();
        let sections = self.split_sections(&hperp);
        let sym: BTreeMap<Vec<i64>, Rows> = sections
            .into_par_iter()
            .map(|(hk, rows)| {
                let s = GridSet::build(k, self.spacing, rows).expect("nonempty section");
                (hk, s.central_symmetrize().rows)
            })
            .collect();
        let rows = Self::join_sections(self.dim, &hperp, &sym, true);
        Self::build(self.dim, self.spacing.halve(), rows)
    }

    /// Grid Steiner symmetrization about a hyperplane `H`: every line
    /// orthogonal to `H` keeps its cell count `c`, placed as the run
    /// `-⌈c/2⌉ ..= -⌈c/2⌉ + c - 1` (odd counts lean to the lower side).
    pub fn steiner_symmetrize(&self, h: &Subspace) -> Result<GridSet> {
        let hperp = self.hperp_of(h)?;
        if h.dim() + 1 != self.dim {
            return Err(Error::InvalidSubspace(format!(
                "Steiner symmetrization needs a hyperplane, got dim {} in R^{}",
                h.dim(),
                self.dim
            )));
        }
        let sections = self.split_sections(&hperp);
        let sym: BTreeMap<Vec<i64>, Rows> = sections
            .into_iter()
            .map(|(hk, rows)| {
                let c = rows.values().map(runs_count).sum::<u64>() as i64;
                let start = -((c + 1) / 2);
                (hk, BTreeMap::from([([0, 0], vec![(start, start + c - 1)])]))
            })
            .collect();
        let rows = Self::join_sections(self.dim, &hperp, &sym, false);
        Self::build(self.dim, self.spacing, rows)
    }

    /// Lattice corners `c + {0,1}^n` that are extreme for the hull of the set.
    fn corner_extremes(&self) -> Vec<[i64; 3]> {
        match self.dim {
            1 => {
                let (lo, hi) = self.bbox();
                vec![[lo[0], 0, 0], [hi[0] + 1, 0, 0]]
            }
            2 => {
                let mut pts = Vec::new();
                for (k, r) in &self.rows {
                    let (s, e) = (r[0].0, r[r.len() - 1].1);
                    pts.extend([[s, k[0]], [e + 1, k[0]], [s, k[0] + 1], [e + 1, k[0] + 1]]);
                }
                hull_2d(&pts).into_iter().map(|p| [p[0], p[1], 0]).collect()
            }
            _ => {
                let mut per_z: BTreeMap<i64, Vec<[i64; 2]>> = BTreeMap::new();
                for (k, r) in &self.rows {
                    let (s, e) = (r[0].0, r[r.len() - 1].1);
                    for dz in 0..2 {
                        per_z.entry(k[1] + dz).or_default().extend([[s, k[0]], [e + 1, k[0]], [s, k[0] + 1], [e + 1, k[0] + 1]]);
                    }
                }
                let pts: Vec<[i64; 3]> = per_z
                    .into_iter()
                    .flat_map(|(z, p)| hull_2d(&p).into_iter().map(move |q| [q[0], q[1], z]))
                    .collect();
                hull_3d(&pts).extreme_points()
            }
        }
    }

    /// Cells whose cube lies inside the convex hull of the set. Always a
    /// superset of the set itself.
    pub fn hull_fill(&self) -> GridSet {
        let (lo, hi) = self.bbox();
        let mut rows = Rows::new();
        match self.dim {
            1 => {
                rows.insert([0, 0], vec![(lo[0], hi[0])]);
            }
            2 => {
                let h: Vec<[i64; 2]> = self.corner_extremes().iter().map(|p| [p[0], p[1]]).collect();
                for y in lo[1]..=hi[1] {
                    if let (Some(a), Some(b)) = (hull_2d_x_interval(&h, y), hull_2d_x_interval(&h, y + 1)) {
                        let (s, e) = (a.0.max(b.0), a.1.min(b.1) - 1);
                        if s <= e {
                            rows.insert([y, 0], vec![(s, e)]);
                        }
                    }
                }
            }
            _ => {
                let Hull3d::Full(h) = hull_3d(&self.corner_extremes()) else {
                    unreachable!("cube corners span R^3")
                };
                let fill: Vec<(Key, Runs)> = (lo[1]..=hi[1])
                    .into_par_iter()
                    .flat_map_iter(|y| {
                        let h = &h;
                        (lo[2]..=hi[2]).filter_map(move |z| {
                            let mut s = i64::MIN;
                            let mut e = i64::MAX;
                            for (dy, dz) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                                let (a, b) = h.x_interval(y + dy, z + dz)?;
                                s = s.max(a);
                                e = e.min(b);
                            }
                            (s < e).then(|| ([y, z], vec![(s, e - 1)]))
                        })
                    })
                    .collect();
                rows.extend(fill);
            }
        }
        Self::build(self.dim, self.spacing, rows).expect("hull contains the set")
    }

    /// Grid convexity: every cell inside the hull of the set belongs to it.
    /// Realized sets passing this check are within `h√n` of their hull.
    pub fn is_grid_convex(&self) -> bool {
        self.hull_fill().cell_count() == self.cell_count()
    }

    /// Exact diameter of the realized set (over cube corners).
    pub fn diameter(&self) -> f64 {
        let e = self.corner_extremes();
        let mut best: i128 = 0;
        for (i, a) in e.iter().enumerate() {
            for b in &e[i + 1..] {
                best = best.max((0..3).map(|k| ((a[k] - b[k]) as i128).pow(2)).sum());
            }
        }
        (best as f64).sqrt() * self.spacing.to_f64()
    }

    /// Extreme points of the realized hull as exact dyadic coordinates.
    pub fn hull_extreme_points(&self) -> Vec<Vec<Dyadic>> {
        self.corner_extremes()
            .iter()
            .map(|c| c[..self.dim].iter().map(|&x| Dyadic::from_int(x) * self.spacing).collect())
            .collect()
    }

    /// Cell centers as floats (padded to length 3).
    pub fn centers_f64(&self) -> Vec<[f64; 3]> {
        let h = self.spacing.to_f64();
        let pad = |x: i64, i: usize| if i < self.dim { (x as f64 + 0.5) * h } else { 0.0 };
        self.cells().iter().map(|c| [pad(c[0], 0), pad(c[1], 1), pad(c[2], 2)]).collect()
    }

    /// `sup_{x ∈ other} d(x, self)` over cell centers (same spacing).
    fn center_excess_of(&self, other: &GridSet) -> Result<f64> {
        let Some(outside) = other.difference(self)? else {
            return Ok(0.0);
        };
        let tree = KdTree::new(self.dim, self.rim().centers_f64());
        Ok(outside.centers_f64().par_iter().map(|p| tree.nearest_dist(p)).reduce(|| 0.0, f64::max))
    }

    /// Hausdorff distance of the realized sets, with its error bound `h√n/2`
    /// at the common spacing `h`. Equal sets are exactly at distance zero.
    pub fn hausdorff(&self, other: &GridSet) -> Result<(f64, f64)> {
        let (a, b) = self.aligned(other)?;
        let d = a.center_excess_of(&b)?.max(b.center_excess_of(&a)?);
        Ok((d, if d == 0.0 { 0.0 } else { a.collar() / 2.0 }))
    }

    /// Cells whose cube meets the polygon (touching boundaries excluded for
    /// full-dimensional polygons).
    pub fn from_polygon(p: &ConvexPolygon, h: Dyadic) -> Result<GridSet> {
        if h.signum() <= 0 {
            return Err(Error::InvalidScale(format!("grid spacing {h} must be positive")));
        }
        let hf = h.to_f64();
        let b = p.bbox();
        let (x0, x1) = ((b[0] / hf).floor() as i64 - 1, (b[2] / hf).ceil() as i64 + 1);
        let (y0, y1) = ((b[1] / hf).floor() as i64 - 1, (b[3] / hf).ceil() as i64 + 1);
        let total = ((x1 - x0 + 1) as u64).saturating_mul((y1 - y0 + 1) as u64);
        if total > MAX_ENUMERATED_CELLS {
            return Err(Error::CapExceeded(format!("{total} candidate cells")));
        }
        let shrink = if p.is_degenerate() { 0.0 } else { 1e-9 * hf };
        let mut cells = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let (bx, by) = (x as f64 * hf, y as f64 * hf);
                if p.intersects_box(bx + shrink, by + shrink, bx + hf - shrink, by + hf - shrink) {
                    cells.push([x, y, 0]);
                }
            }
        }
        GridSet::new(2, h, cells)
    }

    /// The cell containing each point (`floor(x / h)`).
    pub fn from_point_set(ps: &FinitePointSet, h: Dyadic) -> Result<GridSet> {
        if h.signum() <= 0 {
            return Err(Error::InvalidScale(format!("grid spacing {h} must be positive")));
        }
        let hf = h.to_f64();
        let cells: Vec<[i64; 3]> = ps
            .points_f64()
            .iter()
            .map(|p| {
                let mut c = [0i64; 3];
                for i in 0..ps.dim() {
                    c[i] = (p[i] / hf).floor() as i64;
                }
                c
            })
            .collect();
        GridSet::new(ps.dim(), h, cells)
    }
}
