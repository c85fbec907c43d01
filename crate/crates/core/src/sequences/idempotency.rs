//! Exact stabilization indices of iterated symmetrization in one dimension.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::sets::intervals::IntervalUnion;

/// Component count beyond which iteration is abandoned. Sums of `k`
/// components cost `k²` interval additions.
pub const COMPONENT_BUDGET: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStop {
    /// An iterate was a convex fixed point.
    Certified,
    /// `cap` iterations ran without stabilizing.
    Cap,
    /// The iterate outgrew [`COMPONENT_BUDGET`].
    ComponentBudget,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotencyWitness {
    /// Half the length of `conv K`.
    pub big_m: Dyadic,
    /// `M - ε/2`.
    pub small_m: Dyadic,
    /// Largest admissible endpoint-interval length (zero when none exists).
    pub eps: Dyadic,
    /// Whether the endpoint-interval hypothesis holds (`ε > 0`).
    pub hypothesis: bool,
    /// Predicted upper bound on the index when the hypothesis holds.
    pub bound: Option<u32>,
    /// The index `ℓ`, when certified.
    pub ell: Option<u32>,
    pub certified: bool,
    /// Iterations actually computed.
    pub steps_run: u32,
    pub stop: WitnessStop,
    /// An endpoint of `K` is an isolated point, so no iterate is ever convex.
    pub endpoint_isolated: bool,
    /// The last iterate computed.
    pub last: IntervalUnion,
}

impl IdempotencyWitness {
    /// `ℓ ≤ bound` whenever both are defined.
    pub fn bound_holds(&self) -> bool {
        match (self.ell, self.bound) {
            (Some(l), Some(b)) => l <= b,
            _ => true,
        }
    }
}

/// Smallest `k ≥ 0` with `(2^k + 1)·ε ≥ c`, i.e. `⌈log₂(c/ε - 1)⌉` clamped at 0.
fn ceil_log2_ratio_minus_one(c: Dyadic, eps: Dyadic) -> u32 {
    let mut k = 0;
    while (Dyadic::pow2(k as i32) + Dyadic::ONE) * eps < c {
        k += 1;
    }
    k
}

fn endpoint_lengths(k: &IntervalUnion) -> (Dyadic, Dyadic) {
    let iv = k.intervals();
    let (a0, a1) = iv[0];
    let (b0, b1) = iv[iv.len() - 1];
    (a1 - a0, b1 - b0)
}

fn iterate(
    k: &IntervalUnion,
    cap: u32,
    eps: Dyadic,
    bound: impl Fn(Dyadic, Dyadic) -> u32,
    map: impl Fn(&IntervalUnion) -> IntervalUnion,
) -> Result<IdempotencyWitness> {
    if k.is_empty() {
        return Err(Error::EmptySet);
    }
    let big_m = k.diameter().halve();
    let (la, lb) = endpoint_lengths(k);
    let hypothesis = eps > Dyadic::ZERO;
    let mut cur = k.clone();
    let mut steps = 0u32;
    let (mut ell, mut stop) = (None, WitnessStop::Cap);
    loop {
        if cur.len() > COMPONENT_BUDGET {
            stop = WitnessStop::ComponentBudget;
            break;
        }
        let next = map(&cur);
        if next == cur && cur.is_convex() {
            ell = Some(steps);
            stop = WitnessStop::Certified;
            break;
        }
        if steps == cap {
            break;
        }
        cur = next;
        steps += 1;
    }
    Ok(IdempotencyWitness {
        big_m,
        small_m: big_m - eps.halve(),
        eps,
        hypothesis,
        bound: hypothesis.then(|| bound(big_m, eps)),
        ell,
        certified: ell.is_some(),
        steps_run: steps,
        stop,
        endpoint_isolated: !k.is_convex() && (la.is_zero() || lb.is_zero()),
        last: cur,
    })
}

/// Smallest `ℓ ≤ cap` with `M_o^ℓ K = M_o^{ℓ+1} K` convex, iterating the
/// central symmetrization exactly. The bound `⌈log₂(4M/ε − 1)⌉ + 1` is
/// attached when `[a, a+ε] ⊂ K` or `[b−ε, b] ⊂ K` for some `ε > 0`.
pub fn idempotency_index_1d(k: &IntervalUnion, cap: u32) -> Result<IdempotencyWitness> {
    if k.is_empty() {
        return Err(Error::EmptySet);
    }
    let (la, lb) = endpoint_lengths(k);
    let eps = la.max(lb);
    iterate(k, cap, eps, |m, e| ceil_log2_ratio_minus_one(m.shift(2), e) + 1, IntervalUnion::central_symmetrize)
}

/// Smallest `ℓ ≤ cap` with `2^{-ℓ} Σ_{2^ℓ} K` convex and stable under
/// `K ↦ (K + K)/2`. The bound `max(0, ⌈log₂(2M/ε − 1)⌉)` is attached when
/// both `[a, a+ε]` and `[b−ε, b]` lie in `K`.
pub fn mean_index_1d(k: &IntervalUnion, cap: u32) -> Result<IdempotencyWitness> {
    if k.is_empty() {
        return Err(Error::EmptySet);
    }
    let (la, lb) = endpoint_lengths(k);
    let eps = la.min(lb);
    iterate(k, cap, eps, |m, e| ceil_log2_ratio_minus_one(m.shift(1), e), |x| x.minkowski_sum(x).halve())
}
