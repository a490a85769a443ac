//! Brute-force ground truth. Nothing here relies on the closed form for
//! `|C|`: the maximum of `|A| + |B|` is computed as an exact maximum
//! independent set in conflict graphs over all k-subsets of `[n]`.

use std::time::Instant;

use rayon::prelude::*;

use crate::combinatorics::{
    binom, enumerate_ksubsets_capped, is_s_cross_intersecting, Family, KSet, Params,
};
use crate::error::{Error, Result};
use crate::extremal::{build_c_capped, size_c};
use crate::matching::{max_weight_independent_set, Side, WeightedBipartiteGraph};
use crate::verdict::{Verdict, Witness};

/// Default bound on `C(n, k)` for oracle computations.
pub const DEFAULT_ORACLE_CAP: u128 = 3500;

/// Bipartite graph on two copies of `ground`, `A ~ B` iff `|A ∩ B| < s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    pub ground: Family,
    pub s: u32,
    pub edges: Vec<(usize, usize)>,
}

impl ConflictGraph {
    pub fn to_weighted(&self) -> Result<WeightedBipartiteGraph> {
        let m = self.ground.len();
        WeightedBipartiteGraph::unweighted(m, m, self.edges.clone())
    }
}

fn conflict_edges(left: &[KSet], right: &[KSet], s: u32) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (x, a) in left.iter().enumerate() {
        for (y, b) in right.iter().enumerate() {
            if (a.bits() & b.bits()).count_ones() < s {
                edges.push((x, y));
            }
        }
    }
    edges
}

pub fn build_conflict_graph(ground: &Family, s: u32, cap: u128) -> Result<ConflictGraph> {
    if ground.is_empty() {
        return Err(Error::InvalidParams("conflict graph needs a nonempty ground family".into()));
    }
    if ground.len() as u128 > cap {
        return Err(Error::EnumerationTooLarge { count: ground.len() as u128, cap });
    }
    let edges = conflict_edges(ground.members(), ground.members(), s);
    Ok(ConflictGraph { ground: ground.clone(), s, edges })
}

/// Exact maximum independent set size of the conflict graph on two copies
/// of `C - {[k]}`.
pub fn mis_g(params: &Params, cap: u128) -> Result<u128> {
    if !params.in_theorem_range() {
        return Err(Error::ParamsOutOfRange(format!("{params} has l < 0")));
    }
    let c = build_c_capped(params, cap)?;
    let ground = c.without(&KSet::initial(params.n(), params.k())?);
    if ground.is_empty() {
        return Ok(0);
    }
    let g = build_conflict_graph(&ground, params.s(), cap)?;
    Ok(max_weight_independent_set(&g.to_weighted()?)?.weight)
}

/// An optimal pair found by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptimum {
    pub value: u128,
    pub a: Family,
    pub b: Family,
    /// `|A0 ∩ B0|` of the pinned pair the optimum was found under.
    pub pinned_overlap: u32,
}

/// Maximum of `|A| + |B|` over pairs with `A0 ∈ A`, `B0 ∈ B`. Once both are
/// pinned, `A` may only use sets s-intersecting `B0` and `B` sets
/// s-intersecting `A0`; `A0` and `B0` are then isolated, so every maximum
/// independent set contains them.
fn best_with_pinned(all: &Family, a0: &KSet, b0: &KSet, s: u32) -> Result<(u128, Family, Family)> {
    let meets = |x: &KSet, y: &KSet| (x.bits() & y.bits()).count_ones() >= s;
    let left: Vec<KSet> = all.iter().copied().filter(|x| meets(x, b0)).collect();
    let right: Vec<KSet> = all.iter().copied().filter(|y| meets(y, a0)).collect();
    let edges = conflict_edges(&left, &right, s);
    let g = WeightedBipartiteGraph::unweighted(left.len(), right.len(), edges)?;
    let best = max_weight_independent_set(&g)?;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for v in &best.vertices {
        match v.side {
            Side::One => a.push(left[v.index]),
            Side::Two => b.push(right[v.index]),
        }
    }
    let (n, k) = (all.n(), all.k());
    Ok((best.weight, Family::new(n, k, a)?, Family::new(n, k, b)?))
}

fn check_oracle_size(params: &Params, cap: u128) -> Result<Family> {
    let count = binom(params.n() as u64, params.k() as u64)?;
    if count > cap {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    enumerate_ksubsets_capped(params.n(), params.k(), cap)
}

/// Exact maximum of `|A| + |B|` over non-empty s-cross-intersecting pairs.
///
/// Any optimal pair contains some `A0, B0` with `|A0 ∩ B0| = i >= s`, and a
/// permutation of `[n]` carries them to `B0 = [k]` and
/// `A0 = {1..i} ∪ {k+1..2k-i}`. The overlaps `i = s..=k` are solved
/// independently and the best one wins (smallest `i` on ties).
pub fn max_sum_nonempty(params: &Params, cap: u128) -> Result<OracleOptimum> {
    let all = check_oracle_size(params, cap)?;
    let (n, k, s) = (params.n(), params.k(), params.s());
    let b0 = KSet::initial(n, k)?;
    let overlaps: Vec<u32> = (s..=k).filter(|&i| 2 * k - i <= n).collect();
    let solved = overlaps
        .par_iter()
        .map(|&i| {
            let elems: Vec<u32> = (1..=i).chain(k + 1..=2 * k - i).collect();
            let a0 = KSet::new(n, &elems)?;
            let (value, a, b) = best_with_pinned(&all, &a0, &b0, s)?;
            Ok(OracleOptimum { value, a, b, pinned_overlap: i })
        })
        .collect::<Result<Vec<_>>>()?;
    solved
        .into_iter()
        .reduce(|best, cand| if cand.value > best.value { cand } else { best })
        .ok_or_else(|| Error::InvalidParams(format!("no pair meets in {s} elements for {params}")))
}

/// Same maximum without the symmetry reduction: every pinned pair
/// `(A0, B0)` with `|A0 ∩ B0| >= s` is solved. Quadratic in `C(n, k)`.
pub fn max_sum_unreduced(params: &Params, cap: u128) -> Result<OracleOptimum> {
    let all = check_oracle_size(params, cap)?;
    let s = params.s();
    let mut best: Option<OracleOptimum> = None;
    for a0 in &all {
        for b0 in &all {
            let overlap = (a0.bits() & b0.bits()).count_ones();
            if overlap < s {
                continue;
            }
            let (value, a, b) = best_with_pinned(&all, a0, b0, s)?;
            if best.as_ref().is_none_or(|cur| value > cur.value) {
                best = Some(OracleOptimum { value, a, b, pinned_overlap: overlap });
            }
        }
    }
    best.ok_or_else(|| Error::InvalidParams(format!("no pair meets in {s} elements for {params}")))
}

/// Compares `|C| + 1` with the oracle maximum. Outside `n > 2k - s` the
/// oracle value is reported inside the error.
pub fn verify_theorem(params: &Params, cap: u128) -> Result<Verdict> {
    let started = Instant::now();
    if !params.in_theorem_range() {
        let detail = match max_sum_nonempty(params, cap) {
            Ok(opt) => format!("oracle value {}", opt.value),
            Err(e) => format!("oracle unavailable: {e}"),
        };
        return Err(Error::ParamsOutOfRange(format!(
            "{params} is outside the theorem range n > 2k - s ({detail})"
        )));
    }
    let formula = size_c(params)?
        .checked_add(1)
        .ok_or_else(|| Error::Overflow("|C| + 1".into()))?;
    let opt = max_sum_nonempty(params, cap)?;
    let mut verdict = Verdict::new(params, "theorem");
    verdict.formula_value = Some(formula);
    verdict.oracle_value = Some(opt.value);
    verdict.witness = Some(Witness::from_families(&opt.a, &opt.b));
    if opt.a.is_empty() || opt.b.is_empty() {
        verdict.fail("oracle witness has an empty family");
    }
    if opt.a.len() as u128 + opt.b.len() as u128 != opt.value {
        verdict.fail("oracle witness size differs from its value");
    }
    if !is_s_cross_intersecting(&opt.a, &opt.b, params.s())?.holds {
        verdict.fail("oracle witness is not s-cross-intersecting");
    }
    if formula != opt.value {
        verdict.fail(format!("|C| + 1 = {formula} but the oracle maximum is {}", opt.value));
    }
    verdict.millis = started.elapsed().as_millis();
    Ok(verdict)
}
