//! The extremal family `C = {C : |C ∩ [k]| >= s}`, its orbit weights and
//! the two weight inequalities that drive the chain argument.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::combinatorics::{binom, enumerate_ksubsets_capped, Family, KSet, Params, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};

fn check_index(i: u32, lo: u32, hi: u32) -> Result<()> {
    if i < lo || i > hi {
        Err(Error::IndexNotMeaningful { i, lo, hi })
    } else {
        Ok(())
    }
}

pub fn build_c_capped(params: &Params, cap: u128) -> Result<Family> {
    let all = enumerate_ksubsets_capped(params.n(), params.k(), cap)?;
    let (k, s) = (params.k(), params.s());
    let members: Vec<KSet> = all.iter().copied().filter(|c| c.count_below(k) >= s).collect();
    Family::new(params.n(), k, members)
}

/// All k-subsets of `[n]` meeting `[k]` in at least `s` elements.
pub fn build_c(params: &Params) -> Result<Family> {
    build_c_capped(params, DEFAULT_ENUMERATION_CAP)
}

/// `|C_i| = C(k, i) * C(n - k, k - i)` for `s <= i <= k`.
pub fn orbit_weight(i: u32, params: &Params) -> Result<u128> {
    check_index(i, params.s(), params.k())?;
    let (n, k) = (params.n() as u64, params.k() as u64);
    let i = i as u64;
    binom(k, i)?
        .checked_mul(binom(n - k, k - i)?)
        .ok_or_else(|| Error::Overflow(format!("|C_{i}| for {params}")))
}

/// Same as [`orbit_weight`] without the 128-bit ceiling on the product.
pub fn orbit_weight_big(i: u32, params: &Params) -> Result<BigUint> {
    check_index(i, params.s(), params.k())?;
    let (n, k) = (params.n() as u64, params.k() as u64);
    let i = i as u64;
    Ok(BigUint::from(binom(k, i)?) * BigUint::from(binom(n - k, k - i)?))
}

/// `|C|` as the sum of the orbit weights `i = s..=k`.
pub fn size_c(params: &Params) -> Result<u128> {
    (params.s()..=params.k()).try_fold(0u128, |acc, i| {
        acc.checked_add(orbit_weight(i, params)?)
            .ok_or_else(|| Error::Overflow(format!("|C| for {params}")))
    })
}

/// Orbit sizes `|C_i|` for `i = s..=k`. Index `k` is the single set `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitWeightTable {
    pub params: Params,
    weights: Vec<u128>,
}

impl OrbitWeightTable {
    pub fn new(params: &Params) -> Result<Self> {
        let weights = (params.s()..=params.k())
            .map(|i| orbit_weight(i, params))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitWeightTable { params: *params, weights })
    }

    pub fn weight(&self, i: u32) -> Result<u128> {
        check_index(i, self.params.s(), self.params.k())?;
        Ok(self.weights[(i - self.params.s()) as usize])
    }

    pub fn total(&self) -> Result<u128> {
        self.weights.iter().try_fold(0u128, |acc, w| {
            acc.checked_add(*w).ok_or_else(|| Error::Overflow("orbit weight total".into()))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u128)> + '_ {
        self.weights.iter().enumerate().map(|(off, w)| (self.params.s() + off as u32, *w))
    }
}

/// Minimum of `|A ∩ B|` over `A ∈ C_i`, `B ∈ C_t`: the forced overlap inside
/// `[k]` plus the forced overlap in `[k+1, n]`.
pub fn min_pair_intersection(i: u32, t: u32, params: &Params) -> Result<u32> {
    let (s, k) = (params.s(), params.k());
    check_index(i, s, k)?;
    check_index(t, s, k)?;
    let (n, k, i, t) = (params.n() as i64, k as i64, i as i64, t as i64);
    let inside = (i + t - k).max(0);
    let outside = (2 * k - i - t - (n - k)).max(0);
    Ok((inside + outside) as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaClaim {
    /// `|C_i| >= |C_{k-i+s-1}|` exactly when `2i <= k + s - 1`.
    Part1,
    /// `|C_{a-i}| <= |C_{b+i}|` with `a = floor((k-l)/2)`, `b = floor((k+s-1)/2)`.
    Part2,
}

fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One compared pair of orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaInstance {
    pub step: u32,
    pub left_index: u32,
    pub right_index: u32,
    #[serde(serialize_with = "biguint_as_string")]
    pub left_weight: BigUint,
    #[serde(serialize_with = "biguint_as_string")]
    pub right_weight: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub params: Params,
    pub claim: LemmaClaim,
    pub instances: Vec<LemmaInstance>,
    pub pass: bool,
}

impl LemmaReport {
    fn new(params: &Params, claim: LemmaClaim, instances: Vec<LemmaInstance>) -> Self {
        let pass = instances.iter().all(|x| x.holds);
        LemmaReport { params: *params, claim, instances, pass }
    }
}

pub fn check_lemma_coeff_part1(params: &Params) -> Result<LemmaReport> {
    let (k, s) = (params.k(), params.s());
    let mut instances = Vec::new();
    for i in s..k {
        let partner = k + s - 1 - i;
        if partner < s || partner > k - 1 {
            continue;
        }
        let wi = orbit_weight_big(i, params)?;
        let wp = orbit_weight_big(partner, params)?;
        let lower_half = 2 * i <= k + s - 1;
        instances.push(LemmaInstance {
            step: i,
            left_index: i,
            right_index: partner,
            holds: (wi >= wp) == lower_half,
            left_weight: wi,
            right_weight: wp,
        });
    }
    Ok(LemmaReport::new(params, LemmaClaim::Part1, instances))
}

/// Lower and upper anchors `(floor((k-l)/2), floor((k+s-1)/2))`.
pub fn third_type_anchors(params: &Params) -> (i64, i64) {
    let (k, s, l) = (params.k() as i64, params.s() as i64, params.l());
    ((k - l).div_euclid(2), (k + s - 1).div_euclid(2))
}

pub fn check_lemma_coeff_part2(params: &Params) -> Result<LemmaReport> {
    if !params.in_theorem_range() {
        return Err(Error::ParamsOutOfRange(format!("{params} has l < 0")));
    }
    let (k, s) = (params.k() as i64, params.s() as i64);
    let (a, b) = third_type_anchors(params);
    let meaningful = |x: i64| x >= s && x <= k - 1;
    let mut instances = Vec::new();
    let mut i = 1i64;
    // a - i decreases and b + i increases, so once either leaves the range it stays out
    while meaningful(a - i) && meaningful(b + i) {
        let (lo, hi) = ((a - i) as u32, (b + i) as u32);
        let wl = orbit_weight_big(lo, params)?;
        let wr = orbit_weight_big(hi, params)?;
        instances.push(LemmaInstance {
            step: i as u32,
            left_index: lo,
            right_index: hi,
            holds: wl <= wr,
            left_weight: wl,
            right_weight: wr,
        });
        i += 1;
    }
    Ok(LemmaReport::new(params, LemmaClaim::Part2, instances))
}

/// The pair `(C, {[k]})`, which is s-cross-intersecting with total size `|C| + 1`.
pub fn extremal_pair(params: &Params) -> Result<(Family, Family)> {
    if !params.in_theorem_range() {
        return Err(Error::ParamsOutOfRange(format!("{params} has n <= 2k - s")));
    }
    let c = build_c(params)?;
    let top = KSet::initial(params.n(), params.k())?;
    let single = Family::new(params.n(), params.k(), [top])?;
    Ok((c, single))
}
