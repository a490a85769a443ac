//! Exact set-system primitives: binomials, k-subsets of `[n]`, families,
//! the s-cross-intersecting predicate and left shifting.
//!
//! Elements are 1-based. A [`KSet`] stores element `p` in bit `p` of a
//! `u128`, so the ground set is limited to `n <= 127`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground-set size for [`KSet`].
pub const MAX_GROUND: u32 = 127;

/// Default bound on the number of subsets [`enumerate_ksubsets`] will produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Exact binomial coefficient `C(a, b)`, zero when `b > a`.
///
/// Intermediate products are reduced by a gcd before multiplying, so the
/// function only fails when the result itself does not fit in a `u128`.
pub fn binom(a: u64, b: u64) -> Result<u128> {
    if b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for step in 0..b {
        let num = (a - step) as u128;
        let den = (step + 1) as u128;
        let g = gcd(acc, den);
        let (acc_red, den_red) = (acc / g, den / g);
        // den_red divides num because den | acc * num and gcd(acc_red, den_red) = 1
        acc = acc_red
            .checked_mul(num / den_red)
            .ok_or_else(|| Error::Overflow(format!("C({a}, {b})")))?;
    }
    Ok(acc)
}

/// A subset of `[n]` stored as a bitmask; `k` is its cardinality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    bits: u128,
    n: u32,
}

impl KSet {
    pub fn new(n: u32, elements: &[u32]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::InvalidSet(format!("ground size {n} exceeds {MAX_GROUND}")));
        }
        let mut bits = 0u128;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidSet(format!("element {e} outside [1, {n}]")));
            }
            if bits & (1 << e) != 0 {
                return Err(Error::InvalidSet(format!("duplicate element {e}")));
            }
            bits |= 1 << e;
        }
        Ok(KSet { bits, n })
    }

    /// `{1, ..., k}`.
    pub fn initial(n: u32, k: u32) -> Result<Self> {
        let elems: Vec<u32> = (1..=k).collect();
        KSet::new(n, &elems)
    }

    pub(crate) fn from_bits(n: u32, bits: u128) -> Self {
        debug_assert!(bits & 1 == 0);
        debug_assert!(n >= 127 || bits >> (n + 1) == 0);
        KSet { bits, n }
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(&self, e: u32) -> bool {
        e >= 1 && e <= self.n && self.bits & (1 << e) != 0
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k() as usize);
        let mut rest = self.bits;
        while rest != 0 {
            out.push(rest.trailing_zeros());
            rest &= rest - 1;
        }
        out
    }

    /// Size of the intersection with `[m] = {1, ..., m}`.
    pub fn count_below(&self, m: u32) -> u32 {
        let mask = if m >= 127 { u128::MAX - 1 } else { ((1u128 << (m + 1)) - 1) & !1 };
        (self.bits & mask).count_ones()
    }

    pub fn to_text(&self) -> String {
        if self.bits == 0 {
            return "-".to_string();
        }
        self.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl Ord for KSet {
    /// Lexicographic on the ascending element tuple, then by ground size.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return self.n.cmp(&other.n);
        }
        let p = diff.trailing_zeros();
        let above = if p >= 127 { 0 } else { u128::MAX << (p + 1) };
        // The tuples agree below p; the one holding p is smaller unless the
        // other one stops there (a proper prefix sorts first).
        let (holder, other_set) = if self.bits & (1 << p) != 0 {
            (Ordering::Less, other.bits)
        } else {
            (Ordering::Greater, self.bits)
        };
        if other_set & above != 0 {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

/// Validated `(n, k, s)` with `k > s >= 1` and `n >= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Params {
    n: u32,
    k: u32,
    s: u32,
}

impl Params {
    pub fn new(n: u32, k: u32, s: u32) -> Result<Self> {
        if s < 1 {
            return Err(Error::InvalidParams(format!("s = {s} must be at least 1")));
        }
        if k <= s {
            return Err(Error::InvalidParams(format!("need k > s, got k = {k}, s = {s}")));
        }
        if n < k {
            return Err(Error::InvalidParams(format!("need n >= k, got n = {n}, k = {k}")));
        }
        Ok(Params { n, k, s })
    }

    /// Parameters given through the slack `l = n - (2k - s + 1)`.
    pub fn from_slack(k: u32, s: u32, l: i64) -> Result<Self> {
        let n = 2 * k as i64 - s as i64 + 1 + l;
        if n < 0 || n > u32::MAX as i64 {
            return Err(Error::InvalidParams(format!("k = {k}, s = {s}, l = {l} gives n = {n}")));
        }
        Params::new(n as u32, k, s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn l(&self) -> i64 {
        self.n as i64 - (2 * self.k as i64 - self.s as i64 + 1)
    }

    /// `n > 2k - s`, equivalently `l >= 0`.
    pub fn in_theorem_range(&self) -> bool {
        self.l() >= 0
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={}, s={})", self.n, self.k, self.s)
    }
}

/// A duplicate-free, lexicographically ordered family of k-subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    k: u32,
    members: Vec<KSet>,
}

impl Family {
    pub fn new(n: u32, k: u32, members: impl IntoIterator<Item = KSet>) -> Result<Self> {
        let mut members: Vec<KSet> = members.into_iter().collect();
        for m in &members {
            if m.n() != n || m.k() != k {
                return Err(Error::GroundMismatch(format!(
                    "member {m} has (n, k) = ({}, {}), family expects ({n}, {k})",
                    m.n(),
                    m.k()
                )));
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { n, k, members })
    }

    pub fn empty(n: u32, k: u32) -> Self {
        Family { n, k, members: Vec::new() }
    }

    /// Builds a family from element lists, e.g. `&[&[1, 2], &[1, 3]]`.
    pub fn from_lists(n: u32, k: u32, lists: &[&[u32]]) -> Result<Self> {
        let sets = lists.iter().map(|l| KSet::new(n, l)).collect::<Result<Vec<_>>>()?;
        Family::new(n, k, sets)
    }

    pub(crate) fn from_sorted_unchecked(n: u32, k: u32, members: Vec<KSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Family { n, k, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn without(&self, set: &KSet) -> Family {
        let members = self.members.iter().copied().filter(|m| m != set).collect();
        Family { n: self.n, k: self.k, members }
    }

    /// Canonical text form: one set per line, ascending comma-separated
    /// elements, `-` for the empty set.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            out.push_str(&m.to_text());
            out.push('\n');
        }
        out
    }

    /// Parses the canonical text form. `k` is taken from the first set;
    /// blank lines and lines starting with `#` are ignored.
    pub fn parse_text(n: u32, text: &str) -> Result<Family> {
        let mut sets = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let elems: Vec<u32> = if line == "-" {
                Vec::new()
            } else {
                line.split(',')
                    .map(|tok| {
                        tok.trim().parse::<u32>().map_err(|e| {
                            Error::Parse(format!("line {}: {tok:?}: {e}", lineno + 1))
                        })
                    })
                    .collect::<Result<_>>()?
            };
            let set = KSet::new(n, &elems)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            sets.push(set);
        }
        let Some(first) = sets.first() else {
            return Err(Error::Parse("family text contains no sets".into()));
        };
        let k = first.k();
        Family::new(n, k, sets)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// All k-subsets of `[n]` in lexicographic order, refusing to produce more
/// than `cap` of them.
pub fn enumerate_ksubsets_capped(n: u32, k: u32, cap: u128) -> Result<Family> {
    if k > n {
        return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
    }
    if n > MAX_GROUND {
        return Err(Error::InvalidSet(format!("ground size {n} exceeds {MAX_GROUND}")));
    }
    let count = binom(n as u64, k as u64)?;
    if count > cap {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let k = k as usize;
    let mut idx: Vec<u32> = (1..=k as u32).collect();
    loop {
        let bits = idx.iter().fold(0u128, |acc, &e| acc | (1 << e));
        out.push(KSet::from_bits(n, bits));
        // advance to the next combination in lex order
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - (k - pos) as u32 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    Ok(Family::from_sorted_unchecked(n, k as u32, out))
}

pub fn enumerate_ksubsets(n: u32, k: u32) -> Result<Family> {
    enumerate_ksubsets_capped(n, k, DEFAULT_ENUMERATION_CAP)
}

pub fn intersection_size(a: &KSet, b: &KSet) -> Result<u32> {
    if a.n() != b.n() {
        return Err(Error::GroundMismatch(format!("n = {} vs n = {}", a.n(), b.n())));
    }
    Ok((a.bits & b.bits).count_ones())
}

/// Outcome of a cross-intersection check; `witness` is the first violating
/// pair `(A, B)` in lexicographic order when the property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub holds: bool,
    pub witness: Option<(KSet, KSet)>,
}

pub fn is_s_cross_intersecting(f1: &Family, f2: &Family, s: u32) -> Result<CrossCheck> {
    if f1.n() != f2.n() || f1.k() != f2.k() {
        return Err(Error::GroundMismatch(format!(
            "(n, k) = ({}, {}) vs ({}, {})",
            f1.n(),
            f1.k(),
            f2.n(),
            f2.k()
        )));
    }
    for a in f1 {
        for b in f2 {
            if ((a.bits & b.bits).count_ones()) < s {
                return Ok(CrossCheck { holds: false, witness: Some((*a, *b)) });
            }
        }
    }
    Ok(CrossCheck { holds: true, witness: None })
}

fn check_shift_indices(i: u32, j: u32, n: u32) -> Result<()> {
    if i >= 1 && i < j && j <= n {
        Ok(())
    } else {
        Err(Error::BadIndices { i, j, n })
    }
}

fn shift_bits(i: u32, j: u32, bits: u128) -> u128 {
    if bits & (1 << j) != 0 && bits & (1 << i) == 0 {
        (bits & !(1 << j)) | (1 << i)
    } else {
        bits
    }
}

/// `S_{i,j}(A)`: replaces `j` by `i` when `j ∈ A` and `i ∉ A`.
pub fn shift_set(i: u32, j: u32, a: &KSet) -> Result<KSet> {
    check_shift_indices(i, j, a.n())?;
    Ok(KSet::from_bits(a.n(), shift_bits(i, j, a.bits)))
}

fn shift_family_unchecked(i: u32, j: u32, f: &Family) -> (Family, bool) {
    let mut changed = false;
    let members: Vec<KSet> = f
        .members
        .iter()
        .map(|a| {
            let img = KSet::from_bits(f.n, shift_bits(i, j, a.bits));
            if img != *a && !f.contains(&img) {
                changed = true;
                img
            } else {
                *a
            }
        })
        .collect();
    if !changed {
        return (f.clone(), false);
    }
    let mut members = members;
    members.sort_unstable();
    (Family::from_sorted_unchecked(f.n, f.k, members), true)
}

/// `S_{i,j}(F)`: each set moves to its shift unless the shift is already in `F`.
pub fn shift_family(i: u32, j: u32, f: &Family) -> Result<Family> {
    check_shift_indices(i, j, f.n())?;
    Ok(shift_family_unchecked(i, j, f).0)
}

pub fn is_shifted(f: &Family) -> bool {
    let n = f.n();
    (1..=n).all(|i| (i + 1..=n).all(|j| !shift_family_unchecked(i, j, f).1))
}

/// Applies shifts `(i, j)` in lexicographic order, restarting after every
/// change, until the family is shifted.
pub fn shift_closure(f: &Family) -> Family {
    let n = f.n();
    let mut cur = f.clone();
    'restart: loop {
        for i in 1..=n {
            for j in i + 1..=n {
                let (next, changed) = shift_family_unchecked(i, j, &cur);
                if changed {
                    cur = next;
                    continue 'restart;
                }
            }
        }
        return cur;
    }
}

/// Shifts both families with the same `(i, j)` sequence until both are
/// shifted. Cross-intersection properties survive every step.
pub fn shift_closure_pair(f1: &Family, f2: &Family) -> Result<(Family, Family)> {
    if f1.n() != f2.n() {
        return Err(Error::GroundMismatch(format!("n = {} vs n = {}", f1.n(), f2.n())));
    }
    let n = f1.n();
    let (mut a, mut b) = (f1.clone(), f2.clone());
    'restart: loop {
        for i in 1..=n {
            for j in i + 1..=n {
                let (na, ca) = shift_family_unchecked(i, j, &a);
                let (nb, cb) = shift_family_unchecked(i, j, &b);
                if ca || cb {
                    a = na;
                    b = nb;
                    continue 'restart;
                }
            }
        }
        return Ok((a, b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: u32, e: &[u32]) -> KSet {
        KSet::new(n, e).unwrap()
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2).unwrap(), 10);
        assert_eq!(binom(4, 0).unwrap(), 1);
        assert_eq!(binom(3, 5).unwrap(), 0);
        assert_eq!(binom(0, 0).unwrap(), 1);
        assert_eq!(binom(60, 30).unwrap(), 118_264_581_564_861_424);
    }

    #[test]
    fn binom_matches_pascal_triangle() {
        let mut row = vec![1u128];
        for a in 0..=130u64 {
            for (b, v) in row.iter().enumerate() {
                assert_eq!(binom(a, b as u64).unwrap(), *v, "C({a}, {b})");
            }
            let mut next = vec![1u128; row.len() + 1];
            for b in 1..row.len() {
                next[b] = row[b - 1] + row[b];
            }
            row = next;
        }
    }

    #[test]
    fn binom_detects_overflow() {
        assert!(matches!(binom(200, 100), Err(Error::Overflow(_))));
        // largest central value that still fits
        assert!(binom(130, 65).is_ok());
    }

    #[test]
    fn enumerate_lex_order() {
        let f = enumerate_ksubsets(4, 2).unwrap();
        let got: Vec<Vec<u32>> = f.iter().map(|s| s.elements()).collect();
        assert_eq!(got, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        let f = enumerate_ksubsets(3, 3).unwrap();
        assert_eq!(f.members(), &[ks(3, &[1, 2, 3])]);
        let f = enumerate_ksubsets(3, 0).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.members()[0].k(), 0);
    }

    #[test]
    fn enumerate_respects_cap() {
        assert!(matches!(
            enumerate_ksubsets_capped(10, 5, 100),
            Err(Error::EnumerationTooLarge { count: 252, cap: 100 })
        ));
    }

    #[test]
    fn ordering_is_lexicographic_on_tuples() {
        let all = enumerate_ksubsets(7, 3).unwrap();
        let tuples: Vec<Vec<u32>> = all.iter().map(|s| s.elements()).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        // prefix sorts first
        assert!(ks(5, &[1]) < ks(5, &[1, 2]));
        assert!(ks(5, &[1, 5]) < ks(5, &[2]));
    }

    #[test]
    fn intersections() {
        assert_eq!(intersection_size(&ks(5, &[1, 2, 3]), &ks(5, &[2, 3, 4])).unwrap(), 2);
        let a = ks(5, &[1, 4, 5]);
        assert_eq!(intersection_size(&a, &a).unwrap(), 3);
        assert_eq!(intersection_size(&ks(4, &[1, 2]), &ks(4, &[3, 4])).unwrap(), 0);
        assert!(matches!(
            intersection_size(&ks(4, &[1, 2]), &ks(5, &[1, 2])),
            Err(Error::GroundMismatch(_))
        ));
    }

    #[test]
    fn cross_intersection_with_witness() {
        let a = Family::from_lists(4, 3, &[&[1, 2, 3]]).unwrap();
        let b = Family::from_lists(4, 3, &[&[2, 3, 4]]).unwrap();
        assert!(is_s_cross_intersecting(&a, &b, 2).unwrap().holds);
        let r = is_s_cross_intersecting(&a, &b, 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some((ks(4, &[1, 2, 3]), ks(4, &[2, 3, 4]))));
    }

    #[test]
    fn witness_is_first_in_lex_order() {
        let a = Family::from_lists(6, 2, &[&[3, 4], &[1, 2]]).unwrap();
        let b = Family::from_lists(6, 2, &[&[5, 6], &[3, 6]]).unwrap();
        let r = is_s_cross_intersecting(&a, &b, 1).unwrap();
        assert_eq!(r.witness, Some((ks(6, &[1, 2]), ks(6, &[3, 6]))));
    }

    #[test]
    fn shift_set_branches() {
        assert_eq!(shift_set(1, 3, &ks(5, &[3, 4, 5])).unwrap(), ks(5, &[1, 4, 5]));
        assert_eq!(shift_set(1, 3, &ks(5, &[1, 3])).unwrap(), ks(5, &[1, 3]));
        assert_eq!(shift_set(2, 4, &ks(5, &[1, 3])).unwrap(), ks(5, &[1, 3]));
        assert!(matches!(shift_set(3, 3, &ks(5, &[1, 3])), Err(Error::BadIndices { .. })));
        assert!(matches!(shift_set(2, 6, &ks(5, &[1, 3])), Err(Error::BadIndices { .. })));
        assert!(matches!(shift_set(0, 2, &ks(5, &[1, 3])), Err(Error::BadIndices { .. })));
    }

    #[test]
    fn shift_family_rule() {
        let f = Family::from_lists(3, 2, &[&[2, 3], &[1, 3]]).unwrap();
        assert_eq!(shift_family(1, 2, &f).unwrap(), f);
        let f = Family::from_lists(3, 2, &[&[2, 3]]).unwrap();
        assert_eq!(shift_family(1, 2, &f).unwrap(), Family::from_lists(3, 2, &[&[1, 3]]).unwrap());
    }

    #[test]
    fn shiftedness() {
        assert!(is_shifted(&Family::from_lists(3, 2, &[&[1, 2]]).unwrap()));
        assert!(!is_shifted(&Family::from_lists(3, 2, &[&[2, 3]]).unwrap()));
        assert!(is_shifted(&Family::empty(4, 2)));
    }

    #[test]
    fn closure_examples() {
        let f = Family::from_lists(3, 2, &[&[2, 3]]).unwrap();
        let c = shift_closure(&f);
        assert_eq!(c, Family::from_lists(3, 2, &[&[1, 2]]).unwrap());
        assert!(is_shifted(&c));
        assert_eq!(shift_closure(&c), c);
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let f = Family::from_lists(6, 3, &[&[1, 2, 4], &[2, 5, 6]]).unwrap();
        assert_eq!(f.to_text(), "1,2,4\n2,5,6\n");
        assert_eq!(Family::parse_text(6, "# fixture\n2,5,6\n\n1, 2, 4\n").unwrap(), f);
        assert!(matches!(Family::parse_text(6, "1,2\n1,2,3\n"), Err(Error::GroundMismatch(_))));
        assert!(matches!(Family::parse_text(6, "1,9\n"), Err(Error::Parse(_))));
        assert!(matches!(Family::parse_text(6, "1,x\n"), Err(Error::Parse(_))));
        assert!(matches!(Family::parse_text(6, ""), Err(Error::Parse(_))));
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(7, 3, 2).is_ok());
        assert!(Params::new(7, 3, 3).is_err());
        assert!(Params::new(7, 3, 0).is_err());
        assert!(Params::new(2, 3, 1).is_err());
        let p = Params::new(9, 4, 2).unwrap();
        assert_eq!(p.l(), 2);
        assert!(p.in_theorem_range());
        let p = Params::new(4, 3, 2).unwrap();
        assert_eq!(p.l(), -1);
        assert!(!p.in_theorem_range());
        assert_eq!(Params::from_slack(4, 2, 2).unwrap(), Params::new(9, 4, 2).unwrap());
    }
}
