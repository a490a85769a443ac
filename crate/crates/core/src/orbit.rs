//! The weighted orbit graph `W`, its three families of typed edges and the
//! decomposition of `W` into even paths whose weights climb toward an
//! equal-weight middle edge.
//!
//! Vertex `(side, i)` stands for the orbit of sets meeting `[k]` in exactly
//! `i` elements, `s <= i <= k - 1`, in copy `side` of `C - {[k]}`. Edges are
//! written `(i, t)` with `i` on side one and `t` on side two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::combinatorics::{enumerate_ksubsets_capped, Params};
use crate::error::{Error, Result};
use crate::extremal::{min_pair_intersection, size_c, third_type_anchors, OrbitWeightTable};
use crate::matching::{Side, WeightedBipartiteGraph};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitVertex {
    pub side: Side,
    pub i: u32,
    pub weight: u128,
}

impl fmt::Display for OrbitVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = match self.side {
            Side::One => 1,
            Side::Two => 2,
        };
        write!(f, "C_{}^{}", self.i, j)
    }
}

fn ceil_half(x: i64) -> i64 {
    -(-x).div_euclid(2)
}

/// `t ∈ {k-i-l, ..., k-i+s-1}`; callers intersect with the meaningful range.
pub fn edge_rule(i: u32, t: u32, params: &Params) -> bool {
    let (k, s, l) = (params.k() as i64, params.s() as i64, params.l());
    let (i, t) = (i as i64, t as i64);
    k - i - l <= t && t <= k - i + s - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitGraph {
    pub params: Params,
    weights: OrbitWeightTable,
    edges: BTreeSet<(u32, u32)>,
}

/// Builds `W` for `s >= 2` and `l >= 0`.
pub fn build_w(params: &Params) -> Result<OrbitGraph> {
    if params.s() < 2 || !params.in_theorem_range() {
        return Err(Error::ParamsOutOfRange(format!(
            "orbit graph needs s >= 2 and l >= 0, got {params} with l = {}",
            params.l()
        )));
    }
    let weights = OrbitWeightTable::new(params)?;
    let (s, k) = (params.s(), params.k());
    let mut edges = BTreeSet::new();
    for i in s..k {
        for t in s..k {
            if edge_rule(i, t, params) {
                edges.insert((i, t));
            }
        }
    }
    Ok(OrbitGraph { params: *params, weights, edges })
}

impl OrbitGraph {
    pub fn indices(&self) -> std::ops::Range<u32> {
        self.params.s()..self.params.k()
    }

    pub fn weight(&self, i: u32) -> u128 {
        self.weights.weight(i).expect("orbit index checked by caller")
    }

    pub fn vertex(&self, side: Side, i: u32) -> OrbitVertex {
        OrbitVertex { side, i, weight: self.weight(i) }
    }

    /// Side one then side two, ascending profile.
    pub fn vertices(&self) -> Vec<OrbitVertex> {
        [Side::One, Side::Two]
            .into_iter()
            .flat_map(|side| self.indices().map(move |i| (side, i)))
            .map(|(side, i)| self.vertex(side, i))
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: u32, t: u32) -> bool {
        self.edges.contains(&(i, t))
    }

    pub fn degree(&self, side: Side, i: u32) -> usize {
        match side {
            Side::One => self.edges.iter().filter(|e| e.0 == i).count(),
            Side::Two => self.edges.iter().filter(|e| e.1 == i).count(),
        }
    }

    /// Weight of one side, which equals `|C| - 1`.
    pub fn side_weight(&self) -> Result<u128> {
        self.indices().try_fold(0u128, |acc, i| {
            acc.checked_add(self.weight(i)).ok_or_else(|| Error::Overflow("side weight".into()))
        })
    }

    /// The same graph with vertex `i` at position `i - s` on each side.
    pub fn to_weighted_bipartite(&self) -> Result<WeightedBipartiteGraph> {
        let s = self.params.s();
        let side: Vec<u128> = self.indices().map(|i| self.weight(i)).collect();
        let edges = self.edges.iter().map(|&(i, t)| ((i - s) as usize, (t - s) as usize)).collect();
        WeightedBipartiteGraph::new(side.clone(), side, edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypedEdge {
    /// Profile of the side-one endpoint.
    pub i: u32,
    /// Profile of the side-two endpoint.
    pub t: u32,
    pub edge_type: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClassification {
    pub typed: Vec<TypedEdge>,
    /// Edges of `W` not used by any of the three types.
    pub untyped: Vec<(u32, u32)>,
}

impl EdgeClassification {
    pub fn of_type(&self, edge_type: u8) -> Vec<(u32, u32)> {
        self.typed.iter().filter(|e| e.edge_type == edge_type).map(|e| (e.i, e.t)).collect()
    }

    pub fn edge_type(&self, i: u32, t: u32) -> Option<u8> {
        self.typed.iter().find(|e| e.i == i && e.t == t).map(|e| e.edge_type)
    }
}

/// How third-type edges are generated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThirdTypeRule {
    /// `{floor((k-l)/2) - m, floor((k+s-1)/2) + m}` for `m >= 1`. When `k - l`
    /// is odd this skips `floor((k-l)/2)`, which then has no type-2 or type-3
    /// edge and ends a two-vertex path of unequal weights.
    AsStated,
    /// Same as [`ThirdTypeRule::AsStated`] for even `k - l`. For odd `k - l`
    /// pairs `ceil((k-l)/2) - m` with `ceil((k+s-1)/2) + m - 1`, `m >= 1`, so
    /// every vertex below `ceil((k-l)/2)` gets a partner.
    #[default]
    Completed,
}

impl ThirdTypeRule {
    /// Endpoint profiles of the `m`-th third-type edge, `m >= 1`.
    pub fn pair(&self, params: &Params, m: i64) -> (i64, i64) {
        let (k, s, l) = (params.k() as i64, params.s() as i64, params.l());
        let (a, b) = third_type_anchors(params);
        match self {
            ThirdTypeRule::AsStated => (a - m, b + m),
            ThirdTypeRule::Completed if (k - l).rem_euclid(2) == 0 => (a - m, b + m),
            ThirdTypeRule::Completed => (ceil_half(k - l) - m, ceil_half(k + s - 1) + m - 1),
        }
    }
}

/// Lists the typed edges (third type by [`ThirdTypeRule::Completed`]) and
/// checks each one against `W`.
pub fn classify_edges(w: &OrbitGraph) -> Result<EdgeClassification> {
    classify_edges_with(w, ThirdTypeRule::Completed)
}

/// * type 1: `i + t = k + s - 1`
/// * type 2: `i = t` with `ceil((k-l)/2) <= i` and `2i < k + s - 1`
/// * type 3: see [`ThirdTypeRule`]; both orientations
pub fn classify_edges_with(w: &OrbitGraph, rule: ThirdTypeRule) -> Result<EdgeClassification> {
    let p = &w.params;
    let (k, s, l) = (p.k() as i64, p.s() as i64, p.l());
    let meaningful = |x: i64| x >= s && x <= k - 1;
    let mut typed = BTreeSet::new();

    for i in s..k {
        let t = k + s - 1 - i;
        if meaningful(t) {
            typed.insert(TypedEdge { i: i as u32, t: t as u32, edge_type: 1 });
        }
    }
    let lo = ceil_half(k - l);
    for i in s..k {
        if lo <= i && 2 * i < k + s - 1 {
            typed.insert(TypedEdge { i: i as u32, t: i as u32, edge_type: 2 });
        }
    }
    if s >= 2 {
        let mut m = 1;
        loop {
            let (x, y) = rule.pair(p, m);
            // one endpoint falls and the other rises with m
            if !(meaningful(x) && meaningful(y)) {
                break;
            }
            typed.insert(TypedEdge { i: x as u32, t: y as u32, edge_type: 3 });
            typed.insert(TypedEdge { i: y as u32, t: x as u32, edge_type: 3 });
            m += 1;
        }
    }

    for e in &typed {
        if !w.has_edge(e.i, e.t) {
            return Err(Error::TypedEdgeNotInW { i: e.i, t: e.t, edge_type: e.edge_type });
        }
    }
    let mut seen = BTreeSet::new();
    for e in &typed {
        if !seen.insert((e.i, e.t)) {
            return Err(Error::DecompositionViolation(format!(
                "edge ({}, {}) carries more than one type",
                e.i, e.t
            )));
        }
    }
    let untyped = w.edges().filter(|pair| !seen.contains(pair)).collect();
    Ok(EdgeClassification { typed: typed.into_iter().collect(), untyped })
}

/// One path of the decomposition. `edge_types[m]` joins `vertices[m]` and
/// `vertices[m + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPath {
    pub vertices: Vec<OrbitVertex>,
    pub edge_types: Vec<u8>,
}

impl ChainPath {
    /// Index into `edge_types` of the central edge; `None` for odd vertex counts.
    pub fn middle(&self) -> Option<usize> {
        let n = self.vertices.len();
        (n.is_multiple_of(2) && n >= 2).then(|| n / 2 - 1)
    }

    pub fn weights(&self) -> Vec<u128> {
        self.vertices.iter().map(|v| v.weight).collect()
    }

    pub fn total_weight(&self) -> Result<u128> {
        self.vertices.iter().try_fold(0u128, |acc, v| {
            acc.checked_add(v.weight).ok_or_else(|| Error::Overflow("path weight".into()))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub params: Params,
    pub paths: Vec<ChainPath>,
    pub untyped: Vec<(u32, u32)>,
}

type Key = (Side, u32);

/// Splits the typed subgraph of `W` into its components, which must be paths.
pub fn build_chain_decomposition(params: &Params) -> Result<ChainDecomposition> {
    build_chain_decomposition_with(params, ThirdTypeRule::Completed)
}

pub fn build_chain_decomposition_with(params: &Params, rule: ThirdTypeRule) -> Result<ChainDecomposition> {
    let w = build_w(params)?;
    let classes = classify_edges_with(&w, rule)?;

    let mut adj: BTreeMap<Key, Vec<(Key, u8)>> = BTreeMap::new();
    for v in w.vertices() {
        adj.insert((v.side, v.i), Vec::new());
    }
    for e in &classes.typed {
        let (a, b) = ((Side::One, e.i), (Side::Two, e.t));
        adj.get_mut(&a).unwrap().push((b, e.edge_type));
        adj.get_mut(&b).unwrap().push((a, e.edge_type));
    }
    for (key, nbrs) in &adj {
        if nbrs.len() > 2 {
            return Err(Error::DecompositionViolation(format!(
                "{} has typed degree {}",
                w.vertex(key.0, key.1),
                nbrs.len()
            )));
        }
        if nbrs.is_empty() {
            return Err(Error::DecompositionViolation(format!(
                "{} has no typed edge",
                w.vertex(key.0, key.1)
            )));
        }
    }

    let mut visited: BTreeSet<Key> = BTreeSet::new();
    let mut paths = Vec::new();
    let ends: Vec<Key> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(k, _)| *k).collect();
    for start in ends {
        if visited.contains(&start) {
            continue;
        }
        let mut keys = vec![start];
        let mut types = Vec::new();
        visited.insert(start);
        let mut cur = start;
        loop {
            let next = adj[&cur].iter().find(|(nb, _)| !visited.contains(nb)).copied();
            let Some((nb, ty)) = next else { break };
            visited.insert(nb);
            keys.push(nb);
            types.push(ty);
            cur = nb;
        }
        let mut path = ChainPath {
            vertices: keys.iter().map(|&(side, i)| w.vertex(side, i)).collect(),
            edge_types: types,
        };
        // read the middle edge from side one to side two
        if let Some(m) = path.middle() {
            if path.vertices[m].side == Side::Two {
                path.vertices.reverse();
                path.edge_types.reverse();
            }
        }
        paths.push(path);
    }
    if let Some(key) = adj.keys().find(|k| !visited.contains(k)) {
        return Err(Error::DecompositionViolation(format!(
            "{} lies on a typed cycle",
            w.vertex(key.0, key.1)
        )));
    }
    paths.sort_by_key(|p| {
        let v = p.vertices[0];
        (v.side, v.i, p.vertices.len())
    });
    Ok(ChainDecomposition { params: *params, paths, untyped: classes.untyped })
}

/// Maximum-weight independent set of a path graph.
pub fn path_mwis(weights: &[u128]) -> Result<u128> {
    // best totals with the previous vertex excluded / allowed
    let (mut skip, mut take) = (0u128, 0u128);
    for &w in weights {
        let with = skip.checked_add(w).ok_or_else(|| Error::Overflow("path MWIS".into()))?;
        skip = skip.max(take);
        take = with;
    }
    Ok(skip.max(take))
}

/// Checks every structural claim about a decomposition against `W`.
pub fn validate_decomposition(dec: &ChainDecomposition, w: &OrbitGraph) -> Verdict {
    let started = Instant::now();
    let p = dec.params;
    let mut verdict = Verdict::new(&p, "chains");
    let (k, s) = (p.k(), p.s());

    let mut seen: BTreeMap<Key, usize> = BTreeMap::new();
    for path in &dec.paths {
        for v in &path.vertices {
            *seen.entry((v.side, v.i)).or_default() += 1;
        }
    }
    for v in w.vertices() {
        match seen.remove(&(v.side, v.i)) {
            Some(1) => {}
            Some(c) => verdict.fail(format!("{v} appears in {c} paths")),
            None => verdict.fail(format!("{v} is not covered")),
        }
    }
    for (side, i) in seen.keys() {
        verdict.fail(format!("path vertex ({side:?}, {i}) is not a vertex of W"));
    }

    let mut mwis_sum: u128 = 0;
    for (idx, path) in dec.paths.iter().enumerate() {
        let tag = format!("path {idx}");
        let vs = &path.vertices;
        if path.edge_types.len() + 1 != vs.len() {
            verdict.fail(format!("{tag}: {} edges for {} vertices", path.edge_types.len(), vs.len()));
            continue;
        }
        for v in vs {
            if v.i >= s && v.i < k && v.weight != w.weight(v.i) {
                verdict.fail(format!("{tag}: {v} carries weight {} instead of {}", v.weight, w.weight(v.i)));
            }
        }
        for (m, pair) in vs.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            let ty = path.edge_types[m];
            let (i, t) = match (a.side, b.side) {
                (Side::One, Side::Two) => (a.i, b.i),
                (Side::Two, Side::One) => (b.i, a.i),
                _ => {
                    verdict.fail(format!("{tag}: {a} and {b} lie on the same side"));
                    continue;
                }
            };
            if !w.has_edge(i, t) {
                verdict.fail(format!("{tag}: {a}-{b} is not an edge of W"));
            }
            let expected_one = m % 2 == 0;
            if (ty == 1) != expected_one {
                verdict.fail(format!("{tag}: edge {m} has type {ty}, breaking the 1 / 2-or-3 alternation"));
            }
        }
        if vs.len() % 2 != 0 {
            verdict.fail(format!("{tag}: odd vertex count {}", vs.len()));
        }
        match path.middle() {
            None => verdict.fail(format!("{tag}: no middle edge")),
            Some(m) => {
                let (a, b) = (vs[m], vs[m + 1]);
                let ty = path.edge_types[m];
                if a.weight != b.weight {
                    verdict.fail(format!("{tag}: middle edge {a}-{b} joins weights {} and {}", a.weight, b.weight));
                }
                let fixed_point = ty == 1 && a.i == b.i && 2 * a.i == k + s - 1;
                if ty != 2 && !fixed_point {
                    verdict.fail(format!("{tag}: middle edge {a}-{b} is type {ty}, not type 2 or a fixed-point type 1"));
                }
                if vs[..=m].windows(2).any(|x| x[0].weight > x[1].weight)
                    || vs[m + 1..].windows(2).any(|x| x[0].weight < x[1].weight)
                {
                    verdict.fail(format!("{tag}: weights {:?} are not monotone toward the middle", path.weights()));
                }
            }
        }
        match (path_mwis(&path.weights()), path.total_weight()) {
            (Ok(best), Ok(total)) => {
                if best.checked_mul(2) != Some(total) {
                    verdict.fail(format!("{tag}: independent weight {best} is not half of {total}"));
                }
                mwis_sum = mwis_sum.saturating_add(best);
            }
            (Err(e), _) | (_, Err(e)) => verdict.fail(format!("{tag}: {e}")),
        }
    }

    match size_c(&p) {
        Ok(c) => {
            verdict.formula_value = Some(c - 1);
            verdict.oracle_value = Some(mwis_sum);
            if c - 1 != mwis_sum {
                verdict.fail(format!("sum of path bounds {mwis_sum} differs from |C| - 1 = {}", c - 1));
            }
        }
        Err(e) => verdict.fail(e.to_string()),
    }
    if !dec.untyped.is_empty() {
        verdict.note(format!("untyped W edges: {:?}", dec.untyped));
    }
    verdict.millis = started.elapsed().as_millis();
    verdict
}

/// Degrees in the conflict graph between the set orbits `C_i` (copy one)
/// and `C_t` (copy two), `A ~ B` iff `|A ∩ B| < s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDegrees {
    pub side1: BTreeSet<usize>,
    pub side2: BTreeSet<usize>,
}

pub fn orbit_pair_degrees(params: &Params, i: u32, t: u32, cap: u128) -> Result<OrbitDegrees> {
    let all = enumerate_ksubsets_capped(params.n(), params.k(), cap)?;
    let k = params.k();
    let left: Vec<_> = all.iter().filter(|a| a.count_below(k) == i).collect();
    let right: Vec<_> = all.iter().filter(|b| b.count_below(k) == t).collect();
    let mut deg1 = vec![0usize; left.len()];
    let mut deg2 = vec![0usize; right.len()];
    for (x, a) in left.iter().enumerate() {
        for (y, b) in right.iter().enumerate() {
            if (a.bits() & b.bits()).count_ones() < params.s() {
                deg1[x] += 1;
                deg2[y] += 1;
            }
        }
    }
    Ok(OrbitDegrees { side1: deg1.into_iter().collect(), side2: deg2.into_iter().collect() })
}

/// Checks that the conflict graph between orbits `C_i` and `C_t` is
/// biregular with nonzero degrees. `(i, t)` must be an edge of `W`.
pub fn check_biregularity(params: &Params, i: u32, t: u32, cap: u128) -> Result<Verdict> {
    let started = Instant::now();
    let w = build_w(params)?;
    if !w.has_edge(i, t) {
        return Err(Error::InvalidParams(format!("({i}, {t}) is not an edge of W for {params}")));
    }
    let deg = orbit_pair_degrees(params, i, t, cap)?;
    let mut verdict = Verdict::new(params, format!("biregular({i},{t})"));
    for (name, set) in [("side 1", &deg.side1), ("side 2", &deg.side2)] {
        if set.len() != 1 {
            verdict.fail(format!("{name} degrees vary: {set:?}"));
        } else if set.contains(&0) {
            verdict.fail(format!("{name} degree is zero"));
        } else {
            verdict.note(format!("{name} degree {}", set.iter().next().unwrap()));
        }
    }
    verdict.millis = started.elapsed().as_millis();
    Ok(verdict)
}

/// Checks, for every meaningful `(i, t)`, that the interval rule agrees with
/// `min_pair_intersection(i, t) < s`, and with an explicit search over all
/// pairs of sets when `C(n, k) <= cap`.
pub fn check_edge_rule(params: &Params, cap: u128) -> Result<Verdict> {
    let started = Instant::now();
    if !params.in_theorem_range() {
        return Err(Error::ParamsOutOfRange(format!("{params} has l < 0")));
    }
    let (k, s) = (params.k(), params.s());
    let mut verdict = Verdict::new(params, "edges");
    let brute = match enumerate_ksubsets_capped(params.n(), k, cap) {
        Ok(all) => {
            let mut by_profile: BTreeMap<u32, Vec<u128>> = BTreeMap::new();
            for set in &all {
                by_profile.entry(set.count_below(k)).or_default().push(set.bits());
            }
            let mut min = BTreeMap::new();
            for i in s..k {
                for t in s..k {
                    let lo = by_profile[&i]
                        .iter()
                        .flat_map(|a| by_profile[&t].iter().map(move |b| (a & b).count_ones()))
                        .min()
                        .unwrap_or(u32::MAX);
                    min.insert((i, t), lo);
                }
            }
            Some(min)
        }
        Err(Error::EnumerationTooLarge { .. }) => {
            verdict.note("pair enumeration skipped: cap");
            None
        }
        Err(e) => return Err(e),
    };
    // formula: pairs checked; oracle: pairs on which every route agrees
    let (mut checked, mut agreed) = (0u128, 0u128);
    for i in s..k {
        for t in s..k {
            checked += 1;
            let interval = edge_rule(i, t, params);
            let closed = min_pair_intersection(i, t, params)?;
            let mut ok = true;
            if interval != (closed < s) {
                ok = false;
                verdict.fail(format!("({i}, {t}): interval rule {interval}, closed-form minimum {closed}"));
            }
            if let Some(min) = &brute {
                let found = min[&(i, t)];
                if found != closed {
                    ok = false;
                    verdict.fail(format!("({i}, {t}): enumerated minimum {found}, closed form {closed}"));
                }
            }
            agreed += ok as u128;
        }
    }
    verdict.formula_value = Some(checked);
    verdict.oracle_value = Some(agreed);
    verdict.millis = started.elapsed().as_millis();
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, k: u32, s: u32) -> Params {
        Params::new(n, k, s).unwrap()
    }

    fn keys(path: &ChainPath) -> Vec<(Side, u32)> {
        path.vertices.iter().map(|v| (v.side, v.i)).collect()
    }

    #[test]
    fn w_examples() {
        let w = build_w(&p(7, 3, 2)).unwrap();
        assert_eq!(w.edges().collect::<Vec<_>>(), vec![(2, 2)]);
        assert_eq!(w.weight(2), 12);

        let w = build_w(&p(9, 4, 2)).unwrap();
        assert_eq!(w.edges().collect::<Vec<_>>(), vec![(2, 2), (2, 3), (3, 2)]);
        assert_eq!((w.weight(2), w.weight(3)), (60, 20));

        let w = build_w(&p(7, 4, 2)).unwrap();
        assert_eq!(w.params.l(), 0);
        assert_eq!(w.edges().collect::<Vec<_>>(), vec![(2, 2), (2, 3), (3, 2)]);
        assert_eq!((w.weight(2), w.weight(3)), (18, 12));
    }

    #[test]
    fn w_rejects_out_of_range() {
        assert!(matches!(build_w(&p(6, 3, 1)), Err(Error::ParamsOutOfRange(_))));
        assert!(matches!(build_w(&p(4, 3, 2)), Err(Error::ParamsOutOfRange(_))));
    }

    #[test]
    fn classification_examples() {
        let c = classify_edges(&build_w(&p(9, 4, 2)).unwrap()).unwrap();
        assert_eq!(c.of_type(1), vec![(2, 3), (3, 2)]);
        assert_eq!(c.of_type(2), vec![(2, 2)]);
        assert!(c.of_type(3).is_empty());
        assert!(c.untyped.is_empty());

        let c = classify_edges(&build_w(&p(7, 3, 2)).unwrap()).unwrap();
        assert_eq!(c.of_type(1), vec![(2, 2)]);
        assert!(c.of_type(2).is_empty());
        assert!(c.of_type(3).is_empty());

        let c = classify_edges(&build_w(&p(11, 6, 2)).unwrap()).unwrap();
        assert_eq!(c.of_type(3), vec![(2, 4), (4, 2)]);
    }

    #[test]
    fn decomposition_9_4_2() {
        let dec = build_chain_decomposition(&p(9, 4, 2)).unwrap();
        assert_eq!(dec.paths.len(), 1);
        let path = &dec.paths[0];
        assert_eq!(
            keys(path),
            vec![(Side::Two, 3), (Side::One, 2), (Side::Two, 2), (Side::One, 3)]
        );
        assert_eq!(path.weights(), vec![20, 60, 60, 20]);
        assert_eq!(path.middle(), Some(1));
        assert_eq!(path.edge_types, vec![1, 2, 1]);
        let v = validate_decomposition(&dec, &build_w(&p(9, 4, 2)).unwrap());
        assert!(v.pass, "{:?}", v.findings);
        assert_eq!(v.oracle_value, Some(80));
    }

    #[test]
    fn decomposition_7_3_2() {
        let dec = build_chain_decomposition(&p(7, 3, 2)).unwrap();
        assert_eq!(dec.paths.len(), 1);
        assert_eq!(keys(&dec.paths[0]), vec![(Side::One, 2), (Side::Two, 2)]);
        let v = validate_decomposition(&dec, &build_w(&p(7, 3, 2)).unwrap());
        assert!(v.pass, "{:?}", v.findings);
        assert_eq!(v.oracle_value, Some(12));
    }

    #[test]
    fn reversed_weights_fail_monotonicity() {
        let params = p(9, 4, 2);
        let w = build_w(&params).unwrap();
        let mut dec = build_chain_decomposition(&params).unwrap();
        for (v, wt) in dec.paths[0].vertices.iter_mut().zip([60, 20, 20, 60]) {
            v.weight = wt;
        }
        let v = validate_decomposition(&dec, &w);
        assert!(!v.pass);
        assert!(v.findings.iter().any(|f| f.contains("not monotone")), "{:?}", v.findings);
    }

    #[test]
    fn as_stated_rule_leaves_odd_slack_gap() {
        // k - l = 5 is odd: C_2 is below ceil((k-l)/2) but gets no third-type edge
        let q = p(9, 5, 2);
        let w = build_w(&q).unwrap();
        let literal = classify_edges_with(&w, ThirdTypeRule::AsStated).unwrap();
        assert!(literal.of_type(3).is_empty());
        let dec = build_chain_decomposition_with(&q, ThirdTypeRule::AsStated).unwrap();
        assert!(!validate_decomposition(&dec, &w).pass);

        let completed = classify_edges(&w).unwrap();
        assert_eq!(completed.of_type(3), vec![(2, 3), (3, 2)]);
        let dec = build_chain_decomposition(&q).unwrap();
        let v = validate_decomposition(&dec, &w);
        assert!(v.pass, "{:?}", v.findings);
        assert_eq!(dec.paths.len(), 1);
        assert_eq!(dec.paths[0].weights(), vec![20, 40, 60, 60, 40, 20]);
        assert_eq!(dec.paths[0].edge_types, vec![1, 3, 1, 3, 1]);
    }

    #[test]
    fn rules_agree_for_even_slack() {
        for (k, s, l) in [(6, 2, 0), (10, 3, 4), (12, 5, 2), (9, 2, 1)] {
            let q = Params::from_slack(k, s, l).unwrap();
            let w = build_w(&q).unwrap();
            assert_eq!(
                classify_edges_with(&w, ThirdTypeRule::AsStated).unwrap(),
                classify_edges(&w).unwrap()
            );
        }
    }

    #[test]
    fn edge_rule_agrees_with_enumeration() {
        for q in [p(7, 3, 2), p(9, 4, 2), p(12, 6, 2), p(10, 5, 3), p(8, 3, 1)] {
            let v = check_edge_rule(&q, 10_000).unwrap();
            assert!(v.pass, "{q}: {:?}", v.findings);
        }
    }

    #[test]
    fn path_mwis_values() {
        assert_eq!(path_mwis(&[20, 60, 60, 20]).unwrap(), 80);
        assert_eq!(path_mwis(&[7]).unwrap(), 7);
        assert_eq!(path_mwis(&[3, 9]).unwrap(), 9);
        assert_eq!(path_mwis(&[5, 1, 1, 5]).unwrap(), 10);
        assert_eq!(path_mwis(&[]).unwrap(), 0);
    }

    #[test]
    fn biregularity_examples() {
        let v = check_biregularity(&p(7, 3, 2), 2, 2, 10_000).unwrap();
        assert!(v.pass, "{:?}", v.findings);
        let v = check_biregularity(&p(9, 4, 2), 2, 3, 10_000).unwrap();
        assert!(v.pass, "{:?}", v.findings);
        assert!(matches!(check_biregularity(&p(9, 4, 2), 3, 3, 10_000), Err(Error::InvalidParams(_))));
    }
}
