//! Maximum-weight independent sets and minimum-weight vertex covers of
//! vertex-weighted bipartite graphs, computed through a min cut.
//!
//! The cover network has arcs `source -> u` with capacity `w(u)` for every
//! side-1 vertex, `v -> sink` with capacity `w(v)` for every side-2 vertex and
//! an uncuttable arc `u -> v` for every edge. A finite cut must cut one
//! endpoint arc of every edge, so min-cut arcs are exactly an integral cover.

use std::collections::{HashSet, VecDeque};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u128,
    flow: u128,
}

/// A directed network with exact integer capacities, solved by Dinic's
/// blocking-flow algorithm.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u128,
    /// `(from, to, capacity)` of every arc leaving the source side.
    pub cut: Vec<(usize, usize, u128)>,
    /// Nodes reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork { adj: vec![Vec::new(); nodes], arcs: Vec::new(), source, sink }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds `from -> to` with the given capacity and returns its arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u128) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    fn residual(&self, id: usize) -> u128 {
        // paired arc ids differ in the lowest bit; reverse residual is the forward flow
        let a = &self.arcs[id];
        if id.is_multiple_of(2) {
            a.cap - a.flow
        } else {
            self.arcs[id ^ 1].flow
        }
    }

    fn push(&mut self, id: usize, amount: u128) {
        if id.is_multiple_of(2) {
            self.arcs[id].flow += amount;
        } else {
            self.arcs[id ^ 1].flow -= amount;
        }
    }

    fn levels(&self) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.adj.len()];
        level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let v = self.arcs[id].to;
                if level[v] == u32::MAX && self.residual(id) > 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, limit: u128, level: &[u32], next: &mut [usize]) -> u128 {
        if u == self.sink {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let v = self.arcs[id].to;
            let room = self.residual(id);
            if room > 0 && level[v] == level[u] + 1 {
                let got = self.augment(v, limit.min(room), level, next);
                if got > 0 {
                    self.push(id, got);
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }

    /// Computes a maximum flow and the minimum cut given by residual
    /// reachability from the source.
    pub fn max_flow(&mut self) -> Result<FlowResult> {
        let mut value: u128 = 0;
        loop {
            let level = self.levels();
            if level[self.sink] == u32::MAX {
                break;
            }
            let mut next = vec![0usize; self.adj.len()];
            loop {
                let got = self.augment(self.source, u128::MAX, &level, &mut next);
                if got == 0 {
                    break;
                }
                value = value
                    .checked_add(got)
                    .ok_or_else(|| Error::Overflow("flow value".into()))?;
            }
        }
        let level = self.levels();
        let source_side: Vec<bool> = level.iter().map(|&l| l != u32::MAX).collect();
        let mut cut = Vec::new();
        let mut cut_total: u128 = 0;
        for (u, ids) in self.adj.iter().enumerate() {
            for &id in ids {
                let a = &self.arcs[id];
                if id % 2 == 0 && source_side[u] && !source_side[a.to] {
                    cut.push((u, a.to, a.cap));
                    cut_total = cut_total
                        .checked_add(a.cap)
                        .ok_or_else(|| Error::Overflow("cut capacity".into()))?;
                }
            }
        }
        self.check_conservation(value)?;
        if cut_total != value {
            return Err(Error::InvalidGraph(format!("cut capacity {cut_total} differs from flow {value}")));
        }
        Ok(FlowResult { value, cut, source_side })
    }

    fn check_conservation(&self, value: u128) -> Result<()> {
        let nodes = self.adj.len();
        let mut inflow = vec![0u128; nodes];
        let mut outflow = vec![0u128; nodes];
        for (u, ids) in self.adj.iter().enumerate() {
            for &id in ids.iter().filter(|&&id| id % 2 == 0) {
                let a = &self.arcs[id];
                if a.flow > a.cap {
                    return Err(Error::InvalidGraph(format!("arc {u}->{} over capacity", a.to)));
                }
                outflow[u] += a.flow;
                inflow[a.to] += a.flow;
            }
        }
        for v in 0..nodes {
            if v == self.source || v == self.sink {
                continue;
            }
            if inflow[v] != outflow[v] {
                return Err(Error::InvalidGraph(format!("flow not conserved at node {v}")));
            }
        }
        if outflow[self.source] - inflow[self.source] != value
            || inflow[self.sink] - outflow[self.sink] != value
        {
            return Err(Error::InvalidGraph("source/sink balance mismatch".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn one(index: usize) -> Self {
        Vertex { side: Side::One, index }
    }

    pub fn two(index: usize) -> Self {
        Vertex { side: Side::Two, index }
    }
}

/// Bipartite graph with positive integer vertex weights. Edges are
/// `(side-1 index, side-2 index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    side1: Vec<u128>,
    side2: Vec<u128>,
    edges: Vec<(usize, usize)>,
}

impl WeightedBipartiteGraph {
    pub fn new(side1: Vec<u128>, side2: Vec<u128>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if side1.iter().chain(&side2).any(|&w| w == 0) {
            return Err(Error::InvalidGraph("vertex weights must be positive".into()));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= side1.len() || v >= side2.len() {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(WeightedBipartiteGraph { side1, side2, edges })
    }

    /// Unit weights on both sides.
    pub fn unweighted(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        WeightedBipartiteGraph::new(vec![1; left], vec![1; right], edges)
    }

    pub fn side1(&self) -> &[u128] {
        &self.side1
    }

    pub fn side2(&self) -> &[u128] {
        &self.side2
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.side1.len() + self.side2.len()
    }

    pub fn weight(&self, v: Vertex) -> u128 {
        match v.side {
            Side::One => self.side1[v.index],
            Side::Two => self.side2[v.index],
        }
    }

    pub fn total_weight(&self) -> Result<u128> {
        self.side1.iter().chain(&self.side2).try_fold(0u128, |acc, w| {
            acc.checked_add(*w).ok_or_else(|| Error::Overflow("total vertex weight".into()))
        })
    }

    pub fn weight_of(&self, set: &[Vertex]) -> Result<u128> {
        set.iter().try_fold(0u128, |acc, v| {
            acc.checked_add(self.weight(*v)).ok_or_else(|| Error::Overflow("set weight".into()))
        })
    }

    pub fn is_cover(&self, set: &[Vertex]) -> bool {
        let members: HashSet<Vertex> = set.iter().copied().collect();
        self.edges
            .iter()
            .all(|&(u, v)| members.contains(&Vertex::one(u)) || members.contains(&Vertex::two(v)))
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        let members: HashSet<Vertex> = set.iter().copied().collect();
        self.edges
            .iter()
            .all(|&(u, v)| !(members.contains(&Vertex::one(u)) && members.contains(&Vertex::two(v))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedSet {
    pub vertices: Vec<Vertex>,
    pub weight: u128,
}

/// Solves the cover network and splits vertices by the source side of the
/// final residual graph: a side-1 vertex is in the cover when it is not
/// reachable, a side-2 vertex when it is.
fn solve_cut(g: &WeightedBipartiteGraph) -> Result<(FlowResult, Vec<Vertex>, Vec<Vertex>)> {
    let (p, q) = (g.side1.len(), g.side2.len());
    let source = p + q;
    let sink = source + 1;
    let unbounded = g
        .total_weight()?
        .checked_add(1)
        .ok_or_else(|| Error::Overflow("unbounded capacity".into()))?;
    let mut net = FlowNetwork::new(p + q + 2, source, sink);
    for (u, &w) in g.side1.iter().enumerate() {
        net.add_arc(source, u, w);
    }
    for (v, &w) in g.side2.iter().enumerate() {
        net.add_arc(p + v, sink, w);
    }
    for &(u, v) in &g.edges {
        net.add_arc(u, p + v, unbounded);
    }
    let flow = net.max_flow()?;
    let mut cover = Vec::new();
    let mut independent = Vec::new();
    for u in 0..p {
        if flow.source_side[u] {
            independent.push(Vertex::one(u));
        } else {
            cover.push(Vertex::one(u));
        }
    }
    for v in 0..q {
        if flow.source_side[p + v] {
            cover.push(Vertex::two(v));
        } else {
            independent.push(Vertex::two(v));
        }
    }
    Ok((flow, cover, independent))
}

pub fn min_weight_vertex_cover(g: &WeightedBipartiteGraph) -> Result<WeightedSet> {
    let (flow, cover, _) = solve_cut(g)?;
    let weight = g.weight_of(&cover)?;
    debug_assert_eq!(weight, flow.value);
    debug_assert!(g.is_cover(&cover));
    Ok(WeightedSet { vertices: cover, weight })
}

/// Complement of the minimum cover returned by [`min_weight_vertex_cover`].
pub fn max_weight_independent_set(g: &WeightedBipartiteGraph) -> Result<WeightedSet> {
    let (flow, _, independent) = solve_cut(g)?;
    let weight = g.weight_of(&independent)?;
    debug_assert_eq!(weight, g.total_weight()? - flow.value);
    debug_assert!(g.is_independent(&independent));
    Ok(WeightedSet { vertices: independent, weight })
}

/// Checks `Σ β(v) w(v) <= w(cover)` for a fractional independent set `β`
/// (indexed side 1 first, then side 2) and an integral vertex cover.
pub fn check_fractional_weak_duality(
    g: &WeightedBipartiteGraph,
    beta: &[Ratio<u128>],
    cover: &[Vertex],
) -> Result<bool> {
    let p = g.side1.len();
    if beta.len() != g.vertex_count() {
        return Err(Error::NotAFractionalIndependentSet(format!(
            "{} labels for {} vertices",
            beta.len(),
            g.vertex_count()
        )));
    }
    let one = Ratio::<u128>::one();
    if let Some(pos) = beta.iter().position(|b| *b > one) {
        return Err(Error::NotAFractionalIndependentSet(format!("label {pos} exceeds 1")));
    }
    for &(u, v) in &g.edges {
        let sum = beta[u]
            .checked_add(&beta[p + v])
            .ok_or_else(|| Error::Overflow("label sum".into()))?;
        if sum > one {
            return Err(Error::NotAFractionalIndependentSet(format!("edge ({u}, {v}) has label sum {sum}")));
        }
    }
    if !g.is_cover(cover) {
        return Err(Error::NotACover(format!("{cover:?}")));
    }
    let mut value = Ratio::<u128>::zero();
    let weights = g.side1.iter().chain(&g.side2);
    for (b, &w) in beta.iter().zip(weights) {
        let term = b
            .checked_mul(&Ratio::from_integer(w))
            .ok_or_else(|| Error::Overflow("weighted label".into()))?;
        value = value.checked_add(&term).ok_or_else(|| Error::Overflow("fractional weight".into()))?;
    }
    Ok(value <= Ratio::from_integer(g.weight_of(cover)?))
}
