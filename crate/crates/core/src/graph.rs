//! Multigraphs with half-edges, rotation systems and orientations.
//!
//! Loops and parallel edges are allowed. Every edge `e = (u, v)` owns two
//! half-edges `(e, 0)` at `u` and `(e, 1)` at `v`; for a loop both sit at the
//! same vertex and stay distinguishable.

use crate::error::{Error, Result};
use crate::group::GroupSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: usize, end: u8) -> Self {
        debug_assert!(end < 2);
        HalfEdge { edge, end }
    }

    pub fn twin(self) -> Self {
        HalfEdge { edge: self.edge, end: 1 - self.end }
    }
}

/// Per-edge head selection. The half-edge at the head end has sign `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    heads: Vec<u8>,
}

impl Orientation {
    /// End 1 is the head of every edge.
    pub fn canonical(edge_count: usize) -> Self {
        Orientation { heads: vec![1; edge_count] }
    }

    pub fn from_heads(heads: Vec<u8>) -> Result<Self> {
        if let Some(i) = heads.iter().position(|&h| h > 1) {
            return Err(Error::OutOfRange { what: "head end", index: i, size: 2 });
        }
        Ok(Orientation { heads })
    }

    pub fn heads(&self) -> &[u8] {
        &self.heads
    }

    pub fn head(&self, edge: usize) -> u8 {
        self.heads[edge]
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    /// `σ` of a half-edge: `+1` at the head end, `-1` at the tail end.
    pub fn sign(&self, h: HalfEdge) -> i64 {
        if self.heads[h.edge] == h.end {
            1
        } else {
            -1
        }
    }

    pub fn reversed(&self, edge: usize) -> Self {
        let mut heads = self.heads.clone();
        heads[edge] = 1 - heads[edge];
        Orientation { heads }
    }
}

/// A linear order of the half-edges around every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    orders: Vec<Vec<HalfEdge>>,
}

impl RotationSystem {
    pub fn orders(&self) -> &[Vec<HalfEdge>] {
        &self.orders
    }

    pub fn at(&self, v: usize) -> &[HalfEdge] {
        &self.orders[v]
    }

    /// Swaps positions `i` and `i + 1` in the order at `v`.
    pub fn swap_adjacent(&self, v: usize, i: usize) -> Self {
        let mut orders = self.orders.clone();
        orders[v].swap(i, i + 1);
        RotationSystem { orders }
    }
}

/// Subset of the edge set as a bitmask (at most 64 edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    bits: u64,
    len: usize,
}

impl EdgeSubset {
    pub fn empty(len: usize) -> Self {
        assert!(len <= 64, "edge subsets hold at most 64 edges");
        EdgeSubset { bits: 0, len }
    }

    pub fn full(len: usize) -> Self {
        assert!(len <= 64, "edge subsets hold at most 64 edges");
        let bits = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        EdgeSubset { bits, len }
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        let mut s = Self::full(len);
        s.bits &= bits;
        s
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn contains(self, e: usize) -> bool {
        self.bits >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        EdgeSubset { bits: self.bits | 1 << e, len: self.len }
    }

    pub fn count(self) -> usize {
        self.bits.count_ones() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    orientation: Orientation,
    rotation: Option<RotationSystem>,
    incidence: Vec<Vec<HalfEdge>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::OutOfRange { what: "edge endpoint", index: i, size: vertex_count });
            }
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            incidence[u].push(HalfEdge::new(e, 0));
            incidence[v].push(HalfEdge::new(e, 1));
        }
        for block in &mut incidence {
            block.sort();
        }
        let orientation = Orientation::canonical(edges.len());
        Ok(Multigraph { vertex_count, edges, orientation, rotation: None, incidence })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Result<Self> {
        if orientation.len() != self.edges.len() {
            return Err(Error::LengthMismatch { expected: self.edges.len(), found: orientation.len() });
        }
        self.orientation = orientation;
        Ok(self)
    }

    /// Attaches a rotation system; every vertex order must list `H(v)` exactly once.
    pub fn with_rotation(mut self, orders: Vec<Vec<HalfEdge>>) -> Result<Self> {
        if orders.len() != self.vertex_count {
            return Err(Error::LengthMismatch { expected: self.vertex_count, found: orders.len() });
        }
        for (v, order) in orders.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort();
            if sorted != self.incidence[v] {
                return Err(Error::InvalidRotation {
                    vertex: v,
                    reason: format!("expected a permutation of {:?}", self.incidence[v]),
                });
            }
        }
        self.rotation = Some(RotationSystem { orders });
        Ok(self)
    }

    pub fn without_rotation(mut self) -> Self {
        self.rotation = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn rotation(&self) -> Option<&RotationSystem> {
        self.rotation.as_ref()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        if h.end == 0 {
            self.edges[h.edge].0
        } else {
            self.edges[h.edge].1
        }
    }

    /// `H(v)` in `(edge, end)` lexicographic order.
    pub fn half_edges_at(&self, v: usize) -> &[HalfEdge] {
        &self.incidence[v]
    }

    /// `H(v)` in the declared order: the rotation if present, else lexicographic.
    pub fn ordered_half_edges_at(&self, v: usize) -> &[HalfEdge] {
        match &self.rotation {
            Some(r) => r.at(v),
            None => &self.incidence[v],
        }
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.edges.len()).flat_map(|e| [HalfEdge::new(e, 0), HalfEdge::new(e, 1)])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|v| self.degree(v)).collect()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) == k)
    }

    pub fn ensure_regular(&self, k: usize) -> Result<()> {
        if self.is_regular(k) {
            Ok(())
        } else {
            Err(Error::NotRegular(k))
        }
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.edges.len())
    }

    /// Number of connected components of `(V, A)`, isolated vertices included.
    pub fn components(&self, subset: EdgeSubset) -> usize {
        let mut dsu = DisjointSets::new(self.vertex_count);
        let mut count = self.vertex_count;
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if subset.contains(e) && dsu.union(u, v) {
                count -= 1;
            }
        }
        count
    }

    pub fn rank(&self, subset: EdgeSubset) -> usize {
        self.vertex_count - self.components(subset)
    }

    pub fn component_count(&self) -> usize {
        self.components(self.all_edges())
    }

    pub fn total_rank(&self) -> usize {
        self.rank(self.all_edges())
    }

    pub fn nullity(&self) -> usize {
        self.edge_count() - self.total_rank()
    }

    /// `(∂y)_v = Σ_e σ_{v,e} y_e`. Loops contribute nothing.
    pub fn boundary(&self, sigma: &Orientation, group: &GroupSpec, y: &[usize]) -> Result<Vec<usize>> {
        self.check_colouring(y, self.edges.len(), group)?;
        self.check_orientation(sigma)?;
        let mut out = vec![0; self.vertex_count];
        for h in self.half_edges() {
            let v = self.vertex_of(h);
            let c = y[h.edge];
            let signed = if sigma.sign(h) > 0 { c } else { group.neg(c) };
            out[v] = group.add(out[v], signed);
        }
        Ok(out)
    }

    /// `(δx)_e = x_head - x_tail`. Loops map to zero.
    pub fn coboundary(&self, sigma: &Orientation, group: &GroupSpec, x: &[usize]) -> Result<Vec<usize>> {
        self.check_colouring(x, self.vertex_count, group)?;
        self.check_orientation(sigma)?;
        Ok(self.coboundary_unchecked(sigma, group, x))
    }

    pub(crate) fn coboundary_unchecked(&self, sigma: &Orientation, group: &GroupSpec, x: &[usize]) -> Vec<usize> {
        (0..self.edges.len())
            .map(|e| {
                let head = self.vertex_of(HalfEdge::new(e, sigma.head(e)));
                let tail = self.vertex_of(HalfEdge::new(e, 1 - sigma.head(e)));
                group.sub(x[head], x[tail])
            })
            .collect()
    }

    fn check_colouring(&self, c: &[usize], len: usize, group: &GroupSpec) -> Result<()> {
        if c.len() != len {
            return Err(Error::LengthMismatch { expected: len, found: c.len() });
        }
        let q = group.order();
        if let Some(i) = c.iter().position(|&a| a >= q) {
            return Err(Error::OutOfRange { what: "colour", index: i, size: q });
        }
        Ok(())
    }

    pub(crate) fn check_orientation(&self, sigma: &Orientation) -> Result<()> {
        if sigma.len() != self.edges.len() {
            return Err(Error::LengthMismatch { expected: self.edges.len(), found: sigma.len() });
        }
        Ok(())
    }

    /// Subdivides every edge. Original vertices keep their indices; the
    /// subdivision vertex of edge `e` is `|V| + e`; half-edge `(e, end)` becomes
    /// edge `2e + end`, oriented from the original vertex toward `|V| + e`.
    pub fn two_stretch(&self) -> TwoStretch {
        let n = self.vertex_count;
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        let mut half_edge_of = Vec::with_capacity(2 * self.edges.len());
        for e in 0..self.edges.len() {
            for end in 0..2u8 {
                let h = HalfEdge::new(e, end);
                edges.push((self.vertex_of(h), n + e));
                half_edge_of.push(h);
            }
        }
        let graph = Multigraph::new(n + self.edges.len(), edges).expect("endpoints in range");
        TwoStretch { graph, half_edge_of }
    }

    /// Line graph: one vertex per edge, one edge per unordered pair of distinct
    /// half-edges sharing a vertex. Each edge is oriented from the earlier to
    /// the later half-edge in the declared order at that vertex.
    pub fn line_graph(&self) -> Multigraph {
        let mut edges = Vec::new();
        for v in 0..self.vertex_count {
            let order = self.ordered_half_edges_at(v);
            for i in 0..order.len() {
                for j in i + 1..order.len() {
                    edges.push((order[i].edge, order[j].edge));
                }
            }
        }
        Multigraph::new(self.edges.len(), edges).expect("endpoints in range")
    }

    /// Disjoint union; vertices and edges of `other` are shifted after ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let n = self.vertex_count;
        let m = self.edges.len();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + n, v + n)));
        let mut heads = self.orientation.heads.clone();
        heads.extend_from_slice(&other.orientation.heads);
        let mut g = Multigraph::new(n + other.vertex_count, edges)
            .expect("endpoints in range")
            .with_orientation(Orientation { heads })
            .expect("orientation length");
        if let (Some(a), Some(b)) = (&self.rotation, &other.rotation) {
            let mut orders = a.orders.clone();
            orders.extend(
                b.orders.iter().map(|o| o.iter().map(|h| HalfEdge::new(h.edge + m, h.end)).collect()),
            );
            g = g.with_rotation(orders).expect("shifted rotation is valid");
        }
        g
    }
}

/// The 2-stretch of a graph together with its half-edge correspondence.
#[derive(Debug, Clone)]
pub struct TwoStretch {
    pub graph: Multigraph,
    /// `half_edge_of[e']` is the half-edge of the original graph behind edge `e'`.
    pub half_edge_of: Vec<HalfEdge>,
}

impl TwoStretch {
    /// Lifts a flow: the tail half-edge of `e` carries `y_e`, the head half-edge `-y_e`.
    pub fn lift_flow(&self, sigma: &Orientation, group: &GroupSpec, y: &[usize]) -> Vec<usize> {
        self.half_edge_of
            .iter()
            .map(|&h| if sigma.sign(h) < 0 { y[h.edge] } else { group.neg(y[h.edge]) })
            .collect()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
