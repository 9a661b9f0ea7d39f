//! Vertex and edge colouring model partition functions, and the half-edge
//! pairing `(f^{⊗V}, g^{⊗E})` on `Q^H`.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::enumerate::{sum_product, sum_uniform, Budget};
use crate::error::{Error, Result};
use crate::fourier::{self, QFunction, SquareMatrix};
use crate::graph::Multigraph;
use crate::group::GroupSpec;
use crate::numeric::{as_integer, DualRoute};

/// Result of an exhaustive partition-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelValue {
    pub value: Complex64,
    pub imag_residual: f64,
    pub terms: u64,
    pub cap: u64,
}

impl ModelValue {
    pub fn new(value: Complex64, terms: u64, budget: Budget) -> Self {
        ModelValue { value, imag_residual: value.im.abs(), terms, cap: budget.terms() }
    }

    pub fn scaled(self, k: Complex64) -> Self {
        let value = self.value * k;
        ModelValue { value, imag_residual: value.im.abs(), ..self }
    }

    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }

    /// Distance of the value from the nearest integer (real part), or the
    /// imaginary residual if larger.
    pub fn integer_residual(&self) -> f64 {
        (self.value.re - self.value.re.round()).abs().max(self.imag_residual)
    }

    pub fn rounded(&self, tol: f64) -> Option<i128> {
        as_integer(self.value, tol)
    }
}

/// A vertex weight for every arity that occurs (conceptually `f ∈ C^{Q*}`).
#[derive(Debug, Clone, PartialEq)]
pub struct VertexWeights {
    group: GroupSpec,
    by_arity: BTreeMap<usize, QFunction>,
}

impl VertexWeights {
    pub fn new(group: &GroupSpec) -> Self {
        VertexWeights { group: group.clone(), by_arity: BTreeMap::new() }
    }

    pub fn insert(&mut self, f: QFunction) -> Result<()> {
        self.group.ensure_same(f.group())?;
        self.by_arity.insert(f.arity(), f);
        Ok(())
    }

    pub fn with(mut self, f: QFunction) -> Result<Self> {
        self.insert(f)?;
        Ok(self)
    }

    /// Tabulates `weight` for every degree occurring in `graph`.
    pub fn for_graph<F>(group: &GroupSpec, graph: &Multigraph, mut weight: F) -> Self
    where
        F: FnMut(&[usize]) -> Complex64,
    {
        let mut degrees = graph.degrees();
        degrees.sort();
        degrees.dedup();
        let by_arity = degrees.into_iter().map(|d| (d, QFunction::from_fn(group, d, &mut weight))).collect();
        VertexWeights { group: group.clone(), by_arity }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn get(&self, arity: usize) -> Result<&QFunction> {
        self.by_arity.get(&arity).ok_or(Error::MissingArity(arity))
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_arity.keys().copied()
    }

    pub fn map<F: Fn(&QFunction) -> QFunction>(&self, op: F) -> Self {
        let by_arity = self.by_arity.iter().map(|(&d, f)| (d, op(f))).collect();
        VertexWeights { group: self.group.clone(), by_arity }
    }

    pub fn fourier(&self) -> Self {
        self.map(fourier::fourier)
    }

    pub fn transform_by(&self, u: &SquareMatrix) -> Result<Self> {
        let q = self.group.order();
        if u.len() != q || u.iter().any(|r| r.len() != q) {
            return Err(Error::LengthMismatch { expected: q, found: u.len() });
        }
        Ok(self.map(|f| fourier::transform_by(f, u).expect("checked dimensions")))
    }

    fn covering(&self, graph: &Multigraph) -> Result<Vec<&QFunction>> {
        (0..graph.vertex_count()).map(|v| self.get(graph.degree(v))).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexModel {
    pub group: GroupSpec,
    pub f: QFunction,
    pub g: QFunction,
}

impl VertexModel {
    pub fn new(f: QFunction, g: QFunction) -> Result<Self> {
        f.group().ensure_same(g.group())?;
        if f.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: f.arity() });
        }
        if g.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: g.arity() });
        }
        Ok(VertexModel { group: f.group().clone(), f, g })
    }

    /// Uniform model `f = 1`.
    pub fn uniform(g: QFunction) -> Result<Self> {
        let f = QFunction::constant(g.group(), 1, Complex64::new(1.0, 0.0));
        Self::new(f, g)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeModel {
    pub group: GroupSpec,
    pub f: VertexWeights,
    pub g: QFunction,
}

impl EdgeModel {
    pub fn new(f: VertexWeights, g: QFunction) -> Result<Self> {
        f.group().ensure_same(g.group())?;
        if g.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: g.arity() });
        }
        Ok(EdgeModel { group: g.group().clone(), f, g })
    }

    /// Uniform model `g = 1`.
    pub fn uniform(f: VertexWeights) -> Self {
        let g = QFunction::constant(f.group(), 1, Complex64::new(1.0, 0.0));
        EdgeModel { group: f.group().clone(), f, g }
    }
}

/// `Σ_{x ∈ Q^V} Π_v f(x_v) Π_e g(x_tail, x_head)`; a loop sees `(x_v, x_v)`.
pub fn vertex_partition(graph: &Multigraph, model: &VertexModel, budget: Budget) -> Result<ModelValue> {
    let q = model.group.order();
    let terms = budget.admit(q, graph.vertex_count())?;
    let sigma = graph.orientation();
    let ends: Vec<(usize, usize)> = (0..graph.edge_count())
        .map(|e| {
            let head = graph.vertex_of(crate::graph::HalfEdge::new(e, sigma.head(e)));
            let tail = graph.vertex_of(crate::graph::HalfEdge::new(e, 1 - sigma.head(e)));
            (tail, head)
        })
        .collect();
    let f = model.f.values();
    let g = model.g.values();
    let value = sum_uniform(q, graph.vertex_count(), |x| {
        let mut w = Complex64::new(1.0, 0.0);
        for &xv in x {
            w *= f[xv];
        }
        for &(t, h) in &ends {
            w *= g[x[t] * q + x[h]];
            if w == Complex64::default() {
                break;
            }
        }
        w
    });
    Ok(ModelValue::new(value, terms, budget))
}

/// Edge indices around each vertex in declared half-edge order.
pub(crate) fn vertex_edge_lists(graph: &Multigraph) -> Vec<Vec<usize>> {
    (0..graph.vertex_count()).map(|v| graph.ordered_half_edges_at(v).iter().map(|h| h.edge).collect()).collect()
}

/// `Σ_{y ∈ Q^E} Π_v f(y_e : e ∋ v) Π_e g(y_e)`, half-edges read in declared order.
pub fn edge_partition(graph: &Multigraph, model: &EdgeModel, budget: Budget) -> Result<ModelValue> {
    let q = model.group.order();
    let tables = model.f.covering(graph)?;
    let terms = budget.admit(q, graph.edge_count())?;
    let lists = vertex_edge_lists(graph);
    let g = model.g.values();
    let value = sum_uniform(q, graph.edge_count(), |y| {
        let mut w = Complex64::new(1.0, 0.0);
        for &ye in y {
            w *= g[ye];
        }
        for (list, table) in lists.iter().zip(&tables) {
            let idx = list.iter().fold(0, |acc, &e| acc * q + y[e]);
            w *= table.values()[idx];
            if w == Complex64::default() {
                break;
            }
        }
        w
    });
    Ok(ModelValue::new(value, terms, budget))
}

/// `(f^{⊗V}, g^{⊗E}) = Σ_{z ∈ Q^H} Π_v f(z_h : h ∈ H(v)) Π_e g(z_{(e,0)}, z_{(e,1)})`.
///
/// The sum runs edge block by edge block over the support of `g`, so the
/// number of terms is `|supp g|^{|E|}`.
pub fn halfedge_inner(graph: &Multigraph, f: &VertexWeights, g: &QFunction, budget: Budget) -> Result<ModelValue> {
    f.group().ensure_same(g.group())?;
    if g.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: g.arity() });
    }
    let q = g.group().order();
    let tables = f.covering(graph)?;
    let support: Vec<(usize, usize, Complex64)> =
        g.support().into_iter().map(|i| (i / q, i % q, g.values()[i])).collect();
    let terms = budget.admit(support.len(), graph.edge_count())?;
    let lists: Vec<Vec<(usize, u8)>> = (0..graph.vertex_count())
        .map(|v| graph.ordered_half_edges_at(v).iter().map(|h| (h.edge, h.end)).collect())
        .collect();
    let value = sum_uniform(support.len(), graph.edge_count(), |pick| {
        let mut w = Complex64::new(1.0, 0.0);
        for &p in pick {
            w *= support[p].2;
        }
        for (list, table) in lists.iter().zip(&tables) {
            let idx = list.iter().fold(0, |acc, &(e, end)| {
                let (a, b, _) = support[pick[e]];
                acc * q + if end == 0 { a } else { b }
            });
            w *= table.values()[idx];
            if w == Complex64::default() {
                break;
            }
        }
        w
    });
    Ok(ModelValue::new(value, terms, budget))
}

/// Both sides of the orthogonal invariance of uniform edge models, plus the
/// fixed-point residual `max |(U⊗U) 1_Mono - 1_Mono|`.
#[derive(Debug, Clone, Copy)]
pub struct InvarianceCheck {
    pub route: DualRoute,
    pub fixed_point_residual: f64,
}

impl InvarianceCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.route.agrees(tol) && self.fixed_point_residual <= tol
    }
}

pub fn orthogonal_invariance_check(
    graph: &Multigraph,
    f: &VertexWeights,
    u: &SquareMatrix,
    budget: Budget,
) -> Result<InvarianceCheck> {
    let group = f.group();
    let mono = QFunction::monochrome(group, 2);
    let fixed = fourier::transform_by(&mono, u)?;
    let fixed_point_residual = fixed.max_abs_diff(&mono)?;
    let lhs = halfedge_inner(graph, f, &mono, budget)?;
    let rhs = halfedge_inner(graph, &f.transform_by(u)?, &mono, budget)?;
    Ok(InvarianceCheck { route: DualRoute::new(lhs.value, rhs.value), fixed_point_residual })
}

/// Sum of `term` over `radices`, reported as a [`ModelValue`].
pub(crate) fn model_sum<F>(radices: &[usize], budget: Budget, term: F) -> Result<ModelValue>
where
    F: Fn(&[usize]) -> Complex64 + Sync,
{
    let terms = budget.admit_product(radices)?;
    Ok(ModelValue::new(sum_product(radices, term), terms, budget))
}
