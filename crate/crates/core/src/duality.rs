//! Identities converting vertex colouring models into edge colouring models:
//! the flow/tension duality, weight enumerators of flows as uniform edge
//! models, spectral conversion of symmetric real vertex models, and the
//! generalized monochrome polynomial `X_Q`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::enumerate::{sum_uniform, Budget};
use crate::error::{Error, Result};
use crate::fourier::{self, QFunction, SquareMatrix};
use crate::graph::{Multigraph, Orientation};
use crate::group::GroupSpec;
use crate::models::{model_sum, vertex_partition, ModelValue, VertexModel};
use crate::numeric::{real, DualRoute};
use crate::oracles::{self, boundary_into, edge_ends, WeightTable};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

/// Per-vertex list of incident edges, one entry per half-edge.
fn half_edge_lists(graph: &Multigraph) -> Vec<Vec<usize>> {
    (0..graph.vertex_count()).map(|v| graph.half_edges_at(v).iter().map(|h| h.edge).collect()).collect()
}

/// Both sides of
/// `q^{-|V|/2} Σ_x Π f_v(x_v) Π conj(g_e)((δx)_e) = q^{-|E|/2} Σ_y Π f_v^F((∂y)_v) Π conj(g_e^F)(y_e)`.
pub fn general_duality_check(
    graph: &Multigraph,
    sigma: &Orientation,
    f: &[QFunction],
    g: &[QFunction],
    budget: Budget,
) -> Result<DualRoute> {
    graph.check_orientation(sigma)?;
    check_len(graph.vertex_count(), f.len())?;
    check_len(graph.edge_count(), g.len())?;
    let group = match (f.first(), g.first()) {
        (Some(a), _) => a.group().clone(),
        (None, Some(b)) => b.group().clone(),
        (None, None) => return Ok(DualRoute::new(ONE, ONE)),
    };
    for w in f.iter().chain(g) {
        group.ensure_same(w.group())?;
        if w.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: w.arity() });
        }
    }
    let q = group.order();
    budget.admit(q, graph.vertex_count())?;
    budget.admit(q, graph.edge_count())?;
    let qf = q as f64;
    let ends = edge_ends(graph, sigma);

    let g_conj: Vec<Vec<Complex64>> = g.iter().map(|w| w.values().iter().map(|z| z.conj()).collect()).collect();
    let lhs = sum_uniform(q, graph.vertex_count(), |x| {
        let mut w: Complex64 = x.iter().zip(f).map(|(&a, fv)| fv.values()[a]).product();
        for (&(t, h), ge) in ends.iter().zip(&g_conj) {
            w *= ge[group.sub(x[h], x[t])];
        }
        w
    }) * qf.powf(-(graph.vertex_count() as f64) / 2.0);

    let f_hat: Vec<QFunction> = f.iter().map(fourier::fourier).collect();
    let g_hat: Vec<Vec<Complex64>> =
        g.iter().map(|w| fourier::fourier(w).values().iter().map(|z| z.conj()).collect()).collect();
    let n = graph.vertex_count();
    let rhs = sum_uniform(q, graph.edge_count(), |y| {
        let mut d = vec![0; n];
        boundary_into(&ends, &group, y, &mut d);
        let mut w: Complex64 = y.iter().zip(&g_hat).map(|(&b, ge)| ge[b]).product();
        for (&a, fv) in d.iter().zip(&f_hat) {
            w *= fv.values()[a];
        }
        w
    }) * qf.powf(-(graph.edge_count() as f64) / 2.0);
    Ok(DualRoute::new(lhs, rhs))
}

/// `W(a, c) = Σ_b w(a - b) w(c - b)`.
fn pair_table(group: &GroupSpec, w: &[Complex64]) -> QFunction {
    let q = group.order();
    QFunction::from_fn(group, 2, |t| (0..q).map(|b| w[group.sub(t[0], b)] * w[group.sub(t[1], b)]).sum())
}

/// `cwe(ker ∂; g · g^N)`, from the flow list.
pub fn flow_cwe_target(graph: &Multigraph, g: &WeightTable, budget: Budget) -> Result<Complex64> {
    let group = g.group();
    let h = WeightTable::new(group, (0..group.order()).map(|a| g.get(a) * g.get(group.neg(a))).collect())?;
    let flows = oracles::enumerate_flows(graph, graph.orientation(), group, budget)?;
    Ok(oracles::cwe(&flows, &h))
}

/// `q^{-|V|} Σ_x Π_e Σ_b Π_{v ∈ e} g^F(x_v - b)`.
pub fn cwe_flow_vertex_model(graph: &Multigraph, g: &WeightTable, budget: Budget) -> Result<ModelValue> {
    let group = g.group();
    let gf = g.fourier();
    let model = VertexModel::uniform(pair_table(group, gf.weights()))?;
    let z = vertex_partition(graph, &model, budget)?;
    Ok(z.scaled(real((group.order() as f64).powi(-(graph.vertex_count() as i32)))))
}

/// `q^{-|V|} Σ_y Π_v Σ_a Π_{e ∋ v} g^F(a - y_e)`, one factor per half-edge.
pub fn cwe_flow_edge_model(graph: &Multigraph, g: &WeightTable, budget: Budget) -> Result<ModelValue> {
    let group = g.group().clone();
    let q = group.order();
    let gf = g.fourier();
    let lists = half_edge_lists(graph);
    let radices = vec![q; graph.edge_count()];
    let z = model_sum(&radices, budget, |y| {
        let mut w = ONE;
        for list in &lists {
            let s: Complex64 = (0..q).map(|a| list.iter().map(|&e| gf.get(group.sub(a, y[e]))).product::<Complex64>()).sum();
            w *= s;
        }
        w
    })?;
    Ok(z.scaled(real((q as f64).powi(-(graph.vertex_count() as i32)))))
}

/// `cwe(im δ; f ∗ f^N)`, from the tension list.
pub fn tension_cwe_target(graph: &Multigraph, f: &WeightTable, budget: Budget) -> Result<Complex64> {
    let fq = f.as_qfunction();
    let h = WeightTable::from_qfunction(&fourier::convolve(&fq, &fourier::negate(&fq))?)?;
    let tensions = oracles::enumerate_tensions(graph, graph.orientation(), f.group(), budget)?;
    Ok(oracles::cwe(&tensions, &h))
}

/// `q^{|E|+r(E)} E[Π_{(v,e) ∈ H} f(X_v - Y_e)]` with `(X, Y)` uniform on
/// `Q^V × Q^E`; the sum over `Y` is carried out edge by edge.
pub fn cwe_tension_expectation(graph: &Multigraph, f: &WeightTable, budget: Budget) -> Result<ModelValue> {
    let group = f.group();
    let q = group.order() as f64;
    let model = VertexModel::uniform(pair_table(group, f.weights()))?;
    let z = vertex_partition(graph, &model, budget)?;
    let exponent = graph.total_rank() as i32 - graph.vertex_count() as i32;
    Ok(z.scaled(real(q.powi(exponent))))
}

/// `(s-1)^{|E|-r(E)} T(G; s, (s-1+q)/(s-1))`, evaluated from the Tutte oracle.
pub fn tutte_hyperbola(graph: &Multigraph, q: usize, s: Complex64, budget: Budget) -> Result<Complex64> {
    if (s - ONE).norm() == 0.0 {
        return Err(Error::Precondition("s must differ from 1".into()));
    }
    let t = oracles::tutte(graph, budget)?;
    let y = (s - ONE + q as f64) / (s - ONE);
    Ok((s - ONE).powu(graph.nullity() as u32) * t.eval_complex(s, y))
}

/// `q^{-|E|-|V|} (s-1)^{2|E|} Σ_y Π_v Σ_a ((s-1+q)/(s-1))^{#{h ∈ H(v) : y_h = a}}`,
/// which equals `tutte_hyperbola` at `s²`.
pub fn tutte_edge_model(graph: &Multigraph, q: usize, s: Complex64, budget: Budget) -> Result<ModelValue> {
    if (s - ONE).norm() == 0.0 {
        return Err(Error::Precondition("s must differ from 1".into()));
    }
    let w = (s - ONE + q as f64) / (s - ONE);
    let max_degree = graph.degrees().into_iter().max().unwrap_or(0);
    let powers: Vec<Complex64> = (0..=max_degree).map(|k| w.powu(k as u32)).collect();
    let lists = half_edge_lists(graph);
    let radices = vec![q; graph.edge_count()];
    let z = model_sum(&radices, budget, |y| {
        let mut total = ONE;
        let mut counts = vec![0usize; q];
        for list in &lists {
            counts.iter_mut().for_each(|c| *c = 0);
            for &e in list {
                counts[y[e]] += 1;
            }
            total *= counts.iter().map(|&c| powers[c]).sum::<Complex64>();
        }
        total
    })?;
    let m = graph.edge_count();
    let scale = (s - ONE).powu(2 * m as u32) * (q as f64).powi(-((m + graph.vertex_count()) as i32));
    Ok(z.scaled(scale))
}

/// `q^{-|E|} 2^{|V|} Σ_y (1-q)^{#monochrome} (1-q/2)^{|V| - #rainbow}`, rounded.
pub fn flow_cubic_edge_model(graph: &Multigraph, q: usize, tol: f64, budget: Budget) -> Result<i128> {
    graph.ensure_regular(3)?;
    let lists = half_edge_lists(graph);
    let n = graph.vertex_count();
    let (mono_w, other_w) = (1.0 - q as f64, 1.0 - q as f64 / 2.0);
    let radices = vec![q; graph.edge_count()];
    let z = model_sum(&radices, budget, |y| {
        let mut w = 1.0;
        for list in &lists {
            let (a, b, c) = (y[list[0]], y[list[1]], y[list[2]]);
            if a == b && b == c {
                w *= mono_w * other_w;
            } else if a == b || b == c || a == c {
                w *= other_w;
            }
        }
        real(w)
    })?;
    let value = z.value.re * 2f64.powi(n as i32) / (q as f64).powi(graph.edge_count() as i32);
    let rounded = value.round();
    let residual = (value - rounded).abs() / value.abs().max(1.0);
    if residual > tol {
        return Err(Error::Residual { what: "cubic flow edge model rounding", residual });
    }
    Ok(rounded as i128)
}

/// `h` with `g(a, b) = Σ_c h(a, c) h(b, c)`, from the eigendecomposition of `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct SzegedyDecomposition {
    /// `h[a][c]`; columns follow eigenvalues in descending order.
    pub h: SquareMatrix,
    pub eigenvalues: Vec<f64>,
    /// Indices of the columns that are not identically zero.
    pub active: Vec<usize>,
}

impl SzegedyDecomposition {
    pub fn rank(&self) -> usize {
        self.active.len()
    }

    /// `max |g(a, b) - Σ_c h(a, c) h(b, c)|`.
    pub fn reconstruction_residual(&self, g: &[Vec<f64>]) -> f64 {
        let q = self.h.len();
        let mut worst: f64 = 0.0;
        for a in 0..q {
            for b in 0..q {
                let s: Complex64 = (0..q).map(|c| self.h[a][c] * self.h[b][c]).sum();
                worst = worst.max((s - g[a][b]).norm());
            }
        }
        worst
    }
}

pub fn szegedy_decompose(g: &[Vec<f64>]) -> Result<SzegedyDecomposition> {
    let q = g.len();
    if let Some(row) = g.iter().find(|r| r.len() != q) {
        return Err(Error::LengthMismatch { expected: q, found: row.len() });
    }
    let norm = g.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for a in 0..q {
        for b in 0..a {
            if (g[a][b] - g[b][a]).abs() > 1e-12 * norm.max(1.0) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let m = DMatrix::from_fn(q, q, |a, b| g[a][b]);
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let mut h = vec![vec![Complex64::default(); q]; q];
    let mut eigenvalues = Vec::with_capacity(q);
    let mut active = Vec::new();
    for (c, &k) in order.iter().enumerate() {
        let lambda = eig.eigenvalues[k];
        eigenvalues.push(lambda);
        if lambda.abs() < 1e-9 * norm || norm == 0.0 {
            continue;
        }
        active.push(c);
        let col = eig.eigenvectors.column(k);
        let pivot = (0..q).fold(0, |best, a| if col[a].abs() > col[best].abs() + 1e-12 { a } else { best });
        let sign = if col[pivot] < 0.0 { -1.0 } else { 1.0 };
        let root = real(lambda).sqrt();
        for a in 0..q {
            h[a][c] = root * (sign * col[a]);
        }
    }
    Ok(SzegedyDecomposition { h, eigenvalues, active })
}

/// `Σ_y Π_v Σ_a f(a) Π_{e ∋ v} h(a, y_e)`, with `y` ranging over the nonzero
/// columns of `h` only.
pub fn szegedy_edge_model(graph: &Multigraph, f: &WeightTable, g: &[Vec<f64>], budget: Budget) -> Result<ModelValue> {
    let q = f.group().order();
    check_len(q, g.len())?;
    let dec = szegedy_decompose(g)?;
    let cols = dec.active.clone();
    let lists = half_edge_lists(graph);
    let radices = vec![cols.len(); graph.edge_count()];
    model_sum(&radices, budget, |y| {
        let mut w = ONE;
        for list in &lists {
            let s: Complex64 =
                (0..q).map(|a| f.get(a) * list.iter().map(|&e| dec.h[a][cols[y[e]]]).product::<Complex64>()).sum();
            w *= s;
            if w == Complex64::default() {
                break;
            }
        }
        w
    })
}

/// Vertex weights `s_a` and edge weights `t_b` of `X_Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct XQParams {
    pub s: WeightTable,
    pub t: WeightTable,
}

impl XQParams {
    pub fn new(s: WeightTable, t: WeightTable) -> Result<Self> {
        s.group().ensure_same(t.group())?;
        Ok(XQParams { s, t })
    }

    /// `s_a = s^a`, `t_0 = t`, `t_b = 1` otherwise, over `Z_q`.
    pub fn principal(q: usize, s: Complex64, t: Complex64) -> Self {
        let group = GroupSpec::cyclic(q);
        let sw = (0..q).map(|a| s.powu(a as u32)).collect();
        XQParams {
            s: WeightTable::new(&group, sw).expect("q weights"),
            t: WeightTable::hamming(&group, t),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        self.s.group()
    }

    /// `max_b |t_b - t_{-b}|`.
    pub fn asymmetry(&self) -> f64 {
        let g = self.group();
        (0..g.order()).map(|b| (self.t.get(b) - self.t.get(g.neg(b))).norm()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self.t.weights().iter().map(|z| z.norm()).fold(1.0, f64::max);
        self.asymmetry() <= tol * scale
    }
}

/// `Σ_x Π_v s_{x_v} Π_e t_{(δx)_e}`.
pub fn xq_evaluate(graph: &Multigraph, sigma: &Orientation, p: &XQParams, budget: Budget) -> Result<ModelValue> {
    graph.check_orientation(sigma)?;
    let group = p.group().clone();
    let ends = edge_ends(graph, sigma);
    let radices = vec![group.order(); graph.vertex_count()];
    model_sum(&radices, budget, |x| {
        let mut w: Complex64 = x.iter().map(|&a| p.s.get(a)).product();
        for &(t, h) in &ends {
            w *= p.t.get(group.sub(x[h], x[t]));
        }
        w
    })
}

/// `(ŝ, t̂)` with `ŝ_a = Σ_c conj(χ(ca)) s_c` and `t̂_b = Σ_c χ(cb) t_c`.
pub fn xq_hat(p: &XQParams) -> (Vec<Complex64>, Vec<Complex64>) {
    let g = p.group();
    let q = g.order();
    let s_hat = (0..q).map(|a| (0..q).map(|c| g.pairing(c, a).conj() * p.s.get(c)).sum()).collect();
    let t_hat = (0..q).map(|b| (0..q).map(|c| g.pairing(c, b) * p.t.get(c)).sum()).collect();
    (s_hat, t_hat)
}

/// `q^{-|E|} Σ_y Π_v ŝ_{(∂y)_v} Π_e t̂_{y_e}`.
pub fn xq_dual(graph: &Multigraph, sigma: &Orientation, p: &XQParams, budget: Budget) -> Result<ModelValue> {
    graph.check_orientation(sigma)?;
    let group = p.group().clone();
    let q = group.order();
    let (s_hat, t_hat) = xq_hat(p);
    let ends = edge_ends(graph, sigma);
    let n = graph.vertex_count();
    let radices = vec![q; graph.edge_count()];
    let z = model_sum(&radices, budget, |y| {
        let mut d = vec![0; n];
        boundary_into(&ends, &group, y, &mut d);
        let mut w: Complex64 = y.iter().map(|&b| t_hat[b]).product();
        for &a in &d {
            w *= s_hat[a];
        }
        w
    })?;
    Ok(z.scaled(real((q as f64).powi(-(graph.edge_count() as i32)))))
}

/// Which expansion of the principal specialization was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `s^q ≠ 1`.
    Generic,
    /// `s = e^{-2πic/q}`.
    RootOfUnity { c: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalValue {
    pub value: Complex64,
    pub branch: Branch,
    pub terms: u64,
}

/// Threshold on `|s^q - 1|` below which `s` is treated as a root of unity.
pub const ROOT_OF_UNITY_TOL: f64 = 1e-9;

/// `X_q(G; 1, s, …, s^{q-1}; t)` as a sum over edge colourings weighted by
/// their boundaries.
pub fn principal_specialization(
    graph: &Multigraph,
    sigma: &Orientation,
    q: usize,
    s: Complex64,
    t: Complex64,
    budget: Budget,
) -> Result<PrincipalValue> {
    if (s.powu(q as u32) - ONE).norm() < ROOT_OF_UNITY_TOL {
        let c = ((-s.arg() * q as f64 / (2.0 * PI)).round() as i64).rem_euclid(q as i64) as usize;
        principal_root_branch(graph, sigma, q, c, t, budget)
    } else {
        principal_generic_branch(graph, sigma, q, s, t, budget)
    }
}

fn flow_weight_parts(t: Complex64, q: usize) -> Result<Complex64> {
    if (t - ONE).norm() == 0.0 {
        return Err(Error::Precondition("t must differ from 1".into()));
    }
    Ok((t - ONE + q as f64) / (t - ONE))
}

/// Branch (i), valid whenever `s^q ≠ 1`.
pub fn principal_generic_branch(
    graph: &Multigraph,
    sigma: &Orientation,
    q: usize,
    s: Complex64,
    t: Complex64,
    budget: Budget,
) -> Result<PrincipalValue> {
    graph.check_orientation(sigma)?;
    let w = flow_weight_parts(t, q)?;
    let group = GroupSpec::cyclic(q);
    let ends = edge_ends(graph, sigma);
    let n = graph.vertex_count();
    let sq = s.powu(q as u32) - ONE;
    let vertex: Vec<Complex64> =
        (0..q).map(|a| sq / (s * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / q as f64) - ONE)).collect();
    let radices = vec![q; graph.edge_count()];
    let z = model_sum(&radices, budget, |y| {
        let mut d = vec![0; n];
        boundary_into(&ends, &group, y, &mut d);
        let zeros = y.iter().filter(|&&b| b == 0).count();
        d.iter().map(|&a| vertex[a]).product::<Complex64>() * w.powu(zeros as u32)
    })?;
    let m = graph.edge_count() as i32;
    let value = z.value * (t - ONE).powi(m) * (q as f64).powi(-m);
    Ok(PrincipalValue { value, branch: Branch::Generic, terms: z.terms })
}

/// Branch (ii): `s = e^{-2πic/q}`; only edge colourings with `∂y ≡ c` count.
pub fn principal_root_branch(
    graph: &Multigraph,
    sigma: &Orientation,
    q: usize,
    c: usize,
    t: Complex64,
    budget: Budget,
) -> Result<PrincipalValue> {
    graph.check_orientation(sigma)?;
    let w = flow_weight_parts(t, q)?;
    let group = GroupSpec::cyclic(q);
    let ends = edge_ends(graph, sigma);
    let n = graph.vertex_count();
    let radices = vec![q; graph.edge_count()];
    let z = model_sum(&radices, budget, |y| {
        let mut d = vec![0; n];
        boundary_into(&ends, &group, y, &mut d);
        if d.iter().all(|&a| a == c % q) {
            w.powu(y.iter().filter(|&&b| b == 0).count() as u32)
        } else {
            Complex64::default()
        }
    })?;
    let value = z.value * (t - ONE).powi(graph.edge_count() as i32) * (q as f64).powi(n as i32 - graph.edge_count() as i32);
    Ok(PrincipalValue { value, branch: Branch::RootOfUnity { c: c % q }, terms: z.terms })
}

/// Edge model for `X_Q` with symmetric edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct XqEdgeValue {
    pub value: ModelValue,
    /// `u` with `t_b = Σ_a u_a u_{a-b}`.
    pub u: WeightTable,
    pub reconstruction_residual: f64,
}

/// `u` with `u ∗ u^N = t`, from `u^F = q^{-1/4} √(t^F)` (principal root).
pub fn convolution_root(t: &WeightTable) -> Result<(WeightTable, f64)> {
    let group = t.group();
    let q = group.order() as f64;
    let tf = t.fourier();
    let uf = WeightTable::new(group, tf.weights().iter().map(|z| z.sqrt() * q.powf(-0.25)).collect())?;
    let u = WeightTable::from_qfunction(&fourier::inverse_fourier(&uf.as_qfunction()))?;
    let uq = u.as_qfunction();
    let back = fourier::convolve(&uq, &fourier::negate(&uq))?;
    let scale = t.weights().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let residual = back.max_abs_diff(&t.as_qfunction())? / scale;
    Ok((u, residual))
}

/// `Σ_y Π_v Σ_a s_a Π_{h ∈ H(v)} u_{y_h - a}`.
pub fn xq_edge_model(graph: &Multigraph, p: &XQParams, budget: Budget) -> Result<XqEdgeValue> {
    if !p.is_symmetric(1e-12) {
        return Err(Error::NotSymmetric);
    }
    let (u, reconstruction_residual) = convolution_root(&p.t)?;
    if reconstruction_residual > 1e-9 {
        return Err(Error::Residual { what: "convolution root", residual: reconstruction_residual });
    }
    let group = p.group().clone();
    let q = group.order();
    let lists = half_edge_lists(graph);
    let radices = vec![q; graph.edge_count()];
    let value = model_sum(&radices, budget, |y| {
        let mut w = ONE;
        for list in &lists {
            let s: Complex64 =
                (0..q).map(|a| p.s.get(a) * list.iter().map(|&e| u.get(group.sub(y[e], a))).product::<Complex64>()).sum();
            w *= s;
        }
        w
    })?;
    Ok(XqEdgeValue { value, u, reconstruction_residual })
}

/// Edge weights of the `F_4` vertex model, indexed by the colour difference
/// `0, 1, ω, ω̄`.
pub fn fg4_weights(s: Complex64, t: Complex64) -> [Complex64; 4] {
    [ONE + s + t, ONE - s - t, -ONE - s + t, -ONE + s - t]
}

/// `(st)^{|E|/3} F(G; 4)` against `4^{-|V|} Σ_{x ∈ F_4^V} Π_e w((δx)_e)`.
pub fn fg4_identity_check(graph: &Multigraph, s: Complex64, t: Complex64, budget: Budget) -> Result<DualRoute> {
    graph.ensure_regular(3)?;
    let flows = oracles::flow_polynomial(graph, 4, budget)?;
    let lhs = (s * t).powu((graph.edge_count() / 3) as u32) * flows as f64;
    let w = fg4_weights(s, t);
    let p = XQParams::new(WeightTable::ones(&GroupSpec::f4()), WeightTable::new(&GroupSpec::f4(), w.to_vec())?)?;
    let z = xq_evaluate(graph, graph.orientation(), &p, budget)?;
    let rhs = z.value * 4f64.powi(-(graph.vertex_count() as i32));
    Ok(DualRoute::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_table(group: &GroupSpec, rng: &mut ChaCha8Rng) -> WeightTable {
        let w = (0..group.order()).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        WeightTable::new(group, w).unwrap()
    }

    fn random_fns(group: &GroupSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<QFunction> {
        (0..n).map(|_| random_table(group, rng).as_qfunction()).collect()
    }

    #[test]
    fn duality_examples() {
        let b = Budget::default();
        let z2 = GroupSpec::cyclic(2);
        let tri = corpus::triangle();
        let f = vec![QFunction::constant(&z2, 1, ONE); 3];
        let g = vec![QFunction::delta(&z2, 1); 3];
        let r = general_duality_check(&tri, tri.orientation(), &f, &g, b).unwrap();
        assert!((r.lhs - real(2f64.powf(-0.5))).norm() < 1e-12);
        assert!(r.agrees(1e-12));

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z3 = GroupSpec::cyclic(3);
        let k4 = corpus::k4();
        let r = general_duality_check(&k4, k4.orientation(), &random_fns(&z3, 4, &mut rng), &random_fns(&z3, 6, &mut rng), b)
            .unwrap();
        assert!(r.agrees(1e-8), "{r:?}");

        let lone = Multigraph::new(1, vec![]).unwrap();
        let f = random_fns(&z3, 1, &mut rng);
        let r = general_duality_check(&lone, lone.orientation(), &f, &[], b).unwrap();
        let sum: Complex64 = f[0].values().iter().sum();
        assert!((r.lhs - sum / 3f64.sqrt()).norm() < 1e-12);
        assert!(r.agrees(1e-12));
    }

    #[test]
    fn flow_enumerator_models() {
        let b = Budget::default();
        let z2 = GroupSpec::cyclic(2);
        let lp = corpus::single_loop();
        let g = WeightTable::new(&z2, vec![c(0.3, 0.0), c(-1.7, 0.0)]).unwrap();
        let target = flow_cwe_target(&lp, &g, b).unwrap();
        assert!((target - c(0.09 + 2.89, 0.0)).norm() < 1e-12);
        assert!(DualRoute::new(target, cwe_flow_vertex_model(&lp, &g, b).unwrap().value).agrees(1e-12));
        assert!(DualRoute::new(target, cwe_flow_edge_model(&lp, &g, b).unwrap().value).agrees(1e-12));

        let k4 = corpus::k4();
        let d = WeightTable::new(&z2, vec![ONE, c(0.0, 0.0)]).unwrap();
        assert!((flow_cwe_target(&k4, &d, b).unwrap() - ONE).norm() < 1e-12);
        assert!((cwe_flow_edge_model(&k4, &d, b).unwrap().value - ONE).norm() < 1e-12);
        assert!((cwe_flow_vertex_model(&k4, &d, b).unwrap().value - ONE).norm() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let z3 = GroupSpec::cyclic(3);
        let th = corpus::theta();
        for _ in 0..3 {
            let g = random_table(&z3, &mut rng);
            let target = flow_cwe_target(&th, &g, b).unwrap();
            assert!(DualRoute::new(target, cwe_flow_vertex_model(&th, &g, b).unwrap().value).agrees(1e-8));
            assert!(DualRoute::new(target, cwe_flow_edge_model(&th, &g, b).unwrap().value).agrees(1e-8));
        }
    }

    #[test]
    fn tension_expectation_examples() {
        let b = Budget::default();
        let z2 = GroupSpec::cyclic(2);
        let e = corpus::single_edge();
        let f = WeightTable::new(&z2, vec![ONE, c(0.0, 0.0)]).unwrap();
        assert!((tension_cwe_target(&e, &f, b).unwrap() - ONE).norm() < 1e-12);
        assert!((cwe_tension_expectation(&e, &f, b).unwrap().value - ONE).norm() < 1e-12);

        let z3 = GroupSpec::cyclic(3);
        let k4 = corpus::k4();
        let ones = WeightTable::ones(&z3);
        let expected = real(3f64.powi(6 + 3));
        assert!((tension_cwe_target(&k4, &ones, b).unwrap() - expected).norm() < 1e-6);
        assert!((cwe_tension_expectation(&k4, &ones, b).unwrap().value - expected).norm() < 1e-6);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (_, g) in corpus::all().into_iter().filter(|(_, g)| g.vertex_count() <= 6) {
            let f = random_table(&z3, &mut rng);
            let r = DualRoute::new(tension_cwe_target(&g, &f, b).unwrap(), cwe_tension_expectation(&g, &f, b).unwrap().value);
            assert!(r.agrees(1e-8), "{r:?}");
        }
    }

    #[test]
    fn tutte_edge_model_examples() {
        let b = Budget::default();
        let lp = corpus::single_loop();
        let v = tutte_edge_model(&lp, 2, real(3.0), b).unwrap();
        assert!((v.value - real(10.0)).norm() < 1e-12);
        assert!((tutte_hyperbola(&lp, 2, real(9.0), b).unwrap() - real(10.0)).norm() < 1e-12);

        let tri = corpus::triangle();
        let expected = real(3.0) * (real(16.0) + real(4.0) + real(5.0 / 3.0));
        assert!((tutte_hyperbola(&tri, 2, real(4.0), b).unwrap() - expected).norm() < 1e-12);
        assert!(DualRoute::new(tutte_edge_model(&tri, 2, real(2.0), b).unwrap().value, expected).agrees(1e-12));

        let k4 = corpus::k4();
        let r = DualRoute::new(tutte_edge_model(&k4, 3, real(2.0), b).unwrap().value, tutte_hyperbola(&k4, 3, real(4.0), b).unwrap());
        assert!(r.agrees(1e-7), "{r:?}");
        assert!(tutte_edge_model(&k4, 3, ONE, b).is_err());
    }

    #[test]
    fn cubic_flow_model_examples() {
        let b = Budget::default();
        assert_eq!(flow_cubic_edge_model(&corpus::k4(), 4, 1e-9, b).unwrap(), 6);
        assert_eq!(flow_cubic_edge_model(&corpus::theta(), 3, 1e-9, b).unwrap(), 2);
        assert_eq!(flow_cubic_edge_model(&corpus::k4(), 2, 1e-9, b).unwrap(), 0);
        assert_eq!(flow_cubic_edge_model(&corpus::triangle(), 2, 1e-9, b).unwrap_err(), Error::NotRegular(3));
    }

    #[test]
    fn szegedy_examples() {
        let id = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let d = szegedy_decompose(&id).unwrap();
        assert_eq!(d.rank(), 3);
        assert!(d.reconstruction_residual(&id) < 1e-12);

        let ones = vec![vec![1.0; 4]; 4];
        let d = szegedy_decompose(&ones).unwrap();
        assert_eq!(d.active, vec![0]);
        for a in 0..4 {
            assert!((d.h[a][0] - ONE).norm() < 1e-12);
        }

        let proper: Vec<Vec<f64>> = (0..3).map(|a| (0..3).map(|b| f64::from(u8::from(a != b))).collect()).collect();
        let d = szegedy_decompose(&proper).unwrap();
        assert_eq!(d.rank(), 3);
        assert!(d.reconstruction_residual(&proper) < 1e-9);
        assert_eq!(d.eigenvalues.iter().filter(|&&l| l < 0.0).count(), 2);
        for col in 1..3 {
            assert!((0..3).all(|a| d.h[a][col].re.abs() < 1e-12));
        }

        let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert_eq!(szegedy_decompose(&asym).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn szegedy_edge_model_examples() {
        let b = Budget::default();
        let z3 = GroupSpec::cyclic(3);
        let proper: Vec<Vec<f64>> = (0..3).map(|a| (0..3).map(|b| f64::from(u8::from(a != b))).collect()).collect();
        let v = szegedy_edge_model(&corpus::triangle(), &WeightTable::ones(&z3), &proper, b).unwrap();
        assert!((v.value - real(6.0)).norm() < 1e-9);

        let z2 = GroupSpec::cyclic(2);
        let v = szegedy_edge_model(&corpus::k4(), &WeightTable::ones(&z2), &[vec![1.0; 2], vec![1.0; 2]], b).unwrap();
        assert!((v.value - real(16.0)).norm() < 1e-9);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let th = corpus::theta();
        let g = vec![vec![0.7, -0.4], vec![-0.4, 1.3]];
        let f = WeightTable::new(&z2, vec![real(rng.random_range(-1.0..1.0)), real(rng.random_range(-1.0..1.0))]).unwrap();
        let vm = VertexModel::new(f.as_qfunction(), QFunction::from_real(&z2, 2, &[0.7, -0.4, -0.4, 1.3]).unwrap()).unwrap();
        let r = DualRoute::new(
            szegedy_edge_model(&th, &f, &g, b).unwrap().value,
            vertex_partition(&th, &vm, b).unwrap().value,
        );
        assert!(r.agrees(1e-7), "{r:?}");
    }

    #[test]
    fn xq_examples() {
        let b = Budget::default();
        let e = corpus::single_edge();
        let z2 = GroupSpec::cyclic(2);
        let (s0, s1, t) = (c(0.4, 0.1), c(-1.2, 0.5), c(2.5, -0.3));
        let p = XQParams::new(WeightTable::new(&z2, vec![s0, s1]).unwrap(), WeightTable::hamming(&z2, t)).unwrap();
        let expected = t * (s0 * s0 + s1 * s1) + s0 * s1 * 2.0;
        assert!((xq_evaluate(&e, e.orientation(), &p, b).unwrap().value - expected).norm() < 1e-12);
        assert!((xq_dual(&e, e.orientation(), &p, b).unwrap().value - expected).norm() < 1e-12);

        let z4 = GroupSpec::cyclic(4);
        let dg = corpus::digon();
        let (t1, t2, t3) = (c(1.3, 0.0), c(-0.7, 0.2), c(0.5, 1.1));
        let p = XQParams::new(WeightTable::ones(&z4), WeightTable::new(&z4, vec![c(0.0, 0.0), t1, t2, t3]).unwrap()).unwrap();
        let cwe = t2 * t2 + t1 * t3 * 2.0;
        assert!((xq_evaluate(&dg, dg.orientation(), &p, b).unwrap().value - cwe * 4.0).norm() < 1e-12);
        let acyclic = dg.orientation().reversed(1);
        let v = xq_evaluate(&dg, &acyclic, &p, b).unwrap().value;
        assert!((v - (t1 * t1 + t2 * t2 + t3 * t3) * 4.0).norm() < 1e-12);

        let f4 = GroupSpec::f4();
        let p = XQParams::new(WeightTable::ones(&f4), WeightTable::new(&f4, vec![c(0.0, 0.0), t1, t2, t3]).unwrap()).unwrap();
        for sigma in [dg.orientation().clone(), acyclic] {
            let v = xq_evaluate(&dg, &sigma, &p, b).unwrap().value;
            assert!((v - (t1 * t1 + t2 * t2 + t3 * t3) * 4.0).norm() < 1e-12);
        }
    }

    #[test]
    fn principal_specialization_examples() {
        let b = Budget::default();
        let dg = corpus::digon();
        let v = principal_specialization(&dg, dg.orientation(), 2, ONE, real(3.0), b).unwrap();
        assert_eq!(v.branch, Branch::RootOfUnity { c: 0 });
        let mono = oracles::monochrome_polynomial(&dg, 2, real(3.0), b).unwrap();
        assert!((v.value - mono).norm() < 1e-12);

        let e = corpus::single_edge();
        let v = principal_specialization(&e, e.orientation(), 2, real(3.0), real(2.0), b).unwrap();
        assert_eq!(v.branch, Branch::Generic);
        assert!((v.value - real(26.0)).norm() < 1e-12);

        let tri = corpus::triangle();
        let s = Complex64::from_polar(1.0, -2.0 * PI / 3.0);
        let v = principal_specialization(&tri, tri.orientation(), 3, s, real(2.0), b).unwrap();
        assert_eq!(v.branch, Branch::RootOfUnity { c: 1 });
        let direct = xq_evaluate(&tri, tri.orientation(), &XQParams::principal(3, s, real(2.0)), b).unwrap().value;
        assert!(DualRoute::new(v.value, direct).agrees(1e-8), "{v:?} {direct}");
    }

    #[test]
    fn xq_edge_model_examples() {
        let b = Budget::default();
        let z4 = GroupSpec::cyclic(4);
        let t = 1.7;
        let mut w = vec![real(t * t - 1.0); 4];
        w[0] = real(t * t - 1.0 + 4.0);
        let (u, res) = convolution_root(&WeightTable::new(&z4, w).unwrap()).unwrap();
        assert!(res < 1e-12);
        assert!((u.get(0) * 2.0 - real(t + 3.0)).norm() < 1e-12);
        for bb in 1..4 {
            assert!((u.get(bb) * 2.0 - real(t - 1.0)).norm() < 1e-12);
        }

        let tri = corpus::triangle();
        let p = XQParams::principal(2, real(0.6), real(2.0));
        let r = DualRoute::new(
            xq_edge_model(&tri, &p, b).unwrap().value.value,
            xq_evaluate(&tri, tri.orientation(), &p, b).unwrap().value,
        );
        assert!(r.agrees(1e-7), "{r:?}");

        let z3 = GroupSpec::cyclic(3);
        let bad = XQParams::new(WeightTable::ones(&z3), WeightTable::new(&z3, vec![ONE, real(2.0), real(0.0)]).unwrap()).unwrap();
        assert_eq!(xq_edge_model(&tri, &bad, b).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn fg4_examples() {
        let b = Budget::default();
        let k4 = corpus::k4();
        let r = fg4_identity_check(&k4, ONE, ONE, b).unwrap();
        assert!((r.lhs - real(6.0)).norm() < 1e-12);
        assert!(r.agrees(1e-12), "{r:?}");
        assert!(fg4_identity_check(&k4, real(2.0), real(3.0), b).unwrap().agrees(1e-8));
        let r = fg4_identity_check(&corpus::theta(), ONE, ONE, b).unwrap();
        assert!((r.lhs - real(6.0)).norm() < 1e-12);
        assert!(r.agrees(1e-12), "{r:?}");
    }
}
