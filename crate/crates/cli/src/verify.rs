//! The identity battery behind `verify`.

use colourmodels::duality::{self, XQParams};
use colourmodels::fourier::{self, QFunction};
use colourmodels::models::{self, VertexModel, VertexWeights};
use colourmodels::numeric::relative_residual;
use colourmodels::oracles::{self, WeightTable};
use colourmodels::signed::{self, ColourSet};
use colourmodels::{Budget, Complex64, GroupSpec, Multigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphfile::GraphFile;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Fourier,
    Duality,
    Signed,
}

impl Suite {
    pub const PARTS: [Suite; 3] = [Suite::Fourier, Suite::Duality, Suite::Signed];
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub q: usize,
    pub tol: f64,
    pub budget: Budget,
    pub seed: u64,
}

struct Battery<'a> {
    cfg: Config,
    graph: &'a Multigraph,
    rng: ChaCha8Rng,
    report: Report,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl<'a> Battery<'a> {
    fn new(cfg: Config, graph: &'a Multigraph, salt: u64) -> Self {
        Battery { cfg, graph, rng: ChaCha8Rng::seed_from_u64(cfg.seed ^ salt), report: Report::default() }
    }

    fn route(&mut self, name: impl Into<String>, anchor: &str, lhs: Complex64, rhs: Complex64) {
        let r = relative_residual(lhs, rhs);
        self.report.checks.push(Check::new(name, anchor, lhs, rhs, r, self.cfg.tol));
    }

    fn residual(&mut self, name: impl Into<String>, anchor: &str, residual: f64) {
        self.report.checks.push(Check::new(name, anchor, c(residual), c(0.0), residual, self.cfg.tol));
    }

    fn exact(&mut self, name: impl Into<String>, anchor: &str, lhs: i128, rhs: i128) {
        let residual = (lhs - rhs).unsigned_abs() as f64;
        self.report.checks.push(Check::new(name, anchor, c(lhs as f64), c(rhs as f64), residual, 0.0));
    }

    /// Runs `body`, recording a skip instead of a check when it errors.
    fn attempt<F>(&mut self, name: &str, body: F)
    where
        F: FnOnce(&mut Self) -> colourmodels::Result<()>,
    {
        let before = self.report.checks.len();
        if let Err(e) = body(self) {
            self.report.checks.truncate(before);
            self.report.skipped.push((name.to_string(), e.to_string()));
        }
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.report.skipped.push((name.to_string(), reason.to_string()));
    }

    fn complex(&mut self) -> Complex64 {
        Complex64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0))
    }

    fn table(&mut self, group: &GroupSpec) -> WeightTable {
        let w = (0..group.order()).map(|_| self.complex()).collect();
        WeightTable::new(group, w).expect("one weight per element")
    }

    fn function(&mut self, group: &GroupSpec, arity: usize) -> QFunction {
        let n = group.order().pow(arity as u32);
        let v = (0..n).map(|_| self.complex()).collect();
        QFunction::from_values(group, arity, v).expect("full table")
    }

    fn fits(&self, base: usize, exponent: usize) -> bool {
        (base as f64).powi(exponent as i32) <= self.cfg.budget.terms() as f64
    }
}

fn fourier_suite(b: &mut Battery) {
    let q = b.cfg.q;
    let group = GroupSpec::cyclic(q);
    for d in (1..=3usize).filter(|&d| q.pow(d as u32) <= 512) {
        let (f, g) = (b.function(&group, d), b.function(&group, d));
        let (ff, fg) = (fourier::fourier(&f), fourier::fourier(&g));
        let anchor = "fourier-unitarity";
        b.route(format!("unitarity d={d}"), anchor, ff.hermitian(&fg).unwrap(), f.hermitian(&g).unwrap());
        let scale = f.max_abs().max(1.0);
        let n = fourier::fourier(&ff).max_abs_diff(&fourier::negate(&f)).unwrap() / scale;
        b.residual(format!("square is negation d={d}"), "fourier-square", n);
        let f4 = fourier::fourier(&fourier::fourier(&fourier::fourier(&ff)));
        b.residual(format!("fourth power is identity d={d}"), "fourier-square", f4.max_abs_diff(&f).unwrap() / scale);
        let lhs = fourier::fourier(&f.pointwise(&g).unwrap());
        let rhs = fourier::convolve(&ff, &fg).unwrap().scaled(c((q as f64).powf(-(d as f64) / 2.0)));
        let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
        b.residual(format!("product to convolution d={d}"), "fourier-convolution", lhs.max_abs_diff(&rhs).unwrap() / scale);
    }
    for step in (1..=q).filter(|s| q % s == 0) {
        let ind = QFunction::indicator(&group, 1, |t| t[0] % step == 0);
        b.attempt("subgroup transform", |b| {
            let r = fourier::submodule_transform_residual(&ind, b.cfg.budget.terms())?;
            b.residual(format!("subgroup transform step {step}"), "subgroup-transform", r);
            Ok(())
        });
    }
    b.route("fourier determinant", "fourier-determinant", signed::det_fourier(q), signed::det_fourier_numeric(q));
    let graph = b.graph;
    for seed in 0..5u64 {
        let u = fourier::random_orthogonal(q, b.cfg.seed.wrapping_add(seed));
        let f = VertexWeights::for_graph(&group, graph, |_| b.complex());
        b.attempt("orthogonal invariance", |b| {
            let check = models::orthogonal_invariance_check(graph, &f, &u, b.cfg.budget)?;
            b.route(format!("orthogonal invariance U{seed}"), "orthogonal-invariance", check.route.lhs, check.route.rhs);
            b.residual(format!("monochrome fixed point U{seed}"), "orthogonal-invariance", check.fixed_point_residual);
            Ok(())
        });
    }
}

fn low_rank_symmetric(b: &mut Battery, q: usize, rank: usize) -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; q]; q];
    for j in 0..rank {
        let v: Vec<f64> = (0..q).map(|_| b.rng.random_range(-1.0..1.0)).collect();
        let lambda = if j % 2 == 0 { 1.0 } else { -0.7 } * b.rng.random_range(0.5..2.0);
        for x in 0..q {
            for y in 0..q {
                g[x][y] += lambda * v[x] * v[y];
            }
        }
    }
    g
}

fn duality_suite(b: &mut Battery) {
    let q = b.cfg.q;
    let group = GroupSpec::cyclic(q);
    let graph = b.graph;
    let budget = b.cfg.budget;

    b.attempt("tutte edge model", |b| {
        let flows = oracles::enumerate_flows(graph, graph.orientation(), &group, budget)?;
        let enumerator = oracles::hwe(&flows, graph.edge_count());
        for s in [2.0f64, 3.0] {
            let lhs = enumerator.eval(c(s * s));
            let model = duality::tutte_edge_model(graph, q, c(s), budget)?;
            b.route(format!("tutte edge model s={s}"), "flow-hyperbola", lhs, model.value);
            let tutte = duality::tutte_hyperbola(graph, q, c(s * s), budget)?;
            b.route(format!("tutte hyperbola s={s}"), "flow-enumerator", lhs, tutte);
        }
        Ok(())
    });

    for draw in 0..2 {
        let w = b.table(&group);
        b.attempt("flow weight enumerator routes", |b| {
            let target = duality::flow_cwe_target(graph, &w, budget)?;
            let vertex = duality::cwe_flow_vertex_model(graph, &w, budget)?.value;
            let edge = duality::cwe_flow_edge_model(graph, &w, budget)?.value;
            b.route(format!("flow enumerator vertex route draw {draw}"), "flow-enumerator-models", target, vertex);
            b.route(format!("flow enumerator edge route draw {draw}"), "flow-enumerator-models", target, edge);
            Ok(())
        });
        b.attempt("tension expectation", |b| {
            let target = duality::tension_cwe_target(graph, &w, budget)?;
            let expectation = duality::cwe_tension_expectation(graph, &w, budget)?.value;
            b.route(format!("tension expectation draw {draw}"), "tension-enumerator", target, expectation);
            Ok(())
        });
        let f: Vec<QFunction> = (0..graph.vertex_count()).map(|_| b.table(&group).as_qfunction()).collect();
        let g: Vec<QFunction> = (0..graph.edge_count()).map(|_| b.table(&group).as_qfunction()).collect();
        b.attempt("boundary duality", |b| {
            let r = duality::general_duality_check(graph, graph.orientation(), &f, &g, budget)?;
            b.route(format!("boundary duality draw {draw}"), "poisson-duality", r.lhs, r.rhs);
            Ok(())
        });
        let h = b.table(&group);
        b.attempt("macwilliams", |b| {
            let flows = oracles::enumerate_flows(graph, graph.orientation(), &group, budget)?;
            let tensions = oracles::enumerate_tensions(graph, graph.orientation(), &group, budget)?;
            let scale = (q as f64).powf(-(graph.edge_count() as f64) / 2.0) * flows.len() as f64;
            let lhs = oracles::cwe(&flows, &h);
            let rhs = oracles::cwe(&tensions, &h.fourier()) * scale;
            b.route(format!("macwilliams draw {draw}"), "macwilliams", lhs, rhs);
            Ok(())
        });
    }

    if graph.is_regular(3) {
        b.attempt("cubic flow edge model", |b| {
            let oracle = oracles::flow_polynomial(graph, q, budget)?;
            let model = duality::flow_cubic_edge_model(graph, q, 1e-6, budget)?;
            b.exact(format!("cubic flow edge model q={q}"), "cubic-flow-model", model, oracle);
            Ok(())
        });
        for (s, t) in [(1.0, 1.0), (2.0, 3.0)] {
            b.attempt("F4 flow identity", |b| {
                let r = duality::fg4_identity_check(graph, c(s), c(t), budget)?;
                b.route(format!("F4 flow identity s={s} t={t}"), "f4-flow-model", r.lhs, r.rhs);
                Ok(())
            });
        }
    } else {
        b.skip("cubic flow edge model", "graph is not 3-regular");
        b.skip("F4 flow identity", "graph is not 3-regular");
    }

    let rank = 1 + (b.cfg.seed as usize) % q;
    let g = low_rank_symmetric(b, q, rank);
    let f = WeightTable::new(&group, (0..q).map(|_| c(b.rng.random_range(-1.0..1.0))).collect()).unwrap();
    b.attempt("spectral edge model", |b| {
        let dec = duality::szegedy_decompose(&g)?;
        b.residual("spectral reconstruction", "spectral-edge-model", dec.reconstruction_residual(&g));
        b.exact("spectral rank", "spectral-edge-model", dec.rank() as i128, rank as i128);
        let flat: Vec<f64> = g.iter().flatten().copied().collect();
        let vm = VertexModel::new(f.as_qfunction(), QFunction::from_real(&group, 2, &flat)?)?;
        let lhs = duality::szegedy_edge_model(graph, &f, &g, budget)?.value;
        let rhs = models::vertex_partition(graph, &vm, budget)?.value;
        b.route("spectral edge model", "spectral-edge-model", lhs, rhs);
        Ok(())
    });

    let p = XQParams::new(b.table(&group), b.table(&group)).unwrap();
    b.attempt("boundary expansion", |b| {
        let lhs = duality::xq_evaluate(graph, graph.orientation(), &p, budget)?.value;
        let rhs = duality::xq_dual(graph, graph.orientation(), &p, budget)?.value;
        b.route("boundary expansion", "xq-boundary", lhs, rhs);
        Ok(())
    });
    let t = c(b.rng.random_range(1.5..3.0));
    let generic = Complex64::new(b.rng.random_range(0.3..0.9), b.rng.random_range(-0.5..0.5));
    let roots: Vec<Complex64> =
        (0..q).map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / q as f64)).collect();
    for (i, s) in std::iter::once(generic).chain(roots).enumerate() {
        b.attempt("principal specialization", |b| {
            let v = duality::principal_specialization(graph, graph.orientation(), q, s, t, budget)?;
            let direct = duality::xq_evaluate(graph, graph.orientation(), &XQParams::principal(q, s, t), budget)?.value;
            let name = if i == 0 { "principal specialization generic".to_string() } else { format!("principal specialization root {}", i - 1) };
            b.route(name, "xq-principal", v.value, direct);
            Ok(())
        });
    }
    let raw: Vec<f64> = (0..q).map(|_| b.rng.random_range(-1.0..1.0)).collect();
    let sym = WeightTable::new(&group, (0..q).map(|x| c(raw[x] + raw[group.neg(x)])).collect()).unwrap();
    let p = XQParams::new(b.table(&group), sym).unwrap();
    b.attempt("symmetric edge model", |b| {
        let v = duality::xq_edge_model(graph, &p, budget)?;
        let direct = duality::xq_evaluate(graph, graph.orientation(), &p, budget)?.value;
        b.route("symmetric edge model", "xq-edge-model", v.value.value, direct);
        Ok(())
    });
    b.attempt("convolution root", |b| {
        let tt = 3.0;
        let w = (0..q).map(|x| c(tt * tt - 1.0 + if x == 0 { q as f64 } else { 0.0 })).collect();
        let (u, _) = duality::convolution_root(&WeightTable::new(&group, w)?)?;
        let root = (q as f64).sqrt();
        b.route("convolution root u_0", "xq-edge-model", u.get(0) * root, c(tt - 1.0 + q as f64));
        b.route("convolution root u_1", "xq-edge-model", u.get(1 % q) * root, c(if q == 1 { tt } else { tt - 1.0 }));
        Ok(())
    });
}

fn signed_suite(b: &mut Battery, pfaffian: bool) {
    let q = b.cfg.q;
    let graph = b.graph;
    let budget = b.cfg.budget;
    if graph.rotation().is_none() {
        b.skip("signed suite", "graph has no rotation system");
        return;
    }
    let Some(k) = (1..=graph.vertex_count().max(1) * 2).find(|&k| graph.is_regular(k)) else {
        b.skip("signed suite", "graph is not regular");
        return;
    };

    b.attempt("parity transform", |b| {
        let set = ColourSet::symmetric(q, k)?;
        let r = signed::parity_fourier_residual(&set, |x| signed::parity_fourier_closed(k, q, x))?;
        b.residual(format!("parity transform k={k} q={q}"), "parity-transform", r);
        if q == k + 1 {
            let r = signed::parity_fourier_residual(&ColourSet::kplus1(k), |x| signed::parity_fourier_kplus1(k, x))?;
            b.residual(format!("parity transform Z_(k+1) k={k}"), "parity-transform", r);
        }
        Ok(())
    });
    b.attempt("zero-sum to monochrome", |b| {
        let set = ColourSet::symmetric(q, k)?;
        let lhs = signed::zero_sum_parity_sum(graph, &set, budget)?.value;
        let rhs = signed::monochrome_parity_fourier_sum(graph, &set, budget)?.value;
        b.route("zero-sum to monochrome", "zero-sum-monochrome", lhs, rhs);
        Ok(())
    });

    let proper = if b.fits(k, graph.edge_count()) {
        signed::proper_colouring_sign_sum(graph, k, budget).ok()
    } else {
        None
    };
    if k >= 2 {
        b.attempt("sign relation", |b| {
            let zero = signed::zero_sum_parity_sum(graph, &ColourSet::full(k), budget)?.value;
            let mono = signed::monochrome_parity_sum(graph, &ColourSet::full(k), budget)?.value;
            if k % 2 == 0 && graph.vertex_count() % 2 == 1 {
                b.residual("sign relation (odd order vanishes)", "zero-sum-sign", zero.norm() + mono.norm());
            } else {
                let sign = f64::from(signed::cor45_sign(k, graph.edge_count(), graph.vertex_count())?);
                b.route("sign relation", "zero-sum-sign", zero, mono * sign);
            }
            Ok(())
        });
        b.attempt("factorization chain", |b| {
            let p: Vec<usize> = (0..k).filter(|&a| a == 0 || a <= k - a).collect();
            let set = ColourSet::from_p(k, p)?;
            let zero = signed::zero_sum_parity_sum(graph, &set, budget)?.value;
            let factor = signed::factorization_sign_sum(graph, &set, budget)?;
            let proper = signed::proper_colouring_sign_sum(graph, k, budget)?;
            b.route("zero-sum vs factorizations", "factorization-signs", c(zero.norm()), c(factor.abs() as f64));
            b.exact("factorizations vs colourings", "factorization-signs", factor.abs(), proper.abs());
            Ok(())
        });
    }

    let count = if pfaffian { oracles::chromatic(&graph.line_graph(), k, budget).ok() } else { None };
    if k % 2 == 1 {
        b.attempt("sine model", |b| {
            let v = signed::sine_model(graph, q, k, budget)?;
            if let Some(p) = proper {
                b.route(format!("sine model vs signed colourings q={q}"), "sine-model", c(v.magnitude()), c(p.abs() as f64));
            }
            if let Some(n) = count {
                b.route(format!("sine model vs edge colourings q={q}"), "sine-model", c(v.magnitude()), c(n as f64));
            }
            b.residual(format!("sine model imaginary part q={q}"), "sine-model", v.imag_residual);
            Ok(())
        });
    } else {
        b.skip("sine model", "degree is even");
    }
    b.attempt("Z_(k+1) signed sum", |b| {
        let v = signed::kplus1_sign_sum(graph, k, budget)?;
        let scale = ((k + 1) as f64).powf(graph.vertex_count() as f64 / 2.0);
        if let Some(p) = proper {
            b.route("Z_(k+1) sum vs signed colourings", "kplus1-signs", c(v.magnitude()), c(p.abs() as f64));
        }
        if let Some(n) = count {
            b.route("Z_(k+1) sum vs edge colourings", "kplus1-signs", c(v.magnitude()), c(n as f64));
        }
        b.residual("Z_(k+1) sum integrality", "kplus1-signs", {
            let raw = v.value.re * scale;
            (raw - raw.round()).abs()
        });
        Ok(())
    });
    if k == 3 && pfaffian {
        b.attempt("even minus odd 4-colourings", |b| {
            let got = signed::even_minus_odd_proper4(graph, budget)?;
            let flows = oracles::flow_polynomial(graph, 4, budget)?;
            let want = (-4i128).pow((graph.edge_count() / 3) as u32) * flows;
            b.exact("even minus odd 4-colourings", "cubic-even-odd", got, want);
            Ok(())
        });
    }
    if let (Some(p), Some(v)) = (proper, (0..graph.vertex_count()).find(|&v| graph.degree(v) >= 2)) {
        b.attempt("rotation covariance", |b| {
            let swapped = graph.rotation().expect("checked above").swap_adjacent(v, 0);
            let g2 = graph.clone().with_rotation(swapped.orders().to_vec())?;
            let p2 = signed::proper_colouring_sign_sum(&g2, k, budget)?;
            b.exact("rotation swap negates signed colourings", "rotation-covariance", p2, -p);
            Ok(())
        });
    }
}

/// Runs `suite` on `file` and returns every check performed.
pub fn run(suite: Suite, file: &GraphFile, cfg: Config) -> Report {
    let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
    let mut report = Report::default();
    for part in parts {
        let mut b = Battery::new(cfg, &file.graph, part as u64);
        match part {
            Suite::Fourier => fourier_suite(&mut b),
            Suite::Duality => duality_suite(&mut b),
            Suite::Signed => signed_suite(&mut b, file.pfaffian_compatible),
            Suite::All => unreachable!("expanded above"),
        }
        report.extend(b.report);
    }
    report
}
