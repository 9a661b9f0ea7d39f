//! Brute-force ground truth: Tutte polynomial by subset expansion, flow and
//! chromatic polynomials, flows and tensions, weight enumerators and the
//! monochrome polynomial.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

use crate::enumerate::{for_each_uniform, sum_uniform, Budget};
use crate::error::{Error, Result};
use crate::fourier::{self, QFunction};
use crate::graph::{EdgeSubset, HalfEdge, Multigraph, Orientation};
use crate::group::GroupSpec;

/// `T(G; x, y) = Σ_{i,j} c[i][j] x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePolynomial {
    coeffs: Vec<Vec<BigInt>>,
}

impl TuttePolynomial {
    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_default()
    }

    fn eval_with<T, P>(&self, x: T, y: T, lift: fn(&BigInt) -> T, pow: P) -> T
    where
        T: Clone + Zero + One + std::ops::Mul<Output = T>,
        P: Fn(&T, usize) -> T,
    {
        let mut total = T::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            let xi = pow(&x, i);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    total = total + lift(c) * xi.clone() * pow(&y, j);
                }
            }
        }
        total
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.eval_with(x.clone(), y.clone(), |c| c.clone(), |b, e| num_traits::pow(b.clone(), e))
    }

    pub fn eval_rational(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.eval_with(x.clone(), y.clone(), |c| BigRational::from_integer(c.clone()), |b, e| num_traits::pow(b.clone(), e))
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.eval_with(x, y, |c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0), |b, e| b.powu(e as u32))
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            for j in (0..self.coeffs[i].len()).rev() {
                let c = &self.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                let mono = [(i, "x"), (j, "y")]
                    .iter()
                    .filter(|(p, _)| *p > 0)
                    .map(|&(p, v)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
                    .collect::<Vec<_>>()
                    .join("*");
                terms.push(match (c.is_one(), mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (true, false) => mono,
                    (false, false) => format!("{c}*{mono}"),
                });
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `T(G; x, y) = Σ_{A ⊆ E} (x-1)^{r(E)-r(A)} (y-1)^{|A|-r(A)}`, expanded
/// into monomials.
pub fn tutte(graph: &Multigraph, budget: Budget) -> Result<TuttePolynomial> {
    let m = graph.edge_count();
    if m >= 64 {
        return Err(Error::CapExceeded { estimate: 2f64.powi(m as i32), cap: budget.terms() });
    }
    budget.admit(2, m)?;
    let rank_e = graph.total_rank();
    // counts[a][b]: subsets with corank a and nullity b.
    let mut counts = vec![vec![0u64; m + 1]; rank_e + 1];
    for bits in 0..(1u64 << m) {
        let a = EdgeSubset::from_bits(bits, m);
        let r = graph.rank(a);
        counts[rank_e - r][a.count() - r] += 1;
    }
    let binom = |n: usize, k: usize| -> BigInt {
        let mut b = BigInt::one();
        for t in 0..k {
            b = b * (n - t) / (t + 1);
        }
        b
    };
    let null_e = graph.nullity();
    let mut coeffs = vec![vec![BigInt::zero(); null_e + 1]; rank_e + 1];
    for (a, row) in counts.iter().enumerate() {
        for (b, &n) in row.iter().enumerate() {
            if n == 0 {
                continue;
            }
            // (x-1)^a (y-1)^b
            for i in 0..=a {
                let sx = if (a - i) % 2 == 0 { 1 } else { -1 };
                let cx = binom(a, i) * sx;
                for j in 0..=b {
                    let sy = if (b - j) % 2 == 0 { 1 } else { -1 };
                    coeffs[i][j] += &cx * binom(b, j) * sy * BigInt::from(n);
                }
            }
        }
    }
    Ok(TuttePolynomial { coeffs })
}

fn sign_pow(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn to_i128(what: &'static str, v: BigInt) -> Result<i128> {
    v.to_i128().ok_or_else(|| Error::Precondition(format!("{what} value {v} does not fit in 128 bits")))
}

/// `(tail, head)` vertex of every edge under `sigma`.
pub(crate) fn edge_ends(graph: &Multigraph, sigma: &Orientation) -> Vec<(usize, usize)> {
    (0..graph.edge_count())
        .map(|e| {
            let head = graph.vertex_of(HalfEdge::new(e, sigma.head(e)));
            let tail = graph.vertex_of(HalfEdge::new(e, 1 - sigma.head(e)));
            (tail, head)
        })
        .collect()
}

/// Writes `∂y` into `out`, skipping the argument checks.
pub(crate) fn boundary_into(ends: &[(usize, usize)], group: &GroupSpec, y: &[usize], out: &mut [usize]) {
    out.iter_mut().for_each(|s| *s = 0);
    for (&(t, h), &c) in ends.iter().zip(y) {
        out[h] = group.add(out[h], c);
        out[t] = group.sub(out[t], c);
    }
}

pub(crate) fn is_flow(ends: &[(usize, usize)], group: &GroupSpec, y: &[usize], scratch: &mut [usize]) -> bool {
    boundary_into(ends, group, y, scratch);
    scratch.iter().all(|&s| s == 0)
}

/// Number of nowhere-zero `Z_q`-flows, by direct enumeration.
pub fn count_nowhere_zero_flows(graph: &Multigraph, q: usize, budget: Budget) -> Result<u64> {
    if q < 2 {
        return Ok(u64::from(graph.edge_count() == 0));
    }
    budget.admit(q - 1, graph.edge_count())?;
    let group = GroupSpec::cyclic(q);
    let ends = edge_ends(graph, graph.orientation());
    let n = graph.vertex_count();
    Ok(sum_uniform(q - 1, graph.edge_count(), |digits| {
        let y: Vec<usize> = digits.iter().map(|&d| d + 1).collect();
        let mut scratch = vec![0; n];
        u64::from(is_flow(&ends, &group, &y, &mut scratch))
    }))
}

/// `F(G; q)`, from the Tutte polynomial and from direct enumeration.
pub fn flow_polynomial(graph: &Multigraph, q: usize, budget: Budget) -> Result<i128> {
    let t = tutte(graph, budget)?;
    let via_tutte = sign_pow(graph.nullity()) * t.eval_int(&BigInt::zero(), &BigInt::from(1 - q as i64));
    let direct = count_nowhere_zero_flows(graph, q, budget)?;
    if via_tutte != BigInt::from(direct) {
        return Err(Error::Mismatch { what: "flow polynomial", left: via_tutte.to_string(), right: direct.to_string() });
    }
    to_i128("flow polynomial", via_tutte)
}

/// Number of proper `q`-colourings, by direct enumeration.
pub fn count_proper_colourings(graph: &Multigraph, q: usize, budget: Budget) -> Result<u64> {
    if (0..graph.edge_count()).any(|e| graph.is_loop(e)) {
        return Ok(0);
    }
    budget.admit(q, graph.vertex_count())?;
    let edges = graph.edges().to_vec();
    Ok(sum_uniform(q, graph.vertex_count(), |x| u64::from(edges.iter().all(|&(u, v)| x[u] != x[v]))))
}

/// `P(G; q)`, from the Tutte polynomial and from direct enumeration.
pub fn chromatic(graph: &Multigraph, q: usize, budget: Budget) -> Result<i128> {
    let t = tutte(graph, budget)?;
    let via_tutte = num_traits::pow(BigInt::from(q), graph.component_count())
        * sign_pow(graph.total_rank())
        * t.eval_int(&BigInt::from(1 - q as i64), &BigInt::zero());
    let direct = count_proper_colourings(graph, q, budget)?;
    if via_tutte != BigInt::from(direct) {
        return Err(Error::Mismatch { what: "chromatic polynomial", left: via_tutte.to_string(), right: direct.to_string() });
    }
    to_i128("chromatic polynomial", via_tutte)
}

/// All `y ∈ Q^E` with `∂y = 0`, in ascending order.
pub fn enumerate_flows(graph: &Multigraph, sigma: &Orientation, group: &GroupSpec, budget: Budget) -> Result<Vec<Vec<usize>>> {
    graph.check_orientation(sigma)?;
    budget.admit(group.order(), graph.edge_count())?;
    let ends = edge_ends(graph, sigma);
    let mut scratch = vec![0; graph.vertex_count()];
    let mut out = Vec::new();
    for_each_uniform(group.order(), graph.edge_count(), |y| {
        if is_flow(&ends, group, y, &mut scratch) {
            out.push(y.to_vec());
        }
    });
    Ok(out)
}

/// The image `δ(Q^V)`, in ascending order.
pub fn enumerate_tensions(graph: &Multigraph, sigma: &Orientation, group: &GroupSpec, budget: Budget) -> Result<Vec<Vec<usize>>> {
    graph.check_orientation(sigma)?;
    budget.admit(group.order(), graph.vertex_count())?;
    let mut out = BTreeSet::new();
    for_each_uniform(group.order(), graph.vertex_count(), |x| {
        out.insert(graph.coboundary_unchecked(sigma, group, x));
    });
    Ok(out.into_iter().collect())
}

/// Hamming weight enumerator `Σ_{y ∈ S} s^{n-|y|}` as a coefficient vector:
/// entry `k` counts the vectors with exactly `k` zero coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingEnumerator {
    pub coeffs: Vec<u64>,
}

impl HammingEnumerator {
    pub fn eval_int(&self, s: &BigInt) -> BigInt {
        self.coeffs.iter().enumerate().map(|(k, &c)| BigInt::from(c) * num_traits::pow(s.clone(), k)).sum()
    }

    pub fn eval_rational(&self, s: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, &c)| acc + BigRational::from_integer(c.into()) * num_traits::pow(s.clone(), k))
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs.iter().enumerate().map(|(k, &c)| c as f64 * s.powu(k as u32)).sum()
    }
}

pub fn hwe(set: &[Vec<usize>], len: usize) -> HammingEnumerator {
    let mut coeffs = vec![0u64; len + 1];
    for y in set {
        coeffs[y.iter().filter(|&&c| c == 0).count()] += 1;
    }
    HammingEnumerator { coeffs }
}

/// A weight `h(b)` for every element `b` of `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    group: GroupSpec,
    weights: Vec<Complex64>,
}

impl WeightTable {
    pub fn new(group: &GroupSpec, weights: Vec<Complex64>) -> Result<Self> {
        if weights.len() != group.order() {
            return Err(Error::LengthMismatch { expected: group.order(), found: weights.len() });
        }
        Ok(WeightTable { group: group.clone(), weights })
    }

    pub fn ones(group: &GroupSpec) -> Self {
        WeightTable { group: group.clone(), weights: vec![Complex64::new(1.0, 0.0); group.order()] }
    }

    /// `h = (s, 1, …, 1)`, whose complete enumerator is the Hamming one.
    pub fn hamming(group: &GroupSpec, s: Complex64) -> Self {
        let mut h = Self::ones(group);
        h.weights[0] = s;
        h
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn get(&self, b: usize) -> Complex64 {
        self.weights[b]
    }

    pub fn as_qfunction(&self) -> QFunction {
        QFunction::from_values(&self.group, 1, self.weights.clone()).expect("length checked")
    }

    pub fn from_qfunction(f: &QFunction) -> Result<Self> {
        if f.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: f.arity() });
        }
        Self::new(f.group(), f.values().to_vec())
    }

    /// `h^F`.
    pub fn fourier(&self) -> Self {
        WeightTable { group: self.group.clone(), weights: fourier::fourier(&self.as_qfunction()).values().to_vec() }
    }
}

/// `cwe(S; h) = Σ_{y ∈ S} Π_e h(y_e)`.
pub fn cwe(set: &[Vec<usize>], h: &WeightTable) -> Complex64 {
    set.iter().map(|y| y.iter().map(|&c| h.get(c)).product::<Complex64>()).sum()
}

/// Coefficient `k` counts the vertex colourings with exactly `k`
/// monochromatic edges (loops are always monochromatic).
pub fn monochrome_coefficients(graph: &Multigraph, q: usize, budget: Budget) -> Result<Vec<u64>> {
    budget.admit(q, graph.vertex_count())?;
    let edges = graph.edges().to_vec();
    let m = edges.len();
    let mut coeffs = vec![0u64; m + 1];
    for_each_uniform(q, graph.vertex_count(), |x| {
        coeffs[edges.iter().filter(|&&(u, v)| x[u] == x[v]).count()] += 1;
    });
    Ok(coeffs)
}

/// `Σ_{x ∈ Q^V} t^{#monochromatic edges}`.
pub fn monochrome_polynomial(graph: &Multigraph, q: usize, t: Complex64, budget: Budget) -> Result<Complex64> {
    let coeffs = monochrome_coefficients(graph, q, budget)?;
    Ok(coeffs.iter().enumerate().map(|(k, &c)| c as f64 * t.powu(k as u32)).sum())
}
