//! Dense functions on `Q^d` and the unitary Fourier transform `F^{⊗d}`.
//!
//! Index convention: the tuple `(a_1, …, a_d)` is stored at
//! `Σ idx(a_i) q^{d-i}`, first coordinate most significant.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// A dense complex `q × q` matrix, row-major.
pub type SquareMatrix = Vec<Vec<Complex64>>;

#[derive(Debug, Clone, PartialEq)]
pub struct QFunction {
    group: GroupSpec,
    arity: usize,
    values: Vec<Complex64>,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl QFunction {
    pub fn zeros(group: &GroupSpec, arity: usize) -> Self {
        let len = group.order().pow(arity as u32);
        QFunction { group: group.clone(), arity, values: vec![Complex64::default(); len] }
    }

    pub fn from_values(group: &GroupSpec, arity: usize, values: Vec<Complex64>) -> Result<Self> {
        let len = group.order().pow(arity as u32);
        if values.len() != len {
            return Err(Error::LengthMismatch { expected: len, found: values.len() });
        }
        Ok(QFunction { group: group.clone(), arity, values })
    }

    pub fn from_real(group: &GroupSpec, arity: usize, values: &[f64]) -> Result<Self> {
        Self::from_values(group, arity, values.iter().map(|&x| c(x)).collect())
    }

    pub fn from_fn<F: FnMut(&[usize]) -> Complex64>(group: &GroupSpec, arity: usize, mut f: F) -> Self {
        let mut out = Self::zeros(group, arity);
        let q = group.order();
        let mut tuple = vec![0usize; arity];
        for slot in out.values.iter_mut() {
            *slot = f(&tuple);
            for i in (0..arity).rev() {
                tuple[i] += 1;
                if tuple[i] < q {
                    break;
                }
                tuple[i] = 0;
            }
        }
        out
    }

    pub fn indicator<P: FnMut(&[usize]) -> bool>(group: &GroupSpec, arity: usize, mut member: P) -> Self {
        Self::from_fn(group, arity, |t| if member(t) { c(1.0) } else { c(0.0) })
    }

    pub fn constant(group: &GroupSpec, arity: usize, value: Complex64) -> Self {
        Self::from_fn(group, arity, |_| value)
    }

    /// `1_{{0}^d}`.
    pub fn delta(group: &GroupSpec, arity: usize) -> Self {
        Self::indicator(group, arity, |t| t.iter().all(|&a| a == 0))
    }

    /// `1_{Monochrome ∩ Q^d}`.
    pub fn monochrome(group: &GroupSpec, arity: usize) -> Self {
        Self::indicator(group, arity, |t| t.windows(2).all(|w| w[0] == w[1]))
    }

    /// `1_{Zero-sum ∩ Q^d}`.
    pub fn zero_sum(group: &GroupSpec, arity: usize) -> Self {
        let g = group.clone();
        Self::indicator(group, arity, move |t| t.iter().fold(0, |acc, &a| g.add(acc, a)) == 0)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        let q = self.group.order();
        tuple.iter().fold(0, |acc, &a| acc * q + a)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let q = self.group.order();
        let mut t = vec![0; self.arity];
        for slot in t.iter_mut().rev() {
            *slot = index % q;
            index /= q;
        }
        t
    }

    pub fn at(&self, tuple: &[usize]) -> Complex64 {
        self.values[self.index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], value: Complex64) {
        let i = self.index(tuple);
        self.values[i] = value;
    }

    /// Support as index list.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != Complex64::default()).collect()
    }

    fn ensure_compatible(&self, other: &QFunction) -> Result<()> {
        self.group.ensure_same(&other.group)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn pointwise(&self, other: &QFunction) -> Result<QFunction> {
        self.ensure_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(QFunction { group: self.group.clone(), arity: self.arity, values })
    }

    pub fn scaled(&self, k: Complex64) -> QFunction {
        let values = self.values.iter().map(|v| v * k).collect();
        QFunction { group: self.group.clone(), arity: self.arity, values }
    }

    pub fn conj(&self) -> QFunction {
        let values = self.values.iter().map(|v| v.conj()).collect();
        QFunction { group: self.group.clone(), arity: self.arity, values }
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &QFunction) -> Result<f64> {
        self.ensure_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Real-bilinear pairing `(f, g) = Σ f(a) g(a)`.
    pub fn bilinear(&self, other: &QFunction) -> Result<Complex64> {
        self.ensure_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum())
    }

    /// Hermitian inner product `⟨f, g⟩ = Σ f(a) conj(g(a))`.
    pub fn hermitian(&self, other: &QFunction) -> Result<Complex64> {
        self.ensure_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum())
    }

    /// Applies `U` along every coordinate, i.e. `U^{⊗d} f`.
    fn apply_axiswise(&self, u: &SquareMatrix) -> QFunction {
        let q = self.group.order();
        let mut cur = self.values.clone();
        let mut next = vec![Complex64::default(); cur.len()];
        for axis in 0..self.arity {
            let stride = q.pow((self.arity - 1 - axis) as u32);
            let block = stride * q;
            for base in (0..cur.len()).step_by(block) {
                for offset in 0..stride {
                    for (a, row) in u.iter().enumerate() {
                        let mut acc = Complex64::default();
                        for (b, &ub) in row.iter().enumerate() {
                            acc += ub * cur[base + b * stride + offset];
                        }
                        next[base + a * stride + offset] = acc;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        QFunction { group: self.group.clone(), arity: self.arity, values: cur }
    }
}

/// The `q × q` unitary Fourier matrix `q^{-1/2} (χ(ab))`.
pub fn fourier_matrix(group: &GroupSpec) -> SquareMatrix {
    let scale = (group.order() as f64).sqrt().recip();
    group.character_table().into_iter().map(|row| row.into_iter().map(|z| z * scale).collect()).collect()
}

pub fn fourier(f: &QFunction) -> QFunction {
    f.apply_axiswise(&fourier_matrix(&f.group))
}

pub fn inverse_fourier(f: &QFunction) -> QFunction {
    let inv: SquareMatrix =
        fourier_matrix(&f.group).into_iter().map(|row| row.into_iter().map(|z| z.conj()).collect()).collect();
    f.apply_axiswise(&inv)
}

/// `f^N(a) = f(-a)`, componentwise on tuples.
pub fn negate(f: &QFunction) -> QFunction {
    let g = f.group.clone();
    QFunction::from_fn(&f.group, f.arity, |t| {
        let neg: Vec<usize> = t.iter().map(|&a| g.neg(a)).collect();
        f.at(&neg)
    })
}

/// `(f ∗ g)(a) = Σ_b f(a - b) g(b)` on `Q^d`.
pub fn convolve(f: &QFunction, g: &QFunction) -> Result<QFunction> {
    f.ensure_compatible(g)?;
    let group = f.group.clone();
    let tuples: Vec<Vec<usize>> = (0..g.len()).map(|i| g.tuple(i)).collect();
    Ok(QFunction::from_fn(&f.group, f.arity, |a| {
        let mut acc = Complex64::default();
        let mut diff = vec![0; a.len()];
        for (j, b) in tuples.iter().enumerate() {
            let gb = g.values[j];
            if gb == Complex64::default() {
                continue;
            }
            for i in 0..a.len() {
                diff[i] = group.sub(a[i], b[i]);
            }
            acc += f.at(&diff) * gb;
        }
        acc
    }))
}

/// `f^U = U^{⊗d} f`.
pub fn transform_by(f: &QFunction, u: &SquareMatrix) -> Result<QFunction> {
    let q = f.group.order();
    if u.len() != q || u.iter().any(|row| row.len() != q) {
        return Err(Error::LengthMismatch { expected: q, found: u.len() });
    }
    Ok(f.apply_axiswise(u))
}

/// `C^⊥ = {a : a·c = 0 for all c ∈ C}` for the set indicated by `support`.
pub fn orthogonal_submodule(indicator: &QFunction, max_terms: u64) -> Result<QFunction> {
    let n = indicator.len() as f64;
    if n * n > max_terms as f64 {
        return Err(Error::CapExceeded { estimate: n * n, cap: max_terms });
    }
    let group = indicator.group.clone();
    let members: Vec<Vec<usize>> = indicator.support().into_iter().map(|i| indicator.tuple(i)).collect();
    Ok(QFunction::indicator(&indicator.group, indicator.arity, |a| {
        members.iter().all(|cvec| group.dot(a, cvec) == 0)
    }))
}

/// Whether the indicated set is closed under addition and negation and contains 0.
pub fn is_submodule(indicator: &QFunction) -> bool {
    let g = indicator.group.clone();
    let members: Vec<Vec<usize>> = indicator.support().into_iter().map(|i| indicator.tuple(i)).collect();
    let zero = vec![0; indicator.arity];
    if indicator.at(&zero) == Complex64::default() {
        return false;
    }
    members.iter().all(|a| {
        members.iter().all(|b| {
            let s: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| g.add(x, y)).collect();
            indicator.at(&s) != Complex64::default()
        })
    })
}

/// Residual of `F^{⊗d} 1_C = q^{-d/2} |C| 1_{C^⊥}`.
pub fn submodule_transform_residual(indicator: &QFunction, max_terms: u64) -> Result<f64> {
    let perp = orthogonal_submodule(indicator, max_terms)?;
    let q = indicator.group.order() as f64;
    let size = indicator.support().len() as f64;
    let expected = perp.scaled(c(q.powf(-(indicator.arity as f64) / 2.0) * size));
    fourier(indicator).max_abs_diff(&expected)
}

/// A real orthogonal `q × q` matrix composed of `q` seeded Householder reflections.
pub fn random_orthogonal(q: usize, seed: u64) -> SquareMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::<f64>::identity(q, q);
    for _ in 0..q {
        let v = nalgebra::DVector::<f64>::from_fn(q, |_, _| rng.sample(StandardNormal));
        let norm2 = v.norm_squared();
        if norm2 < 1e-300 {
            continue;
        }
        let reflect = DMatrix::<f64>::identity(q, q) - (&v * v.transpose()) * (2.0 / norm2);
        m = reflect * m;
    }
    (0..q).map(|i| (0..q).map(|j| c(m[(i, j)])).collect()).collect()
}

/// Signed permutation matrix `U[a][perm[a]] = signs[a]`.
pub fn signed_permutation(perm: &[usize], signs: &[f64]) -> SquareMatrix {
    let q = perm.len();
    (0..q).map(|a| (0..q).map(|b| if perm[a] == b { c(signs[a]) } else { c(0.0) }).collect()).collect()
}

pub fn identity_matrix(q: usize) -> SquareMatrix {
    signed_permutation(&(0..q).collect::<Vec<_>>(), &vec![1.0; q])
}

/// `max |U Uᵀ - I|`.
pub fn orthogonality_residual(u: &SquareMatrix) -> f64 {
    let q = u.len();
    let mut worst: f64 = 0.0;
    for i in 0..q {
        for j in 0..q {
            let dot: Complex64 = (0..q).map(|k| u[i][k] * u[j][k]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - c(target)).norm());
        }
    }
    worst
}
