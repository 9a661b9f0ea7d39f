//! Finite abelian groups carrying a commutative ring structure and a
//! generating character.
//!
//! Elements are stored as dense indices `0..q`. For a product of cyclic groups
//! `Z_{n1} × … × Z_{nr}` the index is the mixed-radix number of the residue
//! tuple, first factor most significant. For `F4` the index is `c0 + 2*c1` for
//! the element `c0 + c1*ω`, so `0, 1, ω, ω̄` are `0, 1, 2, 3`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingFlavor {
    /// Componentwise ring on a product of cyclic groups.
    Cyclic,
    /// The field with four elements.
    F4,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<usize>,
    flavor: RingFlavor,
}

/// An element of a [`GroupSpec`], given as residues (or an `F4` symbol).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElem {
    Residues(Vec<usize>),
    F4(F4Symbol),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum F4Symbol {
    Zero,
    One,
    Omega,
    OmegaBar,
}

// Multiplication table of F4 in index order 0, 1, ω, ω̄.
const F4_MUL: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl GroupSpec {
    pub fn cyclic(n: usize) -> Self {
        Self::product(&[n]).expect("cyclic order must be positive")
    }

    pub fn product(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::Precondition(format!("invalid cyclic factors {factors:?}")));
        }
        Ok(GroupSpec { factors: factors.to_vec(), flavor: RingFlavor::Cyclic })
    }

    pub fn f4() -> Self {
        GroupSpec { factors: vec![2, 2], flavor: RingFlavor::F4 }
    }

    /// Parses `n`, `n1xn2x…` or `f4`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("f4") {
            return Ok(Self::f4());
        }
        let factors = t
            .split(['x', 'X'])
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Precondition(format!("cannot parse group '{text}'")))?;
        Self::product(&factors)
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn flavor(&self) -> RingFlavor {
        self.flavor
    }

    pub fn is_cyclic(&self) -> bool {
        self.flavor == RingFlavor::Cyclic && self.factors.len() == 1
    }

    fn residues(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        let mut rest = a;
        for (i, &n) in self.factors.iter().enumerate().rev() {
            out[i] = rest % n;
            rest /= n;
        }
        out
    }

    fn from_residues(&self, r: &[usize]) -> usize {
        r.iter().zip(&self.factors).fold(0, |acc, (&x, &n)| acc * n + x % n)
    }

    pub fn elem(&self, a: usize) -> GroupElem {
        match self.flavor {
            RingFlavor::F4 => GroupElem::F4(match a {
                0 => F4Symbol::Zero,
                1 => F4Symbol::One,
                2 => F4Symbol::Omega,
                _ => F4Symbol::OmegaBar,
            }),
            RingFlavor::Cyclic => GroupElem::Residues(self.residues(a)),
        }
    }

    pub fn index_of(&self, e: &GroupElem) -> Result<usize> {
        match (self.flavor, e) {
            (RingFlavor::F4, GroupElem::F4(s)) => Ok(*s as usize),
            (RingFlavor::Cyclic, GroupElem::Residues(r)) if r.len() == self.factors.len() => {
                for (i, (&x, &n)) in r.iter().zip(&self.factors).enumerate() {
                    if x >= n {
                        return Err(Error::OutOfRange { what: "residue", index: i, size: n });
                    }
                }
                Ok(self.from_residues(r))
            }
            _ => Err(Error::Precondition(format!("element {e:?} does not belong to {self}"))),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match self.flavor {
            RingFlavor::F4 => a ^ b,
            RingFlavor::Cyclic => {
                if let [n] = self.factors[..] {
                    return (a + b) % n;
                }
                let (ra, rb) = (self.residues(a), self.residues(b));
                let sum: Vec<usize> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
                self.from_residues(&sum)
            }
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match self.flavor {
            RingFlavor::F4 => a,
            RingFlavor::Cyclic => {
                if let [n] = self.factors[..] {
                    return (n - a) % n;
                }
                let r: Vec<usize> =
                    self.residues(a).iter().zip(&self.factors).map(|(&x, &n)| (n - x) % n).collect();
                self.from_residues(&r)
            }
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Scales `a` by an integer (repeated addition).
    pub fn scale(&self, k: i64, a: usize) -> usize {
        let base = if k < 0 { self.neg(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, base);
        }
        acc
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.flavor {
            RingFlavor::F4 => F4_MUL[a][b],
            RingFlavor::Cyclic => {
                if let [n] = self.factors[..] {
                    return (a * b) % n;
                }
                let (ra, rb) = (self.residues(a), self.residues(b));
                let prod: Vec<usize> = ra.iter().zip(&rb).map(|(x, y)| x * y).collect();
                self.from_residues(&prod)
            }
        }
    }

    /// The generating character `χ`.
    pub fn chi(&self, a: usize) -> Complex64 {
        match self.flavor {
            RingFlavor::F4 => {
                // χ(x) = (-1)^Tr(x), Tr(x) = x + x².
                let trace = self.add(a, F4_MUL[a][a]);
                debug_assert!(trace <= 1);
                Complex64::new(if trace == 0 { 1.0 } else { -1.0 }, 0.0)
            }
            RingFlavor::Cyclic => {
                let phase: f64 = self
                    .residues(a)
                    .iter()
                    .zip(&self.factors)
                    .map(|(&x, &n)| x as f64 / n as f64)
                    .sum();
                Complex64::from_polar(1.0, 2.0 * PI * phase)
            }
        }
    }

    /// `χ_a(b) = χ(ab)`.
    pub fn pairing(&self, a: usize, b: usize) -> Complex64 {
        self.chi(self.mul(a, b))
    }

    /// Character table `χ(ab)` as a dense `q × q` matrix.
    pub fn character_table(&self) -> Vec<Vec<Complex64>> {
        let q = self.order();
        (0..q).map(|a| (0..q).map(|b| self.pairing(a, b)).collect()).collect()
    }

    /// Dot product on `Q^d` using the ring multiplication.
    pub fn dot(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub(crate) fn ensure_same(&self, other: &GroupSpec) -> Result<()> {
        if self != other {
            return Err(Error::GroupMismatch { expected: self.to_string(), found: other.to_string() });
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            RingFlavor::F4 => write!(f, "f4"),
            RingFlavor::Cyclic => {
                let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}
