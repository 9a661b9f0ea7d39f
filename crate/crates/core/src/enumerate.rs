//! Exhaustive mixed-radix enumeration with a term budget.
//!
//! Configurations are visited in ascending mixed-radix order (first site most
//! significant). The sum is split into contiguous blocks by leading digits,
//! blocks are reduced in parallel, and the block totals are added in block
//! order, so results do not depend on the thread count.

use rayon::prelude::*;
use std::ops::Add;

use crate::error::{Error, Result};

/// Upper bound on the number of configurations a single evaluation may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT_TERMS: u64 = 100_000_000;

    pub fn terms(self) -> u64 {
        self.0
    }

    /// Returns `radix^sites` if it fits the budget.
    pub fn admit(self, radix: usize, sites: usize) -> Result<u64> {
        let estimate = (radix as f64).powi(sites as i32);
        if estimate > self.0 as f64 {
            return Err(Error::CapExceeded { estimate, cap: self.0 });
        }
        Ok((radix as u64).pow(sites as u32))
    }

    /// Admits a product of independent per-site ranges.
    pub fn admit_product(self, radices: &[usize]) -> Result<u64> {
        let estimate: f64 = radices.iter().map(|&r| r as f64).product();
        if estimate > self.0 as f64 {
            return Err(Error::CapExceeded { estimate, cap: self.0 });
        }
        Ok(radices.iter().map(|&r| r as u64).product())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT_TERMS)
    }
}

/// Sums `term(config)` over every `config` in `radices[0] × … × radices[n-1]`.
pub fn sum_product<T, F>(radices: &[usize], term: F) -> T
where
    T: Add<Output = T> + Send + Default,
    F: Fn(&[usize]) -> T + Sync,
{
    if radices.contains(&0) {
        return T::default();
    }
    let n = radices.len();
    // Leading digits that index parallel blocks.
    let mut prefix = 0;
    let mut blocks = 1usize;
    while prefix < n && blocks < 512 {
        blocks *= radices[prefix];
        prefix += 1;
    }
    let partials: Vec<T> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut config = vec![0usize; n];
            let mut rest = block;
            for i in (0..prefix).rev() {
                config[i] = rest % radices[i];
                rest /= radices[i];
            }
            let mut acc = T::default();
            loop {
                acc = acc + term(&config);
                // Odometer over the suffix digits.
                let mut i = n;
                loop {
                    if i == prefix {
                        return acc;
                    }
                    i -= 1;
                    config[i] += 1;
                    if config[i] < radices[i] {
                        break;
                    }
                    config[i] = 0;
                }
            }
        })
        .collect();
    partials.into_iter().fold(T::default(), |a, b| a + b)
}

/// Sums over `{0..radix}^sites`.
pub fn sum_uniform<T, F>(radix: usize, sites: usize, term: F) -> T
where
    T: Add<Output = T> + Send + Default,
    F: Fn(&[usize]) -> T + Sync,
{
    sum_product(&vec![radix; sites], term)
}

/// Visits every configuration sequentially, in ascending order.
pub fn for_each_uniform<F: FnMut(&[usize])>(radix: usize, sites: usize, mut visit: F) {
    if radix == 0 && sites > 0 {
        return;
    }
    let mut config = vec![0usize; sites];
    loop {
        visit(&config);
        let mut i = sites;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            config[i] += 1;
            if config[i] < radix {
                break;
            }
            config[i] = 0;
        }
    }
}
