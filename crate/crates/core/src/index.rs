//! Multi-indices and parameter vectors with tail sums.
//!
//! Positions are 1-based in `tail`, so `tail(j)` is `|v^j| = v_j + ... + v_last`
//! and any `j` past the end gives 0.

use serde::{Deserialize, Serialize};
use std::ops::Index;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(entries: &[usize]) -> Self {
        Self(entries.to_vec())
    }

    pub fn zeros(r: usize) -> Self {
        Self(vec![0; r])
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn tail(&self, j: usize) -> usize {
        self.0.iter().skip(j.saturating_sub(1)).sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// All multi-indices of length `r` with total degree exactly `d`,
    /// in lexicographically decreasing order of the leading entries.
    pub fn with_total(r: usize, d: usize) -> Vec<MultiIndex> {
        fn rec(r: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if r == 1 {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in (0..=d).rev() {
                prefix.push(k);
                rec(r - 1, d - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if r > 0 {
            rec(r, d, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All multi-indices of length `r` with total degree at most `d`, graded.
    pub fn up_to_total(r: usize, d: usize) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| Self::with_total(r, k)).collect()
    }

    /// All multi-indices of length `r` with every entry at most `m`.
    pub fn boxed(r: usize, m: usize) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::new())];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=m).map(move |k| {
                        let mut v = p.0.clone();
                        v.push(k);
                        MultiIndex(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Index<usize> for MultiIndex {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// Real parameter vector such as `a`, `b` or `α` (length `r + 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector(pub Vec<f64>);

pub type AlphaVector = ParamVector;

impl ParamVector {
    pub fn new(entries: &[f64]) -> Self {
        Self(entries.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn tail(&self, j: usize) -> f64 {
        self.0.iter().skip(j.saturating_sub(1)).sum()
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    /// Copy with entry `i` (0-based) shifted by `d`.
    pub fn shifted(&self, i: usize, d: f64) -> Self {
        let mut v = self.0.clone();
        v[i] += d;
        Self(v)
    }

    pub fn all_greater(&self, bound: f64) -> bool {
        self.0.iter().all(|&x| x > bound)
    }
}

impl Index<usize> for ParamVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Binomial coefficient on integers.
pub fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
