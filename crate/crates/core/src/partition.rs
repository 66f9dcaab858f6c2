//! Integer partitions: enumeration, dominance order, transpose, `z_lambda`.

use crate::error::{Error, Result};
use crate::qt::QtScalar;
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

/// A partition as a weakly decreasing list of positive parts. The derived
/// Ord is lexicographic on the part lists, which gives a deterministic total
/// order for map keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::BadPartition(format!("{:?}", parts)));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single(k: u32) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of the part `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    /// z_lambda = prod_i m_i! * i^{m_i}.
    pub fn z_lambda(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0u32;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
            }
            for k in 1..=m {
                z *= BigInt::from(k);
            }
            z *= BigInt::from(part).pow(m);
        }
        z
    }

    pub fn z_lambda_scalar(&self) -> QtScalar {
        QtScalar::from_bigint(self.z_lambda())
    }

    pub fn transpose(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0];
        let parts = (1..=cols)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Cells (row, col), both 1-based, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }

    /// Dominance order: self <= other (requires equal sizes to be comparable).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut sa = 0u32;
        let mut sb = 0u32;
        for i in 0..self.0.len().max(other.0.len()) {
            sa += self.0.get(i).copied().unwrap_or(0);
            sb += other.0.get(i).copied().unwrap_or(0);
            if sa > sb {
                return false;
            }
        }
        true
    }

    /// Partitions obtained by adding exactly one cell.
    pub fn one_cell_additions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let n = self.0.len();
        for i in 0..n {
            if i == 0 || self.0[i] < self.0[i - 1] {
                let mut v = self.0.clone();
                v[i] += 1;
                out.push(Partition(v));
            }
        }
        let mut v = self.0.clone();
        v.push(1);
        out.push(Partition(v));
        out
    }

    /// Union of the part multisets.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Remove one part equal to `k`, if present.
    pub fn remove_part(&self, k: u32) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in descending lexicographic order, so `(n)` is first
/// and `(1^n)` is last.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        let top = remaining.min(max_part);
        for p in (1..=top).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> usize {
    partitions_of(n).len()
}
