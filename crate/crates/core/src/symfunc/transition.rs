//! Per-degree transition data between the classical bases, built once and
//! then shared read-only.
//!
//! The power-sum basis is the internal pivot. For each degree the tables
//! hold the p-expansions of `e`, `h`, `m` and `s`; Schur functions come from
//! the Jacobi-Trudi determinant in the h-basis and the monomial expansions
//! from inverting the pairing matrix against `h` (since `<m_mu, h_nu> =
//! delta`).

use crate::la;
use crate::partition::{partitions_of, Partition};
use crate::qt::QtScalar;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub(crate) struct DegreeTables {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    e: OnceLock<Vec<Vec<QtScalar>>>,
    h: OnceLock<Vec<Vec<QtScalar>>>,
    s: OnceLock<Vec<Vec<QtScalar>>>,
    m: OnceLock<Vec<Vec<QtScalar>>>,
}

impl DegreeTables {
    /// Columns indexed like `parts`; rows are p-coordinates. Each family is
    /// built on first use: high-degree operator plumbing only ever touches
    /// the partition index.
    pub fn e_in_p(&self) -> &Vec<Vec<QtScalar>> {
        self.e.get_or_init(|| {
            self.parts.iter().map(|lam| self.to_column(&product_over_parts(lam, e_row))).collect()
        })
    }

    pub fn h_in_p(&self) -> &Vec<Vec<QtScalar>> {
        self.h.get_or_init(|| {
            self.parts.iter().map(|lam| self.to_column(&product_over_parts(lam, h_row))).collect()
        })
    }

    pub fn s_in_p(&self) -> &Vec<Vec<QtScalar>> {
        self.s.get_or_init(|| self.parts.iter().map(|lam| self.to_column(&schur_in_p(lam))).collect())
    }

    /// `<m_mu, h_nu> = delta`: the m columns are the inverse transpose of
    /// the h columns against the diagonal Hall Gram `diag(z_rho)`.
    pub fn m_in_p(&self) -> &Vec<Vec<QtScalar>> {
        self.m.get_or_init(|| {
            let n = self.parts.len();
            let h = self.h_in_p();
            let mut pairing = vec![vec![QtScalar::zero(); n]; n];
            for r in 0..n {
                for c in 0..n {
                    pairing[r][c] = &h[r][c] * &self.parts[c].z_lambda_scalar();
                }
            }
            let inv = la::invert(pairing).expect("h/p pairing is invertible");
            (0..n).map(|lam| (0..n).map(|row| inv[row][lam].clone()).collect()).collect()
        })
    }

    fn to_column(&self, exp: &PExp) -> Vec<QtScalar> {
        let mut col = vec![QtScalar::zero(); self.parts.len()];
        for (mu, c) in exp {
            col[self.index[mu]] = c.clone();
        }
        col
    }
}

static TABLES: OnceLock<Mutex<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();

pub(crate) fn tables(degree: u32) -> Arc<DegreeTables> {
    let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&degree) {
        return Arc::clone(t);
    }
    let parts = partitions_of(degree);
    let index: HashMap<Partition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let built = Arc::new(DegreeTables {
        parts,
        index,
        e: OnceLock::new(),
        h: OnceLock::new(),
        s: OnceLock::new(),
        m: OnceLock::new(),
    });
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(degree).or_insert(built))
}

/// Sparse p-expansion: map partition -> coefficient.
type PExp = HashMap<Partition, QtScalar>;

fn pexp_mul(a: &PExp, b: &PExp) -> PExp {
    let mut out = PExp::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            let key = la.merge(lb);
            let prod = ca * cb;
            match out.get_mut(&key) {
                Some(c) => *c = &*c + &prod,
                None => {
                    out.insert(key, prod);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// e_n = sum_{mu |- n} (-1)^{n - l(mu)} p_mu / z_mu.
pub(crate) fn e_row(n: u32) -> PExp {
    partitions_of(n)
        .into_iter()
        .map(|mu| {
            let sign = if (n as usize - mu.len()) % 2 == 0 { 1 } else { -1 };
            let c = QtScalar::from_bigint(BigInt::from(sign))
                .div(&mu.z_lambda_scalar())
                .expect("z_lambda nonzero");
            (mu, c)
        })
        .collect()
}

/// h_n = sum_{mu |- n} p_mu / z_mu.
pub(crate) fn h_row(n: u32) -> PExp {
    partitions_of(n)
        .into_iter()
        .map(|mu| {
            let c = QtScalar::one().div(&mu.z_lambda_scalar()).expect("z_lambda nonzero");
            (mu, c)
        })
        .collect()
}

fn product_over_parts(lambda: &Partition, row: impl Fn(u32) -> PExp) -> PExp {
    let mut acc: PExp = [(Partition::empty(), QtScalar::one())].into_iter().collect();
    for &p in lambda.parts() {
        acc = pexp_mul(&acc, &row(p));
    }
    acc
}

/// Jacobi-Trudi: s_lambda = det( h_{lambda_i - i + j} ), Leibniz expansion
/// with h_{<0} = 0 pruning.
fn schur_in_p(lambda: &Partition) -> PExp {
    let l = lambda.len();
    if l == 0 {
        return [(Partition::empty(), QtScalar::one())].into_iter().collect();
    }
    let mut acc = PExp::new();
    let mut perm: Vec<usize> = (0..l).collect();
    permute(&mut perm, 0, &mut |perm, sign| {
        let mut indices = Vec::with_capacity(l);
        for (i, &j) in perm.iter().enumerate() {
            let idx = lambda.parts()[i] as i64 - i as i64 + j as i64;
            if idx < 0 {
                return;
            }
            indices.push(idx as u32);
        }
        let mut prod: PExp = [(Partition::empty(), QtScalar::one())].into_iter().collect();
        for &k in &indices {
            if k > 0 {
                prod = pexp_mul(&prod, &h_row(k));
            }
        }
        let s = QtScalar::from_int(sign);
        for (mu, c) in prod {
            let add = &c * &s;
            match acc.get_mut(&mu) {
                Some(v) => *v = &*v + &add,
                None => {
                    acc.insert(mu, add);
                }
            }
        }
    });
    acc.retain(|_, c| !c.is_zero());
    acc
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], i64)) {
    let n = perm.len();
    if k == n {
        let sign = permutation_sign(perm);
        f(perm, sign);
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_dual_to_h() {
        // <m_mu, h_nu> = delta for degree 4
        let t = tables(4);
        let n = t.parts.len();
        for a in 0..n {
            for b in 0..n {
                let mut acc = QtScalar::zero();
                for r in 0..n {
                    let term = &(&t.m_in_p()[a][r] * &t.h_in_p()[b][r]) * &t.parts[r].z_lambda_scalar();
                    acc = &acc + &term;
                }
                let expect = if a == b { QtScalar::one() } else { QtScalar::zero() };
                assert_eq!(acc, expect, "mu={} nu={}", t.parts[a], t.parts[b]);
            }
        }
    }

    #[test]
    fn schur_orthonormal() {
        // <s_lambda, s_mu> = delta for degree <= 4
        for d in 0..=4u32 {
            let t = tables(d);
            let n = t.parts.len();
            for a in 0..n {
                for b in 0..n {
                    let mut acc = QtScalar::zero();
                    for r in 0..n {
                        let term =
                            &(&t.s_in_p()[a][r] * &t.s_in_p()[b][r]) * &t.parts[r].z_lambda_scalar();
                        acc = &acc + &term;
                    }
                    let expect = if a == b { QtScalar::one() } else { QtScalar::zero() };
                    assert_eq!(acc, expect);
                }
            }
        }
    }
}
