//! The weighted (q,t)-tau function and the identities built around it.
//!
//! The truncated tau function is stored per z-degree as a map from pairs of
//! partitions to scalars (p-basis coordinates in the X and Y alphabets). Its
//! degree-m component is `sum_{lambda |- m} w_lambda H_lambda[X] H_lambda[Y]`
//! with `w_lambda = prod_cells G(q^(j-1) t^(i-1)) / norm_lambda`. The module
//! also hosts the differential-equation check, the operator-generated basis
//! `a_{F,lambda}` with its determinant, the dual-basis reconstruction of tau,
//! and the extended-delta identity.

use crate::error::{Error, Result};
use crate::la;
use crate::linop::GradedOperator;
use crate::macdonald::{
    delta_eigenvalue, expand_in_mac, mac_basis, mac_recombine, pi_eigenvalue, DeltaKind,
    WeightSpec,
};
use crate::partition::{partitions_of, Partition};
use crate::paths::{a_apply, a_op, r_apply, AOpEngine, Engine};
use crate::qt::QtScalar;
use crate::symfunc::{star, Basis, SymFunc};
use std::collections::BTreeMap;

/// One z-degree of a tensor series: map `(mu_X, mu_Y) -> coefficient` over
/// p-basis pairs.
pub type TensorComponent = BTreeMap<(Partition, Partition), QtScalar>;

/// Truncation of a series in `z` with values in `Lambda_X (x) Lambda_Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSeries {
    zmax: u32,
    comps: Vec<TensorComponent>,
}

impl TensorSeries {
    pub fn new(zmax: u32, comps: Vec<TensorComponent>) -> Result<Self> {
        if comps.len() != zmax as usize + 1 {
            return Err(Error::SizeMismatch(format!(
                "expected {} components, got {}",
                zmax + 1,
                comps.len()
            )));
        }
        for (m, comp) in comps.iter().enumerate() {
            for (mu_x, mu_y) in comp.keys() {
                if mu_x.size() as usize != m || mu_y.size() as usize != m {
                    return Err(Error::SizeMismatch(format!(
                        "z^{} component supported on ({}, {})",
                        m, mu_x, mu_y
                    )));
                }
            }
        }
        Ok(TensorSeries { zmax, comps })
    }

    pub fn zmax(&self) -> u32 {
        self.zmax
    }

    pub fn component(&self, m: u32) -> &TensorComponent {
        &self.comps[m as usize]
    }

    pub fn component_mut(&mut self, m: u32) -> &mut TensorComponent {
        &mut self.comps[m as usize]
    }

    /// Re-index a component by Macdonald-basis pairs, for reporting.
    pub fn htilde_component(&self, m: u32) -> Result<BTreeMap<(Partition, Partition), QtScalar>> {
        let comp = self.component(m);
        // expand on the X index first, then on the Y index
        let mut x_expanded: BTreeMap<(Partition, Partition), QtScalar> = BTreeMap::new();
        for ((mu_x, mu_y), c) in comp {
            let f = SymFunc::term(Basis::P, mu_x.clone(), c.clone());
            for (lam, v) in expand_in_mac(&f)? {
                insert_tensor(&mut x_expanded, (lam, mu_y.clone()), v);
            }
        }
        let mut out = BTreeMap::new();
        for ((lam, mu_y), c) in x_expanded {
            let f = SymFunc::term(Basis::P, mu_y, c);
            for (rho, v) in expand_in_mac(&f)? {
                insert_tensor(&mut out, (lam.clone(), rho), v);
            }
        }
        Ok(out)
    }
}

fn insert_tensor(map: &mut TensorComponent, key: (Partition, Partition), val: QtScalar) {
    if val.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(c) => {
            *c = &*c + &val;
            if c.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, val);
        }
    }
}

/// Tensor product of two symmetric functions into a component map.
fn outer_product(map: &mut TensorComponent, fx: &SymFunc, fy: &SymFunc, w: &QtScalar) {
    for (mu_x, cx) in fx.coeffs() {
        for (mu_y, cy) in fy.coeffs() {
            insert_tensor(map, (mu_x.clone(), mu_y.clone()), &(cx * cy) * w);
        }
    }
}

/// Build the truncated tau function for the weight `G = G_1/G_2`.
pub fn tau_build(g1: &WeightSpec, g2: &WeightSpec, zmax: u32) -> Result<TensorSeries> {
    let mut comps = Vec::with_capacity(zmax as usize + 1);
    for m in 0..=zmax {
        let mut comp = TensorComponent::new();
        let data = mac_basis(m)?;
        for entry in &data.entries {
            let weight = pi_eigenvalue(g1, g2, &entry.lambda)?.div(&entry.norm_star)?;
            outer_product(&mut comp, &entry.htilde_p, &entry.htilde_p, &weight);
        }
        comps.push(comp);
    }
    TensorSeries::new(zmax, comps)
}

/// Apply a graded operator to the X index of a component.
pub fn apply_x(op: &GradedOperator, comp: &TensorComponent) -> Result<TensorComponent> {
    let mut out = TensorComponent::new();
    let mut cache: BTreeMap<Partition, SymFunc> = BTreeMap::new();
    for ((mu_x, mu_y), c) in comp {
        let img = match cache.get(mu_x) {
            Some(f) => f.clone(),
            None => {
                let f = op.column(mu_x)?;
                cache.insert(mu_x.clone(), f.clone());
                f
            }
        };
        for (lam, v) in img.coeffs() {
            insert_tensor(&mut out, (lam.clone(), mu_y.clone()), v * c);
        }
    }
    Ok(out)
}

/// Apply a graded operator to the Y index of a component.
pub fn apply_y(op: &GradedOperator, comp: &TensorComponent) -> Result<TensorComponent> {
    let mut out = TensorComponent::new();
    let mut cache: BTreeMap<Partition, SymFunc> = BTreeMap::new();
    for ((mu_x, mu_y), c) in comp {
        let img = match cache.get(mu_y) {
            Some(f) => f.clone(),
            None => {
                let f = op.column(mu_y)?;
                cache.insert(mu_y.clone(), f.clone());
                f
            }
        };
        for (lam, v) in img.coeffs() {
            insert_tensor(&mut out, (mu_x.clone(), lam.clone()), v * c);
        }
    }
    Ok(out)
}

/// Check the functional equation
/// `z^l A^(l)_{G_1}(X) tau = (A^(l)_{G_2}(Y))* tau` coefficient-wise on the
/// z-window, returning the first failing z-degree on the side.
pub fn pde_check(g1: &WeightSpec, g2: &WeightSpec, ell: u32, zmax: u32) -> Result<bool> {
    let tau = tau_build(g1, g2, zmax)?;
    pde_check_on(&tau, g1, g2, ell, zmax)
}

/// Same check against a caller-supplied series (used by the soundness
/// mutation tests).
pub fn pde_check_on(
    tau: &TensorSeries,
    g1: &WeightSpec,
    g2: &WeightSpec,
    ell: u32,
    zmax: u32,
) -> Result<bool> {
    if zmax < ell {
        return Err(Error::InvalidParameter("zmax must be at least ell".into()));
    }
    let a1 = a_op(g1, ell, zmax, AOpEngine::PathSum)?;
    let a2_star = a_op(g2, ell, zmax, AOpEngine::PathSum)?.star_adjoint()?;
    for m in 0..=(zmax - ell) {
        let lhs = apply_x(&a1, tau.component(m))?;
        let rhs = apply_y(&a2_star, tau.component(m + ell))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a_{F,lambda} = A_F^(lambda_1) ... A_F^(lambda_l) . 1` (rightmost part
/// applied first).
pub fn a_function(spec: &WeightSpec, lambda: &Partition, window: u32) -> Result<SymFunc> {
    if lambda.size() > window {
        return Err(Error::WindowExceeded {
            needed: lambda.size() as i64,
            window: window as i64,
        });
    }
    let mut cur = SymFunc::one();
    for &part in lambda.parts().iter().rev() {
        cur = a_apply(spec, part, &cur, Engine::Increments)?;
    }
    Ok(cur)
}

/// Determinant of the matrix expressing `(a_{F,lambda})_{lambda |- n}` in
/// the elementary basis.
pub fn basis_det(spec: &WeightSpec, n: u32) -> Result<QtScalar> {
    Ok(la::determinant(basis_matrix(spec, n)?))
}

/// The matrix `[e_mu] a_{F,lambda}` with rows `mu` and columns `lambda` in
/// the shared partition order.
pub fn basis_matrix(spec: &WeightSpec, n: u32) -> Result<Vec<Vec<QtScalar>>> {
    let parts = partitions_of(n);
    let dim = parts.len();
    let mut mat = vec![vec![QtScalar::zero(); dim]; dim];
    for (col, lambda) in parts.iter().enumerate() {
        let in_e = a_function(spec, lambda, n)?.convert(Basis::E)?;
        for (row, mu) in parts.iter().enumerate() {
            mat[row][col] = in_e.coeff(mu);
        }
    }
    Ok(mat)
}

/// Reconstruct the tau series from the functional equations alone: compute
/// the operator-generated functions for both weights, invert the star Gram
/// of the `G_2` family, and assemble `sum z^|lambda| a_{G_1,lambda}[X]
/// b_{G_2,lambda}[Y]` with the dual basis `b`.
pub fn tau_reconstruct(g1: &WeightSpec, g2: &WeightSpec, zmax: u32) -> Result<TensorSeries> {
    let mut comps = Vec::with_capacity(zmax as usize + 1);
    for m in 0..=zmax {
        let parts = partitions_of(m);
        let dim = parts.len();
        let a1: Vec<SymFunc> =
            parts.iter().map(|l| a_function(g1, l, m)).collect::<Result<_>>()?;
        let a2: Vec<SymFunc> =
            parts.iter().map(|l| a_function(g2, l, m)).collect::<Result<_>>()?;
        let mut gram = vec![vec![QtScalar::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                gram[i][j] = star(&a2[i], &a2[j])?;
            }
        }
        let inv = la::invert(gram)?;
        // b_i = sum_j inv[i][j] a2_j satisfies star(a2_i, b_j) = delta
        let mut comp = TensorComponent::new();
        for i in 0..dim {
            let mut b_i = SymFunc::zero(Basis::P);
            for (j, f) in a2.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    b_i = b_i.add(&f.scale(&inv[i][j]))?;
                }
            }
            outer_product(&mut comp, &a1[i], &b_i, &QtScalar::one());
        }
        comps.push(comp);
    }
    TensorSeries::new(zmax, comps)
}

/// Both sides of the extended-delta identity:
/// `(-1)^n Delta_{h_l} Delta'_{e_{k-1}} e_n` against the double sum of path
/// operators applied to 1.
pub fn ext_delta_sides(n: u32, k: u32, l: u32) -> Result<(SymFunc, SymFunc)> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 0 < k <= n, got k={k}, n={n}")));
    }
    // left side: diagonal operators on the Macdonald expansion of e_n
    let expansion = expand_in_mac(&SymFunc::e_n(n))?;
    let mut scaled = BTreeMap::new();
    for (lambda, c) in expansion {
        let ev_h = delta_eigenvalue(DeltaKind::H, l, &lambda)?;
        let ev_e = delta_eigenvalue(DeltaKind::EPrime, k - 1, &lambda)?;
        let v = &(&c * &ev_h) * &ev_e;
        if !v.is_zero() {
            scaled.insert(lambda, v);
        }
    }
    let sign = QtScalar::from_int(if n % 2 == 0 { 1 } else { -1 });
    let lhs = mac_recombine(&scaled)?.scale(&sign);

    // right side: sum over beta in Z_{>=0}^(k+l) of size n-k and binary
    // beta' of length k+l-1 with l ones, of R_(beta + 1 - (0, beta')) . 1
    let len = (k + l) as usize;
    let mut rhs = SymFunc::zero(Basis::P);
    for beta in compositions((n - k) as i64, len) {
        for bprime in binary_words(len - 1, l as usize) {
            let mut idx = Vec::with_capacity(len);
            idx.push(beta[0] + 1);
            for i in 1..len {
                idx.push(beta[i] + 1 - bprime[i - 1]);
            }
            rhs = rhs.add(&r_apply(&idx, &SymFunc::one(), Engine::Increments)?)?;
        }
    }
    Ok((lhs, rhs))
}

/// The extended-delta identity as a boolean check.
pub fn ext_delta_check(n: u32, k: u32, l: u32) -> Result<bool> {
    let (lhs, rhs) = ext_delta_sides(n, k, l)?;
    Ok(lhs == rhs)
}

/// All weak compositions of `total` into `len` nonnegative parts.
pub fn compositions(total: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// All 0/1 words of the given length with exactly `ones` ones.
pub fn binary_words(len: usize, ones: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if ones > len {
        return out;
    }
    let mut cur = vec![0i64; len];
    fn rec(i: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left > cur.len() - i {
            return;
        }
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        cur[i] = 0;
        rec(i + 1, left, cur, out);
        if left > 0 {
            cur[i] = 1;
            rec(i + 1, left - 1, cur, out);
            cur[i] = 0;
        }
    }
    rec(0, ones, &mut cur, &mut out);
    out
}
