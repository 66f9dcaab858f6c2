//! Truncated multivariate Laurent arithmetic in `z_1..z_l` and the
//! normal-ordered coefficient-extraction formulas.
//!
//! Every rational factor `1/(1 - c z_j/z_i)` with `i < j` is expanded as a
//! geometric series in `z_j/z_i` and truncated at a conservative order; the
//! verification suites re-run extractions with the order raised by two to
//! detect under-truncation. The three entry points are the closed product
//! formula for `R_betas . 1`, the basis-coefficient extractions against the
//! dual Cauchy kernels, and the iterated-extraction engine for products of
//! `D(z)` fields.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::paths::{dk_apply, BetaSeq};
use crate::qt::QtScalar;
use crate::symfunc::{eval_monomials, Basis, SymFunc};
use std::collections::BTreeMap;

/// A finitely supported Laurent polynomial in `vars` variables with scalar
/// coefficients, keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    vars: usize,
    terms: BTreeMap<Vec<i64>, QtScalar>,
}

impl LaurentSeries {
    pub fn zero(vars: usize) -> Self {
        LaurentSeries { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: QtScalar) -> Self {
        let mut s = Self::zero(vars);
        s.add_term(vec![0; vars], c);
        s
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, QtScalar::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: QtScalar) {
        debug_assert_eq!(exps.len(), self.vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> QtScalar {
        self.terms.get(exps).cloned().unwrap_or_else(QtScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QtScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QtScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        LaurentSeries { vars: self.vars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Ratio factors
// ---------------------------------------------------------------------------

/// Truncated geometric series `sum_{n=0}^T c^n (z_j/z_i)^n`; requires `i < j`
/// (expansions run in later-over-earlier ratios).
pub fn geom_factor(vars: usize, c: &QtScalar, i: usize, j: usize, trunc: u32) -> Result<LaurentSeries> {
    if i >= j || j >= vars {
        return Err(Error::InvalidParameter(format!(
            "geometric factor needs i < j < vars, got ({i},{j}) with {vars}"
        )));
    }
    let mut out = LaurentSeries::zero(vars);
    let mut coeff = QtScalar::one();
    for n in 0..=trunc as i64 {
        if coeff.is_zero() {
            break;
        }
        let mut e = vec![0i64; vars];
        e[i] = -n;
        e[j] = n;
        out.add_term(e, coeff.clone());
        coeff = &coeff * c;
    }
    Ok(out)
}

fn pair_linear(vars: usize, c: &QtScalar, i: usize, j: usize) -> LaurentSeries {
    // 1 - c z_j/z_i
    let mut out = LaurentSeries::one(vars);
    let mut e = vec![0i64; vars];
    e[i] = -1;
    e[j] = 1;
    out.add_term(e, -c);
    out
}

/// Drop terms whose `z_j` exponent exceeds `trunc` (all factors here involve
/// a single ordered pair, so the `z_j` exponent is the ratio order).
fn truncate_pair(s: LaurentSeries, j: usize, trunc: u32) -> LaurentSeries {
    let mut out = LaurentSeries::zero(s.vars);
    for (e, c) in s.terms {
        if e[j] <= trunc as i64 {
            out.terms.insert(e, c);
        }
    }
    out
}

/// `omega(z_j/z_i) = (1-x)(1-qtx) / ((1-qx)(1-tx))` truncated at order
/// `trunc` in `x = z_j/z_i`.
pub fn omega_factor(vars: usize, i: usize, j: usize, trunc: u32) -> Result<LaurentSeries> {
    let g = geom_factor(vars, &QtScalar::q(), i, j, trunc)?
        .mul(&geom_factor(vars, &QtScalar::t(), i, j, trunc)?);
    let num = pair_linear(vars, &QtScalar::one(), i, j).mul(&pair_linear(vars, &QtScalar::qt(), i, j));
    Ok(truncate_pair(num.mul(&g), j, trunc))
}

/// `(1-x)/((1-qx)(1-tx))` truncated, `x = z_j/z_i`.
fn ratio_frac_factor(vars: usize, i: usize, j: usize, trunc: u32) -> Result<LaurentSeries> {
    let g = geom_factor(vars, &QtScalar::q(), i, j, trunc)?
        .mul(&geom_factor(vars, &QtScalar::t(), i, j, trunc)?);
    let num = pair_linear(vars, &QtScalar::one(), i, j);
    Ok(truncate_pair(num.mul(&g), j, trunc))
}

/// Conservative truncation order for the target exponents `beta` acting on
/// degree-`d` input: every absorbed ratio power is bounded by the positive
/// content plus the degree.
pub fn default_truncation(beta: &[i64], d: u32) -> u32 {
    let pos: i64 = beta.iter().map(|&b| b.max(0)).sum();
    (pos + d as i64 + 1).max(1) as u32
}

/// Product over ordered pairs of `(1-x)/((1-qx)(1-tx))`, with the extra
/// `(1-qt x)` on non-consecutive pairs. Any extraction against these factors
/// pairs the result with an alphabet part of total degree `n = sum beta`,
/// so only exponents with `beta_i - n <= e_i <= beta_i` can contribute;
/// terms are pruned against those bounds as soon as a coordinate stops
/// receiving additions (pairs are processed by first index) or stops
/// receiving subtractions (its own first-index block is done).
pub fn ratio_product(betas: &BetaSeq, trunc: u32) -> Result<LaurentSeries> {
    let entries = betas.concat();
    let l = entries.len();
    let n: i64 = entries.iter().sum::<i64>().max(0);
    let mut acc = LaurentSeries::one(l);
    for i in 0..l {
        for j in (i + 1)..l {
            let mut factor = ratio_frac_factor(l, i, j, trunc)?;
            if betas.is_ni(i, j) {
                factor = truncate_pair(factor.mul(&pair_linear(l, &QtScalar::qt(), i, j)), j, trunc);
            }
            acc = acc.mul(&factor);
            // coordinates up to i have no additions left; earlier ones are
            // fully settled
            acc = prune(acc, &entries, n, i, i);
        }
        acc = prune(acc, &entries, n, i, i + 1);
    }
    Ok(acc)
}

fn prune(acc: LaurentSeries, entries: &[i64], n: i64, add_done: usize, sub_done: usize) -> LaurentSeries {
    let mut out = LaurentSeries::zero(acc.vars);
    'terms: for (e, c) in acc.terms {
        let mut partial = 0i64;
        for (k, (&exp, &beta)) in e.iter().zip(entries).enumerate() {
            if k <= add_done && exp < beta - n {
                continue 'terms;
            }
            if k < sub_done {
                if exp > beta {
                    continue 'terms;
                }
                partial += beta - exp;
                if partial > n {
                    continue 'terms;
                }
            }
        }
        out.terms.insert(e, c);
    }
    out
}

// ---------------------------------------------------------------------------
// Closed formulas
// ---------------------------------------------------------------------------

/// `R_betas . 1` through the normal-ordered product formula: the coefficient
/// of `z^beta` in `prod (1-x)/((1-qx)(1-tx)) prod_NI (1-qtx) Omega[-sum z_i X]`,
/// assembled as a symmetric function of degree `sum beta`.
pub fn explicit_rhs(betas: &BetaSeq) -> Result<SymFunc> {
    explicit_rhs_with(betas, default_truncation(&betas.concat(), 0))
}

/// Same with an explicit truncation order (used by the stability check).
pub fn explicit_rhs_with(betas: &BetaSeq, trunc: u32) -> Result<SymFunc> {
    let entries = betas.concat();
    if entries.is_empty() {
        return Ok(SymFunc::one());
    }
    let n: i64 = entries.iter().sum();
    if n < 0 {
        return Ok(SymFunc::zero(Basis::P));
    }
    let ratios = ratio_product(betas, trunc)?;
    let mut out = SymFunc::zero(Basis::P);
    'terms: for (e, c) in ratios.terms() {
        // the alphabet part contributes prod_i (-1)^(n_i) e_(n_i) with
        // n_i = beta_i - e_i >= 0
        let mut factor = SymFunc::scalar(c.clone());
        let mut total = 0i64;
        for (i, &exp) in e.iter().enumerate() {
            let ni = entries[i] - exp;
            if ni < 0 {
                continue 'terms;
            }
            total += ni;
            if total > n {
                continue 'terms;
            }
            if ni > 0 {
                let sign = if ni % 2 == 0 { 1 } else { -1 };
                let en = SymFunc::e_n(ni as u32).scale(&QtScalar::from_int(sign));
                factor = factor.mul(&en)?;
            }
        }
        out = out.add(&factor)?;
    }
    Ok(out)
}

/// Which coefficient family to extract.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpansionSide {
    Schur,
    Monomial,
    Elementary,
}

impl ExpansionSide {
    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "schur" => Ok(ExpansionSide::Schur),
            "monomial" => Ok(ExpansionSide::Monomial),
            "elementary" => Ok(ExpansionSide::Elementary),
            _ => Err(Error::InvalidParameter(format!("unknown side {s:?}"))),
        }
    }
}

/// `(-1)^n` times the stated basis coefficient of `R_betas . 1`, extracted
/// through the dual Cauchy pairing: the Schur coefficient pairs with
/// `s_(lambda')[Z]`, the monomial coefficient with `e_lambda[Z]`, and the
/// elementary coefficient with `m_lambda[Z]`, `Z = z_1 + ... + z_l`.
pub fn expansion_coeff(betas: &BetaSeq, lambda: &Partition, side: ExpansionSide) -> Result<QtScalar> {
    expansion_coeff_with(betas, lambda, side, default_truncation(&betas.concat(), 0))
}

pub fn expansion_coeff_with(
    betas: &BetaSeq,
    lambda: &Partition,
    side: ExpansionSide,
    trunc: u32,
) -> Result<QtScalar> {
    let entries = betas.concat();
    let n: i64 = entries.iter().sum();
    if lambda.size() as i64 != n {
        return Err(Error::SizeMismatch(format!(
            "partition size {} vs total size {}",
            lambda.size(),
            n
        )));
    }
    let l = entries.len();
    let zfun = match side {
        ExpansionSide::Schur => SymFunc::s_lambda(lambda.transpose()),
        ExpansionSide::Monomial => SymFunc::basis_element(Basis::E, lambda.clone()),
        ExpansionSide::Elementary => SymFunc::basis_element(Basis::M, lambda.clone()),
    };
    let args: Vec<(QtScalar, Vec<i64>)> = (0..l)
        .map(|i| {
            let mut e = vec![0i64; l];
            e[i] = 1;
            (QtScalar::one(), e)
        })
        .collect();
    let evaluated = eval_monomials(&zfun, &args, l)?;
    let ratios = ratio_product(betas, trunc)?;
    // [z^beta](evaluated * ratios) via lookups against the pruned product
    let mut acc = QtScalar::zero();
    for (e, c) in evaluated.terms() {
        let rest: Vec<i64> = entries.iter().zip(e).map(|(b, v)| b - v).collect();
        let r = ratios.coeff(&rest);
        if !r.is_zero() {
            acc = &acc + &(c * &r);
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Iterated extraction of D-field products
// ---------------------------------------------------------------------------

/// Evaluate `R_{beta^(1)} ... R_{beta^(m)} f` by extracting the variables of
/// `D(z_1) ... D(z_l) / prod (1 - qt z_{i+1}/z_i)` one at a time. The state
/// is the finitely supported polynomial (in the exponent borrowed by the
/// geometric coupling) whose coefficients are the partial applications to
/// `f`; borrowed exponents die automatically once the D-index drops below
/// the annihilation bound.
pub fn voa_apply(betas: &BetaSeq, f: &SymFunc) -> Result<SymFunc> {
    let entries = betas.concat();
    let fp = f.to_p()?;
    if entries.is_empty() || fp.is_zero() {
        return Ok(fp);
    }
    let qt = QtScalar::qt();
    let mut state: BTreeMap<i64, SymFunc> = BTreeMap::new();
    state.insert(0, fp);
    for i in (0..entries.len()).rev() {
        let coupled_left = i > 0 && betas.coupled(i - 1);
        let mut next: BTreeMap<i64, SymFunc> = BTreeMap::new();
        if coupled_left {
            let cmax = state
                .iter()
                .map(|(c, g)| entries[i] + c + g.max_degree() as i64)
                .max()
                .unwrap_or(-1);
            for cp in 0..=cmax.max(0) {
                let mut acc = SymFunc::zero(Basis::P);
                for (c, g) in &state {
                    let term = dk_apply(entries[i] + c - cp, g)?;
                    acc = acc.add(&term)?;
                }
                if !acc.is_zero() {
                    next.insert(cp, acc.scale(&qt.pow(cp)?));
                }
            }
        } else {
            let mut acc = SymFunc::zero(Basis::P);
            for (c, g) in &state {
                let term = dk_apply(entries[i] + c, g)?;
                acc = acc.add(&term)?;
            }
            if !acc.is_zero() {
                next.insert(0, acc);
            }
        }
        state = next;
        if state.is_empty() {
            return Ok(SymFunc::zero(Basis::P));
        }
    }
    Ok(state.remove(&0).unwrap_or_else(|| SymFunc::zero(Basis::P)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{r_apply, r_product_apply, Engine};

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn geom_examples() {
        let g = geom_factor(2, &QtScalar::qt(), 0, 1, 4).unwrap();
        assert_eq!(g.coeff(&[-2, 2]), QtScalar::qt().pow(2).unwrap());
        assert_eq!(geom_factor(2, &QtScalar::zero(), 0, 1, 4).unwrap(), LaurentSeries::one(2));
        assert_eq!(geom_factor(2, &QtScalar::qt(), 0, 1, 0).unwrap(), LaurentSeries::one(2));
        assert!(geom_factor(2, &QtScalar::qt(), 1, 0, 4).is_err());
    }

    #[test]
    fn omega_examples() {
        let w = omega_factor(2, 0, 1, 5).unwrap();
        assert_eq!(w.coeff(&[0, 0]), QtScalar::one());
        // linear coefficient is q + t - 1 - qt = -M
        assert_eq!(w.coeff(&[-1, 1]), -&QtScalar::m_scalar());
        // omega * (1-qx)(1-tx) = (1-x)(1-qtx) + O(x^(T+1))
        let den = pair_linear(2, &QtScalar::q(), 0, 1).mul(&pair_linear(2, &QtScalar::t(), 0, 1));
        let num = pair_linear(2, &QtScalar::one(), 0, 1).mul(&pair_linear(2, &QtScalar::qt(), 0, 1));
        let prod = truncate_pair(w.mul(&den), 1, 5);
        assert_eq!(prod, truncate_pair(num, 1, 5));
    }

    #[test]
    fn explicit_rhs_single() {
        // beta = (1): -e_1
        let r = explicit_rhs(&BetaSeq::single(&[1])).unwrap();
        assert_eq!(r, SymFunc::e_n(1).to_p().unwrap().neg());
        // beta = (n): (-1)^n e_n
        for n in 0..=4i64 {
            let r = explicit_rhs(&BetaSeq::single(&[n])).unwrap();
            let sign = QtScalar::from_int(if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(r, SymFunc::e_n(n as u32).to_p().unwrap().scale(&sign));
        }
        // negative total size vanishes
        assert!(explicit_rhs(&BetaSeq::single(&[-2, 1])).unwrap().is_zero());
    }

    #[test]
    fn explicit_rhs_cross_engine() {
        for beta in [vec![1, 1], vec![2, -1, 1], vec![1, 0], vec![0, 2]] {
            let lhs = r_apply(&beta, &SymFunc::one(), Engine::Increments).unwrap();
            let rhs = explicit_rhs(&BetaSeq::single(&beta)).unwrap();
            assert_eq!(lhs, rhs, "beta={beta:?}");
        }
        // two-factor concatenation exercises the NI pairs
        let seq = BetaSeq::new(vec![vec![1, 1], vec![1]]);
        let lhs = r_product_apply(&seq, &SymFunc::one(), Engine::Increments).unwrap();
        assert_eq!(lhs, explicit_rhs(&seq).unwrap());
    }

    #[test]
    fn expansion_sides() {
        // beta = (1), lambda = (1), schur side: 1
        let seq = BetaSeq::single(&[1]);
        let c = expansion_coeff(&seq, &part(&[1]), ExpansionSide::Schur).unwrap();
        assert_eq!(c, QtScalar::one());
        // beta = (2): (-1)^2 [s_11] e_2 = 1
        let seq = BetaSeq::single(&[2]);
        let c = expansion_coeff(&seq, &part(&[1, 1]), ExpansionSide::Schur).unwrap();
        assert_eq!(c, QtScalar::one());
        // size mismatch errors
        assert!(expansion_coeff(&seq, &part(&[1]), ExpansionSide::Schur).is_err());
    }

    #[test]
    fn expansion_matches_direct_conversion() {
        let seq = BetaSeq::single(&[2, 1]);
        let n = 3u32;
        let value = explicit_rhs(&seq).unwrap();
        let sign = QtScalar::from_int(if n % 2 == 0 { 1 } else { -1 });
        for (side, basis) in [
            (ExpansionSide::Schur, Basis::S),
            (ExpansionSide::Monomial, Basis::M),
            (ExpansionSide::Elementary, Basis::E),
        ] {
            let direct = value.convert(basis).unwrap();
            for lam in crate::partition::partitions_of(n) {
                let got = expansion_coeff(&seq, &lam, side).unwrap();
                let want = &direct.coeff(&lam) * &sign;
                assert_eq!(got, want, "side {side:?} lambda {lam}");
            }
        }
    }

    #[test]
    fn window_stability() {
        let seq = BetaSeq::new(vec![vec![1, -1, 2]]);
        let base = default_truncation(&seq.concat(), 0);
        let a = explicit_rhs_with(&seq, base).unwrap();
        let b = explicit_rhs_with(&seq, base + 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn voa_single_factor_is_dk() {
        for k in -1..=3i64 {
            let f = SymFunc::p(part(&[2]));
            let got = voa_apply(&BetaSeq::single(&[k]), &f).unwrap();
            assert_eq!(got, dk_apply(k, &f).unwrap(), "k={k}");
        }
    }

    #[test]
    fn voa_matches_composition() {
        // ((1),(1)) on 1 equals D_1 D_1 1
        let seq = BetaSeq::new(vec![vec![1], vec![1]]);
        let got = voa_apply(&seq, &SymFunc::one()).unwrap();
        let want = dk_apply(1, &dk_apply(1, &SymFunc::one()).unwrap()).unwrap();
        assert_eq!(got, want);
        // (1,0) on 1 equals the increments engine
        let seq = BetaSeq::single(&[1, 0]);
        let got = voa_apply(&seq, &SymFunc::one()).unwrap();
        let want = r_apply(&[1, 0], &SymFunc::one(), Engine::Increments).unwrap();
        assert_eq!(got, want);
    }
}
