//! Sparse symmetric functions over Q(q,t).
//!
//! A [`SymFunc`] is a finitely supported map from partitions to scalars in a
//! named basis. The power-sum basis is the internal pivot: products, the two
//! scalar products, plethystic scalings and skewing are all diagonal or
//! simple there, and the classical bases convert through cached per-degree
//! transition tables.

mod transition;

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::partition::Partition;
use crate::qt::QtScalar;
use std::collections::BTreeMap;
use std::fmt;

pub(crate) use transition::tables;

/// The p-expansion of the single row `e_n`, without building degree tables.
pub fn e_single_row(n: u32) -> Vec<(Partition, QtScalar)> {
    transition::e_row(n).into_iter().collect()
}

/// The p-expansion of the single row `h_n`.
pub fn h_single_row(n: u32) -> Vec<(Partition, QtScalar)> {
    transition::h_row(n).into_iter().collect()
}

/// Named bases. `Htilde` coefficients can be stored here, but conversions in
/// and out of it need Macdonald data and live in [`crate::macdonald`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Basis {
    P,
    M,
    E,
    H,
    S,
    Htilde,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::S => "s",
            Basis::Htilde => "Htilde",
        }
    }

    pub fn from_name(s: &str) -> Result<Basis> {
        match s {
            "p" => Ok(Basis::P),
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "s" => Ok(Basis::S),
            "Htilde" | "htilde" => Ok(Basis::Htilde),
            _ => Err(Error::InvalidParameter(format!("unknown basis {s:?}"))),
        }
    }
}

/// A finitely supported symmetric function; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    basis: Basis,
    coeffs: BTreeMap<Partition, QtScalar>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, coeffs: BTreeMap::new() }
    }

    /// The constant 1 (empty partition) in the p-basis.
    pub fn one() -> Self {
        Self::term(Basis::P, Partition::empty(), QtScalar::one())
    }

    pub fn scalar(c: QtScalar) -> Self {
        Self::term(Basis::P, Partition::empty(), c)
    }

    pub fn term(basis: Basis, lambda: Partition, coeff: QtScalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(lambda, coeff);
        }
        SymFunc { basis, coeffs }
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        Self::term(basis, lambda, QtScalar::one())
    }

    pub fn p(lambda: Partition) -> Self {
        Self::basis_element(Basis::P, lambda)
    }

    pub fn e_n(n: u32) -> Self {
        Self::basis_element(Basis::E, Partition::single(n))
    }

    pub fn h_n(n: u32) -> Self {
        Self::basis_element(Basis::H, Partition::single(n))
    }

    pub fn s_lambda(lambda: Partition) -> Self {
        Self::basis_element(Basis::S, lambda)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, QtScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> QtScalar {
        self.coeffs.get(lambda).cloned().unwrap_or_else(QtScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest degree with a nonzero coefficient (0 for the zero function).
    pub fn max_degree(&self) -> u32 {
        self.coeffs.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(|l| l.size());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn insert(&mut self, lambda: Partition, coeff: QtScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&lambda) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.coeffs.remove(&lambda);
                }
            }
            None => {
                self.coeffs.insert(lambda, coeff);
            }
        }
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        let (mut a, b) = common_basis(self, other)?;
        for (l, c) in b.coeffs {
            a.insert(l, c);
        }
        Ok(a)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymFunc {
        let coeffs = self.coeffs.iter().map(|(l, c)| (l.clone(), -c)).collect();
        SymFunc { basis: self.basis, coeffs }
    }

    pub fn scale(&self, c: &QtScalar) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis);
        }
        let coeffs = self.coeffs.iter().map(|(l, v)| (l.clone(), v * c)).collect();
        SymFunc { basis: self.basis, coeffs }
    }

    /// The homogeneous component of the given degree, in the same basis.
    pub fn component(&self, degree: u32) -> SymFunc {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(l, _)| l.size() == degree)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        SymFunc { basis: self.basis, coeffs }
    }

    pub fn degrees(&self) -> std::collections::BTreeSet<u32> {
        self.coeffs.keys().map(|l| l.size()).collect()
    }

    /// Re-express in the p-basis (classical bases only).
    pub fn to_p(&self) -> Result<SymFunc> {
        match self.basis {
            Basis::P => Ok(self.clone()),
            Basis::Htilde => Err(Error::InvalidParameter(
                "Htilde conversion needs Macdonald data; use macdonald::convert".into(),
            )),
            b => {
                let mut out = SymFunc::zero(Basis::P);
                for (lam, c) in &self.coeffs {
                    let t = tables(lam.size());
                    let col = match b {
                        Basis::M => &t.m_in_p()[t.index[lam]],
                        Basis::E => &t.e_in_p()[t.index[lam]],
                        Basis::H => &t.h_in_p()[t.index[lam]],
                        Basis::S => &t.s_in_p()[t.index[lam]],
                        _ => unreachable!(),
                    };
                    for (row, v) in col.iter().enumerate() {
                        if !v.is_zero() {
                            out.insert(t.parts[row].clone(), v * c);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Exact change of basis among the classical bases.
    pub fn convert(&self, target: Basis) -> Result<SymFunc> {
        if self.basis == target {
            return Ok(self.clone());
        }
        if target == Basis::Htilde || self.basis == Basis::Htilde {
            return Err(Error::InvalidParameter(
                "Htilde conversion needs Macdonald data; use macdonald::convert".into(),
            ));
        }
        let p = self.to_p()?;
        if target == Basis::P {
            return Ok(p);
        }
        // Dual extraction against the Hall pairing: the coefficient on the
        // target element lambda is <f, dual_lambda>, with duals m<->h,
        // s<->s, and e dual to omega(m).
        let mut out = SymFunc::zero(target);
        for d in p.degrees() {
            let t = tables(d);
            let comp = p.component(d);
            for (i, lam) in t.parts.iter().enumerate() {
                let mut acc = QtScalar::zero();
                for (mu, c) in comp.coeffs.iter() {
                    let r = t.index[mu];
                    let dual = match target {
                        Basis::M => t.h_in_p()[i][r].clone(),
                        Basis::H => t.m_in_p()[i][r].clone(),
                        Basis::S => t.s_in_p()[i][r].clone(),
                        Basis::E => {
                            let sign = if (mu.size() as usize - mu.len()) % 2 == 0 { 1 } else { -1 };
                            &t.m_in_p()[i][r] * &QtScalar::from_int(sign)
                        }
                        _ => unreachable!(),
                    };
                    let term = &(&dual * c) * &mu.z_lambda_scalar();
                    acc = &acc + &term;
                }
                if !acc.is_zero() {
                    out.insert(lam.clone(), acc);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SymFunc) -> Result<SymFunc> {
        let a = self.to_p()?;
        let b = other.to_p()?;
        let mut out = SymFunc::zero(Basis::P);
        for (la, ca) in &a.coeffs {
            for (lb, cb) in &b.coeffs {
                out.insert(la.merge(lb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<SymFunc> {
        let mut acc = SymFunc::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

fn common_basis(a: &SymFunc, b: &SymFunc) -> Result<(SymFunc, SymFunc)> {
    if a.basis == b.basis {
        Ok((a.clone(), b.clone()))
    } else {
        Ok((a.to_p()?, b.to_p()?))
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}{}", c, self.basis.name(), l)?;
        }
        Ok(())
    }
}

/// Hall scalar product, `<p_mu, p_nu> = delta z_mu`, extended bilinearly.
pub fn hall(f: &SymFunc, g: &SymFunc) -> Result<QtScalar> {
    let a = f.to_p()?;
    let b = g.to_p()?;
    let mut acc = QtScalar::zero();
    for (l, ca) in &a.coeffs {
        if let Some(cb) = b.coeffs.get(l) {
            let term = &(ca * cb) * &l.z_lambda_scalar();
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

/// `p_mu[-M] = (-1)^{l(mu)} prod_i (1-q^{mu_i})(1-t^{mu_i})`.
pub fn p_neg_m(mu: &Partition) -> QtScalar {
    let mut acc = QtScalar::one();
    for &k in mu.parts() {
        acc = &acc * &(-&QtScalar::m_pleth(k));
    }
    acc
}

/// Star scalar product, `<p_mu, p_nu>_* = delta z_mu p_mu[-M]`.
pub fn star(f: &SymFunc, g: &SymFunc) -> Result<QtScalar> {
    let a = f.to_p()?;
    let b = g.to_p()?;
    let mut acc = QtScalar::zero();
    for (l, ca) in &a.coeffs {
        if let Some(cb) = b.coeffs.get(l) {
            let term = &(&(ca * cb) * &l.z_lambda_scalar()) * &p_neg_m(l);
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

/// Diagonal plethystic scaling: in the p-basis, multiplies the coefficient
/// of `p_mu` by `prod_i scale(mu_i)`. Covers `f[MX]`, `f[-X]`, `f[uX]`,
/// `f[X/(-M)]` and friends.
pub fn pleth_diag(f: &SymFunc, scale: impl Fn(u32) -> Result<QtScalar>) -> Result<SymFunc> {
    let a = f.to_p()?;
    let mut out = SymFunc::zero(Basis::P);
    for (l, c) in &a.coeffs {
        let mut factor = QtScalar::one();
        for &k in l.parts() {
            factor = &factor * &scale(k)?;
        }
        out.insert(l.clone(), &factor * c);
    }
    Ok(out)
}

/// Scale for the alphabet MX: `p_k -> (1-q^k)(1-t^k) p_k`.
pub fn scale_m(k: u32) -> Result<QtScalar> {
    Ok(QtScalar::m_pleth(k))
}

/// Scale for -X: `p_k -> -p_k`.
pub fn scale_neg(_k: u32) -> Result<QtScalar> {
    Ok(QtScalar::from_int(-1))
}

/// Skewing: `g^perp f`, the Hall adjoint of multiplication by `g`. On power
/// sums `p_k^perp = k d/dp_k`, applied multiplicatively.
pub fn skew_hall(g: &SymFunc, f: &SymFunc) -> Result<SymFunc> {
    let gp = g.to_p()?;
    let fp = f.to_p()?;
    let mut out = SymFunc::zero(Basis::P);
    for (nu, gc) in &gp.coeffs {
        let mut cur = fp.clone();
        for &k in nu.parts() {
            cur = p_perp(k, &cur);
            if cur.is_zero() {
                break;
            }
        }
        for (l, c) in &cur.coeffs {
            out.insert(l.clone(), gc * c);
        }
    }
    Ok(out)
}

/// `p_k^perp` on a p-basis function.
fn p_perp(k: u32, f: &SymFunc) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::P);
    let mut out = SymFunc::zero(Basis::P);
    for (l, c) in &f.coeffs {
        let m = l.multiplicity(k);
        if m == 0 {
            continue;
        }
        let rest = l.remove_part(k).expect("part exists");
        let factor = QtScalar::from_int((k as i64) * (m as i64));
        out.insert(rest, &factor * c);
    }
    out
}

/// Evaluate on a finite list of Laurent monomials with scalar coefficients:
/// `p_k -> sum_j c_j^k z^(k e_j)`, expanded exactly.
pub fn eval_monomials(
    f: &SymFunc,
    args: &[(QtScalar, Vec<i64>)],
    vars: usize,
) -> Result<LaurentSeries> {
    let fp = f.to_p()?;
    let mut out = LaurentSeries::zero(vars);
    for (l, c) in &fp.coeffs {
        let mut term = LaurentSeries::constant(vars, c.clone());
        for &k in l.parts() {
            let mut pk = LaurentSeries::zero(vars);
            for (cj, ej) in args {
                let exps: Vec<i64> = ej.iter().map(|e| e * k as i64).collect();
                pk.add_term(exps, cj.pow(k as i64)?);
            }
            term = term.mul(&pk);
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn e2_in_p() {
        // e_2 = (p_1^2 - p_2)/2
        let e2 = SymFunc::e_n(2).to_p().unwrap();
        assert_eq!(e2.coeff(&part(&[1, 1])), QtScalar::from_ratio(1, 2).unwrap());
        assert_eq!(e2.coeff(&part(&[2])), QtScalar::from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn s11_in_e_basis() {
        // s_(1,1) = e_2 by the dual Jacobi-Trudi
        let s11 = SymFunc::s_lambda(part(&[1, 1]));
        let in_e = s11.convert(Basis::E).unwrap();
        assert_eq!(in_e.coeff(&part(&[2])), QtScalar::one());
        assert_eq!(in_e.coeffs().len(), 1);
    }

    #[test]
    fn h2_in_m_basis() {
        // h_2 = m_2 + m_11
        let h2 = SymFunc::h_n(2).convert(Basis::M).unwrap();
        assert_eq!(h2.coeff(&part(&[2])), QtScalar::one());
        assert_eq!(h2.coeff(&part(&[1, 1])), QtScalar::one());
        assert_eq!(h2.coeffs().len(), 2);
    }

    #[test]
    fn products() {
        // p_1 * p_1 = p_(1,1)
        let p1 = SymFunc::p(part(&[1]));
        let sq = p1.mul(&p1).unwrap();
        assert_eq!(sq.coeff(&part(&[1, 1])), QtScalar::one());
        // e_1 * 1 = e_1
        let e1 = SymFunc::e_n(1);
        assert_eq!(e1.mul(&SymFunc::one()).unwrap(), e1.to_p().unwrap());
        // e_1 * e_1 = m_2 + 2 m_11
        let sq = e1.mul(&e1).unwrap().convert(Basis::M).unwrap();
        assert_eq!(sq.coeff(&part(&[2])), QtScalar::from_int(1));
        assert_eq!(sq.coeff(&part(&[1, 1])), QtScalar::from_int(2));
    }

    #[test]
    fn hall_examples() {
        let p21 = SymFunc::p(part(&[2, 1]));
        assert_eq!(hall(&p21, &p21).unwrap(), QtScalar::from_int(2));
        let m2 = SymFunc::basis_element(Basis::M, part(&[2]));
        let h2 = SymFunc::h_n(2);
        assert_eq!(hall(&m2, &h2).unwrap(), QtScalar::one());
        let p1 = SymFunc::p(part(&[1]));
        let p2 = SymFunc::p(part(&[2]));
        assert!(hall(&p1, &p2).unwrap().is_zero());
    }

    #[test]
    fn star_examples() {
        let p1 = SymFunc::p(part(&[1]));
        // star(p_1, p_1) = -M
        assert_eq!(star(&p1, &p1).unwrap(), -&QtScalar::m_scalar());
        let p2 = SymFunc::p(part(&[2]));
        assert!(star(&p1, &p2).unwrap().is_zero());
        // s_1 = p_1
        let s1 = SymFunc::s_lambda(part(&[1]));
        assert_eq!(star(&s1, &s1).unwrap(), -&QtScalar::m_scalar());
    }

    #[test]
    fn star_matches_z_p_neg_m_all_degrees_up_to_5() {
        for d in 1..=5u32 {
            for mu in partitions_of(d) {
                let pm = SymFunc::p(mu.clone());
                let want = &mu.z_lambda_scalar() * &p_neg_m(&mu);
                assert_eq!(star(&pm, &pm).unwrap(), want);
            }
        }
    }

    #[test]
    fn pleth_examples() {
        // p_2[MX] = (1-q^2)(1-t^2) p_2
        let p2 = SymFunc::p(part(&[2]));
        let scaled = pleth_diag(&p2, scale_m).unwrap();
        assert_eq!(scaled.coeff(&part(&[2])), QtScalar::m_pleth(2));
        // identity scale
        let f = SymFunc::e_n(3);
        assert_eq!(pleth_diag(&f, |_| Ok(QtScalar::one())).unwrap(), f.to_p().unwrap());
        // h_2[-X] = e_2
        let h2neg = pleth_diag(&SymFunc::h_n(2), scale_neg).unwrap();
        assert_eq!(h2neg, SymFunc::e_n(2).to_p().unwrap());
    }

    #[test]
    fn skew_examples() {
        // h_1^perp (p_1^2) = 2 p_1
        let p1sq = SymFunc::p(part(&[1, 1]));
        let sk = skew_hall(&SymFunc::h_n(1), &p1sq).unwrap();
        assert_eq!(sk.coeff(&part(&[1])), QtScalar::from_int(2));
        // h_2^perp e_1 = 0 for degree reasons
        assert!(skew_hall(&SymFunc::h_n(2), &SymFunc::e_n(1)).unwrap().is_zero());
        // (h_1[MX])^perp p_1 = M
        let h1m = pleth_diag(&SymFunc::h_n(1), scale_m).unwrap();
        let sk = skew_hall(&h1m, &SymFunc::p(part(&[1]))).unwrap();
        assert_eq!(sk.coeff(&Partition::empty()), QtScalar::m_scalar());
    }

    #[test]
    fn skew_adjointness_small() {
        // <g^perp f, h> = <f, g h>
        let g = SymFunc::h_n(2);
        let f = SymFunc::p(part(&[2, 1, 1]));
        for h in [SymFunc::p(part(&[2])), SymFunc::e_n(2), SymFunc::h_n(2)] {
            let lhs = hall(&skew_hall(&g, &f).unwrap(), &h).unwrap();
            let rhs = hall(&f, &g.mul(&h).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_round_trips_degree_up_to_6() {
        use Basis::*;
        for d in 0..=6u32 {
            for lam in partitions_of(d) {
                for b in [M, E, H, S] {
                    let f = SymFunc::basis_element(b, lam.clone());
                    let back = f.to_p().unwrap().convert(b).unwrap();
                    assert_eq!(back, f, "basis {:?} lambda {}", b, lam);
                }
            }
        }
    }

    #[test]
    fn eval_monomials_examples() {
        let z = |i: usize, l: usize| {
            let mut v = vec![0i64; l];
            v[i] = 1;
            (QtScalar::one(), v)
        };
        // e_2(z1, z2) = z1 z2
        let args = vec![z(0, 2), z(1, 2)];
        let ev = eval_monomials(&SymFunc::e_n(2), &args, 2).unwrap();
        assert_eq!(ev.coeff(&[1, 1]), QtScalar::one());
        assert_eq!(ev.terms().count(), 1);
        // s_1(z1,z2,z3) = z1+z2+z3
        let args3 = vec![z(0, 3), z(1, 3), z(2, 3)];
        let ev = eval_monomials(&SymFunc::s_lambda(part(&[1])), &args3, 3).unwrap();
        assert_eq!(ev.terms().count(), 3);
        assert_eq!(ev.coeff(&[0, 1, 0]), QtScalar::one());
        // e_1(z2^-1, z3^-1) in 3 variables
        let args_inv = vec![
            (QtScalar::one(), vec![0, -1, 0]),
            (QtScalar::one(), vec![0, 0, -1]),
        ];
        let ev = eval_monomials(&SymFunc::e_n(1), &args_inv, 3).unwrap();
        assert_eq!(ev.coeff(&[0, -1, 0]), QtScalar::one());
        assert_eq!(ev.coeff(&[0, 0, -1]), QtScalar::one());
    }
}
