//! The coefficient field Q(q,t).
//!
//! A [`QtScalar`] is a reduced fraction of two [`IntPoly2`] values with a
//! canonical sign convention (the lexicographically least denominator
//! coefficient is positive), so structural equality is field equality.

use super::poly::IntPoly2;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QtScalar {
    num: IntPoly2,
    den: IntPoly2,
}

impl QtScalar {
    /// Build `num/den` in canonical reduced form.
    pub fn new(num: IntPoly2, den: IntPoly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly2, den: IntPoly2) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QtScalar { num: IntPoly2::zero(), den: IntPoly2::one() };
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else if let Some(d) = den.as_constant() {
            // constant denominator: only an integer gcd is needed
            let g = num.content().gcd(&d);
            (
                num.div_int_exact(&g).expect("content divides"),
                IntPoly2::constant(&d / &g),
            )
        } else {
            // strip integer content first, then the polynomial gcd
            let ic = num.content().gcd(&den.content());
            let (n0, d0) = if ic.is_one() {
                (num, den)
            } else {
                (
                    num.div_int_exact(&ic).expect("content divides"),
                    den.div_int_exact(&ic).expect("content divides"),
                )
            };
            let g = n0.gcd(&d0);
            if g.is_one() {
                (n0, d0)
            } else {
                (
                    n0.div_exact(&g).expect("gcd divides numerator"),
                    d0.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        if den.lex_least_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QtScalar { num, den }
    }

    pub fn zero() -> Self {
        QtScalar { num: IntPoly2::zero(), den: IntPoly2::one() }
    }

    pub fn one() -> Self {
        QtScalar { num: IntPoly2::one(), den: IntPoly2::one() }
    }

    pub fn from_int(c: i64) -> Self {
        QtScalar { num: IntPoly2::from_i64(c), den: IntPoly2::one() }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QtScalar { num: IntPoly2::constant(c), den: IntPoly2::one() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(IntPoly2::from_i64(n), IntPoly2::from_i64(d))
    }

    pub fn from_poly(p: IntPoly2) -> Self {
        QtScalar { num: p, den: IntPoly2::one() }
    }

    pub fn q() -> Self {
        Self::from_poly(IntPoly2::q())
    }

    pub fn t() -> Self {
        Self::from_poly(IntPoly2::t())
    }

    pub fn qt() -> Self {
        Self::from_poly(IntPoly2::q().mul(&IntPoly2::t()))
    }

    /// `q^a * t^b` with integer (possibly negative) exponents.
    pub fn monomial(a: i64, b: i64) -> Self {
        let mut num = IntPoly2::one();
        let mut den = IntPoly2::one();
        if a >= 0 {
            num = num.mul(&IntPoly2::monomial(BigInt::one(), a as u32, 0));
        } else {
            den = den.mul(&IntPoly2::monomial(BigInt::one(), (-a) as u32, 0));
        }
        if b >= 0 {
            num = num.mul(&IntPoly2::monomial(BigInt::one(), 0, b as u32));
        } else {
            den = den.mul(&IntPoly2::monomial(BigInt::one(), 0, (-b) as u32));
        }
        QtScalar { num, den }
    }

    /// M = (1-q)(1-t).
    pub fn m_scalar() -> Self {
        let one = IntPoly2::one();
        Self::from_poly(one.sub(&IntPoly2::q()).mul(&one.sub(&IntPoly2::t())))
    }

    /// M-bar = q + t - 1.
    pub fn m_bar() -> Self {
        Self::from_poly(IntPoly2::q().add(&IntPoly2::t()).sub(&IntPoly2::one()))
    }

    /// (1 - q^k)(1 - t^k), the eigenvalue of the alphabet scaling by M on p_k.
    pub fn m_pleth(k: u32) -> Self {
        let one = IntPoly2::one();
        let qk = IntPoly2::monomial(BigInt::one(), k, 0);
        let tk = IntPoly2::monomial(BigInt::one(), 0, k);
        Self::from_poly(one.sub(&qk).mul(&one.sub(&tk)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_rational_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn numerator(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly2 {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // already reduced; only the sign convention needs restoring
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.lex_least_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(QtScalar { num, den })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at q = t = 1. Errors if the reduced denominator vanishes
    /// there; path-operator coefficients are polynomial in q,t so this is
    /// well-defined wherever the specialization is used.
    pub fn eval_q1_t1(&self) -> Result<Self> {
        let d = self.den.eval_ones();
        if d.is_zero() {
            return Err(Error::VanishingDenominator("q=1, t=1".into()));
        }
        Self::new(IntPoly2::constant(self.num.eval_ones()), IntPoly2::constant(d))
    }

}

impl Add for &QtScalar {
    type Output = QtScalar;
    fn add(self, other: &QtScalar) -> QtScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return QtScalar { num: self.num.add(&other.num), den: IntPoly2::one() };
        }
        // num1 (den2/g) + num2 (den1/g) over den1 (den2/g), g = gcd of the
        // denominators: the result only needs reducing against g, because
        // den1/g and den2/g stay coprime to the new numerator
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            return QtScalar {
                num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
                den: self.den.mul(&other.den),
            };
        }
        let d2g = other.den.div_exact(&g).expect("gcd divides");
        let d1g = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        if num.is_zero() {
            return QtScalar::zero();
        }
        let h = num.gcd(&g);
        let (mut num, mut den) = if h.is_one() {
            (num, self.den.mul(&d2g))
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                self.den.div_exact(&h).expect("gcd divides").mul(&d2g),
            )
        };
        if den.lex_least_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QtScalar { num, den }
    }
}

impl Sub for &QtScalar {
    type Output = QtScalar;
    fn sub(self, other: &QtScalar) -> QtScalar {
        self + &(-other)
    }
}

impl Mul for &QtScalar {
    type Output = QtScalar;
    fn mul(self, other: &QtScalar) -> QtScalar {
        if self.is_zero() || other.is_zero() {
            return QtScalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return QtScalar { num: self.num.mul(&other.num), den: IntPoly2::one() };
        }
        // cross-reduce before multiplying: with both inputs reduced, the
        // product of the cross-reduced parts is already in lowest terms
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).expect("gcd divides") };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1).expect("gcd divides") };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2).expect("gcd divides") };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).expect("gcd divides") };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.lex_least_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QtScalar { num, den }
    }
}

impl Neg for &QtScalar {
    type Output = QtScalar;
    fn neg(self) -> QtScalar {
        QtScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl fmt::Display for QtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// The four field operations as a single entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qt_arith(x: &QtScalar, y: &QtScalar, kind: ArithKind) -> Result<QtScalar> {
    match kind {
        ArithKind::Add => Ok(x + y),
        ArithKind::Sub => Ok(x - y),
        ArithKind::Mul => Ok(x * y),
        ArithKind::Div => x.div(y),
    }
}

/// Base of a q-integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtBase {
    Q,
    T,
    Qt,
    QOverT,
    TOverQ,
}

impl QtBase {
    pub fn scalar(self) -> QtScalar {
        match self {
            QtBase::Q => QtScalar::q(),
            QtBase::T => QtScalar::t(),
            QtBase::Qt => QtScalar::qt(),
            QtBase::QOverT => QtScalar::monomial(1, -1),
            QtBase::TOverQ => QtScalar::monomial(-1, 1),
        }
    }
}

/// The q-integer `[m]_base`: 0 at m = 0; `1 + b + ... + b^(m-1)` for m > 0;
/// `-(1 + b^-1 + ... + b^(m+1))` for m < 0, so negative values are genuine
/// rational functions.
pub fn qt_int(m: i64, base: QtBase) -> QtScalar {
    q_integer(m, &base.scalar())
}

/// `[m]` with an arbitrary nonzero base element.
pub fn q_integer(m: i64, base: &QtScalar) -> QtScalar {
    let mut acc = QtScalar::zero();
    if m > 0 {
        let mut p = QtScalar::one();
        for _ in 0..m {
            acc = &acc + &p;
            p = &p * base;
        }
        acc
    } else if m < 0 {
        let binv = base.inv().expect("q-integer base must be nonzero");
        let mut p = QtScalar::one();
        for _ in 0..(-m) {
            acc = &acc + &p;
            p = &p * &binv;
        }
        -&acc
    } else {
        acc
    }
}

/// A univariate polynomial with QtScalar coefficients (low to high), used
/// for weights evaluated at diagram cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<QtScalar>);

impl UniPoly {
    pub fn constant(c: QtScalar) -> Self {
        UniPoly(vec![c])
    }

    /// Exact evaluation at a field point (Horner).
    pub fn eval(&self, point: &QtScalar) -> QtScalar {
        let mut acc = QtScalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * point) + c;
        }
        acc
    }
}

/// Evaluate a univariate polynomial at a field element.
pub fn qt_substitute(p: &UniPoly, point: &QtScalar) -> QtScalar {
    p.eval(point)
}
