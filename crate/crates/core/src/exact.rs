//! Exact arithmetic: arbitrary-precision rationals and towers of real
//! quadratic extensions `F(√d)`.
//!
//! Root systems of type H live in ℚ(√5); Gram matrices of symbols whose
//! labels are in {2, 3, 4, 6} live in ℚ(√2, √3) = ℚ(√2)(√3). Both are
//! instances of [`Quadratic`]. Every element has a unique representation,
//! so `==` and `Hash` are exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An ordered field with exact equality, embedded in ℝ.
pub trait ExactField:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Sign compared with zero.
    fn sign(&self) -> Ordering;
    fn inv(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Expansion as `Σ q·√r` with squarefree radicands `r` (1 for the rational part).
    fn terms(&self) -> Vec<(Rational, u32)>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

impl ExactField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> Ordering {
        if Zero::is_zero(self) {
            Ordering::Equal
        } else if Signed::is_positive(self) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn terms(&self) -> Vec<(Rational, u32)> {
        vec![(self.clone(), 1)]
    }
}

/// `a + b√D` over the base field `F`. `D` must not be a square in `F`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quadratic<F, const D: u32> {
    pub a: F,
    pub b: F,
}

pub type QSqrt5 = Quadratic<Rational, 5>;
pub type QSqrt2 = Quadratic<Rational, 2>;
pub type QSqrt2Sqrt3 = Quadratic<QSqrt2, 3>;

/// Coordinates of root vectors: rationals, or elements of ℚ(√5) for type H.
pub type ExactNumber = QSqrt5;

impl<F: ExactField, const D: u32> Quadratic<F, D> {
    pub fn new(a: F, b: F) -> Self {
        Self { a, b }
    }

    pub fn from_base(a: F) -> Self {
        Self { a, b: F::zero() }
    }

    /// `√D` itself.
    pub fn sqrt_d() -> Self {
        Self { a: F::zero(), b: F::one() }
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `a² − D b²`, which lies in the base field.
    pub fn norm(&self) -> F {
        self.a.clone() * self.a.clone() - F::from_int(D as i64) * self.b.clone() * self.b.clone()
    }

    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }
}

impl QSqrt5 {
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_base(rat(n, d))
    }

    /// The rational value, if `b = 0`.
    pub fn as_rational(&self) -> Option<&Rational> {
        ExactField::is_zero(&self.b).then_some(&self.a)
    }
}

impl<F: ExactField, const D: u32> Add for Quadratic<F, D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<F: ExactField, const D: u32> Sub for Quadratic<F, D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<F: ExactField, const D: u32> Mul for Quadratic<F, D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = F::from_int(D as i64);
        Self {
            a: self.a.clone() * rhs.a.clone() + d * self.b.clone() * rhs.b.clone(),
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl<F: ExactField, const D: u32> Neg for Quadratic<F, D> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl<F: ExactField, const D: u32> ExactField for Quadratic<F, D> {
    fn zero() -> Self {
        Self { a: F::zero(), b: F::zero() }
    }
    fn one() -> Self {
        Self { a: F::one(), b: F::zero() }
    }
    fn from_rational(q: Rational) -> Self {
        Self::from_base(F::from_rational(q))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the term of larger square wins.
        match self.norm().sign() {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conjugate();
        Some(Self { a: c.a * n.clone(), b: c.b * n })
    }
    fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (D as f64).sqrt()
    }
    fn terms(&self) -> Vec<(Rational, u32)> {
        let mut out = self.a.terms();
        out.extend(self.b.terms().into_iter().map(|(q, r)| (q, r * D)));
        out
    }
}

fn fmt_terms(terms: &[(Rational, u32)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let nonzero: Vec<_> = terms.iter().filter(|(q, _)| !Zero::is_zero(q)).collect();
    if nonzero.is_empty() {
        return write!(f, "0");
    }
    for (i, (q, r)) in nonzero.iter().enumerate() {
        let neg = Signed::is_negative(q);
        if i > 0 {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        } else if neg {
            write!(f, "-")?;
        }
        let mag = q.abs();
        if *r == 1 {
            write!(f, "{mag}")?;
        } else if One::is_one(&mag) {
            write!(f, "sqrt({r})")?;
        } else {
            write!(f, "{mag}*sqrt({r})")?;
        }
    }
    Ok(())
}

impl<F: ExactField, const D: u32> fmt::Display for Quadratic<F, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.terms(), f)
    }
}
