use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;

use super::Rational;

/// Exact coefficient field. Implemented for [`Rational`] and
/// [`AlgNum`](super::AlgNum).
///
/// Elements of a number field need their field to build constants, so the
/// constructors take an existing element as a template.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    /// The element as a rational number, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn add_ref(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t += other;
        t
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t -= other;
        t
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t *= other;
        t
    }

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    fn mul_int(&self, n: i64) -> Self {
        self.mul_ref(&self.from_rational_like(&Rational::from(n)))
    }

    /// Factor `s` such that `s * coeffs` is in normal form. `coeffs` is given
    /// leading term first. The default makes the vector monic.
    fn normalizer<'a>(mut coeffs: impl Iterator<Item = &'a Self>) -> Option<Self> {
        coeffs.find(|c| !c.is_zero()).map(|c| c.inv())
    }

    /// Cofactors `(a, b)` with `a * c == b * lead` and `a != 0`, used to cancel
    /// the term `c` against a reducer with leading coefficient `lead`.
    fn cofactors(lead: &Self, c: &Self) -> (Self, Self) {
        if lead.is_one() {
            (lead.clone(), c.clone())
        } else {
            (lead.one_like(), c.div_ref(lead))
        }
    }

    /// Rank of a matrix given as rows.
    fn matrix_rank(rows: Vec<Vec<Self>>) -> usize {
        crate::linalg::gaussian_rank(rows)
    }
}

impl Field for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }

    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }

    fn inv(&self) -> Self {
        self.recip()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn normalizer<'a>(coeffs: impl Iterator<Item = &'a Self>) -> Option<Self> {
        let coeffs: Vec<&Rational> = coeffs.collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(Rational::primitive_scale(coeffs))
        }
    }

    fn cofactors(lead: &Self, c: &Self) -> (Self, Self) {
        if lead.is_integer() && c.is_integer() {
            let g: BigInt = lead.numer().gcd(c.numer());
            (
                Rational::from_int(lead.numer() / &g),
                Rational::from_int(c.numer() / &g),
            )
        } else {
            (Rational::one(), c / lead)
        }
    }

    fn matrix_rank(rows: Vec<Vec<Self>>) -> usize {
        crate::linalg::rational_rank(&rows)
    }
}
