//! The real cyclotomic field K_d = ℚ(γ), γ = 2cos(π/d).
//!
//! Elements are dense coefficient vectors in the power basis of γ, reduced
//! modulo the minimal polynomial of γ.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use super::{Field, Rational, UPoly};
use crate::error::ArithError;
use crate::linalg;

/// n-th cyclotomic polynomial, by exact division of `t^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic(n: u32) -> UPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = UPoly::monomial(Rational::one(), n as usize).sub(&UPoly::one());
    for m in 1..n {
        if n.is_multiple_of(m) {
            p = p.exact_div(&cyclotomic(m)).expect("cyclotomic factor divides");
        }
    }
    p
}

/// Euler's totient.
pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Minimal polynomial data for γ = 2cos(π/d).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    d: u32,
    minpoly: UPoly,
    /// `t^(n + i) mod minpoly` for `i in 0..n-1`, `n = degree`.
    reduction: Vec<Vec<Rational>>,
}

impl FieldSpec {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn minpoly(&self) -> &UPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().expect("nonzero minimal polynomial")
    }

    fn from_minpoly(d: u32, minpoly: UPoly) -> FieldSpec {
        let n = minpoly.degree().expect("nonzero minimal polynomial");
        let reduction = (0..n.saturating_sub(1))
            .map(|i| {
                let r = UPoly::monomial(Rational::one(), n + i).rem(&minpoly);
                (0..n).map(|k| r.coeff(k)).collect()
            })
            .collect();
        FieldSpec { d, minpoly, reduction }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{}[{}]", self.d, self.minpoly)
    }
}

/// Minimal polynomial of γ = 2cos(π/d) over ℚ.
///
/// Works in A = ℚ[t]/Φ_{2d}(t), where t^{-1} = t^{2d-1}. The first linear
/// dependency among the powers of c = t + t^{-1} in A gives the minimal
/// polynomial of c, which is the image of γ.
pub fn real_subfield_minpoly(d: u32) -> FieldSpec {
    assert!(d >= 2, "real subfield needs d >= 2");
    let phi = cyclotomic(2 * d);
    let n = phi.degree().expect("nonzero");
    let t = UPoly::from_ints(&[0, 1]);
    let t_inv = UPoly::monomial(Rational::one(), (2 * d - 1) as usize).rem(&phi);
    let c = t.add(&t_inv).rem(&phi);

    let coords = |p: &UPoly| -> Vec<Rational> { (0..n).map(|k| p.coeff(k)).collect() };
    let mut powers = vec![coords(&UPoly::one())];
    let mut current = UPoly::one();
    loop {
        current = current.mul(&c).rem(&phi);
        powers.push(coords(&current));
        // columns are the powers c^0..c^k
        let k = powers.len();
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..k).map(|j| powers[j][i].clone()).collect())
            .collect();
        let kernel = linalg::kernel_basis(&rows, k);
        if let Some(v) = kernel.into_iter().next() {
            let minpoly = UPoly::new(v).monic();
            return FieldSpec::from_minpoly(d, minpoly);
        }
    }
}

/// Element of K_d.
#[derive(Clone)]
pub struct AlgNum {
    field: Arc<FieldSpec>,
    coeffs: Vec<Rational>,
}

impl AlgNum {
    pub fn from_rational(field: &Arc<FieldSpec>, q: Rational) -> AlgNum {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = q;
        AlgNum { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<FieldSpec>) -> AlgNum {
        AlgNum::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<FieldSpec>) -> AlgNum {
        AlgNum::from_rational(field, Rational::one())
    }

    /// The element represented by `p(γ)`.
    pub fn from_poly(field: &Arc<FieldSpec>, p: &UPoly) -> AlgNum {
        let r = p.rem(field.minpoly());
        AlgNum {
            field: field.clone(),
            coeffs: (0..field.degree()).map(|k| r.coeff(k)).collect(),
        }
    }

    /// The generator γ = 2cos(π/d).
    pub fn gamma(field: &Arc<FieldSpec>) -> AlgNum {
        AlgNum::from_poly(field, &UPoly::from_ints(&[0, 1]))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn same_field(&self, other: &AlgNum) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check_field(&self, other: &AlgNum) {
        assert!(
            self.same_field(other),
            "mixing elements of K_{} and K_{}",
            self.field.d,
            other.field.d
        );
    }

    /// Inverse via the extended Euclidean algorithm against the minimal
    /// polynomial.
    pub fn checked_inv(&self) -> Result<AlgNum, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let inv = self
            .as_poly()
            .inverse_mod(self.field.minpoly())
            .expect("minimal polynomial is irreducible");
        Ok(AlgNum::from_poly(&self.field, &inv))
    }

    fn mul_impl(&self, other: &AlgNum) -> AlgNum {
        self.check_field(other);
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        let mut out: Vec<Rational> = prod[..n].to_vec();
        for (i, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, r) in self.field.reduction[i].iter().enumerate() {
                if !r.is_zero() {
                    out[k] += &(c * r);
                }
            }
        }
        AlgNum { field: self.field.clone(), coeffs: out }
    }
}

/// λ_k = cos(kπ/d) for `0 < k < d`.
pub fn embed_lambda(field: &Arc<FieldSpec>, k: i64) -> Result<AlgNum, ArithError> {
    let d = field.d() as i64;
    if k <= 0 || k >= d {
        return Err(ArithError::IndexOutOfRange { index: k, lo: 1, hi: d - 1 });
    }
    Ok(cos_multiple(field, k))
}

/// cos(kπ/d) for any integer `k`, as V_|k|(γ)/2 where V_0 = 2, V_1 = γ and
/// V_k = γV_{k-1} - V_{k-2}.
pub fn cos_multiple(field: &Arc<FieldSpec>, k: i64) -> AlgNum {
    let k = k.unsigned_abs();
    let gamma = AlgNum::gamma(field);
    let mut prev = AlgNum::from_rational(field, Rational::from(2));
    let mut cur = gamma.clone();
    if k == 0 {
        cur = prev.clone();
    }
    for _ in 1..k {
        let next = &(&gamma * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur * AlgNum::from_rational(field, Rational::new(1, 2))
}

/// Inverse in K_d; errors on zero.
pub fn alg_inv(a: &AlgNum) -> Result<AlgNum, ArithError> {
    a.checked_inv()
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_poly().to_string();
        write!(f, "{}", s.replace('t', "g"))
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in K_{}", self, self.field.d)
    }
}

impl<'b> Add<&'b AlgNum> for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &'b AlgNum) -> AlgNum {
        self.check_field(rhs);
        AlgNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'b> Sub<&'b AlgNum> for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &'b AlgNum) -> AlgNum {
        self.check_field(rhs);
        AlgNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'b> Mul<&'b AlgNum> for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &'b AlgNum) -> AlgNum {
        self.mul_impl(rhs)
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        &self + &rhs
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        &self - &rhs
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        self.mul_impl(&rhs)
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        self.clone().neg()
    }
}

impl<'a> AddAssign<&'a AlgNum> for AlgNum {
    fn add_assign(&mut self, rhs: &'a AlgNum) {
        self.check_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> SubAssign<&'a AlgNum> for AlgNum {
    fn sub_assign(&mut self, rhs: &'a AlgNum) {
        self.check_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl<'a> MulAssign<&'a AlgNum> for AlgNum {
    fn mul_assign(&mut self, rhs: &'a AlgNum) {
        *self = self.mul_impl(rhs);
    }
}

impl Field for AlgNum {
    fn is_zero(&self) -> bool {
        AlgNum::is_zero(self)
    }

    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn zero_like(&self) -> Self {
        AlgNum::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        AlgNum::one(&self.field)
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        AlgNum::from_rational(&self.field, q.clone())
    }

    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero in K_d")
    }

    fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    fn mul_int(&self, n: i64) -> Self {
        let n = Rational::from(n);
        AlgNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * &n).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(d: u32) -> Arc<FieldSpec> {
        Arc::new(real_subfield_minpoly(d))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), UPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(8), UPoly::from_ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(6), UPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in 1..=36u32 {
            let mut prod = UPoly::one();
            for m in (1..=n).filter(|m| n % m == 0) {
                let c = cyclotomic(m);
                assert!(c.coeffs().iter().all(|x| x.is_integer()), "Φ_{m} integral");
                prod = prod.mul(&c);
            }
            let expected = UPoly::monomial(Rational::one(), n as usize).sub(&UPoly::one());
            assert_eq!(prod, expected, "n = {n}");
            if n >= 2 {
                assert!(cyclotomic(n).coeff(0).abs().is_one());
            }
        }
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(real_subfield_minpoly(3).minpoly(), &UPoly::from_ints(&[-1, 1]));
        assert_eq!(real_subfield_minpoly(4).minpoly(), &UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(real_subfield_minpoly(5).minpoly(), &UPoly::from_ints(&[-1, -1, 1]));
        assert_eq!(real_subfield_minpoly(2).minpoly(), &UPoly::from_ints(&[0, 1]));
    }

    #[test]
    fn minpoly_degree_is_half_totient() {
        for d in 2..=24u32 {
            let field = real_subfield_minpoly(d);
            assert_eq!(field.degree() as u32, euler_phi(2 * d) / 2, "d = {d}");
            assert!(field.minpoly().is_monic());
        }
    }

    #[test]
    fn minpoly_matches_numeric_root() {
        for d in 2..=16u32 {
            let field = real_subfield_minpoly(d);
            let g = 2.0 * (std::f64::consts::PI / d as f64).cos();
            let v: f64 = field
                .minpoly()
                .coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * g + c.to_f64());
            assert!(v.abs() < 1e-9, "d = {d}: {v}");
        }
    }

    #[test]
    fn lambda_examples() {
        let k3 = field(3);
        assert_eq!(embed_lambda(&k3, 1).unwrap().to_rational(), Some(q(1, 2)));
        let k4 = field(4);
        assert!(embed_lambda(&k4, 2).unwrap().is_zero());
        let l1 = embed_lambda(&k4, 1).unwrap();
        assert_eq!(l1.coeffs(), &[Rational::zero(), q(1, 2)]);
        assert_eq!((&l1 * &l1).to_rational(), Some(q(1, 2)));
        assert!(embed_lambda(&k4, 0).is_err());
        assert!(embed_lambda(&k4, 4).is_err());
    }

    #[test]
    fn inverse_examples() {
        let k4 = field(4);
        assert!(alg_inv(&AlgNum::one(&k4)).unwrap().is_one());
        let g = AlgNum::gamma(&k4);
        assert_eq!(alg_inv(&g).unwrap().coeffs(), &[Rational::zero(), q(1, 2)]);
        let k5 = field(5);
        let g = AlgNum::gamma(&k5);
        assert_eq!(alg_inv(&g).unwrap().coeffs(), &[q(-1, 1), q(1, 1)]);
        assert_eq!(alg_inv(&AlgNum::zero(&k5)), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn chebyshev_values_at_critical_points() {
        for d in 2..=12u32 {
            let k = field(d);
            let t = crate::chebyshev::chebyshev_t_upoly(d);
            let dt = t.derivative();
            for j in 1..d as i64 {
                let lam = embed_lambda(&k, j).unwrap();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                assert_eq!(t.eval_in(&lam).to_rational(), Some(Rational::from(sign)), "d={d} k={j}");
                assert!(dt.eval_in(&lam).is_zero(), "d={d} k={j}");
            }
        }
    }

    fn arb_elem(k: Arc<FieldSpec>) -> impl Strategy<Value = AlgNum> {
        let n = k.degree();
        proptest::collection::vec((-20i64..20, 1i64..6), n)
            .prop_map(move |v| AlgNum::from_poly(&k, &UPoly::new(v.into_iter().map(|(a, b)| q(a, b)).collect())))
    }

    fn arb_triple() -> impl Strategy<Value = (AlgNum, AlgNum, AlgNum)> {
        (3u32..13).prop_flat_map(|d| {
            let k = field(d);
            (arb_elem(k.clone()), arb_elem(k.clone()), arb_elem(k))
        })
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &alg_inv(&a).unwrap()).is_one());
            }
        }
    }
}
