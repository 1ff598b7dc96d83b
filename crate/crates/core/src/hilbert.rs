//! Hilbert series of graded quotients `S/I`, `S = k[x, y, z]`, written as
//! `P(t) / (1 - t)^3`, and the graded dimensions of Milnor algebras.

use std::fmt;

use crate::arith::Rational;
use crate::error::CurveError;
use crate::groebner::{buchberger_with, leading_ideal, minimal_monomials, GroebnerOptions, Ideal, PairStrategy};
use crate::poly::{binomial2, Monomial, MonomialOrder, QPoly};

/// Dense integer polynomial in t, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `c * t^k`.
    pub fn term(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    /// `(1 - t)^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        (0..k).fold(IntPoly::one(), |acc, _| acc.mul(&IntPoly(vec![1, -1])))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        IntPoly(v)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().skip(1).map(|(k, &c)| c * k as i64).collect())
    }

    /// Quotient by `1 - t` when it divides exactly.
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        if self.eval(1) != 0 {
            return None;
        }
        // p = (1 - t) q  =>  q_k = p_0 + ... + p_k
        let mut acc = 0;
        let q: Vec<i64> = self
            .0
            .iter()
            .take(self.0.len().saturating_sub(1))
            .map(|&c| {
                acc += c;
                acc
            })
            .collect();
        Some(IntPoly::new(q))
    }

    /// Largest `k` with `(1 - t)^k` dividing `self`, for nonzero `self`.
    pub fn multiplicity_at_one(&self) -> usize {
        let mut k = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            match p.div_one_minus_t() {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, a) => write!(f, "{a}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, a) => write!(f, "{a}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn colon(gens: &[Monomial], p: &Monomial) -> Vec<Monomial> {
    let q: Vec<Monomial> = gens.iter().map(|g| p.gcd(g).div(g).unwrap()).collect();
    minimal_monomials(q, MonomialOrder::Lex)
}

fn numerator_rec(gens: Vec<Monomial>) -> IntPoly {
    if gens.iter().any(|g| g.degree() == 0) {
        return IntPoly::default();
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if coprime {
        return gens
            .iter()
            .fold(IntPoly::one(), |acc, g| acc.mul(&IntPoly::one().sub(&IntPoly::term(1, g.degree() as usize))));
    }
    let mixed: Vec<&Monomial> = gens.iter().filter(|g| g.support() >= 2).collect();
    let mut freq = [0usize; 3];
    for g in &mixed {
        for (i, slot) in freq.iter_mut().enumerate() {
            if g.0[i] > 0 {
                *slot += 1;
            }
        }
    }
    let var = (0..3).max_by_key(|&i| (freq[i], std::cmp::Reverse(i))).unwrap();
    let e = mixed.iter().map(|g| g.0[var]).max().unwrap();
    let mut pe = [0u16; 3];
    pe[var] = e;
    let pivot = Monomial(pe);

    let mut plus = gens.clone();
    plus.push(pivot);
    let plus = minimal_monomials(plus, MonomialOrder::Lex);
    let quot = colon(&gens, &pivot);
    numerator_rec(plus).add(&numerator_rec(quot).shift(e as usize))
}

/// Numerator `P(t)` of the Hilbert series of `S / (gens)` for monomials in
/// three variables.
pub fn hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    numerator_rec(minimal_monomials(gens.to_vec(), MonomialOrder::Lex))
}

/// `dim N_k` for `k = 0..=kmax` from the numerator of `N`.
pub fn dims_from_numerator(p: &IntPoly, kmax: usize) -> Vec<i64> {
    (0..=kmax)
        .map(|k| {
            p.coeffs()
                .iter()
                .enumerate()
                .take(k + 1)
                .map(|(j, &c)| c * binomial2((k - j + 2) as i64) as i64)
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: IntPoly,
    /// `dim N_k`, `k = 0..=kmax`.
    pub dims: Vec<i64>,
    /// Value of `dims` on the final constant stretch `[stabilized_from, kmax]`,
    /// when that stretch has length at least two.
    pub stabilized_value: Option<i64>,
    pub stabilized_from: Option<usize>,
}

impl HilbertData {
    pub fn from_numerator(numerator: IntPoly, kmax: usize) -> Self {
        let dims = dims_from_numerator(&numerator, kmax);
        let mut from = dims.len() - 1;
        while from > 0 && dims[from - 1] == dims[kmax] {
            from -= 1;
        }
        let (stabilized_value, stabilized_from) =
            if from < kmax { (Some(dims[kmax]), Some(from)) } else { (None, None) };
        HilbertData { numerator, dims, stabilized_value, stabilized_from }
    }

    /// `dim N_k` for any k, not limited to the stored range.
    pub fn dim(&self, k: usize) -> i64 {
        dims_from_numerator(&self.numerator, k)[k]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ProfileOptions {
    pub kmax: Option<usize>,
    pub strategy: PairStrategy,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { kmax: None, strategy: PairStrategy::Normal }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorProfile {
    pub d: u32,
    pub hilbert: HilbertData,
    /// `dim M_k` for `k = 3(d-2)+1`.
    pub tau: i64,
    /// `P / (1 - t)^2` when the Milnor algebra has Krull dimension one.
    pub q_polynomial: Option<IntPoly>,
    /// Minimal generators of the leading-term ideal of the Jacobian ideal.
    pub leading_ideal: Vec<Monomial>,
}

impl MilnorProfile {
    pub fn tau_index(d: u32) -> usize {
        3 * (d as usize - 2) + 1
    }
}

/// Hilbert data of the Milnor algebra `S / (f_x, f_y, f_z)`.
pub fn milnor_profile(f: &QPoly) -> Result<MilnorProfile, CurveError> {
    milnor_profile_with(f, ProfileOptions::default())
}

pub fn milnor_profile_with(f: &QPoly, opts: ProfileOptions) -> Result<MilnorProfile, CurveError> {
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() {
        return Err(CurveError::NotHomogeneous);
    }
    let d = f.degree();
    if d < 2 {
        return Err(CurveError::DegreeOutOfRange { d, lo: 2, hi: u32::MAX });
    }
    let ideal = Ideal::jacobian(f, MonomialOrder::Grevlex);
    if ideal.generators().is_empty() {
        return Err(CurveError::ZeroJacobian);
    }
    let basis = buchberger_with(&ideal, GroebnerOptions { strategy: opts.strategy, degree_bound: None });
    let lt = leading_ideal(&basis);
    let numerator = hilbert_numerator(&lt);
    let kmax = opts.kmax.unwrap_or(3 * d as usize);
    let hilbert = HilbertData::from_numerator(numerator, kmax);
    let tau = hilbert.dim(MilnorProfile::tau_index(d));
    let q_polynomial = match hilbert.numerator.multiplicity_at_one() {
        2 => hilbert.numerator.div_one_minus_t().and_then(|q| q.div_one_minus_t()),
        _ => None,
    };
    Ok(MilnorProfile { d, hilbert, tau, q_polynomial, leading_ideal: lt })
}

/// Closed form of the Milnor algebra numerator of the Chebyshev curve of
/// degree d.
pub fn chebyshev_pm_closed_form(d: u32) -> IntPoly {
    assert!(d >= 2, "degree at least 2");
    let m = (d / 2) as usize;
    let mi = m as i64;
    let terms: Vec<(i64, usize)> = if d.is_multiple_of(2) {
        vec![(1, 0), (-3, 2 * m - 1), (mi - 1, 4 * m - 3), (3, 4 * m - 2), (-mi, 4 * m - 1)]
    } else {
        vec![(1, 0), (-3, 2 * m), (mi, 4 * m - 1), (2, 4 * m), (-mi, 4 * m + 1)]
    };
    terms.into_iter().fold(IntPoly::default(), |acc, (c, k)| acc.add(&IntPoly::term(c, k)))
}

/// Number of nodes of the Chebyshev curve: `2m(m-1)` for `d = 2m`, `2m^2`
/// for `d = 2m+1`.
pub fn expected_node_count(d: u32) -> u32 {
    let m = d / 2;
    if d.is_multiple_of(2) {
        2 * m * (m.max(1) - 1)
    } else {
        2 * m * m
    }
}

/// Hilbert data of `S / I` for a homogeneous ideal.
pub fn quotient_hilbert(ideal: &Ideal<Rational>, kmax: usize) -> HilbertData {
    let basis = buchberger_with(ideal, GroebnerOptions::default());
    HilbertData::from_numerator(hilbert_numerator(&leading_ideal(&basis)), kmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::{projective_curve, Sign};
    use crate::poly::parse;
    use proptest::prelude::*;

    fn mono(e: [u16; 3]) -> Monomial {
        Monomial(e)
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(hilbert_numerator(&[]), IntPoly::one());
        assert_eq!(
            hilbert_numerator(&[mono([1, 0, 0]), mono([0, 1, 0]), mono([0, 0, 1])]),
            IntPoly::new(vec![1, -3, 3, -1])
        );
        assert_eq!(
            hilbert_numerator(&[mono([1, 1, 0]), mono([1, 0, 1]), mono([0, 1, 1])]),
            IntPoly::new(vec![1, 0, -3, 2])
        );
        let d = dims_from_numerator(&IntPoly::new(vec![1, 0, -3, 2]), 5);
        assert_eq!(d, vec![1, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(chebyshev_pm_closed_form(4), IntPoly::new(vec![1, 0, 0, -3, 0, 1, 3, -2]));
        assert_eq!(chebyshev_pm_closed_form(5), IntPoly::new(vec![1, 0, 0, 0, -3, 0, 0, 2, 2, -2]));
        assert_eq!(chebyshev_pm_closed_form(3), IntPoly::new(vec![1, 0, -3, 1, 2, -1]));
        assert_eq!(expected_node_count(4), 4);
        assert_eq!(expected_node_count(5), 8);
        assert_eq!(expected_node_count(2), 0);
        assert_eq!(chebyshev_pm_closed_form(4).to_string(), "1 - 3*t^3 + t^5 + 3*t^6 - 2*t^7");
    }

    #[test]
    fn cheb4_profile() {
        let p = milnor_profile(&projective_curve(4, Sign::Plus)).unwrap();
        assert_eq!(p.hilbert.numerator, chebyshev_pm_closed_form(4));
        assert_eq!(&p.hilbert.dims[..8], &[1, 3, 6, 7, 6, 4, 4, 4]);
        assert_eq!(p.tau, 4);
        assert_eq!(p.hilbert.stabilized_from, Some(5));
        assert_eq!(p.q_polynomial.as_ref().unwrap().degree(), Some(5));
    }

    #[test]
    fn chebyshev_oracle() {
        for d in 3..=7 {
            let p = milnor_profile(&projective_curve(d, Sign::Plus)).unwrap();
            let n = &p.hilbert.numerator;
            assert_eq!(n, &chebyshev_pm_closed_form(d), "d={d}");
            assert_eq!(n.degree(), Some(2 * d as usize - 1));
            assert_eq!(n.eval(1), 0);
            assert_eq!(n.derivative().eval(1), 0);
            let nodes = expected_node_count(d) as i64;
            for k in (2 * d as usize - 3)..=(3 * d as usize) {
                assert_eq!(p.hilbert.dims[k], nodes, "d={d} k={k}");
            }
            assert_eq!(p.tau, nodes);
            assert_eq!(p.hilbert.stabilized_value, Some(p.tau));
        }
    }

    #[test]
    fn smooth_and_nonreduced() {
        // Fermat cubic: Milnor algebra is finite, no Q
        let p = milnor_profile(&parse("x^3 + y^3 + z^3", 3).unwrap()).unwrap();
        assert_eq!(p.tau, 0);
        assert_eq!(p.q_polynomial, None);
        assert_eq!(p.hilbert.numerator, IntPoly::new(vec![1, 0, -3, 0, 3, 0, -1]));
        // three concurrent lines (ordinary triple point)
        let p = milnor_profile(&parse("x^3 - y^3", 3).unwrap()).unwrap();
        assert_eq!(p.tau, 4);
        assert!(matches!(milnor_profile(&parse("x^2 + y", 3).unwrap()), Err(CurveError::NotHomogeneous)));
        assert!(matches!(milnor_profile(&parse("x", 3).unwrap()), Err(CurveError::DegreeOutOfRange { .. })));
    }

    fn arb_monos() -> impl Strategy<Value = Vec<Monomial>> {
        proptest::collection::vec((0u16..4, 0u16..4, 0u16..4), 1..6)
            .prop_map(|v| v.into_iter().map(|(a, b, c)| Monomial::new(a, b, c)).filter(|m| m.degree() > 0).collect())
    }

    proptest! {
        #[test]
        fn numerator_matches_direct_count(gens in arb_monos()) {
            let p = hilbert_numerator(&gens);
            let dims = dims_from_numerator(&p, 9);
            for (k, &dk) in dims.iter().enumerate() {
                let count = crate::poly::monomial_basis(k as u32, 3, MonomialOrder::Grevlex)
                    .into_iter()
                    .filter(|m| !gens.iter().any(|g| g.divides(m)))
                    .count();
                prop_assert_eq!(dk, count as i64);
            }
        }
    }
}
