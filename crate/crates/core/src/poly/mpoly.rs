use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, MonomialOrder};
use crate::arith::{AlgNum, Field, FieldSpec, Rational};
use crate::error::{ArithError, PolyError};

/// Sparse polynomial in 2 or 3 variables. Terms are kept in strictly
/// decreasing order under `order` and carry nonzero coefficients.
#[derive(Clone)]
pub struct MPoly<F> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, F)>,
}

pub type QPoly = MPoly<Rational>;
pub type KPoly = MPoly<AlgNum>;

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars == 2 || nvars == 3, "only 2 or 3 variables are supported");
        MPoly { nvars, order: MonomialOrder::default(), terms: Vec::new() }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        MPoly::monomial(Monomial::ONE, c, nvars)
    }

    pub fn monomial(m: Monomial, c: F, nvars: usize) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// The variable `x_i` with coefficient `one`.
    pub fn var(i: usize, one: F, nvars: usize) -> Self {
        MPoly::monomial(Monomial::var(i), one, nvars)
    }

    /// Build from arbitrary terms; like monomials are combined.
    pub fn from_terms(nvars: usize, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(nvars == 3 || m.0[2] == 0);
            match acc.get_mut(&m) {
                Some(e) => *e += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { nvars, order, terms }
    }

    /// Terms already sorted and free of zeros and duplicates.
    pub(crate) fn from_sorted(nvars: usize, order: MonomialOrder, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { nvars, order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut p = self.clone();
        p.set_order(order);
        p
    }

    pub fn set_order(&mut self, order: MonomialOrder) {
        if self.order != order {
            self.order = order;
            self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|(m, _)| *m)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest total degree of a term; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    fn aligned<'a>(&self, other: &'a MPoly<F>) -> std::borrow::Cow<'a, MPoly<F>> {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if other.order == self.order {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_order(self.order))
        }
    }

    /// `self + scale * shift * other`, merging the sorted term lists.
    pub fn add_scaled(&self, other: &MPoly<F>, scale: &F, shift: &Monomial) -> MPoly<F> {
        let other = self.aligned(other);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(m, c)| (m.mul(shift), c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, c.mul_ref(scale)));
                }
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, c.mul_ref(scale)));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = ca.add_ref(&cb.mul_ref(scale));
                        if !s.is_zero() {
                            out.push((*m, s));
                        }
                    }
                },
            }
        }
        MPoly { nvars: self.nvars, order, terms: out }
    }

    pub fn add(&self, other: &MPoly<F>) -> MPoly<F> {
        match other.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &c.one_like(), &Monomial::ONE),
        }
    }

    pub fn sub(&self, other: &MPoly<F>) -> MPoly<F> {
        match other.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &-c.one_like(), &Monomial::ONE),
        }
    }

    pub fn neg(&self) -> MPoly<F> {
        MPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> MPoly<F> {
        if s.is_zero() {
            return MPoly { nvars: self.nvars, order: self.order, terms: Vec::new() };
        }
        MPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(s))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, s: &F) -> MPoly<F> {
        if s.is_zero() {
            return MPoly { nvars: self.nvars, order: self.order, terms: Vec::new() };
        }
        MPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.mul_ref(s))).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly<F>) -> MPoly<F> {
        let other = self.aligned(other);
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let order = self.order;
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { nvars: self.nvars, order, terms }
    }

    pub fn pow(&self, e: u32, one: &F) -> MPoly<F> {
        let mut acc = MPoly::constant(one.clone(), self.nvars).with_order(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let g = f(c);
                    (!g.is_zero()).then_some((*m, g))
                })
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MPoly<F> {
        assert!(i < self.nvars);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.0;
                let k = e[i];
                e[i] -= 1;
                (Monomial(e), c.mul_int(k as i64))
            })
            .filter(|(_, c)| !c.is_zero());
        // Differentiation is not monotone for every order, so re-sort.
        MPoly::from_terms(self.nvars, self.order, terms)
    }

    /// `(f_x, f_y, f_z)` for a polynomial in three variables.
    pub fn partials(&self) -> (MPoly<F>, MPoly<F>, MPoly<F>) {
        assert_eq!(self.nvars, 3, "partials expects x, y, z");
        (self.partial(0), self.partial(1), self.partial(2))
    }

    /// Exact evaluation at a point with coordinates in the same field.
    pub fn evaluate(&self, point: &[F]) -> Result<F, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { got: point.len(), expected: self.nvars });
        }
        let zero = point[0].zero_like();
        let mut powers: Vec<Vec<F>> = (0..self.nvars)
            .map(|i| vec![point[i].one_like()])
            .collect();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_ref(&point[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t *= &powers[i][e];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Scale each term by `z^(target - deg term)`.
    pub fn homogenize(&self, target: u32) -> Result<MPoly<F>, PolyError> {
        if self.nvars != 2 {
            return Err(PolyError::VariableCount { expected: 2, got: self.nvars });
        }
        let degree = self.degree();
        if degree > target {
            return Err(PolyError::DegreeTooHigh { degree, target });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let z = (target - m.degree()) as u16;
            (Monomial::new(m.0[0], m.0[1], z), c.clone())
        });
        Ok(MPoly::from_terms(3, self.order, terms))
    }

    /// Substitute `z = 1`.
    pub fn dehomogenize(&self) -> MPoly<F> {
        assert_eq!(self.nvars, 3, "dehomogenize expects x, y, z");
        let terms = self.terms.iter().map(|(m, c)| (Monomial::new(m.0[0], m.0[1], 0), c.clone()));
        MPoly::from_terms(2, self.order, terms)
    }

    /// Substitute `x_i -> images[i]`.
    pub fn substitute(&self, images: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(images.len(), self.nvars);
        let Some((_, c0)) = self.terms.first() else {
            let n = images.first().map_or(self.nvars, |p| p.nvars);
            return MPoly::zero(n).with_order(self.order);
        };
        let one = c0.one_like();
        let out_vars = images[0].nvars;
        let mut powers: Vec<Vec<MPoly<F>>> = images
            .iter()
            .map(|_| vec![MPoly::constant(one.clone(), out_vars).with_order(self.order)])
            .collect();
        let mut acc = MPoly::zero(out_vars).with_order(self.order);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone(), out_vars).with_order(self.order);
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Multivariate division with remainder by a single divisor.
    pub fn div_rem(&self, divisor: &MPoly<F>) -> (MPoly<F>, MPoly<F>) {
        let divisor = self.aligned(divisor);
        let (lm, lc) = divisor.leading_term().cloned().expect("division by zero polynomial");
        let lc_inv = lc.inv();
        let mut p = self.clone();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            match lm.div(&m) {
                Some(shift) => {
                    let q = c.mul_ref(&lc_inv);
                    p = p.add_scaled(&divisor, &-q.clone(), &shift);
                    quot.push((shift, q));
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        (
            MPoly::from_terms(self.nvars, self.order, quot),
            MPoly::from_sorted(self.nvars, self.order, rem),
        )
    }

    pub fn exact_div(&self, divisor: &MPoly<F>) -> Result<MPoly<F>, PolyError> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Make the leading coefficient one.
    pub fn monic(&self) -> MPoly<F> {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Scale into the field's normal form (primitive integer polynomial
    /// over ℚ, monic otherwise).
    pub fn normalized(&self) -> MPoly<F> {
        match F::normalizer(self.terms.iter().map(|(_, c)| c)) {
            None => self.clone(),
            Some(s) if s.is_one() => self.clone(),
            Some(s) => self.scale(&s),
        }
    }
}

impl MPoly<Rational> {
    pub fn from_ints(nvars: usize, terms: &[(i64, [u16; 3])]) -> Self {
        MPoly::from_terms(
            nvars,
            MonomialOrder::default(),
            terms.iter().map(|&(c, e)| (Monomial(e), Rational::from(c))),
        )
    }

    /// Embed into K_d.
    pub fn promote(&self, field: &Arc<FieldSpec>) -> MPoly<AlgNum> {
        self.map_coeffs(|c| AlgNum::from_rational(field, c.clone()))
    }

    /// Evaluate at a point of K_d^n, promoting the rational coefficients.
    pub fn evaluate_in(&self, point: &[AlgNum]) -> Result<AlgNum, PolyError> {
        let Some(first) = point.first() else {
            return Err(PolyError::PointLength { got: 0, expected: self.nvars });
        };
        if point.iter().any(|p| !p.same_field(first)) {
            return Err(PolyError::Arith(ArithError::FieldMismatch));
        }
        self.promote(first.field()).evaluate(point)
    }
}

impl MPoly<AlgNum> {
    /// Recover a rational polynomial when every coefficient is rational.
    pub fn to_rational(&self) -> Option<MPoly<Rational>> {
        let terms: Option<Vec<(Monomial, Rational)>> =
            self.terms.iter().map(|(m, c)| c.to_rational().map(|q| (*m, q))).collect();
        terms.map(|t| MPoly::from_sorted(self.nvars, self.order, t))
    }
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.to_rational() {
                Some(q) => (q.is_negative(), CoeffText::Rational(q.abs())),
                None => (false, CoeffText::Compound(c.to_string())),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let is_one = *m == Monomial::ONE;
            match mag {
                CoeffText::Rational(q) => {
                    if is_one {
                        write!(f, "{q}")?;
                    } else if q.is_one() {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{q}*{m}")?;
                    }
                }
                CoeffText::Compound(s) => {
                    if is_one {
                        write!(f, "({s})")?;
                    } else {
                        write!(f, "({s})*{m}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

enum CoeffText {
    Rational(Rational),
    Compound(String),
}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
