//! Chebyshev curves `T_d(x) ± T_d(y) = 0` and their exact node data over
//! K_d = ℚ(cos(π/d)).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{cos_multiple, embed_lambda, real_subfield_minpoly, AlgNum, Field, FieldSpec, Rational, UPoly};
use crate::error::CurveError;
use crate::poly::{KPoly, Monomial, MonomialOrder, QPoly};

/// Which of the two curves `T_d(x) + T_d(y)` or `T_d(x) - T_d(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(format!("unknown sign `{s}`, expected plus or minus")),
        }
    }
}

/// Coefficients of T_d, lowest degree first.
pub fn chebyshev_t(d: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(1)];
    if d == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(1)];
    for _ in 1..d {
        let mut next = vec![BigInt::from(0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

pub fn chebyshev_t_upoly(d: u32) -> UPoly {
    UPoly::new(chebyshev_t(d).into_iter().map(Rational::from_int).collect())
}

/// `T_d(x) ± T_d(y)` in the two variables x, y.
pub fn affine_curve(d: u32, sign: Sign) -> QPoly {
    let t = chebyshev_t(d);
    let mut terms = Vec::new();
    for (k, c) in t.iter().enumerate() {
        if c == &BigInt::from(0) {
            continue;
        }
        let k = k as u16;
        let c = Rational::from_int(c.clone());
        terms.push((Monomial::new(k, 0, 0), c.clone()));
        terms.push((Monomial::new(0, k, 0), if sign == Sign::Plus { c } else { -c }));
    }
    QPoly::from_terms(2, MonomialOrder::default(), terms)
}

/// Homogenization of [`affine_curve`] with respect to z.
pub fn projective_curve(d: u32, sign: Sign) -> QPoly {
    affine_curve(d, sign).homogenize(d).expect("degree d curve")
}

pub fn field_for(d: u32) -> Arc<FieldSpec> {
    Arc::new(real_subfield_minpoly(d))
}

/// `constant * ∏ factors` over K_d.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub constant: Rational,
    pub factors: Vec<KPoly>,
}

impl Factorization {
    pub fn expand(&self) -> KPoly {
        let first = self.factors.first().expect("at least one factor");
        let one = first.leading_coeff().unwrap().one_like();
        let c = one.from_rational_like(&self.constant);
        self.factors
            .iter()
            .fold(KPoly::constant(c, 2), |acc, f| acc.mul(f))
    }
}

fn kpoly(terms: Vec<([u16; 2], AlgNum)>) -> KPoly {
    KPoly::from_terms(
        2,
        MonomialOrder::default(),
        terms.into_iter().map(|([a, b], c)| (Monomial::new(a, b, 0), c)),
    )
}

fn linear(field: &Arc<FieldSpec>, sign_y: i64) -> KPoly {
    let one = AlgNum::one(field);
    kpoly(vec![([1, 0], one.clone()), ([0, 1], one.from_rational_like(&Rational::from(sign_y)))])
}

/// `x^2 - 2c*xy + y^2 - (1 - c^2)`.
pub fn conic(field: &Arc<FieldSpec>, c: &AlgNum) -> KPoly {
    let one = AlgNum::one(field);
    let two = one.mul_int(2);
    let konst = &(c * c) - &one;
    kpoly(vec![([2, 0], one.clone()), ([1, 1], -(&two * c)), ([0, 2], one), ([0, 0], konst)])
}

fn lambda(field: &Arc<FieldSpec>, k: u32) -> AlgNum {
    embed_lambda(field, k as i64).expect("index within 1..d-1")
}

/// Number of conics `g_k` in the minus factorization.
pub fn minus_conic_count(d: u32) -> u32 {
    let m = d / 2;
    if d.is_multiple_of(2) {
        m - 1
    } else {
        m
    }
}

/// Conic `g_k` of the minus family: `c = λ_{2k}`.
pub fn minus_conic(field: &Arc<FieldSpec>, k: u32) -> KPoly {
    conic(field, &lambda(field, 2 * k))
}

/// Splitting of `T_d(x) ± T_d(y)` into linear and quadratic factors over
/// K_d, leading constant `2^(d-1)`.
pub fn factor_curve(field: &Arc<FieldSpec>, sign: Sign) -> Result<Factorization, CurveError> {
    let d = field.d();
    if d < 3 {
        return Err(CurveError::DegreeOutOfRange { d, lo: 3, hi: u32::MAX });
    }
    let m = d / 2;
    let even = d.is_multiple_of(2);
    let mut factors = Vec::new();
    match sign {
        Sign::Minus => {
            factors.push(linear(field, -1));
            if even {
                factors.push(linear(field, 1));
            }
            for k in 1..=minus_conic_count(d) {
                factors.push(minus_conic(field, k));
            }
        }
        Sign::Plus if !even => {
            factors.push(linear(field, 1));
            for k in 1..=m {
                // x^2 + 2λ_{2k}xy + ...: the conic of -λ_{2k}
                factors.push(conic(field, &-lambda(field, 2 * k)));
            }
        }
        Sign::Plus => {
            for k in 1..=m {
                factors.push(conic(field, &-lambda(field, 2 * k - 1)));
            }
        }
    }
    let constant = Rational::from_int(BigInt::from(2).pow(d - 1));
    Ok(Factorization { constant, factors })
}

/// Grid point `(λ_p, λ_q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub p: u32,
    pub q: u32,
    pub x: AlgNum,
    pub y: AlgNum,
}

/// Everything about the Chebyshev curve of degree d.
#[derive(Clone, Debug)]
pub struct ChebData {
    pub d: u32,
    pub field: Arc<FieldSpec>,
    pub t: Vec<BigInt>,
    pub f_plus: QPoly,
    pub f_minus: QPoly,
    /// Homogenized `f_plus`.
    pub f: QPoly,
    /// `λ_1, ..., λ_{d-1}`.
    pub lambdas: Vec<AlgNum>,
    /// `p + q` odd: nodes of `f_plus`.
    pub a_points: Vec<GridPoint>,
    /// `p + q` even: nodes of `f_minus`.
    pub b_points: Vec<GridPoint>,
    pub factors_plus: Factorization,
    pub factors_minus: Factorization,
}

pub fn build(d: u32) -> Result<ChebData, CurveError> {
    if d < 3 {
        return Err(CurveError::DegreeOutOfRange { d, lo: 3, hi: u32::MAX });
    }
    let field = field_for(d);
    let lambdas: Vec<AlgNum> = (1..d).map(|k| lambda(&field, k)).collect();
    let mut a_points = Vec::new();
    let mut b_points = Vec::new();
    for p in 1..d {
        for q in 1..d {
            let pt = GridPoint {
                p,
                q,
                x: lambdas[p as usize - 1].clone(),
                y: lambdas[q as usize - 1].clone(),
            };
            if (p + q) % 2 == 1 {
                a_points.push(pt);
            } else {
                b_points.push(pt);
            }
        }
    }
    Ok(ChebData {
        d,
        t: chebyshev_t(d),
        f_plus: affine_curve(d, Sign::Plus),
        f_minus: affine_curve(d, Sign::Minus),
        f: projective_curve(d, Sign::Plus),
        lambdas,
        a_points,
        b_points,
        factors_plus: factor_curve(&field, Sign::Plus)?,
        factors_minus: factor_curve(&field, Sign::Minus)?,
        field,
    })
}

/// Local behaviour of an affine plane curve at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub on_curve: bool,
    pub singular: bool,
    /// Hessian determinant nonzero.
    pub nondegenerate: bool,
}

impl PointCheck {
    pub fn is_node(&self) -> bool {
        self.on_curve && self.singular && self.nondegenerate
    }
}

pub fn check_point(f: &QPoly, x: &AlgNum, y: &AlgNum) -> Result<PointCheck, CurveError> {
    let pt = [x.clone(), y.clone()];
    let fx = f.partial(0);
    let fy = f.partial(1);
    let on_curve = f.evaluate_in(&pt)?.is_zero();
    let singular = fx.evaluate_in(&pt)?.is_zero() && fy.evaluate_in(&pt)?.is_zero();
    let hxx = fx.partial(0).evaluate_in(&pt)?;
    let hxy = fx.partial(1).evaluate_in(&pt)?;
    let hyy = fy.partial(1).evaluate_in(&pt)?;
    let det = &(&hxx * &hyy) - &(&hxy * &hxy);
    Ok(PointCheck { on_curve, singular, nondegenerate: !det.is_zero() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeFailure {
    pub p: u32,
    pub q: u32,
    pub curve: Sign,
    pub check: PointCheck,
}

/// Result of checking every grid point of both families.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeReport {
    pub d: u32,
    pub a_checked: usize,
    pub b_checked: usize,
    pub failures: Vec<NodeFailure>,
}

impl NodeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every A-point is a node of `f_plus` and every B-point a node
/// of `f_minus`, exactly in K_d.
pub fn verify_nodes(data: &ChebData) -> Result<NodeReport, CurveError> {
    let mut failures = Vec::new();
    for (curve, f, pts) in [
        (Sign::Plus, &data.f_plus, &data.a_points),
        (Sign::Minus, &data.f_minus, &data.b_points),
    ] {
        for pt in pts {
            let check = check_point(f, &pt.x, &pt.y)?;
            if !check.is_node() {
                failures.push(NodeFailure { p: pt.p, q: pt.q, curve, check });
            }
        }
    }
    Ok(NodeReport { d: data.d, a_checked: data.a_points.len(), b_checked: data.b_points.len(), failures })
}

/// The four common points of the minus-family conics `g_k` and `g_l`:
/// `±(λ_{k+l}, λ_{k-l})` and `±(λ_{k-l}, λ_{k+l})`, with λ_j = cos(jπ/d)
/// for any integer j.
pub fn conic_intersections(data: &ChebData, k: u32, l: u32) -> Result<[(AlgNum, AlgNum); 4], CurveError> {
    let n = minus_conic_count(data.d);
    if !(1 <= k && k < l && l <= n) {
        return Err(CurveError::IndexOutOfRange(format!("need 1 <= k < l <= {n}, got k={k}, l={l}")));
    }
    let field = &data.field;
    let s = cos_multiple(field, (k + l) as i64);
    let t = cos_multiple(field, k as i64 - l as i64);
    let pts = [
        (s.clone(), t.clone()),
        (-s.clone(), -t.clone()),
        (t.clone(), s.clone()),
        (-t, -s),
    ];
    let (gk, gl) = (minus_conic(field, k), minus_conic(field, l));
    for (x, y) in &pts {
        let pt = [x.clone(), y.clone()];
        if !gk.evaluate(&pt)?.is_zero() || !gl.evaluate(&pt)?.is_zero() {
            return Err(CurveError::Verification(format!("({x}, {y}) is not on g_{k} and g_{l}")));
        }
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_t(0), ints(&[1]));
        assert_eq!(chebyshev_t(1), ints(&[0, 1]));
        assert_eq!(chebyshev_t(3), ints(&[0, -3, 0, 4]));
        assert_eq!(chebyshev_t(4), ints(&[1, 0, -8, 0, 8]));
        for d in 1..15 {
            assert_eq!(chebyshev_t(d).last().unwrap(), &BigInt::from(2).pow(d - 1));
        }
    }

    #[test]
    fn curves() {
        assert_eq!(affine_curve(4, Sign::Plus), parse("8*x^4 + 8*y^4 - 8*x^2 - 8*y^2 + 2", 2).unwrap());
        assert_eq!(affine_curve(3, Sign::Minus), parse("4*x^3 - 3*x - 4*y^3 + 3*y", 2).unwrap());
        assert_eq!(
            projective_curve(4, Sign::Plus),
            parse("8*x^4 - 8*x^2*z^2 + 8*y^4 - 8*y^2*z^2 + 2*z^4", 3).unwrap()
        );
    }

    #[test]
    fn build_examples() {
        let c4 = build(4).unwrap();
        assert_eq!(c4.a_points.len(), 4);
        let half_sqrt2 = &c4.lambdas[0];
        assert_eq!((half_sqrt2 * half_sqrt2).to_rational(), Some(Rational::new(1, 2)));
        assert!(c4.lambdas[1].is_zero());
        let coords: Vec<(u32, u32)> = c4.a_points.iter().map(|p| (p.p, p.q)).collect();
        assert_eq!(coords, vec![(1, 2), (2, 1), (2, 3), (3, 2)]);
        assert_eq!(build(5).unwrap().a_points.len(), 8);
        let c3 = build(3).unwrap();
        let b: Vec<(Option<Rational>, Option<Rational>)> =
            c3.b_points.iter().map(|p| (p.x.to_rational(), p.y.to_rational())).collect();
        let h = Rational::new(1, 2);
        assert_eq!(b, vec![(Some(h.clone()), Some(h.clone())), (Some(-h.clone()), Some(-h))]);
        assert!(build(2).is_err());
    }

    #[test]
    fn factor_examples() {
        let k3 = field_for(3);
        let f = factor_curve(&k3, Sign::Minus).unwrap();
        assert_eq!(f.constant, Rational::from(4));
        let rat: Vec<QPoly> = f.factors.iter().map(|g| g.to_rational().unwrap()).collect();
        assert_eq!(rat, vec![parse("x - y", 2).unwrap(), parse("x^2 + x*y + y^2 - 3/4", 2).unwrap()]);
        let k5 = field_for(5);
        let f = factor_curve(&k5, Sign::Plus).unwrap();
        assert_eq!(f.constant, Rational::from(16));
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn factorization_identity() {
        for d in 3..=10 {
            let k = field_for(d);
            for sign in [Sign::Plus, Sign::Minus] {
                let fac = factor_curve(&k, sign).unwrap();
                assert_eq!(fac.expand(), affine_curve(d, sign).promote(&k), "d={d} {sign}");
            }
        }
    }

    #[test]
    fn grid_and_nodes() {
        for d in 3..=10 {
            let c = build(d).unwrap();
            assert_eq!(c.a_points.len() as u32, crate::hilbert::expected_node_count(d));
            assert_eq!(c.a_points.len() + c.b_points.len(), ((d - 1) * (d - 1)) as usize);
            let report = verify_nodes(&c).unwrap();
            assert!(report.passed(), "d={d}: {:?}", report.failures);
            if d % 2 == 1 {
                let flipped = c.f_plus.substitute(&[parse("x", 2).unwrap(), parse("-y", 2).unwrap()]);
                assert_eq!(flipped, c.f_minus);
            }
        }
    }

    #[test]
    fn non_node_grid_point() {
        let c = build(3).unwrap();
        let check = check_point(&c.f_plus, &c.lambdas[0], &c.lambdas[0]).unwrap();
        assert!(check.singular && !check.on_curve);
        assert_eq!(c.f_plus.evaluate_in(&[c.lambdas[0].clone(), c.lambdas[0].clone()]).unwrap().to_rational(), Some(Rational::from(-2)));
        let check = check_point(&c.f_plus, &c.lambdas[0], &c.lambdas[1]).unwrap();
        assert!(check.is_node());
    }

    #[test]
    fn conic_examples() {
        let c6 = build(6).unwrap();
        let pts = conic_intersections(&c6, 1, 2).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(pts[i], pts[j]);
            }
        }
        let c5 = build(5).unwrap();
        for (x, y) in conic_intersections(&c5, 1, 2).unwrap() {
            assert!(c5.b_points.iter().any(|p| p.x == x && p.y == y));
        }
        assert!(conic_intersections(&c5, 1, 1).is_err());
        assert!(conic_intersections(&c5, 1, 3).is_err());
        for d in 5..=10 {
            let c = build(d).unwrap();
            let n = minus_conic_count(d);
            for k in 1..=n {
                for l in k + 1..=n {
                    conic_intersections(&c, k, l).unwrap();
                }
            }
        }
    }
}
