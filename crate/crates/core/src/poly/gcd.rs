//! Multivariate GCD over ℚ by recursive content / primitive-part reduction:
//! a polynomial is viewed as univariate in its highest variable with
//! coefficients in the remaining ones, and primitive pseudo-remainder
//! sequences are run at each level.

use super::{Monomial, QPoly};
use crate::arith::Rational;

fn main_var(p: &QPoly) -> Option<usize> {
    (0..p.nvars()).rev().find(|&v| p.degree_in(v) > 0)
}

/// Coefficients of `p` as a polynomial in `v`, lowest power first.
fn split(p: &QPoly, v: usize) -> Vec<QPoly> {
    let deg = p.degree_in(v) as usize;
    let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let mut e = m.0;
        let k = e[v] as usize;
        e[v] = 0;
        parts[k].push((Monomial(e), c.clone()));
    }
    parts
        .into_iter()
        .map(|ts| QPoly::from_terms(p.nvars(), p.order(), ts))
        .collect()
}

fn join(parts: &[QPoly], v: usize, template: &QPoly) -> QPoly {
    let mut terms = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        for (m, c) in part.terms() {
            let mut e = m.0;
            e[v] += k as u16;
            terms.push((Monomial(e), c.clone()));
        }
    }
    QPoly::from_terms(template.nvars(), template.order(), terms)
}

fn trim(parts: &mut Vec<QPoly>) {
    while parts.last().is_some_and(|p| p.is_zero()) {
        parts.pop();
    }
}

fn content(parts: &[QPoly]) -> QPoly {
    let mut g = QPoly::zero(parts[0].nvars());
    for p in parts {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn divide_all(parts: &[QPoly], c: &QPoly) -> Vec<QPoly> {
    parts
        .iter()
        .map(|p| p.exact_div(c).expect("content divides every coefficient"))
        .collect()
}

/// Divide out the polynomial content, then scale to integer coefficients
/// with trivial integer content.
fn primitive(parts: Vec<QPoly>) -> Vec<QPoly> {
    let c = content(&parts);
    let parts = if c.is_constant() { parts } else { divide_all(&parts, &c) };
    let s = Rational::primitive_scale(parts.iter().flat_map(|p| p.terms().iter().map(|(_, c)| c)));
    parts.iter().map(|p| p.scale(&s)).collect()
}

/// Pseudo-remainder of `a` by `b` in R[v].
fn prem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for p in r.iter_mut() {
            *p = p.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&bj.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

/// Greatest common divisor, normalized to a primitive integer polynomial
/// with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let v = match (main_var(a), main_var(b)) {
        (None, _) | (_, None) => return QPoly::constant(Rational::one(), a.nvars()),
        (Some(va), Some(vb)) => va.max(vb),
    };
    let pa = split(a, v);
    let pb = split(b, v);
    if pa.len() == 1 {
        return gcd(a, &content(&pb));
    }
    if pb.len() == 1 {
        return gcd(&content(&pa), b);
    }
    let ca = content(&pa);
    let cb = content(&pb);
    let c = gcd(&ca, &cb);
    let (mut x, mut y) = (divide_all(&pa, &ca), divide_all(&pb, &cb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() { Vec::new() } else { primitive(r) };
        if y.is_empty() {
            break;
        }
    }
    if y.len() == 1 {
        // constant remainder in v: the primitive parts are coprime
        return c.normalized();
    }
    let g = join(&primitive(x), v, a);
    c.mul(&g).normalized()
}

/// True when `p` has no repeated factor, i.e. `gcd(p, ∂p/∂x_i...)` is
/// constant.
pub fn is_squarefree(p: &QPoly) -> bool {
    let mut g = p.clone();
    for i in 0..p.nvars() {
        let d = p.partial(i);
        if d.is_zero() {
            continue;
        }
        g = gcd(&g, &d);
        if g.is_constant() {
            return true;
        }
    }
    g.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str) -> QPoly {
        parse(s, 3).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")), p("x + y"));
        assert_eq!(gcd(&p("x*y*z"), &p("x^2*z + y*z")), p("z"));
        assert!(gcd(&p("x + y"), &p("x - y")).is_constant());
        assert_eq!(gcd(&p("2*x^2*y"), &p("4*x*y^2")), p("x*y"));
        let a = p("x + y + z").mul(&p("x^3 + y^3 + z^3"));
        assert_eq!(gcd(&a, &p("x^3 + y^3 + z^3").mul(&p("x - z"))), p("x^3 + y^3 + z^3"));
    }

    #[test]
    fn gcd_of_products() {
        let f1 = p("x^2 + x*y - 3*z^2");
        let f2 = p("y - 2*z");
        let f3 = p("x*z + y^2 + 1/2*x^2");
        let a = f1.mul(&f2).mul(&f2);
        let b = f1.mul(&f3).mul(&f2);
        assert_eq!(gcd(&a, &b), f1.mul(&f2).normalized());
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(&p("x*y*z")));
        assert!(!is_squarefree(&p("x^2*y")));
        assert!(!is_squarefree(&p("x+y").mul(&p("x+y")).mul(&p("z"))));
        assert!(is_squarefree(&p("y^2*z - x^3 - x^2*z")));
    }
}
