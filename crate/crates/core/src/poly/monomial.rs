use std::cmp::Ordering;
use std::fmt;

pub const VAR_NAMES: [char; 3] = ['x', 'y', 'z'];

/// Exponent vector in up to three variables `x > y > z`. Unused trailing
/// slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial(pub [u16; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(x: u16, y: u16, z: u16) -> Self {
        Monomial([x, y, z])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> [u16; 3] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial([other.0[0] - self.0[0], other.0[1] - self.0[1], other.0[2] - self.0[2]]))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].min(other.0[0]),
            self.0[1].min(other.0[1]),
            self.0[2].min(other.0[2]),
        ])
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] == 0 || other.0[i] == 0)
    }

    /// Number of variables with a positive exponent.
    pub fn support(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

/// Monomial order with variable priority `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..3).rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Monomials spanning the degree-`r` part: for three variables the
/// homogeneous monomials of degree exactly `r`, for two variables all
/// monomials of degree at most `r`. Both have C(r+2, 2) elements. Sorted in
/// decreasing `order`.
pub fn monomial_basis(r: u32, nvars: usize, order: MonomialOrder) -> Vec<Monomial> {
    let r = u16::try_from(r).expect("degree fits in 16 bits");
    let mut out = Vec::new();
    match nvars {
        3 => {
            for a in 0..=r {
                for b in 0..=(r - a) {
                    out.push(Monomial::new(a, b, r - a - b));
                }
            }
        }
        2 => {
            for a in 0..=r {
                for b in 0..=(r - a) {
                    out.push(Monomial::new(a, b, 0));
                }
            }
        }
        _ => panic!("only 2 or 3 variables are supported"),
    }
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

pub fn binomial2(n: i64) -> usize {
    // C(n, 2) with C(n, 2) = 0 for n < 2
    if n < 2 {
        0
    } else {
        (n * (n - 1) / 2) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bases() {
        let b1 = monomial_basis(1, 3, MonomialOrder::Grevlex);
        assert_eq!(b1, vec![Monomial::var(0), Monomial::var(1), Monomial::var(2)]);
        assert_eq!(monomial_basis(2, 3, MonomialOrder::Grevlex).len(), 6);
        let b2 = monomial_basis(2, 2, MonomialOrder::Grevlex);
        assert_eq!(b2.len(), 6);
        assert!(b2.contains(&Monomial::ONE));
        for r in 0..12 {
            assert_eq!(monomial_basis(r, 3, MonomialOrder::Lex).len(), binomial2(r as i64 + 2));
        }
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&Monomial::new(1, 0, 1), &Monomial::new(0, 2, 0)), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&Monomial::new(1, 0, 1), &Monomial::new(0, 2, 0)), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial::new(0, 0, 3), &Monomial::new(1, 0, 0)), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        (0u16..6, 0u16..6, 0u16..6).prop_map(|(a, b, c)| Monomial::new(a, b, c))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_total(u in arb_mono(), v in arb_mono(), w in arb_mono()) {
            for o in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
                let c = o.cmp(&u, &v);
                prop_assert_eq!(c == Ordering::Equal, u == v);
                prop_assert_eq!(o.cmp(&u.mul(&w), &v.mul(&w)), c);
                prop_assert_eq!(o.cmp(&v, &u), c.reverse());
                if c == Ordering::Less && o.cmp(&v, &w) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&u, &w), Ordering::Less);
                }
                prop_assert_ne!(o.cmp(&Monomial::ONE, &u.mul(&Monomial::var(0))), Ordering::Greater);
            }
        }
    }
}
