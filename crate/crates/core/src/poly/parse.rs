//! Text format for rational polynomials:
//!
//! ```text
//! poly   := [sign] term { sign term }      sign := '+' | '-'
//! term   := coeff [ '*' monos ] | monos    monos := varpow { '*' varpow }
//! varpow := var [ '^' nat ]                var := 'x' | 'y' | 'z'
//! coeff  := nat [ '/' nat ]
//! ```
//!
//! Whitespace is ignored everywhere. Positions in errors are 1-based
//! character offsets into the original text.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Monomial, MonomialOrder, QPoly};
use crate::arith::Rational;
use crate::error::ParseError;

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end_pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end_pos, |&(p, _)| p)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return self.syntax("expected a number");
        }
        let digits: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let n = self.nat()?;
        if self.peek() == Some('/') {
            self.at += 1;
            let pos = self.pos();
            let d = self.nat()?;
            if d.is_zero() {
                return Err(ParseError::Syntax { pos, msg: "zero denominator".into() });
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_int(n))
        }
    }

    fn varpow(&mut self, mono: &mut [u16; 3]) -> Result<(), ParseError> {
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return self.syntax("expected a variable");
        };
        let idx = match c {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            c if c.is_ascii_alphabetic() => return Err(ParseError::UnknownVariable { pos, var: c }),
            _ => return self.syntax("expected a variable"),
        };
        if idx >= self.nvars {
            return Err(ParseError::UnknownVariable { pos, var: c });
        }
        self.at += 1;
        let mut e: u32 = 1;
        if self.peek() == Some('^') {
            self.at += 1;
            let epos = self.pos();
            let n = self.nat()?;
            e = u32::try_from(n).map_err(|_| ParseError::ExponentOverflow { pos: epos })?;
        }
        let total = mono[idx] as u32 + e;
        mono[idx] = u16::try_from(total).map_err(|_| ParseError::ExponentOverflow { pos })?;
        Ok(())
    }

    fn monos(&mut self, mono: &mut [u16; 3]) -> Result<(), ParseError> {
        self.varpow(mono)?;
        while self.peek() == Some('*') {
            self.at += 1;
            self.varpow(mono)?;
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut mono = [0u16; 3];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some('*') {
                    self.at += 1;
                    self.monos(&mut mono)?;
                }
                Ok((Monomial(mono), c))
            }
            Some(_) => {
                self.monos(&mut mono)?;
                Ok((Monomial(mono), Rational::one()))
            }
            None => self.syntax("expected a term"),
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.at += 1;
                Some(false)
            }
            Some('-') => {
                self.at += 1;
                Some(true)
            }
            _ => None,
        }
    }
}

/// Parse a polynomial in `nvars` (2 or 3) variables.
pub fn parse(text: &str, nvars: usize) -> Result<QPoly, ParseError> {
    assert!(nvars == 2 || nvars == 3, "only 2 or 3 variables are supported");
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + 1, c))
        .collect();
    let end_pos = text.chars().count() + 1;
    let mut p = Parser { chars, at: 0, end_pos, nvars };
    let mut terms = Vec::new();
    let mut neg = p.sign().unwrap_or(false);
    loop {
        let (m, c) = p.term()?;
        terms.push((m, if neg { -c } else { c }));
        match p.sign() {
            Some(s) => neg = s,
            None => break,
        }
    }
    if p.peek().is_some() {
        return p.syntax("unexpected character");
    }
    Ok(QPoly::from_terms(nvars, MonomialOrder::default(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p = parse("x^2 - 2*x*y + y^2", 2).unwrap();
        assert_eq!(p, QPoly::from_ints(2, &[(1, [2, 0, 0]), (-2, [1, 1, 0]), (1, [0, 2, 0])]));
        let t4 = parse("8*x^4+8*y^4-8*x^2*z^2-8*y^2*z^2+2*z^4", 3).unwrap();
        assert_eq!(t4.len(), 5);
        assert!(t4.is_homogeneous());
        let p = parse("1/2*x + y", 2).unwrap();
        assert_eq!(p.coeff(&Monomial::var(0)), Some(&Rational::new(1, 2)));
        assert!(parse("0", 3).unwrap().is_zero());
        assert_eq!(parse(" - x ", 3).unwrap(), QPoly::from_ints(3, &[(-1, [1, 0, 0])]));
        assert_eq!(parse("x*x", 3).unwrap(), QPoly::from_ints(3, &[(1, [2, 0, 0])]));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("x + ", 3), Err(ParseError::Syntax { pos: 5, msg: "expected a term".into() }));
        assert_eq!(parse("x + w", 3), Err(ParseError::UnknownVariable { pos: 5, var: 'w' }));
        assert_eq!(parse("z", 2), Err(ParseError::UnknownVariable { pos: 1, var: 'z' }));
        assert_eq!(parse("x^70000", 3), Err(ParseError::ExponentOverflow { pos: 1 }));
        assert!(matches!(parse("2x", 3), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("1/0*x", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("", 3), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse("x^", 3), Err(ParseError::Syntax { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(((-30i64..30, 1i64..7), (0u16..5, 0u16..5, 0u16..5)), 0..8).prop_map(|ts| {
            QPoly::from_terms(
                3,
                MonomialOrder::default(),
                ts.into_iter().map(|((n, d), (a, b, c))| (Monomial::new(a, b, c), Rational::new(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let text = p.to_string();
            prop_assert_eq!(parse(&text, 3).unwrap(), p);
        }
    }
}
