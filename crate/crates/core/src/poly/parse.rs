//! Text format for polynomials.
//!
//! ```text
//! polynomial ::= term (('+'|'-') term)*
//! term       ::= [coeff '*'] factor ('*' factor)* | coeff
//! factor     ::= var ['^' uint]
//! coeff      ::= ['-'] uint ['/' uint]
//! var        ::= tag ('_' uint)+
//! ```
//! Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::{RingRef, Var};
use crate::coeff::Coeff;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected unsigned integer");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small_uint(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let n = self.uint().map_err(|_| Error::Parse { pos: at, msg: format!("malformed {what}") })?;
        u32::try_from(n).map_err(|_| Error::Parse { pos: at, msg: format!("{what} out of range") })
    }

    fn var(&mut self) -> Result<Var> {
        self.skip_ws();
        let start = self.pos;
        match self.s.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return self.err("expected variable"),
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'\'') {
            self.pos += 1;
        }
        let tag = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
        let mut indices = Vec::new();
        while self.s.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            if !self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                return self.err("expected index after `_`");
            }
            indices.push(self.small_uint("index")?);
        }
        if indices.is_empty() {
            return self.err(format!("variable `{tag}` needs at least one `_index`"));
        }
        Ok(Var { tag, indices })
    }
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_polynomial<C: Coeff>(text: &str, ring: &RingRef) -> Result<Polynomial<C>> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    if cur.peek().is_none() {
        return cur.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat(b'-') {
            true
        } else {
            if !cur.eat(b'+') && !first {
                return cur.err("expected `+` or `-`");
            }
            false
        };
        first = false;
        let (mut num, den, exps) = parse_term(&mut cur, ring)?;
        if negative {
            num = -num;
        }
        let c = C::from_fraction(&num, &den).ok_or(Error::Coefficient)?;
        terms.push((Monomial::from_exponents(exps), c));
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term(cur: &mut Cursor<'_>, ring: &RingRef) -> Result<(BigInt, BigInt, Vec<u32>)> {
    let mut exps = vec![0u32; ring.len()];
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    let mut need_factor = true;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        num = cur.uint()?;
        if cur.eat(b'/') {
            den = cur.uint()?;
            if den == BigInt::from(0) {
                return Err(Error::ZeroDenominator);
            }
        }
        if !cur.eat(b'*') {
            return Ok((num, den, exps));
        }
    }
    while need_factor {
        let v = cur.var()?;
        let idx = ring.index_of(&v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
        let k = if cur.eat(b'^') { cur.small_uint("exponent")? } else { 1 };
        exps[idx] = exps[idx].checked_add(k).ok_or(Error::Parse { pos: cur.pos, msg: "exponent overflow".into() })?;
        need_factor = cur.eat(b'*');
    }
    Ok((num, den, exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring::Ring;
    use crate::Rational;

    fn zring() -> RingRef {
        let mut t = Vec::new();
        for j in 1..=2 {
            for k in 1..=2 {
                t.push(vec![1, j, k]);
            }
        }
        Ring::indexed("z", t).unwrap()
    }

    #[test]
    fn binomial_two_terms() {
        let r = zring();
        let f: Polynomial<Rational> = parse_polynomial("z_1_1_1*z_1_2_2 - z_1_1_2*z_1_2_1", &r).unwrap();
        assert_eq!(f.len(), 2);
        let coeffs: Vec<String> = f.terms().iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(coeffs, ["1", "-1"]);
    }

    #[test]
    fn zero_and_fractions() {
        let r = Ring::indexed("x", [vec![1, 1], vec![1, 2]]).unwrap();
        let z: Polynomial<Rational> = parse_polynomial("0", &r).unwrap();
        assert!(z.is_zero());
        let f: Polynomial<Rational> = parse_polynomial(" 2*x_1_1^2 -1/3 * x_1_2", &r).unwrap();
        assert_eq!(f.to_string(), "2*x_1_1^2 - 1/3*x_1_2");
        assert_eq!(f.coefficient(&Monomial::from_exponents(vec![0, 1])), Rational::new((-1).into(), 3.into()));
    }

    #[test]
    fn errors() {
        let r = Ring::indexed("x", [vec![1, 1]]).unwrap();
        let e = parse_polynomial::<Rational>("x_9_9", &r).unwrap_err();
        assert_eq!(e, Error::UnknownVariable("x_9_9".into()));
        assert_eq!(parse_polynomial::<Rational>("1/0*x_1_1", &r).unwrap_err(), Error::ZeroDenominator);
        assert!(matches!(parse_polynomial::<Rational>("x_1_1^", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial::<Rational>("x_1_1^a", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial::<Rational>("x_1_1 x_1_1", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn repeated_factors_collect() {
        let r = Ring::indexed("x", [vec![1]]).unwrap();
        let f: Polynomial<Rational> = parse_polynomial("x_1*x_1^2 + x_1^3 - 3", &r).unwrap();
        assert_eq!(f.to_string(), "2*x_1^3 - 3");
    }
}
