//! Parser for the canonical text rendering of symbols and polynomials.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{CoeffSymbol, SymMonomial, SymPoly, System};
use crate::error::Error;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { s: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&'a str, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<u32, Error> {
        self.digits()?.parse().map_err(|_| self.err("integer out of range"))
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn symbol(&mut self) -> Result<CoeffSymbol, Error> {
        let (system, fresh) = match self.peek() {
            Some(b'a') => (System::F1, false),
            Some(b'b') => (System::F2, false),
            Some(b'c') => (System::F1, true),
            _ => return Err(self.err("expected symbol")),
        };
        self.pos += 1;
        self.expect(b'(')?;
        let k = self.uint()?;
        self.expect(b',')?;
        let l = self.uint()?;
        self.expect(b')')?;
        let mut deriv = 0;
        while self.eat(b'\'') {
            deriv += 1;
        }
        Ok(CoeffSymbol { system, k, l, deriv, fresh })
    }

    fn rational(&mut self) -> Result<BigRational, Error> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.eat(b'/') {
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<(SymMonomial, BigRational), Error> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.rational()?,
                _ => {
                    let sym = self.symbol()?;
                    let e = if self.eat(b'^') { self.uint()? } else { 1 };
                    factors.push((sym, e));
                }
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((SymMonomial::from_factors(factors), coeff))
    }
}

impl FromStr for CoeffSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut c = Cursor::new(s.trim());
        let sym = c.symbol()?;
        if !c.at_end() {
            return Err(c.err("trailing input"));
        }
        Ok(sym)
    }
}

impl FromStr for SymPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut c = Cursor::new(s);
        let mut out = SymPoly::zero();
        c.skip_ws();
        let mut negative = c.eat(b'-');
        loop {
            c.skip_ws();
            let (m, coeff) = c.term()?;
            out.add_term(m, if negative { -coeff } else { coeff });
            c.skip_ws();
            if c.at_end() {
                break;
            }
            negative = if c.eat(b'+') {
                false
            } else if c.eat(b'-') {
                true
            } else {
                return Err(c.err("expected '+' or '-'"));
            };
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_roundtrip() {
        for s in ["a(0,2)", "b(3,1)''", "c(1,1)", "a(10,0)'"] {
            let sym: CoeffSymbol = s.parse().unwrap();
            assert_eq!(sym.to_string(), s);
        }
        assert!("d(0,0)".parse::<CoeffSymbol>().is_err());
        assert!("a(0,0)x".parse::<CoeffSymbol>().is_err());
    }

    #[test]
    fn poly_parse_renders_canonically() {
        let p: SymPoly = "3/7*a(0,0)^2 - b(1,0)'*a(0,1) + 2 - 1".parse().unwrap();
        let again: SymPoly = p.to_string().parse().unwrap();
        assert_eq!(p, again);
        assert_eq!(p.constant_term(), BigRational::one());
        assert_eq!("0".parse::<SymPoly>().unwrap(), SymPoly::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!("a(0,0) +".parse::<SymPoly>().is_err());
        assert!("a(0,0) a(1,0)".parse::<SymPoly>().is_err());
        assert!("1/0".parse::<SymPoly>().is_err());
    }
}
