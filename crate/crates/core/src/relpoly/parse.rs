//! Recursive-descent parser for relation polynomials.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := 'X11' | 'X12' | 'X21' | 'X22' | identifier | integer
//!         | integer '/' integer | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. A leading sign is accepted so that the
//! canonical printer's output (which may start with `-`) parses back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::CoeffPoly;
use super::poly::{RelPoly, VAR_NAMES};
use super::symbols::Symbols;
use super::PolyError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Symbols,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> PolyError {
        PolyError::Syntax { offset, message: message.into() }
    }

    fn expr(&mut self) -> Result<RelPoly, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RelPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RelPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos_after_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err(start, "expected exponent"));
            }
            let k: u32 = digits.parse().map_err(|_| self.err(start, "exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn pos_after_ws(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RelPoly, PolyError> {
        let start = self.pos_after_ws();
        match self.src.get(self.pos).copied() {
            None => Err(self.err(start, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    let at = self.pos;
                    return Err(self.err(at, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().unwrap();
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let dstart = self.pos_after_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err(dstart, "expected denominator"));
                    }
                    let den: BigInt = d.parse().unwrap();
                    if den.is_zero() {
                        return Err(self.err(dstart, "zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(RelPoly::from_coeff(CoeffPoly::constant(self.table, value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(i) = VAR_NAMES.iter().position(|v| *v == name) {
                    return Ok(RelPoly::var(self.table, i));
                }
                match self.table.index_of(name) {
                    Some(i) => Ok(RelPoly::from_coeff(CoeffPoly::symbol(self.table, i))),
                    None => Err(PolyError::UndeclaredAt { name: name.to_string(), offset: start }),
                }
            }
            Some(c) => Err(self.err(start, format!("unexpected character '{}'", c as char))),
        }
    }
}

/// Parse `text` into a canonical [`RelPoly`] over `table`.
pub fn parse_poly(text: &str, table: &Symbols) -> Result<RelPoly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, table };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        let at = p.pos;
        return Err(p.err(at, format!("unexpected character '{}'", c as char)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relpoly::poly::Monomial4;
    use crate::relpoly::symbols::SymbolTable;
    use std::sync::Arc;

    fn table() -> Symbols {
        Arc::new(SymbolTable::free(["a", "b"]).unwrap())
    }

    #[test]
    fn parses_generator() {
        let t = table();
        assert_eq!(parse_poly("X11*X22 - X12*X21 - 1", &t).unwrap(), RelPoly::sl2_generator(&t));
    }

    #[test]
    fn parses_z12() {
        let t = table();
        let p = parse_poly("2*a*X12*X22 - b*X12^2", &t).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial4([0, 1, 0, 1])).to_string(), "2*a");
        assert_eq!(p.coeff(&Monomial4([0, 2, 0, 0])).to_string(), "-b");
    }

    #[test]
    fn dangling_operator_reports_offset() {
        let t = table();
        match parse_poly("X11 + ", &t) {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_identifier() {
        let t = table();
        assert!(matches!(
            parse_poly("X11 + c", &t),
            Err(PolyError::UndeclaredAt { ref name, offset: 6 }) if name == "c"
        ));
    }

    #[test]
    fn rationals_parentheses_and_whitespace() {
        let t = table();
        let p = parse_poly(" ( 3/6 * a + X11 )^2 ", &t).unwrap();
        assert_eq!(p.to_string(), "X11^2 + a*X11 + 1/4*a^2");
        assert!(matches!(parse_poly("1/0", &t), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("(X11", &t), Err(PolyError::Syntax { offset: 4, .. })));
        assert!(matches!(parse_poly("X11 X12", &t), Err(PolyError::Syntax { offset: 4, .. })));
    }
}
