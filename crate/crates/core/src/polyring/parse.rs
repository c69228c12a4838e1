use num_bigint::BigInt;

use super::poly::LaurentPolynomial;
use super::ratfn::RationalFunction;
use super::table::VariableTable;
use crate::error::{Error, Result};

/// Recursive-descent parser for expressions such as `1 + z*y1 + y1^2`,
/// `(1 + x2)/x1` or `x1^-1`, over a fixed variable table.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a VariableTable,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("column {}", self.pos + 1), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.power()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.unary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e).map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i32>().map_err(|_| self.err("expected integer exponent"))
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let n = self.table.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v: BigInt = text.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RationalFunction::from_poly(&LaurentPolynomial::constant(n, v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.table.index_of(name) {
                    Some(i) => Ok(RationalFunction::var(n, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_rational(text: &str, table: &VariableTable) -> Result<RationalFunction> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        table,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a Laurent polynomial; fails if the expression has a
/// non-monomial denominator.
pub fn parse_polynomial(text: &str, table: &VariableTable) -> Result<LaurentPolynomial> {
    let f = parse_rational(text, table)?;
    if f.factors().iter().any(|(_, e)| *e < 0) || !f.coeff().is_integer() {
        return Err(Error::parse("expression", format!("'{text}' is not a Laurent polynomial")));
    }
    let mono = f.mono().to_vec();
    let pos = f.numerator();
    let neg: Vec<i32> = mono.iter().map(|&e| (-e).max(0)).collect();
    Ok(pos.mul_monomial(&super::poly::Monomial::from_exps(neg).inv()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::table::VarRole;

    fn table() -> VariableTable {
        let mut t = VariableTable::new();
        for n in ["x1", "y1", "z"] {
            t.push(n, VarRole::Formal).unwrap();
        }
        t
    }

    #[test]
    fn render_parse_roundtrip() {
        let t = table();
        let p = parse_polynomial("1 + z*y1 + y1^2 - 3*x1^-2", &t).unwrap();
        let again = parse_polynomial(&p.render(&t), &t).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn fractions_and_errors() {
        let t = table();
        let f = parse_rational("(x1^2 - 1)/(x1 - 1)", &t).unwrap();
        let g = parse_rational("x1 + 1", &t).unwrap();
        assert!(f.equals(&g));
        assert!(parse_rational("w + 1", &t).is_err());
        assert!(parse_rational("1 +", &t).is_err());
        assert!(parse_polynomial("1/(1 + x1)", &t).is_err());
    }
}
