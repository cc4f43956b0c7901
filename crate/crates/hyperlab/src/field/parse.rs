//! Text grammar for field elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := atom ('^' exponent)?
//! atom    := integer | 'e' | 'O' '(' 'e' '^' exponent ')' | '(' expr ')'
//!          | '-' atom | '+' atom
//! exponent:= '-'? digits ('/' digits)?  |  '(' '-'? digits ('/' digits)? ')'
//! ```
//!
//! `e` is the infinitesimal generator. An `O(e^q)` marker is an additive
//! zero that lowers the truncation order of whatever it is added to, so
//! `1/(1-e) + O(e^3)` comes out as `1 + 1*e^1 + 1*e^2 + 1*e^3 (+O(e^3))`.
//! Rationals are reachable as quotients (`3/4`). The renderer's trailing
//! `(+O(e^q))` suffix is accepted back by the parser.

use num_bigint::BigInt;
use num_traits::One;

use crate::scalar::Rational;

use super::{AsymptoticNumber, FieldError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Errors surfaced by expression evaluation.
#[derive(Debug)]
pub enum EvalError {
    Parse(ParseError),
    Field(FieldError),
}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError::Parse(e)
    }
}
impl From<FieldError> for EvalError {
    fn from(e: FieldError) -> Self {
        EvalError::Field(e)
    }
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::Parse(e) => write!(f, "{e}"),
            EvalError::Field(e) => write!(f, "{e}"),
        }
    }
}
impl std::error::Error for EvalError {}

type Num = AsymptoticNumber<Rational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parses and evaluates a field expression over exact rationals.
pub fn parse_field_expr(src: &str) -> Result<Num, EvalError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    // accept the renderer's trailing "(+O(e^q))"
    p.skip_ws();
    let v = if p.peek() == Some(b'(') && p.lookahead_is_order_suffix() {
        p.bump();
        p.expect(b'+')?;
        let marker = p.order_marker()?;
        p.expect(b')')?;
        &v + &marker
    } else {
        v
    };
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input").into());
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn lookahead_is_order_suffix(&self) -> bool {
        let rest = &self.src[self.pos..];
        rest.starts_with(b"(+O(e^") || rest.starts_with(b"(+ O(e^")
    }

    fn expr(&mut self) -> Result<Num, EvalError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Num, EvalError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = &acc * &rhs.inv()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Num, EvalError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            let q = self.exponent()?;
            if q.is_integer() {
                let k = i64::try_from(q.to_integer())
                    .map_err(|_| self.err("exponent out of range"))?;
                return Ok(base.pow(k)?);
            }
            // fractional powers are only defined for the generator itself
            if base == Num::epsilon() {
                return Ok(Num::monomial(crate::scalar::rat(1, 1), q));
            }
            return Err(self.err("fractional exponents only apply to e").into());
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Num, EvalError> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(-self.atom()?)
            }
            Some(b'+') => {
                self.bump();
                self.atom()
            }
            Some(b'(') => {
                self.bump();
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'e') => {
                self.bump();
                Ok(Num::epsilon())
            }
            Some(b'O') => {
                self.bump();
                Ok(self.order_marker_body()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Num::scalar(Rational::from_integer(n)))
            }
            _ => Err(self.err("expected a number, 'e', 'O(e^q)' or '('").into()),
        }
    }

    /// After having consumed 'O': '(' 'e' '^' exponent ')'.
    fn order_marker_body(&mut self) -> Result<Num, ParseError> {
        self.expect(b'(')?;
        self.skip_ws();
        if self.bump() != Some(b'e') {
            return Err(self.err("expected 'e' inside O(...)"));
        }
        self.expect(b'^')?;
        let q = self.exponent()?;
        self.expect(b')')?;
        Ok(Num::zero().truncate_to(q))
    }

    /// 'O' '(' 'e' '^' exponent ')'.
    fn order_marker(&mut self) -> Result<Num, ParseError> {
        self.skip_ws();
        if self.bump() != Some(b'O') {
            return Err(self.err("expected 'O'"));
        }
        self.order_marker_body()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// signed rational, optionally parenthesized
    fn exponent(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.bump();
            let q = self.signed_rational()?;
            self.expect(b')')?;
            return Ok(q);
        }
        self.signed_rational()
    }

    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let numer = self.integer()?;
        let denom = if self.peek() == Some(b'/') {
            self.bump();
            self.integer()?
        } else {
            BigInt::one()
        };
        if denom == BigInt::from(0) {
            return Err(self.err("zero denominator in exponent"));
        }
        let q = Rational::new(numer, denom);
        Ok(if neg { -q } else { q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn eval(s: &str) -> String {
        parse_field_expr(s).unwrap().to_string()
    }

    #[test]
    fn product_of_conjugates() {
        assert_eq!(eval("(1+e)*(1-e)"), "1 - 1*e^2");
    }

    #[test]
    fn geometric_inverse_with_marker() {
        assert_eq!(
            eval("1/(1-e) + O(e^3)"),
            "1 + 1*e^1 + 1*e^2 + 1*e^3 (+O(e^3))"
        );
    }

    #[test]
    fn exact_cancellation_of_unlimiteds() {
        assert_eq!(eval("1/e - 1/e"), "0");
    }

    #[test]
    fn rational_coefficients_via_quotients() {
        assert_eq!(eval("3/4 + 1/2*e"), "3/4 + 1/2*e^1");
    }

    #[test]
    fn renderer_output_parses_back() {
        let v = parse_field_expr("(2 + 3*e - e^2) * (1 - e) + O(e^5)").unwrap();
        let back = parse_field_expr(&v.to_string()).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn negative_powers() {
        let v = parse_field_expr("e^-2").unwrap();
        assert_eq!(v.least_exponent(), Some(&rat(-2, 1)));
    }

    #[test]
    fn division_by_zero_is_a_field_error() {
        match parse_field_expr("1/(e-e)") {
            Err(EvalError::Field(FieldError::DivisionByZero)) => {}
            other => panic!("expected DivisionByZero, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_field_expr("1 + $").unwrap_err();
        match err {
            EvalError::Parse(p) => assert_eq!(p.pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
