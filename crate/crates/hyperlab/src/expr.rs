//! Expression grammar for user-defined families: arithmetic, powers and
//! the elementary functions, with `n` (the index) and `x` as free
//! symbols. `sin((n+1)*x)/(n+1)` is a valid term.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expression error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Sin,
    Cos,
    Atan,
    Exp,
    Log,
    Abs,
    Sqrt,
}

#[derive(Debug, Clone)]
enum Ast {
    Num(f64),
    X,
    N,
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Box<Ast>),
    Call(Func, Box<Ast>),
}

/// A parsed family expression in the free symbols `n` and `x`.
#[derive(Debug, Clone)]
pub struct FamilyExpr {
    ast: Ast,
    source: String,
}

pub fn parse_family_expr(src: &str) -> Result<FamilyExpr, ExprError> {
    let mut p = P {
        src: src.as_bytes(),
        pos: 0,
    };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(FamilyExpr {
        ast,
        source: src.to_string(),
    })
}

impl FamilyExpr {
    pub fn eval(&self, n: u64, x: f64) -> f64 {
        eval(&self.ast, n as f64, x)
    }

    /// Evaluation for limit expressions, where `n` must not occur.
    pub fn eval_x(&self, x: f64) -> f64 {
        debug_assert!(!self.uses_n());
        eval(&self.ast, f64::NAN, x)
    }

    pub fn uses_n(&self) -> bool {
        uses_n(&self.ast)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

fn uses_n(a: &Ast) -> bool {
    match a {
        Ast::N => true,
        Ast::Num(_) | Ast::X => false,
        Ast::Neg(b) | Ast::Call(_, b) => uses_n(b),
        Ast::Add(l, r) | Ast::Sub(l, r) | Ast::Mul(l, r) | Ast::Div(l, r) | Ast::Pow(l, r) => {
            uses_n(l) || uses_n(r)
        }
    }
}

fn eval(a: &Ast, n: f64, x: f64) -> f64 {
    match a {
        Ast::Num(v) => *v,
        Ast::X => x,
        Ast::N => n,
        Ast::Neg(b) => -eval(b, n, x),
        Ast::Add(l, r) => eval(l, n, x) + eval(r, n, x),
        Ast::Sub(l, r) => eval(l, n, x) - eval(r, n, x),
        Ast::Mul(l, r) => eval(l, n, x) * eval(r, n, x),
        Ast::Div(l, r) => eval(l, n, x) / eval(r, n, x),
        Ast::Pow(l, r) => {
            let base = eval(l, n, x);
            let e = eval(r, n, x);
            // integer powers keep their sign for negative bases
            if e.fract() == 0.0 && e.abs() < 1e15 {
                base.powi(e as i32)
            } else {
                base.powf(e)
            }
        }
        Ast::Call(f, b) => {
            let v = eval(b, n, x);
            match f {
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Atan => v.atan(),
                Func::Exp => v.exp(),
                Func::Log => v.ln(),
                Func::Abs => v.abs(),
                Func::Sqrt => v.sqrt(),
            }
        }
    }
}

struct P<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> P<'a> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ExprError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Ast::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = Ast::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ExprError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // right-associative, and `-` binds to the exponent: x^-n
            let e = self.unary()?;
            return Ok(Ast::Pow(Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(self.err("expected a number, symbol, function or '('")),
        }
    }

    fn number(&mut self) -> Result<Ast, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
            self.pos += 1;
        }
        // scientific notation: 1e-3 (but a bare trailing 'e' is the symbol
        // boundary, so require a digit or sign after it)
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let next = self.src.get(self.pos + 1).copied();
            let signed_digit = matches!(next, Some(b'+') | Some(b'-'))
                && self
                    .src
                    .get(self.pos + 2)
                    .is_some_and(|c| c.is_ascii_digit());
            if next.is_some_and(|c| c.is_ascii_digit()) || signed_digit {
                self.pos += 2;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<f64>()
            .map(Ast::Num)
            .map_err(|_| ExprError {
                pos: start,
                msg: format!("bad number literal '{s}'"),
            })
    }

    fn ident(&mut self) -> Result<Ast, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let func = match name {
            "x" => return Ok(Ast::X),
            "n" => return Ok(Ast::N),
            "pi" => return Ok(Ast::Num(std::f64::consts::PI)),
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "arctan" | "atan" => Func::Atan,
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "abs" => Func::Abs,
            "sqrt" => Func::Sqrt,
            _ => {
                return Err(ExprError {
                    pos: start,
                    msg: format!("unknown symbol '{name}'"),
                })
            }
        };
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return Err(self.err(&format!("'{name}' needs a parenthesized argument")));
        }
        self.pos += 1;
        let arg = self.expr()?;
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.err("expected ')'"));
        }
        self.pos += 1;
        Ok(Ast::Call(func, Box::new(arg)))
    }
}
