//! Infix expression syntax:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'x' | 'pi' | func '(' args ')' | '(' expr ')'
//! ```
//!
//! Functions: `exp log ln sin cos sqrt root(m, e) pow(alpha, e)`. An
//! integer exponent gives an integer power, any other constant exponent a
//! real power.

use std::f64::consts::PI;

use super::expr::Expr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // scientific notation
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v: f64 = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad number `{text}`")))?;
            out.push(Tok::Num(v));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),".contains(ch) {
            out.push(Tok::Sym(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat('-') {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::mul(lhs, self.unary()?);
            } else if self.eat('/') {
                lhs = Expr::div(lhs, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::neg(self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.unary()? {
            Expr::Const(p) if p.fract() == 0.0 && p.abs() <= f64::from(i32::MAX) => {
                Ok(Expr::pow_int(base, p as i32))
            }
            Expr::Const(p) => Ok(Expr::pow_real(base, p)),
            _ => Err(Error::Parse("exponent must be a constant".into())),
        }
    }

    fn constant(&mut self) -> Result<f64> {
        match self.expr()? {
            Expr::Const(v) => Ok(v),
            _ => Err(Error::Parse("expected a constant argument".into())),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "pi" => Ok(Expr::Const(PI)),
                "root" | "pow" => {
                    self.expect('(')?;
                    let k = self.constant()?;
                    self.expect(',')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    if name == "pow" {
                        return Ok(Expr::pow_real(arg, k));
                    }
                    if k.fract() != 0.0 || !(2.0..=f64::from(u32::MAX)).contains(&k) {
                        return Err(Error::Parse(format!("root order must be an integer above 1, got {k}")));
                    }
                    Ok(Expr::root(arg, k as u32))
                }
                f => {
                    let build: fn(Expr) -> Expr = match f {
                        "exp" => Expr::exp,
                        "log" | "ln" => Expr::log,
                        "sin" => Expr::sin,
                        "cos" => Expr::cos,
                        "sqrt" => |a| Expr::root(a, 2),
                        _ => return Err(Error::Parse(format!("unknown name `{f}`"))),
                    };
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    Ok(build(arg))
                }
            },
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::{c, eval_real, x};

    #[test]
    fn precedence() {
        let e = parse("1 + 2*x^2").unwrap();
        assert_eq!(eval_real(&e, 3.0).unwrap(), 19.0);
        assert_eq!(eval_real(&parse("-x^2").unwrap(), 3.0).unwrap(), -9.0);
        assert_eq!(eval_real(&parse("2^3^2").unwrap(), 0.0).unwrap(), 512.0);
        assert_eq!(eval_real(&parse("8/2/2").unwrap(), 0.0).unwrap(), 2.0);
        assert_eq!(eval_real(&parse("1e-3 * x").unwrap(), 1000.0).unwrap(), 1.0);
    }

    #[test]
    fn functions() {
        assert_eq!(parse("exp(x)").unwrap(), Expr::exp(x()));
        assert_eq!(parse("sqrt(x)").unwrap(), Expr::root(x(), 2));
        assert_eq!(parse("root(3, x)").unwrap(), Expr::root(x(), 3));
        assert_eq!(parse("pow(0.5, x)").unwrap(), Expr::pow_real(x(), 0.5));
        assert_eq!(parse("x^0.5").unwrap(), Expr::pow_real(x(), 0.5));
        assert_eq!(parse("x^2").unwrap(), Expr::pow_int(x(), 2));
        assert_eq!(parse("x^-1").unwrap(), Expr::pow_int(x(), -1));
        assert_eq!(parse("pi").unwrap(), c(PI));
    }

    #[test]
    fn errors() {
        for bad in ["", "x +", "foo(x)", "sin x", "(x", "x^x", "root(1.5, x)", "x $ 2", "2 3"] {
            assert!(matches!(parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        for src in ["sin(x)^2 + cos(x)^2", "exp(-x) / (2 + cos(x))", "pow(0.5, 2 + sin(x)) - root(3, 1 + x^2)", "-x * log(x)"] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
