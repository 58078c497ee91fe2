//! A small infix parser for rational-function expressions.
//!
//! Grammar: sums and differences of products and quotients of powers;
//! `^` or `**` takes an exponent that must evaluate to an integer constant.
//! Identifiers are symbols unless bound in the environment. Builtins:
//! `poch(z, n)` is `(z; q)_n` and `qnum(n)` is `[n]_q`, with `q = t²`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::ratfunc::RatFunc;
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::lattice::{q_number, q_pochhammer, Nu};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Id(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let w: String = cs[st..i].iter().collect();
            out.push(Tok::Num(w.parse().map_err(|_| Error::Parse(w.clone()))?));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Id(cs[st..i].iter().collect()));
        } else if c == '*' && cs.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(alloc::format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a BTreeMap<String, RatFunc>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<RatFunc> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = acc + self.product()?;
            } else if self.eat('-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.unary()?;
            return base.pow(int_const(&e)? as i32);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(RatFunc::from_rational(r))
            }
            Some(Tok::Id(v)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Op('(')) {
                    return self.call(&v);
                }
                Ok(self.env.get(&v).cloned().unwrap_or_else(|| RatFunc::var(&v)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected )".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(alloc::format!("unexpected token {other:?}"))),
        }
    }
}

fn int_const(e: &RatFunc) -> Result<i64> {
    e.as_constant()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_i64())
        .ok_or_else(|| Error::Parse(alloc::format!("expected an integer, got {e}")))
}

impl Parser<'_> {
    fn call(&mut self, name: &str) -> Result<RatFunc> {
        self.pos += 1;
        let mut args = alloc::vec![self.sum()?];
        while self.eat(',') {
            args.push(self.sum()?);
        }
        if !self.eat(')') {
            return Err(Error::Parse("expected )".into()));
        }
        match (name, args.as_slice()) {
            ("poch", [z, n]) => {
                let n = int_const(n)?;
                if n < 0 {
                    return Err(Error::Parse("poch needs n >= 0".into()));
                }
                Ok(q_pochhammer(z, n as u32))
            }
            ("qnum", [n]) => Ok(q_number(Nu::int(int_const(n)?))),
            _ => Err(Error::Parse(alloc::format!("unknown function {name}/{}", args.len()))),
        }
    }
}

/// Parses an expression such as `(a - f*u^4)*X + a*g*t^2`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    parse_with(s, &BTreeMap::new())
}

/// Like [`parse_ratfunc`], with identifiers in `env` replaced by their values.
pub fn parse_with(s: &str, env: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
    let mut p = Parser { toks: lex(s)?, pos: 0, env };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(alloc::format!("trailing input in {s:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratfunc::{rq, rsym};

    #[test]
    fn precedence_and_powers() {
        let x = rsym("x");
        assert_eq!(parse_ratfunc("1 + 2*x^2").unwrap(), &rq(1, 1) + &(&rq(2, 1) * &(&x * &x)));
        assert_eq!(parse_ratfunc("-x**2").unwrap(), -(&x * &x));
        assert_eq!(parse_ratfunc("x^-1*(x+1)").unwrap(), &rq(1, 1) + &x.recip().unwrap());
        assert_eq!(parse_ratfunc("3/6").unwrap(), rq(1, 2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_ratfunc("x +"), Err(Error::Parse(_))));
        assert!(matches!(parse_ratfunc("(x"), Err(Error::Parse(_))));
        assert!(matches!(parse_ratfunc("x^y"), Err(Error::Parse(_))));
        assert_eq!(parse_ratfunc("x/0").unwrap_err(), Error::DivisionByZero);
        assert!(matches!(parse_ratfunc("x^(1/2)"), Err(Error::Parse(_))));
        assert!(matches!(parse_ratfunc("foo(1)"), Err(Error::Parse(_))));
    }

    #[test]
    fn environment_and_builtins() {
        let mut env = BTreeMap::new();
        env.insert(String::from("n"), rq(3, 1));
        env.insert(String::from("q"), &rsym("t") * &rsym("t"));
        let t = rsym("t");
        assert_eq!(parse_with("q^(2*n-5)", &env).unwrap(), &t * &t);
        assert_eq!(parse_with("qnum(n)", &env).unwrap(), parse_ratfunc("t^2 + 1 + t^-2").unwrap());
        let p = parse_with("poch(a, n)", &env).unwrap();
        assert_eq!(p, parse_ratfunc("(1 - a)*(1 - a*t^2)*(1 - a*t^4)").unwrap());
    }
}
