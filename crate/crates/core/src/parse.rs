//! Parser for the ring description language:
//!
//! ```text
//! ring Q[x,y] / (y^2 - x^3) weights x=2 y=3
//! ```
//!
//! The ideal and the weights are optional. Polynomials use `+ - * /` and `^`
//! with the usual precedence; `/` only divides by nonzero constants, and
//! juxtaposition such as `3x` multiplies.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::poly::Polynomial;

/// A parsed ring description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub generators: Vec<Polynomial<Q>>,
    pub weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|(_, c)| c).collect();
            toks.push((pos, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            toks.push((
                pos,
                Tok::Ident(chars[start..k].iter().map(|(_, c)| c).collect()),
            ));
        } else if "[](),/+-*^=".contains(c) {
            toks.push((pos, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(Lexer {
        toks,
        end: src.len(),
    })
}

struct Parser<'a> {
    lx: &'a Lexer,
    at: usize,
    vars: Vec<String>,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.lx.toks.get(self.at).map_or(self.lx.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn sum(&mut self) -> Result<Polynomial<Q>> {
        let mut acc = if self.eat_sym('-') {
            self.product()?.neg()
        } else {
            self.product()?
        };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('('))
        )
    }

    fn product(&mut self) -> Result<Polynomial<Q>> {
        let mut acc = self.power()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.power()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                let d = self.power()?;
                let is_const = d.terms().all(|(m, _)| m.is_one());
                if d.is_zero() || !is_const {
                    return Err(Error::Parse {
                        pos,
                        msg: "division only by nonzero constants".into(),
                    });
                }
                let c = d.terms().next().expect("nonzero").1.clone();
                acc = acc.scale(&c.inv());
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<Q>> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let e = self.int()?;
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= 1000 => e,
                _ => return self.err("exponent too large"),
            };
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<Q>> {
        let n = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Polynomial::constant(n, BigRational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.at += 1;
                    Ok(Polynomial::var(n, i))
                }
                None => self.err(format!("unknown variable `{name}`")),
            },
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let p = self.sum()?;
                self.expect_sym(')')?;
                Ok(p)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                Ok(self.atom()?.neg())
            }
            _ => self.err("expected a number, variable, or `(`"),
        }
    }
}

/// Parses a ring description.
pub fn parse_ring(src: &str) -> Result<RingSpec> {
    let lx = lex(src)?;
    let mut p = Parser {
        lx: &lx,
        at: 0,
        vars: Vec::new(),
    };
    match p.peek() {
        Some(Tok::Ident(s)) if s == "ring" => p.at += 1,
        _ => return p.err("expected `ring`"),
    }
    match p.peek() {
        Some(Tok::Ident(s)) if s == "Q" => p.at += 1,
        _ => return p.err("only the coefficient field `Q` is supported"),
    }
    p.expect_sym('[')?;
    loop {
        let v = p.ident()?;
        if p.vars.contains(&v) {
            return p.err(format!("duplicate variable `{v}`"));
        }
        if v == "weights" || v == "ring" {
            return p.err(format!("`{v}` is reserved"));
        }
        p.vars.push(v);
        if !p.eat_sym(',') {
            break;
        }
    }
    p.expect_sym(']')?;
    let mut generators = Vec::new();
    if p.eat_sym('/') {
        p.expect_sym('(')?;
        loop {
            let g = p.sum()?;
            if !g.is_zero() {
                generators.push(g);
            }
            if !p.eat_sym(',') {
                break;
            }
        }
        p.expect_sym(')')?;
    }
    let mut weights = None;
    if let Some(Tok::Ident(s)) = p.peek() {
        if s == "weights" {
            p.at += 1;
            let mut w: Vec<Option<u32>> = vec![None; p.vars.len()];
            while let Some(Tok::Ident(_)) = p.peek() {
                let name = p.ident()?;
                let Some(i) = p.vars.iter().position(|v| *v == name) else {
                    return p.err(format!("unknown variable `{name}` in weights"));
                };
                p.expect_sym('=')?;
                let value = p.int()?;
                match u32::try_from(value) {
                    Ok(v) if v > 0 => w[i] = Some(v),
                    _ => return p.err("weights must be positive integers"),
                }
            }
            match w.iter().copied().collect::<Option<Vec<u32>>>() {
                Some(w) => weights = Some(w),
                None => return p.err("every variable needs a weight"),
            }
        }
    }
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(RingSpec {
        vars: p.vars,
        generators,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn parses_weighted_cusp() {
        let r = parse_ring("ring Q[x,y] / (y^2 - x^3) weights x=2 y=3").unwrap();
        assert_eq!(r.vars, vec!["x", "y"]);
        assert_eq!(r.weights, Some(vec![2, 3]));
        let x: Polynomial<Q> = Polynomial::var(2, 0);
        let y: Polynomial<Q> = Polynomial::var(2, 1);
        assert_eq!(r.generators, vec![y.pow(2).sub(&x.pow(3))]);
    }

    #[test]
    fn precedence_and_constants() {
        let r = parse_ring("ring Q[x]/(2x^2 - x/2 + 3*(x+1), x^3)").unwrap();
        let x: Polynomial<Q> = Polynomial::var(1, 0);
        let expect = x
            .pow(2)
            .scale(&q(2))
            .sub(&x.scale(&BigRational::new(1.into(), 2.into())))
            .add(&x.add(&Polynomial::one(1)).scale(&q(3)));
        assert_eq!(r.generators[0], expect);
        assert_eq!(r.generators.len(), 2);
        assert!(r.weights.is_none());
        let r = parse_ring("ring Q[x,y]").unwrap();
        assert!(r.generators.is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ring("ring Q[x] / (x^2 + z)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 19);
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ring("ring Q[x] / (x/x)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_ring("ring Q[x,y] weights x=1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_ring("ring Z[x]"),
            Err(Error::Parse { pos: 5, .. })
        ));
    }
}
