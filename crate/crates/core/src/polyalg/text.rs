use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::multi::MultiPoly;
use crate::error::{Error, Result};
use crate::ratcore::parse_rational;

/// `x1, ..., xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Canonical text: terms in descending graded-lex order, e.g.
/// `2*y1^3 + y2^3 - 6*y1*y2 + 4`.
pub fn format_polynomial(p: &MultiPoly<BigRational>, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if m.is_constant() || !a.is_one() {
            factors.push(if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) });
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{e}", names[i])),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Parses sums of products such as `2*y1^3 + y2^3 - 6*y1*y2 + 4` or
/// `-(x1 - 1)^2 + 1.259*x2`. Decimal literals are read exactly.
/// Division is allowed only by constants.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<MultiPoly<BigRational>> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, names, n: names.len() };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected token {:?}", p.tokens[p.pos])));
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // scientific suffix such as 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    names: &'a [String],
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<BigRational>> {
        let mut acc = MultiPoly::zero(self.n);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else {
                let plus = self.eat('+');
                if !first && !plus {
                    break;
                }
                false
            };
            let t = self.term()?;
            acc = acc + if neg { -t } else { t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<BigRational>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = constant_value(&d)
                    .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                if c.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&c.recip());
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly<BigRational>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(s)) => {
                    self.pos += 1;
                    let e: u32 = s.parse().map_err(|_| Error::Parse(format!("bad exponent {s}")))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly<BigRational>> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.n, parse_rational(&s)?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .names
                    .iter()
                    .position(|v| v == &name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                let mut p = MultiPoly::zero(self.n);
                p.add_term(Monomial::var(self.n, i), BigRational::one());
                Ok(p)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_value(p: &MultiPoly<BigRational>) -> Option<BigRational> {
    (p.degree() == 0).then(|| p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn canonical_printing() {
        let n = names(&["y1", "y2"]);
        let h = parse_polynomial("y2^3 + 4 - 6*y1*y2 + 2*y1^3", &n).unwrap();
        assert_eq!(format_polynomial(&h, &n), "2*y1^3 + y2^3 - 6*y1*y2 + 4");
        assert_eq!(parse_polynomial(&format_polynomial(&h, &n), &n).unwrap(), h);
    }

    #[test]
    fn parses_decimals_and_parentheses() {
        let n = names(&["x", "y"]);
        let p = parse_polynomial("-(x - 1)^2 + 1.259*y/2", &n).unwrap();
        assert_eq!(p.eval(&[int(1), int(2)]).unwrap(), rat(1259, 1000));
        assert_eq!(p.eval(&[int(0), int(0)]).unwrap(), int(-1));
        assert!(parse_polynomial("x/y", &n).is_err());
        assert!(parse_polynomial("z", &n).is_err());
        assert!(parse_polynomial("x +", &n).is_err());
        let q = parse_polynomial("3/2*x - 1e-3", &n).unwrap();
        assert_eq!(format_polynomial(&q, &n), "3/2*x - 1/1000");
    }
}
