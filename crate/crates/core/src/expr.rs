//! Text formats: polynomial expressions, blow-up centers and center scripts.
//!
//! Polynomial grammar (whitespace is insignificant):
//!
//! ```text
//! expression := ['+' | '-'] term (('+' | '-') term)*
//! term       := factor (['*'] factor)*
//! factor     := atom ('^' natural)*
//! atom       := scalar | 'X' | 'Y' | 'Z' | '(' expression ')'
//! scalar     := natural ['/' natural]
//! ```
//!
//! A factor may follow another without `*` only when it is a variable or a
//! parenthesized expression, and never right after an exponent: `2X`, `XY`
//! and `X(Y+1)` are accepted, `X^19Z` is not (write `X^19*Z`).

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::polyring::{Exponent, Poly, Var};
use crate::scalar::{FieldSpec, Scalar};
use crate::transform::{Center, CurveCenter, Direction};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Var(v) => format!("variable {}", v.symbol()),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        let tok = match ch {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = p + c.len_utf8();
                    chars.next();
                }
                out.push((Tok::Num(text[pos..end].parse().expect("digits")), pos));
                continue;
            }
            'X' => Tok::Var(Var::X),
            'Y' => Tok::Var(Var::Y),
            'Z' => Tok::Var(Var::Z),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(Error::syntax(pos, format!("unknown symbol '{other}'"))),
        };
        chars.next();
        out.push((tok, pos));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    field: FieldSpec,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => Error::syntax(self.pos(), format!("expected {wanted}, found {}", describe(t))),
            None => Error::syntax(self.pos(), format!("expected {wanted}, found end of input")),
        }
    }

    fn expression(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let (mut acc, mut after_exponent) = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let (f, e) = self.factor()?;
                    acc = &acc * &f;
                    after_exponent = e;
                }
                Some(Tok::Var(_) | Tok::LParen) => {
                    if after_exponent {
                        return Err(Error::syntax(self.pos(), "explicit '*' required after an exponent"));
                    }
                    let (f, e) = self.factor()?;
                    acc = &acc * &f;
                    after_exponent = e;
                }
                Some(Tok::Num(_)) => {
                    return Err(Error::syntax(self.pos(), "a number cannot follow a factor without '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Returns the factor and whether it ended with an exponent.
    fn factor(&mut self) -> Result<(Poly, bool)> {
        let mut base = self.atom()?;
        let mut powered = false;
        while let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            let e = match self.bump() {
                Some(Tok::Num(n)) => n
                    .to_u32()
                    .ok_or_else(|| Error::syntax(pos, format!("exponent {n} exceeds the 32-bit limit")))?,
                _ => {
                    self.at -= 1;
                    return Err(self.unexpected("a natural exponent"));
                }
            };
            base = base.pow(e);
            powered = true;
        }
        Ok((base, powered))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Num(_)) => {
                let Some(Tok::Num(num)) = self.bump() else { unreachable!() };
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let den_pos = self.pos();
                    let den = match self.bump() {
                        Some(Tok::Num(d)) => d,
                        _ => {
                            self.at -= 1;
                            return Err(self.unexpected("a denominator"));
                        }
                    };
                    let c = Scalar::from_ratio(self.field, &num, &den)
                        .map_err(|_| Error::syntax(den_pos, format!("malformed scalar {num}/{den}: zero denominator")))?;
                    Ok(Poly::constant(c))
                } else {
                    Ok(Poly::constant(Scalar::from_bigint(self.field, &num)))
                }
            }
            Some(Tok::Var(v)) => {
                let v = *v;
                self.bump();
                Ok(Poly::var(self.field, v))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expression()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("')'")),
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses a polynomial over `field`.
pub fn parse_poly(text: &str, field: FieldSpec) -> Result<Poly> {
    let mut parser = Parser { toks: tokenize(text)?, at: 0, end: text.len(), field };
    let p = parser.expression()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(p)
}

fn monomial_text(e: &Exponent) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match e.get(v) {
            0 => {}
            1 => parts.push(v.symbol().to_string()),
            d => parts.push(format!("{}^{d}", v.symbol())),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in descending lex order with Z > Y > X, exact
/// coefficients, `*` between every pair of factors.
pub fn print_canonical(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (e, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        match (n, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = monomial_text(e);
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{magnitude}*{mono}"));
        }
    }
    out
}

fn parse_constant(text: &str, field: FieldSpec) -> Result<Scalar> {
    let p = parse_poly(text, field)?;
    if Var::ALL.iter().any(|&v| p.involves(v)) {
        return Err(Error::syntax(0, format!("`{}` is not a constant", text.trim())));
    }
    Ok(p.constant_term())
}

/// Parses `Q a:b:c` (a point of the exceptional plane) or `M <expression>`
/// (a curve `(Z, G)`).
pub fn parse_center(text: &str, field: FieldSpec) -> Result<Center> {
    let text = text.trim();
    let (head, rest) = text.split_at(text.find(char::is_whitespace).unwrap_or(text.len()));
    match head {
        "Q" => {
            let coords: Vec<&str> = rest.trim().split(':').collect();
            if coords.len() != 3 {
                return Err(Error::syntax(0, format!("direction `{}` must have the form a:b:c", rest.trim())));
            }
            let [a, b, c] = [coords[0], coords[1], coords[2]].map(|s| parse_constant(s, field));
            let (a, b, c) = (a?, b?, c?);
            Direction::from_projective(&a, &b, &c).map(Center::Point)
        }
        "M" => {
            if rest.trim().is_empty() {
                return Err(Error::syntax(text.len(), "expected a curve generator after `M`"));
            }
            CurveCenter::new(parse_poly(rest, field)?).map(Center::Curve)
        }
        "" => Err(Error::syntax(0, "empty center")),
        other => Err(Error::syntax(0, format!("unknown center kind `{other}`; expected `Q` or `M`"))),
    }
}

/// One center per line; blank lines and `#` comments are skipped.
pub fn parse_script(text: &str, field: FieldSpec) -> Result<Vec<Center>> {
    let mut centers = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let center = parse_center(line, field).map_err(|e| match e {
            Error::Syntax { msg, .. } => Error::Script { line: n + 1, msg },
            Error::InvalidCenter(msg) => Error::InvalidCenter(format!("line {}: {msg}", n + 1)),
            other => other,
        })?;
        centers.push(center);
    }
    Ok(centers)
}

/// Prints a rational as `a` or `a/b`.
pub fn rational_text(r: &num_rational::BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
