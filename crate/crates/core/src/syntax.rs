//! Surface syntax for slice polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*          juxtaposition also multiplies
//! factor := ('+' | '-') factor | atom ('^' nat)?
//! atom   := '(' expr ')' | var | literal
//! var    := 'q' digits?                    bare 'q' is q1
//! literal:= rational | rational? ('i' | 'j' | 'k')
//! ```
//!
//! Every product is the star product and `^` is the star power.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, SlicePoly};
use crate::quat::{write_component, Quaternion};
use crate::rational::{parse_rational, Rational};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyExpr {
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Neg(Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
    /// Zero-based variable index.
    Var(usize),
    Lit(Quaternion),
}

impl PolyExpr {
    /// Star-expands into normal form.
    pub fn lower(&self, nvars: usize) -> SlicePoly {
        match self {
            PolyExpr::Add(a, b) => &a.lower(nvars) + &b.lower(nvars),
            PolyExpr::Sub(a, b) => &a.lower(nvars) - &b.lower(nvars),
            PolyExpr::Neg(a) => -&a.lower(nvars),
            PolyExpr::Mul(a, b) => &a.lower(nvars) * &b.lower(nvars),
            PolyExpr::Pow(a, e) => a.lower(nvars).star_pow(*e),
            PolyExpr::Var(k) => SlicePoly::var(nvars, *k),
            PolyExpr::Lit(c) => SlicePoly::constant(nvars, c.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational, bool),
    Lit(Quaternion),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn unit_literal(c: char, scale: Rational) -> Quaternion {
    let z = Rational::zero;
    match c {
        'i' => Quaternion::new(z(), scale, z(), z()),
        'j' => Quaternion::new(z(), z(), scale, z()),
        _ => Quaternion::new(z(), z(), z(), scale),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'i' | 'j' | 'k' => Tok::Lit(unit_literal(c, Rational::one())),
            'q' => {
                let mut end = pos + 1;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let idx = if end == pos + 1 {
                    1
                } else {
                    let s: String = chars[pos + 1..end].iter().collect();
                    s.parse::<usize>().map_err(|_| err(pos, "bad variable index"))?
                };
                if idx == 0 {
                    return Err(err(pos, "variables are numbered from q1"));
                }
                pos = end;
                out.push((start, Tok::Var(idx - 1)));
                continue;
            }
            d if d.is_ascii_digit() || d == '.' => {
                let mut end = pos;
                while end < chars.len() && (chars[end].is_ascii_digit() || chars[end] == '.') {
                    end += 1;
                }
                let mut integral = !chars[pos..end].contains(&'.');
                if end + 1 < chars.len() && chars[end] == '/' && chars[end + 1].is_ascii_digit() {
                    end += 1;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                    integral = false;
                }
                let s: String = chars[pos..end].iter().collect();
                let r = parse_rational(&s).ok_or_else(|| err(pos, "malformed number"))?;
                let attached = end < chars.len()
                    && matches!(chars[end], 'i' | 'j' | 'k')
                    && !(end + 1 < chars.len() && chars[end + 1].is_alphanumeric());
                if attached {
                    let lit = unit_literal(chars[end], r);
                    pos = end + 1;
                    out.push((start, Tok::Lit(lit)));
                } else {
                    pos = end;
                    out.push((start, Tok::Num(r, integral)));
                }
                continue;
            }
            _ => return Err(err(pos, &format!("unexpected character {c:?}"))),
        };
        pos += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Num(..) | Tok::Lit(_) | Tok::Var(_) | Tok::LParen) => {
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                return Ok(PolyExpr::Neg(Box::new(self.factor()?)));
            }
            Some(Tok::Plus) => {
                self.at += 1;
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Num(r, true)) if !r.is_negative() => {
                    let e: u32 = r.to_integer().try_into().or_else(|_| self.err("exponent too large"))?;
                    self.at += 1;
                    return Ok(PolyExpr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(e)
            }
            Some(Tok::Var(k)) => {
                if k >= self.nvars {
                    return Err(Error::VarOutOfRange {
                        index: k + 1,
                        nvars: self.nvars,
                    });
                }
                self.at += 1;
                Ok(PolyExpr::Var(k))
            }
            Some(Tok::Num(r, _)) => {
                self.at += 1;
                Ok(PolyExpr::Lit(Quaternion::real(r)))
            }
            Some(Tok::Lit(q)) => {
                self.at += 1;
                Ok(PolyExpr::Lit(q))
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as an expression in `nvars` variables.
pub fn parse_expr(text: &str, nvars: usize) -> Result<PolyExpr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
        nvars,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses and star-expands `text` into normal form.
pub fn parse_poly(text: &str, nvars: usize) -> Result<SlicePoly> {
    Ok(parse_expr(text, nvars)?.lower(nvars))
}

/// Largest variable index mentioned in `text` (1-based), 0 if none.
pub fn max_var_index(text: &str) -> Result<usize> {
    Ok(lex(text)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Var(k) => Some(k + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0))
}

fn monomial_text(exp: &[u32], nvars: usize) -> String {
    let mut parts = Vec::new();
    for (k, e) in exp.iter().enumerate() {
        if *e == 0 {
            continue;
        }
        let name = if nvars == 1 {
            "q".to_string()
        } else {
            format!("q{}", k + 1)
        };
        parts.push(if *e == 1 { name } else { format!("{name}^{e}") });
    }
    parts.join(" ")
}

fn sign_prefix(out: &mut String, neg: bool, first: bool) {
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
}

/// Deterministic text form, terms in decreasing `order`, coefficients on the
/// right of monomials (real coefficients are written in front).
pub fn format_poly(p: &SlicePoly, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (exp, c) in p.sorted_terms(order) {
        let mono = monomial_text(exp, p.nvars());
        if mono.is_empty() {
            for (v, unit) in [(&c.w, ""), (&c.x, "i"), (&c.y, "j"), (&c.z, "k")] {
                if !v.is_zero() {
                    write_component(&mut out, v, unit, first).unwrap();
                    first = false;
                }
            }
            continue;
        }
        let nonzero: Vec<(&Rational, &str)> = [(&c.w, ""), (&c.x, "i"), (&c.y, "j"), (&c.z, "k")]
            .into_iter()
            .filter(|(v, _)| !v.is_zero())
            .collect();
        if nonzero.len() == 1 {
            let (v, unit) = nonzero[0];
            sign_prefix(&mut out, v.is_negative(), first);
            let mag = v.abs();
            if unit.is_empty() {
                if mag.is_one() {
                    out.push_str(&mono);
                } else if mag.is_integer() {
                    write!(out, "{mag}{mono}").unwrap();
                } else {
                    write!(out, "{mag} {mono}").unwrap();
                }
            } else if mag.is_one() {
                write!(out, "{mono} {unit}").unwrap();
            } else {
                write!(out, "{mono} {mag}{unit}").unwrap();
            }
        } else {
            sign_prefix(&mut out, false, first);
            write!(out, "{mono} ({c})").unwrap();
        }
        first = false;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(s: &str, n: usize) -> SlicePoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn square_of_linear_factor() {
        let expected = SlicePoly::univariate([Quaternion::from(1), Quaternion::from(2), Quaternion::from(1)]);
        assert_eq!(p("(q+1)^2", 1), expected);
    }

    #[test]
    fn constants_commute_under_star() {
        assert!(p("q*i - i*q", 1).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("(q1-q2)*(q1+q2)", 2), p("q1^2 - q2^2", 2));
    }

    #[test]
    fn literals_and_juxtaposition() {
        assert_eq!(
            p("3/5i", 1).as_constant().unwrap(),
            Quaternion::new(int(0), rat(3, 5), int(0), int(0))
        );
        assert_eq!(p("2q", 1), p("2*q", 1));
        assert_eq!(p("2i^2", 1).as_constant().unwrap(), Quaternion::from(-4));
        assert_eq!(p("-q^2", 1), -&p("q^2", 1));
        assert_eq!(p("q (1 - i)", 1), p("q*(1-i)", 1));
        assert_eq!(p("0.5q", 1), p("1/2 q", 1));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_poly("q1 + q3", 2),
            Err(Error::VarOutOfRange { index: 3, nvars: 2 })
        ));
        assert!(matches!(parse_poly("q + ", 1), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("q ^ i", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("q $ 1", 1), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("(q + 1", 1), Err(Error::Parse { .. })));
    }

    #[test]
    fn formatting() {
        let o = MonomialOrder::default();
        assert_eq!(format_poly(&p("q^2 + 2q + 1", 1), &o), "q^2 + 2q + 1");
        assert_eq!(format_poly(&p("q^2 k", 1), &o), "q^2 k");
        assert_eq!(format_poly(&p("(q+1)*(q-i)", 1), &o), "q^2 + q (1 - i) - i");
        assert_eq!(
            format_poly(&p("-q1^2 q2 3/2j + 1/3 q2", 2), &o),
            "-q1^2 q2 3/2j + 1/3 q2"
        );
        assert_eq!(format_poly(&SlicePoly::zero(2), &o), "0");
    }

    #[test]
    fn round_trip_examples() {
        let o = MonomialOrder::default();
        for (s, n) in [
            ("(q+1)*(q-i)", 1),
            ("q1^2 - 3/7 q1 q2 k + (1-j)", 2),
            ("-q3 (2 + i - 3/2k) + q1", 3),
        ] {
            let poly = p(s, n);
            assert_eq!(p(&format_poly(&poly, &o), n), poly);
        }
    }
}
