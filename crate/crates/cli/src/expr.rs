//! The expression grammar:
//!
//! ```text
//! element := term (('+'|'-') term)*
//! term    := scalar '*'? word | scalar | word
//! word    := mletter ('@' mletter)* ('#' group)?
//! mletter := LETTER ('.' group)?
//! group   := 'K{' int (',' int)* '}' | NAME
//! scalar  := rational | 'q' | 'q^' int | rational 'q' ('^' int)? | '(' scalar-poly ')'
//! ```
//!
//! `−` is accepted for `-` and `[]` for `@`, so rendered output parses back.

use std::fmt;

use cofree_hopf::kernel::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupRef {
    Exps(Vec<i64>),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub group: Option<GroupRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    /// No basis symbol: the term is a bare scalar.
    Unit,
    /// Letters, optionally a smash group leg after `#`.
    Word { items: Vec<Item>, smash: Option<GroupRef> },
    /// A group literal `K{..}` standing alone.
    Group(GroupRef),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Scalar, Basis)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    At,
    Dot,
    Hash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '@' => Some(Tok::At),
            '.' => Some(Tok::Dot),
            '#' => Some(Tok::Hash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, col));
            i += 1;
        } else if c == '[' && chars.get(i + 1) == Some(&']') {
            out.push((Tok::At, col));
            i += 2;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ParseError {
                col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            col: self.col(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(&Tok::Minus);
        if !neg {
            self.eat(&Tok::Plus);
        }
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v: i64 = n.try_into().map_err(|_| ParseError {
                    col: self.col(),
                    message: "integer out of range".into(),
                })?;
                Ok(if neg { -v } else { v })
            }
            _ => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn is_q(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "q")
    }

    /// `q` or `q^int`, assuming the cursor is on `q`.
    fn q_power(&mut self) -> Result<i32, ParseError> {
        self.bump();
        if self.eat(&Tok::Caret) {
            let e = self.int()?;
            i32::try_from(e).or_else(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn rational(&mut self) -> Result<Option<BigRational>, ParseError> {
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Ok(None);
        };
        self.bump();
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(d)) if d != BigInt::from(0) => return Ok(Some(BigRational::new(n, d))),
                _ => {
                    self.pos -= 1;
                    return self.err("expected a nonzero denominator");
                }
            }
        }
        Ok(Some(BigRational::from_integer(n)))
    }

    /// A scalar factor without sign; `None` if none starts here.
    fn scalar(&mut self) -> Result<Option<Scalar>, ParseError> {
        if self.eat(&Tok::LParen) {
            let s = self.poly()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(Some(s));
        }
        let r = self.rational()?;
        let k = if self.is_q() { Some(self.q_power()?) } else { None };
        Ok(match (r, k) {
            (None, None) => None,
            (Some(r), None) => Some(Scalar::from_rational(r)),
            (None, Some(k)) => Some(Scalar::q_pow(k)),
            (Some(r), Some(k)) => Some(Scalar::monomial(r, k)),
        })
    }

    fn poly(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = Scalar::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(&Tok::Minus) {
                true
            } else if self.eat(&Tok::Plus) || first {
                false
            } else {
                break;
            };
            first = false;
            let Some(s) = self.scalar()? else {
                return self.err("expected a scalar");
            };
            acc = if neg { &acc - &s } else { &acc + &s };
        }
        Ok(acc)
    }

    fn group(&mut self) -> Result<GroupRef, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(k)) if k == "K" && self.peek_at(1) == Some(&Tok::LBrace) => {
                self.pos += 2;
                let mut exps = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        exps.push(self.int()?);
                        if self.eat(&Tok::RBrace) {
                            break;
                        }
                        self.expect(Tok::Comma, "',' or '}'")?;
                    }
                }
                Ok(GroupRef::Exps(exps))
            }
            Some(Tok::Ident(name)) if name != "q" => {
                self.bump();
                Ok(GroupRef::Name(name))
            }
            _ => self.err("expected a group element"),
        }
    }

    fn starts_basis(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s != "q")
    }

    fn basis(&mut self) -> Result<Basis, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(k)) if k == "K") && self.peek_at(1) == Some(&Tok::LBrace) {
            return Ok(Basis::Group(self.group()?));
        }
        let mut items = Vec::new();
        loop {
            let name = match self.bump() {
                Some(Tok::Ident(s)) if s != "q" => s,
                _ => {
                    self.pos -= 1;
                    return self.err("expected a letter");
                }
            };
            let group = if self.eat(&Tok::Dot) { Some(self.group()?) } else { None };
            items.push(Item { name, group });
            if !self.eat(&Tok::At) {
                break;
            }
        }
        let smash = if self.eat(&Tok::Hash) { Some(self.group()?) } else { None };
        Ok(Basis::Word { items, smash })
    }

    fn term(&mut self) -> Result<(Scalar, Basis), ParseError> {
        let coeff = self.scalar()?;
        let starred = coeff.is_some() && self.eat(&Tok::Star);
        // the empty word of a smash key renders as `1`
        if self.peek() == Some(&Tok::Num(BigInt::from(1))) && self.peek_at(1) == Some(&Tok::Hash) {
            self.bump();
        }
        if coeff.is_some() && self.eat(&Tok::Hash) {
            let g = self.group()?;
            let b = Basis::Word {
                items: Vec::new(),
                smash: Some(g),
            };
            return Ok((coeff.unwrap_or_else(Scalar::one), b));
        }
        if self.starts_basis() {
            Ok((coeff.unwrap_or_else(Scalar::one), self.basis()?))
        } else if starred {
            self.err("expected a word after '*'")
        } else if let Some(c) = coeff {
            Ok((c, Basis::Unit))
        } else {
            self.err("expected a term")
        }
    }

    fn element(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        while self.peek().is_some() {
            let neg = if self.eat(&Tok::Minus) {
                true
            } else if self.eat(&Tok::Plus) || first {
                false
            } else {
                return self.err("expected '+' or '-'");
            };
            first = false;
            let (c, b) = self.term()?;
            terms.push((if neg { -c } else { c }, b));
        }
        if terms.is_empty() {
            return self.err("empty expression");
        }
        Ok(Expr { terms })
    }
}

fn parser(src: &str) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.chars().count() + 1,
    })
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    parser(src)?.element()
}

/// A single scalar: `rational`, `q^k`, a product of both, or a parenthesized
/// polynomial, with an optional sign.
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let mut p = parser(src)?;
    let s = p.poly()?;
    if p.peek().is_some() {
        return p.err("trailing input after scalar");
    }
    Ok(s)
}

/// Renders a scalar so that [`parse_scalar`] reads it back.
pub fn scalar_text(s: &Scalar) -> String {
    if s.as_rational().is_some() || s.as_monomial().is_some() {
        s.to_string()
    } else {
        format!("({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(name: &str) -> Item {
        Item {
            name: name.into(),
            group: None,
        }
    }

    #[test]
    fn terms_and_signs() {
        let e = parse_expr("2 x1@x1 + x2").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].0, Scalar::from_int(2));
        assert_eq!(
            e.terms[0].1,
            Basis::Word {
                items: vec![item("x1"), item("x1")],
                smash: None
            }
        );
        let e = parse_expr("−q^-2 x2@x1 + (1 + q) x1 − 1/2").unwrap();
        assert_eq!(e.terms[0].0, -Scalar::q_pow(-2));
        assert_eq!(e.terms[1].0, &Scalar::one() + &Scalar::q_pow(1));
        assert_eq!(e.terms[2], (Scalar::from_ratio(-1, 2), Basis::Unit));
        let e = parse_expr("3*v - 2q^3 w").unwrap();
        assert_eq!(e.terms[1].0, Scalar::monomial(BigRational::from_integer(BigInt::from(-2)), 3));
    }

    #[test]
    fn cotensor_and_smash_words() {
        let e = parse_expr("v1.K{1}[]v2.K{0} − v2.eps[]v1.K{0}").unwrap();
        let Basis::Word { items, .. } = &e.terms[1].1 else { panic!() };
        assert_eq!(items[0].group, Some(GroupRef::Name("eps".into())));
        assert_eq!(items[1].group, Some(GroupRef::Exps(vec![0])));
        let e = parse_expr("v1@v2#K{1} + K{0,-2} − 3 1#K{1}").unwrap();
        assert_eq!(e.terms[2].0, Scalar::from_int(-3));
        assert!(matches!(&e.terms[2].1, Basis::Word { items, smash: Some(_) } if items.is_empty()));
        assert!(matches!(&e.terms[0].1, Basis::Word { smash: Some(GroupRef::Exps(x)), .. } if x == &vec![1]));
        assert_eq!(e.terms[1].1, Basis::Group(GroupRef::Exps(vec![0, -2])));
    }

    #[test]
    fn errors_have_columns() {
        let e = parse_expr("x1 + + x2").unwrap_err();
        assert_eq!(e.col, 6);
        assert!(parse_expr("").is_err());
        assert!(parse_expr("2 *").is_err());
        assert!(parse_expr("x1 $").is_err());
        assert!(parse_expr("1/0 x").is_err());
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["−1", "q^-2", "3/2", "(1 + q)", "(q^-1 − 2 + 3/2q^2)", "−2q^3"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&scalar_text(&v)).unwrap(), v);
        }
        assert_eq!(parse_scalar("-1").unwrap(), Scalar::from_int(-1));
    }
}
