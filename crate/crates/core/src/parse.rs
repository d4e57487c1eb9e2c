//! Text grammar shared by scalars and quantum-plane polynomials.
//!
//! ```text
//! document := [ "conductor" "=" UINT ";" ] expr
//! expr     := [ "-" ] term { ("+" | "-") term }
//! term     := factor { "*" factor }
//! factor   := UINT [ "/" UINT ]
//!           | "q" [ "^" SINT ]        (quantum parameter, Laurent)
//!           | "z" [ "^" SINT ]        (root of unity of the declared conductor)
//!           | "x" [ "^" UINT ]
//!           | "y" [ "^" UINT ]
//!           | "(" expr ")"
//! ```
//!
//! `z` powers refer to the conductor declared at the head of the document
//! (default 1, where `z = 1`). Scalars use the same grammar with `x`, `y`
//! forbidden.

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};
use crate::qplane::QPoly;
use crate::scalar::{QSpec, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(char),
    Conductor,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Semi,
    Equals,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '+' => {
                tokens.push(Token::Plus);
                pos += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                pos += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                pos += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                pos += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                pos += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                pos += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                pos += 1;
            }
            ';' => {
                tokens.push(Token::Semi);
                pos += 1;
            }
            '=' => {
                tokens.push(Token::Equals);
                pos += 1;
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                let value = digits
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer `{digits}`")))?;
                tokens.push(Token::Int(value));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                    pos += 1;
                }
                match &text[start..pos] {
                    "q" => tokens.push(Token::Ident('q')),
                    "z" => tokens.push(Token::Ident('z')),
                    "x" => tokens.push(Token::Ident('x')),
                    "y" => tokens.push(Token::Ident('y')),
                    "conductor" => tokens.push(Token::Conductor),
                    other => {
                        return Err(Error::Parse(format!(
                            "unknown identifier `{other}` at byte {start}"
                        )))
                    }
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` at byte {pos}"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    conductor: u64,
    spec: &'a QSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        match self.next() {
            Some(t) if t == token => Ok(()),
            other => Err(Error::Parse(format!("expected {what}, found {other:?}"))),
        }
    }

    fn parse_uint(&mut self, what: &str) -> Result<BigInt> {
        match self.next() {
            Some(Token::Int(n)) => Ok(n),
            other => Err(Error::Parse(format!("expected {what}, found {other:?}"))),
        }
    }

    /// `^` followed by an optionally signed integer; absent means 1.
    fn parse_exponent(&mut self) -> Result<BigInt> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(BigInt::one());
        }
        self.next();
        let negative = if self.peek() == Some(&Token::Minus) {
            self.next();
            true
        } else {
            false
        };
        let n = self.parse_uint("exponent")?;
        Ok(if negative { -n } else { n })
    }

    fn parse_document(&mut self) -> Result<QPoly> {
        if self.peek() == Some(&Token::Conductor) {
            self.next();
            self.expect(Token::Equals, "`=` after `conductor`")?;
            let n = self.parse_uint("conductor value")?;
            self.conductor = u64::try_from(&n)
                .map_err(|_| Error::Parse(format!("conductor {n} out of range")))?;
            if self.conductor == 0 {
                return Err(Error::Parse("conductor must be positive".into()));
            }
            self.expect(Token::Semi, "`;` after conductor declaration")?;
        }
        let poly = self.parse_expr()?;
        match self.peek() {
            None => Ok(poly),
            Some(t) => Err(Error::Parse(format!("trailing input at token {t:?}"))),
        }
    }

    fn parse_expr(&mut self) -> Result<QPoly> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = acc.add(&t, self.spec)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t, self.spec)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<QPoly> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let f = self.parse_factor()?;
            acc = acc.mul(&f, self.spec)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<QPoly> {
        match self.next() {
            Some(Token::Int(numer)) => {
                let denom = if self.peek() == Some(&Token::Slash) {
                    self.next();
                    let d = self.parse_uint("denominator")?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(QPoly::constant(Scalar::from_rational(BigRational::new(
                    numer, denom,
                ))))
            }
            Some(Token::Ident('q')) => {
                let e = self.parse_exponent()?;
                let e = i64::try_from(&e)
                    .map_err(|_| Error::Parse(format!("q-exponent {e} out of range")))?;
                Ok(QPoly::constant(Scalar::q_power(e, self.spec)?))
            }
            Some(Token::Ident('z')) => {
                let e = self.parse_exponent()?;
                let e = i64::try_from(&e)
                    .map_err(|_| Error::Parse(format!("z-exponent {e} out of range")))?;
                Ok(QPoly::constant(Scalar::root_of_unity(self.conductor, e)?))
            }
            Some(Token::Ident(v @ ('x' | 'y'))) => {
                let e = self.parse_exponent()?;
                let e = u32::try_from(&e).map_err(|_| {
                    Error::Parse(format!(
                        "{v}-exponent {e} must be a small nonnegative integer"
                    ))
                })?;
                Ok(if v == 'x' {
                    QPoly::monomial(e, 0, Scalar::one())
                } else {
                    QPoly::monomial(0, e, Scalar::one())
                })
            }
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen, "closing `)`")?;
                Ok(inner)
            }
            other => Err(Error::Parse(format!("expected a factor, found {other:?}"))),
        }
    }
}

pub(crate) fn parse_qpoly(text: &str, spec: &QSpec) -> Result<QPoly> {
    spec.validate()?;
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        conductor: 1,
        spec,
    };
    parser.parse_document()
}

pub(crate) fn parse_scalar(text: &str, spec: &QSpec) -> Result<Scalar> {
    let poly = parse_qpoly(text, spec)?;
    if poly.is_constant() {
        Ok(poly.coeff(0, 0))
    } else {
        Err(Error::Parse(
            "expected a scalar, found generators x/y".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: QSpec = QSpec::Transcendental;

    #[test]
    fn parses_spec_shapes() {
        let s = Scalar::parse("conductor=12; 1/2*q^-1*z^3 + 2", &T).unwrap();
        assert_eq!(s.conductor(), 12);

        let p = QPoly::parse("x^3*y + x^2*y^2", &T).unwrap();
        assert_eq!(p.num_terms(), 2);

        let p = QPoly::parse("(1 + q)*x*y - 3*y^2", &T).unwrap();
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn scalar_rejects_generators() {
        assert!(matches!(Scalar::parse("2*x", &T), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(QPoly::parse("x^", &T).is_err());
        assert!(QPoly::parse("3 +", &T).is_err());
        assert!(QPoly::parse("w + 2", &T).is_err());
        assert!(QPoly::parse("x^-2", &T).is_err());
        assert!(QPoly::parse("(x + y", &T).is_err());
        assert!(QPoly::parse("1/0", &T).is_err());
        assert!(QPoly::parse("conductor=0; z", &T).is_err());
    }

    #[test]
    fn folds_q_under_specialization() {
        let spec = QSpec::root_of_unity(5).unwrap();
        let a = Scalar::parse("q^7", &spec).unwrap();
        let b = Scalar::parse("conductor=5; z^2", &spec).unwrap();
        assert_eq!(a, b);
    }
}
