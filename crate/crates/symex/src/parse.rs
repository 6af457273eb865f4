//! Expression parser.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := primary ('^' exponent)?
//! primary  := NUMBER | IDENT | 'exp' '(' expr ')' | 'ln' '(' expr ')' | '(' expr ')'
//! exponent := INT | '-' INT | '(' ['-'] INT ['/' INT] ')'
//! ```
//!
//! Variables are `x y p q`; any other identifier is a parameter. Numbers
//! are integers; rationals are formed by `/`, which folds exactly.
//! Exponents must be integer or rational literals; chained `^` folds
//! right-associatively over integer exponents.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::ParseError;
use crate::expr::Expr;
use crate::rat::{rat_i, rat_powi, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                if end < self.src.len() && self.src[end] == b'.' {
                    return Err(ParseError::NonRationalLiteral { pos: start });
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Num(text.parse().unwrap())
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Ident(text.to_string())
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    tok_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, tok_pos) = lexer.next()?;
        Ok(Parser {
            lexer,
            tok,
            tok_pos,
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.lexer.next()?;
        self.tok = tok;
        self.tok_pos = pos;
        Ok(())
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.tok == t {
            self.bump()
        } else {
            Err(ParseError::Syntax {
                pos: self.tok_pos,
                msg: format!("expected {what}"),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let negate = if self.tok == Tok::Minus {
            self.bump()?;
            true
        } else {
            false
        };
        let first = self.term()?;
        terms.push(if negate { Expr::neg(&first) } else { first });
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    let t = self.term()?;
                    terms.push(t);
                }
                Tok::Minus => {
                    self.bump()?;
                    let t = self.term()?;
                    terms.push(Expr::neg(&t));
                }
                _ => break,
            }
        }
        Ok(Expr::add_all(&terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    factors.push(self.factor()?);
                }
                Tok::Slash => {
                    self.bump()?;
                    let f = self.factor()?;
                    factors.push(Expr::pow(&f, rat_i(-1)));
                }
                _ => break,
            }
        }
        Ok(Expr::mul_all(&factors))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let e = self.exponent()?;
            Ok(Expr::pow(&base, e))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<Rat, ParseError> {
        let first = self.exponent_atom()?;
        if self.tok == Tok::Caret {
            // Right-associative literal chain, e.g. 2^3^2 = 2^9.
            self.bump()?;
            let rest = self.exponent()?;
            let n = rest.numer().to_i64().ok_or(ParseError::Syntax {
                pos: self.tok_pos,
                msg: "exponent too large".to_string(),
            })?;
            if !rest.denom().to_i64().map(|d| d == 1).unwrap_or(false) {
                return Err(ParseError::Syntax {
                    pos: self.tok_pos,
                    msg: "chained exponent must be an integer".to_string(),
                });
            }
            Ok(rat_powi(&first, n))
        } else {
            Ok(first)
        }
    }

    fn exponent_atom(&mut self) -> Result<Rat, ParseError> {
        match self.tok.clone() {
            Tok::Num(n) => {
                self.bump()?;
                Ok(Rat::from_integer(n))
            }
            Tok::Minus => {
                self.bump()?;
                match self.tok.clone() {
                    Tok::Num(n) => {
                        self.bump()?;
                        Ok(-Rat::from_integer(n))
                    }
                    _ => Err(ParseError::Syntax {
                        pos: self.tok_pos,
                        msg: "expected integer exponent after `-`".to_string(),
                    }),
                }
            }
            Tok::LParen => {
                self.bump()?;
                let neg = if self.tok == Tok::Minus {
                    self.bump()?;
                    true
                } else {
                    false
                };
                let n = match self.tok.clone() {
                    Tok::Num(n) => {
                        self.bump()?;
                        n
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: self.tok_pos,
                            msg: "expected rational literal exponent".to_string(),
                        })
                    }
                };
                let d = if self.tok == Tok::Slash {
                    self.bump()?;
                    match self.tok.clone() {
                        Tok::Num(d) => {
                            self.bump()?;
                            d
                        }
                        _ => {
                            return Err(ParseError::Syntax {
                                pos: self.tok_pos,
                                msg: "expected denominator".to_string(),
                            })
                        }
                    }
                } else {
                    BigInt::from(1)
                };
                self.expect(Tok::RParen, "`)`")?;
                let mut r = Rat::new(n, d);
                if neg {
                    r = -r;
                }
                Ok(r)
            }
            _ => Err(ParseError::Syntax {
                pos: self.tok_pos,
                msg: "expected integer or rational-literal exponent".to_string(),
            }),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Num(n) => {
                self.bump()?;
                Ok(Expr::num(Rat::from_integer(n)))
            }
            Tok::Ident(name) => {
                let pos = self.tok_pos;
                self.bump()?;
                if self.tok == Tok::LParen {
                    self.bump()?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    match name.as_str() {
                        "exp" => Ok(Expr::exp_of(&arg)),
                        "ln" => Ok(Expr::ln_of(&arg)),
                        _ => Err(ParseError::UnknownFunction { pos, name }),
                    }
                } else {
                    Ok(Expr::sym(&name))
                }
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(ParseError::Syntax {
                pos: self.tok_pos,
                msg: "expected number, symbol or `(`".to_string(),
            }),
        }
    }
}

/// Parses text into a canonical expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if p.tok != Tok::Eof {
        return Err(ParseError::Syntax {
            pos: p.tok_pos,
            msg: "unexpected trailing input".to_string(),
        });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_q;

    #[test]
    fn parses_spec_examples() {
        let e = parse("q^3").unwrap();
        assert_eq!(e, Expr::powi(&Expr::sym("q"), 3));

        let e = parse("A*x^3*q^4").unwrap();
        let expected = Expr::mul_all(&[
            Expr::sym("A"),
            Expr::powi(&Expr::sym("x"), 3),
            Expr::powi(&Expr::sym("q"), 4),
        ]);
        assert_eq!(e, expected);

        let e = parse("3*q^2/p + A*q^3/p^5").unwrap();
        let t1 = Expr::mul_all(&[
            Expr::int(3),
            Expr::powi(&Expr::sym("q"), 2),
            Expr::powi(&Expr::sym("p"), -1),
        ]);
        let t2 = Expr::mul_all(&[
            Expr::sym("A"),
            Expr::powi(&Expr::sym("q"), 3),
            Expr::powi(&Expr::sym("p"), -5),
        ]);
        assert_eq!(e, Expr::add(&t1, &t2));
    }

    #[test]
    fn rational_exponents() {
        let e = parse("q^(3/2)").unwrap();
        assert_eq!(e, Expr::pow(&Expr::sym("q"), rat_q(3, 2)));
        let e = parse("x^(-2)").unwrap();
        assert_eq!(e, Expr::powi(&Expr::sym("x"), -2));
        let e = parse("x^-2").unwrap();
        assert_eq!(e, Expr::powi(&Expr::sym("x"), -2));
    }

    #[test]
    fn rational_literals_fold() {
        assert_eq!(parse("2/3").unwrap(), Expr::num(rat_q(2, 3)));
        assert_eq!(parse("-1/2").unwrap(), Expr::num(rat_q(-1, 2)));
    }

    #[test]
    fn functions() {
        let e = parse("exp(x) + ln(x)").unwrap();
        let expected = Expr::add(&Expr::exp_of(&Expr::sym("x")), &Expr::ln_of(&Expr::sym("x")));
        assert_eq!(e, expected);
        assert!(matches!(
            parse("sin(x)"),
            Err(ParseError::UnknownFunction { .. })
        ));
    }

    #[test]
    fn error_positions() {
        match parse("x + $") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse("1.5"),
            Err(ParseError::NonRationalLiteral { pos: 0 })
        ));
    }

    #[test]
    fn print_parse_roundtrip() {
        for src in [
            "q^3",
            "A*x^3*q^4",
            "3*q^2/p + A*q^3/p^5",
            "q^(3/2)",
            "x + y - 2*p",
            "exp(x)^2*ln(y)",
            "1/q",
            "(x + 1)^(-2)",
            "2^(1/2)*x",
            "-x - 1",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            let back = parse(&printed).unwrap();
            assert_eq!(e, back, "roundtrip failed: {src} -> {printed}");
        }
    }
}
