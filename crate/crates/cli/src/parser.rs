//! Recursive-descent parser for exact coordinate expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := term { ("+" | "-") term }
//! term     := unary { ("*" | "/") unary }
//! unary    := "-" unary | power
//! power    := atom { "^" exponent }          exponent: non-negative integer
//! atom     := integer | coordinate | "(" expr ")"
//! ```
//!
//! Precedence is `^` > unary `-` > `*` `/` > `+` `-`; binary operators
//! associate to the left. Rational constants are written as quotients of
//! integer literals (`5/3`), which the exact field arithmetic evaluates
//! losslessly. Every error carries the byte offset of the offending token.

use obsplit_core::{Chart, Rational, ScalarField};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Int(src[start..i].to_string()),
                    pos,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(src[start..i].to_string()),
                    pos,
                });
            }
            b'+' => {
                tokens.push(Token {
                    kind: TokenKind::Plus,
                    pos,
                });
                i += 1;
            }
            b'-' => {
                tokens.push(Token {
                    kind: TokenKind::Minus,
                    pos,
                });
                i += 1;
            }
            b'*' => {
                tokens.push(Token {
                    kind: TokenKind::Star,
                    pos,
                });
                i += 1;
            }
            b'/' => {
                tokens.push(Token {
                    kind: TokenKind::Slash,
                    pos,
                });
                i += 1;
            }
            b'^' => {
                tokens.push(Token {
                    kind: TokenKind::Caret,
                    pos,
                });
                i += 1;
            }
            b'(' => {
                tokens.push(Token {
                    kind: TokenKind::LParen,
                    pos,
                });
                i += 1;
            }
            b')' => {
                tokens.push(Token {
                    kind: TokenKind::RParen,
                    pos,
                });
                i += 1;
            }
            _ => {
                let ch = src[pos..].chars().next().unwrap();
                return Err(CliError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    cursor: usize,
    chart: &'a Chart,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<ScalarField> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                TokenKind::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ScalarField> {
        let mut acc = self.unary()?;
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::Star => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                TokenKind::Slash => {
                    let pos = tok.pos;
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc
                        .try_div(&rhs)
                        .map_err(|_| CliError::DivisionByZero { position: pos })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ScalarField> {
        if let Some(tok) = self.peek() {
            if tok.kind == TokenKind::Minus {
                self.next();
                return Ok(-&self.unary()?);
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarField> {
        let mut acc = self.atom()?;
        while let Some(tok) = self.peek() {
            if tok.kind != TokenKind::Caret {
                break;
            }
            self.next();
            let exp = self.exponent()?;
            acc = pow(&acc, exp);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        let pos = self.here();
        match self.next().map(|t| t.kind) {
            Some(TokenKind::Int(digits)) => digits.parse::<u32>().map_err(|_| CliError::Syntax {
                position: pos,
                message: "exponent does not fit in 32 bits".to_string(),
            }),
            Some(TokenKind::Minus) => Err(CliError::NegativeExponent { position: pos }),
            _ => Err(CliError::Syntax {
                position: pos,
                message: "expected a non-negative integer exponent".to_string(),
            }),
        }
    }

    fn atom(&mut self) -> Result<ScalarField> {
        let pos = self.here();
        match self.next().map(|t| t.kind) {
            Some(TokenKind::Int(digits)) => {
                let r: Rational = digits.parse().map_err(|_| CliError::Syntax {
                    position: pos,
                    message: "malformed integer literal".to_string(),
                })?;
                Ok(ScalarField::constant(self.chart.vars(), r))
            }
            Some(TokenKind::Ident(name)) => match self.chart.index_of(&name) {
                Some(idx) => Ok(ScalarField::var_idx(self.chart.vars(), idx)),
                None => Err(CliError::UnknownIdentifier {
                    name,
                    position: pos,
                }),
            },
            Some(TokenKind::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token {
                        kind: TokenKind::RParen,
                        ..
                    }) => Ok(inner),
                    _ => Err(CliError::Syntax {
                        position: self.here().min(self.end),
                        message: "expected `)`".to_string(),
                    }),
                }
            }
            Some(other) => Err(CliError::Syntax {
                position: pos,
                message: format!("unexpected token `{}`", describe(&other)),
            }),
            None => Err(CliError::Syntax {
                position: pos,
                message: "unexpected end of expression".to_string(),
            }),
        }
    }
}

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Int(s) | TokenKind::Ident(s) => s.clone(),
        TokenKind::Plus => "+".to_string(),
        TokenKind::Minus => "-".to_string(),
        TokenKind::Star => "*".to_string(),
        TokenKind::Slash => "/".to_string(),
        TokenKind::Caret => "^".to_string(),
        TokenKind::LParen => "(".to_string(),
        TokenKind::RParen => ")".to_string(),
    }
}

/// Exact exponentiation by a non-negative integer.
fn pow(base: &ScalarField, exp: u32) -> ScalarField {
    ScalarField::new(base.num().pow(exp), base.den().pow(exp))
        .expect("a power of a nonzero denominator is nonzero")
}

/// Parse `src` into an exact scalar over the chart's coordinates.
pub fn parse_expression(src: &str, chart: &Chart) -> Result<ScalarField> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(CliError::Syntax {
            position: 0,
            message: "empty expression".to_string(),
        });
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        chart,
        end: src.len(),
    };
    let value = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(CliError::Syntax {
            position: tok.pos,
            message: format!("unexpected trailing `{}`", describe(&tok.kind)),
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use obsplit_core::{rat, rat_int};

    fn chart() -> Chart {
        Chart::new(["t", "x", "y", "z"]).unwrap()
    }

    fn parse(src: &str) -> ScalarField {
        parse_expression(src, &chart()).unwrap()
    }

    #[test]
    fn literals_and_precedence() {
        let c = chart();
        let x = ScalarField::var_idx(c.vars(), 1);
        let t = ScalarField::var_idx(c.vars(), 0);

        assert_eq!(parse("5/3"), ScalarField::constant(c.vars(), rat(5, 3)));
        assert_eq!(
            parse("x^2*t - 1/2"),
            &(&(&x * &x) * &t) - &ScalarField::constant(c.vars(), rat(1, 2))
        );
        // ^ binds tighter than unary minus: -x^2 = -(x^2).
        assert_eq!(parse("-x^2"), -&(&x * &x));
        // Left associativity: 8/4/2 = 1, 8-4-2 = 2.
        assert_eq!(parse("8/4/2"), ScalarField::constant(c.vars(), rat_int(1)));
        assert_eq!(parse("8-4-2"), ScalarField::constant(c.vars(), rat_int(2)));
        // Parentheses and whitespace insensitivity.
        assert_eq!(parse(" ( t + x ) ^ 2 "), (&(&t + &x) * &(&t + &x)));
        assert_eq!(parse("x^0"), ScalarField::one(c.vars()));
    }

    #[test]
    fn rational_functions() {
        let c = chart();
        let t = ScalarField::var_idx(c.vars(), 0);
        let x = ScalarField::var_idx(c.vars(), 1);
        let num = &(&t * &t) - &(&x * &x);
        let den = &t - &x;
        let v = parse("(t^2-x^2)/(t-x)");
        assert_eq!(v, num.try_div(&den).unwrap());
        // Cross-multiplied equality sees through the common factor.
        assert_eq!(v, &t + &x);
    }

    #[test]
    fn error_positions() {
        let c = chart();
        match parse_expression("x^-1", &c) {
            Err(CliError::NegativeExponent { position }) => assert_eq!(position, 2),
            other => panic!("expected NegativeExponent, got {other:?}"),
        }
        match parse_expression("x + w", &c) {
            Err(CliError::UnknownIdentifier { name, position }) => {
                assert_eq!(name, "w");
                assert_eq!(position, 4);
            }
            other => panic!("expected UnknownIdentifier, got {other:?}"),
        }
        match parse_expression("1/(x-x)", &c) {
            Err(CliError::DivisionByZero { position }) => assert_eq!(position, 1),
            other => panic!("expected DivisionByZero, got {other:?}"),
        }
        match parse_expression("(t+1", &c) {
            Err(CliError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected Syntax, got {other:?}"),
        }
        match parse_expression("2 $ 2", &c) {
            Err(CliError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected Syntax, got {other:?}"),
        }
        assert!(matches!(
            parse_expression("", &c),
            Err(CliError::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse_expression("x 3", &c),
            Err(CliError::Syntax { position: 2, .. })
        ));
    }
}
