use std::fmt;

use thiserror::Error;

use super::expr::{BundleExpr, MAX_SYM, MAX_WEDGE};

/// Parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }

    /// The input, then a caret under the offending column, then the message.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.pos.min(input.len())].chars().count();
        format!("{input}\n{}^ {}", " ".repeat(col), self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = input[start..i]
                    .parse()
                    .map_err(|_| ParseError::new(start, "integer out of range"))?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((input.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<BundleExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = BundleExpr::sum(acc, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = BundleExpr::diff(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BundleExpr, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = BundleExpr::tensor(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BundleExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(match inner {
                BundleExpr::Const(n) => BundleExpr::Const(-n),
                e => BundleExpr::tensor(BundleExpr::Const(-1), e),
            });
        }
        self.atom()
    }

    fn power_call(&mut self, max: u32, name: &str) -> Result<(u32, BundleExpr), ParseError> {
        self.expect(Tok::LParen)?;
        let at = self.pos();
        let k = match self.bump() {
            Tok::Int(k) if (0..=max as i64).contains(&k) => k as u32,
            Tok::Int(k) => return Err(ParseError::new(at, format!("{name} exponent {k} outside 0..={max}"))),
            t => return Err(ParseError::new(at, format!("expected exponent, found {t}"))),
        };
        self.expect(Tok::Comma)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok((k, e))
    }

    fn atom(&mut self) -> Result<BundleExpr, ParseError> {
        let at = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(BundleExpr::Const(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "TC" => Ok(BundleExpr::TC),
                "XiC" => Ok(BundleExpr::XiC),
                "Delta" => Ok(BundleExpr::Delta),
                "wedge" => {
                    let (k, e) = self.power_call(MAX_WEDGE, "wedge")?;
                    Ok(BundleExpr::wedge(k, e))
                }
                "sym" => {
                    let (k, e) = self.power_call(MAX_SYM, "sym")?;
                    Ok(BundleExpr::sym(k, e))
                }
                "tilde" => {
                    self.expect(Tok::LParen)?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(BundleExpr::tilde(e))
                }
                other => indexed_atom(other).ok_or_else(|| ParseError::new(at, format!("unknown name '{other}'"))),
            },
            t => Err(ParseError::new(at, format!("expected a bundle, found {t}"))),
        }
    }
}

fn indexed_atom(name: &str) -> Option<BundleExpr> {
    let (ctor, digits): (fn(u8) -> BundleExpr, &str) = if let Some(d) = name.strip_prefix("Wbar") {
        (BundleExpr::Wbar, d)
    } else {
        (BundleExpr::W, name.strip_prefix('W')?)
    };
    match digits {
        "1" | "2" | "3" => Some(ctor(digits.as_bytes()[0] - b'0')),
        _ => None,
    }
}

/// Parses the textual bundle grammar, e.g. `2*tilde(TC) + wedge(2, tilde(XiC))`.
pub fn parse_bundle(input: &str) -> Result<BundleExpr, ParseError> {
    let mut p = Parser { toks: lex(input)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::new(p.pos(), format!("unexpected {}", p.peek())));
    }
    Ok(e)
}
