use std::f64::consts::PI;

use thiserror::Error;

use super::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnbalancedParen,
    UnknownFunction(String),
    MissingArguments(String),
    TrailingInput,
    BadNumber(String),
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::EmptyInput => write!(f, "empty input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token '{t}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parentheses"),
            ParseErrorKind::UnknownFunction(name) => write!(f, "unknown function '{name}'"),
            ParseErrorKind::MissingArguments(name) => {
                write!(f, "function '{name}' used without an argument list")
            }
            ParseErrorKind::TrailingInput => write!(f, "trailing input"),
            ParseErrorKind::BadNumber(t) => write!(f, "malformed number '{t}'"),
        }
    }
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => v.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn err(offset: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { offset, kind }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((i, Tok::Op(c as char)));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // optional exponent, only when digits follow
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| err(start, ParseErrorKind::BadNumber(text.to_string())))?;
                out.push((start, Tok::Num(value)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(err(i, ParseErrorKind::UnexpectedChar(ch)));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.bump();
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.bump() {
            None => Err(err(offset, ParseErrorKind::UnexpectedEnd)),
            Some(Tok::Num(v)) => Ok(Expr::Const(v)),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                self.expect_close(offset)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                let is_call = matches!(self.peek(), Some(Tok::LParen));
                match (Func::from_name(&name), is_call) {
                    (Some(func), true) => {
                        let open = self.offset();
                        self.bump();
                        let arg = self.sum()?;
                        self.expect_close(open)?;
                        Ok(Expr::call(func, arg))
                    }
                    (Some(_), false) => Err(err(offset, ParseErrorKind::MissingArguments(name))),
                    (None, true) => Err(err(offset, ParseErrorKind::UnknownFunction(name))),
                    (None, false) if name == "pi" => Ok(Expr::Const(PI)),
                    (None, false) => Ok(Expr::Var(name)),
                }
            }
            Some(Tok::RParen) => Err(err(offset, ParseErrorKind::UnbalancedParen)),
            Some(t) => Err(err(offset, ParseErrorKind::UnexpectedToken(t.describe()))),
        }
    }

    fn expect_close(&mut self, _open: usize) -> Result<(), ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::RParen) => Ok(()),
            None => Err(err(offset, ParseErrorKind::UnbalancedParen)),
            Some(t) => Err(err(offset, ParseErrorKind::UnexpectedToken(t.describe()))),
        }
    }
}

/// Parses formula text into an [`Expr`].
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(source)?;
    if toks.is_empty() {
        return Err(err(0, ParseErrorKind::EmptyInput));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: source.len(),
    };
    let e = p.sum()?;
    if p.pos < p.toks.len() {
        let offset = p.offset();
        let kind = match p.peek() {
            Some(Tok::RParen) => ParseErrorKind::UnbalancedParen,
            _ => ParseErrorKind::TrailingInput,
        };
        return Err(err(offset, kind));
    }
    Ok(e)
}
