//! Recursive-descent parser; one token of lookahead suffices.

use std::fmt;

use super::ast::{Formula, Sentence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    BadMultiplicity(String),
    Unbound(String),
}

/// Syntax error annotated with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(pos: usize, kind: ParseErrorKind) -> Self {
        ParseError { pos, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?} at offset {}", self.pos),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected} at offset {}, found `{found}`", self.pos)
            }
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected} at end of input"),
            ParseErrorKind::BadMultiplicity(s) => write!(f, "bad multiplicity `{s}` at offset {}", self.pos),
            ParseErrorKind::Unbound(v) => write!(f, "free variable `{v}` in sentence position"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Equals,
    Adj,
    AdjK,
    AdjN(u32),
    Ident(String),
    Num(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Forall => f.write_str("forall"),
            Tok::Exists => f.write_str("exists"),
            Tok::Dot => f.write_str("."),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::Bang => f.write_str("!"),
            Tok::Amp => f.write_str("&"),
            Tok::Pipe => f.write_str("|"),
            Tok::Arrow => f.write_str("->"),
            Tok::DoubleArrow => f.write_str("<->"),
            Tok::Equals => f.write_str("="),
            Tok::Adj => f.write_str("adj"),
            Tok::AdjK => f.write_str("adjk"),
            Tok::AdjN(j) => write!(f, "adj{j}"),
            Tok::Ident(s) | Tok::Num(s) => f.write_str(s),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'.' => Some(Tok::Dot),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'!' => Some(Tok::Bang),
            b'&' => Some(Tok::Amp),
            b'|' => Some(Tok::Pipe),
            b'=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if text[i..].starts_with("->") {
            out.push((start, Tok::Arrow));
            i += 2;
        } else if text[i..].starts_with("<->") {
            out.push((start, Tok::DoubleArrow));
            i += 3;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(text[start..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "adj" => Tok::Adj,
                "adjk" => Tok::AdjK,
                w if w.len() > 3 && w.starts_with("adj") && w[3..].bytes().all(|b| b.is_ascii_digit()) => {
                    let j: u32 = w[3..].parse().map_err(|_| {
                        ParseError::new(start, ParseErrorKind::BadMultiplicity(w[3..].to_string()))
                    })?;
                    if j == 0 {
                        return Err(ParseError::new(start, ParseErrorKind::BadMultiplicity("0".into())));
                    }
                    Tok::AdjN(j)
                }
                w => Tok::Ident(w.to_string()),
            };
            out.push((start, tok));
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(ParseError::new(start, ParseErrorKind::UnexpectedChar(ch)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.at) {
            Some((pos, t)) => ParseError::new(*pos, ParseErrorKind::UnexpectedToken { found: t.to_string(), expected }),
            None => ParseError::new(usize::MAX, ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("variable")),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.peek() == Some(&Tok::DoubleArrow) {
            self.at += 1;
            lhs = Formula::iff(lhs, self.implication()?);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.at += 1;
            return Ok(Formula::implies(lhs, self.implication()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.at += 1;
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.at += 1;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let (_, q) = self.bump().unwrap();
                let v = self.ident()?;
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                let body = self.iff()?;
                Ok(match q {
                    Tok::Forall => Formula::Forall(v, Box::new(body)),
                    _ => Formula::Exists(v, Box::new(body)),
                })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Adj) | Some(Tok::AdjK) | Some(Tok::AdjN(_)) => self.adjacency(),
            Some(Tok::Ident(_)) => {
                let a = self.ident()?;
                self.expect(Tok::Equals, "`=`")?;
                let b = self.ident()?;
                Ok(Formula::Eq(a, b))
            }
            _ => Err(self.unexpected("formula")),
        }
    }

    fn adjacency(&mut self) -> Result<Formula, ParseError> {
        let (_, head) = self.bump().unwrap();
        self.expect(Tok::LParen, "`(`")?;
        let a = self.ident()?;
        self.expect(Tok::Comma, "`,`")?;
        let b = self.ident()?;
        let j = match head {
            Tok::Adj => 1,
            Tok::AdjN(j) => j,
            _ => {
                self.expect(Tok::Comma, "`,`")?;
                match self.bump() {
                    Some((pos, Tok::Num(s))) => match s.parse::<u32>() {
                        Ok(j) if j >= 1 => j,
                        _ => return Err(ParseError::new(pos, ParseErrorKind::BadMultiplicity(s))),
                    },
                    _ => {
                        self.at -= 1;
                        return Err(self.unexpected("multiplicity"));
                    }
                }
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(Formula::Adj(a, b, j))
    }
}

/// Parse a formula that may contain free variables.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let f = p.iff()?;
    if p.at < p.toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parse a closed sentence.
pub fn parse(text: &str) -> Result<Sentence, ParseError> {
    Sentence::new(parse_formula(text)?)
}
