//! Lexer and recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence `!` > `&` > `|` > `->`, with `->` right-associative. The same
//! token stream drives the theory-file parser in the `theory` module.

use std::fmt;

use super::syntax::{Formula, Proposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: '@' is reserved for generated assumption names")]
    ReservedCharacter { line: usize, col: usize },
    #[error("{line}:{col}: duplicate default name '{name}'")]
    DuplicateDefaultName {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: default '{name}' needs at least one justification")]
    EmptyJustifications {
        line: usize,
        col: usize,
        name: String,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    Dot,
    Equals,
    Colon,
    Comma,
    Slash,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "'{s}'"),
            TokenKind::Bang => f.write_str("'!'"),
            TokenKind::Amp => f.write_str("'&'"),
            TokenKind::Pipe => f.write_str("'|'"),
            TokenKind::Arrow => f.write_str("'->'"),
            TokenKind::LParen => f.write_str("'('"),
            TokenKind::RParen => f.write_str("')'"),
            TokenKind::Dot => f.write_str("'.'"),
            TokenKind::Equals => f.write_str("'='"),
            TokenKind::Colon => f.write_str("':'"),
            TokenKind::Comma => f.write_str("','"),
            TokenKind::Slash => f.write_str("'/'"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn lex(text: &str) -> Result<(Vec<Token>, (usize, usize)), ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '@' => return Err(ParseError::ReservedCharacter { line, col }),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(name),
                    line: tline,
                    col: tcol,
                });
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        line: tline,
                        col: tcol,
                    });
                } else {
                    return Err(ParseError::syntax(tline, tcol, "expected '->'"));
                }
            }
            _ => {
                let kind = match c {
                    '!' => TokenKind::Bang,
                    '&' => TokenKind::Amp,
                    '|' => TokenKind::Pipe,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '.' => TokenKind::Dot,
                    '=' => TokenKind::Equals,
                    ':' => TokenKind::Colon,
                    ',' => TokenKind::Comma,
                    '/' => TokenKind::Slash,
                    other => {
                        return Err(ParseError::syntax(
                            line,
                            col,
                            format!("unexpected character '{other}'"),
                        ))
                    }
                };
                chars.next();
                col += 1;
                tokens.push(Token {
                    kind,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok((tokens, (line, col)))
}

pub(crate) struct TokenStream {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl TokenStream {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        let (tokens, eof) = lex(text)?;
        Ok(TokenStream {
            tokens,
            pos: 0,
            eof,
        })
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    pub fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.eof)
    }

    pub fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        match self.next() {
            Some(t) if &t.kind == kind => Ok(t),
            Some(t) => Err(ParseError::syntax(
                t.line,
                t.col,
                format!("expected {what}, found {}", t.kind),
            )),
            None => {
                let (line, col) = self.eof;
                Err(ParseError::syntax(
                    line,
                    col,
                    format!("expected {what}, found end of input"),
                ))
            }
        }
    }

    /// Parses one formula at the current position, stopping before any token
    /// that is not part of the formula grammar.
    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        self.implication()
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Arrow)) {
            self.next();
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Pipe)) {
            self.next();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.negation()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Amp)) {
            self.next();
            lhs = Formula::and(lhs, self.negation()?);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Bang)) {
            self.next();
            Ok(Formula::not(self.negation()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Ident(name),
                ..
            }) => match name.as_str() {
                "true" => Ok(Formula::Verum),
                "false" => Ok(Formula::Falsum),
                _ => Ok(Formula::atom(Proposition::user(&name))),
            },
            Some(Token {
                kind: TokenKind::LParen,
                ..
            }) => {
                let inner = self.implication()?;
                self.expect(&TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::syntax(
                t.line,
                t.col,
                format!("expected a formula, found {}", t.kind),
            )),
            None => Err(ParseError::syntax(
                line,
                col,
                "expected a formula, found end of input",
            )),
        }
    }
}

/// Parses a single formula; the whole input must be consumed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut ts = TokenStream::new(text)?;
    let f = ts.formula()?;
    if let Some(t) = ts.peek() {
        return Err(ParseError::syntax(
            t.line,
            t.col,
            format!("unexpected {} after formula", t.kind),
        ));
    }
    Ok(f)
}
