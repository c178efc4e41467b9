//! The presentation file grammar:
//!
//! ```text
//! # comment
//! gens: x, y
//! rels: x^4, y^2, [x, y], x = y
//! ```
//!
//! expr := product (`=` product)?   (equality desugars to LHS·RHS⁻¹)
//! product := term (`*` term)*
//! term := id (`^` int)? | `[` expr `,` expr `]` | `(` expr `)`
//!
//! Whitespace insensitive; `#` starts a comment; errors carry positions.

use crate::error::{Error, Result};
use crate::words::{FreePresentation, Word};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Comma,
    Eq,
    LBracket,
    RBracket,
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a str,
    line: usize,
    col: usize,
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, line: usize, col0: usize) -> Self {
        Lexer { text, line, col: col0, chars: text.chars().peekable() }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize)>> {
        let _ = self.text;
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let col = self.col;
            match c {
                ' ' | '\t' => {
                    self.bump();
                }
                '#' => break,
                '*' => {
                    self.bump();
                    out.push((Token::Star, col));
                }
                '^' => {
                    self.bump();
                    out.push((Token::Caret, col));
                }
                ',' => {
                    self.bump();
                    out.push((Token::Comma, col));
                }
                '=' => {
                    self.bump();
                    out.push((Token::Eq, col));
                }
                '[' => {
                    self.bump();
                    out.push((Token::LBracket, col));
                }
                ']' => {
                    self.bump();
                    out.push((Token::RBracket, col));
                }
                '(' => {
                    self.bump();
                    out.push((Token::LParen, col));
                }
                ')' => {
                    self.bump();
                    out.push((Token::RParen, col));
                }
                '-' | '0'..='9' => {
                    let mut s = String::new();
                    if c == '-' {
                        s.push(c);
                        self.bump();
                    }
                    while let Some(&d) = self.chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    let value: i64 = s
                        .parse()
                        .map_err(|_| self.error(format!("bad integer `{s}`")))?;
                    out.push((Token::Int(value), col));
                }
                c if c.is_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if d.is_alphanumeric() || d == '_' || d == '\'' {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push((Token::Ident(s), col));
                }
                other => return Err(self.error(format!("unexpected character `{other}`"))),
            }
        }
        Ok(out)
    }

    fn bump(&mut self) {
        self.chars.next();
        self.col += 1;
    }
}

struct ExprParser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    line: usize,
    generators: &'a [String],
}

impl<'a> ExprParser<'a> {
    fn error_at(&self, msg: impl Into<String>) -> Error {
        let col = self.tokens.get(self.pos).map(|&(_, c)| c).unwrap_or_else(|| {
            self.tokens.last().map(|&(_, c)| c + 1).unwrap_or(1)
        });
        Error::Parse { line: self.line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// expr := product (= product)?
    fn expr(&mut self) -> Result<Word> {
        let lhs = self.product()?;
        if self.peek() == Some(&Token::Eq) {
            self.next();
            let rhs = self.product()?;
            return Ok(lhs.mul(&rhs.inverse()));
        }
        Ok(lhs)
    }

    /// product := term (* term)*
    fn product(&mut self) -> Result<Word> {
        let mut out = self.term()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            out = out.mul(&self.term()?);
        }
        Ok(out)
    }

    /// term := id (^ int)? | [ expr , expr ] | ( expr )
    fn term(&mut self) -> Result<Word> {
        match self.next().cloned() {
            Some(Token::Ident(name)) => {
                let index = self.generator_index(&name)?;
                if self.peek() == Some(&Token::Caret) {
                    self.next();
                    match self.next().cloned() {
                        Some(Token::Int(e)) => {
                            if e == 0 {
                                return Err(Error::ZeroExponent(name));
                            }
                            Ok(Word::generator_power(index, e))
                        }
                        _ => Err(self.error_at("expected an integer exponent after `^`")),
                    }
                } else {
                    Ok(Word::generator(index))
                }
            }
            Some(Token::LBracket) => {
                let u = self.expr()?;
                if self.next().cloned() != Some(Token::Comma) {
                    return Err(self.error_at("expected `,` inside commutator brackets"));
                }
                let v = self.expr()?;
                if self.next().cloned() != Some(Token::RBracket) {
                    return Err(self.error_at("expected `]` closing the commutator"));
                }
                Ok(Word::commutator(&u, &v))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if self.next().cloned() != Some(Token::RParen) {
                    return Err(self.error_at("expected `)`"));
                }
                Ok(inner)
            }
            other => Err(self.error_at(format!("expected a term, found {other:?}"))),
        }
    }
}

/// Parse a presentation file.
pub fn parse_presentation(text: &str) -> Result<FreePresentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators: Vec<Word> = Vec::new();
    for (line_index, raw_line) in text.lines().enumerate() {
        let line_no = line_index + 1;
        let stripped = raw_line.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        if let Some(rest) = stripped.strip_prefix("gens:") {
            if generators.is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    col: 1,
                    msg: "duplicate `gens:` line".into(),
                });
            }
            let names: Vec<String> = rest
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            for name in &names {
                let mut chars = name.chars();
                let head_ok = chars.next().map(|c| c.is_alphabetic() || c == '_').unwrap_or(false);
                if !head_ok || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: format!("invalid generator identifier `{name}`"),
                    });
                }
            }
            generators = Some(names);
        } else if let Some(rest) = stripped.strip_prefix("rels:") {
            let gens = generators.as_ref().ok_or(Error::Parse {
                line: line_no,
                col: 1,
                msg: "`rels:` before `gens:`".into(),
            })?;
            let offset = raw_line.find("rels:").unwrap_or(0) + 5;
            let tokens = Lexer::new(rest, line_no, offset + 1).tokens()?;
            let mut parser = ExprParser { tokens: &tokens, pos: 0, line: line_no, generators: gens };
            if parser.peek().is_some() {
                loop {
                    relators.push(parser.expr()?);
                    match parser.next().cloned() {
                        None => break,
                        Some(Token::Comma) => continue,
                        Some(other) => {
                            return Err(parser.error_at(format!("unexpected token {other:?}")))
                        }
                    }
                }
            }
        } else {
            return Err(Error::Parse {
                line: line_no,
                col: 1,
                msg: format!("expected `gens:` or `rels:`, found `{stripped}`"),
            });
        }
    }
    let generators = generators.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing `gens:` line".into(),
    })?;
    FreePresentation::new(generators, relators)
}

/// Print a presentation in the file grammar; parsing the output reproduces
/// the structure exactly.
pub fn print_presentation(p: &FreePresentation) -> String {
    let mut out = format!("gens: {}\n", p.generator_names().join(", "));
    if !p.relators().is_empty() {
        let rels: Vec<String> = p.relators().iter().map(|r| print_word(p, r)).collect();
        out.push_str(&format!("rels: {}\n", rels.join(", ")));
    }
    out
}

pub fn print_word(p: &FreePresentation, w: &Word) -> String {
    if w.is_identity() {
        // The grammar has no empty-word literal; x*x^-1 is the shortest
        // spelling when a generator exists.
        if p.rank() > 0 {
            let g = &p.generator_names()[0];
            return format!("{g}*{g}^-1");
        }
        return String::new();
    }
    w.letters()
        .iter()
        .map(|&(g, e)| {
            let name = &p.generator_names()[g];
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
