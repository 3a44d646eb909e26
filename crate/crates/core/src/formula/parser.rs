//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Binding strength, loosest first: `<=>`, `=>`, `<->`, `->`, `|`, `&`, then
//! the prefix operators `~ not ! ? o`. `=>` and `->` associate to the right,
//! the others to the left. `forall x. φ` and `exists x. φ` extend as far
//! right as possible.

use std::collections::BTreeMap;

use thiserror::Error;

use super::syntax::{is_identifier, Formula, Signature, Term, MEMBERSHIP, RESERVED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("arity mismatch at offset {offset}: `{relation}` expects {expected} argument(s), found {found}")]
    Arity {
        offset: usize,
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol `{name}` at offset {offset}")]
    UnknownSymbol { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::Arity { offset, .. }
            | ParseError::UnknownSymbol { offset, .. } => *offset,
        }
    }
}

/// Parses `text` against a declared signature. Identifiers in term position
/// that are declared constants become [`Term::Const`]; all others are
/// variables.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, Mode::Strict(sig))?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses `text` without a declared signature and returns the signature the
/// text uses. Every term identifier is read as a variable.
pub fn parse_open(text: &str) -> Result<(Formula, Signature), ParseError> {
    let mut p = Parser::new(text, Mode::Open(BTreeMap::new()))?;
    let f = p.formula()?;
    p.finish()?;
    let Mode::Open(rels) = p.mode else { unreachable!() };
    Ok((
        f,
        Signature {
            relations: rels,
            constants: Default::default(),
        },
    ))
}

/// Parses a single term.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, Mode::Strict(sig))?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Equals,
    StrongIff,
    StrongImp,
    Iff,
    Imp,
    Or,
    And,
    Tilde,
    Bang,
    Quest,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Equals => "`=`".into(),
            Tok::StrongIff => "`<=>`".into(),
            Tok::StrongImp => "`=>`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Or => "`|`".into(),
            Tok::And => "`&`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Quest => "`?`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |offset: usize, message: String| ParseError::Syntax { offset, message };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("<=>") {
            (Tok::StrongIff, 3)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("=>") {
            (Tok::StrongImp, 2)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else {
            match c {
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                b'.' => (Tok::Dot, 1),
                b'=' => (Tok::Equals, 1),
                b'|' => (Tok::Or, 1),
                b'&' => (Tok::And, 1),
                b'~' => (Tok::Tilde, 1),
                b'!' => (Tok::Bang, 1),
                b'?' => (Tok::Quest, 1),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    while j < bytes.len() && bytes[j] == b'\'' {
                        j += 1;
                    }
                    (Tok::Ident(text[i..j].to_string()), j - i)
                }
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(err(start, format!("unexpected character `{ch}`")));
                }
            }
        };
        out.push((tok, start));
        i += len;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

enum Mode<'s> {
    Strict(&'s Signature),
    Open(BTreeMap<String, usize>),
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    mode: Mode<'s>,
}

impl<'s> Parser<'s> {
    fn new(text: &str, mode: Mode<'s>) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            mode,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: format!("expected {wanted}, found {}", self.peek().describe()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.strong_iff()
    }

    fn strong_iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.strong_imp()?;
        while *self.peek() == Tok::StrongIff {
            self.bump();
            let rhs = self.strong_imp()?;
            lhs = Formula::strong_iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn strong_imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.iff()?;
        if *self.peek() == Tok::StrongImp {
            self.bump();
            let rhs = self.strong_imp()?;
            return Ok(Formula::strong_imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Bang => {
                self.bump();
                Ok(Formula::bang(self.unary()?))
            }
            Tok::Quest => {
                self.bump();
                Ok(Formula::quest(self.unary()?))
            }
            Tok::Ident(w) if w == "not" => {
                self.bump();
                Ok(Formula::class_neg(self.unary()?))
            }
            Tok::Ident(w) if w == "o" => {
                self.bump();
                Ok(Formula::circ(self.unary()?))
            }
            Tok::Ident(w) if w == "forall" || w == "exists" => {
                self.bump();
                let var = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if w == "forall" {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => {
                if let Mode::Strict(sig) = &self.mode {
                    if sig.is_constant(&name) || sig.arity(&name).is_some() {
                        return Err(ParseError::Syntax {
                            offset,
                            message: format!("`{name}` is not a variable"),
                        });
                    }
                }
                self.bump();
                Ok(name)
            }
            _ => Err(self.unexpected("a variable")),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(w) if w == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) && *self.peek2() == Tok::LParen => {
                let offset = self.offset();
                self.bump();
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    args.push(self.term()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.term()?);
                    }
                }
                self.expect(Tok::RParen)?;
                self.relation_use(&name, args.len(), offset)?;
                Ok(Formula::Atom(name, args))
            }
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => {
                let lhs = self.term()?;
                let offset = self.offset();
                match self.peek().clone() {
                    Tok::Equals => {
                        self.bump();
                        let rhs = self.term()?;
                        Ok(Formula::Eq(lhs, rhs))
                    }
                    Tok::Ident(w) if w == MEMBERSHIP => {
                        self.bump();
                        let rhs = self.term()?;
                        self.relation_use(MEMBERSHIP, 2, offset)?;
                        Ok(Formula::mem(lhs, rhs))
                    }
                    _ => Err(self.unexpected("`=` or `in`")),
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn relation_use(&mut self, name: &str, found: usize, offset: usize) -> Result<(), ParseError> {
        match &mut self.mode {
            Mode::Strict(sig) => match sig.arity(name) {
                None => Err(ParseError::UnknownSymbol {
                    offset,
                    name: name.to_string(),
                }),
                Some(expected) if expected != found => Err(ParseError::Arity {
                    offset,
                    relation: name.to_string(),
                    expected,
                    found,
                }),
                Some(_) => Ok(()),
            },
            Mode::Open(rels) => match rels.get(name) {
                Some(&expected) if expected != found => Err(ParseError::Arity {
                    offset,
                    relation: name.to_string(),
                    expected,
                    found,
                }),
                _ => {
                    rels.insert(name.to_string(), found);
                    Ok(())
                }
            },
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) && is_identifier(&name) => {
                self.bump();
                match &self.mode {
                    Mode::Strict(sig) if sig.is_constant(&name) => Ok(Term::Const(name)),
                    Mode::Strict(sig) if sig.arity(&name).is_some() => Err(ParseError::Syntax {
                        offset,
                        message: format!("relation symbol `{name}` used as a term"),
                    }),
                    _ => Ok(Term::Var(name)),
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}
