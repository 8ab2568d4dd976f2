//! Recursive-descent parser for morphism terms.
//!
//! ```text
//! expr   := term (";" term)*
//! term   := factor ("*" factor)*
//! factor := IDENT | "id(" word ")" | "swap(" arg "," arg ")" | "(" expr ")"
//! word   := IDENT ("," IDENT)*
//! arg    := IDENT | "(" word ")"
//! ```
//! `K` names the unit object. Multi-factor swap arguments are parenthesized.

use std::collections::BTreeMap;

use super::{IrError, MorExpr, Signature, UNIT_NAME};
use crate::linalg::ObjectWord;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Semi,
    Star,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, IrError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            '*' => Tok::Star,
            ',' => Tok::Comma,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line: start.0,
                    col: start.1,
                });
                continue;
            }
            other => {
                return Err(IrError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push(Token {
            tok,
            line: start.0,
            col: start.1,
        });
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a Signature,
    macros: &'a BTreeMap<String, String>,
    depth: usize,
}

/// Bound on nested macro expansion, which also rejects cyclic definitions.
const MAX_MACRO_DEPTH: usize = 32;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(t: &Token, msg: &str) -> IrError {
        IrError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, IrError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(Self::err(&t, &format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<MorExpr, IrError> {
        let mut e = self.term()?;
        while self.peek().tok == Tok::Semi {
            self.next();
            e = MorExpr::seq(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<MorExpr, IrError> {
        let mut e = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            e = MorExpr::par(e, self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<MorExpr, IrError> {
        let t = self.next();
        match &t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "id" => {
                self.expect(Tok::LParen, "'(' after id")?;
                let w = self.word()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(MorExpr::Id(w))
            }
            Tok::Ident(name) if name == "swap" => {
                self.expect(Tok::LParen, "'(' after swap")?;
                let x = self.swap_arg()?;
                self.expect(Tok::Comma, "','")?;
                let y = self.swap_arg()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(MorExpr::Swap(x, y))
            }
            Tok::Ident(name) if self.macros.contains_key(name) => {
                if self.depth >= MAX_MACRO_DEPTH {
                    return Err(Self::err(&t, "macro expansion too deep"));
                }
                parse_nested(&self.macros[name], self.sig, self.macros, self.depth + 1)
            }
            Tok::Ident(name) => {
                if self.sig.generator(name).is_none() {
                    return Err(IrError::UnknownName {
                        name: name.clone(),
                        line: t.line,
                        col: t.col,
                    });
                }
                Ok(MorExpr::Gen(name.clone()))
            }
            _ => Err(Self::err(
                &t,
                "expected a generator, id(...), swap(...) or '('",
            )),
        }
    }

    fn swap_arg(&mut self) -> Result<ObjectWord, IrError> {
        if self.peek().tok == Tok::LParen {
            self.next();
            let w = self.word()?;
            self.expect(Tok::RParen, "')'")?;
            Ok(w)
        } else {
            let t = self.next();
            self.object_word(&t)
        }
    }

    fn word(&mut self) -> Result<ObjectWord, IrError> {
        let t = self.next();
        let mut w = self.object_word(&t)?;
        while self.peek().tok == Tok::Comma {
            self.next();
            let t = self.next();
            w = w.concat(&self.object_word(&t)?);
        }
        Ok(w)
    }

    fn object_word(&self, t: &Token) -> Result<ObjectWord, IrError> {
        match &t.tok {
            Tok::Ident(n) if n == UNIT_NAME => Ok(ObjectWord::unit()),
            Tok::Ident(n) => self
                .sig
                .object(n)
                .map(|o| ObjectWord::from(&o))
                .ok_or_else(|| IrError::UnknownName {
                    name: n.clone(),
                    line: t.line,
                    col: t.col,
                }),
            _ => Err(Self::err(t, "expected an object name")),
        }
    }
}

/// Parses a term against a signature; names must be declared.
pub fn parse_expr(text: &str, sig: &Signature) -> Result<MorExpr, IrError> {
    parse_with_macros(text, sig, &BTreeMap::new())
}

/// Parses a term in which macro names expand to their own (parsed) terms.
pub fn parse_with_macros(
    text: &str,
    sig: &Signature,
    macros: &BTreeMap<String, String>,
) -> Result<MorExpr, IrError> {
    parse_nested(text, sig, macros, 0)
}

fn parse_nested(
    text: &str,
    sig: &Signature,
    macros: &BTreeMap<String, String>,
    depth: usize,
) -> Result<MorExpr, IrError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
        macros,
        depth,
    };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(Parser::err(&t, "unexpected trailing input"));
    }
    Ok(e)
}
