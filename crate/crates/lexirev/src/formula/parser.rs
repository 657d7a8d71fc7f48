//! Recursive descent parser for the formula grammar.

use super::{Formula, Var};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize))> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            _ if c.is_whitespace() => {
                bump!();
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
            }
            '(' | ')' | '!' | '&' | '|' => {
                bump!();
                let token = match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '!' => Token::Not,
                    '&' => Token::And,
                    _ => Token::Or,
                };
                tokens.push(Spanned {
                    token,
                    line: tline,
                    col: tcol,
                });
            }
            '-' => {
                bump!();
                if bump!() != Some('>') {
                    return Err(err(tline, tcol, "expected `->`"));
                }
                tokens.push(Spanned {
                    token: Token::Implies,
                    line: tline,
                    col: tcol,
                });
            }
            '<' => {
                bump!();
                if bump!() != Some('-') || bump!() != Some('>') {
                    return Err(err(tline, tcol, "expected `<->`"));
                }
                tokens.push(Spanned {
                    token: Token::Iff,
                    line: tline,
                    col: tcol,
                });
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_')
                {
                    name.push(bump!().unwrap());
                }
                let token = match name.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    _ if Var::reserved(&name) => {
                        return Err(err(
                            tline,
                            tcol,
                            format!("identifier `{name}` is reserved (`__` prefix)"),
                        ));
                    }
                    _ => Token::Ident(name),
                };
                tokens.push(Spanned {
                    token,
                    line: tline,
                    col: tcol,
                });
            }
            _ => return Err(err(tline, tcol, format!("unexpected character `{c}`"))),
        }
    }
    Ok((tokens, (line, col)))
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.col))
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut acc = self.imp()?;
        while self.eat(&Token::Iff) {
            let rhs = self.imp()?;
            acc = Formula::iff(acc, rhs);
        }
        Ok(acc)
    }

    fn imp(&mut self) -> Result<Formula> {
        let mut parts = vec![self.or()?];
        while self.eat(&Token::Implies) {
            parts.push(self.or()?);
        }
        let mut acc = parts.pop().unwrap();
        while let Some(lhs) = parts.pop() {
            acc = Formula::implies(lhs, acc);
        }
        Ok(acc)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut parts = vec![self.and()?];
        while self.eat(&Token::Or) {
            parts.push(self.and()?);
        }
        Ok(Formula::or(parts))
    }

    fn and(&mut self) -> Result<Formula> {
        let mut parts = vec![self.neg()?];
        while self.eat(&Token::And) {
            parts.push(self.neg()?);
        }
        Ok(Formula::and(parts))
    }

    fn neg(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.neg()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let (line, col) = self.here();
        match self.peek() {
            Some(Token::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Token::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Token::Ident(name)) => {
                let v = Var::new(name.clone()).expect("lexer produced an invalid identifier");
                self.pos += 1;
                Ok(Formula::Var(v))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    let (line, col) = self.here();
                    return Err(err(line, col, "expected `)`"));
                }
                Ok(inner)
            }
            Some(other) => Err(err(line, col, format!("unexpected token `{other:?}`"))),
            None => Err(err(line, col, "unexpected end of input")),
        }
    }
}

/// Parses a formula from text. See the module documentation for the grammar.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let (tokens, end) = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let formula = parser.iff()?;
    if parser.pos != parser.tokens.len() {
        let (line, col) = parser.here();
        return Err(err(line, col, "trailing input after formula"));
    }
    Ok(formula)
}
