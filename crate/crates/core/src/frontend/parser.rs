use super::ast::{Item, SourceProgram, Spanned, SurfaceExpr};
use super::lexer::{tokenize, Token};
use super::types::TypeExpr;
use super::Pos;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: parse error: found {found}, expected {}", expected.join(" or "))]
pub struct ParseError {
    pub pos: Pos,
    pub found: String,
    pub expected: Vec<String>,
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.at].0.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        tok
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            pos: self.pos(),
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Token) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn program(&mut self) -> PResult<SourceProgram> {
        let mut items = Vec::new();
        while *self.peek() != Token::Eof {
            let pos = self.pos();
            let item = match self.peek() {
                Token::PredDirective | Token::FuncDirective => self.directive()?,
                _ => self.clause()?,
            };
            items.push(Spanned { item, pos });
        }
        Ok(SourceProgram { items })
    }

    fn directive(&mut self) -> PResult<Item> {
        let is_pred = self.bump() == Token::PredDirective;
        let name = match self.peek() {
            Token::Ident(name) => name.clone(),
            _ => return self.error(&["symbol name"]),
        };
        self.bump();
        self.expect(Token::Colon)?;
        let ty = self.type_expr()?;
        self.expect(Token::Dot)?;
        Ok(if is_pred {
            Item::PredDecl { name, ty }
        } else {
            Item::FuncDecl { name, ty }
        })
    }

    fn type_expr(&mut self) -> PResult<TypeExpr> {
        let left = match self.peek() {
            Token::Ident(s) if s == "i" => {
                self.bump();
                TypeExpr::Iota
            }
            Token::Ident(s) if s == "o" => {
                self.bump();
                TypeExpr::Bool
            }
            Token::LParen => {
                self.bump();
                let t = self.type_expr()?;
                self.expect(Token::RParen)?;
                t
            }
            _ => return self.error(&["`i`", "`o`", "`(`"]),
        };
        if *self.peek() == Token::Arrow {
            self.bump();
            let right = self.type_expr()?;
            Ok(TypeExpr::arrow(left, right))
        } else {
            Ok(left)
        }
    }

    fn clause(&mut self) -> PResult<Item> {
        let head = self.application()?;
        let mut body = Vec::new();
        match self.peek() {
            Token::Dot => {}
            Token::Turnstile => {
                self.bump();
                if *self.peek() != Token::Dot {
                    body.push(self.expr()?);
                    while *self.peek() == Token::Comma {
                        self.bump();
                        body.push(self.expr()?);
                    }
                }
            }
            _ => return self.error(&["`:-`", "`.`"]),
        }
        self.expect(Token::Dot)?;
        Ok(Item::Clause { head, body })
    }

    fn expr(&mut self) -> PResult<SurfaceExpr> {
        if *self.peek() == Token::Tilde {
            self.bump();
            let inner = self.application()?;
            return Ok(SurfaceExpr::Neg(Box::new(inner)));
        }
        let lhs = self.application()?;
        if *self.peek() == Token::Equals {
            self.bump();
            let rhs = self.application()?;
            return Ok(SurfaceExpr::Eq(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Token::Ident(_) | Token::Var(_) | Token::LParen)
    }

    /// Left-associative juxtaposition. A parenthesised group `(e1, ..., en)`
    /// in argument position supplies `n` successive arguments.
    fn application(&mut self) -> PResult<SurfaceExpr> {
        if !self.starts_primary() {
            return self.error(&["identifier", "variable", "`(`"]);
        }
        let group_pos = self.pos();
        let mut head = self.primary()?;
        if head.len() != 1 {
            return Err(ParseError {
                pos: group_pos,
                found: "argument tuple".into(),
                expected: vec!["expression".into()],
            });
        }
        let mut acc = head.pop().unwrap();
        while self.starts_primary() {
            for arg in self.primary()? {
                acc = SurfaceExpr::app(acc, arg);
            }
        }
        Ok(acc)
    }

    fn primary(&mut self) -> PResult<Vec<SurfaceExpr>> {
        match self.bump() {
            Token::Ident(s) => Ok(vec![SurfaceExpr::Ident(s)]),
            Token::Var(s) => Ok(vec![SurfaceExpr::Var(s)]),
            Token::LParen => {
                let mut group = vec![self.expr()?];
                loop {
                    match self.peek() {
                        Token::Comma => {
                            self.bump();
                            group.push(self.expr()?);
                        }
                        Token::RParen => {
                            self.bump();
                            return Ok(group);
                        }
                        _ => return self.error(&["`,`", "`)`"]),
                    }
                }
            }
            _ => unreachable!("primary called without a primary token"),
        }
    }
}

pub fn parse_program(source: &str) -> Result<SourceProgram, ParseError> {
    let tokens = tokenize(source).map_err(|e| ParseError {
        pos: e.pos,
        found: e.message,
        expected: vec!["a valid token".into()],
    })?;
    Parser { tokens, at: 0 }.program()
}
