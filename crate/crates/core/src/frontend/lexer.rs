use std::fmt;

use super::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    /// Lowercase-initial (or digit-initial) identifier.
    Ident(String),
    /// Uppercase-initial identifier.
    Var(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Turnstile,
    Tilde,
    Equals,
    Arrow,
    Colon,
    PredDirective,
    FuncDirective,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) | Token::Var(s) => write!(f, "`{s}`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
            Token::Dot => f.write_str("`.`"),
            Token::Turnstile => f.write_str("`:-`"),
            Token::Tilde => f.write_str("`~`"),
            Token::Equals => f.write_str("`=`"),
            Token::Arrow => f.write_str("`->`"),
            Token::Colon => f.write_str("`:`"),
            Token::PredDirective => f.write_str("`#pred`"),
            Token::FuncDirective => f.write_str("`#func`"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

pub fn tokenize(source: &str) -> Result<Vec<(Token, Pos)>, LexError> {
    let mut out = Vec::new();
    let mut chars = source.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };

    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };

    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
            continue;
        }
        if c == '%' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(c, &mut pos);
            }
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '\'' {
                    word.push(c);
                    chars.next();
                    advance(c, &mut pos);
                } else {
                    break;
                }
            }
            let tok = if word.starts_with(|c: char| c.is_uppercase() || c == '_') {
                Token::Var(word)
            } else {
                Token::Ident(word)
            };
            out.push((tok, start));
            continue;
        }
        chars.next();
        advance(c, &mut pos);
        let tok = match c {
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            '.' => Token::Dot,
            '~' => Token::Tilde,
            '=' | '≈' => Token::Equals,
            ':' if chars.peek() == Some(&'-') => {
                chars.next();
                advance('-', &mut pos);
                Token::Turnstile
            }
            ':' => Token::Colon,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                advance('>', &mut pos);
                Token::Arrow
            }
            '#' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() {
                        word.push(c);
                        chars.next();
                        advance(c, &mut pos);
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "pred" => Token::PredDirective,
                    "func" => Token::FuncDirective,
                    _ => {
                        return Err(LexError {
                            pos: start,
                            message: format!("unknown directive `#{word}`"),
                        })
                    }
                }
            }
            other => {
                return Err(LexError {
                    pos: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
    }
    out.push((Token::Eof, pos));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Token> {
        tokenize(src).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn tokens_and_comments() {
        assert_eq!(
            kinds("#pred p : (i->o)->o. % comment\np(Q) :- ~Q(a), X ≈ b."),
            vec![
                Token::PredDirective,
                Token::Ident("p".into()),
                Token::Colon,
                Token::LParen,
                Token::Ident("i".into()),
                Token::Arrow,
                Token::Ident("o".into()),
                Token::RParen,
                Token::Arrow,
                Token::Ident("o".into()),
                Token::Dot,
                Token::Ident("p".into()),
                Token::LParen,
                Token::Var("Q".into()),
                Token::RParen,
                Token::Turnstile,
                Token::Tilde,
                Token::Var("Q".into()),
                Token::LParen,
                Token::Ident("a".into()),
                Token::RParen,
                Token::Comma,
                Token::Var("X".into()),
                Token::Equals,
                Token::Ident("b".into()),
                Token::Dot,
                Token::Eof,
            ]
        );
    }

    #[test]
    fn positions_track_lines() {
        let toks = tokenize("p.\n  q.").unwrap();
        assert_eq!(toks[2].1, Pos { line: 2, column: 3 });
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("p :- q & r.").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 8 });
        assert!(tokenize("#module x.").is_err());
    }
}
