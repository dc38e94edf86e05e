//! Lexing, parsing and type checking of `.hop` source programs.

mod ast;
mod lexer;
mod parser;
mod typecheck;
mod typed;
mod types;

use std::fmt;

pub use ast::{Item, SourceProgram, Spanned, SurfaceExpr};
pub use lexer::{tokenize, LexError, Token};
pub use parser::{parse_program, ParseError};
pub use typecheck::{typecheck, TypeError, RESERVED_CONSTANT};
pub use typed::{Clause, Expr, ExprKind, Literal, TypedProgram};
pub use types::{classify_type, TypeClass, TypeExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrontendError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Parses and type-checks a source program.
pub fn load(source: &str) -> Result<TypedProgram, FrontendError> {
    let ast = parse_program(source)?;
    Ok(typecheck(&ast)?)
}
