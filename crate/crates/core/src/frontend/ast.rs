//! Untyped surface syntax, as produced by the parser.

use std::fmt;

use super::types::TypeExpr;
use super::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceExpr {
    Ident(String),
    Var(String),
    App(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Neg(Box<SurfaceExpr>),
    Eq(Box<SurfaceExpr>, Box<SurfaceExpr>),
}

impl SurfaceExpr {
    pub fn app(f: SurfaceExpr, arg: SurfaceExpr) -> SurfaceExpr {
        SurfaceExpr::App(Box::new(f), Box::new(arg))
    }

    /// Decomposes `((h a1) a2) ... an` into `(h, [a1, ..., an])`.
    pub fn spine(&self) -> (&SurfaceExpr, Vec<&SurfaceExpr>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SurfaceExpr::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f.as_ref();
        }
        args.reverse();
        (cur, args)
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SurfaceExpr::Ident(_) => {}
            SurfaceExpr::Var(v) => out.push(v),
            SurfaceExpr::App(a, b) | SurfaceExpr::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            SurfaceExpr::Neg(e) => e.collect_vars(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    PredDecl { name: String, ty: TypeExpr },
    FuncDecl { name: String, ty: TypeExpr },
    Clause { head: SurfaceExpr, body: Vec<SurfaceExpr> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub item: Item,
    pub pos: Pos,
}

/// A parsed but not yet type-checked program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceProgram {
    pub items: Vec<Spanned>,
}

impl SourceProgram {
    /// Structural equality ignoring source positions.
    pub fn same_items(&self, other: &SourceProgram) -> bool {
        self.items.len() == other.items.len() && self.items.iter().zip(&other.items).all(|(a, b)| a.item == b.item)
    }
}

impl fmt::Display for SurfaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceExpr::Neg(inner) => {
                f.write_str("~")?;
                write_operand(f, inner)
            }
            SurfaceExpr::Eq(l, r) => {
                write_operand(f, l)?;
                f.write_str(" = ")?;
                write_operand(f, r)
            }
            _ => write_operand(f, self),
        }
    }
}

/// Prints an expression where only an application chain can appear unbracketed.
fn write_operand(f: &mut fmt::Formatter<'_>, e: &SurfaceExpr) -> fmt::Result {
    match e {
        SurfaceExpr::Ident(s) | SurfaceExpr::Var(s) => f.write_str(s),
        SurfaceExpr::App(fun, arg) => {
            write_operand(f, fun)?;
            write!(f, "({arg})")
        }
        SurfaceExpr::Neg(_) | SurfaceExpr::Eq(..) => write!(f, "({e})"),
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::PredDecl { name, ty } => write!(f, "#pred {name} : {ty}."),
            Item::FuncDecl { name, ty } => write!(f, "#func {name} : {ty}."),
            Item::Clause { head, body } => {
                write!(f, "{head}")?;
                if !body.is_empty() {
                    f.write_str(" :- ")?;
                    for (i, lit) in body.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{lit}")?;
                    }
                }
                f.write_str(".")
            }
        }
    }
}

impl fmt::Display for SourceProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{}", item.item)?;
        }
        Ok(())
    }
}
