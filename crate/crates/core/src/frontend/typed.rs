//! Typed program representation produced by the checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::types::TypeExpr;
use super::Pos;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExprKind {
    IndConst(String),
    PredConst(String),
    Var(String),
    /// A fully applied function symbol of type `i^n -> i`.
    FunApp(String, Vec<Expr>),
    App(Box<Expr>, Box<Expr>),
}

/// A typed term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    pub kind: ExprKind,
    pub ty: TypeExpr,
}

impl Expr {
    pub fn ind(name: impl Into<String>) -> Expr {
        Expr {
            kind: ExprKind::IndConst(name.into()),
            ty: TypeExpr::Iota,
        }
    }

    pub fn pred(name: impl Into<String>, ty: TypeExpr) -> Expr {
        Expr {
            kind: ExprKind::PredConst(name.into()),
            ty,
        }
    }

    pub fn var(name: impl Into<String>, ty: TypeExpr) -> Expr {
        Expr {
            kind: ExprKind::Var(name.into()),
            ty,
        }
    }

    /// Applies `self : rho -> pi` to `arg : rho`.
    ///
    /// # Panics
    /// If `self` does not have an arrow type.
    pub fn apply(self, arg: Expr) -> Expr {
        let ty = match &self.ty {
            TypeExpr::Arrow(_, r) => r.as_ref().clone(),
            other => panic!("cannot apply a term of type {other}"),
        };
        Expr {
            kind: ExprKind::App(Box::new(self), Box::new(arg)),
            ty,
        }
    }

    pub fn fun_app(name: impl Into<String>, args: Vec<Expr>) -> Expr {
        Expr {
            kind: ExprKind::FunApp(name.into(), args),
            ty: TypeExpr::Iota,
        }
    }

    /// Number of symbol occurrences (constants, function symbols, variables).
    pub fn size(&self) -> usize {
        match &self.kind {
            ExprKind::IndConst(_) | ExprKind::PredConst(_) | ExprKind::Var(_) => 1,
            ExprKind::FunApp(_, args) => 1 + args.iter().map(Expr::size).sum::<usize>(),
            ExprKind::App(f, a) => f.size() + a.size(),
        }
    }

    pub fn is_ground(&self) -> bool {
        match &self.kind {
            ExprKind::Var(_) => false,
            ExprKind::IndConst(_) | ExprKind::PredConst(_) => true,
            ExprKind::FunApp(_, args) => args.iter().all(Expr::is_ground),
            ExprKind::App(f, a) => f.is_ground() && a.is_ground(),
        }
    }

    /// Decomposes an application chain into its head and arguments.
    pub fn spine(&self) -> (&Expr, Vec<&Expr>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let ExprKind::App(f, a) = &cur.kind {
            args.push(a.as_ref());
            cur = f.as_ref();
        }
        args.reverse();
        (cur, args)
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<(&'a str, &'a TypeExpr)>) {
        match &self.kind {
            ExprKind::Var(v) => {
                if !out.iter().any(|(n, _)| *n == v) {
                    out.push((v, &self.ty));
                }
            }
            ExprKind::IndConst(_) | ExprKind::PredConst(_) => {}
            ExprKind::FunApp(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            ExprKind::App(f, a) => {
                f.collect_vars(out);
                a.collect_vars(out);
            }
        }
    }

    /// Replaces variables using `lookup`; unbound variables are kept.
    pub fn substitute<'a, F>(&self, lookup: &F) -> Expr
    where
        F: Fn(&str) -> Option<&'a Expr>,
    {
        match &self.kind {
            ExprKind::Var(v) => lookup(v).cloned().unwrap_or_else(|| self.clone()),
            ExprKind::IndConst(_) | ExprKind::PredConst(_) => self.clone(),
            ExprKind::FunApp(f, args) => Expr {
                kind: ExprKind::FunApp(f.clone(), args.iter().map(|a| a.substitute(lookup)).collect()),
                ty: self.ty.clone(),
            },
            ExprKind::App(f, a) => Expr {
                kind: ExprKind::App(Box::new(f.substitute(lookup)), Box::new(a.substitute(lookup))),
                ty: self.ty.clone(),
            },
        }
    }
}

/// Canonical printing: curried applications as `id(q)(a)`, function symbols
/// as `f(a,b)`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::IndConst(s) | ExprKind::PredConst(s) | ExprKind::Var(s) => f.write_str(s),
            ExprKind::FunApp(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            ExprKind::App(fun, arg) => write!(f, "{fun}({arg})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Literal {
    Pos(Expr),
    Neg(Expr),
    Eq(Expr, Expr),
}

impl Literal {
    pub fn substitute<'a, F>(&self, lookup: &F) -> Literal
    where
        F: Fn(&str) -> Option<&'a Expr>,
    {
        match self {
            Literal::Pos(e) => Literal::Pos(e.substitute(lookup)),
            Literal::Neg(e) => Literal::Neg(e.substitute(lookup)),
            Literal::Eq(l, r) => Literal::Eq(l.substitute(lookup), r.substitute(lookup)),
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<(&'a str, &'a TypeExpr)>) {
        match self {
            Literal::Pos(e) | Literal::Neg(e) => e.collect_vars(out),
            Literal::Eq(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Pos(e) => write!(f, "{e}"),
            Literal::Neg(e) => write!(f, "~{e}"),
            Literal::Eq(l, r) => write!(f, "{l}={r}"),
        }
    }
}

/// A checked clause `p V1 ... Vn :- body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub head_pred: String,
    pub head_type: TypeExpr,
    pub formals: Vec<(String, TypeExpr)>,
    pub body: Vec<Literal>,
    /// Every variable of the clause with its inferred type: formals first,
    /// then body variables in order of first occurrence.
    pub vars: Vec<(String, TypeExpr)>,
    pub pos: Pos,
}

impl Clause {
    pub fn head(&self) -> Expr {
        self.formals.iter().fold(
            Expr::pred(self.head_pred.clone(), self.head_type.clone()),
            |acc, (v, ty)| acc.apply(Expr::var(v.clone(), ty.clone())),
        )
    }

    pub fn var_type(&self, name: &str) -> Option<&TypeExpr> {
        self.vars.iter().find(|(v, _)| v == name).map(|(_, t)| t)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head())?;
        if !self.body.is_empty() {
            f.write_str(":-")?;
            for (i, l) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
        }
        f.write_str(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedProgram {
    pub predicates: BTreeMap<String, TypeExpr>,
    pub functions: BTreeMap<String, TypeExpr>,
    pub constants: BTreeSet<String>,
    pub clauses: Vec<Clause>,
    /// Set when the program mentions no individual constant and a reserved
    /// one was added so that the universe of individuals is nonempty.
    pub injected_constant: Option<String>,
}

impl TypedProgram {
    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).map(TypeExpr::arity)
    }
}
