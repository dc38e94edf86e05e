//! Depth-bounded Herbrand universes and ground instantiation.
//!
//! The ground instantiation of a higher-order program is infinite as soon as
//! partial applications can be nested. Here every variable ranges over the
//! terms of its type with at most `k` symbol occurrences, which yields a
//! finite propositional program. All results computed from it hold "at depth k".

mod ground;
mod universe;

use crate::exec::Exec;
use crate::frontend::{Clause, Expr, Literal, TypeExpr, TypedProgram};

pub use ground::{AtomId, ClauseJson, GLiteral, GroundClause, GroundProgram, GroundProgramJson, Origin};
pub use universe::{enumerate_universe, Universe, UniverseSlice};

pub(crate) use universe::for_each_product;

/// Default cap on generated clause instances.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HerbrandError {
    #[error("no ground term of type {ty} has at most {depth} symbols")]
    EmptyUniverse { ty: TypeExpr, depth: usize },
    #[error("{0} is not an argument type")]
    NotArgumentType(TypeExpr),
    #[error("depth bound must be at least 1")]
    InvalidBound,
    #[error("{what} needs {count} instances, above the cap of {cap}")]
    BudgetExceeded { what: String, count: usize, cap: usize },
}

/// A ground substitution over the variables of one clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub bindings: Vec<(String, Expr)>,
}

impl Substitution {
    pub fn get(&self, var: &str) -> Option<&Expr> {
        self.bindings.iter().find(|(v, _)| v == var).map(|(_, e)| e)
    }

    pub fn apply(&self, e: &Expr) -> Expr {
        e.substitute(&|v| self.get(v))
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        l.substitute(&|v| self.get(v))
    }
}

/// Syntactic identity of two ground individual terms.
pub fn normalize_equality(lhs: &Expr, rhs: &Expr) -> GLiteral {
    if lhs == rhs {
        GLiteral::TrueConst
    } else {
        GLiteral::FalseConst
    }
}

/// Calls `f` with every substitution for `clause` drawn from `universe`,
/// in universe order with the first variable varying slowest.
pub fn for_each_state(clause: &Clause, universe: &Universe, mut f: impl FnMut(&Substitution)) {
    let pools: Vec<Vec<Expr>> = clause.vars.iter().map(|(_, t)| universe.terms(t).to_vec()).collect();
    let refs: Vec<&Vec<Expr>> = pools.iter().collect();
    let mut subst = Substitution {
        bindings: clause
            .vars
            .iter()
            .map(|(v, t)| (v.clone(), Expr::var(v.clone(), t.clone())))
            .collect(),
    };
    if refs.is_empty() {
        f(&subst);
        return;
    }
    for_each_product(&refs, |terms| {
        for (slot, t) in subst.bindings.iter_mut().zip(terms) {
            slot.1 = t.clone();
        }
        f(&subst);
    });
}

fn instance_count(clause: &Clause, universe: &Universe) -> usize {
    clause
        .vars
        .iter()
        .map(|(_, t)| universe.terms(t).len())
        .fold(1usize, |acc, n| acc.saturating_mul(n))
}

enum InstLit {
    Pos(Expr),
    Neg(Expr),
    Const(GLiteral),
}

struct Instance {
    head: Expr,
    body: Vec<InstLit>,
    bindings: Vec<Expr>,
}

fn instantiate_clause(clause: &Clause, universe: &Universe) -> Vec<Instance> {
    let head = clause.head();
    let mut out = Vec::new();
    for_each_state(clause, universe, |s| {
        let body = clause
            .body
            .iter()
            .map(|l| match l {
                Literal::Pos(e) => InstLit::Pos(s.apply(e)),
                Literal::Neg(e) => InstLit::Neg(s.apply(e)),
                Literal::Eq(a, b) => InstLit::Const(normalize_equality(&s.apply(a), &s.apply(b))),
            })
            .collect();
        out.push(Instance {
            head: s.apply(&head),
            body,
            bindings: s.bindings.iter().map(|(_, e)| e.clone()).collect(),
        });
    });
    out
}

/// Options for [`ground_instantiate_with`].
#[derive(Debug, Clone, Copy)]
pub struct GroundOptions {
    pub depth: usize,
    pub cap: usize,
    pub exec: Exec,
}

impl GroundOptions {
    pub fn new(depth: usize) -> Self {
        GroundOptions {
            depth,
            cap: DEFAULT_CAP,
            exec: Exec::default(),
        }
    }
}

/// Ground instantiation at depth `k` with the default cap.
pub fn ground_instantiate(p: &TypedProgram, k: usize) -> Result<GroundProgram, HerbrandError> {
    ground_instantiate_with(p, GroundOptions::new(k)).map(|(g, _)| g)
}

/// Ground instantiation. Returns the program together with the universe it
/// was drawn from.
///
/// Every atom of type `o` with at most `depth` symbols is registered even if
/// no clause mentions it. Equality literals are resolved: true ones are
/// dropped from bodies and clauses with a false one are dropped after their
/// head atom is registered.
pub fn ground_instantiate_with(
    p: &TypedProgram,
    opts: GroundOptions,
) -> Result<(GroundProgram, Universe), HerbrandError> {
    let universe = Universe::new(p, opts.depth, opts.cap)?;
    let mut total = 0usize;
    for clause in &p.clauses {
        let n = instance_count(clause, &universe);
        total = total.saturating_add(n);
        if n > opts.cap || total > opts.cap {
            return Err(HerbrandError::BudgetExceeded {
                what: format!("clause `{clause}`"),
                count: n.max(total),
                cap: opts.cap,
            });
        }
    }

    let per_clause = opts.exec.map(&p.clauses, |c| instantiate_clause(c, &universe));

    let mut g = GroundProgram::new();
    for atom in universe.terms(&TypeExpr::Bool) {
        g.intern_term(atom);
    }
    for (ci, instances) in per_clause.into_iter().enumerate() {
        'inst: for inst in instances {
            let head = g.intern_term(&inst.head);
            let mut body = Vec::with_capacity(inst.body.len());
            for lit in &inst.body {
                match lit {
                    InstLit::Pos(e) => body.push(GLiteral::Pos(g.intern_term(e))),
                    InstLit::Neg(e) => body.push(GLiteral::Neg(g.intern_term(e))),
                    InstLit::Const(GLiteral::FalseConst) => continue 'inst,
                    InstLit::Const(_) => {}
                }
            }
            g.add_clause(
                head,
                body,
                Some(Origin {
                    clause: ci,
                    bindings: inst.bindings,
                }),
            );
        }
    }
    Ok((g, universe))
}
