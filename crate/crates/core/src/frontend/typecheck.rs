//! Type inference for clauses by first-order unification over simple types.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ast::{Item, SourceProgram, SurfaceExpr};
use super::typed::{Clause, Expr, ExprKind, Literal, TypedProgram};
use super::types::{classify_type, TypeClass, TypeExpr};
use super::Pos;

/// Name of the individual constant added to programs that mention none.
pub const RESERVED_CONSTANT: &str = "a0";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("{pos}: undeclared predicate or function symbol `{name}`")]
    Undeclared { pos: Pos, name: String },
    #[error("{pos}: `{expr}` of type {ty} cannot be passed as an argument")]
    NotArgumentType { pos: Pos, expr: String, ty: TypeExpr },
    #[error("{pos}: cannot determine the type of variable `{var}`")]
    AmbiguousType { pos: Pos, var: String },
    #[error("{pos}: variable `{var}` of type {ty} is not of an argument type")]
    BadVariableType { pos: Pos, var: String, ty: String },
    #[error("{pos}: formal parameter `{var}` is repeated in the clause head")]
    RepeatedFormal { pos: Pos, var: String },
    #[error("{pos}: malformed clause head: {reason}")]
    BadHead { pos: Pos, reason: String },
    #[error("{pos}: type mismatch in `{context}`: cannot unify {left} with {right}")]
    Mismatch {
        pos: Pos,
        context: String,
        left: String,
        right: String,
    },
    #[error("{pos}: declaration of `{name}` is invalid: {reason}")]
    BadDeclaration { pos: Pos, name: String, reason: String },
    #[error("{pos}: {what} is only allowed as a clause body literal")]
    Misplaced { pos: Pos, what: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ty {
    Iota,
    Bool,
    Arrow(Box<Ty>, Box<Ty>),
    Meta(usize),
}

impl Ty {
    fn from_type(t: &TypeExpr) -> Ty {
        match t {
            TypeExpr::Iota => Ty::Iota,
            TypeExpr::Bool => Ty::Bool,
            TypeExpr::Arrow(l, r) => Ty::Arrow(Box::new(Ty::from_type(l)), Box::new(Ty::from_type(r))),
        }
    }
}

#[derive(Default)]
struct Unifier {
    bindings: Vec<Option<Ty>>,
}

impl Unifier {
    fn fresh(&mut self) -> Ty {
        self.bindings.push(None);
        Ty::Meta(self.bindings.len() - 1)
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut cur = t.clone();
        while let Ty::Meta(m) = cur {
            match &self.bindings[m] {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, m: usize, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Meta(n) => n == m,
            Ty::Arrow(l, r) => self.occurs(m, &l) || self.occurs(m, &r),
            Ty::Iota | Ty::Bool => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
        match (self.shallow(a), self.shallow(b)) {
            (Ty::Meta(m), Ty::Meta(n)) if m == n => true,
            (Ty::Meta(m), other) | (other, Ty::Meta(m)) => {
                if self.occurs(m, &other) {
                    return false;
                }
                self.bindings[m] = Some(other);
                true
            }
            (Ty::Iota, Ty::Iota) | (Ty::Bool, Ty::Bool) => true,
            (Ty::Arrow(l1, r1), Ty::Arrow(l2, r2)) => self.unify(&l1, &l2) && self.unify(&r1, &r2),
            _ => false,
        }
    }

    fn resolve(&self, t: &Ty) -> Option<TypeExpr> {
        match self.shallow(t) {
            Ty::Iota => Some(TypeExpr::Iota),
            Ty::Bool => Some(TypeExpr::Bool),
            Ty::Arrow(l, r) => Some(TypeExpr::arrow(self.resolve(&l)?, self.resolve(&r)?)),
            Ty::Meta(_) => None,
        }
    }

    fn show(&self, t: &Ty) -> String {
        match self.shallow(t) {
            Ty::Iota => "i".into(),
            Ty::Bool => "o".into(),
            Ty::Meta(m) => format!("?{m}"),
            Ty::Arrow(l, r) => {
                let left = match self.shallow(&l) {
                    Ty::Arrow(..) => format!("({})", self.show(&l)),
                    _ => self.show(&l),
                };
                format!("{left}->{}", self.show(&r))
            }
        }
    }
}

/// Expression tree carrying unsolved types.
enum Pre {
    Ind(String),
    Pred(String, TypeExpr),
    Var(String),
    Fun(String, Vec<Pre>),
    App(Box<Pre>, Box<Pre>, Ty),
}

enum PreLit {
    Pos(Pre),
    Neg(Pre),
    Eq(Pre, Pre),
}

struct Signature {
    predicates: BTreeMap<String, TypeExpr>,
    functions: BTreeMap<String, TypeExpr>,
}

struct ClauseChecker<'a> {
    sig: &'a Signature,
    pos: Pos,
    unifier: Unifier,
    var_types: HashMap<String, Ty>,
    var_order: Vec<String>,
    constants: BTreeSet<String>,
}

impl<'a> ClauseChecker<'a> {
    fn var_ty(&mut self, name: &str) -> Ty {
        if let Some(t) = self.var_types.get(name) {
            return t.clone();
        }
        let t = self.unifier.fresh();
        self.var_types.insert(name.to_string(), t.clone());
        self.var_order.push(name.to_string());
        t
    }

    fn unify(&mut self, a: &Ty, b: &Ty, context: &SurfaceExpr) -> Result<(), TypeError> {
        if self.unifier.unify(a, b) {
            Ok(())
        } else {
            Err(TypeError::Mismatch {
                pos: self.pos,
                context: context.to_string(),
                left: self.unifier.show(a),
                right: self.unifier.show(b),
            })
        }
    }

    fn term(&mut self, e: &SurfaceExpr) -> Result<(Pre, Ty), TypeError> {
        match e {
            SurfaceExpr::Var(v) => {
                let t = self.var_ty(v);
                Ok((Pre::Var(v.clone()), t))
            }
            SurfaceExpr::Ident(name) => {
                if let Some(t) = self.sig.predicates.get(name) {
                    Ok((Pre::Pred(name.clone(), t.clone()), Ty::from_type(t)))
                } else if let Some(t) = self.sig.functions.get(name) {
                    Err(TypeError::Mismatch {
                        pos: self.pos,
                        context: name.clone(),
                        left: "0 arguments".into(),
                        right: format!("the {} arguments of `{name}`", t.arity()),
                    })
                } else {
                    self.constants.insert(name.clone());
                    Ok((Pre::Ind(name.clone()), Ty::Iota))
                }
            }
            SurfaceExpr::App(..) => {
                let (head, args) = e.spine();
                if let SurfaceExpr::Ident(name) = head {
                    if let Some(fty) = self.sig.functions.get(name) {
                        let arity = fty.arity();
                        if args.len() != arity {
                            return Err(TypeError::Mismatch {
                                pos: self.pos,
                                context: e.to_string(),
                                left: format!("{} arguments", args.len()),
                                right: format!("the {arity} arguments of `{name}`"),
                            });
                        }
                        let mut pre_args = Vec::with_capacity(arity);
                        for a in args {
                            let (p, t) = self.term(a)?;
                            self.unify(&t, &Ty::Iota, e)?;
                            pre_args.push(p);
                        }
                        return Ok((Pre::Fun(name.clone(), pre_args), Ty::Iota));
                    }
                    if !self.sig.predicates.contains_key(name) {
                        return Err(TypeError::Undeclared {
                            pos: self.pos,
                            name: name.clone(),
                        });
                    }
                }
                let (mut acc, mut acc_ty) = self.term(head)?;
                for a in args {
                    let (p, t) = self.term(a)?;
                    let result = self.unifier.fresh();
                    let expected = Ty::Arrow(Box::new(t), Box::new(result.clone()));
                    self.unify(&acc_ty, &expected, e)?;
                    acc = Pre::App(Box::new(acc), Box::new(p), result.clone());
                    acc_ty = result;
                }
                Ok((acc, acc_ty))
            }
            SurfaceExpr::Neg(_) => Err(TypeError::Misplaced {
                pos: self.pos,
                what: "negation",
            }),
            SurfaceExpr::Eq(..) => Err(TypeError::Misplaced {
                pos: self.pos,
                what: "equality",
            }),
        }
    }

    fn literal(&mut self, e: &SurfaceExpr) -> Result<PreLit, TypeError> {
        match e {
            SurfaceExpr::Neg(inner) => {
                let (p, t) = self.term(inner)?;
                self.unify(&t, &Ty::Bool, e)?;
                Ok(PreLit::Neg(p))
            }
            SurfaceExpr::Eq(l, r) => {
                let (pl, tl) = self.term(l)?;
                self.unify(&tl, &Ty::Iota, e)?;
                let (pr, tr) = self.term(r)?;
                self.unify(&tr, &Ty::Iota, e)?;
                Ok(PreLit::Eq(pl, pr))
            }
            _ => {
                let (p, t) = self.term(e)?;
                self.unify(&t, &Ty::Bool, e)?;
                Ok(PreLit::Pos(p))
            }
        }
    }

    fn finish(&self, pre: &Pre) -> Result<Expr, TypeError> {
        Ok(match pre {
            Pre::Ind(n) => Expr::ind(n.clone()),
            Pre::Pred(n, t) => Expr::pred(n.clone(), t.clone()),
            Pre::Var(v) => {
                let t = self
                    .unifier
                    .resolve(&self.var_types[v])
                    .ok_or_else(|| TypeError::AmbiguousType {
                        pos: self.pos,
                        var: v.clone(),
                    })?;
                Expr::var(v.clone(), t)
            }
            Pre::Fun(f, args) => Expr::fun_app(
                f.clone(),
                args.iter().map(|a| self.finish(a)).collect::<Result<_, _>>()?,
            ),
            Pre::App(f, a, t) => {
                let fun = self.finish(f)?;
                let arg = self.finish(a)?;
                if !arg.ty.is_argument() {
                    return Err(TypeError::NotArgumentType {
                        pos: self.pos,
                        expr: arg.to_string(),
                        ty: arg.ty,
                    });
                }
                let ty = self.unifier.resolve(t).ok_or_else(|| TypeError::AmbiguousType {
                    pos: self.pos,
                    var: format!("{fun}({arg})"),
                })?;
                Expr {
                    kind: ExprKind::App(Box::new(fun), Box::new(arg)),
                    ty,
                }
            }
        })
    }

    fn finish_literal(&self, lit: &PreLit) -> Result<Literal, TypeError> {
        Ok(match lit {
            PreLit::Pos(p) => Literal::Pos(self.finish(p)?),
            PreLit::Neg(p) => Literal::Neg(self.finish(p)?),
            PreLit::Eq(l, r) => Literal::Eq(self.finish(l)?, self.finish(r)?),
        })
    }
}

fn check_clause(
    sig: &Signature,
    head: &SurfaceExpr,
    body: &[SurfaceExpr],
    pos: Pos,
) -> Result<(Clause, BTreeSet<String>), TypeError> {
    let mut cx = ClauseChecker {
        sig,
        pos,
        unifier: Unifier::default(),
        var_types: HashMap::new(),
        var_order: Vec::new(),
        constants: BTreeSet::new(),
    };

    let (head_sym, head_args) = head.spine();
    let (head_pred, head_type) = match head_sym {
        SurfaceExpr::Ident(name) => match sig.predicates.get(name) {
            Some(t) => (name.clone(), t.clone()),
            None => {
                return Err(if sig.functions.contains_key(name) {
                    TypeError::BadHead {
                        pos,
                        reason: format!("`{name}` is a function symbol, not a predicate"),
                    }
                } else {
                    TypeError::Undeclared {
                        pos,
                        name: name.clone(),
                    }
                })
            }
        },
        other => {
            return Err(TypeError::BadHead {
                pos,
                reason: format!("`{other}` does not start with a predicate constant"),
            })
        }
    };
    let (param_types, _) = head_type.spine();
    if head_args.len() != param_types.len() {
        return Err(TypeError::BadHead {
            pos,
            reason: format!(
                "`{head_pred}` takes {} arguments but the head supplies {}",
                param_types.len(),
                head_args.len()
            ),
        });
    }

    // Non-variable individual arguments in the head become fresh formals
    // constrained by an equality literal.
    let mut used = Vec::new();
    head.collect_vars(&mut used);
    body.iter().for_each(|l| l.collect_vars(&mut used));
    let mut formals: Vec<String> = Vec::new();
    let mut head_equalities = Vec::new();
    for (i, (arg, param)) in head_args.iter().zip(&param_types).enumerate() {
        match arg {
            SurfaceExpr::Var(v) => {
                if formals.contains(v) {
                    return Err(TypeError::RepeatedFormal { pos, var: v.clone() });
                }
                let t = cx.var_ty(v);
                cx.unify(&t, &Ty::from_type(param), head)?;
                formals.push(v.clone());
            }
            _ if **param == TypeExpr::Iota => {
                let mut fresh = format!("_H{}", i + 1);
                while used.contains(&fresh.as_str()) {
                    fresh.push('\'');
                }
                let t = cx.var_ty(&fresh);
                cx.unify(&t, &Ty::Iota, head)?;
                let (pre, ty) = cx.term(arg)?;
                cx.unify(&ty, &Ty::Iota, head)?;
                head_equalities.push(PreLit::Eq(Pre::Var(fresh.clone()), pre));
                formals.push(fresh);
            }
            _ => {
                return Err(TypeError::BadHead {
                    pos,
                    reason: format!("argument `{arg}` of predicate type must be a variable"),
                })
            }
        }
    }

    let mut lits = head_equalities;
    for lit in body {
        lits.push(cx.literal(lit)?);
    }

    for v in &cx.var_order {
        match cx.unifier.resolve(&cx.var_types[v]) {
            None => return Err(TypeError::AmbiguousType { pos, var: v.clone() }),
            Some(t) if !t.is_argument() => {
                return Err(TypeError::BadVariableType {
                    pos,
                    var: v.clone(),
                    ty: t.to_string(),
                })
            }
            Some(_) => {}
        }
    }

    let body = lits
        .iter()
        .map(|l| cx.finish_literal(l))
        .collect::<Result<Vec<_>, _>>()?;
    let resolve = |v: &String| (v.clone(), cx.unifier.resolve(&cx.var_types[v]).expect("resolved above"));
    let formals: Vec<(String, TypeExpr)> = formals.iter().map(resolve).collect();
    let vars = cx.var_order.iter().map(resolve).collect();

    Ok((
        Clause {
            head_pred,
            head_type,
            formals,
            body,
            vars,
            pos,
        },
        cx.constants,
    ))
}

/// Type-checks a parsed program.
pub fn typecheck(ast: &SourceProgram) -> Result<TypedProgram, TypeError> {
    let mut sig = Signature {
        predicates: BTreeMap::new(),
        functions: BTreeMap::new(),
    };
    for spanned in &ast.items {
        let pos = spanned.pos;
        let (name, ty, is_pred) = match &spanned.item {
            Item::PredDecl { name, ty } => (name, ty, true),
            Item::FuncDecl { name, ty } => (name, ty, false),
            Item::Clause { .. } => continue,
        };
        if sig.predicates.contains_key(name) || sig.functions.contains_key(name) {
            return Err(TypeError::BadDeclaration {
                pos,
                name: name.clone(),
                reason: "declared more than once".into(),
            });
        }
        let class = classify_type(ty);
        if is_pred {
            if class != TypeClass::Predicate {
                return Err(TypeError::BadDeclaration {
                    pos,
                    name: name.clone(),
                    reason: format!("{ty} is not a predicate type"),
                });
            }
            sig.predicates.insert(name.clone(), ty.clone());
        } else {
            if class != TypeClass::Functional {
                return Err(TypeError::BadDeclaration {
                    pos,
                    name: name.clone(),
                    reason: format!("{ty} is not a function type i -> ... -> i"),
                });
            }
            sig.functions.insert(name.clone(), ty.clone());
        }
    }

    let mut clauses = Vec::new();
    let mut constants = BTreeSet::new();
    for spanned in &ast.items {
        if let Item::Clause { head, body } = &spanned.item {
            let (clause, consts) = check_clause(&sig, head, body, spanned.pos)?;
            constants.extend(consts);
            clauses.push(clause);
        }
    }

    let mut injected_constant = None;
    if constants.is_empty() {
        constants.insert(RESERVED_CONSTANT.to_string());
        injected_constant = Some(RESERVED_CONSTANT.to_string());
    }

    Ok(TypedProgram {
        predicates: sig.predicates,
        functions: sig.functions,
        constants,
        clauses,
        injected_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_program;

    fn check(src: &str) -> Result<TypedProgram, TypeError> {
        typecheck(&parse_program(src).unwrap())
    }

    fn io() -> TypeExpr {
        TypeExpr::arrow(TypeExpr::Iota, TypeExpr::Bool)
    }

    #[test]
    fn predicate_variable_inferred_from_head() {
        let p = check("#pred p : (i->o)->o. p(Q) :- Q(a).").unwrap();
        assert_eq!(p.clauses[0].var_type("Q"), Some(&io()));
        assert!(p.constants.contains("a"));
    }

    #[test]
    fn repeated_formal_rejected() {
        let err = check("#pred q : i->i->o. q X X :- .").unwrap_err();
        assert!(matches!(err, TypeError::RepeatedFormal { ref var, .. } if var == "X"));
    }

    #[test]
    fn self_application_rejected() {
        let err = check("#pred p : (i->o)->o. p(Q) :- Q(Q).").unwrap_err();
        assert!(matches!(err, TypeError::Mismatch { .. }), "{err}");
    }

    #[test]
    fn subset_types() {
        let p = check(
            "#pred subset : (i->o)->(i->o)->o. #pred nonsubset : (i->o)->(i->o)->o.\n\
             subset S1 S2 :- ~(nonsubset S1 S2).\n\
             nonsubset S1 S2 :- S1 X, ~(S2 X).",
        )
        .unwrap();
        let c = &p.clauses[1];
        assert_eq!(c.var_type("S1"), Some(&io()));
        assert_eq!(c.var_type("S2"), Some(&io()));
        assert_eq!(c.var_type("X"), Some(&TypeExpr::Iota));
        assert_eq!(p.injected_constant.as_deref(), Some(RESERVED_CONSTANT));
    }

    #[test]
    fn constant_head_arguments_become_equalities() {
        let p = check("#pred p : i->o. p(a) :- Q(a).").unwrap();
        let c = &p.clauses[0];
        assert_eq!(c.formals, vec![("_H1".to_string(), TypeExpr::Iota)]);
        assert_eq!(c.var_type("Q"), Some(&io()));
        assert!(matches!(c.body[0], Literal::Eq(..)));
        assert_eq!(c.to_string(), "p(_H1):-_H1=a,Q(a).");

        let p = check("#pred r : i->i->o. r(_H1, b) :- q(_H2). #pred q : i->o. q(a).").unwrap();
        assert_eq!(p.clauses[0].to_string(), "r(_H1)(_H2'):-_H2'=b,q(_H2).");
    }

    #[test]
    fn error_paths() {
        assert!(matches!(check("q(a)."), Err(TypeError::Undeclared { .. })));
        assert!(matches!(
            check("#pred p : i->o. p X :- r(X)."),
            Err(TypeError::Undeclared { .. })
        ));
        assert!(matches!(
            check("#pred p : (i->o)->o. p(q)."),
            Err(TypeError::BadHead { .. })
        ));
        assert!(matches!(check("#pred p : i->o. p."), Err(TypeError::BadHead { .. })));
        assert!(check("#pred p : o. #pred q : (i->o)->o. p :- q(Q).").is_ok());
        assert!(check("#pred p : o. p :- X = Y.").is_ok());
        assert!(matches!(
            check("#pred p : o. #pred q : i->o. p :- q = q."),
            Err(TypeError::Mismatch { .. })
        ));
        assert!(matches!(
            check("#pred p : o. #pred q : o. p :- ~(q = q)."),
            Err(TypeError::Misplaced { .. })
        ));
        assert!(matches!(
            check("#pred p : (i->o)->i."),
            Err(TypeError::BadDeclaration { .. })
        ));
        assert!(matches!(
            check("#func f : i->i. #pred p : i->o. p(X) :- p(f)."),
            Err(TypeError::Mismatch { .. })
        ));
    }

    #[test]
    fn ambiguous_variable_rejected() {
        let err = check("#pred p : o. p :- R(S).").unwrap_err();
        assert!(matches!(err, TypeError::AmbiguousType { .. }), "{err}");
    }

    #[test]
    fn function_symbols() {
        let p = check("#func f : i->i->i. #pred p : i->o. p(X) :- p(f(X, a)).").unwrap();
        let Literal::Pos(e) = &p.clauses[0].body[0] else {
            panic!()
        };
        assert_eq!(e.to_string(), "p(f(X,a))");
        assert!(matches!(
            check("#func f : i->i->i. #pred p : i->o. p(X) :- p(f(X))."),
            Err(TypeError::Mismatch { .. })
        ));
    }

    #[test]
    fn inference_is_deterministic() {
        let src = "#pred p : (i->o)->o. #pred id : (i->o)->i->o. p(Q) :- Q(a). id(R)(X) :- R(X).";
        assert_eq!(check(src).unwrap(), check(src).unwrap());
    }
}
