use std::collections::BTreeMap;

use serde::Serialize;

use crate::frontend::{ExprKind, Literal, TypeExpr, TypedProgram};
use crate::herbrand::GroundProgram;

use super::graph::DepGraph;

/// `pi` is `r1 -> ... -> rn -> pi2` for some `n >= 0`.
pub fn type_geq(pi: &TypeExpr, pi2: &TypeExpr) -> bool {
    pi.suffixes().contains(&pi2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataAssignment {
    /// Stratum of every predicate constant, numbered from 1.
    pub strata: BTreeMap<String, usize>,
    pub count: usize,
}

impl StrataAssignment {
    pub fn stratum(&self, pred: &str) -> Option<usize> {
        self.strata.get(pred).copied()
    }

    /// Predicates of each stratum, lowest first.
    pub fn layers(&self) -> Vec<Vec<&str>> {
        let mut layers = vec![Vec::new(); self.count];
        for (p, &s) in &self.strata {
            layers[s - 1].push(p.as_str());
        }
        layers
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stratification {
    Stratified(StrataAssignment),
    /// A cycle through negation; `~` marks nodes reached by a negative dependency.
    Violation {
        cycle: Vec<String>,
    },
}

/// Stratification over predicate constants. A body atom headed by a
/// predicate variable depends on every constant of greater or equal type.
pub fn check_stratified(p: &TypedProgram) -> Stratification {
    let names: Vec<String> = p.predicates.keys().cloned().collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut graph = DepGraph::with_nodes(names.clone());
    for clause in &p.clauses {
        let head = index[clause.head_pred.as_str()];
        for lit in &clause.body {
            let (atom, negative) = match lit {
                Literal::Pos(e) => (e, false),
                Literal::Neg(e) => (e, true),
                Literal::Eq(..) => continue,
            };
            let (h, _) = atom.spine();
            match &h.kind {
                ExprKind::PredConst(q) => graph.add_edge(head, index[q.as_str()], negative),
                ExprKind::Var(_) => {
                    for (q, ty) in &p.predicates {
                        if type_geq(ty, &h.ty) {
                            graph.add_edge(head, index[q.as_str()], negative);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    match graph.stratify() {
        Ok(levels) => Stratification::Stratified(StrataAssignment {
            count: levels.iter().copied().max().unwrap_or(0),
            strata: names.into_iter().zip(levels).collect(),
        }),
        Err(cycle) => Stratification::Violation { cycle },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalStratReport {
    pub stratified_up_to_bound: bool,
    pub witness_cycle: Option<Vec<String>>,
    /// Stratum per atom when stratified.
    pub strata: Option<Vec<usize>>,
}

/// Local stratification of a finite ground program: no dependency cycle
/// passes through a negative edge. Only a semi-check for the source program,
/// since the grounding is cut at a depth bound.
pub fn check_locally_stratified_bounded(g: &GroundProgram) -> LocalStratReport {
    let mut graph = DepGraph::with_nodes(g.atoms().map(|a| g.atom_name(a).to_string()).collect());
    for c in g.clauses() {
        for a in c.positive() {
            graph.add_edge(c.head.index(), a.index(), false);
        }
        for a in c.negative() {
            graph.add_edge(c.head.index(), a.index(), true);
        }
    }
    match graph.stratify() {
        Ok(levels) => LocalStratReport {
            stratified_up_to_bound: true,
            witness_cycle: None,
            strata: Some(levels),
        },
        Err(cycle) => LocalStratReport {
            stratified_up_to_bound: false,
            witness_cycle: Some(cycle),
            strata: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;
    use TypeExpr::{Bool as O, Iota as I};

    fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::arrow(a, b)
    }

    #[test]
    fn type_ordering() {
        let io = arrow(I, O);
        assert!(type_geq(&arrow(I, io.clone()), &io));
        assert!(type_geq(&io, &io));
        assert!(!type_geq(&arrow(io.clone(), O), &io));
        assert!(!type_geq(&io, &arrow(I, io.clone())));
    }

    #[test]
    fn first_order_strata() {
        let p = load("#pred p : o. #pred q : o. p :- ~q. q.").unwrap();
        let Stratification::Stratified(s) = check_stratified(&p) else {
            panic!()
        };
        assert_eq!(s.layers(), [vec!["q"], vec!["p"]]);
    }

    #[test]
    fn variable_heads_depend_on_larger_types() {
        let p = load("#pred p : (i->o)->o. #pred q : i->o. p Q :- ~(Q a). q X :- X = a.").unwrap();
        let Stratification::Stratified(s) = check_stratified(&p) else {
            panic!()
        };
        assert_eq!((s.stratum("q"), s.stratum("p"), s.count), (Some(1), Some(2), 2));

        let p = load(
            "#pred p : (i->o)->o. #pred q : i->i->o.\n\
             p Q :- ~(Q a). q X Y :- X = a, Y = a, p (q a).",
        )
        .unwrap();
        assert_eq!(
            check_stratified(&p),
            Stratification::Violation {
                cycle: vec!["p".into(), "~q".into(), "p".into()]
            }
        );
    }

    #[test]
    fn ground_cycles() {
        let mut g = GroundProgram::new();
        for a in ["p(a)", "q(a)", "r(p)", "r(q)", "s(p)", "s(q)"] {
            g.intern(a);
        }
        g.add_rule("r(p)", &[], &["s(p)"]);
        g.add_rule("r(q)", &[], &["s(q)"]);
        g.add_rule("s(p)", &[], &["r(p)"]);
        g.add_rule("s(q)", &[], &["r(q)"]);
        let report = check_locally_stratified_bounded(&g);
        assert!(!report.stratified_up_to_bound);
        assert_eq!(report.witness_cycle.unwrap(), ["r(p)", "~s(p)", "~r(p)"]);

        let mut g = GroundProgram::new();
        g.add_rule("p", &[], &[]);
        g.add_rule("q", &["p"], &[]);
        let report = check_locally_stratified_bounded(&g);
        assert!(report.stratified_up_to_bound);
        assert_eq!(report.strata, Some(vec![1, 1]));
    }
}
