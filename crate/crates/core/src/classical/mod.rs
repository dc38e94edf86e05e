//! Two- and three-valued companions of the infinite-valued model: the
//! well-founded collapse, an independent well-founded oracle, and stable
//! models.

mod stable;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use serde::Serialize;

use crate::engine::InfModel;
use crate::herbrand::{AtomId, GLiteral, GroundClause, GroundProgram};
use crate::truth::TruthValue;

pub use stable::{stable_models, stable_models_with, DEFAULT_MAX_ATOMS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalError {
    #[error("clause `{0}` contains a negative literal")]
    HasNegation(String),
    #[error("{count} atoms exceed the limit of {cap} for stable model search")]
    TooManyAtoms { count: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThreeValued {
    True,
    False,
    Undef,
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreeValued::True => "true",
            ThreeValued::False => "false",
            ThreeValued::Undef => "undef",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeValuedInterp {
    pub values: Vec<ThreeValued>,
}

impl Index<AtomId> for ThreeValuedInterp {
    type Output = ThreeValued;

    fn index(&self, a: AtomId) -> &ThreeValued {
        &self.values[a.index()]
    }
}

/// A set of true atoms; every other atom is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoValuedInterp {
    pub true_atoms: BTreeSet<AtomId>,
}

impl TwoValuedInterp {
    pub fn contains(&self, a: AtomId) -> bool {
        self.true_atoms.contains(&a)
    }

    /// True atom names in lexicographic order.
    pub fn names<'g>(&self, g: &'g GroundProgram) -> Vec<&'g str> {
        let mut names: Vec<&str> = self.true_atoms.iter().map(|&a| g.atom_name(a)).collect();
        names.sort_unstable();
        names
    }
}

impl FromIterator<AtomId> for TwoValuedInterp {
    fn from_iter<I: IntoIterator<Item = AtomId>>(iter: I) -> Self {
        TwoValuedInterp {
            true_atoms: iter.into_iter().collect(),
        }
    }
}

/// Maps every `T_n` to true, every `F_n` to false and `ZERO` to undefined.
pub fn collapse(m: &InfModel) -> ThreeValuedInterp {
    collapse_values(m.model.values())
}

pub fn collapse_values(values: &[TruthValue]) -> ThreeValuedInterp {
    ThreeValuedInterp {
        values: values
            .iter()
            .map(|v| match v {
                TruthValue::TrueAt(_) => ThreeValued::True,
                TruthValue::FalseAt(_) => ThreeValued::False,
                TruthValue::Zero => ThreeValued::Undef,
            })
            .collect(),
    }
}

/// Drops rules blocked by `i` and strips the remaining negative literals.
pub fn reduct(g: &GroundProgram, i: &TwoValuedInterp) -> GroundProgram {
    let clauses = g
        .clauses()
        .iter()
        .filter(|c| c.negative().all(|a| !i.contains(a)))
        .map(|c| GroundClause {
            head: c.head,
            body: c
                .body
                .iter()
                .filter(|l| !matches!(l, GLiteral::Neg(_)))
                .copied()
                .collect(),
            origin: c.origin.clone(),
        })
        .collect();
    g.with_clauses(clauses)
}

/// Least model of the clauses of `g` that `keep` admits, ignoring their
/// negative literals.
pub(crate) fn least_model_where(g: &GroundProgram, keep: impl Fn(&GroundClause) -> bool) -> Vec<bool> {
    let n = g.atom_count();
    let mut holds = vec![false; n];
    let mut missing = vec![0usize; g.clauses().len()];
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = Vec::new();
    for (ci, c) in g.clauses().iter().enumerate() {
        if !keep(c) || c.body.contains(&GLiteral::FalseConst) {
            missing[ci] = usize::MAX;
            continue;
        }
        for a in c.positive() {
            missing[ci] += 1;
            watchers[a.index()].push(ci);
        }
        if missing[ci] == 0 && !holds[c.head.index()] {
            holds[c.head.index()] = true;
            queue.push(c.head);
        }
    }
    while let Some(a) = queue.pop() {
        for &ci in &watchers[a.index()] {
            if missing[ci] == usize::MAX {
                continue;
            }
            missing[ci] -= 1;
            let head = g.clauses()[ci].head;
            if missing[ci] == 0 && !holds[head.index()] {
                holds[head.index()] = true;
                queue.push(head);
            }
        }
    }
    holds
}

fn to_set(flags: &[bool]) -> TwoValuedInterp {
    flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| AtomId(i as u32))
        .collect()
}

/// Classical satisfaction: every clause whose body holds in `i` has its head in `i`.
pub fn is_two_valued_model(g: &GroundProgram, i: &TwoValuedInterp) -> bool {
    g.clauses().iter().all(|c| {
        let body = c.body.iter().all(|l| match *l {
            GLiteral::Pos(a) => i.contains(a),
            GLiteral::Neg(a) => !i.contains(a),
            GLiteral::TrueConst => true,
            GLiteral::FalseConst => false,
        });
        !body || i.contains(c.head)
    })
}

/// Least model of a negation-free program.
pub fn least_model_positive(g: &GroundProgram) -> Result<TwoValuedInterp, ClassicalError> {
    if let Some(c) = g.clauses().iter().find(|c| c.has_negation()) {
        return Err(ClassicalError::HasNegation(g.clause_text(c)));
    }
    Ok(to_set(&least_model_where(g, |_| true)))
}

/// The well-founded model by alternating fixpoints of the
/// Gelfond-Lifschitz operator, independent of the infinite-valued engine.
pub fn wf_oracle(g: &GroundProgram) -> ThreeValuedInterp {
    // gamma(S): least model of the rules not blocked by S.
    let gamma = |s: &[bool]| least_model_where(g, |c| c.negative().all(|a| !s[a.index()]));
    let mut under = vec![false; g.atom_count()];
    loop {
        let over = gamma(&under);
        let next = gamma(&over);
        if next == under {
            return ThreeValuedInterp {
                values: under
                    .iter()
                    .zip(&over)
                    .map(|(&t, &possible)| match (t, possible) {
                        (true, _) => ThreeValued::True,
                        (false, false) => ThreeValued::False,
                        (false, true) => ThreeValued::Undef,
                    })
                    .collect(),
            };
        }
        under = next;
    }
}
