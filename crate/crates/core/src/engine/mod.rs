//! Minimum infinite-valued model of a ground program.
//!
//! The model is built stage by stage. At stage `α` every atom decided at an
//! earlier stage keeps its value and every other atom starts at `F_α`. The
//! atoms that become `T_α` are the least set closed under "some clause has
//! only literals at least `T_α`"; the atoms that stay `F_α` are the greatest
//! set where "every clause has a literal at most `F_α`". The first stage that
//! decides nothing is the depth `δ`, and every undecided atom gets `ZERO`.

mod ho;
mod interp;

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::herbrand::{AtomId, GLiteral, GroundProgram};
use crate::truth::{conj, lub, OrdinalIndex, TruthValue};

pub use ho::{check_model_ho, evaluate, valuate_expression, EngineError, Evaluation, HoModelCheck, HoViolation};
pub use interp::{compare_alpha, model_leq, AlphaRelation, Interpretation};

fn literal_value(i: &Interpretation, lit: &GLiteral) -> TruthValue {
    match *lit {
        GLiteral::Pos(a) => i[a],
        GLiteral::Neg(a) => i[a].neg(),
        GLiteral::TrueConst => TruthValue::T0,
        GLiteral::FalseConst => TruthValue::F0,
    }
}

/// One application of the immediate consequence operator.
pub fn tp_step(g: &GroundProgram, i: &Interpretation) -> Interpretation {
    let by_head = g.clauses_by_head();
    let values = by_head
        .iter()
        .map(|clauses| {
            lub(clauses
                .iter()
                .map(|&ci| conj(g.clauses()[ci].body.iter().map(|l| literal_value(i, l)))))
        })
        .collect();
    Interpretation::from_values(values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub alpha: u32,
    pub newly_true: BTreeSet<AtomId>,
    pub newly_false: BTreeSet<AtomId>,
    /// The approximation `M_α`: decided values, with undecided atoms at `F_{α+1}`.
    pub snapshot: Interpretation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StageTrace {
    pub stages: Vec<Stage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfModel {
    pub model: Interpretation,
    pub depth: u32,
    pub trace: StageTrace,
}

fn decided(frozen: &Interpretation, a: AtomId, alpha: u32) -> bool {
    matches!(frozen[a].order(), OrdinalIndex::Finite(n) if n < alpha)
}

/// Atoms that stabilise at `T_α` and at `F_α` given the values frozen before stage `α`.
pub fn stage_fixpoint(g: &GroundProgram, frozen: &Interpretation, alpha: u32) -> (BTreeSet<AtomId>, BTreeSet<AtomId>) {
    let n = g.atom_count();
    let clauses = g.clauses();
    let is_decided = |a: AtomId| decided(frozen, a, alpha);

    // Least fixpoint for the true set. `pending[c]` counts positive literals
    // over undecided atoms that must still join the set.
    let mut in_true = vec![false; n];
    let mut pending = vec![0usize; clauses.len()];
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = VecDeque::new();
    for (ci, c) in clauses.iter().enumerate() {
        if is_decided(c.head) {
            continue;
        }
        let mut viable = true;
        for lit in &c.body {
            match *lit {
                GLiteral::Pos(b) if is_decided(b) => viable &= frozen[b].is_true(),
                GLiteral::Pos(b) => {
                    pending[ci] += 1;
                    watchers[b.index()].push(ci);
                }
                GLiteral::Neg(b) => viable &= is_decided(b) && frozen[b].is_false(),
                GLiteral::TrueConst => {}
                GLiteral::FalseConst => viable = false,
            }
        }
        if !viable {
            pending[ci] = usize::MAX;
        } else if pending[ci] == 0 && !in_true[c.head.index()] {
            in_true[c.head.index()] = true;
            queue.push_back(c.head);
        }
    }
    while let Some(a) = queue.pop_front() {
        for &ci in &watchers[a.index()] {
            if pending[ci] == usize::MAX {
                continue;
            }
            pending[ci] -= 1;
            let head = clauses[ci].head;
            if pending[ci] == 0 && !in_true[head.index()] {
                in_true[head.index()] = true;
                queue.push_back(head);
            }
        }
    }

    // Greatest fixpoint for the false set: start from every remaining
    // undecided atom and remove heads of clauses left without a literal
    // at most `F_α`.
    let mut in_false: Vec<bool> = (0..n as u32)
        .map(AtomId)
        .map(|a| !is_decided(a) && !in_true[a.index()])
        .collect();
    let mut support = vec![0usize; clauses.len()];
    let mut supporters: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut removed = VecDeque::new();
    for (ci, c) in clauses.iter().enumerate() {
        if !in_false[c.head.index()] {
            continue;
        }
        let mut definite = false;
        for lit in &c.body {
            match *lit {
                GLiteral::Pos(b) if is_decided(b) => definite |= frozen[b].is_false(),
                GLiteral::Pos(b) if in_false[b.index()] => {
                    support[ci] += 1;
                    supporters[b.index()].push(ci);
                }
                GLiteral::Neg(b) => definite |= is_decided(b) && frozen[b].is_true(),
                GLiteral::FalseConst => definite = true,
                _ => {}
            }
        }
        if definite {
            support[ci] = usize::MAX;
        } else if support[ci] == 0 {
            removed.push_back(c.head);
        }
    }
    while let Some(a) = removed.pop_front() {
        if !in_false[a.index()] {
            continue;
        }
        in_false[a.index()] = false;
        for &ci in &supporters[a.index()] {
            if support[ci] == usize::MAX || support[ci] == 0 {
                continue;
            }
            support[ci] -= 1;
            if support[ci] == 0 {
                removed.push_back(clauses[ci].head);
            }
        }
    }

    let collect = |flags: &[bool]| {
        flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| AtomId(i as u32))
            .collect::<BTreeSet<_>>()
    };
    (collect(&in_true), collect(&in_false))
}

/// The minimum infinite-valued model, its depth, and the approximation trace.
pub fn minimum_model(g: &GroundProgram) -> InfModel {
    let n = g.atom_count();
    let mut frozen = Interpretation::bottom(n);
    let mut trace = StageTrace::default();
    let mut alpha = 0u32;
    loop {
        let (newly_true, newly_false) = stage_fixpoint(g, &frozen, alpha);
        let mut next = frozen.clone();
        for a in g.atoms() {
            if decided(&frozen, a, alpha) {
                continue;
            }
            next[a] = if newly_true.contains(&a) {
                TruthValue::TrueAt(alpha)
            } else if newly_false.contains(&a) {
                TruthValue::FalseAt(alpha)
            } else {
                TruthValue::FalseAt(alpha + 1)
            };
        }
        let done = newly_true.is_empty() && newly_false.is_empty();
        trace.stages.push(Stage {
            alpha,
            newly_true,
            newly_false,
            snapshot: next.clone(),
        });
        frozen = next;
        if done {
            break;
        }
        alpha += 1;
    }
    let depth = alpha;
    let mut model = frozen;
    for a in g.atoms() {
        if !decided(&model, a, depth) {
            model[a] = TruthValue::Zero;
        }
    }
    InfModel { model, depth, trace }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCheck {
    pub is_model: bool,
    /// Indices of unsatisfied clauses.
    pub violations: Vec<usize>,
}

/// Checks `I(head) >= I(body)` for every clause.
pub fn is_model(g: &GroundProgram, i: &Interpretation) -> ModelCheck {
    let violations: Vec<usize> = g
        .clauses()
        .iter()
        .enumerate()
        .filter(|(_, c)| i[c.head] < conj(c.body.iter().map(|l| literal_value(i, l))))
        .map(|(ci, _)| ci)
        .collect();
    ModelCheck {
        is_model: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomValueJson {
    pub atom: String,
    pub value: TruthValue,
    /// `null` for `ZERO`, whose order is infinite.
    pub order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelJson {
    pub atoms: Vec<AtomValueJson>,
    pub depth: u32,
}

/// Atoms sorted by order, trues before falses, then by name.
pub fn sorted_atoms(g: &GroundProgram, i: &Interpretation) -> Vec<(AtomId, TruthValue)> {
    let mut atoms: Vec<(AtomId, TruthValue)> = g.atoms().map(|a| (a, i[a])).collect();
    atoms.sort_by(|(a, va), (b, vb)| {
        (va.order(), !va.is_true(), g.atom_name(*a)).cmp(&(vb.order(), !vb.is_true(), g.atom_name(*b)))
    });
    atoms
}

impl InfModel {
    pub fn to_json(&self, g: &GroundProgram) -> ModelJson {
        ModelJson {
            atoms: sorted_atoms(g, &self.model)
                .into_iter()
                .map(|(a, v)| AtomValueJson {
                    atom: g.atom_name(a).to_string(),
                    value: v,
                    order: v.order().finite(),
                })
                .collect(),
            depth: self.depth,
        }
    }
}


#[cfg(test)]
mod props;
