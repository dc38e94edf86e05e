//! Valuation of higher-order expressions over depth-bounded Herbrand states.
//!
//! In a Herbrand structure a ground expression denotes itself, so the value
//! of a ground atom is a lookup in the ground program's interpretation.

use crate::frontend::{Literal, TypedProgram};
use crate::herbrand::{
    for_each_state, ground_instantiate_with, normalize_equality, GLiteral, GroundOptions, GroundProgram, HerbrandError,
    Universe,
};
use crate::truth::{conj, TruthValue};

use super::{minimum_model, InfModel, Interpretation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("atom `{0}` is outside the depth-bounded universe")]
    UnknownAtom(String),
    #[error("expression `{0}` is not ground")]
    NotGround(String),
}

/// A program together with its depth-bounded grounding and minimum model.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub program: TypedProgram,
    pub universe: Universe,
    pub ground: GroundProgram,
    pub model: InfModel,
}

pub fn evaluate(p: &TypedProgram, opts: GroundOptions) -> Result<Evaluation, HerbrandError> {
    let (ground, universe) = ground_instantiate_with(p, opts)?;
    let model = minimum_model(&ground);
    Ok(Evaluation {
        program: p.clone(),
        universe,
        ground,
        model,
    })
}

impl Evaluation {
    pub fn depth_bound(&self) -> usize {
        self.universe.depth()
    }
}

fn literal_value(g: &GroundProgram, i: &Interpretation, lit: &Literal) -> Result<TruthValue, EngineError> {
    let lookup = |e: &crate::frontend::Expr| {
        if !e.is_ground() {
            return Err(EngineError::NotGround(e.to_string()));
        }
        let name = e.to_string();
        g.lookup(&name).map(|a| i[a]).ok_or(EngineError::UnknownAtom(name))
    };
    match lit {
        Literal::Pos(e) => lookup(e),
        Literal::Neg(e) => lookup(e).map(TruthValue::neg),
        Literal::Eq(l, r) => Ok(match normalize_equality(l, r) {
            GLiteral::TrueConst => TruthValue::T0,
            _ => TruthValue::F0,
        }),
    }
}

/// Value of a ground literal in the minimum model.
pub fn valuate_expression(ev: &Evaluation, lit: &Literal) -> Result<TruthValue, EngineError> {
    literal_value(&ev.ground, &ev.model.model, lit)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoViolation {
    pub clause: usize,
    /// The offending instance in canonical form.
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoModelCheck {
    pub is_model: bool,
    pub violations: Vec<HoViolation>,
}

/// Checks every source clause under every depth-bounded state against the
/// valuation `i` of the ground atoms.
pub fn check_model_ho(ev: &Evaluation, i: &Interpretation) -> Result<HoModelCheck, EngineError> {
    let mut violations = Vec::new();
    let mut error = None;
    for (ci, clause) in ev.program.clauses.iter().enumerate() {
        let head = clause.head();
        for_each_state(clause, &ev.universe, |s| {
            if error.is_some() {
                return;
            }
            let head = Literal::Pos(s.apply(&head));
            let body: Result<Vec<TruthValue>, EngineError> = clause
                .body
                .iter()
                .map(|l| literal_value(&ev.ground, i, &s.apply_literal(l)))
                .collect();
            match (literal_value(&ev.ground, i, &head), body) {
                (Ok(h), Ok(b)) => {
                    if h < conj(b) {
                        let instance = instance_text(clause, s);
                        violations.push(HoViolation { clause: ci, instance });
                    }
                }
                (Err(e), _) | (_, Err(e)) => error = Some(e),
            }
        });
        if let Some(e) = error {
            return Err(e);
        }
    }
    Ok(HoModelCheck {
        is_model: violations.is_empty(),
        violations,
    })
}

fn instance_text(clause: &crate::frontend::Clause, s: &crate::herbrand::Substitution) -> String {
    let mut out = s.apply(&clause.head()).to_string();
    if !clause.body.is_empty() {
        out.push_str(":-");
        let body: Vec<String> = clause.body.iter().map(|l| s.apply_literal(l).to_string()).collect();
        out.push_str(&body.join(","));
    }
    out.push('.');
    out
}
