//! Random propositional programs for property tests.

use proptest::prelude::*;

use crate::herbrand::{AtomId, GLiteral, GroundProgram};

/// Programs over `p0..p{n-1}` with up to `max_clauses` clauses of up to three literals.
pub(crate) fn ground_program(max_atoms: usize, max_clauses: usize) -> impl Strategy<Value = GroundProgram> {
    (1..=max_atoms).prop_flat_map(move |n| {
        let literal = (0..n, any::<bool>());
        let clause = (0..n, prop::collection::vec(literal, 0..=3));
        prop::collection::vec(clause, 0..=max_clauses).prop_map(move |clauses| {
            let mut g = GroundProgram::new();
            for i in 0..n {
                g.intern(&format!("p{i}"));
            }
            for (head, body) in clauses {
                let body = body
                    .into_iter()
                    .map(|(a, negated)| {
                        let a = AtomId(a as u32);
                        if negated {
                            GLiteral::Neg(a)
                        } else {
                            GLiteral::Pos(a)
                        }
                    })
                    .collect();
                g.add_clause(AtomId(head as u32), body, None);
            }
            g
        })
    })
}
