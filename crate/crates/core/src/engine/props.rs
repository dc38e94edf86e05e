use proptest::prelude::*;

use super::*;
use crate::testgen::ground_program;
use crate::truth::TruthValue::{FalseAt as F, TrueAt as T, Zero};

const ITERATES: usize = 20;
const MICRO_VALUES: [TruthValue; 7] = [F(0), F(1), F(2), Zero, T(2), T(1), T(0)];

fn base(m: &InfModel, alpha: usize, n: usize) -> Interpretation {
    if alpha == 0 {
        Interpretation::bottom(n)
    } else {
        m.trace.stages[alpha - 1].snapshot.clone()
    }
}

fn all_interpretations(n: usize) -> impl Iterator<Item = Interpretation> {
    let total = MICRO_VALUES.len().pow(n as u32);
    (0..total).map(move |mut code| {
        let values = (0..n)
            .map(|_| {
                let v = MICRO_VALUES[code % MICRO_VALUES.len()];
                code /= MICRO_VALUES.len();
                v
            })
            .collect();
        Interpretation::from_values(values)
    })
}

proptest! {
    #[test]
    fn iterates_never_overshoot_the_stage(g in ground_program(6, 10)) {
        let m = minimum_model(&g);
        for (alpha, stage) in m.trace.stages.iter().enumerate() {
            let mut i = base(&m, alpha, g.atom_count());
            for n in 0..=ITERATES {
                let rel = compare_alpha(&i, &stage.snapshot, alpha as u32);
                prop_assert!(rel.is_below_or_equal(), "stage {alpha}, iterate {n}: {rel:?}");
                i = tp_step(&g, &i);
            }
        }
    }

    #[test]
    fn approximations_agree_on_frozen_levels(g in ground_program(6, 10)) {
        let m = minimum_model(&g);
        let stages = &m.trace.stages;
        for (a, sa) in stages.iter().enumerate() {
            for sb in &stages[a + 1..] {
                prop_assert_eq!(compare_alpha(&sa.snapshot, &sb.snapshot, a as u32), AlphaRelation::Equal);
            }
            prop_assert_eq!(compare_alpha(&sa.snapshot, &m.model, a as u32), AlphaRelation::Equal);
        }
    }

    #[test]
    fn every_stage_below_depth_decides_something(g in ground_program(8, 12)) {
        let m = minimum_model(&g);
        prop_assert_eq!(m.trace.stages.len() as u32, m.depth + 1);
        for s in &m.trace.stages[..m.depth as usize] {
            prop_assert!(!(s.newly_true.is_empty() && s.newly_false.is_empty()));
        }
        for a in g.atoms() {
            let v = m.model[a];
            prop_assert!(v.is_zero() || v.order().finite().is_some_and(|o| o < m.depth));
        }
    }

    #[test]
    fn minimum_model_is_a_fixpoint_on_decided_atoms(g in ground_program(6, 10)) {
        let m = minimum_model(&g);
        prop_assert!(is_model(&g, &m.model).is_model);
        let next = tp_step(&g, &m.model);
        for a in g.atoms().filter(|&a| !m.model[a].is_zero()) {
            prop_assert_eq!(next[a], m.model[a]);
        }
    }

    #[test]
    fn minimum_among_micro_models(g in ground_program(3, 5)) {
        let m = minimum_model(&g);
        for j in all_interpretations(g.atom_count()) {
            if is_model(&g, &j).is_model {
                prop_assert!(model_leq(&m.model, &j), "{:?} not below model {:?}", m.model, j);
            }
        }
    }
}

/// Every program with one or two atoms and at most two single-literal clauses.
#[test]
fn minimum_among_micro_models_exhaustive() {
    for n in 1..=2u32 {
        let heads: Vec<AtomId> = (0..n).map(AtomId).collect();
        let mut bodies: Vec<Vec<GLiteral>> = vec![vec![]];
        for &a in &heads {
            bodies.push(vec![GLiteral::Pos(a)]);
            bodies.push(vec![GLiteral::Neg(a)]);
        }
        let clauses: Vec<(AtomId, Vec<GLiteral>)> = heads
            .iter()
            .flat_map(|&h| bodies.iter().map(move |b| (h, b.clone())))
            .collect();
        for mask in 0u32..(1 << clauses.len()) {
            if mask.count_ones() > 2 {
                continue;
            }
            let mut g = GroundProgram::new();
            for i in 0..n {
                g.intern(&format!("p{i}"));
            }
            for (i, (h, b)) in clauses.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    g.add_clause(*h, b.clone(), None);
                }
            }
            let m = minimum_model(&g);
            for j in all_interpretations(n as usize) {
                if is_model(&g, &j).is_model {
                    assert!(model_leq(&m.model, &j), "program\n{g}model {:?} vs {:?}", m.model, j);
                }
            }
        }
    }
}
