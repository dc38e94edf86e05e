use crate::exec::Exec;
use crate::herbrand::{AtomId, GroundProgram};

use super::{least_model_where, to_set, ClassicalError, TwoValuedInterp};

pub const DEFAULT_MAX_ATOMS: usize = 24;

/// Number of atoms whose values are fixed up front to split the search across workers.
const SPLIT_ATOMS: usize = 4;

type Assignment = Vec<Option<bool>>;

struct Search<'g> {
    g: &'g GroundProgram,
    /// Atoms occurring under negation; a stable model is determined by its
    /// intersection with them.
    guessed: Vec<AtomId>,
}

impl Search<'_> {
    /// Narrows the assignment with the bounds every stable extension obeys:
    /// it contains the least model of the rules that can no longer be
    /// blocked, and lies inside the least model of the rules not yet blocked.
    /// Returns the lower bound, or `None` on conflict.
    fn propagate(&self, assign: &mut Assignment) -> Option<Vec<bool>> {
        loop {
            let lower = least_model_where(self.g, |c| c.negative().all(|a| assign[a.index()] == Some(false)));
            let upper = least_model_where(self.g, |c| c.negative().all(|a| assign[a.index()] != Some(true)));
            let mut changed = false;
            for &a in &self.guessed {
                let i = a.index();
                match assign[i] {
                    Some(true) if !upper[i] => return None,
                    Some(false) if lower[i] => return None,
                    None if lower[i] => {
                        assign[i] = Some(true);
                        changed = true;
                    }
                    None if !upper[i] => {
                        assign[i] = Some(false);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(lower);
            }
        }
    }

    fn run(&self, mut assign: Assignment, out: &mut Vec<TwoValuedInterp>) {
        let Some(lower) = self.propagate(&mut assign) else {
            return;
        };
        match self.guessed.iter().find(|a| assign[a.index()].is_none()) {
            None => out.push(to_set(&lower)),
            Some(&a) => {
                for value in [false, true] {
                    let mut next = assign.clone();
                    next[a.index()] = Some(value);
                    self.run(next, out);
                }
            }
        }
    }
}

/// All stable models, sorted by their lists of true atom names.
pub fn stable_models(g: &GroundProgram, cap: usize) -> Result<Vec<TwoValuedInterp>, ClassicalError> {
    stable_models_with(g, cap, Exec::default())
}

pub fn stable_models_with(g: &GroundProgram, cap: usize, exec: Exec) -> Result<Vec<TwoValuedInterp>, ClassicalError> {
    if g.atom_count() > cap {
        return Err(ClassicalError::TooManyAtoms {
            count: g.atom_count(),
            cap,
        });
    }
    let mut negated = vec![false; g.atom_count()];
    for c in g.clauses() {
        for a in c.negative() {
            negated[a.index()] = true;
        }
    }
    let search = Search {
        g,
        guessed: g.atoms().filter(|a| negated[a.index()]).collect(),
    };

    let mut root = vec![None; g.atom_count()];
    if search.propagate(&mut root).is_none() {
        return Ok(Vec::new());
    }
    let split: Vec<AtomId> = search
        .guessed
        .iter()
        .copied()
        .filter(|a| root[a.index()].is_none())
        .take(SPLIT_ATOMS)
        .collect();
    let mut models: Vec<TwoValuedInterp> = exec
        .map_range(1 << split.len(), |mask| {
            let mut assign = root.clone();
            for (bit, a) in split.iter().enumerate() {
                assign[a.index()] = Some(mask & (1 << bit) != 0);
            }
            let mut out = Vec::new();
            search.run(assign, &mut out);
            out
        })
        .into_iter()
        .flatten()
        .collect();
    models.sort_by_cached_key(|m| m.names(g).into_iter().map(str::to_string).collect::<Vec<_>>());
    models.dedup();
    Ok(models)
}
