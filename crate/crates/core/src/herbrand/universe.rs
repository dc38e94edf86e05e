use std::collections::{BTreeSet, HashMap};

use crate::frontend::{Expr, TypeExpr, TypedProgram};

use super::HerbrandError;

/// The ground terms of one argument type with at most `depth_bound` symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseSlice {
    pub ty: TypeExpr,
    pub depth_bound: usize,
    /// Ordered by size, then by canonical text.
    pub terms: Vec<Expr>,
}

/// Depth-bounded Herbrand universes for every type a term of the program can have.
#[derive(Debug, Clone)]
pub struct Universe {
    depth: usize,
    /// `buckets[ty][s - 1]` holds the terms of type `ty` with exactly `s` symbols.
    buckets: HashMap<TypeExpr, Vec<Vec<Expr>>>,
    slices: HashMap<TypeExpr, Vec<Expr>>,
}

impl Universe {
    /// Builds every slice up to `depth` symbols. Fails if more than `cap`
    /// terms would be generated for a single type.
    pub fn new(p: &TypedProgram, depth: usize, cap: usize) -> Result<Universe, HerbrandError> {
        if depth == 0 {
            return Err(HerbrandError::InvalidBound);
        }
        // Terms of predicate type are partial applications of predicate
        // constants, so their types are suffixes of declared types.
        let mut types: BTreeSet<TypeExpr> = BTreeSet::new();
        types.insert(TypeExpr::Iota);
        for ty in p.predicates.values() {
            types.extend(ty.suffixes().into_iter().cloned());
        }

        let mut buckets: HashMap<TypeExpr, Vec<Vec<Expr>>> =
            types.iter().map(|t| (t.clone(), Vec::with_capacity(depth))).collect();
        let empty: Vec<Expr> = Vec::new();

        for size in 1..=depth {
            let mut fresh: Vec<(TypeExpr, Vec<Expr>)> = Vec::new();
            for ty in &types {
                let mut terms = Vec::new();
                if size == 1 {
                    if *ty == TypeExpr::Iota {
                        terms.extend(p.constants.iter().map(Expr::ind));
                    } else {
                        terms.extend(
                            p.predicates
                                .iter()
                                .filter(|(_, t)| *t == ty)
                                .map(|(n, t)| Expr::pred(n.clone(), t.clone())),
                        );
                    }
                } else if *ty == TypeExpr::Iota {
                    for (name, fty) in &p.functions {
                        let arity = fty.arity();
                        for parts in compositions(size - 1, arity) {
                            let pools: Vec<&Vec<Expr>> =
                                parts.iter().map(|&s| &buckets[&TypeExpr::Iota][s - 1]).collect();
                            for_each_product(&pools, |args| {
                                terms.push(Expr::fun_app(name.clone(), args.to_vec()));
                            });
                        }
                    }
                } else {
                    for head_ty in &types {
                        let TypeExpr::Arrow(arg_ty, res_ty) = head_ty else {
                            continue;
                        };
                        if res_ty.as_ref() != ty {
                            continue;
                        }
                        let Some(arg_buckets) = buckets.get(arg_ty.as_ref()) else {
                            continue;
                        };
                        for head_size in 1..size {
                            let heads = &buckets[head_ty][head_size - 1];
                            let args = arg_buckets.get(size - head_size - 1).unwrap_or(&empty);
                            for h in heads {
                                for a in args {
                                    terms.push(h.clone().apply(a.clone()));
                                }
                            }
                        }
                    }
                }
                let mut keyed: Vec<(String, Expr)> = terms.into_iter().map(|t| (t.to_string(), t)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                keyed.dedup_by(|a, b| a.0 == b.0);
                fresh.push((ty.clone(), keyed.into_iter().map(|(_, t)| t).collect()));
            }
            for (ty, terms) in fresh {
                let bucket = buckets.get_mut(&ty).expect("type registered");
                let total: usize = bucket.iter().map(Vec::len).sum::<usize>() + terms.len();
                if total > cap {
                    return Err(HerbrandError::BudgetExceeded {
                        what: format!("universe of type {ty} at depth {size}"),
                        count: total,
                        cap,
                    });
                }
                bucket.push(terms);
            }
        }

        let slices = buckets
            .iter()
            .map(|(ty, b)| (ty.clone(), b.iter().flatten().cloned().collect()))
            .collect();
        Ok(Universe { depth, buckets, slices })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// All terms of type `ty`; empty for types no program symbol can produce.
    pub fn terms(&self, ty: &TypeExpr) -> &[Expr] {
        self.slices.get(ty).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn terms_of_size(&self, ty: &TypeExpr, size: usize) -> &[Expr] {
        self.buckets
            .get(ty)
            .and_then(|b| b.get(size.wrapping_sub(1)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn slice(&self, ty: &TypeExpr) -> UniverseSlice {
        UniverseSlice {
            ty: ty.clone(),
            depth_bound: self.depth,
            terms: self.terms(ty).to_vec(),
        }
    }
}

/// Ordered ways of writing `total` as a sum of `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=total.saturating_sub(parts - 1) {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= parts {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn for_each_product<T: Clone>(pools: &[&Vec<T>], mut f: impl FnMut(&[T])) {
    if pools.iter().any(|p| p.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; pools.len()];
    let mut current: Vec<T> = pools.iter().map(|p| p[0].clone()).collect();
    loop {
        f(&current);
        let mut i = pools.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < pools[i].len() {
                current[i] = pools[i][idx[i]].clone();
                break;
            }
            idx[i] = 0;
            current[i] = pools[i][0].clone();
        }
    }
}

/// Ground terms of argument type `rho` with at most `k` symbol occurrences.
pub fn enumerate_universe(p: &TypedProgram, rho: &TypeExpr, k: usize) -> Result<UniverseSlice, HerbrandError> {
    if !rho.is_argument() {
        return Err(HerbrandError::NotArgumentType(rho.clone()));
    }
    let universe = Universe::new(p, k, super::DEFAULT_CAP)?;
    let slice = universe.slice(rho);
    if slice.terms.is_empty() {
        return Err(HerbrandError::EmptyUniverse {
            ty: rho.clone(),
            depth: k,
        });
    }
    Ok(slice)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_enumerate_ordered_splits() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(compositions(3, 1), vec![vec![3]]);
    }

    #[test]
    fn product_in_odometer_order() {
        let a = vec![1, 2];
        let b = vec![10, 20, 30];
        let mut seen = Vec::new();
        for_each_product(&[&a, &b], |xs| seen.push((xs[0], xs[1])));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], (1, 10));
        assert_eq!(seen[1], (1, 20));
        assert_eq!(seen[5], (2, 30));
    }
}
