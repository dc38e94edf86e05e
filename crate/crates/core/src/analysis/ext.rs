//! Extensional equality over depth-bounded Herbrand universes.
//!
//! At `i` two terms are related when they are identical. At
//! `r1 -> ... -> rn -> o` two terms are related when applying them to
//! componentwise related argument tuples gives atoms with equal values.
//! Tuples whose atoms fall outside the depth bound are skipped; a pair for
//! which every tuple is skipped is related by vacuity and flagged.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::engine::Interpretation;
use crate::exec::Exec;
use crate::frontend::{Expr, TypeExpr, TypedProgram};
use crate::herbrand::{GroundProgram, Universe};
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtRelation {
    pub ty: TypeExpr,
    pub depth_bound: usize,
    pub terms: Vec<Expr>,
    /// `related[i]` lists, in increasing order, the `j` with `terms[i] ≈ terms[j]`.
    related: Vec<Vec<usize>>,
    vacuous: BTreeSet<(usize, usize)>,
}

impl ExtRelation {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.related[i].binary_search(&j).is_ok()
    }

    pub fn index_of(&self, term: &Expr) -> Option<usize> {
        self.terms.iter().position(|t| t == term)
    }

    pub fn related_to(&self, i: usize) -> &[usize] {
        &self.related[i]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Expr, &Expr)> + '_ {
        self.index_pairs().map(|(i, j)| (&self.terms[i], &self.terms[j]))
    }

    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.related
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
    }

    /// Related only because no relating application lies within the bound.
    pub fn is_vacuous(&self, i: usize, j: usize) -> bool {
        self.vacuous.contains(&(i, j))
    }

    pub fn vacuous_pairs(&self) -> impl Iterator<Item = (&Expr, &Expr)> + '_ {
        self.vacuous.iter().map(|&(i, j)| (&self.terms[i], &self.terms[j]))
    }
}

/// Canonical name of `head` applied to `args`.
fn application(head: &str, args: &[&str]) -> String {
    let mut s = head.to_string();
    for a in args {
        let _ = write!(s, "({a})");
    }
    s
}

/// Computes and caches extensional relations for one valuation.
pub struct ExtContext<'a> {
    universe: &'a Universe,
    /// Values of the atoms inside the depth bound.
    atoms: HashMap<String, TruthValue>,
    exec: Exec,
    cache: HashMap<TypeExpr, Arc<ExtRelation>>,
}

impl<'a> ExtContext<'a> {
    pub fn new(universe: &'a Universe, g: &GroundProgram, val: &Interpretation, exec: Exec) -> Self {
        let atoms = universe
            .terms(&TypeExpr::Bool)
            .iter()
            .filter_map(|t| {
                let name = t.to_string();
                g.lookup(&name).map(|a| (name, val[a]))
            })
            .collect();
        ExtContext {
            universe,
            atoms,
            exec,
            cache: HashMap::new(),
        }
    }

    pub fn value(&self, atom: &str) -> Option<TruthValue> {
        self.atoms.get(atom).copied()
    }

    pub fn relation(&mut self, rho: &TypeExpr) -> Arc<ExtRelation> {
        if let Some(r) = self.cache.get(rho) {
            return r.clone();
        }
        let (arg_types, _) = rho.spine();
        let arg_rels: Vec<Arc<ExtRelation>> = arg_types.iter().map(|t| self.relation(t)).collect();
        let terms = self.universe.terms(rho).to_vec();
        let names: Vec<String> = terms.iter().map(Expr::to_string).collect();
        let n = terms.len();

        let (related, vacuous) = if *rho == TypeExpr::Iota {
            ((0..n).map(|i| vec![i]).collect(), BTreeSet::new())
        } else {
            // values[d][flat tuple index] for every tuple of argument terms
            let arg_names: Vec<Vec<String>> = arg_rels
                .iter()
                .map(|r| r.terms.iter().map(Expr::to_string).collect())
                .collect();
            let sizes: Vec<usize> = arg_rels.iter().map(|r| r.terms.len()).collect();
            let tuples: usize = sizes.iter().product();
            let values: Vec<Vec<Option<TruthValue>>> = self.exec.map(&names, |d| {
                (0..tuples)
                    .map(|flat| {
                        let args: Vec<&str> = unflatten(flat, &sizes)
                            .iter()
                            .zip(&arg_names)
                            .map(|(&i, ns)| ns[i].as_str())
                            .collect();
                        self.atoms.get(&application(d, &args)).copied()
                    })
                    .collect()
            });
            let pair_lists: Vec<Vec<(usize, usize)>> = arg_rels.iter().map(|r| r.index_pairs().collect()).collect();
            let rows: Vec<(Vec<usize>, Vec<usize>)> = self.exec.map_range(n, |i| {
                let mut related = Vec::new();
                let mut vacuous = Vec::new();
                for j in 0..n {
                    match compare_rows(&values[i], &values[j], &pair_lists, &sizes) {
                        Comparison::Differ(_) => {}
                        Comparison::Agree => related.push(j),
                        Comparison::Vacuous => {
                            related.push(j);
                            vacuous.push(j);
                        }
                    }
                }
                (related, vacuous)
            });
            let mut vac = BTreeSet::new();
            let related = rows
                .into_iter()
                .enumerate()
                .map(|(i, (rel, v))| {
                    vac.extend(v.into_iter().map(|j| (i, j)));
                    rel
                })
                .collect();
            (related, vac)
        };
        let rel = Arc::new(ExtRelation {
            ty: rho.clone(),
            depth_bound: self.universe.depth(),
            terms,
            related,
            vacuous,
        });
        self.cache.insert(rho.clone(), rel.clone());
        rel
    }

    /// First pair of differing atoms showing that `terms[i]` and `terms[j]`
    /// are not related at `rho`.
    fn witness(&mut self, rho: &TypeExpr, i: usize, j: usize) -> Option<(String, TruthValue, String, TruthValue)> {
        let rel = self.relation(rho);
        let (arg_types, _) = rho.spine();
        let arg_rels: Vec<Arc<ExtRelation>> = arg_types.iter().map(|t| self.relation(t)).collect();
        let pools: Vec<Vec<(usize, usize)>> = arg_rels.iter().map(|r| r.index_pairs().collect()).collect();
        let refs: Vec<&Vec<(usize, usize)>> = pools.iter().collect();
        let (d, d2) = (rel.terms[i].to_string(), rel.terms[j].to_string());
        if arg_types.is_empty() {
            let (v, v2) = (self.value(&d)?, self.value(&d2)?);
            return (v != v2).then_some((d, v, d2, v2));
        }
        let mut found = None;
        crate::herbrand::for_each_product(&refs, |tuple| {
            if found.is_some() {
                return;
            }
            let left: Vec<String> = tuple
                .iter()
                .zip(&arg_rels)
                .map(|(&(a, _), r)| r.terms[a].to_string())
                .collect();
            let right: Vec<String> = tuple
                .iter()
                .zip(&arg_rels)
                .map(|(&(_, b), r)| r.terms[b].to_string())
                .collect();
            let a1 = application(&d, &left.iter().map(String::as_str).collect::<Vec<_>>());
            let a2 = application(&d2, &right.iter().map(String::as_str).collect::<Vec<_>>());
            if let (Some(v1), Some(v2)) = (self.value(&a1), self.value(&a2)) {
                if v1 != v2 {
                    found = Some((a1, v1, a2, v2));
                }
            }
        });
        found
    }
}

fn unflatten(mut flat: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = flat % s;
        flat /= s;
    }
    out
}

fn flatten(idx: impl Iterator<Item = usize>, sizes: &[usize]) -> usize {
    idx.zip(sizes).fold(0, |acc, (i, &s)| acc * s + i)
}

enum Comparison {
    Agree,
    Vacuous,
    Differ(#[allow(dead_code)] usize),
}

fn compare_rows(
    left: &[Option<TruthValue>],
    right: &[Option<TruthValue>],
    pair_lists: &[Vec<(usize, usize)>],
    sizes: &[usize],
) -> Comparison {
    if pair_lists.is_empty() {
        // A term of type o is its own atom.
        return match (left.first().copied().flatten(), right.first().copied().flatten()) {
            (Some(a), Some(b)) if a != b => Comparison::Differ(0),
            (Some(_), Some(_)) => Comparison::Agree,
            _ => Comparison::Vacuous,
        };
    }
    let refs: Vec<&Vec<(usize, usize)>> = pair_lists.iter().collect();
    let mut defined = false;
    let mut differ = None;
    crate::herbrand::for_each_product(&refs, |tuple| {
        if differ.is_some() {
            return;
        }
        let l = flatten(tuple.iter().map(|p| p.0), sizes);
        let r = flatten(tuple.iter().map(|p| p.1), sizes);
        if let (Some(a), Some(b)) = (left[l], right[r]) {
            defined = true;
            if a != b {
                differ = Some(l);
            }
        }
    });
    match (differ, defined) {
        (Some(l), _) => Comparison::Differ(l),
        (None, true) => Comparison::Agree,
        (None, false) => Comparison::Vacuous,
    }
}

/// Extensional equality at argument type `rho` under the valuation `val`.
pub fn ext_relation(universe: &Universe, g: &GroundProgram, val: &Interpretation, rho: &TypeExpr) -> ExtRelation {
    ExtContext::new(universe, g, val, Exec::default())
        .relation(rho)
        .as_ref()
        .clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    /// `d ≈ d` fails: related arguments give different values.
    Reflexivity,
    /// `d ≈ d'` holds but swapping them inside an atom changes its value.
    Interchange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtViolation {
    pub kind: ViolationKind,
    #[serde(rename = "type")]
    pub ty: String,
    pub left: String,
    pub right: String,
    pub atom: String,
    pub value: TruthValue,
    pub other_atom: String,
    pub other_value: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VacuousPair {
    #[serde(rename = "type")]
    pub ty: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub extensional: bool,
    pub depth: usize,
    pub violations: Vec<ExtViolation>,
    pub vacuous: Vec<VacuousPair>,
}

impl ExtReport {
    /// Atoms named by any violation.
    pub fn witness_atoms(&self) -> BTreeSet<&str> {
        self.violations
            .iter()
            .flat_map(|v| [v.atom.as_str(), v.other_atom.as_str()])
            .collect()
    }
}

/// Argument types to check: the declared predicate types, the types of
/// their partial applications, and every argument type inside them.
fn checked_types(p: &TypedProgram) -> BTreeSet<TypeExpr> {
    fn visit(t: &TypeExpr, out: &mut BTreeSet<TypeExpr>) {
        if !out.insert(t.clone()) {
            return;
        }
        let (args, _) = t.spine();
        for a in args {
            visit(a, out);
        }
        if let TypeExpr::Arrow(_, r) = t {
            visit(r, out);
        }
    }
    let mut out = BTreeSet::new();
    out.insert(TypeExpr::Iota);
    for ty in p.predicates.values() {
        visit(ty, &mut out);
    }
    // Terms of type o are atoms; their reflexivity is trivial and their
    // relation is quadratic in the number of atoms, so only keep o when a
    // predicate takes it as an argument.
    let o_is_argument = p.predicates.values().any(|t| {
        t.suffixes()
            .iter()
            .any(|s| matches!(s, TypeExpr::Arrow(l, _) if **l == TypeExpr::Bool))
    });
    if !o_is_argument {
        out.remove(&TypeExpr::Bool);
    }
    out
}

/// Checks reflexivity of extensional equality at every argument type of
/// the program, and that related terms are interchangeable inside atoms,
/// all within the depth bound of `universe`.
pub fn check_extensional(
    p: &TypedProgram,
    universe: &Universe,
    g: &GroundProgram,
    val: &Interpretation,
    exec: Exec,
) -> ExtReport {
    let mut ctx = ExtContext::new(universe, g, val, exec);
    let mut violations = Vec::new();
    let mut vacuous = Vec::new();
    let types = checked_types(p);
    for ty in &types {
        let rel = ctx.relation(ty);
        for i in 0..rel.terms.len() {
            if !rel.contains(i, i) {
                if let Some((atom, value, other_atom, other_value)) = ctx.witness(ty, i, i) {
                    violations.push(ExtViolation {
                        kind: ViolationKind::Reflexivity,
                        ty: ty.to_string(),
                        left: rel.terms[i].to_string(),
                        right: rel.terms[i].to_string(),
                        atom,
                        value,
                        other_atom,
                        other_value,
                    });
                }
            }
        }
        vacuous.extend(rel.vacuous_pairs().map(|(l, r)| VacuousPair {
            ty: ty.to_string(),
            left: l.to_string(),
            right: r.to_string(),
        }));
    }

    // Interchange inside atoms: replace one spine argument by a related term.
    for atom in universe.terms(&TypeExpr::Bool) {
        let Some(value) = ctx.value(&atom.to_string()) else {
            continue;
        };
        let (head, args) = atom.spine();
        let head = head.to_string();
        let arg_names: Vec<String> = args.iter().map(|a| a.to_string()).collect();
        for (k, arg) in args.iter().enumerate() {
            if !types.contains(&arg.ty) {
                continue;
            }
            let rel = ctx.relation(&arg.ty);
            let Some(i) = rel.index_of(arg) else { continue };
            for &j in rel.related_to(i) {
                if j == i {
                    continue;
                }
                let mut swapped: Vec<&str> = arg_names.iter().map(String::as_str).collect();
                let other = rel.terms[j].to_string();
                swapped[k] = &other;
                let other_atom = application(&head, &swapped);
                if let Some(other_value) = ctx.value(&other_atom) {
                    if other_value != value {
                        violations.push(ExtViolation {
                            kind: ViolationKind::Interchange,
                            ty: arg.ty.to_string(),
                            left: arg.to_string(),
                            right: other,
                            atom: atom.to_string(),
                            value,
                            other_atom,
                            other_value,
                        });
                    }
                }
            }
        }
    }

    ExtReport {
        extensional: violations.is_empty(),
        depth: universe.depth(),
        violations,
        vacuous,
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::engine::evaluate;
    use crate::frontend::load;
    use crate::herbrand::GroundOptions;
    use crate::truth::TruthValue::{FalseAt as F, TrueAt as T};

    const IDENTITY: &str = "#pred q : i->o. #pred p : (i->o)->o. #pred id : (i->o)->i->o.\n\
                            q(a). q(b). p(Q) :- Q(a). id(R)(X) :- R(X).";
    const CHOICE: &str = "#pred p : i->o. #pred q : i->o. #pred r : (i->o)->o. #pred s : (i->o)->o.\n\
                             r(Q) :- ~s(Q). s(Q) :- ~r(Q). q(a). p(a).";

    fn io() -> TypeExpr {
        TypeExpr::arrow(TypeExpr::Iota, TypeExpr::Bool)
    }

    fn pair_names(rel: &ExtRelation) -> Vec<(String, String)> {
        rel.pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn identity_is_extensionally_transparent() {
        let ev = evaluate(&load(IDENTITY).unwrap(), GroundOptions::new(3)).unwrap();
        let rel = ext_relation(&ev.universe, &ev.ground, &ev.model.model, &io());
        let pairs = pair_names(&rel);
        assert!(pairs.contains(&("q".into(), "id(q)".into())));
        let iota = ext_relation(&ev.universe, &ev.ground, &ev.model.model, &TypeExpr::Iota);
        assert_eq!(pair_names(&iota), [("a".into(), "a".into()), ("b".into(), "b".into())]);
        let report = check_extensional(&ev.program, &ev.universe, &ev.ground, &ev.model.model, Exec::Sequential);
        assert!(report.extensional, "{report:?}");
    }

    fn stable_valuation(ev: &crate::engine::Evaluation, true_atoms: &[&str]) -> Interpretation {
        let values = ev
            .ground
            .atoms()
            .map(|a| {
                if true_atoms.contains(&ev.ground.atom_name(a)) {
                    T(0)
                } else {
                    F(0)
                }
            })
            .collect();
        Interpretation::from_values(values)
    }

    #[test]
    fn non_extensional_stable_model() {
        let ev = evaluate(&load(CHOICE).unwrap(), GroundOptions::new(2)).unwrap();
        let m = stable_valuation(&ev, &["p(a)", "q(a)", "s(p)", "r(q)"]);
        let rel = ext_relation(&ev.universe, &ev.ground, &m, &io());
        assert!(pair_names(&rel).contains(&("p".into(), "q".into())));
        let report = check_extensional(&ev.program, &ev.universe, &ev.ground, &m, Exec::Parallel);
        assert!(!report.extensional);
        let atoms = report.witness_atoms();
        assert!(atoms.contains("s(q)") && atoms.contains("r(p)"), "{atoms:?}");

        let m = stable_valuation(&ev, &["p(a)", "q(a)", "s(p)", "s(q)"]);
        assert!(check_extensional(&ev.program, &ev.universe, &ev.ground, &m, Exec::Sequential).extensional);
    }

    #[test]
    fn vacuous_pairs_are_flagged() {
        // At depth 2 `id(q)(a)` has three symbols, so `id(q)` has no defined application.
        let ev = evaluate(&load(IDENTITY).unwrap(), GroundOptions::new(2)).unwrap();
        let rel = ext_relation(&ev.universe, &ev.ground, &ev.model.model, &io());
        let i = rel.index_of(&Expr::pred("q", io())).unwrap();
        let j = rel.terms.iter().position(|t| t.to_string() == "id(q)").unwrap();
        assert!(rel.contains(i, j) && rel.is_vacuous(i, j));
        assert!(!rel.is_vacuous(i, i));
    }

    #[test]
    fn first_order_program_is_trivially_extensional() {
        let ev = evaluate(
            &load("#pred p : i->o. p(a). p(b) :- ~p(a).").unwrap(),
            GroundOptions::new(2),
        )
        .unwrap();
        let report = check_extensional(&ev.program, &ev.universe, &ev.ground, &ev.model.model, Exec::Sequential);
        assert!(report.extensional);
        assert!(report.vacuous.is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Random valuations of the choice program atoms give partial equivalences.
        #[test]
        fn relations_are_symmetric_and_transitive(bits in prop::collection::vec(0usize..7, 6)) {
            let ev = evaluate(&load(CHOICE).unwrap(), GroundOptions::new(2)).unwrap();
            let palette = [F(0), F(1), T(1), T(0), TruthValue::Zero, F(2), T(2)];
            let val = Interpretation::from_values(ev.ground.atoms().map(|a| palette[bits[a.index() % 6]]).collect());
            let mut ctx = ExtContext::new(&ev.universe, &ev.ground, &val, Exec::Sequential);
            for ty in [TypeExpr::Iota, io(), TypeExpr::arrow(io(), TypeExpr::Bool)] {
                let rel = ctx.relation(&ty);
                let n = rel.terms.len();
                for i in 0..n {
                    for j in 0..n {
                        prop_assert_eq!(rel.contains(i, j), rel.contains(j, i));
                        for k in 0..n {
                            if rel.contains(i, j) && rel.contains(j, k) {
                                prop_assert!(rel.contains(i, k));
                            }
                        }
                    }
                }
            }
        }
    }
}
