use std::ops::{Index, IndexMut};

use crate::herbrand::AtomId;
use crate::truth::{OrdinalIndex, TruthValue};

/// A total assignment of truth values to the atoms of a ground program.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interpretation {
    values: Vec<TruthValue>,
}

impl Interpretation {
    /// The interpretation assigning `F0` to every atom.
    pub fn bottom(n: usize) -> Self {
        Interpretation {
            values: vec![TruthValue::F0; n],
        }
    }

    pub fn from_values(values: Vec<TruthValue>) -> Self {
        Interpretation { values }
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl Index<AtomId> for Interpretation {
    type Output = TruthValue;

    fn index(&self, a: AtomId) -> &TruthValue {
        &self.values[a.index()]
    }
}

impl IndexMut<AtomId> for Interpretation {
    fn index_mut(&mut self, a: AtomId) -> &mut TruthValue {
        &mut self.values[a.index()]
    }
}

/// How two interpretations relate at level `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaRelation {
    /// `I =_α J`.
    Equal,
    /// `I ⊏_α J`: agreement below `α`, fewer `T_α` atoms and more `F_α` atoms.
    Below,
    /// `J ⊏_α I`.
    Above,
    Incomparable,
}

impl AlphaRelation {
    /// `I ⊑_α J`.
    pub fn is_below_or_equal(self) -> bool {
        matches!(self, AlphaRelation::Equal | AlphaRelation::Below)
    }
}

fn order_below(v: TruthValue, alpha: u32) -> bool {
    matches!(v.order(), OrdinalIndex::Finite(n) if n < alpha)
}

pub fn compare_alpha(i: &Interpretation, j: &Interpretation, alpha: u32) -> AlphaRelation {
    assert_eq!(i.len(), j.len(), "interpretations over different atom sets");
    let pairs = || i.values.iter().zip(&j.values);
    let agree_below = pairs().all(|(&a, &b)| !(order_below(a, alpha) || order_below(b, alpha)) || a == b);
    if !agree_below {
        return AlphaRelation::Incomparable;
    }
    let t = TruthValue::TrueAt(alpha);
    let f = TruthValue::FalseAt(alpha);
    // T_α(x) ⊆ T_α(y) and F_α(x) ⊇ F_α(y)
    let below = |x: &Interpretation, y: &Interpretation| {
        x.values
            .iter()
            .zip(&y.values)
            .all(|(&a, &b)| (a != t || b == t) && (b != f || a == f))
    };
    match (below(i, j), below(j, i)) {
        (true, true) => AlphaRelation::Equal,
        (true, false) => AlphaRelation::Below,
        (false, true) => AlphaRelation::Above,
        (false, false) => AlphaRelation::Incomparable,
    }
}

/// `I ⊑ J`: equal, or strictly below at some level `α`.
pub fn model_leq(i: &Interpretation, j: &Interpretation) -> bool {
    if i == j {
        return true;
    }
    // Only the first level at which the two differ can witness `⊏_α`.
    let first_diff = i
        .values
        .iter()
        .zip(&j.values)
        .filter(|(a, b)| a != b)
        .filter_map(|(a, b)| a.order().min(b.order()).finite())
        .min();
    match first_diff {
        Some(alpha) => compare_alpha(i, j, alpha) == AlphaRelation::Below,
        None => false,
    }
}
