use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::frontend::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GLiteral {
    Pos(AtomId),
    Neg(AtomId),
    TrueConst,
    FalseConst,
}

/// Records which source clause and which variable bindings produced a ground clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub clause: usize,
    /// One term per clause variable, aligned with `Clause::vars`.
    pub bindings: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundClause {
    pub head: AtomId,
    pub body: Vec<GLiteral>,
    pub origin: Option<Origin>,
}

impl GroundClause {
    pub fn positive(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.body.iter().filter_map(|l| match l {
            GLiteral::Pos(a) => Some(*a),
            _ => None,
        })
    }

    pub fn negative(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.body.iter().filter_map(|l| match l {
            GLiteral::Neg(a) => Some(*a),
            _ => None,
        })
    }

    pub fn has_negation(&self) -> bool {
        self.negative().next().is_some()
    }
}

/// A finite propositional program over interned ground atoms.
#[derive(Debug, Clone, Default)]
pub struct GroundProgram {
    names: Vec<String>,
    terms: Vec<Option<Expr>>,
    index: HashMap<String, AtomId>,
    clauses: Vec<GroundClause>,
    seen: HashSet<(AtomId, Vec<GLiteral>)>,
}

impl GroundProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = AtomId(u32::try_from(self.names.len()).expect("atom table overflow"));
        self.names.push(name.to_string());
        self.terms.push(None);
        self.index.insert(name.to_string(), id);
        id
    }

    /// Interns a ground term of type `o`, remembering its structure.
    pub fn intern_term(&mut self, term: &Expr) -> AtomId {
        let id = self.intern(&term.to_string());
        if self.terms[id.index()].is_none() {
            self.terms[id.index()] = Some(term.clone());
        }
        id
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn atom_name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    pub fn atom_term(&self, id: AtomId) -> Option<&Expr> {
        self.terms[id.index()].as_ref()
    }

    pub fn atom_count(&self) -> usize {
        self.names.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> {
        (0..self.names.len() as u32).map(AtomId)
    }

    pub fn clauses(&self) -> &[GroundClause] {
        &self.clauses
    }

    /// Adds a clause unless an identical one is already present. Returns
    /// whether it was added.
    pub fn add_clause(&mut self, head: AtomId, body: Vec<GLiteral>, origin: Option<Origin>) -> bool {
        if !self.seen.insert((head, body.clone())) {
            return false;
        }
        self.clauses.push(GroundClause { head, body, origin });
        true
    }

    /// Convenience for building propositional programs by atom name.
    pub fn add_rule(&mut self, head: &str, pos: &[&str], neg: &[&str]) {
        let head = self.intern(head);
        let mut body: Vec<GLiteral> = pos.iter().map(|a| GLiteral::Pos(self.intern(a))).collect();
        body.extend(neg.iter().map(|a| GLiteral::Neg(self.intern(a))));
        self.add_clause(head, body, None);
    }

    pub fn has_negation(&self) -> bool {
        self.clauses.iter().any(GroundClause::has_negation)
    }

    /// Clause indices grouped by head atom.
    pub fn clauses_by_head(&self) -> Vec<Vec<usize>> {
        let mut by_head = vec![Vec::new(); self.atom_count()];
        for (i, c) in self.clauses.iter().enumerate() {
            by_head[c.head.index()].push(i);
        }
        by_head
    }

    /// Same atoms, different clauses.
    pub fn with_clauses(&self, clauses: Vec<GroundClause>) -> GroundProgram {
        let seen = clauses.iter().map(|c| (c.head, c.body.clone())).collect();
        GroundProgram {
            names: self.names.clone(),
            terms: self.terms.clone(),
            index: self.index.clone(),
            clauses,
            seen,
        }
    }

    pub fn clause_text(&self, c: &GroundClause) -> String {
        let mut s = self.atom_name(c.head).to_string();
        if !c.body.is_empty() {
            s.push_str(":-");
            for (i, lit) in c.body.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                match lit {
                    GLiteral::Pos(a) => s.push_str(self.atom_name(*a)),
                    GLiteral::Neg(a) => {
                        s.push('~');
                        s.push_str(self.atom_name(*a));
                    }
                    GLiteral::TrueConst => s.push_str("true"),
                    GLiteral::FalseConst => s.push_str("false"),
                }
            }
        }
        s.push('.');
        s
    }

    pub fn to_json(&self) -> GroundProgramJson {
        GroundProgramJson {
            atoms: self.names.clone(),
            clauses: self
                .clauses
                .iter()
                .map(|c| ClauseJson {
                    head: c.head,
                    pos: c.positive().collect(),
                    neg: c.negative().collect(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{}", self.clause_text(c))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseJson {
    pub head: AtomId,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
}

/// JSON form of a ground program: atom names plus clauses referring to them by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundProgramJson {
    pub atoms: Vec<String>,
    pub clauses: Vec<ClauseJson>,
}

impl From<&GroundProgramJson> for GroundProgram {
    fn from(j: &GroundProgramJson) -> Self {
        let mut g = GroundProgram::new();
        for a in &j.atoms {
            g.intern(a);
        }
        for c in &j.clauses {
            let mut body: Vec<GLiteral> = c.pos.iter().map(|&a| GLiteral::Pos(a)).collect();
            body.extend(c.neg.iter().map(|&a| GLiteral::Neg(a)));
            g.add_clause(c.head, body, None);
        }
        g
    }
}
