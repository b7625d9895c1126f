//! CNF formulas, assignments, incidence bigraphs and orderings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// 1-based variable identifier.
pub type VarId = u32;
/// 1-based clause identifier; clause ids follow input order.
pub type ClauseId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: VarId,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: VarId) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: VarId) -> Self {
        Literal { var, negated: true }
    }

    /// Signed DIMACS encoding. Zero is not a literal.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        if lit == 0 || lit.unsigned_abs() > u64::from(VarId::MAX) {
            return None;
        }
        Some(Literal {
            var: lit.unsigned_abs() as VarId,
            negated: lit < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -i64::from(self.var)
        } else {
            i64::from(self.var)
        }
    }

    /// Whether the literal is true when its variable takes `value`.
    #[inline]
    pub fn holds(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A clause: a set of literals over distinct variables, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    id: ClauseId,
    literals: Vec<Literal>,
    weight: u64,
}

impl Clause {
    pub fn id(&self) -> ClauseId {
        self.id
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.literals.iter().map(|l| l.var)
    }

    pub fn contains_var(&self, var: VarId) -> bool {
        self.literal_of(var).is_some()
    }

    pub fn literal_of(&self, var: VarId) -> Option<Literal> {
        self.literals
            .binary_search_by_key(&var, |l| l.var)
            .ok()
            .map(|i| self.literals[i])
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|l| l.holds(assignment.value(l.var)))
    }

    /// The same clause keeping only the literals whose variable passes `keep`.
    pub fn restricted(&self, keep: impl Fn(VarId) -> bool) -> Clause {
        Clause {
            id: self.id,
            literals: self.literals.iter().copied().filter(|l| keep(l.var)).collect(),
            weight: self.weight,
        }
    }
}

/// A CNF formula over variables `1..=num_vars` with clauses `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    /// Builds a formula from signed DIMACS-style literal lists.
    ///
    /// Duplicate literals are merged; a clause holding both polarities of a
    /// variable is rejected. Without `weights`, every clause weighs 1.
    pub fn build(num_vars: usize, clause_lits: &[Vec<i64>], weights: Option<&[u64]>) -> Result<Self> {
        if let Some(w) = weights {
            if w.len() != clause_lits.len() {
                return Err(Error::WeightCountMismatch {
                    expected: clause_lits.len(),
                    found: w.len(),
                });
            }
        }
        let mut clauses = Vec::with_capacity(clause_lits.len());
        for (idx, lits) in clause_lits.iter().enumerate() {
            let mut literals = Vec::with_capacity(lits.len());
            for &raw in lits {
                let lit = Literal::from_dimacs(raw)
                    .filter(|l| (l.var as usize) <= num_vars)
                    .ok_or(Error::OutOfRangeLiteral { var: raw, num_vars })?;
                literals.push(lit);
            }
            let weight = weights.map_or(1, |w| w[idx]);
            clauses.push((literals, weight));
        }
        Self::from_literals(num_vars, clauses)
    }

    /// Builds a formula from typed literals and weights; ids follow input order.
    pub fn from_literals(num_vars: usize, clauses: Vec<(Vec<Literal>, u64)>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (idx, (mut literals, weight)) in clauses.into_iter().enumerate() {
            let id = (idx + 1) as ClauseId;
            if let Some(l) = literals.iter().find(|l| l.var == 0 || l.var as usize > num_vars) {
                return Err(Error::OutOfRangeLiteral {
                    var: l.to_dimacs(),
                    num_vars,
                });
            }
            literals.sort_unstable();
            literals.dedup();
            if literals.windows(2).any(|w| w[0].var == w[1].var) {
                return Err(Error::TautologicalClause { clause: id });
            }
            out.push(Clause { id, literals, weight });
        }
        Ok(Formula {
            num_vars,
            clauses: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: ClauseId) -> Option<&Clause> {
        (id as usize).checked_sub(1).and_then(|i| self.clauses.get(i))
    }

    pub fn total_weight(&self) -> u64 {
        self.clauses.iter().map(|c| c.weight).sum()
    }

    pub fn num_incidences(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// For each variable (index `var - 1`), the ids of the clauses containing it.
    pub fn occurrences(&self) -> Vec<Vec<ClauseId>> {
        let mut occ = vec![Vec::new(); self.num_vars];
        for c in &self.clauses {
            for v in c.vars() {
                occ[v as usize - 1].push(c.id);
            }
        }
        occ
    }

    /// The ids of the clauses having at least one true literal under `assignment`.
    pub fn sat_set(&self, assignment: &Assignment) -> Result<BTreeSet<ClauseId>> {
        self.check_assignment(assignment)?;
        Ok(self
            .clauses
            .iter()
            .filter(|c| c.is_satisfied_by(assignment))
            .map(|c| c.id)
            .collect())
    }

    /// Total weight of the clauses satisfied by `assignment`.
    pub fn satisfied_weight(&self, assignment: &Assignment) -> Result<u64> {
        self.check_assignment(assignment)?;
        Ok(self
            .clauses
            .iter()
            .filter(|c| c.is_satisfied_by(assignment))
            .map(|c| c.weight)
            .sum())
    }

    pub fn is_model(&self, assignment: &Assignment) -> Result<bool> {
        self.check_assignment(assignment)?;
        Ok(self.clauses.iter().all(|c| c.is_satisfied_by(assignment)))
    }

    fn check_assignment(&self, assignment: &Assignment) -> Result<()> {
        if assignment.num_vars() != self.num_vars {
            return Err(Error::PartialAssignment {
                expected: self.num_vars,
                found: assignment.num_vars(),
            });
        }
        Ok(())
    }

    /// Incidence bigraph: one edge per (clause, variable) occurrence, polarity ignored.
    pub fn incidence_bigraph(&self) -> Bigraph {
        Bigraph {
            clause_vertices: self.clauses.iter().map(|c| c.id).collect(),
            var_vertices: (1..=self.num_vars as VarId).collect(),
            edges: self
                .clauses
                .iter()
                .flat_map(|c| c.vars().map(move |v| (c.id, v)))
                .collect(),
        }
    }
}

/// Total truth assignment; `values[v - 1]` is the value of variable `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(num_vars: usize) -> Self {
        Assignment {
            values: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn value(&self, var: VarId) -> bool {
        self.values[var as usize - 1]
    }

    pub fn set(&mut self, var: VarId, value: bool) {
        self.values[var as usize - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// The assignment as signed literals `1 -2 3 ...`.
    pub fn to_literals(&self) -> Vec<Literal> {
        (1..=self.values.len() as VarId)
            .map(|v| Literal {
                var: v,
                negated: !self.value(v),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    pub clause_vertices: Vec<ClauseId>,
    pub var_vertices: Vec<VarId>,
    pub edges: BTreeSet<(ClauseId, VarId)>,
}

impl Bigraph {
    pub fn clause_degree(&self, clause: ClauseId) -> usize {
        self.edges.range((clause, 0)..=(clause, VarId::MAX)).count()
    }
}

/// One element of a mixed ordering of variables and clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Var(VarId),
    Clause(ClauseId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Var(v) => write!(f, "x{v}"),
            Element::Clause(c) => write!(f, "c{c}"),
        }
    }
}

/// A total order over all variables and clauses of a formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedOrdering {
    seq: Vec<Element>,
}

/// Position lookup for a validated [`MixedOrdering`]; 0-based positions.
#[derive(Debug, Clone)]
pub struct Positions {
    var_pos: Vec<usize>,
    clause_pos: Vec<usize>,
}

impl Positions {
    #[inline]
    pub fn of_var(&self, var: VarId) -> usize {
        self.var_pos[var as usize - 1]
    }

    #[inline]
    pub fn of_clause(&self, clause: ClauseId) -> usize {
        self.clause_pos[clause as usize - 1]
    }

    pub fn of(&self, e: Element) -> usize {
        match e {
            Element::Var(v) => self.of_var(v),
            Element::Clause(c) => self.of_clause(c),
        }
    }
}

impl MixedOrdering {
    pub fn new(seq: Vec<Element>) -> Self {
        MixedOrdering { seq }
    }

    /// Variables `1..=n` followed by clauses `1..=m`.
    pub fn vars_then_clauses(formula: &Formula) -> Self {
        let vars = (1..=formula.num_vars() as VarId).map(Element::Var);
        let clauses = (1..=formula.num_clauses() as ClauseId).map(Element::Clause);
        MixedOrdering {
            seq: vars.chain(clauses).collect(),
        }
    }

    pub fn elements(&self) -> &[Element] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn into_elements(self) -> Vec<Element> {
        self.seq
    }

    /// Checks that every variable and clause of `formula` appears exactly once
    /// and returns the position lookup.
    pub fn positions(&self, formula: &Formula) -> Result<Positions> {
        let n = formula.num_vars();
        let m = formula.num_clauses();
        if self.seq.len() != n + m {
            return Err(Error::OrderingMismatch(format!(
                "ordering has {} elements, formula has {} variables and {} clauses",
                self.seq.len(),
                n,
                m
            )));
        }
        let mut var_pos = vec![usize::MAX; n];
        let mut clause_pos = vec![usize::MAX; m];
        for (p, e) in self.seq.iter().enumerate() {
            let (slot, limit) = match *e {
                Element::Var(v) => (&mut var_pos, v),
                Element::Clause(c) => (&mut clause_pos, c),
            };
            let idx = (limit as usize).wrapping_sub(1);
            match slot.get_mut(idx) {
                Some(s) if *s == usize::MAX => *s = p,
                Some(_) => return Err(Error::OrderingMismatch(format!("{e} appears twice"))),
                None => return Err(Error::OrderingMismatch(format!("{e} is not part of the formula"))),
            }
        }
        Ok(Positions { var_pos, clause_pos })
    }

    /// Splits the ordering into its variable and clause subsequences.
    pub fn side_orders(&self) -> SideOrders {
        let mut var_order = Vec::new();
        let mut clause_order = Vec::new();
        for e in &self.seq {
            match *e {
                Element::Var(v) => var_order.push(v),
                Element::Clause(c) => clause_order.push(c),
            }
        }
        SideOrders {
            var_order,
            clause_order,
        }
    }
}

impl fmt::Display for MixedOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.seq.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Separate total orders over the variables and over the clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideOrders {
    pub var_order: Vec<VarId>,
    pub clause_order: Vec<ClauseId>,
}

impl SideOrders {
    pub fn identity(formula: &Formula) -> Self {
        SideOrders {
            var_order: (1..=formula.num_vars() as VarId).collect(),
            clause_order: (1..=formula.num_clauses() as ClauseId).collect(),
        }
    }

    pub fn validate(&self, formula: &Formula) -> Result<()> {
        check_permutation(&self.var_order, formula.num_vars(), "variable")?;
        check_permutation(&self.clause_order, formula.num_clauses(), "clause")
    }

    /// `rank[v - 1]` is the 1-based index of variable `v` in `var_order`.
    pub fn var_ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.var_order.len()];
        for (i, &v) in self.var_order.iter().enumerate() {
            rank[v as usize - 1] = i + 1;
        }
        rank
    }

    /// `rank[c - 1]` is the 1-based index of clause `c` in `clause_order`.
    pub fn clause_ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.clause_order.len()];
        for (i, &c) in self.clause_order.iter().enumerate() {
            rank[c as usize - 1] = i + 1;
        }
        rank
    }

    /// Whether `ordering` interleaves exactly these two orders.
    pub fn is_merged_by(&self, ordering: &MixedOrdering) -> bool {
        ordering.side_orders() == *self
    }
}

fn check_permutation(order: &[u32], len: usize, what: &str) -> Result<()> {
    if order.len() != len {
        return Err(Error::InvalidSideOrders(format!(
            "{what} order has {} entries, expected {len}",
            order.len()
        )));
    }
    let mut seen = vec![false; len];
    for &id in order {
        match seen.get_mut((id as usize).wrapping_sub(1)) {
            Some(s) if !*s => *s = true,
            _ => {
                return Err(Error::InvalidSideOrders(format!(
                    "{what} order is not a permutation of 1..={len}"
                )))
            }
        }
    }
    Ok(())
}
