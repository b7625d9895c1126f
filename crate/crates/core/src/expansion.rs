//! Turning a k-interval ordering into an interval one by clause expansion.
//!
//! A clause `C` that needs the variables `D` is replaced by the `2^|D|`
//! clauses `C ∨ s(D)`, one per sign pattern `s` over `D`. An assignment
//! falsifies exactly one of them iff it falsifies `C`, so the model set is
//! unchanged, and the expanded clauses contain everything they needed.
//!
//! Weights are copied to every expanded clause for traceability only: the
//! weighted optimum of the expansion is not the optimum of the original.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{Clause, ClauseId, Element, Formula, Literal, MixedOrdering, VarId};
use crate::ordering::all_edges_needed;

/// Largest number of extra variables a single clause may be expanded over.
pub const MAX_EXTRAS: usize = 20;

/// The expansion of one clause, as `(literals, weight)` pairs in sign-pattern
/// order: extras ascending by id, the first one most significant, negative
/// before positive.
pub fn expand_clause(clause: &Clause, extras: &[VarId]) -> Result<Vec<(Vec<Literal>, u64)>> {
    let mut extras = extras.to_vec();
    extras.sort_unstable();
    extras.dedup();
    if let Some(&v) = extras.iter().find(|&&v| clause.contains_var(v)) {
        return Err(Error::OverlapError(v));
    }
    if extras.len() > MAX_EXTRAS {
        return Err(Error::TooManyVariables {
            count: extras.len(),
            cap: MAX_EXTRAS,
        });
    }
    let l = extras.len();
    Ok((0..1usize << l)
        .map(|pattern| {
            let mut lits = clause.literals().to_vec();
            lits.extend(extras.iter().enumerate().map(|(j, &var)| Literal {
                var,
                negated: (pattern >> (l - 1 - j)) & 1 == 0,
            }));
            lits.sort_unstable();
            (lits, clause.weight())
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub formula: Formula,
    pub ordering: MixedOrdering,
    /// `parents[c - 1]` lists the expanded clause ids replacing original clause `c`.
    pub parents: Vec<Vec<ClauseId>>,
}

/// Expands every clause over its needed variables under `ordering`.
///
/// New clause ids run over the original clauses in id order; each original
/// clause's slot in the ordering is replaced by its block.
pub fn expand_to_interval(formula: &Formula, ordering: &MixedOrdering) -> Result<Expansion> {
    let needed = all_edges_needed(formula, ordering)?;
    let mut clauses = Vec::new();
    let mut parents = Vec::with_capacity(formula.num_clauses());
    for (c, extras) in formula.clauses().iter().zip(&needed) {
        let block = expand_clause(c, extras)?;
        let first = clauses.len() as ClauseId + 1;
        parents.push((first..first + block.len() as ClauseId).collect::<Vec<_>>());
        clauses.extend(block);
    }
    let expanded = Formula::from_literals(formula.num_vars(), clauses)?;
    let mut seq = Vec::with_capacity(formula.num_vars() + expanded.num_clauses());
    for &e in ordering.elements() {
        match e {
            Element::Var(_) => seq.push(e),
            Element::Clause(c) => seq.extend(parents[c as usize - 1].iter().map(|&id| Element::Clause(id))),
        }
    }
    Ok(Expansion {
        formula: expanded,
        ordering: MixedOrdering::new(seq),
        parents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Element::{Clause as C, Var as X};
    use crate::ordering::verify_interval_ordering;

    fn f(n: usize, cls: &[&[i64]]) -> Formula {
        let cls: Vec<Vec<i64>> = cls.iter().map(|c| c.to_vec()).collect();
        Formula::build(n, &cls, None).unwrap()
    }

    fn dimacs(block: &[(Vec<Literal>, u64)]) -> Vec<Vec<i64>> {
        block
            .iter()
            .map(|(l, _)| l.iter().map(|x| x.to_dimacs()).collect())
            .collect()
    }

    #[test]
    fn expand_clause_examples() {
        let a = f(3, &[&[1, -2]]);
        let c = &a.clauses()[0];
        assert_eq!(dimacs(&expand_clause(c, &[3]).unwrap()), vec![vec![1, -2, -3], vec![1, -2, 3]]);
        assert_eq!(dimacs(&expand_clause(c, &[]).unwrap()), vec![vec![1, -2]]);
        assert_eq!(expand_clause(c, &[2]), Err(Error::OverlapError(2)));

        let b = f(3, &[&[1]]);
        assert_eq!(
            dimacs(&expand_clause(&b.clauses()[0], &[3, 2]).unwrap()),
            vec![vec![1, -2, -3], vec![1, -2, 3], vec![1, 2, -3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn expand_single_clause_formula() {
        let a = f(2, &[&[1]]);
        let p = MixedOrdering::new(vec![X(1), X(2), C(1)]);
        let e = expand_to_interval(&a, &p).unwrap();
        assert_eq!(e.formula.num_clauses(), 2);
        assert_eq!(e.ordering.elements(), &[X(1), X(2), C(1), C(2)]);
        assert_eq!(e.parents, vec![vec![1, 2]]);
        assert!(verify_interval_ordering(&e.formula, &e.ordering).unwrap().ok());
    }

    #[test]
    fn interval_input_is_unchanged() {
        let a = f(2, &[&[1, 2], &[2]]);
        let p = MixedOrdering::new(vec![X(1), X(2), C(1), C(2)]);
        let e = expand_to_interval(&a, &p).unwrap();
        assert_eq!(e.formula, a);
        assert_eq!(e.ordering, p);
    }
}
