//! Checking interval and k-interval orderings, and finding merge obstructions.
//!
//! A mixed ordering is an *interval ordering* when, for every variable `x`
//! occurring in a clause `C`:
//!
//! 1. every variable strictly between `x` and a later `C` also occurs in `C`;
//! 2. every clause strictly between an earlier `C` and `x` also contains `x`.
//!
//! In k-interval form the same two conditions are read from the clause side:
//! a clause `C` *needs* a variable `x ∉ C` when some variable of `C` lies below
//! `x` below `C`, or when `x` occurs in a clause below `C` and lies above `C`.
//! The ordering has width `k` when no clause needs more than `k` variables.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::formula::{ClauseId, Element, Formula, MixedOrdering, Positions, SideOrders, VarId};

/// Which of the two ordering conditions a needed edge comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// A variable of the clause lies below the missing variable, which lies
    /// below the clause.
    LowerVariable,
    /// The missing variable lies above the clause and occurs in a clause below it.
    LowerClause,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::LowerVariable => "cond1",
            Condition::LowerClause => "cond2",
        })
    }
}

/// A clause that would need `var` added for the ordering to be interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub clause: ClauseId,
    pub var: VarId,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingVerdict {
    pub violation: Option<Violation>,
}

impl OrderingVerdict {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the two interval conditions pair by pair.
///
/// The reported violation is the first by position of the clause missing the
/// variable, then by position of the variable.
pub fn verify_interval_ordering(formula: &Formula, ordering: &MixedOrdering) -> Result<OrderingVerdict> {
    let pos = ordering.positions(formula)?;
    let seq = ordering.elements();
    let mut best: Option<(usize, usize, Violation)> = None;
    let mut consider = |clause: ClauseId, var: VarId, condition: Condition| {
        let key = (pos.of_clause(clause), pos.of_var(var));
        let better = match &best {
            None => true,
            Some((bc, bv, b)) => (key.0, key.1, condition) < (*bc, *bv, b.condition),
        };
        if better {
            best = Some((key.0, key.1, Violation { clause, var, condition }));
        }
    };
    for c in formula.clauses() {
        let pc = pos.of_clause(c.id());
        for x in c.vars() {
            let px = pos.of_var(x);
            if px < pc {
                for e in &seq[px + 1..pc] {
                    if let Element::Var(other) = *e {
                        if !c.contains_var(other) {
                            consider(c.id(), other, Condition::LowerVariable);
                        }
                    }
                }
            } else {
                for e in &seq[pc + 1..px] {
                    if let Element::Clause(other) = *e {
                        let holds = formula.clause(other).is_some_and(|o| o.contains_var(x));
                        if !holds {
                            consider(other, x, Condition::LowerClause);
                        }
                    }
                }
            }
        }
    }
    Ok(OrderingVerdict {
        violation: best.map(|(_, _, v)| v),
    })
}

/// The variables that clause `clause` needs added under `ordering`.
pub fn edges_needed(formula: &Formula, ordering: &MixedOrdering, clause: ClauseId) -> Result<BTreeSet<VarId>> {
    let pos = ordering.positions(formula)?;
    if formula.clause(clause).is_none() {
        return Err(Error::UnknownClause(clause));
    }
    let all = needed_by_position(formula, ordering, &pos);
    Ok(all[clause as usize - 1].iter().copied().collect())
}

/// Needed variables for every clause, indexed by `clause id - 1`, each sorted by id.
pub fn all_edges_needed(formula: &Formula, ordering: &MixedOrdering) -> Result<Vec<Vec<VarId>>> {
    let pos = ordering.positions(formula)?;
    Ok(needed_by_position(formula, ordering, &pos))
}

fn needed_by_position(formula: &Formula, ordering: &MixedOrdering, pos: &Positions) -> Vec<Vec<VarId>> {
    let n = formula.num_vars();
    let mut needed = vec![Vec::new(); formula.num_clauses()];
    // vars occurring in some clause already passed
    let mut seen_below = vec![false; n];
    let seq = ordering.elements();
    for (pc, e) in seq.iter().enumerate() {
        let Element::Clause(cid) = *e else { continue };
        let clause = &formula.clauses()[cid as usize - 1];
        let low = clause.vars().map(|v| pos.of_var(v)).min();
        let mut out = Vec::new();
        for (p, e) in seq.iter().enumerate() {
            let Element::Var(x) = *e else { continue };
            if clause.contains_var(x) {
                continue;
            }
            let lower_var = p < pc && low.is_some_and(|l| l < p);
            let lower_clause = p > pc && seen_below[x as usize - 1];
            if lower_var || lower_clause {
                out.push(x);
            }
        }
        out.sort_unstable();
        needed[cid as usize - 1] = out;
        for v in clause.vars() {
            seen_below[v as usize - 1] = true;
        }
    }
    needed
}

/// Largest number of needed variables over all clauses; zero exactly for
/// interval orderings.
pub fn ordering_width_k(formula: &Formula, ordering: &MixedOrdering) -> Result<usize> {
    Ok(all_edges_needed(formula, ordering)?
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0))
}

/// A pattern in the two side orders that rules out a 0-interval merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Obstruction {
    /// `x < z`, `a < c`, with `x ∈ c`, `z ∈ a`, `z ∉ c`.
    Left { x: VarId, z: VarId, a: ClauseId, c: ClauseId },
    /// `x < y < z`, `a < b < c`, with `z ∈ a`, `z ∉ b`, `x ∈ c`, `y ∉ c`.
    Right {
        x: VarId,
        y: VarId,
        z: VarId,
        a: ClauseId,
        b: ClauseId,
        c: ClauseId,
    },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Obstruction::Left { x, z, a, c } => write!(f, "left x=x{x} z=x{z} A=c{a} C=c{c}"),
            Obstruction::Right { x, y, z, a, b, c } => {
                write!(f, "right x=x{x} y=x{y} z=x{z} A=c{a} B=c{b} C=c{c}")
            }
        }
    }
}

/// Searches for a left pattern first, then a right pattern, scanning clauses
/// in side order.
pub fn find_obstruction(formula: &Formula, orders: &SideOrders) -> Result<Option<Obstruction>> {
    orders.validate(formula)?;
    let rank = orders.var_ranks();
    let by_rank = &orders.var_order;
    let clauses: Vec<&crate::formula::Clause> = orders
        .clause_order
        .iter()
        .map(|&c| &formula.clauses()[c as usize - 1])
        .collect();
    let rank_of = |v: VarId| rank[v as usize - 1];
    let lowest: Vec<Option<usize>> = clauses.iter().map(|c| c.vars().map(rank_of).min()).collect();
    // highest-ranked variable of `a` that is missing from `b`
    let top_missing = |a: usize, b: usize| -> Option<usize> {
        clauses[a]
            .vars()
            .filter(|&v| !clauses[b].contains_var(v))
            .map(rank_of)
            .max()
    };

    for ci in 0..clauses.len() {
        let Some(xr) = lowest[ci] else { continue };
        for ai in 0..ci {
            if let Some(zr) = top_missing(ai, ci) {
                if zr > xr {
                    return Ok(Some(Obstruction::Left {
                        x: by_rank[xr - 1],
                        z: by_rank[zr - 1],
                        a: clauses[ai].id(),
                        c: clauses[ci].id(),
                    }));
                }
            }
        }
    }

    // lowest rank above the clause's lowest variable that the clause misses
    let first_gap: Vec<Option<usize>> = clauses
        .iter()
        .zip(&lowest)
        .map(|(c, low)| {
            let low = (*low)?;
            (low + 1..=by_rank.len()).find(|&r| !c.contains_var(by_rank[r - 1]))
        })
        .collect();
    for bi in 0..clauses.len() {
        let mut best: Option<(usize, usize)> = None; // (z rank, a index)
        for ai in 0..bi {
            if let Some(zr) = top_missing(ai, bi) {
                if best.is_none_or(|(r, _)| zr > r) {
                    best = Some((zr, ai));
                }
            }
        }
        let Some((zr, ai)) = best else { continue };
        for ci in bi + 1..clauses.len() {
            let (Some(xr), Some(yr)) = (lowest[ci], first_gap[ci]) else { continue };
            if yr < zr {
                return Ok(Some(Obstruction::Right {
                    x: by_rank[xr - 1],
                    y: by_rank[yr - 1],
                    z: by_rank[zr - 1],
                    a: clauses[ai].id(),
                    b: clauses[bi].id(),
                    c: clauses[ci].id(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Element::{Clause as C, Var as X};

    fn f(n: usize, cls: &[&[i64]]) -> Formula {
        let cls: Vec<Vec<i64>> = cls.iter().map(|c| c.to_vec()).collect();
        Formula::build(n, &cls, None).unwrap()
    }

    fn ord(seq: &[Element]) -> MixedOrdering {
        MixedOrdering::new(seq.to_vec())
    }

    #[test]
    fn verify_examples() {
        let a = f(2, &[&[1, 2]]);
        assert!(verify_interval_ordering(&a, &ord(&[X(1), X(2), C(1)])).unwrap().ok());

        let b = f(2, &[&[1]]);
        let v = verify_interval_ordering(&b, &ord(&[X(1), X(2), C(1)])).unwrap();
        assert_eq!(
            v.violation,
            Some(Violation {
                clause: 1,
                var: 2,
                condition: Condition::LowerVariable
            })
        );

        let c = f(2, &[&[2], &[1]]);
        assert!(verify_interval_ordering(&c, &ord(&[X(2), C(1), X(1), C(2)])).unwrap().ok());
    }

    #[test]
    fn verify_reports_lower_clause_violation() {
        // c1 = (x1), c2 = (x2); c1 < c2 < x1 puts x1 in c1 but not c2
        let a = f(2, &[&[1], &[2]]);
        let v = verify_interval_ordering(&a, &ord(&[X(2), C(1), C(2), X(1)])).unwrap();
        assert_eq!(
            v.violation,
            Some(Violation {
                clause: 2,
                var: 1,
                condition: Condition::LowerClause
            })
        );
    }

    #[test]
    fn verify_rejects_mismatched_ordering() {
        let a = f(2, &[&[1, 2]]);
        assert!(matches!(
            verify_interval_ordering(&a, &ord(&[X(1), C(1)])),
            Err(Error::OrderingMismatch(_))
        ));
    }

    #[test]
    fn edges_needed_examples() {
        let a = f(2, &[&[1]]);
        let p = ord(&[X(1), X(2), C(1)]);
        assert_eq!(edges_needed(&a, &p, 1).unwrap().into_iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(ordering_width_k(&a, &p).unwrap(), 1);
        assert_eq!(edges_needed(&a, &p, 7), Err(Error::UnknownClause(7)));

        let b = f(2, &[&[2], &[1]]);
        assert!(edges_needed(&b, &ord(&[X(1), C(2), X(2), C(1)]), 2).unwrap().is_empty());
        let p = ord(&[X(1), X(2), C(1), C(2)]);
        assert_eq!(edges_needed(&b, &p, 2).unwrap().into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn empty_clause_needs_only_lower_clause_vars() {
        let a = Formula::build(2, &[vec![2], vec![]], None).unwrap();
        let p = ord(&[X(1), C(1), C(2), X(2)]);
        assert_eq!(all_edges_needed(&a, &p).unwrap(), vec![vec![], vec![2]]);
    }

    #[test]
    fn width_zero_without_clauses() {
        let a = f(3, &[]);
        assert_eq!(ordering_width_k(&a, &MixedOrdering::vars_then_clauses(&a)).unwrap(), 0);
    }

    #[test]
    fn obstruction_examples() {
        let a = f(2, &[&[2], &[1]]);
        let o = find_obstruction(&a, &SideOrders::identity(&a)).unwrap();
        assert_eq!(o, Some(Obstruction::Left { x: 1, z: 2, a: 1, c: 2 }));

        let b = f(2, &[&[1, 2]]);
        assert_eq!(find_obstruction(&b, &SideOrders::identity(&b)).unwrap(), None);
        let rev = SideOrders {
            var_order: vec![2, 1],
            clause_order: vec![1],
        };
        assert_eq!(find_obstruction(&b, &rev).unwrap(), None);
    }

    #[test]
    fn right_obstruction_detected() {
        // A=(x3) B=(x4) C=(x1,x3,x4): no left pattern, right pattern with y=x2
        let a = f(4, &[&[3], &[4], &[1, 3, 4]]);
        let o = find_obstruction(&a, &SideOrders::identity(&a)).unwrap();
        assert_eq!(
            o,
            Some(Obstruction::Right {
                x: 1,
                y: 2,
                z: 3,
                a: 1,
                b: 2,
                c: 3
            })
        );
    }
}
