//! Merging a variable order and a clause order into a minimum-width
//! k-interval ordering.
//!
//! Clauses are placed from the last one down. Each goes into the highest slot
//! among the variables, below its successor, where it needs at most `q` added
//! variables. Where a clause sits only changes its own count, so the greedy
//! placement is optimal for a fixed `q`. The minimum `q` is found by testing
//! 0, galloping over powers of two and bisecting the last doubling step.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{ClauseId, Element, Formula, MixedOrdering, SideOrders};

/// Number of variables a clause needs when inserted right after the variable
/// of rank `t`.
///
/// `livevar` counts variables ranked above `t` that occur in a clause not yet
/// placed (the clause itself included); `low` is the lowest variable rank in
/// the clause and `size` its number of variables.
///
/// Variables above `t` needing an edge are the live ones outside the clause;
/// variables below need one when they sit strictly between `low` and the
/// clause without belonging to it.
pub fn edges_added_scan(livevar: usize, t: usize, low: usize, size: usize) -> Result<i64> {
    if size == 0 {
        return Err(Error::EmptyClause);
    }
    let below = (t + 1).saturating_sub(low);
    Ok((livevar + below) as i64 - size as i64)
}

/// Scan bookkeeping for one pass at a fixed `q`.
#[derive(Debug, Clone)]
pub struct MergeScanState {
    t: usize,
    // indexed by variable rank, slot 0 unused
    live: Vec<u32>,
    livevar: usize,
}

impl MergeScanState {
    /// `ranked_clauses` yields each clause's variable ranks.
    pub fn new<'a>(num_vars: usize, ranked_clauses: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut live = vec![0; num_vars + 1];
        for c in ranked_clauses {
            for &r in c {
                live[r as usize] += 1;
            }
        }
        MergeScanState {
            t: num_vars,
            live,
            livevar: 0,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn livevar(&self) -> usize {
        self.livevar
    }

    /// Number of unplaced clauses containing the variable of rank `rank`.
    pub fn live(&self, rank: usize) -> usize {
        self.live[rank] as usize
    }

    pub fn edges_added(&self, low: usize, size: usize) -> Result<i64> {
        edges_added_scan(self.livevar, self.t, low, size)
    }

    /// Moves the insertion point one variable down. Returns false at the bottom.
    pub fn step_down(&mut self) -> bool {
        if self.t == 0 {
            return false;
        }
        if self.live[self.t] > 0 {
            self.livevar += 1;
        }
        self.t -= 1;
        true
    }

    /// Marks a clause with the given variable ranks as placed.
    pub fn place(&mut self, ranks: &[u32]) {
        for &r in ranks {
            let r = r as usize;
            self.live[r] -= 1;
            if self.live[r] == 0 && r > self.t {
                self.livevar -= 1;
            }
        }
    }
}

/// Where one clause went during a successful scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Insertion {
    pub clause: ClauseId,
    /// Rank of the variable the clause follows; 0 means before all variables.
    pub after_rank: usize,
    pub edges_added: usize,
}

/// A successful fixed-`q` scan: the ordering plus insertion records, listed in
/// scan order (last clause first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeTrace {
    pub ordering: MixedOrdering,
    pub insertions: Vec<Insertion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeResult {
    pub k: usize,
    pub ordering: MixedOrdering,
    pub insertions: Vec<Insertion>,
}

// Variable ranks of every clause, flattened in clause order.
struct Prepared {
    ranks: Vec<u32>,
    bounds: Vec<usize>,
}

impl Prepared {
    fn clause(&self, i: usize) -> &[u32] {
        &self.ranks[self.bounds[i]..self.bounds[i + 1]]
    }

    fn clauses(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.bounds.len() - 1).map(|i| self.clause(i))
    }
}

fn prepare(formula: &Formula, orders: &SideOrders) -> Result<Prepared> {
    orders.validate(formula)?;
    if let Some(c) = formula.clauses().iter().find(|c| c.is_empty()) {
        return Err(Error::EmptyClauseInMerge(c.id()));
    }
    let rank = orders.var_ranks();
    let clause_rank = orders.clause_ranks();
    // clauses are read in id order and written to their place in clause order
    let mut bounds = vec![0; formula.num_clauses() + 1];
    for c in formula.clauses() {
        bounds[clause_rank[c.id() as usize - 1]] = c.len();
    }
    for i in 1..bounds.len() {
        bounds[i] += bounds[i - 1];
    }
    let mut ranks = vec![0; formula.num_incidences()];
    for c in formula.clauses() {
        let at = bounds[clause_rank[c.id() as usize - 1] - 1];
        for (slot, v) in ranks[at..at + c.len()].iter_mut().zip(c.vars()) {
            *slot = rank[v as usize - 1] as u32;
        }
    }
    Ok(Prepared { ranks, bounds })
}

fn scan(orders: &SideOrders, prep: &Prepared, q: usize) -> Option<MergeTrace> {
    let n = orders.var_order.len();
    let m = orders.clause_order.len();
    let mut state = MergeScanState::new(n, prep.clauses());
    let mut insertions = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let ranks = prep.clause(i);
        let low = ranks.iter().copied().min().unwrap_or(0) as usize;
        loop {
            let cost = state.edges_added(low, ranks.len()).ok()?;
            if cost <= q as i64 {
                insertions.push(Insertion {
                    clause: orders.clause_order[i],
                    after_rank: state.t(),
                    edges_added: cost as usize,
                });
                state.place(ranks);
                break;
            }
            if !state.step_down() {
                return None;
            }
        }
    }
    // insertions run down the variable ranks, so reversing them lists the
    // clauses in output order
    let mut seq = Vec::with_capacity(n + m);
    let mut next = insertions.iter().rev().peekable();
    for t in 0..=n {
        if t > 0 {
            seq.push(Element::Var(orders.var_order[t - 1]));
        }
        while let Some(ins) = next.next_if(|ins| ins.after_rank == t) {
            seq.push(Element::Clause(ins.clause));
        }
    }
    Some(MergeTrace {
        ordering: MixedOrdering::new(seq),
        insertions,
    })
}

/// Fixed-`q` scan with insertion records; `None` when no merge of width `q` exists.
pub fn merge_scan(formula: &Formula, orders: &SideOrders, q: usize) -> Result<Option<MergeTrace>> {
    let prep = prepare(formula, orders)?;
    Ok(scan(orders, &prep, q))
}

/// The greedy ordering of width at most `q`, if one exists.
pub fn feasible_merge(formula: &Formula, orders: &SideOrders, q: usize) -> Result<Option<MixedOrdering>> {
    Ok(merge_scan(formula, orders, q)?.map(|t| t.ordering))
}

/// Minimum width over all merges of `orders`, with a witness ordering.
pub fn min_merge_k(formula: &Formula, orders: &SideOrders) -> Result<MergeResult> {
    let prep = prepare(formula, orders)?;
    let done = |q: usize, t: MergeTrace| MergeResult {
        k: q,
        ordering: t.ordering,
        insertions: t.insertions,
    };
    if let Some(t) = scan(orders, &prep, 0) {
        return Ok(done(0, t));
    }
    // placing every clause right after the top variable costs at most n - 1
    let ceiling = formula.num_vars().saturating_sub(1).max(1);
    let mut fail = 0;
    let mut q = 1;
    let mut found = loop {
        if let Some(t) = scan(orders, &prep, q) {
            break (q, t);
        }
        assert!(q < ceiling, "a merge of width n - 1 always exists");
        fail = q;
        q = (q * 2).min(ceiling);
    };
    // invariant: fail infeasible, found.0 feasible
    while found.0 - fail > 1 {
        let mid = fail + (found.0 - fail) / 2;
        match scan(orders, &prep, mid) {
            Some(t) => found = (mid, t),
            None => fail = mid,
        }
    }
    Ok(done(found.0, found.1))
}
