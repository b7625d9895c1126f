//! Cut formulas, ps-values and exact #SAT / weighted MaxSAT over a mixed
//! ordering.
//!
//! For a cut after position `i`, the prefix fragment keeps the clauses of the
//! prefix restricted to suffix variables and the suffix fragment keeps the
//! clauses of the suffix restricted to prefix variables. The ps-value of a
//! fragment is the number of distinct sets of its clauses that some
//! assignment satisfies; the ps-width of an ordering is the largest ps-value
//! over all its cut fragments.
//!
//! The solver sweeps the ordering once, keeping a map from states to
//! aggregates. A state is a pair `(open, presat)`: prefix clauses still
//! unsatisfied but with variables left in the suffix, and suffix clauses
//! already satisfied by prefix variables. The `presat` sets seen at a cut are
//! always sat-sets of the suffix fragment, so their number never exceeds its
//! ps-value. The number of distinct `open` sets has no such bound.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bitset::ClauseSet;
use crate::error::{Error, Result};
use crate::formula::{Assignment, Clause, ClauseId, Element, Formula, MixedOrdering, Positions, VarId};

/// Default limit on the number of variables a ps-value enumeration may range over.
pub const DEFAULT_PS_CAP: usize = 24;

/// Clauses restricted to the variables across a cut; ids are the originals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Fragment {
    pub clauses: Vec<Clause>,
}

impl Fragment {
    pub fn vars(&self) -> Vec<VarId> {
        let set: BTreeSet<VarId> = self.clauses.iter().flat_map(Clause::vars).collect();
        set.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFormulas {
    pub index: usize,
    /// Prefix clauses over suffix variables.
    pub prefix: Fragment,
    /// Suffix clauses over prefix variables.
    pub suffix: Fragment,
}

/// The two fragments crossing the cut after the first `index` elements.
pub fn cut_formulas(formula: &Formula, ordering: &MixedOrdering, index: usize) -> Result<CutFormulas> {
    let pos = ordering.positions(formula)?;
    let len = ordering.len();
    if index > len {
        return Err(Error::CutOutOfRange { index, len });
    }
    Ok(cut_with(formula, &pos, index))
}

fn cut_with(formula: &Formula, pos: &Positions, index: usize) -> CutFormulas {
    let mut prefix = Fragment::default();
    let mut suffix = Fragment::default();
    for c in formula.clauses() {
        if pos.of_clause(c.id()) < index {
            prefix.clauses.push(c.restricted(|v| pos.of_var(v) >= index));
        } else {
            suffix.clauses.push(c.restricted(|v| pos.of_var(v) < index));
        }
    }
    CutFormulas { index, prefix, suffix }
}

/// All projection-satisfiable clause sets of a fragment, each as sorted ids.
pub fn ps_sets(fragment: &Fragment, cap: usize) -> Result<BTreeSet<Vec<ClauseId>>> {
    let vars = fragment.vars();
    if vars.len() > cap || vars.len() >= 64 {
        return Err(Error::TooManyVariables {
            count: vars.len(),
            cap: cap.min(63),
        });
    }
    let bit = |v: VarId| 1u64 << vars.binary_search(&v).unwrap_or_default();
    let masks: Vec<(u64, u64)> = fragment
        .clauses
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(pos, neg), l| {
                if l.negated {
                    (pos, neg | bit(l.var))
                } else {
                    (pos | bit(l.var), neg)
                }
            })
        })
        .collect();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let words = fragment.clauses.len().div_ceil(64);
    for assignment in 0..1u64 << vars.len() {
        let mut set = vec![0u64; words];
        for (i, &(pos, neg)) in masks.iter().enumerate() {
            if assignment & pos != 0 || !assignment & neg != 0 {
                set[i / 64] |= 1 << (i % 64);
            }
        }
        seen.insert(set);
    }
    Ok(seen
        .into_iter()
        .map(|set| {
            fragment
                .clauses
                .iter()
                .enumerate()
                .filter(|(i, _)| set[i / 64] >> (i % 64) & 1 == 1)
                .map(|(_, c)| c.id())
                .collect()
        })
        .collect())
}

/// Number of distinct sat-sets of a fragment, by enumeration.
pub fn ps_value(fragment: &Fragment, cap: usize) -> Result<usize> {
    Ok(ps_sets(fragment, cap)?.len())
}

/// Largest ps-value over both fragments of every cut `1..=n+m`; 1 for an
/// empty ordering.
pub fn ps_width(formula: &Formula, ordering: &MixedOrdering, cap: usize) -> Result<usize> {
    let pos = ordering.positions(formula)?;
    let mut width = 1;
    for i in 1..=ordering.len() {
        let cut = cut_with(formula, &pos, i);
        width = width.max(ps_value(&cut.prefix, cap)?).max(ps_value(&cut.suffix, cap)?);
    }
    Ok(width)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct State {
    open: ClauseSet,
    presat: ClauseSet,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Count,
    MaxSat,
}

/// Per-cut sweep measurements; entry `i - 1` describes the cut after element `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub live_states: Vec<usize>,
    /// Distinct presat sets per cut, recorded on request.
    pub presat_sets: Option<Vec<BTreeSet<Vec<ClauseId>>>>,
}

impl SweepStats {
    pub fn max_live_states(&self) -> usize {
        self.live_states.iter().copied().max().unwrap_or(1)
    }

    fn record(&mut self, states: impl ExactSizeIterator<Item = State> + Clone) {
        self.live_states.push(states.len());
        if let Some(sets) = &mut self.presat_sets {
            sets.push(states.map(|s| s.presat.iter().collect()).collect());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOutcome {
    pub count: BigUint,
    pub stats: SweepStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSatOutcome {
    pub weight: u64,
    pub witness: Assignment,
    pub stats: SweepStats,
}

struct Occurrence {
    clause: ClauseId,
    negated: bool,
    clause_pos: usize,
}

struct Sweep<'a> {
    formula: &'a Formula,
    mode: Mode,
    // position of each clause's last variable
    last_var: Vec<Option<usize>>,
    occ: Vec<Vec<Occurrence>>,
}

impl<'a> Sweep<'a> {
    fn new(formula: &'a Formula, ordering: &MixedOrdering, mode: Mode) -> Result<Self> {
        let pos = ordering.positions(formula)?;
        let mut occ: Vec<Vec<Occurrence>> = (0..formula.num_vars()).map(|_| Vec::new()).collect();
        let mut last_var = Vec::with_capacity(formula.num_clauses());
        for c in formula.clauses() {
            last_var.push(c.vars().map(|v| pos.of_var(v)).max());
            for l in c.literals() {
                occ[l.var as usize - 1].push(Occurrence {
                    clause: c.id(),
                    negated: l.negated,
                    clause_pos: pos.of_clause(c.id()),
                });
            }
        }
        Ok(Sweep {
            formula,
            mode,
            last_var,
            occ,
        })
    }

    fn weight(&self, clause: ClauseId) -> u64 {
        self.formula.clauses()[clause as usize - 1].weight()
    }

    fn start(&self) -> State {
        let m = self.formula.num_clauses();
        State {
            open: ClauseSet::empty(m),
            presat: ClauseSet::empty(m),
        }
    }

    /// Clause `clause` arrives at position `at`.
    fn on_clause(&self, state: &State, clause: ClauseId, at: usize) -> Option<(State, u64)> {
        let mut next = state.clone();
        if next.presat.remove(clause) {
            return Some((next, self.weight(clause)));
        }
        if self.last_var[clause as usize - 1].is_some_and(|p| p > at) {
            next.open.insert(clause);
            return Some((next, 0));
        }
        // decided false
        match self.mode {
            Mode::Count => None,
            Mode::MaxSat => Some((next, 0)),
        }
    }

    /// Variable `var` at position `at` takes `value`.
    fn on_var(&self, state: &State, var: VarId, at: usize, value: bool) -> Option<(State, u64)> {
        let mut next = state.clone();
        let mut gain = 0;
        for o in &self.occ[var as usize - 1] {
            let holds = value != o.negated;
            if o.clause_pos < at {
                if !next.open.contains(o.clause) {
                    continue;
                }
                if holds {
                    next.open.remove(o.clause);
                    gain += self.weight(o.clause);
                } else if self.last_var[o.clause as usize - 1] == Some(at) {
                    match self.mode {
                        Mode::Count => return None,
                        Mode::MaxSat => {
                            next.open.remove(o.clause);
                        }
                    }
                }
            } else if holds {
                next.presat.insert(o.clause);
            }
        }
        Some((next, gain))
    }
}

/// Exact number of satisfying assignments, computed along `ordering`.
pub fn count_models(formula: &Formula, ordering: &MixedOrdering) -> Result<BigUint> {
    Ok(count_models_detailed(formula, ordering, false)?.count)
}

/// [`count_models`] with per-cut statistics; `record_presat` also keeps the
/// distinct presat sets of every cut.
pub fn count_models_detailed(formula: &Formula, ordering: &MixedOrdering, record_presat: bool) -> Result<CountOutcome> {
    let sweep = Sweep::new(formula, ordering, Mode::Count)?;
    let mut stats = SweepStats {
        live_states: Vec::with_capacity(ordering.len()),
        presat_sets: record_presat.then(Vec::new),
    };
    if formula.has_empty_clause() {
        return Ok(CountOutcome {
            count: BigUint::zero(),
            stats,
        });
    }
    let mut layer: BTreeMap<State, BigUint> = BTreeMap::new();
    layer.insert(sweep.start(), BigUint::one());
    for (at, &e) in ordering.elements().iter().enumerate() {
        let mut next: BTreeMap<State, BigUint> = BTreeMap::new();
        for (state, count) in &layer {
            let mut push = |succ: Option<(State, u64)>| {
                if let Some((s, _)) = succ {
                    *next.entry(s).or_insert_with(BigUint::zero) += count;
                }
            };
            match e {
                Element::Clause(c) => push(sweep.on_clause(state, c, at)),
                Element::Var(x) => {
                    push(sweep.on_var(state, x, at, false));
                    push(sweep.on_var(state, x, at, true));
                }
            }
        }
        layer = next;
        stats.record(layer.keys().cloned());
    }
    debug_assert!(layer.len() <= 1);
    let count = layer.into_values().fold(BigUint::zero(), |acc, c| acc + c);
    Ok(CountOutcome { count, stats })
}

/// Maximum total weight of simultaneously satisfied clauses, with a witness.
pub fn max_weight(formula: &Formula, ordering: &MixedOrdering) -> Result<(u64, Assignment)> {
    let out = max_weight_detailed(formula, ordering, false)?;
    Ok((out.weight, out.witness))
}

#[derive(Clone, Copy)]
struct Back {
    weight: u64,
    pred: usize,
    value: Option<bool>,
}

/// [`max_weight`] with per-cut statistics.
pub fn max_weight_detailed(formula: &Formula, ordering: &MixedOrdering, record_presat: bool) -> Result<MaxSatOutcome> {
    let sweep = Sweep::new(formula, ordering, Mode::MaxSat)?;
    let mut stats = SweepStats {
        live_states: Vec::with_capacity(ordering.len()),
        presat_sets: record_presat.then(Vec::new),
    };
    // one layer per processed element, each sorted by state
    let mut layers: Vec<Vec<(State, Back)>> = Vec::with_capacity(ordering.len() + 1);
    layers.push(vec![(
        sweep.start(),
        Back {
            weight: 0,
            pred: 0,
            value: None,
        },
    )]);
    for (at, &e) in ordering.elements().iter().enumerate() {
        let prev = layers.last().map(Vec::as_slice).unwrap_or_default();
        let mut next: BTreeMap<State, Back> = BTreeMap::new();
        for (pred, (state, back)) in prev.iter().enumerate() {
            let mut push = |succ: Option<(State, u64)>, value: Option<bool>| {
                let Some((s, gain)) = succ else { return };
                let cand = Back {
                    weight: back.weight + gain,
                    pred,
                    value,
                };
                next.entry(s)
                    .and_modify(|b| {
                        if cand.weight > b.weight {
                            *b = cand;
                        }
                    })
                    .or_insert(cand);
            };
            match e {
                Element::Clause(c) => push(sweep.on_clause(state, c, at), None),
                Element::Var(x) => {
                    push(sweep.on_var(state, x, at, false), Some(false));
                    push(sweep.on_var(state, x, at, true), Some(true));
                }
            }
        }
        let layer: Vec<(State, Back)> = next.into_iter().collect();
        stats.record(layer.iter().map(|(s, _)| s.clone()));
        layers.push(layer);
    }
    let last = layers.last().expect("start layer");
    assert_eq!(last.len(), 1, "maxsat sweep ends in the single empty state");
    let weight = last[0].1.weight;
    let mut witness = Assignment::all_false(formula.num_vars());
    let mut idx = 0;
    for (layer, &e) in layers[1..].iter().zip(ordering.elements()).rev() {
        let back = layer[idx].1;
        if let (Element::Var(x), Some(v)) = (e, back.value) {
            witness.set(x, v);
        }
        idx = back.pred;
    }
    Ok(MaxSatOutcome { weight, witness, stats })
}
