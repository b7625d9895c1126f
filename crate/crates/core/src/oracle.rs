//! Brute-force reference answers. Exponential by design; every entry point
//! refuses inputs above its cap instead of truncating.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Element, Formula, MixedOrdering, SideOrders};
use crate::ordering::ordering_width_k;

pub const DEFAULT_VAR_CAP: usize = 20;
pub const DEFAULT_INTERLEAVING_CAP: u128 = 1_000_000;

fn check_vars(formula: &Formula, cap: usize) -> Result<()> {
    let n = formula.num_vars();
    if n > cap || n >= 64 {
        return Err(Error::TooManyVariables { count: n, cap });
    }
    Ok(())
}

/// Assignment number `bits` in lexicographic order: variable 1 is the most
/// significant bit, false before true.
fn nth_assignment(n: usize, bits: u64) -> Assignment {
    Assignment::new((0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect())
}

fn satisfies_all(formula: &Formula, values: &Assignment) -> bool {
    formula
        .clauses()
        .iter()
        .all(|c| c.literals().iter().any(|l| values.value(l.var) != l.negated))
}

pub fn brute_count(formula: &Formula) -> Result<BigUint> {
    brute_count_capped(formula, DEFAULT_VAR_CAP)
}

pub fn brute_count_capped(formula: &Formula, cap: usize) -> Result<BigUint> {
    check_vars(formula, cap)?;
    let n = formula.num_vars();
    let count = (0..1u64 << n)
        .filter(|&bits| satisfies_all(formula, &nth_assignment(n, bits)))
        .count();
    Ok(BigUint::from(count))
}

/// Optimum weight with the lexicographically smallest optimal assignment.
pub fn brute_max_weight(formula: &Formula) -> Result<(u64, Assignment)> {
    brute_max_weight_capped(formula, DEFAULT_VAR_CAP)
}

pub fn brute_max_weight_capped(formula: &Formula, cap: usize) -> Result<(u64, Assignment)> {
    check_vars(formula, cap)?;
    let n = formula.num_vars();
    let mut best: Option<(u64, Assignment)> = None;
    for bits in 0..1u64 << n {
        let a = nth_assignment(n, bits);
        let w: u64 = formula
            .clauses()
            .iter()
            .filter(|c| c.literals().iter().any(|l| a.value(l.var) != l.negated))
            .map(|c| c.weight())
            .sum();
        if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
            best = Some((w, a));
        }
    }
    Ok(best.expect("at least one assignment"))
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Minimum width over every interleaving of the two side orders.
pub fn brute_min_merge_k(formula: &Formula, orders: &SideOrders) -> Result<usize> {
    brute_min_merge_k_capped(formula, orders, DEFAULT_INTERLEAVING_CAP)
}

pub fn brute_min_merge_k_capped(formula: &Formula, orders: &SideOrders, cap: u128) -> Result<usize> {
    orders.validate(formula)?;
    let n = orders.var_order.len();
    let m = orders.clause_order.len();
    let total = binomial((n + m) as u128, m as u128);
    if total > cap {
        return Err(Error::TooManyInterleavings { count: total, cap });
    }
    let mut best = usize::MAX;
    let mut seq = Vec::with_capacity(n + m);
    interleave(formula, orders, 0, 0, &mut seq, &mut best)?;
    Ok(best)
}

fn interleave(
    formula: &Formula,
    orders: &SideOrders,
    vi: usize,
    ci: usize,
    seq: &mut Vec<Element>,
    best: &mut usize,
) -> Result<()> {
    if vi == orders.var_order.len() && ci == orders.clause_order.len() {
        let ordering = MixedOrdering::new(seq.clone());
        *best = (*best).min(ordering_width_k(formula, &ordering)?);
        return Ok(());
    }
    if vi < orders.var_order.len() {
        seq.push(Element::Var(orders.var_order[vi]));
        interleave(formula, orders, vi + 1, ci, seq, best)?;
        seq.pop();
    }
    if ci < orders.clause_order.len() {
        seq.push(Element::Clause(orders.clause_order[ci]));
        interleave(formula, orders, vi, ci + 1, seq, best)?;
        seq.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, cls: &[&[i64]]) -> Formula {
        let cls: Vec<Vec<i64>> = cls.iter().map(|c| c.to_vec()).collect();
        Formula::build(n, &cls, None).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute_count(&f(1, &[&[1], &[-1]])).unwrap(), BigUint::from(0u32));
        assert_eq!(brute_count(&f(5, &[])).unwrap(), BigUint::from(32u32));
        assert_eq!(brute_count(&f(2, &[&[1, 2], &[-1]])).unwrap(), BigUint::from(1u32));
        assert_eq!(
            brute_count(&f(21, &[])),
            Err(Error::TooManyVariables { count: 21, cap: 20 })
        );
    }

    #[test]
    fn max_weight_examples() {
        let a = Formula::build(1, &[vec![1], vec![-1]], Some(&[2, 3])).unwrap();
        let (w, t) = brute_max_weight(&a).unwrap();
        assert_eq!(w, 3);
        assert!(!t.value(1));

        let b = Formula::build(2, &[vec![1, 2], vec![2]], Some(&[4, 5])).unwrap();
        let (w, t) = brute_max_weight(&b).unwrap();
        assert_eq!(w, 9);
        // smallest optimum: x1 false, x2 true
        assert_eq!(t.values(), &[false, true]);
    }

    #[test]
    fn merge_examples() {
        let a = f(2, &[&[1], &[2]]);
        assert_eq!(brute_min_merge_k(&a, &SideOrders::identity(&a)).unwrap(), 0);
        let b = f(2, &[&[2], &[1]]);
        assert_eq!(brute_min_merge_k(&b, &SideOrders::identity(&b)).unwrap(), 1);
        let right = f(4, &[&[3], &[4], &[1, 3, 4]]);
        assert!(brute_min_merge_k(&right, &SideOrders::identity(&right)).unwrap() >= 1);
    }

    #[test]
    fn interleaving_cap() {
        let cls: Vec<Vec<i64>> = (1..=12).map(|v| vec![v]).collect();
        let a = Formula::build(14, &cls, None).unwrap();
        assert!(matches!(
            brute_min_merge_k(&a, &SideOrders::identity(&a)),
            Err(Error::TooManyInterleavings { .. })
        ));
        assert_eq!(binomial(11, 5), 462);
    }
}
