//! Text formats: DIMACS CNF/WCNF, side orders, mixed orderings, labeled edge
//! lists, interval representations and expansion maps.
//!
//! Input may use LF or CRLF line endings; output always uses LF.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use kinterval_core::expansion::Expansion;
use kinterval_core::hardness::{Coord, Interval, IntervalRep, LabeledBigraph, Side, VertexLabel};
use kinterval_core::{ClauseId, Element, Formula, MixedOrdering, SideOrders, VarId};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: literal {literal} outside 1..={num_vars}")]
    LiteralOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("line {line}: zero weight")]
    ZeroWeight { line: usize },
    #[error("line {line}: malformed clause: {reason}")]
    MalformedClause { line: usize, reason: String },
    #[error("line {line}: not a permutation: {reason}")]
    NotAPermutation { line: usize, reason: String },
    #[error("missing `{0}` line")]
    MissingLine(&'static str),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("missing element {0}")]
    MissingElement(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error(transparent)]
    Core(#[from] kinterval_core::Error),
}

type Result<T> = std::result::Result<T, ParseError>;

/// Non-blank lines with 1-based line numbers, CR stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Parses `p cnf` or `p wcnf` DIMACS. Clause ids follow file order; plain
/// CNF clauses get weight 1.
pub fn parse_dimacs(text: &str) -> Result<Formula> {
    let mut header: Option<(usize, usize, bool)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut weights: Vec<u64> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut expect_weight = true;
    let mut last_line = 0;
    for (no, line) in lines(text) {
        last_line = no;
        let trimmed = line.trim_start();
        if trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::MalformedHeader {
                    line: no,
                    reason: "second header".into(),
                });
            }
            header = Some(parse_header(no, trimmed)?);
            continue;
        }
        let (num_vars, _, weighted) = header.ok_or_else(|| ParseError::MalformedHeader {
            line: no,
            reason: "clause before header".into(),
        })?;
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::MalformedClause {
                line: no,
                reason: format!("`{token}` is not an integer"),
            })?;
            if weighted && expect_weight {
                match value {
                    0 => return Err(ParseError::ZeroWeight { line: no }),
                    w if w < 0 => {
                        return Err(ParseError::MalformedClause {
                            line: no,
                            reason: format!("negative weight {w}"),
                        })
                    }
                    w => weights.push(w as u64),
                }
                expect_weight = false;
                continue;
            }
            if value == 0 {
                clauses.push(std::mem::take(&mut current));
                expect_weight = true;
            } else if value.unsigned_abs() > num_vars as u64 {
                return Err(ParseError::LiteralOutOfRange {
                    line: no,
                    literal: value,
                    num_vars,
                });
            } else {
                current.push(value);
            }
        }
    }
    let (num_vars, declared, weighted) = header.ok_or_else(|| ParseError::MalformedHeader {
        line: last_line.max(1),
        reason: "no `p` line".into(),
    })?;
    if !current.is_empty() || (weighted && !expect_weight) {
        return Err(ParseError::MalformedClause {
            line: last_line,
            reason: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != declared {
        return Err(ParseError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }
    Ok(Formula::build(num_vars, &clauses, weighted.then_some(&weights[..]))?)
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize, bool)> {
    let bad = |reason: &str| ParseError::MalformedHeader {
        line,
        reason: reason.into(),
    };
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let weighted = match tokens.get(1) {
        _ if tokens[0] != "p" => return Err(bad("expected `p`")),
        Some(&"cnf") => false,
        Some(&"wcnf") => true,
        _ => return Err(bad("format must be cnf or wcnf")),
    };
    match tokens.len() {
        4 => {}
        5 if weighted => return Err(bad("hard clauses (`top` weight) are not supported")),
        _ => return Err(bad("expected `p cnf <vars> <clauses>`")),
    }
    let n = tokens[2].parse().map_err(|_| bad("variable count is not a number"))?;
    let m = tokens[3].parse().map_err(|_| bad("clause count is not a number"))?;
    Ok((n, m, weighted))
}

/// DIMACS text; `p wcnf` with weights when `weighted`.
pub fn write_dimacs(formula: &Formula, weighted: bool) -> String {
    let kind = if weighted { "wcnf" } else { "cnf" };
    let mut out = format!("p {kind} {} {}\n", formula.num_vars(), formula.num_clauses());
    for c in formula.clauses() {
        if weighted {
            write!(out, "{} ", c.weight()).unwrap();
        }
        for l in c.literals() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Parses the two lines `v <permutation of 1..n>` and `c <permutation of 1..m>`.
pub fn parse_orders(text: &str, formula: &Formula) -> Result<SideOrders> {
    let mut vars = None;
    let mut clauses = None;
    for (no, line) in lines(text) {
        let mut tokens = line.split_whitespace();
        let (slot, size, name) = match tokens.next() {
            Some("v") => (&mut vars, formula.num_vars(), "v"),
            Some("c") => (&mut clauses, formula.num_clauses(), "c"),
            Some(other) => return Err(ParseError::UnknownToken(other.into())),
            None => unreachable!("blank lines are skipped"),
        };
        if slot.is_some() {
            return Err(ParseError::MalformedRecord {
                line: no,
                reason: format!("second `{name}` line"),
            });
        }
        *slot = Some(parse_permutation(no, tokens, size)?);
    }
    Ok(SideOrders {
        var_order: vars.ok_or(ParseError::MissingLine("v"))?,
        clause_order: clauses.ok_or(ParseError::MissingLine("c"))?,
    })
}

fn parse_permutation<'a>(line: usize, tokens: impl Iterator<Item = &'a str>, size: usize) -> Result<Vec<u32>> {
    let bad = |reason: String| ParseError::NotAPermutation { line, reason };
    let mut seen = vec![false; size];
    let mut out = Vec::with_capacity(size);
    for t in tokens {
        let i: usize = t.parse().map_err(|_| bad(format!("`{t}` is not a number")))?;
        if i == 0 || i > size {
            return Err(bad(format!("{i} outside 1..={size}")));
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(bad(format!("{i} repeated")));
        }
        out.push(i as u32);
    }
    if out.len() != size {
        return Err(bad(format!("{} of {size} entries", out.len())));
    }
    Ok(out)
}

pub fn write_orders(orders: &SideOrders) -> String {
    let join = |ids: &[u32]| ids.iter().map(|i| format!(" {i}")).collect::<String>();
    format!("v{}\nc{}\n", join(&orders.var_order), join(&orders.clause_order))
}

fn parse_element(token: &str, formula: &Formula) -> Result<Element> {
    let unknown = || ParseError::UnknownToken(token.into());
    let (kind, rest) = token.split_at_checked(1).ok_or_else(unknown)?;
    if rest.starts_with('+') || rest.starts_with('0') {
        return Err(unknown());
    }
    let id: u32 = rest.parse().map_err(|_| unknown())?;
    match kind {
        "x" if id as usize <= formula.num_vars() => Ok(Element::Var(id as VarId)),
        "c" if id as usize <= formula.num_clauses() => Ok(Element::Clause(id as ClauseId)),
        _ => Err(unknown()),
    }
}

/// Whitespace-separated `x<i>` / `c<j>` tokens naming every element once.
pub fn parse_mixed_ordering(text: &str, formula: &Formula) -> Result<MixedOrdering> {
    let mut seen = BTreeMap::new();
    let mut seq = Vec::new();
    for (_, line) in lines(text) {
        for token in line.split_whitespace() {
            let e = parse_element(token, formula)?;
            if seen.insert(e, ()).is_some() {
                return Err(ParseError::DuplicateElement(e.to_string()));
            }
            seq.push(e);
        }
    }
    let missing = (1..=formula.num_vars() as VarId)
        .map(Element::Var)
        .chain((1..=formula.num_clauses() as ClauseId).map(Element::Clause))
        .find(|e| !seen.contains_key(e));
    if let Some(e) = missing {
        return Err(ParseError::MissingElement(e.to_string()));
    }
    Ok(MixedOrdering::new(seq))
}

pub fn emit_mixed_ordering(ordering: &MixedOrdering) -> String {
    format!("{ordering}\n")
}

/// `v <name> <side>` per vertex in index order, then `e <designated> <other>`.
pub fn write_edge_list(g: &LabeledBigraph) -> String {
    let mut out = String::new();
    for &l in g.labels() {
        writeln!(out, "v {l} {}", l.side()).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "e {} {}", g.label(a), g.label(b)).unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<LabeledBigraph> {
    let mut labels = Vec::new();
    let mut index = BTreeMap::new();
    let mut edges = Vec::new();
    for (no, line) in lines(text) {
        let bad = |reason: String| ParseError::MalformedRecord { line: no, reason };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[..] {
            ["v", name, side] => {
                let label: VertexLabel = name.parse().map_err(|_| ParseError::UnknownToken(name.into()))?;
                let side: Side = side.parse().map_err(|_| bad(format!("unknown side `{side}`")))?;
                if label.side() != side {
                    return Err(bad(format!("{name} belongs to the {} side", label.side())));
                }
                if index.insert(label, labels.len()).is_some() {
                    return Err(ParseError::DuplicateElement(name.into()));
                }
                labels.push(label);
            }
            ["e", a, b] => {
                let find = |name: &str| -> Result<usize> {
                    name.parse::<VertexLabel>()
                        .ok()
                        .and_then(|l| index.get(&l).copied())
                        .ok_or_else(|| ParseError::UnknownToken(name.into()))
                };
                edges.push((find(a)?, find(b)?));
            }
            _ => return Err(bad("expected `v <name> <side>` or `e <a> <b>`".into())),
        }
    }
    Ok(LabeledBigraph::new(labels, edges)?)
}

/// `<vertex> <lo> <hi>` per vertex, in graph index order.
pub fn write_representation(g: &LabeledBigraph, rep: &IntervalRep) -> String {
    let mut out = String::new();
    for (&v, iv) in &rep.intervals {
        writeln!(out, "{} {} {}", g.label(v), iv.lo, iv.hi).unwrap();
    }
    out
}

/// Endpoints are integers or fractions `p/q`.
pub fn parse_representation(text: &str, g: &LabeledBigraph) -> Result<IntervalRep> {
    let mut rep = IntervalRep::default();
    for (no, line) in lines(text) {
        let bad = |reason: String| ParseError::MalformedRecord { line: no, reason };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [name, lo, hi] = tokens[..] else {
            return Err(bad("expected `<vertex> <lo> <hi>`".into()));
        };
        let v = name
            .parse::<VertexLabel>()
            .ok()
            .and_then(|l| g.vertex(l))
            .ok_or_else(|| ParseError::UnknownToken(name.into()))?;
        let coord = |t: &str| t.parse::<Coord>().map_err(|_| bad(format!("`{t}` is not a rational")));
        let iv = Interval::new(coord(lo)?, coord(hi)?).ok_or_else(|| bad(format!("empty interval [{lo}, {hi}]")))?;
        if rep.intervals.insert(v, iv).is_some() {
            return Err(ParseError::DuplicateElement(name.into()));
        }
    }
    Ok(rep)
}

/// `parent: <original id> -> <expanded ids>` per original clause.
pub fn write_expansion_map(expansion: &Expansion) -> String {
    let mut out = String::new();
    for (i, ids) in expansion.parents.iter().enumerate() {
        write!(out, "parent: {} ->", i + 1).unwrap();
        for id in ids {
            write!(out, " {id}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses `1,2,3;4,5,6` into triples.
pub fn parse_partition(text: &str) -> Result<Vec<[usize; 3]>> {
    text.split(';')
        .map(|triple| {
            let ids: Vec<usize> = triple
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| ParseError::UnknownToken(t.into())))
                .collect::<Result<_>>()?;
            <[usize; 3]>::try_from(ids).map_err(|_| ParseError::UnknownToken(triple.into()))
        })
        .collect()
}

pub fn parse_sizes(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| ParseError::UnknownToken(t.into())))
        .collect()
}
