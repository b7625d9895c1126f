//! Test-instance factories: the 3-Partition gadget graph whose 1-interval
//! representations encode partitions, a checker for k-interval interval
//! representations, and seeded random k-interval CNF formulas.
//!
//! Overlap is strict throughout: `[a, b]` and `[c, d]` overlap iff
//! `max(a, c) < min(b, d)`, so intervals sharing only an endpoint do not.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{ClauseId, Element, Formula, Literal, MixedOrdering, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    bound: u64,
    sizes: Vec<u64>,
}

impl ThreePartitionInstance {
    /// Requires `bound >= 4`, `3n` sizes with `bound/4 < s < bound/2` and
    /// total `n * bound`.
    pub fn new(bound: u64, sizes: Vec<u64>) -> Result<Self> {
        if bound < 4 {
            return Err(Error::InvalidInstance(format!("bound {bound} is below 4")));
        }
        if sizes.is_empty() || !sizes.len().is_multiple_of(3) {
            return Err(Error::InvalidInstance(format!(
                "{} sizes is not a positive multiple of 3",
                sizes.len()
            )));
        }
        if let Some(&s) = sizes.iter().find(|&&s| 4 * s <= bound || 2 * s >= bound) {
            return Err(Error::InvalidInstance(format!(
                "size {s} is not strictly between {bound}/4 and {bound}/2"
            )));
        }
        let groups = (sizes.len() / 3) as u64;
        let total: u64 = sizes.iter().sum();
        if total != groups * bound {
            return Err(Error::InvalidInstance(format!(
                "sizes sum to {total}, expected {}",
                groups * bound
            )));
        }
        Ok(ThreePartitionInstance { bound, sizes })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Number of triples `n`.
    pub fn groups(&self) -> usize {
        self.sizes.len() / 3
    }
}

/// Which side of the bigraph a vertex belongs to. Added edges go to
/// [`Side::Designated`] vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Designated,
    Other,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Designated => "designated",
            Side::Other => "other",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "designated" => Ok(Side::Designated),
            "other" => Ok(Side::Other),
            _ => Err(Error::InvalidInstance(format!("unknown side `{s}`"))),
        }
    }
}

/// Vertex roles; indices are 1-based except numeral links, which start at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    Slot { group: usize, index: usize },
    Delimiter { group: usize },
    Track,
    AnchorLeft,
    AnchorRight,
    SlotLink { group: usize, index: usize },
    DelimiterLinkFirst { group: usize },
    DelimiterLinkSecond { group: usize },
    AnchorLinkLeft,
    AnchorLinkRight,
    Numeral { element: usize, index: usize },
    NumeralLink { element: usize, index: usize },
    Clause(ClauseId),
    Variable(VarId),
}

impl VertexLabel {
    pub fn side(self) -> Side {
        use VertexLabel::*;
        match self {
            Track | SlotLink { .. } | DelimiterLinkFirst { .. } | DelimiterLinkSecond { .. } | AnchorLinkLeft
            | AnchorLinkRight | NumeralLink { .. } | Clause(_) => Side::Designated,
            Slot { .. } | Delimiter { .. } | AnchorLeft | AnchorRight | Numeral { .. } | Variable(_) => Side::Other,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use VertexLabel::*;
        match *self {
            Slot { group, index } => write!(f, "s{group}_{index}"),
            Delimiter { group } => write!(f, "sd{group}"),
            Track => f.write_str("t"),
            AnchorLeft => f.write_str("al"),
            AnchorRight => f.write_str("ar"),
            SlotLink { group, index } => write!(f, "l{group}_{index}"),
            DelimiterLinkFirst { group } => write!(f, "ld1_{group}"),
            DelimiterLinkSecond { group } => write!(f, "ld2_{group}"),
            AnchorLinkLeft => f.write_str("lal"),
            AnchorLinkRight => f.write_str("lar"),
            Numeral { element, index } => write!(f, "n{element}_{index}"),
            NumeralLink { element, index } => write!(f, "ln{element}_{index}"),
            Clause(c) => write!(f, "c{c}"),
            Variable(x) => write!(f, "x{x}"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self> {
        use VertexLabel::*;
        let bad = || Error::InvalidInstance(format!("unknown vertex `{s}`"));
        let one = |rest: &str| -> Result<usize> {
            match rest.parse::<usize>() {
                Ok(i) if i >= 1 && !rest.starts_with('+') => Ok(i),
                _ => Err(bad()),
            }
        };
        let pair = |rest: &str, first_index: usize| -> Result<(usize, usize)> {
            let (a, b) = rest.split_once('_').ok_or_else(bad)?;
            let a = one(a)?;
            let b = match b.parse::<usize>() {
                Ok(j) if j >= first_index && !b.starts_with('+') => j,
                _ => return Err(bad()),
            };
            Ok((a, b))
        };
        let label = match s {
            "t" => Track,
            "al" => AnchorLeft,
            "ar" => AnchorRight,
            "lal" => AnchorLinkLeft,
            "lar" => AnchorLinkRight,
            _ => {
                if let Some(r) = s.strip_prefix("ld1_") {
                    DelimiterLinkFirst { group: one(r)? }
                } else if let Some(r) = s.strip_prefix("ld2_") {
                    DelimiterLinkSecond { group: one(r)? }
                } else if let Some(r) = s.strip_prefix("ln") {
                    let (element, index) = pair(r, 0)?;
                    NumeralLink { element, index }
                } else if let Some(r) = s.strip_prefix('l') {
                    let (group, index) = pair(r, 1)?;
                    SlotLink { group, index }
                } else if let Some(r) = s.strip_prefix("sd") {
                    Delimiter { group: one(r)? }
                } else if let Some(r) = s.strip_prefix('s') {
                    let (group, index) = pair(r, 1)?;
                    Slot { group, index }
                } else if let Some(r) = s.strip_prefix('n') {
                    let (element, index) = pair(r, 1)?;
                    Numeral { element, index }
                } else if let Some(r) = s.strip_prefix('c') {
                    Clause(one(r)?.try_into().map_err(|_| bad())?)
                } else if let Some(r) = s.strip_prefix('x') {
                    Variable(one(r)?.try_into().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(label)
    }
}

/// A bipartite graph with labeled vertices. Edges are stored as
/// `(designated vertex, other vertex)` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledBigraph {
    labels: Vec<VertexLabel>,
    edges: BTreeSet<(usize, usize)>,
    index: BTreeMap<VertexLabel, usize>,
}

impl LabeledBigraph {
    fn with_labels(labels: Vec<VertexLabel>) -> Self {
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        LabeledBigraph {
            labels,
            edges: BTreeSet::new(),
            index,
        }
    }

    fn connect(&mut self, a: VertexLabel, b: VertexLabel) {
        let (ia, ib) = (self.index[&a], self.index[&b]);
        match (a.side(), b.side()) {
            (Side::Designated, Side::Other) => self.edges.insert((ia, ib)),
            (Side::Other, Side::Designated) => self.edges.insert((ib, ia)),
            _ => panic!("{a} and {b} are on the same side"),
        };
    }

    /// Graph from labels and `(a, b)` index pairs, in either side order.
    pub fn new(labels: Vec<VertexLabel>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::with_labels(labels);
        if g.index.len() != g.labels.len() {
            return Err(Error::InvalidInstance("repeated vertex label".into()));
        }
        for (a, b) in edges {
            let n = g.labels.len();
            if a >= n || b >= n {
                return Err(Error::InvalidInstance(format!("edge ({a}, {b}) outside {n} vertices")));
            }
            let (la, lb) = (g.labels[a], g.labels[b]);
            if la.side() == lb.side() {
                return Err(Error::InvalidInstance(format!("edge {la} {lb} inside one side")));
            }
            g.connect(la, lb);
        }
        Ok(g)
    }

    /// The incidence bigraph of a formula, clauses on the designated side.
    pub fn from_formula(formula: &Formula) -> Self {
        let labels = formula
            .clauses()
            .iter()
            .map(|c| VertexLabel::Clause(c.id()))
            .chain((1..=formula.num_vars() as VarId).map(VertexLabel::Variable))
            .collect();
        let mut g = Self::with_labels(labels);
        for c in formula.clauses() {
            for v in c.vars() {
                g.connect(VertexLabel::Clause(c.id()), VertexLabel::Variable(v));
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn vertex(&self, label: VertexLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b)) || self.edges.contains(&(b, a))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Builds the gadget graph for a 3-Partition instance.
///
/// Per group `i`, slots `s_{i,1..b+1}` are chained by links `l_{i,j}`.
/// Consecutive groups are joined through a delimiter and two delimiter links.
/// The track is adjacent to every slot and delimiter except the first
/// delimiter. Anchors hang off both ends, and each element becomes a path of
/// `2 s(a) + 1` vertices whose numerals are adjacent to the track.
pub fn gen_3partition_bigraph(inst: &ThreePartitionInstance) -> LabeledBigraph {
    use VertexLabel::*;
    let n = inst.groups();
    let b = inst.bound as usize;
    let mut labels = Vec::new();
    for group in 1..=n {
        labels.extend((1..=b + 1).map(|index| Slot { group, index }));
    }
    labels.extend((1..n).map(|group| Delimiter { group }));
    labels.extend([Track, AnchorLeft, AnchorRight, AnchorLinkLeft, AnchorLinkRight]);
    for group in 1..=n {
        labels.extend((1..=b).map(|index| SlotLink { group, index }));
    }
    for group in 1..n {
        labels.extend([DelimiterLinkFirst { group }, DelimiterLinkSecond { group }]);
    }
    for (e, &s) in inst.sizes.iter().enumerate() {
        let element = e + 1;
        let s = s as usize;
        labels.push(NumeralLink { element, index: 0 });
        for index in 1..=s {
            labels.extend([Numeral { element, index }, NumeralLink { element, index }]);
        }
    }
    let mut g = LabeledBigraph::with_labels(labels);

    for group in 1..=n {
        for index in 1..=b {
            let link = SlotLink { group, index };
            g.connect(link, Slot { group, index });
            g.connect(link, Slot { group, index: index + 1 });
        }
        for index in 1..=b + 1 {
            g.connect(Track, Slot { group, index });
        }
    }
    for group in 1..n {
        let d = Delimiter { group };
        let first = DelimiterLinkFirst { group };
        let second = DelimiterLinkSecond { group };
        for v in [Slot { group, index: b }, Slot { group, index: b + 1 }, d, Slot { group: group + 1, index: 1 }] {
            g.connect(first, v);
        }
        for v in [
            Slot { group, index: b + 1 },
            d,
            Slot { group: group + 1, index: 1 },
            Slot { group: group + 1, index: 2 },
        ] {
            g.connect(second, v);
        }
        if group != 1 {
            g.connect(Track, d);
        }
    }
    for v in [AnchorLeft, Slot { group: 1, index: 1 }, Slot { group: 1, index: 2 }] {
        g.connect(AnchorLinkLeft, v);
    }
    for v in [AnchorRight, Slot { group: n, index: b + 1 }, Slot { group: n, index: b }] {
        g.connect(AnchorLinkRight, v);
    }
    for (e, &s) in inst.sizes.iter().enumerate() {
        let element = e + 1;
        for index in 1..=s as usize {
            let numeral = Numeral { element, index };
            g.connect(NumeralLink { element, index: index - 1 }, numeral);
            g.connect(NumeralLink { element, index }, numeral);
            g.connect(Track, numeral);
        }
    }
    g
}

pub type Coord = Ratio<i64>;

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Coord,
    pub hi: Coord,
}

impl Interval {
    pub fn new(lo: Coord, hi: Coord) -> Option<Self> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn from_ints(lo: i64, hi: i64) -> Option<Self> {
        Self::new(Coord::from_integer(lo), Coord::from_integer(hi))
    }

    /// Strict overlap: a shared endpoint does not count.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo.max(other.lo) < self.hi.min(other.hi)
    }
}

/// Intervals keyed by vertex index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalRep {
    pub intervals: BTreeMap<usize, Interval>,
}

impl IntervalRep {
    pub fn get(&self, v: usize) -> Option<&Interval> {
        self.intervals.get(&v)
    }

    pub fn insert(&mut self, v: usize, iv: Interval) {
        self.intervals.insert(v, iv);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepVerdict {
    pub accepted: bool,
    /// Edges `(designated, other)` whose intervals do not overlap.
    pub missing_overlaps: Vec<(usize, usize)>,
    /// Designated vertices overlapping non-neighbors, with those non-neighbors.
    pub excess: Vec<(usize, Vec<usize>)>,
}

impl RepVerdict {
    pub fn max_excess(&self) -> usize {
        self.excess.iter().map(|(_, e)| e.len()).max().unwrap_or(0)
    }
}

/// Accepts iff every edge overlaps and each designated vertex overlaps at most
/// `k` other-side vertices it is not adjacent to.
pub fn check_representation(g: &LabeledBigraph, rep: &IntervalRep, k: usize) -> Result<RepVerdict> {
    let mut ivs = Vec::with_capacity(g.num_vertices());
    for v in 0..g.num_vertices() {
        ivs.push(*rep.get(v).ok_or(Error::MissingInterval(v))?);
    }
    let missing_overlaps: Vec<(usize, usize)> = g.edges().filter(|&(a, b)| !ivs[a].overlaps(&ivs[b])).collect();
    let (designated, other): (Vec<usize>, Vec<usize>) =
        (0..g.num_vertices()).partition(|&v| g.label(v).side() == Side::Designated);
    // other-side vertices sorted by left endpoint
    let mut other = other;
    other.sort_by(|&a, &b| ivs[a].lo.cmp(&ivs[b].lo).then(a.cmp(&b)));
    let mut excess = Vec::new();
    for &d in &designated {
        let iv = ivs[d];
        let mut extra: Vec<usize> = other
            .iter()
            .copied()
            .take_while(|&o| ivs[o].lo < iv.hi)
            .filter(|&o| iv.overlaps(&ivs[o]) && !g.edges.contains(&(d, o)))
            .collect();
        if !extra.is_empty() {
            extra.sort_unstable();
            excess.push((d, extra));
        }
    }
    let accepted = missing_overlaps.is_empty() && excess.iter().all(|(_, e)| e.len() <= k);
    Ok(RepVerdict {
        accepted,
        missing_overlaps,
        excess,
    })
}

/// Interval representation built from a 3-Partition solution.
///
/// `partition` lists `n` triples of 1-based element indices. Group `i`'s
/// slots sit two units apart; the numerals of its three elements fill the
/// `b` gaps between consecutive slots in triple order, so every slot link and
/// every inner numeral link overlaps exactly one non-neighbor.
pub fn representation_from_partition(
    inst: &ThreePartitionInstance,
    g: &LabeledBigraph,
    partition: &[[usize; 3]],
) -> Result<IntervalRep> {
    use VertexLabel::*;
    let n = inst.groups();
    let b = inst.bound as i64;
    if partition.len() != n {
        return Err(Error::NotASolution(format!("{} triples for {n} groups", partition.len())));
    }
    let mut used = vec![false; inst.sizes.len()];
    for (i, triple) in partition.iter().enumerate() {
        let mut sum = 0;
        for &e in triple {
            match used.get_mut(e.wrapping_sub(1)) {
                Some(u) if !*u => *u = true,
                _ => return Err(Error::NotASolution(format!("element {e} is unknown or repeated"))),
            }
            sum += inst.sizes[e - 1];
        }
        if sum != inst.bound {
            return Err(Error::NotASolution(format!("triple {} sums to {sum}", i + 1)));
        }
    }

    let mut rep = IntervalRep::default();
    let mut put = |label: VertexLabel, lo: i64, hi: i64| {
        let v = g.vertex(label).expect("label belongs to the gadget graph");
        rep.insert(v, Interval::from_ints(lo, hi).expect("lo < hi"));
    };
    let base = |group: usize| (group as i64 - 1) * (2 * b + 2);
    for group in 1..=n {
        let o = base(group);
        for j in 1..=b + 1 {
            put(Slot { group, index: j as usize }, o + 2 * j, o + 2 * j + 1);
        }
        for j in 1..=b {
            put(SlotLink { group, index: j as usize }, o + 2 * j, o + 2 * j + 3);
        }
        if group < n {
            put(Delimiter { group }, o + 2 * b + 3, o + 2 * b + 4);
            put(DelimiterLinkFirst { group }, o + 2 * b, o + 2 * b + 5);
            put(DelimiterLinkSecond { group }, o + 2 * b + 2, o + 2 * b + 7);
        }
        // gap g lies between slots g and g + 1
        let mut gap = 0i64;
        for &element in &partition[group - 1] {
            let s = inst.sizes[element - 1] as i64;
            let at = |j: i64| o + 2 * (gap + j) + 1;
            for j in 1..=s {
                put(Numeral { element, index: j as usize }, at(j), at(j) + 1);
            }
            put(NumeralLink { element, index: 0 }, at(1), at(1) + 1);
            put(NumeralLink { element, index: s as usize }, at(s), at(s) + 1);
            for j in 1..s {
                put(NumeralLink { element, index: j as usize }, at(j), at(j) + 3);
            }
            gap += s;
        }
    }
    let last = base(n);
    put(Track, 2, last + 2 * b + 3);
    put(AnchorLeft, 1, 2);
    put(AnchorLinkLeft, 1, 5);
    put(AnchorRight, last + 2 * b + 3, last + 2 * b + 4);
    put(AnchorLinkRight, last + 2 * b, last + 2 * b + 4);
    Ok(rep)
}

/// A seeded random formula with an ordering of width at most `k`.
///
/// Variables and clauses get integer intervals; clause `c` contains the
/// variables whose intervals overlap its own, at most `max_width` of them.
/// Sorting everything by right endpoint yields an interval ordering. Then up
/// to `k` variables are dropped from each clause, never emptying it; a clause
/// can only come to need the variables dropped from it.
pub fn random_k_interval_instance(
    num_vars: usize,
    num_clauses: usize,
    k: usize,
    max_width: usize,
    seed: u64,
) -> Result<(Formula, MixedOrdering)> {
    if num_vars == 0 || num_clauses == 0 || max_width == 0 {
        return Err(Error::InfeasibleParameters(
            "variable count, clause count and width must be positive".into(),
        ));
    }
    if k > max_width {
        return Err(Error::InfeasibleParameters(format!("k = {k} exceeds width {max_width}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // each point is covered by at most reach + 1 variable intervals
    let reach = (max_width - 1).min(2) as i64;
    let vars: Vec<(i64, i64)> = (0..num_vars as i64)
        .map(|j| {
            let r = rng.gen_range(0..=reach);
            (16 * j + 4, 16 * j + 12 + 16 * r)
        })
        .collect();
    let overlapping = |lo: i64, hi: i64| -> Vec<usize> {
        let first = (lo / 16 - 3).max(0) as usize;
        let last = (((hi - 4) / 16) as usize).min(num_vars - 1);
        (first..=last)
            .filter(|&j| vars[j].0.max(lo) < vars[j].1.min(hi))
            .collect()
    };

    let mut clause_ivs = Vec::with_capacity(num_clauses);
    let mut clause_vars = Vec::with_capacity(num_clauses);
    for _ in 0..num_clauses {
        let anchor = rng.gen_range(0..num_vars) as i64;
        let lo = 16 * anchor + 6;
        let mut hi = lo + 4 * rng.gen_range(1..=4 * max_width as i64 + 1);
        let mut hit = overlapping(lo, hi);
        while hit.len() > max_width && hi > lo + 4 {
            hi -= 4;
            hit = overlapping(lo, hi);
        }
        debug_assert!(!hit.is_empty() && hit.len() <= max_width);
        clause_ivs.push((lo, hi));
        clause_vars.push(hit);
    }

    let mut keyed: Vec<(i64, Element)> = vars
        .iter()
        .enumerate()
        .map(|(j, iv)| (iv.1, Element::Var(j as VarId + 1)))
        .chain(
            clause_ivs
                .iter()
                .enumerate()
                .map(|(c, iv)| (iv.1, Element::Clause(c as ClauseId + 1))),
        )
        .collect();
    keyed.sort_unstable();
    let ordering = MixedOrdering::new(keyed.into_iter().map(|(_, e)| e).collect());

    let clauses = clause_vars
        .into_iter()
        .map(|mut hit| {
            let drop = rng.gen_range(0..=k.min(hit.len() - 1));
            hit.shuffle(&mut rng);
            hit.truncate(hit.len() - drop);
            hit.sort_unstable();
            let lits = hit
                .into_iter()
                .map(|j| Literal {
                    var: j as VarId + 1,
                    negated: rng.gen_bool(0.5),
                })
                .collect();
            (lits, 1)
        })
        .collect();
    Ok((Formula::from_literals(num_vars, clauses)?, ordering))
}
