//! Command-line front end for `kinterval-core`.
//!
//! [`run`] executes a parsed [`Cli`] and returns the text for stdout and the
//! exit code, so the binary stays a thin wrapper.

pub mod io;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kinterval_core::expansion::expand_to_interval;
use kinterval_core::hardness::{
    check_representation, gen_3partition_bigraph, random_k_interval_instance, representation_from_partition,
    ThreePartitionInstance,
};
use kinterval_core::merge::{feasible_merge, min_merge_k};
use kinterval_core::oracle::{
    brute_count_capped, brute_max_weight_capped, brute_min_merge_k_capped, DEFAULT_INTERLEAVING_CAP, DEFAULT_VAR_CAP,
};
use kinterval_core::ordering::{all_edges_needed, find_obstruction, Obstruction, ordering_width_k, verify_interval_ordering};
use kinterval_core::ps::{count_models_detailed, max_weight_detailed, ps_width, DEFAULT_PS_CAP};
use kinterval_core::{ClauseId, Element, Formula, MixedOrdering, SideOrders};

use crate::io::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kinterval", version, about = "k-interval orderings, merging and exact #SAT/MaxSAT for CNF")]
pub struct Cli {
    /// Print a single JSON object instead of `key: value` lines
    #[arg(long, global = true)]
    pub json: bool,
    /// Report wall-clock timings (output is then no longer reproducible)
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Merge variable and clause orders into a minimum-width ordering
    Merge {
        formula: PathBuf,
        /// `v ...` / `c ...` orders file; identity orders when omitted
        #[arg(long)]
        orders: Option<PathBuf>,
        /// Only test whether a merge of width at most Q exists
        #[arg(long)]
        q: Option<usize>,
    },
    /// Check a mixed ordering, or an interval representation of a graph
    Check {
        formula: Option<PathBuf>,
        #[arg(long, requires = "formula")]
        ordering: Option<PathBuf>,
        /// Edge-list file, checked together with --rep
        #[arg(long, requires = "rep", conflicts_with = "formula")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        rep: Option<PathBuf>,
        /// Accepted number of added edges per clause (or designated vertex)
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Look for a pattern that rules out a width-0 merge
    Obstruct {
        formula: PathBuf,
        #[arg(long)]
        orders: Option<PathBuf>,
    },
    /// Count models or maximize satisfied weight along an ordering
    Solve {
        formula: PathBuf,
        /// Mixed ordering to sweep
        #[arg(long, conflicts_with = "orders", required_unless_present = "orders")]
        ordering: Option<PathBuf>,
        /// Side orders; merged with minimum width first
        #[arg(long)]
        orders: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Count)]
        mode: Mode,
    },
    /// Minimum-width merge followed by solving along the merged ordering
    Pipeline {
        formula: PathBuf,
        #[arg(long)]
        orders: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Count)]
        mode: Mode,
    },
    /// Expand clauses over their needed variables into an interval formula
    Expand {
        formula: PathBuf,
        #[arg(long)]
        ordering: PathBuf,
        /// Expanded DIMACS; printed to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// `parent: <id> -> <ids>` map file
        #[arg(long)]
        map: Option<PathBuf>,
        /// Expanded mixed ordering file
        #[arg(long)]
        ordering_out: Option<PathBuf>,
    },
    /// ps-width of an ordering
    Pswidth {
        formula: PathBuf,
        #[arg(long)]
        ordering: PathBuf,
        /// Largest cut fragment, in variables, to enumerate
        #[arg(long, default_value_t = DEFAULT_PS_CAP)]
        cap: usize,
    },
    /// Brute-force reference answers
    Oracle {
        formula: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[arg(long)]
        orders: Option<PathBuf>,
        /// Variable cap (count, maxsat) or interleaving cap (merge)
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Generate instances
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Count,
    Maxsat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Count,
    Maxsat,
    Merge,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Gadget graph for a 3-Partition instance
    #[command(name = "3part")]
    ThreePart {
        #[arg(long)]
        b: u64,
        /// Comma-separated element sizes
        #[arg(long)]
        sizes: String,
        /// Solution triples such as `1,2,3;4,5,6`; writes a representation
        #[arg(long, requires = "rep_out")]
        partition: Option<String>,
        /// Edge list; printed to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        rep_out: Option<PathBuf>,
    },
    /// Random formula with an ordering of width at most k
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Maximum number of variables per clause before deletion
        #[arg(long)]
        width: usize,
        #[arg(long)]
        seed: u64,
        /// DIMACS; printed to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        ordering_out: Option<PathBuf>,
    },
}

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Format(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] kinterval_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// Fields of the `--json` object; absent fields were not computed.
#[derive(Serialize, Debug, Default)]
#[serde(rename_all = "camelCase")]
struct Summary {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordering: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    answer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ps_width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    state_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<BTreeMap<&'static str, u128>>,
}

struct Report {
    summary: Summary,
    lines: Vec<String>,
    /// Replaces the `key: value` lines in plain mode.
    artifact: Option<String>,
    code: i32,
    clock: Option<Instant>,
}

impl Report {
    fn new(command: &'static str, timed: bool) -> Self {
        Report {
            summary: Summary {
                command,
                ..Summary::default()
            },
            lines: Vec::new(),
            artifact: None,
            code: EXIT_OK,
            clock: timed.then(Instant::now),
        }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    /// Records the time since the last lap under `phase`, in microseconds.
    fn lap(&mut self, phase: &'static str) {
        if let Some(clock) = &mut self.clock {
            let us = clock.elapsed().as_micros();
            *clock = Instant::now();
            self.summary.timings.get_or_insert_with(BTreeMap::new).insert(phase, us);
        }
    }

    fn render(self, json: bool) -> String {
        if json {
            return serde_json::to_string(&self.summary).expect("summary serializes") + "\n";
        }
        if let Some(text) = self.artifact {
            return text;
        }
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(t) = &self.summary.timings {
            for (phase, us) in t {
                writeln!(out, "time-{phase}-us: {us}").unwrap();
            }
        }
        out
    }
}

/// Text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let report = match &cli.command {
        Command::Merge { formula, orders, q } => merge(cli, formula, orders.as_deref(), *q)?,
        Command::Check {
            formula,
            ordering,
            graph,
            rep,
            k,
        } => match (formula, ordering, graph, rep) {
            (Some(f), Some(p), None, None) => check_ordering(cli, f, p, *k)?,
            (None, None, Some(g), Some(r)) => check_graph(cli, g, r, *k)?,
            _ => {
                return Err(CliError::Usage(
                    "check takes FORMULA --ordering FILE, or --graph FILE --rep FILE".into(),
                ))
            }
        },
        Command::Obstruct { formula, orders } => obstruct(cli, formula, orders.as_deref())?,
        Command::Solve {
            formula,
            ordering,
            orders,
            mode,
        } => solve(cli, "solve", formula, ordering.as_deref(), orders.as_deref(), *mode)?,
        Command::Pipeline { formula, orders, mode } => solve(cli, "pipeline", formula, None, orders.as_deref(), *mode)?,
        Command::Expand {
            formula,
            ordering,
            out,
            map,
            ordering_out,
        } => expand(cli, formula, ordering, out.as_deref(), map.as_deref(), ordering_out.as_deref())?,
        Command::Pswidth { formula, ordering, cap } => pswidth(cli, formula, ordering, *cap)?,
        Command::Oracle {
            formula,
            mode,
            orders,
            cap,
        } => oracle(cli, formula, *mode, orders.as_deref(), *cap)?,
        Command::Gen { kind } => match kind {
            GenKind::ThreePart {
                b,
                sizes,
                partition,
                out,
                rep_out,
            } => gen_three_part(cli, *b, sizes, partition.as_deref(), out.as_deref(), rep_out.as_deref())?,
            GenKind::Random {
                n,
                m,
                k,
                width,
                seed,
                out,
                ordering_out,
            } => gen_random(cli, (*n, *m, *k, *width, *seed), out.as_deref(), ordering_out.as_deref())?,
        },
    };
    let code = report.code;
    Ok(Outcome {
        stdout: report.render(cli.json),
        code,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn load_formula(path: &Path) -> Result<Formula, CliError> {
    parsed(path, io::parse_dimacs(&read(path)?))
}

fn load_orders(path: Option<&Path>, f: &Formula) -> Result<SideOrders, CliError> {
    match path {
        Some(p) => parsed(p, io::parse_orders(&read(p)?, f)),
        None => Ok(SideOrders::identity(f)),
    }
}

fn load_ordering(path: &Path, f: &Formula) -> Result<MixedOrdering, CliError> {
    parsed(path, io::parse_mixed_ordering(&read(path)?, f))
}

fn ids(elements: impl IntoIterator<Item = Element>) -> String {
    elements.into_iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// Empty clauses take no part in merging. They are removed before the scan
/// and put in front of the merged ordering, where they need no edges.
struct Stripped {
    formula: Formula,
    orders: SideOrders,
    // original id of each kept clause, by new id
    kept: Vec<ClauseId>,
    dropped: Vec<ClauseId>,
}

fn strip_empty(f: &Formula, orders: &SideOrders) -> Result<Stripped, CliError> {
    let (empty, kept): (Vec<_>, Vec<_>) = f.clauses().iter().partition(|c| c.is_empty());
    let mut new_id = vec![0; f.num_clauses() + 1];
    for (i, c) in kept.iter().enumerate() {
        new_id[c.id() as usize] = i as ClauseId + 1;
    }
    let formula = Formula::from_literals(
        f.num_vars(),
        kept.iter().map(|c| (c.literals().to_vec(), c.weight())).collect(),
    )?;
    let orders = SideOrders {
        var_order: orders.var_order.clone(),
        clause_order: orders
            .clause_order
            .iter()
            .map(|&c| new_id[c as usize])
            .filter(|&c| c != 0)
            .collect(),
    };
    Ok(Stripped {
        formula,
        orders,
        kept: kept.iter().map(|c| c.id()).collect(),
        dropped: empty.iter().map(|c| c.id()).collect(),
    })
}

impl Stripped {
    fn restore(&self, ordering: &MixedOrdering) -> MixedOrdering {
        let front = self.dropped.iter().map(|&c| Element::Clause(c));
        let rest = ordering.elements().iter().map(|&e| match e {
            Element::Clause(c) => Element::Clause(self.kept[c as usize - 1]),
            v => v,
        });
        MixedOrdering::new(front.chain(rest).collect())
    }

    fn note(&self, r: &mut Report) {
        if !self.dropped.is_empty() {
            r.line("empty-clauses", ids(self.dropped.iter().map(|&c| Element::Clause(c))));
        }
    }
}

fn merge(cli: &Cli, path: &Path, orders: Option<&Path>, q: Option<usize>) -> Result<Report, CliError> {
    let mut r = Report::new("merge", cli.timings);
    let f = load_formula(path)?;
    let orders = load_orders(orders, &f)?;
    orders.validate(&f)?;
    let s = strip_empty(&f, &orders)?;
    r.lap("load");
    s.note(&mut r);
    match q {
        None => {
            let res = min_merge_k(&s.formula, &s.orders)?;
            r.lap("merge");
            let p = s.restore(&res.ordering);
            r.line("k", res.k);
            r.line("ordering", &p);
            r.summary.k = Some(res.k);
            r.summary.ordering = Some(p.to_string());
        }
        Some(q) => match feasible_merge(&s.formula, &s.orders, q)? {
            Some(p) => {
                r.lap("merge");
                let width = ordering_width_k(&s.formula, &p)?;
                let p = s.restore(&p);
                r.line("feasible", "yes");
                r.line("k", width);
                r.line("ordering", &p);
                r.summary.answer = Some("feasible".into());
                r.summary.k = Some(width);
                r.summary.ordering = Some(p.to_string());
            }
            None => {
                r.lap("merge");
                r.line("feasible", "no");
                r.summary.answer = Some("infeasible".into());
                r.code = EXIT_NEGATIVE;
            }
        },
    }
    Ok(r)
}

fn check_ordering(cli: &Cli, path: &Path, ordering: &Path, k: usize) -> Result<Report, CliError> {
    let mut r = Report::new("check", cli.timings);
    let f = load_formula(path)?;
    let p = load_ordering(ordering, &f)?;
    let verdict = verify_interval_ordering(&f, &p)?;
    let needed = all_edges_needed(&f, &p)?;
    r.lap("check");
    let width = needed.iter().map(Vec::len).max().unwrap_or(0);
    let accept = width <= k;
    r.line("verdict", if accept { "accept" } else { "reject" });
    r.line("k", width);
    match verdict.violation {
        Some(v) => r.line("violation", format!("c{} x{} {}", v.clause, v.var, v.condition)),
        None => r.line("violation", "none"),
    }
    for (i, vars) in needed.iter().enumerate() {
        let list: String = vars.iter().map(|x| format!(" x{x}")).collect();
        r.lines.push(format!("needed c{}:{list}", i + 1));
    }
    r.summary.k = Some(width);
    r.summary.ordering = Some(p.to_string());
    r.summary.answer = Some(if accept { "accept" } else { "reject" }.into());
    if !accept {
        r.code = EXIT_NEGATIVE;
    }
    Ok(r)
}

fn check_graph(cli: &Cli, graph: &Path, rep: &Path, k: usize) -> Result<Report, CliError> {
    let mut r = Report::new("check", cli.timings);
    let g = parsed(graph, io::parse_edge_list(&read(graph)?))?;
    let rep = parsed(rep, io::parse_representation(&read(rep)?, &g))?;
    let v = check_representation(&g, &rep, k)?;
    r.lap("check");
    let verdict = if v.accepted { "accept" } else { "reject" };
    r.line("verdict", verdict);
    r.line("max-excess", v.max_excess());
    for &(a, b) in &v.missing_overlaps {
        r.line("missing-overlap", format!("{} {}", g.label(a), g.label(b)));
    }
    for (d, extra) in &v.excess {
        let list: String = extra.iter().map(|&o| format!(" {}", g.label(o))).collect();
        r.lines.push(format!("excess {}:{list}", g.label(*d)));
    }
    r.summary.k = Some(v.max_excess());
    r.summary.answer = Some(verdict.into());
    if !v.accepted {
        r.code = EXIT_NEGATIVE;
    }
    Ok(r)
}

fn obstruct(cli: &Cli, path: &Path, orders: Option<&Path>) -> Result<Report, CliError> {
    let mut r = Report::new("obstruct", cli.timings);
    let f = load_formula(path)?;
    let orders = load_orders(orders, &f)?;
    orders.validate(&f)?;
    let s = strip_empty(&f, &orders)?;
    s.note(&mut r);
    let found = find_obstruction(&s.formula, &s.orders)?;
    r.lap("obstruct");
    let text = match found {
        Some(o) => {
            r.code = EXIT_NEGATIVE;
            let id = |c: ClauseId| s.kept[c as usize - 1];
            match o {
                Obstruction::Left { x, z, a, c } => Obstruction::Left { x, z, a: id(a), c: id(c) },
                Obstruction::Right { x, y, z, a, b, c } => Obstruction::Right {
                    x,
                    y,
                    z,
                    a: id(a),
                    b: id(b),
                    c: id(c),
                },
            }
            .to_string()
        }
        None => "none".into(),
    };
    r.line("obstruction", &text);
    r.summary.answer = Some(text);
    Ok(r)
}

fn solve(
    cli: &Cli,
    command: &'static str,
    path: &Path,
    ordering: Option<&Path>,
    orders: Option<&Path>,
    mode: Mode,
) -> Result<Report, CliError> {
    let mut r = Report::new(command, cli.timings);
    let f = load_formula(path)?;
    let p = match ordering {
        Some(p) => {
            let p = load_ordering(p, &f)?;
            r.lap("load");
            p
        }
        None => {
            let orders = load_orders(orders, &f)?;
            orders.validate(&f)?;
            let s = strip_empty(&f, &orders)?;
            r.lap("load");
            s.note(&mut r);
            let res = min_merge_k(&s.formula, &s.orders)?;
            r.lap("merge");
            s.restore(&res.ordering)
        }
    };
    let k = ordering_width_k(&f, &p)?;
    r.line("k", k);
    r.line("ordering", &p);
    r.summary.k = Some(k);
    r.summary.ordering = Some(p.to_string());
    let state_max = match mode {
        Mode::Count => {
            let out = count_models_detailed(&f, &p, false)?;
            r.lap("solve");
            r.line("models", &out.count);
            r.summary.answer = Some(out.count.to_string());
            out.stats.max_live_states()
        }
        Mode::Maxsat => {
            let out = max_weight_detailed(&f, &p, false)?;
            r.lap("solve");
            r.line("weight", out.weight);
            let lits: Vec<String> = out.witness.to_literals().iter().map(|l| l.to_dimacs().to_string()).collect();
            r.line("assignment", lits.join(" "));
            r.summary.answer = Some(out.weight.to_string());
            out.stats.max_live_states()
        }
    };
    r.line("state-max", state_max);
    r.summary.state_max = Some(state_max);
    Ok(r)
}

fn expand(
    cli: &Cli,
    path: &Path,
    ordering: &Path,
    out: Option<&Path>,
    map: Option<&Path>,
    ordering_out: Option<&Path>,
) -> Result<Report, CliError> {
    let mut r = Report::new("expand", cli.timings);
    let f = load_formula(path)?;
    let p = load_ordering(ordering, &f)?;
    let k = ordering_width_k(&f, &p)?;
    let e = expand_to_interval(&f, &p)?;
    r.lap("expand");
    let dimacs = io::write_dimacs(&e.formula, false);
    match out {
        Some(o) => write(o, &dimacs)?,
        None => r.artifact = Some(dimacs),
    }
    if let Some(m) = map {
        write(m, &io::write_expansion_map(&e))?;
    }
    if let Some(o) = ordering_out {
        write(o, &io::emit_mixed_ordering(&e.ordering))?;
    }
    r.line("k", k);
    r.line("clauses", e.formula.num_clauses());
    r.line("ordering", &e.ordering);
    r.summary.k = Some(k);
    r.summary.ordering = Some(e.ordering.to_string());
    Ok(r)
}

fn pswidth(cli: &Cli, path: &Path, ordering: &Path, cap: usize) -> Result<Report, CliError> {
    let mut r = Report::new("pswidth", cli.timings);
    let f = load_formula(path)?;
    let p = load_ordering(ordering, &f)?;
    let w = ps_width(&f, &p, cap)?;
    r.lap("pswidth");
    r.line("ps-width", w);
    r.summary.ps_width = Some(w);
    r.summary.ordering = Some(p.to_string());
    Ok(r)
}

fn oracle(cli: &Cli, path: &Path, mode: OracleMode, orders: Option<&Path>, cap: Option<u128>) -> Result<Report, CliError> {
    let mut r = Report::new("oracle", cli.timings);
    let f = load_formula(path)?;
    let var_cap = || -> Result<usize, CliError> {
        cap.map_or(Ok(DEFAULT_VAR_CAP), |c| {
            usize::try_from(c).map_err(|_| CliError::Usage(format!("cap {c} is too large")))
        })
    };
    match mode {
        OracleMode::Count => {
            let n = brute_count_capped(&f, var_cap()?)?;
            r.line("models", &n);
            r.summary.answer = Some(n.to_string());
        }
        OracleMode::Maxsat => {
            let (w, a) = brute_max_weight_capped(&f, var_cap()?)?;
            let lits: Vec<String> = a.to_literals().iter().map(|l| l.to_dimacs().to_string()).collect();
            r.line("weight", w);
            r.line("assignment", lits.join(" "));
            r.summary.answer = Some(w.to_string());
        }
        OracleMode::Merge => {
            let orders = load_orders(orders, &f)?;
            orders.validate(&f)?;
            let s = strip_empty(&f, &orders)?;
            s.note(&mut r);
            let k = brute_min_merge_k_capped(&s.formula, &s.orders, cap.unwrap_or(DEFAULT_INTERLEAVING_CAP))?;
            r.line("k", k);
            r.summary.k = Some(k);
        }
    }
    r.lap("oracle");
    Ok(r)
}

fn gen_three_part(
    cli: &Cli,
    b: u64,
    sizes: &str,
    partition: Option<&str>,
    out: Option<&Path>,
    rep_out: Option<&Path>,
) -> Result<Report, CliError> {
    let mut r = Report::new("gen", cli.timings);
    let inst = ThreePartitionInstance::new(b, io::parse_sizes(sizes)?)?;
    let g = gen_3partition_bigraph(&inst);
    let text = io::write_edge_list(&g);
    match out {
        Some(o) => write(o, &text)?,
        None => r.artifact = Some(text),
    }
    r.line("vertices", g.num_vertices());
    r.line("edges", g.num_edges());
    if let Some(part) = partition {
        let rep = representation_from_partition(&inst, &g, &io::parse_partition(part)?)?;
        let verdict = check_representation(&g, &rep, 1)?;
        let path = rep_out.ok_or_else(|| CliError::Usage("--partition needs --rep-out".into()))?;
        write(path, &io::write_representation(&g, &rep))?;
        r.line("max-excess", verdict.max_excess());
        r.summary.k = Some(verdict.max_excess());
    }
    r.lap("gen");
    Ok(r)
}

fn gen_random(
    cli: &Cli,
    (n, m, k, width, seed): (usize, usize, usize, usize, u64),
    out: Option<&Path>,
    ordering_out: Option<&Path>,
) -> Result<Report, CliError> {
    let mut r = Report::new("gen", cli.timings);
    let (f, p) = random_k_interval_instance(n, m, k, width, seed)?;
    let text = io::write_dimacs(&f, false);
    match out {
        Some(o) => write(o, &text)?,
        None => r.artifact = Some(text),
    }
    if let Some(o) = ordering_out {
        write(o, &io::emit_mixed_ordering(&p))?;
    }
    let w = ordering_width_k(&f, &p)?;
    r.lap("gen");
    r.line("k", w);
    r.line("ordering", &p);
    r.summary.k = Some(w);
    r.summary.ordering = Some(p.to_string());
    Ok(r)
}
