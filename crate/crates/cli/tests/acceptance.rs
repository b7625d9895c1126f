//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Run with `cargo test -p kinterval-cli --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use kinterval_core::expansion::expand_to_interval;
use kinterval_core::hardness::{
    check_representation, gen_3partition_bigraph, random_k_interval_instance, representation_from_partition,
    ThreePartitionInstance, VertexLabel,
};
use kinterval_core::merge::{feasible_merge, min_merge_k};
use kinterval_core::oracle::{brute_count, brute_max_weight, brute_min_merge_k};
use kinterval_core::ordering::{edges_needed, find_obstruction, ordering_width_k, verify_interval_ordering};
use kinterval_core::ps::{count_models, count_models_detailed, cut_formulas, max_weight, ps_value, ps_width};
use kinterval_core::{Element, Formula, MixedOrdering, SideOrders};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_SEEDS: u64 = 300;
const ORDERINGS_PER_FORMULA: usize = 3;
const ORACLE_MAX_VARS: usize = 14;
const ORACLE_MAX_CLAUSES: usize = 18;
const ORACLE_MAX_WIDTH: usize = 4;
const MAX_WEIGHT: u64 = 10;

const MERGE_SEEDS: u64 = 200;
const MERGE_MAX_VARS: usize = 6;
const MERGE_MAX_CLAUSES: usize = 5;

const EXPANSION_INSTANCES: u64 = 200;
const EXPANSION_MAX_K: usize = 3;

const PS_INSTANCES: u64 = 100;
const PS_MAX_VARS: usize = 12;
const PS_MAX_CLAUSES: usize = 10;
const PS_MAX_K: usize = 2;
const PS_CAP: usize = 24;

const SMALL_EDGES: usize = 10_000;
const LARGE_EDGES: usize = 100_000;
const MAX_TIME_RATIO: f64 = 15.0;
const MAX_LARGE_TIME: Duration = Duration::from_secs(1);
const TIMING_REPEATS: usize = 30;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    match failures.first() {
        None => Outcome {
            pass: true,
            detail: summary,
        },
        Some(first) => Outcome {
            pass: false,
            detail: format!("{summary}; {} failure(s), first: {first}", failures.len()),
        },
    }
}

fn random_formula(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize, max_width: usize) -> Formula {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let vars: Vec<i64> = (1..=n as i64).collect();
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let w = rng.gen_range(1..=max_width.min(n));
        let clause: Vec<i64> = vars
            .choose_multiple(rng, w)
            .map(|&v| if rng.gen_bool(0.5) { -v } else { v })
            .collect();
        clauses.push(clause);
    }
    let weights: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=MAX_WEIGHT)).collect();
    Formula::build(n, &clauses, Some(&weights)).unwrap()
}

fn random_ordering(rng: &mut ChaCha8Rng, f: &Formula) -> MixedOrdering {
    let mut seq: Vec<Element> = MixedOrdering::vars_then_clauses(f).into_elements();
    seq.shuffle(rng);
    MixedOrdering::new(seq)
}

fn random_orders(rng: &mut ChaCha8Rng, f: &Formula) -> SideOrders {
    let mut o = SideOrders::identity(f);
    o.var_order.shuffle(rng);
    o.clause_order.shuffle(rng);
    o
}

fn oracle_corpus() -> Vec<(Formula, Vec<MixedOrdering>)> {
    (0..ORACLE_SEEDS)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_formula(&mut rng, ORACLE_MAX_VARS, ORACLE_MAX_CLAUSES, ORACLE_MAX_WIDTH);
            let ps = (0..ORDERINGS_PER_FORMULA).map(|_| random_ordering(&mut rng, &f)).collect();
            (f, ps)
        })
        .collect()
}

fn merge_corpus() -> Vec<(Formula, SideOrders)> {
    (0..MERGE_SEEDS)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
            let mut f = random_formula(&mut rng, MERGE_MAX_VARS, MERGE_MAX_CLAUSES, 3);
            while f.num_clauses() == 0 {
                f = random_formula(&mut rng, MERGE_MAX_VARS, MERGE_MAX_CLAUSES, 3);
            }
            let o = random_orders(&mut rng, &f);
            (f, o)
        })
        .collect()
}

fn criterion_count(corpus: &[(Formula, Vec<MixedOrdering>)]) -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (i, (f, orderings)) in corpus.iter().enumerate() {
        let expected = brute_count(f).unwrap();
        for p in orderings {
            runs += 1;
            let got = count_models(f, p).unwrap();
            if got != expected {
                failures.push(format!("formula {i} ordering {p}: {got} != {expected}"));
            }
        }
    }
    outcome(&failures, format!("{runs} runs, exact match"))
}

fn criterion_maxsat(corpus: &[(Formula, Vec<MixedOrdering>)]) -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (i, (f, orderings)) in corpus.iter().enumerate() {
        let (expected, _) = brute_max_weight(f).unwrap();
        for p in orderings {
            runs += 1;
            let (w, witness) = max_weight(f, p).unwrap();
            let recheck = f.satisfied_weight(&witness).unwrap();
            if w != expected || recheck != w {
                failures.push(format!("formula {i}: weight {w}, brute {expected}, witness {recheck}"));
            }
        }
    }
    outcome(&failures, format!("{runs} runs, exact weights, witnesses re-evaluated"))
}

fn criterion_merge(corpus: &[(Formula, SideOrders)]) -> Outcome {
    let mut failures = Vec::new();
    let mut max_k = 0;
    for (i, (f, o)) in corpus.iter().enumerate() {
        let r = min_merge_k(f, o).unwrap();
        let brute = brute_min_merge_k(f, o).unwrap();
        let width = ordering_width_k(f, &r.ordering).unwrap();
        max_k = max_k.max(r.k);
        if r.k != brute || width != r.k || !o.is_merged_by(&r.ordering) {
            failures.push(format!("instance {i}: greedy {}, brute {brute}, witness width {width}", r.k));
        }
    }
    outcome(&failures, format!("{} instances, k up to {max_k}", corpus.len()))
}

fn criterion_edges_added(corpus: &[(Formula, SideOrders)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, (f, o)) in corpus.iter().enumerate() {
        let r = min_merge_k(f, o).unwrap();
        for ins in &r.insertions {
            checked += 1;
            let needed = edges_needed(f, &r.ordering, ins.clause).unwrap().len();
            if needed != ins.edges_added {
                failures.push(format!(
                    "instance {i} c{}: scan {} vs recomputed {needed}",
                    ins.clause, ins.edges_added
                ));
            }
        }
    }
    outcome(&failures, format!("{checked} insertions, exact match"))
}

fn criterion_obstruction(corpus: &[(Formula, SideOrders)]) -> Outcome {
    let mut failures = Vec::new();
    let mut obstructed = 0;
    for (i, (f, o)) in corpus.iter().enumerate() {
        let found = find_obstruction(f, o).unwrap();
        let zero = feasible_merge(f, o, 0).unwrap().is_some();
        obstructed += found.is_some() as usize;
        if found.is_some() == zero {
            failures.push(format!("instance {i}: obstruction {found:?}, zero-width merge {zero}"));
        }
    }
    outcome(
        &failures,
        format!("{} instances, {obstructed} obstructed, all agree with q=0", corpus.len()),
    )
}

fn criterion_expansion() -> Outcome {
    let mut failures = Vec::new();
    let mut max_clauses = 0;
    for seed in 0..EXPANSION_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000 + seed);
        let k = rng.gen_range(0..=EXPANSION_MAX_K);
        let width = rng.gen_range(k.max(1)..=4);
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(1..=8);
        let (f, p) = random_k_interval_instance(n, m, k, width, seed).unwrap();
        let e = expand_to_interval(&f, &p).unwrap();
        max_clauses = max_clauses.max(e.formula.num_clauses());
        let interval = verify_interval_ordering(&e.formula, &e.ordering).unwrap().ok();
        let original = count_models(&f, &p).unwrap();
        let expanded = brute_count(&e.formula).unwrap();
        if !interval || original != expanded {
            failures.push(format!("seed {seed}: interval {interval}, counts {original} vs {expanded}"));
        }
    }
    outcome(
        &failures,
        format!("{EXPANSION_INSTANCES} instances, up to {max_clauses} expanded clauses"),
    )
}

/// Distinct presat sets per cut never exceed the ps-value of that cut's
/// suffix fragment.
fn presat_within_ps(f: &Formula, p: &MixedOrdering) -> Option<String> {
    let sets = count_models_detailed(f, p, true).unwrap().stats.presat_sets.unwrap();
    for (i, family) in sets.iter().enumerate() {
        let cut = cut_formulas(f, p, i + 1).unwrap();
        let bound = ps_value(&cut.suffix, PS_CAP).unwrap();
        if family.len() > bound {
            return Some(format!("cut {}: {} presat sets > ps-value {bound}", i + 1, family.len()));
        }
    }
    None
}

fn criterion_ps() -> Outcome {
    let mut failures = Vec::new();
    let mut widest = 0;
    for seed in 0..PS_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(3_000 + seed);
        let n = rng.gen_range(1..=PS_MAX_VARS);
        let m = rng.gen_range(1..=PS_MAX_CLAUSES);
        let width = rng.gen_range(1..=4);
        let (f, p) = random_k_interval_instance(n, m, 0, width, seed).unwrap();
        let w = ps_width(&f, &p, PS_CAP).unwrap();
        widest = widest.max(w);
        if w > m + 1 {
            failures.push(format!("interval seed {seed}: ps-width {w} > {}", m + 1));
        }
        if let Some(e) = presat_within_ps(&f, &p) {
            failures.push(format!("interval seed {seed}: {e}"));
        }

        let k = rng.gen_range(1..=PS_MAX_K);
        let width = rng.gen_range(k..=4);
        let (f, p) = random_k_interval_instance(n, m, k, width, seed).unwrap();
        let e = expand_to_interval(&f, &p).unwrap();
        let w = ps_width(&e.formula, &e.ordering, PS_CAP).unwrap();
        let bound = m * (1 << k) + 1;
        if w > bound {
            failures.push(format!("{k}-interval seed {seed}: expanded ps-width {w} > {bound}"));
        }
        for (g, q) in [(&f, &p), (&e.formula, &e.ordering)] {
            if let Some(err) = presat_within_ps(g, q) {
                failures.push(format!("{k}-interval seed {seed}: {err}"));
            }
        }
    }
    outcome(
        &failures,
        format!("{PS_INSTANCES} interval + {PS_INSTANCES} k-interval instances, interval ps-width up to {widest}"),
    )
}

fn closed_form_vertices(n: usize, b: usize, sizes: &[u64]) -> usize {
    n * (b + 1) + n * b + 3 * (n - 1) + 1 + 4 + sizes.iter().map(|&s| 2 * s as usize + 1).sum::<usize>()
}

fn closed_form_edges(n: usize, b: usize) -> usize {
    let track = n * (b + 1) + (n - 1) - usize::from(n >= 2);
    2 * n * b + 8 * (n - 1) + track + 6 + 3 * n * b
}

fn criterion_hardness() -> Outcome {
    let cases: [(u64, Vec<u64>, Vec<[usize; 3]>); 3] = [
        (9, vec![3, 3, 3], vec![[1, 2, 3]]),
        (9, vec![3; 6], vec![[1, 2, 3], [4, 5, 6]]),
        (13, vec![4, 4, 5, 4, 4, 5], vec![[1, 2, 3], [4, 5, 6]]),
    ];
    let mut failures = Vec::new();
    let mut shapes = Vec::new();
    for (b, sizes, partition) in cases {
        let n = sizes.len() / 3;
        let inst = ThreePartitionInstance::new(b, sizes.clone()).unwrap();
        let g = gen_3partition_bigraph(&inst);
        let (v, e) = (g.num_vertices(), g.num_edges());
        let (cv, ce) = (closed_form_vertices(n, b as usize, &sizes), closed_form_edges(n, b as usize));
        shapes.push(format!("{v}/{e}"));
        if (v, e) != (cv, ce) {
            failures.push(format!("b={b} n={n}: {v} vertices/{e} edges, closed form {cv}/{ce}"));
        }
        let rep = representation_from_partition(&inst, &g, &partition).unwrap();
        let one = check_representation(&g, &rep, 1).unwrap().accepted;
        let zero = check_representation(&g, &rep, 0).unwrap();
        if !one || zero.accepted {
            failures.push(format!("b={b} n={n}: k=1 accepted {one}, k=0 accepted {}", zero.accepted));
        }
        // the track overlaps the first delimiter exactly when there is one
        let track = g.vertex(VertexLabel::Track).unwrap();
        let track_excess = zero.excess.iter().find(|(d, _)| *d == track).map_or(0, |(_, x)| x.len());
        if track_excess != usize::from(n >= 2) {
            failures.push(format!("b={b} n={n}: track excess {track_excess}"));
        }
    }
    outcome(
        &failures,
        format!("3 YES instances, vertices/edges {}", shapes.join(", ")),
    )
}

/// A width-2 instance from the generator with roughly `edges` incidences,
/// merged from its own side orders.
fn merge_instance(edges: usize) -> (Formula, SideOrders) {
    const WIDTH: usize = 5;
    let m = edges / 3;
    let (f, p) = random_k_interval_instance(m, m, 2, WIDTH, 77).unwrap();
    let orders = p.side_orders();
    (f, orders)
}

fn time_merge(f: &Formula, orders: &SideOrders) -> Duration {
    let start = Instant::now();
    let merged = feasible_merge(f, orders, 2).unwrap();
    let elapsed = start.elapsed();
    assert!(merged.is_some(), "width-2 instance must merge at q = 2");
    elapsed
}

fn criterion_scaling() -> Outcome {
    let (sf, so) = merge_instance(SMALL_EDGES);
    let (lf, lo) = merge_instance(LARGE_EDGES);
    let (small_e, large_e) = (sf.num_incidences(), lf.num_incidences());
    // alternate the sizes so both see the same machine state; the first
    // round warms the allocator and caches and is not counted
    time_merge(&sf, &so);
    time_merge(&lf, &lo);
    let (mut small, mut large) = (Duration::MAX, Duration::MAX);
    for _ in 0..TIMING_REPEATS {
        small = small.min(time_merge(&sf, &so));
        large = large.min(time_merge(&lf, &lo));
    }
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-9);
    let summary = format!(
        "{small_e} edges {:.2} ms, {large_e} edges {:.2} ms, ratio {ratio:.1} (limit {MAX_TIME_RATIO}), limit {} ms",
        small.as_secs_f64() * 1e3,
        large.as_secs_f64() * 1e3,
        MAX_LARGE_TIME.as_millis()
    );
    let mut failures = Vec::new();
    if ratio > MAX_TIME_RATIO {
        failures.push(format!("ratio {ratio:.1}"));
    }
    if large > MAX_LARGE_TIME {
        failures.push(format!("{large:?} at {large_e} edges"));
    }
    outcome(&failures, summary)
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_kinterval")
}

type Files = Vec<(String, Vec<u8>)>;

fn run_cli(dir: &Path, args: &[&str]) -> (i32, Vec<u8>, Files) {
    let out = Command::new(bin()).args(args).current_dir(dir).output().unwrap();
    // files written by the command, in name order
    let mut files: Files = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "out"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    for (name, _) in &files {
        std::fs::remove_file(dir.join(name)).unwrap();
    }
    (out.status.code().unwrap_or(-1), out.stdout, files)
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kinterval-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn criterion_determinism() -> Outcome {
    let dir = scratch_dir();
    let files = [
        ("cross.cnf", "p cnf 2 2\n2 0\n1 0\n"),
        ("mixed.wcnf", "p wcnf 4 5\n3 1 -2 0\n2 2 3 0\n5 -1 4 0\n1 -3 -4 0\n4 2 0\n"),
        ("mixed.ord", "v 4 1 3 2\nc 2 5 1 3 4\n"),
        ("mixed.pi", "x1 c1 x2 c5 c2 x3 x4 c3 c4\n"),
        ("empty.cnf", "p cnf 2 3\n1 0\n0\n-2 1 0\n"),
    ];
    for (name, text) in files {
        std::fs::write(dir.join(name), text).unwrap();
    }
    let cases: &[&[&str]] = &[
        &["merge", "cross.cnf"],
        &["merge", "mixed.wcnf", "--orders", "mixed.ord"],
        &["merge", "mixed.wcnf", "--q", "0"],
        &["merge", "empty.cnf"],
        &["check", "mixed.wcnf", "--ordering", "mixed.pi", "--k", "1"],
        &["obstruct", "cross.cnf"],
        &["obstruct", "mixed.wcnf", "--orders", "mixed.ord"],
        &["solve", "mixed.wcnf", "--ordering", "mixed.pi", "--mode", "count"],
        &["solve", "mixed.wcnf", "--orders", "mixed.ord", "--mode", "maxsat"],
        &["pipeline", "mixed.wcnf"],
        &["pipeline", "empty.cnf", "--mode", "maxsat"],
        &["expand", "mixed.wcnf", "--ordering", "mixed.pi"],
        &["expand", "mixed.wcnf", "--ordering", "mixed.pi", "--out", "x.out", "--map", "m.out", "--ordering-out", "p.out"],
        &["pswidth", "mixed.wcnf", "--ordering", "mixed.pi"],
        &["oracle", "mixed.wcnf", "--mode", "count"],
        &["oracle", "mixed.wcnf", "--mode", "maxsat"],
        &["oracle", "mixed.wcnf", "--mode", "merge", "--orders", "mixed.ord"],
        &["gen", "3part", "--b", "13", "--sizes", "4,4,5,4,4,5"],
        &["gen", "3part", "--b", "9", "--sizes", "3,3,3", "--partition", "1,2,3", "--out", "g.out", "--rep-out", "r.out"],
        &["gen", "random", "--n", "9", "--m", "7", "--k", "2", "--width", "3", "--seed", "11"],
        &["gen", "random", "--n", "9", "--m", "7", "--k", "1", "--width", "3", "--seed", "4", "--out", "f.out", "--ordering-out", "o.out"],
    ];
    let mut failures = Vec::new();
    let mut runs = 0;
    let subcommands: std::collections::BTreeSet<&str> = cases.iter().map(|c| c[0]).collect();
    for case in cases {
        for json in [false, true] {
            let mut args: Vec<&str> = case.to_vec();
            if json {
                args.insert(0, "--json");
            }
            let first = run_cli(&dir, &args);
            let second = run_cli(&dir, &args);
            runs += 2;
            if first.0 == 2 {
                failures.push(format!("`{}` exited with a usage error", args.join(" ")));
            }
            if first != second {
                failures.push(format!("`{}` differs between runs", args.join(" ")));
            }
        }
    }
    std::fs::remove_dir_all(&dir).ok();
    outcome(
        &failures,
        format!("{runs} runs over {} subcommands, plain and JSON, byte-identical", subcommands.len()),
    )
}

fn main() {
    let corpus = oracle_corpus();
    let merges = merge_corpus();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("#SAT oracle equivalence", Box::new(|| criterion_count(&corpus))),
        ("MaxSAT oracle equivalence", Box::new(|| criterion_maxsat(&corpus))),
        ("greedy merge optimality", Box::new(|| criterion_merge(&merges))),
        ("scan edge counts match final ordering", Box::new(|| criterion_edges_added(&merges))),
        ("obstruction iff no zero-width merge", Box::new(|| criterion_obstruction(&merges))),
        ("expansion soundness", Box::new(criterion_expansion)),
        ("ps-width bounds", Box::new(criterion_ps)),
        ("hardness generator", Box::new(criterion_hardness)),
        ("merge scalability", Box::new(criterion_scaling)),
        ("CLI determinism", Box::new(criterion_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {verdict} {name}: {} [{:.1} s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
