//! Acceptance gate: end-to-end checks of counters, heuristics, generators,
//! the exact solver, and the experiment harness, each printing a
//! `[N] label: PASS/FAIL` line (run with `--nocapture` to see them; the two
//! long-running anchors are `#[ignore]`d and opt-in via `--ignored`).

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng as _;

use bookdraw::generators::{
    gen_kplanar_geometric, max_kplanar_edges, randomize_representation, GeneratorSpec,
};
use bookdraw::harness::{canonicalize, render_csv, run_experiment, ExperimentSpec, PageSpec};
use bookdraw::heuristics::{run_combo, run_ls, run_pa, run_vo};
use bookdraw::seeds::{derive_seed, rng_from_seed};
use bookdraw::{
    count_crossings, count_crossings_reference, exact_book_crossing_number, Graph, HeuristicCombo,
    LocalSearchParams, LsName, PaName, PageAssignment, VertexOrder, VoName,
};

fn verdict(n: u32, label: &str, pass: bool, detail: &str) {
    let v = if pass { "PASS" } else { "FAIL" };
    println!("[{n}] {label}: {v} ({detail})");
    assert!(pass, "[{n}] {label}: FAIL ({detail})");
}

fn mean(xs: &[u64]) -> f64 {
    xs.iter().sum::<u64>() as f64 / xs.len() as f64
}

fn mean_f(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

#[test]
fn fast_counter_matches_reference_on_random_drawings() {
    let started = Instant::now();
    let mut rng = rng_from_seed(derive_seed(0xACCE97, 1));
    let mut mismatches = 0usize;
    for _ in 0..1000 {
        let n = rng.random_range(2..=40);
        let mut pairs = all_pairs(n);
        pairs.shuffle(&mut rng);
        let cap = pairs.len().min(4 * n);
        pairs.truncate(rng.random_range(0..=cap));
        let g = Graph::new(n, pairs).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let vo = VertexOrder::from_order(order).unwrap();
        let k = rng.random_range(1..=5);
        let pages = (0..g.m()).map(|_| rng.random_range(0..k)).collect();
        let pa = PageAssignment::from_pages(k, pages).unwrap();
        if count_crossings(&g, &vo, &pa) != count_crossings_reference(&g, &vo, &pa) {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    verdict(
        1,
        "counter agreement",
        mismatches == 0 && elapsed < Duration::from_secs(10),
        &format!("{mismatches} mismatches in 1000 drawings, {elapsed:.2?}"),
    );
}

fn every_combo() -> Vec<HeuristicCombo> {
    let mut combos = Vec::new();
    for vo in VoName::ALL {
        for pa in std::iter::once(None).chain(PaName::ALL.into_iter().map(Some)) {
            for ls in [
                None,
                Some(LsName::GreedyAlt),
                Some(LsName::GreedyPlus),
                Some(LsName::Sa),
            ] {
                combos.push(HeuristicCombo::new(vo, pa, ls));
            }
        }
    }
    combos
}

#[test]
fn no_heuristic_beats_the_exact_optimum() {
    let started = Instant::now();
    let mut rng = rng_from_seed(derive_seed(0xACCE97, 2));
    let combos = every_combo();
    let params = LocalSearchParams::default();
    let mut runs = 0usize;
    let mut violations = 0usize;
    let mut first = String::new();
    for case in 0..200 {
        let n = rng.random_range(2..=7);
        let mut pairs = all_pairs(n);
        pairs.shuffle(&mut rng);
        pairs.truncate(rng.random_range(0..=pairs.len().min(10)));
        let g = Graph::new(n, pairs).unwrap();
        for k in 1..=3usize {
            let (opt, _) = exact_book_crossing_number(&g, k).unwrap();
            for (ci, combo) in combos.iter().enumerate() {
                let seed = derive_seed(derive_seed(0xACCE97 + 2, case), (k * 1000 + ci) as u64);
                let mut d = run_combo(&g, k, seed, combo, &params).unwrap();
                runs += 1;
                if d.crossings() < opt {
                    violations += 1;
                    if first.is_empty() {
                        first = format!(
                            "{} got {} < optimum {} on n={} m={} k={k}",
                            combo.label(),
                            d.crossings(),
                            opt,
                            g.n(),
                            g.m()
                        );
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    let detail = if violations == 0 {
        format!("{runs} runs all at or above the optimum, {elapsed:.2?}")
    } else {
        format!("{violations} violations, first: {first}")
    };
    verdict(
        2,
        "oracle floor",
        violations == 0 && elapsed < Duration::from_secs(300),
        &detail,
    );
}

#[test]
fn complete_graphs_fit_half_n_pages_without_crossings() {
    let mut worst = 0u64;
    for n in 4..=12usize {
        let g = Graph::complete(n);
        let k = n.div_ceil(2);
        let vo = VertexOrder::identity(n);
        let pa = run_pa(PaName::Circular, &g, &vo, k);
        worst = worst.max(count_crossings(&g, &vo, &pa));
    }
    verdict(
        3,
        "complete-graph zero",
        worst == 0,
        &format!("max crossings {worst} over n=4..=12"),
    );
}

#[test]
fn bfs_orders_lay_out_trees_crossing_free_on_one_page() {
    let mut rng = rng_from_seed(derive_seed(0xACCE97, 4));
    let mut worst = 0u64;
    for case in 0..100 {
        let n = rng.random_range(1..=200);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        let g = Graph::new(n, edges).unwrap();
        let vo = run_vo(VoName::TreeBfs, &g, 1, derive_seed(0xACCE97 + 4, case));
        let pa = PageAssignment::single_page(1, g.m()).unwrap();
        worst = worst.max(count_crossings(&g, &vo, &pa));
    }
    verdict(
        4,
        "tree layout",
        worst == 0,
        &format!("max crossings {worst} over 100 trees"),
    );
}

#[test]
fn ktrees_nearly_embed_on_one_extra_page() {
    let started = Instant::now();
    let mut detail = String::new();
    let mut pass = true;
    for k in [2usize, 3] {
        let mut results = Vec::new();
        for rep in 0..50u64 {
            let gseed = derive_seed(derive_seed(0xACCE97, 5), k as u64 * 100 + rep);
            let g = GeneratorSpec::Ktree { n: 100, k }.generate(gseed).unwrap();
            let combo: HeuristicCombo = "conGreedy+".parse().unwrap();
            let mut d = run_combo(
                &g,
                k + 1,
                derive_seed(gseed, 7),
                &combo,
                &LocalSearchParams::default(),
            )
            .unwrap();
            results.push(d.crossings());
        }
        let m = mean(&results);
        pass &= m < 20.0;
        detail.push_str(&format!("k={k} pages={} mean {m:.2}; ", k + 1));
    }
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(600);
    detail.push_str(&format!("{elapsed:.2?}"));
    verdict(5, "k-tree near-embedding", pass, &detail);
}

#[test]
#[ignore = "long-running anchor; run with --ignored"]
fn triangulations_land_in_the_expected_crossing_band() {
    let started = Instant::now();
    let combo: HeuristicCombo = "conGreedy-ceilFloor".parse().unwrap();
    let mut results = Vec::new();
    for rep in 0..50u64 {
        let gseed = derive_seed(derive_seed(0xACCE97, 6), rep);
        let g = GeneratorSpec::PlanarTopological { n: 250 }
            .generate(gseed)
            .unwrap();
        let mut d = run_combo(
            &g,
            4,
            derive_seed(gseed, 7),
            &combo,
            &LocalSearchParams::default(),
        )
        .unwrap();
        results.push(d.crossings());
    }
    let m = mean(&results);
    let elapsed = started.elapsed();
    verdict(
        6,
        "triangulation anchor",
        (40.0..=90.0).contains(&m) && elapsed < Duration::from_secs(1200),
        &format!("mean {m:.2} over 50 runs at 4 pages, {elapsed:.2?}"),
    );
}

#[test]
#[ignore = "long-running anchor; run with --ignored"]
fn toroidal_grids_stay_hard_on_three_pages() {
    let started = Instant::now();
    let base = GeneratorSpec::Toroidal { i: 16, j: 16 }
        .generate(0)
        .unwrap();
    let combos: Vec<HeuristicCombo> = ["conGreedy+", "conGreedy-ceilFloor", "conCro-ceilFloor"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut results = Vec::new();
    for rep in 0..50u64 {
        let rseed = derive_seed(derive_seed(0xACCE97, 7), rep);
        let (g, _) = randomize_representation(&base, rseed);
        let best = combos
            .iter()
            .enumerate()
            .map(|(ci, combo)| {
                let mut d = run_combo(
                    &g,
                    3,
                    derive_seed(rseed, ci as u64),
                    combo,
                    &LocalSearchParams::default(),
                )
                .unwrap();
                d.crossings()
            })
            .min()
            .unwrap();
        results.push(best);
    }
    let m = mean(&results);
    let elapsed = started.elapsed();
    verdict(
        7,
        "toroidal anchor",
        m > 150.0,
        &format!("best-of-three mean {m:.2} over 50 representations, {elapsed:.2?}"),
    );
}

#[test]
fn generators_hit_their_density_targets() {
    let mut pass = true;
    let mut detail = String::new();

    let mut sats = Vec::new();
    for seed in 0..100u64 {
        let g = GeneratorSpec::OneplanarTopological { n: 250 }
            .generate(derive_seed(0xACCE97 + 8, seed))
            .unwrap();
        sats.push(g.m() as f64 / (4.0 * 250.0 - 8.0));
    }
    let one_planar = mean_f(&sats);
    pass &= (0.86..=1.0).contains(&one_planar);
    detail.push_str(&format!(
        "1-planar mean saturation {one_planar:.4}; geometric"
    ));

    for k in 0..=4usize {
        let mut sats = Vec::new();
        for seed in 0..100u64 {
            let (g, _) =
                gen_kplanar_geometric(150, k, derive_seed(0xACCE97 + 80 + k as u64, seed)).unwrap();
            sats.push(g.m() as f64 / max_kplanar_edges(150, k));
        }
        let sat = mean_f(&sats);
        pass &= (0.75..=0.95).contains(&sat);
        detail.push_str(&format!(" k={k}: {sat:.4}"));
    }
    verdict(8, "generator saturation", pass, &detail);
}

#[test]
fn local_search_schemes_rank_as_expected() {
    let params = LocalSearchParams::default();
    let (mut c0s, mut gas, mut gps, mut sas) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut monotone = true;
    for case in 0..100u64 {
        let gseed = derive_seed(derive_seed(0xACCE97, 9), case);
        let g = GeneratorSpec::RandomLinear { n: 100, a: 4 }
            .generate(gseed)
            .unwrap();
        let vo = run_vo(VoName::RandDfs, &g, 3, derive_seed(gseed, 1));
        let pa = run_pa(PaName::ELen, &g, &vo, 3);
        let mut d0 = bookdraw::BookDrawing::new(g, vo, pa).unwrap();
        let c0 = d0.crossings();
        c0s.push(c0);
        let ls_seed = derive_seed(gseed, 2);
        let mut ga = run_ls(LsName::GreedyAlt, d0.clone(), ls_seed, &params).unwrap();
        let mut gp = run_ls(LsName::GreedyPlus, d0.clone(), ls_seed, &params).unwrap();
        let mut sa = run_ls(LsName::Sa, d0.clone(), ls_seed, &params).unwrap();
        monotone &= ga.crossings() <= c0 && gp.crossings() <= c0;
        gas.push(ga.crossings());
        gps.push(gp.crossings());
        sas.push(sa.crossings());
    }
    let (m0, mga, mgp, msa) = (mean(&c0s), mean(&gas), mean(&gps), mean(&sas));
    let ordered = mgp <= mga && mga <= msa && msa <= m0;
    verdict(
        9,
        "local-search ordering",
        ordered && monotone,
        &format!(
            "means: initial {m0:.1}, greedy+ {mgp:.1}, greedyAlt {mga:.1}, sa {msa:.1}; \
             greedy non-increase on all instances: {monotone}"
        ),
    );
}

#[test]
fn experiment_records_reproduce_byte_for_byte() {
    let spec = ExperimentSpec::new(
        vec![
            GeneratorSpec::Ktree { n: 8, k: 2 },
            GeneratorSpec::Hypercube { d: 3 },
        ],
        vec![
            "conGreedy+".parse().unwrap(),
            "treeBFS-ceilFloor:greedyAlt".parse().unwrap(),
        ],
        PageSpec::List(vec![2, 3]),
    );
    let mut spec = spec;
    spec.reps = 3;
    spec.master_seed = 123;

    let mut a = run_experiment(&spec).unwrap().records;
    let mut b = run_experiment(&spec).unwrap().records;
    canonicalize(&mut a);
    canonicalize(&mut b);
    let csv_identical = render_csv(&a) == render_csv(&b);
    let single = a[5].to_csv_row() == b[5].to_csv_row();
    verdict(
        10,
        "determinism",
        csv_identical && single,
        &format!(
            "canonical CSVs identical: {csv_identical}; sampled record identical: {single}; \
             {} records",
            a.len()
        ),
    );
}
