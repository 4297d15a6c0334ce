//! Acceptance suite: one test per release gate. Each test prints the values
//! it measured before asserting, so a failing line carries its own evidence.
//!
//! Gates covered, in order:
//!   a1  generators hit the published node/link cardinality exactly
//!   a2  bosam ordering matches a materialized-sequence oracle on small graphs
//!   a3  golden bitmap fixtures plus symmetry/diagonal invariants
//!   a4  border concentration of black pixels by model family
//!   a5  degree-exponent fit separates BA from ER
//!   a6  PFP structural properties (assortativity, rich club, mean path)
//!   a7  full-scale parse/order/render within time and memory budgets
//!   a8  metrics agree with independent oracles
//!   a9  CLI invocations are byte-for-byte deterministic

use std::collections::HashSet;
use std::fs;
use std::io::{BufReader, BufWriter};
use std::process::Command;
use std::time::{Duration, Instant};

use bosam::graph::{Graph, NodeId};
use bosam::metrics::{
    assortativity, fit_powerlaw, mean_shortest_path, rich_club,
};
use bosam::models::{generate_ba, generate_er, generate_pfp, PfpParams};
use bosam::ordering::{bosam_order, NodeOrdering, OrderingMode};
use bosam::render::{border_density, encode_pbm, rasterize, Bitmap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PUBLISHED_NODES: usize = 9_204;
const PUBLISHED_LINKS: usize = 27_612;
const SCALE_NODES: usize = 317_592;
const SCALE_LINKS: usize = 7_396_948;

/// Random simple graph on `n` nodes where each pair is included with a
/// per-case density drawn from the same RNG. Labels are `n0..n{n-1}`.
fn seeded_random_graph(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> Graph {
    let n = rng.random_range(min_n..=max_n);
    let density: f64 = rng.random();
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.random::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|i| format!("n{i}")).collect();
    Graph::from_edges(labels, &edges).expect("generated pairs are simple")
}

// ---------------------------------------------------------------------------
// a1: exact cardinalities from every generator
// ---------------------------------------------------------------------------

#[test]
fn a1_generators_hit_exact_published_cardinalities() {
    for seed in 1..=5u64 {
        let runs: [(&str, Box<dyn Fn() -> Graph>); 3] = [
            (
                "er",
                Box::new(move || {
                    generate_er(PUBLISHED_NODES, PUBLISHED_LINKS, seed).unwrap()
                }),
            ),
            (
                "ba",
                Box::new(move || {
                    generate_ba(PUBLISHED_NODES, PUBLISHED_LINKS, 3, seed).unwrap()
                }),
            ),
            (
                "pfp",
                Box::new(move || {
                    generate_pfp(PUBLISHED_NODES, PUBLISHED_LINKS, &PfpParams::default(), seed)
                        .unwrap()
                }),
            ),
        ];
        for (name, build) in runs {
            let start = Instant::now();
            let graph = build();
            let elapsed = start.elapsed();
            println!(
                "a1 {name} seed {seed}: {} nodes, {} links in {elapsed:.2?}",
                graph.node_count(),
                graph.link_count()
            );
            assert_eq!(graph.node_count(), PUBLISHED_NODES, "{name} seed {seed} node count");
            assert_eq!(graph.link_count(), PUBLISHED_LINKS, "{name} seed {seed} link count");
            assert!(
                elapsed < Duration::from_secs(10),
                "{name} seed {seed} took {elapsed:.2?}, budget 10 s"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// a2: ordering against a brute-force materialized-sequence oracle
// ---------------------------------------------------------------------------

/// Independent re-statement of the ordering definition: materialize every
/// node's neighbor-degree sequence, then sort by (degree desc, sequence rule,
/// id asc) with plain Vec comparisons.
fn oracle_order(graph: &Graph, mode: OrderingMode) -> Vec<NodeId> {
    let n = graph.node_count();
    let seqs: Vec<Vec<usize>> = (0..n as NodeId)
        .map(|u| {
            let mut s: Vec<usize> =
                graph.neighbors(u).iter().map(|&v| graph.degree(v)).collect();
            match mode {
                OrderingMode::Cohesion => s.sort_unstable_by(|a, b| b.cmp(a)),
                OrderingMode::Radiation => s.sort_unstable(),
            }
            s
        })
        .collect();
    let mut ids: Vec<NodeId> = (0..n as NodeId).collect();
    ids.sort_by(|&a, &b| {
        graph
            .degree(b)
            .cmp(&graph.degree(a))
            .then_with(|| match mode {
                OrderingMode::Cohesion => seqs[b as usize].cmp(&seqs[a as usize]),
                OrderingMode::Radiation => seqs[a as usize].cmp(&seqs[b as usize]),
            })
            .then(a.cmp(&b))
    });
    ids
}

#[test]
fn a2_ordering_matches_materialized_sequence_oracle() {
    let start = Instant::now();
    let cases = 10_000u64;
    let mut mismatches = 0usize;
    for case in 0..cases {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let graph = seeded_random_graph(&mut rng, 2, 8);
        for mode in [OrderingMode::Cohesion, OrderingMode::Radiation] {
            let got = bosam_order(&graph, mode);
            let want = oracle_order(&graph, mode);
            if got.as_slice() != want.as_slice() {
                mismatches += 1;
                println!(
                    "a2 mismatch case {case} {mode}: got {:?} want {want:?} on\n{}",
                    got.as_slice(),
                    graph.to_edge_list_string()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    println!("a2: {cases} graphs x2 modes, {mismatches} mismatches in {elapsed:.2?}");
    assert_eq!(mismatches, 0);
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:.2?}, budget 30 s");
}

// ---------------------------------------------------------------------------
// a3: golden bitmaps and per-render invariants
// ---------------------------------------------------------------------------

const PATH3: &str = "a b\nb c\n";
const NINE: &str = "h x\nh a\nh b\nh c\nx f\ny z\ny w\nz w\n";

fn render_full(text: &str, mode: OrderingMode) -> Bitmap {
    let graph = Graph::parse_str(text).unwrap();
    let ordering = bosam_order(&graph, mode);
    let n = graph.node_count() as u32;
    rasterize(&graph, &ordering, n, 1).unwrap()
}

#[test]
fn a3_golden_bitmaps_and_render_invariants() {
    let cases: [(&str, OrderingMode, &[u8]); 3] = [
        (PATH3, OrderingMode::Cohesion, include_bytes!("fixtures/path3_cohesion.pbm")),
        (NINE, OrderingMode::Cohesion, include_bytes!("fixtures/nine_cohesion.pbm")),
        (NINE, OrderingMode::Radiation, include_bytes!("fixtures/nine_radiation.pbm")),
    ];
    for (text, mode, golden) in cases {
        let encoded = encode_pbm(&render_full(text, mode));
        assert_eq!(
            encoded, golden,
            "{mode} render of {} nodes diverges from the committed fixture",
            Graph::parse_str(text).unwrap().node_count()
        );
    }
    println!("a3: 3 golden fixtures byte-identical");

    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa3);
        let graph = seeded_random_graph(&mut rng, 2, 200);
        let n = graph.node_count() as u32;
        let ordering = bosam_order(&graph, OrderingMode::Cohesion);
        let bitmap = rasterize(&graph, &ordering, n, 1).unwrap();
        for y in 0..n {
            assert!(!bitmap.get(y, y), "seed {seed}: diagonal pixel {y} is black");
            for x in 0..y {
                assert_eq!(
                    bitmap.get(x, y),
                    bitmap.get(y, x),
                    "seed {seed}: pixel ({x},{y}) breaks symmetry"
                );
            }
        }
    }
    println!("a3: symmetry + white diagonal hold on 100 seeded full-resolution renders");
}

// ---------------------------------------------------------------------------
// a4: border concentration by model family
// ---------------------------------------------------------------------------

#[test]
fn a4_border_concentration_separates_model_families() {
    let mut er = Vec::new();
    let mut ba = Vec::new();
    let mut pfp = Vec::new();
    for seed in 1..=5u64 {
        for (name, sink, graph) in [
            ("er", &mut er, generate_er(PUBLISHED_NODES, PUBLISHED_LINKS, seed).unwrap()),
            ("ba", &mut ba, generate_ba(PUBLISHED_NODES, PUBLISHED_LINKS, 3, seed).unwrap()),
            (
                "pfp",
                &mut pfp,
                generate_pfp(PUBLISHED_NODES, PUBLISHED_LINKS, &PfpParams::default(), seed)
                    .unwrap(),
            ),
        ] {
            let ordering = bosam_order(&graph, OrderingMode::Cohesion);
            let bitmap = rasterize(&graph, &ordering, 512, 1).unwrap();
            let density = border_density(&bitmap, 0.5).unwrap();
            println!("a4 {name} seed {seed}: border density {density:.4}");
            sink.push(density);
        }
    }
    for (seed0, &d) in ba.iter().enumerate() {
        assert!(d > 0.95, "ba seed {}: border density {d:.4} not > 0.95", seed0 + 1);
    }
    for (seed0, &d) in pfp.iter().enumerate() {
        assert!(d > 0.95, "pfp seed {}: border density {d:.4} not > 0.95", seed0 + 1);
    }
    for (seed0, &d) in er.iter().enumerate() {
        assert!(
            (0.70..=0.80).contains(&d),
            "er seed {}: border density {d:.4} outside [0.70, 0.80]",
            seed0 + 1
        );
    }
}

// ---------------------------------------------------------------------------
// a5: degree-exponent fit separates BA from ER
// ---------------------------------------------------------------------------

#[test]
fn a5_degree_exponent_separates_ba_from_er() {
    let nodes = 10_000usize;
    let links = 21 + 3 * (nodes - 7); // BA with 3 links per node from a 7-clique
    let mut ba_fits = Vec::new();
    let mut er_fits: Vec<Option<f64>> = Vec::new();
    for seed in 1..=5u64 {
        let graph = generate_ba(nodes, links, 3, seed).unwrap();
        let fit = fit_powerlaw(&graph, 5).unwrap();
        println!(
            "a5 ba seed {seed}: exponent {:.4} (tail {} nodes)",
            fit.exponent, fit.n_tail
        );
        ba_fits.push(fit.exponent);
    }
    for seed in 1..=5u64 {
        let graph = generate_er(nodes, links, seed).unwrap();
        match fit_powerlaw(&graph, 5) {
            Err(e) => {
                println!("a5 er seed {seed}: fit rejected ({e})");
                er_fits.push(None);
            }
            Ok(fit) => {
                println!(
                    "a5 er seed {seed}: exponent {:.4} (tail {} nodes)",
                    fit.exponent, fit.n_tail
                );
                er_fits.push(Some(fit.exponent));
            }
        }
    }
    for (seed0, &alpha) in ba_fits.iter().enumerate() {
        assert!(
            (2.7..=3.3).contains(&alpha),
            "ba seed {}: exponent {alpha:.4} outside [2.7, 3.3]",
            seed0 + 1
        );
    }
    for (seed0, fit) in er_fits.iter().enumerate() {
        if let Some(alpha) = fit {
            assert!(
                *alpha > 3.5,
                "er seed {}: fit succeeded with exponent {alpha:.4}, \
                 neither rejected nor > 3.5",
                seed0 + 1
            );
        }
    }
}

// ---------------------------------------------------------------------------
// a6: PFP structural properties
// ---------------------------------------------------------------------------

#[test]
fn a6_pfp_structural_properties() {
    let start = Instant::now();
    for seed in 1..=5u64 {
        let pfp =
            generate_pfp(PUBLISHED_NODES, PUBLISHED_LINKS, &PfpParams::default(), seed).unwrap();
        let er = generate_er(PUBLISHED_NODES, PUBLISHED_LINKS, seed).unwrap();

        let r = assortativity(&pfp).unwrap().expect("degree variance is positive");
        let phi_pfp = rich_club(&pfp, &[92]).unwrap()[0].1;
        let phi_er = rich_club(&er, &[92]).unwrap()[0].1;
        let path = mean_shortest_path(&pfp, 20_000, 1_000, seed).unwrap();
        println!(
            "a6 seed {seed}: assortativity {r:.4}, phi_pfp(92) {phi_pfp:.4} vs \
             phi_er(92) {phi_er:.4}, mean path {:.4} (exact: {})",
            path.hops, path.exact
        );

        assert!(r < -0.05, "seed {seed}: assortativity {r:.4} not < -0.05");
        assert!(
            phi_pfp >= 5.0 * phi_er,
            "seed {seed}: phi(92) {phi_pfp:.4} below 5x the ER value {phi_er:.4}"
        );
        assert!(
            (2.6..=3.6).contains(&path.hops),
            "seed {seed}: mean path {:.4} outside [2.6, 3.6]",
            path.hops
        );
    }
    let elapsed = start.elapsed();
    println!("a6: 5 seeds in {elapsed:.2?}");
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:.2?}, budget 2 min");
}

// ---------------------------------------------------------------------------
// a7: full-scale parse/order/render within time and memory budgets
// ---------------------------------------------------------------------------

/// Peak resident set of this process in KiB, from /proc/self/status.
fn peak_rss_kib() -> u64 {
    let status = fs::read_to_string("/proc/self/status").expect("read /proc/self/status");
    status
        .lines()
        .find_map(|line| {
            line.strip_prefix("VmHWM:")
                .and_then(|rest| rest.trim().strip_suffix("kB"))
                .and_then(|kb| kb.trim().parse::<u64>().ok())
        })
        .expect("VmHWM line present")
}

/// Expected pixel value computed directly from the definition: black iff the
/// position block the pixel covers contains a link between distinct nodes.
fn expected_pixel(
    graph: &Graph,
    ordering: &NodeOrdering,
    n_prime: u64,
    resolution: u64,
    x: u64,
    y: u64,
) -> bool {
    let cols = (x * n_prime / resolution + 1)..=((x + 1) * n_prime / resolution);
    for i in cols {
        let u = ordering.node_at(i as u32);
        let rows = (y * n_prime / resolution + 1)..=((y + 1) * n_prime / resolution);
        for j in rows {
            if graph.has_edge(u, ordering.node_at(j as u32)) {
                return true;
            }
        }
    }
    false
}

#[test]
fn a7_full_scale_render_within_budgets() {
    let graph = generate_er(SCALE_NODES, SCALE_LINKS, 20).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scale.txt");
    graph
        .write_edge_list(BufWriter::new(fs::File::create(&path).unwrap()))
        .unwrap();
    drop(graph);

    let start = Instant::now();
    let (graph, report) =
        Graph::parse_edge_list(BufReader::new(fs::File::open(&path).unwrap())).unwrap();
    let parse_done = start.elapsed();
    let ordering = bosam_order(&graph, OrderingMode::Cohesion);
    let order_done = start.elapsed();
    let bitmap = rasterize(&graph, &ordering, 1024, 1).unwrap();
    let elapsed = start.elapsed();
    println!(
        "a7: parse {parse_done:.2?} ({} filler self-loops dropped), order {order_done:.2?}, \
         render {elapsed:.2?} total; {} nodes, {} links",
        report.self_loops_dropped,
        graph.node_count(),
        graph.link_count()
    );
    assert_eq!(graph.node_count(), SCALE_NODES);
    assert_eq!(graph.link_count(), SCALE_LINKS);
    assert!(bitmap.count_black() > 0);
    assert!(
        elapsed < Duration::from_secs(120),
        "parse+order+render took {elapsed:.2?}, budget 120 s"
    );

    // Zoomed renders, each spot-checked against the block definition on a
    // random pixel sample.
    let mut rng = ChaCha8Rng::seed_from_u64(0xa7);
    for zoom in [4u32, 16, 64] {
        let zoomed = rasterize(&graph, &ordering, 1024, zoom).unwrap();
        let n_prime = (SCALE_NODES as u64).div_ceil(zoom as u64);
        for _ in 0..200 {
            let x = rng.random_range(0..1024u32);
            let y = rng.random_range(0..1024u32);
            assert_eq!(
                zoomed.get(x, y),
                expected_pixel(&graph, &ordering, n_prime, 1024, x as u64, y as u64),
                "zoom {zoom}: pixel ({x},{y}) diverges from the block definition"
            );
        }
        println!("a7 zoom 1:{zoom}: 200 sampled pixels match the block definition");
    }

    let peak_kib = peak_rss_kib();
    println!("a7: peak RSS {:.2} GiB", peak_kib as f64 / (1024.0 * 1024.0));
    assert!(
        peak_kib < 4 * 1024 * 1024,
        "peak RSS {peak_kib} KiB exceeds 4 GiB"
    );
}

// ---------------------------------------------------------------------------
// a8: metrics against independent oracles
// ---------------------------------------------------------------------------

/// Pearson correlation over explicitly materialized oriented link endpoints,
/// mirroring the accumulation order of the production routine so agreement
/// must be bit-exact.
fn oracle_assortativity(graph: &Graph) -> Option<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for u in 0..graph.node_count() as NodeId {
        for &v in graph.neighbors(u) {
            xs.push(graph.degree(u) as f64);
            ys.push(graph.degree(v) as f64);
        }
    }
    let mut sum = 0.0;
    for &x in &xs {
        sum += x;
    }
    let mean = sum / xs.len() as f64;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(&ys) {
        let dx = x - mean;
        let dy = y - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Random simple graph with at least one and at most `max_links` links.
fn seeded_bounded_graph(case: u64, max_links: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(case);
    let n = rng.random_range(2..=40usize);
    let cap = max_links.min(n * (n - 1) / 2);
    let target = rng.random_range(1..=cap);
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    while edges.len() < target {
        let a = rng.random_range(0..n as NodeId);
        let b = rng.random_range(0..n as NodeId);
        if a == b {
            continue;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if seen.insert((lo, hi)) {
            edges.push((lo, hi));
        }
    }
    let labels = (0..n).map(|i| format!("n{i}")).collect();
    Graph::from_edges(labels, &edges).unwrap()
}

#[test]
fn a8_metrics_match_independent_oracles() {
    for case in 0..1_000u64 {
        let graph = seeded_bounded_graph(case, 200);
        let got = assortativity(&graph).unwrap();
        let want = oracle_assortativity(&graph);
        assert_eq!(
            got, want,
            "case {case}: assortativity {got:?} != materialized Pearson {want:?}"
        );
    }
    println!("a8: assortativity bit-exact against materialized Pearson on 1000 cases");

    let star = Graph::parse_str(
        "hub a\nhub b\nhub c\nhub d\nhub e\nhub f\nhub g\nhub h\nhub i\n",
    )
    .unwrap();
    assert_eq!(assortativity(&star).unwrap(), Some(-1.0), "star must give exactly -1");

    let cycle = Graph::parse_str("a b\nb c\nc d\nd a\n").unwrap();
    assert_eq!(assortativity(&cycle).unwrap(), None, "regular graph must be undefined");
    println!("a8: star -> -1.0 exactly, regular -> undefined");

    let p3 = Graph::parse_str("a b\nb c\n").unwrap();
    let path = mean_shortest_path(&p3, 10, 0, 0).unwrap();
    assert!(path.exact);
    assert_eq!(path.hops, 4.0 / 3.0, "three-node path mean distance must be exactly 4/3");
    println!("a8: path-of-3 mean distance is exactly 4/3");

    let nodes = 5_000usize;
    let graph = generate_ba(nodes, 21 + 3 * (nodes - 7), 3, 7).unwrap();
    let exact = mean_shortest_path(&graph, nodes, 0, 0).unwrap();
    let sampled = mean_shortest_path(&graph, 0, 1_000, 0).unwrap();
    assert!(exact.exact && !sampled.exact);
    let rel = (sampled.hops - exact.hops).abs() / exact.hops;
    println!(
        "a8: mean path exact {:.5} vs sampled {:.5} ({} sources), rel err {:.4}",
        exact.hops, sampled.hops, sampled.sources_sampled, rel
    );
    assert!(rel <= 0.02, "sampled mean path off by {rel:.4} (> 2%)");
}

// ---------------------------------------------------------------------------
// a9: CLI determinism
// ---------------------------------------------------------------------------

/// Run the CLI binary, asserting success, and return the bytes of `outputs`
/// (read back afterwards) plus captured stdout.
fn run_cli(dir: &std::path::Path, args: &[&str], outputs: &[&str]) -> Vec<Vec<u8>> {
    let result = Command::new(env!("CARGO_BIN_EXE_bosam"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn CLI");
    assert!(
        result.status.success(),
        "bosam {args:?} failed: {}",
        String::from_utf8_lossy(&result.stderr)
    );
    let mut bytes: Vec<Vec<u8>> = outputs
        .iter()
        .map(|name| fs::read(dir.join(name)).expect("read CLI output"))
        .collect();
    bytes.push(result.stdout);
    bytes
}

#[test]
fn a9_cli_runs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let invocations: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (
            vec!["generate", "--model", "er", "--nodes", "2000", "--links", "6000",
                 "--seed", "5", "--out", "er.txt"],
            vec!["er.txt"],
        ),
        (
            vec!["generate", "--model", "ba", "--nodes", "2000", "--links", "6000",
                 "--ba-m", "3", "--seed", "5", "--out", "ba.txt"],
            vec!["ba.txt"],
        ),
        (
            vec!["generate", "--model", "pfp", "--nodes", "2000", "--links", "6000",
                 "--seed", "5", "--out", "pfp.txt"],
            vec!["pfp.txt"],
        ),
        (
            vec!["order", "--in", "er.txt", "--mode", "radiation", "--out", "er.ord"],
            vec!["er.ord"],
        ),
        (
            vec!["render", "--in", "er.txt", "--order-file", "er.ord", "--size", "128",
                 "--out", "er.pbm"],
            vec!["er.pbm"],
        ),
        (
            vec!["render", "--in", "pfp.txt", "--size", "128", "--zoom", "4",
                 "--out", "pfp.pbm"],
            vec!["pfp.pbm"],
        ),
        (
            vec!["metrics", "--in", "pfp.txt", "--kmin", "5", "--ranks", "2,8,92",
                 "--sample-sources", "500", "--seed", "3"],
            vec![],
        ),
    ];
    for (args, outputs) in &invocations {
        let first = run_cli(dir.path(), args, outputs);
        for rerun in 2..=3 {
            let again = run_cli(dir.path(), args, outputs);
            assert_eq!(
                first, again,
                "run {rerun} of bosam {args:?} produced different bytes"
            );
        }
        println!("a9: bosam {} identical across 3 runs", args.join(" "));
    }
}
