//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exact criteria compare rationals with zero tolerance. The statistical
//! criterion and the runtime limits are pinned below.

use std::collections::VecDeque;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use redge::cert::{self, CertPoint};
use redge::constructions::{self, Family};
use redge::dpg::parse_dpg_document;
use redge::engine::{check_certificate_bound_with, edge_probabilities, expected_steps};
use redge::enumeration::{
    compute_f_with, generate_cubic_planar_3connected, EnumerationConfig, Flow, OrientationSpace, CENSUS,
};
use redge::graph::{has_directed_hamiltonian_path, PolytopeDigraph, VertexId};
use redge::mk::validate_mihalisin_klee;
use redge::rational::q;
use redge::simulate::simulate;
use redge::Rational;

const DUAL_CYCLIC_MAX_N: usize = 200;
const EXAMPLE2_K: std::ops::RangeInclusive<usize> = 2..=50;
const EXAMPLE3_K: std::ops::RangeInclusive<usize> = 1..=20;
const SOUNDNESS_MAX_N: usize = 7;
const ENUMERATION_MAX_N: usize = 9;
const CORPUS_SIZE: usize = 25;
const SIM_TRIALS: u64 = 100_000;
const SIM_SEEDS: u64 = 20;
const SIM_SIGMAS: f64 = 4.0;
const SIM_MIN_HITS: usize = 19;
const SANDWICH_N: i64 = 10_000;
const STRETCH_ENV: &str = "REDGE_ACCEPTANCE_STRETCH";

const LIMITS: [Duration; 9] = [
    Duration::from_secs(5),
    Duration::from_secs(5),
    Duration::from_secs(30),
    Duration::from_secs(30),
    Duration::from_secs(1),
    Duration::from_secs(600),
    Duration::from_secs(300),
    Duration::from_secs(600),
    Duration::from_secs(1),
];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn e_at(g: &PolytopeDigraph, v: usize) -> Rational {
    expected_steps(g).unwrap().values[v].clone()
}

fn criterion_1() -> Verdict {
    let mut bad = Vec::new();
    for n in 4..=DUAL_CYCLIC_MAX_N {
        let g = constructions::dual_cyclic(n).unwrap();
        let e = expected_steps(&g).unwrap().values;
        let relations = (0..=n - 4).all(|j| &e[2 * j] + &e[2 * j + 1].mul_int(2) == Rational::integer(4 * j as i64 + 2));
        let m = e[2 * n - 8].clone().max(e[2 * n - 7].clone());
        let threshold = q(4 * n as i64, 3) - q(14, 3);
        if !relations || m < threshold {
            bad.push(n);
        }
    }
    verdict(
        bad.is_empty(),
        format!("dual-cyclic relations and 4n/3 - 14/3 threshold for n = 4..{DUAL_CYCLIC_MAX_N}; failing n: {bad:?}"),
    )
}

fn criterion_2() -> Verdict {
    let mut bad = Vec::new();
    for k in EXAMPLE2_K {
        let inst = constructions::generate(Family::Example2, k).unwrap();
        let n = (4 * k + 2) as i64;
        let want = q(43, 32).mul_int(n) - q(59, 16);
        if e_at(&inst.graph, inst.start.0) != want || inst.graph.facet_count() as i64 != n {
            bad.push(k);
        }
    }
    let (g, s) = constructions::example2(2).unwrap();
    let e10 = e_at(&g, s.0);
    verdict(
        bad.is_empty() && e10 == q(39, 4),
        format!("example2 E(start) = 43n/32 - 59/16 for k = 2..50; k=2 gives {e10}; failing k: {bad:?}"),
    )
}

fn criterion_3() -> Verdict {
    let mut bad = Vec::new();
    for k in EXAMPLE3_K {
        let inst = constructions::generate(Family::Example3, k).unwrap();
        let n = (10 * k + 2) as i64;
        let want = q(1721, 1280).mul_int(n) - q(4722, 1280);
        if e_at(&inst.graph, inst.start.0) != want || inst.graph.facet_count() as i64 != n {
            bad.push(k);
        }
    }
    let (g, s) = constructions::example3(1).unwrap();
    let e12 = e_at(&g, s.0);
    let ham = has_directed_hamiltonian_path(&g);
    verdict(
        bad.is_empty() && e12 == q(1593, 128) && !ham,
        format!("example3 E(start) = 1721n/1280 - 4722/1280 for k = 1..20; k=1 gives {e12}; hamiltonian path at k=1: {ham}; failing k: {bad:?}"),
    )
}

fn all_instances() -> Vec<(String, PolytopeDigraph, VertexId)> {
    let mut out = Vec::new();
    for n in 4..=DUAL_CYCLIC_MAX_N {
        let i = constructions::generate(Family::DualCyclic, n).unwrap();
        out.push((format!("dual-cyclic {n}"), i.graph, i.start));
    }
    for k in EXAMPLE2_K {
        let i = constructions::generate(Family::Example2, k).unwrap();
        out.push((format!("example2 {k}"), i.graph, i.start));
    }
    for k in EXAMPLE3_K {
        let i = constructions::generate(Family::Example3, k).unwrap();
        out.push((format!("example3 {k}"), i.graph, i.start));
    }
    out
}

/// Relabels an acyclic arc set so that every arc points to a lower index.
fn from_arcs(vertices: usize, facets: usize, arcs: &[(usize, usize)]) -> PolytopeDigraph {
    let mut out_deg = vec![0; vertices];
    let mut preds = vec![Vec::new(); vertices];
    for &(a, b) in arcs {
        out_deg[a] += 1;
        preds[b].push(a);
    }
    let mut label = vec![usize::MAX; vertices];
    let mut ready: VecDeque<usize> = (0..vertices).filter(|&v| out_deg[v] == 0).collect();
    let mut next = 0;
    while let Some(v) = ready.pop_front() {
        label[v] = next;
        next += 1;
        for &p in &preds[v] {
            out_deg[p] -= 1;
            if out_deg[p] == 0 {
                ready.push_back(p);
            }
        }
    }
    assert_eq!(next, vertices, "arc set is acyclic");
    let mut down = vec![Vec::new(); vertices];
    for &(a, b) in arcs {
        down[label[a]].push(label[b]);
    }
    PolytopeDigraph::new(facets, down).unwrap()
}

fn arcs_of(g: &PolytopeDigraph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

fn by_index(vertices: usize, facets: usize, edges: &[(usize, usize)]) -> PolytopeDigraph {
    let arcs: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.max(b), a.min(b))).collect();
    from_arcs(vertices, facets, &arcs)
}

fn mutation_second_sink() -> (bool, String) {
    let (g, _) = constructions::example2(2).unwrap();
    let v = (1..g.vertex_count()).find(|&v| g.down_degree(v) == 1 && g.down(v)[0] != 0).unwrap();
    let w = g.down(v)[0];
    let arcs: Vec<(usize, usize)> = arcs_of(&g)
        .into_iter()
        .map(|(a, b)| if (a, b) == (v, w) { (w, v) } else { (a, b) })
        .collect();
    let m = from_arcs(g.vertex_count(), g.facet_count(), &arcs);
    let sinks = (0..m.vertex_count()).filter(|&x| m.down_degree(x) == 0).count();
    let r = validate_mihalisin_klee(&m);
    let ok = sinks == 2 && !r.acyclic_unique_source_sink && r.planar && r.three_connected && !r.realizable;
    (ok, format!("reversal {v}->{w}: sinks {sinks}, acyclic_unique_source_sink {}", r.acyclic_unique_source_sink))
}

fn is_bipartite(adj: &[Vec<usize>]) -> bool {
    let mut side = vec![usize::MAX; adj.len()];
    for s in 0..adj.len() {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if side[y] == usize::MAX {
                    side[y] = 1 - side[x];
                    queue.push_back(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

fn mutation_nonplanar() -> (bool, String) {
    let prism = constructions::dual_cyclic(5).unwrap();
    let edges: Vec<(usize, usize)> = prism.edges().collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let ((a, b), (c, d)) = (edges[i], edges[j]);
            if [a, b].contains(&c) || [a, b].contains(&d) {
                continue;
            }
            let mut swapped: Vec<(usize, usize)> =
                edges.iter().copied().filter(|&e| e != edges[i] && e != edges[j]).collect();
            swapped.push((a, d));
            swapped.push((c, b));
            let mut adj = vec![Vec::new(); 6];
            for &(x, y) in &swapped {
                adj[x].push(y);
                adj[y].push(x);
            }
            let simple = adj.iter().all(|l| {
                let mut s = l.clone();
                s.sort_unstable();
                s.dedup();
                s.len() == 3
            });
            // a simple cubic bipartite graph on six vertices is K3,3
            if simple && is_bipartite(&adj) {
                let m = by_index(6, 5, &swapped);
                let r = validate_mihalisin_klee(&m);
                let ok = r.three_regular && !r.planar && !r.realizable;
                return (ok, format!("prism rewired to K3,3: planar {}", r.planar));
            }
        }
    }
    (false, "no rewiring of the prism gave K3,3".into())
}

fn disconnected_without(adj: &[Vec<usize>], removed: &[usize]) -> bool {
    let start = (0..adj.len()).find(|v| !removed.contains(v)).unwrap();
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] && !removed.contains(&y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..adj.len()).any(|v| !removed.contains(&v) && !seen[v])
}

fn mutation_two_cut() -> (bool, String) {
    // two K4 minus an edge, joined by two edges
    let edges = [
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 7),
        (6, 7),
        (2, 4),
        (3, 5),
    ];
    let m = by_index(8, 6, &edges);
    let cut = disconnected_without(&m.undirected_adjacency(), &[2, 3]);
    let r = validate_mihalisin_klee(&m);
    let ok = cut && r.planar && r.acyclic_unique_source_sink && !r.three_connected && !r.realizable;
    (ok, format!("2-cut splice: three_connected {}", r.three_connected))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn mutation_face_sinks() -> (bool, String) {
    // cube on bit strings; faces fix one coordinate
    let edges: Vec<(usize, usize)> = (0..8usize)
        .flat_map(|x| (0..3).map(move |b| (x, x ^ (1 << b))))
        .filter(|(x, y)| x < y)
        .collect();
    let faces: Vec<Vec<usize>> = (0..3)
        .flat_map(|b| {
            [0, 1].map(move |val| {
                let (c1, c2) = ((b + 1) % 3, (b + 2) % 3);
                let base = val << b;
                vec![base, base | 1 << c1, base | 1 << c1 | 1 << c2, base | 1 << c2]
            })
        })
        .collect();
    let nbrs = |x: usize| -> Vec<usize> { edges.iter().filter_map(|&(a, b)| if a == x { Some(b) } else if b == x { Some(a) } else { None }).collect() };
    let mut height: Vec<usize> = (0..8).collect();
    // with one sink and one source every face has one local sink, so the
    // mutation also admits a second source
    loop {
        let sinks = (0..8).filter(|&x| nbrs(x).iter().all(|&y| height[y] > height[x])).count();
        let sources = (0..8).filter(|&x| nbrs(x).iter().all(|&y| height[y] < height[x])).count();
        let double = faces.iter().any(|f| {
            (0..4)
                .filter(|&i| height[f[i]] < height[f[(i + 1) % 4]] && height[f[i]] < height[f[(i + 3) % 4]])
                .count()
                >= 2
        });
        if sinks == 1 && sources == 2 && double {
            let mapped: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (height[a], height[b])).collect();
            let m = by_index(8, 6, &mapped);
            let r = validate_mihalisin_klee(&m);
            let ok = r.planar && r.three_connected && !r.unique_local_sink_per_face && !r.violating_faces.is_empty() && !r.realizable;
            return (ok, format!("cube heights {height:?} with two sources: unique_local_sink_per_face {}", r.unique_local_sink_per_face));
        }
        if !next_permutation(&mut height) {
            return (false, "no cube orientation with a doubled face sink".into());
        }
    }
}

fn criterion_4() -> Verdict {
    let instances = all_instances();
    let rejected: Vec<String> = instances
        .iter()
        .filter(|(_, g, _)| !validate_mihalisin_klee(g).realizable)
        .map(|(name, _, _)| name.clone())
        .collect();
    let mutations = [mutation_second_sink(), mutation_nonplanar(), mutation_two_cut(), mutation_face_sinks()];
    let ok = rejected.is_empty() && mutations.iter().all(|(ok, _)| *ok);
    let notes: Vec<String> = mutations.iter().map(|(ok, d)| format!("{d} [{}]", if *ok { "ok" } else { "wrong" })).collect();
    verdict(
        ok,
        format!(
            "{} generated instances realizable, rejected: {rejected:?}; mutations: {}",
            instances.len() - rejected.len(),
            notes.join("; ")
        ),
    )
}

fn criterion_5() -> Verdict {
    let system = cert::builtin_system();
    let catalogue = cert::catalogue();
    let tables_match = catalogue.iter().all(|e| e.inequality.equivalent(&e.displayed));
    let p = CertPoint::new(q(46, 87), q(42, 87));
    let feasible = cert::is_feasible(&system, &p).feasible;
    let tight = cert::tight_set(&system, &p).unwrap_or_default();
    let tight_ok = tight.len() == 2
        && tight.iter().any(|l| {
            let i = system.find(l).unwrap();
            i.equivalent(&redge::cert::LinearInequality::new(q(0, 1), q(1, 1), q(14, 29), "x"))
        })
        && tight.iter().any(|l| {
            let i = system.find(l).unwrap();
            i.equivalent(&redge::cert::LinearInequality::new(q(3, 1), q(5, 1), q(4, 1), "x"))
        });
    let opt = cert::minimize(&system, (&q(1, 1), &q(2, 1))).unwrap();
    let opt_ok = opt.point == p && opt.value == q(130, 87);
    let bound_ok = (4..=1000).all(|n| cert::upper_bound(n, &p).unwrap() == q(130, 87).mul_int(n as i64) - q(115, 29));
    verdict(
        catalogue.len() == 27 && tables_match && feasible && tight_ok && opt_ok && bound_ok,
        format!(
            "entries {}; tables match {tables_match}; feasible {feasible}; tight {tight:?}; optimum {} value {}; bound form n=4..1000 {bound_ok}",
            catalogue.len(),
            opt.point,
            opt.value
        ),
    )
}

#[derive(Default)]
struct Soundness {
    digraphs: usize,
    failing: usize,
    vertex_violations: usize,
    worst: Option<(Rational, String)>,
    global_failing: usize,
}

impl Soundness {
    fn add(&mut self, name: impl FnOnce() -> String, g: &PolytopeDigraph) {
        let p = CertPoint::certified_optimum();
        let t = expected_steps(g).unwrap();
        let c = check_certificate_bound_with(g, &t, &p);
        self.digraphs += 1;
        if !c.violations.is_empty() {
            self.failing += 1;
            self.vertex_violations += c.violations.len();
            let m = c.min_margin().unwrap().clone();
            if self.worst.as_ref().map_or(true, |(w, _)| m < *w) {
                let v = c.margins.iter().position(|x| x.as_ref() == Some(&m)).unwrap();
                self.worst = Some((m, format!("{} at v{v}", name())));
            }
        }
        if !c.global_violations.is_empty() {
            self.global_failing += 1;
        }
    }
}

fn criterion_6() -> Verdict {
    let mut s = Soundness::default();
    for n in 4..=SOUNDNESS_MAX_N {
        for (gi, graph) in generate_cubic_planar_3connected(n).into_iter().enumerate() {
            let space = OrientationSpace::new(graph);
            let mut k = 0usize;
            space.visit_all(&mut |leaf| {
                let g = leaf.digraph(space.facets());
                s.add(|| format!("n={n} graph {gi} orientation {k}"), &g);
                k += 1;
                Flow::Continue
            });
        }
    }
    let enumerated = (s.digraphs, s.failing);
    for (name, g, _) in all_instances() {
        s.add(|| name.clone(), &g);
    }
    let (worst, at) = s.worst.clone().map_or((String::from("none"), String::new()), |(m, a)| (m.to_string(), a));
    verdict(
        s.failing == 0,
        format!(
            "per-vertex bound E(v) <= 46/87 N1(v) + 42/87 N(v): {} of {} digraphs violate it ({} of {} enumerated for n <= {SOUNDNESS_MAX_N}), {} vertex violations, worst margin {worst} ({at}); global bound violated in {} digraphs",
            s.failing, s.digraphs, enumerated.1, enumerated.0, s.vertex_violations, s.global_failing
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for &(n, count) in CENSUS.iter().filter(|(n, _)| *n <= ENUMERATION_MAX_N) {
        let got = generate_cubic_planar_3connected(n).len();
        ok &= got == count;
        if got != count {
            notes.push(format!("census n={n}: {got} != {count}"));
        }
    }
    let seq = EnumerationConfig {
        jobs: 1,
        ..Default::default()
    };
    let par = EnumerationConfig::default();
    let mut values = Vec::new();
    for n in 4..=ENUMERATION_MAX_N {
        let a = compute_f_with(n, &seq).unwrap();
        let b = compute_f_with(n, &par).unwrap();
        let deterministic = a.report() == b.report() && a.witness == b.witness;
        let upper = q(130, 87).mul_int(n as i64) - q(115, 29);
        let wedge = {
            let g = constructions::dual_cyclic(n).unwrap();
            expected_steps(&g).unwrap().values.into_iter().max().unwrap()
        };
        let chain = constructions::closed_form_expectation(Family::Backbone, n - 2).unwrap();
        let sandwich = wedge <= a.f_value && chain <= a.f_value && a.f_value <= upper;
        ok &= deterministic && sandwich;
        if n == 4 {
            ok &= a.f_value == q(11, 6);
        }
        values.push(format!("f({n}) = {}", a.f_value));
        if !deterministic || !sandwich {
            notes.push(format!("n={n}: deterministic {deterministic}, sandwich {sandwich}"));
        }
    }
    let f12_ok = q(1593, 128) <= q(405, 29)
        && cert::upper_bound(12, &CertPoint::certified_optimum()).unwrap() == q(405, 29);
    ok &= f12_ok;
    verdict(
        ok,
        format!(
            "census n=4..{ENUMERATION_MAX_N}; {}; sandwich holds; f(12) in [1593/128, 405/29]: {f12_ok}; {}",
            values.join(", "),
            if notes.is_empty() { "no issues".to_string() } else { notes.join("; ") }
        ),
    )
}

/// Non-gating: f(10) under the long-run cap.
fn stretch_f10() -> String {
    if std::env::var_os(STRETCH_ENV).is_none() {
        return format!("SKIPPED (set {STRETCH_ENV}=1 to run f(10))");
    }
    let t = Instant::now();
    let config = EnumerationConfig {
        allow_long: true,
        ..Default::default()
    };
    match compute_f_with(10, &config) {
        Ok(r) => format!(
            "{} [{:.2}s] f(10) = {}, expected 39/4",
            if r.f_value == q(39, 4) { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            r.f_value
        ),
        Err(e) => format!("FAIL {e}"),
    }
}

fn corpus() -> Vec<(String, PolytopeDigraph, VertexId)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "dpg"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let doc = parse_dpg_document(&std::fs::read_to_string(&p).unwrap()).unwrap();
            let start = doc.start().expect("corpus files name a start");
            (p.file_name().unwrap().to_string_lossy().into_owned(), doc.graph, start)
        })
        .collect()
}

fn criterion_8() -> Verdict {
    let corpus = corpus();
    let mut flow_bad = Vec::new();
    let mut sim_bad = Vec::new();
    let mut worst_hits = SIM_SEEDS as usize;
    for (name, g, s) in &corpus {
        let e = e_at(g, s.0);
        if edge_probabilities(g, *s).unwrap().total() != e {
            flow_bad.push(name.clone());
        }
        let exact = e.to_f64();
        let hits = (0..SIM_SEEDS)
            .filter(|&seed| {
                let st = simulate(g, *s, SIM_TRIALS, seed).unwrap();
                (st.mean().to_f64() - exact).abs() <= SIM_SIGMAS * st.standard_error()
            })
            .count();
        worst_hits = worst_hits.min(hits);
        if hits < SIM_MIN_HITS {
            sim_bad.push(format!("{name} ({hits}/{SIM_SEEDS})"));
        }
    }
    verdict(
        corpus.len() == CORPUS_SIZE && flow_bad.is_empty() && sim_bad.is_empty(),
        format!(
            "{} corpus instances; flow total = E(start) fails on {flow_bad:?}; simulation within {SIM_SIGMAS} SE in at least {worst_hits}/{SIM_SEEDS} seeds per instance; below {SIM_MIN_HITS}: {sim_bad:?}",
            corpus.len()
        ),
    )
}

fn criterion_9() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_redge")).arg("reproduce").output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    let lines_ok = text.contains("cert.optimum = 46/87 42/87 value 130/87\n")
        && text.contains("example3 k=1 E = 1593/128\n")
        && text.contains(&format!("sandwich n={SANDWICH_N} lower slope 1721/1280 >= 2689/2000: true"))
        && text.contains(&format!("sandwich n={SANDWICH_N} example3 line + 2361/640 >= 2689/2000*n: true"))
        && text.lines().any(|l| l.starts_with(&format!("sandwich n={SANDWICH_N} upper = ")) && l.ends_with("<= 14943/10000*n: true"));
    let n = SANDWICH_N;
    let e3 = |k: i64| q(1721, 128).mul_int(k) - Rational::one();
    let slope = (e3(2) - e3(1)) / Rational::integer(10);
    let lower = slope >= q(13445, 10_000);
    let upper = cert::upper_bound(n as usize, &CertPoint::certified_optimum()).unwrap() <= q(14943, 10_000).mul_int(n);
    verdict(
        out.status.success() && lines_ok && lower && upper,
        format!(
            "reproduce exit {:?}; report lines present {lines_ok}; slope {slope} >= 13445/10000 {lower}; bound at n={n} <= 14943/10000*n {upper}",
            out.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Verdict; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = c();
        let elapsed = t.elapsed();
        let in_time = elapsed <= LIMITS[i];
        let ok = v.ok && in_time;
        println!(
            "criterion {}: {} [{:.2}s, limit {}s] {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            LIMITS[i].as_secs(),
            v.detail
        );
        if !ok {
            failed.push(i + 1);
        }
        if i == 6 {
            println!("criterion 7 stretch (not gating): {}", stretch_f10());
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
