//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances are exact (rationals, integer caps) except the pinned
//! wall-clock limits below.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recolor::coloring::validate_sequence;
use recolor::discharge::{audit_girth4, audit_mad175, audit_mad229, euler_characteristic, girth4_initial, ChargeLedger};
use recolor::extend::{extend_key_lemma, key_lemma_bound};
use recolor::gen::{free175, free229, generate, generate_graph, random_instance, torus_grid, InstanceOptions, ListMode, Model};
use recolor::graph::trace_faces_any_genus;
use recolor::metrics::{check_mad_lemma, mad_enumerate, mad_exact, witness_density};
use recolor::oracle::{bfs_distance, build_state_space_with_cap, exhaustive_extension_check, Gadget};
use recolor::solve::{solve, solve_high_degree, SolveError, Theorem};
use recolor::{Graph, Rational};

const INSTANCE_LIMIT: Duration = Duration::from_secs(5);
const KEY_LEMMA_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_STATES: u64 = 100_000;

type Verdict = Result<String, String>;

fn opts(k: usize, seed: u64) -> InstanceOptions {
    let lists = if seed.is_multiple_of(3) { ListMode::Shared } else { ListMode::Random { palette: k + 1 + (seed % 4) as usize } };
    InstanceOptions { list_size: k, lists, disjoint: true }
}

struct Suite {
    runs: usize,
    worst: u32,
    slowest: Duration,
    max_n: usize,
    planar: Vec<Graph>,
}

/// Solve, then re-validate independently against the theorem's cap.
fn run_suite(theorem: Theorem, models: &[(Model, u64)], vertex_limit: usize) -> Result<Suite, String> {
    let mut suite = Suite { runs: 0, worst: 0, slowest: Duration::ZERO, max_n: 0, planar: Vec::new() };
    for (model, seed) in models {
        let inst = generate(model, &opts(theorem.list_size(), *seed), *seed).map_err(|e| format!("{model:?}: {e}"))?;
        let g = &inst.graph;
        if g.n() > vertex_limit {
            return Err(format!("{model:?} has {} vertices, above {vertex_limit}", g.n()));
        }
        let density_cap = match theorem {
            Theorem::One => None,
            Theorem::Two => Some(Rational::new(17, 5)),
            Theorem::Three => Some(Rational::new(22, 9)),
        };
        if let Some(cap) = density_cap {
            let rep = mad_exact(g).map_err(|e| e.to_string())?;
            if rep.mad >= cap || witness_density(g, &rep) != rep.mad {
                return Err(format!("{model:?} seed {seed}: mad {} not certified below {cap}", rep.mad));
            }
        }
        let t0 = Instant::now();
        let sol = solve(theorem, g, &inst.lists, &inst.alpha, &inst.beta).map_err(|e| format!("{model:?} seed {seed}: {e}"))?;
        let took = t0.elapsed();
        let rep = validate_sequence(g, &inst.lists, &sol.sequence, &inst.beta, theorem.bound())
            .map_err(|e| format!("{model:?} seed {seed}: {e}"))?;
        if took > INSTANCE_LIMIT {
            return Err(format!("{model:?} seed {seed} took {took:?}"));
        }
        suite.runs += 1;
        suite.worst = suite.worst.max(rep.max_count);
        suite.slowest = suite.slowest.max(took);
        suite.max_n = suite.max_n.max(g.n());
        if theorem == Theorem::One {
            suite.planar.push(inst.graph);
        }
    }
    Ok(suite)
}

fn summary(s: &Suite, bound: u32) -> String {
    format!(
        "{} instances (up to {} vertices), max recolorings {} <= {bound}, slowest {:.2}s < {}s",
        s.runs,
        s.max_n,
        s.worst,
        s.slowest.as_secs_f64(),
        INSTANCE_LIMIT.as_secs()
    )
}

fn at_least(count: usize, min: usize, what: &str) -> Result<(), String> {
    if count < min {
        return Err(format!("only {count} {what}, need {min}"));
    }
    Ok(())
}

fn theorem_one() -> (Verdict, Vec<Graph>) {
    let mut models = Vec::new();
    let mut seed = 0;
    for rows in 2..=14 {
        for cols in [rows, 14 - rows / 2] {
            models.push((Model::Grid { rows, cols }, seed));
            models.push((Model::HexPatch { rows, cols: (cols + 1).min(200 / rows) }, seed + 1));
            models.push((Model::GridSubgraph { rows, cols, keep_percent: 70 + (seed % 30) as u32 }, seed + 2));
            seed += 3;
        }
    }
    for s in 0..70 {
        models.push((Model::Cube, s));
        models.push((Model::Grid { rows: 10 + s as usize % 5, cols: 14 }, 1000 + s));
    }
    match run_suite(Theorem::One, &models, 200) {
        Ok(s) => {
            let v = at_least(s.runs, 200, "instances").map(|_| summary(&s, 30));
            (v, s.planar)
        }
        Err(e) => (Err(e), Vec::new()),
    }
}

fn theorem_two() -> Verdict {
    let mut models = Vec::new();
    for s in 0..25 {
        for spec in ["dodecahedron", "petersen", "subdivided:petersen:1", "subdivided:cube:1", "subdivided:dodecahedron:1", "subdivided:k4:2"] {
            models.push((spec.parse().expect("valid spec"), s));
        }
        models.push((Model::RandomSparse { n: 30 + 2 * s as usize, mad: Rational::new(17, 5) }, s));
        models.push((Model::Threaded { n: 20 + 4 * s as usize, max_t: 1, mad: Rational::new(17, 5) }, s));
    }
    let s = run_suite(Theorem::Two, &models, 300)?;
    at_least(s.runs, 200, "instances")?;
    Ok(summary(&s, 12) + ", mad machine-certified")
}

fn theorem_three() -> Verdict {
    let mut models = Vec::new();
    for s in 0..25 {
        for spec in ["subdivided:k4:4", "subdivided:k4:5", "subdivided:petersen:1", "subdivided:dodecahedron:1", "subdivided:cube:2"] {
            models.push((spec.parse().expect("valid spec"), s));
        }
        models.push((Model::Threaded { n: 16 + 3 * s as usize, max_t: 3, mad: Rational::new(22, 9) }, s));
        models.push((Model::Threaded { n: 40 + 2 * s as usize, max_t: 2, mad: Rational::new(22, 9) }, 100 + s));
        models.push((Model::RandomSparse { n: 30 + s as usize, mad: Rational::new(22, 9) }, s));
        models.push((Model::Cycle(3 + s as usize), s));
    }
    let s = run_suite(Theorem::Three, &models, 400)?;
    at_least(s.runs, 200, "instances")?;
    Ok(summary(&s, 14) + ", stage caps enforced per stage by the solver")
}

fn key_lemma() -> Verdict {
    let t0 = Instant::now();
    let mut runs = 0;
    let mut gadgets = 0;
    for d in 1..=3 {
        for size in [d + 2, d + 3] {
            let gadget = Gadget::star(d, size, 6);
            let s = (size - d - 1) as u32;
            let rep = exhaustive_extension_check(
                &gadget,
                &|g, l, inner, a, b| extend_key_lemma(g, l, 0, inner, a, b),
                &|inner| vec![(0, key_lemma_bound((1..=d).map(|u| inner.count(u)).sum(), s))],
            );
            if let Some(c) = rep.counterexample {
                return Err(format!("K1,{d} with {size}-lists: {} (alpha {:?}, inner {:?})", c.reason, c.alpha, c.inner));
            }
            runs += rep.runs;
            gadgets += 1;
        }
    }
    let took = t0.elapsed();
    if took > KEY_LEMMA_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!(
        "{gadgets} gadgets, {runs} (alpha, inner, beta) orbits up to length 6, 0 violations, {:.1}s < {}s",
        took.as_secs_f64(),
        KEY_LEMMA_LIMIT.as_secs()
    ))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut attempts) = (0, 0);
    let mut longest = (0, 0);
    while checked < 60 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("only {checked} usable instances"));
        }
        let (theorem, n) = if attempts % 3 == 0 { (Theorem::Two, rng.gen_range(2..=6)) } else { (Theorem::Three, rng.gen_range(2..=8)) };
        let g = random_graph(&mut rng, n, 0.4);
        if theorem.check_graph(&g).is_err() {
            continue;
        }
        let k = theorem.list_size();
        let inst = random_instance(g, &opts(k, attempts), &mut rng).map_err(|e| e.to_string())?;
        let space = match build_state_space_with_cap(&inst.graph, &inst.lists, ORACLE_STATES) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let sol = match solve(theorem, &inst.graph, &inst.lists, &inst.alpha, &inst.beta) {
            Ok(s) => s,
            Err(e) => return Err(format!("solver refused a valid instance: {e}")),
        };
        let dist = bfs_distance(&space, &inst.alpha, &inst.beta).map_err(|e| e.to_string())?;
        match dist {
            None => return Err("solver succeeded but the oracle finds beta unreachable".into()),
            Some(d) if sol.sequence.len() < d => {
                return Err(format!("solver walk {} shorter than oracle distance {d}", sol.sequence.len()))
            }
            Some(d) => longest = longest.max((d, sol.sequence.len())),
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} instances (<= {ORACLE_STATES} states), all reachable, walk >= distance (largest distance {} vs walk {})",
        longest.0, longest.1
    ))
}

fn mad_cross_check() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let flow = mad_exact(&g).map_err(|e| e.to_string())?;
        let brute = mad_enumerate(&g).map_err(|e| e.to_string())?;
        if flow.mad != brute.mad {
            return Err(format!("graph {i}: flow {} vs enumeration {}", flow.mad, brute.mad));
        }
    }
    Ok("500 random graphs on <= 8 vertices, flow mad = enumerated mad exactly".into())
}

fn mad_lemma(planar: &[Graph]) -> Verdict {
    at_least(planar.len(), 1, "embedded instances")?;
    let mut tightest: Option<Rational> = None;
    for g in planar {
        let rep = check_mad_lemma(g).map_err(|e| e.to_string())?;
        if rep.mad >= rep.bound {
            return Err(format!("mad {} not below {}", rep.mad, rep.bound));
        }
        let gap = rep.bound - rep.mad;
        tightest = Some(tightest.map_or(gap, |t| t.min(gap)));
    }
    Ok(format!("{} embedded instances, mad < 2g/(g-2) strictly (smallest gap {})", planar.len(), tightest.expect("nonempty")))
}

fn audit(ledgers: &[ChargeLedger], bound: Rational, faces_too: bool) -> Result<Rational, String> {
    let mut least: Option<Rational> = None;
    for l in ledgers {
        if !l.is_conserved() {
            return Err("charge not conserved".into());
        }
        if let Some((e, c)) = l.violations(|_| bound).first() {
            return Err(format!("{e} ends at {c} < {bound}"));
        }
        for faces in [false, true].into_iter().filter(|&f| faces_too || !f) {
            if let Some((_, c)) = l.min_final(faces) {
                least = Some(least.map_or(c, |m| m.min(c)));
            }
        }
    }
    least.ok_or_else(|| "no elements".to_string())
}

fn discharging(planar: &[Graph]) -> Verdict {
    let mut girth4 = Vec::new();
    for rows in 4..=13 {
        for cols in 4..=13 {
            let g = torus_grid(rows, cols, (rows + cols) % 3);
            let faces = trace_faces_any_genus(&g).map_err(|e| e.to_string())?;
            let (init, _) = girth4_initial(&g).map_err(|e| e.to_string())?;
            if init.total_initial() != Rational::from_integer(-6 * euler_characteristic(&g, &faces)) {
                return Err(format!("torus {rows}x{cols}: initial total {}", init.total_initial()));
            }
            girth4.push(audit_girth4(&g).map_err(|e| format!("torus {rows}x{cols}: {e}"))?);
        }
    }
    let mut sphere = 0;
    for g in planar.iter().filter(|g| g.is_connected() && g.n() > 0) {
        let (init, _) = girth4_initial(g).map_err(|e| e.to_string())?;
        if init.total_initial() != Rational::from_integer(-12) {
            return Err(format!("plane graph on {} vertices has initial total {}", g.n(), init.total_initial()));
        }
        sphere += 1;
    }
    at_least(sphere, 1, "connected plane graphs")?;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut m175, mut m229) = (Vec::new(), Vec::new());
    let mut tries = 0;
    while (m175.len() < 100 || m229.len() < 100) && tries < 1000 {
        tries += 1;
        let n = rng.gen_range(10..=40);
        if m175.len() < 100 {
            if let Ok(l) = audit_mad175(&free175(n, &mut rng)) {
                m175.push(l);
            }
        }
        if m229.len() < 100 {
            if let Ok(l) = audit_mad229(&free229(n, &mut rng)) {
                m229.push(l);
            }
        }
    }
    at_least(girth4.len(), 100, "girth-4 audits")?;
    at_least(m175.len(), 100, "17/5 audits")?;
    at_least(m229.len(), 100, "22/9 audits")?;
    let a = audit(&girth4, Rational::from_integer(0), true).map_err(|e| format!("girth4: {e}"))?;
    let b = audit(&m175, Rational::new(17, 5), false).map_err(|e| format!("mad175: {e}"))?;
    let c = audit(&m229, Rational::new(22, 9), false).map_err(|e| format!("mad229: {e}"))?;
    Ok(format!(
        "girth4 {} (min {a}), mad175 {} (min {b} >= 17/5), mad229 {} (min {c} >= 22/9), all conserved; \
         initial total -12 on {sphere} plane graphs, -6χ on torus grids",
        girth4.len(),
        m175.len(),
        m229.len()
    ))
}

fn baseline() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let specs = ["petersen", "dodecahedron", "cube", "grid:6x7", "random-sparse:40:4", "random-sparse:30:6", "subdivided:k5:1", "subdivided:k6:0"];
    let mut worst = 0;
    for i in 0..100 {
        let spec = specs[i % specs.len()];
        let model: Model = spec.parse().map_err(|e: recolor::gen::GenError| e.to_string())?;
        let g = generate_graph(&model, &mut rng).map_err(|e| e.to_string())?;
        let k = 2 * g.max_degree() + 1 + i % 3;
        let inst = random_instance(g, &opts(k, i as u64), &mut rng).map_err(|e| e.to_string())?;
        let seq = solve_high_degree(&inst.graph, &inst.lists, &inst.alpha, &inst.beta).map_err(|e: SolveError| e.to_string())?;
        let rep = validate_sequence(&inst.graph, &inst.lists, &seq, &inst.beta, 2).map_err(|e| format!("{spec}: {e}"))?;
        if rep.steps > 2 * inst.graph.n() {
            return Err(format!("{spec}: {} steps on {} vertices", rep.steps, inst.graph.n()));
        }
        worst = worst.max(rep.max_count);
    }
    Ok(format!("100 instances, max recolorings {worst} <= 2, steps <= 2n"))
}

fn main() {
    let mut failed = 0;
    let mut report = |name: &str, v: Verdict| match v {
        Ok(msg) => println!("PASS {name}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL {name}: {msg}");
        }
    };
    let (v1, planar) = theorem_one();
    report("theorem1_suite", v1);
    report("theorem2_suite", theorem_two());
    report("theorem3_suite", theorem_three());
    report("key_lemma_exhaustive", key_lemma());
    report("oracle_equivalence", oracle_equivalence());
    report("mad_cross_check", mad_cross_check());
    report("mad_lemma", mad_lemma(&planar));
    report("discharging_audits", discharging(&planar));
    report("baseline", baseline());
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
}
