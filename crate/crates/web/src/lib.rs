//! Browser bindings: solve an instance, measure a graph, generate an
//! instance. Every function takes and returns the CLI's text formats.

use wasm_bindgen::prelude::*;

use recolor::gen::{generate_graph, random_instance, InstanceOptions, ListMode, Model};
use recolor::io::{emit_instance, emit_sequence, parse_graph, parse_instance};
use recolor::metrics::{girth, mad_exact};
use recolor::solve::{solve, solve_high_degree, Theorem};

fn theorem(name: &str) -> Result<Option<Theorem>, String> {
    match name {
        "1" => Ok(Some(Theorem::One)),
        "2" => Ok(Some(Theorem::Two)),
        "3" => Ok(Some(Theorem::Three)),
        "baseline" => Ok(None),
        _ => Err(format!("unknown theorem '{name}' (use 1, 2, 3 or baseline)")),
    }
}

/// A summary line followed by the sequence file.
#[wasm_bindgen]
pub fn solve_instance(instance: &str, which: &str) -> Result<String, String> {
    let inst = parse_instance(instance).map_err(|e| e.to_string())?;
    let (seq, bound) = match theorem(which)? {
        Some(t) => (solve(t, &inst.graph, &inst.lists, &inst.alpha, &inst.beta).map_err(|e| e.to_string())?.sequence, t.bound()),
        None => (solve_high_degree(&inst.graph, &inst.lists, &inst.alpha, &inst.beta).map_err(|e| e.to_string())?, 2),
    };
    Ok(format!("# {} steps, max recolorings {} (bound {bound})\n{}", seq.len(), seq.max_count(), emit_sequence(&seq)))
}

/// Vertex and edge counts, mad with its densest subgraph, and girth.
#[wasm_bindgen]
pub fn analyze_graph(graph: &str) -> Result<String, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    let rep = mad_exact(&g).map_err(|e| e.to_string())?;
    let witness: Vec<String> = rep.witness.iter().map(|v| v.to_string()).collect();
    let gi = girth(&g).map_or("inf".to_string(), |k| k.to_string());
    Ok(format!("vertices {}\nedges {}\nmad {}\nwitness {}\ngirth {gi}\n", g.n(), g.edge_count(), rep.mad, witness.join(" ")))
}

/// An instance for `which` from a model spec such as `grid:4x4`.
#[wasm_bindgen]
pub fn generate_instance(model: &str, which: &str, seed: u64) -> Result<String, String> {
    let model: Model = model.parse().map_err(|e: recolor::gen::GenError| e.to_string())?;
    let t = theorem(which)?;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let g = generate_graph(&model, &mut rng).map_err(|e| e.to_string())?;
    if let Some(t) = t {
        t.check_graph(&g).map_err(|e| format!("generated graph fails the hypotheses: {e}"))?;
    }
    let k = t.map_or(2 * g.max_degree() + 1, Theorem::list_size);
    let opts = InstanceOptions { list_size: k, lists: ListMode::Random { palette: k + 3 }, disjoint: true };
    let inst = random_instance(g, &opts, &mut rng).map_err(|e| e.to_string())?;
    Ok(emit_instance(&inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_solve() {
        for (model, which) in [("grid:3x4", "1"), ("petersen", "2"), ("cycle:7", "3"), ("cube", "baseline")] {
            let inst = generate_instance(model, which, 4).unwrap();
            let out = solve_instance(&inst, which).unwrap();
            assert!(out.starts_with("# "), "{out}");
            assert!(out.lines().nth(1).unwrap().starts_with("steps "));
        }
    }

    #[test]
    fn analysis_reports_exact_density() {
        let out = analyze_graph("graph 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\n").unwrap();
        assert!(out.contains("mad 2\n") && out.contains("girth 4\n"), "{out}");
    }

    #[test]
    fn errors_are_messages() {
        assert!(solve_instance("graph x", "3").unwrap_err().contains("line 1"));
        assert!(solve_instance("graph 1\nlist 0: 0\nalpha 0 0\nbeta 0 0\n", "9").unwrap_err().contains("unknown theorem"));
        assert!(generate_instance("k4", "3", 0).is_err());
        assert!(generate_instance("subdivided:k5:0", "3", 0).unwrap_err().contains("hypotheses"));
    }
}
