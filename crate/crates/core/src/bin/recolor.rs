//! `recolor`: solve, verify and inspect list-recoloring instances.
//!
//! Exit status 0 means success or a valid result, 1 a violation (with a
//! report on stderr), 2 a usage or parse error.

use std::fs;
use std::io::{self, Read as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recolor::coloring::validate_sequence;
use recolor::detect::check_match;
use recolor::discharge::{audit_girth4, audit_mad175, audit_mad229, ChargeLedger, Element};
use recolor::gen::{generate_graph, random_instance, InstanceOptions, ListMode, Model};
use recolor::io::{emit_instance, emit_sequence, parse_graph, parse_instance, parse_sequence, Instance};
use recolor::metrics::{girth, mad_enumerate, mad_exact};
use recolor::oracle::{bfs_distance, build_state_space, component_count, diameter};
use recolor::solve::{solve, solve_high_degree, Theorem};
use recolor::{Graph, Rational, RecoloringSequence, Step};

#[derive(Parser)]
#[command(name = "recolor", version, about = "List-recoloring sequences for sparse graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Baseline,
}

impl Which {
    fn theorem(self) -> Option<Theorem> {
        match self {
            Which::One => Some(Theorem::One),
            Which::Two => Some(Theorem::Two),
            Which::Three => Some(Theorem::Three),
            Which::Baseline => None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigTheorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Girth4,
    Mad175,
    Mad229,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuery {
    Space,
    Distance,
    Diameter,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lists {
    Shared,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Build a recoloring sequence from alpha to beta.
    Solve {
        #[arg(long, value_enum)]
        theorem: Which,
        /// Instance file, `-` for stdin.
        #[arg(default_value = "-")]
        instance: PathBuf,
        /// Write the sequence here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a sequence on an instance and check it is k-good.
    Verify {
        #[arg(long)]
        bound: u32,
        instance: PathBuf,
        sequence: PathBuf,
    },
    /// Maximum average degree with a densest subgraph.
    Mad {
        /// Enumerate all vertex subsets instead of using max-flow.
        #[arg(long)]
        enumerate: bool,
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Length of a shortest cycle.
    Girth {
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// The first reducible configuration a theorem's detector finds.
    FindConfig {
        #[arg(long, value_enum)]
        theorem: ConfigTheorem,
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Run a discharging audit and print its charge ledger.
    Discharge {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(default_value = "-")]
        graph: PathBuf,
        /// Print only the summary, not the ledger.
        #[arg(long)]
        quiet: bool,
    },
    /// Query the full recoloring graph of a small instance.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        #[arg(default_value = "-")]
        instance: PathBuf,
    },
    /// Generate an instance, e.g. `grid:5x5`, `subdivided:k4:4`,
    /// `random-sparse:60:17/5`, `threaded:40:3:22/9`, `torus:6x6:0`.
    Gen {
        model: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sets the list size and checks the graph hypotheses.
        #[arg(long, value_enum)]
        theorem: Option<Which>,
        /// Overrides the theorem's list size.
        #[arg(long)]
        list_size: Option<usize>,
        #[arg(long, value_enum, default_value = "random")]
        lists: Lists,
        /// Palette for random lists; defaults to list size + 3.
        #[arg(long)]
        palette: Option<usize>,
        /// Allow alpha(v) = beta(v).
        #[arg(long)]
        overlapping: bool,
    },
}

enum Failure {
    Violation(String),
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn violation(e: impl ToString) -> Failure {
    Failure::Violation(e.to_string())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(usage)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &PathBuf) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn join(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Solve { theorem, instance, output } => {
            let inst = load_instance(&instance)?;
            let (seq, summary) = match theorem.theorem() {
                Some(t) => {
                    let sol = solve(t, &inst.graph, &inst.lists, &inst.alpha, &inst.beta).map_err(violation)?;
                    let configs: Vec<String> = sol.configs.iter().map(|(k, n)| format!("{}={n}", k.name())).collect();
                    let summary = format!("max recolorings {} (bound {}); configurations {}", sol.max_count, t.bound(), configs.join(" "));
                    (sol.sequence, summary)
                }
                None => {
                    let seq = solve_high_degree(&inst.graph, &inst.lists, &inst.alpha, &inst.beta).map_err(violation)?;
                    let summary = format!("max recolorings {} (bound 2)", seq.max_count());
                    (seq, summary)
                }
            };
            eprintln!("{} steps, {summary}", seq.len());
            let text = emit_sequence(&seq);
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Verify { bound, instance, sequence } => {
            let inst = load_instance(&instance)?;
            let steps = parse_sequence(&read(&sequence)?).map_err(|e| usage(format!("{}: {e}", sequence.display())))?;
            if let Some(&(v, _)) = steps.iter().find(|(v, _)| !inst.graph.contains(*v)) {
                return Err(violation(format!("step recolors {v}, which is not a vertex")));
            }
            let mut seq = RecoloringSequence::new(inst.alpha.clone());
            seq.steps = steps.into_iter().map(|(v, c)| Step::new(v, c)).collect();
            let report = validate_sequence(&inst.graph, &inst.lists, &seq, &inst.beta, bound).map_err(violation)?;
            let worst = report.argmax.map_or(String::new(), |v| format!(" at vertex {v}"));
            Ok(format!("valid: {} steps, max recolorings {}{worst}, bound {bound}\n", report.steps, report.max_count))
        }
        Command::Mad { enumerate, graph } => {
            let g = load_graph(&graph)?;
            let rep = if enumerate { mad_enumerate(&g) } else { mad_exact(&g) }.map_err(usage)?;
            Ok(format!("mad {}\nwitness {}\n", rep.mad, join(rep.witness)))
        }
        Command::Girth { graph } => {
            let g = load_graph(&graph)?;
            Ok(match girth(&g) {
                Some(k) => format!("girth {k}\n"),
                None => "girth inf\n".to_string(),
            })
        }
        Command::FindConfig { theorem, graph } => {
            let g = load_graph(&graph)?;
            let t = match theorem {
                ConfigTheorem::One => Theorem::One,
                ConfigTheorem::Two => Theorem::Two,
                ConfigTheorem::Three => Theorem::Three,
            };
            let m = t.detect(&g).map_err(violation)?;
            check_match(&g, &m).map_err(violation)?;
            let mut out = format!("config {}\n", m.kind.name());
            for (role, vs) in &m.roles {
                out += &format!("role {role}: {}\n", join(vs.iter().copied()));
            }
            out += &format!("deleted {}\n", join(m.deleted()));
            Ok(out)
        }
        Command::Discharge { lemma, graph, quiet } => {
            let g = load_graph(&graph)?;
            let (ledger, bound): (ChargeLedger, Rational) = match lemma {
                Lemma::Girth4 => (audit_girth4(&g).map_err(violation)?, Rational::from_integer(0)),
                Lemma::Mad175 => (audit_mad175(&g).map_err(violation)?, Rational::new(17, 5)),
                Lemma::Mad229 => (audit_mad229(&g).map_err(violation)?, Rational::new(22, 9)),
            };
            let low = ledger.violations(|_| bound);
            let mut out = if quiet { String::new() } else { ledger.to_text() };
            out += &format!(
                "total initial {} final {}; conserved {}; elements below {bound}: {}\n",
                ledger.total_initial(),
                ledger.total_final(),
                ledger.is_conserved(),
                low.len()
            );
            if !ledger.is_conserved() || !low.is_empty() {
                let worst: Vec<String> = low.iter().take(5).map(|(e, c): &(Element, Rational)| format!("{e} at {c}")).collect();
                return Err(violation(format!("{out}audit failed: {}", worst.join(", "))));
            }
            Ok(out)
        }
        Command::Oracle { query, instance } => {
            let inst = load_instance(&instance)?;
            let space = build_state_space(&inst.graph, &inst.lists).map_err(violation)?;
            Ok(match query {
                OracleQuery::Space => {
                    format!("states {}\nedges {}\ncomponents {}\n", space.len(), space.edge_count(), component_count(&space))
                }
                OracleQuery::Distance => match bfs_distance(&space, &inst.alpha, &inst.beta).map_err(violation)? {
                    Some(d) => format!("distance {d}\n"),
                    None => return Err(violation("beta is unreachable from alpha")),
                },
                OracleQuery::Diameter => match diameter(&space) {
                    Some(d) => format!("diameter {d}\n"),
                    None => return Err(violation(format!("recoloring graph is disconnected ({} components)", component_count(&space)))),
                },
            })
        }
        Command::Gen { model, seed, theorem, list_size, lists, palette, overlapping } => {
            let model: Model = model.parse().map_err(usage)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generate_graph(&model, &mut rng).map_err(violation)?;
            if let Some(t) = theorem.and_then(Which::theorem) {
                t.check_graph(&g).map_err(|e| violation(format!("generated graph fails the hypotheses: {e}")))?;
            }
            let k = match (list_size, theorem) {
                (Some(k), _) => k,
                (None, Some(Which::Baseline)) => 2 * g.max_degree() + 1,
                (None, Some(w)) => w.theorem().expect("not baseline").list_size(),
                (None, None) => return Err(usage("give --theorem or --list-size")),
            };
            let lists = match lists {
                Lists::Shared => ListMode::Shared,
                Lists::Random => ListMode::Random { palette: palette.unwrap_or(k + 3) },
            };
            let opts = InstanceOptions { list_size: k, lists, disjoint: !overlapping };
            let inst = random_instance(g, &opts, &mut rng).map_err(violation)?;
            Ok(emit_instance(&inst))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
