//! The `ramsey-draw` command line.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hypercore::text::GraphFile;
use hypercore::{Edge, H5Edge, Hypergraph, Vertex};
use verifier::{verify_with, VerifyOptions};

use crate::campaign::{default_specs, parse_specs, run_campaign, SEEDS_ENV};
use crate::game::run_game;
use crate::monitors;
use crate::replay::replay_text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ramsey-draw",
    version,
    about = "Strong Ramsey games on the 5-graph H5"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the draw-sufficiency properties of a graph file.
    Verify {
        graph: PathBuf,
        /// Designated degree-2 vertex; defaults to the file's `z` line.
        #[arg(long)]
        z: Option<Vertex>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        /// Restrict the rigidity sweep to pairs `e,f`. Edges are vertex ids
        /// joined by `-` (e.g. `0-1-3-5-8`) or H5 labels such as `e_r`.
        /// Repeatable. A restricted sweep never certifies.
        #[arg(long)]
        pairs: Vec<String>,
    },
    /// Play one game against the drawing strategy and write its transcript.
    Simulate {
        #[arg(long)]
        adversary: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        horizon: usize,
        /// Transcript file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded batch across the adversary suite.
    Campaign {
        #[arg(long, default_value_t = 10_000)]
        games: usize,
        #[arg(long, default_value_t = 200)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        /// Seed corpus, one `[adversary] seed` per line. Overrides
        /// --games/--first-seed. Defaults to $RAMSEY_DRAW_SEEDS.
        #[arg(long, env = SEEDS_ENV)]
        seeds: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        /// Write transcripts of failing games here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Re-derive a transcript from its moves and byte-compare.
    Replay { transcript: PathBuf },
    /// Run the play service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        /// Directory for per-session transcripts.
        #[arg(long)]
        transcripts: Option<PathBuf>,
        #[arg(long, default_value_t = 1024)]
        capacity: usize,
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
    },
}

/// `cli_main`: runs one command and returns the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn run(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Verify {
            graph,
            z,
            report,
            pairs,
        } => verify(graph, z, report, &pairs),
        Command::Simulate {
            adversary,
            seed,
            horizon,
            out,
        } => simulate(&adversary, seed, horizon, out),
        Command::Campaign {
            games,
            horizon,
            first_seed,
            seeds,
            report,
            out_dir,
            threads,
        } => {
            let specs = match seeds {
                Some(path) => parse_specs(&read(&path)?)?,
                None => default_specs(games, first_seed),
            };
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| e.to_string())?;
            let r = pool
                .install(|| {
                    run_campaign(&specs, horizon, |spec, p, g| {
                        if let (Some(dir), false) = (&out_dir, g.passed()) {
                            let path = dir.join(format!("{}-{}.jsonl", spec.adversary, spec.seed));
                            if let Err(e) = fs::write(&path, p.transcript.to_jsonl()) {
                                eprintln!("{}: {e}", path.display());
                            }
                        }
                    })
                })
                .map_err(|e| e.to_string())?;
            match report {
                ReportFormat::Json => println!("{}", r.to_json()),
                ReportFormat::Text => print!("{}", r.to_text()),
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Replay { transcript } => {
            let text = read(&transcript)?;
            let check = replay_text(&text).map_err(|e| e.to_string())?;
            if check.identical {
                println!("identical: {} bytes", text.len());
                Ok(EXIT_OK)
            } else {
                if let Some((line, was, now)) = check.first_difference {
                    println!("line {line} differs\n  file:    {was}\n  derived: {now}");
                }
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Serve {
            addr,
            transcripts,
            capacity,
            horizon,
        } => {
            if let Some(dir) = &transcripts {
                fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            let config = playservice::Config {
                capacity,
                horizon,
                transcripts,
                monitors: Some(Arc::new(monitors::evaluate_states)),
            };
            let service = Arc::new(playservice::Service::new(config));
            let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            eprintln!("listening on {addr}");
            rt.block_on(playservice::serve(service, &addr))
                .map_err(|e| format!("{addr}: {e}"))?;
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn verify(
    path: PathBuf,
    z: Option<Vertex>,
    report: ReportFormat,
    pairs: &[String],
) -> Result<i32, String> {
    let file = GraphFile::parse(&read(&path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let z = z
        .or(file.z)
        .ok_or("no designated vertex: pass --z or add a `z` line")?;
    if !file.graph.vertices().contains(&z) {
        return Err(format!("vertex {z} is not in the graph"));
    }
    let opts = VerifyOptions {
        pairs: if pairs.is_empty() {
            None
        } else {
            Some(
                pairs
                    .iter()
                    .map(|p| parse_pair(p, &file.graph))
                    .collect::<Result<_, _>>()?,
            )
        },
    };
    let r = verify_with(&file.graph, z, &opts);
    match report {
        ReportFormat::Json => println!("{}", r.to_json()),
        ReportFormat::Text => print!("{}", r.to_text()),
    }
    Ok(if r.draw_sufficient {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn parse_pair(text: &str, h: &Hypergraph) -> Result<(Edge, Edge), String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("--pairs {text:?}: expected `e,f`"));
    };
    let (e, f) = (parse_edge(a, h)?, parse_edge(b, h)?);
    if e == f {
        return Err(format!("--pairs {text:?}: the two edges are equal"));
    }
    Ok((e, f))
}

fn parse_edge(text: &str, h: &Hypergraph) -> Result<Edge, String> {
    let text = text.trim();
    let edge = match H5Edge::ALL.iter().find(|n| n.label() == text) {
        Some(n) => n.edge(),
        None => {
            let ids = text
                .split(['-', ' ', '.'])
                .filter(|w| !w.is_empty())
                .map(|w| w.parse::<Vertex>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("edge {text:?}: {e}"))?;
            Edge::new(&ids, h.k()).map_err(|e| format!("edge {text:?}: {e}"))?
        }
    };
    if !h.contains_edge(&edge) {
        return Err(format!("edge {text:?} is not in the graph"));
    }
    Ok(edge)
}

fn simulate(
    adversary: &str,
    seed: u64,
    horizon: usize,
    out: Option<PathBuf>,
) -> Result<i32, String> {
    let p = run_game(adversary, horizon, seed).map_err(|e| e.to_string())?;
    let text = p.transcript.to_jsonl();
    match &out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    let footer = p
        .transcript
        .footer
        .as_ref()
        .expect("finished games have footers");
    let failed: Vec<&str> = footer
        .monitors
        .iter()
        .filter(|m| !m.holds)
        .map(|m| m.monitor.as_str())
        .collect();
    eprintln!(
        "{adversary} seed {seed}: {:?} after {} plies{}",
        footer.outcome,
        p.transcript.moves.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(", failed monitors: {}", failed.join(" "))
        }
    );
    let ok = matches!(
        footer.outcome,
        engine::Outcome::SpWin | engine::Outcome::OngoingAtHorizon
    ) && failed.is_empty();
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}
