//! Command-line front end. All analysis lives in the library; this binary
//! parses flags, reads files, renders reports, and maps outcomes to exit
//! codes: 0 analysis ok / verified, 1 negative verdict, 2 input error,
//! 3 sweep counterexample, 4 internal inconsistency.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use closed_graphs::closed::definition_violation;
use closed_graphs::error::Error;
use closed_graphs::graph6::parse_graph6_lines;
use closed_graphs::oracle::{
    count_closed_labelings, find_closed_labeling, run_sweep, run_sweep_over, SweepOptions,
    SweepReport,
};
use closed_graphs::report::{
    label_graph, parse_graph_input, parse_labeling_file, render_violation, CheckReport,
    InputFormat,
};
use closed_graphs::{Graph, TieBreak};

#[derive(Parser)]
#[command(
    name = "closed-graphs",
    version,
    about = "Decide whether graphs admit closed labelings, construct and verify them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph: chordal, claw-free, narrow, weak-456-chordal,
    /// closed — with witnesses for every negative verdict
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        json: bool,
    },
    /// Label a graph greedily, componentwise, and optionally verify the
    /// result against the closedness definition
    Label {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, value_enum, default_value_t = TieBreakArg::MinId)]
        tie_break: TieBreakArg,
        /// Seed for --tie-break seeded
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify a labeling file ("vertex label" lines) against the
    /// closedness definition; exits 1 with the least violation if it fails
    Verify {
        graph: PathBuf,
        labeling: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Exhaustively search for a closed labeling (exits 1 if none exists);
    /// --count prints the exact number of closed labelings
    Oracle {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        count: bool,
    },
    /// Check closedness == chordal + claw-free + narrow, and the greedy
    /// labeling, on every connected graph up to --max-n (or a graph6 file)
    Sweep {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Replace chordality by "every 4/5/6-cycle has a chord"
        #[arg(long)]
        weak_chordal: bool,
        /// Seeded greedy-labeling runs per qualifying graph
        #[arg(long, default_value_t = 5)]
        tie_trials: u32,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Sweep the graphs in this graph6 file instead of the enumerator
        #[arg(long)]
        graph6_file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
}

impl From<FormatArg> for InputFormat {
    fn from(arg: FormatArg) -> InputFormat {
        match arg {
            FormatArg::EdgeList => InputFormat::EdgeList,
            FormatArg::Graph6 => InputFormat::Graph6,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TieBreakArg {
    /// Deterministic: first candidate in vertex order
    MinId,
    /// Seeded random choice among tied candidates
    Seeded,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Internal(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Check { path, format, json } => {
            let g = load_graph(&path, format)?;
            let report = CheckReport::analyze(&g)?;
            if json {
                print!("{}", report.to_json_string());
            } else {
                print!("{}", report.render_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Label {
            path,
            format,
            tie_break,
            seed,
            verify,
            json,
        } => {
            let g = load_graph(&path, format)?;
            let tb = match tie_break {
                TieBreakArg::MinId => TieBreak::MinIndex,
                TieBreakArg::Seeded => TieBreak::Seeded(seed),
            };
            let report = label_graph(&g, tb, verify)?;
            if json {
                print!("{}", report.to_json_string(&g));
            } else {
                print!("{}", report.render_text(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            labeling,
            format,
        } => {
            let g = load_graph(&graph, format)?;
            let text = read(&labeling)?;
            let lab = parse_labeling_file(&g, &text)?;
            match definition_violation(&g, &lab)? {
                None => {
                    println!("closed");
                    Ok(ExitCode::SUCCESS)
                }
                Some(violation) => {
                    println!("not closed: {}", render_violation(&g, &lab, &violation));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Oracle {
            path,
            format,
            count,
        } => {
            let g = load_graph(&path, format)?;
            let found = find_closed_labeling(&g);
            match &found {
                Some(lab) => {
                    for (v, label) in lab.iter() {
                        println!("{} {}", g.name(v), label);
                    }
                }
                None => println!("no closed labeling"),
            }
            if count {
                println!("# closed labelings: {}", count_closed_labelings(&g)?);
            }
            Ok(if found.is_some() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sweep {
            max_n,
            weak_chordal,
            tie_trials,
            jobs,
            graph6_file,
            json,
        } => {
            if jobs == 0 {
                return Err(Error::Guard {
                    what: "jobs",
                    value: 0,
                    min: 1,
                    max: usize::MAX,
                });
            }
            let opts = SweepOptions {
                weak_chordal,
                tie_trials,
                jobs,
            };
            let report: SweepReport = match graph6_file {
                Some(path) => {
                    let graphs = parse_graph6_lines(&read(&path)?)?;
                    run_sweep_over(graphs.into_iter(), &opts)
                }
                None => run_sweep(max_n, &opts)?,
            };
            if json {
                print!("{}", report.to_json_string());
            } else {
                print!("{}", report.render_text());
            }
            eprintln!("elapsed: {:.3}s", report.elapsed.as_secs_f64());
            Ok(if report.counterexamples.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}

fn load_graph(path: &Path, format: Option<FormatArg>) -> Result<Graph, Error> {
    let text = read(path)?;
    parse_graph_input(&text, format.map(InputFormat::from))
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|err| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {err}", path.display()),
    })
}
