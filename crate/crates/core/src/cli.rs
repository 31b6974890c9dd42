//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bpp::gen_bpp;
use crate::error::{Error, Result};
use crate::frontend::{self, ast::Program};
use crate::ground::{full_grounding, Grounder};
use crate::oracle::enumerate_answer_sets;
use crate::solver::{Solver, SolverConfig};

pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lazyasp",
    version,
    about = "Lazy-grounding answer set solver with domain heuristics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for answer sets.
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Number of answer sets to print, 0 for all.
        #[arg(long, short = 'n', default_value_t = 1)]
        models: usize,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        heuristics: Switch,
        /// Print ASSIGN and DECIDE lines.
        #[arg(long)]
        trace: bool,
        /// Break ties between equal-priority directives at random.
        #[arg(long)]
        seed: Option<u64>,
        /// Maximum number of ground rules and directives.
        #[arg(long, default_value_t = crate::ground::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the full grounding.
    Ground {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = crate::ground::DEFAULT_CAP)]
        cap: usize,
    },
    /// Enumerate answer sets by brute force.
    Oracle {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a perfectly packable bin-packing instance.
    Gen {
        #[arg(long)]
        items: usize,
        #[arg(long)]
        cap: i64,
        #[arg(long)]
        bins: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prepend the bundled best-fit encoding.
        #[arg(long)]
        with_encoding: bool,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            match e {
                Error::TooLarge(_) => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn load_files(files: &[PathBuf]) -> Result<Program> {
    let mut src = String::new();
    for f in files {
        let text = std::fs::read_to_string(f)
            .map_err(|e| Error::Args(format!("cannot read {}: {e}", f.display())))?;
        src.push_str(&text);
        src.push('\n');
    }
    frontend::load(&src)
}

fn io(e: std::io::Error) -> Error {
    Error::Args(format!("output error: {e}"))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve {
            files,
            models,
            heuristics,
            trace,
            seed,
            cap,
            format,
        } => {
            let cfg = SolverConfig {
                heuristics: heuristics == Switch::On,
                seed,
                cap,
                trace,
                decision_limit: None,
            };
            let program = load_files(&files)?;
            solve(&program, models, cfg, format, out, err)
        }
        Command::Ground { files, cap } => {
            let g = full_grounding(&load_files(&files)?, cap)?;
            print_grounding(&g, out).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Oracle { files, format } => {
            let sets = enumerate_answer_sets(&load_files(&files)?)?;
            for (i, m) in sets.iter().enumerate() {
                match format {
                    Format::Text => writeln!(out, "{m}"),
                    Format::Jsonl => writeln!(
                        out,
                        "{}",
                        json!({"type": "answer", "index": i + 1, "atoms": m.0})
                    ),
                }
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen {
            items,
            cap,
            bins,
            seed,
            with_encoding,
        } => {
            let inst = gen_bpp(items, cap, bins, seed)?;
            if with_encoding {
                writeln!(out, "{}", crate::corpus::BPP_ENCODING).map_err(io)?;
            }
            write!(out, "{}", inst.to_program()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn solve(
    p: &Program,
    models: usize,
    cfg: SolverConfig,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut s = Solver::new(p, cfg)?;
    let mut found = 0;
    while models == 0 || found < models {
        let next = s.next_answer_set()?;
        for line in s.take_trace() {
            match format {
                Format::Text => writeln!(out, "{line}"),
                Format::Jsonl => writeln!(out, "{}", json!({"type": "trace", "line": line})),
            }
            .map_err(io)?;
        }
        let Some(m) = next else { break };
        found += 1;
        match format {
            Format::Text => writeln!(out, "Answer {found}: {m}"),
            Format::Jsonl => writeln!(
                out,
                "{}",
                json!({"type": "answer", "index": found, "atoms": m.0})
            ),
        }
        .map_err(io)?;
        out.flush().map_err(io)?;
    }
    let result = if found > 0 {
        "SATISFIABLE"
    } else {
        "UNSATISFIABLE"
    };
    let stats = s.statistics();
    match format {
        Format::Text => writeln!(out, "{result}\n{stats}"),
        Format::Jsonl => writeln!(
            out,
            "{}",
            json!({"type": "summary", "result": result, "models": found, "statistics": stats})
        ),
    }
    .map_err(io)?;
    let _ = writeln!(err, "wall time: {:.3}s", stats.wall_time.as_secs_f64());
    Ok(if found > 0 { EXIT_SAT } else { EXIT_UNSAT })
}

fn print_grounding(g: &Grounder, out: &mut dyn Write) -> std::io::Result<()> {
    for &f in g.facts() {
        writeln!(out, "{}.", g.store().display(f))?;
    }
    for r in g.rules() {
        writeln!(out, "{}", g.format_rule(r))?;
    }
    for d in g.directives() {
        writeln!(out, "{}", g.format_directive(d))?;
    }
    Ok(())
}
