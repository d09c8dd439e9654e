//! `permbase`: command-line front end.

mod commands;
mod fixtures;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use permbase::base::DEFAULT_NODE_BUDGET;
use permbase::constructions::{Budgets, DEFAULT_POINT_BUDGET};
use permbase::par;
use permbase::perm::DEFAULT_ENUMERATION_BOUND;
use permbase::saxl::DEFAULT_SWEEP_BUDGET;
use permbase::Error;

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "permbase", version, about = "Base sizes and regular suborbits of permutation groups")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    max_order: u64,
    /// Largest permutation domain built.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_BUDGET)]
    max_points: u64,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a group and optionally save it as a generator file.
    Construct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree, order, transitivity and primitivity.
    Info {
        #[arg(long)]
        group: String,
    },
    /// Minimal base size with a witness.
    BaseSize {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Regular suborbits of a transitive group.
    Regular {
        #[arg(long)]
        group: String,
    },
    /// Regular orbits on m-tuples.
    Reg {
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
    },
    /// Distinguishing number and partition counts.
    Dist {
        #[arg(long)]
        group: String,
    },
    /// Distinguishing partitions with exactly m parts.
    Tm {
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
    },
    /// Predicted base size and suborbit count of L wr P.
    WreathPredict {
        #[arg(long = "L", value_name = "SPEC")]
        l: String,
        #[arg(long = "P", value_name = "SPEC")]
        p: String,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
    },
    /// Suborbit formula against a direct orbit count for L wr P.
    WreathVerify {
        #[arg(long = "L", value_name = "SPEC")]
        l: String,
        #[arg(long = "P", value_name = "SPEC")]
        p: String,
    },
    /// Product-type subgroup between T wr P and L wr P.
    Prodtype {
        #[arg(long = "L", value_name = "SPEC")]
        l: String,
        #[arg(long = "P", value_name = "SPEC")]
        p: String,
        /// diag, full or pattern:<bits>
        #[arg(long, default_value = "diag")]
        pattern: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Saxl graph invariants, with optional Graphviz export.
    Saxl {
        #[arg(long)]
        group: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        sweep_budget: u64,
    },
    /// Run the fixture manifest and report each row.
    VerifyFixtures {
        /// Manifest to run instead of the bundled one.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
}

fn dispatch(cli: &Cli) -> permbase::Result<Output> {
    let b = Budgets {
        max_order: cli.max_order,
        max_points: cli.max_points,
    };
    use Command::*;
    match &cli.command {
        Construct { group, out } => commands::construct(group, out.as_deref(), &b),
        Info { group } => commands::info(group, &b),
        BaseSize { group, node_budget } => commands::base_size(group, *node_budget, &b),
        Regular { group } => commands::regular(group, &b),
        Reg { group, m } => commands::reg(group, *m, &b),
        Dist { group } => commands::dist(group, &b),
        Tm { group, m } => commands::tm(group, *m, &b),
        WreathPredict { l, p, m_max } => commands::wreath_predict(l, p, *m_max, &b),
        WreathVerify { l, p } => commands::wreath_verify(l, p, &b),
        Prodtype {
            l,
            p,
            pattern,
            node_budget,
        } => commands::prodtype(l, p, pattern, *node_budget, &b),
        Saxl {
            group,
            dot,
            sweep_budget,
        } => commands::saxl(group, dot.as_deref(), *sweep_budget, &b),
        VerifyFixtures {
            manifest,
            node_budget,
        } => fixtures::verify(manifest.as_deref(), &b, *node_budget),
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_budget() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let start = Instant::now();
    match par::with_threads(cli.threads, || dispatch(&cli)) {
        Ok(mut out) => {
            out.report.elapsed_ms = start.elapsed().as_millis() as u64;
            if cli.json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.text.take().unwrap_or_else(|| out.report.to_text()));
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
