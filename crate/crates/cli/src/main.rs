use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxcsp_cli::{CountMode, CountOptions, MethodChoice, Report};
use maxcsp_core::DEFAULT_CAP;

/// Classify Boolean constraint languages and count locally maximal
/// satisfying assignments.
#[derive(Parser)]
#[command(name = "maxcsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact and approximate complexity of a language.
    Classify {
        #[arg(long)]
        language: PathBuf,
    },
    /// Count satisfying or locally maximal satisfying assignments.
    Count {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Max)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Also run brute force (or a tractable method) and require agreement.
        #[arg(long)]
        verify: bool,
        /// Largest variable count brute force will enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Synthesize and verify a maximality gadget for one relation.
    Gadget {
        #[arg(long)]
        language: PathBuf,
        #[arg(long)]
        relation: String,
    },
    /// Attach a gadget to every variable, writing the new instance.
    Reduce {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        relation: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode bipartite independent sets as an Implies instance.
    EncodeBis {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Relations witnessing the failure of each tractable property.
    Witness {
        #[arg(long)]
        language: PathBuf,
    },
    /// Run the built-in consistency suites against brute force.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    All,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Monotone,
    Affine,
    Im2,
}

fn run(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::Classify { language } => maxcsp_cli::cmd_classify(&language),
        Command::Count {
            instance,
            mode,
            method,
            verify,
            cap,
        } => {
            let options = CountOptions {
                mode: match mode {
                    Mode::All => CountMode::All,
                    Mode::Max => CountMode::Max,
                },
                method: match method {
                    MethodArg::Auto => MethodChoice::Auto,
                    MethodArg::Brute => MethodChoice::Brute,
                    MethodArg::Monotone => MethodChoice::Monotone,
                    MethodArg::Affine => MethodChoice::Affine,
                    MethodArg::Im2 => MethodChoice::Im2,
                },
                verify,
                cap,
            };
            maxcsp_cli::cmd_count(&instance, options)
        }
        Command::Gadget { language, relation } => maxcsp_cli::cmd_gadget(&language, &relation),
        Command::Reduce {
            instance,
            relation,
            out,
        } => maxcsp_cli::cmd_reduce(&instance, &relation, &out),
        Command::EncodeBis { graph, out } => maxcsp_cli::cmd_encode_bis(&graph, &out),
        Command::Witness { language } => maxcsp_cli::cmd_witness(&language),
        Command::Selftest => maxcsp_cli::cmd_selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if let Some(suites) = &report.suites {
                for s in suites {
                    eprintln!("{:>7} ms  {}", s.elapsed_ms, s.name);
                }
            }
            println!("{}", report.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
