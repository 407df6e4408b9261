use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Modular decomposition, flow reduction, transitive orientation and
/// two-order reachability indexes for directed graphs.
///
/// Graphs are read as edge lists: one `src dst` pair per line, a lone label
/// declares an isolated vertex, `#` starts a comment.
#[derive(Debug, Parser)]
#[command(name = "transmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Modular decomposition tree of the input's transitive closure.
    Decompose(DecomposeArgs),
    /// Apply sequential/parallel flow rules until none applies.
    Reduce(ReduceArgs),
    /// Transitive orientation of the closure's complement (or another target).
    Orient(OrientArgs),
    /// Build or query a two-order reachability index.
    #[command(subcommand)]
    Permrep(PermrepCommand),
    /// Same as `permrep build`.
    PermrepBuild(PermrepBuildArgs),
    /// Same as `permrep query`.
    PermrepQuery(PermrepQueryArgs),
    /// Brute-force module listing (small graphs only).
    Oracle(OracleArgs),
    /// Transitive closure, or transitive reduction of an acyclic input.
    Closure(ClosureArgs),
    /// Complement of the input.
    Complement(ComplementArgs),
}

#[derive(Debug, Subcommand)]
enum PermrepCommand {
    /// Emit the two linear orders, one per line.
    Build(PermrepBuildArgs),
    /// Print `true` if U reaches V according to an order file.
    Query(PermrepQueryArgs),
}

#[derive(Debug, Args)]
struct Input {
    /// Edge-list file; `-` or omitted reads standard input.
    input: Option<PathBuf>,
    /// Symmetrise every listed pair at ingest.
    #[arg(long)]
    undirected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Text,
    Structured,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Text,
    Dot,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
    format: TreeFormat,
    /// Compute the tree through the reduced kernel.
    #[arg(long)]
    via_reduction: bool,
    /// Transitively reduce the condensation before applying the flow rules.
    #[arg(long, requires = "via_reduction")]
    pre_reduce: bool,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[command(flatten)]
    input: Input,
    /// Transitively reduce the input first (acyclic inputs only).
    #[arg(long)]
    pre_reduce: bool,
    /// Print the merge log.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    ComplementOfClosure,
    ComplementOfInput,
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    LiftFirst,
    Direct,
}

#[derive(Debug, Args)]
struct OrientArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Target::ComplementOfClosure)]
    target: Target,
    /// How the closure's complement is oriented.
    #[arg(long, value_enum, default_value_t = Strategy::LiftFirst)]
    strategy: Strategy,
    #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
    format: GraphFormat,
}

#[derive(Debug, Args)]
struct PermrepBuildArgs {
    #[command(flatten)]
    input: Input,
    /// Index strongly connected components as single vertices.
    #[arg(long)]
    contract_sccs: bool,
    #[arg(long, value_enum, default_value_t = Strategy::LiftFirst)]
    strategy: Strategy,
}

#[derive(Debug, Args)]
struct PermrepQueryArgs {
    /// Order file written by `permrep build`.
    orders: PathBuf,
    u: String,
    v: String,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    input: Input,
    /// Enumerate modules of the transitive closure instead of the input.
    #[arg(long)]
    closure: bool,
}

#[derive(Debug, Args)]
struct ClosureArgs {
    #[command(flatten)]
    input: Input,
    /// Emit the transitive reduction instead.
    #[arg(long)]
    reduce: bool,
    #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
    format: GraphFormat,
}

#[derive(Debug, Args)]
struct ComplementArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
    format: GraphFormat,
}

/// Failure classes and their exit statuses.
#[derive(Debug)]
enum Failure {
    /// Bad invocation, unreadable or malformed input.
    Usage(String),
    /// Well-formed input on which the requested operation is undefined.
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            match stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
