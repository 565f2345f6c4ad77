use clap::{Args, Parser, Subcommand};
use hyperlat_cli::{render, report, run, CliError, Output, Request, Source};
use std::process::ExitCode;

/// Exact lattice computations for involutions of K3^[n]-type lattices.
///
/// JSON arguments are given inline or as @path.
#[derive(Parser)]
#[command(name = "hyperlat", version)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WallsArgs {
    #[arg(long)]
    lattice: String,
    #[arg(long)]
    sublattice: String,
    /// Cone rays in M coordinates; defaults to the positive cone or the Vinberg domain.
    #[arg(long)]
    cone: Option<String>,
    /// Wall numerics such as "-2,-10:div2"; defaults to the built-in list for n.
    #[arg(long, alias = "walls-spec", allow_hyphen_values = true)]
    norms: Option<String>,
    /// Keep one sign per class, pairing non-negatively with the cone reference.
    #[arg(long)]
    signed: bool,
    /// Coefficient box search of this radius instead of the complete search.
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Subcommand)]
enum WallsCommand {
    /// Wall classes of M crossing a cone.
    Enum(WallsArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with_all = ["lattice", "sublattice"])]
    preset: Option<String>,
    #[arg(long, requires = "sublattice")]
    lattice: Option<String>,
    #[arg(long, requires = "lattice")]
    sublattice: Option<String>,
    #[arg(long, alias = "walls-spec", allow_hyphen_values = true)]
    norms: Option<String>,
    #[arg(long)]
    n: Option<i64>,
    /// Emit the adjacency graph in DOT format.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum ChambersCommand {
    /// Chambers, symmetries and deformation types.
    Classify(ClassifyArgs),
}

#[derive(Subcommand)]
enum Command {
    /// Rank, signature, determinant and discriminant summary.
    LatticeInfo { spec: String },
    /// The discriminant form: generators, q and b.
    Discriminant { spec: String },
    /// Admissibility of a sublattice of L_n.
    Admissible {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        sublattice: String,
        #[arg(long)]
        n: Option<i64>,
    },
    /// Wall enumeration.
    Walls {
        #[command(subcommand)]
        command: WallsCommand,
    },
    /// Same as `walls enum`.
    WallsEnum(WallsArgs),
    /// Chambers, symmetries and deformation types.
    Classify(ClassifyArgs),
    /// Same as `classify`.
    Chambers {
        #[command(subcommand)]
        command: ChambersCommand,
    },
    /// Glue phi on M with psi on its complement.
    Extend {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        sublattice: String,
        #[arg(long)]
        phi: String,
        /// "id", "-id" or a matrix on the complement.
        #[arg(long)]
        psi: Option<String>,
    },
    /// Membership of an isometry in Mon^2.
    Monodromy {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n: Option<i64>,
    },
}

fn load(arg: &str) -> Result<String, String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}")),
        None => Ok(arg.to_string()),
    }
}

fn walls_request(a: WallsArgs) -> Result<Request, String> {
    Ok(Request::WallsEnum {
        lattice: a.lattice,
        sublattice: load(&a.sublattice)?,
        cone: a.cone.as_deref().map(load).transpose()?,
        norms: a.norms,
        signed: a.signed,
        bound: a.bound,
        n: a.n,
    })
}

fn request(cmd: Command) -> Result<Request, String> {
    Ok(match cmd {
        Command::LatticeInfo { spec } => Request::LatticeInfo { lattice: spec },
        Command::Discriminant { spec } => Request::Discriminant { lattice: spec },
        Command::Admissible { lattice, sublattice, n } => Request::Admissible { lattice, sublattice: load(&sublattice)?, n },
        Command::Walls { command: WallsCommand::Enum(a) } | Command::WallsEnum(a) => walls_request(a)?,
        Command::Classify(a) | Command::Chambers { command: ChambersCommand::Classify(a) } => {
            let source = match (a.preset, a.lattice, a.sublattice) {
                (Some(p), _, _) => Source::Preset(p),
                (None, Some(lattice), Some(s)) => Source::Explicit { lattice, sublattice: load(&s)? },
                _ => return Err("classify needs --preset or --lattice with --sublattice".into()),
            };
            Request::Classify { source, norms: a.norms, n: a.n, dot: a.dot }
        }
        Command::Extend { lattice, sublattice, phi, psi } => Request::Extend {
            lattice,
            sublattice: load(&sublattice)?,
            phi: load(&phi)?,
            psi: psi.as_deref().map(load).transpose()?,
        },
        Command::Monodromy { lattice, matrix, n } => Request::Monodromy { lattice, matrix: load(&matrix)?, n },
    })
}

fn emit(output: &Option<String>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let req = match request(cli.command) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let result = run(&req);
    let text = match &result {
        Ok(Output::Dot(d)) => d.clone(),
        _ => render(&report(&req, &result)),
    };
    if let Err(msg) = emit(&cli.output, &text) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Parse(inner) | CliError::Domain(inner)) = &e;
            eprintln!("error: {inner}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
