use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ratmaps::script::{Flags, Outcome, Session, Statement, StatementKind, Status};

#[derive(Parser)]
#[command(name = "ratmaps", version, about = "Rational maps between projective varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapArgs {
    /// Script declaring the rings and maps.
    script: PathBuf,
    /// Name of the map to work on.
    #[arg(long)]
    map: String,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Runs every command statement of a script.
    Run {
        script: PathBuf,
        /// Trace every statement on stderr.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Ideal of the base locus.
    BaseLocus(MapArgs),
    /// Ideal of the closure of the image.
    Image(MapArgs),
    /// Whether the image fills the target.
    IsDominant(MapArgs),
    /// Whether the map is birational onto its image.
    IsBirational(MapArgs),
    /// Forms of the inverse map.
    Inverse(MapArgs),
    /// Whether the map is a closed embedding.
    IsEmbedding(MapArgs),
    /// Whether two maps agree as rational maps.
    IsSame {
        #[command(flatten)]
        args: MapArgs,
        #[arg(long)]
        other: String,
    },
    /// Rees relations used by the chosen strategy.
    Rees(MapArgs),
    /// Jacobian dual matrix and its rank.
    JacobianDual(MapArgs),
    /// Inverts the degree-d member of the Gabber family on P^n over GF(101).
    BenchGabber {
        n: usize,
        d: u32,
        #[command(flatten)]
        flags: Flags,
    },
}

fn load(path: &Path) -> Result<Session, Outcome> {
    let fail = |msg: String| Outcome {
        status: Status::Invalid,
        stdout: String::new(),
        stderr: msg,
    };
    let text = std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}\n", path.display())))?;
    Session::parse(&text).map_err(|e| fail(format!("{}:{e}\n", path.display())))
}

fn on_map(args: MapArgs, kind: impl FnOnce(String) -> StatementKind) -> Outcome {
    match load(&args.script) {
        Ok(session) => session.execute(&Statement {
            kind: kind(args.map),
            flags: args.flags,
        }),
        Err(out) => out,
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Run { script, verbose } => match load(&script) {
            Ok(session) => session.run_all(verbose),
            Err(out) => out,
        },
        Command::BaseLocus(a) => on_map(a, |map| StatementKind::BaseLocus { map }),
        Command::Image(a) => on_map(a, |map| StatementKind::Image { map }),
        Command::IsDominant(a) => on_map(a, |map| StatementKind::IsDominant { map }),
        Command::IsBirational(a) => on_map(a, |map| StatementKind::IsBirational { map }),
        Command::Inverse(a) => on_map(a, |map| StatementKind::Inverse { map }),
        Command::IsEmbedding(a) => on_map(a, |map| StatementKind::IsEmbedding { map }),
        Command::IsSame { args, other } => on_map(args, |map| StatementKind::IsSame { map, other }),
        Command::Rees(a) => on_map(a, |map| StatementKind::Rees { map }),
        Command::JacobianDual(a) => on_map(a, |map| StatementKind::JacobianDual { map }),
        Command::BenchGabber { n, d, flags } => Session::default().execute(&Statement {
            kind: StatementKind::BenchGabber { n, d },
            flags,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the exit code of script errors
            return ExitCode::from(if e.use_stderr() { Status::Invalid as u8 } else { 0 });
        }
    };
    let out = dispatch(cli.command);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
