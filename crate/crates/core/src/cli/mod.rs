//! Command-line front end. Exit codes: 0 success, 1 when the answer is
//! negative (no proof, invalid certificate, claimed draw is a Black win),
//! 2 for usage and input errors.

pub mod render;
mod table1;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use table1::{metadata_rows, table1_report, Counts, MetadataRow, Table1};

use crate::board::{parse_position, Color, Position};
use crate::configs::{
    check_certificate, detect_for, prove_draw_with, DrawCertificate, ProveOptions, TemplateName,
};
use crate::par::{self, Exec};
use crate::solver::{solve_with, Pruning, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "mnk-draw", version, about = "Draw proofs for k-in-a-row positions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Game value of a position by exhaustive search.
    Solve {
        #[command(flatten)]
        board: BoardArg,
        #[arg(long, value_enum, default_value_t = Method::Setmatch)]
        method: Method,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List configuration placements for Black.
    Detect {
        #[command(flatten)]
        board: BoardArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Find a certificate that Black cannot win.
    Prove {
        #[command(flatten)]
        board: BoardArg,
        #[command(flatten)]
        search: SearchArgs,
        /// Print the board with lettered markers instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Check a certificate file.
    VerifyCert {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Configuration metadata and the solver check of every example.
    Table1,
    /// Draw a board, or a certificate's groups.
    Render {
        #[arg(long, required_unless_present = "cert")]
        board: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct BoardArg {
    #[arg(long)]
    board: PathBuf,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Comma-separated configuration names.
    #[arg(long, value_delimiter = ',')]
    templates: Option<Vec<TemplateName>>,
    /// Worker threads for configuration detection.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SearchArgs {
    fn templates(&self) -> Vec<TemplateName> {
        self.templates
            .clone()
            .unwrap_or_else(|| TemplateName::NAMED.to_vec())
    }

    fn prove_options(&self, exec: Exec) -> ProveOptions {
        ProveOptions {
            templates: self.templates(),
            exec,
            ..ProveOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    None,
    Hj,
    Setmatch,
}

impl From<Method> for Pruning {
    fn from(m: Method) -> Pruning {
        match m {
            Method::None => Pruning::None,
            Method::Hj => Pruning::HjPairing,
            Method::Setmatch => Pruning::SetMatching,
        }
    }
}

/// Input problems, reported with exit code 2.
#[derive(Debug)]
struct InputError(String);

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_board(path: &Path) -> Result<Position, InputError> {
    parse_position(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_cert(path: &Path) -> Result<DrawCertificate, InputError> {
    DrawCertificate::from_json(&read(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(InputError(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum Failure {
    Input(InputError),
    Io(std::io::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            board,
            method,
            search,
        } => {
            let pos = load_board(&board.board)?;
            let options = SolveOptions {
                prove: search.prove_options(Exec::Sequential),
                ..SolveOptions::new(method.into())
            };
            match solve_with(&pos, &options) {
                Ok((verdict, stats)) => {
                    writeln!(out, "verdict: {verdict}")?;
                    writeln!(out, "nodes_examined: {}", stats.nodes_examined)?;
                    writeln!(out, "table_hits: {}", stats.table_hits)?;
                    writeln!(
                        out,
                        "prune_events: hj={} setmatch={}",
                        stats.prune_events.hj, stats.prune_events.setmatch
                    )?;
                    Ok(0)
                }
                Err(e) => Err(InputError(e.to_string()).into()),
            }
        }
        Command::Detect { board, search } => {
            let pos = load_board(&board.board)?;
            let templates = search.templates();
            let found = par::with_threads(search.jobs, |exec| {
                detect_for(&pos, Color::Black, &templates, exec)
            });
            for e in &found {
                let binding: Vec<String> =
                    e.binding.iter().map(|(l, c)| format!("{l}={c}")).collect();
                let groups: Vec<String> = e.groups.iter().map(|g| g.to_string()).collect();
                writeln!(
                    out,
                    "{} markers {} groups {}",
                    e.template,
                    binding.join(","),
                    groups.join(",")
                )?;
            }
            writeln!(out, "{} placements", found.len())?;
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        Command::Prove {
            board,
            search,
            pretty,
        } => {
            let pos = load_board(&board.board)?;
            if pos.to_move() != Color::Black {
                return Err(InputError("certificates need Black to move".into()).into());
            }
            let cert =
                par::with_threads(search.jobs, |exec| prove_draw_with(&pos, &search.prove_options(exec)));
            match cert {
                Some(cert) if pretty => {
                    write!(out, "{}", render::certificate(&cert))?;
                    Ok(0)
                }
                Some(cert) => {
                    write!(out, "{}", cert.to_json())?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "NotFound")?;
                    Ok(1)
                }
            }
        }
        Command::VerifyCert { cert } => {
            let cert = load_cert(&cert)?;
            let result = check_certificate(&cert);
            write!(out, "{result}")?;
            Ok(if result.is_valid() { 0 } else { 1 })
        }
        Command::Table1 => {
            let table = table1_report();
            write!(out, "{table}")?;
            Ok(if table.ok() { 0 } else { 1 })
        }
        Command::Render { board, cert } => {
            match cert {
                Some(path) => {
                    let cert = load_cert(&path)?;
                    write!(out, "{}", render::certificate(&cert))?;
                    writeln!(out)?;
                    write!(out, "{}", render::certificate_groups(&cert))?;
                }
                None => {
                    let path = board.expect("clap requires --board without --cert");
                    let pos = load_board(&path)?;
                    writeln!(out, "{} {} to move", pos.spec(), pos.to_move())?;
                    write!(out, "{}", render::board(&pos, &Default::default()))?;
                }
            }
            Ok(0)
        }
    }
}

