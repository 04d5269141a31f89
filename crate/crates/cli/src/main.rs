//! `listnerve`: listings, operads, list nerves, thickenings and homology
//! over declarative JSON input files.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 unreadable or
//! unparsable input, 4 input that parses but does not validate, 5 a
//! computation error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Bounds, Failure, Outcome, Target, EXIT_CHECK};

#[derive(Parser, Debug)]
#[command(name = "listnerve", version, about = "Simplicial lists, list nerves of operads and their homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input document.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output document (nerve: slist; realize, free-operad: operad table).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Truncation degree, or the degree of enumerated shapes.
    #[arg(long = "D", global = true)]
    d: Option<usize>,

    /// Level-size bound.
    #[arg(long = "B", global = true)]
    b: Option<usize>,

    /// Bound on the nerve direction of the thickening.
    #[arg(long = "K", global = true, default_value_t = 2)]
    k: usize,

    /// Bound on the thickening direction.
    #[arg(long = "M", global = true, default_value_t = 2)]
    m: usize,

    /// Longest color sequence in the monoidal envelope.
    #[arg(long, global = true, default_value_t = 2)]
    maxlen: usize,

    /// Horn dimensions, as `n` or `lo..hi`.
    #[arg(long, global = true, default_value = "2..3", value_parser = parse_dims)]
    dims: (usize, usize),

    /// Sample count for sampled checks.
    #[arg(long, global = true, default_value_t = 500)]
    samples: usize,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Perfect-function factorization of a listing.
    Factor,
    /// Enumerate shapes of degree D with levels of size at most B.
    Shapes {
        /// Include shapes with several roots.
        #[arg(long)]
        all: bool,
    },
    /// Arrows of Υ of degree D into a rooted shape.
    Upsilon {
        /// Also compose with every arrow of this degree into each source.
        #[arg(long)]
        compose: Option<usize>,
    },
    /// Operations of T_α, a free operad on a multigraph, or a given operad.
    FreeOperad,
    /// The list nerve, truncated at D with level bound B.
    Nerve {
        /// List every simplex.
        #[arg(long)]
        list: bool,
    },
    /// Recover an operad from a simplicial list through its inner horns.
    Realize,
    /// Count inner-horn fillers in dimensions --dims.
    CheckQuasi,
    /// Compare list-envelope and envelope-nerve counts up to degree D.
    CheckEnvelope,
    /// The thickening of a shape up to K and M.
    Thicken {
        /// Same as --input.
        #[arg(long)]
        shape: Option<PathBuf>,
        /// Check the augmentation, its extra degeneracies and contractions.
        #[arg(long)]
        check_aug: bool,
    },
    /// Integer homology, optionally relative to a sub-list.
    Homology {
        /// Sub-list, with elements named by label.
        #[arg(long)]
        relative: Option<PathBuf>,
        /// Relative to the image of the representable (shape input only).
        #[arg(long, conflicts_with = "relative")]
        relative_representable: bool,
    },
    /// Check extra degeneracies and the contracting homotopy.
    VerifyContraction {
        #[arg(long, value_enum)]
        of: Target,
    },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn run(cli: &Cli) -> Outcome<report::Report> {
    let bounds = Bounds {
        d: cli.d,
        b: cli.b,
        k: cli.k,
        m: cli.m,
        maxlen: cli.maxlen,
        dims: cli.dims,
        samples: cli.samples,
        seed: cli.seed,
    };
    let input = || commands::require(&cli.input);
    match &cli.command {
        Command::Factor => commands::factor(&input()?),
        Command::Shapes { all } => commands::shapes(&bounds, *all),
        Command::Upsilon { compose } => commands::upsilon(&input()?, &bounds, *compose),
        Command::FreeOperad => commands::free_operad(&input()?, &cli.out),
        Command::Nerve { list } => commands::nerve_cmd(&input()?, &bounds, &cli.out, *list),
        Command::Realize => commands::realize(&input()?, &bounds, &cli.out),
        Command::CheckQuasi => commands::check_quasi(&input()?, &bounds),
        Command::CheckEnvelope => commands::check_envelope(&input()?, &bounds),
        Command::Thicken { shape, check_aug } => {
            let doc = commands::require(if shape.is_some() { shape } else { &cli.input })?;
            commands::thicken(&doc, &bounds, *check_aug)
        }
        Command::Homology { relative, relative_representable } => {
            commands::homology(&input()?, &bounds, relative, *relative_representable)
        }
        Command::VerifyContraction { of } => commands::verify(*of, &cli.input, &bounds),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let text = match cli.format {
                Format::Table => r.table(),
                Format::Machine => r.machine(),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(commands::EXIT_INPUT);
            }
            if r.failed() {
                ExitCode::from(EXIT_CHECK)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_accept_single_degrees_and_ranges() {
        assert_eq!(parse_dims("2..3"), Ok((2, 3)));
        assert_eq!(parse_dims("2..=4"), Ok((2, 4)));
        assert_eq!(parse_dims("3"), Ok((3, 3)));
        assert!(parse_dims("4..2").is_err());
    }

    #[test]
    fn command_line_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
