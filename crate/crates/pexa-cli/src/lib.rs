//! Command-line front end for `pexa`: structure files in, deterministic
//! reports out.
//!
//! [`run`] does everything except touch the real standard streams, so the
//! binary is a thin wrapper and tests can drive commands in process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod format;

/// Exit code for malformed input or a usage error.
pub const EXIT_INVALID: i32 = 1;
/// Exit code when a checked property or axiom fails.
pub const EXIT_FAILED: i32 = 2;
/// Exit code when a size bound stops the computation.
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pexa", version, about = "Exact computations in proto-exact categories of finite modules")]
pub struct Cli {
    /// Emit one JSON document instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for enumeration (defaults to the number of CPUs).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    /// Use structures without running their axiom checkers first.
    #[arg(long, global = true)]
    pub skip_check: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Pullback,
    Pushout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CategoryName {
    Bmod,
    Kmod,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bmod,
    Kmod,
    En,
    Proj,
    Lattice,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the axiom checker for a structure.
    Check { file: PathBuf },
    /// List the submodules of a module or hypermodule.
    Submodules {
        file: PathBuf,
        /// Only saturated submodules.
        #[arg(long)]
        saturated: bool,
    },
    /// Quotient by a submodule or lattice ideal, e.g. `--by {0,2}`.
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "SUBSET")]
        by: String,
    },
    /// Classify a morphism as admissible mono, admissible epi, iso or neither.
    Classify {
        #[arg(long, value_name = "FILE")]
        hom: PathBuf,
    },
    /// Complete a partial square to a bi-Cartesian one.
    Complete {
        #[arg(long, value_enum)]
        direction: Direction,
        /// `i'` for a pullback, `i` for a pushout.
        #[arg(long, value_name = "FILE")]
        mono: PathBuf,
        /// `j'` for a pullback, `j` for a pushout.
        #[arg(long, value_name = "FILE")]
        epi: PathBuf,
    },
    /// Decide whether `mono` then `epi` is a short exact sequence.
    Exact {
        #[arg(long, value_name = "FILE")]
        mono: PathBuf,
        #[arg(long, value_name = "FILE")]
        epi: PathBuf,
    },
    /// Extension classes of C by A with bounded middles.
    Ext {
        #[arg(long, value_enum)]
        cat: Option<CategoryName>,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "C", value_name = "FILE")]
        c: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// The Hall number: subobjects D of E with D = B and E/D = A.
    Hall {
        #[arg(long = "E", value_name = "FILE")]
        e: PathBuf,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
    },
    /// The lattice of saturated submodules of a B-module.
    LatticeOf { file: PathBuf },
    /// The B-module of a finite lattice.
    ModuleOf { file: PathBuf },
    /// Jordan-Dedekind, semimodularity and atomisticity of a lattice.
    Geometric { file: PathBuf },
    /// Points and lines of a K-module.
    Geometry {
        file: PathBuf,
        /// Report the quotient geometry at this point instead.
        #[arg(long, value_name = "POINT")]
        quotient_by: Option<String>,
    },
    /// Number of incident point-line pairs of a K-module.
    Flags { file: PathBuf },
    /// Check the proto-exact axioms over every structure file in a directory.
    Axioms {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        /// Skip corpus files with more elements.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Generate structures.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Largest size for `bmod`, `kmod` and `lattice`.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Number of points for `en`.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Field size for `proj`.
        #[arg(long, default_value_t = 3)]
        p: usize,
        /// Dimension for `proj`.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Write one file per structure here instead of printing.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

/// What a run produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                Output { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    commands::execute(&cli)
}
