//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "ryserlab",
    version,
    about = "Latin squares, transversals, orthogonal systems, matchings and permanents"
)]
pub struct Cli {
    /// Output as text or as line-delimited JSON records.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for the parallel searches; 1 keeps everything sequential.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dataset {
    /// Parker's order-10 square.
    Parker,
    /// Parker's square with the marked 0/5 and 2/7 exchanges.
    ParkerSwapped,
}

/// A square from a file or an embedded dataset.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct SquareInput {
    /// Square file (`-` for stdin).
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub data: Option<Dataset>,
}

#[derive(Debug, Clone, Args)]
pub struct FileInput {
    /// Input file (`-` for stdin).
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct OutFile {
    /// Also write the result to this file in the input format.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum matching of a zero-one matrix.
    Match(FileInput),
    /// Minimum line cover of a zero-one matrix.
    Cover(FileInput),
    /// Distinct representatives for the sets given by the rows of a zero-one matrix.
    Sdr(FileInput),
    /// Decomposes a doubly stochastic matrix into permutation matrices.
    Birkhoff(FileInput),
    /// Decides completability of a Latin rectangle and completes it.
    Complete {
        #[command(flatten)]
        input: FileInput,
        /// Number of symbols; defaults to the larger side of the rectangle.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Transversals of a Latin square.
    #[command(subcommand)]
    Transversals(TransversalsCommand),
    /// Splits a square into disjoint transversals.
    Decompose(SquareInput),
    /// An orthogonal mate built from a decomposition.
    Mate(SquareInput),
    /// Counts decompositions into disjoint transversals.
    DecompositionsCount {
        #[command(flatten)]
        input: SquareInput,
        /// Stop after this many search nodes and report a lower bound.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Orthogonal Latin square constructions.
    #[command(subcommand)]
    Mols(MolsCommand),
    /// Projective planes and complete orthogonal systems.
    #[command(subcommand)]
    Plane(PlaneCommand),
    /// Permanents, their bounds and identities.
    #[command(subcommand)]
    Perm(PermCommand),
    /// Enumerative counts of squares and rectangles.
    #[command(subcommand)]
    Count(CountCommand),
    /// Row-of-ones criterion for a zero-one matrix.
    Problem1(FileInput),
    /// Trace of a symmetric design incidence matrix.
    Problem2 {
        #[command(flatten)]
        input: FileInput,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Runs the acceptance criteria.
    Acceptance {
        #[arg(long, value_enum, default_value_t = Scale::Quick)]
        scale: Scale,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum TransversalsCommand {
    Count(SquareInput),
    List(SquareInput),
    /// Transversal count against the parity statements.
    Parity(SquareInput),
    Find(SquareInput),
}

#[derive(Debug, Subcommand)]
pub enum MolsCommand {
    /// The complete system over GF(p^a).
    Gf {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u32,
        #[command(flatten)]
        out: OutFile,
    },
    /// Orthogonal squares of order n from its prime power factors.
    Macneish {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutFile,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlaneCommand {
    /// Incidence matrix of the plane of a complete system, read from a file
    /// or built over GF(p^a).
    Build {
        /// System file: squares separated by blank lines.
        #[arg(long, conflicts_with_all = ["p", "a"], required_unless_present_all = ["p", "a"])]
        system: Option<PathBuf>,
        #[arg(long, requires = "a")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        a: Option<u32>,
        #[command(flatten)]
        out: OutFile,
    },
    /// Checks `AA^T = nI + J` for an incidence matrix.
    Verify {
        #[command(flatten)]
        input: FileInput,
        #[arg(long)]
        order: usize,
    },
    /// Recovers a complete orthogonal system from an incidence matrix.
    Extract {
        #[command(flatten)]
        input: FileInput,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PermCommand {
    Compute(FileInput),
    /// Every applicable bound, checked against the exact permanent.
    Bounds(FileInput),
    /// The two classical counterexamples, recomputed.
    Counterexamples,
    /// The derangement identity at n, and the circulant identity when x and y are given.
    Identity {
        #[arg(long)]
        n: usize,
        /// Rational such as 2 or -3/4.
        #[arg(long, requires = "y", allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, requires = "x", allow_hyphen_values = true)]
        y: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CountCommand {
    /// Reduced Latin squares of order n.
    Squares {
        #[arg(long)]
        n: usize,
    },
    /// Latin rectangles with r rows and n columns over n symbols.
    Rectangles {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Only those with first row 0 1 ... n-1.
        #[arg(long)]
        normalized: bool,
    },
    /// The rectangle count against its lower and upper estimates.
    Sandwich {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
}
