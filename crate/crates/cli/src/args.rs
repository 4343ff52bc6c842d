use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sfc", version, about = "Pandimensional Hilbert, Peano and isotropic space-filling curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate, validate or describe cell paths.
    #[command(subcommand)]
    Cell(CellCommand),
    /// Map scalars to lattice points.
    Encode {
        #[command(flatten)]
        cell: CellSource,
        /// Use the all-of-space centered map (diagonal cells only).
        #[arg(long)]
        centered: bool,
        /// Decimal scalars, arbitrary length.
        #[arg(required = true, allow_negative_numbers = true)]
        scalars: Vec<String>,
    },
    /// Map a lattice point back to its scalar.
    Decode {
        #[command(flatten)]
        cell: CellSource,
        #[arg(long)]
        centered: bool,
        /// One decimal coordinate per axis.
        #[arg(required = true, allow_negative_numbers = true)]
        coords: Vec<String>,
    },
    /// Emit the first s^(d*m) vertices of the curve.
    Curve {
        #[command(flatten)]
        cell: CellSource,
        #[arg(long, default_value_t = 2)]
        levels: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Per-axis edge counts over the first s^(d*m) nodes.
    Isotropy {
        #[command(flatten)]
        cell: CellSource,
        #[arg(long, default_value_t = 2)]
        levels: u64,
        /// Include the edge leaving the last node.
        #[arg(long)]
        closing: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Histogram of maximal straight runs per axis.
    Runs {
        #[command(flatten)]
        cell: CellSource,
        #[arg(long, default_value_t = 2)]
        levels: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Real-argument maps at finite resolution.
    Real {
        /// F: scalar to point; f: point to scalar; E: sub-cell centre of a
        /// scalar; e: inverse of E.
        #[arg(value_enum)]
        map: RealMap,
        #[command(flatten)]
        cell: CellSource,
        /// Resolution in digit groups (F, f).
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// Recursion depth (E, e); defaults to n*d.
        #[arg(long)]
        depth: Option<u64>,
        #[arg(long)]
        centered: bool,
        /// A rational `p/q` for F and E, one rational per axis for f and e.
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CellCommand {
    /// Write the serpentine cell path for a rank and side.
    Gen {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        side: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Validate a cell file and report its corner class.
    Check { file: PathBuf },
    /// Orientation summary, isotropy feasibility and a continuity check.
    Info {
        #[command(flatten)]
        cell: CellSource,
    },
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    /// Mean displacement against scalar gap, as CSV.
    Dimred {
        #[command(flatten)]
        cell: CellSource,
        /// Measure the bit-interleaving curve of rank `--rank` instead of a cell.
        #[arg(long, conflicts_with_all = ["cell", "side", "variant"])]
        zcurve: bool,
        #[arg(long, default_value_t = 4096)]
        samples: u64,
        #[arg(long, default_value_t = sfc_core::analysis::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_gap: u64,
        /// Sample from [0, s^(d*m)); defaults to the smallest m with s^(d*m) >= 2^20.
        #[arg(long)]
        domain_levels: Option<u64>,
        /// Also print the log-log slope to stderr.
        #[arg(long)]
        slope: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CellSource {
    /// Cell file to load.
    #[arg(long, conflicts_with_all = ["rank", "side"])]
    pub cell: Option<PathBuf>,
    /// Rank of a generated serpentine cell.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Side of a generated serpentine cell.
    #[arg(long)]
    pub side: Option<u32>,
    /// Alignment variant; defaults to adj for adjacent-corner cells and peano otherwise.
    #[arg(long)]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RealMap {
    #[value(name = "F")]
    Forward,
    #[value(name = "f")]
    Inverse,
    #[value(name = "E")]
    MidForward,
    #[value(name = "e")]
    MidInverse,
}
