use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use sfc_core::analysis::{dimred_profile, edge_tally, loglog_slope, run_histogram, DimredConfig, DimredCurve};
use sfc_core::cells::{
    diagnostics, make_serpentine_path_with_budget, parse_cell_file_with_budget, render_cell_file, validate_path,
    verify_recurrence_compatibility, AlignmentVariant, Cell, Compatibility, NodeBudget,
};
use sfc_core::realmap::{self, parse_rational, RationalPoint};
use sfc_core::recurrence::{decode, decode_centered, encode, encode_centered, LatticePoint, SignedPoint};
use sfc_core::Error;

use crate::args::{BenchCommand, CellCommand, CellSource, Command, Format, Output, RealMap};

/// Points checked by `cell info` before declaring a cell continuous.
const COMPATIBILITY_POINTS: u64 = 1 << 16;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Stdout(io::Error),
    #[error("cell breaks continuity: Q({u}) and Q({u} + 1) are {l1} apart")]
    Incompatible { u: u64, l1: BigUint },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(Error::Validation(_) | Error::Parse { .. }) => 2,
            CliError::Core(Error::Orientation { .. } | Error::Discontinuous { .. }) => 3,
            CliError::Core(_) => 1,
            CliError::Incompatible { .. } => 3,
            CliError::Io { .. } | CliError::Stdout(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<()> {
    let budget = NodeBudget::from_env();
    match command {
        Command::Cell(CellCommand::Gen { rank, side, out }) => {
            let path = make_serpentine_path_with_budget(rank, side, budget)?;
            emit(&out, &render_cell_file(&path))
        }
        Command::Cell(CellCommand::Check { file }) => {
            let path = parse_cell_file_with_budget(&read(&file)?, budget)?;
            let class = validate_path(&path).map_err(Error::from)?;
            // Building the cell runs the orientation rules as well.
            Cell::build(path, AlignmentVariant::natural(class))?;
            print(&format!("ok: {class}\n"))
        }
        Command::Cell(CellCommand::Info { cell }) => {
            let cell = load(&cell, budget)?;
            let mut text = diagnostics(&cell).to_string();
            match verify_recurrence_compatibility(&cell, COMPATIBILITY_POINTS) {
                Compatibility::Continuous { checked } => {
                    let _ = writeln!(text, "continuity: ok over {checked} points");
                    print(&text)
                }
                Compatibility::Broken { u, l1 } => {
                    print(&text)?;
                    Err(CliError::Incompatible { u, l1 })
                }
            }
        }
        Command::Encode { cell, centered, scalars } => {
            let cell = load(&cell, budget)?;
            let mut text = String::new();
            for s in &scalars {
                if centered {
                    let u: BigInt = parse_int(s)?;
                    let _ = writeln!(text, "{}", encode_centered(&u, &cell)?);
                } else {
                    let u: BigUint = parse_int(s)?;
                    let _ = writeln!(text, "{}", encode(&u, &cell));
                }
            }
            print(&text)
        }
        Command::Decode { cell, centered, coords } => {
            let cell = load(&cell, budget)?;
            let u = if centered {
                let v = coords.iter().map(|c| parse_int(c)).collect::<Result<Vec<BigInt>>>()?;
                decode_centered(&SignedPoint::new(v), &cell)?.to_string()
            } else {
                let v = coords.iter().map(|c| parse_int(c)).collect::<Result<Vec<BigUint>>>()?;
                decode(&LatticePoint::new(v), &cell)?.to_string()
            };
            print(&format!("{u}\n"))
        }
        Command::Curve { cell, levels, format, out } => {
            let cell = load(&cell, budget)?;
            emit(&out, &render_curve(&cell, levels, format, budget)?)
        }
        Command::Isotropy { cell, levels, closing, out } => {
            let cell = load(&cell, budget)?;
            emit(&out, &edge_tally(&cell, levels, closing, budget)?.to_csv())
        }
        Command::Runs { cell, levels, out } => {
            let cell = load(&cell, budget)?;
            emit(&out, &run_histogram(&cell, levels, budget)?.to_csv())
        }
        Command::Bench(BenchCommand::Dimred { cell, zcurve, samples, seed, max_gap, domain_levels, slope, out }) => {
            let config = DimredConfig { max_gap, samples, domain_levels, seed };
            let series = if zcurve {
                let rank = cell.rank.ok_or_else(|| CliError::Usage("--zcurve needs --rank".into()))?;
                dimred_profile(DimredCurve::ZCurve { rank }, &config)?
            } else {
                let cell = load(&cell, budget)?;
                dimred_profile(DimredCurve::Cell(&cell), &config)?
            };
            emit(&out, &series.to_csv())?;
            if slope {
                eprintln!("slope: {:.4}", loglog_slope(&series)?);
            }
            Ok(())
        }
        Command::Real { map, cell, n, depth, centered, values } => {
            let cell = load(&cell, budget)?;
            let depth = depth.unwrap_or(n * cell.rank() as u64);
            let text = match map {
                RealMap::Forward | RealMap::MidForward => {
                    let [y] = values.as_slice() else {
                        return Err(CliError::Usage(format!("{map:?} takes one rational argument")));
                    };
                    let y = parse_rational(y)?;
                    let p = match (map, centered) {
                        (RealMap::Forward, false) => realmap::unit_forward(&y, n, &cell)?,
                        (RealMap::Forward, true) => realmap::centered_forward(&y, n, &cell)?,
                        (_, false) => realmap::mid_forward(&y, depth, &cell)?,
                        (_, true) => realmap::centered_mid_forward(&y, depth, &cell)?,
                    };
                    p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
                }
                RealMap::Inverse | RealMap::MidInverse => {
                    let p = RationalPoint::new(values.iter().map(|v| parse_rational(v)).collect::<sfc_core::Result<_>>()?);
                    let y = match (map, centered) {
                        (RealMap::Inverse, false) => realmap::unit_inverse(&p, n, &cell)?,
                        (RealMap::Inverse, true) => realmap::centered_inverse(&p, n, &cell)?,
                        (_, false) => realmap::mid_inverse(&p, depth, &cell)?,
                        (_, true) => realmap::centered_mid_inverse(&p, depth, &cell)?,
                    };
                    y.to_string()
                }
            };
            print(&format!("{text}\n"))
        }
    }
}

fn load(source: &CellSource, budget: NodeBudget) -> Result<Cell> {
    let path = match (&source.cell, source.rank, source.side) {
        (Some(file), None, None) => parse_cell_file_with_budget(&read(file)?, budget)?,
        (None, Some(rank), Some(side)) => make_serpentine_path_with_budget(rank, side, budget)?,
        _ => return Err(CliError::Usage("give either --cell FILE or both --rank and --side".into())),
    };
    let class = validate_path(&path).map_err(Error::from)?;
    let variant = match &source.variant {
        Some(v) => v.parse::<AlignmentVariant>()?,
        None => AlignmentVariant::natural(class),
    };
    if !variant.supports(class) {
        return Err(CliError::Usage(format!("variant {variant} does not apply to {class} cells")));
    }
    Ok(Cell::build(path, variant)?)
}

fn parse_int<T: std::str::FromStr>(text: &str) -> Result<T> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("{text:?} is not a valid integer here")))
}

fn render_curve(cell: &Cell, levels: u64, format: Format, budget: NodeBudget) -> Result<String> {
    let d = cell.rank() as u64;
    let count = budget.check_power(cell.side() as u64, d * levels)?;
    let points = (0..count).map(|u| encode(&BigUint::from(u), cell));
    let mut text = String::new();
    match format {
        Format::Csv => {
            let header: Vec<String> = (0..d).map(|j| format!("x{j}")).collect();
            let _ = writeln!(text, "u,{}", header.join(","));
            for (u, p) in points.enumerate() {
                let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
                let _ = writeln!(text, "{u},{}", coords.join(","));
            }
        }
        Format::Svg => {
            if d != 2 {
                return Err(CliError::Usage("svg output is only defined for rank 2; use --format csv".into()));
            }
            let width = (cell.side() as u64).pow(levels as u32);
            let vertices: Vec<String> = points.map(|p| format!("{},{}", p.coords()[0], p.coords()[1])).collect();
            let _ = writeln!(
                text,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.5 -0.5 {width} {width}\">"
            );
            let _ = writeln!(
                text,
                "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.1\" points=\"{}\"/>",
                vertices.join(" ")
            );
            text.push_str("</svg>\n");
        }
    }
    Ok(text)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => print(text),
    }
}

fn print(text: &str) -> Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(CliError::Stdout)
}
