use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::recurrence::encode;

use super::orient::{derive_orientations, OrientationTables};
use super::path::{make_serpentine_path, validate_path, CellClass, PathSequence};

/// How sub-cells are rotated relative to their parent node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlignmentVariant {
    /// Rotation moves the cell's travel axis onto the sub-cell's entry/exit axis.
    Adjacent,
    /// Reflection only (classic Peano).
    PlainDiagonal,
    /// Rotation by `t`, the nearly isotropic precession.
    PrecessDiagonal,
    /// Rotation by `t + 1`, the isotropic precession.
    PrecessOffsetDiagonal,
}

impl AlignmentVariant {
    pub const ALL: [AlignmentVariant; 4] = [
        AlignmentVariant::Adjacent,
        AlignmentVariant::PlainDiagonal,
        AlignmentVariant::PrecessDiagonal,
        AlignmentVariant::PrecessOffsetDiagonal,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            AlignmentVariant::Adjacent => "adj",
            AlignmentVariant::PlainDiagonal => "peano",
            AlignmentVariant::PrecessDiagonal => "precess",
            AlignmentVariant::PrecessOffsetDiagonal => "precess1",
        }
    }

    /// The variant used when none is requested.
    pub fn natural(class: CellClass) -> Self {
        match class {
            CellClass::DiagonalCorners => AlignmentVariant::PlainDiagonal,
            CellClass::AdjacentCorners { .. } => AlignmentVariant::Adjacent,
        }
    }

    pub fn supports(self, class: CellClass) -> bool {
        (self == AlignmentVariant::Adjacent) != class.is_diagonal()
    }
}

impl fmt::Display for AlignmentVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlignmentVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown variant {s:?} (adj|peano|precess|precess1)")))
    }
}

/// A validated cell with every table the recurrences read.
///
/// Immutable once built; share it freely across threads.
#[derive(Debug, Clone)]
pub struct Cell {
    path: PathSequence,
    class: CellClass,
    tables: OrientationTables,
    variant: AlignmentVariant,
    sigma: Vec<usize>,
    hinv: Vec<u32>,
}

impl Cell {
    pub fn build(path: PathSequence, variant: AlignmentVariant) -> Result<Self> {
        let class = validate_path(&path)?;
        if !variant.supports(class) {
            return Err(Error::Argument(format!("variant {variant} does not apply to {class} cells")));
        }
        let tables = derive_orientations(&path, class)?;
        let rank = path.rank();
        let n = path.len();
        let sigma = match (variant, class) {
            (AlignmentVariant::Adjacent, CellClass::AdjacentCorners { travel_axis }) => {
                let kappa = tables.kappa().expect("adjacent cells carry kappa");
                kappa.iter().map(|&k| (travel_axis + rank - k) % rank).collect()
            }
            (AlignmentVariant::PlainDiagonal, _) => vec![0; n],
            (AlignmentVariant::PrecessDiagonal, _) => (0..n).map(|t| t % rank).collect(),
            (AlignmentVariant::PrecessOffsetDiagonal, _) => (0..n).map(|t| (t + 1) % rank).collect(),
            (AlignmentVariant::Adjacent, CellClass::DiagonalCorners) => unreachable!(),
        };
        let mut hinv = vec![0u32; n];
        for (t, node) in path.nodes().enumerate() {
            hinv[path.lattice_index(node)] = t as u32;
        }
        Ok(Self { path, class, tables, variant, sigma, hinv })
    }

    pub fn serpentine(rank: usize, side: u32, variant: AlignmentVariant) -> Result<Self> {
        Self::build(make_serpentine_path(rank, side)?, variant)
    }

    /// Replaces the rotation schedule. Intended for experimenting with
    /// alternative alignments; nothing guarantees the result is continuous, so
    /// run [`verify_recurrence_compatibility`] on it.
    pub fn with_rotations(mut self, sigma: Vec<usize>) -> Result<Self> {
        if sigma.len() != self.len() || sigma.iter().any(|&r| r >= self.rank()) {
            return Err(Error::Argument("rotation table has the wrong length or range".into()));
        }
        self.sigma = sigma;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.path.rank()
    }

    pub fn side(&self) -> u32 {
        self.path.side()
    }

    /// Number of nodes, `s^d`.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn path(&self) -> &PathSequence {
        &self.path
    }

    pub fn class(&self) -> CellClass {
        self.class
    }

    pub fn variant(&self) -> AlignmentVariant {
        self.variant
    }

    pub fn tables(&self) -> &OrientationTables {
        &self.tables
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn node(&self, t: usize) -> &[u32] {
        self.path.node(t)
    }

    /// Path index of a lattice point inside the cell.
    pub fn index_of(&self, point: &[u32]) -> Option<usize> {
        if point.len() != self.rank() || point.iter().any(|&c| c >= self.side()) {
            return None;
        }
        Some(self.hinv[self.path.lattice_index(point)] as usize)
    }

    #[inline]
    pub(crate) fn entry_bit(&self, t: usize, axis: usize) -> bool {
        self.tables.entry(t) >> axis & 1 == 1
    }
}

/// Outcome of [`verify_recurrence_compatibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compatibility {
    Continuous { checked: u64 },
    /// `Q(u)` and `Q(u + 1)` are `l1` apart instead of 1.
    Broken { u: u64, l1: BigUint },
}

impl Compatibility {
    pub fn is_continuous(&self) -> bool {
        matches!(self, Compatibility::Continuous { .. })
    }
}

/// Walks the curve over whole digit groups, at most `max_points` points, and
/// reports the first pair of consecutive points that is not a unit step.
pub fn verify_recurrence_compatibility(cell: &Cell, max_points: u64) -> Compatibility {
    let d = cell.rank() as u32;
    let per_group = (cell.side() as u64).checked_pow(d * d);
    let mut span = per_group.filter(|&g| g <= max_points).unwrap_or(max_points.max(2));
    if let Some(g) = per_group {
        while let Some(next) = span.checked_mul(g).filter(|&n| n <= max_points) {
            span = next;
        }
    }
    let span = span.min(max_points).max(2);

    let mut prev = encode(&BigUint::from(0u32), cell);
    for u in 0..span - 1 {
        let next = encode(&BigUint::from(u + 1), cell);
        let l1 = prev.l1_distance(&next);
        if l1 != BigUint::from(1u32) {
            return Compatibility::Broken { u, l1 };
        }
        prev = next;
    }
    Compatibility::Continuous { checked: span }
}

/// Cell-level summary: classification, isotropy feasibility and edge balance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub rank: usize,
    pub side: u32,
    pub class: CellClass,
    pub variant: AlignmentVariant,
    /// `s^d + 1 ≡ 0 (mod d)`: necessary for an isotropic precessing pattern.
    pub isotropy_feasible: bool,
    /// `s^d ≡ 0 (mod d)`: sub-cells of neighbouring parents can line up into long runs.
    pub runs_can_align: bool,
    /// Edges of the cell path parallel to each axis.
    pub axis_edges: Vec<u64>,
}

pub fn diagnostics(cell: &Cell) -> CellReport {
    let d = cell.rank() as u64;
    let nodes = cell.len() as u64;
    let mut axis_edges = vec![0u64; cell.rank()];
    for &axis in &cell.tables().ktravel()[..cell.len() - 1] {
        axis_edges[axis] += 1;
    }
    CellReport {
        rank: cell.rank(),
        side: cell.side(),
        class: cell.class(),
        variant: cell.variant(),
        isotropy_feasible: (nodes + 1).is_multiple_of(d),
        runs_can_align: nodes.is_multiple_of(d),
        axis_edges,
    }
}

impl fmt::Display for CellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "side: {}", self.side)?;
        writeln!(f, "class: {}", self.class)?;
        if let Some(axis) = self.class.travel_axis() {
            writeln!(f, "travel_axis: {axis}")?;
        }
        writeln!(f, "variant: {}", self.variant)?;
        writeln!(f, "isotropy_feasible: {}", self.isotropy_feasible)?;
        writeln!(f, "runs_can_align: {}", self.runs_can_align)?;
        let edges: Vec<String> = self.axis_edges.iter().map(u64::to_string).collect();
        writeln!(f, "axis_edges: {}", edges.join(" "))
    }
}
