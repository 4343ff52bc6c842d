//! Cells shipped with the library.

use crate::cells::{parse_cell_file, AlignmentVariant, Cell};

/// Adjacent-corner meander on the 3x3 lattice, balanced four edges per axis.
pub const MEANDER_D2_S3: &str = include_str!("../cells/meander-d2-s3.cell");

pub fn meander() -> Cell {
    let path = parse_cell_file(MEANDER_D2_S3).expect("bundled cell parses");
    Cell::build(path, AlignmentVariant::Adjacent).expect("bundled cell builds")
}

/// Serpentine `s = 2` cell of the given rank.
pub fn hilbert(rank: usize) -> Cell {
    Cell::serpentine(rank, 2, AlignmentVariant::Adjacent).expect("hilbert cell builds")
}

/// Serpentine `s = 3` diagonal cell of the given rank.
pub fn peano(rank: usize, variant: AlignmentVariant) -> Cell {
    Cell::serpentine(rank, 3, variant).expect("peano cell builds")
}

/// Every bundled cell and variant, with a short name.
pub fn catalog() -> Vec<(String, Cell)> {
    let mut out = Vec::new();
    for rank in 2..=4 {
        out.push((format!("hilbert-d{rank}"), hilbert(rank)));
    }
    for rank in 2..=3 {
        for v in [
            AlignmentVariant::PlainDiagonal,
            AlignmentVariant::PrecessDiagonal,
            AlignmentVariant::PrecessOffsetDiagonal,
        ] {
            out.push((format!("peano-d{rank}-{v}"), peano(rank, v)));
        }
    }
    out.push(("meander-d2-s3".into(), meander()));
    out
}
