//! Unit cells: Hamiltonian paths over `{0..s-1}^d` and the orientation tables
//! the recurrences consume.

mod cell;
mod file;
mod orient;
mod path;

pub use cell::{diagnostics, verify_recurrence_compatibility, AlignmentVariant, Cell, CellReport, Compatibility};
pub use file::{parse_cell_file, parse_cell_file_with_budget, render_cell_file};
pub use orient::{derive_orientations, OrientationTables};
pub use path::{
    make_serpentine_path, make_serpentine_path_with_budget, validate_path, CellClass, NodeBudget,
    PathSequence,
};
