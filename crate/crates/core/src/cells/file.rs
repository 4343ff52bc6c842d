//! Plain-text cell files.
//!
//! ```text
//! # comment
//! 2 2
//! 0 0
//! 0 1
//! 1 1
//! 1 0
//! ```
//!
//! The header is `<rank> <side>`; then `side^rank` node lines follow in path
//! order. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::path::{validate_path, NodeBudget, PathSequence};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_fields(line_no: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_error(line_no, format!("{tok:?} is not a non-negative integer")))
        })
        .collect()
}

pub fn parse_cell_file(text: &str) -> Result<PathSequence> {
    parse_cell_file_with_budget(text, NodeBudget::default())
}

/// Parses and validates a cell file.
pub fn parse_cell_file_with_budget(text: &str, budget: NodeBudget) -> Result<PathSequence> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header"))?;
    let header = parse_fields(header_line, header)?;
    let [rank, side] = header[..] else {
        return Err(parse_error(header_line, "header must be `<rank> <side>`"));
    };
    if !(2..=64).contains(&rank) || side < 2 || side > u32::MAX as u64 {
        return Err(parse_error(header_line, format!("unsupported rank {rank} or side {side}")));
    }
    let expected = budget.check_power(side, rank)? as usize;
    let rank = rank as usize;

    let mut nodes = Vec::with_capacity(expected);
    let mut last_line = header_line;
    for (line_no, text) in lines {
        last_line = line_no;
        if nodes.len() == expected {
            return Err(parse_error(line_no, format!("more than {expected} nodes")));
        }
        let fields = parse_fields(line_no, text)?;
        if fields.len() != rank {
            return Err(parse_error(line_no, format!("expected {rank} coordinates, found {}", fields.len())));
        }
        if let Some(c) = fields.iter().find(|&&c| c >= side) {
            return Err(parse_error(line_no, format!("coordinate {c} outside [0, {side})")));
        }
        nodes.push(fields.into_iter().map(|c| c as u32).collect::<Vec<_>>());
    }
    if nodes.len() != expected {
        return Err(parse_error(last_line, format!("expected {expected} nodes, found {}", nodes.len())));
    }

    let path = PathSequence::new(rank, side as u32, &nodes)?;
    validate_path(&path)?;
    Ok(path)
}

pub fn render_cell_file(path: &PathSequence) -> String {
    let mut out = format!("{} {}\n", path.rank(), path.side());
    for node in path.nodes() {
        let mut first = true;
        for c in node {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{c}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::MEANDER_D2_S3;
    use crate::cells::path::{make_serpentine_path, CellClass};
    use crate::cells::validate_path;

    #[test]
    fn parses_hilbert_cell() {
        let text = "# hilbert\n2 2\n0 0\n0 1\n\n1 1\n1 0";
        let path = parse_cell_file(text).unwrap();
        assert_eq!(path, make_serpentine_path(2, 2).unwrap());
    }

    #[test]
    fn render_then_parse() {
        for (rank, side) in [(2, 2), (2, 5), (3, 3), (4, 2)] {
            let path = make_serpentine_path(rank, side).unwrap();
            assert_eq!(parse_cell_file(&render_cell_file(&path)).unwrap(), path);
        }
    }

    #[test]
    fn meander_fixture() {
        let path = parse_cell_file(MEANDER_D2_S3).unwrap();
        assert_eq!(validate_path(&path), Ok(CellClass::AdjacentCorners { travel_axis: 0 }));
        let mut edges = [0; 2];
        for t in 0..path.len() - 1 {
            let axis = (0..2).find(|&j| path.node(t)[j] != path.node(t + 1)[j]).unwrap();
            edges[axis] += 1;
        }
        assert_eq!(edges, [4, 4]);
    }

    #[test]
    fn wrong_count() {
        let text = "2 3\n0 0\n0 1\n0 2\n1 2\n1 1\n1 0\n2 0\n2 1\n";
        match parse_cell_file(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 9);
                assert!(message.contains("expected 9 nodes"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_cell_file(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cell_file("2\n0 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cell_file("2 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_cell_file("2 2\n0 0\n0 2\n1 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_cell_file("2 2\n0 0\n0 1 1\n1 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_cell_file("2 2\n0 0\n0 1\n1 1\n1 0\n0 0\n"),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(parse_cell_file("2 2\n0 0\n1 1\n0 1\n1 0\n"), Err(Error::Validation(_))));
        assert!(matches!(parse_cell_file("9 10\n"), Err(Error::Budget { .. })));
    }
}
