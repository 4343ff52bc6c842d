use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result, ValidationError};

/// Upper bound on `s^d` (or `s^(d*m)` for multi-level analyses).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeBudget(pub u64);

impl NodeBudget {
    pub const DEFAULT: NodeBudget = NodeBudget(1_000_000);
    pub const ENV_VAR: &'static str = "SFC_NODE_BUDGET";

    /// Reads `SFC_NODE_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(NodeBudget)
            .unwrap_or_default()
    }

    /// `side^exponent` as a u64 if it is within budget.
    pub fn check_power(self, side: u64, exponent: u64) -> Result<u64> {
        let nodes = u32::try_from(exponent)
            .ok()
            .and_then(|e| side.checked_pow(e))
            .filter(|&n| n <= self.0);
        nodes.ok_or_else(|| Error::Budget {
            nodes: BigUint::from(side).pow(exponent as u32),
            budget: self.0,
        })
    }
}

impl Default for NodeBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Ordered lattice points of a candidate cell path, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PathSequence {
    rank: usize,
    side: u32,
    coords: Vec<u32>,
}

impl PathSequence {
    /// Wraps a node list. Only the container shape is checked here; use
    /// [`validate_path`] for the Hamiltonian-path invariants.
    pub fn new(rank: usize, side: u32, nodes: &[Vec<u32>]) -> Result<Self> {
        if rank == 0 || rank > 64 {
            return Err(Error::Argument(format!("rank {rank} outside 1..=64")));
        }
        if side < 2 {
            return Err(Error::Argument(format!("side {side} is below 2")));
        }
        let mut coords = Vec::with_capacity(nodes.len() * rank);
        for (index, node) in nodes.iter().enumerate() {
            if node.len() != rank {
                return Err(ValidationError::WrongWidth { index }.into());
            }
            coords.extend_from_slice(node);
        }
        Ok(Self { rank, side, coords })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn node(&self, t: usize) -> &[u32] {
        &self.coords[t * self.rank..(t + 1) * self.rank]
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.coords.chunks_exact(self.rank)
    }

    pub fn exit(&self) -> &[u32] {
        self.node(self.len() - 1)
    }

    /// Mixed-radix index of a lattice point (coordinate 0 most significant).
    pub(crate) fn lattice_index(&self, point: &[u32]) -> usize {
        point
            .iter()
            .fold(0usize, |acc, &c| acc * self.side as usize + c as usize)
    }
}

impl fmt::Debug for PathSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathSequence")
            .field("rank", &self.rank)
            .field("side", &self.side)
            .field("nodes", &self.nodes().collect::<Vec<_>>())
            .finish()
    }
}

/// Which corner a cell leaves through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellClass {
    /// Exit at `(s-1, ..., s-1)`.
    DiagonalCorners,
    /// Exit at `s-1` along `travel_axis`, zero elsewhere.
    AdjacentCorners { travel_axis: usize },
}

impl CellClass {
    pub fn travel_axis(self) -> Option<usize> {
        match self {
            CellClass::DiagonalCorners => None,
            CellClass::AdjacentCorners { travel_axis } => Some(travel_axis),
        }
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, CellClass::DiagonalCorners)
    }
}

impl fmt::Display for CellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellClass::DiagonalCorners => f.write_str("DiagonalCorners"),
            CellClass::AdjacentCorners { travel_axis } => {
                write!(f, "AdjacentCorners(travel_axis={travel_axis})")
            }
        }
    }
}

/// Serpentine Hamiltonian path of the given rank and side, with the default node budget.
pub fn make_serpentine_path(rank: usize, side: u32) -> Result<PathSequence> {
    make_serpentine_path_with_budget(rank, side, NodeBudget::default())
}

/// Builds the serpentine path one rank at a time: `side` copies of the
/// lower-rank path, every odd copy reversed, each prefixed with its copy
/// number. Coordinate 0 is therefore the slowest-varying axis.
pub fn make_serpentine_path_with_budget(
    rank: usize,
    side: u32,
    budget: NodeBudget,
) -> Result<PathSequence> {
    if rank < 2 {
        return Err(Error::Argument(format!("rank {rank} is below 2")));
    }
    if side < 2 {
        return Err(Error::Argument(format!("side {side} is below 2")));
    }
    if rank > 64 {
        return Err(Error::Argument(format!("rank {rank} exceeds 64")));
    }
    budget.check_power(side as u64, rank as u64)?;

    let mut path: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(path.len() * side as usize);
        for copy in 0..side {
            let push = |coords: &Vec<u32>| {
                let mut node = Vec::with_capacity(coords.len() + 1);
                node.push(copy);
                node.extend_from_slice(coords);
                node
            };
            if copy % 2 == 1 {
                next.extend(path.iter().rev().map(push));
            } else {
                next.extend(path.iter().map(push));
            }
        }
        path = next;
    }
    PathSequence::new(rank, side, &path)
}

/// Checks the Hamiltonian-path invariants and classifies the exit corner.
pub fn validate_path(path: &PathSequence) -> Result<CellClass, ValidationError> {
    let rank = path.rank();
    let side = path.side();
    let expected = (side as u64)
        .checked_pow(rank as u32)
        .ok_or(ValidationError::WrongLength { expected: u64::MAX, found: path.len() })?;
    if path.len() as u64 != expected {
        return Err(ValidationError::WrongLength { expected, found: path.len() });
    }
    if path.node(0).iter().any(|&c| c != 0) {
        return Err(ValidationError::EntryNotOrigin);
    }

    let mut seen = vec![false; path.len()];
    for (index, node) in path.nodes().enumerate() {
        if node.iter().any(|&c| c >= side) {
            return Err(ValidationError::OutOfRange { index });
        }
        let slot = path.lattice_index(node);
        if std::mem::replace(&mut seen[slot], true) {
            return Err(ValidationError::Repeated { index });
        }
    }

    for index in 0..path.len() - 1 {
        let (a, b) = (path.node(index), path.node(index + 1));
        let l1: u32 = a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum();
        if l1 != 1 {
            return Err(ValidationError::NonUnitStep { index });
        }
    }

    let exit = path.exit();
    if exit.iter().all(|&c| c == side - 1) {
        return Ok(CellClass::DiagonalCorners);
    }
    let mut far = exit.iter().enumerate().filter(|(_, &c)| c != 0);
    match (far.next(), far.next()) {
        (Some((axis, &c)), None) if c == side - 1 => {
            Ok(CellClass::AdjacentCorners { travel_axis: axis })
        }
        _ => Err(ValidationError::UnclassifiableExit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(path: &PathSequence) -> Vec<Vec<u32>> {
        path.nodes().map(<[u32]>::to_vec).collect()
    }

    #[test]
    fn serpentine_small_cases() {
        let p = make_serpentine_path(2, 2).unwrap();
        assert_eq!(nodes(&p), vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0]]);

        let p = make_serpentine_path(2, 3).unwrap();
        let want: Vec<Vec<u32>> = [[0, 0], [0, 1], [0, 2], [1, 2], [1, 1], [1, 0], [2, 0], [2, 1], [2, 2]]
            .iter()
            .map(|n| n.to_vec())
            .collect();
        assert_eq!(nodes(&p), want);

        let p = make_serpentine_path(3, 2).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(&nodes(&p)[..4], &[vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![0, 1, 0]]);
        assert_eq!(p.exit(), &[1, 0, 0]);
    }

    #[test]
    fn serpentine_rejects_bad_arguments() {
        assert!(matches!(make_serpentine_path(1, 3), Err(Error::Argument(_))));
        assert!(matches!(make_serpentine_path(2, 1), Err(Error::Argument(_))));
        assert!(matches!(
            make_serpentine_path_with_budget(4, 10, NodeBudget(9_999)),
            Err(Error::Budget { .. })
        ));
        assert!(make_serpentine_path_with_budget(4, 10, NodeBudget(10_000)).is_ok());
        assert!(matches!(make_serpentine_path(7, 10), Err(Error::Budget { .. })));
    }

    #[test]
    fn classification() {
        let p = make_serpentine_path(2, 3).unwrap();
        assert_eq!(validate_path(&p), Ok(CellClass::DiagonalCorners));
        let p = make_serpentine_path(2, 2).unwrap();
        assert_eq!(validate_path(&p), Ok(CellClass::AdjacentCorners { travel_axis: 0 }));
    }

    #[test]
    fn validation_errors() {
        let bad_entry = PathSequence::new(2, 2, &[vec![0, 1], vec![0, 0], vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(validate_path(&bad_entry), Err(ValidationError::EntryNotOrigin));

        let repeat = PathSequence::new(2, 2, &[vec![0, 0], vec![0, 1], vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(validate_path(&repeat), Err(ValidationError::Repeated { index: 2 }));

        let jump = PathSequence::new(2, 2, &[vec![0, 0], vec![1, 1], vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(validate_path(&jump), Err(ValidationError::NonUnitStep { index: 0 }));

        let short = PathSequence::new(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            validate_path(&short),
            Err(ValidationError::WrongLength { expected: 4, found: 3 })
        );

        let range = PathSequence::new(2, 2, &[vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(validate_path(&range), Err(ValidationError::OutOfRange { index: 2 }));

        // Hamiltonian, but ends at the centre of the 3x3 square.
        let spiral = [[0, 0], [0, 1], [0, 2], [1, 2], [2, 2], [2, 1], [2, 0], [1, 0], [1, 1]];
        let spiral: Vec<Vec<u32>> = spiral.iter().map(|n| n.to_vec()).collect();
        let spiral = PathSequence::new(2, 3, &spiral).unwrap();
        assert_eq!(validate_path(&spiral), Err(ValidationError::UnclassifiableExit));
    }

    #[test]
    fn serpentine_envelope() {
        for rank in 2..=5 {
            for side in 2..=5u32 {
                if (side as u64).pow(rank as u32) > 10_000 {
                    continue;
                }
                let p = make_serpentine_path(rank, side).unwrap();
                let class = validate_path(&p).unwrap();
                assert_eq!(class.is_diagonal(), side % 2 == 1, "rank {rank} side {side}");
            }
        }
    }
}
