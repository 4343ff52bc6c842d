use crate::error::{Error, Result};

use super::path::{CellClass, PathSequence};

/// Entry/exit corner orientations of every sub-cell.
///
/// Orientations are bit masks: bit `j` set means the corner sits at the far
/// end of axis `j` within its sub-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationTables {
    entry: Vec<u64>,
    exit: Vec<u64>,
    kappa: Option<Vec<usize>>,
    ktravel: Vec<usize>,
}

impl OrientationTables {
    pub fn entry(&self, t: usize) -> u64 {
        self.entry[t]
    }

    pub fn exit(&self, t: usize) -> u64 {
        self.exit[t]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entry
    }

    pub fn exits(&self) -> &[u64] {
        &self.exit
    }

    /// Axis on which entry and exit differ; only defined for adjacent-corner cells.
    pub fn kappa(&self) -> Option<&[usize]> {
        self.kappa.as_deref()
    }

    /// Axis of the step from node `t` to `t + 1`; the last entry repeats its predecessor.
    pub fn ktravel(&self) -> &[usize] {
        &self.ktravel
    }
}

/// Step axis and direction (`true` for +1) between consecutive nodes.
fn step(path: &PathSequence, t: usize) -> (usize, bool) {
    let (a, b) = (path.node(t), path.node(t + 1));
    let axis = (0..a.len()).find(|&j| a[j] != b[j]).expect("validated path");
    (axis, b[axis] > a[axis])
}

/// Derives entry and exit orientations for a validated path.
///
/// Entry orientations follow from the predecessor's exit plus the parity of
/// the step between nodes. Diagonal cells exit at the complement of their
/// entry. Adjacent-corner cells exit along the outgoing step when the entry
/// corner permits it, otherwise along the incoming step; the first and last
/// sub-cells are pinned to the cell's own entry and exit.
///
/// Fails with [`Error::Orientation`] when the rules produce a sub-cell whose
/// exit corner does not face the next node, or whose final exit disagrees
/// with the cell's exit corner.
pub fn derive_orientations(path: &PathSequence, class: CellClass) -> Result<OrientationTables> {
    let n = path.len();
    let rank = path.rank();
    let side = path.side();
    let full = if rank == 64 { u64::MAX } else { (1u64 << rank) - 1 };

    let mut ktravel = Vec::with_capacity(n);
    let mut forward = Vec::with_capacity(n - 1);
    for t in 0..n - 1 {
        let (axis, up) = step(path, t);
        ktravel.push(axis);
        forward.push(up);
    }
    ktravel.push(ktravel[n - 2]);

    let last_exit = path
        .exit()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == side - 1)
        .fold(0u64, |m, (j, _)| m | 1 << j);

    let mut entry = vec![0u64; n];
    let mut exit = vec![0u64; n];
    for t in 0..n {
        if t > 0 {
            entry[t] = exit[t - 1] ^ (1 << ktravel[t - 1]);
        }
        exit[t] = match class {
            CellClass::DiagonalCorners => !entry[t] & full,
            CellClass::AdjacentCorners { .. } if t == 0 => entry[0] ^ (1 << ktravel[0]),
            CellClass::AdjacentCorners { .. } if t == n - 1 => last_exit,
            CellClass::AdjacentCorners { .. } => {
                let k = ktravel[t];
                let at_near_face = entry[t] >> k & 1 == 0;
                if at_near_face == forward[t] {
                    entry[t] ^ 1 << k
                } else {
                    entry[t] ^ 1 << ktravel[t - 1]
                }
            }
        };
    }

    for t in 0..n - 1 {
        let k = ktravel[t];
        if (exit[t] >> k & 1 == 1) != forward[t] {
            return Err(Error::Orientation {
                t,
                reason: format!("exit corner does not face node {} along axis {k}", t + 1),
            });
        }
    }
    if exit[n - 1] != last_exit {
        return Err(Error::Orientation {
            t: n - 1,
            reason: "final exit corner differs from the cell's exit".into(),
        });
    }

    let kappa = match class {
        CellClass::DiagonalCorners => None,
        CellClass::AdjacentCorners { .. } => {
            let mut kappa = Vec::with_capacity(n);
            for t in 0..n {
                let diff = entry[t] ^ exit[t];
                if diff.count_ones() != 1 {
                    return Err(Error::Orientation {
                        t,
                        reason: format!("entry and exit differ on {} axes", diff.count_ones()),
                    });
                }
                kappa.push(diff.trailing_zeros() as usize);
            }
            Some(kappa)
        }
    };

    Ok(OrientationTables { entry, exit, kappa, ktravel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::path::{make_serpentine_path, validate_path};

    fn bits(mask: u64, rank: usize) -> Vec<u8> {
        (0..rank).map(|j| (mask >> j & 1) as u8).collect()
    }

    fn tables(rank: usize, side: u32) -> OrientationTables {
        let p = make_serpentine_path(rank, side).unwrap();
        let class = validate_path(&p).unwrap();
        derive_orientations(&p, class).unwrap()
    }

    #[test]
    fn peano_orientations() {
        let t = tables(2, 3);
        assert_eq!(bits(t.entry(0), 2), [0, 0]);
        assert_eq!(bits(t.exit(0), 2), [1, 1]);
        assert_eq!(bits(t.entry(1), 2), [1, 0]);
        assert_eq!(bits(t.exit(1), 2), [0, 1]);
        assert!(t.kappa().is_none());
    }

    #[test]
    fn hilbert_orientations() {
        let t = tables(2, 2);
        let exits: Vec<_> = t.exits().iter().map(|&m| bits(m, 2)).collect();
        assert_eq!(exits, [[0, 1], [1, 0], [1, 0], [1, 0]]);
        assert_eq!(bits(t.entry(3), 2), [1, 1]);
        assert_eq!(t.kappa().unwrap(), &[1, 0, 0, 1]);
        assert_eq!(t.ktravel(), &[1, 0, 1, 1]);
    }

    #[test]
    fn table_invariants_on_serpentines() {
        for (rank, side) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2)] {
            let p = make_serpentine_path(rank, side).unwrap();
            let class = validate_path(&p).unwrap();
            let t = derive_orientations(&p, class).unwrap();
            let full = (1u64 << rank) - 1;
            assert_eq!(t.entry(0), 0);
            for i in 1..p.len() {
                let parity = (0..rank)
                    .filter(|&j| p.node(i)[j].abs_diff(p.node(i - 1)[j]) % 2 == 1)
                    .fold(0u64, |m, j| m | 1 << j);
                assert_eq!(t.entry(i), t.exit(i - 1) ^ parity);
            }
            for i in 0..p.len() {
                match class {
                    CellClass::DiagonalCorners => assert_eq!(t.entry(i) ^ t.exit(i), full),
                    CellClass::AdjacentCorners { .. } => {
                        assert_eq!((t.entry(i) ^ t.exit(i)).count_ones(), 1)
                    }
                }
            }
            let last = t.exit(p.len() - 1);
            for j in 0..rank {
                assert_eq!((side - 1) * (last >> j & 1) as u32, p.exit()[j]);
            }
        }
    }
}
