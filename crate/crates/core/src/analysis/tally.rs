use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cells::{Cell, NodeBudget};
use crate::error::{Error, Result};
use crate::recurrence::{encode, LatticePoint};

/// Per-axis edge counts of a complete pattern of `s^(d*levels)` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub counts: Vec<u64>,
    pub levels: u64,
    pub nodes: u64,
    pub closing_edge: bool,
}

impl Tally {
    pub fn edges(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts sorted ascending, for comparisons that ignore axis labels.
    pub fn sorted_counts(&self) -> Vec<u64> {
        let mut c = self.counts.clone();
        c.sort_unstable();
        c
    }

    /// Share of `nodes` on one axis, in percent rounded half-up to one decimal.
    pub fn percent(&self, axis: usize) -> String {
        let tenths = (self.counts[axis] as u128 * 2000 + self.nodes as u128) / (2 * self.nodes as u128);
        format!("{}.{}", tenths / 10, tenths % 10)
    }

    /// `nodes,axis,count,percent` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("nodes,axis,count,percent\n");
        for (axis, count) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{axis},{count},{}", self.nodes, self.percent(axis));
        }
        out
    }
}

/// Maximal straight runs by axis: run length in edges to number of runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunHistogram {
    pub per_axis: Vec<BTreeMap<u64, u64>>,
}

impl RunHistogram {
    pub fn total_edges(&self) -> u64 {
        self.per_axis
            .iter()
            .flat_map(|m| m.iter().map(|(len, n)| len * n))
            .sum()
    }

    pub fn lengths(&self, axis: usize) -> Vec<u64> {
        self.per_axis[axis].keys().copied().collect()
    }

    /// `axis,length,count` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("axis,length,count\n");
        for (axis, runs) in self.per_axis.iter().enumerate() {
            for (len, n) in runs {
                let _ = writeln!(out, "{axis},{len},{n}");
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    axis: u16,
    up: bool,
}

fn unit_step(a: &LatticePoint, b: &LatticePoint) -> Option<Step> {
    let mut found = None;
    for (axis, (x, y)) in a.coords().iter().zip(b.coords()).enumerate() {
        if x == y {
            continue;
        }
        let up = y > x;
        let diff = if up { y - x } else { x - y };
        if found.is_some() || diff != BigUint::from(1u32) {
            return None;
        }
        found = Some(Step { axis: axis as u16, up });
    }
    found
}

const CHUNK: u64 = 4096;

/// Steps between `Q(u)` and `Q(u + 1)` for `u` in `[0, count)`, evaluated in
/// independent chunks.
fn steps(cell: &Cell, count: u64) -> Result<Vec<Step>> {
    let chunks: Vec<u64> = (0..count.div_ceil(CHUNK)).collect();
    let parts: Vec<Result<Vec<Step>>> = chunks
        .par_iter()
        .map(|&c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(count);
            let mut prev = encode(&BigUint::from(start), cell);
            let mut out = Vec::with_capacity((end - start) as usize);
            for u in start..end {
                let next = encode(&BigUint::from(u + 1), cell);
                out.push(unit_step(&prev, &next).ok_or(Error::Discontinuous { u })?);
                prev = next;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::with_capacity(count as usize);
    for part in parts {
        all.extend(part?);
    }
    Ok(all)
}

fn pattern_nodes(cell: &Cell, levels: u64, budget: NodeBudget) -> Result<u64> {
    if levels == 0 {
        return Err(Error::Argument("levels must be positive".into()));
    }
    budget.check_power(cell.side() as u64, cell.rank() as u64 * levels)
}

/// Counts the axis of every edge in the `s^(d*levels)`-node pattern. With
/// `closing_edge` the edge leaving the pattern is counted too.
pub fn edge_tally(cell: &Cell, levels: u64, closing_edge: bool, budget: NodeBudget) -> Result<Tally> {
    let nodes = pattern_nodes(cell, levels, budget)?;
    let edges = if closing_edge { nodes } else { nodes - 1 };
    let mut counts = vec![0u64; cell.rank()];
    for step in steps(cell, edges)? {
        counts[step.axis as usize] += 1;
    }
    Ok(Tally { counts, levels, nodes, closing_edge })
}

/// Histogram of maximal straight runs in the `s^(d*levels)`-node pattern.
pub fn run_histogram(cell: &Cell, levels: u64, budget: NodeBudget) -> Result<RunHistogram> {
    let nodes = pattern_nodes(cell, levels, budget)?;
    let mut per_axis = vec![BTreeMap::new(); cell.rank()];
    let all = steps(cell, nodes - 1)?;
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j] == all[i] {
            j += 1;
        }
        *per_axis[all[i].axis as usize].entry((j - i) as u64).or_insert(0) += 1;
        i = j;
    }
    Ok(RunHistogram { per_axis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::cells::AlignmentVariant;

    const B: NodeBudget = NodeBudget::DEFAULT;

    #[test]
    fn hilbert_tallies() {
        let h = bundled::hilbert(2);
        let t = edge_tally(&h, 2, false, B).unwrap();
        assert_eq!(t.sorted_counts(), vec![7, 8]);
        assert_eq!(t.edges(), 15);
        let t = edge_tally(&h, 2, true, B).unwrap();
        assert_eq!(t.sorted_counts(), vec![8, 8]);
        assert_eq!(t.edges(), 16);
    }

    #[test]
    fn peano_tallies() {
        let cases = [
            (AlignmentVariant::PlainDiagonal, vec![20, 60]),
            (AlignmentVariant::PrecessDiagonal, vec![36, 44]),
            (AlignmentVariant::PrecessOffsetDiagonal, vec![40, 40]),
        ];
        for (v, want) in cases {
            let t = edge_tally(&bundled::peano(2, v), 2, false, B).unwrap();
            assert_eq!(t.sorted_counts(), want, "{v}");
        }
    }

    #[test]
    fn tally_csv_and_percent() {
        let t = edge_tally(&bundled::hilbert(2), 2, false, B).unwrap();
        assert_eq!(t.to_csv(), "nodes,axis,count,percent\n16,0,7,43.8\n16,1,8,50.0\n");
        let t = edge_tally(&bundled::peano(3, AlignmentVariant::PrecessOffsetDiagonal), 1, false, B).unwrap();
        let pct: Vec<String> = (0..3).map(|a| t.percent(a)).collect();
        let mut pct_sorted = pct.clone();
        pct_sorted.sort();
        assert_eq!(pct_sorted, ["22.2", "66.7", "7.4"]);
    }

    #[test]
    fn tally_budget() {
        let h = bundled::hilbert(2);
        assert!(matches!(edge_tally(&h, 3, false, NodeBudget(63)), Err(Error::Budget { .. })));
        assert!(matches!(edge_tally(&h, 0, false, B), Err(Error::Argument(_))));
    }

    #[test]
    fn peano_runs() {
        let r = run_histogram(&bundled::peano(2, AlignmentVariant::PlainDiagonal), 2, B).unwrap();
        assert_eq!(r.total_edges(), 80);
        let lens: Vec<Vec<u64>> = (0..2).map(|a| r.lengths(a)).collect();
        // One axis carries only runs of 2 and 5; the other only single edges.
        assert!(lens.contains(&vec![2, 5]), "{lens:?}");
        assert!(lens.contains(&vec![1]), "{lens:?}");

        let r = run_histogram(&bundled::peano(2, AlignmentVariant::PrecessDiagonal), 2, B).unwrap();
        for axis in 0..2 {
            assert_eq!(r.lengths(axis), vec![1, 2, 3]);
        }
    }

    #[test]
    fn hilbert_runs() {
        let r = run_histogram(&bundled::hilbert(2), 1, B).unwrap();
        assert_eq!(r.total_edges(), 3);
        assert!((0..2).all(|a| r.lengths(a).iter().all(|&l| l <= 2)));
        assert_eq!(r.to_csv(), "axis,length,count\n0,1,2\n1,1,1\n");
    }

    #[test]
    fn discontinuity_is_reported() {
        let broken = bundled::hilbert(2).with_rotations(vec![0, 0, 0, 1]).unwrap();
        assert!(matches!(edge_tally(&broken, 2, false, B), Err(Error::Discontinuous { .. })));
    }
}
