//! The `p`-runner bar abacus.
//!
//! A part `a*p + j` is a bead at position `a` on runner `j`. A bar partition
//! is a `p`-bar-core exactly when its abacus has an empty runner 0, every
//! occupied runner has its beads pushed down to positions `0..k`, and no two
//! conjugate runners `j` and `p-j` are both occupied.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::check_odd_prime;
use crate::barcomb::BarPartition;
use crate::error::{Error, Result};

/// Exact bead positions on each of the `p` runners, increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarAbacus {
    p: usize,
    runners: Vec<Vec<usize>>,
}

impl BarAbacus {
    pub fn from_bar_partition(lambda: &BarPartition, p: u64) -> Result<Self> {
        let p = check_odd_prime(p)? as usize;
        let mut runners = vec![Vec::new(); p];
        for &a in lambda.parts() {
            runners[a % p].push(a / p);
        }
        for r in &mut runners {
            r.sort_unstable();
        }
        Ok(BarAbacus { p, runners })
    }

    /// Pushed-down abacus with `counts[j]` beads on runner `j`.
    pub fn from_bead_counts(p: u64, counts: &[usize]) -> Result<Self> {
        let p = check_odd_prime(p)? as usize;
        if counts.len() != p {
            return Err(Error::InvalidAbacus(format!(
                "expected {p} runners, got {}",
                counts.len()
            )));
        }
        Ok(BarAbacus {
            p,
            runners: counts.iter().map(|&k| (0..k).collect()).collect(),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn runners(&self) -> &[Vec<usize>] {
        &self.runners
    }

    pub fn total_beads(&self) -> usize {
        self.runners.iter().map(Vec::len).sum()
    }

    /// Bead counts, defined only when every runner is pushed down.
    pub fn bead_counts(&self) -> Option<Vec<usize>> {
        self.runners
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .all(|(i, &pos)| i == pos)
                    .then_some(r.len())
            })
            .collect()
    }

    /// Checks the three bar-core conditions.
    pub fn validate_bar_core(&self) -> bool {
        if !self.runners[0].is_empty() {
            return false;
        }
        if self.bead_counts().is_none() {
            return false;
        }
        (1..self.p).all(|j| self.runners[j].is_empty() || self.runners[self.p - j].is_empty())
    }

    /// Inverse of [`BarAbacus::from_bar_partition`] for core arrangements.
    pub fn to_bar_partition(&self) -> Result<BarPartition> {
        if !self.validate_bar_core() {
            return Err(Error::InvalidAbacus(format!("{:?}", self.runners)));
        }
        let parts = self
            .runners
            .iter()
            .enumerate()
            .flat_map(|(j, r)| r.iter().map(move |&a| a * self.p + j))
            .collect();
        BarPartition::from_unsorted(parts)
    }

    /// Runners as columns `0..p`, position 0 at the bottom.
    pub fn render(&self) -> String {
        let height = self
            .runners
            .iter()
            .filter_map(|r| r.last())
            .max()
            .map_or(1, |&top| top + 1);
        let width = (self.p - 1).to_string().len();
        let mut out = String::new();
        for pos in (0..height).rev() {
            let cells: Vec<String> = self
                .runners
                .iter()
                .map(|r| {
                    let c = if r.binary_search(&pos).is_ok() {
                        "●"
                    } else {
                        "·"
                    };
                    format!("{c:>width$}")
                })
                .collect();
            let _ = writeln!(out, "{:>3} | {}", pos, cells.join(" "));
        }
        let labels: Vec<String> = (0..self.p).map(|j| format!("{j:>width$}")).collect();
        let _ = writeln!(
            out,
            "    +-{}",
            "-".repeat(labels.join(" ").chars().count())
        );
        let _ = writeln!(out, "      {}", labels.join(" "));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcomb::{enumerate_bar_partitions, enumerate_p_bar_cores, is_p_bar_core};

    fn bar(parts: &[usize]) -> BarPartition {
        BarPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn positions_by_division_with_remainder() {
        let ab = BarAbacus::from_bar_partition(&bar(&[16, 9, 4, 2]), 7).unwrap();
        assert_eq!(ab.runners()[2], vec![0, 1, 2]);
        assert_eq!(ab.runners()[4], vec![0]);
        assert_eq!(ab.bead_counts(), Some(vec![0, 0, 3, 0, 1, 0, 0]));
        assert!(ab.validate_bar_core());

        let empty = BarAbacus::from_bar_partition(&BarPartition::empty(), 5).unwrap();
        assert!(empty.runners().iter().all(Vec::is_empty));
        assert!(empty.validate_bar_core());

        let seven = BarAbacus::from_bar_partition(&bar(&[7]), 7).unwrap();
        assert_eq!(seven.runners()[0], vec![1]);
        assert!(!seven.validate_bar_core());
        assert_eq!(seven.bead_counts(), None);
    }

    #[test]
    fn conjugate_runners_and_gaps_fail_validation() {
        // runners 2 and 5 both occupied at p = 7
        let ab = BarAbacus::from_bar_partition(&bar(&[16, 9, 5, 2]), 7).unwrap();
        assert!(ab.bead_counts().is_some());
        assert!(!ab.validate_bar_core());
        // bead at position 1 with position 0 empty
        let gap = BarAbacus::from_bar_partition(&bar(&[8]), 7).unwrap();
        assert!(!gap.validate_bar_core());
        assert!(gap.to_bar_partition().is_err());
    }

    #[test]
    fn from_counts() {
        let ab = BarAbacus::from_bead_counts(7, &[0, 0, 3, 0, 1, 0, 0]).unwrap();
        assert_eq!(ab.to_bar_partition().unwrap(), bar(&[16, 9, 4, 2]));
        let empty = BarAbacus::from_bead_counts(5, &[0; 5]).unwrap();
        assert_eq!(empty.to_bar_partition().unwrap(), BarPartition::empty());
        let one = BarAbacus::from_bead_counts(3, &[0, 1, 0]).unwrap();
        assert_eq!(one.to_bar_partition().unwrap(), bar(&[1]));
        assert!(BarAbacus::from_bead_counts(3, &[0, 1]).is_err());
        assert!(BarAbacus::from_bead_counts(4, &[0; 4]).is_err());
        let clash = BarAbacus::from_bead_counts(5, &[0, 1, 0, 0, 1]).unwrap();
        assert!(matches!(
            clash.to_bar_partition(),
            Err(Error::InvalidAbacus(_))
        ));
    }

    #[test]
    fn round_trip_for_cores() {
        for p in [3u64, 5, 7, 11] {
            for n in 0..=60 {
                for lambda in enumerate_p_bar_cores(n, p).unwrap() {
                    let ab = BarAbacus::from_bar_partition(&lambda, p).unwrap();
                    assert_eq!(ab.total_beads(), lambda.len());
                    assert_eq!(ab.to_bar_partition().unwrap(), lambda);
                }
            }
        }
    }

    #[test]
    fn abacus_conditions_characterize_bar_cores() {
        for n in 0..=40 {
            for lambda in enumerate_bar_partitions(n) {
                for p in [3u64, 5, 7, 11] {
                    let ab = BarAbacus::from_bar_partition(&lambda, p).unwrap();
                    assert_eq!(ab.total_beads(), lambda.len());
                    assert_eq!(
                        is_p_bar_core(&lambda, p).unwrap(),
                        ab.validate_bar_core(),
                        "{lambda} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let ab = BarAbacus::from_bar_partition(&bar(&[4, 1]), 3).unwrap();
        assert_eq!(
            serde_json::to_string(&ab).unwrap(),
            r#"{"p":3,"runners":[[],[0,1],[]]}"#
        );
    }

    #[test]
    fn rendering() {
        let ab = BarAbacus::from_bar_partition(&bar(&[4, 1]), 3).unwrap();
        let text = ab.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "  1 | · ● ·");
        assert_eq!(lines[1], "  0 | · ● ·");
        assert_eq!(lines[3], "      0 1 2");
    }
}
