//! Closed-form and table-driven bounds on `L(n,6,6,2)`.
//!
//! Upper bounds come from splitting the balls into at most five groups and
//! covering every pair inside each group with a `(a,6,2)`-covering design;
//! lower bounds come from the Füredi–Székely–Zubor composition bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::BoundsError;

/// Smallest and largest covering-table orders.
pub const TABLE_MIN: usize = 6;
pub const TABLE_MAX: usize = 27;

/// Best known sizes of `(a,6,2)`-covering designs for `a = 6..=27`.
const COVERING_UPPER: [usize; TABLE_MAX - TABLE_MIN + 1] = [
    1, 3, 3, 3, 4, 6, 6, 7, 7, 10, 10, 12, 12, 15, 16, 17, 19, 21, 22, 23, 24, 27,
];

/// Upper bounds on the covering numbers `C(a,6,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringTable {
    entries: BTreeMap<usize, usize>,
}

impl Default for CoveringTable {
    fn default() -> Self {
        CoveringTable {
            entries: (TABLE_MIN..=TABLE_MAX).zip(COVERING_UPPER).collect(),
        }
    }
}

impl CoveringTable {
    pub fn get(&self, a: usize) -> Result<usize, BoundsError> {
        self.entries.get(&a).copied().ok_or(BoundsError::OutOfTableRange(a))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().map(|(&a, &c)| (a, c))
    }

    /// Two columns per line: `a C(a)`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# a C_upper(a,6,2)\n");
        for (a, c) in self.iter() {
            let _ = writeln!(out, "{a} {c}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, BoundsError> {
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| BoundsError::TableFormat {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [a, c] = fields.as_slice() else {
                return Err(bad("expected two columns"));
            };
            let a: usize = a.parse().map_err(|_| bad("order is not an integer"))?;
            let c: usize = c.parse().map_err(|_| bad("size is not an integer"))?;
            if entries.insert(a, c).is_some() {
                return Err(bad("duplicate order"));
            }
        }
        let table = CoveringTable { entries };
        let mut last = 0;
        for (a, c) in table.iter() {
            if c < last {
                return Err(BoundsError::TableFormat {
                    line: 0,
                    reason: format!("sizes decrease at order {a}"),
                });
            }
            last = c;
        }
        Ok(table)
    }
}

/// `C_upper(a)` from the built-in table.
pub fn covering_upper(a: usize) -> Result<usize, BoundsError> {
    CoveringTable::default().get(a)
}

/// A split of `n` balls into groups, each covered by a covering design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    /// Group sizes, ascending.
    pub parts: Vec<usize>,
    /// Sum of the groups' covering sizes.
    pub value: usize,
}

impl PartitionWitness {
    pub fn recompute(&self, table: &CoveringTable) -> Result<usize, BoundsError> {
        self.parts.iter().map(|&a| table.get(a)).sum()
    }
}

/// Every ascending multiset of at most `max_parts` table orders summing to `n`.
fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, min: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if slots == 0 || left < min || left > slots * TABLE_MAX {
            return;
        }
        for a in min..=TABLE_MAX.min(left) {
            cur.push(a);
            rec(left - a, a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, TABLE_MIN, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Cheapest witness for every achievable value; ties keep the
/// lexicographically least part list.
fn witnesses_by_value(n: usize, max_parts: usize) -> BTreeMap<usize, PartitionWitness> {
    let table = CoveringTable::default();
    let mut by_value: BTreeMap<usize, PartitionWitness> = BTreeMap::new();
    for parts in partitions(n, max_parts) {
        let value = parts.iter().map(|&a| table.get(a).expect("parts lie in the table")).sum();
        by_value
            .entry(value)
            .and_modify(|w| {
                if parts < w.parts {
                    w.parts = parts.clone();
                }
            })
            .or_insert(PartitionWitness { parts, value });
    }
    by_value
}

/// Minimises `sum C_upper(a_i)` over splits of `n` into at most `max_parts`
/// groups of sizes `6..=27`.
pub fn best_partition_upper(n: usize, max_parts: usize) -> Result<PartitionWitness, BoundsError> {
    witnesses_by_value(n, max_parts)
        .into_values()
        .next()
        .ok_or(BoundsError::Infeasible { n, max_parts })
}

/// The smallest covering-partition value for `n` that is at least `guess`.
///
/// When `guess` does not exceed the optimum this is the optimum itself.
pub fn upper_bound_search(n: usize, guess: usize) -> Result<(usize, PartitionWitness), BoundsError> {
    let by_value = witnesses_by_value(n, 5);
    if by_value.is_empty() {
        return Err(BoundsError::Infeasible { n, max_parts: 5 });
    }
    by_value
        .range(guess..)
        .next()
        .map(|(&v, w)| (v, w.clone()))
        .ok_or(BoundsError::NoValueAtLeast { n, guess })
}

/// `a * ceil((a-1)/(k-1))`, zero for an empty group.
fn furedi_cost(a: usize, k: usize) -> usize {
    if a == 0 {
        0
    } else {
        a * (a - 1).div_ceil(k - 1)
    }
}

/// Füredi–Székely–Zubor lower bound on `L(n,k,p,2)`:
/// `ceil(min sum a_i * ceil((a_i-1)/(k-1)) / k)` over `a_1 + ... + a_{p-1} = n`
/// with `a_i >= 0`.
///
/// No design exists with `p <= 1` and `n >= 1`; that case returns `usize::MAX`.
pub fn furedi_lower(n: usize, k: usize, p: usize) -> usize {
    assert!(k >= 2, "block size must be at least 2");
    if n == 0 {
        return 0;
    }
    if p <= 1 {
        return usize::MAX;
    }
    // best[m]: minimal cost of splitting m balls into the groups seen so far
    let mut best: Vec<usize> = (0..=n).map(|m| furedi_cost(m, k)).collect();
    for _ in 1..p - 1 {
        let prev = best.clone();
        for m in 0..=n {
            best[m] = (0..=m).map(|a| prev[m - a] + furedi_cost(a, k)).min().unwrap();
        }
    }
    best[n].div_ceil(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_lookups() {
        assert_eq!(covering_upper(14), Ok(7));
        assert_eq!(covering_upper(6), Ok(1));
        assert_eq!(covering_upper(27), Ok(27));
        assert_eq!(covering_upper(28), Err(BoundsError::OutOfTableRange(28)));
        assert_eq!(covering_upper(5), Err(BoundsError::OutOfTableRange(5)));
    }

    #[test]
    fn table_is_monotone() {
        let t = CoveringTable::default();
        let values: Vec<usize> = t.iter().map(|(_, c)| c).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn table_text_round_trip() {
        let t = CoveringTable::default();
        assert_eq!(CoveringTable::from_text(&t.to_text()).unwrap(), t);
        assert!(CoveringTable::from_text("6 1\n7\n").is_err());
        assert!(CoveringTable::from_text("6 3\n7 1\n").is_err());
    }

    #[test]
    fn best_partitions_from_the_configuration_table() {
        let w = best_partition_upper(54, 5).unwrap();
        assert_eq!((w.value, w.parts.clone()), (23, vec![6, 6, 14, 14, 14]));
        let w = best_partition_upper(32, 5).unwrap();
        assert_eq!((w.value, w.parts.clone()), (7, vec![6, 6, 6, 6, 8]));
        assert_eq!(best_partition_upper(47, 5).unwrap().value, 17);
        assert_eq!(
            w.recompute(&CoveringTable::default()).unwrap(),
            w.value
        );
    }

    #[test]
    fn infeasible_partitions() {
        assert!(best_partition_upper(5, 5).is_err());
        assert!(best_partition_upper(136, 5).is_err());
        assert_eq!(best_partition_upper(135, 5).unwrap().parts, vec![27; 5]);
    }

    #[test]
    fn upper_bound_search_examples() {
        assert_eq!(upper_bound_search(47, 16).unwrap().0, 17);
        assert_eq!(upper_bound_search(46, 16).unwrap().0, 16);
        assert_eq!(upper_bound_search(70, 35).unwrap().0, 35);
        let (ub, w) = upper_bound_search(70, 1).unwrap();
        assert_eq!(ub, 35);
        assert_eq!(w.parts, vec![14; 5]);
    }

    #[test]
    fn furedi_examples() {
        assert_eq!(furedi_lower(32, 6, 6), 7);
        // 11 + 11 + 16 + 16 + 16 costs 188, below the 210 of five 14s
        assert_eq!(furedi_lower(70, 6, 6), 32);
        assert_eq!(furedi_lower(47, 6, 6), 15);
        assert_eq!(furedi_lower(6, 6, 6), 1);
        assert_eq!(furedi_lower(23, 6, 3), 10);
        assert_eq!(furedi_lower(35, 6, 4), 14);
        assert_eq!(furedi_lower(0, 6, 1), 0);
        assert_eq!(furedi_lower(3, 6, 1), usize::MAX);
    }
}
