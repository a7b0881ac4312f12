//! Branch and bound over webbing rows.
//!
//! Every node picks the lexicographically first uncovered cross-part pair
//! `(u, v)` and branches on the full row that covers it. Rows are never
//! revisited, so a row member that brings no new pair is dropped (removing it
//! keeps the matrix feasible and lowers the cost). With symmetry breaking on,
//! columns of one part that lie in exactly the same rows are interchangeable,
//! and a row takes a prefix of every such class.

const ROW_CAPACITY: usize = 6;

pub(super) struct Outcome {
    /// Rows of the best matrix found, as column bitmasks.
    pub rows: Option<Vec<u16>>,
}

struct Search<'a> {
    part_of: &'a [usize],
    cols: usize,
    symmetry: bool,
    /// Cost must stay strictly below this.
    limit: usize,
    stop_at_first: bool,
    /// Most cross pairs a single row can cover.
    max_row_pairs: usize,
    part_masks: Vec<u16>,
    pair_table: PairTable,
    rows: Vec<u16>,
    best: Option<Vec<u16>>,
    done: bool,
}

/// Most cross pairs a row of six can cover given the number of nonempty parts.
fn max_row_pairs(nonempty_parts: usize) -> usize {
    match nonempty_parts {
        0 | 1 => 0,
        2 => 9,
        _ => 12,
    }
}

/// Finds a cheapest matrix whose total number of ones is below `limit`.
/// With `stop_at_first` the search ends at the first such matrix.
pub(super) fn solve(parts: &[usize], limit: usize, symmetry: bool, stop_at_first: bool) -> Outcome {
    let part_of: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| std::iter::repeat(i).take(t))
        .collect();
    let cols = part_of.len();
    let unc: Vec<u16> = (0..cols)
        .map(|c| {
            (0..cols)
                .filter(|&d| part_of[d] != part_of[c])
                .fold(0u16, |m, d| m | 1 << d)
        })
        .collect();
    let mut search = Search {
        part_of: &part_of,
        cols,
        symmetry,
        limit,
        stop_at_first,
        max_row_pairs: max_row_pairs(parts.iter().filter(|&&t| t > 0).count()),
        part_masks: parts
            .iter()
            .enumerate()
            .map(|(i, _)| (0..cols).filter(|&c| part_of[c] == i).fold(0u16, |m, c| m | 1 << c))
            .collect(),
        pair_table: PairTable::new(parts),
        rows: Vec::new(),
        best: None,
        done: false,
    };
    search.dfs(unc, 0);
    Outcome { rows: search.best }
}

/// Fewest ones in rows meeting given uncovered-pair counts between each two
/// parts, ignoring which toes form the pairs.
struct PairTable {
    dims: [usize; 3],
    cost: Vec<usize>,
}

impl PairTable {
    fn new(parts: &[usize]) -> Self {
        let t = |i: usize| parts.get(i).copied().unwrap_or(0);
        let (t0, t1, t2) = (t(0), t(1), t(2));
        let dims = [t0 * t1 + 1, t0 * t2 + 1, t1 * t2 + 1];
        let mut kinds = Vec::new();
        for a in 0..=t0 {
            for b in 0..=t1 {
                for c in 0..=t2 {
                    let gain = [a * b, a * c, b * c];
                    if a + b + c <= ROW_CAPACITY && gain.iter().any(|&g| g > 0) {
                        kinds.push((a + b + c, gain));
                    }
                }
            }
        }
        let mut cost = vec![0usize; dims[0] * dims[1] * dims[2]];
        let index = |x: usize, y: usize, z: usize| (x * dims[1] + y) * dims[2] + z;
        for x in 0..dims[0] {
            for y in 0..dims[1] {
                for z in 0..dims[2] {
                    if x + y + z == 0 {
                        continue;
                    }
                    let need = [x, y, z];
                    cost[index(x, y, z)] = kinds
                        .iter()
                        .filter(|(_, g)| (0..3).any(|i| need[i] > 0 && g[i] > 0))
                        .map(|&(ones, g)| {
                            let r = [x.saturating_sub(g[0]), y.saturating_sub(g[1]), z.saturating_sub(g[2])];
                            ones + cost[index(r[0], r[1], r[2])]
                        })
                        .min()
                        .unwrap_or(usize::MAX / 2);
                }
            }
        }
        PairTable { dims, cost }
    }

    fn get(&self, demand: [usize; 3]) -> usize {
        let [x, y, z] = demand;
        self.cost[(x * self.dims[1] + y) * self.dims[2] + z]
    }
}

impl Search<'_> {
    fn lower_bound(&self, unc: &[u16]) -> usize {
        let degrees: usize = unc.iter().map(|m| m.count_ones() as usize).sum();
        let pairs = degrees / 2;
        let by_pairs = if self.max_row_pairs == 0 {
            0
        } else {
            (pairs * ROW_CAPACITY).div_ceil(self.max_row_pairs)
        };
        let by_columns: usize = unc
            .iter()
            .map(|m| (m.count_ones() as usize).div_ceil(ROW_CAPACITY - 1))
            .sum();
        let mut demand = [0usize; 3];
        for (slot, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            if let (Some(&ma), Some(&mb)) = (self.part_masks.get(a), self.part_masks.get(b)) {
                demand[slot] = (0..self.cols)
                    .filter(|&c| ma >> c & 1 == 1)
                    .map(|c| (unc[c] & mb).count_ones() as usize)
                    .sum();
            }
        }
        by_pairs.max(by_columns).max(self.pair_table.get(demand))
    }

    fn dfs(&mut self, unc: Vec<u16>, cost: usize) {
        if self.done {
            return;
        }
        let Some(u) = unc.iter().position(|&m| m != 0) else {
            if cost < self.limit {
                self.limit = cost;
                self.best = Some(self.rows.clone());
                self.done = self.stop_at_first;
            }
            return;
        };
        if cost + self.lower_bound(&unc) >= self.limit {
            return;
        }
        let v = unc[u].trailing_zeros() as usize;
        for row in self.candidate_rows(&unc, u, v) {
            let added = row.count_ones() as usize;
            if cost + added >= self.limit {
                continue;
            }
            let next: Vec<u16> = unc
                .iter()
                .enumerate()
                .map(|(c, &m)| if row >> c & 1 == 1 { m & !row } else { m })
                .collect();
            self.rows.push(row);
            self.dfs(next, cost + added);
            self.rows.pop();
            if self.done {
                return;
            }
        }
    }

    /// Interchangeable column groups: same part and same set of rows so far.
    /// Each group is ascending; `u` and `v` lead their groups.
    fn classes(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        // each row covers a new pair and there are at most 75 pairs
        debug_assert!(self.rows.len() <= 128);
        let signature = |c: usize| -> u128 {
            self.rows
                .iter()
                .enumerate()
                .fold(0u128, |s, (i, &r)| if r >> c & 1 == 1 { s | 1 << i } else { s })
        };
        let mut groups: Vec<((usize, u128), Vec<usize>)> = Vec::new();
        for c in 0..self.cols {
            let key = (self.part_of[c], signature(c));
            if let Some((_, g)) = groups.iter_mut().find(|(k, _)| *k == key) {
                g.push(c);
            } else {
                groups.push((key, vec![c]));
            }
        }
        let mut out: Vec<Vec<usize>> = groups
            .into_iter()
            .map(|(_, g)| g.into_iter().filter(|&c| c != u && c != v).collect::<Vec<_>>())
            .filter(|g: &Vec<usize>| !g.is_empty())
            .collect();
        if !self.symmetry {
            // every column is its own group
            out = out.into_iter().flatten().map(|c| vec![c]).collect();
        }
        out
    }

    /// All irredundant rows through `u` and `v`, best coverage per one first.
    fn candidate_rows(&self, unc: &[u16], u: usize, v: usize) -> Vec<u16> {
        let base = (1u16 << u) | (1u16 << v);
        let classes = self.classes(u, v);
        let mut rows = Vec::new();
        let mut stack = vec![(0usize, base)];
        while let Some((i, row)) = stack.pop() {
            if i == classes.len() {
                rows.push(row);
                continue;
            }
            let room = ROW_CAPACITY - row.count_ones() as usize;
            let mut r = row;
            stack.push((i + 1, r));
            for &c in classes[i].iter().take(room) {
                r |= 1 << c;
                stack.push((i + 1, r));
            }
        }
        let mut scored: Vec<(usize, usize, u16)> = rows
            .into_iter()
            .filter(|&row| {
                (0..self.cols).all(|c| row >> c & 1 == 0 || unc[c] & row != 0)
            })
            .map(|row| {
                let new_pairs: usize = (0..self.cols)
                    .filter(|&c| row >> c & 1 == 1)
                    .map(|c| (unc[c] & row).count_ones() as usize)
                    .sum::<usize>()
                    / 2;
                (new_pairs, row.count_ones() as usize, row)
            })
            .collect();
        // higher pairs-per-one first, then more pairs, then by bits
        scored.sort_by(|a, b| {
            (b.0 * a.1)
                .cmp(&(a.0 * b.1))
                .then(b.0.cmp(&a.0))
                .then(b.2.cmp(&a.2))
        });
        scored.into_iter().map(|(_, _, r)| r).collect()
    }
}
