use super::Design;
use crate::vertex_set::VertexSet;

/// Symmetric "shares a block" relation between vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCoverage {
    n: usize,
    rows: Vec<VertexSet>,
}

impl PairCoverage {
    pub(crate) fn of(design: &Design) -> Self {
        let mut rows = vec![VertexSet::EMPTY; design.n() + 1];
        for block in design.blocks() {
            for x in block.iter() {
                rows[x] = rows[x].union(*block);
            }
        }
        for (x, row) in rows.iter_mut().enumerate().skip(1) {
            row.remove(x);
        }
        PairCoverage { n: design.n(), rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covered(&self, x: usize, y: usize) -> bool {
        x != y && x <= self.n && self.rows[x].contains(y)
    }

    /// Neighbourhood `N(x)`.
    pub fn neighbours(&self, x: usize) -> VertexSet {
        self.rows[x]
    }

    /// Vertices sharing no block with `x` (excluding `x`).
    pub fn non_neighbours(&self, x: usize) -> VertexSet {
        let mut s = VertexSet::full(self.n).difference(self.rows[x]);
        s.remove(x);
        s
    }

    pub fn covered_pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|x| self.rows[x].is_disjoint(set))
    }

    /// First adjacent pair inside `set`, if any.
    pub fn adjacent_pair_in(&self, set: VertexSet) -> Option<(usize, usize)> {
        set.iter()
            .find_map(|x| self.rows[x].intersection(set).first().map(|y| (x.min(y), x.max(y))))
    }

    /// Complement graph as 0-indexed adjacency words: bit `y-1` of entry `x-1`
    /// is set when `x != y` share no block.
    pub(crate) fn uncovered_adjacency(&self) -> Vec<u128> {
        (1..=self.n).map(|x| self.non_neighbours(x).bits()).collect()
    }
}
