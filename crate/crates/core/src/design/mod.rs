//! Hypergraph model of a lottery design: `n` vertices (balls) and a list of
//! `k`-element blocks (tickets).

mod clique;
mod coverage;
mod foot;
mod reduce;
mod shannon;
mod verify;

pub use clique::{find_clique_of_size, maximum_clique};
pub use coverage::PairCoverage;
pub use foot::FootReport;
pub use shannon::ShannonSubhypergraph;
pub use verify::{Method, Verdict};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::DesignError;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A `k`-uniform hypergraph on vertices `1..=n`.
///
/// Blocks are kept sorted lexicographically. Duplicate blocks are allowed;
/// the reductions can create them and they never affect validity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Design {
    n: usize,
    k: usize,
    blocks: Vec<VertexSet>,
}

impl Design {
    /// Builds a design from explicit vertex lists.
    pub fn new(n: usize, k: usize, blocks: &[Vec<usize>]) -> Result<Design, DesignError> {
        let sets = blocks
            .iter()
            .enumerate()
            .map(|(index, block)| {
                if let Some(&vertex) = block.iter().find(|&&v| v == 0 || v > n) {
                    return Err(DesignError::VertexOutOfRange { index, vertex, n });
                }
                let set: VertexSet = block.iter().collect();
                if block.len() != k || set.len() != k {
                    return Err(DesignError::BlockSizeMismatch {
                        index,
                        expected: k,
                        found: set.len(),
                    });
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Design::from_sets(n, k, sets)
    }

    /// Builds a design from blocks already packed as vertex sets.
    pub fn from_sets(n: usize, k: usize, mut blocks: Vec<VertexSet>) -> Result<Design, DesignError> {
        if n > MAX_VERTICES {
            return Err(DesignError::TooManyVertices { n, max: MAX_VERTICES });
        }
        let all = VertexSet::full(n);
        for (index, block) in blocks.iter().enumerate() {
            if !block.is_subset(all) {
                let vertex = block.difference(all).first().unwrap_or(0);
                return Err(DesignError::VertexOutOfRange { index, vertex, n });
            }
            if block.len() != k {
                return Err(DesignError::BlockSizeMismatch {
                    index,
                    expected: k,
                    found: block.len(),
                });
            }
        }
        blocks.sort();
        Ok(Design { n, k, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks, `j`.
    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_duplicates(&self) -> bool {
        self.blocks.windows(2).any(|w| w[0] == w[1])
    }

    /// Drops repeated blocks, restoring set semantics.
    pub fn canonicalize(&self) -> Design {
        let mut blocks = self.blocks.clone();
        blocks.dedup();
        Design { n: self.n, k: self.k, blocks }
    }

    /// Same vertex set with one more block.
    pub fn with_block(&self, block: VertexSet) -> Result<Design, DesignError> {
        let mut blocks = self.blocks.clone();
        blocks.push(block);
        Design::from_sets(self.n, self.k, blocks)
    }

    /// Degree of every vertex, indexed by label (entry 0 unused).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n + 1];
        for block in &self.blocks {
            for x in block.iter() {
                deg[x] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, x: usize) -> usize {
        self.blocks.iter().filter(|b| b.contains(x)).count()
    }

    /// Vertices of degree exactly `d`.
    pub fn vertices_of_degree(&self, d: usize) -> VertexSet {
        self.degrees()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|&(_, &deg)| deg == d)
            .map(|(x, _)| x)
            .collect()
    }

    /// Indices of the blocks containing `x`.
    pub fn star(&self, x: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].contains(x)).collect()
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        let hist = DegreeHistogram::from_degrees(&self.degrees()[1..]);
        assert_eq!(hist.vertex_total(), self.n, "sum of d_i must equal n");
        assert_eq!(
            hist.incidence_total(),
            self.size() * self.k,
            "sum of i*d_i must equal jk"
        );
        hist
    }

    /// Total degree above two over `ys`: `sum_{i>2} (i-2) * #{y in ys : d(y) = i}`.
    pub fn excess(&self, ys: VertexSet) -> usize {
        let deg = self.degrees();
        ys.iter()
            .filter(|&y| y <= self.n)
            .map(|y| deg[y].saturating_sub(2))
            .sum()
    }

    pub fn pair_coverage(&self) -> PairCoverage {
        PairCoverage::of(self)
    }

    /// Blocks disjoint from every other block (a repeated block is never isolated).
    pub fn isolated_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| {
                self.blocks
                    .iter()
                    .enumerate()
                    .all(|(m, other)| m == i || self.blocks[i].is_disjoint(*other))
            })
            .collect()
    }

    /// `d_0 = 0` and every degree-one vertex lies in an isolated block.
    pub fn is_segregated(&self) -> bool {
        let deg = self.degrees();
        if deg[1..].iter().any(|&d| d == 0) {
            return false;
        }
        let isolated: VertexSet = self
            .isolated_blocks()
            .into_iter()
            .fold(VertexSet::EMPTY, |acc, i| acc.union(self.blocks[i]));
        (1..=self.n).all(|x| deg[x] != 1 || isolated.contains(x))
    }

    /// Rewrites labels through `perm`, where `perm[x - 1]` is the new label of `x`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Design, DesignError> {
        let mut seen = VertexSet::EMPTY;
        if perm.len() != self.n {
            return Err(DesignError::InvalidParameters(format!(
                "permutation has {} entries, expected {}",
                perm.len(),
                self.n
            )));
        }
        for &y in perm {
            if y == 0 || y > self.n || seen.contains(y) {
                return Err(DesignError::InvalidParameters(format!(
                    "not a permutation of 1..={}",
                    self.n
                )));
            }
            seen.insert(y);
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| perm[x - 1]).collect())
            .collect();
        Design::from_sets(self.n, self.k, blocks)
    }

    /// Ascending member lists of every block.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }
}

/// Vertex counts by degree: `d_i = #{x : d(x) = i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeHistogram {
    counts: BTreeMap<usize, usize>,
}

impl DegreeHistogram {
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        DegreeHistogram { counts }
    }

    /// `d_i`.
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    /// `sum_i d_i`.
    pub fn vertex_total(&self) -> usize {
        self.counts.values().sum()
    }

    /// `sum_i i * d_i`.
    pub fn incidence_total(&self) -> usize {
        self.counts.iter().map(|(d, c)| d * c).sum()
    }

    /// Number of isolated blocks `d_1 / k`, meaningful for segregated designs.
    pub fn isolated_block_count(&self, k: usize) -> usize {
        self.count(1) / k
    }

    pub fn max_degree(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }
}
