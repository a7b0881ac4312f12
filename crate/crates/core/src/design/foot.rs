use std::collections::BTreeMap;

use serde::Serialize;

use super::clique::maximum_clique;
use super::Design;
use crate::error::DesignError;
use crate::vertex_set::VertexSet;

/// Toes, foot and webbings of an independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FootReport {
    /// The independent set, ordered by degree then label.
    pub independent: Vec<usize>,
    /// `F_x` for each member `x`.
    pub toes: BTreeMap<usize, VertexSet>,
    /// `|F_x|` in the order of `independent`.
    pub tau: Vec<usize>,
    /// `F_I`, the union of all `F_x`.
    pub foot: VertexSet,
    /// Indices of the `x`-webbings: blocks outside `B_I` holding two or more `x`-toes.
    pub webbings: BTreeMap<usize, Vec<usize>>,
}

impl Design {
    /// A maximum independent set, or any independent set of `cap` vertices
    /// if one exists.
    pub fn max_independent_set(&self, cap: usize) -> VertexSet {
        self.max_independent_subset(self.vertices(), cap)
    }

    /// Largest independent set using only vertices of `within`, capped at `cap`.
    pub fn max_independent_subset(&self, within: VertexSet, cap: usize) -> VertexSet {
        let adj = self.pair_coverage().uncovered_adjacency();
        maximum_clique(&adj, within.intersection(self.vertices()).bits(), cap)
            .into_iter()
            .map(|v| v + 1)
            .collect()
    }

    pub fn toes_and_foot(&self, independent: VertexSet) -> Result<FootReport, DesignError> {
        let coverage = self.pair_coverage();
        if let Some((x, y)) = coverage.adjacent_pair_in(independent) {
            return Err(DesignError::NotIndependent(x, y));
        }
        let deg = self.degrees();
        if let Some(x) = independent.iter().find(|&x| x > self.n() || deg[x] == 0) {
            return Err(DesignError::PreconditionFailed(format!(
                "vertex {x} of the independent set has degree 0"
            )));
        }
        let i_blocks: Vec<usize> = (0..self.size())
            .filter(|&b| !self.blocks()[b].is_disjoint(independent))
            .collect();
        // how many blocks of B_I contain each vertex
        let mut in_i_blocks = vec![0usize; self.n() + 1];
        for &b in &i_blocks {
            for z in self.blocks()[b].iter() {
                in_i_blocks[z] += 1;
            }
        }
        let mut members = independent.to_vec();
        members.sort_by_key(|&x| (deg[x], x));

        let mut toes = BTreeMap::new();
        let mut webbings = BTreeMap::new();
        let mut tau = Vec::with_capacity(members.len());
        let mut foot = VertexSet::EMPTY;
        for &x in &members {
            let f_x: VertexSet = coverage
                .neighbours(x)
                .iter()
                .filter(|&z| deg[z] >= 2 && in_i_blocks[z] == 1)
                .collect();
            let w_x: Vec<usize> = (0..self.size())
                .filter(|b| !i_blocks.contains(b))
                .filter(|&b| self.blocks()[b].intersection(f_x).len() >= 2)
                .collect();
            tau.push(f_x.len());
            foot = foot.union(f_x);
            toes.insert(x, f_x);
            webbings.insert(x, w_x);
        }
        debug_assert_eq!(tau.iter().sum::<usize>(), foot.len());
        Ok(FootReport {
            independent: members,
            toes,
            tau,
            foot,
            webbings,
        })
    }
}
