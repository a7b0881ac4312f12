//! Size-preserving rewrites of lottery designs: removing degree-zero
//! vertices, segregating degree-one vertices into isolated blocks, and
//! deleting a vertex. Whenever a rewrite must choose a vertex it takes the
//! smallest eligible label.

use super::{Design, Method};
use crate::error::DesignError;
use crate::vertex_set::VertexSet;

impl Design {
    fn require_lottery(&self, p: usize, t: usize) -> Result<(), DesignError> {
        let method = if t == 2 { Method::Clique } else { Method::Exhaustive };
        if self.verify_lottery(p, t, method)?.is_valid() {
            Ok(())
        } else {
            Err(DesignError::PreconditionFailed(format!(
                "input is not an (n={}, k={}, p={p}, t={t}) lottery design",
                self.n(),
                self.k()
            )))
        }
    }

    /// Rewrites an `(n,k,p,t;j)` lottery design with `jk >= n` into one of the
    /// same size in which every vertex lies in some block.
    pub fn eliminate_degree_zero(&self, p: usize, t: usize) -> Result<Design, DesignError> {
        if self.size() * self.k() < self.n() {
            return Err(DesignError::PreconditionFailed(format!(
                "j = {} is below n/k = {}/{}",
                self.size(),
                self.n(),
                self.k()
            )));
        }
        self.require_lottery(p, t)?;
        let mut blocks = self.blocks().to_vec();
        loop {
            let current = Design::from_sets(self.n(), self.k(), blocks.clone())?;
            let deg = current.degrees();
            let Some(x) = (1..=self.n()).find(|&x| deg[x] == 0) else {
                return Ok(current);
            };
            // jk >= n with a degree-0 vertex forces some degree >= 2
            let (index, y) = current
                .blocks()
                .iter()
                .enumerate()
                .find_map(|(i, b)| b.iter().find(|&y| deg[y] >= 2).map(|y| (i, y)))
                .expect("a vertex of degree at least two exists when jk >= n");
            blocks = current.blocks().to_vec();
            blocks[index].remove(y);
            blocks[index].insert(x);
        }
    }

    /// Rewrites an `(n,k,p,t;j)` lottery design with `n >= k(p-1)` and no
    /// degree-zero vertex into a segregated one of the same size.
    pub fn segregate(&self, p: usize, t: usize) -> Result<Design, DesignError> {
        if self.n() < self.k() * (p.saturating_sub(1)) {
            return Err(DesignError::PreconditionFailed(format!(
                "n = {} is below k(p-1) = {}",
                self.n(),
                self.k() * (p.saturating_sub(1))
            )));
        }
        if self.degrees()[1..].contains(&0) {
            return Err(DesignError::PreconditionFailed("a vertex has degree 0".into()));
        }
        self.require_lottery(p, t)?;

        let mut current = self.clone();
        // every step turns a vertex of degree > 1 into one of degree 1, and
        // degree-1 vertices are never reused while another choice exists
        let step_limit = self.n() * (self.size() + 1);
        for _ in 0..=step_limit {
            let deg = current.degrees();
            let isolated = current.isolated_blocks();
            let isolated_vertices = isolated
                .iter()
                .fold(VertexSet::EMPTY, |acc, &i| acc.union(current.blocks()[i]));
            let mixed = (0..current.size()).filter(|i| !isolated.contains(i)).find_map(|i| {
                let b = current.blocks()[i];
                let has_single = b.iter().any(|x| deg[x] == 1);
                let y = b.iter().find(|&y| deg[y] > 1);
                match (has_single, y) {
                    (true, Some(y)) => Some((i, y)),
                    _ => None,
                }
            });
            let Some((first, y)) = mixed else {
                debug_assert!(current.is_segregated());
                return Ok(current);
            };
            let non_isolated = current.vertices().difference(isolated_vertices);
            let mut blocks = current.blocks().to_vec();
            for i in current.star(y).into_iter().filter(|&i| i != first) {
                let b_i = current.blocks()[i];
                let preferred = non_isolated
                    .difference(b_i)
                    .difference(current.blocks()[first])
                    .iter()
                    .find(|&z| deg[z] >= 2);
                let z = preferred
                    .or_else(|| non_isolated.difference(b_i).first())
                    .ok_or_else(|| {
                        DesignError::PreconditionFailed(format!(
                            "no non-isolated vertex outside block {i}"
                        ))
                    })?;
                blocks[i].remove(y);
                blocks[i].insert(z);
            }
            current = Design::from_sets(self.n(), self.k(), blocks)?;
        }
        Err(DesignError::PreconditionFailed(
            "segregation did not converge".into(),
        ))
    }

    /// Removes vertex `x`: in each block containing `x` it is replaced by the
    /// smallest label outside that block, then labels above `x` shift down by one.
    pub fn delete_vertex(&self, x: usize) -> Result<Design, DesignError> {
        if x == 0 || x > self.n() {
            return Err(DesignError::InvalidParameters(format!(
                "vertex {x} outside 1..={}",
                self.n()
            )));
        }
        let mut others = self.vertices();
        others.remove(x);
        let blocks = self
            .blocks()
            .iter()
            .map(|&b| {
                if !b.contains(x) {
                    return Ok(b);
                }
                let z = others.difference(b).first().ok_or_else(|| {
                    DesignError::PreconditionFailed(format!("block {b} spans every vertex"))
                })?;
                let mut c = b;
                c.remove(x);
                c.insert(z);
                Ok(c)
            })
            .collect::<Result<Vec<_>, DesignError>>()?;
        let shifted = blocks
            .into_iter()
            .map(|b| b.iter().map(|v| if v > x { v - 1 } else { v }).collect())
            .collect();
        let out = Design::from_sets(self.n() - 1, self.k(), shifted)?;
        assert!(out.blocks().iter().all(|b| b.len() == self.k()));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{assemble, config_for};

    fn verify(d: &Design, p: usize, t: usize) -> bool {
        d.verify_lottery(p, t, Method::Exhaustive).unwrap().is_valid()
    }

    #[test]
    fn degree_zero_free_input_is_unchanged() {
        let d = assemble(&config_for(33).unwrap());
        assert_eq!(d.eliminate_degree_zero(6, 2).unwrap(), d);
    }

    #[test]
    fn non_design_is_rejected() {
        let d = Design::new(12, 6, &[vec![1, 2, 3, 4, 5, 6], vec![1, 2, 3, 4, 5, 7]]).unwrap();
        assert!(matches!(
            d.eliminate_degree_zero(2, 2),
            Err(DesignError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn too_few_blocks_rejected() {
        let d = Design::new(13, 6, &[vec![1, 2, 3, 4, 5, 6], vec![1, 2, 3, 7, 8, 9]]).unwrap();
        assert!(matches!(
            d.eliminate_degree_zero(2, 2),
            Err(DesignError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn fills_an_unused_vertex() {
        // piece C plus a repeated block on 10 points with p = 3: every draw has
        // two members in 1..=9, which piece C covers; vertex 10 is unused
        let blocks = vec![
            vec![1, 2, 3, 4, 5, 6],
            vec![1, 2, 3, 7, 8, 9],
            vec![4, 5, 6, 7, 8, 9],
            vec![1, 2, 3, 4, 5, 6],
        ];
        let d = Design::new(10, 6, &blocks).unwrap();
        assert!(verify(&d, 3, 2));
        let e = d.eliminate_degree_zero(3, 2).unwrap();
        assert!(e.degrees()[1..].iter().all(|&x| x > 0));
        assert_eq!(e.size(), 4);
        assert!(verify(&e, 3, 2));
    }

    #[test]
    fn segregated_input_unchanged() {
        let d = assemble(&config_for(47).unwrap());
        assert!(d.is_segregated());
        assert_eq!(d.segregate(6, 2).unwrap(), d);
    }

    #[test]
    fn segregates_a_mixed_block() {
        // k = 3, p = 3, t = 2 on 7 points: {1,2,3} mixes degree-1 vertex 1 with
        // vertices of higher degree; the other blocks cover every pair of 2..=7
        let blocks = vec![
            vec![1, 2, 3],
            vec![2, 4, 5],
            vec![2, 6, 7],
            vec![3, 4, 6],
            vec![3, 5, 7],
            vec![5, 6, 7],
            vec![2, 4, 7],
        ];
        let d = Design::new(7, 3, &blocks).unwrap();
        assert!(verify(&d, 3, 2));
        assert!(!d.is_segregated());
        let s = d.segregate(3, 2).unwrap();
        assert!(s.is_segregated());
        assert_eq!(s.size(), d.size());
        assert!(verify(&s, 3, 2));
    }

    #[test]
    fn delete_degree_zero_vertex_relabels() {
        let d = Design::new(7, 6, &[vec![1, 2, 3, 5, 6, 7]]).unwrap();
        let e = d.delete_vertex(4).unwrap();
        assert_eq!(e.block_lists(), vec![vec![1, 2, 3, 4, 5, 6]]);
    }

    #[test]
    fn delete_from_n33_gives_n32_design() {
        let d = assemble(&config_for(33).unwrap());
        for x in [1, 17, 33] {
            let e = d.delete_vertex(x).unwrap();
            assert_eq!(e.n(), 32);
            assert_eq!(e.size(), 7);
            assert!(e.verify_lottery(6, 2, Method::Both).unwrap().is_valid());
        }
    }
}
