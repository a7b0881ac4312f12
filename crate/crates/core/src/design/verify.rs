use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::clique::find_clique_of_size;
use super::Design;
use crate::error::DesignError;

/// How [`Design::verify_lottery`] decides the lottery property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Visit every `p`-subset and count its intersections with the blocks.
    Exhaustive,
    /// Search the graph of uncovered pairs for a `p`-clique (`t = 2` only).
    Clique,
    /// Run both and insist they agree.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    /// `witness` is the lexicographically least failing draw.
    Invalid { witness: Vec<usize> },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

const MAX_T: usize = 15;

impl Design {
    /// Decides whether every `p`-subset of the vertices meets some block in at
    /// least `t` vertices.
    pub fn verify_lottery(&self, p: usize, t: usize, method: Method) -> Result<Verdict, DesignError> {
        if !(self.n() >= self.k() && self.k() >= t && t >= 2) {
            return Err(DesignError::InvalidParameters(format!(
                "need n >= k >= t >= 2, got n={} k={} t={t}",
                self.n(),
                self.k()
            )));
        }
        match method {
            Method::Exhaustive => self.verify_exhaustive(p, t),
            Method::Clique => self.verify_clique(p, t),
            Method::Both => {
                let clique = self.verify_clique(p, t)?;
                let exhaustive = self.verify_exhaustive(p, t)?;
                assert_eq!(
                    exhaustive.is_valid(),
                    clique.is_valid(),
                    "exhaustive and clique verifiers disagree"
                );
                Ok(exhaustive)
            }
        }
    }

    fn verify_clique(&self, p: usize, t: usize) -> Result<Verdict, DesignError> {
        if t != 2 {
            return Err(DesignError::MethodUnsupported { t });
        }
        if p > self.n() {
            return Ok(Verdict::Valid);
        }
        let adj = self.pair_coverage().uncovered_adjacency();
        let all = crate::vertex_set::VertexSet::full(self.n()).bits();
        Ok(match find_clique_of_size(&adj, all, p) {
            None => Verdict::Valid,
            Some(c) => Verdict::Invalid {
                witness: c.into_iter().map(|v| v + 1).collect(),
            },
        })
    }

    fn verify_exhaustive(&self, p: usize, t: usize) -> Result<Verdict, DesignError> {
        if self.size() > 128 {
            return Err(DesignError::TooManyBlocks {
                found: self.size(),
                max: 128,
            });
        }
        if t > MAX_T {
            return Err(DesignError::InvalidParameters(format!("t = {t} exceeds {MAX_T}")));
        }
        let n = self.n();
        if p > n {
            return Ok(Verdict::Valid);
        }
        if p == 0 {
            return Ok(Verdict::Invalid { witness: vec![] });
        }
        // membership[v]: bit i set when vertex v+1 lies in block i
        let mut membership = vec![0u128; n];
        for (i, block) in self.blocks().iter().enumerate() {
            for x in block.iter() {
                membership[x - 1] |= 1u128 << i;
            }
        }
        let hits = [0u128; MAX_T + 1];
        let witness = (0..=n - p).into_par_iter().find_map_first(|first| {
            let mut draw = Vec::with_capacity(p);
            draw.push(first);
            let hits = add_vertex(hits, membership[first], t);
            search(&membership, p, t, first + 1, &mut draw, hits)
        });
        Ok(match witness {
            None => Verdict::Valid,
            Some(w) => Verdict::Invalid {
                witness: w.into_iter().map(|v| v + 1).collect(),
            },
        })
    }
}

/// `hits[c]` holds the blocks met at least `c` times by the partial draw.
#[inline]
fn add_vertex(mut hits: [u128; MAX_T + 1], member: u128, t: usize) -> [u128; MAX_T + 1] {
    for c in (2..=t).rev() {
        hits[c] |= hits[c - 1] & member;
    }
    hits[1] |= member;
    hits
}

fn search(
    membership: &[u128],
    p: usize,
    t: usize,
    start: usize,
    draw: &mut Vec<usize>,
    hits: [u128; MAX_T + 1],
) -> Option<Vec<usize>> {
    let n = membership.len();
    let remaining = p - draw.len();
    if remaining == 0 {
        return (hits[t] == 0).then(|| draw.clone());
    }
    if remaining == 1 {
        for v in start..n {
            if hits[t] | (hits[t - 1] & membership[v]) == 0 {
                let mut w = draw.clone();
                w.push(v);
                return Some(w);
            }
        }
        return None;
    }
    for v in start..=n - remaining {
        draw.push(v);
        let found = search(membership, p, t, v + 1, draw, add_vertex(hits, membership[v], t));
        draw.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
