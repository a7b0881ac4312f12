use serde::Serialize;

use super::Design;
use crate::vertex_set::VertexSet;

/// Three blocks whose pairwise intersections have sizes `floor(k/2)`,
/// `floor(k/2)`, `floor((k+1)/2)` and whose vertices all have degree two,
/// with at most one exception.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShannonSubhypergraph {
    /// Block indices `[B1, B2, B3]`; `B1` and `B3` share the larger intersection.
    pub blocks: [usize; 3],
    pub vertices: VertexSet,
}

impl Design {
    /// Every Shannon subhypergraph of the design. For even `k` only triples
    /// forming a connected component of their own are reported.
    pub fn find_shannon_subhypergraphs(&self) -> Vec<ShannonSubhypergraph> {
        let k = self.k();
        let small = k / 2;
        let large = k.div_ceil(2);
        let blocks = self.blocks();
        let deg = self.degrees();
        let j = blocks.len();
        let mut found = Vec::new();
        for a in 0..j {
            for b in a + 1..j {
                let ab = blocks[a].intersection(blocks[b]).len();
                if ab != small && ab != large {
                    continue;
                }
                for c in b + 1..j {
                    let ac = blocks[a].intersection(blocks[c]).len();
                    let bc = blocks[b].intersection(blocks[c]).len();
                    let Some(order) = label_triple([a, b, c], [ab, ac, bc], small, large) else {
                        continue;
                    };
                    let vertices = blocks[a].union(blocks[b]).union(blocks[c]);
                    let exceptions = vertices.iter().filter(|&x| deg[x] != 2).count();
                    if exceptions > 1 {
                        continue;
                    }
                    if k % 2 == 0 {
                        let outside = (0..j)
                            .filter(|i| ![a, b, c].contains(i))
                            .any(|i| !blocks[i].is_disjoint(vertices));
                        if outside {
                            continue;
                        }
                    }
                    found.push(ShannonSubhypergraph { blocks: order, vertices });
                }
            }
        }
        found
    }
}

/// Orders a triple as `[B1, B2, B3]` with `|B1 & B3|` the large intersection.
/// `sizes` are `|a&b|, |a&c|, |b&c|`.
fn label_triple(
    [a, b, c]: [usize; 3],
    [ab, ac, bc]: [usize; 3],
    small: usize,
    large: usize,
) -> Option<[usize; 3]> {
    if ac == large && ab == small && bc == small {
        Some([a, b, c])
    } else if ab == large && ac == small && bc == small {
        Some([a, c, b])
    } else if bc == large && ab == small && ac == small {
        Some([b, a, c])
    } else {
        None
    }
}
