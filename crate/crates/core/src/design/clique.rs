//! Branch-and-bound clique search on graphs of at most 128 vertices.
//!
//! Graphs are adjacency words: bit `v` of `adj[u]` is set when `u` and `v`
//! are adjacent (0-indexed, no self loops). The greedy colouring bound of
//! Tomita-style MCQ prunes both searches; vertex order is ascending, so the
//! results are fully deterministic.

#[inline]
fn bit(v: usize) -> u128 {
    1u128 << v
}

/// Greedy sequential colouring of `cands`, lowest vertex first.
/// Returns `(vertex, colour)` sorted by colour, colours starting at 1.
fn colour_order(adj: &[u128], cands: u128) -> Vec<(usize, u32)> {
    let mut order = Vec::with_capacity(cands.count_ones() as usize);
    let mut uncoloured = cands;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut avail = uncoloured;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            order.push((v, colour));
            uncoloured &= !bit(v);
            avail &= !adj[v] & !bit(v);
        }
    }
    order
}

fn colour_bound(adj: &[u128], cands: u128) -> u32 {
    let mut uncoloured = cands;
    let mut colours = 0;
    while uncoloured != 0 {
        colours += 1;
        let mut avail = uncoloured;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            uncoloured &= !bit(v);
            avail &= !adj[v] & !bit(v);
        }
    }
    colours
}

/// Lexicographically least clique of exactly `size` vertices drawn from
/// `cands`, as ascending 0-indexed vertices.
pub fn find_clique_of_size(adj: &[u128], cands: u128, size: usize) -> Option<Vec<usize>> {
    let mut current = Vec::with_capacity(size);
    if lex_search(adj, cands, size, &mut current) {
        Some(current)
    } else {
        None
    }
}

fn lex_search(adj: &[u128], cands: u128, size: usize, current: &mut Vec<usize>) -> bool {
    let need = size - current.len();
    if need == 0 {
        return true;
    }
    if (cands.count_ones() as usize) < need || (colour_bound(adj, cands) as usize) < need {
        return false;
    }
    let mut rest = cands;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= !bit(v);
        if (rest.count_ones() as usize) + 1 < need {
            return false;
        }
        current.push(v);
        if lex_search(adj, rest & adj[v], size, current) {
            return true;
        }
        current.pop();
    }
    false
}

/// A maximum clique within `cands`, stopping early once `cap` vertices are found.
pub fn maximum_clique(adj: &[u128], cands: u128, cap: usize) -> Vec<usize> {
    let mut best = Vec::new();
    if cap == 0 {
        return best;
    }
    let mut current = Vec::new();
    expand(adj, cands, cap, &mut current, &mut best);
    best.sort_unstable();
    best
}

fn expand(adj: &[u128], cands: u128, cap: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cands == 0 || current.len() >= cap {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let order = colour_order(adj, cands);
    let mut remaining = cands;
    for &(v, colour) in order.iter().rev() {
        if best.len() >= cap || current.len() + colour as usize <= best.len() {
            return;
        }
        current.push(v);
        expand(adj, remaining & adj[v], cap, current, best);
        current.pop();
        remaining &= !bit(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<u128> {
        let mut adj = vec![0u128; n];
        for &(a, b) in edges {
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        adj
    }

    fn all(n: usize) -> u128 {
        (1u128 << n) - 1
    }

    fn brute_max(adj: &[u128], n: usize) -> usize {
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|u| m >> u & 1 == 0 || (adj[u] | bit(u)) & m as u128 == m as u128)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn triangle_plus_tail() {
        let adj = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        assert_eq!(maximum_clique(&adj, all(5), 10), vec![0, 1, 2]);
        assert_eq!(find_clique_of_size(&adj, all(5), 2), Some(vec![0, 1]));
        assert_eq!(find_clique_of_size(&adj, all(5), 4), None);
    }

    #[test]
    fn lex_least_clique() {
        // cliques of size 3: {1,2,3} and {0,4,5}
        let adj = graph(6, &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]);
        assert_eq!(find_clique_of_size(&adj, all(6), 3), Some(vec![0, 4, 5]));
    }

    #[test]
    fn cap_stops_early() {
        let n = 8;
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let adj = graph(n, &edges);
        assert_eq!(maximum_clique(&adj, all(n), 3).len(), 3);
        assert_eq!(maximum_clique(&adj, all(n), 100).len(), 8);
    }

    #[test]
    fn matches_brute_force_on_pseudo_random_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for _ in 0..200 {
            let n = 12;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 100 < 55 {
                        edges.push((a, b));
                    }
                }
            }
            let adj = graph(n, &edges);
            let best = maximum_clique(&adj, all(n), n);
            assert_eq!(best.len(), brute_max(&adj, n));
            assert!(find_clique_of_size(&adj, all(n), best.len()).is_some());
            assert!(find_clique_of_size(&adj, all(n), best.len() + 1).is_none());
        }
    }
}
