//! Fixtures shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// One row of the published table of values: `n`, `L` and the listed pieces.
pub struct TableRow {
    pub n: usize,
    pub value: usize,
    pub pieces: String,
}

pub fn tabulated() -> Vec<TableRow> {
    read_data("values.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut f = l.split_whitespace();
            TableRow {
                n: f.next().unwrap().parse().unwrap(),
                value: f.next().unwrap().parse().unwrap(),
                pieces: f.next().unwrap().to_string(),
            }
        })
        .collect()
}

/// Blocks as sorted ball lists, sorted.
pub fn sorted_blocks(text: &str) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut b: Vec<usize> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    blocks
}

/// Füredi bound by listing every split of `n` into at most `parts` groups.
pub fn furedi_by_compositions(n: usize, k: usize, parts: usize) -> usize {
    fn rec(left: usize, max: usize, slots: usize, k: usize, acc: usize, best: &mut usize) {
        if left == 0 {
            *best = (*best).min(acc);
            return;
        }
        if slots == 0 {
            return;
        }
        for a in (1..=max.min(left)).rev() {
            let cost = a * (a - 1).div_ceil(k - 1);
            rec(left - a, a, slots - 1, k, acc + cost, best);
        }
    }
    let mut best = usize::MAX;
    rec(n, n, parts, k, 0, &mut best);
    best.div_ceil(k)
}
