//! Minimal foot excess for a vertex of degree two or three.
//!
//! A vertex `x` of an independent set meets `d` blocks holding `tau_1, ...,
//! tau_d` of its toes. Toes from different `x`-blocks must share a webbing,
//! a block of at most six toes. With toes as columns and webbings as rows,
//! the excess of the foot is the number of ones in the matrix minus the
//! number of toes, and the oracle minimises it exactly.

mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ToeError;

/// Largest number of toes in one `x`-block: the block holds `x` and five others.
pub const MAX_PART: usize = 5;
/// Toe counts covered by the excess table.
pub const MAX_TOES: usize = 15;
/// Members of a webbing.
pub const ROW_CAPACITY: usize = 6;

const CACHE_VERSION: u32 = 1;

/// Reference minimal excesses for `f = 0..=15` toes.
pub const REFERENCE_EXCESS: [usize; MAX_TOES + 1] =
    [0, 0, 0, 0, 0, 0, 0, 2, 3, 7, 10, 11, 12, 20, 25, 27];

/// Nonzero minimal excesses per block partition `(a, b, c)`, `a >= b >= c`.
/// Every partition not listed has minimal excess zero.
const PARTITION_EXCESS: [([usize; 3], usize); 34] = [
    ([3, 2, 2], 4),
    ([3, 3, 1], 4),
    ([3, 3, 2], 7),
    ([3, 3, 3], 9),
    ([4, 2, 1], 3),
    ([4, 2, 2], 4),
    ([4, 3, 0], 3),
    ([4, 3, 1], 4),
    ([4, 3, 2], 8),
    ([4, 3, 3], 10),
    ([4, 4, 0], 4),
    ([4, 4, 1], 8),
    ([4, 4, 2], 10),
    ([4, 4, 3], 11),
    ([4, 4, 4], 12),
    ([5, 1, 1], 2),
    ([5, 2, 0], 2),
    ([5, 2, 1], 3),
    ([5, 2, 2], 7),
    ([5, 3, 0], 3),
    ([5, 3, 1], 7),
    ([5, 3, 2], 10),
    ([5, 3, 3], 11),
    ([5, 4, 0], 7),
    ([5, 4, 1], 10),
    ([5, 4, 2], 11),
    ([5, 4, 3], 15),
    ([5, 4, 4], 21),
    ([5, 5, 0], 10),
    ([5, 5, 1], 11),
    ([5, 5, 2], 16),
    ([5, 5, 3], 20),
    ([5, 5, 4], 25),
    ([5, 5, 5], 27),
];

/// Reference minimal excess for toes split over blocks as `parts`
/// (at most three parts of at most five, zeros allowed).
pub fn reference_partition_excess(parts: &[usize]) -> usize {
    let mut key = [0usize; 3];
    for (k, &t) in key.iter_mut().zip(parts.iter().filter(|&&t| t > 0)) {
        *k = t;
    }
    key.sort_unstable_by(|a, b| b.cmp(a));
    PARTITION_EXCESS
        .iter()
        .find(|(p, _)| *p == key)
        .map_or(0, |&(_, v)| v)
}

/// Toe counts per `x`-block, non-increasing, one entry per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WebbingInstance {
    parts: Vec<usize>,
}

impl WebbingInstance {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, ToeError> {
        if !(2..=3).contains(&parts.len()) {
            return Err(ToeError::InvalidInstance(format!(
                "{} parts, the host vertex has degree 2 or 3",
                parts.len()
            )));
        }
        if let Some(&t) = parts.iter().find(|&&t| t > MAX_PART) {
            return Err(ToeError::InvalidInstance(format!(
                "part {t} exceeds {MAX_PART} toes per block"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(WebbingInstance { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.len()
    }

    pub fn toes(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Cross-part toe pairs that need a shared webbing.
    pub fn cross_pairs(&self) -> usize {
        let mut total = 0;
        for (i, a) in self.parts.iter().enumerate() {
            for b in &self.parts[i + 1..] {
                total += a * b;
            }
        }
        total
    }

    /// Every instance of degree `d` with `f` toes, in descending lexicographic order.
    pub fn all_with(f: usize, d: usize) -> Vec<WebbingInstance> {
        let mut out = Vec::new();
        let mut parts = Vec::with_capacity(d);
        fn rec(left: usize, max: usize, slots: usize, parts: &mut Vec<usize>, out: &mut Vec<WebbingInstance>) {
            if slots == 0 {
                if left == 0 {
                    out.push(WebbingInstance { parts: parts.clone() });
                }
                return;
            }
            for t in (0..=max.min(left)).rev() {
                parts.push(t);
                rec(left - t, t, slots - 1, parts, out);
                parts.pop();
            }
        }
        rec(f, MAX_PART, d, &mut parts, &mut out);
        out
    }

    fn part_of(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &t)| std::iter::repeat(i).take(t))
            .collect()
    }
}

impl fmt::Display for WebbingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rows are webbings, columns are toes grouped by part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebbingMatrix {
    instance: WebbingInstance,
    rows: Vec<u16>,
}

impl WebbingMatrix {
    /// Checks every matrix invariant before accepting the rows.
    pub fn new(instance: WebbingInstance, rows: Vec<u16>) -> Result<Self, String> {
        let m = WebbingMatrix { instance, rows };
        m.check()?;
        Ok(m)
    }

    pub fn instance(&self) -> &WebbingInstance {
        &self.instance
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows
    }

    pub fn ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Ones beyond one per toe.
    pub fn excess(&self) -> usize {
        self.ones() - self.instance.toes()
    }

    pub fn check(&self) -> Result<(), String> {
        let f = self.instance.toes();
        let part_of = self.instance.part_of();
        for (i, &r) in self.rows.iter().enumerate() {
            if f < 16 && r >> f != 0 {
                return Err(format!("row {i} uses a column beyond {f}"));
            }
            if r.count_ones() as usize > ROW_CAPACITY {
                return Err(format!("row {i} holds {} toes", r.count_ones()));
            }
        }
        for a in 0..f {
            for b in a + 1..f {
                if part_of[a] != part_of[b] && !self.rows.iter().any(|r| r >> a & 1 == 1 && r >> b & 1 == 1) {
                    return Err(format!("toes {a} and {b} share no webbing"));
                }
            }
        }
        for c in 0..f {
            if !self.rows.iter().any(|r| r >> c & 1 == 1) {
                return Err(format!("toe {c} lies in no webbing"));
            }
        }
        Ok(())
    }

    /// Rows as `0`/`1` strings, one character per toe.
    pub fn row_strings(&self) -> Vec<String> {
        let f = self.instance.toes();
        self.rows
            .iter()
            .map(|r| (0..f).map(|c| if r >> c & 1 == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    fn from_row_strings(instance: WebbingInstance, rows: &[String]) -> Result<Self, String> {
        let f = instance.toes();
        let rows = rows
            .iter()
            .map(|s| {
                if s.len() != f {
                    return Err(format!("row {s:?} has length {}, expected {f}", s.len()));
                }
                s.chars().enumerate().try_fold(0u16, |acc, (c, ch)| match ch {
                    '0' => Ok(acc),
                    '1' => Ok(acc | 1 << c),
                    other => Err(format!("unexpected character {other:?}")),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        WebbingMatrix::new(instance, rows)
    }
}

/// Every toe in one webbing, or in a few webbings when there is a single part.
fn trivial_matrix(instance: &WebbingInstance) -> Option<WebbingMatrix> {
    let f = instance.toes();
    let nonempty = instance.parts.iter().filter(|&&t| t > 0).count();
    if f > ROW_CAPACITY && nonempty > 1 {
        return None;
    }
    let rows: Vec<u16> = (0..f)
        .step_by(ROW_CAPACITY)
        .map(|start| (start..f.min(start + ROW_CAPACITY)).fold(0u16, |m, c| m | 1 << c))
        .collect();
    Some(WebbingMatrix::new(instance.clone(), rows).expect("trivial matrix is valid"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceOutcome {
    /// A matrix of minimal excess, or within the budget when one was given.
    Solved { value: usize, witness: WebbingMatrix },
    InfeasibleUnderBudget,
}

/// Search options for the webbing branch and bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub symmetry_breaking: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            symmetry_breaking: true,
        }
    }
}

/// Minimal excess of one instance. With a budget the search stops at the
/// first matrix of excess at most `budget`, or proves none exists.
pub fn min_excess_for_instance(instance: &WebbingInstance, budget: Option<usize>) -> InstanceOutcome {
    min_excess_with(instance, budget, SolveOptions::default())
}

pub fn min_excess_with(instance: &WebbingInstance, budget: Option<usize>, options: SolveOptions) -> InstanceOutcome {
    solve_below(instance, budget.map(|b| b + 1), budget.is_some(), options)
}

/// Cheapest matrix with excess strictly below `limit` (if any).
fn solve_below(instance: &WebbingInstance, limit: Option<usize>, stop_at_first: bool, options: SolveOptions) -> InstanceOutcome {
    if let Some(m) = trivial_matrix(instance) {
        return if limit.is_some_and(|l| l == 0) {
            InstanceOutcome::InfeasibleUnderBudget
        } else {
            InstanceOutcome::Solved { value: 0, witness: m }
        };
    }
    let f = instance.toes();
    let ones_limit = limit.map_or(usize::MAX, |l| f + l);
    let outcome = search::solve(&instance.parts, ones_limit, options.symmetry_breaking, stop_at_first);
    match outcome.rows {
        Some(rows) => {
            let witness = WebbingMatrix::new(instance.clone(), rows).expect("search returns valid matrices");
            InstanceOutcome::Solved {
                value: witness.excess(),
                witness,
            }
        }
        None => InstanceOutcome::InfeasibleUnderBudget,
    }
}

/// Best matrix over all instances with `f` toes and degree in `degrees`.
fn min_over(f: usize, degrees: &[usize], limit: Option<usize>, stop_at_first: bool) -> Option<WebbingMatrix> {
    let mut best: Option<WebbingMatrix> = None;
    let mut limit = limit;
    for &d in degrees {
        for inst in WebbingInstance::all_with(f, d) {
            if let InstanceOutcome::Solved { value, witness } = solve_below(&inst, limit, stop_at_first, SolveOptions::default()) {
                limit = Some(value);
                best = Some(witness);
                if stop_at_first {
                    return best;
                }
            }
        }
    }
    best
}

fn check_toes(f: usize) -> Result<(), ToeError> {
    if f > MAX_TOES {
        Err(ToeError::OutOfRange(f))
    } else {
        Ok(())
    }
}

/// Exact minimal foot excess for `f` toes over degrees 2 and 3.
///
/// Each call runs the full optimisation; beyond twelve toes this is slow.
pub fn min_excess(f: usize) -> Result<usize, ToeError> {
    check_toes(f)?;
    Ok(min_over(f, &[2, 3], None, false).map_or(0, |m| m.excess()))
}

/// Exact minimal foot excess for a host vertex of degree `d`.
pub fn min_excess_for_degree(f: usize, d: usize) -> Result<Option<usize>, ToeError> {
    check_toes(f)?;
    if !(2..=3).contains(&d) {
        return Err(ToeError::InvalidInstance(format!("degree {d}")));
    }
    Ok(min_over(f, &[d], None, false).map(|m| m.excess()))
}

/// Reference bound when every toe has degree at least three.
pub fn min_excess_no_degree2(f: usize) -> Result<usize, ToeError> {
    if !(7..=MAX_TOES).contains(&f) {
        return Err(ToeError::OutOfRange(f));
    }
    Ok(REFERENCE_EXCESS[f].max(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    /// Every matrix with one less excess was ruled out.
    Proved,
    /// Only the witness is known.
    WitnessOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    /// Loaded from disk; optimality claims have not been re-proved.
    Cached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeEntry {
    pub f: usize,
    pub value: usize,
    pub optimality: Optimality,
    pub witness: WebbingMatrix,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    f: usize,
    value: usize,
    parts: Vec<usize>,
    rows: Vec<String>,
    optimality: Optimality,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<CacheEntry>,
}

/// Minimal excesses indexed by the number of toes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeExcessTable {
    entries: BTreeMap<usize, ToeEntry>,
    provenance: Provenance,
}

/// How much work a table build does for each toe count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    /// Full optimisation up to `exact_up_to`; witnesses at the reference value above it.
    Standard { exact_up_to: usize },
    /// Full optimisation everywhere.
    ProveAll,
}

impl ToeExcessTable {
    /// Computes entries `0..=max_f`, one toe count per rayon task.
    pub fn build(max_f: usize, mode: BuildMode) -> Result<Self, ToeError> {
        use rayon::prelude::*;
        check_toes(max_f)?;
        let entries = (0..=max_f)
            .into_par_iter()
            .map(|f| {
                let exact = match mode {
                    BuildMode::Standard { exact_up_to } => f <= exact_up_to,
                    BuildMode::ProveAll => true,
                };
                let (witness, optimality) = if exact {
                    let w = min_over(f, &[2, 3], None, false).expect("every toe count has a matrix");
                    (w, Optimality::Proved)
                } else {
                    let w = min_over(f, &[2, 3], Some(REFERENCE_EXCESS[f] + 1), true)
                        .ok_or(ToeError::InvalidInstance(format!("no matrix within the reference excess for f = {f}")))?;
                    (w, Optimality::WitnessOnly)
                };
                Ok((
                    f,
                    ToeEntry {
                        f,
                        value: witness.excess(),
                        optimality,
                        witness,
                    },
                ))
            })
            .collect::<Result<BTreeMap<_, _>, ToeError>>()?;
        Ok(ToeExcessTable {
            entries,
            provenance: Provenance::Computed,
        })
    }

    pub fn get(&self, f: usize) -> Option<&ToeEntry> {
        self.entries.get(&f)
    }

    pub fn value(&self, f: usize) -> Option<usize> {
        self.get(f).map(|e| e.value)
    }

    pub fn entries(&self) -> impl Iterator<Item = &ToeEntry> {
        self.entries.values()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Marks an entry proved after a separate budget proof.
    pub fn mark_proved(&mut self, f: usize) {
        if let Some(e) = self.entries.get_mut(&f) {
            e.optimality = Optimality::Proved;
        }
    }

    pub fn to_json(&self) -> String {
        let file = CacheFile {
            version: CACHE_VERSION,
            entries: self
                .entries
                .values()
                .map(|e| CacheEntry {
                    f: e.f,
                    value: e.value,
                    parts: e.witness.instance.parts.clone(),
                    rows: e.witness.row_strings(),
                    optimality: e.optimality,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("cache serialises") + "\n"
    }

    /// Parses a cache, re-checking every witness.
    pub fn from_json(text: &str) -> Result<Self, ToeError> {
        let file: CacheFile = serde_json::from_str(text).map_err(|e| ToeError::CorruptCache(e.to_string()))?;
        if file.version != CACHE_VERSION {
            return Err(ToeError::CorruptCache(format!("unsupported version {}", file.version)));
        }
        let mut entries = BTreeMap::new();
        for e in file.entries {
            let corrupt = |reason: String| ToeError::CorruptCache(format!("f = {}: {reason}", e.f));
            let instance = WebbingInstance::new(e.parts.clone()).map_err(|err| corrupt(err.to_string()))?;
            if instance.toes() != e.f {
                return Err(corrupt(format!("parts sum to {}", instance.toes())));
            }
            let witness = WebbingMatrix::from_row_strings(instance, &e.rows).map_err(corrupt)?;
            if witness.excess() != e.value {
                return Err(corrupt(format!("witness has excess {}, recorded {}", witness.excess(), e.value)));
            }
            if entries.contains_key(&e.f) {
                return Err(corrupt("duplicate entry".into()));
            }
            entries.insert(
                e.f,
                ToeEntry {
                    f: e.f,
                    value: e.value,
                    optimality: e.optimality,
                    witness,
                },
            );
        }
        Ok(ToeExcessTable {
            entries,
            provenance: Provenance::Cached,
        })
    }

    pub fn store(&self, path: &Path) -> Result<(), ToeError> {
        std::fs::write(path, self.to_json()).map_err(|e| ToeError::Io(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ToeError> {
        let text = std::fs::read_to_string(path).map_err(|e| ToeError::Io(e.to_string()))?;
        Self::from_json(&text)
    }
}

/// Proves that no instance with `f` toes reaches excess `budget`.
pub fn prove_no_excess_at_most(f: usize, budget: usize) -> Result<bool, ToeError> {
    check_toes(f)?;
    Ok(min_over(f, &[2, 3], Some(budget + 1), true).is_none())
}
