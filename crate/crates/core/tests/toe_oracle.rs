//! The webbing search against a plain shortest-path enumeration.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use lottery_core::toe_oracle::{
    min_excess, min_excess_for_instance, reference_partition_excess, InstanceOutcome, WebbingInstance, ROW_CAPACITY,
};

/// Fewest ones in a set of rows that covers every column and every
/// cross-part pair, by Dijkstra over (covered pairs, covered columns).
fn brute_force_excess(parts: &[usize]) -> usize {
    let part_of: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &t)| std::iter::repeat(i).take(t)).collect();
    let f = part_of.len();
    let pairs: Vec<(usize, usize)> = (0..f)
        .flat_map(|a| (a + 1..f).map(move |b| (a, b)))
        .filter(|&(a, b)| part_of[a] != part_of[b])
        .collect();
    let rows: Vec<(u64, u64, usize)> = (1u64..1 << f)
        .filter(|r| r.count_ones() as usize <= ROW_CAPACITY)
        .map(|r| {
            let mut cover = 0u64;
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if r >> a & 1 == 1 && r >> b & 1 == 1 {
                    cover |= 1 << i;
                }
            }
            (r, cover, r.count_ones() as usize)
        })
        .collect();
    let goal = ((1u64 << pairs.len()) - 1, (1u64 << f) - 1);
    let mut best: HashMap<(u64, u64), usize> = HashMap::new();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0usize, 0u64, 0u64)));
    while let Some(Reverse((cost, p, c))) = heap.pop() {
        if (p, c) == goal {
            return cost - f;
        }
        if best.get(&(p, c)).is_some_and(|&b| b < cost) {
            continue;
        }
        for &(r, cover, ones) in &rows {
            let next = (p | cover, c | r);
            if next == (p, c) {
                continue;
            }
            let nc = cost + ones;
            if best.get(&next).map_or(true, |&b| nc < b) {
                best.insert(next, nc);
                heap.push(Reverse((nc, next.0, next.1)));
            }
        }
    }
    unreachable!("the all-singleton rows plus pair rows always cover")
}

#[test]
fn search_matches_brute_force_up_to_seven_toes() {
    for f in 0..=7 {
        for d in [2, 3] {
            for inst in WebbingInstance::all_with(f, d) {
                let want = brute_force_excess(inst.parts());
                match min_excess_for_instance(&inst, None) {
                    InstanceOutcome::Solved { value, witness } => {
                        assert_eq!(value, want, "{inst}");
                        assert_eq!(witness.excess(), value, "{inst}");
                        witness.check().unwrap();
                    }
                    InstanceOutcome::InfeasibleUnderBudget => panic!("{inst} unsolved"),
                }
                assert_eq!(reference_partition_excess(inst.parts()), want, "{inst}");
            }
        }
    }
}

#[test]
fn small_table_values() {
    for f in 0..=7 {
        let by_brute = [2, 3]
            .iter()
            .flat_map(|&d| WebbingInstance::all_with(f, d))
            .map(|i| brute_force_excess(i.parts()))
            .min()
            .unwrap();
        assert_eq!(min_excess(f).unwrap(), by_brute, "f={f}");
    }
}

#[test]
#[ignore = "slow: exhaustive infeasibility proofs for 13 to 15 toes"]
fn budgets_below_the_table_are_infeasible() {
    use lottery_core::toe_oracle::prove_no_excess_at_most;
    for (f, budget) in [(13, 19), (14, 24), (15, 26)] {
        assert!(prove_no_excess_at_most(f, budget).unwrap(), "f={f}");
    }
}

#[test]
#[ignore = "slow: every partition of up to 15 toes"]
fn partition_table_matches_search() {
    for f in 0..=15 {
        for d in [2, 3] {
            for inst in WebbingInstance::all_with(f, d) {
                let InstanceOutcome::Solved { value, .. } = min_excess_for_instance(&inst, None) else {
                    panic!("{inst} unsolved");
                };
                assert_eq!(value, reference_partition_excess(inst.parts()), "{inst}");
            }
        }
    }
}
