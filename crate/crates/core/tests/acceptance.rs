//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p lottery-core --test acceptance -- --nocapture` to
//! see the lines. Time limits are pinned below; value checks are exact.

mod common;

use std::time::{Duration, Instant};

use lottery_core::constructions::tabulated_value;
use lottery_core::pipeline::{
    certify, delta_profiles, min_toes, populate_toes, range_report, rs_pairs, CaseContext, Disposition, PipelineOptions,
    Status, ToeProblem,
};
use lottery_core::ticket_file::format_tickets;
use lottery_core::toe_oracle::{
    min_excess, min_excess_for_instance, min_excess_with, InstanceOutcome, SolveOptions, WebbingInstance,
    REFERENCE_EXCESS,
};
use lottery_core::{assemble, config_for, furedi_lower, best_partition_upper, Design, Method, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXHAUSTIVE_70_LIMIT: Duration = Duration::from_secs(60);
const CLIQUE_70_LIMIT: Duration = Duration::from_secs(1);
const TOE_EXACT_LIMIT: Duration = Duration::from_secs(300);
const TOE_WITNESS_LIMIT: Duration = Duration::from_secs(60);
const RANGE_LIMIT: Duration = Duration::from_secs(600);
const RANDOM_DESIGNS: usize = 200;
const RANDOM_INSTANCES: usize = 100;

/// Prints the verdict line, then fails the test if any check failed.
fn report(criterion: u32, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS ({detail})");
    } else {
        println!("criterion {criterion}: FAIL ({detail}): {}", failures.join("; "));
        panic!("criterion {criterion} failed: {}", failures.join("; "));
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

#[test]
fn criterion_1_construction_and_verification() {
    let mut failures = Vec::new();
    for row in common::tabulated() {
        let design = assemble(&config_for(row.n).unwrap());
        if design.size() != row.value {
            failures.push(format!("n={} has {} tickets, expected {}", row.n, design.size(), row.value));
        }
        if row.n != 70 {
            match design.verify_lottery(6, 2, Method::Both) {
                Ok(v) if v.is_valid() => {}
                other => failures.push(format!("n={} verification gave {other:?}", row.n)),
            }
        }
    }
    let d70 = assemble(&config_for(70).unwrap());
    let t = Instant::now();
    let exhaustive = d70.verify_lottery(6, 2, Method::Exhaustive).unwrap();
    let exhaustive_time = t.elapsed();
    let t = Instant::now();
    let clique = d70.verify_lottery(6, 2, Method::Clique).unwrap();
    let clique_time = t.elapsed();
    if !exhaustive.is_valid() || !clique.is_valid() {
        failures.push("n=70 rejected".into());
    }
    if exhaustive_time > EXHAUSTIVE_70_LIMIT {
        failures.push(format!("n=70 exhaustive took {exhaustive_time:?}"));
    }
    if clique_time > CLIQUE_70_LIMIT {
        failures.push(format!("n=70 clique took {clique_time:?}"));
    }
    let d59 = assemble(&config_for(59).unwrap());
    let expected = common::sorted_blocks(&common::read_data("tickets_n59.txt"));
    if common::sorted_blocks(&format_tickets(&d59)) != expected {
        failures.push("n=59 tickets differ from the published set".into());
    }
    report(
        1,
        &failures,
        &format!("39 designs valid; n=70 exhaustive {exhaustive_time:.2?}, clique {clique_time:.2?}"),
    );
}

#[test]
fn criterion_2_bound_sandwich() {
    let mut failures = Vec::new();
    for row in common::tabulated() {
        let lower = furedi_lower(row.n, 6, 6);
        let by_list = common::furedi_by_compositions(row.n, 6, 5);
        if lower != by_list {
            failures.push(format!("n={}: dynamic programme {lower}, compositions {by_list}", row.n));
        }
        let upper = best_partition_upper(row.n, 5).unwrap().value;
        if !(lower <= row.value && row.value == upper) {
            failures.push(format!("n={}: {lower} <= {} = {upper} fails", row.n, row.value));
        }
    }
    for (n, want) in [(32, 7), (70, 35)] {
        let got = furedi_lower(n, 6, 6);
        if got != want {
            failures.push(format!("furedi_lower({n},6,6) = {got}, expected {want}"));
        }
    }
    report(2, &failures, "lower bound <= table value = partition bound, equality at 32 and 70");
}

#[test]
fn criterion_3_toe_table() {
    let mut failures = Vec::new();
    let t = Instant::now();
    for f in 0..=12 {
        let v = min_excess(f).unwrap();
        if v != REFERENCE_EXCESS[f] {
            failures.push(format!("f={f}: {v}, expected {}", REFERENCE_EXCESS[f]));
        }
    }
    let exact_time = t.elapsed();
    if exact_time > TOE_EXACT_LIMIT {
        failures.push(format!("exact values took {exact_time:?}"));
    }
    let mut witness_times = Vec::new();
    for f in 13..=15 {
        let t = Instant::now();
        let target = REFERENCE_EXCESS[f];
        let found = [2, 3].into_iter().flat_map(|d| WebbingInstance::all_with(f, d)).find_map(|inst| {
            match min_excess_for_instance(&inst, Some(target)) {
                InstanceOutcome::Solved { value, witness } => Some((value, witness)),
                InstanceOutcome::InfeasibleUnderBudget => None,
            }
        });
        let elapsed = t.elapsed();
        witness_times.push(format!("{f}:{elapsed:.2?}"));
        match found {
            Some((value, witness)) if value == target && witness.check().is_ok() => {}
            other => failures.push(format!("f={f}: no witness of excess {target} ({:?})", other.map(|o| o.0))),
        }
        if elapsed > TOE_WITNESS_LIMIT {
            failures.push(format!("f={f} witness took {elapsed:?}"));
        }
    }
    report(
        3,
        &failures,
        &format!("f<=12 exact in {exact_time:.2?}; witnesses {}", witness_times.join(" ")),
    );
}

#[test]
fn criterion_4_worked_case_replay() {
    let mut failures = Vec::new();
    let pairs = rs_pairs(47, 16);
    let expected = vec![(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (1, 1), (2, 0)];
    if pairs != expected {
        failures.push(format!("pairs {pairs:?}"));
    }
    let ctx = CaseContext::new(47, 16, 1, 1);
    if ctx.excess != 8 {
        failures.push(format!("excess {}", ctx.excess));
    }
    let profiles = delta_profiles(&ctx);
    if profiles.len() != 1 || profiles[0].degrees != [1, 2, 2, 2, 2] {
        failures.push(format!("profiles {profiles:?}"));
    }
    let mt = min_toes(&ctx, &[2, 2, 2]);
    if mt != 28 {
        failures.push(format!("min toes {mt}"));
    }
    let problem = ToeProblem {
        tail: vec![2, 2, 2],
        min_toes: mt,
        foot_excess: ctx.excess,
        delta2: 4,
        outside: Some(47 - 6 - 9 - 3),
        degree_counts: None,
    };
    let outcome = populate_toes(&ctx, &problem, &PipelineOptions::default());
    if !outcome.survivors.is_empty() {
        failures.push(format!("toe distributions survive: {:?}", outcome.survivors));
    }
    let mut cert = certify(47, 16, true, &PipelineOptions::default()).unwrap();
    cert.runtime_ms = None;
    let trace = serde_json::to_string_pretty(&cert).unwrap() + "\n";
    let golden_path = common::data_path("golden_n47.json");
    if std::env::var_os("LOTTERY_UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden_path, &trace).unwrap();
    }
    let golden = common::read_data("golden_n47.json");
    if trace != golden {
        failures.push("trace differs from the golden file".into());
    }
    if cert.status != Status::Proved || cert.value != 17 {
        failures.push(format!("certificate {} {:?}", cert.value, cert.status));
    }
    report(4, &failures, "pairs, excess 8, profile (1,2,2,2,2), 28 toes, no distribution, golden trace");
}

#[test]
fn criterion_5_end_to_end() {
    let mut failures = Vec::new();
    let t = Instant::now();
    let certs = single_threaded(|| range_report(32, 70, &PipelineOptions::default()).unwrap());
    let elapsed = t.elapsed();
    let table = common::tabulated();
    if certs.len() != table.len() {
        failures.push(format!("{} certificates", certs.len()));
    }
    for (cert, row) in certs.iter().zip(&table) {
        if cert.n != row.n || cert.value != row.value || cert.status != Status::Proved {
            failures.push(format!("n={}: L={} {:?}", cert.n, cert.value, cert.status));
        }
        for case in &cert.lower.cases {
            if case.disposition == Disposition::Surviving {
                failures.push(format!("n={} case ({},{}) survives", cert.n, case.r, case.s));
            }
            if case.disposition == Disposition::Excluded && case.rule.is_none() {
                failures.push(format!("n={} case ({},{}) excluded without a rule", cert.n, case.r, case.s));
            }
            for p in &case.profiles {
                if p.disposition == Disposition::Excluded && p.rule.is_none() {
                    failures.push(format!("n={} profile {:?} excluded without a rule", cert.n, p.degrees));
                }
                if !p.survivors.is_empty() {
                    failures.push(format!("n={} profile {:?} keeps toe distributions", cert.n, p.degrees));
                }
            }
        }
    }
    if elapsed > RANGE_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    report(5, &failures, &format!("39 values proved single-threaded in {elapsed:.2?}"));
}

fn random_design(rng: &mut ChaCha8Rng) -> Design {
    let n = rng.gen_range(6..=18);
    let j = rng.gen_range(1..=8);
    let blocks: Vec<Vec<usize>> = (0..j)
        .map(|_| {
            let mut pool: Vec<usize> = (1..=n).collect();
            for i in 0..6 {
                let k = rng.gen_range(i..n);
                pool.swap(i, k);
            }
            pool.truncate(6);
            pool
        })
        .collect();
    Design::new(n, 6, &blocks).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng) -> WebbingInstance {
    loop {
        let d = rng.gen_range(2..=3);
        let parts: Vec<usize> = (0..d).map(|_| rng.gen_range(0..=5)).collect();
        if parts.iter().sum::<usize>() <= 9 {
            if let Ok(inst) = WebbingInstance::new(parts) {
                return inst;
            }
        }
    }
}

#[test]
fn criterion_6_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6_6_2);
    let mut invalid = 0;
    for i in 0..RANDOM_DESIGNS {
        let d = random_design(&mut rng);
        let a = d.verify_lottery(6, 2, Method::Exhaustive).unwrap();
        let b = d.verify_lottery(6, 2, Method::Clique).unwrap();
        invalid += usize::from(!a.is_valid());
        if a.is_valid() != b.is_valid() {
            failures.push(format!("design {i}: exhaustive {a:?}, clique {b:?}"));
        }
    }
    for i in 0..RANDOM_INSTANCES {
        let inst = random_instance(&mut rng);
        let value = |symmetry_breaking| match min_excess_with(&inst, None, SolveOptions { symmetry_breaking }) {
            InstanceOutcome::Solved { value, .. } => Some(value),
            InstanceOutcome::InfeasibleUnderBudget => None,
        };
        let (on, off) = (value(true), value(false));
        if on != off || on.is_none() {
            failures.push(format!("instance {i} {:?}: {on:?} vs {off:?}", inst.parts()));
        }
    }
    report(
        6,
        &failures,
        &format!("{RANDOM_DESIGNS} designs ({invalid} invalid), {RANDOM_INSTANCES} webbing instances"),
    );
}

/// Degree-two vertices that an independent set is guaranteed to contain.
fn guaranteed_twos(d2: usize, s: usize) -> usize {
    let rest = d2 as i64 - 9 * s as i64;
    (s as i64 + rest.div_euclid(8) + i64::from(rest.rem_euclid(8) != 0)).max(0) as usize
}

#[test]
fn criterion_7_property_suites() {
    let mut failures = Vec::new();
    for n in 32..=70 {
        let d = assemble(&config_for(n).unwrap());
        let h = d.degree_histogram();
        if h.vertex_total() != n || h.incidence_total() != 6 * d.size() {
            failures.push(format!("n={n}: histogram identities"));
        }
        let r = d.isolated_blocks().len();
        let excess = d.excess(d.vertices()) as i64;
        if !d.is_segregated() || excess != (6 * d.size() + 6 * r) as i64 - 2 * n as i64 {
            failures.push(format!("n={n}: excess {excess} with {r} isolated blocks"));
        }
        let independent = d.max_independent_set(6);
        if independent.len() > 5 {
            failures.push(format!("n={n}: independent set of {}", independent.len()));
        }
        let s = d.find_shannon_subhypergraphs().len();
        let twos = d.vertices_of_degree(2);
        let need = guaranteed_twos(twos.len(), s);
        let found = d.max_independent_subset(twos, need).len();
        if found < need {
            failures.push(format!("n={n}: {found} independent degree-two vertices, expected {need}"));
        }
        let report = d.toes_and_foot(independent).unwrap();
        let total: usize = report.toes.values().map(|f: &VertexSet| f.len()).sum();
        if total != report.foot.len() || report.tau.iter().sum::<usize>() != total {
            failures.push(format!("n={n}: toe sets overlap"));
        }
        if tabulated_value(n) != Some(d.size()) {
            failures.push(format!("n={n}: size {}", d.size()));
        }
    }
    report(7, &failures, "39 assembled designs");
}
