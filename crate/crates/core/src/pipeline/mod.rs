//! Lower-bound refutation for `(n,6,6,2;j)` lottery designs.
//!
//! A hypothetical design with `j` blocks is assumed segregated, with `r`
//! isolated blocks and `s` disjoint Shannon subhypergraphs. Each `(r, s)` is
//! examined in turn: the degree profile of a maximum independent set `I` is
//! enumerated, and for every profile the possible toe counts of its members
//! are checked against the excess budget. Every exclusion records the [`Rule`]
//! that justified it.

mod certificate;
mod exchange;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bounds::furedi_lower;
use crate::toe_oracle::REFERENCE_EXCESS;

pub use exchange::{degree_budget_violated, slot_search, DegreeCounts, SlotBudget, SlotVerdict};
pub use certificate::{certify, range_report, table_header, BoundCertificate, LowerTrace, Status, UpperWitness, PROVED_RANGE};

const K: i64 = 6;
const P: i64 = 6;

/// Justifications for discarding part of the case space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// One vertex per isolated block and Shannon component, plus one more,
    /// would form an independent set of order six.
    IndependentSetOrder,
    /// `6j >= 6r + 2(n - 6r)` because only isolated vertices have degree one.
    IsolatedBlockCount,
    /// The isolated blocks and Shannon components need more than `n` vertices.
    ReducedDesignOrder,
    /// The rest of the design would need a draw of at most one ball.
    ReducedDrawSize,
    /// The isolated blocks and Shannon components need more than `j` blocks.
    ReducedDesignSize,
    /// The rest of the design would beat the Füredi bound.
    ReducedFuredi,
    /// A maximal independent set of order five meets at least `(n-5)/5` blocks.
    IBlockCount,
    /// `d_2 <= 8 delta_2 + s` for a 2-max independent set.
    DegreeTwoCount,
    /// Too few toes for the vertices the `J`-blocks must reach.
    MinToes,
    /// The toe counts force more excess than the design has.
    FootExcess,
    /// Thirteen or more toes force degree-four-and-above mass beyond the budget.
    DegreeThreeExcess,
    /// No placement of the non-toes in the `J`-blocks survives the exchange
    /// and adjacency arguments for a maximum independent set.
    TwosLieWithTwos,
    /// Twelve toes on a degree-three member leave a smaller design behind.
    ChangingSocks,
    /// `d_3` must also fit the excess of the foot.
    FootExcessFloor,
    /// Toe degrees cannot be matched with the counts of degree-two,
    /// degree-three and higher vertices.
    DegreeBudget,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::IndependentSetOrder,
        Rule::IsolatedBlockCount,
        Rule::ReducedDesignOrder,
        Rule::ReducedDrawSize,
        Rule::ReducedDesignSize,
        Rule::ReducedFuredi,
        Rule::IBlockCount,
        Rule::DegreeTwoCount,
        Rule::MinToes,
        Rule::FootExcess,
        Rule::DegreeThreeExcess,
        Rule::TwosLieWithTwos,
        Rule::ChangingSocks,
        Rule::FootExcessFloor,
        Rule::DegreeBudget,
    ];
}

/// Pipeline switches, used to check that every rule only ever removes cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub disabled: BTreeSet<Rule>,
    /// Minimal foot excess by toe count.
    pub toe_excess: [usize; 16],
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            disabled: BTreeSet::new(),
            toe_excess: REFERENCE_EXCESS,
        }
    }
}

impl PipelineOptions {
    fn on(&self, rule: Rule) -> bool {
        !self.disabled.contains(&rule)
    }

    pub fn without(rule: Rule) -> Self {
        let mut o = Self::default();
        o.disabled.insert(rule);
        o
    }
}

/// Quantities fixed by `(n, j, r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseContext {
    pub n: usize,
    pub j: usize,
    pub r: usize,
    pub s: usize,
    /// Total excess of the design, `6j + 6r - 2n`.
    pub excess: i64,
    /// Lower bound on `d_2`, `3n - 12r - 6j`, floored at zero.
    pub d2_lower: i64,
    /// Guaranteed number of independent degree-two vertices.
    pub kappa: i64,
}

impl CaseContext {
    pub fn new(n: usize, j: usize, r: usize, s: usize) -> Self {
        let (ni, ji, ri, si) = (n as i64, j as i64, r as i64, s as i64);
        let d2_lower = (3 * ni - 12 * ri - 6 * ji).max(0);
        CaseContext {
            n,
            j,
            r,
            s,
            excess: K * ji + K * ri - 2 * ni,
            d2_lower,
            kappa: si + div_ceil(d2_lower - 9 * si, 8),
        }
    }

    /// Degree-two entries beyond the Shannon ones that a profile must contain.
    pub fn q(&self) -> usize {
        (self.kappa - self.s as i64).max(0) as usize
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// First rule excluding `(r, s)` before any profile is examined.
pub fn rs_exclusion(n: usize, j: usize, r: usize, s: usize, opts: &PipelineOptions) -> Option<Rule> {
    let (ni, ji, ri, si) = (n as i64, j as i64, r as i64, s as i64);
    if opts.on(Rule::IndependentSetOrder) && r + s > 5 {
        return Some(Rule::IndependentSetOrder);
    }
    if opts.on(Rule::IsolatedBlockCount) && ri < div_ceil(2 * ni - K * ji, K) {
        return Some(Rule::IsolatedBlockCount);
    }
    let n_rest = ni - K * ri - 9 * si;
    let p_rest = P - ri - si;
    let j_rest = ji - ri - 3 * si;
    if opts.on(Rule::ReducedDesignOrder) && n_rest < 0 {
        return Some(Rule::ReducedDesignOrder);
    }
    if opts.on(Rule::ReducedDrawSize) && p_rest <= 1 && n_rest >= 1 {
        return Some(Rule::ReducedDrawSize);
    }
    if opts.on(Rule::ReducedDesignSize) && j_rest < 0 {
        return Some(Rule::ReducedDesignSize);
    }
    if opts.on(Rule::ReducedFuredi) && n_rest >= 0 && p_rest >= 0 && j_rest >= 0 {
        let lower = furedi_lower(n_rest as usize, 6, p_rest as usize);
        if lower > j_rest as usize {
            return Some(Rule::ReducedFuredi);
        }
    }
    None
}

/// Plausible `(r, s)`: isolated-block and Shannon counts surviving every
/// pair-level rule, in lexicographic order.
pub fn rs_pairs(n: usize, j: usize) -> Vec<(usize, usize)> {
    rs_pairs_with(n, j, &PipelineOptions::default())
}

pub fn rs_pairs_with(n: usize, j: usize, opts: &PipelineOptions) -> Vec<(usize, usize)> {
    candidate_pairs()
        .filter(|&(r, s)| rs_exclusion(n, j, r, s, opts).is_none())
        .collect()
}

fn candidate_pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..=6).flat_map(|r| (0..=6 - r).map(move |s| (r, s)))
}

/// `4n - 6j + s + r - 19(pi - 1) > 0`: an independent set of order `pi`
/// with degrees at most three extends the guaranteed one.
pub fn star_inequality(ctx: &CaseContext, pi: usize) -> bool {
    let v = 4 * ctx.n as i64 - K * ctx.j as i64 + ctx.s as i64 + ctx.r as i64 - 19 * (pi as i64 - 1);
    v > 0
}

/// A degree profile of `I` together with the rule that discarded it, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaProfile {
    pub degrees: Vec<usize>,
}

impl DeltaProfile {
    pub fn count(&self, d: usize) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    pub fn block_count(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Entries after the isolated and Shannon members.
    pub fn tail(&self, r: usize, s: usize) -> &[usize] {
        &self.degrees[r + s..]
    }
}

/// Five-entry profiles for the case, each with its discarding rule.
/// `None` means the independent set would need more than five members.
pub fn delta_candidates(ctx: &CaseContext, opts: &PipelineOptions) -> Option<Vec<(DeltaProfile, Option<Rule>)>> {
    let fixed = ctx.r + ctx.s + ctx.q();
    if fixed > 5 {
        return None;
    }
    let free = 5 - fixed;
    let min_blocks = div_ceil(ctx.n as i64 - 5, 5);
    let mut out = Vec::new();
    // free entries are 2 or 3, non-decreasing: choose the number of threes
    for threes in 0..=free {
        let mut degrees = vec![1; ctx.r];
        degrees.extend(std::iter::repeat(2).take(5 - ctx.r - threes));
        degrees.extend(std::iter::repeat(3).take(threes));
        let profile = DeltaProfile { degrees };
        let delta2 = profile.count(2) as i64;
        let rule = if opts.on(Rule::IBlockCount) && (profile.block_count() as i64) < min_blocks {
            Some(Rule::IBlockCount)
        } else if opts.on(Rule::DegreeTwoCount) && ctx.d2_lower > 8 * delta2 + ctx.s as i64 {
            Some(Rule::DegreeTwoCount)
        } else {
            None
        };
        out.push((profile, rule));
    }
    Some(out)
}

/// Profiles of a maximum independent set passing the profile-level rules.
pub fn delta_profiles(ctx: &CaseContext) -> Vec<DeltaProfile> {
    delta_candidates(ctx, &PipelineOptions::default())
        .unwrap_or_default()
        .into_iter()
        .filter(|(_, rule)| rule.is_none())
        .map(|(p, _)| p)
        .collect()
}

/// Toes the `J`-blocks must contain: the vertices outside isolated blocks,
/// Shannon components and `J` itself all lie in `J`-blocks, and a vertex met
/// only once there is a toe.
pub fn min_toes(ctx: &CaseContext, tail: &[usize]) -> i64 {
    let outside = ctx.n as i64 - K * ctx.r as i64 - 9 * ctx.s as i64 - tail.len() as i64;
    let slots = (K - 1) * tail.iter().sum::<usize>() as i64;
    (2 * outside - slots).max(0)
}

/// Inputs of a toe-distribution search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToeProblem {
    pub tail: Vec<usize>,
    pub min_toes: i64,
    pub foot_excess: i64,
    /// Degree-two members of the whole independent set.
    pub delta2: usize,
    /// Order-five branch: vertices that must lie in `J`-blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outside: Option<i64>,
    /// Order-four branch: degree counts fixed by `(d_2, d_3)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_counts: Option<DegreeCounts>,
}

/// Surviving toe distributions and how many were discarded by each rule.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ToeOutcome {
    pub survivors: Vec<Vec<usize>>,
    pub removed: BTreeMap<Rule, u64>,
}

impl ToeOutcome {
    fn merge(&mut self, other: ToeOutcome) {
        self.survivors.extend(other.survivors);
        for (rule, count) in other.removed {
            *self.removed.entry(rule).or_default() += count;
        }
    }
}

/// Toe counts `tau` for the tail members, one canonical representative per
/// permutation of equal-degree members (non-increasing within a degree).
fn toe_assignments(tail: &[usize]) -> Vec<Vec<usize>> {
    fn rec(tail: &[usize], i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == tail.len() {
            out.push(cur.clone());
            return;
        }
        let mut max = 5 * tail[i];
        if i > 0 && tail[i - 1] == tail[i] {
            max = max.min(cur[i - 1]);
        }
        for t in (0..=max).rev() {
            cur.push(t);
            rec(tail, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(tail, 0, &mut Vec::with_capacity(tail.len()), &mut out);
    out
}

/// Node limit of one slot search; an unfinished search keeps the distribution.
const SLOT_NODE_LIMIT: u64 = 200_000;

/// Slot budget of a toe problem, `None` when the branch gives no slot count.
fn slot_budget(problem: &ToeProblem, socks: bool) -> Option<SlotBudget> {
    match (problem.outside, problem.degree_counts) {
        (Some(outside), _) => Some(SlotBudget::OrderFive {
            outside,
            excess: problem.foot_excess,
            socks,
        }),
        (None, Some(counts)) => Some(SlotBudget::OrderFour(counts)),
        (None, None) => None,
    }
}

/// Whether the exchange rules rule out every placement of the non-toes.
fn twos_lie_with_twos(problem: &ToeProblem, tau: &[usize]) -> bool {
    slot_budget(problem, false)
        .is_some_and(|b| slot_search(&problem.tail, tau, b, SLOT_NODE_LIMIT) == SlotVerdict::Impossible)
}

/// Changing socks with the per-member excess bounded through the slot search.
fn socks_by_slots(problem: &ToeProblem, tau: &[usize]) -> bool {
    problem.outside.is_some()
        && tau.iter().zip(&problem.tail).any(|(&t, &d)| d == 3 && t == 12)
        && slot_budget(problem, true)
            .is_some_and(|b| slot_search(&problem.tail, tau, b, SLOT_NODE_LIMIT) == SlotVerdict::Impossible)
}

/// Reduced design left when twelve toes of a degree-three member cannot move.
fn socks_reduced_design_impossible(ctx: &CaseContext) -> bool {
    if ctx.n < 14 {
        return false;
    }
    let remaining = ctx.j as i64 - 7;
    remaining < 0 || furedi_lower(ctx.n - 14, 6, 4) as i64 > remaining
}

/// Distributions of toes over the tail members satisfying every toe rule.
pub fn populate_toes(ctx: &CaseContext, problem: &ToeProblem, opts: &PipelineOptions) -> ToeOutcome {
    let table = &opts.toe_excess;
    let mut outcome = ToeOutcome::default();
    let d3_budget = 6 * ctx.j as i64 - 3 * ctx.n as i64 + ctx.s as i64 + 8 * problem.delta2 as i64 + 12 * ctx.r as i64;
    // the exchange behind it needs an independent set of order five
    let socks_applies = problem.outside.is_some() && socks_reduced_design_impossible(ctx);
    for tau in toe_assignments(&problem.tail) {
        let total: i64 = tau.iter().sum::<usize>() as i64;
        let excess: i64 = tau.iter().map(|&t| table[t] as i64).sum();
        let rule = if opts.on(Rule::MinToes) && total < problem.min_toes {
            Some(Rule::MinToes)
        } else if opts.on(Rule::FootExcess) && excess > problem.foot_excess {
            Some(Rule::FootExcess)
        } else if opts.on(Rule::DegreeThreeExcess) && {
            let high: i64 = tau
                .iter()
                .map(|&t| match t {
                    13 => 7,
                    14 => 11,
                    15 => 12,
                    _ => 0,
                })
                .sum();
            d3_budget < high
        } {
            Some(Rule::DegreeThreeExcess)
        } else if opts.on(Rule::DegreeBudget)
            && problem
                .degree_counts
                .is_some_and(|c| degree_budget_violated(&problem.tail, &tau, c, table))
        {
            Some(Rule::DegreeBudget)
        } else if opts.on(Rule::TwosLieWithTwos) && twos_lie_with_twos(problem, &tau) {
            Some(Rule::TwosLieWithTwos)
        } else if opts.on(Rule::ChangingSocks)
            && socks_applies
            && (tau.iter().zip(&problem.tail).any(|(&t, &d)| {
                d == 3 && t == 12 && problem.foot_excess - (excess - table[12] as i64) <= 14
            }) || socks_by_slots(problem, &tau))
        {
            Some(Rule::ChangingSocks)
        } else {
            None
        };
        match rule {
            Some(rule) => *outcome.removed.entry(rule).or_default() += 1,
            None => outcome.survivors.push(tau),
        }
    }
    outcome
}

/// How a case or profile ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disposition {
    /// Discarded by a single rule.
    Excluded,
    /// Every sub-case was discarded.
    Refuted,
    /// Something could not be ruled out.
    Surviving,
}

/// Which extension of the guaranteed independent set was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// An independent set of order five with degrees at most three.
    OrderFive,
    /// Only order four is guaranteed.
    OrderFour,
    /// Not even order four is guaranteed.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileTrace {
    pub degrees: Vec<usize>,
    pub disposition: Disposition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
    /// Order-five branch only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_toes: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub foot_excess: Option<i64>,
    /// Order-four branch only: `(d_2, d_3)` pairs tried with this profile.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_pairs: Option<u64>,
    pub removed: BTreeMap<Rule, u64>,
    pub survivors: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTrace {
    pub r: usize,
    pub s: usize,
    pub disposition: Disposition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excess: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2_lower: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<i64>,
    /// Order-four branch: the `d_2` range `[A, B]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2_range: Option<(i64, i64)>,
    pub profiles: Vec<ProfileTrace>,
}

impl CaseTrace {
    fn excluded(r: usize, s: usize, rule: Rule) -> Self {
        CaseTrace {
            r,
            s,
            disposition: Disposition::Excluded,
            rule: Some(rule),
            branch: None,
            excess: None,
            d2_lower: None,
            kappa: None,
            d2_range: None,
            profiles: Vec::new(),
        }
    }
}

fn profile_disposition(outcome: &ToeOutcome) -> Disposition {
    if outcome.survivors.is_empty() {
        Disposition::Refuted
    } else {
        Disposition::Surviving
    }
}

/// Order-five branch: profiles of `I` and their toe distributions.
fn order_five_case(ctx: &CaseContext, opts: &PipelineOptions) -> (Disposition, Option<Rule>, Vec<ProfileTrace>) {
    let Some(candidates) = delta_candidates(ctx, opts) else {
        return if opts.on(Rule::IndependentSetOrder) {
            (Disposition::Excluded, Some(Rule::IndependentSetOrder), Vec::new())
        } else {
            (Disposition::Surviving, None, Vec::new())
        };
    };
    let mut traces = Vec::new();
    for (profile, rule) in candidates {
        let tail = profile.tail(ctx.r, ctx.s).to_vec();
        if let Some(rule) = rule {
            traces.push(ProfileTrace {
                degrees: profile.degrees,
                disposition: Disposition::Excluded,
                rule: Some(rule),
                min_toes: None,
                foot_excess: None,
                degree_pairs: None,
                removed: BTreeMap::new(),
                survivors: Vec::new(),
            });
            continue;
        }
        let threes = profile.count(3) as i64;
        let problem = ToeProblem {
            min_toes: min_toes(ctx, &tail),
            foot_excess: ctx.excess - threes,
            delta2: profile.count(2),
            outside: Some(ctx.n as i64 - K * ctx.r as i64 - 9 * ctx.s as i64 - tail.len() as i64),
            degree_counts: None,
            tail,
        };
        let outcome = populate_toes(ctx, &problem, opts);
        traces.push(ProfileTrace {
            degrees: profile.degrees,
            disposition: profile_disposition(&outcome),
            rule: None,
            min_toes: Some(problem.min_toes),
            foot_excess: Some(problem.foot_excess),
            degree_pairs: None,
            removed: outcome.removed,
            survivors: outcome.survivors,
        });
    }
    let disposition = if traces.iter().any(|t| t.disposition == Disposition::Surviving) {
        Disposition::Surviving
    } else {
        Disposition::Refuted
    };
    (disposition, None, traces)
}

/// Bounds `[A, B]` on `d_2` used when only order four is guaranteed.
pub fn d2_range(ctx: &CaseContext) -> (i64, i64) {
    (ctx.d2_lower, 8 * (4 - ctx.r as i64) + ctx.s as i64)
}

/// Order-four branch: enumerate `(d_2, d_3)` and four-entry profiles.
fn order_four_case(ctx: &CaseContext, opts: &PipelineOptions) -> (Disposition, Vec<ProfileTrace>) {
    let (ni, ji, ri, si) = (ctx.n as i64, ctx.j as i64, ctx.r as i64, ctx.s as i64);
    let (a, b) = d2_range(ctx);
    let mut per_profile: BTreeMap<usize, (ToeOutcome, u64, u64)> = BTreeMap::new();
    let members = 4usize.saturating_sub(ctx.r);
    if ctx.r > 4 || ctx.s > members {
        // no four-entry profile holds r ones and s twos
        return (Disposition::Refuted, Vec::new());
    }
    for d2 in a..=b {
        let d3_lo = (4 * ni - 18 * ri - 2 * d2 - 6 * ji).max(0);
        let d3_hi = ni - 6 * ri - d2;
        for d3 in d3_lo..=d3_hi {
            for delta2 in ctx.s..=members {
                let delta3 = members - delta2;
                let entry = per_profile.entry(delta2).or_insert_with(|| (ToeOutcome::default(), 0, 0));
                entry.1 += 1;
                let foot_excess = ctx.excess - delta3 as i64;
                if opts.on(Rule::FootExcessFloor) && foot_excess < d3 - delta3 as i64 {
                    entry.2 += 1;
                    continue;
                }
                let min_toes = (2 * d2 - 6 * si + 2 * d3 - 8 + 2 * ri - 10 * delta2 as i64 - 15 * delta3 as i64).max(0);
                let mut tail = vec![2; delta2 - ctx.s];
                tail.extend(std::iter::repeat(3).take(delta3));
                let high = ni - 6 * ri - d2 - d3;
                let counts = DegreeCounts {
                    twos: d2 - 8 * si - delta2 as i64,
                    threes: d3 - delta3 as i64,
                    high,
                    surplus: ctx.excess - d3 - 2 * high,
                };
                let problem = ToeProblem {
                    tail,
                    min_toes,
                    foot_excess,
                    delta2,
                    outside: None,
                    degree_counts: Some(counts),
                };
                entry.0.merge(populate_toes(ctx, &problem, opts));
            }
        }
    }
    let mut traces = Vec::new();
    for (delta2, (mut outcome, pairs, floor)) in per_profile.into_iter().rev() {
        if floor > 0 {
            outcome.removed.insert(Rule::FootExcessFloor, floor);
        }
        outcome.survivors.sort();
        outcome.survivors.dedup();
        let mut degrees = vec![1; ctx.r];
        degrees.extend(std::iter::repeat(2).take(delta2));
        degrees.extend(std::iter::repeat(3).take(members - delta2));
        traces.push(ProfileTrace {
            degrees,
            disposition: profile_disposition(&outcome),
            rule: None,
            min_toes: None,
            foot_excess: None,
            degree_pairs: Some(pairs),
            removed: outcome.removed,
            survivors: outcome.survivors,
        });
    }
    let disposition = if traces.iter().any(|t| t.disposition == Disposition::Surviving) {
        Disposition::Surviving
    } else {
        Disposition::Refuted
    };
    (disposition, traces)
}

/// Full analysis of one `(r, s)` pair.
pub fn analyse_case(n: usize, j: usize, r: usize, s: usize, opts: &PipelineOptions) -> CaseTrace {
    if let Some(rule) = rs_exclusion(n, j, r, s, opts) {
        return CaseTrace::excluded(r, s, rule);
    }
    let ctx = CaseContext::new(n, j, r, s);
    let mut trace = CaseTrace {
        r,
        s,
        disposition: Disposition::Surviving,
        rule: None,
        branch: None,
        excess: Some(ctx.excess),
        d2_lower: Some(ctx.d2_lower),
        kappa: Some(ctx.kappa),
        d2_range: None,
        profiles: Vec::new(),
    };
    if star_inequality(&ctx, 5) {
        let (disposition, rule, profiles) = order_five_case(&ctx, opts);
        trace.branch = Some(Branch::OrderFive);
        trace.disposition = disposition;
        trace.rule = rule;
        trace.profiles = profiles;
    } else if star_inequality(&ctx, 4) {
        let (disposition, profiles) = order_four_case(&ctx, opts);
        trace.branch = Some(Branch::OrderFour);
        trace.d2_range = Some(d2_range(&ctx));
        trace.disposition = disposition;
        trace.profiles = profiles;
    } else {
        trace.branch = Some(Branch::Unresolved);
    }
    trace
}

/// Pairs that reach the order-four branch and are not refuted there.
pub fn bad_rs_tuples(n: usize, j: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize, i64, i64)> {
    let opts = PipelineOptions::default();
    pairs
        .iter()
        .filter_map(|&(r, s)| {
            let ctx = CaseContext::new(n, j, r, s);
            if star_inequality(&ctx, 5) {
                return None;
            }
            let (a, b) = d2_range(&ctx);
            let survives = !star_inequality(&ctx, 4) || order_four_case(&ctx, &opts).0 == Disposition::Surviving;
            survives.then_some((r, s, a, b))
        })
        .collect()
}

/// Analyses every `(r, s)` with `r + s <= 6` for a hypothetical design with `j` blocks.
pub fn refute(n: usize, j: usize, opts: &PipelineOptions) -> Vec<CaseTrace> {
    use rayon::prelude::*;
    let pairs: Vec<(usize, usize)> = candidate_pairs().collect();
    pairs
        .par_iter()
        .map(|&(r, s)| analyse_case(n, j, r, s, opts))
        .collect()
}
