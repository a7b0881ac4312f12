//! Exchange arguments on the slots of the `J`-blocks.
//!
//! `I` is taken 2-max: of maximal order, then with as many degree-two members
//! as possible. Swapping members for outside vertices then gives:
//!
//! * a degree-two vertex adjacent to a single degree-three member `y` could
//!   replace `y`, so every `y`-toe and every non-toe seen only in `y`-blocks
//!   has degree at least three;
//! * a degree-two vertex `z` in a block of a degree-two member `x` and a block
//!   of a degree-three member forces every degree-two `x`-toe into the
//!   `x`-block of `z`;
//! * a degree-two vertex `z` seen only by two degree-three members `y`, `y'`
//!   could replace both together with any `y`-toe outside the `y`-block of
//!   `z`, so those toes have degree at least four (and likewise for `y'`);
//! * a degree-two vertex `z` seen only by members `a` and `b`, an `a`-toe and
//!   a `b`-toe, neither in a block with `z`, would enlarge `I` unless the two
//!   toes are adjacent. Those toes need webbings towards each other.
//!
//! Every block has five slots besides its member, filled by toes and by
//! non-toes that occur in at least two `J`-blocks. The search places the
//! non-toes one at a time and checks the resulting floors on toe degrees
//! against the excess the design can spend.

use std::collections::HashSet;

use serde::Serialize;

use crate::toe_oracle::reference_partition_excess;

const SLOTS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Block {
    /// Non-toe slots still to fill.
    open: u8,
    toes: u8,
    /// Holds a degree-two vertex that triggers an exchange with a degree-three member.
    crossed: bool,
    /// Toes of other members that the toes here must meet in webbings.
    forced: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Member {
    degree: u8,
    toes: u8,
    partition_excess: u8,
    blocks: Vec<Block>,
}

/// Floors implied for the toes of one member.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Floors {
    excess: u32,
    /// Toes of degree at least three.
    three_plus: u32,
    /// Toes of degree at least four.
    four_plus: u32,
}

impl Floors {
    fn add(self, o: Floors) -> Floors {
        Floors {
            excess: self.excess + o.excess,
            three_plus: self.three_plus + o.three_plus,
            four_plus: self.four_plus + o.four_plus,
        }
    }
}

impl Member {
    fn floors(&self, forced: bool, socks: bool) -> Floors {
        let tau = self.toes as u32;
        let crossed: Vec<usize> = (0..self.blocks.len()).filter(|&b| self.blocks[b].crossed).collect();
        let mut f = Floors::default();
        let mut spent = 0;
        for (i, block) in self.blocks.iter().enumerate() {
            let t = block.toes as u32;
            let mut partners = tau - t;
            if forced {
                partners += block.forced as u32;
            }
            let mut rows = partners.div_ceil(SLOTS as u32).max(1);
            let outside_cross = match crossed.as_slice() {
                [] => false,
                [c] => *c != i,
                _ => true,
            };
            if self.degree == 3 {
                rows = rows.max(if outside_cross { 3 } else { 2 });
            } else if outside_cross {
                rows = rows.max(2);
            }
            spent += t * (rows - 1);
            if rows >= 2 {
                f.three_plus += t;
            }
            if rows >= 3 {
                f.four_plus += t;
            }
        }
        f.excess = spent.max(self.partition_excess as u32);
        if socks && self.degree == 3 && tau == 12 {
            f.excess = f.excess.max(15);
        }
        f
    }
}

fn total_floors(members: &[Member], forced: bool, socks: bool) -> Floors {
    members.iter().fold(Floors::default(), |acc, m| acc.add(m.floors(forced, socks)))
}

fn canonical(mut members: Vec<Member>) -> Vec<Member> {
    for m in &mut members {
        m.blocks.sort_unstable_by(|a, b| b.cmp(a));
    }
    members.sort_unstable_by(|a, b| b.cmp(a));
    members
}

/// Degree counts for the order-four branch, where `d_2` and `d_3` are fixed
/// but vertices of degree four or more may stay outside the `J`-blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCounts {
    /// Degree-two vertices outside `I` and the Shannon components.
    pub twos: i64,
    /// Degree-three vertices outside `I`.
    pub threes: i64,
    /// Vertices of degree four or more.
    pub high: i64,
    /// Excess beyond two per vertex of degree four or more.
    pub surplus: i64,
}

/// What the design can spend on the `J`-blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotBudget {
    /// Order five: every outside vertex lies in a `J`-block and the foot and
    /// non-toes share `excess`. With `socks`, twelve toes on a degree-three
    /// member must carry excess above fourteen.
    OrderFive { outside: i64, excess: i64, socks: bool },
    /// Order four: the degree counts fix which vertices can be toes.
    OrderFour(DegreeCounts),
}

/// Degree class of a placed non-toe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Two,
    Three,
    High,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    members: Vec<Member>,
    /// Non-toes placed so far by class.
    placed: [u8; 3],
    /// Order five: excess of the non-toes. Order four: surplus of high non-toes.
    cost: u16,
}

struct Search {
    budget: SlotBudget,
    toes: u32,
    failed: HashSet<State>,
    nodes: u64,
    node_limit: u64,
    aborted: bool,
}

/// Vertices missed by every block of an order-four set are pairwise adjacent,
/// or two of them would extend it to six independent vertices. Each of the `u`
/// such vertices then has degree at least `(u - 1) / 5` rounded up; this is the
/// total degree they need above four.
fn clique_extra(u: i64) -> i64 {
    if u <= 1 {
        return 0;
    }
    u * ((u - 1 + 4) / 5 - 4).max(0)
}

impl Search {
    fn open(members: &[Member]) -> u32 {
        members.iter().flat_map(|m| &m.blocks).map(|b| b.open as u32).sum()
    }

    /// Leaf test once every slot is filled.
    fn complete(&self, st: &State) -> bool {
        let placed: u32 = st.placed.iter().map(|&c| c as u32).sum();
        match self.budget {
            SlotBudget::OrderFive { outside, excess, socks } => {
                let f = total_floors(&st.members, true, socks);
                placed as i64 + self.toes as i64 == outside && (f.excess + st.cost as u32) as i64 <= excess
            }
            SlotBudget::OrderFour(c) => {
                let t2 = c.twos - st.placed[0] as i64;
                let a = c.threes - st.placed[1] as i64;
                let b = self.toes as i64 - t2 - a;
                if t2 < 0 || a < 0 || b < 0 || b > c.high - st.placed[2] as i64 {
                    return false;
                }
                // the swap behind forced webbings needs toes of degree at most three
                let f = total_floors(&st.members, b == 0, false);
                let two_room = self.toes as i64 - f.three_plus as i64;
                let toe_extra = (f.excess as i64 - a - 2 * b).max(0);
                let unreached = c.high - st.placed[2] as i64 - b;
                t2 <= two_room
                    && f.four_plus as i64 <= b
                    && f.three_plus as i64 <= a + b
                    && toe_extra + st.cost as i64 + clique_extra(unreached) <= c.surplus
            }
        }
    }

    /// Cheap necessary condition for a partial state.
    fn promising(&self, st: &State) -> bool {
        let open = Self::open(&st.members) as i64;
        let placed: i64 = st.placed.iter().map(|&c| c as i64).sum();
        match self.budget {
            SlotBudget::OrderFive { outside, excess, socks } => {
                let left = outside - self.toes as i64 - placed;
                if left < 0 || open < 2 * left || (left == 0 && open > 0) {
                    return false;
                }
                let f = total_floors(&st.members, true, socks);
                f.excess as i64 + st.cost as i64 + (open - 2 * left) <= excess
            }
            SlotBudget::OrderFour(c) => self.order_four_room(st, c, open),
        }
    }

    /// Order four: some split of the toes into degree two, three and higher
    /// fits the floors, the excess and the slots still open.
    fn order_four_room(&self, st: &State, c: DegreeCounts, open: i64) -> bool {
        let [p2, p3, ph] = st.placed.map(|x| x as i64);
        let cost = st.cost as i64;
        if p2 > c.twos || p3 > c.threes || ph > c.high || cost > c.surplus {
            return false;
        }
        let toes = self.toes as i64;
        let with_forced = total_floors(&st.members, true, false);
        let plain = total_floors(&st.members, false, false);
        for a in 0..=(c.threes - p3).min(toes) {
            for b in 0..=(c.high - ph).min(toes - a) {
                let t2 = toes - a - b;
                let f = if b == 0 { with_forced } else { plain };
                if t2 > c.twos - p2 || f.four_plus as i64 > b || f.three_plus as i64 > a + b {
                    continue;
                }
                let spare = c.surplus - cost - (f.excess as i64 - a - 2 * b).max(0);
                if spare < 0 {
                    continue;
                }
                let (r2, r3) = (c.twos - t2 - p2, c.threes - a - p3);
                let least = 2 * (r2 + r3);
                // later non-toes take two slots each, the rest stay unreached
                let unreached = c.high - b - ph - ((open - least).max(0) / 2);
                let spare = spare - clique_extra(unreached);
                if spare < 0 {
                    continue;
                }
                let most = 2 * r2 + 3 * r3 + 4 * (c.high - b - ph) + spare;
                if least <= open && open <= most {
                    return true;
                }
            }
        }
        false
    }

    fn run(&mut self, st: State) -> bool {
        if self.aborted {
            return true;
        }
        if self.failed.contains(&st) {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return true;
        }
        let found = self.expand(&st);
        if !found {
            self.failed.insert(st);
        }
        found
    }

    fn expand(&mut self, st: &State) -> bool {
        if !self.promising(st) {
            return false;
        }
        let places: Vec<(usize, usize)> = st
            .members
            .iter()
            .enumerate()
            .flat_map(|(i, m)| (0..m.blocks.len()).map(move |b| (i, b)))
            .filter(|&(i, b)| st.members[i].blocks[b].open > 0)
            .collect();
        let Some(&first) = places.first() else {
            return self.complete(st);
        };
        let open = Self::open(&st.members) as i64;
        let max_extra = match self.budget {
            SlotBudget::OrderFive { outside, .. } => {
                let placed: i64 = st.placed.iter().map(|&c| c as i64).sum();
                let left = outside - self.toes as i64 - placed;
                (open - 2 * (left - 1)) - 1
            }
            SlotBudget::OrderFour(c) => 3 + (c.surplus - st.cost as i64),
        };
        let max_extra = max_extra.clamp(0, places.len() as i64 - 1) as usize;
        let mut chosen = Vec::new();
        self.subsets(st, first, &places[1..], 0, max_extra, &mut chosen)
    }

    fn subsets(
        &mut self,
        st: &State,
        first: (usize, usize),
        others: &[(usize, usize)],
        from: usize,
        max_extra: usize,
        chosen: &mut Vec<(usize, usize)>,
    ) -> bool {
        if !chosen.is_empty() && self.place(st, first, chosen) {
            return true;
        }
        if chosen.len() == max_extra {
            return false;
        }
        for k in from..others.len() {
            chosen.push(others[k]);
            let found = self.subsets(st, first, others, k + 1, max_extra, chosen);
            chosen.pop();
            if found || self.aborted {
                return true;
            }
        }
        false
    }

    /// Classes a non-toe through `first` and `rest` may take, with their cost.
    fn classes(&self, st: &State, first: (usize, usize), rest: &[(usize, usize)]) -> Vec<(Class, u16)> {
        let mu = rest.len() as u16 + 1;
        let single_three = rest.len() == 1 && rest[0].0 == first.0 && st.members[first.0].degree == 3;
        let mut out = Vec::new();
        match self.budget {
            SlotBudget::OrderFive { .. } => {
                if mu == 2 && !single_three {
                    out.push((Class::Two, 0));
                }
                if mu <= 3 {
                    out.push((Class::Three, 1));
                } else {
                    out.push((Class::High, mu - 2));
                }
            }
            SlotBudget::OrderFour(_) => {
                if mu == 2 && !single_three {
                    out.push((Class::Two, 0));
                }
                if mu <= 3 {
                    out.push((Class::Three, 0));
                }
                out.push((Class::High, mu.saturating_sub(4)));
            }
        }
        out
    }

    fn place(&mut self, st: &State, first: (usize, usize), rest: &[(usize, usize)]) -> bool {
        for (class, cost) in self.classes(st, first, rest) {
            let mut members = st.members.clone();
            for &(i, b) in std::iter::once(&first).chain(rest) {
                members[i].blocks[b].open -= 1;
            }
            if class == Class::Two && rest[0].0 != first.0 {
                exchange_effects(&mut members, first, rest[0]);
            }
            let mut placed = st.placed;
            placed[class as usize] += 1;
            let next = State {
                members: canonical(members),
                placed,
                cost: st.cost + cost,
            };
            if self.run(next) {
                return true;
            }
        }
        false
    }
}

/// Effects of a degree-two non-toe in block `p` of one member and block `q`
/// of another.
fn exchange_effects(members: &mut [Member], p: (usize, usize), q: (usize, usize)) {
    let (dp, dq) = (members[p.0].degree, members[q.0].degree);
    match (dp, dq) {
        (2, 3) => members[p.0].blocks[p.1].crossed = true,
        (3, 2) => members[q.0].blocks[q.1].crossed = true,
        (3, 3) => {
            members[p.0].blocks[p.1].crossed = true;
            members[q.0].blocks[q.1].crossed = true;
        }
        _ => {}
    }
    let away = |m: &Member, b: usize| m.toes - m.blocks[b].toes;
    let (from_q, from_p) = (away(&members[q.0], q.1), away(&members[p.0], p.1));
    for (b, block) in members[p.0].blocks.iter_mut().enumerate() {
        if b != p.1 {
            block.forced = block.forced.max(from_q);
        }
    }
    for (b, block) in members[q.0].blocks.iter_mut().enumerate() {
        if b != q.1 {
            block.forced = block.forced.max(from_p);
        }
    }
}

/// Non-increasing splits of `toes` over `degree` blocks of five slots.
fn splits(toes: usize, degree: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for t in (0..=max.min(left)).rev() {
            cur.push(t);
            rec(left - t, t, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(toes, SLOTS, degree, &mut Vec::new(), &mut out);
    out
}

/// Result of the slot search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotVerdict {
    Possible,
    Impossible,
    /// Node limit reached; treated as possible.
    Undecided,
}

/// Decides whether toe counts `tau` on members of degrees `tail` admit a
/// placement of non-toes within `budget`.
pub fn slot_search(tail: &[usize], tau: &[usize], budget: SlotBudget, node_limit: u64) -> SlotVerdict {
    let toes: usize = tau.iter().sum();
    let open = (SLOTS * tail.iter().sum::<usize>()) as i64 - toes as i64;
    if let SlotBudget::OrderFive { outside, excess, .. } = budget {
        let non_toes = outside - toes as i64;
        if non_toes < 0 || open < 2 * non_toes || excess < 0 {
            return SlotVerdict::Impossible;
        }
    }
    let per_member: Vec<Vec<Member>> = tail
        .iter()
        .zip(tau)
        .map(|(&d, &t)| {
            splits(t, d)
                .into_iter()
                .map(|parts| Member {
                    degree: d as u8,
                    toes: t as u8,
                    partition_excess: reference_partition_excess(&parts) as u8,
                    blocks: parts
                        .iter()
                        .map(|&p| Block {
                            open: (SLOTS - p) as u8,
                            toes: p as u8,
                            crossed: false,
                            forced: 0,
                        })
                        .collect(),
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        budget,
        toes: toes as u32,
        failed: HashSet::new(),
        nodes: 0,
        node_limit,
        aborted: false,
    };
    let mut choice = vec![0usize; per_member.len()];
    loop {
        let members: Vec<Member> = choice.iter().zip(&per_member).map(|(&c, opts)| opts[c].clone()).collect();
        let start = State {
            members: canonical(members),
            placed: [0; 3],
            cost: 0,
        };
        if search.run(start) {
            return if search.aborted {
                SlotVerdict::Undecided
            } else {
                SlotVerdict::Possible
            };
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return SlotVerdict::Impossible;
            }
            choice[i] += 1;
            if choice[i] < per_member[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Whether toe counts `tau` are incompatible with the degree counts: the
/// foot excess can only come from toes of degree three or more, and the
/// non-toe vertices of degree two or three still need two slots each.
pub fn degree_budget_violated(tail: &[usize], tau: &[usize], counts: DegreeCounts, table: &[usize]) -> bool {
    let DegreeCounts { twos, threes, high, surplus } = counts;
    if twos < 0 || threes < 0 || high < 0 || surplus < 0 {
        return true;
    }
    let toes: i64 = tau.iter().sum::<usize>() as i64;
    let open = (SLOTS * tail.iter().sum::<usize>()) as i64 - toes;
    let need: i64 = tail
        .iter()
        .zip(tau)
        .map(|(&d, &t)| if d == 3 { table[t].max(t) } else { table[t] } as i64)
        .sum();
    let three_toes: i64 = tail.iter().zip(tau).filter(|(&d, _)| d == 3).map(|(_, &t)| t as i64).sum();
    for a in 0..=threes.min(toes) {
        for b in 0..=high.min(toes - a) {
            let t2 = toes - a - b;
            if t2 > twos || a + b < three_toes {
                continue;
            }
            if need > a + 2 * b + surplus {
                continue;
            }
            let least = 2 * (twos - t2) + 2 * (threes - a);
            let most = 2 * (twos - t2) + 3 * (threes - a) + 4 * (high - b) + surplus - (need - a - 2 * b).max(0);
            if least <= open && open <= most {
                return false;
            }
        }
    }
    true
}
