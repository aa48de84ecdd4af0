//! Exact broadcast times by iterative deepening over informed sets, and the
//! analytic bounds used to prune and to cross-check it.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::families::ceil_log2;
use crate::graph::Graph;
use crate::schemes::{greedy_schedule, validate_schedule, Call, Schedule};

pub const DEFAULT_CAP: usize = 24;
/// Informed sets are `u64` bitmasks.
pub const HARD_CAP: usize = 64;

/// Informed set after `round` rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchState {
    pub informed: u64,
    pub round: usize,
}

impl SearchState {
    pub fn start(origin: usize) -> SearchState {
        SearchState { informed: 1 << origin, round: 0 }
    }

    pub fn count(&self) -> usize {
        self.informed.count_ones() as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        self.informed >> v & 1 == 1
    }
}

fn check_input(g: &Graph, origin: usize, cap: usize) -> Result<()> {
    if cap > HARD_CAP {
        return Err(Error::Capability(format!("cap {cap} exceeds the hard limit of {HARD_CAP} vertices")));
    }
    if g.n() > cap {
        return Err(Error::Capability(format!("{} vertices exceeds the solver cap of {cap}", g.n())));
    }
    if origin >= g.n() {
        return Err(domain(format!("origin {origin} out of range")));
    }
    if !g.is_connected() {
        return Err(domain("broadcast time is undefined on a disconnected graph"));
    }
    Ok(())
}

/// `max(ceil(log2 n), ecc(origin))`.
pub fn lower_bound(g: &Graph, origin: usize) -> Result<usize> {
    if origin >= g.n() {
        return Err(domain(format!("origin {origin} out of range")));
    }
    let ecc = g.eccentricity(origin).ok_or_else(|| domain("lower bound needs a connected graph"))?;
    Ok((ceil_log2(g.n()) as usize).max(ecc))
}

/// Upper bound on the vertices a degree-`d` originator can reach in `rounds`
/// rounds: `1 + sum_{i=1}^{min(d, T)} 2^(T - i)`.
pub fn max_informable(d: usize, rounds: u32) -> u128 {
    assert!(rounds < 127, "round count too large for the counting bound");
    1 + (1..=d.min(rounds as usize) as u32).map(|i| 1u128 << (rounds - i)).sum::<u128>()
}

struct Search<'a> {
    g: &'a Graph,
    full: u64,
    nbr: Vec<u64>,
    /// informed set -> largest remaining budget known to fail
    failed: HashMap<u64, usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Search<'a> {
        let n = g.n();
        let nbr = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Search { g, full, nbr, failed: HashMap::new() }
    }

    /// Rounds needed to reach every vertex from `set` ignoring call limits.
    fn eccentricity(&self, set: u64) -> usize {
        let mut seen = set;
        let mut layer = set;
        let mut d = 0;
        while seen != self.full {
            let next = bits(layer).fold(0u64, |m, v| m | self.nbr[v]) & !seen;
            if next == 0 {
                return usize::MAX;
            }
            seen |= next;
            layer = next;
            d += 1;
        }
        d
    }

    fn hopeless(&self, set: u64, budget: usize) -> bool {
        let n = self.g.n() as u128;
        let have = set.count_ones() as u128;
        if budget < 127 && have << budget < n {
            return true;
        }
        if self.eccentricity(set) > budget {
            return true;
        }
        if budget < 120 {
            // each informed vertex makes at most one call per round to one of
            // its uninformed neighbours; the i-th call seeds at most 2^(R-i)
            let reach: u128 = bits(set)
                .map(|v| {
                    let u = (self.nbr[v] & !set).count_ones() as usize;
                    max_informable(u, budget as u32) - 1
                })
                .sum();
            if have + reach < n {
                return true;
            }
        }
        false
    }

    /// Inclusion-maximal sets of vertices callable in one round from `set`,
    /// each with one realising call list; largest first.
    fn moves(&self, set: u64) -> Vec<(u64, Vec<Call>)> {
        let callers: Vec<usize> = bits(set).filter(|&v| self.nbr[v] & !set != 0).collect();
        let mut found: HashMap<u64, Vec<Call>> = HashMap::new();
        let mut stack = Vec::new();
        self.enumerate(set, &callers, 0, 0, &mut stack, &mut found);
        let mut sets: Vec<(u64, Vec<Call>)> = found.into_iter().collect();
        sets.sort_by_key(|(m, _)| (std::cmp::Reverse(m.count_ones()), *m));
        let mut kept: Vec<(u64, Vec<Call>)> = Vec::new();
        for (m, calls) in sets {
            if !kept.iter().any(|(k, _)| k & m == m) {
                kept.push((m, calls));
            }
        }
        kept
    }

    fn enumerate(
        &self,
        set: u64,
        callers: &[usize],
        i: usize,
        claimed: u64,
        stack: &mut Vec<Call>,
        found: &mut HashMap<u64, Vec<Call>>,
    ) {
        if i == callers.len() {
            // maximal: no idle caller still has a free uninformed neighbour
            let busy: u64 = stack.iter().fold(0, |m, c| m | 1 << c.caller);
            let maximal = callers.iter().all(|&u| busy >> u & 1 == 1 || self.nbr[u] & !set & !claimed == 0);
            if maximal {
                found.entry(claimed).or_insert_with(|| stack.clone());
            }
            return;
        }
        let u = callers[i];
        let free = self.nbr[u] & !set & !claimed;
        for w in bits(free) {
            stack.push(Call::new(u, w));
            self.enumerate(set, callers, i + 1, claimed | 1 << w, stack, found);
            stack.pop();
        }
        self.enumerate(set, callers, i + 1, claimed, stack, found);
    }

    /// Calls for each remaining round, or `None` if `budget` rounds cannot
    /// finish from `set`.
    fn solve(&mut self, set: u64, budget: usize) -> Option<Vec<Vec<Call>>> {
        if set == self.full {
            return Some(Vec::new());
        }
        if budget == 0 || self.failed.get(&set).is_some_and(|&b| b >= budget) || self.hopeless(set, budget) {
            return None;
        }
        for (callees, calls) in self.moves(set) {
            if let Some(mut rest) = self.solve(set | callees, budget - 1) {
                rest.insert(0, calls);
                return Some(rest);
            }
        }
        let e = self.failed.entry(set).or_insert(0);
        *e = (*e).max(budget);
        None
    }

    /// Largest informed count reachable from `set` within `budget` rounds.
    fn reach(&self, set: u64, budget: usize, memo: &mut HashMap<(u64, usize), usize>) -> usize {
        if budget == 0 || set == self.full {
            return set.count_ones() as usize;
        }
        if let Some(&r) = memo.get(&(set, budget)) {
            return r;
        }
        let best = self
            .moves(set)
            .into_iter()
            .map(|(m, _)| self.reach(set | m, budget - 1, memo))
            .max()
            .unwrap_or(set.count_ones() as usize);
        memo.insert((set, budget), best);
        best
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Minimum broadcast time from `origin` and an optimal schedule.
pub fn exact_broadcast_time(g: &Graph, origin: usize, cap: usize) -> Result<(usize, Schedule)> {
    check_input(g, origin, cap)?;
    let lower = lower_bound(g, origin)?;
    // a greedy schedule that meets the lower bound is already optimal
    let greedy = greedy_schedule(g, origin)?;
    if validate_schedule(g, &greedy) == Ok(lower) {
        return Ok((lower, greedy));
    }
    let mut search = Search::new(g);
    for budget in lower..g.n() {
        if let Some(rounds) = search.solve(1 << origin, budget) {
            let sched = Schedule { origin, rounds };
            debug_assert_eq!(validate_schedule(g, &sched), Ok(budget));
            return Ok((budget, sched));
        }
    }
    unreachable!("a connected graph broadcasts within n - 1 rounds")
}

/// `b(G)`: the worst origin's exact time (smallest such origin on ties).
/// Origins are solved in parallel; the result does not depend on scheduling.
pub fn broadcast_time(g: &Graph, cap: usize) -> Result<(usize, usize)> {
    if g.n() == 0 {
        return Err(domain("empty graph"));
    }
    check_input(g, 0, cap)?;
    let times: Vec<usize> =
        (0..g.n()).into_par_iter().map(|v| exact_broadcast_time(g, v, cap).map(|(r, _)| r)).collect::<Result<_>>()?;
    let (v, &r) = times.iter().enumerate().rev().max_by_key(|(_, &r)| r).expect("non-empty");
    Ok((r, v))
}

/// Exact maximum number of vertices informed after `rounds` rounds from
/// `origin`, over all valid schedules.
pub fn max_informed_within(g: &Graph, origin: usize, rounds: usize, cap: usize) -> Result<usize> {
    check_input(g, origin, cap)?;
    Ok(Search::new(g).reach(1 << origin, rounds, &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn small_oracles() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(exact_broadcast_time(&p4, 0, DEFAULT_CAP).unwrap().0, 3);
        for v in 0..8 {
            assert_eq!(exact_broadcast_time(&cycle(8), v, DEFAULT_CAP).unwrap().0, 4);
        }
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(broadcast_time(&k4, DEFAULT_CAP).unwrap().0, 2);
        let single = Graph::new(1, &[]).unwrap();
        assert_eq!(exact_broadcast_time(&single, 0, DEFAULT_CAP).unwrap().0, 0);
    }

    #[test]
    fn witness_validates() {
        let (g, _) = crate::families::binomial_tree(3);
        for v in 0..8 {
            let (r, s) = exact_broadcast_time(&g.graph, v, DEFAULT_CAP).unwrap();
            assert_eq!(validate_schedule(&g.graph, &s), Ok(r));
        }
        assert_eq!(broadcast_time(&g.graph, DEFAULT_CAP).unwrap().0, 5);
    }

    #[test]
    fn contract_errors() {
        let big = cycle(30);
        assert!(matches!(exact_broadcast_time(&big, 0, DEFAULT_CAP), Err(Error::Capability(_))));
        assert!(matches!(exact_broadcast_time(&big, 0, 65), Err(Error::Capability(_))));
        let split = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(exact_broadcast_time(&split, 0, DEFAULT_CAP), Err(Error::Domain(_))));
    }

    #[test]
    fn counting_bound() {
        for k in 5..=20u32 {
            let p = |e: u32| 1u128 << e;
            assert_eq!(max_informable(2, k), 1 + p(k - 1) + p(k - 2));
            assert_eq!(max_informable(5, k), p(k) - p(k - 5) + 1);
        }
        assert_eq!(max_informable(7, 4), 16);
        assert_eq!(max_informable(0, 3), 1);
    }

    #[test]
    fn reach_matches_bound_on_star() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(max_informed_within(&star, 0, 2, DEFAULT_CAP).unwrap(), 3);
        assert_eq!(max_informed_within(&star, 1, 2, DEFAULT_CAP).unwrap(), 3);
        assert!(max_informed_within(&star, 0, 2, DEFAULT_CAP).unwrap() as u128 <= max_informable(4, 2));
    }

    #[test]
    fn lower_bound_terms() {
        let p8 = Graph::new(8, &(1..8).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(lower_bound(&p8, 0).unwrap(), 7);
        assert_eq!(lower_bound(&cycle(12), 0).unwrap(), 6);
    }
}
