//! Explicit broadcast schedules: the family schemes, a greedy fallback and
//! the schedule validator.

mod binomial;
mod composed;
mod greedy;
mod mb;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::families::binomial_tree;
use crate::graph::{Graph, LabeledGraph};
use crate::tree::RootedTree;

pub use binomial::{complement_decomposition, scheme_ab, scheme_binomial};
pub use composed::{scheme_composed, scheme_relaxed};
pub use greedy::greedy_schedule;
pub use mb::{scheme_mb, scheme_position, SchemePosition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Call {
    pub caller: usize,
    pub callee: usize,
}

impl Call {
    pub fn new(caller: usize, callee: usize) -> Call {
        Call { caller, callee }
    }
}

/// Rounds of calls starting from `origin`. Round `i` (1-based) is
/// `rounds[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub origin: usize,
    pub rounds: Vec<Vec<Call>>,
}

impl Schedule {
    pub fn new(origin: usize) -> Schedule {
        Schedule { origin, rounds: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn call_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Sorts every round by caller so output is canonical.
    pub fn normalize(&mut self) {
        for r in &mut self.rounds {
            r.sort();
        }
    }

    /// Rebuilds a schedule from flat `(round, caller, callee)` rows.
    pub fn from_rows(origin: usize, rows: &[(usize, usize, usize)]) -> Schedule {
        let mut by_round: BTreeMap<usize, Vec<Call>> = BTreeMap::new();
        for &(r, a, b) in rows {
            by_round.entry(r).or_default().push(Call::new(a, b));
        }
        let last = by_round.keys().next_back().copied().unwrap_or(0);
        let mut s = Schedule::new(origin);
        s.rounds = (1..=last).map(|r| by_round.remove(&r).unwrap_or_default()).collect();
        s.normalize();
        s
    }

    pub fn rows(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.call_count());
        for (i, r) in self.rounds.iter().enumerate() {
            let mut calls = r.clone();
            calls.sort();
            out.extend(calls.into_iter().map(|c| (i + 1, c.caller, c.callee)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ViolationKind {
    OriginOutOfRange,
    VertexOutOfRange,
    NotAnEdge,
    CallerUninformed,
    CalleeInformed,
    CallerBusy,
    CalleeTwice,
    Incomplete { informed: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// 1-based round of the offending call; 0 for schedule-level problems.
    pub round: usize,
    pub call: Option<Call>,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match &self.kind {
            ViolationKind::OriginOutOfRange => "origin out of range".to_string(),
            ViolationKind::VertexOutOfRange => "vertex out of range".to_string(),
            ViolationKind::NotAnEdge => "call does not use an edge".to_string(),
            ViolationKind::CallerUninformed => "caller is not informed".to_string(),
            ViolationKind::CalleeInformed => "callee is already informed".to_string(),
            ViolationKind::CallerBusy => "caller makes two calls in one round".to_string(),
            ViolationKind::CalleeTwice => "callee receives two calls in one round".to_string(),
            ViolationKind::Incomplete { informed, n } => format!("only {informed} of {n} vertices informed"),
        };
        match self.call {
            Some(c) => write!(f, "round {}: call {} -> {}: {}", self.round, c.caller, c.callee, rule),
            None => write!(f, "{rule}"),
        }
    }
}

impl std::error::Error for Violation {}

/// Scheme names accepted by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Binomial,
    Mb,
    Composed,
    Ab,
    Relaxed,
    Greedy,
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SchemeKind> {
        Ok(match s {
            "binomial" => SchemeKind::Binomial,
            "mb" => SchemeKind::Mb,
            "composed" => SchemeKind::Composed,
            "ab" => SchemeKind::Ab,
            "relaxed" => SchemeKind::Relaxed,
            "greedy" => SchemeKind::Greedy,
            other => return Err(Error::Parse(format!("unknown scheme '{other}'"))),
        })
    }
}

impl SchemeKind {
    pub fn run(self, g: &LabeledGraph, origin: usize) -> Result<Schedule> {
        match self {
            SchemeKind::Binomial => {
                let n = g.n();
                if !n.is_power_of_two() || binomial_tree(n.trailing_zeros()).0.graph != g.graph {
                    return Err(domain("graph is not a binomial tree in canonical labelling"));
                }
                scheme_binomial(&RootedTree::identity(n.trailing_zeros(), 0), origin)
            }
            SchemeKind::Mb => scheme_mb(g, origin),
            SchemeKind::Composed => scheme_composed(g, origin),
            SchemeKind::Ab => scheme_ab(g, origin),
            SchemeKind::Relaxed => scheme_relaxed(g, origin),
            SchemeKind::Greedy => greedy_schedule(&g.graph, origin),
        }
    }
}

/// Replays `schedule` on `g` under the telephone model and returns the first
/// round after which every vertex is informed.
pub fn validate_schedule(g: &Graph, schedule: &Schedule) -> Result<usize, Violation> {
    let n = g.n();
    if schedule.origin >= n {
        return Err(Violation { round: 0, call: None, kind: ViolationKind::OriginOutOfRange });
    }
    let mut informed = vec![false; n];
    informed[schedule.origin] = true;
    let mut count = 1;
    let mut done_at = (count == n).then_some(0);
    let mut caller_seen = vec![usize::MAX; n];
    let mut callee_seen = vec![usize::MAX; n];
    for (i, round) in schedule.rounds.iter().enumerate() {
        let r = i + 1;
        let fail = |c: &Call, kind| Err(Violation { round: r, call: Some(*c), kind });
        for c in round {
            if c.caller >= n || c.callee >= n {
                return fail(c, ViolationKind::VertexOutOfRange);
            }
            if !g.has_edge(c.caller, c.callee) {
                return fail(c, ViolationKind::NotAnEdge);
            }
            // informed-before-the-round: calls landing this round are not yet visible
            if !informed[c.caller] || callee_seen[c.caller] == r {
                return fail(c, ViolationKind::CallerUninformed);
            }
            if caller_seen[c.caller] == r {
                return fail(c, ViolationKind::CallerBusy);
            }
            if callee_seen[c.callee] == r {
                return fail(c, ViolationKind::CalleeTwice);
            }
            if informed[c.callee] {
                return fail(c, ViolationKind::CalleeInformed);
            }
            caller_seen[c.caller] = r;
            callee_seen[c.callee] = r;
        }
        for c in round {
            informed[c.callee] = true;
        }
        count += round.len();
        if done_at.is_none() && count == n {
            done_at = Some(r);
        }
    }
    done_at.ok_or(Violation { round: 0, call: None, kind: ViolationKind::Incomplete { informed: count, n } })
}

/// Round-by-round simulator behind the structured schemes.
///
/// Every vertex owns an ordered call list. Each round, informed vertices (by
/// informing time, then id) take the first entry of their list that is still
/// uninformed and unclaimed this round. A vertex with an exhausted list calls
/// its lowest-id uninformed neighbour instead, which guarantees progress.
/// Runs until every vertex in `targets` is informed.
pub(crate) fn simulate(g: &Graph, origin: usize, lists: &HashMap<usize, Vec<usize>>, targets: &[usize]) -> Schedule {
    let n = g.n();
    let mut when = vec![usize::MAX; n];
    when[origin] = 0;
    let mut cursor = vec![0usize; n];
    let mut order = vec![origin];
    let mut sched = Schedule::new(origin);
    let empty = Vec::new();
    let remaining = |when: &[usize]| targets.iter().any(|&v| when[v] == usize::MAX);
    while remaining(&when) {
        let r = sched.rounds.len() + 1;
        let mut claimed = vec![false; n];
        let mut calls = Vec::new();
        let mut idle = Vec::new();
        for &u in &order {
            let list = lists.get(&u).unwrap_or(&empty);
            let mut pick = None;
            while cursor[u] < list.len() {
                let w = list[cursor[u]];
                cursor[u] += 1;
                if when[w] == usize::MAX && !claimed[w] {
                    debug_assert!(g.has_edge(u, w), "scheme list entry {u} -> {w} is not an edge");
                    pick = Some(w);
                    break;
                }
            }
            match pick {
                Some(w) => {
                    claimed[w] = true;
                    calls.push(Call::new(u, w));
                }
                None => idle.push(u),
            }
        }
        for u in idle {
            if let Some(&w) = g.neighbors(u).iter().find(|&&w| when[w] == usize::MAX && !claimed[w]) {
                claimed[w] = true;
                calls.push(Call::new(u, w));
            }
        }
        assert!(!calls.is_empty(), "simulation stalled: targets unreachable from {origin}");
        for c in &calls {
            when[c.callee] = r;
            order.push(c.callee);
        }
        // keep `order` sorted by (informing round, id)
        let start = order.len() - calls.len();
        order[start..].sort_unstable();
        calls.sort();
        sched.rounds.push(calls);
    }
    sched
}

/// Children of every vertex in a tree given by undirected `edges`, rooted at
/// `root`, ordered for optimal broadcasting: decreasing subtree broadcast
/// time, then larger subtree, then smaller id.
pub(crate) fn tree_broadcast_order(edges: &[(usize, usize)], root: usize) -> HashMap<usize, Vec<usize>> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    // iterative DFS preorder, then process in reverse
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut pre = vec![root];
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        let mut nb = adj.get(&u).cloned().unwrap_or_default();
        nb.sort_unstable();
        for w in nb {
            if w != root && !parent.contains_key(&w) && parent.get(&u) != Some(&w) {
                parent.insert(w, u);
                pre.push(w);
                stack.push(w);
            }
        }
    }
    let mut time: HashMap<usize, usize> = HashMap::new();
    let mut size: HashMap<usize, usize> = HashMap::new();
    let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
    for &u in pre.iter().rev() {
        let mut ch: Vec<usize> = adj
            .get(&u)
            .map(|nb| nb.iter().copied().filter(|w| parent.get(w) == Some(&u)).collect())
            .unwrap_or_default();
        ch.sort_by(|a, b| time[b].cmp(&time[a]).then(size[b].cmp(&size[a])).then(a.cmp(b)));
        let t = ch.iter().enumerate().map(|(i, c)| i + 1 + time[c]).max().unwrap_or(0);
        time.insert(u, t);
        size.insert(u, 1 + ch.iter().map(|c| size[c]).sum::<usize>());
        children.insert(u, ch);
    }
    children
}

/// Appends `extra` to `list`, skipping entries already present.
pub(crate) fn extend_unique(list: &mut Vec<usize>, extra: impl IntoIterator<Item = usize>) {
    for x in extra {
        if !list.contains(&x) {
            list.push(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn single_vertex_completes_at_zero() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(validate_schedule(&g, &Schedule::new(0)), Ok(0));
    }

    #[test]
    fn uninformed_caller_is_named() {
        let g = path(3);
        let s = Schedule { origin: 0, rounds: vec![vec![Call::new(1, 2)]] };
        let v = validate_schedule(&g, &s).unwrap_err();
        assert_eq!(v.kind, ViolationKind::CallerUninformed);
        assert_eq!(v.call, Some(Call::new(1, 2)));
        assert_eq!(v.round, 1);
    }

    #[test]
    fn relay_within_a_round_is_rejected() {
        let g = path(3);
        let s = Schedule { origin: 0, rounds: vec![vec![Call::new(0, 1), Call::new(1, 2)]] };
        assert_eq!(validate_schedule(&g, &s).unwrap_err().kind, ViolationKind::CallerUninformed);
    }

    #[test]
    fn rule_checks() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let twice = Schedule { origin: 0, rounds: vec![vec![Call::new(0, 1), Call::new(0, 2)]] };
        assert_eq!(validate_schedule(&g, &twice).unwrap_err().kind, ViolationKind::CallerBusy);
        let back = Schedule { origin: 0, rounds: vec![vec![Call::new(0, 1)], vec![Call::new(1, 0)]] };
        assert_eq!(validate_schedule(&g, &back).unwrap_err().kind, ViolationKind::CalleeInformed);
        let short = Schedule { origin: 0, rounds: vec![vec![Call::new(0, 1)]] };
        assert!(matches!(
            validate_schedule(&g, &short).unwrap_err().kind,
            ViolationKind::Incomplete { informed: 2, n: 3 }
        ));
        let p = path(3);
        let jump = Schedule { origin: 0, rounds: vec![vec![Call::new(0, 2)]] };
        assert_eq!(validate_schedule(&p, &jump).unwrap_err().kind, ViolationKind::NotAnEdge);
    }

    #[test]
    fn rows_round_trip() {
        let s = Schedule { origin: 0, rounds: vec![vec![Call::new(0, 1)], vec![Call::new(1, 2), Call::new(0, 3)]] };
        let back = Schedule::from_rows(0, &s.rows());
        assert_eq!(back.rows(), vec![(1, 0, 1), (2, 0, 3), (2, 1, 2)]);
    }

    #[test]
    fn simulator_falls_back_to_neighbours() {
        let g = path(5);
        let s = simulate(&g, 2, &HashMap::new(), &[0, 1, 2, 3, 4]);
        assert_eq!(validate_schedule(&g, &s), Ok(3));
    }

    #[test]
    fn optimal_tree_order_prefers_slow_subtrees() {
        // root 0 with a leaf child 1 and a path child 2-3-4
        let order = tree_broadcast_order(&[(0, 1), (0, 2), (2, 3), (3, 4)], 0);
        assert_eq!(order[&0], vec![2, 1]);
    }
}
