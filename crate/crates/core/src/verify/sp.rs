//! Two-terminal series-parallel recognition by reduction.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::Graph;

/// Outcome of [`is_sp`]. When the reduction gets stuck, `kernel` holds the
/// irreducible remainder (original vertex ids).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpVerdict {
    pub is_sp: bool,
    pub kernel: Vec<(usize, usize)>,
}

/// Series-parallel reduction protecting the terminals `s` and `t`.
///
/// Parallel edges are collapsed as soon as they appear (adjacency is kept as
/// sets), and non-terminal vertices with exactly two neighbours are smoothed
/// lowest id first until a fixpoint. The graph is two-terminal SP iff only
/// the edge `{s, t}` remains.
pub fn is_sp(g: &Graph, s: usize, t: usize) -> Result<SpVerdict> {
    if s == t {
        return Err(domain("SP terminals must be distinct"));
    }
    if s >= g.n() || t >= g.n() {
        return Err(domain(format!("terminal out of range for n = {}", g.n())));
    }
    if !g.is_connected() {
        return Err(domain("SP recognition needs a connected graph"));
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; g.n()];
    let smoothable = |v: usize, adj: &[BTreeSet<usize>]| v != s && v != t && adj[v].len() == 2;
    let mut work: BTreeSet<usize> = (0..g.n()).filter(|&v| smoothable(v, &adj)).collect();
    while let Some(v) = work.pop_first() {
        if !alive[v] || !smoothable(v, &adj) {
            continue;
        }
        let mut it = adj[v].iter().copied();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        adj[v].clear();
        alive[v] = false;
        for (x, y) in [(a, b), (b, a)] {
            adj[x].remove(&v);
            adj[x].insert(y);
        }
        for x in [a, b] {
            if smoothable(x, &adj) {
                work.insert(x);
            }
        }
    }
    let kernel: Vec<(usize, usize)> = (0..g.n())
        .filter(|&v| alive[v])
        .flat_map(|u| adj[u].iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
        .collect();
    let is_sp = kernel == [(s.min(t), s.max(t))];
    Ok(SpVerdict { is_sp, kernel })
}

/// Tries every edge `{u, v}` (in order) as the terminal pair and returns the
/// first pair accepted by [`is_sp`].
pub fn find_sp_terminals(g: &Graph) -> Result<Option<(usize, usize)>> {
    for &(u, v) in g.edges() {
        if is_sp(g, u, v)?.is_sp {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_is_its_own_kernel() {
        let v = is_sp(&k4(), 0, 1).unwrap();
        assert!(!v.is_sp);
        assert_eq!(v.kernel, k4().edges());
    }

    #[test]
    fn paths_and_cycles_reduce() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_sp(&p4, 0, 3).unwrap().is_sp);
        // interior terminals leave a pendant that cannot be removed
        assert!(!is_sp(&p4, 1, 2).unwrap().is_sp);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_sp(&c4, 0, 2).unwrap().is_sp);
        assert!(is_sp(&c4, 0, 1).unwrap().is_sp);
    }

    #[test]
    fn contract_errors() {
        assert!(is_sp(&k4(), 2, 2).is_err());
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(is_sp(&split, 0, 1).is_err());
    }

    #[test]
    fn try_all_pairs() {
        assert_eq!(find_sp_terminals(&k4()).unwrap(), None);
        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(find_sp_terminals(&tri).unwrap(), Some((0, 1)));
    }
}
