use std::cmp::Reverse;

use crate::error::{domain, Result};
use crate::graph::Graph;

use super::{Call, Schedule};

/// Round-by-round greedy broadcast. Each uninformed neighbour of the
/// informed set is weighted by the size of the region it would be first to
/// reach (its subtree in a BFS forest grown from the informed set).
/// Heaviest neighbours are served first; each gets the available informed
/// caller with the fewest remaining options.
pub fn greedy_schedule(g: &Graph, origin: usize) -> Result<Schedule> {
    let n = g.n();
    if origin >= n {
        return Err(domain(format!("origin {origin} out of range")));
    }
    if !g.is_connected() {
        return Err(domain("greedy broadcast needs a connected graph"));
    }
    let mut informed = vec![false; n];
    informed[origin] = true;
    let mut count = 1;
    let mut sched = Schedule::new(origin);
    while count < n {
        let weight = region_sizes(g, &informed);
        let mut frontier: Vec<usize> =
            (0..n).filter(|&w| !informed[w] && g.neighbors(w).iter().any(|&u| informed[u])).collect();
        frontier.sort_by_key(|&w| (Reverse(weight[w]), w));
        let mut busy = vec![false; n];
        let mut taken = vec![false; n];
        let mut calls = Vec::new();
        for &w in &frontier {
            // options of a caller = frontier vertices it could still serve
            let caller = g.neighbors(w).iter().copied().filter(|&u| informed[u] && !busy[u]).min_by_key(|&u| {
                let options = g.neighbors(u).iter().filter(|&&x| !informed[x] && !taken[x]).count();
                (options, u)
            });
            if let Some(u) = caller {
                busy[u] = true;
                taken[w] = true;
                calls.push(Call::new(u, w));
            }
        }
        for c in &calls {
            informed[c.callee] = true;
        }
        count += calls.len();
        calls.sort();
        sched.rounds.push(calls);
    }
    Ok(sched)
}

/// Subtree sizes of a BFS forest over uninformed vertices, rooted at the
/// informed set; parents are the lowest-id vertex of the previous layer.
fn region_sizes(g: &Graph, informed: &[bool]) -> Vec<usize> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).filter(|&v| informed[v]).collect();
    for &v in &order {
        dist[v] = 0;
    }
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut size = vec![1usize; n];
    for &w in order.iter().rev() {
        if dist[w] <= 1 {
            continue;
        }
        let p = *g.neighbors(w).iter().find(|&&p| dist[p] + 1 == dist[w]).expect("BFS parent exists");
        size[p] += size[w];
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::validate_schedule;

    #[test]
    fn star_is_sequential() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(validate_schedule(&g, &greedy_schedule(&g, 0).unwrap()), Ok(4));
    }

    #[test]
    fn cycle_takes_half() {
        let e: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let g = Graph::new(8, &e).unwrap();
        for v in 0..8 {
            assert_eq!(validate_schedule(&g, &greedy_schedule(&g, v).unwrap()), Ok(4));
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(greedy_schedule(&g, 0).is_err());
    }
}
