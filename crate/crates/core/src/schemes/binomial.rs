use std::collections::HashMap;

use crate::error::{domain, Result};
use crate::families::accelerated_binomial;
use crate::graph::{bfs_distances, Graph, LabeledGraph, Role};
use crate::tree::RootedTree;

use super::{extend_unique, simulate, tree_broadcast_order, Schedule};

/// Graph on `0..=max member` carrying only the tree edges.
fn tree_graph(tree: &RootedTree) -> Graph {
    let n = tree.members().iter().max().map_or(0, |m| m + 1);
    Graph::new(n, &tree.edges()).expect("tree edges are simple")
}

/// Lists for "relay along `path` to its last vertex, then broadcast from
/// there along `children`".
pub(crate) fn relay_then_broadcast(
    path: &[usize],
    children: &HashMap<usize, Vec<usize>>,
) -> HashMap<usize, Vec<usize>> {
    let mut lists: HashMap<usize, Vec<usize>> = HashMap::new();
    for w in path.windows(2) {
        lists.entry(w[0]).or_default().push(w[1]);
    }
    for (&u, ch) in children {
        extend_unique(lists.entry(u).or_default(), ch.iter().copied());
    }
    lists
}

/// Binomial-tree broadcast: relay to the nearer of the two degree-`k`
/// vertices, then every informed vertex calls its subroots in decreasing
/// dimension.
pub fn scheme_binomial(tree: &RootedTree, origin: usize) -> Result<Schedule> {
    if !tree.contains(origin) {
        return Err(domain(format!("vertex {origin} is not in the tree")));
    }
    let g = tree_graph(tree);
    let dist = bfs_distances(&g, origin);
    let (root, co) = (tree.root(), tree.co_root());
    let root = if dist[co].hops() < dist[root].hops() { co } else { root };
    let path = crate::graph::shortest_path(&g, origin, root).expect("tree is connected");
    let children = tree_broadcast_order(&tree.edges(), root);
    Ok(simulate(&g, origin, &relay_then_broadcast(&path, &children), tree.members()))
}

/// Roots and dimensions of the binomial subtrees that partition
/// `tree` minus the `BT_d` block containing `v`, largest first.
pub fn complement_decomposition(tree: &RootedTree, v: usize, d: u32) -> Result<Vec<(usize, u32)>> {
    let x = tree.canonical(v).ok_or_else(|| domain(format!("vertex {v} is not in the tree")))?;
    if d > tree.dim() {
        return Err(domain(format!("block dimension {d} exceeds tree dimension {}", tree.dim())));
    }
    let mut out = Vec::new();
    for e in (d..tree.dim()).rev() {
        let lo = x & !((1usize << (e + 1)) - 1);
        let other = if x >> e & 1 == 1 { lo } else { lo | 1 << e };
        out.push((tree.vertex(other), e));
    }
    Ok(out)
}

/// Relay along the decreasing-label chain to `s`, then binomial broadcast
/// from `s`. Accepts `AB_k` with or without its universal vertex; with it,
/// the universal vertex is picked up by an idle caller.
pub fn scheme_ab(g: &LabeledGraph, origin: usize) -> Result<Schedule> {
    let labels = g.dist_label.as_ref().ok_or_else(|| domain("scheme ab needs distance labels"))?;
    let n = g.n();
    let (k, with_t) = match n {
        0 => return Err(domain("empty graph is not an AB_k")),
        _ if n.is_power_of_two() => (n.trailing_zeros(), false),
        _ if (n - 1).is_power_of_two() => ((n - 1).trailing_zeros(), true),
        _ => return Err(domain(format!("{n} vertices is not an AB_k"))),
    };
    let (ab, tree) = accelerated_binomial(k);
    let core_n = 1usize << k;
    let keep: Vec<usize> = (0..n).collect();
    let (expect, _) = ab.graph.induced(&keep);
    if expect != g.graph {
        return Err(domain("graph is not an AB_k"));
    }
    if origin >= n {
        return Err(domain(format!("origin {origin} out of range")));
    }
    let s = ab.role(Role::S).expect("AB has s");
    let t = ab.role(Role::T).expect("AB has t");
    let label = |v: usize| labels.get(&v).copied();
    let start = if with_t && origin == t { s } else { origin };
    let mut path = vec![origin];
    if start != origin {
        path.push(start);
    }
    let mut cur = start;
    while cur != s {
        let l = label(cur).ok_or_else(|| domain(format!("vertex {cur} has no label")))?;
        let next = g
            .graph
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w < core_n && label(w) == Some(l.wrapping_sub(1)))
            .ok_or_else(|| domain(format!("label chain breaks at vertex {cur}")))?;
        path.push(next);
        cur = next;
    }
    let children = tree_broadcast_order(&tree.edges(), s);
    let targets: Vec<usize> = (0..n).collect();
    Ok(simulate(&g.graph, origin, &relay_then_broadcast(&path, &children), &targets))
}
