//! Deterministic constructors for the broadcast graph families.
//!
//! | tag    | family                         | vertices                      |
//! |--------|--------------------------------|-------------------------------|
//! | `bt`   | binomial tree `BT_k`           | `2^k`                         |
//! | `mb`   | mirrored binomial `MB_k`       | `2^k`                         |
//! | `b`    | binomial SP `B_k`              | `2^k + 1`                     |
//! | `eb`   | extended binomial `EB_k`       | `2^(k-1) + 2^floor(k/2)`      |
//! | `rb`   | relaxed SP graph on `n`        | `n`                           |
//! | `ab`   | accelerated binomial `AB_k`    | `2^k + 1`                     |
//! | `pb`   | planar broadcast `PB_k`        | `2^(k-1) + 2^(floor(3k/4)-1)` |
//! | `k3sp` | random SP graph grown from K_3 | `3 + #series steps`           |

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::{simplify, Graph, LabeledGraph, Multigraph, Role};
use crate::tree::RootedTree;
use crate::verify::planarity_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bt,
    Mb,
    B,
    Eb,
    Rb,
    Ab,
    Pb,
    K3sp,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::Bt, Family::Mb, Family::B, Family::Eb, Family::Rb, Family::Ab, Family::Pb, Family::K3sp];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Bt => "bt",
            Family::Mb => "mb",
            Family::B => "b",
            Family::Eb => "eb",
            Family::Rb => "rb",
            Family::Ab => "ab",
            Family::Pb => "pb",
            Family::K3sp => "k3sp",
        }
    }

    /// Smallest valid dimension parameter.
    pub fn min_k(self) -> u32 {
        match self {
            Family::Mb | Family::Eb | Family::Pb => 2,
            Family::Rb => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == s).ok_or_else(|| domain(format!("unknown family '{s}'")))
    }
}

/// One family instance request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub fn new(family: Family, k: u32) -> FamilySpec {
        FamilySpec { family, k, n: None, seed: None }
    }

    pub fn with_n(mut self, n: usize) -> FamilySpec {
        self.n = Some(n);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> FamilySpec {
        self.seed = Some(seed);
        self
    }

    /// Vertex count the instance will have.
    pub fn vertex_count(&self) -> Result<usize> {
        self.validate()?;
        let k = self.k;
        Ok(match self.family {
            Family::Bt | Family::Mb => 1 << k,
            Family::B | Family::Ab => (1 << k) + 1,
            Family::Eb | Family::Pb => self.n.unwrap_or_else(|| composed_size(self.family, k)),
            Family::Rb => self.n.unwrap_or(1 << k),
            Family::K3sp => self.build()?.n(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        if k < self.family.min_k() {
            return Err(domain(format!("{} needs k >= {}, got {k}", self.family, self.family.min_k())));
        }
        if k > 24 && self.family != Family::K3sp {
            return Err(domain(format!("k = {k} is too large")));
        }
        match (self.family, self.n) {
            (Family::Eb | Family::Pb, Some(n)) => {
                let (lo, hi) = composed_range(self.family, k);
                if n < lo || n > hi {
                    return Err(domain(format!("{} with k = {k} needs {lo} <= n <= {hi}, got {n}", self.family)));
                }
            }
            (Family::Rb, Some(n)) if n < 2 => {
                return Err(domain(format!("rb needs n >= 2, got {n}")));
            }
            (Family::Rb | Family::Eb | Family::Pb | Family::K3sp, _) | (_, None) => {}
            (f, Some(_)) => return Err(domain(format!("{f} does not take n"))),
        }
        Ok(())
    }

    pub fn build(&self) -> Result<LabeledGraph> {
        self.validate()?;
        let k = self.k;
        match self.family {
            Family::Bt => Ok(binomial_tree(k).0),
            Family::Mb => mirrored_binomial(k),
            Family::B => Ok(binomial_sp(k).0),
            Family::Eb => extended_binomial(k, self.n),
            Family::Rb => relaxed_sp(self.n.unwrap_or(1 << k)),
            Family::Ab => Ok(accelerated_binomial(k).0),
            Family::Pb => planar_broadcast(k, self.n),
            Family::K3sp => Ok(k3_random_sp(k as usize, self.seed.unwrap_or(0)).0),
        }
    }
}

/// Second-part dimension of the composed families.
pub fn composed_dim(family: Family, k: u32) -> u32 {
    match family {
        Family::Eb => k / 2,
        Family::Pb => (3 * k / 4).saturating_sub(1),
        _ => panic!("{family} is not a composed family"),
    }
}

pub fn composed_size(family: Family, k: u32) -> usize {
    (1 << (k - 1)) + (1 << composed_dim(family, k))
}

/// Inclusive range of admissible vertex counts for EB/PB with dimension k.
pub fn composed_range(family: Family, k: u32) -> (usize, usize) {
    ((1 << (k - 1)) + 1, composed_size(family, k))
}

/// `BT_k` on vertices `0..2^k`, root `0` (role `s`).
pub fn binomial_tree(k: u32) -> (LabeledGraph, RootedTree) {
    let tree = RootedTree::identity(k, 0);
    let g = Graph::new(tree.len(), &tree.edges()).expect("tree edges are simple");
    let mut lg = LabeledGraph::plain(g);
    lg.roles.insert(Role::S, 0);
    (lg, tree)
}

/// Recursive description of `MB_k`: two binomial trees (upper, rooted at
/// `s`/`s'`, and lower, rooted at `t`/`t'`) joined by a leaf matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbLayout {
    pub k: u32,
    pub n: usize,
    pub s: usize,
    pub s_prime: usize,
    pub t: usize,
    pub t_prime: usize,
    pub upper: Vec<(usize, usize)>,
    pub lower: Vec<(usize, usize)>,
    pub matching: Vec<(usize, usize)>,
}

impl MbLayout {
    pub fn new(k: u32) -> Result<MbLayout> {
        if k < 2 {
            return Err(domain(format!("MB_k needs k >= 2, got {k}")));
        }
        if k == 2 {
            return Ok(MbLayout {
                k,
                n: 4,
                s: 0,
                s_prime: 1,
                t_prime: 2,
                t: 3,
                upper: vec![(0, 1)],
                lower: vec![(2, 3)],
                matching: vec![(1, 2)],
            });
        }
        let right = MbLayout::new(k - 1)?;
        let half = right.n;
        let shift = |e: &[(usize, usize)]| e.iter().map(|&(a, b)| (a + half, b + half)).collect::<Vec<_>>();
        let mut upper = right.upper.clone();
        upper.extend(shift(&right.upper));
        upper.push((right.s, right.s + half));
        let mut lower = right.lower.clone();
        lower.extend(shift(&right.lower));
        lower.push((right.t, right.t + half));
        let mut matching = right.matching.clone();
        matching.extend(shift(&right.matching));
        Ok(MbLayout {
            k,
            n: 2 * half,
            s: right.s,
            s_prime: right.s + half,
            t: right.t + half,
            t_prime: right.t,
            upper,
            lower,
            matching,
        })
    }

    /// True for vertices of the right copy (the one containing `s` and `t'`).
    pub fn is_right(&self, v: usize) -> bool {
        v < self.n / 2
    }

    pub fn graph(&self) -> Graph {
        let mut edges = self.upper.clone();
        edges.extend_from_slice(&self.lower);
        edges.extend_from_slice(&self.matching);
        Graph::new(self.n, &edges).expect("MB edges are simple")
    }
}

pub fn mirrored_binomial(k: u32) -> Result<LabeledGraph> {
    let layout = MbLayout::new(k)?;
    let mut lg = LabeledGraph::plain(layout.graph());
    lg.roles.insert(Role::S, layout.s);
    lg.roles.insert(Role::SPrime, layout.s_prime);
    lg.roles.insert(Role::T, layout.t);
    lg.roles.insert(Role::TPrime, layout.t_prime);
    Ok(lg)
}

/// `B_k`: `BT_k` on `0..2^k` rooted at `s = 0`, plus `t = 2^k` adjacent
/// to every tree vertex.
pub fn binomial_sp(k: u32) -> (LabeledGraph, RootedTree) {
    let tree = RootedTree::identity(k, 0);
    let t = tree.len();
    let mut edges = tree.edges();
    edges.extend((0..t).map(|v| (v, t)));
    let g = Graph::new(t + 1, &edges).expect("B_k edges are simple");
    (LabeledGraph::with_terminals(g, 0, t), tree)
}

/// Parallel composition: `g1` keeps its ids, `g2`'s terminals are merged
/// into `g1`'s, and the remaining `g2` vertices are appended in id order.
pub fn compose_parallel(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<LabeledGraph> {
    let terminals = |g: &LabeledGraph, which: &str| -> Result<(usize, usize)> {
        match (g.role(Role::S), g.role(Role::T)) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => Err(domain(format!("{which} operand lacks s/t terminal roles"))),
        }
    };
    let (s1, t1) = terminals(g1, "first")?;
    let (s2, t2) = terminals(g2, "second")?;
    let map = composition_map(g1.n(), g2.n(), s1, t1, s2, t2);

    let mut mg = Multigraph::from_graph(&g1.graph);
    for _ in g1.n()..g1.n() + g2.n() - 2 {
        mg.add_vertex();
    }
    for &(u, v) in g2.graph.edges() {
        mg.add_edge(map[u], map[v])?;
    }
    let mut out = LabeledGraph::with_terminals(simplify(&mg), s1, t1);
    if let (Some(l1), Some(l2)) = (&g1.dist_label, &g2.dist_label) {
        let mut labels = l1.clone();
        for (&v, &l) in l2 {
            labels.entry(map[v]).or_insert(l);
        }
        out.dist_label = Some(labels);
    }
    out.shortcuts = g1.shortcuts.clone();
    for &(u, v) in &g2.shortcuts {
        let (a, b) = (map[u], map[v]);
        out.shortcuts.insert((a.min(b), a.max(b)));
    }
    Ok(out)
}

/// Id map applied to the second operand of [`compose_parallel`].
pub fn composition_map(n1: usize, n2: usize, s1: usize, t1: usize, s2: usize, t2: usize) -> Vec<usize> {
    let mut map = vec![0; n2];
    let mut next = n1;
    for (v, slot) in map.iter_mut().enumerate() {
        *slot = if v == s2 {
            s1
        } else if v == t2 {
            t1
        } else {
            next += 1;
            next - 1
        };
    }
    map
}

/// `EB_k = B_{k-1} ∥ B_{floor(k/2)}`, optionally trimmed to `n` vertices.
pub fn extended_binomial(k: u32, n: Option<usize>) -> Result<LabeledGraph> {
    Ok(extended_binomial_with_map(k, n)?.0)
}

/// As [`extended_binomial`], also returning the untrimmed→trimmed id map.
pub fn extended_binomial_with_map(k: u32, n: Option<usize>) -> Result<(LabeledGraph, Vec<Option<usize>>)> {
    FamilySpec { family: Family::Eb, k, n, seed: None }.validate()?;
    let g1 = binomial_sp(k - 1).0;
    let g2 = binomial_sp(composed_dim(Family::Eb, k)).0;
    let full = compose_parallel(&g1, &g2)?;
    trim_second_part(full, g1.n(), n)
}

fn trim_second_part(
    full: LabeledGraph,
    first_n: usize,
    n: Option<usize>,
) -> Result<(LabeledGraph, Vec<Option<usize>>)> {
    let total = full.n();
    let target = n.unwrap_or(total);
    let zone: BTreeSet<usize> = (first_n..total).collect();
    trim_leaves_with_map(&full, total - target, &zone)
}

/// `BT_k` rooted at `t` with its subroots chained, `2^k - n` leaves removed
/// (highest ids first) and `t` joined to every vertex; `k = ceil(log n)`.
///
/// Ids follow the canonical tree labelling (`t = 0`, `s = 1`) and are
/// compacted after leaf removal.
pub fn relaxed_sp(n: usize) -> Result<LabeledGraph> {
    Ok(relaxed_sp_with_tree(n)?.0)
}

/// As [`relaxed_sp`], also returning the surviving canonical tree indices
/// (entry `i` is the canonical index of vertex `i`).
pub fn relaxed_sp_with_tree(n: usize) -> Result<(LabeledGraph, RootedTree, Vec<usize>)> {
    if n < 2 {
        return Err(domain(format!("relaxed SP graph needs n >= 2, got {n}")));
    }
    let k = ceil_log2(n);
    let tree = RootedTree::identity(k, 0);
    let full = 1usize << k;
    let removed: BTreeSet<usize> = (0..full).rev().step_by(2).take(full - n).collect();
    let kept: Vec<usize> = (0..full).filter(|v| !removed.contains(v)).collect();
    let mut id = vec![usize::MAX; full];
    for (i, &v) in kept.iter().enumerate() {
        id[v] = i;
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        if id[a] != usize::MAX && id[b] != usize::MAX {
            edges.insert((id[a].min(id[b]), id[a].max(id[b])));
        }
    };
    for (p, c) in tree.edges() {
        add(p, c);
    }
    // subroot r_i has canonical index 2^(i-1)
    for i in 2..=k {
        add(1 << (i - 1), 1 << (i - 2));
    }
    for v in 1..full {
        add(0, v);
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let g = Graph::new(n, &edges)?;
    Ok((LabeledGraph::with_terminals(g, 1, 0), tree, kept))
}

/// `AB_k`: `B_k` plus shortcut edges.
///
/// Doubling steps are grouped in chunks of three (steps 1-3, 4-6, ...). A
/// vertex created at step `i` lies in chunk `ceil(i/3)`; it is joined to the
/// ancestor obtained by clearing its whole chunk, i.e. the root of the
/// small `AB_j` copy it belongs to, and is labelled one more than that
/// ancestor. Labels therefore count the non-zero chunks of a vertex, and the
/// ancestor is the deepest one labelled `ceil(i/3) - 1` whenever such an
/// ancestor exists.
pub fn accelerated_binomial(k: u32) -> (LabeledGraph, RootedTree) {
    let (b, tree) = binomial_sp(k);
    let t = tree.len();
    let mut labels = vec![0usize; t];
    let mut shortcuts = BTreeSet::new();
    for step in 1..=k {
        let chunk = step.div_ceil(3);
        // bit position of step j is k - j
        let hi = k - (3 * chunk - 2);
        let lo = k - (3 * chunk).min(k);
        let mask = ((1usize << (hi + 1)) - 1) & !((1usize << lo) - 1);
        for x in (1usize << (k - step)..t).step_by(1 << (k - step + 1)) {
            let target = x & !mask;
            if Some(target) != tree.parent(x) {
                shortcuts.insert((target.min(x), target.max(x)));
            }
            labels[x] = labels[target] + 1;
        }
    }
    let mut edges = b.graph.edges().to_vec();
    edges.extend(shortcuts.iter().copied());
    let g = Graph::new(t + 1, &edges).expect("shortcuts join non-adjacent pairs");
    let mut lg = LabeledGraph::with_terminals(g, 0, t);
    lg.dist_label = Some(labels.into_iter().enumerate().collect());
    lg.shortcuts = shortcuts;
    lg.rotation = planarity_check(&lg.graph).ok();
    (lg, tree)
}

/// `AB_k` without its universal vertex `t`: the binomial tree plus
/// shortcuts, with `s = 0` and the distance labels kept.
pub fn accelerated_binomial_core(k: u32) -> LabeledGraph {
    let (ab, _) = accelerated_binomial(k);
    let keep: Vec<usize> = (0..1usize << k).collect();
    let (core, _) = ab.graph.induced(&keep);
    let mut lg = LabeledGraph::plain(core);
    lg.roles.insert(Role::S, 0);
    lg.dist_label = ab.dist_label;
    lg.shortcuts = ab.shortcuts;
    lg
}

/// `PB_k = AB_{k-1} ∥ AB_{floor(3k/4) - 1}`, optionally trimmed to `n`.
pub fn planar_broadcast(k: u32, n: Option<usize>) -> Result<LabeledGraph> {
    Ok(planar_broadcast_with_map(k, n)?.0)
}

pub fn planar_broadcast_with_map(k: u32, n: Option<usize>) -> Result<(LabeledGraph, Vec<Option<usize>>)> {
    FamilySpec { family: Family::Pb, k, n, seed: None }.validate()?;
    let g1 = accelerated_binomial(k - 1).0;
    let g2 = accelerated_binomial(composed_dim(Family::Pb, k)).0;
    let full = compose_parallel(&g1, &g2)?;
    let (mut out, map) = trim_second_part(full, g1.n(), n)?;
    out.rotation = planarity_check(&out.graph).ok();
    Ok((out, map))
}

/// One extension applied while growing a graph from `K_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum SpOp {
    /// Subdivide one copy of `edge` with the new vertex `vertex`.
    Series { edge: (usize, usize), vertex: usize },
    /// Add another copy of `edge`.
    Parallel { edge: (usize, usize) },
}

/// Construction record of a [`k3_random_sp`] instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionLog {
    pub seed: u64,
    /// The triangle the construction starts from.
    pub base: [usize; 3],
    pub ops: Vec<SpOp>,
}

/// Grows a multigraph from `K_3` with `steps` random extensions (series or
/// parallel with probability 1/2, edge copy chosen uniformly) and returns
/// its simplification. Terminals are `s = 0`, `t = 1`.
pub fn k3_random_sp(steps: usize, seed: u64) -> (LabeledGraph, ConstructionLog) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mg = Multigraph::new(3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        mg.add_edge(u, v).expect("triangle");
    }
    let mut ops = Vec::with_capacity(steps);
    for _ in 0..steps {
        let series = rng.gen_bool(0.5);
        let copies = mg.edge_list();
        let (u, v) = copies[rng.gen_range(0..copies.len())];
        if series {
            mg.remove_edge(u, v);
            let w = mg.add_vertex();
            mg.add_edge(u, w).expect("fresh vertex");
            mg.add_edge(w, v).expect("fresh vertex");
            ops.push(SpOp::Series { edge: (u, v), vertex: w });
        } else {
            mg.add_edge(u, v).expect("existing edge");
            ops.push(SpOp::Parallel { edge: (u, v) });
        }
    }
    let lg = LabeledGraph::with_terminals(simplify(&mg), 0, 1);
    (lg, ConstructionLog { seed, base: [0, 1, 2], ops })
}

/// Removes `count` vertices of `zone`, deepest first by BFS distance from
/// `s` inside `zone ∪ {s}` (highest id breaks ties). Terminals are never
/// removed; ids are compacted preserving order.
pub fn trim_leaves(g: &LabeledGraph, count: usize, zone: &BTreeSet<usize>) -> Result<LabeledGraph> {
    Ok(trim_leaves_with_map(g, count, zone)?.0)
}

/// As [`trim_leaves`], also returning the old→new id map.
pub fn trim_leaves_with_map(
    g: &LabeledGraph,
    count: usize,
    zone: &BTreeSet<usize>,
) -> Result<(LabeledGraph, Vec<Option<usize>>)> {
    let protected: BTreeSet<usize> = [g.role(Role::S), g.role(Role::T)].into_iter().flatten().collect();
    let removable: Vec<usize> = zone.iter().copied().filter(|v| !protected.contains(v) && *v < g.n()).collect();
    if count > removable.len() {
        return Err(domain(format!("cannot trim {count} vertices, only {} removable", removable.len())));
    }
    if count == 0 {
        return Ok((g.clone(), (0..g.n()).map(Some).collect()));
    }

    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    if let Some(s) = g.role(Role::S) {
        let inside = |v: usize| zone.contains(&v) && !protected.contains(&v);
        let mut queue = VecDeque::from([(s, 0)]);
        let mut seen = BTreeSet::from([s]);
        while let Some((u, d)) = queue.pop_front() {
            for &w in g.graph.neighbors(u) {
                if inside(w) && seen.insert(w) {
                    depth.insert(w, d + 1);
                    queue.push_back((w, d + 1));
                }
            }
        }
    }
    let mut order = removable.clone();
    order.sort_by_key(|v| std::cmp::Reverse((depth.get(v).copied().unwrap_or(usize::MAX), *v)));
    let removed: BTreeSet<usize> = order.into_iter().take(count).collect();
    Ok(remove_vertices(g, &removed))
}

fn remove_vertices(g: &LabeledGraph, removed: &BTreeSet<usize>) -> (LabeledGraph, Vec<Option<usize>>) {
    let mut map = vec![None; g.n()];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if !removed.contains(&v) {
            *slot = Some(next);
            next += 1;
        }
    }
    let edges: Vec<_> = g.graph.edges().iter().filter_map(|&(u, v)| Some((map[u]?, map[v]?))).collect();
    let graph = Graph::new(next, &edges).expect("subgraph of a simple graph");
    let mut out = LabeledGraph::plain(graph);
    out.roles = g.roles.iter().filter_map(|(&r, &v)| Some((r, map[v]?))).collect();
    out.dist_label = g.dist_label.as_ref().map(|l| l.iter().filter_map(|(&v, &d)| Some((map[v]?, d))).collect());
    out.shortcuts = g.shortcuts.iter().filter_map(|&(u, v)| Some((map[u]?, map[v]?))).collect();
    (out, map)
}

pub fn ceil_log2(n: usize) -> u32 {
    assert!(n > 0);
    usize::BITS - (n - 1).leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_distances, is_biconnected, is_isomorphic, Distance};

    #[test]
    fn binomial_tree_counts() {
        let (g, t) = binomial_tree(0);
        assert_eq!(g.n(), 1);
        assert_eq!(t.dim(), 0);
        let (g, _) = binomial_tree(4);
        assert_eq!(g.n(), 16);
        assert_eq!(g.graph.degree(0), 4);
        assert_eq!(binomial_tree(3).0.graph.edge_count(), 7);
    }

    #[test]
    fn mb_small_cases() {
        let mb2 = mirrored_binomial(2).unwrap();
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(mb2.graph, p4);
        assert!(mirrored_binomial(1).is_err());
        let mb5 = mirrored_binomial(5).unwrap();
        assert_eq!(mb5.n(), 32);
        assert_eq!(mb5.graph.max_degree(), 4);
    }

    #[test]
    fn mb_distances() {
        for k in 2..=8 {
            let g = mirrored_binomial(k).unwrap();
            let d = bfs_distances(&g.graph, g.role(Role::S).unwrap());
            assert_eq!(d[g.role(Role::T).unwrap()], Distance::Hops(k as usize + 1));
            assert_eq!(d[g.role(Role::TPrime).unwrap()], Distance::Hops(k as usize));
            assert_eq!(d[g.role(Role::SPrime).unwrap()], Distance::Hops(1));
        }
    }

    #[test]
    fn binomial_sp_counts() {
        let (b0, _) = binomial_sp(0);
        assert_eq!(b0.graph.edges(), &[(0, 1)]);
        assert_eq!(binomial_sp(3).0.n(), 9);
        assert_eq!(binomial_sp(2).0.graph.edge_count(), 7);
    }

    #[test]
    fn parallel_composition_of_two_b1() {
        let b1 = binomial_sp(1).0;
        let c = compose_parallel(&b1, &b1).unwrap();
        // s=0, a=1, t=2, a'=3: edges 01 02 12 03 23
        assert_eq!(c.n(), 4);
        assert_eq!(c.graph.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        let edge = LabeledGraph::with_terminals(Graph::new(2, &[(0, 1)]).unwrap(), 0, 1);
        let b3 = binomial_sp(3).0;
        assert_eq!(compose_parallel(&b3, &edge).unwrap().graph, b3.graph);
        let no_roles = LabeledGraph::plain(Graph::new(2, &[(0, 1)]).unwrap());
        assert!(compose_parallel(&b3, &no_roles).is_err());
    }

    #[test]
    fn extended_binomial_sizes() {
        assert_eq!(extended_binomial(4, None).unwrap().n(), 12);
        assert_eq!(extended_binomial(2, None).unwrap().n(), 4);
        let trimmed = extended_binomial(4, Some(10)).unwrap();
        assert_eq!(trimmed.n(), 10);
        assert!(trimmed.role(Role::S).is_some() && trimmed.role(Role::T).is_some());
        assert!(trimmed.graph.is_connected());
        assert!(extended_binomial(4, Some(8)).is_err());
        assert!(extended_binomial(4, Some(13)).is_err());
    }

    #[test]
    fn relaxed_sp_shape() {
        let g = relaxed_sp(5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.graph.degree(g.role(Role::T).unwrap()), 4);
        let g16 = relaxed_sp(16).unwrap();
        assert_eq!(g16.graph.degree(0), 15);
        assert!(relaxed_sp(1).is_err());
    }

    #[test]
    fn accelerated_binomial_shortcuts() {
        let (ab1, _) = accelerated_binomial(1);
        assert_eq!(ab1.graph.edge_count(), 3);
        assert!(ab1.shortcuts.is_empty());
        assert_eq!(accelerated_binomial(2).0.shortcuts.len(), 1);
        assert_eq!(accelerated_binomial(3).0.shortcuts.len(), 4);
        let (ab6, _) = accelerated_binomial(6);
        assert_eq!(ab6.n(), 65);
        assert_eq!(ab6.dist_label.as_ref().unwrap().values().max(), Some(&2));
    }

    #[test]
    fn planar_broadcast_sizes() {
        assert_eq!(planar_broadcast(4, None).unwrap().n(), 12);
        assert_eq!(planar_broadcast(8, None).unwrap().n(), 160);
        assert_eq!(planar_broadcast(7, Some(70)).unwrap().n(), 70);
    }

    #[test]
    fn k3_random_sp_basics() {
        let (g, log) = k3_random_sp(0, 3);
        assert!(is_isomorphic(&g.graph, &Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap());
        assert!(log.ops.is_empty());
        let (g, _) = k3_random_sp(50, 7);
        assert!(is_biconnected(&g.graph).unwrap());
        for seed in 0..20 {
            assert!(k3_random_sp(30, seed).0.graph.min_degree() <= 2);
        }
        assert_eq!(k3_random_sp(40, 9), k3_random_sp(40, 9));
    }

    #[test]
    fn trim_contract() {
        let eb = extended_binomial(4, None).unwrap();
        let zone: BTreeSet<usize> = (9..12).collect();
        assert_eq!(trim_leaves(&eb, 2, &zone).unwrap().n(), 10);
        assert_eq!(trim_leaves(&eb, 0, &zone).unwrap(), eb);
        assert!(trim_leaves(&eb, 4, &zone).is_err());
    }

    #[test]
    fn family_spec_validation() {
        assert!(FamilySpec::new(Family::Mb, 1).build().is_err());
        assert!(FamilySpec::new(Family::Bt, 3).with_n(5).build().is_err());
        assert_eq!("pb".parse::<Family>().unwrap(), Family::Pb);
        assert!("zz".parse::<Family>().is_err());
        assert_eq!(FamilySpec::new(Family::Pb, 8).vertex_count().unwrap(), 160);
    }
}
