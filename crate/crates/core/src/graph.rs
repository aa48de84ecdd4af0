//! Simple graphs, multigraphs and role-labelled graphs.
//!
//! Vertices are dense ids `0..n`. A [`Graph`] keeps its edge list in
//! canonical form (`u < v`, lexicographically sorted) so that anything
//! derived from it, serialization in particular, is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::verify::RotationSystem;

/// Largest graph accepted by [`is_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a simple graph, rejecting self-loops, out-of-range endpoints
    /// and repeated pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph::from_canonical(n, canon))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Returns a copy with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Graph::new(self.n, &edges)
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in the
    /// order given. Returns the graph and the old→new id map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, BTreeMap<usize, usize>) {
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*map.get(&u)?, *map.get(&v)?)))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        (Graph::from_canonical(keep.len(), edges), map)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || bfs_distances(self, 0).iter().all(|d| d.is_reachable())
    }

    /// Maximum BFS distance from `v`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, v: usize) -> Option<usize> {
        bfs_distances(self, v).iter().map(|d| d.hops()).try_fold(0, |m, d| Some(m.max(d?)))
    }
}

/// Shortest-path hop count, or an explicit marker for unreachable vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Hops(usize),
    Unreachable,
}

impl Distance {
    pub fn hops(self) -> Option<usize> {
        match self {
            Distance::Hops(h) => Some(h),
            Distance::Unreachable => None,
        }
    }

    pub fn is_reachable(self) -> bool {
        matches!(self, Distance::Hops(_))
    }
}

pub fn bfs_distances(g: &Graph, src: usize) -> Vec<Distance> {
    let mut dist = vec![Distance::Unreachable; g.n()];
    let mut queue = VecDeque::new();
    dist[src] = Distance::Hops(0);
    queue.push_back((src, 0));
    while let Some((u, d)) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Hops(d + 1);
                queue.push_back((w, d + 1));
            }
        }
    }
    dist
}

/// Shortest path from `src` to `dst` choosing the lowest-id predecessor at
/// every layer. Returns the vertex list including both endpoints.
pub fn shortest_path(g: &Graph, src: usize, dst: usize) -> Option<Vec<usize>> {
    shortest_path_within(g, src, dst, |_| true)
}

/// As [`shortest_path`], restricted to vertices accepted by `allowed`.
pub fn shortest_path_within(g: &Graph, src: usize, dst: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    // BFS backwards from dst so that walking forward from src we can pick the
    // lowest-id neighbour one step closer.
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    dist[dst] = 0;
    queue.push_back(dst);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX && allowed(w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[src] == usize::MAX {
        return None;
    }
    let mut path = vec![src];
    let mut cur = src;
    while cur != dst {
        cur = *g.neighbors(cur).iter().find(|&&w| dist[w] != usize::MAX && dist[w] + 1 == dist[cur])?;
        path.push(cur);
    }
    Some(path)
}

/// Articulation vertices of `g` (iterative low-link DFS), sorted.
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(u).get(*idx) {
                *idx += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if w != parent {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if parent != root && low[u] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// True iff `g` is connected and has no articulation vertex.
pub fn is_biconnected(g: &Graph) -> Result<bool> {
    if g.n() < 3 {
        return Err(domain(format!("2-connectivity needs at least 3 vertices, got {}", g.n())));
    }
    Ok(g.is_connected() && articulation_points(g).is_empty())
}

/// Backtracking isomorphism test. Both graphs must have at most
/// [`ISOMORPHISM_CAP`] vertices.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n() > ISOMORPHISM_CAP || g2.n() > ISOMORPHISM_CAP {
        return Err(Error::Capability(format!("isomorphism search is capped at {ISOMORPHISM_CAP} vertices")));
    }
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }

    // Map g1 vertices in BFS order (high degree first) so that most
    // candidates are constrained by an already mapped neighbour.
    let mut order = Vec::with_capacity(g1.n());
    let mut seen = vec![false; g1.n()];
    let mut starts: Vec<usize> = (0..g1.n()).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(g1.degree(v)));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g1.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    fn extend(depth: usize, order: &[usize], g1: &Graph, g2: &Graph, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for cand in 0..g2.n() {
            if used[cand] || g2.degree(cand) != g1.degree(u) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| g1.has_edge(u, p) == g2.has_edge(cand, map[p]));
            if !consistent {
                continue;
            }
            map[u] = cand;
            used[cand] = true;
            if extend(depth + 1, order, g1, g2, map, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }

    let mut map = vec![usize::MAX; g1.n()];
    let mut used = vec![false; g2.n()];
    Ok(extend(0, &order, g1, g2, &mut map, &mut used))
}

/// Undirected multigraph: a multiset of vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Multigraph {
        Multigraph { n, edges: BTreeMap::new() }
    }

    pub fn from_graph(g: &Graph) -> Multigraph {
        let mut mg = Multigraph::new(g.n());
        for &(u, v) in g.edges() {
            mg.add_edge(u, v).expect("graph edges are valid");
        }
        mg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::OutOfRange(u, v, self.n));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        *self.edges.entry((u.min(v), u.max(v))).or_default() += 1;
        Ok(())
    }

    /// Removes one copy of the pair, returning whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        match self.edges.get_mut(&key) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&key);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// Distinct pairs with their multiplicities, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&p, &m)| (p, m))
    }

    /// Every edge copy, expanded; used for uniform edge sampling.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().flat_map(|(&p, &m)| std::iter::repeat_n(p, m)).collect()
    }
}

/// Collapses every multi-edge to a single edge.
pub fn simplify(mg: &Multigraph) -> Graph {
    Graph::from_canonical(mg.n, mg.edges.keys().copied().collect())
}

/// Distinguished vertex roles carried beside the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    S,
    T,
    SPrime,
    TPrime,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::S => "s",
            Role::T => "t",
            Role::SPrime => "s_prime",
            Role::TPrime => "t_prime",
        }
    }
}

/// A graph together with terminal roles, optional distance labels and an
/// optional rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub roles: BTreeMap<Role, usize>,
    pub dist_label: Option<BTreeMap<usize, usize>>,
    pub rotation: Option<RotationSystem>,
    /// Edges added as shortcuts (export styling only, not serialized).
    pub shortcuts: BTreeSet<(usize, usize)>,
}

impl LabeledGraph {
    pub fn plain(graph: Graph) -> LabeledGraph {
        LabeledGraph { graph, roles: BTreeMap::new(), dist_label: None, rotation: None, shortcuts: BTreeSet::new() }
    }

    pub fn with_terminals(graph: Graph, s: usize, t: usize) -> LabeledGraph {
        let mut lg = LabeledGraph::plain(graph);
        lg.roles.insert(Role::S, s);
        lg.roles.insert(Role::T, t);
        lg
    }

    pub fn role(&self, role: Role) -> Option<usize> {
        self.roles.get(&role).copied()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Checks the role invariants: ids in range and one vertex per role.
    pub fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (role, &v) in &self.roles {
            if v >= self.n() {
                return Err(domain(format!("role {} on vertex {v} out of range", role.name())));
            }
            if !seen.insert(v) {
                return Err(domain(format!("vertex {v} carries more than one terminal role")));
            }
        }
        if let Some(labels) = &self.dist_label {
            if let Some(&v) = labels.keys().find(|&&v| v >= self.n()) {
                return Err(domain(format!("distance label on vertex {v} out of range")));
            }
        }
        Ok(())
    }
}
