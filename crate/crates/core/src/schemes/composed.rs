use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{domain, Result};
use crate::families::{
    binomial_sp, ceil_log2, composed_dim, composed_range, extended_binomial_with_map, planar_broadcast_with_map,
    relaxed_sp_with_tree, Family,
};
use crate::graph::{shortest_path_within, Graph, LabeledGraph};
use crate::tree::RootedTree;

use super::binomial::relay_then_broadcast;
use super::{extend_unique, simulate, tree_broadcast_order, Schedule};

/// A `B_k`, `EB_k` or `PB_k` recognised by rebuilding the canonical
/// instance. `t2` lives in untrimmed ids; `live` maps them to final ids.
struct Composite {
    graph: Graph,
    s: usize,
    t: usize,
    t1: RootedTree,
    t2: Option<RootedTree>,
    live: Vec<Option<usize>>,
    d: u32,
}

/// Binomial piece (or block) that survived trimming, with a spanning tree.
struct Piece {
    root: usize,
    dim: u32,
    members: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Composite {
    fn identify(g: &LabeledGraph) -> Result<Composite> {
        let n = g.n();
        if n >= 2 && (n - 1).is_power_of_two() {
            let k = (n - 1).trailing_zeros();
            let (b, t1) = binomial_sp(k);
            if b.graph == g.graph {
                return Ok(Composite {
                    graph: b.graph,
                    s: 0,
                    t: 1 << k,
                    t1,
                    t2: None,
                    live: (0..n).map(Some).collect(),
                    d: k / 2,
                });
            }
        }
        let k = ceil_log2(n.max(2));
        for family in [Family::Eb, Family::Pb] {
            if k < family.min_k() {
                continue;
            }
            let (lo, hi) = composed_range(family, k);
            if n < lo || n > hi {
                continue;
            }
            let (built, live) = match family {
                Family::Eb => extended_binomial_with_map(k, Some(n))?,
                _ => planar_broadcast_with_map(k, Some(n))?,
            };
            if built.graph != g.graph {
                continue;
            }
            let d = composed_dim(family, k);
            let n1 = (1usize << (k - 1)) + 1;
            let t2_members: Vec<usize> = std::iter::once(0).chain((1..1usize << d).map(|x| n1 + x - 1)).collect();
            return Ok(Composite {
                graph: built.graph,
                s: 0,
                t: 1 << (k - 1),
                t1: RootedTree::identity(k - 1, 0),
                t2: Some(RootedTree::new(d, t2_members)),
                live,
                d,
            });
        }
        Err(domain("graph is not a B_k, EB_k or PB_k"))
    }

    fn in_t2(&self, v: usize) -> bool {
        self.t2.as_ref().is_some_and(|t2| t2.members().iter().any(|&u| u != t2.root() && self.live[u] == Some(v)))
    }

    /// The surviving part of the `BT_dim` block of `tree` rooted at `root`
    /// (a vertex of `tree`'s id space).
    fn piece(&self, tree: &RootedTree, root: usize, dim: u32) -> Result<Option<Piece>> {
        let (_, block) = tree.block(root, dim).expect("root is in the tree");
        let inside: BTreeSet<usize> = block.iter().copied().collect();
        let members: Vec<usize> = block.iter().filter_map(|&v| self.live[v]).collect();
        if members.is_empty() {
            return Ok(None);
        }
        let root = self.live[root].ok_or_else(|| domain("trimming removed a piece root but kept its piece"))?;
        let mut edges: Vec<(usize, usize)> = tree
            .edges()
            .into_iter()
            .filter(|(a, b)| inside.contains(a) && inside.contains(b))
            .filter_map(|(a, b)| Some((self.live[a]?, self.live[b]?)))
            .collect();
        if edges.len() + 1 != members.len() {
            edges = bfs_tree(&self.graph, root, &members);
        }
        Ok(Some(Piece { root, dim, members, edges }))
    }

    /// Relay from `v` to the nearer of the block's two degree-`dim` vertices
    /// (shortest path inside the block, shortcuts included), then a binomial
    /// broadcast from there over the block's spanning tree.
    fn block_lists(&self, tree: &RootedTree, block: &Piece, v: usize) -> HashMap<usize, Vec<usize>> {
        let inside: BTreeSet<usize> = block.members.iter().copied().collect();
        let mut roots = vec![block.root];
        if block.dim >= 1 {
            let base = tree.canonical(self.orig(tree, block.root)).expect("root in tree");
            roots.extend(self.live[tree.vertex(base + (1 << (block.dim - 1)))]);
        }
        let (root, path) = roots
            .into_iter()
            .filter_map(|r| Some((r, shortest_path_within(&self.graph, v, r, |w| inside.contains(&w))?)))
            .min_by_key(|(_, p)| p.len())
            .expect("block is connected");
        relay_then_broadcast(&path, &tree_broadcast_order(&block.edges, root))
    }

    /// Id of final vertex `v` in `tree`'s id space.
    fn orig(&self, tree: &RootedTree, v: usize) -> usize {
        tree.members().iter().copied().find(|&u| self.live[u] == Some(v)).expect("vertex belongs to the tree")
    }
}

fn bfs_tree(g: &Graph, root: usize, members: &[usize]) -> Vec<(usize, usize)> {
    let allowed: BTreeSet<usize> = members.iter().copied().collect();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if allowed.contains(&w) && seen.insert(w) {
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    edges
}

/// Broadcast on `B_k`, `EB_k` and `PB_k` (trimmed instances included).
///
/// The originator `v` calls `t` first (if `v = t`, `t` calls `s` and `s`
/// takes the part of `v`). From round 2, `v` covers its enclosing block
/// while `t` calls the roots of the complementary binomial pieces, largest
/// first, and each piece root broadcasts inside its piece.
pub fn scheme_composed(g: &LabeledGraph, origin: usize) -> Result<Schedule> {
    let c = Composite::identify(g)?;
    let n = c.graph.n();
    if origin >= n {
        return Err(domain(format!("origin {origin} out of range")));
    }
    let v = if origin == c.t { c.s } else { origin };
    let mut lists: HashMap<usize, Vec<usize>> = HashMap::new();
    lists.insert(v, vec![]);
    lists.insert(c.t, if origin == c.t { vec![c.s] } else { vec![] });
    if origin != c.t {
        lists.get_mut(&v).unwrap().push(c.t);
    }

    let mut pieces: Vec<Piece> = Vec::new();
    let block;
    let block_tree;
    if c.in_t2(v) {
        let t2 = c.t2.as_ref().unwrap();
        block = c.piece(t2, t2.root(), t2.dim())?.expect("s survives");
        block_tree = t2;
        for j in (0..c.t1.dim()).rev() {
            pieces.extend(c.piece(&c.t1, c.t1.vertex(1 << j), j)?);
        }
    } else {
        let (root, _) = c.t1.block(v, c.d).expect("v is in the first tree");
        block = c.piece(&c.t1, root, c.d)?.expect("block of a live vertex");
        block_tree = &c.t1;
        for (r, dim) in super::complement_decomposition(&c.t1, v, c.d)? {
            pieces.extend(c.piece(&c.t1, r, dim)?);
        }
        if let Some(t2) = &c.t2 {
            for j in (0..t2.dim()).rev() {
                pieces.extend(c.piece(t2, t2.vertex(1 << j), j)?);
            }
        }
    }
    pieces.sort_by_key(|p| (Reverse(p.dim), p.root));
    extend_unique(lists.get_mut(&c.t).unwrap(), pieces.iter().map(|p| p.root));
    for p in &pieces {
        for (u, ch) in tree_broadcast_order(&p.edges, p.root) {
            extend_unique(lists.entry(u).or_default(), ch);
        }
    }
    debug_assert!(block.members.contains(&v));
    for (u, l) in c.block_lists(block_tree, &block, v) {
        extend_unique(lists.entry(u).or_default(), l);
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(simulate(&c.graph, origin, &lists, &all))
}

/// Broadcast on the relaxed SP graph: the originator calls the universal
/// root `t`, which then runs the binomial scheme over the surviving tree.
pub fn scheme_relaxed(g: &LabeledGraph, origin: usize) -> Result<Schedule> {
    let n = g.n();
    let (built, tree, kept) = relaxed_sp_with_tree(n)?;
    if built.graph != g.graph {
        return Err(domain("graph is not a relaxed SP graph"));
    }
    if origin >= n {
        return Err(domain(format!("origin {origin} out of range")));
    }
    let id: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let edges: Vec<(usize, usize)> =
        tree.edges().into_iter().filter_map(|(p, c)| Some((*id.get(&p)?, *id.get(&c)?))).collect();
    let t = id[&tree.root()];
    let mut lists = HashMap::new();
    if origin != t {
        lists.insert(origin, vec![t]);
    }
    for (u, ch) in tree_broadcast_order(&edges, t) {
        extend_unique(lists.entry(u).or_default(), ch);
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(simulate(&built.graph, origin, &lists, &all))
}
