//! Planarity by path addition and an independent embedding check.
//!
//! [`planarity_check`] embeds each biconnected block with the
//! Demoucron–Malgrange–Pertuiset face/fragment procedure, turns the faces
//! into a rotation system and concatenates block rotations at cut vertices.
//! [`verify_embedding`] does not trust any of that: it re-traverses faces of
//! the returned rotation and checks Euler's formula per component.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::Graph;

/// Cyclic neighbour order around every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem(BTreeMap<usize, Vec<usize>>);

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> RotationSystem {
        RotationSystem(order.into_iter().enumerate().collect())
    }

    pub fn from_map(map: BTreeMap<usize, Vec<usize>>) -> RotationSystem {
        RotationSystem(map)
    }

    pub fn order(&self, v: usize) -> &[usize] {
        self.0.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn as_map(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.0
    }
}

/// Returned by [`planarity_check`] on non-planar input: the edges of the
/// biconnected block in which the embedding got stuck.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPlanar {
    pub block: Vec<(usize, usize)>,
}

impl fmt::Display for NonPlanar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "non-planar block with {} edges", self.block.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    /// Sum of per-component genera; zero iff Euler holds everywhere.
    pub genus: usize,
    pub planar: bool,
}

/// Traverses all faces of `rot` (the dart after `u → v` is
/// `v → successor of u in rot(v)`) and checks `V − E + F = 2` per component.
pub fn verify_embedding(g: &Graph, rot: &RotationSystem) -> Result<EmbeddingReport> {
    let n = g.n();
    if let Some(&v) = rot.as_map().keys().find(|&&v| v >= n) {
        return Err(domain(format!("rotation mentions vertex {v} outside the graph")));
    }
    // position of w in rot(v)
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..n {
        let order = rot.order(v);
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            return Err(domain(format!("rotation at vertex {v} is not a permutation of its neighbours")));
        }
        for (i, &w) in order.iter().enumerate() {
            pos.insert((v, w), i);
        }
    }

    let comp = components(g);
    let comp_count = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut faces = vec![0usize; comp_count];
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for &(a, b) in g.edges() {
        for start in [(a, b), (b, a)] {
            if seen.contains(&start) {
                continue;
            }
            faces[comp[start.0]] += 1;
            let mut dart = start;
            while seen.insert(dart) {
                let (u, v) = dart;
                let order = rot.order(v);
                let next = order[(pos[&(v, u)] + 1) % order.len()];
                dart = (v, next);
            }
        }
    }
    let mut verts = vec![0i64; comp_count];
    let mut edges = vec![0i64; comp_count];
    for &c in &comp {
        verts[c] += 1;
    }
    for &(u, _) in g.edges() {
        edges[comp[u]] += 1;
    }
    let mut genus = 0;
    for c in 0..comp_count {
        // an isolated vertex bounds a single face
        let f = if edges[c] == 0 { 1 } else { faces[c] as i64 };
        faces[c] = f as usize;
        let chi = verts[c] - edges[c] + f;
        genus += ((2 - chi) / 2) as usize;
    }
    Ok(EmbeddingReport {
        vertices: n,
        edges: g.edge_count(),
        faces: faces.iter().sum(),
        components: comp_count,
        genus,
        planar: genus == 0,
    })
}

fn components(g: &Graph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut next = 0;
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Returns a rotation system certified planar by [`verify_embedding`], or
/// the offending block.
pub fn planarity_check(g: &Graph) -> std::result::Result<RotationSystem, NonPlanar> {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return Err(NonPlanar { block: g.edges().to_vec() });
    }
    let mut rotation = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let (local, _) = g.induced(&verts);
        // the induced subgraph of a block is the block itself
        debug_assert_eq!(local.edge_count(), block.len());
        let faces = embed_biconnected(&local).ok_or_else(|| NonPlanar { block: block.clone() })?;
        for (lv, order) in rotation_from_faces(&local, &faces).into_iter().enumerate() {
            rotation[verts[lv]].extend(order.into_iter().map(|w| verts[w]));
        }
    }
    Ok(RotationSystem::new(rotation))
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(u).get(*idx) {
                *idx += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((u, w));
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    edge_stack.push((u, w));
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (parent, u) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Face/fragment path addition on a biconnected graph with at least one
/// cycle. Returns consistently oriented faces (each dart in exactly one).
fn embed_biconnected(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let cycle = find_cycle(g)?;
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        h_edges.insert((v.min(w), v.max(w)));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while h_edges.len() < g.edge_count() {
        let fragments = fragments(g, &in_h, &h_edges);
        let face_sets: Vec<HashSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&f| frag.attachments.iter().all(|a| face_sets[f].contains(a))).collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = chosen?;
        let path = fragment_path(g, &fragments[fi], &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let (a, b) = split_face(&faces[face_idx], &path);
        faces[face_idx] = a;
        faces.push(b);
    }
    Some(faces)
}

struct Fragment {
    /// Non-embedded vertices of the fragment (empty for a single chord).
    inner: HashSet<usize>,
    /// Embedded vertices the fragment attaches to, sorted.
    attachments: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(g: &Graph, in_h: &[bool], h_edges: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            out.push(Fragment { inner: HashSet::new(), attachments: vec![u, v], chord: Some((u, v)) });
        }
    }
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = HashSet::from([s]);
        let mut attach = std::collections::BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if in_h[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { inner, attachments: attach.into_iter().collect(), chord: None });
    }
    out
}

/// Path between the first two attachments through the fragment interior.
fn fragment_path(g: &Graph, frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let (a, b) = (frag.attachments[0], frag.attachments[1]);
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &w in g.neighbors(a) {
        if frag.inner.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if w == b {
                let mut path = vec![b, u];
                let mut cur = u;
                while let Some(&p) = prev.get(&cur) {
                    path.push(p);
                    if p == a {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return path;
            }
            if !in_h[w] && frag.inner.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a fragment of a biconnected graph links its attachments")
}

/// Splits a directed face by a path from `path[0]` to `path[last]`.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let len = face.len();
    let i = face.iter().position(|&v| v == a).unwrap();
    let j = face.iter().position(|&v| v == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut k = from;
        loop {
            out.push(face[k]);
            if k == to {
                break;
            }
            k = (k + 1) % len;
        }
        out
    };
    let mut first = arc(i, j);
    first.extend(inner.iter().rev());
    let mut second = arc(j, i);
    second.extend(inner.iter());
    (first, second)
}

fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(u).get(*idx) {
                *idx += 1;
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    stack.push((w, 0));
                } else if w != parent[u] && depth[w] < depth[u] {
                    let mut cycle = vec![u];
                    let mut cur = u;
                    while cur != w {
                        cur = parent[cur];
                        cycle.push(cur);
                    }
                    return Some(cycle);
                }
            } else {
                stack.pop();
            }
        }
    }
    None
}

fn rotation_from_faces(g: &Graph, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); g.n()];
    for face in faces {
        let len = face.len();
        for i in 0..len {
            let (u, v, w) = (face[i], face[(i + 1) % len], face[(i + 2) % len]);
            succ[v].insert(u, w);
        }
    }
    (0..g.n())
        .map(|v| {
            let Some(&start) = g.neighbors(v).first() else {
                return Vec::new();
            };
            let mut order = vec![start];
            let mut cur = succ[v][&start];
            while cur != start {
                order.push(cur);
                cur = succ[v][&cur];
            }
            order
        })
        .collect()
}
