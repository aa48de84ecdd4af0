use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::families::MbLayout;
use crate::graph::{shortest_path, Graph, LabeledGraph};

use super::{extend_unique, simulate, tree_broadcast_order, validate_schedule, Schedule};

/// Where a non-terminal originator sits between the two terminals of its
/// side. On the side of `s` the paths lead to `s` and `t'`; on the mirrored
/// side they lead to `s'` and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemePosition {
    pub j: i64,
    pub toward_s: Vec<usize>,
    pub toward_t_prime: Vec<usize>,
}

struct Mb {
    layout: MbLayout,
    graph: Graph,
    /// Quadrant tree root of every vertex (`s`, `s'`, `t'` or `t`).
    quadrant: Vec<usize>,
    /// Children inside the quadrant trees, Scheme-1 order.
    quad_children: HashMap<usize, Vec<usize>>,
    quad_parent: HashMap<usize, usize>,
    partner: HashMap<usize, usize>,
}

impl Mb {
    fn identify(g: &LabeledGraph) -> Result<Mb> {
        let n = g.n();
        if n < 4 || !n.is_power_of_two() {
            return Err(domain(format!("{n} vertices is not an MB_k")));
        }
        let layout = MbLayout::new(n.trailing_zeros())?;
        let graph = layout.graph();
        if graph != g.graph {
            return Err(domain("graph is not an MB_k"));
        }
        let cross = [
            (layout.s.min(layout.s_prime), layout.s.max(layout.s_prime)),
            (layout.t.min(layout.t_prime), layout.t.max(layout.t_prime)),
        ];
        let forest: Vec<(usize, usize)> = layout
            .upper
            .iter()
            .chain(&layout.lower)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .filter(|e| !cross.contains(e))
            .collect();
        let mut quadrant = vec![usize::MAX; n];
        let mut quad_children = HashMap::new();
        let mut quad_parent = HashMap::new();
        for root in [layout.s, layout.s_prime, layout.t_prime, layout.t] {
            let comp = component(&forest, root);
            let edges: Vec<_> = forest.iter().copied().filter(|(a, _)| comp.contains(a)).collect();
            for &v in &comp {
                quadrant[v] = root;
            }
            for (u, ch) in tree_broadcast_order(&edges, root) {
                for &c in &ch {
                    quad_parent.insert(c, u);
                }
                quad_children.insert(u, ch);
            }
        }
        let mut partner: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &layout.matching {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        Ok(Mb { layout, graph, quadrant, quad_children, quad_parent, partner })
    }

    fn is_terminal(&self, v: usize) -> bool {
        let l = &self.layout;
        [l.s, l.s_prime, l.t, l.t_prime].contains(&v)
    }

    /// Upper and lower terminal of `v`'s side.
    fn side_terminals(&self, v: usize) -> (usize, usize) {
        let l = &self.layout;
        match self.quadrant[v] {
            q if q == l.s || q == l.t_prime => (l.s, l.t_prime),
            _ => (l.s_prime, l.t),
        }
    }

    fn cross_partner(&self, terminal: usize) -> usize {
        let l = &self.layout;
        match terminal {
            x if x == l.s => l.s_prime,
            x if x == l.s_prime => l.s,
            x if x == l.t => l.t_prime,
            _ => l.t,
        }
    }

    /// Scheme-1 filler: quadrant children, matched partner, quadrant parent.
    fn generic(&self, v: usize) -> Vec<usize> {
        let mut out = self.quad_children.get(&v).cloned().unwrap_or_default();
        out.extend(self.partner.get(&v));
        out.extend(self.quad_parent.get(&v));
        out
    }

    fn terminal_lists(&self, root: usize) -> HashMap<usize, Vec<usize>> {
        let l = &self.layout;
        let (own, other) = if root == l.s || root == l.s_prime { (&l.upper, &l.lower) } else { (&l.lower, &l.upper) };
        let mut lists: HashMap<usize, Vec<usize>> = HashMap::new();
        for (u, ch) in tree_broadcast_order(own, root) {
            let e = lists.entry(u).or_default();
            e.extend(ch);
            e.extend(self.partner.get(&u));
        }
        let mut back: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in other {
            back.entry(a).or_default().push(b);
            back.entry(b).or_default().push(a);
        }
        for (v, mut nb) in back {
            nb.sort_unstable();
            lists.insert(v, nb);
        }
        lists
    }

    fn all(&self) -> Vec<usize> {
        (0..self.layout.n).collect()
    }
}

fn component(edges: &[(usize, usize)], root: usize) -> Vec<usize> {
    let mut seen = vec![root];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        for &(a, b) in edges {
            let w = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen
}

/// Position of a non-terminal `origin` relative to its side's terminals.
pub fn scheme_position(mb: &LabeledGraph, origin: usize) -> Result<SchemePosition> {
    let m = Mb::identify(mb)?;
    position(&m, origin)
}

fn position(m: &Mb, origin: usize) -> Result<SchemePosition> {
    if origin >= m.layout.n {
        return Err(domain(format!("origin {origin} out of range")));
    }
    let (a, b) = m.side_terminals(origin);
    let toward_s = shortest_path(&m.graph, origin, a).expect("MB is connected");
    let toward_t_prime = shortest_path(&m.graph, origin, b).expect("MB is connected");
    let j = (toward_s.len() - 1) as i64 - m.layout.k.div_ceil(2) as i64;
    Ok(SchemePosition { j, toward_s, toward_t_prime })
}

/// Broadcast on `MB_k`. Terminals fill their own tree, cross the matching
/// and finish with the parents in the opposite tree. Other originators
/// relay one step toward the farther terminal of their side, then toward
/// the nearer one; each terminal hands over to its mirror terminal first
/// and every vertex then works through its quadrant subtree. A second plan
/// (relay, then the terminal scheme from the nearer terminal) is also
/// simulated and the faster of the two is returned.
pub fn scheme_mb(mb: &LabeledGraph, origin: usize) -> Result<Schedule> {
    let m = Mb::identify(mb)?;
    if origin >= m.layout.n {
        return Err(domain(format!("origin {origin} out of range")));
    }
    let all = m.all();
    if m.is_terminal(origin) {
        return Ok(simulate(&m.graph, origin, &m.terminal_lists(origin), &all));
    }
    let pos = position(&m, origin)?;
    let (far, near) = if pos.toward_s.len() >= pos.toward_t_prime.len() {
        (&pos.toward_s, &pos.toward_t_prime)
    } else {
        (&pos.toward_t_prime, &pos.toward_s)
    };
    let mut relay: HashMap<usize, Vec<usize>> = HashMap::new();
    for path in [far, near] {
        for w in path.windows(2) {
            extend_unique(relay.entry(w[0]).or_default(), [w[1]]);
        }
    }

    let mut quadrants = relay.clone();
    for path in [far, near] {
        let term = *path.last().unwrap();
        extend_unique(quadrants.entry(term).or_default(), [m.cross_partner(term)]);
    }
    for v in all.iter().copied() {
        extend_unique(quadrants.entry(v).or_default(), m.generic(v));
    }

    let mut via_terminal = relay;
    let near_t = *near.last().unwrap();
    for (v, list) in m.terminal_lists(near_t) {
        extend_unique(via_terminal.entry(v).or_default(), list);
    }

    let a = simulate(&m.graph, origin, &quadrants, &all);
    let b = simulate(&m.graph, origin, &via_terminal, &all);
    let rounds = |s: &Schedule| validate_schedule(&m.graph, s).map_or(usize::MAX, |r| r);
    Ok(if rounds(&b) < rounds(&a) { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::mirrored_binomial;
    use crate::graph::Role;

    #[test]
    fn terminal_origins_take_k_plus_one() {
        for k in 2..=7u32 {
            let g = mirrored_binomial(k).unwrap();
            for role in [Role::S, Role::SPrime, Role::T, Role::TPrime] {
                let v = g.role(role).unwrap();
                let r = validate_schedule(&g.graph, &scheme_mb(&g, v).unwrap()).unwrap();
                assert_eq!(r, k as usize + 1, "k={k} {role:?}");
            }
        }
    }

    #[test]
    fn every_origin_within_three_halves() {
        for k in 2..=8u32 {
            let g = mirrored_binomial(k).unwrap();
            for v in 0..g.n() {
                let r = validate_schedule(&g.graph, &scheme_mb(&g, v).unwrap()).unwrap();
                assert!(r <= (3 * k / 2) as usize, "k={k} v={v} r={r}");
            }
        }
    }

    #[test]
    fn position_splits_the_side() {
        for k in 3..=7u32 {
            let g = mirrored_binomial(k).unwrap();
            for v in 0..g.n() {
                let p = scheme_position(&g, v).unwrap();
                assert_eq!(p.toward_s.len() + p.toward_t_prime.len() - 2, k as usize, "k={k} v={v}");
            }
        }
    }

    #[test]
    fn rejects_other_graphs() {
        let (b, _) = crate::families::binomial_sp(2);
        assert!(scheme_mb(&b, 0).is_err());
    }
}
