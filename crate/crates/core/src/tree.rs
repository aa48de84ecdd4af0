//! Binomial-tree view over a set of graph vertices.
//!
//! Canonical labelling: the tree of dimension `k` has canonical indices
//! `0..2^k`, root `0`, and the parent of `x` is `x` with its lowest set bit
//! cleared. Index `x != 0` roots a binomial subtree of dimension
//! `trailing_zeros(x)` and was created at doubling step `k - trailing_zeros(x)`.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    dim: u32,
    members: Vec<usize>,
    index: HashMap<usize, usize>,
}

impl RootedTree {
    /// Tree whose canonical index `i` is graph vertex `members[i]`.
    pub fn new(dim: u32, members: Vec<usize>) -> RootedTree {
        assert_eq!(members.len(), 1usize << dim, "binomial tree needs 2^k members");
        let index = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        RootedTree { dim, members, index }
    }

    /// Tree on vertices `offset .. offset + 2^dim`.
    pub fn identity(dim: u32, offset: usize) -> RootedTree {
        RootedTree::new(dim, (offset..offset + (1usize << dim)).collect())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn root(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.index.contains_key(&v)
    }

    pub fn canonical(&self, v: usize) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn vertex(&self, idx: usize) -> usize {
        self.members[idx]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let x = self.canonical(v)?;
        (x != 0).then(|| self.members[x & (x - 1)])
    }

    pub fn subtree_dim(&self, v: usize) -> Option<u32> {
        let x = self.canonical(v)?;
        Some(if x == 0 { self.dim } else { x.trailing_zeros() })
    }

    pub fn creation_step(&self, v: usize) -> Option<u32> {
        let x = self.canonical(v)?;
        Some(if x == 0 { 0 } else { self.dim - x.trailing_zeros() })
    }

    /// Children in strictly decreasing subtree dimension.
    pub fn children(&self, v: usize) -> Vec<usize> {
        let Some(x) = self.canonical(v) else {
            return Vec::new();
        };
        let d = if x == 0 { self.dim } else { x.trailing_zeros() };
        (0..d).rev().map(|j| self.members[x | (1 << j)]).collect()
    }

    /// Ancestors from the parent up to the root.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn depth(&self, v: usize) -> Option<u32> {
        self.canonical(v).map(|x| x.count_ones())
    }

    /// Vertices of the maximal binomial subtree rooted at `v`.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let Some(x) = self.canonical(v) else {
            return Vec::new();
        };
        let size = if x == 0 { self.len() } else { 1usize << x.trailing_zeros() };
        (x..x + size).map(|i| self.members[i]).collect()
    }

    /// Tree edges as `(parent, child)` in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..self.len()).map(|x| (self.members[x & (x - 1)], self.members[x])).collect()
    }

    /// Enclosing `BT_d` block of `v` in the "BT_{k-d} with appended BT_d"
    /// decomposition: the root and the member list of the block.
    pub fn block(&self, v: usize, d: u32) -> Option<(usize, Vec<usize>)> {
        let x = self.canonical(v)?;
        if d > self.dim {
            return None;
        }
        let base = x & !((1usize << d) - 1);
        let members = (base..base + (1usize << d)).map(|i| self.members[i]).collect();
        Some((self.members[base], members))
    }

    /// The other vertex of degree `dim` (the root of the dimension
    /// `dim - 1` child). Equal to the root when `dim == 0`.
    pub fn co_root(&self) -> usize {
        if self.dim == 0 {
            self.members[0]
        } else {
            self.members[1 << (self.dim - 1)]
        }
    }
}
