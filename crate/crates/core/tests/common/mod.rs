//! Fixed graph corpus shared by the integration tests: family instances,
//! classic small graphs and seeded random connected graphs, all n <= 12.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spbcast::families::{accelerated_binomial_core, k3_random_sp, Family, FamilySpec};
use spbcast::Graph;

pub const CORPUS_MAX_N: usize = 12;

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &e).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &e).unwrap()
}

pub fn star(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::new(n, &e).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &e).unwrap()
}

pub fn wheel(n: usize) -> Graph {
    let mut e: Vec<_> = (1..n).map(|i| (0, i)).collect();
    e.extend((1..n).map(|i| (i, if i + 1 == n { 1 } else { i + 1 })));
    Graph::new(n, &e).unwrap()
}

pub fn grid(r: usize, c: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                e.push((v, v + 1));
            }
            if i + 1 < r {
                e.push((v, v + c));
            }
        }
    }
    Graph::new(r * c, &e).unwrap()
}

pub fn petersen() -> Graph {
    let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Graph::new(10, &e).unwrap()
}

pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let e: Vec<_> = (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
    Graph::new(n, &e).unwrap()
}

/// Random spanning tree plus each other pair with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !e.contains(&(u, v)) && rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::new(n, &e).unwrap()
}

/// Named corpus graphs, deterministic order.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for f in Family::ALL {
        if f == Family::K3sp {
            continue;
        }
        for k in f.min_k()..=4 {
            let spec = FamilySpec::new(f, k);
            if let Ok(g) = spec.build() {
                if g.n() <= CORPUS_MAX_N {
                    out.push((format!("{f}{k}"), g.graph));
                }
            }
        }
    }
    for k in 1..=3 {
        out.push((format!("ab{k}-core"), accelerated_binomial_core(k).graph));
    }
    for n in [9, 10, 11] {
        out.push((format!("eb4-n{n}"), FamilySpec::new(Family::Eb, 4).with_n(n).build().unwrap().graph));
    }
    for n in 2..=CORPUS_MAX_N {
        out.push((format!("rb-n{n}"), FamilySpec::new(Family::Rb, 4).with_n(n).build().unwrap().graph));
        out.push((format!("path{n}"), path(n)));
        out.push((format!("star{n}"), star(n)));
    }
    for n in 3..=CORPUS_MAX_N {
        out.push((format!("cycle{n}"), cycle(n)));
    }
    for n in 2..=7 {
        out.push((format!("k{n}"), complete(n)));
    }
    for n in 4..=CORPUS_MAX_N {
        out.push((format!("wheel{n}"), wheel(n)));
    }
    out.push(("petersen".into(), petersen()));
    out.push(("grid3x4".into(), grid(3, 4)));
    out.push(("grid2x6".into(), grid(2, 6)));
    out.push(("q3".into(), hypercube(3)));
    for seed in 0..40u64 {
        let n = 5 + (seed as usize % 8);
        let p = [0.1, 0.25, 0.5][seed as usize % 3];
        out.push((format!("rand-{seed}"), random_connected(n, p, seed)));
    }
    for seed in 0..20u64 {
        let (g, _) = k3_random_sp(1 + seed as usize % 12, seed);
        if g.n() <= CORPUS_MAX_N {
            out.push((format!("k3sp-{seed}"), g.graph));
        }
    }
    out
}
