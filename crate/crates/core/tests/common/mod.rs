//! Reference implementations used as test oracles. They work on plain
//! tuples and never call the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vrsp::generate::random_dag;
use vrsp::{Graph, VertexSet};

pub type Edge = (String, String, String);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ids(g: &Graph) -> Vec<String> {
    g.vertex_ids().map(|v| v.to_string()).collect()
}

pub fn edges(g: &Graph) -> Vec<Edge> {
    g.arcs().iter().map(|a| (a.tail.to_string(), a.head.to_string(), a.label.to_string())).collect()
}

/// Random DAG with at most `max_n` vertices over actions `a`, `b`, `c`.
pub fn small_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let arcs = rng.gen_range(0..=n + 2);
    random_dag(rng, n, arcs, &["a", "b", "c"])
}

/// Isomorphism by trying every bijection.
pub fn brute_iso(g: &Graph, h: &Graph) -> bool {
    let gv = ids(g);
    let hv = ids(h);
    if gv.len() != hv.len() || g.arc_count() != h.arc_count() {
        return false;
    }
    let target: BTreeSet<Edge> = edges(h).into_iter().collect();
    let ge = edges(g);
    let index: BTreeMap<&str, usize> = gv.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    let mut perm: Vec<usize> = (0..hv.len()).collect();
    let ok = |perm: &[usize]| {
        ge.iter().all(|(t, h, l)| {
            target.contains(&(hv[perm[index[t.as_str()]]].clone(), hv[perm[index[h.as_str()]]].clone(), l.clone()))
        })
    };
    permute(&mut perm, 0, &ok)
}

fn permute(perm: &mut Vec<usize>, k: usize, ok: &dyn Fn(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return ok(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute(perm, k + 1, ok) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Copy of `g` with vertices renamed by a random permutation of fresh ids.
pub fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let old = ids(g);
    let mut fresh: Vec<String> = (0..old.len()).map(|k| format!("w{k}")).collect();
    fresh.shuffle(rng);
    let map: BTreeMap<&str, &str> = old.iter().map(String::as_str).zip(fresh.iter().map(String::as_str)).collect();
    let mut b = vrsp::GraphBuilder::new().vertices(fresh.iter().map(String::as_str));
    for a in g.arcs() {
        let w = a.label.weight().to_string();
        b = b.arc(map[a.tail.as_str()], map[a.head.as_str()], a.label.action(), &w);
    }
    b.build().unwrap()
}

fn pair(v: &str, w: &str) -> String {
    format!("({v},{w})")
}

fn label_counts(e: &[Edge]) -> BTreeMap<&str, usize> {
    let mut m = BTreeMap::new();
    for (_, _, l) in e {
        *m.entry(l.as_str()).or_insert(0) += 1;
    }
    m
}

/// Arc count of `G □ H`.
pub fn cartesian_arc_count(g: &Graph, h: &Graph) -> usize {
    g.arc_count() * h.vertex_count() + h.arc_count() * g.vertex_count()
}

/// Arc count of `G ⊠ H`: labels present on both sides pair up, the others
/// are copied across the other operand.
pub fn intermediate_arc_count(g: &Graph, h: &Graph) -> usize {
    let (ge, he) = (edges(g), edges(h));
    let (gc, hc) = (label_counts(&ge), label_counts(&he));
    let mut total = 0;
    for (l, n) in &gc {
        total += match hc.get(l) {
            Some(m) => n * m,
            None => n * h.vertex_count(),
        };
    }
    for (l, m) in &hc {
        if !gc.contains_key(l) {
            total += m * g.vertex_count();
        }
    }
    total
}

/// `G ⊠ H` as vertex and arc sets.
pub fn intermediate(g: &Graph, h: &Graph) -> (BTreeSet<String>, BTreeSet<Edge>) {
    let (gv, hv) = (ids(g), ids(h));
    let (ge, he) = (edges(g), edges(h));
    let gl: BTreeSet<&String> = ge.iter().map(|e| &e.2).collect();
    let hl: BTreeSet<&String> = he.iter().map(|e| &e.2).collect();
    let vertices = gv.iter().flat_map(|v| hv.iter().map(move |w| pair(v, w))).collect();
    let mut arcs = BTreeSet::new();
    for (t, hd, l) in &ge {
        if hl.contains(l) {
            for (t2, h2, l2) in &he {
                if l2 == l {
                    arcs.insert((pair(t, t2), pair(hd, h2), l.clone()));
                }
            }
        } else {
            for w in &hv {
                arcs.insert((pair(t, w), pair(hd, w), l.clone()));
            }
        }
    }
    for (t, hd, l) in &he {
        if !gl.contains(l) {
            for v in &gv {
                arcs.insert((pair(v, t), pair(v, hd), l.clone()));
            }
        }
    }
    (vertices, arcs)
}

/// VRSP by recomputing all degrees after every single deletion.
pub fn vrsp_naive(g: &Graph, h: &Graph) -> (BTreeSet<String>, BTreeSet<Edge>) {
    let (mut vertices, mut arcs) = intermediate(g, h);
    let deg = |x: &Graph, v: &str| {
        let e = edges(x);
        (e.iter().filter(|a| a.1 == v).count(), e.iter().filter(|a| a.0 == v).count())
    };
    let mut box_deg = BTreeMap::new();
    for v in ids(g) {
        for w in ids(h) {
            let (a, b) = (deg(g, &v), deg(h, &w));
            box_deg.insert(pair(&v, &w), (a.0 + b.0, a.1 + b.1));
        }
    }
    loop {
        let victim = vertices.iter().find(|v| {
            let (bi, bo) = box_deg[*v];
            let i = arcs.iter().filter(|a| &a.1 == *v).count();
            let o = arcs.iter().filter(|a| &a.0 == *v).count();
            (i == 0 && bi > 0) || (o == 0 && bo > 0)
        });
        let Some(v) = victim.cloned() else { break };
        vertices.remove(&v);
        arcs.retain(|a| a.0 != v && a.1 != v);
    }
    (vertices, arcs)
}

/// Proptest strategy: DAGs on `v0..v{n-1}` with `1 <= n <= max_n`, arcs
/// pointing from lower to higher index, actions `a`..`d`.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0..4usize), 0..=2 * n).prop_map(move |raw| {
            let names: Vec<String> = (0..n).map(|k| format!("v{k}")).collect();
            let mut b = vrsp::GraphBuilder::new().vertices(names.iter().map(String::as_str));
            for (i, j, l) in raw {
                if i < j {
                    b = b.unit_arc(names[i].as_str(), names[j].as_str(), ["a", "b", "c", "d"][l]);
                }
            }
            b.build().unwrap()
        })
    })
}

/// Contracts `x` by hand: members collapse onto one new name and arcs inside
/// `x` disappear.
pub fn oracle_contract(g: &Graph, x: &VertexSet) -> (usize, BTreeSet<Edge>) {
    let name = "#";
    let m = |v: &str| if x.contains(v) { name.to_string() } else { v.to_string() };
    let arcs = edges(g)
        .into_iter()
        .filter(|(t, h, _)| !(x.contains(t.as_str()) && x.contains(h.as_str())))
        .map(|(t, h, l)| (m(&t), m(&h), l))
        .collect();
    (g.vertex_count() - x.len() + 1, arcs)
}
