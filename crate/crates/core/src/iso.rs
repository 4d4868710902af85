//! Label-preserving isomorphism of labelled DAGs.
//!
//! Vertices of both graphs are coloured jointly by an iterated refinement
//! (level, degrees, incident labels, then neighbour colours). The search maps
//! vertices one at a time, only onto vertices of the same colour, and checks
//! every arc towards already mapped vertices.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::graph::{Graph, VertexId};
use crate::label::Label;

/// Vertex bijection between two graphs; the arc bijection is induced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub map: BTreeMap<VertexId, VertexId>,
}

impl IsoWitness {
    pub fn new(map: BTreeMap<VertexId, VertexId>) -> Self {
        IsoWitness { map }
    }

    pub fn get(&self, v: &str) -> Option<&VertexId> {
        self.map.get(v)
    }

    pub fn inverse(&self) -> IsoWitness {
        IsoWitness { map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    /// Checks that the map is a bijection `V(g) → V(h)` carrying the arc set
    /// of `g` exactly onto the arc set of `h`.
    pub fn validate(&self, g: &Graph, h: &Graph) -> bool {
        if self.map.len() != g.vertex_count() || g.vertex_count() != h.vertex_count() {
            return false;
        }
        if g.arc_count() != h.arc_count() {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in g.vertex_ids() {
            match self.map.get(v) {
                Some(w) if h.contains(w.as_str()) && seen.insert(w) => {}
                _ => return false,
            }
        }
        g.arcs().iter().all(|a| {
            let image = crate::graph::Arc {
                tail: self.map[&a.tail].clone(),
                head: self.map[&a.head].clone(),
                label: a.label.clone(),
            };
            h.contains_arc(&image)
        })
    }
}

/// Compact view of one graph for the search.
struct Side<'g> {
    graph: &'g Graph,
    /// Per vertex: neighbour position → sorted label indices of arcs to it.
    out: Vec<BTreeMap<usize, Vec<usize>>>,
    inc: Vec<BTreeMap<usize, Vec<usize>>>,
}

impl<'g> Side<'g> {
    fn new(graph: &'g Graph, labels: &HashMap<&Label, usize>) -> Self {
        let n = graph.vertex_count();
        let mut out = vec![BTreeMap::new(); n];
        let mut inc = vec![BTreeMap::new(); n];
        for arc in graph.arcs() {
            let t = graph.position(arc.tail.as_str()).unwrap();
            let h = graph.position(arc.head.as_str()).unwrap();
            let l = labels[&arc.label];
            out[t].entry(h).or_insert_with(Vec::new).push(l);
            inc[h].entry(t).or_insert_with(Vec::new).push(l);
        }
        for m in out.iter_mut().chain(inc.iter_mut()) {
            for ls in m.values_mut() {
                ls.sort_unstable();
            }
        }
        Side { graph, out, inc }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum ColorKey {
    Initial(usize, usize, usize, Vec<usize>, Vec<usize>),
    Refined(usize, Vec<(usize, usize)>, Vec<(usize, usize)>),
}

/// Joint colour refinement. Returns the colours of each side, or `None` if
/// the colour histograms already differ.
fn refine(g: &Side, h: &Side) -> Option<(Vec<usize>, Vec<usize>)> {
    let initial = |s: &Side| -> Vec<ColorKey> {
        let levels = s.graph.level_assignment();
        s.graph
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut outs: Vec<usize> = s.out[i].values().flatten().copied().collect();
                let mut ins: Vec<usize> = s.inc[i].values().flatten().copied().collect();
                outs.sort_unstable();
                ins.sort_unstable();
                let level = levels.level(v.id().as_str()).unwrap_or(0);
                ColorKey::Initial(level, ins.len(), outs.len(), ins, outs)
            })
            .collect()
    };
    let (mut cg, mut ch) = intern(initial(g), initial(h))?;
    let mut classes = count_classes(&cg, &ch);
    loop {
        let step = |s: &Side, c: &[usize]| -> Vec<ColorKey> {
            (0..c.len())
                .map(|i| {
                    let mut outs: Vec<(usize, usize)> =
                        s.out[i].iter().flat_map(|(&w, ls)| ls.iter().map(move |&l| (l, c[w]))).collect();
                    let mut ins: Vec<(usize, usize)> =
                        s.inc[i].iter().flat_map(|(&w, ls)| ls.iter().map(move |&l| (l, c[w]))).collect();
                    outs.sort_unstable();
                    ins.sort_unstable();
                    ColorKey::Refined(c[i], ins, outs)
                })
                .collect()
        };
        let (ng, nh) = intern(step(g, &cg), step(h, &ch))?;
        let next = count_classes(&ng, &nh);
        cg = ng;
        ch = nh;
        if next == classes {
            return Some((cg, ch));
        }
        classes = next;
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).max().map_or(0, |m| m + 1)
}

fn intern(a: Vec<ColorKey>, b: Vec<ColorKey>) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut histogram: BTreeMap<&ColorKey, (usize, usize)> = BTreeMap::new();
    for k in &a {
        histogram.entry(k).or_default().0 += 1;
    }
    for k in &b {
        histogram.entry(k).or_default().1 += 1;
    }
    if histogram.values().any(|(x, y)| x != y) {
        return None;
    }
    let ids: HashMap<&ColorKey, usize> = histogram.keys().enumerate().map(|(i, k)| (*k, i)).collect();
    Some((a.iter().map(|k| ids[k]).collect(), b.iter().map(|k| ids[k]).collect()))
}

/// Finds a label-preserving isomorphism `g → h`, if one exists.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<IsoWitness> {
    if g.vertex_count() != h.vertex_count() || g.arc_count() != h.arc_count() {
        return None;
    }
    let mut lg: Vec<&Label> = g.arcs().iter().map(|a| &a.label).collect();
    let mut lh: Vec<&Label> = h.arcs().iter().map(|a| &a.label).collect();
    lg.sort();
    lh.sort();
    if lg != lh {
        return None;
    }
    let labels: HashMap<&Label, usize> = {
        let mut distinct = lg.clone();
        distinct.dedup();
        distinct.into_iter().enumerate().map(|(i, l)| (l, i)).collect()
    };
    let sg = Side::new(g, &labels);
    let sh = Side::new(h, &labels);
    let (cg, ch) = refine(&sg, &sh)?;

    let n = g.vertex_count();
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &cg {
        *class_size.entry(c).or_default() += 1;
    }
    let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
    for (w, &c) in ch.iter().enumerate() {
        by_color.entry(c).or_default().push(w);
    }

    // Greedy order: most already ordered neighbours, then smallest class, then id.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&cg[v]], v))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &w in sg.out[v].keys().chain(sg.inc[v].keys()) {
            links[w] += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(&sg, &sh, &cg, &by_color, &order, 0, &mut map, &mut used) {
        let witness = IsoWitness::new(
            (0..n)
                .map(|v| (g.vertices()[v].id().clone(), h.vertices()[map[v]].id().clone()))
                .collect(),
        );
        debug_assert!(witness.validate(g, h));
        Some(witness)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Side,
    h: &Side,
    cg: &[usize],
    by_color: &HashMap<usize, Vec<usize>>,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else { return true };
    for &w in &by_color[&cg[v]] {
        if used[w] || !consistent(g, h, v, w, map, used) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if search(g, h, cg, by_color, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

/// Arcs between `v` and mapped vertices must match arcs between `w` and their
/// images, label for label, in both directions.
fn consistent(g: &Side, h: &Side, v: usize, w: usize, map: &[usize], used: &[bool]) -> bool {
    let check = |gm: &BTreeMap<usize, Vec<usize>>, hm: &BTreeMap<usize, Vec<usize>>| {
        let mut mapped = 0;
        for (&u, ls) in gm {
            if map[u] == usize::MAX {
                continue;
            }
            mapped += 1;
            if hm.get(&map[u]) != Some(ls) {
                return false;
            }
        }
        // Arcs from w to images of mapped vertices must all be accounted for.
        let inverse_mapped = hm.keys().filter(|&&x| used[x]).count();
        mapped == inverse_mapped
    };
    check(&g.out[v], &h.out[w]) && check(&g.inc[v], &h.inc[w])
}
