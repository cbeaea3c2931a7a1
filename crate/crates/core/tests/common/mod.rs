#![allow(dead_code)]

use std::collections::BTreeSet;

use balgraph::{Digraph, GroupElement, GroupSpec, Labeling};
use rand::Rng;

pub fn fixture(name: &str) -> Digraph {
    let path = format!("{}/fixtures/{name}.g", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Digraph::parse(&text).unwrap()
}

pub fn spec(s: &str) -> GroupSpec {
    GroupSpec::parse(s).unwrap()
}

/// Groups of cardinality at most 4.
pub fn small_groups() -> Vec<GroupSpec> {
    ["Z/2", "Z/3", "Z/4", "Z/2 x Z/2"]
        .into_iter()
        .map(spec)
        .collect()
}

/// Size of `{a : a + a = 0}` by brute force.
pub fn doubling_kernel_size(spec: &GroupSpec) -> u128 {
    spec.enumerate_elements()
        .unwrap()
        .filter(|a| spec.add(a, a).unwrap().is_zero())
        .count() as u128
}

pub fn pow(base: u128, exp: usize) -> u128 {
    base.pow(exp as u32)
}

/// A random multigraph on 1..=max_v vertices with 0..=max_e edges; loops and
/// parallel edges allowed.
pub fn random_graph<R: Rng>(rng: &mut R, max_v: usize, max_e: usize) -> Digraph {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let mut b = Digraph::builder();
    for v in 0..n {
        b.vertex(&format!("v{v}")).unwrap();
    }
    for e in 0..m {
        let t = rng.gen_range(0..n);
        let h = rng.gen_range(0..n);
        b.edge(&format!("e{e}"), &format!("v{t}"), &format!("v{h}"))
            .unwrap();
    }
    b.build()
}

/// Connected undirected multigraphs (loops and parallel edges allowed) with
/// at most `max_edges` edges, one per isomorphism class. Each is returned as
/// a digraph with an arbitrary orientation.
pub fn undirected_shapes(max_edges: usize) -> Vec<Digraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 0..=max_edges {
        for n in 1..=m + 1 {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
            let mut choice = vec![0usize; m];
            loop {
                let edges: Vec<(usize, usize)> = choice.iter().map(|&k| pairs[k]).collect();
                if is_connected(n, &edges) {
                    let canon = canonical(n, &edges);
                    if seen.insert((n, canon)) {
                        out.push(to_digraph(n, &edges));
                    }
                }
                // Next non-decreasing index sequence (multiset of pairs).
                let mut i = m;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if choice[i] + 1 < pairs.len() {
                        choice[i] += 1;
                        for j in i + 1..m {
                            choice[j] = choice[i];
                        }
                        break;
                    }
                    if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if m == 0 || i == usize::MAX {
                    break;
                }
            }
        }
    }
    out
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let r = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == r)
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut relabeled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn to_digraph(n: usize, edges: &[(usize, usize)]) -> Digraph {
    let mut b = Digraph::builder();
    for v in 0..n {
        b.vertex(&format!("u{v}")).unwrap();
    }
    for (i, &(a, c)) in edges.iter().enumerate() {
        b.edge(&format!("d{i}"), &format!("u{a}"), &format!("u{c}"))
            .unwrap();
    }
    b.build()
}

/// Calls `visit` with every assignment of elements to `slots` slots, in
/// odometer order.
pub fn for_each_assignment(
    elements: &[GroupElement],
    slots: usize,
    mut visit: impl FnMut(&[&GroupElement]),
) {
    let mut digits = vec![0usize; slots];
    let mut values: Vec<&GroupElement> = vec![&elements[0]; slots];
    loop {
        for (v, &d) in values.iter_mut().zip(&digits) {
            *v = &elements[d];
        }
        visit(&values);
        let mut i = slots;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < elements.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Labeling with the given vertex values (may be empty) and edge values.
pub fn labeling(
    spec: &GroupSpec,
    g: &Digraph,
    vertices: &[&GroupElement],
    edges: &[&GroupElement],
) -> Labeling {
    let mut l = Labeling::empty(spec, g);
    for (v, a) in vertices.iter().enumerate() {
        l.set_vertex(v, (*a).clone()).unwrap();
    }
    for (e, a) in edges.iter().enumerate() {
        l.set_edge(e, (*a).clone()).unwrap();
    }
    l
}
