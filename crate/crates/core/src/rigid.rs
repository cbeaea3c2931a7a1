//! Balance when edges may only be walked forward.
//!
//! Every directed cycle stays inside one strongly connected component, and
//! inside a component the directed cycles impose exactly the coboundary
//! condition of the flexible case: an edge `x -> y` can be closed by some
//! directed path `y -> x` avoiding it, so its reverse is already determined.
//! Edges between components are unconstrained.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::abelian::{GroupElement, GroupSpec};
use crate::digraph::{Dart, Digraph, SccDecomposition, SpanningForest, TraversalMode, Witness};
use crate::error::{Error, Result};
use crate::flexible::Verdict;
use crate::labeling::Labeling;
use crate::structure::{Family, StructureDescriptor};

/// Parameters of a balanced edge function: a potential per strongly
/// connected component (zero at the component's first vertex) and a free
/// value on every cross edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HrParams {
    /// First vertex of each strongly connected component.
    pub roots: Vec<usize>,
    /// Vertex-indexed; zero at every root.
    pub potential: Vec<GroupElement>,
    /// Keyed by edge index; domain is exactly the cross edges.
    pub cross_values: BTreeMap<usize, GroupElement>,
}

impl HrParams {
    pub fn add(&self, other: &HrParams, spec: &GroupSpec) -> Result<HrParams> {
        if self.roots != other.roots
            || self.potential.len() != other.potential.len()
            || !self.cross_values.keys().eq(other.cross_values.keys())
        {
            return Err(Error::InvalidParams(
                "parameters for different graphs".into(),
            ));
        }
        Ok(HrParams {
            roots: self.roots.clone(),
            potential: self
                .potential
                .iter()
                .zip(&other.potential)
                .map(|(a, b)| spec.add(a, b))
                .collect::<Result<_>>()?,
            cross_values: self
                .cross_values
                .iter()
                .map(|(&e, a)| Ok((e, spec.add(a, &other.cross_values[&e])?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Strongly connected components plus a spanning forest of the
/// intra-component edges, reusable across labelings of one graph.
#[derive(Debug, Clone)]
pub struct RigidGraph<'g> {
    g: &'g Digraph,
    scc: SccDecomposition,
    forest: SpanningForest,
    /// Edge ids ranked by string order, for lexicographic path choice.
    id_rank: Vec<usize>,
}

impl<'g> RigidGraph<'g> {
    pub fn new(g: &'g Digraph) -> Self {
        let scc = g.scc();
        let forest = {
            let comp = &scc.component_of;
            SpanningForest::new(g, |e| {
                let e = g.edge(e);
                comp[e.tail] == comp[e.head]
            })
        };
        // Both are numbered by lowest member vertex, so indices coincide.
        debug_assert!((0..g.vertex_count()).all(|v| forest.component[v] == scc.component_of[v]));
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));
        let mut id_rank = vec![0; g.edge_count()];
        for (rank, e) in order.into_iter().enumerate() {
            id_rank[e] = rank;
        }
        Self {
            g,
            scc,
            forest,
            id_rank,
        }
    }

    pub fn scc(&self) -> &SccDecomposition {
        &self.scc
    }

    pub fn roots(&self) -> &[usize] {
        &self.forest.roots
    }

    fn is_intra(&self, e: usize) -> bool {
        !self.scc.is_cross(self.g, e)
    }

    fn potential_or_witness(
        &self,
        f: &Labeling,
    ) -> Result<std::result::Result<Vec<GroupElement>, Witness>> {
        let g = self.g;
        f.require_edges_total(g)?;
        let spec = f.spec();
        let mut phi = vec![spec.zero(); g.vertex_count()];
        for members in &self.forest.members {
            for &w in &members[1..] {
                let d = self.forest.parent[w].expect("tree vertex has a parent");
                let step = f.dart(d).expect("edge labels checked");
                phi[w] = spec.plus(&phi[self.forest.parent_vertex[w]], &step);
            }
        }
        for (i, e) in g.edges().iter().enumerate() {
            if self.forest.tree_edge[i] || !self.is_intra(i) {
                continue;
            }
            let value = f.edge(i).expect("edge labels checked");
            if spec.plus(&phi[e.tail], value) != phi[e.head] {
                let c = self.scc.component_of[e.tail];
                return Ok(Err(self.directed_witness(f, c)?));
            }
        }
        Ok(Ok(phi))
    }

    /// A directed cycle with nonzero sum inside component `c`, which must
    /// carry one. Closed walks `root -> x -> root` and
    /// `root -> u -e-> v -> root` through shortest paths are tried in order;
    /// if all of them summed to zero the labeling would be a coboundary on
    /// `c`. The first offending walk is split into simple cycles, one of
    /// which has a nonzero sum.
    fn directed_witness(&self, f: &Labeling, c: usize) -> Result<Witness> {
        let g = self.g;
        let root = self.forest.roots[c];
        let members = &self.forest.members[c];
        let sum =
            |start: usize, darts: &[Dart]| f.walk_sum(g, start, darts, TraversalMode::Rigid, false);
        let to_root = self.shortest_paths_to(root);
        let mut candidates: Vec<Vec<Dart>> = Vec::new();
        let mut from_root = HashMap::new();
        for &x in members {
            let out = self.shortest_path(root, x);
            let back = path_from_tree(g, &to_root, x);
            candidates.push(out.iter().chain(&back).copied().collect());
            from_root.insert(x, out);
        }
        for (i, e) in g.edges().iter().enumerate() {
            if self.scc.component_of[e.tail] != c || !self.is_intra(i) {
                continue;
            }
            let mut walk = from_root[&e.tail].clone();
            walk.push(Dart::forward(i));
            walk.extend(path_from_tree(g, &to_root, e.head));
            candidates.push(walk);
        }
        for walk in candidates {
            if walk.is_empty() || sum(root, &walk)?.is_zero() {
                continue;
            }
            for (start, cycle) in split_simple_cycles(g, root, &walk) {
                let s = sum(start, &cycle)?;
                if !s.is_zero() {
                    let mut w = Witness::new(start, cycle);
                    w.sum = Some(s);
                    return Ok(w);
                }
            }
        }
        unreachable!("component {c} carries an unbalanced edge but no directed witness")
    }

    /// For every vertex of the target's component, the next edge on the
    /// lexicographically smallest shortest directed path to `target`.
    fn shortest_paths_to(&self, target: usize) -> Vec<Option<usize>> {
        let g = self.g;
        let dist = self.distances_to(target);
        (0..g.vertex_count())
            .map(|v| {
                if v == target || dist[v] == usize::MAX {
                    return None;
                }
                g.out_edges(v)
                    .iter()
                    .copied()
                    .filter(|&e| {
                        self.is_intra(e) && dist[g.edge(e).head].checked_add(1) == Some(dist[v])
                    })
                    .min_by_key(|&e| self.id_rank[e])
            })
            .collect()
    }

    fn distances_to(&self, target: usize) -> Vec<usize> {
        let g = self.g;
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            // Reverse darts at `v` are edges entering `v`.
            for &d in g.incident(v) {
                if d.direction != crate::digraph::Direction::Reverse || !self.is_intra(d.edge) {
                    continue;
                }
                let u = g.edge(d.edge).tail;
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn shortest_path(&self, from: usize, to: usize) -> Vec<Dart> {
        path_from_tree(self.g, &self.shortest_paths_to(to), from)
    }

    pub fn hr_check(&self, f: &Labeling) -> Result<Verdict> {
        Ok(match self.potential_or_witness(f)? {
            Ok(_) => Verdict::Balanced,
            Err(w) => Verdict::Unbalanced(w),
        })
    }

    pub fn hr_from_params(&self, spec: &GroupSpec, p: &HrParams) -> Result<Labeling> {
        let g = self.g;
        if p.roots != self.forest.roots || p.potential.len() != g.vertex_count() {
            return Err(Error::InvalidParams(
                "parameters do not match the graph's strong components".into(),
            ));
        }
        if !p
            .cross_values
            .keys()
            .copied()
            .eq(self.scc.cross_edges.iter().copied())
        {
            return Err(Error::InvalidParams(
                "cross_values must cover exactly the cross edges".into(),
            ));
        }
        for &r in &p.roots {
            if !p.potential[r].is_zero() {
                return Err(Error::InvalidParams(format!(
                    "potential at root {} must be 0",
                    g.vertex_id(r)
                )));
            }
        }
        let mut f = Labeling::empty(spec, g);
        for (i, e) in g.edges().iter().enumerate() {
            let value = match p.cross_values.get(&i) {
                Some(a) => a.clone(),
                None => {
                    spec.validate(&p.potential[e.head])?;
                    spec.validate(&p.potential[e.tail])?;
                    spec.minus(&p.potential[e.head], &p.potential[e.tail])
                }
            };
            f.set_edge(i, value)?;
        }
        Ok(f)
    }

    pub fn hr_params_of(&self, f: &Labeling) -> Result<HrParams> {
        let potential = self
            .potential_or_witness(f)?
            .map_err(|w| Error::Unbalanced(Box::new(w)))?;
        Ok(HrParams {
            roots: self.forest.roots.clone(),
            potential,
            cross_values: self
                .scc
                .cross_edges
                .iter()
                .map(|&e| (e, f.edge(e).unwrap().clone()))
                .collect(),
        })
    }

    pub fn wr_check(&self, h: &Labeling) -> Result<Verdict> {
        let (_, f) = wr_split(self.g, h)?;
        Ok(match self.potential_or_witness(&f)? {
            Ok(_) => Verdict::Balanced,
            Err(mut w) => {
                w.sum = Some(h.walk_sum(self.g, w.start, &w.darts, TraversalMode::Rigid, true)?);
                Verdict::Unbalanced(w)
            }
        })
    }

    pub fn structure(&self, family: Family) -> Result<StructureDescriptor> {
        family.check_mode(TraversalMode::Rigid)?;
        let n = self.g.vertex_count();
        let hr = n - self.scc.component_count + self.scc.r();
        Ok(StructureDescriptor::new(
            match family {
                Family::HR => hr,
                Family::BR => n,
                Family::WR => n + hr,
                _ => unreachable!("mode checked above"),
            },
            0,
        ))
    }
}

/// Follows next-edge pointers from `from` to the pointer tree's target.
fn path_from_tree(g: &Digraph, next: &[Option<usize>], from: usize) -> Vec<Dart> {
    let mut out = Vec::new();
    let mut v = from;
    while let Some(e) = next[v] {
        out.push(Dart::forward(e));
        v = g.edge(e).head;
    }
    out
}

/// Splits a closed walk into simple cycles whose edge multisets add up to
/// the walk's.
fn split_simple_cycles(g: &Digraph, start: usize, walk: &[Dart]) -> Vec<(usize, Vec<Dart>)> {
    let mut cycles = Vec::new();
    let mut vertices = vec![start];
    let mut darts: Vec<Dart> = Vec::new();
    let mut position: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    for &d in walk {
        let w = g.target(d);
        darts.push(d);
        if let Some(&i) = position.get(&w) {
            cycles.push((w, darts.split_off(i)));
            for v in vertices.drain(i + 1..) {
                position.remove(&v);
            }
        } else {
            position.insert(w, vertices.len());
            vertices.push(w);
        }
    }
    debug_assert!(darts.is_empty());
    cycles
}

pub fn hr_check(g: &Digraph, f: &Labeling) -> Result<Verdict> {
    RigidGraph::new(g).hr_check(f)
}

pub fn hr_from_params(g: &Digraph, spec: &GroupSpec, p: &HrParams) -> Result<Labeling> {
    RigidGraph::new(g).hr_from_params(spec, p)
}

pub fn hr_params_of(g: &Digraph, f: &Labeling) -> Result<HrParams> {
    RigidGraph::new(g).hr_params_of(f)
}

/// `h(v) = g(v)`, `h(e) = -g(tail(e))`: every vertex function extends.
pub fn br_balance(g: &Digraph, gv: &Labeling) -> Result<Labeling> {
    gv.require_vertices_total(g)?;
    let spec = gv.spec();
    let mut h = gv.vertex_part(g);
    for (i, e) in g.edges().iter().enumerate() {
        h.set_edge(i, spec.neg(gv.vertex(e.tail).unwrap()))?;
    }
    Ok(h)
}

/// `(h|V, e -> h(e) + h(tail(e)))`.
pub fn wr_split(g: &Digraph, h: &Labeling) -> Result<(Labeling, Labeling)> {
    h.require_vertices_total(g)?;
    h.require_edges_total(g)?;
    let spec = h.spec();
    let mut f = Labeling::empty(spec, g);
    for (i, e) in g.edges().iter().enumerate() {
        f.set_edge(i, spec.plus(h.edge(i).unwrap(), h.vertex(e.tail).unwrap()))?;
    }
    Ok((h.vertex_part(g), f))
}

/// `h(v) = g(v)`, `h(e) = f(e) - g(tail(e))`.
pub fn wr_join(g: &Digraph, gv: &Labeling, f: &Labeling) -> Result<Labeling> {
    gv.require_vertices_total(g)?;
    f.require_edges_total(g)?;
    if gv.spec() != f.spec() {
        return Err(Error::InvalidParams(
            "labelings over different groups".into(),
        ));
    }
    let spec = gv.spec();
    let mut h = gv.vertex_part(g);
    for (i, e) in g.edges().iter().enumerate() {
        h.set_edge(
            i,
            spec.minus(f.edge(i).unwrap(), gv.vertex(e.tail).unwrap()),
        )?;
    }
    Ok(h)
}

pub fn wr_check(g: &Digraph, h: &Labeling) -> Result<Verdict> {
    RigidGraph::new(g).wr_check(h)
}

pub fn rigid_structure(g: &Digraph, family: Family) -> Result<StructureDescriptor> {
    RigidGraph::new(g).structure(family)
}
