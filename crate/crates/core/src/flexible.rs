//! Balance when edges may be walked against their direction.
//!
//! A balanced edge function is exactly a coboundary `f(e) = t(head) - t(tail)`
//! on every weak component. A balanced vertex-and-edge function carries
//! opposite values on adjacent vertices, so on each component the vertex
//! part is `±a` for one amplitude `a` (with `a + a = 0` once the component
//! has an odd cycle), and the rest is a coboundary.

use crate::abelian::{GroupElement, GroupSpec};
use crate::digraph::{
    odd_cycle_in_component, Dart, Digraph, SpanningForest, TraversalMode, Witness,
};
use crate::error::{Error, Result};
use crate::labeling::Labeling;
use crate::structure::{Family, StructureDescriptor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Balanced,
    Unbalanced(Witness),
}

impl Verdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Verdict::Balanced)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Balanced => None,
            Verdict::Unbalanced(w) => Some(w),
        }
    }
}

/// Parameters of a balanced vertex-and-edge function: one amplitude per
/// weak component and a potential vanishing at every component root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfParams {
    /// Root (first vertex) of each weak component.
    pub roots: Vec<usize>,
    /// `h(root)` per component.
    pub amplitudes: Vec<GroupElement>,
    /// Vertex-indexed potential, zero at every root.
    pub potential: Vec<GroupElement>,
}

impl WfParams {
    pub fn add(&self, other: &WfParams, spec: &GroupSpec) -> Result<WfParams> {
        if self.roots != other.roots || self.potential.len() != other.potential.len() {
            return Err(Error::InvalidParams(
                "parameters for different graphs".into(),
            ));
        }
        let zip = |a: &[GroupElement], b: &[GroupElement]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| spec.add(x, y))
                .collect::<Result<Vec<_>>>()
        };
        Ok(WfParams {
            roots: self.roots.clone(),
            amplitudes: zip(&self.amplitudes, &other.amplitudes)?,
            potential: zip(&self.potential, &other.potential)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BfVerdict {
    /// The vertex function is balanceable; `balancer` is an edge labeling
    /// completing it to a balanced vertex-and-edge function.
    Balanceable { balancer: Labeling },
    /// Edge `edge` joins two vertices whose labels do not cancel; `witness`
    /// walks the edge forth and back.
    NotBalanceable { edge: usize, witness: Witness },
}

/// Spanning forest and per-component bipartiteness, reusable across many
/// labelings of one graph.
#[derive(Debug, Clone)]
pub struct FlexibleGraph<'g> {
    g: &'g Digraph,
    forest: SpanningForest,
    bipartite: Vec<bool>,
}

impl<'g> FlexibleGraph<'g> {
    pub fn new(g: &'g Digraph) -> Self {
        let forest = SpanningForest::new(g, |_| true);
        let bipartite = (0..forest.component_count())
            .map(|c| odd_cycle_in_component(g, &forest, c).is_none())
            .collect();
        Self {
            g,
            forest,
            bipartite,
        }
    }

    pub fn graph(&self) -> &'g Digraph {
        self.g
    }

    pub fn roots(&self) -> &[usize] {
        &self.forest.roots
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.forest.component[v]
    }

    pub fn is_component_bipartite(&self, c: usize) -> bool {
        self.bipartite[c]
    }

    /// Bipartition class of `v`, relative to its component root.
    pub fn class(&self, v: usize) -> u8 {
        (self.forest.depth[v] % 2) as u8
    }

    /// Potential from tree propagation, or the first violated fundamental
    /// cycle (edges scanned in index order).
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
                let u = self.forest.parent_vertex[w];
                let step = f.dart(d).expect("edge labels checked");
                phi[w] = spec.plus(&phi[u], &step);
            }
        }
        for (i, e) in g.edges().iter().enumerate() {
            if self.forest.tree_edge[i] {
                continue;
            }
            let value = f.edge(i).expect("edge labels checked");
            let darts = if e.is_loop() {
                if value.is_zero() {
                    continue;
                }
                vec![Dart::forward(i)]
            } else {
                if spec.plus(&phi[e.tail], value) == phi[e.head] {
                    continue;
                }
                let mut darts = self.forest.tree_path(e.tail, e.head);
                darts.push(Dart::reverse(i));
                darts
            };
            let mut w = Witness::new(e.tail, darts);
            w.sum = Some(f.walk_sum(g, w.start, &w.darts, TraversalMode::Flexible, false)?);
            return Ok(Err(w));
        }
        Ok(Ok(phi))
    }

    pub fn hf_check(&self, f: &Labeling) -> Result<Verdict> {
        Ok(match self.potential_or_witness(f)? {
            Ok(_) => Verdict::Balanced,
            Err(w) => Verdict::Unbalanced(w),
        })
    }

    /// The potential vanishing at `root` (and at the first vertex of every
    /// other component).
    pub fn hf_potential_of(&self, f: &Labeling, root: Option<usize>) -> Result<Labeling> {
        let spec = f.spec();
        let mut phi = self
            .potential_or_witness(f)?
            .map_err(|w| Error::Unbalanced(Box::new(w)))?;
        if let Some(root) = root {
            if root >= self.g.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{root}")));
            }
            let shift = phi[root].clone();
            let c = self.forest.component[root];
            for &v in &self.forest.members[c] {
                phi[v] = spec.minus(&phi[v], &shift);
            }
        }
        let mut out = Labeling::empty(spec, self.g);
        for (v, a) in phi.into_iter().enumerate() {
            out.set_vertex(v, a)?;
        }
        Ok(out)
    }

    fn residual(&self, h: &Labeling) -> Labeling {
        let spec = h.spec();
        let mut f = h.edge_part(self.g);
        for (i, e) in self.g.edges().iter().enumerate() {
            let c = self.forest.component[e.tail];
            if !self.bipartite[c] {
                let a = h
                    .vertex(self.forest.roots[c])
                    .expect("vertex labels checked");
                let value = spec.minus(h.edge(i).expect("edge labels checked"), a);
                f.set_edge(i, value).expect("canonical");
            }
        }
        f
    }

    pub fn wf_check(&self, h: &Labeling) -> Result<Verdict> {
        let g = self.g;
        h.require_vertices_total(g)?;
        h.require_edges_total(g)?;
        let spec = h.spec();
        // The back-and-forth walk on each edge forces opposite endpoint
        // labels. On an odd cycle that already forces a + a = 0.
        for (i, e) in g.edges().iter().enumerate() {
            let s = spec.plus(h.vertex(e.tail).unwrap(), h.vertex(e.head).unwrap());
            if !s.is_zero() {
                let mut w = Witness::new(e.tail, vec![Dart::forward(i), Dart::reverse(i)]);
                w.sum = Some(h.walk_sum(g, w.start, &w.darts, TraversalMode::Flexible, true)?);
                return Ok(Verdict::Unbalanced(w));
            }
        }
        match self.potential_or_witness(&self.residual(h))? {
            Ok(_) => Ok(Verdict::Balanced),
            Err(mut w) => {
                w.sum = Some(h.walk_sum(g, w.start, &w.darts, TraversalMode::Flexible, true)?);
                Ok(Verdict::Unbalanced(w))
            }
        }
    }

    pub fn wf_from_params(&self, spec: &GroupSpec, p: &WfParams) -> Result<Labeling> {
        let g = self.g;
        self.validate_params(spec, p)?;
        let mut h = Labeling::empty(spec, g);
        for v in 0..g.vertex_count() {
            let c = self.forest.component[v];
            let a = &p.amplitudes[c];
            let value = if self.bipartite[c] && self.class(v) == 1 {
                spec.neg(a)
            } else {
                a.clone()
            };
            h.set_vertex(v, value)?;
        }
        for (i, e) in g.edges().iter().enumerate() {
            let c = self.forest.component[e.tail];
            let mut value = spec.minus(&p.potential[e.head], &p.potential[e.tail]);
            if !self.bipartite[c] {
                value = spec.plus(&value, &p.amplitudes[c]);
            }
            h.set_edge(i, value)?;
        }
        Ok(h)
    }

    fn validate_params(&self, spec: &GroupSpec, p: &WfParams) -> Result<()> {
        if p.roots != self.forest.roots
            || p.amplitudes.len() != self.forest.roots.len()
            || p.potential.len() != self.g.vertex_count()
        {
            return Err(Error::InvalidParams(
                "parameters do not match the graph's weak components".into(),
            ));
        }
        for x in p.amplitudes.iter().chain(&p.potential) {
            spec.validate(x)?;
        }
        for (c, &root) in p.roots.iter().enumerate() {
            if !p.potential[root].is_zero() {
                return Err(Error::InvalidParams(format!(
                    "potential at root {} must be 0",
                    self.g.vertex_id(root)
                )));
            }
            if !self.bipartite[c] && !spec.is_involution_or_zero(&p.amplitudes[c]) {
                return Err(Error::InvalidParams(format!(
                    "amplitude {} on the non-bipartite component of {} must satisfy a + a = 0",
                    p.amplitudes[c],
                    self.g.vertex_id(root)
                )));
            }
        }
        Ok(())
    }

    pub fn wf_params_of(&self, h: &Labeling) -> Result<WfParams> {
        if let Verdict::Unbalanced(w) = self.wf_check(h)? {
            return Err(Error::Unbalanced(Box::new(w)));
        }
        let phi = self
            .potential_or_witness(&self.residual(h))?
            .map_err(|w| Error::Unbalanced(Box::new(w)))?;
        Ok(WfParams {
            roots: self.forest.roots.clone(),
            amplitudes: self
                .forest
                .roots
                .iter()
                .map(|&r| h.vertex(r).unwrap().clone())
                .collect(),
            potential: phi,
        })
    }

    pub fn bf_balance(&self, gv: &Labeling) -> Result<BfVerdict> {
        let g = self.g;
        gv.require_vertices_total(g)?;
        let spec = gv.spec();
        for (i, e) in g.edges().iter().enumerate() {
            let s = spec.plus(gv.vertex(e.tail).unwrap(), gv.vertex(e.head).unwrap());
            if !s.is_zero() {
                let mut witness = Witness::new(e.tail, vec![Dart::forward(i), Dart::reverse(i)]);
                witness.sum = Some(s);
                return Ok(BfVerdict::NotBalanceable { edge: i, witness });
            }
        }
        let mut balancer = Labeling::empty(spec, g);
        for (i, e) in g.edges().iter().enumerate() {
            let c = self.forest.component[e.tail];
            let value = if self.bipartite[c] {
                spec.zero()
            } else {
                gv.vertex(self.forest.roots[c]).unwrap().clone()
            };
            balancer.set_edge(i, value)?;
        }
        Ok(BfVerdict::Balanceable { balancer })
    }

    pub fn structure(&self, family: Family) -> Result<StructureDescriptor> {
        family.check_mode(TraversalMode::Flexible)?;
        let mut total = StructureDescriptor::new(0, 0);
        for (c, members) in self.forest.members.iter().enumerate() {
            let n = members.len();
            let bip = self.bipartite[c];
            total = total
                + match (family, bip) {
                    (Family::HF, _) => StructureDescriptor::new(n - 1, 0),
                    (Family::WF, true) => StructureDescriptor::new(n, 0),
                    (Family::WF, false) => StructureDescriptor::new(n - 1, 1),
                    (Family::BF, true) => StructureDescriptor::new(1, 0),
                    (Family::BF, false) => StructureDescriptor::new(0, 1),
                    _ => unreachable!("mode checked above"),
                };
        }
        Ok(total)
    }
}

pub fn hf_check(g: &Digraph, f: &Labeling) -> Result<Verdict> {
    FlexibleGraph::new(g).hf_check(f)
}

/// `f(e) = phi(head) - phi(tail)`.
pub fn hf_from_potential(g: &Digraph, phi: &Labeling) -> Result<Labeling> {
    phi.require_vertices_total(g)?;
    let spec = phi.spec();
    let mut f = Labeling::empty(spec, g);
    for (i, e) in g.edges().iter().enumerate() {
        f.set_edge(
            i,
            spec.minus(phi.vertex(e.head).unwrap(), phi.vertex(e.tail).unwrap()),
        )?;
    }
    Ok(f)
}

pub fn hf_potential_of(g: &Digraph, f: &Labeling, root: Option<usize>) -> Result<Labeling> {
    FlexibleGraph::new(g).hf_potential_of(f, root)
}

pub fn wf_check(g: &Digraph, h: &Labeling) -> Result<Verdict> {
    FlexibleGraph::new(g).wf_check(h)
}

pub fn wf_from_params(g: &Digraph, spec: &GroupSpec, p: &WfParams) -> Result<Labeling> {
    FlexibleGraph::new(g).wf_from_params(spec, p)
}

pub fn wf_params_of(g: &Digraph, h: &Labeling) -> Result<WfParams> {
    FlexibleGraph::new(g).wf_params_of(h)
}

pub fn bf_balance(g: &Digraph, gv: &Labeling) -> Result<BfVerdict> {
    FlexibleGraph::new(g).bf_balance(gv)
}

pub fn flexible_structure(g: &Digraph, family: Family) -> Result<StructureDescriptor> {
    FlexibleGraph::new(g).structure(family)
}
