//! Partial assignments of group elements to the vertices and edges of a
//! graph. An edge label stores `f(e)`; the reverse traversal reads `-f(e)`.

use crate::abelian::{GroupElement, GroupSpec};
use crate::digraph::{Dart, Digraph, TraversalMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    spec: GroupSpec,
    vertices: Vec<Option<GroupElement>>,
    edges: Vec<Option<GroupElement>>,
}

impl Labeling {
    /// Nothing labeled.
    pub fn empty(spec: &GroupSpec, g: &Digraph) -> Self {
        Self {
            spec: spec.clone(),
            vertices: vec![None; g.vertex_count()],
            edges: vec![None; g.edge_count()],
        }
    }

    /// Every vertex and edge labeled 0.
    pub fn zero(spec: &GroupSpec, g: &Digraph) -> Self {
        Self {
            spec: spec.clone(),
            vertices: vec![Some(spec.zero()); g.vertex_count()],
            edges: vec![Some(spec.zero()); g.edge_count()],
        }
    }

    /// Total labeling from dense vectors.
    pub fn from_values(
        spec: &GroupSpec,
        g: &Digraph,
        vertices: Vec<GroupElement>,
        edges: Vec<GroupElement>,
    ) -> Result<Self> {
        let mut out = Self::empty(spec, g);
        if vertices.len() != g.vertex_count() || edges.len() != g.edge_count() {
            return Err(Error::InvalidParams(format!(
                "expected {} vertex and {} edge values, got {} and {}",
                g.vertex_count(),
                g.edge_count(),
                vertices.len(),
                edges.len()
            )));
        }
        for (v, a) in vertices.into_iter().enumerate() {
            out.set_vertex(v, a)?;
        }
        for (e, a) in edges.into_iter().enumerate() {
            out.set_edge(e, a)?;
        }
        Ok(out)
    }

    /// Builds a labeling from integer coordinates, e.g. `&[&[1], &[2]]`.
    pub fn from_ints(
        spec: &GroupSpec,
        g: &Digraph,
        vertices: &[&[i64]],
        edges: &[&[i64]],
    ) -> Result<Self> {
        let conv = |xs: &[&[i64]]| -> Result<Vec<GroupElement>> {
            xs.iter().map(|c| spec.element(c)).collect()
        };
        let mut out = Self::empty(spec, g);
        for (v, a) in conv(vertices)?.into_iter().enumerate() {
            out.set_vertex(v, a)?;
        }
        for (e, a) in conv(edges)?.into_iter().enumerate() {
            out.set_edge(e, a)?;
        }
        Ok(out)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn set_vertex(&mut self, v: usize, a: GroupElement) -> Result<()> {
        self.spec.validate(&a)?;
        if v >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        self.vertices[v] = Some(a);
        Ok(())
    }

    pub fn set_edge(&mut self, e: usize, a: GroupElement) -> Result<()> {
        self.spec.validate(&a)?;
        if e >= self.edges.len() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        self.edges[e] = Some(a);
        Ok(())
    }

    pub fn vertex(&self, v: usize) -> Option<&GroupElement> {
        self.vertices.get(v).and_then(Option::as_ref)
    }

    pub fn edge(&self, e: usize) -> Option<&GroupElement> {
        self.edges.get(e).and_then(Option::as_ref)
    }

    /// Value of a traversal: `f(e)` forward, `-f(e)` reverse.
    pub fn dart(&self, d: Dart) -> Option<GroupElement> {
        let a = self.edge(d.edge)?;
        Some(match d.direction {
            crate::digraph::Direction::Forward => a.clone(),
            crate::digraph::Direction::Reverse => self.spec.neg(a),
        })
    }

    pub fn require_vertex(&self, g: &Digraph, v: usize) -> Result<&GroupElement> {
        self.vertex(v)
            .ok_or_else(|| Error::MissingVertexLabel(g.vertex_id(v).to_owned()))
    }

    pub fn require_edge(&self, g: &Digraph, e: usize) -> Result<&GroupElement> {
        self.edge(e)
            .ok_or_else(|| Error::MissingEdgeLabel(g.edge(e).id.clone()))
    }

    /// Checks the labeling fits `g` and labels every edge.
    pub fn require_edges_total(&self, g: &Digraph) -> Result<()> {
        self.require_fits(g)?;
        (0..g.edge_count()).try_for_each(|e| self.require_edge(g, e).map(drop))
    }

    pub fn require_vertices_total(&self, g: &Digraph) -> Result<()> {
        self.require_fits(g)?;
        (0..g.vertex_count()).try_for_each(|v| self.require_vertex(g, v).map(drop))
    }

    /// Sized for `g`.
    pub fn fits(&self, g: &Digraph) -> bool {
        self.vertices.len() == g.vertex_count() && self.edges.len() == g.edge_count()
    }

    fn require_fits(&self, g: &Digraph) -> Result<()> {
        if !self.fits(g) {
            return Err(Error::InvalidParams(
                "labeling was built for a different graph".into(),
            ));
        }
        Ok(())
    }

    /// Just the vertex labels.
    pub fn vertex_part(&self, g: &Digraph) -> Labeling {
        let mut out = Labeling::empty(&self.spec, g);
        out.vertices = pad(&self.vertices, g.vertex_count());
        out
    }

    /// Just the edge labels.
    pub fn edge_part(&self, g: &Digraph) -> Labeling {
        let mut out = Labeling::empty(&self.spec, g);
        out.edges = pad(&self.edges, g.edge_count());
        out
    }

    /// Pointwise sum; a slot is labeled iff it is labeled in both.
    pub fn add(&self, other: &Labeling) -> Result<Labeling> {
        if self.spec != other.spec {
            return Err(Error::InvalidParams(
                "labelings over different groups".into(),
            ));
        }
        let zip = |a: &[Option<GroupElement>], b: &[Option<GroupElement>]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| match (x, y) {
                    (Some(x), Some(y)) => Some(self.spec.plus(x, y)),
                    _ => None,
                })
                .collect()
        };
        Ok(Labeling {
            spec: self.spec.clone(),
            vertices: zip(&self.vertices, &other.vertices),
            edges: zip(&self.edges, &other.edges),
        })
    }

    /// Sum along a closed walk: each step adds the label of the vertex it
    /// leaves (when `with_vertices`) and the traversal value of its dart.
    pub fn walk_sum(
        &self,
        g: &Digraph,
        start: usize,
        darts: &[Dart],
        mode: TraversalMode,
        with_vertices: bool,
    ) -> Result<GroupElement> {
        let mut acc = self.spec.zero();
        let mut v = start;
        for &d in darts {
            if with_vertices {
                self.spec
                    .accumulate(&mut acc, self.require_vertex(g, v)?, 1);
            }
            let sign = match mode {
                TraversalMode::Undirected => 1,
                _ => d.sign(),
            };
            self.spec
                .accumulate(&mut acc, self.require_edge(g, d.edge)?, sign);
            v = g.target(d);
        }
        Ok(acc)
    }

    /// Parses the `<id><TAB><coords>` format. Ids that name both a vertex
    /// and an edge are rejected.
    pub fn parse(text: &str, g: &Digraph, spec: &GroupSpec) -> Result<Self> {
        let mut out = Labeling::empty(spec, g);
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (id, coords) =
                content
                    .split_once(|c: char| c.is_whitespace())
                    .ok_or_else(|| Error::LabelSyntax {
                        line,
                        message: "expected `<id><TAB><coords>`".into(),
                    })?;
            let value = spec.parse_element(coords).map_err(|e| Error::LabelSyntax {
                line,
                message: e.to_string(),
            })?;
            match (g.vertex(id), g.edge_by_id(id)) {
                (Some(_), Some(_)) => return Err(Error::AmbiguousId(id.to_owned())),
                (Some(v), None) => out.vertices[v] = Some(value),
                (None, Some(e)) => out.edges[e] = Some(value),
                (None, None) => {
                    return Err(Error::LabelSyntax {
                        line,
                        message: format!("{id:?} is not a vertex or edge id"),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Writes labeled vertices, then labeled edges, in graph order.
    pub fn to_text(&self, g: &Digraph) -> String {
        let mut out = String::new();
        for (v, a) in self.vertices.iter().enumerate() {
            if let Some(a) = a {
                out.push_str(&format!("{}\t{a}\n", g.vertex_id(v)));
            }
        }
        for (e, a) in self.edges.iter().enumerate() {
            if let Some(a) = a {
                out.push_str(&format!("{}\t{a}\n", g.edge(e).id));
            }
        }
        out
    }
}

fn pad(xs: &[Option<GroupElement>], n: usize) -> Vec<Option<GroupElement>> {
    let mut out = xs.to_vec();
    out.resize(n, None);
    out
}
