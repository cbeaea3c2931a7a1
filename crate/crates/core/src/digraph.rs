//! Directed multigraphs with loops and parallel edges, and the structural
//! queries the balance theory needs: weak components, bipartiteness of the
//! underlying multigraph, strongly connected components, orientations.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::GroupElement;
use crate::error::{Error, Result};

/// Largest edge count [`orientations`] accepts by default.
pub const DEFAULT_ORIENTATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

/// One traversal of an edge: an element of the doubled edge set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub direction: Direction,
}

impl Dart {
    pub fn forward(edge: usize) -> Self {
        Self {
            edge,
            direction: Direction::Forward,
        }
    }

    pub fn reverse(edge: usize) -> Self {
        Self {
            edge,
            direction: Direction::Reverse,
        }
    }

    pub fn flipped(self) -> Self {
        match self.direction {
            Direction::Forward => Self::reverse(self.edge),
            Direction::Reverse => Self::forward(self.edge),
        }
    }

    pub fn sign(self) -> i64 {
        match self.direction {
            Direction::Forward => 1,
            Direction::Reverse => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Which walks count as cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraversalMode {
    /// Edges may be walked against their direction, contributing `-f(e)`.
    Flexible,
    /// Forward traversal only.
    Rigid,
    /// Direction ignored, every traversal contributes `f(e)`.
    Undirected,
}

impl TraversalMode {
    pub fn name(self) -> &'static str {
        match self {
            TraversalMode::Flexible => "flexible",
            TraversalMode::Rigid => "rigid",
            TraversalMode::Undirected => "undirected",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Digraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    incident: Vec<Vec<Dart>>,
    out: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject edges whose endpoints were not declared with a `v` line.
    pub strict: bool,
}

#[derive(Debug, Default)]
pub struct DigraphBuilder {
    graph: Digraph,
}

impl DigraphBuilder {
    pub fn vertex(&mut self, id: &str) -> Result<usize> {
        if self.graph.vertex_index.contains_key(id) {
            return Err(Error::DuplicateVertex(id.to_owned()));
        }
        Ok(self.graph.push_vertex(id))
    }

    /// Adds an edge, creating missing endpoints.
    pub fn edge(&mut self, id: &str, tail: &str, head: &str) -> Result<usize> {
        if self.graph.edge_index.contains_key(id) {
            return Err(Error::DuplicateEdge(id.to_owned()));
        }
        let tail = self.vertex_or_existing(tail);
        let head = self.vertex_or_existing(head);
        Ok(self.graph.push_edge(id, tail, head))
    }

    fn vertex_or_existing(&mut self, id: &str) -> usize {
        match self.graph.vertex_index.get(id) {
            Some(&v) => v,
            None => self.graph.push_vertex(id),
        }
    }

    pub fn build(self) -> Digraph {
        self.graph
    }
}

impl Digraph {
    pub fn builder() -> DigraphBuilder {
        DigraphBuilder::default()
    }

    /// Convenience constructor: vertices are declared first, then edge
    /// endpoints are added as needed.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut b = Self::builder();
        for v in vertices {
            b.vertex(v)?;
        }
        for (id, tail, head) in edges {
            b.edge(id, tail, head)?;
        }
        Ok(b.build())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, ParseOptions::default())
    }

    pub fn parse_with(text: &str, options: ParseOptions) -> Result<Self> {
        let mut b = Self::builder();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["v", id] => {
                    b.vertex(id)?;
                }
                ["e", id, tail, head] => {
                    if options.strict {
                        for v in [tail, head] {
                            if b.graph.vertex(v).is_none() {
                                return Err(Error::UndeclaredVertex {
                                    edge: (*id).to_owned(),
                                    vertex: (*v).to_owned(),
                                });
                            }
                        }
                    }
                    b.edge(id, tail, head)?;
                }
                ["v", ..] => {
                    return Err(Error::GraphSyntax {
                        line,
                        message: "expected `v <vertex-id>`".into(),
                    })
                }
                ["e", ..] => {
                    return Err(Error::GraphSyntax {
                        line,
                        message: "expected `e <edge-id> <tail-id> <head-id>`".into(),
                    })
                }
                [other, ..] => {
                    return Err(Error::GraphSyntax {
                        line,
                        message: format!("unknown record type {other:?}"),
                    })
                }
            }
        }
        Ok(b.build())
    }

    /// Renders the graph back into the edge-list format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {}\n",
                e.id, self.vertices[e.tail], self.vertices[e.head]
            ));
        }
        out
    }

    fn push_vertex(&mut self, id: &str) -> usize {
        let v = self.vertices.len();
        self.vertices.push(id.to_owned());
        self.vertex_index.insert(id.to_owned(), v);
        self.incident.push(Vec::new());
        self.out.push(Vec::new());
        v
    }

    fn push_edge(&mut self, id: &str, tail: usize, head: usize) -> usize {
        let e = self.edges.len();
        self.edges.push(Edge {
            id: id.to_owned(),
            tail,
            head,
        });
        self.edge_index.insert(id.to_owned(), e);
        self.incident[tail].push(Dart::forward(e));
        self.incident[head].push(Dart::reverse(e));
        self.out[tail].push(e);
        e
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_by_id(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_owned()))
    }

    /// Darts leaving `v` in the underlying multigraph, sorted by edge index.
    /// A loop contributes both of its darts.
    pub fn incident(&self, v: usize) -> &[Dart] {
        &self.incident[v]
    }

    /// Edges with tail `v`, in index order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn source(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        match d.direction {
            Direction::Forward => e.tail,
            Direction::Reverse => e.head,
        }
    }

    pub fn target(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        match d.direction {
            Direction::Forward => e.head,
            Direction::Reverse => e.tail,
        }
    }

    /// Components of the underlying undirected multigraph, each listed in
    /// vertex order; components are ordered by their first vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let forest = SpanningForest::new(self, |_| true);
        let mut comps = forest.members.clone();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }

    /// Two-colouring of the underlying multigraph, or an odd closed walk.
    pub fn bipartition(&self) -> Bipartition {
        let forest = SpanningForest::new(self, |_| true);
        match (0..forest.component_count()).find_map(|c| odd_cycle_in_component(self, &forest, c)) {
            Some(odd_cycle) => Bipartition::NotBipartite { odd_cycle },
            None => Bipartition::Bipartite {
                classes: forest.depth.iter().map(|d| (d % 2) as u8).collect(),
            },
        }
    }

    pub fn scc(&self) -> SccDecomposition {
        SccDecomposition::new(self)
    }

    /// Same vertices and edge ids, with the edges in `flip` reversed.
    pub fn with_flipped(&self, flip: impl Fn(usize) -> bool) -> Digraph {
        let mut b = Digraph::builder();
        for v in &self.vertices {
            b.graph.push_vertex(v);
        }
        for (i, e) in self.edges.iter().enumerate() {
            let (tail, head) = if flip(i) {
                (e.head, e.tail)
            } else {
                (e.tail, e.head)
            };
            b.graph.push_edge(&e.id, tail, head);
        }
        b.build()
    }
}

/// Every orientation of `g` read as an undirected multigraph: edge `i` is
/// reversed in the `k`-th orientation iff bit `i` of `k` is set.
pub fn orientations(g: &Digraph, cap: usize) -> Result<impl Iterator<Item = Digraph> + '_> {
    let m = g.edge_count();
    if m > cap || m >= 64 {
        return Err(Error::CapExceeded {
            what: "orientation enumeration",
            needed: m as u128,
            cap: cap as u128,
        });
    }
    Ok((0u64..1 << m).map(move |mask| g.with_flipped(|e| mask >> e & 1 == 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `classes[v]` is 0 or 1; each component's first vertex is in class 0.
    Bipartite {
        classes: Vec<u8>,
    },
    NotBipartite {
        odd_cycle: Witness,
    },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

/// An odd closed walk inside forest component `c`, if one exists. Loops win
/// over longer odd cycles.
pub(crate) fn odd_cycle_in_component(
    g: &Digraph,
    forest: &SpanningForest,
    c: usize,
) -> Option<Witness> {
    let in_comp = |e: &Edge| forest.component[e.tail] == c;
    if let Some((i, e)) = g
        .edges()
        .iter()
        .enumerate()
        .find(|(_, e)| e.is_loop() && in_comp(e))
    {
        return Some(Witness::new(e.tail, vec![Dart::forward(i)]));
    }
    let (i, e) = g
        .edges()
        .iter()
        .enumerate()
        .find(|(_, e)| in_comp(e) && forest.depth[e.tail] % 2 == forest.depth[e.head] % 2)?;
    let mut darts = vec![Dart::forward(i)];
    darts.extend(forest.tree_path(e.head, e.tail));
    Some(Witness::new(e.tail, darts))
}

/// Breadth-first spanning forest of the underlying multigraph restricted to
/// the edges accepted by a filter. Roots are the lowest-index vertex of each
/// component; darts are scanned in edge-index order.
#[derive(Debug, Clone)]
pub(crate) struct SpanningForest {
    pub component: Vec<usize>,
    pub roots: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// Dart from the parent into `v`.
    pub parent: Vec<Option<Dart>>,
    pub parent_vertex: Vec<usize>,
    pub depth: Vec<usize>,
    pub tree_edge: Vec<bool>,
}

impl SpanningForest {
    pub fn new(g: &Digraph, allow: impl Fn(usize) -> bool) -> Self {
        let n = g.vertex_count();
        let mut forest = SpanningForest {
            component: vec![usize::MAX; n],
            roots: Vec::new(),
            members: Vec::new(),
            parent: vec![None; n],
            parent_vertex: (0..n).collect(),
            depth: vec![0; n],
            tree_edge: vec![false; g.edge_count()],
        };
        let mut queue = std::collections::VecDeque::new();
        for root in 0..n {
            if forest.component[root] != usize::MAX {
                continue;
            }
            let c = forest.roots.len();
            forest.roots.push(root);
            forest.members.push(vec![root]);
            forest.component[root] = c;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &d in g.incident(u) {
                    if !allow(d.edge) {
                        continue;
                    }
                    let w = g.target(d);
                    if forest.component[w] == usize::MAX {
                        forest.component[w] = c;
                        forest.parent[w] = Some(d);
                        forest.parent_vertex[w] = u;
                        forest.depth[w] = forest.depth[u] + 1;
                        forest.tree_edge[d.edge] = true;
                        forest.members[c].push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        forest
    }

    pub fn component_count(&self) -> usize {
        self.roots.len()
    }

    /// Tree darts leading from `u` to `v` (same component).
    pub fn tree_path(&self, u: usize, v: usize) -> Vec<Dart> {
        debug_assert_eq!(self.component[u], self.component[v]);
        let mut up = Vec::new();
        let mut down = Vec::new();
        let (mut a, mut b) = (u, v);
        while self.depth[a] > self.depth[b] {
            let d = self.parent[a].unwrap();
            up.push(d.flipped());
            a = self.parent_vertex(a);
        }
        while self.depth[b] > self.depth[a] {
            let d = self.parent[b].unwrap();
            down.push(d);
            b = self.parent_vertex(b);
        }
        while a != b {
            up.push(self.parent[a].unwrap().flipped());
            a = self.parent_vertex(a);
            down.push(self.parent[b].unwrap());
            b = self.parent_vertex(b);
        }
        down.reverse();
        up.extend(down);
        up
    }

    fn parent_vertex(&self, v: usize) -> usize {
        self.parent_vertex[v]
    }
}

/// Strongly connected components under mutual directed reachability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Component index per vertex; components are numbered by first vertex.
    pub component_of: Vec<usize>,
    pub component_count: usize,
    /// Edges whose endpoints lie in different components, in index order.
    pub cross_edges: Vec<usize>,
}

impl SccDecomposition {
    fn new(g: &Digraph) -> Self {
        let raw = tarjan(g);
        // Renumber by lowest member vertex.
        let mut remap = vec![usize::MAX; raw.1];
        let mut next = 0;
        let mut component_of = vec![0; g.vertex_count()];
        for (slot, &c) in component_of.iter_mut().zip(&raw.0) {
            if remap[c] == usize::MAX {
                remap[c] = next;
                next += 1;
            }
            *slot = remap[c];
        }
        let cross_edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| component_of[e.tail] != component_of[e.head])
            .map(|(i, _)| i)
            .collect();
        SccDecomposition {
            component_of,
            component_count: next,
            cross_edges,
        }
    }

    /// `r(G)`: number of edges joining distinct components.
    pub fn r(&self) -> usize {
        self.cross_edges.len()
    }

    pub fn is_cross(&self, g: &Digraph, e: usize) -> bool {
        let e = g.edge(e);
        self.component_of[e.tail] != self.component_of[e.head]
    }

    /// Members of each component, in vertex order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

// Iterative Tarjan; returns (component per vertex, component count).
fn tarjan(g: &Digraph) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut comp_count = 0;
    let mut counter = 0;
    // (vertex, position in out-edge list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != UNSEEN {
            continue;
        }
        call.push((start, 0));
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&e) = g.out_edges(v).get(*pos) {
                *pos += 1;
                let w = g.edge(e).head;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = comp_count;
                    if w == v {
                        break;
                    }
                }
                comp_count += 1;
            }
        }
    }
    (comp, comp_count)
}

/// A closed walk `v_1, d_1, v_2, d_2, ..., v_n, d_n` given by its start
/// vertex and darts; `v_{i+1}` is the target of `d_i` and the walk ends at
/// `v_1`. Balance checkers fill `sum` with the walk's label sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub start: usize,
    pub darts: Vec<Dart>,
    pub sum: Option<GroupElement>,
}

impl Witness {
    pub fn new(start: usize, darts: Vec<Dart>) -> Self {
        Self {
            start,
            darts,
            sum: None,
        }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// `v_1, ..., v_n` (the closing return to `v_1` is not repeated).
    pub fn vertices(&self, g: &Digraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.darts.len());
        let mut v = self.start;
        for &d in &self.darts {
            out.push(v);
            v = g.target(d);
        }
        out
    }

    /// Incidence, closure, and edge-distinctness for the given mode.
    pub fn validate(&self, g: &Digraph, mode: TraversalMode) -> std::result::Result<(), String> {
        if self.darts.is_empty() {
            return Err("empty walk".into());
        }
        let mut v = self.start;
        let mut seen = std::collections::HashSet::new();
        for (i, &d) in self.darts.iter().enumerate() {
            if d.edge >= g.edge_count() {
                return Err(format!("step {i}: no edge {}", d.edge));
            }
            if g.source(d) != v {
                return Err(format!("step {i}: dart does not leave {}", g.vertex_id(v)));
            }
            let key = match mode {
                TraversalMode::Flexible => d,
                TraversalMode::Rigid => {
                    if d.direction != Direction::Forward {
                        return Err(format!("step {i}: reverse traversal in rigid mode"));
                    }
                    d
                }
                TraversalMode::Undirected => Dart::forward(d.edge),
            };
            if !seen.insert(key) {
                return Err(format!("step {i}: edge {} reused", g.edge(d.edge).id));
            }
            v = g.target(d);
        }
        if v != self.start {
            return Err("walk is not closed".into());
        }
        Ok(())
    }

    /// `x +e1 y -e2 x`: `+` is a forward traversal, `-` a reverse one.
    pub fn render(&self, g: &Digraph) -> String {
        let mut out = g.vertex_id(self.start).to_owned();
        for &d in &self.darts {
            let sign = match d.direction {
                Direction::Forward => '+',
                Direction::Reverse => '-',
            };
            out.push_str(&format!(
                " {sign}{} {}",
                g.edge(d.edge).id,
                g.vertex_id(g.target(d))
            ));
        }
        out
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.direction == Direction::Forward {
            '+'
        } else {
            '-'
        };
        write!(f, "{sign}{}", self.edge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX3: &str = include_str!("../fixtures/ex3.g");
    const TRIANGLE: &str = include_str!("../fixtures/triangle.g");

    fn parse(s: &str) -> Digraph {
        Digraph::parse(s).unwrap()
    }

    #[test]
    fn parses_edge_lists() {
        let g = parse("e a x y\n");
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.vertices(), &["x", "y"]);
        assert!(parse("e a x x\n").edge(0).is_loop());
        assert_eq!(
            Digraph::parse("e a x y\ne a x y\n").unwrap_err(),
            Error::DuplicateEdge("a".into())
        );
        assert_eq!(
            Digraph::parse("v x\nv x\n").unwrap_err(),
            Error::DuplicateVertex("x".into())
        );
        assert!(matches!(
            Digraph::parse("v x\nq y\n"),
            Err(Error::GraphSyntax { line: 2, .. })
        ));
        assert!(matches!(
            Digraph::parse("e a x\n"),
            Err(Error::GraphSyntax { line: 1, .. })
        ));
        let strict = ParseOptions { strict: true };
        assert!(matches!(
            Digraph::parse_with("v x\ne a x y\n", strict),
            Err(Error::UndeclaredVertex { .. })
        ));
        assert!(Digraph::parse_with("v x\nv y\ne a x y # trailing\n", strict).is_ok());
        let round = parse(EX3);
        assert_eq!(parse(&round.to_text()).to_text(), round.to_text());
    }

    #[test]
    fn first_appearance_order() {
        let g = parse("e a q p\nv z\ne b z q\n");
        assert_eq!(g.vertices(), &["q", "p", "z"]);
    }

    #[test]
    fn weak_components_counts() {
        assert_eq!(parse(TRIANGLE).weak_components().len(), 1);
        assert_eq!(parse("v a\nv b\n").weak_components().len(), 2);
        assert_eq!(parse("").weak_components().len(), 0);
    }

    #[test]
    fn bipartition_examples() {
        let c4 = parse("e a x y\ne b y z\ne c z w\ne d w x\n");
        match c4.bipartition() {
            Bipartition::Bipartite { classes } => assert_eq!(classes, vec![0, 1, 0, 1]),
            other => panic!("{other:?}"),
        }
        let c3 = parse("e a x y\ne b y z\ne c z x\n");
        match c3.bipartition() {
            Bipartition::NotBipartite { odd_cycle } => {
                assert_eq!(odd_cycle.len(), 3);
                odd_cycle.validate(&c3, TraversalMode::Flexible).unwrap();
            }
            other => panic!("{other:?}"),
        }
        let lp = parse("e l v v\n");
        match lp.bipartition() {
            Bipartition::NotBipartite { odd_cycle } => assert_eq!(odd_cycle.len(), 1),
            other => panic!("{other:?}"),
        }
        // Parallel edges keep a graph bipartite.
        assert!(parse("e a x y\ne b x y\ne c y x\n")
            .bipartition()
            .is_bipartite());
    }

    #[test]
    fn scc_examples() {
        let ex3 = parse(EX3).scc();
        assert_eq!((ex3.component_count, ex3.r()), (1, 0));
        let tri = parse(TRIANGLE).scc();
        assert_eq!((tri.component_count, tri.r()), (3, 3));
        let single = parse("v v\n").scc();
        assert_eq!((single.component_count, single.r()), (1, 0));
        let two = parse("e a x y\ne b y x\ne c y z\n").scc();
        assert_eq!(two.component_of, vec![0, 0, 1]);
        assert_eq!(two.cross_edges, vec![2]);
    }

    #[test]
    fn orientation_enumeration() {
        assert_eq!(orientations(&parse("e a x y\n"), 20).unwrap().count(), 2);
        let g = parse("e a x y\ne b y z\ne c z x\n");
        let shapes: std::collections::HashSet<Vec<(usize, usize)>> = orientations(&g, 20)
            .unwrap()
            .map(|o| o.edges().iter().map(|e| (e.tail, e.head)).collect())
            .collect();
        assert_eq!(shapes.len(), 8);
        for o in orientations(&g, 20).unwrap() {
            assert_eq!(o.edges()[1].id, "b");
        }
        let big: String = (0..21).map(|i| format!("e e{i} a b\n")).collect();
        assert!(matches!(
            orientations(&parse(&big), 20),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn witness_validation() {
        let g = parse("e a x y\ne b y x\n");
        let ok = Witness::new(0, vec![Dart::forward(0), Dart::forward(1)]);
        ok.validate(&g, TraversalMode::Rigid).unwrap();
        assert_eq!(ok.render(&g), "x +a y +b x");
        let reused = Witness::new(0, vec![Dart::forward(0), Dart::reverse(0)]);
        reused.validate(&g, TraversalMode::Flexible).unwrap();
        assert!(reused.validate(&g, TraversalMode::Undirected).is_err());
        assert!(reused.validate(&g, TraversalMode::Rigid).is_err());
        assert!(Witness::new(0, vec![Dart::forward(0)])
            .validate(&g, TraversalMode::Flexible)
            .is_err());
    }
}
