//! Brute-force ground truth. Cycles are enumerated literally from the
//! definitions and labelings are tested by summing along every one of them.
//! Nothing here uses potentials, spanning trees, or component structure.

use std::collections::HashSet;

use crate::abelian::{GroupElement, GroupSpec};
use crate::digraph::{orientations, Dart, Digraph, Direction, TraversalMode, Witness};
use crate::error::{Error, Result};
use crate::flexible::Verdict;
use crate::labeling::Labeling;
use crate::rigid::RigidGraph;
use crate::structure::Family;

pub const DEFAULT_MAX_CYCLE_EDGES: usize = 12;
pub const DEFAULT_MAX_ENUMERATION: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest edge count accepted by [`enumerate_cycles`].
    pub max_cycle_edges: usize,
    /// Largest number of labelings an exhaustive sweep may visit.
    pub max_enumeration: u128,
    /// Largest edge count for orientation sweeps.
    pub max_orientation_edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_cycle_edges: DEFAULT_MAX_CYCLE_EDGES,
            max_enumeration: DEFAULT_MAX_ENUMERATION,
            max_orientation_edges: crate::digraph::DEFAULT_ORIENTATION_CAP,
        }
    }
}

/// What a cycle sum ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleFamily {
    HF,
    WF,
    HR,
    WR,
    /// Edge labels, direction ignored.
    UndirectedH,
    /// Vertex and edge labels, direction ignored.
    UndirectedW,
}

impl OracleFamily {
    pub fn mode(self) -> TraversalMode {
        match self {
            OracleFamily::HF | OracleFamily::WF => TraversalMode::Flexible,
            OracleFamily::HR | OracleFamily::WR => TraversalMode::Rigid,
            OracleFamily::UndirectedH | OracleFamily::UndirectedW => TraversalMode::Undirected,
        }
    }

    pub fn with_vertices(self) -> bool {
        matches!(
            self,
            OracleFamily::WF | OracleFamily::WR | OracleFamily::UndirectedW
        )
    }

    /// The definitional family behind a function group. Balanceable vertex
    /// functions are decided through the whole-graph family.
    pub fn of(family: Family) -> Self {
        match family {
            Family::HF => OracleFamily::HF,
            Family::BF | Family::WF => OracleFamily::WF,
            Family::HR => OracleFamily::HR,
            Family::BR | Family::WR => OracleFamily::WR,
        }
    }
}

/// Closed edge-distinct walks, one representative per rotation class: the
/// rotation starting at the walk's smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSet {
    pub mode: TraversalMode,
    pub cycles: Vec<Witness>,
}

pub fn enumerate_cycles(g: &Digraph, mode: TraversalMode, max_edges: usize) -> Result<CycleSet> {
    if g.edge_count() > max_edges {
        return Err(Error::CapExceeded {
            what: "cycle enumeration",
            needed: g.edge_count() as u128,
            cap: max_edges as u128,
        });
    }
    let mut darts: Vec<Dart> = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        darts.push(Dart::forward(i));
        let reverse_allowed = match mode {
            TraversalMode::Flexible => true,
            TraversalMode::Rigid => false,
            // A loop read backwards is the same undirected traversal.
            TraversalMode::Undirected => !e.is_loop(),
        };
        if reverse_allowed {
            darts.push(Dart::reverse(i));
        }
    }
    let mut leaving: Vec<Vec<Dart>> = vec![Vec::new(); g.vertex_count()];
    for &d in &darts {
        leaving[g.source(d)].push(d);
    }
    let key = |d: Dart| match mode {
        TraversalMode::Undirected => d.edge,
        _ => d.edge * 2 + usize::from(d.direction == Direction::Reverse),
    };

    let mut cycles = Vec::new();
    for &first in &darts {
        let start = g.source(first);
        let mut used = vec![false; 2 * g.edge_count()];
        used[key(first)] = true;
        let mut path = vec![first];
        extend(
            g,
            &leaving,
            start,
            first,
            &key,
            &mut used,
            &mut path,
            &mut cycles,
        );
    }
    Ok(CycleSet { mode, cycles })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Digraph,
    leaving: &[Vec<Dart>],
    start: usize,
    first: Dart,
    key: &impl Fn(Dart) -> usize,
    used: &mut [bool],
    path: &mut Vec<Dart>,
    cycles: &mut Vec<Witness>,
) {
    let here = g.target(*path.last().expect("path is never empty"));
    if here == start {
        cycles.push(Witness::new(start, path.clone()));
    }
    for &d in &leaving[here] {
        if d <= first || used[key(d)] {
            continue;
        }
        used[key(d)] = true;
        path.push(d);
        extend(g, leaving, start, first, key, used, path, cycles);
        path.pop();
        used[key(d)] = false;
    }
}

/// Sums the labels along every enumerated cycle; the first nonzero sum is
/// returned as the witness.
pub fn check_by_definition(
    g: &Digraph,
    labels: &Labeling,
    family: OracleFamily,
    caps: &Caps,
) -> Result<Verdict> {
    labels.require_edges_total(g)?;
    if family.with_vertices() {
        labels.require_vertices_total(g)?;
    }
    let cycles = enumerate_cycles(g, family.mode(), caps.max_cycle_edges)?;
    for mut w in cycles.cycles {
        let sum = labels.walk_sum(g, w.start, &w.darts, family.mode(), family.with_vertices())?;
        if !sum.is_zero() {
            w.sum = Some(sum);
            return Ok(Verdict::Unbalanced(w));
        }
    }
    Ok(Verdict::Balanced)
}

/// Cycle sums of one graph collected into integer linear forms over label
/// slots (vertices first, then edges). Identical forms are merged, which
/// makes repeated checks over many labelings cheap.
#[derive(Debug, Clone)]
pub struct CycleConstraints {
    family: OracleFamily,
    vertex_count: usize,
    forms: Vec<Vec<(usize, i64)>>,
}

impl CycleConstraints {
    pub fn new(g: &Digraph, family: OracleFamily, caps: &Caps) -> Result<Self> {
        let cycles = enumerate_cycles(g, family.mode(), caps.max_cycle_edges)?;
        let n = g.vertex_count();
        let mut seen = HashSet::new();
        let mut forms = Vec::new();
        for w in &cycles.cycles {
            let mut coeff = vec![0i64; n + g.edge_count()];
            let mut v = w.start;
            for &d in &w.darts {
                if family.with_vertices() {
                    coeff[v] += 1;
                }
                coeff[n + d.edge] += match family.mode() {
                    TraversalMode::Undirected => 1,
                    _ => d.sign(),
                };
                v = g.target(d);
            }
            let form: Vec<(usize, i64)> = coeff
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .collect();
            if !form.is_empty() && seen.insert(form.clone()) {
                forms.push(form);
            }
        }
        Ok(Self {
            family,
            vertex_count: n,
            forms,
        })
    }

    pub fn family(&self) -> OracleFamily {
        self.family
    }

    /// `values` holds one element per slot: all vertices, then all edges.
    pub fn is_balanced(&self, spec: &GroupSpec, values: &[&GroupElement]) -> bool {
        let mut acc = spec.zero();
        self.forms.iter().all(|form| {
            acc.clone_from(&spec.zero());
            for &(slot, c) in form {
                spec.accumulate(&mut acc, values[slot], c);
            }
            acc.is_zero()
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
}

/// Number of labelings in `family` over the finite group `spec`, found by
/// visiting every labeling. For `BF`/`BR` this is the number of vertex
/// functions that some edge labeling completes to a balanced one.
pub fn exhaustive_count(
    g: &Digraph,
    family: Family,
    spec: &GroupSpec,
    caps: &Caps,
) -> Result<u128> {
    let elements: Vec<GroupElement> = spec.enumerate_elements()?.collect();
    let oracle_family = OracleFamily::of(family);
    let (first_slot, slots) = if oracle_family.with_vertices() {
        (0, g.vertex_count() + g.edge_count())
    } else {
        (g.vertex_count(), g.edge_count())
    };
    let total = (elements.len() as u128)
        .checked_pow(slots as u32)
        .filter(|&t| t <= caps.max_enumeration)
        .ok_or(Error::CapExceeded {
            what: "labeling enumeration",
            needed: (elements.len() as f64)
                .powi(slots as i32)
                .min(u128::MAX as f64) as u128,
            cap: caps.max_enumeration,
        })?;
    let constraints = CycleConstraints::new(g, oracle_family, caps)?;
    let zero = spec.zero();
    let counts_vertex_parts = matches!(family, Family::BF | Family::BR);
    let n = g.vertex_count();

    let mut digits = vec![0usize; slots];
    let mut values: Vec<&GroupElement> = vec![&zero; g.vertex_count() + g.edge_count()];
    let mut count = 0u128;
    let mut vertex_parts = HashSet::new();
    for _ in 0..total {
        for (i, &d) in digits.iter().enumerate() {
            values[first_slot + i] = &elements[d];
        }
        if constraints.is_balanced(spec, &values) {
            if counts_vertex_parts {
                vertex_parts.insert(digits[..n].to_vec());
            } else {
                count += 1;
            }
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < elements.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(if counts_vertex_parts {
        vertex_parts.len() as u128
    } else {
        count
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationReport {
    /// Balanced with respect to undirected cycles.
    pub undirected_balanced: bool,
    /// Balanced in the rigid sense for every orientation.
    pub intersection_balanced: bool,
    pub agree: bool,
}

/// Compares undirected balance of `labels` on `g` (read as undirected) with
/// rigid balance on every orientation of `g`. With `whole_graph` the sums
/// include vertex labels and the rigid check is the whole-graph one.
pub fn orientation_intersection_check(
    g: &Digraph,
    labels: &Labeling,
    whole_graph: bool,
    caps: &Caps,
) -> Result<OrientationReport> {
    let family = if whole_graph {
        OracleFamily::UndirectedW
    } else {
        OracleFamily::UndirectedH
    };
    let undirected_balanced = check_by_definition(g, labels, family, caps)?.is_balanced();
    let mut intersection_balanced = true;
    for oriented in orientations(g, caps.max_orientation_edges)? {
        let rigid = RigidGraph::new(&oriented);
        let verdict = if whole_graph {
            rigid.wr_check(labels)?
        } else {
            rigid.hr_check(labels)?
        };
        if !verdict.is_balanced() {
            intersection_balanced = false;
            break;
        }
    }
    Ok(OrientationReport {
        undirected_balanced,
        intersection_balanced,
        agree: undirected_balanced == intersection_balanced,
    })
}
