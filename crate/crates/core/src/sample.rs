//! Seeded random members of the function groups.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::GroupSpec;
use crate::digraph::Digraph;
use crate::error::Result;
use crate::flexible::{hf_from_potential, FlexibleGraph, WfParams};
use crate::labeling::Labeling;
use crate::rigid::{wr_join, HrParams, RigidGraph};
use crate::structure::Family;

/// A random member of `family`; for BF/BR a random balanceable vertex
/// function.
pub fn sample_labeling(
    g: &Digraph,
    spec: &GroupSpec,
    family: Family,
    seed: u64,
) -> Result<Labeling> {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let potential = |roots: &[usize], rng: &mut ChaCha8Rng| -> Vec<_> {
        (0..g.vertex_count())
            .map(|v| {
                if roots.contains(&v) {
                    spec.zero()
                } else {
                    spec.sample_with(rng)
                }
            })
            .collect()
    };
    let hr = |rng: &mut ChaCha8Rng| -> Result<Labeling> {
        let rigid = RigidGraph::new(g);
        let roots = rigid.roots().to_vec();
        let p = HrParams {
            potential: potential(&roots, rng),
            cross_values: rigid
                .scc()
                .cross_edges
                .iter()
                .map(|&e| (e, spec.sample_with(rng)))
                .collect(),
            roots,
        };
        rigid.hr_from_params(spec, &p)
    };
    let wf = |rng: &mut ChaCha8Rng| -> Result<Labeling> {
        let flexible = FlexibleGraph::new(g);
        let roots = flexible.roots().to_vec();
        let amplitudes = (0..roots.len())
            .map(|c| {
                if flexible.is_component_bipartite(c) {
                    spec.sample_with(rng)
                } else {
                    spec.sample_involution(rng)
                }
            })
            .collect();
        let p = WfParams {
            potential: potential(&roots, rng),
            amplitudes,
            roots,
        };
        flexible.wf_from_params(spec, &p)
    };
    let vertices = |rng: &mut ChaCha8Rng| -> Result<Labeling> {
        let mut l = Labeling::empty(spec, g);
        for v in 0..g.vertex_count() {
            l.set_vertex(v, spec.sample_with(rng))?;
        }
        Ok(l)
    };
    match family {
        Family::HF => {
            let mut phi = Labeling::empty(spec, g);
            for v in 0..g.vertex_count() {
                phi.set_vertex(v, spec.sample_with(rng))?;
            }
            hf_from_potential(g, &phi)
        }
        Family::WF => wf(rng),
        Family::BF => Ok(wf(rng)?.vertex_part(g)),
        Family::HR => hr(rng),
        Family::WR => {
            let gv = vertices(rng)?;
            wr_join(g, &gv, &hr(rng)?)
        }
        Family::BR => vertices(rng),
    }
}
