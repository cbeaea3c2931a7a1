//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fail.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use balgraph::flexible::{hf_from_potential, FlexibleGraph, WfParams};
use balgraph::oracle::{
    check_by_definition, exhaustive_count, orientation_intersection_check, Caps, CycleConstraints,
    OracleFamily,
};
use balgraph::rigid::{wr_join, wr_split, HrParams, RigidGraph};
use balgraph::{Digraph, Family, GroupElement, GroupSpec, Labeling, Verdict};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 balanced edge functions, flexible", hf_counts),
        ("2 balanced whole-graph functions, flexible", wf_counts),
        ("3 balanceable vertex functions, flexible", bf_counts),
        ("4 balanced edge functions, rigid", hr_counts),
        ("5 balanced whole-graph functions, rigid", wr_counts),
        (
            "6 undirected balance vs all orientations",
            orientation_agreement,
        ),
        (
            "7 structured checkers vs cycle enumeration",
            checker_equivalence,
        ),
        ("8 parametrization round trips and additivity", round_trips),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn caps() -> Caps {
    Caps::default()
}

fn expect_count(
    g: &Digraph,
    name: &str,
    family: Family,
    spec: &GroupSpec,
    want: u128,
) -> Result<(), String> {
    let got = exhaustive_count(g, family, spec, &caps()).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!(
            "{family} on {name} over {spec}: counted {got}, expected {want}"
        ));
    }
    Ok(())
}

fn hf_counts() -> Outcome {
    let mut checked = 0;
    for name in ["triangle", "cycle3", "ex3", "path3", "loop", "parallel"] {
        let g = fixture(name);
        for spec in small_groups() {
            let a = spec.cardinality().unwrap();
            expect_count(&g, name, Family::HF, &spec, pow(a, g.vertex_count() - 1))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graph/group pairs"))
}

const BIPARTITE: [&str; 3] = ["cycle4", "path3", "parallel"];
const NON_BIPARTITE: [&str; 4] = ["cycle3", "triangle", "ex3", "loop"];

fn wf_counts() -> Outcome {
    let mut checked = 0;
    for spec in small_groups() {
        let a = spec.cardinality().unwrap();
        let a2 = doubling_kernel_size(&spec);
        for name in BIPARTITE {
            let g = fixture(name);
            expect_count(&g, name, Family::WF, &spec, pow(a, g.vertex_count()))?;
            checked += 1;
        }
        for name in NON_BIPARTITE {
            let g = fixture(name);
            expect_count(
                &g,
                name,
                Family::WF,
                &spec,
                a2 * pow(a, g.vertex_count() - 1),
            )?;
            checked += 1;
        }
    }
    let z4 = spec("Z/4");
    expect_count(&fixture("cycle4"), "cycle4", Family::WF, &z4, 256)?;
    expect_count(&fixture("cycle3"), "cycle3", Family::WF, &z4, 32)?;
    Ok(format!("{checked} graph/group pairs"))
}

fn bf_counts() -> Outcome {
    let mut checked = 0;
    for spec in small_groups() {
        let a = spec.cardinality().unwrap();
        let a2 = doubling_kernel_size(&spec);
        for (names, want) in [(&BIPARTITE[..], a), (&NON_BIPARTITE[..], a2)] {
            for &name in names {
                expect_count(&fixture(name), name, Family::BF, &spec, want)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} graph/group pairs"))
}

/// Fixture name, number of strongly connected components, number of edges
/// between distinct components.
const RIGID_CASES: [(&str, usize, usize); 4] = [
    ("ex3", 1, 0),
    ("triangle", 3, 3),
    ("cycle2", 1, 0),
    ("loop", 1, 0),
];

fn hr_counts() -> Outcome {
    let mut checked = 0;
    for (name, k, r) in RIGID_CASES {
        let g = fixture(name);
        for spec in small_groups() {
            let a = spec.cardinality().unwrap();
            expect_count(
                &g,
                name,
                Family::HR,
                &spec,
                pow(a, g.vertex_count() - k + r),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graph/group pairs"))
}

fn wr_counts() -> Outcome {
    let mut checked = 0;
    for (name, k, r) in RIGID_CASES {
        let g = fixture(name);
        for spec in [spec("Z/2"), spec("Z/3")] {
            let a = spec.cardinality().unwrap();
            expect_count(
                &g,
                name,
                Family::WR,
                &spec,
                pow(a, 2 * g.vertex_count() - k + r),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graph/group pairs"))
}

fn orientation_agreement() -> Outcome {
    let shapes = undirected_shapes(4);
    let labelings: u64 = shapes
        .par_iter()
        .map(orientation_agreement_on)
        .collect::<Result<Vec<u64>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{} shapes, {labelings} labelings", shapes.len()))
}

fn orientation_agreement_on(g: &Digraph) -> Result<u64, String> {
    let mut labelings = 0u64;
    let n = g.vertex_count();
    for spec in [spec("Z/2"), spec("Z/3")] {
        let elements: Vec<GroupElement> = spec.enumerate_elements().unwrap().collect();
        for whole in [false, true] {
            let mut failure = None;
            let slots = if whole {
                n + g.edge_count()
            } else {
                g.edge_count()
            };
            for_each_assignment(&elements, slots, |values| {
                if failure.is_some() {
                    return;
                }
                let l = if whole {
                    labeling(&spec, g, &values[..n], &values[n..])
                } else {
                    labeling(&spec, g, &[], values)
                };
                labelings += 1;
                match orientation_intersection_check(g, &l, whole, &caps()) {
                    Ok(report) if report.agree => {}
                    Ok(report) => {
                        failure = Some(format!("{report:?} for\n{}{}", g.to_text(), l.to_text(g)))
                    }
                    Err(e) => failure = Some(e.to_string()),
                }
            });
            if let Some(f) = failure {
                return Err(f);
            }
        }
    }
    Ok(labelings)
}

fn checker_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shapes: Vec<Digraph> = (0..200).map(|_| random_graph(&mut rng, 4, 5)).collect();
    let labelings: u64 = shapes
        .par_iter()
        .map(checker_equivalence_on)
        .collect::<Result<Vec<u64>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{} shapes, {labelings} labelings", shapes.len()))
}

fn checker_equivalence_on(g: &Digraph) -> Result<u64, String> {
    let flexible = FlexibleGraph::new(g);
    let rigid = RigidGraph::new(g);
    let n = g.vertex_count();
    let mut labelings = 0u64;
    for family in [
        OracleFamily::HF,
        OracleFamily::WF,
        OracleFamily::HR,
        OracleFamily::WR,
    ] {
        let constraints = CycleConstraints::new(g, family, &caps()).map_err(|e| e.to_string())?;
        for spec in [spec("Z/2"), spec("Z/3")] {
            let elements: Vec<GroupElement> = spec.enumerate_elements().unwrap().collect();
            let mut failure = None;
            let mut visited = 0u64;
            let slots = if family.with_vertices() {
                n + g.edge_count()
            } else {
                g.edge_count()
            };
            for_each_assignment(&elements, slots, |values| {
                if failure.is_some() {
                    return;
                }
                let (vs, es) = if family.with_vertices() {
                    values.split_at(n)
                } else {
                    (&[][..], values)
                };
                let l = labeling(&spec, g, vs, es);
                let verdict = match family {
                    OracleFamily::HF => flexible.hf_check(&l),
                    OracleFamily::WF => flexible.wf_check(&l),
                    OracleFamily::HR => rigid.hr_check(&l),
                    _ => rigid.wr_check(&l),
                }
                .unwrap();
                let all: Vec<&GroupElement> = if family.with_vertices() {
                    values.to_vec()
                } else {
                    std::iter::repeat_n(&elements[0], n)
                        .chain(values.iter().copied())
                        .collect()
                };
                let expected = constraints.is_balanced(&spec, &all);
                // The compiled constraints are the enumerated cycles merged; sample
                // them against the literal definition.
                if visited < 2 || visited.is_multiple_of(4999) {
                    let literal = check_by_definition(g, &l, family, &caps())
                        .unwrap()
                        .is_balanced();
                    if literal != expected {
                        failure = Some(format!(
                            "compiled and literal cycle checks differ on\n{}",
                            g.to_text()
                        ));
                        return;
                    }
                }
                visited += 1;
                if verdict.is_balanced() != expected {
                    failure = Some(format!(
                        "{family:?} over {spec}: checker says {}, definition says {expected} for\n{}{}",
                        verdict.is_balanced(),
                        g.to_text(),
                        l.to_text(g)
                    ));
                } else if let Verdict::Unbalanced(w) = &verdict {
                    if let Err(e) = validate_witness(g, &l, family, w) {
                        failure = Some(format!("{family:?} witness {}: {e}", w.render(g)));
                    }
                }
            });
            if let Some(f) = failure {
                return Err(f);
            }
            labelings += visited;
        }
    }
    Ok(labelings)
}

fn validate_witness(
    g: &Digraph,
    l: &Labeling,
    family: OracleFamily,
    w: &balgraph::Witness,
) -> Result<(), String> {
    w.validate(g, family.mode())?;
    let sum = l
        .walk_sum(g, w.start, &w.darts, family.mode(), family.with_vertices())
        .map_err(|e| e.to_string())?;
    if sum.is_zero() {
        return Err("sums to zero".into());
    }
    if w.sum.as_ref() != Some(&sum) {
        return Err(format!("reported sum {:?}, actual {sum}", w.sum));
    }
    Ok(())
}

fn random_vertex_labeling<R: Rng>(
    rng: &mut R,
    spec: &GroupSpec,
    g: &Digraph,
    zero_at: &[usize],
) -> Labeling {
    let mut l = Labeling::empty(spec, g);
    for v in 0..g.vertex_count() {
        let a = if zero_at.contains(&v) {
            spec.zero()
        } else {
            spec.sample_with(rng)
        };
        l.set_vertex(v, a).unwrap();
    }
    l
}

fn random_edge_labeling<R: Rng>(rng: &mut R, spec: &GroupSpec, g: &Digraph) -> Labeling {
    let mut l = Labeling::empty(spec, g);
    for e in 0..g.edge_count() {
        l.set_edge(e, spec.sample_with(rng)).unwrap();
    }
    l
}

fn vertex_values(l: &Labeling, g: &Digraph) -> Vec<GroupElement> {
    (0..g.vertex_count())
        .map(|v| l.vertex(v).unwrap().clone())
        .collect()
}

fn random_wf_params<R: Rng>(
    rng: &mut R,
    spec: &GroupSpec,
    flexible: &FlexibleGraph,
    g: &Digraph,
) -> WfParams {
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
    let potential = vertex_values(&random_vertex_labeling(rng, spec, g, &roots), g);
    WfParams {
        roots,
        amplitudes,
        potential,
    }
}

fn random_hr_params<R: Rng>(
    rng: &mut R,
    spec: &GroupSpec,
    rigid: &RigidGraph,
    g: &Digraph,
) -> HrParams {
    let roots = rigid.roots().to_vec();
    let potential = vertex_values(&random_vertex_labeling(rng, spec, g, &roots), g);
    let cross_values = rigid
        .scc()
        .cross_edges
        .iter()
        .map(|&e| (e, spec.sample_with(rng)))
        .collect();
    HrParams {
        roots,
        potential,
        cross_values,
    }
}

fn check(cond: bool, what: &str, g: &Digraph, spec: &GroupSpec) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(format!("{what} failed over {spec} on\n{}", g.to_text()))
    }
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let groups = ["Z", "Z/6", "Z/2 x Z/4", "Z^2 x Z/2", "Z/2 x Z/2 x Z/3"].map(spec);
    let draws = 1000;
    for i in 0..draws {
        let spec = &groups[i % groups.len()];
        let g = random_graph(&mut rng, 6, 9);
        let flexible = FlexibleGraph::new(&g);
        let rigid = RigidGraph::new(&g);

        // Potentials and balanced edge functions, flexible.
        let phi1 = random_vertex_labeling(&mut rng, spec, &g, flexible.roots());
        let phi2 = random_vertex_labeling(&mut rng, spec, &g, flexible.roots());
        let f1 = hf_from_potential(&g, &phi1).unwrap();
        let f2 = hf_from_potential(&g, &phi2).unwrap();
        check(
            flexible.hf_check(&f1).unwrap().is_balanced(),
            "potential image balanced",
            &g,
            spec,
        )?;
        check(
            flexible.hf_potential_of(&f1, None).unwrap() == phi1,
            "potential round trip",
            &g,
            spec,
        )?;
        check(
            hf_from_potential(&g, &flexible.hf_potential_of(&f1, None).unwrap()).unwrap() == f1,
            "edge function round trip",
            &g,
            spec,
        )?;
        let sum = hf_from_potential(&g, &phi1.add(&phi2).unwrap()).unwrap();
        check(
            sum == f1.add(&f2).unwrap(),
            "potential map additive",
            &g,
            spec,
        )?;

        // Whole-graph functions, flexible.
        let p1 = random_wf_params(&mut rng, spec, &flexible, &g);
        let p2 = random_wf_params(&mut rng, spec, &flexible, &g);
        let h1 = flexible.wf_from_params(spec, &p1).unwrap();
        let h2 = flexible.wf_from_params(spec, &p2).unwrap();
        check(
            flexible.wf_check(&h1).unwrap().is_balanced(),
            "whole-graph image balanced",
            &g,
            spec,
        )?;
        check(
            flexible.wf_params_of(&h1).unwrap() == p1,
            "whole-graph params round trip",
            &g,
            spec,
        )?;
        check(
            flexible
                .wf_from_params(spec, &flexible.wf_params_of(&h1).unwrap())
                .unwrap()
                == h1,
            "whole-graph function round trip",
            &g,
            spec,
        )?;
        let sum = flexible
            .wf_from_params(spec, &p1.add(&p2, spec).unwrap())
            .unwrap();
        check(
            sum == h1.add(&h2).unwrap(),
            "whole-graph map additive",
            &g,
            spec,
        )?;

        // Balanced edge functions, rigid.
        let q1 = random_hr_params(&mut rng, spec, &rigid, &g);
        let q2 = random_hr_params(&mut rng, spec, &rigid, &g);
        let r1 = rigid.hr_from_params(spec, &q1).unwrap();
        let r2 = rigid.hr_from_params(spec, &q2).unwrap();
        check(
            rigid.hr_check(&r1).unwrap().is_balanced(),
            "rigid image balanced",
            &g,
            spec,
        )?;
        check(
            rigid.hr_params_of(&r1).unwrap() == q1,
            "rigid params round trip",
            &g,
            spec,
        )?;
        check(
            rigid
                .hr_from_params(spec, &rigid.hr_params_of(&r1).unwrap())
                .unwrap()
                == r1,
            "rigid function round trip",
            &g,
            spec,
        )?;
        let sum = rigid
            .hr_from_params(spec, &q1.add(&q2, spec).unwrap())
            .unwrap();
        check(sum == r1.add(&r2).unwrap(), "rigid map additive", &g, spec)?;

        // Whole-graph functions, rigid: a vertex function plus a balanced
        // edge function.
        let gv1 = random_vertex_labeling(&mut rng, spec, &g, &[]);
        let gv2 = random_vertex_labeling(&mut rng, spec, &g, &[]);
        let w1 = wr_join(&g, &gv1, &r1).unwrap();
        let w2 = wr_join(&g, &gv2, &r2).unwrap();
        check(
            rigid.wr_check(&w1).unwrap().is_balanced(),
            "join balanced",
            &g,
            spec,
        )?;
        check(
            wr_split(&g, &w1).unwrap() == (gv1.clone(), r1.clone()),
            "split after join",
            &g,
            spec,
        )?;
        let (sv, sf) = wr_split(&g, &w1).unwrap();
        check(
            wr_join(&g, &sv, &sf).unwrap() == w1,
            "join after split",
            &g,
            spec,
        )?;
        let sum = wr_join(&g, &gv1.add(&gv2).unwrap(), &r1.add(&r2).unwrap()).unwrap();
        check(sum == w1.add(&w2).unwrap(), "join additive", &g, spec)?;

        // Arbitrary labelings: split never loses information.
        let any = random_edge_labeling(&mut rng, spec, &g);
        let mixed = wr_join(&g, &gv1, &any).unwrap();
        let (sv, sf) = wr_split(&g, &mixed).unwrap();
        check(sv == gv1 && sf == any, "split inverts join", &g, spec)?;
    }
    Ok(format!("{draws} draws per parametrization"))
}
