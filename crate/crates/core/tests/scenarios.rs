use std::collections::BTreeSet;
use std::f64::consts::{PI, SQRT_2};

use arclab_core::arc_complex::{example5_complex, tableau_complex};
use arclab_core::fatgraph::{dual_fatgraph, theorem17_harness};
use arclab_core::geom::LightConePoint;
use arclab_core::solver::{solve_arithmetic_problem, SolverConfig};
use arclab_core::triangulation::{convex_hull_cell, decorate_polygon, IdealTriangulation};

#[test]
fn torus_degeneration_report() {
    let t = IdealTriangulation::punctured_torus();
    let path: Vec<_> = (0..22)
        .map(|k| {
            let s = 0.5f64.powi(k);
            (s, vec![s, s, SQRT_2])
        })
        .collect();
    let i_set = BTreeSet::from([0, 1]);
    let rep = theorem17_harness(&t, &path, &i_set, &SolverConfig::default()).unwrap();
    assert!(rep.flagged.is_none());
    assert_eq!(rep.samples.len(), path.len());
    assert!(rep.j_subset_i, "J = {:?}", rep.j_set);
    // the dual subgraph on {0, 1} is a cycle through both triangles
    assert_eq!(rep.recurrent_of_gi, i_set);
    let last = &rep.samples.last().unwrap().1;
    assert!(last[2] < last[0] && last[2] < last[1]);
    println!("J = {:?}, R(G_I) = {:?}, last lambda = {last:?}", rep.j_set, rep.recurrent_of_gi);
}

#[test]
fn dual_graph_of_the_torus_is_all_recurrent() {
    let g = dual_fatgraph(&IdealTriangulation::punctured_torus());
    let all: BTreeSet<_> = (0..3).collect();
    assert_eq!(g.recurrent_part(&all).unwrap(), all);
    assert_eq!((g.genus(), g.boundary_cycles().len()), (1, 1));
}

/// Vertices 0, 2, 3, 4 lie on one plane, so the diagonal (0, 3) of the fan
/// has a vanishing coordinate and the hull cell drops it.
#[test]
fn zero_coordinate_on_the_hexagon_matches_the_hull() {
    let plane = |theta: f64| 1.0 / (1.0 + 0.3 * theta.cos());
    let pts: Vec<LightConePoint> = (0..6)
        .map(|k| {
            let theta = k as f64 * PI / 3.0 + 0.05 * (k as f64).sin();
            let lift = if k == 1 || k == 5 { 1.6 } else { 1.0 };
            LightConePoint::from_angle(theta, lift * plane(theta))
        })
        .collect();
    let cell = convex_hull_cell(&pts).unwrap();
    assert!(!cell.contains(&(0, 3)) && !cell.contains(&(2, 4)), "{cell:?}");
    assert!(cell.contains(&(0, 2)) && cell.contains(&(0, 4)), "{cell:?}");

    let fan = IdealTriangulation::polygon_fan(6);
    let lam = decorate_polygon(&fan, &pts).unwrap();
    let mut x = fan.simplicial_coords(&lam).unwrap();
    let e = fan.interior_edges().find(|&e| fan.diagonal_pairs([e]).contains(&(0, 3))).unwrap();
    assert!(x[e].abs() < 1e-9, "E = {}", x[e]);
    x[e] = 0.0;
    let sol = solve_arithmetic_problem(&fan, &x, &SolverConfig::default()).unwrap();
    let back = fan.simplicial_coords(&sol.lambda).unwrap();
    assert!(back[e].abs() < 1e-6, "E = {}", back[e]);
    for f in fan.interior_edges() {
        assert!((sol.lambda[f] - lam[f]).abs() <= 1e-6 * lam[f], "edge {f}: {} vs {}", sol.lambda[f], lam[f]);
    }
}

#[test]
fn tableau_complex_for_three_punctures() {
    let (named, cells) = tableau_complex(3).unwrap();
    assert_eq!(cells.iter().map(Vec::len).collect::<Vec<_>>(), vec![6, 18, 24, 12]);
    assert!(named.complex.is_chain_complex());
    assert!(named.complex.homology().is_unreduced_sphere(3));
    // every 3-cell has the same number of faces in both presentations
    let ex = example5_complex();
    let degrees = |c: &arclab_core::arc_complex::NamedChainComplex| {
        let mut d: Vec<usize> = c.names[3].iter().map(|n| c.boundary_of(n).len()).collect();
        d.sort_unstable();
        d
    };
    assert_eq!(degrees(&named), degrees(&ex));
    for n in &ex.names[1] {
        let coeffs: i64 = ex.boundary_of(n).iter().map(|(c, _)| c).sum();
        assert_eq!(coeffs, 0, "{n}");
    }
}
