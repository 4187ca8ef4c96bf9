use std::collections::BTreeSet;

use arclab_core::fatgraph::{dual_fatgraph, Fatgraph};
use arclab_core::geom::{lambda_from_points, realize_triangle, LambdaTriple, QuadData};
use arclab_core::operad::{glue, RibbonArcDiagram};
use arclab_core::rna::{achiral_surface, binary_reduction, chiral_surface, Bonding, Side};
use arclab_core::scalar::{ratio, Rational};
use arclab_core::solver::{minimize_energy, SolverConfig};
use arclab_core::triangulation::IdealTriangulation;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=40).prop_map(|(n, d)| ratio(n, d))
}

fn rats(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rat(), n)
}

fn surfaces() -> Vec<IdealTriangulation> {
    vec![
        IdealTriangulation::punctured_torus(),
        IdealTriangulation::four_punctured_sphere(),
        IdealTriangulation::polygon_fan(6),
    ]
}

fn diagram(seed: u64) -> RibbonArcDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let nb = rng.gen_range(1..=3);
        let na = rng.gen_range(1..=4);
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for a in 0..na {
            for _ in 0..2 {
                slots[rng.gen_range(0..nb)].push(a);
            }
        }
        for s in &mut slots {
            s.shuffle(&mut rng);
        }
        let w = (0..na).map(|_| ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect();
        if let Ok(d) = RibbonArcDiagram::validate(slots, w) {
            return d;
        }
    }
}

fn bonding(m: usize, raw: &[(usize, usize)]) -> Bonding {
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    for &(a, b) in raw {
        let (i, j) = (a % (m + 1), b % (m + 1));
        let (i, j) = (i.min(j), i.max(j));
        if i < j && used.insert((i, j)) {
            pairs.push((i, j));
        }
    }
    Bonding::new(m, &pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ptolemy_flip_is_an_involution(a in rat(), b in rat(), c in rat(), d in rat(), e in rat()) {
        let q = QuadData::new(a, b, c, d, e).unwrap();
        prop_assert_eq!(q.flipped().flipped().e, q.e.clone());
    }

    #[test]
    fn coordinate_is_sector_combination(a in rat(), b in rat(), c in rat(), d in rat(), e in rat()) {
        let q = QuadData::new(a, b, c, d, e).unwrap();
        let s = q.sectors();
        let expected = (s.alpha.clone() + s.beta.clone() - s.epsilon) + (s.gamma.clone() + s.delta.clone() - s.phi);
        prop_assert_eq!(q.simplicial_coordinate(), expected);
        let inv = ratio(1, 1) / (q.e.clone() * q.e.clone());
        prop_assert_eq!(s.alpha * s.beta, inv.clone());
        prop_assert_eq!(s.gamma * s.delta, inv);
    }

    #[test]
    fn realized_triangle_has_its_lambda_lengths(l in proptest::array::uniform3(0.125f64..8.0)) {
        let t = LambdaTriple::new(l[0], l[1], l[2]).unwrap();
        let v = realize_triangle(&t);
        for k in 0..3 {
            let got = lambda_from_points(&v[(k + 1) % 3], &v[(k + 2) % 3]).unwrap();
            prop_assert!((got - l[k]).abs() <= 1e-9 * l[k].max(1.0), "{got} vs {}", l[k]);
        }
    }

    #[test]
    fn edge_flips_are_involutions(which in 0usize..3, lam in rats(9), e in 0usize..9) {
        let t = &surfaces()[which];
        let lam = &lam[..t.num_edges()];
        let e = e % t.num_edges();
        prop_assume!(!t.is_boundary(e));
        let (t1, l1) = t.flip_edge(lam, e).unwrap();
        prop_assert_eq!(t1.topology(), t.topology());
        let (t2, l2) = t1.flip_edge(&l1, e).unwrap();
        prop_assert!(t2.same_as(t));
        prop_assert_eq!(&l2[..], lam);
    }

    #[test]
    fn telescoping_is_exact(which in 0usize..2, lam in rats(6)) {
        let t = &surfaces()[which];
        let lam = &lam[..t.num_edges()];
        for cyc in t.triangle_cycles().unwrap() {
            let (sum_e, twice_h) = t.telescoping_check(lam, &cyc).unwrap();
            prop_assert_eq!(sum_e, twice_h);
        }
    }

    #[test]
    fn rescaling_fixes_cross_ratios(lam in rats(6), p in 0usize..4, s in rat()) {
        let t = IdealTriangulation::four_punctured_sphere();
        let scaled = t.scale_at_vertex(&lam, p, s).unwrap();
        for e in 0..t.num_edges() {
            let (q0, _, _) = t.quad_around(&lam, e).unwrap();
            let (q1, _, _) = t.quad_around(&scaled, e).unwrap();
            prop_assert_eq!(q0.cross_ratio(), q1.cross_ratio());
        }
    }

    #[test]
    fn dual_of_flip_is_whitehead_move(which in 0usize..3, seq in proptest::collection::vec(0usize..9, 1..6)) {
        let mut t = surfaces()[which].clone();
        let mut lam = vec![ratio(1, 1); t.num_edges()];
        for e in seq {
            let e = e % t.num_edges();
            if t.is_boundary(e) {
                continue;
            }
            let Ok((t2, l2)) = t.flip_edge(&lam, e) else { continue };
            let moved = dual_fatgraph(&t).whitehead_move(e).unwrap();
            prop_assert!(moved.is_isomorphic_labeled(&dual_fatgraph(&t2)));
            t = t2;
            lam = l2;
        }
    }

    #[test]
    fn recurrent_part_is_idempotent(which in 0usize..3, mask in 0u32..512) {
        let g = dual_fatgraph(&surfaces()[which]);
        let s: BTreeSet<usize> = (0..g.num_edges()).filter(|e| mask >> e & 1 == 1).collect();
        let r = g.recurrent_part(&s).unwrap();
        prop_assert!(r.is_subset(&s));
        prop_assert_eq!(g.recurrent_part(&r).unwrap(), r);
    }

    #[test]
    fn random_fatgraphs_have_integer_genus(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ne = rng.gen_range(1..=7);
        let mut halves: Vec<usize> = (0..2 * ne).collect();
        halves.shuffle(&mut rng);
        let nv = rng.gen_range(1..=ne + 1);
        let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (k, h) in halves.into_iter().enumerate() {
            rotations[if k < nv { k } else { rng.gen_range(0..nv) }].push(h);
        }
        let edges = (0..ne).map(|e| (2 * e, 2 * e + 1)).collect();
        let Ok(g) = Fatgraph::new(rotations, edges, true) else { return Ok(()) };
        let two_g = 2 - g.euler_characteristic() - g.boundary_cycles().len() as i64;
        prop_assert!(two_g >= 0 && two_g % 2 == 0);
        prop_assert_eq!(g.genus() as i64 * 2, two_g);
    }

    #[test]
    fn energy_trace_never_increases(lam in proptest::collection::vec(0.25f64..4.0, 3)) {
        let t = IdealTriangulation::punctured_torus();
        let del = t.delaunay_flip_search(&lam).unwrap();
        let x = del.triangulation.simplicial_coords(&del.lambda).unwrap();
        let rep = minimize_energy(&del.triangulation, &x, &SolverConfig::default()).unwrap();
        prop_assert!(rep.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn binary_reduction_is_binary_and_secondary(m in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..6)) {
        let b = bonding(m, &raw);
        match binary_reduction(&b) {
            Ok(r) => {
                prop_assert!(r.bonding.is_binary().unwrap());
                prop_assert!(r.bonding.is_secondary_structure());
                prop_assert_eq!(r.bonding.len(), b.len());
                prop_assert_eq!(r.site_map.len(), m + 1);
            }
            Err(_) => prop_assert!(!b.is_secondary_structure()),
        }
    }

    #[test]
    fn band_surfaces_have_the_right_euler_characteristic(m in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..6), tags in proptest::collection::vec(any::<bool>(), 12)) {
        let b = bonding(m, &raw);
        let mut deg = vec![0; m + 1];
        b.bonds().iter().for_each(|&(i, j)| { deg[i] += 1; deg[j] += 1; });
        prop_assume!(deg.iter().all(|&d| d <= 1));
        let chiral = chiral_surface(&b).unwrap();
        let above = achiral_surface(&b, &vec![Side::Above; m + 1]).unwrap();
        prop_assert_eq!(&above, &chiral);
        let sides: Vec<Side> = tags[..=m].iter().map(|&t| if t { Side::Above } else { Side::Below }).collect();
        for r in [chiral, achiral_surface(&b, &sides).unwrap()] {
            prop_assert_eq!(r.euler_characteristic, 1 - b.len() as i64);
            prop_assert_eq!(r.euler_characteristic, 2 - 2 * r.genus as i64 - r.boundary_count as i64);
            prop_assert_eq!(r.pseudoknot_cycles.len(), r.boundary_count - r.capped_count);
        }
    }

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let d = diagram(seed);
        let c = d.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert!(c.parallel_pair().is_none());
        prop_assert_eq!(c.weights().iter().cloned().sum::<Rational>(), ratio(1, 1));
    }

    #[test]
    fn gluing_respects_canonical_forms(sx in any::<u64>(), sy in any::<u64>(), pick in any::<usize>()) {
        let (x, y) = (diagram(sx), diagram(sy));
        prop_assume!(x.arity() > 0);
        let i = 1 + pick % x.arity();
        let r = glue(&x, i, &y).unwrap();
        prop_assert!(r.seam_balanced());
        prop_assert_eq!(r.diagram.arity(), x.arity() + y.arity() - 1);
        prop_assert!(r.diagram.boundaries().iter().all(|s| !s.is_empty()));
        let rc = glue(&x.canonical(), i, &y.canonical()).unwrap();
        prop_assert_eq!(r.diagram.canonical(), rc.diagram.canonical());
    }
}
