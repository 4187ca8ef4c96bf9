use super::*;

#[test]
fn chord_predicates() {
    assert!(is_chord(5, (0, 2)));
    assert!(!is_chord(5, (0, 1)));
    assert!(!is_chord(5, (0, 4)));
    assert!(!is_chord(5, (3, 3)));
    assert!(chords_cross((0, 2), (1, 3)));
    assert!(!chords_cross((0, 2), (2, 4)));
    assert!(!chords_cross((0, 3), (1, 2)));
    assert!(ChordFamily::new(6, [(0, 2), (1, 3)]).is_err());
    assert!(ChordFamily::new(6, [(0, 2), (0, 3), (0, 4)]).unwrap().is_triangulation());
}

#[test]
fn small_polygons() {
    let k4 = polygon_arc_complex(4).unwrap();
    assert_eq!(k4.f_vector(), vec![2]);
    assert!(k4.is_pseudomanifold());
    let k5 = polygon_arc_complex(5).unwrap();
    assert_eq!(k5.f_vector(), vec![5, 5]);
    assert!(k5.is_pseudomanifold() && k5.is_connected());
    let k6 = polygon_arc_complex(6).unwrap();
    assert_eq!(k6.f_vector(), vec![9, 21, 14]);
    assert_eq!(k6.euler_characteristic(), 2);
    assert!(k6.has_sphere_homology(2));
}

#[test]
fn suspension_of_two_points_is_a_circle() {
    let s0 = SimplicialComplex::from_facets([vec![0], vec![1]]);
    let s1 = s0.suspension().unwrap();
    assert_eq!(s1.f_vector(), vec![4, 4]);
    assert!(s1.has_sphere_homology(1));
    assert_eq!(SimplicialComplex::empty().suspension(), Err(ArcComplexError::EmptyComplex));
}

#[test]
fn a_triangle_is_contractible() {
    let t = SimplicialComplex::from_facets([vec![0, 1, 2]]);
    assert!(t.reduced_homology().groups.iter().all(HomologyGroup::is_zero));
}

#[test]
fn links_in_the_hexagon() {
    let k6 = polygon_arc_complex(6).unwrap();
    let chords = polygon_chords(6);
    let c = chords.iter().position(|&c| c == (0, 3)).unwrap() as u32;
    let link = k6.link(&[c]).unwrap();
    assert_eq!(link.f_vector(), vec![4, 4]);
    assert!(link.has_sphere_homology(1));
    let top = k6.faces(2).next().unwrap().clone();
    let empty = k6.link(&top).unwrap();
    assert!(empty.is_empty());
    assert!(empty.has_sphere_homology(-1));
    assert!(matches!(k6.link(&[0, 1, 2, 3]), Err(ArcComplexError::FaceAbsent(_))));
}

#[test]
fn dimension_formula_examples() {
    for n in 4..10 {
        assert_eq!(dimension_formula(0, 1, 0, &[n]).unwrap(), n as i64 - 4);
    }
    assert_eq!(dimension_formula(0, 1, 3, &[1]).unwrap(), 3);
    assert_eq!(dimension_formula(0, 1, 1, &[1]).unwrap(), -1);
    assert!(dimension_formula(0, 0, 1, &[]).is_err());
}

#[test]
fn example5_is_a_three_sphere() {
    let ex = example5_complex();
    assert_eq!(ex.complex.ranks, vec![6, 18, 24, 12]);
    assert_eq!(ex.complex.euler_characteristic(), 0);
    assert!(ex.complex.is_chain_complex());
    assert!(ex.complex.homology().is_unreduced_sphere(3));
}

#[test]
fn tableau_complex_matches_example5() {
    let (tc, cells) = tableau_complex(3).unwrap();
    assert_eq!(tc.complex.ranks, vec![6, 18, 24, 12]);
    assert!(tc.complex.is_chain_complex());
    assert!(tc.complex.homology().is_unreduced_sphere(3));
    let ex = example5_complex();
    for lvl in &cells[1..] {
        for t in lvl {
            let name = example5_name(t).expect("every tableau has a letter");
            let mut ours: Vec<String> = t.faces().iter().map(|(_, f)| example5_name(f).unwrap()).collect();
            let mut theirs: Vec<String> = ex.boundary_of(&name).into_iter().map(|(_, n)| n).collect();
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "{name}");
        }
    }
}
