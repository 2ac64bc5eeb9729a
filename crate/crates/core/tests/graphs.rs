use canonclass::canonical::{
    adjacent_restriction, brute_solve_canonical, certify_table, monotone_paths, restriction_ordered,
    restriction_single_form_paths, single_form_table, structure_constants, verify_tech, WeightClasses,
};
use canonclass::exactalg::{Rational, Weight, XiVector};
use canonclass::gkm::{
    choose_generic_xi, enumerate_paths, projective_space, to_dot, validate_gkm, Edge, GkmGraph, Vertex, Violation,
};
use canonclass::oracle::cross_validate_graph;
use canonclass::{CanonicalGraph, Error, Orbit, OrientedGraphData, Poly};

fn canonical(g: GkmGraph) -> CanonicalGraph {
    CanonicalGraph::new(OrientedGraphData::with_seed(g, 0).unwrap()).unwrap()
}

/// `CP^1 x CP^1` with coordinates `(x1, x2, y1, y2)`.
fn quadric() -> GkmGraph {
    let w = Weight::from_ints;
    let vertices = vec![
        Vertex { id: "00".into(), moment: w(&[1, 0, 1, 0]) },
        Vertex { id: "10".into(), moment: w(&[0, 1, 1, 0]) },
        Vertex { id: "01".into(), moment: w(&[1, 0, 0, 1]) },
        Vertex { id: "11".into(), moment: w(&[0, 1, 0, 1]) },
    ];
    let x = w(&[-1, 1, 0, 0]);
    let y = w(&[0, 0, -1, 1]);
    let edges = vec![
        Edge { src: 0, dst: 1, weight: x.clone() },
        Edge { src: 2, dst: 3, weight: x },
        Edge { src: 0, dst: 2, weight: y.clone() },
        Edge { src: 1, dst: 3, weight: y },
    ];
    GkmGraph::new(4, vertices, edges).unwrap()
}

#[test]
fn cp2_basics() {
    let od = OrientedGraphData::with_seed(projective_space(2), 0).unwrap();
    assert_eq!((0..3).map(|v| od.morse_index(v)).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(od.lambda_minus(2), &Poly::parse("(x1 - x3)*(x2 - x3)", 3).unwrap());
    let cg = CanonicalGraph::new(od).unwrap();
    assert!(cg.edges().iter().all(|e| e.theta.is_one()));
    let gz = single_form_table(&cg, false).unwrap();
    assert_eq!(gz, brute_solve_canonical(cg.oriented()).unwrap());
    let (v, ledger) = restriction_single_form_paths(&cg, 0, 2).unwrap();
    assert_eq!(&v, gz.get(0, 2));
    assert_eq!(ledger.len(), 1);
    assert_eq!(adjacent_restriction(&cg, 1, 2).unwrap(), Poly::parse("x3 - x1", 3).unwrap());
    assert_eq!(gz.get(0, 1), &Poly::one(3));
}

#[test]
fn projective_spaces_agree_and_certify() {
    for n in 1..=4 {
        let cg = canonical(projective_space(n));
        let r = cross_validate_graph(&cg, n % 2 == 0).unwrap();
        assert!(r.agree(), "CP{n}: {}", r.summary());
        let table = single_form_table(&cg, false).unwrap();
        let c = certify_table(&cg, &table, &WeightClasses::moment(cg.oriented()), true);
        assert!(c.passed, "{:?}", c.failures);
        assert_eq!(c.entries, (n + 1) * (n + 1));
    }
}

#[test]
fn quadric_agrees() {
    let g = quadric();
    assert!(validate_gkm(&g).is_valid());
    let cg = canonical(g);
    assert!(cross_validate_graph(&cg, false).unwrap().agree());
    let t = single_form_table(&cg, false).unwrap();
    let top = cg.oriented().by_phi()[3];
    let min = cg.oriented().minimum();
    assert_eq!(t.get(min, top), &Poly::one(4));
    assert_eq!(t.get(top, top).degree(), Some(2));
}

#[test]
fn structure_constants_reproduce_products() {
    for g in [projective_space(3), quadric()] {
        let cg = canonical(g);
        let od = cg.oriented();
        let t = single_form_table(&cg, false).unwrap();
        let n = od.num_vertices();
        let min = od.minimum();
        for p in 0..n {
            // the class of the minimum is the unit
            let c = structure_constants(od, &t, min, p).unwrap();
            for (r, cr) in c.iter().enumerate() {
                assert_eq!(cr.is_zero(), r != p);
            }
            for q in 0..n {
                let c = structure_constants(od, &t, p, q).unwrap();
                for s in 0..n {
                    let sum = (0..n).fold(Poly::zero(od.rank()), |acc, r| &acc + &(&c[r] * t.get(r, s)));
                    assert_eq!(sum, t.get(p, s) * t.get(q, s));
                }
            }
        }
    }
}

#[test]
fn cp1_squared_hyperplane_class() {
    // alpha_1^2 = (x2 - x1) alpha_1 + alpha_2 on CP^2
    let cg = canonical(projective_space(2));
    let t = single_form_table(&cg, false).unwrap();
    let c = structure_constants(cg.oriented(), &t, 1, 1).unwrap();
    assert!(c[0].is_zero());
    assert_eq!(c[1], Poly::parse("x2 - x1", 3).unwrap());
    assert_eq!(c[2], Poly::one(3));
}

#[test]
fn ordered_classes_filter_paths() {
    let cg = canonical(projective_space(3));
    let od = cg.oriented();
    let classes = WeightClasses::moment(od);
    let t = single_form_table(&cg, false).unwrap();
    assert!(verify_tech(&cg, &classes, &t));
    for p in 0..4 {
        for q in 0..4 {
            let r = restriction_ordered(&cg, p, q, &classes).unwrap();
            assert_eq!(&r.value, t.get(p, q));
            let (_, all) = restriction_single_form_paths(&cg, p, q).unwrap();
            assert!(r.paths.len() <= all.len());
            assert!(monotone_paths(&cg, &classes, p, q).unwrap().len() <= all.len());
        }
    }
    let flipped = WeightClasses::new(vec![(0..4).map(|v| -od.graph().moment(v)).collect()]);
    assert!(!verify_tech(&cg, &flipped, &t));
}

#[test]
fn no_ascending_path_means_zero() {
    for (t, n) in [(canonclass::CartanType::B, 2), (canonclass::CartanType::A, 3)] {
        let o = Orbit::standard(t, n).unwrap();
        let table = single_form_table(o.canonical(), false).unwrap();
        let od = o.oriented();
        for p in 0..o.num_vertices() {
            for q in 0..o.num_vertices() {
                if p != q && enumerate_paths(od, p, q, true).is_empty() {
                    assert!(table.get(p, q).is_zero());
                }
            }
        }
    }
}

#[test]
fn validation_reports_each_axiom() {
    let w = Weight::from_ints;
    let v = |id: &str, m: &[i64]| Vertex { id: id.into(), moment: w(m) };
    // wrong sign: moment difference opposes the weight
    let g = GkmGraph::new(2, vec![v("a", &[0, 0]), v("b", &[1, 0])], vec![Edge { src: 0, dst: 1, weight: w(&[-1, 0]) }])
        .unwrap();
    assert!(validate_gkm(&g).violations.iter().any(|x| matches!(x, Violation::Positivity { .. })));
    // parallel weights at a vertex
    let g = GkmGraph::new(
        2,
        vec![v("a", &[0, 0]), v("b", &[1, 0]), v("c", &[2, 0])],
        vec![Edge { src: 0, dst: 1, weight: w(&[1, 0]) }, Edge { src: 0, dst: 2, weight: w(&[1, 0]) }],
    )
    .unwrap();
    let r = validate_gkm(&g);
    assert!(r.violations.iter().any(|x| matches!(x, Violation::Independence { .. })));
    assert!(r.violations.iter().any(|x| matches!(x, Violation::Regularity { .. })));
    // mirror weight that is not the negative
    let g = GkmGraph::new(
        2,
        vec![v("a", &[0, 0]), v("b", &[1, 0])],
        vec![Edge { src: 0, dst: 1, weight: w(&[1, 0]) }, Edge { src: 1, dst: 0, weight: w(&[-2, 0]) }],
    )
    .unwrap();
    assert!(validate_gkm(&g).violations.iter().any(|x| matches!(x, Violation::Symmetry { .. })));
    // zero weight
    let g = GkmGraph::new(2, vec![v("a", &[0, 0]), v("b", &[1, 0])], vec![Edge { src: 0, dst: 1, weight: w(&[0, 0]) }])
        .unwrap();
    assert!(validate_gkm(&g).violations.iter().any(|x| matches!(x, Violation::ZeroWeight { .. })));
    // structural errors
    assert!(GkmGraph::new(2, vec![v("a", &[0, 0]), v("a", &[1, 0])], vec![]).is_err());
    assert!(GkmGraph::new(2, vec![v("a", &[0, 0, 1])], vec![]).is_err());
}

#[test]
fn index_skip_is_rejected() {
    let w = Weight::from_ints;
    let g = GkmGraph::new(
        1,
        vec![
            Vertex { id: "a".into(), moment: w(&[0]) },
            Vertex { id: "b".into(), moment: w(&[1]) },
            Vertex { id: "c".into(), moment: w(&[2]) },
        ],
        vec![Edge { src: 0, dst: 1, weight: w(&[1]) }, Edge { src: 1, dst: 2, weight: w(&[1]) }],
    )
    .unwrap();
    let od = OrientedGraphData::new(g, XiVector::from_ints(&[1])).unwrap();
    assert!(!od.is_index_increasing());
    assert!(matches!(CanonicalGraph::new(od), Err(Error::NotIndexIncreasing(..))));
}

#[test]
fn non_generic_xi_is_rejected() {
    let g = projective_space(2);
    assert!(matches!(OrientedGraphData::new(g, XiVector::from_ints(&[1, 1, 0])), Err(Error::NotGeneric(_))));
}

#[test]
fn seeded_xi_is_generic_and_deterministic() {
    let g = projective_space(3);
    for seed in 0..6 {
        let a = choose_generic_xi(&g, seed);
        assert_eq!(a, choose_generic_xi(&g, seed));
        assert!(OrientedGraphData::new(g.clone(), a).is_ok());
    }
    assert_eq!(choose_generic_xi(&g, 0), XiVector::from_ints(&[1, 3, 9, 27]));
}

#[test]
fn theta_ignores_xi_scale() {
    let g = quadric();
    let xi = choose_generic_xi(&g, 0);
    let scaled = XiVector(xi.0.scale(&Rational::new(7, 3).unwrap()));
    let a = OrientedGraphData::new(g.clone(), xi).unwrap();
    let b = OrientedGraphData::new(g, scaled).unwrap();
    for e in a.graph().edges() {
        assert_eq!(a.theta(e.src, e.dst).ok(), b.theta(e.src, e.dst).ok());
    }
}

#[test]
fn magnitudes_are_positive() {
    let o = Orbit::standard(canonclass::CartanType::C, 3).unwrap();
    let od = o.oriented();
    for k in 0..od.graph().edges().len() {
        assert!(od.magnitude(k).unwrap().is_positive());
    }
    for e in o.canonical().edges() {
        assert!(od.phi(e.src) < od.phi(e.dst));
    }
}

#[test]
fn json_round_trip() {
    let g = quadric();
    let back = GkmGraph::from_json_str(&g.to_json().to_string()).unwrap();
    assert_eq!(back.vertices(), g.vertices());
    assert_eq!(back.edges(), g.edges());
    let file = GkmGraph::from_json_str(include_str!("../../../data/cp2.json")).unwrap();
    assert_eq!(file.edges(), projective_space(2).edges());
    assert!(GkmGraph::from_json_str("{\"rank\": 2}").is_err());
}

#[test]
fn dot_output() {
    let cg = canonical(projective_space(2));
    let plain = to_dot(cg.oriented(), None);
    assert_eq!(plain.matches(" -> ").count(), 6);
    let can = to_dot(cg.oriented(), Some(&cg));
    assert_eq!(can.matches(" -> ").count(), cg.edges().len());
    assert!(can.starts_with("digraph"));
}
