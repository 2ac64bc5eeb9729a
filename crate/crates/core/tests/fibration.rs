use std::collections::HashMap;

use canonclass::canonical::{restriction_single_form_paths, single_form_table};
use canonclass::exactalg::Weight;
use canonclass::fibration::{
    defining_p, explicit_p, fiber_decomposition, fiber_table_by_subgraph, horizontal_paths, lambda_factorization,
    skipped_vertices, tower_restriction, tower_table, BaseProjection, TowerSpec,
};
use canonclass::gkm::{projective_space, CanonicalGraph, OrientedGraphData};
use canonclass::orbits::{lift_path, orbit_xi, FiberEngine};
use canonclass::{CartanType, Error, Orbit, Poly, RestrictionTable};

use CartanType::*;

fn base_of(o: &Orbit) -> BaseProjection {
    let base = OrientedGraphData::new(o.level_graph(1).clone(), o.xi().clone()).unwrap();
    BaseProjection::from_level(base, &o.tower().levels[0]).unwrap()
}

fn base_vertex(bp: &BaseProjection, coords: &[i64]) -> usize {
    let g = bp.base.graph();
    (0..g.num_vertices()).find(|&v| g.moment(v) == &Weight::from_ints(coords)).unwrap()
}

#[test]
fn decomposition_over_the_first_level_matches_gz() {
    for (t, n) in [(A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (D, 3)] {
        let o = Orbit::standard(t, n).unwrap();
        let cg = o.canonical();
        let bp = base_of(&o);
        let mut fibers: HashMap<usize, (Vec<usize>, RestrictionTable)> = HashMap::new();
        for b in 0..bp.base.num_vertices() {
            fibers.insert(b, fiber_table_by_subgraph(cg, &bp, b).unwrap());
        }
        let fiber = |s: usize, q: usize| -> canonclass::Result<Poly> {
            let (verts, table) = &fibers[&bp.proj[s]];
            let i = verts.iter().position(|&v| v == s).unwrap();
            let j = verts.iter().position(|&v| v == q).unwrap();
            Ok(table.get(i, j).clone())
        };
        let gz = single_form_table(cg, false).unwrap();
        for p in 0..o.num_vertices() {
            for q in 0..o.num_vertices() {
                let v = fiber_decomposition(cg, &bp, p, q, &fiber).unwrap();
                assert_eq!(&v, gz.get(p, q), "{t}{n} ({}, {})", o.id(p), o.id(q));
            }
        }
    }
}

#[test]
fn explicit_p_matches_defining_expression() {
    for (t, n) in [(A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3)] {
        let o = Orbit::standard(t, n).unwrap();
        let cg = o.canonical();
        let bp = base_of(&o);
        for p in 0..o.num_vertices() {
            for path in horizontal_paths(cg, &bp, p) {
                let a = defining_p(cg, &bp, &path).unwrap();
                let b = explicit_p(cg, &bp, &path).unwrap();
                assert_eq!(a, b, "{t}{n} {:?}", path.vertices());
            }
        }
    }
}

#[test]
fn explicit_p_needs_base_edges() {
    let o = Orbit::standard(D, 4).unwrap();
    let cg = o.canonical();
    let bp = base_of(&o);
    let mut missing = 0;
    for p in 0..o.num_vertices() {
        for path in horizontal_paths(cg, &bp, p) {
            match explicit_p(cg, &bp, &path) {
                Ok(b) => assert_eq!(defining_p(cg, &bp, &path).unwrap(), b),
                Err(Error::NotAnEdge(..)) => missing += 1,
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(missing > 0);
}

#[test]
fn skipped_vertices_in_b2() {
    let o = Orbit::standard(B, 2).unwrap();
    let bp = base_of(&o);
    let path = [base_vertex(&bp, &[-1, 0]), base_vertex(&bp, &[0, 1]), base_vertex(&bp, &[1, 0])];
    assert_eq!(skipped_vertices(&bp.base, &path), vec![base_vertex(&bp, &[0, -1])]);
    assert!(skipped_vertices(&bp.base, &path[..1]).is_empty());
}

#[test]
fn lifting_b2_base_path() {
    let o = Orbit::standard(B, 2).unwrap();
    let bp = base_of(&o);
    let p = o.resolve("m:-2,1").unwrap();
    let path = [base_vertex(&bp, &[-1, 0]), base_vertex(&bp, &[0, 1]), base_vertex(&bp, &[1, 0])];
    let lift = lift_path(&o, p, &path).unwrap();
    assert_eq!(lift.path.last(), o.resolve("m:2,-1").unwrap());
    assert_eq!(lift.by_reflections, lift.path.last());
    // wrong start
    assert!(lift_path(&o, p, &path[1..]).is_err());
}

#[test]
fn lifts_are_unique_and_reflective() {
    for (t, n) in [(A, 3), (B, 3), (C, 3), (D, 4)] {
        let o = Orbit::standard(t, n).unwrap();
        let bp = base_of(&o);
        let bg = bp.base.graph();
        for p in 0..o.num_vertices() {
            let start = bp.proj[p];
            for r in bg.neighbors(start).collect::<Vec<_>>() {
                if bp.base.phi(r) <= bp.base.phi(start) {
                    continue;
                }
                let l = lift_path(&o, p, &[start, r]).unwrap();
                assert_eq!(l.by_reflections, l.path.last(), "{t}{n}");
                assert!(o.oriented().phi(l.path.last()) > o.oriented().phi(p));
            }
        }
    }
}

#[test]
fn fiber_tables_match_the_recursive_fiber() {
    for (t, n) in [(B, 2), (B, 3), (D, 4)] {
        let o = Orbit::standard(t, n).unwrap();
        let f = FiberEngine::new(&o).unwrap();
        let cg = o.canonical();
        for b in 0..f.base().base.num_vertices() {
            let (verts, table) = fiber_table_by_subgraph(cg, f.base(), b).unwrap();
            for (i, &s) in verts.iter().enumerate() {
                for (j, &q) in verts.iter().enumerate() {
                    assert_eq!(f.fiber_value(s, q).unwrap(), table.get(i, j), "{t}{n}");
                }
            }
        }
    }
}

#[test]
fn tower_paths_are_monotone_and_fewer() {
    for (t, n) in [(A, 2), (A, 3), (B, 2), (C, 2)] {
        let o = Orbit::standard(t, n).unwrap();
        let cg = o.canonical();
        let mut fewer = 0;
        for p in 0..o.num_vertices() {
            for q in 0..o.num_vertices() {
                let r = tower_restriction(cg, o.tower(), p, q).unwrap();
                let (v, all) = restriction_single_form_paths(cg, p, q).unwrap();
                assert_eq!(r.value, v);
                assert!(r.paths.iter().all(|x| x.monotone));
                assert!(r.paths.len() <= all.len());
                if r.paths.len() < all.len() {
                    fewer += 1;
                }
            }
        }
        assert!(fewer > 0, "{t}{n}");
    }
}

#[test]
fn tower_json_round_trip() {
    let o = Orbit::standard(A, 2).unwrap();
    let j = o.tower().to_json(o.graph());
    let back = TowerSpec::from_json_str(&j.to_string(), o.graph()).unwrap();
    assert_eq!(back.len(), o.tower().len());
    assert_eq!(tower_table(o.canonical(), &back).unwrap(), tower_table(o.canonical(), o.tower()).unwrap());
}

#[test]
fn tower_without_identity_level_gets_one() {
    let o = Orbit::standard(A, 2).unwrap();
    let g = o.graph();
    let mut j = o.tower().to_json(g);
    j["levels"].as_array_mut().unwrap().pop();
    let t = TowerSpec::from_json_str(&j.to_string(), g).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(tower_table(o.canonical(), &t).unwrap(), single_form_table(o.canonical(), false).unwrap());
}

#[test]
fn bad_tower_is_rejected() {
    let o = Orbit::standard(A, 2).unwrap();
    let g = o.graph();
    let mut j = o.tower().to_json(g);
    // a projection that does not factor through the next level
    let first = j["levels"][0]["projection"].as_object_mut().unwrap();
    let keys: Vec<String> = first.keys().cloned().collect();
    let other = keys.iter().find(|k| first[*k] != first[&keys[0]]).unwrap().clone();
    let moved = first[&other].clone();
    first.insert(keys[0].clone(), moved);
    let t = TowerSpec::from_json_str(&j.to_string(), g).unwrap();
    assert!(tower_table(o.canonical(), &t).is_err());
}

#[test]
fn trivial_tower_on_projective_space() {
    let cg = CanonicalGraph::new(OrientedGraphData::with_seed(projective_space(3), 0).unwrap()).unwrap();
    let t = TowerSpec::trivial(cg.oriented().graph());
    assert_eq!(tower_table(&cg, &t).unwrap(), single_form_table(&cg, false).unwrap());
}

#[test]
fn lambda_factorizes_through_levels() {
    for (t, n) in [(A, 3), (B, 3), (C, 3), (D, 4)] {
        let o = Orbit::standard(t, n).unwrap();
        assert!(lambda_factorization(o.oriented(), o.tower(), o.level_graphs()).unwrap().is_empty(), "{t}{n}");
        assert_eq!(o.xi(), &orbit_xi(o.spec()));
    }
}
