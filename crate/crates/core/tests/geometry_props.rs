use dualball::exact::{rat, Rational};
use dualball::geometry::{
    convex_hull, equal, exposed_points, exposure_witness, minkowski_sum, polar, support, Polytope,
};
use dualball::json;
use dualball::{LatticeVector, RatVector};
use proptest::prelude::*;

fn symmetric(points: &[Vec<i64>]) -> Vec<RatVector> {
    points
        .iter()
        .flat_map(|p| [RatVector::from_ints(p), RatVector::from_ints(&p.iter().map(|c| -c).collect::<Vec<_>>())])
        .collect()
}

fn brute_support(points: &[RatVector], x: &RatVector) -> Rational {
    points.iter().map(|p| p.dot(x).unwrap()).max().unwrap()
}

fn points(d: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, d), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polar_is_an_involution(pts in points(2, -5, 5), d3 in points(3, -4, 4), pick in any::<bool>()) {
        let p = convex_hull(&symmetric(if pick { &pts } else { &d3 })).unwrap();
        prop_assume!(p.is_full_dimensional());
        let q = polar(&p).unwrap();
        prop_assert_eq!(q.vertices().len(), p.facets().len());
        prop_assert_eq!(q.facets().len(), p.vertices().len());
        prop_assert!(equal(&polar(&q).unwrap(), &p));
    }

    #[test]
    fn support_matches_vertex_maximum(pts in points(3, -6, 6), x in prop::collection::vec(-9i64..=9, 3)) {
        let raw: Vec<RatVector> = pts.iter().map(|p| RatVector::from_ints(p)).collect();
        let p = convex_hull(&raw).unwrap();
        let x = RatVector::from_ints(&x);
        let s = support(&p, &x).unwrap();
        prop_assert_eq!(&s.value, &brute_support(&raw, &x));
        for &i in &s.argmax_vertices {
            prop_assert_eq!(p.vertices()[i].dot(&x).unwrap(), s.value.clone());
        }
    }

    #[test]
    fn exposed_points_are_the_vertices(pts in points(3, -5, 5)) {
        let p = convex_hull(&symmetric(&pts)).unwrap();
        let exposed = exposed_points(&p);
        prop_assert_eq!(exposed.len(), p.vertices().len());
        let hull = convex_hull(&exposed.iter().map(|&i| p.vertices()[i].clone()).collect::<Vec<_>>()).unwrap();
        prop_assert!(equal(&hull, &p));
        if p.vertices().len() > 1 {
            for i in 0..p.vertices().len() {
                let w = exposure_witness(&p, i).unwrap().to_rational();
                let s = support(&p, &w).unwrap();
                prop_assert_eq!(s.argmax_vertices, vec![i]);
            }
        }
    }

    #[test]
    fn minkowski_support_is_additive(
        a in points(2, -5, 5),
        b in points(2, -5, 5),
        x in prop::collection::vec(-20i64..=20, 2),
    ) {
        let p = convex_hull(&a.iter().map(|v| RatVector::from_ints(v)).collect::<Vec<_>>()).unwrap();
        let q = convex_hull(&b.iter().map(|v| RatVector::from_ints(v)).collect::<Vec<_>>()).unwrap();
        let s = minkowski_sum(&p, &q).unwrap();
        let x = RatVector::from_ints(&x);
        prop_assert_eq!(
            support(&s, &x).unwrap().value,
            support(&p, &x).unwrap().value + support(&q, &x).unwrap().value
        );
    }

    #[test]
    fn polytope_files_round_trip(pts in points(3, -5, 5), den in 1i64..5) {
        let raw: Vec<RatVector> = pts
            .iter()
            .map(|p| RatVector(p.iter().map(|&c| rat(c, den)).collect()))
            .collect();
        let p = convex_hull(&raw).unwrap();
        let text = json::to_pretty(&json::polytope_value(&p));
        let back = json::polytope_from_str(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(json::to_pretty(&json::polytope_value(&back)), text);
    }

    #[test]
    fn hull_is_independent_of_input_order(mut pts in points(3, -4, 4), rot in 0usize..7) {
        let a = convex_hull(&pts.iter().map(|v| RatVector::from_ints(v)).collect::<Vec<_>>()).unwrap();
        let k = rot % pts.len();
        pts.rotate_left(k);
        pts.reverse();
        let b = convex_hull(&pts.iter().map(|v| RatVector::from_ints(v)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn polar_of_cross_polytope_in_four_dimensions_is_the_cube() {
    let mut pts = vec![];
    for j in 0..4 {
        let e = LatticeVector::unit(4, j);
        pts.push(-&e);
        pts.push(e);
    }
    let cross = Polytope::from_lattice_points(&pts).unwrap();
    assert_eq!(cross.facets().len(), 16);
    let cube = polar(&cross).unwrap();
    assert_eq!(cube.vertices().len(), 16);
    assert_eq!(cube.facets().len(), 8);
    assert!(cube.vertices().iter().all(|v| v.0.iter().all(|c| *c == rat(1, 1) || *c == rat(-1, 1))));
}
