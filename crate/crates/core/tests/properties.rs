//! Cross-cutting exact invariants, property-tested over random lattice
//! point sets.

use latval::jsonio::{polytope_from_json, polytope_to_json};
use latval::linalg::RatVec;
use latval::polytope::{vertex_enumeration, Polytope};
use proptest::prelude::*;

fn points(n: usize, max_pts: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), 1..max_pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // facet system and vertex enumeration invert each other
    #[test]
    fn duality_round_trip_2d(pts in points(2, 10)) {
        let p = Polytope::from_lattice_points(2, &pts).unwrap();
        let back = vertex_enumeration(&p.facet_system()).unwrap().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn duality_round_trip_3d(pts in points(3, 9)) {
        let p = Polytope::from_lattice_points(3, &pts).unwrap();
        let back = vertex_enumeration(&p.facet_system()).unwrap().unwrap();
        prop_assert_eq!(back, p);
    }

    // canonicalization is idempotent on its own output
    #[test]
    fn canonical_form_idempotent(pts in points(3, 10)) {
        let p = Polytope::from_lattice_points(3, &pts).unwrap();
        let again = Polytope::from_points(3, p.vertices().to_vec()).unwrap();
        prop_assert_eq!(again, p);
    }

    // emitted documents re-parse to equal polytopes
    #[test]
    fn polytope_json_round_trip(pts in points(3, 10)) {
        let p = Polytope::from_lattice_points(3, &pts).unwrap();
        let doc = polytope_to_json(&p);
        prop_assert_eq!(polytope_from_json(&doc).unwrap(), p);
    }

    // support values add under Minkowski sums, for arbitrary directions
    #[test]
    fn support_additive(
        pts1 in points(2, 8),
        pts2 in points(2, 8),
        v in proptest::collection::vec(-5i64..=5, 2),
    ) {
        let p = Polytope::from_lattice_points(2, &pts1).unwrap();
        let q = Polytope::from_lattice_points(2, &pts2).unwrap();
        let dir = RatVec::from_i64(&v);
        let s = p.minkowski_sum(&q).unwrap();
        prop_assert_eq!(s.support(&dir), p.support(&dir) + q.support(&dir));
    }
}
