//! Canonical cell decompositions, certified valuation quadruples, and the
//! alternating-sum inclusion-exclusion checker.

use num_traits::Zero;

use crate::ehrhart::{count, discrete_moment};
use crate::error::{Error, Result};
use crate::linalg::{IntVec, RatVec, UnimodularMap};
use crate::polytope::Polytope;
use crate::rational::{rat_int, Int, Rational};

/// A quadruple (P, Q, U, I) with U = conv(P ∪ Q) and I = P ∩ Q, certified
/// by the volume identity vol(P) + vol(Q) = vol(U) + vol(I) (computed in
/// the affine chart of U, so lower-dimensional quadruples certify too).
/// The identity forces P ∪ Q = U, so any valuation satisfies
/// ω(P) + ω(Q) = ω(U) + ω(I) on the quadruple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValuationQuadruple {
    pub p: Polytope,
    pub q: Polytope,
    pub union_hull: Polytope,
    pub intersection: Polytope,
}

impl ValuationQuadruple {
    /// Builds U and I from P and Q and admits the quadruple only when the
    /// volume certificate passes.
    pub fn certify(p: Polytope, q: Polytope) -> Result<ValuationQuadruple> {
        let n = p.ambient_dim();
        if q.ambient_dim() != n {
            return Err(Error::Dimension("quadruple parts must share the ambient dimension".into()));
        }
        let mut pts: Vec<RatVec> = p.vertices().to_vec();
        pts.extend_from_slice(q.vertices());
        let union_hull = Polytope::from_points(n, pts)?;
        let intersection = p.intersect(&q)?.ok_or_else(|| {
            Error::Validation("quadruple rejected: P and Q are disjoint, so P ∪ Q cannot be convex".into())
        })?;
        // volume identity in the chart of U
        let chart = union_hull.chart();
        let d = chart.dim();
        let chart_poly = |poly: &Polytope| -> Result<Polytope> {
            let mapped: Option<Vec<RatVec>> = poly
                .vertices()
                .iter()
                .map(|v| chart.to_chart_checked(v))
                .collect();
            let mapped = mapped.ok_or_else(|| {
                Error::Validation("quadruple rejected: part leaves the affine hull of the union".into())
            })?;
            Polytope::from_points(d, mapped)
        };
        let (vp, vq, vu, vi) = (
            chart_poly(&p)?.volume(),
            chart_poly(&q)?.volume(),
            chart_poly(&union_hull)?.volume(),
            chart_poly(&intersection)?.volume(),
        );
        if &vp + &vq != &vu + &vi {
            return Err(Error::Validation(format!(
                "quadruple rejected: volume certificate fails ({vp} + {vq} != {vu} + {vi}); \
                 the union of P and Q is not convex"
            )));
        }
        Ok(ValuationQuadruple {
            p,
            q,
            union_hull,
            intersection,
        })
    }

    /// The image quadruple under x -> phi x + z; still certified because
    /// the transformation is an affine bijection.
    pub fn transformed(&self, phi: &UnimodularMap, z: &RatVec) -> Result<ValuationQuadruple> {
        let f = |p: &Polytope| -> Result<Polytope> { Ok(p.apply_unimodular(phi)?.translate(z)) };
        Ok(ValuationQuadruple {
            p: f(&self.p)?,
            q: f(&self.q)?,
            union_hull: f(&self.union_hull)?,
            intersection: f(&self.intersection)?,
        })
    }
}

/// A face of a cell decomposition together with its interior flag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompFace {
    pub polytope: Polytope,
    pub dim: usize,
    pub meets_interior: bool,
}

/// A dissection of a full-dimensional polytope into full-dimensional cells
/// meeting pairwise in common faces, with the deduplicated face complex
/// and the cell adjacency list (pairs with nonempty intersection, plus the
/// dimension of the common face).
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    pub target: Polytope,
    pub cells: Vec<Polytope>,
    pub faces: Vec<DecompFace>,
    pub adjacencies: Vec<(usize, usize, usize)>,
}

impl CellDecomposition {
    pub fn new(target: Polytope, cells: Vec<Polytope>) -> Result<CellDecomposition> {
        let n = target.ambient_dim();
        if cells.is_empty() {
            return Err(Error::Input("a cell decomposition needs at least one cell".into()));
        }
        if target.dim() != n {
            return Err(Error::Validation("decomposition target must be full-dimensional".into()));
        }
        let target_system = target.facet_system();
        let mut vol_sum = Rational::zero();
        for cell in &cells {
            if cell.ambient_dim() != n {
                return Err(Error::Dimension("cell ambient dimension mismatch".into()));
            }
            if cell.dim() != n {
                return Err(Error::Validation("cells must be full-dimensional".into()));
            }
            if cell.vertices().iter().any(|v| !target_system.contains(v)) {
                return Err(Error::Validation("cell leaves the target polytope".into()));
            }
            vol_sum += cell.volume();
        }
        if vol_sum != target.volume() {
            return Err(Error::Validation(format!(
                "cells cover volume {vol_sum}, target has volume {}",
                target.volume()
            )));
        }
        let mut adjacencies = Vec::new();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if let Some(common) = cells[i].intersect(&cells[j])? {
                    if !is_face_of(&common, &cells[i]) || !is_face_of(&common, &cells[j]) {
                        return Err(Error::Validation(format!(
                            "cells {i} and {j} do not meet in a common face"
                        )));
                    }
                    adjacencies.push((i, j, common.dim()));
                }
            }
        }
        // deduplicated face complex with interior flags
        let mut seen: std::collections::HashSet<Vec<RatVec>> = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for cell in &cells {
            for f in cell.all_faces() {
                if seen.insert(f.vertices().to_vec()) {
                    let mut witness = RatVec::zero(n);
                    for v in f.vertices() {
                        witness = witness.add(v);
                    }
                    witness = witness.scale(&(rat_int(1) / rat_int(f.n_vertices() as i64)));
                    let meets_interior = target_system.contains_strictly(&witness);
                    faces.push(DecompFace {
                        dim: f.dim(),
                        polytope: f,
                        meets_interior,
                    });
                }
            }
        }
        faces.sort_by(|a, b| {
            (a.dim, a.polytope.vertices()).cmp(&(b.dim, b.polytope.vertices()))
        });
        Ok(CellDecomposition {
            target,
            cells,
            faces,
            adjacencies,
        })
    }

    /// Per-dimension counts: (dim, faces, faces meeting the interior).
    pub fn face_census(&self) -> Vec<(usize, usize, usize)> {
        let n = self.target.ambient_dim();
        (0..=n)
            .map(|d| {
                let total = self.faces.iter().filter(|f| f.dim == d).count();
                let interior = self
                    .faces
                    .iter()
                    .filter(|f| f.dim == d && f.meets_interior)
                    .count();
                (d, total, interior)
            })
            .collect()
    }
}

/// True iff `face` is a face of `cell`: the cell vertices tight on every
/// cell facet containing `face` are exactly the vertices of `face`.
fn is_face_of(face: &Polytope, cell: &Polytope) -> bool {
    if face == cell {
        return true;
    }
    let h = cell.facet_system();
    let tight_ineqs: Vec<&(RatVec, Rational)> = h
        .inequalities
        .iter()
        .filter(|(a, c)| face.vertices().iter().all(|v| &a.dot(v) == c))
        .collect();
    if tight_ineqs.is_empty() {
        return false;
    }
    let sub: Vec<&RatVec> = cell
        .vertices()
        .iter()
        .filter(|v| tight_ineqs.iter().all(|(a, c)| &a.dot(v) == c))
        .collect();
    sub.len() == face.n_vertices() && sub.iter().zip(face.vertices()).all(|(a, b)| **a == *b)
}

/// Splits the unit cube at the corner simplex: P = T_n, Q = the hull of all
/// cube vertices except the origin, U = the cube, I = conv{e_1, ..., e_n}.
pub fn corner_split(n: usize) -> Result<ValuationQuadruple> {
    if n < 2 {
        return Err(Error::Input("corner split needs dimension at least 2".into()));
    }
    let p = Polytope::standard_simplex(n);
    let mut pts = Vec::new();
    for mask in 1..(1u32 << n) {
        pts.push(RatVec(
            (0..n).map(|i| rat_int(((mask >> i) & 1) as i64)).collect(),
        ));
    }
    let q = Polytope::from_points(n, pts)?;
    let quad = ValuationQuadruple::certify(p, q)?;
    if quad.union_hull != Polytope::unit_cube(n) {
        return Err(Error::Inconsistency("corner split union is not the cube".into()));
    }
    Ok(quad)
}

/// Staircase cells over an ordered simplex vertex list: cell i uses the
/// first i vertices lifted to the top and the tail on the bottom.
fn staircase(ordered: &[RatVec], lift: &RatVec) -> Vec<Vec<RatVec>> {
    let m = ordered.len();
    (1..=m)
        .map(|i| {
            let mut cell: Vec<RatVec> = Vec::with_capacity(m + 1);
            for w in &ordered[..i] {
                cell.push(w.add(lift));
            }
            for w in &ordered[i - 1..] {
                cell.push(w.clone());
            }
            cell
        })
        .collect()
}

/// The prism T_{n-1} + [o, e_n] dissected into n simplices, the first of
/// which is T_n.
pub fn prism_triangulation(n: usize) -> Result<CellDecomposition> {
    if n < 2 {
        return Err(Error::Input("prism triangulation needs dimension at least 2".into()));
    }
    // ordered base vertices o, e_1, ..., e_{n-1} embedded in R^n
    let mut base: Vec<RatVec> = vec![RatVec::zero(n)];
    base.extend((0..n - 1).map(|i| RatVec::unit(n, i)));
    let lift = RatVec::unit(n, n - 1);
    let mut target_pts = base.clone();
    target_pts.extend(base.iter().map(|w| w.add(&lift)));
    let target = Polytope::from_points(n, target_pts)?;
    let cells: Result<Vec<Polytope>> = staircase(&base, &lift)
        .into_iter()
        .map(|pts| Polytope::from_points(n, pts))
        .collect();
    CellDecomposition::new(target, cells?)
}

/// Triangulation of [0,1]^n into n! basic simplices, with T_n among the
/// cells; built by recursively applying the prism staircase over the
/// lexicographically ordered cells of the (n-1)-cube.
pub fn cube_triangulation(n: usize) -> Result<CellDecomposition> {
    if n < 2 {
        return Err(Error::Input("cube triangulation needs dimension at least 2".into()));
    }
    let mut cells: Vec<Vec<RatVec>> = vec![vec![
        RatVec::from_i64(&[0]),
        RatVec::from_i64(&[1]),
    ]];
    for dim in 2..=n {
        let mut next = Vec::with_capacity(cells.len() * dim);
        for cell in cells {
            let mut lifted: Vec<RatVec> = cell
                .into_iter()
                .map(|v| {
                    let mut c = v.0;
                    c.push(Rational::zero());
                    RatVec(c)
                })
                .collect();
            lifted.sort();
            next.extend(staircase(&lifted, &RatVec::unit(dim, dim - 1)));
        }
        cells = next;
    }
    let polys: Result<Vec<Polytope>> = cells
        .into_iter()
        .map(|pts| Polytope::from_points(n, pts))
        .collect();
    let polys = polys?;
    let expected: usize = (1..=n).product();
    if polys.len() != expected {
        return Err(Error::Inconsistency(format!(
            "cube triangulation produced {} cells, expected {expected}",
            polys.len()
        )));
    }
    if !polys.contains(&Polytope::standard_simplex(n)) {
        return Err(Error::Inconsistency(
            "cube triangulation does not contain the corner simplex".into(),
        ));
    }
    CellDecomposition::new(Polytope::unit_cube(n), polys)
}

/// k[0,1]^n dissected into k^n translated unit cubes.
pub fn grid_decomposition(n: usize, k: usize) -> Result<CellDecomposition> {
    if n < 1 || k < 1 {
        return Err(Error::Input("grid decomposition needs n >= 1 and k >= 1".into()));
    }
    let target = Polytope::unit_cube(n).scale_int(k as i64);
    let cube = Polytope::unit_cube(n);
    let mut cells = Vec::with_capacity(k.pow(n as u32));
    let mut offset = vec![0i64; n];
    'outer: loop {
        cells.push(cube.translate(&RatVec::from_i64(&offset)));
        for i in (0..n).rev() {
            if offset[i] + 1 < k as i64 {
                offset[i] += 1;
                for o in offset.iter_mut().skip(i + 1) {
                    *o = 0;
                }
                continue 'outer;
            }
        }
        break;
    }
    CellDecomposition::new(target, cells)
}

/// The valuations the inclusion-exclusion checker can evaluate on faces.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiscreteValuation {
    Count,
    Volume,
    Moment,
}

/// Evaluates the alternating sum of the valuation over all faces meeting
/// the interior of the target (sign (-1)^(n - dim F)) and compares it with
/// the valuation of the target, exactly.
pub fn inclusion_exclusion_check(d: &CellDecomposition, which: DiscreteValuation) -> bool {
    let n = d.target.ambient_dim();
    let sign = |dim: usize| -> bool { (n - dim) % 2 == 0 };
    match which {
        DiscreteValuation::Count => {
            let mut acc = Int::zero();
            for f in d.faces.iter().filter(|f| f.meets_interior) {
                let c = count(&f.polytope);
                if sign(f.dim) {
                    acc += c;
                } else {
                    acc -= c;
                }
            }
            acc == count(&d.target)
        }
        DiscreteValuation::Volume => {
            let mut acc = Rational::zero();
            for f in d.faces.iter().filter(|f| f.meets_interior) {
                let v = f.polytope.volume();
                if sign(f.dim) {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            acc == d.target.volume()
        }
        DiscreteValuation::Moment => {
            let mut acc = IntVec::zero(n);
            for f in d.faces.iter().filter(|f| f.meets_interior) {
                let m = discrete_moment(&f.polytope);
                acc = IntVec(
                    acc.0
                        .iter()
                        .zip(&m.0)
                        .map(|(a, b)| if sign(f.dim) { a + b } else { a - b })
                        .collect(),
                );
            }
            acc == discrete_moment(&d.target)
        }
    }
}

/// Curated quadruples: the corner split, consecutive prism staircase cells,
/// a collinear segment split, and (n <= 3) a corner cut of the doubled
/// simplex whose pieces are neither basic nor centrally symmetric.
pub fn quadruples_library(n: usize) -> Result<Vec<ValuationQuadruple>> {
    if !(2..=4).contains(&n) {
        return Err(Error::Input("quadruples library covers dimensions 2 to 4".into()));
    }
    let mut out = vec![corner_split(n)?];

    let prism = prism_triangulation(n)?;
    for pair in prism.cells.windows(2) {
        out.push(ValuationQuadruple::certify(pair[0].clone(), pair[1].clone())?);
    }

    let seg = |a: i64, b: i64| -> Polytope {
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        lo[0] = a;
        hi[0] = b;
        Polytope::from_lattice_points(n, &[lo, hi]).expect("segment")
    };
    out.push(ValuationQuadruple::certify(seg(0, 1), seg(1, 2))?);

    if n == 2 {
        let p = Polytope::from_lattice_points(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 2]])?;
        let q = Polytope::from_lattice_points(2, &[vec![1, 0], vec![2, 0], vec![1, 1]])?;
        out.push(ValuationQuadruple::certify(p, q)?);
    }
    if n == 3 {
        let p = Polytope::from_lattice_points(
            3,
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![0, 2, 0],
                vec![0, 0, 2],
                vec![1, 1, 0],
                vec![1, 0, 1],
            ],
        )?;
        let q = Polytope::from_lattice_points(
            3,
            &[vec![1, 0, 0], vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1]],
        )?;
        out.push(ValuationQuadruple::certify(p, q)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, rat};

    #[test]
    fn corner_split_examples() {
        let quad = corner_split(2).unwrap();
        assert_eq!(
            quad.intersection,
            Polytope::from_lattice_points(2, &[vec![1, 0], vec![0, 1]]).unwrap()
        );
        // Q is also the reflected simplex e1 + e2 - T_2
        let reflected = Polytope::standard_simplex(2)
            .negate()
            .translate(&RatVec::from_i64(&[1, 1]));
        assert_eq!(quad.q, reflected);

        for n in 2..=3usize {
            let quad = corner_split(n).unwrap();
            let vol_t = rat_int(1) / Rational::from_integer(factorial(n));
            assert_eq!(quad.p.volume(), vol_t);
            assert_eq!(&quad.p.volume() + &quad.q.volume(), rat_int(1));
        }
        assert_eq!(corner_split(3).unwrap().q.n_vertices(), 7);
    }

    #[test]
    fn prism_triangulation_examples() {
        for n in 2..=3usize {
            let d = prism_triangulation(n).unwrap();
            assert_eq!(d.cells.len(), n);
            assert_eq!(d.cells[0], Polytope::standard_simplex(n));
            for cell in &d.cells {
                assert!(cell.is_basic_simplex());
            }
            // shared facets only between consecutive cells
            for i in 0..n {
                for j in i + 1..n {
                    let common = d.cells[i].intersect(&d.cells[j]).unwrap().unwrap();
                    let expect = if j == i + 1 { n - 1 } else { n - 2 };
                    assert_eq!(common.dim(), expect, "cells {i},{j}");
                }
            }
            // the stored adjacency list says the same thing
            for &(i, j, dim) in &d.adjacencies {
                assert_eq!(dim, if j == i + 1 { n - 1 } else { n - 2 });
            }
            assert_eq!(
                d.target.volume(),
                rat_int(1) / Rational::from_integer(factorial(n - 1))
            );
        }
    }

    #[test]
    fn cube_triangulation_examples() {
        let d2 = cube_triangulation(2).unwrap();
        assert_eq!(d2.cells.len(), 2);
        assert!(d2.cells.contains(&Polytope::standard_simplex(2)));

        let d3 = cube_triangulation(3).unwrap();
        assert_eq!(d3.cells.len(), 6);
        assert!(d3.cells.contains(&Polytope::standard_simplex(3)));
        for cell in &d3.cells {
            assert_eq!(cell.volume(), rat(1, 6));
            assert!(cell.is_basic_simplex());
        }
        // cells pairwise share no volume
        for i in 0..6 {
            for j in i + 1..6 {
                let common = d3.cells[i].intersect(&d3.cells[j]).unwrap();
                if let Some(c) = common {
                    assert_eq!(c.volume(), rat_int(0));
                }
            }
        }
    }

    #[test]
    fn grid_census_matches_closed_form() {
        for (n, k) in [(2usize, 1usize), (2, 2), (2, 3), (3, 2)] {
            let d = grid_decomposition(n, k).unwrap();
            assert_eq!(d.cells.len(), k.pow(n as u32));
            assert_eq!(d.target.volume(), rat_int(k.pow(n as u32) as i64));
            let census = d.face_census();
            for (m, _total, interior) in census {
                // choose the m free axes, k cells along each, k-1 interior
                // grid planes along the rest
                let choose = |n: usize, m: usize| -> usize {
                    (1..=n).product::<usize>() / ((1..=m).product::<usize>() * (1..=n - m).product::<usize>())
                };
                let expect = choose(n, m) * k.pow(m as u32) * (k - 1).pow((n - m) as u32);
                assert_eq!(interior, expect, "n={n} k={k} m={m}");
            }
        }
    }

    #[test]
    fn grid_2x2_has_expected_interior_faces() {
        let d = grid_decomposition(2, 2).unwrap();
        let census = d.face_census();
        assert_eq!(census[0], (0, 9, 1)); // one interior grid vertex
        assert_eq!(census[1], (1, 12, 4)); // four interior edges
        assert_eq!(census[2], (2, 4, 4)); // all cells meet the interior
    }

    #[test]
    fn grid_interior_facets_per_normal_direction() {
        // interior (n-1)-faces with a fixed constant coordinate number
        // k^(n-1) (k-1) for each of the n axis directions
        for (n, k) in [(2usize, 3usize), (3, 2)] {
            let d = grid_decomposition(n, k).unwrap();
            for axis in 0..n {
                let count = d
                    .faces
                    .iter()
                    .filter(|f| f.meets_interior && f.dim == n - 1)
                    .filter(|f| {
                        let first = &f.polytope.vertices()[0].0[axis];
                        f.polytope.vertices().iter().all(|v| &v.0[axis] == first)
                    })
                    .count();
                assert_eq!(count, k.pow(n as u32 - 1) * (k - 1), "n={n} k={k} axis={axis}");
            }
        }
    }

    #[test]
    fn inclusion_exclusion_on_constructed_decompositions() {
        // counting valuation on the 2x2 grid: 16 - 8 + 1 = 9
        let g = grid_decomposition(2, 2).unwrap();
        assert!(inclusion_exclusion_check(&g, DiscreteValuation::Count));

        // volume is simple: lower faces contribute nothing
        let c = cube_triangulation(3).unwrap();
        assert!(inclusion_exclusion_check(&c, DiscreteValuation::Volume));

        // vector-valued moment identity on the prism cells
        let p = prism_triangulation(3).unwrap();
        assert!(inclusion_exclusion_check(&p, DiscreteValuation::Moment));
    }

    #[test]
    fn inclusion_exclusion_full_battery_small() {
        for d in [
            grid_decomposition(2, 2).unwrap(),
            grid_decomposition(2, 3).unwrap(),
            grid_decomposition(3, 2).unwrap(),
            cube_triangulation(2).unwrap(),
            cube_triangulation(3).unwrap(),
            prism_triangulation(2).unwrap(),
            prism_triangulation(3).unwrap(),
        ] {
            for w in [
                DiscreteValuation::Count,
                DiscreteValuation::Volume,
                DiscreteValuation::Moment,
            ] {
                assert!(inclusion_exclusion_check(&d, w));
            }
        }
    }

    #[test]
    fn quadruple_library_admits_curated_inputs() {
        for n in 2..=3usize {
            let lib = quadruples_library(n).unwrap();
            assert!(lib.len() >= n + 2);
            for quad in &lib {
                // I is a common face of both parts for these curated splits
                assert!(quad.p.intersect(&quad.q).unwrap().unwrap() == quad.intersection);
            }
        }
        assert!(quadruples_library(5).is_err());
    }

    #[test]
    fn quadruple_certificate_rejects_nonconvex_union() {
        // two unit squares meeting only at a corner
        let a = Polytope::unit_cube(2);
        let b = Polytope::unit_cube(2).translate(&RatVec::from_i64(&[1, 1]));
        assert!(ValuationQuadruple::certify(a, b).is_err());

        // disjoint translates
        let a = Polytope::unit_cube(2);
        let c = Polytope::unit_cube(2).translate(&RatVec::from_i64(&[5, 5]));
        assert!(ValuationQuadruple::certify(a, c).is_err());
    }

    #[test]
    fn transformed_quadruple_stays_consistent() {
        let quad = corner_split(2).unwrap();
        let phi = crate::linalg::random_unimodular(2, 12, 99).unwrap();
        let z = RatVec::from_i64(&[3, -1]);
        let t = quad.transformed(&phi, &z).unwrap();
        assert_eq!(
            t.intersection,
            quad.intersection.apply_unimodular(&phi).unwrap().translate(&z)
        );
        // the image is still a certified quadruple
        assert!(ValuationQuadruple::certify(t.p.clone(), t.q.clone()).is_ok());
    }
}
