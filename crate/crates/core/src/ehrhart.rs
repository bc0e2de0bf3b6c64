//! Lattice-point enumeration, the counting and moment valuations, their
//! dilation expansions, and the discrete Steiner point.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntVec, RatVec};
use crate::poly::{lagrange_interpolate, ExactPolynomial, VectorPolynomial};
use crate::polytope::Polytope;
use crate::rational::{rat_ceil, rat_floor, Int, Rational};

/// Dilation expansion of the lattice-point count: L(kP) as an exact
/// polynomial in k of degree dim(P), with coefficients L_0, ..., L_n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EhrhartExpansion {
    polytope_dim: usize,
    polynomial: ExactPolynomial,
}

impl EhrhartExpansion {
    pub fn polynomial(&self) -> &ExactPolynomial {
        &self.polynomial
    }

    /// L_i, the degree-i coefficient.
    pub fn coefficient(&self, i: usize) -> Rational {
        self.polynomial.coeff(i)
    }

    /// Coefficients L_0 ..= L_{dim P}.
    pub fn coefficients(&self) -> Vec<Rational> {
        (0..=self.polytope_dim).map(|i| self.coefficient(i)).collect()
    }

    pub fn degree(&self) -> usize {
        self.polynomial.degree().unwrap_or(0)
    }

    pub fn evaluate(&self, k: i64) -> Rational {
        self.polynomial.eval_int(k)
    }
}

/// Dilation expansion of the discrete moment vector: one polynomial per
/// coordinate, zero constant term, degree at most dim(P) + 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentExpansion {
    polytope_dim: usize,
    polynomial: VectorPolynomial,
}

impl MomentExpansion {
    pub fn vector_polynomial(&self) -> &VectorPolynomial {
        &self.polynomial
    }

    /// The coefficient vector of degree i.
    pub fn coefficient_vector(&self, i: usize) -> RatVec {
        self.polynomial.coeff_vector(i)
    }

    /// Coefficient vectors for degrees 1 ..= dim(P) + 1.
    pub fn coefficient_vectors(&self) -> Vec<RatVec> {
        (1..=self.polytope_dim + 1)
            .map(|i| self.coefficient_vector(i))
            .collect()
    }

    pub fn evaluate(&self, k: i64) -> RatVec {
        self.polynomial.eval_int(k)
    }
}

struct IntConstraint {
    normal: Vec<Int>,
    offset: Int,
    equality: bool,
}

fn integerize(a: &RatVec, b: &Rational, equality: bool) -> IntConstraint {
    let mut scale = b.denom().clone();
    for c in &a.0 {
        scale = num_integer::lcm(scale, c.denom().clone());
    }
    IntConstraint {
        normal: a.0.iter().map(|c| c.numer() * (&scale / c.denom())).collect(),
        offset: b.numer() * (&scale / b.denom()),
        equality,
    }
}

/// All lattice points of the polytope: bounding-box points filtered by the
/// facet system, in lexicographic order.
pub fn enumerate_lattice_points(p: &Polytope) -> Vec<IntVec> {
    let n = p.ambient_dim();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for c in 0..n {
        let min = p.vertices().iter().map(|v| &v.0[c]).min().expect("nonempty");
        let max = p.vertices().iter().map(|v| &v.0[c]).max().expect("nonempty");
        lo.push(rat_ceil(min));
        hi.push(rat_floor(max));
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let h = p.facet_system();
    let mut cons: Vec<IntConstraint> = h
        .inequalities
        .iter()
        .map(|(a, b)| integerize(a, b, false))
        .collect();
    cons.extend(h.equations.iter().map(|(a, b)| integerize(a, b, true)));

    // i128 fast path when coefficients and coordinates are comfortably small
    let small_bound = Int::from(1i64 << 56);
    let coord_bound = Int::from(1i64 << 30);
    let small = cons
        .iter()
        .all(|c| c.normal.iter().all(|x| x.abs() < small_bound) && c.offset.abs() < small_bound)
        && lo.iter().chain(&hi).all(|x| x.abs() < coord_bound);

    let mut out = Vec::new();
    if small {
        let cons128: Vec<(Vec<i128>, i128, bool)> = cons
            .iter()
            .map(|c| {
                (
                    c.normal.iter().map(|x| x.to_i128().expect("bounded")).collect(),
                    c.offset.to_i128().expect("bounded"),
                    c.equality,
                )
            })
            .collect();
        let lo128: Vec<i128> = lo.iter().map(|x| x.to_i128().expect("bounded")).collect();
        let hi128: Vec<i128> = hi.iter().map(|x| x.to_i128().expect("bounded")).collect();
        let mut x = lo128.clone();
        'outer: loop {
            let ok = cons128.iter().all(|(a, b, eq)| {
                let v: i128 = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
                if *eq {
                    v == *b
                } else {
                    v <= *b
                }
            });
            if ok {
                out.push(IntVec(x.iter().map(|&c| Int::from(c)).collect()));
            }
            // lexicographic odometer
            for i in (0..n).rev() {
                if x[i] < hi128[i] {
                    x[i] += 1;
                    for j in i + 1..n {
                        x[j] = lo128[j];
                    }
                    continue 'outer;
                }
            }
            break;
        }
    } else {
        let mut x = lo.clone();
        'outer_big: loop {
            let ok = cons.iter().all(|c| {
                let v: Int = c.normal.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
                if c.equality {
                    v == c.offset
                } else {
                    v <= c.offset
                }
            });
            if ok {
                out.push(IntVec(x.clone()));
            }
            for i in (0..n).rev() {
                if x[i] < hi[i] {
                    x[i] += 1;
                    for j in i + 1..n {
                        x[j] = lo[j].clone();
                    }
                    continue 'outer_big;
                }
            }
            break;
        }
    }
    out
}

/// L(P): the number of lattice points.
pub fn count(p: &Polytope) -> Int {
    Int::from(enumerate_lattice_points(p).len())
}

/// The discrete moment vector: the sum of all lattice points of P.
pub fn discrete_moment(p: &Polytope) -> IntVec {
    let n = p.ambient_dim();
    let mut acc = IntVec::zero(n);
    for pt in enumerate_lattice_points(p) {
        acc = acc.add(&pt);
    }
    acc
}

/// Interpolates L(kP) at k = 0..=n into the exact dilation polynomial.
pub fn ehrhart(p: &Polytope) -> Result<EhrhartExpansion> {
    let n = p.ambient_dim();
    let d = p.dim();
    let samples: Vec<(Int, Rational)> = (0..=n as i64)
        .map(|k| {
            (
                Int::from(k),
                Rational::from_integer(count(&p.scale_int(k))),
            )
        })
        .collect();
    let polynomial = lagrange_interpolate(&samples)?;
    if polynomial.degree().unwrap_or(0) > d {
        return Err(Error::Inconsistency(format!(
            "count expansion has degree {} > dim {}",
            polynomial.degree().unwrap_or(0),
            d
        )));
    }
    Ok(EhrhartExpansion {
        polytope_dim: d,
        polynomial,
    })
}

/// Interpolates the moment vector of dilates at k = 0..=n+1, coordinate by
/// coordinate. The constant term must vanish.
pub fn moment_expansion(p: &Polytope) -> Result<MomentExpansion> {
    let n = p.ambient_dim();
    let d = p.dim();
    let moments: Vec<IntVec> = (0..=n as i64 + 1)
        .map(|k| discrete_moment(&p.scale_int(k)))
        .collect();
    let mut coords = Vec::with_capacity(n);
    for c in 0..n {
        let samples: Vec<(Int, Rational)> = moments
            .iter()
            .enumerate()
            .map(|(k, m)| (Int::from(k as i64), Rational::from_integer(m.0[c].clone())))
            .collect();
        let poly = lagrange_interpolate(&samples)?;
        if !poly.coeff(0).is_zero() {
            return Err(Error::Inconsistency(
                "moment expansion has a nonzero constant term".into(),
            ));
        }
        if poly.degree().unwrap_or(0) > d + 1 {
            return Err(Error::Inconsistency(format!(
                "moment expansion has degree {} > dim + 1 = {}",
                poly.degree().unwrap_or(0),
                d + 1
            )));
        }
        coords.push(poly);
    }
    Ok(MomentExpansion {
        polytope_dim: d,
        polynomial: VectorPolynomial::new(coords),
    })
}

/// The discrete Steiner point: the degree-one coefficient vector of the
/// moment expansion.
pub fn discrete_steiner(p: &Polytope) -> Result<RatVec> {
    Ok(moment_expansion(p)?.coefficient_vector(1))
}

/// Fits L(kP + lQ) on the triangular grid k + l <= degree_bound by exact
/// interpolation, then checks the fit on the full square grid and at three
/// out-of-grid samples.
pub fn bivariate_count_check(p: &Polytope, q: &Polytope, degree_bound: usize) -> Result<bool> {
    let n = p.ambient_dim();
    if q.ambient_dim() != n {
        return Err(Error::Dimension("polytopes must share the ambient dimension".into()));
    }
    if degree_bound < n {
        return Err(Error::Input(format!(
            "degree bound {degree_bound} below ambient dimension {n}"
        )));
    }
    let dd = degree_bound as i64;
    let count_at = |k: i64, l: i64| -> Result<Rational> {
        let sum = p.scale_int(k).minkowski_sum(&q.scale_int(l))?;
        Ok(Rational::from_integer(count(&sum)))
    };
    // monomials k^i l^j with i + j <= D; the triangular grid of the same
    // index pairs is unisolvent for total degree D
    let mut monomials = Vec::new();
    for i in 0..=dd {
        for j in 0..=(dd - i) {
            monomials.push((i, j));
        }
    }
    let nodes = monomials.clone();
    let mono_val = |k: i64, l: i64, i: i64, j: i64| -> Rational {
        Rational::from_integer(Int::from(k).pow(i as u32) * Int::from(l).pow(j as u32))
    };
    let mut rows = Vec::with_capacity(nodes.len());
    let mut rhs = Vec::with_capacity(nodes.len());
    for &(k, l) in &nodes {
        rows.push(RatVec(
            monomials.iter().map(|&(i, j)| mono_val(k, l, i, j)).collect(),
        ));
        rhs.push(count_at(k, l)?);
    }
    let coeffs = crate::linalg::solve_linear(&rows, &RatVec(rhs))?
        .ok_or_else(|| Error::Inconsistency("triangular interpolation grid was singular".into()))?;
    let eval = |k: i64, l: i64| -> Rational {
        monomials
            .iter()
            .zip(&coeffs.0)
            .map(|(&(i, j), c)| c * mono_val(k, l, i, j))
            .sum()
    };
    // rest of the square grid plus three out-of-grid samples
    let mut checks: Vec<(i64, i64)> = Vec::new();
    for k in 0..=dd {
        for l in 0..=dd {
            if k + l > dd {
                checks.push((k, l));
            }
        }
    }
    checks.extend_from_slice(&[(dd + 1, dd), (dd, dd + 1), (dd + 1, dd + 1)]);
    for (k, l) in checks {
        if eval(k, l) != count_at(k, l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact comparison of L_1(P + Q) with L_1(P) + L_1(Q).
pub fn l1_additivity_check(p: &Polytope, q: &Polytope) -> Result<bool> {
    let sum = p.minkowski_sum(q)?;
    let lhs = ehrhart(&sum)?.coefficient(1);
    let rhs = ehrhart(p)?.coefficient(1) + ehrhart(q)?.coefficient(1);
    Ok(lhs == rhs)
}

/// Detects central symmetry: reflection through the midpoint of the
/// lexicographically extreme vertex pair maps the vertex set to itself.
pub fn is_centrally_symmetric(p: &Polytope) -> bool {
    let two_center = p.lex_min().add(p.lex_max());
    p.negate().translate(&two_center) == *p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unimodular;
    use crate::rational::{factorial, rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lp(n: usize, pts: &[Vec<i64>]) -> Polytope {
        Polytope::from_lattice_points(n, pts).unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
        let pts: Vec<Vec<i64>> = (0..n + 4)
            .map(|_| (0..n).map(|_| rng.random_range(0i64..=4)).collect())
            .collect();
        Polytope::from_lattice_points(n, &pts).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let t2 = Polytope::standard_simplex(2);
        let pts = enumerate_lattice_points(&t2);
        assert_eq!(
            pts,
            vec![
                IntVec::from_i64(&[0, 0]),
                IntVec::from_i64(&[0, 1]),
                IntVec::from_i64(&[1, 0]),
            ]
        );
        assert_eq!(enumerate_lattice_points(&Polytope::unit_cube(3)).len(), 8);
        assert_eq!(enumerate_lattice_points(&t2.scale_int(2)).len(), 6);
    }

    #[test]
    fn enumerate_lower_dimensional() {
        let seg = lp(3, &[vec![0, 0, 0], vec![2, 2, 0]]);
        assert_eq!(enumerate_lattice_points(&seg).len(), 3);
        let diag = lp(2, &[vec![0, 0], vec![3, 3]]);
        assert_eq!(enumerate_lattice_points(&diag).len(), 4);
    }

    #[test]
    fn enumerate_rational_polytopes() {
        // half the corner simplex holds only the origin
        let half = Polytope::standard_simplex(2).scale(&rat(1, 2));
        assert_eq!(
            enumerate_lattice_points(&half),
            vec![IntVec::from_i64(&[0, 0])]
        );
        // a box missing the lattice entirely
        let slab = Polytope::from_points(
            2,
            vec![
                RatVec(vec![rat(1, 3), rat(1, 3)]),
                RatVec(vec![rat(2, 3), rat(1, 3)]),
                RatVec(vec![rat(1, 3), rat(2, 3)]),
                RatVec(vec![rat(2, 3), rat(2, 3)]),
            ],
        )
        .unwrap();
        assert!(enumerate_lattice_points(&slab).is_empty());
        assert_eq!(count(&slab), Int::from(0));
    }

    #[test]
    fn count_matches_product_oracle_on_cubes() {
        for n in 2..=3usize {
            let cube = Polytope::unit_cube(n);
            for k in 0..=4i64 {
                assert_eq!(count(&cube.scale_int(k)), Int::from((k + 1).pow(n as u32)));
            }
        }
    }

    #[test]
    fn count_translation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 2);
            let z = RatVec::from_i64(&[rng.random_range(-5i64..=5), rng.random_range(-5..=5)]);
            assert_eq!(count(&p), count(&p.translate(&z)));
        }
    }

    #[test]
    fn moment_examples_and_transform_rules() {
        let t2 = Polytope::standard_simplex(2);
        assert_eq!(discrete_moment(&t2), IntVec::from_i64(&[1, 1]));

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for trial in 0..15u64 {
            let p = random_poly(&mut rng, 2);
            let zi = vec![rng.random_range(-4i64..=4), rng.random_range(-4..=4)];
            let z = IntVec::from_i64(&zi);
            // moment of a translate picks up L(P) copies of z
            let lhs = discrete_moment(&p.translate(&z.to_rat()));
            let scaled = IntVec(z.0.iter().map(|c| c * count(&p)).collect());
            assert_eq!(lhs, discrete_moment(&p).add(&scaled));
            // equivariance under the determinant-one group
            let phi = random_unimodular(2, 12, 300 + trial).unwrap();
            let mapped = p.apply_unimodular(&phi).unwrap();
            assert_eq!(discrete_moment(&mapped), phi.apply_int(&discrete_moment(&p)));
            // the count is invariant under the same maps
            assert_eq!(count(&mapped), count(&p));
        }
    }

    #[test]
    fn ehrhart_examples() {
        let t2 = Polytope::standard_simplex(2);
        let e = ehrhart(&t2).unwrap();
        // counts 1, 3, 6 interpolate to (k^2 + 3k + 2) / 2
        assert_eq!(e.coefficients(), vec![rat_int(1), rat(3, 2), rat(1, 2)]);

        for n in 1..=3usize {
            let e = ehrhart(&Polytope::unit_cube(n)).unwrap();
            // binomial-theorem oracle for (k+1)^n
            let expect: Vec<Rational> = (0..=n)
                .map(|i| {
                    Rational::from_integer(factorial(n) / (factorial(i) * factorial(n - i)))
                })
                .collect();
            assert_eq!(e.coefficients(), expect);
            assert_eq!(e.coefficient(0), rat_int(1));
        }
    }

    #[test]
    fn ehrhart_degree_tracks_dim() {
        let seg = lp(2, &[vec![0, 0], vec![2, 1]]);
        assert_eq!(ehrhart(&seg).unwrap().degree(), 1);
        let pt = Polytope::point(RatVec::from_i64(&[4, 5]));
        assert_eq!(ehrhart(&pt).unwrap().degree(), 0);
    }

    #[test]
    fn moment_expansion_examples() {
        // single lattice point: moment of k * {e1} is k e1
        let pt = Polytope::point(RatVec::from_i64(&[1, 0]));
        let m = moment_expansion(&pt).unwrap();
        assert_eq!(m.coefficient_vector(1), RatVec::from_i64(&[1, 0]));
        assert_eq!(m.coefficient_vector(2), RatVec::zero(2));

        // unit square: each coordinate sums to (k+1)^2 k / 2
        let m = moment_expansion(&Polytope::unit_cube(2)).unwrap();
        assert_eq!(m.coefficient_vector(1), RatVec(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(m.coefficient_vector(2), RatVec::from_i64(&[1, 1]));
        assert_eq!(m.coefficient_vector(3), RatVec(vec![rat(1, 2), rat(1, 2)]));

        // out-of-sample dilate matches direct enumeration
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let p = random_poly(&mut rng, 2);
            let m = moment_expansion(&p).unwrap();
            let k = p.ambient_dim() as i64 + 2;
            assert_eq!(m.evaluate(k), discrete_moment(&p.scale_int(k)).to_rat());
        }
    }

    #[test]
    fn steiner_point_examples() {
        for n in 1..=3usize {
            let t = Polytope::standard_simplex(n);
            let expect = RatVec(vec![rat(1, (n + 1) as i64); n]);
            assert_eq!(discrete_steiner(&t).unwrap(), expect);
            assert_eq!(t.centroid(), expect);
        }
        let cube = Polytope::unit_cube(3);
        assert_eq!(
            discrete_steiner(&cube).unwrap(),
            RatVec(vec![rat(1, 2), rat(1, 2), rat(1, 2)])
        );

        // origin-symmetric hexagon: the Steiner point is the origin
        let t2 = Polytope::standard_simplex(2);
        let hexagon = t2.minkowski_sum(&t2.negate()).unwrap();
        assert_eq!(discrete_steiner(&hexagon).unwrap(), RatVec::zero(2));
    }

    #[test]
    fn steiner_point_additive_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 2);
            let q = random_poly(&mut rng, 2);
            let sum = p.minkowski_sum(&q).unwrap();
            assert_eq!(
                discrete_steiner(&sum).unwrap(),
                discrete_steiner(&p).unwrap().add(&discrete_steiner(&q).unwrap())
            );
        }
    }

    #[test]
    fn bivariate_examples() {
        // segments: L(k[o,e1] + l[o,e1]) = k + l + 1
        let seg = lp(2, &[vec![0, 0], vec![1, 0]]);
        assert!(bivariate_count_check(&seg, &seg, 2).unwrap());

        let t2 = Polytope::standard_simplex(2);
        let cube = Polytope::unit_cube(2);
        assert!(bivariate_count_check(&t2, &cube, 2).unwrap());
        assert!(bivariate_count_check(&t2, &t2, 2).unwrap());
        assert!(bivariate_count_check(&t2, &t2, 1).is_err());
    }

    #[test]
    fn l1_additivity_examples() {
        let t2 = Polytope::standard_simplex(2);
        assert!(l1_additivity_check(&t2, &t2).unwrap());
        // collinear segments
        let a = lp(2, &[vec![0, 0], vec![2, 0]]);
        let b = lp(2, &[vec![0, 0], vec![3, 0]]);
        assert!(l1_additivity_check(&a, &b).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 2);
            let q = random_poly(&mut rng, 2);
            assert!(l1_additivity_check(&p, &q).unwrap());
        }
    }

    #[test]
    fn central_symmetry_detection() {
        let cube = Polytope::unit_cube(3);
        assert!(is_centrally_symmetric(&cube));
        let t2 = Polytope::standard_simplex(2);
        assert!(!is_centrally_symmetric(&t2));
        let hexagon = t2.minkowski_sum(&t2.negate()).unwrap();
        assert!(is_centrally_symmetric(&hexagon));
        let shifted = hexagon.translate(&RatVec::from_i64(&[7, -2]));
        assert!(is_centrally_symmetric(&shifted));
    }

    #[test]
    fn expansion_fidelity_on_sampled_dilates() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let p = random_poly(&mut rng, 2);
            let e = ehrhart(&p).unwrap();
            for k in 0..=3i64 {
                assert_eq!(e.evaluate(k), Rational::from_integer(count(&p.scale_int(k))));
            }
        }
    }
}
