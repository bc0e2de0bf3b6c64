//! Exact V-representation polytopes: canonical vertex sets with support
//! functions, faces, Minkowski sums, facet/vertex enumeration,
//! intersections, centroids, and facet area vectors.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel;
use crate::linalg::{
    det, nullspace, rat_cross, rat_det, rref, solve_linear, IntMat, IntVec, RatVec, UnimodularMap,
};
use crate::rational::{factorial, rat_int, Int, Rational};

/// Convex polytope given by its canonical vertex set: extreme points only,
/// deduplicated, sorted lexicographically. Always nonempty; operations that
/// can produce the empty set return `Option<Polytope>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<RatVec>,
}

/// Exact halfspace description: inequalities `normal · x <= offset` plus
/// affine-hull equations `normal · x = offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfspaceSystem {
    pub ambient: usize,
    pub inequalities: Vec<(RatVec, Rational)>,
    pub equations: Vec<(RatVec, Rational)>,
}

impl HalfspaceSystem {
    pub fn contains(&self, p: &RatVec) -> bool {
        self.equations.iter().all(|(a, b)| &a.dot(p) == b)
            && self.inequalities.iter().all(|(a, b)| &a.dot(p) <= b)
    }

    /// Strict membership: every inequality strict, equations exact.
    pub fn contains_strictly(&self, p: &RatVec) -> bool {
        self.equations.iter().all(|(a, b)| &a.dot(p) == b)
            && self.inequalities.iter().all(|(a, b)| &a.dot(p) < b)
    }

    pub fn merge(&self, other: &HalfspaceSystem) -> Result<HalfspaceSystem> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("cannot merge systems of different ambient dimension".into()));
        }
        let mut inequalities = self.inequalities.clone();
        inequalities.extend(other.inequalities.iter().cloned());
        let mut equations = self.equations.clone();
        equations.extend(other.equations.iter().cloned());
        Ok(HalfspaceSystem {
            ambient: self.ambient,
            inequalities,
            equations,
        })
    }
}

/// Affine chart of a point set: base vertex, independent edge-vector basis,
/// and the exact coordinate maps between ambient and chart coordinates.
#[derive(Clone, Debug)]
pub(crate) struct AffineChart {
    pub base: RatVec,
    pub basis: Vec<RatVec>,
    pivot_coords: Vec<usize>,
    inv_rows: Vec<RatVec>,
}

impl AffineChart {
    pub fn build(points: &[RatVec]) -> AffineChart {
        let n = points[0].dim();
        let base = points[0].clone();
        let mut reduced: Vec<RatVec> = Vec::new();
        let mut pivot_of: Vec<usize> = Vec::new();
        let mut basis: Vec<RatVec> = Vec::new();
        for p in &points[1..] {
            if basis.len() == n {
                break;
            }
            let diff = p.sub(&base);
            let mut v = diff.clone();
            for (row, &pc) in reduced.iter().zip(&pivot_of) {
                if !v.0[pc].is_zero() {
                    let f = &v.0[pc] / &row.0[pc];
                    v = v.sub(&row.scale(&f));
                }
            }
            if let Some(pc) = v.0.iter().position(|c| !c.is_zero()) {
                basis.push(diff);
                reduced.push(v);
                pivot_of.push(pc);
            }
        }
        let d = basis.len();
        let mut inv_rows = Vec::new();
        if d > 0 {
            // A[j][k] = basis_k[pivot_j]; chart coords are y = A^{-1} (p - base)|pivots
            let a: Vec<RatVec> = pivot_of
                .iter()
                .map(|&pc| RatVec(basis.iter().map(|bk| bk.0[pc].clone()).collect()))
                .collect();
            let mut cols = Vec::with_capacity(d);
            for j in 0..d {
                let col = solve_linear(&a, &RatVec::unit(d, j))
                    .expect("square system")
                    .expect("pivot submatrix is invertible");
                cols.push(col);
            }
            for i in 0..d {
                inv_rows.push(RatVec((0..d).map(|j| cols[j].0[i].clone()).collect()));
            }
        }
        AffineChart {
            base,
            basis,
            pivot_coords: pivot_of,
            inv_rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Chart coordinates of a point assumed to lie in the affine hull.
    pub fn to_chart(&self, p: &RatVec) -> RatVec {
        let v = RatVec(
            self.pivot_coords
                .iter()
                .map(|&pc| &p.0[pc] - &self.base.0[pc])
                .collect(),
        );
        RatVec(self.inv_rows.iter().map(|row| row.dot(&v)).collect())
    }

    pub fn to_ambient(&self, y: &RatVec) -> RatVec {
        let mut out = self.base.clone();
        for (bk, yk) in self.basis.iter().zip(&y.0) {
            out = out.add(&bk.scale(yk));
        }
        out
    }

    /// Chart coordinates, or `None` if the point is outside the affine hull.
    pub fn to_chart_checked(&self, p: &RatVec) -> Option<RatVec> {
        let y = self.to_chart(p);
        (self.to_ambient(&y) == *p).then_some(y)
    }
}

impl Polytope {
    /// Canonicalizes an arbitrary nonempty point set: keeps exactly the
    /// extreme points, deduplicated and sorted lexicographically.
    pub fn from_points(ambient: usize, points: Vec<RatVec>) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::Input("cannot build a polytope from no points".into()));
        }
        if points.iter().any(|p| p.dim() != ambient) {
            return Err(Error::Dimension(format!(
                "point dimension differs from ambient dimension {ambient}"
            )));
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(Polytope { ambient, vertices: pts });
        }
        let chart = AffineChart::build(&pts);
        let chart_pts: Vec<RatVec> = pts.iter().map(|p| chart.to_chart(p)).collect();
        let mut vertices: Vec<RatVec> = kernel::extreme_indices(&chart_pts)
            .into_iter()
            .map(|i| pts[i].clone())
            .collect();
        vertices.sort();
        Ok(Polytope { ambient, vertices })
    }

    pub fn from_lattice_points(ambient: usize, points: &[Vec<i64>]) -> Result<Polytope> {
        Self::from_points(ambient, points.iter().map(|p| RatVec::from_i64(p)).collect())
    }

    pub fn from_int_points(ambient: usize, points: Vec<IntVec>) -> Result<Polytope> {
        Self::from_points(ambient, points.iter().map(IntVec::to_rat).collect())
    }

    pub fn point(p: RatVec) -> Polytope {
        Polytope {
            ambient: p.dim(),
            vertices: vec![p],
        }
    }

    pub fn origin(n: usize) -> Polytope {
        Polytope::point(RatVec::zero(n))
    }

    pub fn segment(a: RatVec, b: RatVec) -> Polytope {
        Polytope::from_points(a.dim(), vec![a, b]).expect("two points")
    }

    /// T_n = conv{o, e_1, ..., e_n}.
    pub fn standard_simplex(n: usize) -> Polytope {
        let mut pts = vec![RatVec::zero(n)];
        pts.extend((0..n).map(|i| RatVec::unit(n, i)));
        Polytope::from_points(n, pts).expect("simplex vertices")
    }

    /// [0,1]^n.
    pub fn unit_cube(n: usize) -> Polytope {
        let mut pts = Vec::with_capacity(1 << n);
        for mask in 0..(1u32 << n) {
            pts.push(RatVec(
                (0..n)
                    .map(|i| rat_int(((mask >> i) & 1) as i64))
                    .collect(),
            ));
        }
        Polytope::from_points(n, pts).expect("cube vertices")
    }

    /// [-c, c]^n.
    pub fn sym_box(n: usize, c: &Rational) -> Polytope {
        if c.is_zero() {
            return Polytope::origin(n);
        }
        let mut pts = Vec::with_capacity(1 << n);
        for mask in 0..(1u32 << n) {
            pts.push(RatVec(
                (0..n)
                    .map(|i| if (mask >> i) & 1 == 1 { c.clone() } else { -c.clone() })
                    .collect(),
            ));
        }
        Polytope::from_points(n, pts).expect("box vertices")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RatVec::is_integral)
    }

    pub fn lattice_vertices(&self) -> Option<Vec<IntVec>> {
        self.vertices.iter().map(RatVec::to_int).collect()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        AffineChart::build(&self.vertices).dim()
    }

    /// Base vertex plus edge vectors (vertex differences) spanning the hull.
    pub fn affine_basis(&self) -> (RatVec, Vec<RatVec>) {
        let chart = AffineChart::build(&self.vertices);
        (chart.base, chart.basis)
    }

    pub(crate) fn chart(&self) -> AffineChart {
        AffineChart::build(&self.vertices)
    }

    /// Support value h(P, v) = max over vertices of v · x.
    pub fn support(&self, v: &RatVec) -> Rational {
        self.vertices
            .iter()
            .map(|x| v.dot(x))
            .max()
            .expect("nonempty vertex set")
    }

    /// The face F(P, v) of all points attaining h(P, v). Needs v != 0.
    pub fn face(&self, v: &RatVec) -> Result<Polytope> {
        if v.is_zero() {
            return Err(Error::Input("face direction must be nonzero".into()));
        }
        let h = self.support(v);
        let vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .filter(|x| v.dot(x) == h)
            .cloned()
            .collect();
        Ok(Polytope {
            ambient: self.ambient,
            vertices,
        })
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("Minkowski sum needs equal ambient dimensions".into()));
        }
        let mut pts = Vec::with_capacity(self.n_vertices() * other.n_vertices());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.add(b));
            }
        }
        Polytope::from_points(self.ambient, pts)
    }

    pub fn translate(&self, z: &RatVec) -> Polytope {
        let mut vertices: Vec<RatVec> = self.vertices.iter().map(|v| v.add(z)).collect();
        vertices.sort();
        Polytope {
            ambient: self.ambient,
            vertices,
        }
    }

    pub fn scale(&self, t: &Rational) -> Polytope {
        if t.is_zero() {
            return Polytope::origin(self.ambient);
        }
        let mut vertices: Vec<RatVec> = self.vertices.iter().map(|v| v.scale(t)).collect();
        vertices.sort();
        Polytope {
            ambient: self.ambient,
            vertices,
        }
    }

    pub fn scale_int(&self, k: i64) -> Polytope {
        self.scale(&rat_int(k))
    }

    pub fn negate(&self) -> Polytope {
        self.scale(&rat_int(-1))
    }

    pub fn apply_unimodular(&self, map: &UnimodularMap) -> Result<Polytope> {
        if map.dim() != self.ambient {
            return Err(Error::Dimension("map dimension differs from ambient dimension".into()));
        }
        let mut vertices: Vec<RatVec> =
            self.vertices.iter().map(|v| map.apply_rat(v)).collect();
        vertices.sort();
        Ok(Polytope {
            ambient: self.ambient,
            vertices,
        })
    }

    /// Exact halfspace description with affine-hull equations.
    pub fn facet_system(&self) -> HalfspaceSystem {
        let n = self.ambient;
        let chart = self.chart();
        let d = chart.dim();

        let mut equations = Vec::new();
        if d < n {
            for z in nullspace(&chart.basis, n) {
                let off = z.dot(&chart.base);
                equations.push((z, off));
            }
        }

        let mut inequalities = Vec::new();
        if d == n && d >= 2 {
            // full-dimensional: enumerate facets directly in ambient coordinates
            let (scaled, denom) = kernel::scale_to_int(&self.vertices);
            let scale = Rational::from_integer(denom);
            let chart_pts: Vec<RatVec> = scaled
                .iter()
                .map(|p| RatVec(p.iter().cloned().map(Rational::from_integer).collect()))
                .collect();
            for (normal, offset, _) in kernel::chart_facets(&chart_pts) {
                inequalities.push((normal, offset / &scale));
            }
        } else if d >= 1 {
            let chart_pts: Vec<RatVec> = self.vertices.iter().map(|p| chart.to_chart(p)).collect();
            // rows of the pivot-restricted basis matrix, used to pull chart
            // normals back to ambient normals supported on the pivot coords
            let basis_rows: Vec<RatVec> = chart
                .basis
                .iter()
                .map(|bk| RatVec(chart.pivot_coords.iter().map(|&pc| bk.0[pc].clone()).collect()))
                .collect();
            for (a, c, _) in kernel::chart_facets(&chart_pts) {
                let w = solve_linear(&basis_rows, &a)
                    .expect("square system")
                    .expect("pivot submatrix invertible");
                let mut normal = RatVec::zero(n);
                for (j, &pc) in chart.pivot_coords.iter().enumerate() {
                    normal.0[pc] = w.0[j].clone();
                }
                let offset = normal.dot(&chart.base) + c;
                inequalities.push((normal, offset));
            }
        }

        HalfspaceSystem {
            ambient: n,
            inequalities,
            equations,
        }
    }

    /// Vertex index sets of the facets (tight sets of the facet system).
    pub(crate) fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        let h = self.facet_system();
        h.inequalities
            .iter()
            .map(|(a, c)| {
                (0..self.vertices.len())
                    .filter(|&i| &a.dot(&self.vertices[i]) == c)
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, p: &RatVec) -> bool {
        self.facet_system().contains(p)
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Option<Polytope>> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("intersection needs equal ambient dimensions".into()));
        }
        let h = self.facet_system().merge(&other.facet_system())?;
        // intersection of bounded sets is bounded; skip the recession test
        vertex_enumeration_impl(&h, false)
    }

    /// All faces (including the polytope itself) as canonical polytopes;
    /// every proper face is an intersection of facets.
    pub fn all_faces(&self) -> Vec<Polytope> {
        let fsets = self.facet_vertex_sets();
        let mut seen: std::collections::HashSet<Vec<RatVec>> = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut push = |verts: Vec<RatVec>| {
            if !verts.is_empty() && seen.insert(verts.clone()) {
                out.push(Polytope {
                    ambient: self.ambient,
                    vertices: verts,
                });
            }
        };
        push(self.vertices.clone());
        let f = fsets.len();
        // subsets of facets; tight vertex sets intersect
        for mask in 1..(1u64 << f) {
            let mut current: Option<Vec<usize>> = None;
            for (i, fs) in fsets.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    current = Some(match current {
                        None => fs.clone(),
                        Some(prev) => prev.into_iter().filter(|v| fs.contains(v)).collect(),
                    });
                    if current.as_ref().is_some_and(|c| c.is_empty()) {
                        break;
                    }
                }
            }
            if let Some(idxs) = current {
                if !idxs.is_empty() {
                    push(idxs.iter().map(|&i| self.vertices[i].clone()).collect());
                }
            }
        }
        out
    }

    /// Triangulation into dim(P)-simplices (lists of dim+1 vertices), by
    /// coning the first vertex over triangulated facets.
    pub fn triangulate(&self) -> Vec<Vec<RatVec>> {
        let d = self.dim();
        if self.vertices.len() == d + 1 {
            return vec![self.vertices.clone()];
        }
        let v0 = &self.vertices[0];
        let mut out = Vec::new();
        for fs in self.facet_vertex_sets() {
            if fs.contains(&0) {
                continue;
            }
            let facet = Polytope {
                ambient: self.ambient,
                vertices: fs.iter().map(|&i| self.vertices[i].clone()).collect(),
            };
            for mut simplex in facet.triangulate() {
                simplex.insert(0, v0.clone());
                out.push(simplex);
            }
        }
        out
    }

    /// n-dimensional volume; 0 for lower-dimensional polytopes.
    pub fn volume(&self) -> Rational {
        let n = self.ambient;
        if self.vertices.len() <= n || self.dim() < n {
            return Rational::zero();
        }
        let nf = Rational::from_integer(factorial(n));
        let mut acc = Rational::zero();
        for simplex in self.triangulate() {
            let rows: Vec<RatVec> = (1..=n).map(|i| simplex[i].sub(&simplex[0])).collect();
            acc += rat_det(&rows).abs();
        }
        acc / nf
    }

    /// Exact centroid, computed in chart coordinates for lower-dimensional
    /// polytopes so that no irrational measures appear.
    pub fn centroid(&self) -> RatVec {
        if self.vertices.len() == 1 {
            return self.vertices[0].clone();
        }
        let chart = self.chart();
        let d = chart.dim();
        let mut total_w = Rational::zero();
        let mut acc = RatVec::zero(self.ambient);
        for simplex in self.triangulate() {
            let base = chart.to_chart(&simplex[0]);
            let rows: Vec<RatVec> = (1..=d)
                .map(|i| chart.to_chart(&simplex[i]).sub(&base))
                .collect();
            let w = rat_det(&rows).abs();
            if w.is_zero() {
                continue;
            }
            let mut c = RatVec::zero(self.ambient);
            for v in &simplex {
                c = c.add(v);
            }
            let count = rat_int((d + 1) as i64);
            c = c.scale(&(Rational::from_integer(Int::from(1)) / count));
            acc = acc.add(&c.scale(&w));
            total_w += w;
        }
        acc.scale(&(Rational::from_integer(Int::from(1)) / total_w))
    }

    /// For each facet F_i of a full-dimensional polytope, the outward vector
    /// |F_i| u_i, computed rationally as the sum of cofactor cross products
    /// over a facet triangulation divided by (n-1)!.
    pub fn facet_area_vectors(&self) -> Result<Vec<RatVec>> {
        let n = self.ambient;
        if self.dim() != n {
            return Err(Error::Input(
                "facet area vectors are defined for full-dimensional polytopes".into(),
            ));
        }
        if n == 1 {
            return Ok(vec![RatVec::from_i64(&[-1]), RatVec::from_i64(&[1])]);
        }
        let mut interior = RatVec::zero(n);
        for v in &self.vertices {
            interior = interior.add(v);
        }
        interior = interior.scale(&(rat_int(1) / rat_int(self.vertices.len() as i64)));
        let scale = rat_int(1) / Rational::from_integer(factorial(n - 1));
        let mut out = Vec::new();
        for fs in self.facet_vertex_sets() {
            let facet = Polytope {
                ambient: n,
                vertices: fs.iter().map(|&i| self.vertices[i].clone()).collect(),
            };
            let mut z = RatVec::zero(n);
            for simplex in facet.triangulate() {
                let rows: Vec<RatVec> = (1..n).map(|i| simplex[i].sub(&simplex[0])).collect();
                let mut cr = rat_cross(&rows);
                let side = cr.dot(&interior) - cr.dot(&simplex[0]);
                debug_assert!(!side.is_zero());
                if side.is_positive() {
                    cr = cr.neg();
                }
                z = z.add(&cr);
            }
            out.push(z.scale(&scale));
        }
        Ok(out)
    }

    /// True iff this is a lattice simplex unimodularly equivalent (up to
    /// translation) to a standard coordinate simplex: d+1 vertices whose
    /// edge matrix has maximal-minor gcd 1.
    pub fn is_basic_simplex(&self) -> bool {
        let Some(ivs) = self.lattice_vertices() else {
            return false;
        };
        if ivs.len() == 1 {
            return true;
        }
        let d = self.dim();
        if ivs.len() != d + 1 {
            return false;
        }
        let n = self.ambient;
        // columns: edge vectors from vertex 0
        let edges: Vec<Vec<Int>> = (1..=d)
            .map(|i| (0..n).map(|c| &ivs[i].0[c] - &ivs[0].0[c]).collect())
            .collect();
        let mut g = Int::zero();
        let mut rows_idx: Vec<usize> = (0..d).collect();
        loop {
            let minor_rows: Vec<Vec<Int>> = rows_idx
                .iter()
                .map(|&r| edges.iter().map(|e| e[r].clone()).collect())
                .collect();
            let m = IntMat::new(minor_rows).expect("square minor");
            let dd = det(&m).expect("square");
            g = num_integer::Integer::gcd(&g, &dd);
            if g == Int::from(1) {
                return true;
            }
            // next combination of d rows out of n
            let mut i = d;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if rows_idx[i] != i + n - d {
                    break;
                }
                if i == 0 {
                    return false;
                }
            }
            rows_idx[i] += 1;
            for j in i + 1..d {
                rows_idx[j] = rows_idx[j - 1] + 1;
            }
        }
    }

    pub fn lex_min(&self) -> &RatVec {
        &self.vertices[0]
    }

    pub fn lex_max(&self) -> &RatVec {
        self.vertices.last().expect("nonempty")
    }
}

/// Brute-force vertex enumeration of a halfspace system. Returns `None`
/// for an empty system and an error for an unbounded one.
pub fn vertex_enumeration(h: &HalfspaceSystem) -> Result<Option<Polytope>> {
    vertex_enumeration_impl(h, true)
}

fn vertex_enumeration_impl(h: &HalfspaceSystem, check_bounded: bool) -> Result<Option<Polytope>> {
    let n = h.ambient;
    let eqs = match reduce_equations(&h.equations, n) {
        Some(rows) => rows,
        None => return Ok(None), // inconsistent equations: empty
    };
    let d = n - eqs.len();
    if check_bounded && d > 0 {
        let mut rec_ineqs: Vec<(RatVec, Rational)> = h
            .inequalities
            .iter()
            .map(|(a, _)| (a.clone(), Rational::zero()))
            .collect();
        for i in 0..n {
            rec_ineqs.push((RatVec::unit(n, i), rat_int(1)));
            rec_ineqs.push((RatVec::unit(n, i).neg(), rat_int(1)));
        }
        let rec_eqs: Vec<(RatVec, Rational)> = eqs
            .iter()
            .map(|(a, _)| (a.clone(), Rational::zero()))
            .collect();
        if enumerate_basic(&rec_eqs, &rec_ineqs, n)
            .iter()
            .any(|p| !p.is_zero())
        {
            return Err(Error::Unbounded);
        }
    }
    let mut pts = enumerate_basic(&eqs, &h.inequalities, n);
    if pts.is_empty() {
        return Ok(None);
    }
    pts.sort();
    pts.dedup();
    Ok(Some(Polytope {
        ambient: n,
        vertices: pts,
    }))
}

/// Reduces equations to an independent set; `None` when inconsistent.
fn reduce_equations(
    eqs: &[(RatVec, Rational)],
    n: usize,
) -> Option<Vec<(RatVec, Rational)>> {
    if eqs.is_empty() {
        return Some(Vec::new());
    }
    let aug: Vec<RatVec> = eqs
        .iter()
        .map(|(a, b)| {
            let mut v = a.0.clone();
            v.push(b.clone());
            RatVec(v)
        })
        .collect();
    let (_, pivots, reduced) = rref(&aug);
    let mut out = Vec::new();
    for (row, &pc) in reduced.iter().zip(&pivots) {
        if pc == n {
            return None; // 0 = nonzero
        }
        out.push((RatVec(row.0[..n].to_vec()), row.0[n].clone()));
    }
    Some(out)
}

/// All basic feasible points: solutions of the equations plus d tight
/// inequalities that satisfy the whole system.
fn enumerate_basic(
    eqs: &[(RatVec, Rational)],
    ineqs: &[(RatVec, Rational)],
    n: usize,
) -> Vec<RatVec> {
    let d = n - eqs.len();
    let feasible = |x: &RatVec| -> bool {
        eqs.iter().all(|(a, b)| &a.dot(x) == b)
            && ineqs.iter().all(|(a, b)| &a.dot(x) <= b)
    };
    let mut out = Vec::new();
    if d == 0 {
        let rows: Vec<RatVec> = eqs.iter().map(|(a, _)| a.clone()).collect();
        let rhs = RatVec(eqs.iter().map(|(_, b)| b.clone()).collect());
        if let Ok(Some(x)) = solve_linear(&rows, &rhs) {
            if feasible(&x) {
                out.push(x);
            }
        }
        return out;
    }
    if ineqs.len() < d {
        return out;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let mut rows: Vec<RatVec> = eqs.iter().map(|(a, _)| a.clone()).collect();
        let mut rhs: Vec<Rational> = eqs.iter().map(|(_, b)| b.clone()).collect();
        for &i in &idx {
            rows.push(ineqs[i].0.clone());
            rhs.push(ineqs[i].1.clone());
        }
        if let Ok(Some(x)) = solve_linear(&rows, &RatVec(rhs)) {
            if feasible(&x) {
                out.push(x);
            }
        }
        // next combination
        let m = ineqs.len();
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + m - d {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
