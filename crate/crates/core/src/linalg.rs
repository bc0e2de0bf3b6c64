//! Exact vectors, matrices, linear solving, and the unimodular group.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{Int, Rational};

/// Integer lattice vector of fixed length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntVec(pub Vec<Int>);

/// Rational vector of fixed length. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatVec(pub Vec<Rational>);

impl IntVec {
    pub fn from_i64(coords: &[i64]) -> Self {
        IntVec(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        IntVec(vec![Int::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec(self.0.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl RatVec {
    pub fn from_i64(coords: &[i64]) -> Self {
        RatVec(coords.iter().map(|&c| Rational::from_integer(Int::from(c))).collect())
    }

    pub fn zero(n: usize) -> Self {
        RatVec(vec![Rational::zero(); n])
    }

    /// Standard basis vector e_i (0-indexed).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &RatVec) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, t: &Rational) -> RatVec {
        RatVec(self.0.iter().map(|a| a * t).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_int(&self) -> Option<IntVec> {
        if self.is_integral() {
            Some(IntVec(self.0.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: Vec<Vec<Int>>,
}

impl IntMat {
    pub fn new(rows: Vec<Vec<Int>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Input("empty matrix".into()));
        }
        let w = rows[0].len();
        if w == 0 || rows.iter().any(|r| r.len() != w) {
            return Err(Error::Dimension("ragged or empty matrix rows".into()));
        }
        Ok(IntMat { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMat {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&c| Int::from(c)).collect())
                .collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![Int::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Int::one();
        }
        IntMat { rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn transpose(&self) -> IntMat {
        let (r, c) = (self.n_rows(), self.n_cols());
        let mut out = vec![vec![Int::zero(); r]; c];
        for i in 0..r {
            for j in 0..c {
                out[j][i] = self.rows[i][j].clone();
            }
        }
        IntMat { rows: out }
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.n_cols() != other.n_rows() {
            return Err(Error::Dimension("matrix product shape mismatch".into()));
        }
        let mut out = vec![vec![Int::zero(); other.n_cols()]; self.n_rows()];
        for i in 0..self.n_rows() {
            for k in 0..self.n_cols() {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.n_cols() {
                    out[i][j] += &self.rows[i][k] * &other.rows[k][j];
                }
            }
        }
        Ok(IntMat { rows: out })
    }

    pub fn apply_int(&self, v: &IntVec) -> IntVec {
        debug_assert_eq!(self.n_cols(), v.dim());
        IntVec(
            self.rows
                .iter()
                .map(|row| row.iter().zip(&v.0).fold(Int::zero(), |a, (m, x)| a + m * x))
                .collect(),
        )
    }

    pub fn apply_rat(&self, v: &RatVec) -> RatVec {
        debug_assert_eq!(self.n_cols(), v.dim());
        RatVec(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .fold(Rational::zero(), |a, (m, x)| a + Rational::from_integer(m.clone()) * x)
                })
                .collect(),
        )
    }
}

/// Exact determinant of a square integer matrix via fraction-free
/// (Bareiss) elimination.
pub fn det(m: &IntMat) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of non-square matrix".into()));
    }
    let n = m.n_rows();
    let mut a: Vec<Vec<Int>> = m.rows.clone();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by Bareiss
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Exact solution of a square rational system, or `None` when singular.
pub fn solve_linear(a: &[RatVec], b: &RatVec) -> Result<Option<RatVec>> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.dim() != n) || b.dim() != n {
        return Err(Error::Dimension("solve_linear expects a square system".into()));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(&b.0)
        .map(|(row, rhs)| {
            let mut r = row.0.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(i) => i,
            None => return Ok(None),
        };
        m.swap(k, pivot);
        let p = m[k][k].clone();
        for j in k..=n {
            m[k][j] = &m[k][j] / &p;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    m[i][j] = &m[i][j] - &f * &m[k][j];
                }
            }
        }
    }
    Ok(Some(RatVec(m.into_iter().map(|row| row[n].clone()).collect())))
}

/// Row echelon reduction over the rationals. Returns (rank, pivot column
/// per reduced row, reduced rows).
pub fn rref(rows: &[RatVec]) -> (usize, Vec<usize>, Vec<RatVec>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let n_cols = rows.first().map_or(0, |r| r.dim());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_cols {
        let pivot = match (rank..m.len()).find(|&i| !m[i][col].is_zero()) {
            Some(i) => i,
            None => continue,
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for j in col..n_cols {
            m[rank][j] = &m[rank][j] / &p;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..n_cols {
                    m[i][j] = &m[i][j] - &f * &m[rank][j];
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    (rank, pivots, m.into_iter().map(RatVec).collect())
}

/// Exact determinant of a square rational matrix (Gaussian elimination).
pub fn rat_det(rows: &[RatVec]) -> Rational {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.dim() == n));
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = 1i32;
    let mut acc = Rational::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(i) => i,
            None => return Rational::zero(),
        };
        if pivot != k {
            m.swap(k, pivot);
            sign = -sign;
        }
        let p = m[k][k].clone();
        acc *= &p;
        for i in k + 1..n {
            if !m[i][k].is_zero() {
                let f = &m[i][k] / &p;
                for j in k..n {
                    m[i][j] = &m[i][j] - &f * &m[k][j];
                }
            }
        }
    }
    if sign < 0 {
        -acc
    } else {
        acc
    }
}

/// Generalized cross product: for n-1 vectors in R^n, the vector N with
/// det([w; rows]) = w · N for every w. Orthogonal to all inputs, with
/// length (n-1)! times the (n-1)-volume of the spanned parallelotope.
pub fn rat_cross(rows: &[RatVec]) -> RatVec {
    let n = rows.len() + 1;
    debug_assert!(rows.iter().all(|r| r.dim() == n));
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<RatVec> = rows
            .iter()
            .map(|r| {
                RatVec(
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| r.0[c].clone())
                        .collect(),
                )
            })
            .collect();
        let d = if minor.is_empty() {
            Rational::one()
        } else {
            rat_det(&minor)
        };
        out.push(if j % 2 == 0 { d } else { -d });
    }
    RatVec(out)
}

/// Basis of {z : row · z = 0 for every row}.
pub fn nullspace(rows: &[RatVec], n: usize) -> Vec<RatVec> {
    if rows.is_empty() {
        return (0..n).map(|i| RatVec::unit(n, i)).collect();
    }
    let (rank, pivots, reduced) = rref(rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = RatVec::zero(n);
        v.0[free] = Rational::one();
        for r in 0..rank {
            v.0[pivots[r]] = -reduced[r].0[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Element of the integer special linear group: an integer matrix of
/// determinant one, stored alongside its (integer) inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnimodularMap {
    mat: IntMat,
    inv: IntMat,
}

impl UnimodularMap {
    pub fn new(mat: IntMat) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::Dimension("unimodular map must be square".into()));
        }
        let d = det(&mat)?;
        if d != Int::one() {
            return Err(Error::Input(format!("determinant {d} != 1")));
        }
        let inv = adjugate(&mat);
        debug_assert_eq!(mat.mul(&inv).unwrap(), IntMat::identity(mat.n_rows()));
        Ok(UnimodularMap { mat, inv })
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap {
            mat: IntMat::identity(n),
            inv: IntMat::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.n_rows()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &IntMat {
        &self.inv
    }

    pub fn inverse(&self) -> UnimodularMap {
        UnimodularMap {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    /// The inverse of the transpose; integer-valued because det = 1.
    pub fn inverse_transpose(&self) -> UnimodularMap {
        UnimodularMap {
            mat: self.inv.transpose(),
            inv: self.mat.transpose(),
        }
    }

    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            mat: self.mat.mul(&other.mat).expect("square same size"),
            inv: other.inv.mul(&self.inv).expect("square same size"),
        }
    }

    pub fn apply_int(&self, v: &IntVec) -> IntVec {
        self.mat.apply_int(v)
    }

    pub fn apply_rat(&self, v: &RatVec) -> RatVec {
        self.mat.apply_rat(v)
    }
}

fn adjugate(m: &IntMat) -> IntMat {
    let n = m.n_rows();
    if n == 1 {
        return IntMat::identity(1);
    }
    let mut out = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Int>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m.rows[r][c].clone())
                        .collect()
                })
                .collect();
            let d = det(&IntMat { rows: minor }).expect("square minor");
            out[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    IntMat { rows: out }
}

/// Deterministic pseudo-random element of the determinant-one group:
/// a product of `steps` elementary transvections (add a multiple in
/// [-2, 2] of one row to another) and determinant-preserving signed
/// swaps, seeded by `seed`.
pub fn random_unimodular(n: usize, steps: usize, seed: u64) -> Result<UnimodularMap> {
    if n < 2 {
        return Err(Error::Input("random unimodular map needs n >= 2".into()));
    }
    if steps == 0 {
        return Err(Error::Input("random unimodular map needs steps >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = IntMat::identity(n).rows;
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.random_range(0..4) < 3 {
            // transvection: row_i += c * row_j, det unchanged
            let c = *[-2i64, -1, 1, 2]
                .get(rng.random_range(0..4))
                .expect("index in range");
            let rj = rows[j].clone();
            for (a, b) in rows[i].iter_mut().zip(rj) {
                *a += Int::from(c) * b;
            }
        } else {
            // signed swap: (row_i, row_j) <- (row_j, -row_i), det unchanged
            let ri = rows[i].clone();
            let rj = rows[j].clone();
            rows[i] = rj;
            rows[j] = ri.into_iter().map(|x| -x).collect();
        }
    }
    UnimodularMap::new(IntMat { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    // independent oracle: cofactor expansion along the first row
    fn det_cofactor(rows: &[Vec<Int>]) -> Int {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = Int::zero();
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Int>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| rows[r][c].clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][j] * det_cofactor(&minor);
            acc += if j % 2 == 0 { term } else { -term };
        }
        acc
    }

    #[test]
    fn det_identity_and_transposition() {
        assert_eq!(det(&IntMat::identity(3)).unwrap(), Int::one());
        let swap = IntMat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&swap).unwrap(), Int::from(-1));
    }

    #[test]
    fn det_matches_cofactor_oracle_on_random_4x4() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows: Vec<Vec<Int>> = (0..4)
                .map(|_| (0..4).map(|_| Int::from(rng.random_range(-3i64..=3))).collect())
                .collect();
            let m = IntMat::new(rows.clone()).unwrap();
            assert_eq!(det(&m).unwrap(), det_cofactor(&rows));
        }
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMat::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(det(&m).is_err());
    }

    #[test]
    fn inverse_transpose_examples() {
        let id = UnimodularMap::identity(2);
        assert_eq!(id.inverse_transpose(), id);

        let phi = UnimodularMap::new(IntMat::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        // hand inversion: inverse is [[1,-1],[0,1]], its transpose [[1,0],[-1,1]]
        let expect = IntMat::from_i64(&[&[1, 0], &[-1, 1]]);
        assert_eq!(phi.inverse_transpose().matrix(), &expect);
    }

    #[test]
    fn inverse_transpose_is_involutive_and_multiplicative() {
        for seed in 0..20u64 {
            let phi = random_unimodular(3, 12, seed).unwrap();
            let psi = random_unimodular(3, 12, seed + 1000).unwrap();
            assert_eq!(phi.inverse_transpose().inverse_transpose(), phi);
            let lhs = phi.compose(&psi).inverse_transpose();
            let rhs = phi.inverse_transpose().compose(&psi.inverse_transpose());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn random_unimodular_contracts() {
        assert!(random_unimodular(2, 0, 7).is_err());
        let a = random_unimodular(3, 1, 7).unwrap();
        assert_eq!(det(a.matrix()).unwrap(), Int::one());
        for seed in 0..10u64 {
            let m = random_unimodular(4, 12, seed).unwrap();
            assert_eq!(det(m.matrix()).unwrap(), Int::one());
            assert_eq!(
                m.matrix().mul(m.inverse_matrix()).unwrap(),
                IntMat::identity(4)
            );
            // determinism
            assert_eq!(random_unimodular(4, 12, seed).unwrap(), m);
        }
    }

    #[test]
    fn solve_identity_and_singular() {
        let a = vec![RatVec::from_i64(&[1, 0]), RatVec::from_i64(&[0, 1])];
        let b = RatVec::from_i64(&[5, -3]);
        assert_eq!(solve_linear(&a, &b).unwrap().unwrap(), b);

        let s = vec![RatVec::from_i64(&[1, 1]), RatVec::from_i64(&[1, 1])];
        assert_eq!(solve_linear(&s, &b).unwrap(), None);
    }

    #[test]
    fn solve_verified_by_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 30 {
            let a: Vec<RatVec> = (0..3)
                .map(|_| RatVec::from_i64(&[rng.random_range(-4i64..=4), rng.random_range(-4..=4), rng.random_range(-4..=4)]))
                .collect();
            let b = RatVec::from_i64(&[rng.random_range(-4i64..=4), rng.random_range(-4..=4), rng.random_range(-4..=4)]);
            if let Some(x) = solve_linear(&a, &b).unwrap() {
                for (row, rhs) in a.iter().zip(&b.0) {
                    assert_eq!(&row.dot(&x), rhs);
                }
                done += 1;
            }
        }
    }

    #[test]
    fn nullspace_is_orthogonal_to_rows() {
        let rows = vec![RatVec::from_i64(&[1, 2, 3]), RatVec::from_i64(&[0, 1, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for z in &ns {
            for r in &rows {
                assert_eq!(r.dot(z), rat_int(0));
            }
        }
    }
}
