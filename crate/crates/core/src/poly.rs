//! Exact rational polynomials and Lagrange interpolation.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RatVec;
use crate::rational::{Int, Rational};

/// Polynomial with rational coefficients indexed by degree.
/// The highest-degree coefficient is nonzero unless the polynomial is zero
/// (represented by an empty coefficient list).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactPolynomial {
    coeffs: Vec<Rational>,
}

impl ExactPolynomial {
    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, k: i64) -> Rational {
        self.eval(&Rational::from_integer(Int::from(k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * t).collect())
    }
}

/// Unique polynomial of degree < #samples through the given exact samples.
pub fn lagrange_interpolate(samples: &[(Int, Rational)]) -> Result<ExactPolynomial> {
    if samples.is_empty() {
        return Err(Error::Input("interpolation needs at least one sample".into()));
    }
    for (i, (xi, _)) in samples.iter().enumerate() {
        for (xj, _) in &samples[i + 1..] {
            if xi == xj {
                return Err(Error::Input(format!("duplicate abscissa {xi}")));
            }
        }
    }
    let mut acc = ExactPolynomial::zero();
    for (j, (xj, yj)) in samples.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut basis = ExactPolynomial::constant(Rational::one());
        let mut denom = Rational::one();
        for (m, (xm, _)) in samples.iter().enumerate() {
            if m == j {
                continue;
            }
            // basis *= (x - xm)
            basis = basis.mul(&ExactPolynomial::from_coeffs(vec![
                Rational::from_integer(-xm.clone()),
                Rational::one(),
            ]));
            denom *= Rational::from_integer(xj - xm);
        }
        acc = acc.add(&basis.scale(&(yj / denom)));
    }
    Ok(acc)
}

/// One exact polynomial per coordinate; the value at `k` is a vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorPolynomial {
    coords: Vec<ExactPolynomial>,
}

impl VectorPolynomial {
    pub fn new(coords: Vec<ExactPolynomial>) -> Self {
        VectorPolynomial { coords }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactPolynomial] {
        &self.coords
    }

    pub fn degree(&self) -> Option<usize> {
        self.coords.iter().filter_map(|p| p.degree()).max()
    }

    /// The vector of degree-`i` coefficients.
    pub fn coeff_vector(&self, i: usize) -> RatVec {
        RatVec(self.coords.iter().map(|p| p.coeff(i)).collect())
    }

    pub fn eval_int(&self, k: i64) -> RatVec {
        RatVec(self.coords.iter().map(|p| p.eval_int(k)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn samples(points: &[(i64, Rational)]) -> Vec<(Int, Rational)> {
        points.iter().map(|(k, v)| (Int::from(*k), v.clone())).collect()
    }

    #[test]
    fn constant_fit() {
        let p = lagrange_interpolate(&samples(&[(0, rat_int(1)), (1, rat_int(1)), (2, rat_int(1))]))
            .unwrap();
        assert_eq!(p, ExactPolynomial::constant(rat_int(1)));
    }

    #[test]
    fn quadratic_fit_k2_plus_1() {
        // oracle: solving the 3x3 Vandermonde system by hand gives k^2 + 1
        let p = lagrange_interpolate(&samples(&[(0, rat_int(1)), (1, rat_int(2)), (2, rat_int(5))]))
            .unwrap();
        assert_eq!(p.coeffs(), &[rat_int(1), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn square_expansion() {
        // (k+1)^2 = k^2 + 2k + 1
        let pts: Vec<(i64, Rational)> = (0..=2).map(|k| (k, rat_int((k + 1) * (k + 1)))).collect();
        let p = lagrange_interpolate(&samples(&pts)).unwrap();
        assert_eq!(p.coeffs(), &[rat_int(1), rat_int(2), rat_int(1)]);
    }

    #[test]
    fn duplicate_abscissae_rejected() {
        let err = lagrange_interpolate(&samples(&[(1, rat_int(1)), (1, rat_int(2))]));
        assert!(err.is_err());
    }

    #[test]
    fn eval_horner_matches_expansion() {
        let p = ExactPolynomial::from_coeffs(vec![rat(1, 2), rat_int(-3), rat_int(2)]);
        assert_eq!(p.eval_int(3), rat(1, 2) + rat_int(-9) + rat_int(18));
        assert_eq!(p.degree(), Some(2));
    }

    proptest! {
        // interpolation is exact: re-evaluating reproduces every sample
        #[test]
        fn interpolation_reproduces_samples(vals in proptest::collection::vec(-50i64..50, 1..6)) {
            let pts: Vec<(Int, Rational)> = vals
                .iter()
                .enumerate()
                .map(|(k, &v)| (Int::from(k as i64), rat(v, 3)))
                .collect();
            let p = lagrange_interpolate(&pts).unwrap();
            prop_assert!(p.degree().map_or(0, |d| d + 1) <= pts.len());
            for (k, v) in &pts {
                prop_assert_eq!(&p.eval(&Rational::from_integer(k.clone())), v);
            }
        }

        // rational field axioms on random triples
        #[test]
        fn rational_field_axioms(
            a in (-40i64..40, 1i64..9),
            b in (-40i64..40, 1i64..9),
            c in (-40i64..40, 1i64..9),
        ) {
            let a = rat(a.0, a.1);
            let b = rat(b.0, b.1);
            let c = rat(c.0, c.1);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
        }
    }
}
