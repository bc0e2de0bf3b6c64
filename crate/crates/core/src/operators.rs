//! The classified Minkowski-valuation operators: difference body, the
//! z_{a,b} family built on the discrete Steiner point, projection bodies,
//! and the planar rotation variants.

use num_traits::{Signed, Zero};

use crate::ehrhart::discrete_steiner;
use crate::error::{Error, Result};
use crate::linalg::{rat_cross, RatVec};
use crate::poly::{lagrange_interpolate, ExactPolynomial};
use crate::polytope::Polytope;
use crate::rational::{factorial, parse_rational, rat_int, Int, Rational};

/// P + (-P); origin-symmetric by construction.
pub fn difference_body(p: &Polytope) -> Polytope {
    p.minkowski_sum(&p.negate()).expect("same ambient dimension")
}

/// a (P - s(P)) + b (-P + s(P)) where s is the discrete Steiner point.
/// Parameters must be nonnegative.
pub fn z_ab(p: &Polytope, a: &Rational, b: &Rational) -> Result<Polytope> {
    if a.is_negative() || b.is_negative() {
        return Err(Error::Input("z_ab parameters must be nonnegative".into()));
    }
    let s = discrete_steiner(p)?;
    let left = p.translate(&s.neg()).scale(a);
    let right = p.negate().translate(&s).scale(b);
    left.minkowski_sum(&right)
}

/// Generators of the projection body: the facet area vectors for
/// full-dimensional input, a single doubled area vector in codimension one,
/// nothing below that.
pub fn projection_body_generators(p: &Polytope) -> Result<Vec<RatVec>> {
    let n = p.ambient_dim();
    let d = p.dim();
    if d == n {
        return p.facet_area_vectors();
    }
    if d + 1 == n {
        return Ok(vec![relative_area_vector(p).scale(&rat_int(2))]);
    }
    Ok(Vec::new())
}

/// The projection body as an explicit vertex set (zonotope built by
/// repeated Minkowski sums of segments). For full-dimensional P this is
/// the sum of [o, z_i] over the facet area vectors (the symmetrizing
/// translations cancel because the area vectors sum to zero); an
/// (n-1)-dimensional P gives the segment [-z, z] built from its own area
/// vector, and anything of lower dimension gives the origin.
pub fn projection_body(p: &Polytope) -> Result<Polytope> {
    let n = p.ambient_dim();
    let d = p.dim();
    if d == n {
        let mut z = Polytope::origin(n);
        for g in p.facet_area_vectors()? {
            let seg = Polytope::segment(RatVec::zero(n), g);
            z = z.minkowski_sum(&seg)?;
        }
        return Ok(z);
    }
    if d + 1 == n {
        let z = relative_area_vector(p);
        return Ok(Polytope::segment(z.neg(), z));
    }
    Ok(Polytope::origin(n))
}

/// |P| u for an (n-1)-dimensional P, where u is a unit normal of the
/// affine hull; rational because it is a sum of cofactor cross products
/// over a triangulation, divided by (n-1)!.
fn relative_area_vector(p: &Polytope) -> RatVec {
    let n = p.ambient_dim();
    debug_assert_eq!(p.dim() + 1, n);
    let mut total = RatVec::zero(n);
    let mut reference: Option<RatVec> = None;
    for simplex in p.triangulate() {
        let rows: Vec<RatVec> = (1..n).map(|i| simplex[i].sub(&simplex[0])).collect();
        let mut cr = rat_cross(&rows);
        match &reference {
            None => reference = Some(cr.clone()),
            Some(r) => {
                // all simplex normals are parallel; align signs before summing
                let k = r.0.iter().position(|c| !c.is_zero()).expect("nonzero normal");
                if cr.0[k].is_positive() != r.0[k].is_positive() {
                    cr = cr.neg();
                }
            }
        }
        total = total.add(&cr);
    }
    total.scale(&(rat_int(1) / Rational::from_integer(factorial(n - 1))))
}

/// Rotation by a quarter turn, (x, y) -> (-y, x). Ambient dimension 2 only.
pub fn rotate90(p: &Polytope) -> Result<Polytope> {
    if p.ambient_dim() != 2 {
        return Err(Error::Dimension("quarter-turn rotation needs ambient dimension 2".into()));
    }
    let pts = p
        .vertices()
        .iter()
        .map(|v| RatVec(vec![-v.0[1].clone(), v.0[0].clone()]))
        .collect();
    Polytope::from_points(2, pts)
}

/// The planar contravariant family: the quarter turn applied to z_ab.
pub fn contra_z_ab_2d(p: &Polytope, a: &Rational, b: &Rational) -> Result<Polytope> {
    if p.ambient_dim() != 2 {
        return Err(Error::Dimension("the rotated family needs ambient dimension 2".into()));
    }
    rotate90(&z_ab(p, a, b)?)
}

/// Minkowski-valuation operator interface; implemented by the classified
/// operator family and by the deliberately broken suite controls.
pub trait MinkowskiOperator {
    fn label(&self) -> String;
    fn apply(&self, p: &Polytope) -> Result<Polytope>;
    /// Whether outputs transform with phi (equivariant) or phi^{-t}
    /// (contravariant).
    fn transform_kind(&self) -> TransformKind;
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransformKind {
    Equivariant,
    Contravariant,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorKind {
    DifferenceScaled,
    ZAb,
    ProjectionScaled,
    RotZAb2d,
    Zero,
}

/// Parameterized operator description; `a`, `b`, `c` are nonnegative
/// rationals (unused ones are ignored by the kind).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_negative() || b.is_negative() || c.is_negative() {
            return Err(Error::Input("operator parameters must be nonnegative".into()));
        }
        Ok(OperatorSpec { kind, a, b, c })
    }

    pub fn z_ab(a: Rational, b: Rational) -> Result<Self> {
        Self::new(OperatorKind::ZAb, a, b, Rational::zero())
    }

    pub fn projection_scaled(c: Rational) -> Result<Self> {
        Self::new(OperatorKind::ProjectionScaled, Rational::zero(), Rational::zero(), c)
    }

    pub fn difference_scaled(c: Rational) -> Result<Self> {
        Self::new(OperatorKind::DifferenceScaled, Rational::zero(), Rational::zero(), c)
    }

    pub fn rot_z_ab_2d(a: Rational, b: Rational) -> Result<Self> {
        Self::new(OperatorKind::RotZAb2d, a, b, Rational::zero())
    }

    pub fn zero() -> Self {
        OperatorSpec {
            kind: OperatorKind::Zero,
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::zero(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            OperatorKind::DifferenceScaled => "difference_scaled",
            OperatorKind::ZAb => "z_ab",
            OperatorKind::ProjectionScaled => "projection_scaled",
            OperatorKind::RotZAb2d => "rot_z_ab_2d",
            OperatorKind::Zero => "zero",
        }
    }

    pub fn from_fields(kind: &str, a: Option<&str>, b: Option<&str>, c: Option<&str>) -> Result<Self> {
        let parse = |s: Option<&str>| -> Result<Rational> {
            s.map(parse_rational).transpose().map(|o| o.unwrap_or_else(Rational::zero))
        };
        let (a, b, c) = (parse(a)?, parse(b)?, parse(c)?);
        let kind = match kind {
            "difference_scaled" => OperatorKind::DifferenceScaled,
            "z_ab" => OperatorKind::ZAb,
            "projection_scaled" => OperatorKind::ProjectionScaled,
            "rot_z_ab_2d" => OperatorKind::RotZAb2d,
            "zero" => OperatorKind::Zero,
            other => return Err(Error::Input(format!("unknown operator kind {other:?}"))),
        };
        Self::new(kind, a, b, c)
    }
}

impl MinkowskiOperator for OperatorSpec {
    fn label(&self) -> String {
        match self.kind {
            OperatorKind::DifferenceScaled => format!("difference_scaled(c={})", self.c),
            OperatorKind::ZAb => format!("z_ab(a={},b={})", self.a, self.b),
            OperatorKind::ProjectionScaled => format!("projection_scaled(c={})", self.c),
            OperatorKind::RotZAb2d => format!("rot_z_ab_2d(a={},b={})", self.a, self.b),
            OperatorKind::Zero => "zero".into(),
        }
    }

    fn apply(&self, p: &Polytope) -> Result<Polytope> {
        match self.kind {
            OperatorKind::DifferenceScaled => Ok(difference_body(p).scale(&self.c)),
            OperatorKind::ZAb => z_ab(p, &self.a, &self.b),
            OperatorKind::ProjectionScaled => Ok(projection_body(p)?.scale(&self.c)),
            OperatorKind::RotZAb2d => contra_z_ab_2d(p, &self.a, &self.b),
            OperatorKind::Zero => Ok(Polytope::origin(p.ambient_dim())),
        }
    }

    fn transform_kind(&self) -> TransformKind {
        match self.kind {
            OperatorKind::ProjectionScaled | OperatorKind::RotZAb2d => TransformKind::Contravariant,
            _ => TransformKind::Equivariant,
        }
    }
}

/// Interpolates h(op(kP), v) at k = 1..=n+1 into a polynomial of degree at
/// most n, verifies it against the remaining sampled dilates up to kmax,
/// and returns the polynomial together with its degree-n coefficient.
pub fn homogeneous_part(
    op: &dyn MinkowskiOperator,
    p: &Polytope,
    v: &RatVec,
    kmax: usize,
) -> Result<(ExactPolynomial, Rational)> {
    let n = p.ambient_dim();
    if kmax < n + 1 {
        return Err(Error::Input(format!("kmax must be at least {}", n + 1)));
    }
    let sample = |k: i64| -> Result<Rational> { Ok(op.apply(&p.scale_int(k))?.support(v)) };
    let fit: Vec<(Int, Rational)> = (1..=n as i64 + 1)
        .map(|k| Ok((Int::from(k), sample(k)?)))
        .collect::<Result<_>>()?;
    let poly = lagrange_interpolate(&fit)?;
    for k in n as i64 + 2..=kmax as i64 {
        if poly.eval_int(k) != sample(k)? {
            return Err(Error::Inconsistency(format!(
                "support values of dilates are not polynomial of degree <= {n} (mismatch at k={k})"
            )));
        }
    }
    let leading = poly.coeff(n);
    Ok((poly, leading))
}
