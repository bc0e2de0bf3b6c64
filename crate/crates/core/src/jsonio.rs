//! JSON encoding of the library's values. Every exact number is a string
//! ("p/q", or a decimal integer string), never a JSON float.

use serde_json::{json, Value};

use crate::decomp::{CellDecomposition, ValuationQuadruple};
use crate::ehrhart::{EhrhartExpansion, MomentExpansion};
use crate::error::{Error, Result};
use crate::linalg::{IntVec, RatVec};
use crate::operators::OperatorSpec;
use crate::polytope::{HalfspaceSystem, Polytope};
use crate::rational::{parse_rational, rational_to_string};

pub fn ratvec_to_json(v: &RatVec) -> Value {
    Value::Array(v.0.iter().map(|c| Value::String(rational_to_string(c))).collect())
}

pub fn intvec_to_json(v: &IntVec) -> Value {
    Value::Array(v.0.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn ratvec_from_json(v: &Value) -> Result<RatVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a coordinate array".into()))?;
    let coords = arr
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::Parse("coordinates must be strings".into()))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(Error::Parse("empty coordinate array".into()));
    }
    Ok(RatVec(coords))
}

/// {"dim": n, "vertices": [["0","1"], ...]} with canonical vertex order.
pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "vertices": Value::Array(p.vertices().iter().map(ratvec_to_json).collect()),
    })
}

/// Parses and re-canonicalizes a polytope document.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a polytope object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("polytope needs an integer \"dim\"".into()))? as usize;
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polytope needs a \"vertices\" array".into()))?;
    let points = verts.iter().map(ratvec_from_json).collect::<Result<Vec<_>>>()?;
    Polytope::from_points(dim, points)
}

/// {"L": ["1","3/2","1/2"]} indexed by degree.
pub fn ehrhart_to_json(e: &EhrhartExpansion) -> Value {
    json!({
        "L": Value::Array(
            e.coefficients()
                .iter()
                .map(|c| Value::String(rational_to_string(c)))
                .collect()
        ),
    })
}

/// {"ell": [["1/3","1/3"], ...]} listing the coefficient vectors of
/// degrees 1 through dim(P) + 1 (the constant term is always zero).
pub fn moment_to_json(m: &MomentExpansion) -> Value {
    json!({
        "ell": Value::Array(m.coefficient_vectors().iter().map(ratvec_to_json).collect()),
    })
}

pub fn halfspace_to_json(h: &HalfspaceSystem) -> Value {
    let side = |rows: &[(RatVec, crate::rational::Rational)]| {
        Value::Array(
            rows.iter()
                .map(|(a, b)| {
                    json!({
                        "normal": ratvec_to_json(a),
                        "offset": rational_to_string(b),
                    })
                })
                .collect(),
        )
    };
    json!({
        "inequalities": side(&h.inequalities),
        "equations": side(&h.equations),
    })
}

/// {"kind": "z_ab", "a": "2", "b": "2"}; parameters default to zero.
pub fn operator_to_json(op: &OperatorSpec) -> Value {
    json!({
        "kind": op.kind_name(),
        "a": rational_to_string(&op.a),
        "b": rational_to_string(&op.b),
        "c": rational_to_string(&op.c),
    })
}

pub fn operator_from_json(v: &Value) -> Result<OperatorSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected an operator object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("operator needs a \"kind\" string".into()))?;
    let field = |k: &str| obj.get(k).and_then(Value::as_str);
    OperatorSpec::from_fields(kind, field("a"), field("b"), field("c"))
}

pub fn quadruple_to_json(q: &ValuationQuadruple) -> Value {
    json!({
        "p": polytope_to_json(&q.p),
        "q": polytope_to_json(&q.q),
        "union": polytope_to_json(&q.union_hull),
        "intersection": polytope_to_json(&q.intersection),
    })
}

/// Cells, deduplicated faces with interior flags, and the per-dimension
/// census.
pub fn decomposition_to_json(d: &CellDecomposition) -> Value {
    json!({
        "target": polytope_to_json(&d.target),
        "cells": Value::Array(d.cells.iter().map(polytope_to_json).collect()),
        "faces": Value::Array(
            d.faces
                .iter()
                .map(|f| {
                    json!({
                        "dim": f.dim,
                        "meets_interior": f.meets_interior,
                        "polytope": polytope_to_json(&f.polytope),
                    })
                })
                .collect()
        ),
        "census": Value::Array(
            d.face_census()
                .iter()
                .map(|(dim, total, interior)| {
                    json!({"dim": dim, "faces": total, "meeting_interior": interior})
                })
                .collect()
        ),
        "adjacencies": Value::Array(
            d.adjacencies
                .iter()
                .map(|(i, j, dim)| json!({"cells": [i, j], "dim": dim}))
                .collect()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart;
    use crate::rational::rat;

    #[test]
    fn polytope_round_trip() {
        let polys = vec![
            Polytope::standard_simplex(3),
            Polytope::unit_cube(2),
            Polytope::from_points(
                2,
                vec![
                    RatVec(vec![rat(1, 2), rat(-3, 4)]),
                    RatVec(vec![rat(2, 1), rat(0, 1)]),
                ],
            )
            .unwrap(),
        ];
        for p in polys {
            let v = polytope_to_json(&p);
            let back = polytope_from_json(&v).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn polytope_json_shape() {
        let t2 = Polytope::standard_simplex(2);
        let v = polytope_to_json(&t2);
        assert_eq!(v["dim"], 2);
        assert_eq!(v["vertices"][0][0], "0");
        let text = v.to_string();
        let back = polytope_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, t2);
    }

    #[test]
    fn malformed_polytopes_rejected() {
        for bad in [
            json!({"vertices": [["0","0"]]}),
            json!({"dim": 2}),
            json!({"dim": 2, "vertices": [[0, 0]]}),
            json!({"dim": 2, "vertices": [["1/0", "0"]]}),
            json!([1, 2, 3]),
        ] {
            assert!(polytope_from_json(&bad).is_err());
        }
    }

    #[test]
    fn expansion_documents() {
        let t2 = Polytope::standard_simplex(2);
        let e = ehrhart::ehrhart(&t2).unwrap();
        assert_eq!(ehrhart_to_json(&e), json!({"L": ["1", "3/2", "1/2"]}));

        let m = ehrhart::moment_expansion(&t2).unwrap();
        let v = moment_to_json(&m);
        assert_eq!(v["ell"][0], json!(["1/3", "1/3"]));
    }

    #[test]
    fn operator_round_trip() {
        let op = OperatorSpec::z_ab(rat(2, 1), rat(1, 2)).unwrap();
        let v = operator_to_json(&op);
        assert_eq!(v["kind"], "z_ab");
        assert_eq!(operator_from_json(&v).unwrap(), op);
        assert!(operator_from_json(&json!({"kind": "banana"})).is_err());
    }
}
