//! JSON input for vectors, sublattices, isometries and cones.
//!
//! A vector is a dense array `[1, 0, -2]` or a sparse object `{"0": 1, "22": -1}`;
//! integers may be JSON numbers or decimal strings. A sublattice is an array
//! of such rows or `{"basis": [...]}`; an isometry is a square array of rows or
//! `{"matrix": [...]}`; a cone is `{"rays": [...], "facets"?: [...], "reference"?: v}`.

use crate::arith::Int;
use crate::error::{Error, Result};
use crate::lattice::{LatVector, Lattice};
use crate::matrix::IMatrix;
use crate::sublattice::Sublattice;
use crate::walls::ConeDescription;
use serde_json::Value;

/// Upper bound on the number of rows accepted from one document.
pub const MAX_ROWS: usize = 4096;

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let pos = text.lines().take(e.line().saturating_sub(1)).map(|l| l.len() + 1).sum::<usize>() + e.column().saturating_sub(1);
        Error::Parse { pos, msg: e.to_string() }
    })
}

fn parse_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(Error::Input(format!("not an integer: {n}")))
            }
        }
        Value::String(s) => {
            let t = s.trim();
            if t.is_empty() || t.len() > 4096 {
                return Err(Error::Input("bad integer string".into()));
            }
            t.parse::<Int>().map_err(|_| Error::Input(format!("not an integer: {s:?}")))
        }
        _ => Err(Error::Input(format!("expected an integer, got {v}"))),
    }
}

/// A dense or sparse vector of length `rank`.
pub fn vector_from_value(v: &Value, rank: usize) -> Result<LatVector> {
    match v {
        Value::Array(a) => {
            if a.len() != rank {
                return Err(Error::Dimension(format!("vector has {} entries, expected {rank}", a.len())));
            }
            a.iter().map(parse_int).collect()
        }
        Value::Object(o) => {
            let mut out = vec![Int::from(0); rank];
            for (k, x) in o {
                let i: usize = k.trim().parse().map_err(|_| Error::Input(format!("bad index {k:?}")))?;
                if i >= rank {
                    return Err(Error::Dimension(format!("index {i} out of range for rank {rank}")));
                }
                out[i] = parse_int(x)?;
            }
            Ok(out)
        }
        _ => Err(Error::Input("expected an array or an index object".into())),
    }
}

fn rows_from_value(v: &Value, key: &str, rank: usize) -> Result<Vec<LatVector>> {
    let arr = match v {
        Value::Array(a) => a,
        Value::Object(o) => match o.get(key) {
            Some(Value::Array(a)) => a,
            _ => return Err(Error::Input(format!("expected an array or an object with {key:?}"))),
        },
        _ => return Err(Error::Input("expected an array of rows".into())),
    };
    if arr.len() > MAX_ROWS {
        return Err(Error::Input(format!("more than {MAX_ROWS} rows")));
    }
    arr.iter().map(|r| vector_from_value(r, rank)).collect()
}

pub fn parse_vector(text: &str, rank: usize) -> Result<LatVector> {
    vector_from_value(&parse_json(text)?, rank)
}

/// Rows in ambient coordinates.
pub fn parse_rows(text: &str, rank: usize) -> Result<Vec<LatVector>> {
    rows_from_value(&parse_json(text)?, "basis", rank)
}

pub fn parse_sublattice(text: &str, l: &Lattice) -> Result<Sublattice> {
    let rows = parse_rows(text, l.rank())?;
    if rows.is_empty() {
        return Err(Error::Input("empty basis".into()));
    }
    Sublattice::new(l, IMatrix::from_rows(rows, l.rank()))
}

/// An n x n integer matrix acting on column vectors.
pub fn parse_matrix(text: &str, n: usize) -> Result<IMatrix> {
    let rows = rows_from_value(&parse_json(text)?, "matrix", n)?;
    if rows.len() != n {
        return Err(Error::Dimension(format!("matrix has {} rows, expected {n}", rows.len())));
    }
    Ok(IMatrix::from_rows(rows, n))
}

pub fn parse_cone(text: &str, rank: usize) -> Result<ConeDescription> {
    let v = parse_json(text)?;
    let Value::Object(o) = &v else {
        return Err(Error::Input("a cone is an object with \"rays\"".into()));
    };
    let rays = rows_from_value(o.get("rays").ok_or_else(|| Error::Input("missing \"rays\"".into()))?, "rays", rank)?;
    let facets = o.get("facets").map(|f| rows_from_value(f, "facets", rank)).transpose()?;
    let reference = o.get("reference").map(|r| vector_from_value(r, rank)).transpose()?;
    Ok(ConeDescription { rays, facets, reference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;

    #[test]
    fn dense_and_sparse_rows() {
        let l = Lattice::l2();
        let a = parse_sublattice(r#"[{"0": 1, "1": 1}, {"22": 1}]"#, &l).unwrap();
        let b = parse_sublattice(&format!("{{\"basis\": [{:?}, {:?}]}}", {
            let mut v = vec![0; 23];
            v[0] = 1;
            v[1] = 1;
            v
        }, {
            let mut v = vec![0; 23];
            v[22] = 1;
            v
        }), &l)
        .unwrap();
        assert_eq!(a.basis(), b.basis());
        assert_eq!(a.gram().to_i64_rows().unwrap(), vec![vec![2, 0], vec![0, -2]]);
    }

    #[test]
    fn big_integers_as_strings() {
        let v = parse_vector(r#"["-123456789012345678901234567890", 2]"#, 2).unwrap();
        assert_eq!(v[1], Int::from(2));
        assert!(v[0] < Int::from(i64::MIN));
    }

    #[test]
    fn errors_are_classified() {
        assert!(parse_vector("[1, 2", 2).unwrap_err().is_parse());
        assert!(matches!(parse_vector("[1, 2, 3]", 2), Err(Error::Dimension(_))));
        assert!(matches!(parse_vector(r#"{"5": 1}"#, 2), Err(Error::Dimension(_))));
        assert!(matches!(parse_vector("[1.5, 2]", 2), Err(Error::Input(_))));
        assert!(matches!(parse_matrix("[[1, 0]]", 2), Err(Error::Dimension(_))));
        assert!(parse_cone("[]", 2).is_err());
    }

    #[test]
    fn cone_with_reference() {
        let c = parse_cone(r#"{"rays": [[1, 1], [1, -1]], "reference": [1, 0]}"#, 2).unwrap();
        assert_eq!(c.rays, vec![ivec(&[1, 1]), ivec(&[1, -1])]);
        assert_eq!(c.reference, Some(ivec(&[1, 0])));
        let back = serde_json::to_string(&c).unwrap();
        assert_eq!(back, r#"{"rays":[[1,1],[1,-1]],"reference":[1,0]}"#);
    }
}
