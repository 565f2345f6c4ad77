//! serde adapters writing integers as JSON numbers (strings beyond i64) and
//! reading either form.

use crate::arith::Int;
use crate::lattice::LatVector;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Num(i64),
    Str(String),
}

fn repr(x: &Int) -> Repr {
    match i64::try_from(x) {
        Ok(v) => Repr::Num(v),
        Err(_) => Repr::Str(x.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<Int, E> {
    match r {
        Repr::Num(v) => Ok(Int::from(v)),
        Repr::Str(s) => s.trim().parse::<Int>().map_err(|_| E::custom(format!("not an integer: {s:?}"))),
    }
}

pub fn int_value(x: &Int) -> serde_json::Value {
    match repr(x) {
        Repr::Num(v) => serde_json::Value::from(v),
        Repr::Str(s) => serde_json::Value::from(s),
    }
}

pub fn vec_value(v: &[Int]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(int_value).collect())
}

pub fn vecs_value(v: &[LatVector]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|x| vec_value(x)).collect())
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        repr(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

pub mod vecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[LatVector], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.iter().map(repr).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<LatVector>, D::Error> {
        Vec::<Vec<Repr>>::deserialize(d)?.into_iter().map(|r| r.into_iter().map(from_repr).collect()).collect()
    }
}

pub mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<LatVector>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.iter().map(repr).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<LatVector>, D::Error> {
        match Option::<Vec<Repr>>::deserialize(d)? {
            None => Ok(None),
            Some(r) => r.into_iter().map(from_repr).collect::<Result<_, _>>().map(Some),
        }
    }
}

pub mod opt_vecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<LatVector>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.iter().map(|y| y.iter().map(repr).collect::<Vec<_>>()).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<LatVector>>, D::Error> {
        match Option::<Vec<Vec<Repr>>>::deserialize(d)? {
            None => Ok(None),
            Some(r) => r.into_iter().map(|x| x.into_iter().map(from_repr).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>().map(Some),
        }
    }
}

/// Square integer matrix given as rows.
pub mod matrix {
    use super::*;
    use crate::matrix::IMatrix;

    pub fn serialize<S: Serializer>(m: &IMatrix, s: S) -> Result<S::Ok, S::Error> {
        vecs::serialize(&m.to_rows(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IMatrix, D::Error> {
        let rows = vecs::deserialize(d)?;
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(IMatrix::from_rows(rows, c))
    }
}
