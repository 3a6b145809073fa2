//! JSON forms of exact numbers: integers that fit in 64 bits as numbers,
//! everything else as `"a"` or `"a/b"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{Serialize, Serializer};

struct Int<'a>(&'a BigInt);

impl Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct Rat<'a>(&'a BigRational);

impl Serialize for Rat<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            Int(self.0.numer()).serialize(s)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

pub(crate) fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    Int(v).serialize(s)
}

pub(crate) fn ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Int))
}

pub(crate) fn rat<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    Rat(v).serialize(s)
}

pub(crate) fn rats<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Rat))
}

pub(crate) fn opt_rat<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => Rat(r).serialize(s),
        None => s.serialize_none(),
    }
}
