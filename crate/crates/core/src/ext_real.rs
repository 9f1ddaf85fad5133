//! JSON encoding of extended reals: non-finite values are written as strings.

use serde::ser::SerializeSeq;
use serde::Serializer;

fn label(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(label(*x))
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for &x in xs {
            if x.is_finite() {
                seq.serialize_element(&x)?;
            } else {
                seq.serialize_element(label(x))?;
            }
        }
        seq.end()
    }
}

/// CSV/plain-text rendering matching the JSON labels.
pub fn format(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        label(x).to_string()
    }
}
