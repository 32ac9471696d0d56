//! JSON matrix and vector files.
//!
//! A matrix file is `{"n": N, "data": [[[re, im], ...], ...]}` with `N` rows
//! of `N` entries. A vector file is `{"n": N, "data": [[re, im], ...]}`.
//! Numbers are written with 17 significant digits, which round-trips every
//! `f64` exactly, so serialize -> parse -> serialize is byte-identical.

use serde::de::DeserializeOwned;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::matrix_core::{validate, CMatrix, CVector, C64};

/// Formats a float with 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw(x: f64) -> Box<RawValue> {
    // non-finite values have no JSON representation; callers validate first
    let text = if x.is_finite() {
        format_f64(x)
    } else {
        "null".to_owned()
    };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

/// Serializes a complex scalar as `[re, im]`.
pub struct JsonComplex(pub C64);

impl Serialize for JsonComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&raw(self.0.re))?;
        seq.serialize_element(&raw(self.0.im))?;
        seq.end()
    }
}

/// Serializes a square matrix as nested row arrays of `[re, im]`.
pub struct JsonMatrix<'a>(pub &'a CMatrix);

impl Serialize for JsonMatrix<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.0;
        let mut rows = s.serialize_seq(Some(m.nrows()))?;
        for i in 0..m.nrows() {
            let row: Vec<JsonComplex> = (0..m.ncols()).map(|j| JsonComplex(m[(i, j)])).collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}

pub struct JsonVector<'a>(pub &'a CVector);

impl Serialize for JsonVector<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for z in self.0.iter() {
            seq.serialize_element(&JsonComplex(*z))?;
        }
        seq.end()
    }
}

pub fn ser_matrix<S: Serializer>(m: &CMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    JsonMatrix(m).serialize(s)
}

pub fn ser_vector<S: Serializer>(v: &CVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    JsonVector(v).serialize(s)
}

pub fn ser_opt_vector<S: Serializer>(
    v: &Option<CVector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => JsonVector(v).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn ser_complex<S: Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    JsonComplex(*z).serialize(s)
}

pub fn ser_complex_list<S: Serializer>(zs: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(zs.len()))?;
    for z in zs {
        seq.serialize_element(&JsonComplex(*z))?;
    }
    seq.end()
}

/// `{"n": N, "data": ...}` wrapper used for files.
pub struct MatrixFile<'a>(pub &'a CMatrix);

impl Serialize for MatrixFile<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MatrixFile", 2)?;
        st.serialize_field("n", &self.0.nrows())?;
        st.serialize_field("data", &JsonMatrix(self.0))?;
        st.end()
    }
}

pub struct VectorFile<'a>(pub &'a CVector);

impl Serialize for VectorFile<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VectorFile", 2)?;
        st.serialize_field("n", &self.0.len())?;
        st.serialize_field("data", &JsonVector(self.0))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrixFile {
    n: usize,
    data: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVectorFile {
    n: usize,
    data: Vec<[f64; 2]>,
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
}

fn entry(pair: [f64; 2], what: &str) -> Result<C64> {
    if pair.iter().all(|x| x.is_finite()) {
        Ok(C64::new(pair[0], pair[1]))
    } else {
        Err(Error::MalformedInput(format!("{what} is not finite")))
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let raw: RawMatrixFile = parse_json(text)?;
    let n = raw.n;
    if n == 0 {
        return Err(Error::MalformedInput("\"n\" must be at least 1".into()));
    }
    if raw.data.len() != n {
        return Err(Error::MalformedInput(format!(
            "\"data\" has {} rows, expected {n}",
            raw.data.len()
        )));
    }
    let mut m = CMatrix::zeros(n, n);
    for (i, row) in raw.data.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedInput(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &pair) in row.iter().enumerate() {
            m[(i, j)] = entry(pair, &format!("entry ({i}, {j})"))?;
        }
    }
    validate(&m)?;
    Ok(m)
}

pub fn parse_vector(text: &str) -> Result<CVector> {
    let raw: RawVectorFile = parse_json(text)?;
    if raw.n == 0 || raw.data.len() != raw.n {
        return Err(Error::MalformedInput(format!(
            "vector has {} entries, expected n = {} >= 1",
            raw.data.len(),
            raw.n
        )));
    }
    let entries = raw
        .data
        .iter()
        .enumerate()
        .map(|(i, &pair)| entry(pair, &format!("entry {i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(CVector::from_vec(entries))
}

pub fn matrix_to_string(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixFile(m)).expect("matrix serialization cannot fail")
}

pub fn vector_to_string(v: &CVector) -> String {
    serde_json::to_string(&VectorFile(v)).expect("vector serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_core::from_real_rows;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(-0.1), "-1.0000000000000001e-1");
        assert_eq!(format_f64(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn matrix_file_layout() {
        let m = from_real_rows(2, &[1.0, 0.5, -1.0, -2.0]);
        let text = matrix_to_string(&m);
        assert!(text.starts_with("{\"n\":2,\"data\":[[[1.0000000000000000e0,0.0000000000000000e0],"));
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn accepts_plain_numbers() {
        let m = parse_matrix(r#"{"n": 2, "data": [[[1, 0], [1, 0]], [[-1, 0], [-2, 0.5]]]}"#).unwrap();
        assert_eq!(m[(1, 1)], C64::new(-2.0, 0.5));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"n": 2, "data": [[[1, 0], [1, 0]], [[-1, 0]]]}"#,
            r#"{"n": 3, "data": [[[1, 0]]]}"#,
            r#"{"n": 1, "data": [[[1, 0, 3]]]}"#,
            r#"{"n": 0, "data": []}"#,
            r#"{"n": 1, "data": [[[1e400, 0]]]}"#,
            r#"{"data": [[[1, 0]]]}"#,
            "not json",
        ] {
            assert!(matches!(parse_matrix(bad), Err(Error::MalformedInput(_))), "{bad}");
        }
    }

    #[test]
    fn vector_file_round_trip() {
        let v = CVector::from_column_slice(&[C64::new(0.25, -1.0), C64::new(3.0, 0.0)]);
        let text = vector_to_string(&v);
        assert_eq!(parse_vector(&text).unwrap(), v);
        assert_eq!(vector_to_string(&parse_vector(&text).unwrap()), text);
        assert!(parse_vector(r#"{"n": 2, "data": [[1, 0]]}"#).is_err());
    }
}
