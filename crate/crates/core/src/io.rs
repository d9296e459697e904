//! JSON encodings of representations.
//!
//! ```json
//! {"quiver": {"vertices": ["1","2"], "arrows": [{"id":"a","tail":"1","head":"2"}]},
//!  "field": "q", "dims": {"1": 1, "2": 1}, "mats": {"a": [["1"]]}}
//! ```
//!
//! Entries are strings (`"3"`, `"-1/2"`). `field` is optional and defaults to
//! the rationals; prime fields are written `"fp:3"`.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::quiver::Quiver;
use crate::rep::Representation;

#[derive(Serialize, Deserialize)]
struct RepFile {
    quiver: Quiver,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    dims: Map<String, Value>,
    mats: Map<String, Value>,
}

pub fn rep_to_value(x: &Representation) -> Value {
    let q = x.quiver();
    let dims = q
        .vertices()
        .iter()
        .zip(x.dims())
        .map(|(v, &d)| (v.clone(), Value::from(d)))
        .collect();
    let mats = q
        .arrows()
        .iter()
        .zip(x.mats())
        .map(|(a, m)| (a.id.clone(), serde_json::to_value(m.to_string_rows()).unwrap()))
        .collect();
    let file = RepFile { quiver: q.clone(), field: Some(x.field()), dims, mats };
    serde_json::to_value(file).unwrap()
}

pub fn rep_to_json(x: &Representation) -> String {
    serde_json::to_string_pretty(&rep_to_value(x)).unwrap() + "\n"
}

fn parse_matrix(field: Field, id: &str, rows: usize, cols: usize, value: &Value) -> Result<Mat> {
    let bad = |why: &str| Error::input(format!("matrix of arrow `{id}`: {why}"));
    let list = value.as_array().ok_or_else(|| bad("expected a list of rows"))?;
    // a matrix with no columns may be written as `rows` empty lists or as `[]`
    if cols == 0 && list.is_empty() {
        return Ok(Mat::zeros(field, rows, 0));
    }
    if list.len() != rows {
        return Err(bad(&format!("expected {rows} rows, found {}", list.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in list {
        let row = row.as_array().ok_or_else(|| bad("rows must be lists"))?;
        if row.len() != cols {
            return Err(bad(&format!("expected {cols} columns, found {}", row.len())));
        }
        for v in row {
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() => n.to_string(),
                _ => return Err(bad("entries must be strings or integers")),
            };
            entries.push(field.parse_scalar(&s)?);
        }
    }
    Ok(Mat::from_scalars(field, rows, cols, entries))
}

pub fn rep_from_value(value: Value) -> Result<Representation> {
    let file: RepFile = serde_json::from_value(value)?;
    let q = file.quiver;
    let field = file.field.unwrap_or(Field::Rational);
    for key in file.dims.keys() {
        q.vertex_index(key)?;
    }
    for key in file.mats.keys() {
        q.arrow_index(key)?;
    }
    let mut dims = Vec::with_capacity(q.vertex_count());
    for v in q.vertices() {
        let d = file
            .dims
            .get(v)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::input(format!("missing or invalid dimension for vertex `{v}`")))?;
        dims.push(d as usize);
    }
    let mut mats = Vec::with_capacity(q.arrow_count());
    for a in q.arrows() {
        let (rows, cols) = (dims[a.head], dims[a.tail]);
        let m = match file.mats.get(&a.id) {
            Some(v) => parse_matrix(field, &a.id, rows, cols, v)?,
            None if rows == 0 || cols == 0 => Mat::zeros(field, rows, cols),
            None => return Err(Error::input(format!("missing matrix for arrow `{}`", a.id))),
        };
        mats.push(m);
    }
    Representation::new(q, field, dims, mats)
}

pub fn rep_from_json(text: &str) -> Result<Representation> {
    rep_from_value(serde_json::from_str(text)?)
}

pub fn quiver_from_json(text: &str) -> Result<Quiver> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_with_fractions_and_empty_blocks() {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let f = Field::Rational;
        let a = Mat::from_scalars(f, 2, 1, vec![f.parse_scalar("-1/2").unwrap(), f.from_i64(3)]);
        let x = Representation::new(q, f, vec![1, 2, 0], vec![a, Mat::zeros(f, 0, 2)]).unwrap();
        let text = rep_to_json(&x);
        assert!(text.contains("\"-1/2\""));
        assert_eq!(rep_from_json(&text).unwrap(), x);
    }

    #[test]
    fn integer_ids_and_missing_field() {
        let text = r#"{"quiver":{"vertices":[1,2],"arrows":[{"id":"a","tail":1,"head":2}]},
                      "dims":{"1":1,"2":1},"mats":{"a":[["2"]]}}"#;
        let x = rep_from_json(text).unwrap();
        assert_eq!(x.field(), Field::Rational);
        assert_eq!(x.mat(0).get(0, 0), &Field::Rational.from_i64(2));
    }

    #[test]
    fn prime_field_and_errors() {
        let text = r#"{"quiver":{"vertices":["1","2"],"arrows":[{"id":"a","tail":"1","head":"2"}]},
                      "field":"fp:3","dims":{"1":1,"2":1},"mats":{"a":[["4"]]}}"#;
        let x = rep_from_json(text).unwrap();
        assert_eq!(x.mat(0).get(0, 0), &Field::Prime(3).from_i64(1));
        assert!(rep_from_json(&text.replace("[[\"4\"]]", "[[\"4\",\"1\"]]")).is_err());
        assert!(rep_from_json(&text.replace("\"a\":[[", "\"b\":[[")).is_err());
        assert!(rep_from_json("{").is_err());
        assert!(rep_from_json(&text.replace("fp:3", "fp:4")).is_err());
    }
}
