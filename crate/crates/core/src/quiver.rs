//! Quivers, dimension vectors, the Ringel form, and Weyl group combinatorics.
//!
//! Vertices and arrows are addressed by position; their ids only matter at
//! the I/O boundary. Positional order fixes every downstream basis and scan
//! order, so it is part of a quiver's identity.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite loop-free directed multigraph with ordered vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, tail id, head id)` triples.
    pub fn new<V, A>(vertices: &[V], arrows: &[(A, V, V)]) -> Result<Quiver>
    where
        V: AsRef<str>,
        A: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let lookup = |id: &str| {
            vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| Error::input(format!("arrow endpoint `{id}` is not a vertex")))
        };
        let mut built = Vec::with_capacity(arrows.len());
        for (id, tail, head) in arrows {
            built.push(Arrow {
                id: id.as_ref().to_string(),
                tail: lookup(tail.as_ref())?,
                head: lookup(head.as_ref())?,
            });
        }
        Quiver::from_parts(vertices, built)
    }

    /// Builds a quiver from ids and index-based arrows, validating all invariants.
    pub fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::input(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::input(format!("duplicate arrow id `{}`", a.id)));
            }
            if a.tail >= vertices.len() || a.head >= vertices.len() {
                return Err(Error::input(format!("arrow `{}` has an endpoint out of range", a.id)));
            }
            if a.tail == a.head {
                return Err(Error::input(format!("arrow `{}` is a loop; loops are not supported", a.id)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::input(format!("unknown vertex `{id}`")))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::input(format!("unknown arrow `{id}`")))
    }

    pub(crate) fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::input(format!("vertex index {i} out of range")))
        }
    }

    /// Arrows with head `i`, in arrow order.
    pub fn incoming(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].head == i).collect()
    }

    /// Arrows with tail `i`, in arrow order.
    pub fn outgoing(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].tail == i).collect()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.tail != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.head != i)
    }

    /// The same quiver with every arrow incident to `i` reversed.
    pub fn reversed_at(&self, i: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.tail == i || a.head == i {
                    Arrow { id: a.id.clone(), tail: a.head, head: a.tail }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// The opposite quiver: every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), tail: a.head, head: a.tail })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Whether the given vertex set is connected in the underlying undirected graph.
    pub fn is_connected_subset(&self, subset: &BTreeSet<usize>) -> bool {
        let Some(&start) = subset.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for a in &self.arrows {
                let next = if a.tail == v {
                    a.head
                } else if a.head == v {
                    a.tail
                } else {
                    continue;
                };
                if subset.contains(&next) && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen.len() == subset.len()
    }

    fn check_dims(&self, d: &DimVector) -> Result<()> {
        if d.len() == self.vertex_count() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "dimension vector has {} coordinates, quiver has {} vertices",
                d.len(),
                self.vertex_count()
            )))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IdValue {
    Text(String),
    Number(i64),
}

impl IdValue {
    fn into_string(self) -> String {
        match self {
            IdValue::Text(s) => s,
            IdValue::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowFile {
    id: IdValue,
    tail: IdValue,
    head: IdValue,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: Vec<IdValue>,
    arrows: Vec<ArrowFile>,
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverFile {
            vertices: self.vertices.iter().cloned().map(IdValue::Text).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    id: IdValue::Text(a.id.clone()),
                    tail: IdValue::Text(self.vertices[a.tail].clone()),
                    head: IdValue::Text(self.vertices[a.head].clone()),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = QuiverFile::deserialize(deserializer)?;
        let vertices: Vec<String> = file.vertices.into_iter().map(IdValue::into_string).collect();
        let arrows: Vec<(String, String, String)> = file
            .arrows
            .into_iter()
            .map(|a| (a.id.into_string(), a.tail.into_string(), a.head.into_string()))
            .collect();
        Quiver::new(&vertices, &arrows).map_err(serde::de::Error::custom)
    }
}

/// Integer vector indexed by vertex position. Dimension vectors proper are
/// non-negative; Weyl-orbit computations pass through vectors of either sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(coords: Vec<i64>) -> DimVector {
        DimVector(coords)
    }

    pub fn zero(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> DimVector {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate sum.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Non-negative and nonzero.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// `Some(i)` when this is the coordinate vector `e_i`.
    pub fn simple_index(&self) -> Option<usize> {
        let support = self.support();
        match support.iter().next() {
            Some(&i) if support.len() == 1 && self.0[i] == 1 => Some(i),
            _ => None,
        }
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Coordinates as `usize`; panics on negative entries.
    pub fn as_dims(&self) -> Vec<usize> {
        self.0
            .iter()
            .map(|&c| usize::try_from(c).expect("negative dimension"))
            .collect()
    }

    pub fn from_dims(dims: &[usize]) -> DimVector {
        DimVector(dims.iter().map(|&d| d as i64).collect())
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for DimVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DimVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<i64>::deserialize(deserializer).map(DimVector)
    }
}

/// A word in the simple reflections. Letters are vertex positions; the
/// rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renders the word with the quiver's vertex ids, e.g. `s3 s2`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&i| format!("s{}", q.vertex_id(i)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    Simple,
    Real,
    Imaginary,
    NotARoot,
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootClass::Simple => "simple",
            RootClass::Real => "real",
            RootClass::Imaginary => "imaginary",
            RootClass::NotARoot => "not_a_root",
        })
    }
}

/// `<a, b> = sum_i a[i] b[i] - sum_arrows a[tail] b[head]`.
pub fn ringel_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    q.check_dims(a)?;
    q.check_dims(b)?;
    let diagonal: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let arrows: i64 = q.arrows.iter().map(|ar| a[ar.tail] * b[ar.head]).sum();
    Ok(diagonal - arrows)
}

/// The symmetrized form `(a, b) = <a, b> + <b, a>`.
pub fn sym_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    Ok(ringel_form(q, a, b)? + ringel_form(q, b, a)?)
}

/// `(a, e_i)` without building `e_i`.
fn pairing_with_simple(q: &Quiver, a: &DimVector, i: usize) -> i64 {
    let mut s = 2 * a[i];
    for ar in &q.arrows {
        if ar.head == i {
            s -= a[ar.tail];
        }
        if ar.tail == i {
            s -= a[ar.head];
        }
    }
    s
}

/// The simple reflection `s_i(a) = a - (a, e_i) e_i`.
pub fn reflect(q: &Quiver, i: usize, a: &DimVector) -> Result<DimVector> {
    q.check_vertex(i)?;
    q.check_dims(a)?;
    let mut out = a.clone();
    out.0[i] -= pairing_with_simple(q, a, i);
    Ok(out)
}

/// Applies `w` to `a`, rightmost letter first.
pub fn apply_word(q: &Quiver, w: &WeylWord, a: &DimVector) -> Result<DimVector> {
    let mut v = a.clone();
    for &i in w.0.iter().rev() {
        v = reflect(q, i, &v)?;
    }
    Ok(v)
}

enum DescentEnd {
    Simple(usize),
    Fundamental,
    Negative,
}

struct Descent {
    /// Reflections in the order they were applied to `a`.
    letters: Vec<usize>,
    end: DescentEnd,
    last: DimVector,
}

/// Greedy height descent: reflect at the smallest vertex with `(a, e_i) > 0`
/// until a simple root, a vector in the fundamental region, or a vector with a
/// negative coordinate is reached.
fn descend(q: &Quiver, a: &DimVector) -> Descent {
    let mut v = a.clone();
    let mut letters = Vec::new();
    loop {
        if let Some(j) = v.simple_index() {
            return Descent { letters, end: DescentEnd::Simple(j), last: v };
        }
        let step = (0..q.vertex_count()).find(|&i| pairing_with_simple(q, &v, i) > 0);
        let Some(i) = step else {
            return Descent { letters, end: DescentEnd::Fundamental, last: v };
        };
        v.0[i] -= pairing_with_simple(q, &v, i);
        letters.push(i);
        if !v.is_nonnegative() {
            return Descent { letters, end: DescentEnd::Negative, last: v };
        }
    }
}

fn check_positive(q: &Quiver, a: &DimVector) -> Result<()> {
    q.check_dims(a)?;
    if !a.is_positive() {
        return Err(Error::input(format!("{a} is not a nonzero non-negative vector")));
    }
    Ok(())
}

pub fn classify_root(q: &Quiver, a: &DimVector) -> Result<RootClass> {
    check_positive(q, a)?;
    if a.simple_index().is_some() {
        return Ok(RootClass::Simple);
    }
    let d = descend(q, a);
    Ok(match d.end {
        DescentEnd::Simple(_) => RootClass::Real,
        DescentEnd::Negative => RootClass::NotARoot,
        DescentEnd::Fundamental => {
            if q.is_connected_subset(&d.last.support()) {
                RootClass::Imaginary
            } else {
                RootClass::NotARoot
            }
        }
    })
}

/// Returns `(w, j)` with `apply_word(w, e_j) = a` for a real or simple root `a`.
pub fn root_expression(q: &Quiver, a: &DimVector) -> Result<(WeylWord, usize)> {
    check_positive(q, a)?;
    let d = descend(q, a);
    match d.end {
        // a = s_{l1} s_{l2} ... s_{lk} e_j where l1 was applied first in the descent
        DescentEnd::Simple(j) => Ok((WeylWord(d.letters), j)),
        _ => Err(Error::domain(format!("{a} is not a real root"))),
    }
}

/// All positive real roots (simple roots included) of height at most
/// `height_bound`, each once, in lexicographic order.
pub fn enumerate_real_roots(q: &Quiver, height_bound: i64) -> Vec<DimVector> {
    let n = q.vertex_count();
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let e = DimVector::unit(n, i);
        if e.height() <= height_bound && seen.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let mut w = v.clone();
            w.0[i] -= pairing_with_simple(q, &v, i);
            if w.is_positive() && w.height() <= height_bound && !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(f: usize, g: usize, h: usize) -> Quiver {
        crate::family::build_family(crate::family::FamilyParams::new(f, g, h).unwrap())
    }

    fn kronecker(f: usize) -> Quiver {
        crate::family::prime_subquiver(f)
    }

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Quiver::new(&["1"], &[("a", "1", "1")]).is_err());
        assert!(Quiver::new(&["1", "1"], &[] as &[(&str, &str, &str)]).is_err());
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "3")]).is_err());
    }

    #[test]
    fn ringel_form_examples() {
        let q = family(1, 1, 1);
        for i in 0..3 {
            let e = DimVector::unit(3, i);
            assert_eq!(ringel_form(&q, &e, &e).unwrap(), 1);
        }
        assert_eq!(ringel_form(&q, &dv(&[1, 1, 1]), &dv(&[1, 1, 1])).unwrap(), 0);
        let q = family(2, 3, 1);
        let chi = dv(&[3, 2, 0]);
        assert_eq!(ringel_form(&q, &chi, &DimVector::unit(3, 2)).unwrap(), -3 * 2);
        assert!(ringel_form(&q, &dv(&[1, 0]), &chi).is_err());
    }

    #[test]
    fn sym_form_examples() {
        let q = family(1, 1, 1);
        assert_eq!(sym_form(&q, &DimVector::unit(3, 1), &DimVector::unit(3, 1)).unwrap(), 2);
        assert_eq!(sym_form(&q, &DimVector::unit(3, 1), &DimVector::unit(3, 2)).unwrap(), -2);
        let q = family(4, 1, 1);
        assert_eq!(sym_form(&q, &DimVector::unit(3, 0), &DimVector::unit(3, 1)).unwrap(), -4);
    }

    #[test]
    fn reflect_examples() {
        let q = family(1, 1, 1);
        let e2 = DimVector::unit(3, 1);
        assert_eq!(reflect(&q, 1, &e2).unwrap(), dv(&[0, -1, 0]));
        assert_eq!(reflect(&q, 2, &e2).unwrap(), dv(&[0, 1, 2]));
        let q = family(2, 1, 1);
        assert_eq!(reflect(&q, 0, &e2).unwrap(), dv(&[2, 1, 0]));
        assert!(reflect(&q, 3, &e2).is_err());
    }

    #[test]
    fn apply_word_examples() {
        let q = family(2, 3, 1);
        let a = dv(&[1, 4, 2]);
        assert_eq!(apply_word(&q, &WeylWord::default(), &a).unwrap(), a);
        assert_eq!(
            apply_word(&q, &WeylWord(vec![0, 2]), &a).unwrap(),
            apply_word(&q, &WeylWord(vec![2, 0]), &a).unwrap()
        );
        let q = family(1, 1, 1);
        // s3 s2 (e3): s2 acts first
        let r = apply_word(&q, &WeylWord(vec![2, 1]), &DimVector::unit(3, 2)).unwrap();
        assert_eq!(r, dv(&[0, 2, 3]));
        assert!(apply_word(&q, &WeylWord(vec![5]), &a).is_err());
    }

    #[test]
    fn classify_examples() {
        let q = family(1, 1, 1);
        assert_eq!(classify_root(&q, &DimVector::unit(3, 1)).unwrap(), RootClass::Simple);
        let k = kronecker(2);
        assert_eq!(classify_root(&k, &dv(&[1, 1])).unwrap(), RootClass::Imaginary);
        assert_eq!(classify_root(&k, &dv(&[2, 1])).unwrap(), RootClass::Real);
        assert_eq!(classify_root(&k, &dv(&[2, 2])).unwrap(), RootClass::Imaginary);
        let a2 = kronecker(1);
        assert_eq!(classify_root(&a2, &dv(&[2, 1])).unwrap(), RootClass::NotARoot);
        assert!(classify_root(&a2, &dv(&[0, 0])).is_err());
        assert!(classify_root(&a2, &dv(&[-1, 2])).is_err());
    }

    #[test]
    fn disconnected_fundamental_vector_is_not_a_root() {
        let q = Quiver::new(&["1", "2"], &[] as &[(&str, &str, &str)]).unwrap();
        assert_eq!(classify_root(&q, &dv(&[1, 1])).unwrap(), RootClass::NotARoot);
    }

    #[test]
    fn root_expression_examples() {
        let q = family(1, 1, 1);
        assert_eq!(root_expression(&q, &DimVector::unit(3, 2)).unwrap(), (WeylWord::default(), 2));
        assert_eq!(root_expression(&q, &dv(&[0, 1, 2])).unwrap(), (WeylWord(vec![2]), 1));
        let k = kronecker(2);
        assert_eq!(root_expression(&k, &dv(&[2, 1])).unwrap(), (WeylWord(vec![0]), 1));
        assert!(root_expression(&k, &dv(&[1, 1])).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_real_roots(&kronecker(1), 3), vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1])]);
        assert_eq!(
            enumerate_real_roots(&kronecker(2), 4),
            vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 2]), dv(&[2, 1])]
        );
        let q = family(3, 1, 2);
        let simple: Vec<DimVector> = (0..3).rev().map(|i| DimVector::unit(3, i)).collect();
        assert_eq!(enumerate_real_roots(&q, 1), simple);
    }
}
