//! Coefficient quivers of representations in their given basis.

use std::fmt::Write;

use serde::Serialize;

use crate::linalg::Scalar;
use crate::rep::Representation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffNode {
    /// Vertex id of the home vertex.
    pub vertex: String,
    /// One-based coordinate index within the home vertex space.
    pub index: usize,
}

impl CoeffNode {
    pub fn label(&self) -> String {
        format!("v{}_{}", self.vertex, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffEdge {
    pub arrow: String,
    pub source: usize,
    pub target: usize,
    pub coefficient: Scalar,
}

/// Nodes are the basis vectors (vertex order, then coordinate); an edge
/// `source → target` records a nonzero entry of an arrow matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffQuiver {
    pub nodes: Vec<CoeffNode>,
    pub edges: Vec<CoeffEdge>,
}

pub fn coefficient_quiver(x: &Representation) -> CoeffQuiver {
    let q = x.quiver();
    let dims = x.dims();
    let mut offsets = Vec::with_capacity(dims.len());
    let mut nodes = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        offsets.push(nodes.len());
        for k in 0..d {
            nodes.push(CoeffNode { vertex: q.vertex_id(i).to_string(), index: k + 1 });
        }
    }
    let mut edges = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let m = x.mat(a);
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                let v = m.get(r, c);
                if !v.is_zero() {
                    edges.push(CoeffEdge {
                        arrow: arrow.id.clone(),
                        source: offsets[arrow.tail] + c,
                        target: offsets[arrow.head] + r,
                        coefficient: v.clone(),
                    });
                }
            }
        }
    }
    CoeffQuiver { nodes, edges }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Connected with exactly `nodes - 1` edges. The empty graph is not a tree.
pub fn is_tree(c: &CoeffQuiver) -> bool {
    let n = c.nodes.len();
    if n == 0 || c.edges.len() != n - 1 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for e in &c.edges {
        let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

pub fn nonzero_count(x: &Representation) -> usize {
    x.nonzero_count()
}

pub fn export_dot(c: &CoeffQuiver) -> String {
    let mut out = String::from("digraph coefficient_quiver {\n");
    for node in &c.nodes {
        writeln!(out, "  \"{}\";", node.label()).unwrap();
    }
    for e in &c.edges {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}:{}\"];",
            c.nodes[e.source].label(),
            c.nodes[e.target].label(),
            e.arrow,
            e.coefficient
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
