//! The oriented graph traced out of a grid, and the presentation of the
//! first homology of its complement by edge meridians.
//!
//! Arcs run from an O to each X of its row, and from each X to the O of
//! its column. A walk starting at an X in a vertex row follows those arcs
//! through unstarred O's until it reaches a vertex again; every such walk
//! is one edge.

use crate::error::{Error, Result};
use crate::grid::UnionFind;
use crate::grid::{GridDiagram, MarkerId};
use crate::{H1Element, H1Group};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Unstarred O indices on the edge interior, in walk order.
    pub interior_os: Vec<usize>,
    /// X indices along the edge, in walk order.
    pub xs: Vec<usize>,
}

impl Edge {
    /// Number of O's on the edge interior.
    pub fn n_e(&self) -> usize {
        self.interior_os.len()
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Abstract oriented graph of a grid plus the marker-to-edge assignment.
///
/// Vertex `v` is the starred O with index `v` (starred O's are numbered
/// first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialGraphModel {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    /// Edge of every X, by X index.
    pub x_edge: Vec<usize>,
    /// Edge of every O, by O index; `None` for vertex O's.
    pub o_edge: Vec<Option<usize>>,
}

/// Traces the graph of a valid grid. Saturation is not required.
pub fn trace_graph(g: &GridDiagram) -> Result<SpatialGraphModel> {
    g.ensure_valid()?;
    let n = g.n();
    let v_count = g.vertex_count();
    let mut o_row_of_col = vec![0; n];
    for (r, &c) in g.o_col().iter().enumerate() {
        o_row_of_col[c] = r;
    }

    let limit = n + g.x_count() + 1;
    let mut edges = Vec::new();
    for v in 0..v_count {
        let (vrow, _) = g.o_cell(v);
        for first_col in g.row_xs(vrow) {
            let mut xs = Vec::new();
            let mut interior = Vec::new();
            let (mut r, mut c) = (vrow, first_col);
            let target = loop {
                if xs.len() + interior.len() > limit {
                    return Err(Error::Trace(format!(
                        "walk from vertex {v} does not return to a vertex"
                    )));
                }
                xs.push(g.x_index((r, c)).expect("walk visits X cells"));
                let orow = o_row_of_col[c];
                let o = g.o_index_of_row(orow);
                if o < v_count {
                    break o;
                }
                interior.push(o);
                let mut row_xs = g.row_xs(orow);
                let (Some(next), None) = (row_xs.next(), row_xs.next()) else {
                    return Err(Error::Trace(format!("unstarred O in row {orow} is not standard")));
                };
                r = orow;
                c = next;
            };
            edges.push((
                first_col,
                Edge {
                    source: v,
                    target,
                    interior_os: interior,
                    xs,
                },
            ));
        }
    }
    edges.sort_by_key(|(col, e)| (e.source, *col));
    let edges: Vec<Edge> = edges.into_iter().map(|(_, e)| e).collect();

    let mut x_edge = vec![usize::MAX; g.x_count()];
    let mut o_edge = vec![None; n];
    for (k, e) in edges.iter().enumerate() {
        for &x in &e.xs {
            if x_edge[x] != usize::MAX {
                return Err(Error::Trace(format!("X {x} lies on two edges")));
            }
            x_edge[x] = k;
        }
        for &o in &e.interior_os {
            if o_edge[o].is_some() {
                return Err(Error::Trace(format!("O {o} lies on two edges")));
            }
            o_edge[o] = Some(k);
        }
    }
    if let Some(x) = x_edge.iter().position(|&e| e == usize::MAX) {
        return Err(Error::Trace(format!("X {x} is not on any edge")));
    }
    if let Some(o) = (v_count..n).find(|&o| o_edge[o].is_none()) {
        return Err(Error::Trace(format!("unstarred O {o} is not on any edge")));
    }

    Ok(SpatialGraphModel {
        vertex_count: v_count,
        edges,
        x_edge,
        o_edge,
    })
}

impl SpatialGraphModel {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].target == v)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].source == v)
    }

    /// Every vertex has an incoming and an outgoing edge.
    pub fn is_sinkless_sourceless(&self) -> bool {
        (0..self.vertex_count).all(|v| self.in_edges(v).next().is_some() && self.out_edges(v).next().is_some())
    }

    /// Connected components of the underlying unoriented graph.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        (0..self.vertex_count).filter(|&v| uf.find(v) == v).count()
    }

    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// One relation per vertex: `+1` per incoming incidence, `-1` per
    /// outgoing incidence (loops cancel).
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; self.edges.len()]; self.vertex_count];
        for (k, e) in self.edges.iter().enumerate() {
            rows[e.target][k] += 1;
            rows[e.source][k] -= 1;
        }
        rows
    }

    pub fn h1_group(&self) -> H1Group {
        H1Group::new(self.edges.len(), self.relation_matrix())
    }

    /// Unreduced meridian vector of a marker: the edge generator for edge
    /// markers, the sum of outgoing edges for a vertex O.
    pub fn weight_vector(&self, id: MarkerId) -> Vec<i64> {
        let mut v = vec![0i64; self.edges.len()];
        match id {
            MarkerId::X(j) => v[self.x_edge[j]] = 1,
            MarkerId::O(i) => match self.o_edge[i] {
                Some(e) => v[e] = 1,
                None => {
                    for e in self.out_edges(i) {
                        v[e] += 1;
                    }
                }
            },
        }
        v
    }

    pub fn weight(&self, group: &H1Group, id: MarkerId) -> H1Element {
        group.reduce(&self.weight_vector(id))
    }

    pub fn edge_weight(&self, group: &H1Group, e: usize) -> H1Element {
        group.unit(e)
    }
}
