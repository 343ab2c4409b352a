//! Maslov and Alexander gradings.
//!
//! Coordinates are doubled throughout so half-integers never appear:
//! a generator point `(c, r)` sits at `(2c, 2r)` and a marker in cell
//! `(r, c)` sits at `(2c + 1, 2r + 1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SpatialGraphModel;
use crate::grid::{GridDiagram, MarkerId, MarkerKind};
use crate::perm::Generator;
use crate::{H1Element, H1Group};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    pub doubled: i64,
}

impl HalfInt {
    pub fn from_int(v: i64) -> Self {
        HalfInt { doubled: 2 * v }
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// A formal integer combination of planar points in doubled coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalPoints(pub Vec<((i64, i64), i64)>);

impl FormalPoints {
    pub fn generator(x: &Generator) -> Self {
        FormalPoints(x.points().map(|(c, r)| ((2 * c as i64, 2 * r as i64), 1)).collect())
    }

    pub fn markers(g: &GridDiagram, kind: MarkerKind) -> Self {
        let cells: Vec<(usize, usize)> = match kind {
            MarkerKind::O => (0..g.n()).map(|i| g.o_cell(i)).collect(),
            MarkerKind::X => g.x_cells().iter().copied().collect(),
        };
        FormalPoints(
            cells
                .into_iter()
                .map(|(r, c)| ((2 * c as i64 + 1, 2 * r as i64 + 1), 1))
                .collect(),
        )
    }

    pub fn minus(mut self, other: &FormalPoints) -> Self {
        self.0.extend(other.0.iter().map(|&(p, m)| (p, -m)));
        self
    }
}

/// Weighted count of pairs `(a, b)` with `b` strictly up and right of `a`.
pub fn i_count(a: &FormalPoints, b: &FormalPoints) -> i64 {
    let mut total = 0;
    for &((ax, ay), ma) in &a.0 {
        for &((bx, by), mb) in &b.0 {
            if bx > ax && by > ay {
                total += ma * mb;
            }
        }
    }
    total
}

/// The symmetrized pairing `(I(A,B) + I(B,A)) / 2`.
pub fn j_pairing(a: &FormalPoints, b: &FormalPoints) -> HalfInt {
    HalfInt {
        doubled: i_count(a, b) + i_count(b, a),
    }
}

/// Maslov grading `J(x - O, x - O) + 1`, straight from the pairing.
pub fn maslov(g: &GridDiagram, x: &Generator) -> i64 {
    let d = FormalPoints::generator(x).minus(&FormalPoints::markers(g, MarkerKind::O));
    let j = j_pairing(&d, &d);
    j.to_integer().expect("self-pairing of a formal set is an integer") + 1
}

/// Precomputed tables for grading many generators of one grid.
#[derive(Debug, Clone)]
pub struct Gradings {
    n: usize,
    edges: usize,
    group: H1Group,
    /// `h[i * (n + 1) + j]`, unreduced.
    winding: Vec<Vec<i64>>,
    /// Doubled J-route Alexander value of each lattice point, unreduced.
    j_point: Vec<Vec<i64>>,
    /// `O`'s weakly NE plus strictly SW of each point, `n * n`.
    o_pairs: Vec<i64>,
    o_self: i64,
    o_weights: Vec<H1Element>,
}

impl Gradings {
    pub fn new(g: &GridDiagram, sg: &SpatialGraphModel) -> Self {
        let n = g.n();
        let e = sg.edge_count();
        let group = sg.h1_group();

        let mut winding = vec![vec![0i64; e]; (n + 1) * (n + 1)];
        for i in 0..=n {
            for j in 0..n {
                let mut next = winding[i * (n + 1) + j].clone();
                let oc = g.o_col()[j];
                for xc in g.row_xs(j) {
                    let (lo, hi) = (oc.min(xc), oc.max(xc));
                    if lo < i && i <= hi {
                        let edge = sg.x_edge[g.x_index((j, xc)).expect("X present")];
                        next[edge] += if xc > oc { 1 } else { -1 };
                    }
                }
                winding[i * (n + 1) + j + 1] = next;
            }
        }

        let markers: Vec<((usize, usize), i64, Vec<i64>)> = g
            .markers()
            .into_iter()
            .map(|m| {
                let id = match m.kind {
                    MarkerKind::X => MarkerId::X(m.index),
                    MarkerKind::O => MarkerId::O(m.index),
                };
                let eps = if m.kind == MarkerKind::X { 1 } else { -1 };
                ((m.row, m.col), eps, sg.weight_vector(id))
            })
            .collect();
        let mut j_point = vec![vec![0i64; e]; n * n];
        for c in 0..n {
            for r in 0..n {
                let acc = &mut j_point[c * n + r];
                for ((mr, mc), eps, w) in &markers {
                    let ne = *mc >= c && *mr >= r;
                    let sw = *mc < c && *mr < r;
                    if ne || sw {
                        for (a, x) in acc.iter_mut().zip(w) {
                            *a += eps * x;
                        }
                    }
                }
            }
        }

        let o_cells: Vec<(usize, usize)> = (0..n).map(|i| g.o_cell(i)).collect();
        let mut o_pairs = vec![0i64; n * n];
        for c in 0..n {
            for r in 0..n {
                o_pairs[c * n + r] = o_cells
                    .iter()
                    .filter(|&&(or, oc)| (oc >= c && or >= r) || (oc < c && or < r))
                    .count() as i64;
            }
        }
        let mut o_self = 0;
        for &(r1, c1) in &o_cells {
            for &(r2, c2) in &o_cells {
                if r2 > r1 && c2 > c1 {
                    o_self += 1;
                }
            }
        }
        let o_weights = (0..n).map(|i| sg.weight(&group, MarkerId::O(i))).collect();

        Gradings {
            n,
            edges: e,
            group,
            winding,
            j_point,
            o_pairs,
            o_self,
            o_weights,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &H1Group {
        &self.group
    }

    /// Unreduced generalized winding number at lattice point `(i, j)`,
    /// `0 <= i, j <= n`.
    pub fn winding_vector(&self, i: usize, j: usize) -> &[i64] {
        &self.winding[i * (self.n + 1) + j]
    }

    pub fn winding(&self, i: usize, j: usize) -> H1Element {
        self.group.reduce(self.winding_vector(i, j))
    }

    pub fn maslov(&self, rho: &[u8]) -> i64 {
        let n = self.n;
        let mut m = self.o_self + 1;
        for c in 0..n {
            let rc = rho[c];
            m += rho[c + 1..].iter().filter(|&&r| r > rc).count() as i64;
            m -= self.o_pairs[c * n + rc as usize];
        }
        m
    }

    /// Unreduced `-sum h(x_c)`.
    pub fn alexander_vector(&self, rho: &[u8]) -> Vec<i64> {
        let mut acc = vec![0i64; self.edges];
        for (c, &r) in rho.iter().enumerate() {
            for (a, h) in acc.iter_mut().zip(self.winding_vector(c, r as usize)) {
                *a -= h;
            }
        }
        acc
    }

    pub fn alexander(&self, rho: &[u8]) -> H1Element {
        self.group.reduce(&self.alexander_vector(rho))
    }

    /// Twice the Alexander grading by the J-formula, unreduced.
    pub fn alexander_doubled_by_pairing(&self, rho: &[u8]) -> Vec<i64> {
        let mut acc = vec![0i64; self.edges];
        for (c, &r) in rho.iter().enumerate() {
            for (a, v) in acc.iter_mut().zip(&self.j_point[c * self.n + r as usize]) {
                *a += v;
            }
        }
        acc
    }

    /// Confirms that the winding and pairing routes agree on `rho`.
    pub fn check_alexander(&self, rho: &[u8]) -> Result<()> {
        let twice: Vec<i64> = self.alexander_vector(rho).iter().map(|v| 2 * v).collect();
        let by_pairing = self.alexander_doubled_by_pairing(rho);
        if self.group.reduce(&twice) == self.group.reduce(&by_pairing) {
            Ok(())
        } else {
            Err(Error::Grading(format!(
                "Alexander grading of {rho:?} differs between winding and pairing"
            )))
        }
    }

    /// Weight of O number `i`.
    pub fn o_weight(&self, i: usize) -> &H1Element {
        &self.o_weights[i]
    }

    /// Bidegree `(-w(O_i), -2)` of the variable `U_i`.
    pub fn u_degree(&self, i: usize) -> (H1Element, i64) {
        (self.group.neg(&self.o_weights[i]), -2)
    }
}

/// Generalized winding number at lattice point `q = (i, j)`.
pub fn winding(g: &GridDiagram, sg: &SpatialGraphModel, q: (usize, usize)) -> H1Element {
    Gradings::new(g, sg).winding(q.0, q.1)
}

/// Alexander grading of one generator.
pub fn alexander(g: &GridDiagram, sg: &SpatialGraphModel, x: &Generator) -> H1Element {
    Gradings::new(g, sg).alexander(x.rho())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::trace_graph;
    use crate::grid::parse_grid;
    use crate::perm::generators;

    fn unknot() -> GridDiagram {
        parse_grid("2\nXO\n*X\n").unwrap()
    }

    #[test]
    fn pairing_basics() {
        let a = FormalPoints(vec![((0, 0), 1), ((2, 2), 1)]);
        assert_eq!(j_pairing(&a, &a), HalfInt::from_int(1));
        assert_eq!(j_pairing(&FormalPoints::default(), &a), HalfInt::default());
        let b = FormalPoints(vec![((1, 3), 1)]);
        assert_eq!(j_pairing(&a, &b), j_pairing(&b, &a));
        assert_eq!(j_pairing(&a, &b).to_string(), "1/2");
    }

    #[test]
    fn unknot_maslov() {
        let g = unknot();
        assert_eq!(maslov(&g, &Generator::new(vec![0, 1])), -1);
        assert_eq!(maslov(&g, &Generator::new(vec![1, 0])), 0);
        let one = parse_grid("1\n*\n").unwrap();
        assert_eq!(maslov(&one, &Generator::identity(1)), 0);
    }

    #[test]
    fn fast_maslov_matches_pairing() {
        for text in ["2\nXO\n*X\n", "3\nX.O\nX*.\n*XX\n", "4\n..XO\n..*X\nXO..\n*X..\n"] {
            let g = parse_grid(text).unwrap();
            let sg = trace_graph(&g).unwrap();
            let gr = Gradings::new(&g, &sg);
            for x in generators(g.n()) {
                assert_eq!(gr.maslov(x.rho()), maslov(&g, &x));
            }
        }
    }

    #[test]
    fn unknot_alexander() {
        let g = unknot();
        let sg = trace_graph(&g).unwrap();
        let gr = Gradings::new(&g, &sg);
        let e1 = gr.group().unit(0);
        assert_eq!(gr.winding(1, 1), e1);
        assert_eq!(gr.alexander(&[0, 1]), gr.group().neg(&e1));
        assert!(gr.alexander(&[1, 0]).is_zero());
        let diff = gr.group().sub(&gr.alexander(&[0, 1]), &gr.alexander(&[1, 0]));
        assert_eq!(diff, gr.group().neg(&e1));
    }

    #[test]
    fn winding_vanishes_on_boundary_and_agrees_with_pairing() {
        for text in ["3\nX.O\nX*.\n*XX\n", "3\n.XO\nX*.\n*XX\n", "3\nX.O\nXO.\n*XX\n"] {
            let g = parse_grid(text).unwrap();
            let sg = trace_graph(&g).unwrap();
            let gr = Gradings::new(&g, &sg);
            let n = g.n();
            for k in 0..=n {
                for (i, j) in [(k, 0), (k, n), (0, k), (n, k)] {
                    assert!(gr.winding(i, j).is_zero(), "{text} at ({i},{j})");
                }
            }
            for x in generators(n) {
                gr.check_alexander(x.rho()).unwrap();
            }
        }
    }

    #[test]
    fn u_degrees() {
        let g = parse_grid("3\nX.O\nX*.\n*XX\n").unwrap();
        let sg = trace_graph(&g).unwrap();
        let gr = Gradings::new(&g, &sg);
        let grp = gr.group();
        let v0 = grp.add(&grp.unit(0), &grp.unit(1));
        assert_eq!(gr.u_degree(0), (grp.neg(&v0), -2));
        // unstarred O lies on the loop
        assert_eq!(gr.u_degree(2), (grp.neg(&grp.unit(1)), -2));
        for i in 0..3 {
            assert!(!gr.u_degree(i).0.is_zero());
        }
    }
}
