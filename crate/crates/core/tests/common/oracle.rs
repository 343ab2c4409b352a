//! Slow, self-contained reference implementations.
//!
//! Nothing here calls into the main pipeline beyond reading marker
//! positions off a `GridDiagram`. H1 classes are compared through integer
//! coordinates `k . v` for a basis `k` of the kernel of the vertex relation
//! matrix, which identifies two edge vectors exactly when they differ by a
//! relation (the relation lattice of a graph is saturated).

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use graphfloer::homology::BigradedDims;
use graphfloer::{GridDiagram, SpatialGraphModel};

/// Marker positions of a grid.
#[derive(Debug, Clone)]
pub struct Plain {
    pub n: usize,
    pub o_col: Vec<usize>,
    pub starred: Vec<bool>,
    pub xs: Vec<(usize, usize)>,
}

impl Plain {
    pub fn of(g: &GridDiagram) -> Self {
        let n = g.n();
        Plain {
            n,
            o_col: g.o_col().to_vec(),
            starred: (0..n).map(|r| g.is_starred(r)).collect(),
            xs: g.x_cells().iter().copied().collect(),
        }
    }

    pub fn o_row_of_col(&self, c: usize) -> usize {
        (0..self.n).find(|&r| self.o_col[r] == c).unwrap()
    }
}

/// Edges as classes of X's, with the vertex relations.
#[derive(Debug, Clone)]
pub struct OracleGraph {
    pub plain: Plain,
    /// Edge label of each X, in the order of `plain.xs`.
    pub label: Vec<usize>,
    pub edges: usize,
    pub relations: Vec<Vec<i64>>,
    pub kernel: Vec<Vec<i64>>,
}

impl OracleGraph {
    pub fn of(g: &GridDiagram) -> Self {
        let p = Plain::of(g);
        let k = p.xs.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while p[i] != i {
                i = p[i];
            }
            i
        }
        for (i, &(_, c)) in p.xs.iter().enumerate() {
            let orow = p.o_row_of_col(c);
            if p.starred[orow] {
                continue;
            }
            let next: Vec<usize> = (0..k).filter(|&j| p.xs[j].0 == orow).collect();
            assert_eq!(next.len(), 1, "unstarred O with a nonstandard row");
            let (a, b) = (find(&mut parent, i), find(&mut parent, next[0]));
            parent[a] = b;
        }
        let mut ids = HashMap::new();
        let mut label = Vec::with_capacity(k);
        for i in 0..k {
            let root = find(&mut parent, i);
            let next = ids.len();
            label.push(*ids.entry(root).or_insert(next));
        }
        let edges = ids.len();
        let mut relations = Vec::new();
        for r in 0..p.n {
            if !p.starred[r] {
                continue;
            }
            let mut row = vec![0i64; edges];
            for (i, &(xr, xc)) in p.xs.iter().enumerate() {
                if xc == p.o_col[r] {
                    row[label[i]] += 1;
                }
                if xr == r {
                    row[label[i]] -= 1;
                }
            }
            relations.push(row);
        }
        let kernel = integer_kernel(&relations, edges);
        OracleGraph {
            plain: p,
            label,
            edges,
            relations,
            kernel,
        }
    }

    pub fn coords(&self, v: &[i64]) -> Vec<i64> {
        self.kernel
            .iter()
            .map(|k| k.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Oracle edge label of each main-pipeline edge.
    pub fn edge_translation(&self, sg: &SpatialGraphModel, g: &GridDiagram) -> Vec<usize> {
        sg.edges
            .iter()
            .map(|e| {
                let cell = g.x_cell(e.xs[0]);
                self.label[self.plain.xs.iter().position(|&c| c == cell).unwrap()]
            })
            .collect()
    }

    /// Coordinates of an edge vector given in main-pipeline edge order.
    pub fn coords_of_main(&self, v: &[i64], translation: &[usize]) -> Vec<i64> {
        let mut w = vec![0i64; self.edges];
        for (e, x) in v.iter().enumerate() {
            w[translation[e]] += x;
        }
        self.coords(&w)
    }

    /// Signed crossings of the polyline through `points` (doubled
    /// coordinates) with the projected graph.
    pub fn crossings(&self, points: &[(i64, i64)]) -> Vec<i64> {
        let arcs = self.arcs();
        let mut acc = vec![0i64; self.edges];
        for seg in points.windows(2) {
            let (p0, p1) = (seg[0], seg[1]);
            for &(edge, a0, a1) in &arcs {
                acc[edge] += crossing(p0, p1, a0, a1);
            }
        }
        acc
    }

    /// Oriented arcs `(edge, from, to)`: O to X along rows, X to O along
    /// columns, markers at odd doubled coordinates.
    fn arcs(&self) -> Vec<Arc> {
        let p = &self.plain;
        let pt = |r: usize, c: usize| (2 * c as i64 + 1, 2 * r as i64 + 1);
        let mut out = Vec::new();
        for (i, &(r, c)) in p.xs.iter().enumerate() {
            out.push((self.label[i], pt(r, p.o_col[r]), pt(r, c)));
            out.push((self.label[i], pt(r, c), pt(p.o_row_of_col(c), c)));
        }
        out
    }
}

/// `(edge, from, to)` in doubled coordinates.
type Arc = (usize, (i64, i64), (i64, i64));

fn crossing(p0: (i64, i64), p1: (i64, i64), a0: (i64, i64), a1: (i64, i64)) -> i64 {
    let pd = ((p1.0 - p0.0).signum(), (p1.1 - p0.1).signum());
    let ad = ((a1.0 - a0.0).signum(), (a1.1 - a0.1).signum());
    let between = |v: i64, a: i64, b: i64| a.min(b) < v && v < a.max(b);
    let hits = if pd.1 == 0 && ad.0 == 0 {
        between(a0.0, p0.0, p1.0) && between(p0.1, a0.1, a1.1)
    } else if pd.0 == 0 && ad.1 == 0 {
        between(p0.0, a0.0, a1.0) && between(a0.1, p0.1, p1.1)
    } else {
        false
    };
    if hits {
        pd.1 * ad.0 - pd.0 * ad.1
    } else {
        0
    }
}

/// Integer basis of `{k : R k = 0}` by exact rational elimination.
fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(row, p);
        for i in 0..m.len() {
            if i != row && m[i][c] != 0 {
                let (a, b) = (m[row][c], m[i][c]);
                let pivot = m[row].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot) {
                    *v = *v * a - p * b;
                }
                let g = m[i].iter().fold(0, |acc, &v| gcd(acc, v));
                if g > 1 {
                    m[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        // k[free] = L, k[pivot_i] = -L * m[i][free] / m[i][pivot_i]
        let l = pivots.iter().enumerate().fold(1i128, |acc, (i, &pc)| {
            let d = m[i][pc].abs();
            acc / gcd(acc, d) * d
        });
        let mut k = vec![0i128; cols];
        k[free] = l;
        for (i, &pc) in pivots.iter().enumerate() {
            k[pc] = -l * m[i][free] / m[i][pc];
        }
        basis.push(k.into_iter().map(|v| v as i64).collect());
    }
    basis
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A rectangle found by direct scanning, with its covered cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScanRect {
    pub left: usize,
    pub bottom: usize,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<(usize, usize)>,
}

/// Every empty rectangle from `x` to `y`, by trying all corner positions
/// and cyclic spans. `x[c]` is the row of the point in column `c`.
pub fn rect_scan(x: &[usize], y: &[usize]) -> Vec<ScanRect> {
    rect_scan_inner(x, y, true)
}

/// As [`rect_scan`] without the emptiness condition.
pub fn rect_scan_all(x: &[usize], y: &[usize]) -> Vec<ScanRect> {
    rect_scan_inner(x, y, false)
}

fn rect_scan_inner(x: &[usize], y: &[usize], empty: bool) -> Vec<ScanRect> {
    let n = x.len();
    let mut out = Vec::new();
    for left in 0..n {
        for bottom in 0..n {
            for width in 1..n {
                for height in 1..n {
                    let right = (left + width) % n;
                    let top = (bottom + height) % n;
                    let corners = x[left] == bottom && x[right] == top && y[left] == top && y[right] == bottom;
                    let rest = (0..n).all(|c| c == left || c == right || x[c] == y[c]);
                    if !corners || !rest {
                        continue;
                    }
                    let inside = (1..width).any(|dc| {
                        let off = (x[(left + dc) % n] + n - bottom) % n;
                        off >= 1 && off < height
                    });
                    if empty && inside {
                        continue;
                    }
                    let mut cells = Vec::new();
                    for dr in 0..height {
                        for dc in 0..width {
                            cells.push(((bottom + dr) % n, (left + dc) % n));
                        }
                    }
                    out.push(ScanRect {
                        left,
                        bottom,
                        width,
                        height,
                        cells,
                    });
                }
            }
        }
    }
    out
}

/// Counts of X's and O's in the cells of a rectangle.
pub fn marker_counts(p: &Plain, r: &ScanRect) -> (usize, usize) {
    let xs = r.cells.iter().filter(|c| p.xs.contains(c)).count();
    let os = r.cells.iter().filter(|&&(row, col)| p.o_col[row] == col).count();
    (xs, os)
}

/// Strictly-southwest pair count between two point sets.
fn i_count(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut k = 0;
    for p in a {
        for q in b {
            if p.0 < q.0 && p.1 < q.1 {
                k += 1;
            }
        }
    }
    k
}

/// Maslov grading `I(x,x) - I(x,O) - I(O,x) + I(O,O) + 1`, doubled
/// coordinates throughout.
pub fn maslov(p: &Plain, x: &[usize]) -> i64 {
    let xs: Vec<(i64, i64)> = x
        .iter()
        .enumerate()
        .map(|(c, &r)| (2 * c as i64, 2 * r as i64))
        .collect();
    let os: Vec<(i64, i64)> = (0..p.n)
        .map(|r| (2 * p.o_col[r] as i64 + 1, 2 * r as i64 + 1))
        .collect();
    i_count(&xs, &xs) - i_count(&xs, &os) - i_count(&os, &xs) + i_count(&os, &os) + 1
}

/// Winding number at lattice point `(i, j)` via the eight L-shaped paths
/// from the four corners; errors if any two disagree in H1.
pub fn winding_by_paths(og: &OracleGraph, i: usize, j: usize) -> Result<Vec<i64>, String> {
    let n2 = 2 * og.plain.n as i64;
    let q = (2 * i as i64, 2 * j as i64);
    let mut first: Option<(Vec<i64>, Vec<i64>)> = None;
    for corner in [(0, 0), (n2, 0), (0, n2), (n2, n2)] {
        for bend in [(q.0, corner.1), (corner.0, q.1)] {
            let raw = og.crossings(&[corner, bend, q]);
            let c = og.coords(&raw);
            match &first {
                None => first = Some((raw, c)),
                Some((_, c0)) if *c0 != c => {
                    return Err(format!("paths disagree at ({i}, {j}) from corner {corner:?}"));
                }
                _ => {}
            }
        }
    }
    Ok(first.unwrap().0)
}

/// Unreduced Alexander grading `-sum h(c, x_c)` using the path from the
/// origin along the bottom edge.
pub fn alexander(og: &OracleGraph, x: &[usize]) -> Vec<i64> {
    let mut acc = vec![0i64; og.edges];
    for (c, &r) in x.iter().enumerate() {
        let q = (2 * c as i64, 2 * r as i64);
        let h = og.crossings(&[(0, 0), (q.0, 0), q]);
        for (a, v) in acc.iter_mut().zip(h) {
            *a -= v;
        }
    }
    acc
}

/// Dimensions keyed by (H1 coordinates, Maslov degree).
pub type OracleDims = BTreeMap<(Vec<i64>, i64), usize>;

/// Main-pipeline dimensions rewritten in oracle coordinates.
pub fn main_dims_in_coords(dims: &BigradedDims, og: &OracleGraph, translation: &[usize]) -> OracleDims {
    let mut out = OracleDims::new();
    for (a, m, d) in dims.iter() {
        *out.entry((og.coords_of_main(a.as_slice(), translation), m))
            .or_default() += d;
    }
    out
}

/// Rank over F2 of a dense matrix given as rows of booleans.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] {
                let pivot = rows[rank].clone();
                for (v, p) in rows[i].iter_mut().zip(pivot).skip(c) {
                    *v ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Tilde homology by dense elimination: all generators, rectangles found by
/// [`rect_scan`], gradings from [`maslov`] and [`alexander`].
pub fn dense_homology(g: &GridDiagram) -> Result<OracleDims, String> {
    let og = OracleGraph::of(g);
    let p = &og.plain;
    let gens = permutations(p.n);
    let index: HashMap<&[usize], usize> = gens.iter().enumerate().map(|(k, x)| (x.as_slice(), k)).collect();
    let grade: Vec<(Vec<i64>, i64)> = gens
        .iter()
        .map(|x| (og.coords(&alexander(&og, x)), maslov(p, x)))
        .collect();

    // d[x][y] for x, y in the same Maslov-adjacent pair of levels
    let mut arrows: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for (k, x) in gens.iter().enumerate() {
        for a in 0..p.n {
            for b in a + 1..p.n {
                let mut y = x.clone();
                y.swap(a, b);
                let count = rect_scan(x, &y)
                    .iter()
                    .filter(|r| marker_counts(p, r) == (0, 0))
                    .count();
                if count % 2 == 1 {
                    let t = index[y.as_slice()];
                    if grade[t].0 != grade[k].0 || grade[t].1 + 1 != grade[k].1 {
                        return Err(format!("arrow {x:?} -> {y:?} breaks the bigrading"));
                    }
                    arrows[k].push(t);
                }
            }
        }
    }

    let mut groups: BTreeMap<(Vec<i64>, i64), Vec<usize>> = BTreeMap::new();
    for (k, gr) in grade.iter().enumerate() {
        groups.entry(gr.clone()).or_default().push(k);
    }
    let rank_out = |key: &(Vec<i64>, i64)| -> usize {
        let Some(src) = groups.get(key) else { return 0 };
        let Some(dst) = groups.get(&(key.0.clone(), key.1 - 1)) else {
            return 0;
        };
        let rows: Vec<Vec<bool>> = src
            .iter()
            .map(|&x| dst.iter().map(|y| arrows[x].contains(y)).collect())
            .collect();
        dense_rank(rows)
    };
    let mut out = OracleDims::new();
    for (key, members) in &groups {
        let up = (key.0.clone(), key.1 + 1);
        let dim = members.len() as i64 - rank_out(key) as i64 - rank_out(&up) as i64;
        if dim < 0 {
            return Err(format!("negative dimension at {key:?}"));
        }
        if dim > 0 {
            out.insert(key.clone(), dim as usize);
        }
    }
    Ok(out)
}

/// Twice the Alexander grading by the pairing formula
/// `sum over points p and markers m of eps(m) w(m) (I(p,m) + I(m,p))`,
/// with `eps = +1` on X's and `-1` on O's.
pub fn alexander_doubled_by_j(og: &OracleGraph, x: &[usize]) -> Vec<i64> {
    let p = &og.plain;
    let mut markers: Vec<((i64, i64), i64, Vec<i64>)> = Vec::new();
    for (i, &(r, c)) in p.xs.iter().enumerate() {
        let mut w = vec![0i64; og.edges];
        w[og.label[i]] = 1;
        markers.push(((2 * c as i64 + 1, 2 * r as i64 + 1), 1, w));
    }
    for r in 0..p.n {
        let mut w = vec![0i64; og.edges];
        for (i, &(xr, _)) in p.xs.iter().enumerate() {
            if xr == r {
                w[og.label[i]] += 1;
            }
        }
        markers.push(((2 * p.o_col[r] as i64 + 1, 2 * r as i64 + 1), -1, w));
    }
    let mut acc = vec![0i64; og.edges];
    for (c, &r) in x.iter().enumerate() {
        let pt = (2 * c as i64, 2 * r as i64);
        for (m, eps, w) in &markers {
            let k = i_count(&[pt], &[*m]) + i_count(&[*m], &[pt]);
            for (a, v) in acc.iter_mut().zip(w) {
                *a += eps * k * v;
            }
        }
    }
    acc
}
