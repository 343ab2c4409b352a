//! Generators, empty rectangles and the boundary maps built from them.
//!
//! A rectangle from `x` starts at a point of `x` (its lower-left corner)
//! and ends at another point of `x` (its upper-right corner), wrapping
//! around the torus. The target generator swaps the rows of the two
//! corner columns.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridDiagram};
use crate::perm::{lehmer_rank, Generator, GeneratorTable};

/// Largest grid the packed marker masks can describe.
pub const MAX_MASK_GRID: usize = 64;

/// Exponent vector over `U_0 .. U_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        Monomial((0..n).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "U{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Marker content of one toroidal rectangle shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub x_count: u32,
    /// X index when `x_count == 1`.
    pub sole_x: u32,
    pub o_mask: u64,
}

/// Marker content of every rectangle shape `(left, bottom, width, height)`
/// with width and height in `1..n`.
#[derive(Debug, Clone)]
pub struct ShapeTable {
    n: usize,
    shapes: Vec<Shape>,
}

impl ShapeTable {
    pub fn new(g: &GridDiagram) -> Self {
        let n = g.n();
        assert!(n <= MAX_MASK_GRID, "grid too large for packed masks");
        let mut shapes = vec![
            Shape {
                x_count: 0,
                sole_x: u32::MAX,
                o_mask: 0
            };
            n * n * n * n
        ];
        for left in 0..n {
            for bottom in 0..n {
                for w in 1..n {
                    for h in 1..n {
                        let mut s = Shape {
                            x_count: 0,
                            sole_x: u32::MAX,
                            o_mask: 0,
                        };
                        for dc in 0..w {
                            let c = (left + dc) % n;
                            for dr in 0..h {
                                let r = (bottom + dr) % n;
                                if let Some(x) = g.x_index((r, c)) {
                                    s.x_count += 1;
                                    s.sole_x = x as u32;
                                }
                                if g.o_col()[r] == c {
                                    s.o_mask |= 1 << g.o_index_of_row(r);
                                }
                            }
                        }
                        if s.x_count != 1 {
                            s.sole_x = u32::MAX;
                        }
                        shapes[Self::key(n, left, bottom, w, h)] = s;
                    }
                }
            }
        }
        ShapeTable { n, shapes }
    }

    fn key(n: usize, left: usize, bottom: usize, w: usize, h: usize) -> usize {
        ((left * n + bottom) * n + w) * n + h
    }

    pub fn get(&self, left: usize, bottom: usize, w: usize, h: usize) -> Shape {
        self.shapes[Self::key(self.n, left, bottom, w, h)]
    }
}

/// Calls `f(a, b, width, height)` for every empty rectangle out of `rho`,
/// where `a` and `b` are the lower-left and upper-right corner columns.
pub fn for_each_empty_rect(rho: &[u8], mut f: impl FnMut(usize, usize, usize, usize)) {
    let n = rho.len();
    for a in 0..n {
        let base = rho[a] as usize;
        // smallest height offset among columns strictly between a and b
        let mut min_off = n;
        for w in 1..n {
            let b = (a + w) % n;
            let h = (rho[b] as usize + n - base) % n;
            if h < min_off {
                f(a, b, w, h);
                min_off = h;
            }
        }
    }
}

/// A toroidal rectangle between two generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub from: Generator,
    pub to: Generator,
    /// Column of the lower-left corner.
    pub left: usize,
    /// Row of the lower-left corner.
    pub bottom: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn n(&self) -> usize {
        self.from.n()
    }

    /// Covered cells as `(row, col)`.
    pub fn cells(&self) -> Vec<Cell> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.width * self.height);
        for dr in 0..self.height {
            for dc in 0..self.width {
                out.push(((self.bottom + dr) % n, (self.left + dc) % n));
            }
        }
        out
    }

    pub fn contains_cell(&self, (r, c): Cell) -> bool {
        let n = self.n();
        (c + n - self.left) % n < self.width && (r + n - self.bottom) % n < self.height
    }

    pub fn o_indices(&self, g: &GridDiagram) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.n()).filter(|&i| self.contains_cell(g.o_cell(i))).collect();
        v.sort_unstable();
        v
    }

    pub fn x_indices(&self, g: &GridDiagram) -> Vec<usize> {
        (0..g.x_count()).filter(|&j| self.contains_cell(g.x_cell(j))).collect()
    }
}

/// All empty rectangles out of `x`.
pub fn empty_rects(x: &Generator) -> Vec<Rect> {
    let mut out = Vec::new();
    for_each_empty_rect(x.rho(), |a, b, w, h| {
        out.push(Rect {
            from: x.clone(),
            to: x.swapped(a, b),
            left: a,
            bottom: x.row(a),
            width: w,
            height: h,
        });
    });
    out
}

fn target_rank(rho: &[u8], a: usize, b: usize) -> u32 {
    let mut y = [0u8; MAX_MASK_GRID];
    let y = &mut y[..rho.len()];
    y.copy_from_slice(rho);
    y.swap(a, b);
    lehmer_rank(y) as u32
}

/// A map of free `F2[U_0..U_{n-1}]`-modules on the generators, stored as
/// per-source term lists keyed by target rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMap {
    pub n: usize,
    pub terms: Vec<Vec<(Monomial, u32)>>,
}

impl SparseMap {
    pub fn zero(n: usize, gens: usize) -> Self {
        SparseMap {
            n,
            terms: vec![Vec::new(); gens],
        }
    }

    pub fn arrow_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `self ∘ other`, reduced over F2, as sorted term lists.
    pub fn compose(&self, other: &SparseMap) -> SparseMap {
        let terms = other
            .terms
            .par_iter()
            .map(|first| {
                let mut acc: HashMap<(Monomial, u32), bool> = HashMap::new();
                for (m1, y) in first {
                    for (m2, z) in &self.terms[*y as usize] {
                        *acc.entry((m1.mul(m2), *z)).or_insert(false) ^= true;
                    }
                }
                collect_odd(acc)
            })
            .collect();
        SparseMap { n: self.n, terms }
    }

    /// Sum over F2.
    pub fn add(&self, other: &SparseMap) -> SparseMap {
        let terms = self
            .terms
            .iter()
            .zip(&other.terms)
            .map(|(a, b)| {
                let mut acc: HashMap<(Monomial, u32), bool> = HashMap::new();
                for t in a.iter().chain(b) {
                    *acc.entry(t.clone()).or_insert(false) ^= true;
                }
                collect_odd(acc)
            })
            .collect();
        SparseMap { n: self.n, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }
}

fn collect_odd(acc: HashMap<(Monomial, u32), bool>) -> Vec<(Monomial, u32)> {
    let mut v: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, odd)| *odd).map(|(k, _)| k).collect();
    v.sort_unstable_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    v
}

/// Sorts and drops targets reached an even number of times.
fn cancel_pairs(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for y in v {
        if out.last() == Some(&y) {
            out.pop();
        } else {
            out.push(y);
        }
    }
    out
}

/// The tilde differential: unmarked empty rectangles, F2 coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeBoundary {
    pub targets: Vec<Vec<u32>>,
}

impl TildeBoundary {
    pub fn arrow_count(&self) -> usize {
        self.targets.iter().map(Vec::len).sum()
    }
}

/// Objects that can certify `d ∘ d = 0`.
pub trait Differential {
    fn squares_to_zero(&self) -> bool;
}

impl Differential for SparseMap {
    fn squares_to_zero(&self) -> bool {
        self.compose(self).is_zero()
    }
}

impl Differential for TildeBoundary {
    fn squares_to_zero(&self) -> bool {
        self.targets.par_iter().all(|first| {
            let mut acc: HashMap<u32, bool> = HashMap::new();
            for &y in first {
                for &z in &self.targets[y as usize] {
                    *acc.entry(z).or_insert(false) ^= true;
                }
            }
            acc.values().all(|odd| !odd)
        })
    }
}

pub fn verify_d_squared(d: &impl Differential) -> bool {
    d.squares_to_zero()
}

/// Generators and rectangle shapes of one grid.
pub struct ComplexContext {
    pub table: GeneratorTable,
    pub shapes: ShapeTable,
    n: usize,
}

impl ComplexContext {
    /// Requires a valid saturated grid.
    pub fn new(g: &GridDiagram) -> Result<Self> {
        g.ensure_valid_saturated()?;
        if g.n() > MAX_MASK_GRID {
            return Err(Error::GridTooLarge {
                n: g.n(),
                max: MAX_MASK_GRID,
            });
        }
        Ok(ComplexContext {
            table: GeneratorTable::new(g.n()),
            shapes: ShapeTable::new(g),
            n: g.n(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator_count(&self) -> usize {
        self.table.len()
    }

    /// Monomial-valued map counting empty rectangles whose shape passes
    /// `keep`.
    fn rect_map(&self, keep: impl Fn(&Shape) -> bool + Sync) -> SparseMap {
        let n = self.n;
        let terms = (0..self.table.len())
            .into_par_iter()
            .map(|k| {
                let rho = self.table.get(k);
                let mut out = Vec::new();
                for_each_empty_rect(rho, |a, b, w, h| {
                    let s = self.shapes.get(a, rho[a] as usize, w, h);
                    if keep(&s) {
                        out.push((Monomial::from_mask(n, s.o_mask), target_rank(rho, a, b)));
                    }
                });
                out
            })
            .collect();
        SparseMap { n, terms }
    }

    /// The minus differential: X-free empty rectangles weighted by their O's.
    pub fn minus_boundary(&self) -> SparseMap {
        self.rect_map(|s| s.x_count == 0)
    }

    /// Empty rectangles containing `X_k` and no other X.
    pub fn u_homotopy(&self, k: usize) -> SparseMap {
        let k = k as u32;
        self.rect_map(move |s| s.x_count == 1 && s.sole_x == k)
    }

    pub fn tilde_boundary(&self) -> TildeBoundary {
        let targets = (0..self.table.len())
            .into_par_iter()
            .map(|k| {
                let rho = self.table.get(k);
                let mut out = Vec::new();
                for_each_empty_rect(rho, |a, b, w, h| {
                    let s = self.shapes.get(a, rho[a] as usize, w, h);
                    if s.x_count == 0 && s.o_mask == 0 {
                        out.push(target_rank(rho, a, b));
                    }
                });
                cancel_pairs(out)
            })
            .collect();
        TildeBoundary { targets }
    }
}

pub fn minus_boundary(g: &GridDiagram) -> Result<SparseMap> {
    Ok(ComplexContext::new(g)?.minus_boundary())
}

pub fn tilde_boundary(g: &GridDiagram) -> Result<TildeBoundary> {
    Ok(ComplexContext::new(g)?.tilde_boundary())
}

pub fn u_homotopy(g: &GridDiagram, k: usize) -> Result<SparseMap> {
    Ok(ComplexContext::new(g)?.u_homotopy(k))
}

/// How `X_k` sits relative to the other X's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopyCase {
    /// Only X in both its row and its column.
    AloneInBoth,
    AloneInRow,
    AloneInColumn,
    /// Shares its row and its column with other X's.
    Shared,
}

/// Case of `X_k` together with the O indices whose variables should
/// appear on the right-hand side of `dH + Hd`.
pub fn homotopy_case(g: &GridDiagram, k: usize) -> (HomotopyCase, Vec<usize>) {
    let (r, c) = g.x_cell(k);
    let row_o = g.o_index_of_row(r);
    let col_o = g.o_index_of_col(c).expect("valid grid has an O in every column");
    let in_row = g.row_x_count(r) == 1;
    let in_col = g.col_x_count(c) == 1;
    match (in_row, in_col) {
        (true, true) => {
            let mut v = vec![row_o, col_o];
            v.sort_unstable();
            (HomotopyCase::AloneInBoth, v)
        }
        (true, false) => (HomotopyCase::AloneInRow, vec![row_o]),
        (false, true) => (HomotopyCase::AloneInColumn, vec![col_o]),
        (false, false) => (HomotopyCase::Shared, Vec::new()),
    }
}

/// Checks `d H_k + H_k d = sum of U_i` over the expected O indices, times
/// the identity.
pub fn check_homotopy_identity(ctx: &ComplexContext, d: &SparseMap, g: &GridDiagram, k: usize) -> bool {
    let h = ctx.u_homotopy(k);
    let lhs = d.compose(&h).add(&h.compose(d));
    let (_, vars) = homotopy_case(g, k);
    let n = ctx.n();
    lhs.terms.iter().enumerate().all(|(x, terms)| {
        let mut expect: Vec<(Monomial, u32)> = vars.iter().map(|&i| (Monomial::var(n, i), x as u32)).collect();
        expect.sort_unstable_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        *terms == expect
    })
}
