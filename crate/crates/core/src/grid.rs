//! Graph grid diagrams: data model, text format, validity rules.
//!
//! Rows are numbered bottom-to-top and columns left-to-right, both from 0.
//! Cell `(r, c)` occupies `[c, c+1] x [r, r+1]`; its marker sits at the
//! cell center. The text format lists the top row first.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A cell coordinate `(row, col)`.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkerKind {
    X,
    O,
}

/// A marker together with its stable ordinal.
///
/// O's are numbered with the starred (vertex) O's first, each group by row.
/// X's are numbered by `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marker {
    pub kind: MarkerKind,
    pub row: usize,
    pub col: usize,
    pub starred: bool,
    pub index: usize,
}

/// Index-only reference to a marker of a fixed grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkerId {
    O(usize),
    X(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    o_col: Vec<usize>,
    x_cells: BTreeSet<Cell>,
    starred: BTreeSet<usize>,
    // derived
    o_order: Vec<usize>,
    o_index_of_row: Vec<usize>,
    x_list: Vec<Cell>,
}

impl fmt::Debug for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridDiagram(\n{})", self.render())
    }
}

impl GridDiagram {
    /// Builds a grid from its parts. Only index ranges are checked here;
    /// the diagram rules are checked by [`GridDiagram::validate`].
    pub fn from_parts(
        n: usize,
        o_col: Vec<usize>,
        x_cells: impl IntoIterator<Item = Cell>,
        starred: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrid("grid size must be at least 1".into()));
        }
        if o_col.len() != n {
            return Err(Error::InvalidGrid(format!(
                "expected {n} O columns, got {}",
                o_col.len()
            )));
        }
        if let Some(&c) = o_col.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidGrid(format!("O column {c} out of range")));
        }
        let x_cells: BTreeSet<Cell> = x_cells.into_iter().collect();
        if let Some(&(r, c)) = x_cells.iter().find(|&&(r, c)| r >= n || c >= n) {
            return Err(Error::InvalidGrid(format!("X cell ({r},{c}) out of range")));
        }
        let starred: BTreeSet<usize> = starred.into_iter().collect();
        if let Some(&r) = starred.iter().find(|&&r| r >= n) {
            return Err(Error::InvalidGrid(format!("starred row {r} out of range")));
        }

        let mut o_order: Vec<usize> = starred.iter().copied().collect();
        o_order.extend((0..n).filter(|r| !starred.contains(r)));
        let mut o_index_of_row = vec![0; n];
        for (i, &r) in o_order.iter().enumerate() {
            o_index_of_row[r] = i;
        }
        let x_list = x_cells.iter().copied().collect();
        Ok(GridDiagram {
            n,
            o_col,
            x_cells,
            starred,
            o_order,
            o_index_of_row,
            x_list,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column of the O in each row.
    pub fn o_col(&self) -> &[usize] {
        &self.o_col
    }

    pub fn x_cells(&self) -> &BTreeSet<Cell> {
        &self.x_cells
    }

    /// Rows whose O is a vertex O.
    pub fn starred_rows(&self) -> &BTreeSet<usize> {
        &self.starred
    }

    pub fn is_starred(&self, row: usize) -> bool {
        self.starred.contains(&row)
    }

    pub fn vertex_count(&self) -> usize {
        self.starred.len()
    }

    pub fn x_count(&self) -> usize {
        self.x_list.len()
    }

    pub fn has_x(&self, cell: Cell) -> bool {
        self.x_cells.contains(&cell)
    }

    pub fn has_o(&self, (r, c): Cell) -> bool {
        self.o_col[r] == c
    }

    /// Cell of O number `i`.
    pub fn o_cell(&self, i: usize) -> Cell {
        let r = self.o_order[i];
        (r, self.o_col[r])
    }

    pub fn o_index_of_row(&self, row: usize) -> usize {
        self.o_index_of_row[row]
    }

    /// Index of the O in column `col`, if the O columns form a bijection.
    pub fn o_index_of_col(&self, col: usize) -> Option<usize> {
        self.o_col
            .iter()
            .position(|&c| c == col)
            .map(|r| self.o_index_of_row[r])
    }

    /// Cell of X number `j`.
    pub fn x_cell(&self, j: usize) -> Cell {
        self.x_list[j]
    }

    pub fn x_index(&self, cell: Cell) -> Option<usize> {
        self.x_list.binary_search(&cell).ok()
    }

    pub fn row_x_count(&self, row: usize) -> usize {
        self.x_cells.range((row, 0)..(row + 1, 0)).count()
    }

    pub fn col_x_count(&self, col: usize) -> usize {
        self.x_cells.iter().filter(|&&(_, c)| c == col).count()
    }

    /// X columns in a row, left to right.
    pub fn row_xs(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.x_cells.range((row, 0)..(row + 1, 0)).map(|&(_, c)| c)
    }

    /// X rows in a column, bottom to top.
    pub fn col_xs(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        self.x_cells.iter().filter(move |&&(_, c)| c == col).map(|&(r, _)| r)
    }

    pub fn marker(&self, id: MarkerId) -> Marker {
        match id {
            MarkerId::O(i) => {
                let (row, col) = self.o_cell(i);
                Marker {
                    kind: MarkerKind::O,
                    row,
                    col,
                    starred: self.is_starred(row),
                    index: i,
                }
            }
            MarkerId::X(j) => {
                let (row, col) = self.x_cell(j);
                Marker {
                    kind: MarkerKind::X,
                    row,
                    col,
                    starred: false,
                    index: j,
                }
            }
        }
    }

    /// All markers: O's in index order, then X's in index order.
    pub fn markers(&self) -> Vec<Marker> {
        (0..self.n)
            .map(MarkerId::O)
            .chain((0..self.x_count()).map(MarkerId::X))
            .map(|id| self.marker(id))
            .collect()
    }

    /// Every row and every column carries at least one X.
    pub fn is_saturated(&self) -> bool {
        let mut rows = vec![false; self.n];
        let mut cols = vec![false; self.n];
        for &(r, c) in &self.x_cells {
            rows[r] = true;
            cols[c] = true;
        }
        rows.into_iter().chain(cols).all(|b| b)
    }

    /// Classes of markers under "shares a row or a column".
    pub fn connected_components(&self) -> Vec<Vec<Marker>> {
        let markers = self.markers();
        let mut uf = UnionFind::new(markers.len());
        let mut row_rep: Vec<Option<usize>> = vec![None; self.n];
        let mut col_rep: Vec<Option<usize>> = vec![None; self.n];
        for (k, m) in markers.iter().enumerate() {
            for rep in [&mut row_rep[m.row], &mut col_rep[m.col]] {
                match *rep {
                    Some(other) => uf.union(other, k),
                    None => *rep = Some(k),
                }
            }
        }
        let mut groups: Vec<Vec<Marker>> = Vec::new();
        let mut slot = vec![usize::MAX; markers.len()];
        for (k, m) in markers.iter().enumerate() {
            let root = uf.find(k);
            if slot[root] == usize::MAX {
                slot[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[root]].push(*m);
        }
        groups
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();

        let mut rows_in_col: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (r, &c) in self.o_col.iter().enumerate() {
            rows_in_col[c].push(r);
        }
        for (c, rows) in rows_in_col.iter().enumerate() {
            if rows.len() != 1 {
                violations.push(Violation {
                    rule: "one-o-per-column",
                    message: format!("column {c} holds {} O's", rows.len()),
                    cells: rows.iter().map(|&r| (r, c)).collect(),
                });
            }
        }

        for (r, &c) in self.o_col.iter().enumerate() {
            if self.x_cells.contains(&(r, c)) {
                violations.push(Violation {
                    rule: "x-o-overlap",
                    message: format!("cell ({r},{c}) holds both an X and an O"),
                    cells: vec![(r, c)],
                });
            }
        }

        for (r, &c) in self.o_col.iter().enumerate() {
            if self.is_starred(r) {
                continue;
            }
            let rx = self.row_x_count(r);
            let cx = self.col_x_count(c);
            if rx != 1 || cx != 1 {
                violations.push(Violation {
                    rule: "nonstandard-o-unstarred",
                    message: format!(
                        "O at ({r},{c}) has {rx} X's in its row and {cx} in its column but is not starred"
                    ),
                    cells: vec![(r, c)],
                });
            }
        }

        for comp in self.connected_components() {
            let has_star = comp.iter().any(|m| m.kind == MarkerKind::O && m.starred);
            if !has_star {
                violations.push(Violation {
                    rule: "component-without-star",
                    message: format!("connected component of {} markers has no starred O", comp.len()),
                    cells: comp.iter().map(|m| (m.row, m.col)).collect(),
                });
            }
        }

        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Fails with [`Error::InvalidGrid`] carrying the first violation.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidGrid(format!("{}: {}", v.rule, v.message))),
        }
    }

    pub fn ensure_valid_saturated(&self) -> Result<()> {
        self.ensure_valid()?;
        if self.is_saturated() {
            Ok(())
        } else {
            Err(Error::NotSaturated)
        }
    }

    /// Mirror across the main diagonal: cell `(r, c)` goes to `(c, r)`.
    pub fn transpose(&self) -> GridDiagram {
        let n = self.n;
        let mut o_col = vec![0; n];
        for (r, &c) in self.o_col.iter().enumerate() {
            o_col[c] = r;
        }
        let x = self.x_cells.iter().map(|&(r, c)| (c, r));
        let starred = self.starred.iter().map(|&r| self.o_col[r]);
        GridDiagram::from_parts(n, o_col, x, starred).expect("transpose keeps ranges")
    }

    /// Text form, top row first, each line terminated by `'\n'`.
    pub fn render(&self) -> String {
        let n = self.n;
        let mut out = format!("{n}\n");
        for r in (0..n).rev() {
            for c in 0..n {
                let ch = if self.o_col[r] == c {
                    if self.is_starred(r) {
                        '*'
                    } else {
                        'O'
                    }
                } else if self.x_cells.contains(&(r, c)) {
                    'X'
                } else {
                    '.'
                };
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }

    /// Random valid saturated grid of size `n >= 2`.
    ///
    /// Each empty cell gets an X with probability `density`; rows and
    /// columns left without an X get one at a random free cell. Every
    /// nonstandard O is starred, plus the lowest O of any component that
    /// still lacks a star.
    pub fn random_saturated<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        assert!(n >= 2, "a saturated grid needs n >= 2");
        let mut o_col: Vec<usize> = (0..n).collect();
        o_col.shuffle(rng);
        let mut x = BTreeSet::new();
        for (r, &oc) in o_col.iter().enumerate() {
            for c in 0..n {
                if oc != c && rng.gen_bool(density) {
                    x.insert((r, c));
                }
            }
        }
        for (r, &oc) in o_col.iter().enumerate() {
            if !x.iter().any(|&(xr, _)| xr == r) {
                let free: Vec<usize> = (0..n).filter(|&c| c != oc).collect();
                x.insert((r, *free.choose(rng).unwrap()));
            }
        }
        for c in 0..n {
            if !x.iter().any(|&(_, xc)| xc == c) {
                let free: Vec<usize> = (0..n).filter(|&r| o_col[r] != c).collect();
                x.insert((*free.choose(rng).unwrap(), c));
            }
        }
        let unstarred = GridDiagram::from_parts(n, o_col.clone(), x.clone(), []).expect("ranges are in bounds");
        let mut starred: BTreeSet<usize> = (0..n)
            .filter(|&r| unstarred.row_x_count(r) != 1 || unstarred.col_x_count(o_col[r]) != 1)
            .collect();
        for comp in unstarred.connected_components() {
            let o_rows: Vec<usize> = comp.iter().filter(|m| m.kind == MarkerKind::O).map(|m| m.row).collect();
            if !o_rows.iter().any(|r| starred.contains(r)) {
                starred.insert(*o_rows.iter().min().expect("component holds an O"));
            }
        }
        GridDiagram::from_parts(n, o_col, x, starred).expect("ranges are in bounds")
    }
}

/// One failed diagram rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Parses the grid text format.
///
/// Line 1 is the decimal size `n`; the next `n` lines hold exactly `n`
/// characters from `.`, `X`, `O`, `*`, top row first. A final newline is
/// optional. A row must hold exactly one O.
pub fn parse_grid(text: &str) -> Result<GridDiagram> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let err = |line: usize, reason: String| Error::Parse { line, reason };

    let size_line = lines.next().unwrap_or("");
    if size_line.is_empty() || !size_line.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(1, format!("expected a decimal grid size, got {size_line:?}")));
    }
    let n: usize = size_line
        .parse()
        .map_err(|_| err(1, format!("grid size {size_line:?} does not fit")))?;
    if n == 0 {
        return Err(err(1, "grid size must be at least 1".into()));
    }

    let rows: Vec<&str> = lines.collect();
    if rows.len() != n {
        return Err(err(
            rows.len().min(n) + 2,
            format!("expected {n} grid lines, found {}", rows.len()),
        ));
    }

    let mut o_col = vec![usize::MAX; n];
    let mut x_cells = Vec::new();
    let mut starred = Vec::new();
    for (k, line) in rows.iter().enumerate() {
        let line_no = k + 2;
        let r = n - 1 - k;
        if line.chars().count() != n {
            return Err(err(
                line_no,
                format!("expected {n} characters, found {}", line.chars().count()),
            ));
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '.' => {}
                'X' => x_cells.push((r, c)),
                'O' | '*' => {
                    if o_col[r] != usize::MAX {
                        return Err(err(line_no, format!("row {r} holds more than one O")));
                    }
                    o_col[r] = c;
                    if ch == '*' {
                        starred.push(r);
                    }
                }
                other => {
                    return Err(err(line_no, format!("illegal character {other:?}")));
                }
            }
        }
        if o_col[r] == usize::MAX {
            return Err(err(line_no, format!("row {r} holds no O")));
        }
    }
    GridDiagram::from_parts(n, o_col, x_cells, starred)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
