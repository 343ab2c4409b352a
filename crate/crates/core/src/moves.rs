//! Graph grid moves: cyclic permutation, generalized commutation, and
//! generalized (de)stabilization, plus a line-oriented script format.
//!
//! Script grammar, one move per line (blank lines and `#` comments are
//! ignored):
//!
//! ```text
//! cyclic rows K          shift every marker up by K rows (K may be negative)
//! cyclic cols K          shift every marker right by K columns
//! commute rows I         exchange rows I and I+1 (mod n)
//! commute cols I         exchange columns I and I+1 (mod n)
//! stab row R col C above split row R at the X in column C; the X moves to a new row above
//! stab row R col C below as above, with the X's new row below
//! stab col C row R right split column C at the X in row R; the X moves to a new column on the right
//! stab col C row R left  as above, with the X's new column on the left
//! destab R C             remove the unstarred O at (R, C) and its corner X pair
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Rows,
    Cols,
}

/// Which side of the remainder line receives the split-off X.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// Above for rows, right for columns.
    After,
    /// Below for rows, left for columns.
    Before,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSpec {
    Cyclic {
        axis: Axis,
        shift: i64,
    },
    Commute {
        axis: Axis,
        index: usize,
    },
    /// Split line `line` of the given axis at the X whose other coordinate
    /// is `at`: for rows the X is in cell `(line, at)`, for columns in
    /// `(at, line)`.
    Stabilize {
        axis: Axis,
        line: usize,
        at: usize,
        placement: Placement,
    },
    /// Remove the O in cell `(row, col)`.
    Destabilize {
        row: usize,
        col: usize,
    },
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = |a: Axis| if a == Axis::Rows { "rows" } else { "cols" };
        match *self {
            MoveSpec::Cyclic { axis: a, shift } => write!(f, "cyclic {} {shift:+}", axis(a)),
            MoveSpec::Commute { axis: a, index } => write!(f, "commute {} {index}", axis(a)),
            MoveSpec::Stabilize {
                axis: Axis::Rows,
                line,
                at,
                placement,
            } => {
                let p = if placement == Placement::After {
                    "above"
                } else {
                    "below"
                };
                write!(f, "stab row {line} col {at} {p}")
            }
            MoveSpec::Stabilize {
                axis: Axis::Cols,
                line,
                at,
                placement,
            } => {
                let p = if placement == Placement::After { "right" } else { "left" };
                write!(f, "stab col {line} row {at} {p}")
            }
            MoveSpec::Destabilize { row, col } => write!(f, "destab {row} {col}"),
        }
    }
}

/// Result of a move: the new grid and where each old X ended up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub grid: GridDiagram,
    /// `x_map[j]` is the index in the new grid of old X number `j`.
    pub x_map: Vec<usize>,
}

impl MoveOutcome {
    pub fn identity(g: &GridDiagram) -> Self {
        MoveOutcome {
            grid: g.clone(),
            x_map: (0..g.x_count()).collect(),
        }
    }

    /// This outcome followed by `next` (which must start from `self.grid`).
    pub fn then(&self, next: MoveOutcome) -> MoveOutcome {
        MoveOutcome {
            x_map: self.x_map.iter().map(|&j| next.x_map[j]).collect(),
            grid: next.grid,
        }
    }
}

/// Rebuilds a grid by sending every old cell through `map`.
fn remap(g: &GridDiagram, n: usize, map: impl Fn(Cell) -> Cell) -> MoveOutcome {
    let mut o_col = vec![0; n];
    let mut starred = BTreeSet::new();
    for r in 0..g.n() {
        let (nr, nc) = map((r, g.o_col()[r]));
        o_col[nr] = nc;
        if g.is_starred(r) {
            starred.insert(nr);
        }
    }
    let cells: Vec<Cell> = g.x_cells().iter().map(|&c| map(c)).collect();
    let grid = GridDiagram::from_parts(n, o_col, cells.iter().copied(), starred).expect("remapped cells stay in range");
    let x_map = cells
        .iter()
        .map(|&c| grid.x_index(c).expect("remapped X present"))
        .collect();
    MoveOutcome { grid, x_map }
}

pub fn cyclic(g: &GridDiagram, axis: Axis, shift: i64) -> MoveOutcome {
    let n = g.n();
    let k = shift.rem_euclid(n as i64) as usize;
    match axis {
        Axis::Rows => remap(g, n, |(r, c)| ((r + k) % n, c)),
        Axis::Cols => remap(g, n, |(r, c)| (r, (c + k) % n)),
    }
}

/// Marker positions along line `i` of the given axis: rows of the markers
/// in column `i`, or columns of the markers in row `i`.
fn line_positions(g: &GridDiagram, axis: Axis, i: usize) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    match axis {
        Axis::Cols => {
            s.extend(g.col_xs(i));
            s.extend((0..g.n()).filter(|&r| g.o_col()[r] == i));
        }
        Axis::Rows => {
            s.extend(g.row_xs(i));
            s.insert(g.o_col()[i]);
        }
    }
    s
}

/// True when the cyclic closed arc from `p` up to `q` contains `x`; all
/// three are positions on a circle of length `len`.
fn in_arc(p: usize, q: usize, x: usize, len: usize) -> bool {
    (x + len - p) % len <= (q + len - p) % len
}

/// Whether lines `index` and `index + 1` may be exchanged.
///
/// Searches for two cut points on the circle (gridlines or marker
/// heights, in doubled coordinates) splitting it into closed arcs, one
/// holding every marker of the first line and the other every marker of
/// the second. A height used by both lines must be a cut point.
pub fn commutation_valid(g: &GridDiagram, axis: Axis, index: usize) -> bool {
    let n = g.n();
    if n < 2 || index >= n {
        return false;
    }
    let a: Vec<usize> = line_positions(g, axis, index).iter().map(|&h| 2 * h + 1).collect();
    let b: Vec<usize> = line_positions(g, axis, (index + 1) % n)
        .iter()
        .map(|&h| 2 * h + 1)
        .collect();
    let len = 2 * n;
    for p in 0..len {
        for q in 0..len {
            if p == q {
                continue;
            }
            if a.iter().all(|&x| in_arc(p, q, x, len)) && b.iter().all(|&x| in_arc(q, p, x, len)) {
                return true;
            }
        }
    }
    false
}

pub fn commute(g: &GridDiagram, axis: Axis, index: usize) -> Result<MoveOutcome> {
    if !commutation_valid(g, axis, index) {
        return Err(Error::Move(format!(
            "{} {index} and {} cannot be exchanged",
            if axis == Axis::Rows { "rows" } else { "columns" },
            (index + 1) % g.n().max(1)
        )));
    }
    let n = g.n();
    let j = (index + 1) % n;
    let swap = |i: usize| {
        if i == index {
            j
        } else if i == j {
            index
        } else {
            i
        }
    };
    Ok(match axis {
        Axis::Cols => remap(g, n, |(r, c)| (r, swap(c))),
        Axis::Rows => remap(g, n, |(r, c)| (swap(r), c)),
    })
}

fn stabilize_row(g: &GridDiagram, r: usize, c: usize, placement: Placement) -> Result<MoveOutcome> {
    let n = g.n();
    if r >= n || c >= n || !g.has_x((r, c)) {
        return Err(Error::Move(format!("no X at ({r},{c}) to stabilize")));
    }
    let chosen_x = g.x_index((r, c)).expect("checked");
    // the X's new row and the remainder row, both in the enlarged grid
    let (x_row, rest_row) = match placement {
        Placement::After => (r + 1, r),
        Placement::Before => (r, r + 1),
    };
    let shift_row = |row: usize| if row > r { row + 1 } else { row };
    let shift_col = |col: usize| if col > c { col + 1 } else { col };
    let new_col = c + 1;

    let mut o_col = vec![0; n + 1];
    let mut starred = BTreeSet::new();
    for row in 0..n {
        let nr = if row == r { rest_row } else { shift_row(row) };
        o_col[nr] = shift_col(g.o_col()[row]);
        if g.is_starred(row) {
            starred.insert(nr);
        }
    }
    o_col[x_row] = new_col;
    let mut cells = Vec::with_capacity(g.x_count() + 1);
    for (j, &(row, col)) in g.x_cells().iter().enumerate() {
        let nr = if j == chosen_x {
            x_row
        } else if row == r {
            rest_row
        } else {
            shift_row(row)
        };
        cells.push((nr, shift_col(col)));
    }
    let mut all = cells.clone();
    all.push((rest_row, new_col));
    let grid = GridDiagram::from_parts(n + 1, o_col, all, starred)?;
    let x_map = cells
        .iter()
        .map(|&cell| grid.x_index(cell).expect("moved X present"))
        .collect();
    Ok(MoveOutcome { grid, x_map })
}

pub fn stabilize(g: &GridDiagram, axis: Axis, line: usize, at: usize, placement: Placement) -> Result<MoveOutcome> {
    match axis {
        Axis::Rows => stabilize_row(g, line, at, placement),
        Axis::Cols => {
            let t = g.transpose();
            let out = stabilize_row(&t, line, at, placement)?;
            let grid = out.grid.transpose();
            // X numbering follows (row, col) order, which transposition permutes
            let x_map = (0..g.x_count())
                .map(|j| {
                    let (r, c) = g.x_cell(j);
                    let tj = t.x_index((c, r)).expect("transposed X present");
                    let (tr, tc) = out.grid.x_cell(out.x_map[tj]);
                    grid.x_index((tc, tr)).expect("moved X present")
                })
                .collect();
            Ok(MoveOutcome { grid, x_map })
        }
    }
}

/// The two X's of a destabilization site at the O in `(a, b)`: the lone X
/// of the O's row and the lone X of its column, in adjacent lines, with
/// the fourth corner empty.
fn destab_corner(g: &GridDiagram, a: usize, b: usize) -> Option<(Cell, Cell)> {
    let n = g.n();
    if n < 3 || a >= n || g.o_col()[a] != b || g.is_starred(a) {
        return None;
    }
    let mut row = g.row_xs(a);
    let (Some(bx), None) = (row.next(), row.next()) else {
        return None;
    };
    let mut col = g.col_xs(b);
    let (Some(ax), None) = (col.next(), col.next()) else {
        return None;
    };
    if bx.abs_diff(b) != 1 || ax.abs_diff(a) != 1 {
        return None;
    }
    let corner = (ax, bx);
    if g.has_x(corner) || g.has_o(corner) {
        return None;
    }
    Some(((a, bx), (ax, b)))
}

pub fn destabilization_sites(g: &GridDiagram) -> Vec<Cell> {
    (0..g.n())
        .map(|r| (r, g.o_col()[r]))
        .filter(|&(r, c)| destab_corner(g, r, c).is_some())
        .collect()
}

pub fn destabilize(g: &GridDiagram, a: usize, b: usize) -> Result<MoveOutcome> {
    let Some(((_, bx), (ax, _))) = destab_corner(g, a, b) else {
        return Err(Error::Move(format!("no destabilization pattern at ({a},{b})")));
    };
    let n = g.n();
    let shrink_row = |r: usize| if r > a { r - 1 } else { r };
    let shrink_col = |c: usize| if c > b { c - 1 } else { c };
    let mut o_col = vec![0; n - 1];
    let mut starred = BTreeSet::new();
    for r in (0..n).filter(|&r| r != a) {
        o_col[shrink_row(r)] = shrink_col(g.o_col()[r]);
        if g.is_starred(r) {
            starred.insert(shrink_row(r));
        }
    }
    let merged = (shrink_row(ax), shrink_col(bx));
    let cells: Vec<Cell> = g
        .x_cells()
        .iter()
        .map(|&(r, c)| {
            if r == a || c == b {
                merged
            } else {
                (shrink_row(r), shrink_col(c))
            }
        })
        .collect();
    let grid = GridDiagram::from_parts(n - 1, o_col, cells.iter().copied(), starred)?;
    grid.ensure_valid()?;
    let x_map = cells
        .iter()
        .map(|&cell| grid.x_index(cell).expect("moved X present"))
        .collect();
    Ok(MoveOutcome { grid, x_map })
}

pub fn apply(g: &GridDiagram, spec: &MoveSpec) -> Result<MoveOutcome> {
    match *spec {
        MoveSpec::Cyclic { axis, shift } => Ok(cyclic(g, axis, shift)),
        MoveSpec::Commute { axis, index } => commute(g, axis, index),
        MoveSpec::Stabilize {
            axis,
            line,
            at,
            placement,
        } => stabilize(g, axis, line, at, placement),
        MoveSpec::Destabilize { row, col } => destabilize(g, row, col),
    }
}

/// Applies moves in order, composing the X correspondences.
pub fn apply_all<'a>(g: &GridDiagram, moves: impl IntoIterator<Item = &'a MoveSpec>) -> Result<MoveOutcome> {
    let mut acc = MoveOutcome::identity(g);
    for m in moves {
        let next = apply(&acc.grid, m)?;
        acc = acc.then(next);
    }
    Ok(acc)
}

/// A parsed script line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub line: usize,
    pub spec: MoveSpec,
}

fn script_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Script {
        line,
        reason: reason.into(),
    }
}

fn parse_axis(line: usize, word: Option<&str>) -> Result<Axis> {
    match word {
        Some("rows") => Ok(Axis::Rows),
        Some("cols") => Ok(Axis::Cols),
        other => Err(script_err(line, format!("expected rows or cols, got {other:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, word: Option<&str>, what: &str) -> Result<T> {
    let w = word.ok_or_else(|| script_err(line, format!("missing {what}")))?;
    w.trim_start_matches('+')
        .parse()
        .map_err(|_| script_err(line, format!("bad {what} {w:?}")))
}

fn expect_word(line: usize, word: Option<&str>, want: &str) -> Result<()> {
    match word {
        Some(w) if w == want => Ok(()),
        other => Err(script_err(line, format!("expected {want:?}, got {other:?}"))),
    }
}

pub fn parse_move(line: usize, text: &str) -> Result<MoveSpec> {
    let mut w = text.split_whitespace();
    let spec = match w.next() {
        Some("cyclic") => {
            let axis = parse_axis(line, w.next())?;
            MoveSpec::Cyclic {
                axis,
                shift: parse_num(line, w.next(), "shift")?,
            }
        }
        Some("commute") => {
            let axis = parse_axis(line, w.next())?;
            MoveSpec::Commute {
                axis,
                index: parse_num(line, w.next(), "index")?,
            }
        }
        Some("stab") => {
            let (axis, other) = match w.next() {
                Some("row") => (Axis::Rows, "col"),
                Some("col") => (Axis::Cols, "row"),
                x => return Err(script_err(line, format!("expected row or col, got {x:?}"))),
            };
            let line_no = parse_num(line, w.next(), "line index")?;
            expect_word(line, w.next(), other)?;
            let at = parse_num(line, w.next(), "position")?;
            let placement = match (axis, w.next()) {
                (_, None) | (Axis::Rows, Some("above")) | (Axis::Cols, Some("right")) => Placement::After,
                (Axis::Rows, Some("below")) | (Axis::Cols, Some("left")) => Placement::Before,
                (_, Some(p)) => return Err(script_err(line, format!("bad placement {p:?}"))),
            };
            MoveSpec::Stabilize {
                axis,
                line: line_no,
                at,
                placement,
            }
        }
        Some("destab") => MoveSpec::Destabilize {
            row: parse_num(line, w.next(), "row")?,
            col: parse_num(line, w.next(), "column")?,
        },
        Some(other) => return Err(script_err(line, format!("unknown move {other:?}"))),
        None => return Err(script_err(line, "empty move")),
    };
    if let Some(extra) = w.next() {
        return Err(script_err(line, format!("unexpected {extra:?}")));
    }
    Ok(spec)
}

/// Parses a script; line numbers are 1-based.
pub fn parse_script(text: &str) -> Result<Vec<ScriptLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(ScriptLine {
            line: i + 1,
            spec: parse_move(i + 1, body)?,
        });
    }
    Ok(out)
}

/// Runs a parsed script, reporting the first failing line.
pub fn run_script(g: &GridDiagram, script: &[ScriptLine]) -> Result<MoveOutcome> {
    let mut acc = MoveOutcome::identity(g);
    for s in script {
        let next = apply(&acc.grid, &s.spec).map_err(|e| script_err(s.line, e.to_string()))?;
        acc = acc.then(next);
    }
    Ok(acc)
}
