//! Randomized invariance harness: apply random legal move sequences and
//! check that hat homology and its Euler characteristic only shift.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alexpoly::{euler_characteristic, hat_dims};
use crate::error::{Error, Result};
use crate::graph::SpatialGraphModel;
use crate::grid::GridDiagram;
use crate::homology::{compute_tilde, compute_tilde_with, BigradedDims, TildeComputation};
use crate::moves::{self, destabilization_sites, Axis, MoveOutcome, MoveSpec, Placement};
use crate::{GroupRingPoly, H1Element, H1Group};

/// Hat homology of one grid with the data needed to compare it elsewhere.
#[derive(Debug, Clone)]
pub struct HatResult {
    pub graph: SpatialGraphModel,
    pub group: H1Group,
    pub tilde: BigradedDims,
    pub hat: BigradedDims,
    pub chi: GroupRingPoly,
}

impl HatResult {
    pub fn from_tilde(t: TildeComputation) -> Result<Self> {
        let hat = hat_dims(&t.dims, &t.graph, &t.group)?;
        let chi = euler_characteristic(&hat);
        Ok(HatResult {
            graph: t.graph,
            group: t.group,
            tilde: t.dims,
            hat,
            chi,
        })
    }
}

pub fn hat_of(g: &GridDiagram) -> Result<HatResult> {
    HatResult::from_tilde(compute_tilde(g)?)
}

/// Deliberately wrong hat computation that discards the differential;
/// the harness must reject it.
pub fn hat_of_without_boundary(g: &GridDiagram) -> Result<HatResult> {
    HatResult::from_tilde(compute_tilde_with(g, |b| b.targets.iter_mut().for_each(Vec::clear))?)
}

#[derive(Debug, Clone)]
pub struct InvarianceConfig {
    pub trials: usize,
    pub seed: u64,
    /// Upper bound on sequence length; each trial draws a length in
    /// `1..=max_moves`.
    pub max_moves: usize,
    /// Stabilizations are skipped once the grid reaches this size.
    pub max_grid: usize,
}

impl Default for InvarianceConfig {
    fn default() -> Self {
        InvarianceConfig {
            trials: 50,
            seed: 0,
            max_moves: 8,
            max_grid: 8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrialReport {
    pub trial: usize,
    pub moves: Vec<MoveSpec>,
    pub final_size: usize,
    /// Translation taking the baseline hat onto this trial's, in the final
    /// grid's coordinates.
    pub shift: Option<H1Element>,
    pub hat_equal: bool,
    pub chi_equal: bool,
    pub error: Option<String>,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.hat_equal && self.chi_equal
    }
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub baseline_total: usize,
    pub trials: Vec<TrialReport>,
}

impl InvarianceReport {
    pub fn passed(&self) -> usize {
        self.trials.iter().filter(|t| t.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.trials.len()
    }
}

/// A random legal move: cyclic 40%, commutation 30%, stabilization 20%,
/// destabilization 10%, falling back to a cyclic shift when the drawn
/// kind has no legal instance.
pub fn random_move<R: Rng + ?Sized>(g: &GridDiagram, rng: &mut R, max_grid: usize) -> MoveSpec {
    let n = g.n();
    let axis = |rng: &mut R| if rng.gen_bool(0.5) { Axis::Rows } else { Axis::Cols };
    let roll = rng.gen_range(0..100);
    if (40..70).contains(&roll) {
        for _ in 0..4 * n {
            let a = axis(rng);
            let index = rng.gen_range(0..n);
            if moves::commutation_valid(g, a, index) {
                return MoveSpec::Commute { axis: a, index };
            }
        }
    } else if (70..90).contains(&roll) && n < max_grid && g.x_count() > 0 {
        let (r, c) = g.x_cell(rng.gen_range(0..g.x_count()));
        let a = axis(rng);
        let placement = if rng.gen_bool(0.5) {
            Placement::After
        } else {
            Placement::Before
        };
        let (line, at) = if a == Axis::Rows { (r, c) } else { (c, r) };
        return MoveSpec::Stabilize {
            axis: a,
            line,
            at,
            placement,
        };
    } else if roll >= 90 {
        let sites = destabilization_sites(g);
        if !sites.is_empty() {
            let (row, col) = sites[rng.gen_range(0..sites.len())];
            return MoveSpec::Destabilize { row, col };
        }
    }
    let k = rng.gen_range(1..n.max(2)) as i64;
    MoveSpec::Cyclic {
        axis: axis(rng),
        shift: k,
    }
}

/// Draws and applies a random sequence of `len` legal moves.
pub fn random_sequence<R: Rng + ?Sized>(
    g: &GridDiagram,
    rng: &mut R,
    len: usize,
    max_grid: usize,
) -> Result<(Vec<MoveSpec>, MoveOutcome)> {
    let mut acc = MoveOutcome::identity(g);
    let mut specs = Vec::with_capacity(len);
    for _ in 0..len {
        let spec = random_move(&acc.grid, rng, max_grid);
        let next = moves::apply(&acc.grid, &spec)?;
        specs.push(spec);
        acc = acc.then(next);
    }
    Ok((specs, acc))
}

/// Matrix of the edge correspondence induced by an X correspondence:
/// `map[e]` is the new edge carrying the old edge `e`.
pub fn edge_map(old: &SpatialGraphModel, new: &SpatialGraphModel, x_map: &[usize]) -> Result<Vec<usize>> {
    let mut map = Vec::with_capacity(old.edge_count());
    let mut used = vec![false; new.edge_count()];
    for e in &old.edges {
        let targets: Vec<usize> = e.xs.iter().map(|&x| new.x_edge[x_map[x]]).collect();
        let t = targets[0];
        if targets.iter().any(|&u| u != t) || used[t] {
            return Err(Error::Move("moved grid traces a different graph".into()));
        }
        used[t] = true;
        map.push(t);
    }
    if used.iter().any(|u| !u) {
        return Err(Error::Move("moved grid traces a different graph".into()));
    }
    Ok(map)
}

/// Pushes a class forward along an edge correspondence.
pub fn push_class(v: &H1Element, map: &[usize], target: &H1Group) -> H1Element {
    let mut out = vec![0i64; target.dim()];
    for (e, x) in v.as_slice().iter().enumerate() {
        out[map[e]] += x;
    }
    target.reduce(&out)
}

/// Compares a baseline with the result on a moved grid.
pub fn compare(base: &HatResult, outcome: &MoveOutcome, moved: &HatResult) -> Result<(Option<H1Element>, bool)> {
    let map = edge_map(&base.graph, &moved.graph, &outcome.x_map)?;
    let pushed = base.hat.map_classes(|a| push_class(a, &map, &moved.group));
    let shift = pushed.find_shift(&moved.hat, &moved.group);
    let chi = base.chi.map_classes(|a| push_class(a, &map, &moved.group));
    let chi_equal = chi.equal_up_to_units(&moved.chi, &moved.group);
    Ok((shift, chi_equal))
}

/// Runs the harness with the standard hat computation.
pub fn run_invariance(g: &GridDiagram, cfg: &InvarianceConfig) -> Result<InvarianceReport> {
    run_invariance_with(g, cfg, &hat_of)
}

/// Runs the harness with a caller-supplied hat computation.
pub fn run_invariance_with(
    g: &GridDiagram,
    cfg: &InvarianceConfig,
    hat_fn: &(dyn Fn(&GridDiagram) -> Result<HatResult> + Sync),
) -> Result<InvarianceReport> {
    g.ensure_valid_saturated()?;
    let base = hat_fn(g)?;
    let cache: Mutex<HashMap<String, Arc<HatResult>>> = Mutex::new(HashMap::new());
    let cached = |grid: &GridDiagram| -> Result<Arc<HatResult>> {
        let key = grid.render();
        if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let r = Arc::new(hat_fn(grid)?);
        cache.lock().expect("cache lock").insert(key, r.clone());
        Ok(r)
    };
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(trial as u64));
            let len = rng.gen_range(1..=cfg.max_moves.max(1));
            let mut report = TrialReport {
                trial,
                moves: Vec::new(),
                final_size: g.n(),
                shift: None,
                hat_equal: false,
                chi_equal: false,
                error: None,
            };
            let result = random_sequence(g, &mut rng, len, cfg.max_grid).and_then(|(specs, outcome)| {
                report.moves = specs;
                report.final_size = outcome.grid.n();
                let moved = cached(&outcome.grid)?;
                compare(&base, &outcome, &moved)
            });
            match result {
                Ok((shift, chi_equal)) => {
                    report.hat_equal = shift.is_some();
                    report.shift = shift;
                    report.chi_equal = chi_equal;
                }
                Err(e) => report.error = Some(e.to_string()),
            }
            report
        })
        .collect();
    Ok(InvarianceReport {
        baseline_total: base.hat.total(),
        trials,
    })
}
