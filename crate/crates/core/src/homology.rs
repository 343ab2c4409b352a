//! Homology of the tilde complex, split into blocks by Alexander class and
//! Maslov degree.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::complex::{ComplexContext, TildeBoundary};
use crate::error::{Error, Result};
use crate::gf2;
use crate::grading::Gradings;
use crate::graph::{trace_graph, SpatialGraphModel};
use crate::grid::GridDiagram;
use crate::perm::GeneratorTable;
use crate::{H1Element, H1Group};

/// Dimensions indexed by (Alexander class, Maslov degree); zero entries are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BigradedDims {
    entries: BTreeMap<(H1Element, i64), usize>,
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `dim` at the given bigrading.
    pub fn add(&mut self, alexander: H1Element, maslov: i64, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.entries.entry((alexander, maslov)).or_insert(0) += dim;
    }

    pub fn get(&self, alexander: &H1Element, maslov: i64) -> usize {
        self.entries.get(&(alexander.clone(), maslov)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&H1Element, i64, usize)> + '_ {
        self.entries.iter().map(|((a, m), d)| (a, *m, *d))
    }

    /// Applies `f` to every Alexander class, merging collisions.
    pub fn map_classes(&self, mut f: impl FnMut(&H1Element) -> H1Element) -> Self {
        let mut out = BigradedDims::new();
        for (a, m, d) in self.iter() {
            out.add(f(a), m, d);
        }
        out
    }

    pub fn translated(&self, group: &H1Group, shift: &H1Element) -> Self {
        self.map_classes(|a| group.add(a, shift))
    }

    /// Some `h` with `self` translated by `h` equal to `other`, Maslov
    /// degrees matched exactly.
    pub fn find_shift(&self, other: &BigradedDims, group: &H1Group) -> Option<H1Element> {
        if self.len() != other.len() || self.total() != other.total() {
            return None;
        }
        let Some(((a0, m0), d0)) = self.entries.iter().next() else {
            return Some(group.zero());
        };
        for ((b, m), d) in &other.entries {
            if m != m0 || d != d0 {
                continue;
            }
            let h = group.sub(b, a0);
            if &self.translated(group, &h) == other {
                return Some(h);
            }
        }
        None
    }
}

/// Generators of one Alexander class, sorted into Maslov levels.
pub type BlockMap = BTreeMap<H1Element, BTreeMap<i64, Vec<u32>>>;

/// Bigrading of every generator, with Alexander classes interned.
#[derive(Debug, Clone)]
pub struct GradedGenerators {
    pub classes: Vec<H1Element>,
    pub class_of: Vec<u32>,
    pub maslov: Vec<i64>,
}

pub fn grade_all(gr: &Gradings, table: &GeneratorTable) -> GradedGenerators {
    let graded: Vec<(H1Element, i64)> = (0..table.len())
        .into_par_iter()
        .map(|k| {
            let rho = table.get(k);
            (gr.alexander(rho), gr.maslov(rho))
        })
        .collect();
    let mut ids: HashMap<H1Element, u32> = HashMap::new();
    let mut classes = Vec::new();
    let mut class_of = Vec::with_capacity(graded.len());
    let mut maslov = Vec::with_capacity(graded.len());
    for (a, m) in graded {
        let id = *ids.entry(a.clone()).or_insert_with(|| {
            classes.push(a);
            (classes.len() - 1) as u32
        });
        class_of.push(id);
        maslov.push(m);
    }
    GradedGenerators {
        classes,
        class_of,
        maslov,
    }
}

/// Partitions generators into blocks and checks that every arrow stays in
/// its Alexander class and drops Maslov degree by one.
pub fn block_decompose(graded: &GradedGenerators, boundary: &TildeBoundary) -> Result<BlockMap> {
    for (x, targets) in boundary.targets.iter().enumerate() {
        for &y in targets {
            let y = y as usize;
            if graded.class_of[x] != graded.class_of[y] {
                return Err(Error::BlockCrossing(format!(
                    "arrow {x} -> {y} changes the Alexander class"
                )));
            }
            if graded.maslov[x] != graded.maslov[y] + 1 {
                return Err(Error::BlockCrossing(format!(
                    "arrow {x} -> {y} goes from Maslov {} to {}",
                    graded.maslov[x], graded.maslov[y]
                )));
            }
        }
    }
    let mut blocks = BlockMap::new();
    for (x, (&c, &m)) in graded.class_of.iter().zip(&graded.maslov).enumerate() {
        blocks
            .entry(graded.classes[c as usize].clone())
            .or_default()
            .entry(m)
            .or_default()
            .push(x as u32);
    }
    Ok(blocks)
}

/// Homology dimensions of the blocks, ranks by sparse elimination.
///
/// Fails when consecutive ranks exceed a level's size, which happens only
/// if the boundary does not square to zero.
pub fn block_homology(blocks: &BlockMap, boundary: &TildeBoundary, generator_count: usize) -> Result<BigradedDims> {
    let mut local = vec![0u32; generator_count];
    for levels in blocks.values() {
        for gens in levels.values() {
            for (i, &x) in gens.iter().enumerate() {
                local[x as usize] = i as u32;
            }
        }
    }
    // rank of the map out of each (class, level)
    let jobs: Vec<(&H1Element, i64)> = blocks
        .iter()
        .flat_map(|(a, levels)| levels.keys().map(move |&m| (a, m)))
        .collect();
    let ranks: HashMap<(&H1Element, i64), usize> = jobs
        .par_iter()
        .map(|&(a, m)| {
            let levels = &blocks[a];
            let Some(below) = levels.get(&(m - 1)) else {
                return ((a, m), 0);
            };
            let columns: Vec<Vec<u32>> = levels[&m]
                .iter()
                .map(|&x| {
                    let mut col: Vec<u32> = boundary.targets[x as usize]
                        .iter()
                        .map(|&y| local[y as usize])
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            ((a, m), gf2::rank(below.len(), columns))
        })
        .collect();
    let mut dims = BigradedDims::new();
    for (a, levels) in blocks {
        for (&m, gens) in levels {
            let out = ranks[&(a, m)];
            let inc = ranks.get(&(a, m + 1)).copied().unwrap_or(0);
            let dim = gens
                .len()
                .checked_sub(out + inc)
                .ok_or_else(|| Error::Grading(format!("boundary ranks exceed level size at ({a}, {m})")))?;
            dims.add(a.clone(), m, dim);
        }
    }
    Ok(dims)
}

/// Everything produced on the way to tilde homology.
#[derive(Debug, Clone)]
pub struct TildeComputation {
    pub graph: SpatialGraphModel,
    pub group: H1Group,
    pub generator_count: usize,
    pub arrow_count: usize,
    pub dims: BigradedDims,
}

pub fn compute_tilde(g: &GridDiagram) -> Result<TildeComputation> {
    compute_tilde_with(g, |_| {})
}

/// As [`compute_tilde`], letting `edit` alter the boundary before the
/// homology is taken (used for fault injection).
pub fn compute_tilde_with(g: &GridDiagram, edit: impl FnOnce(&mut TildeBoundary)) -> Result<TildeComputation> {
    let ctx = ComplexContext::new(g)?;
    let graph = trace_graph(g)?;
    let gradings = Gradings::new(g, &graph);
    let graded = grade_all(&gradings, &ctx.table);
    let mut boundary = ctx.tilde_boundary();
    edit(&mut boundary);
    let blocks = block_decompose(&graded, &boundary)?;
    let dims = block_homology(&blocks, &boundary, ctx.generator_count())?;
    Ok(TildeComputation {
        group: gradings.group().clone(),
        graph,
        generator_count: ctx.generator_count(),
        arrow_count: boundary.arrow_count(),
        dims,
    })
}

pub fn tilde_homology(g: &GridDiagram) -> Result<BigradedDims> {
    Ok(compute_tilde(g)?.dims)
}
