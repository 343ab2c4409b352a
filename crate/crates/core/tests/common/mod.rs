#![allow(dead_code)]

pub mod oracle;

use std::fs;
use std::path::PathBuf;

use graphfloer::{parse_grid, GridDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Valid saturated corpus grids as `(file name, grid)`, sorted by name.
pub fn corpus() -> Vec<(String, GridDiagram)> {
    let mut out: Vec<(String, GridDiagram)> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .filter_map(|e| {
            let path = e.ok()?.path();
            if path.extension()? != "grid" {
                return None;
            }
            let text = fs::read_to_string(&path).ok()?;
            let name = path.file_name()?.to_string_lossy().into_owned();
            Some((name, parse_grid(&text).expect("corpus grid parses")))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn corpus_grid(name: &str) -> GridDiagram {
    let text = fs::read_to_string(corpus_dir().join(name)).expect("corpus file");
    parse_grid(&text).expect("corpus grid parses")
}

pub fn unknot() -> GridDiagram {
    parse_grid("2\nXO\n*X\n").unwrap()
}

pub fn two_vertex() -> GridDiagram {
    parse_grid("3\nX.O\nX*.\n*XX\n").unwrap()
}

/// Seeded random valid saturated grids of size `n`.
pub fn random_grids(n: usize, count: usize, seed: u64) -> Vec<GridDiagram> {
    (0..count)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1000).wrapping_add(k as u64));
            let density = [0.15, 0.25, 0.35][k % 3];
            GridDiagram::random_saturated(n, density, &mut rng)
        })
        .collect()
}
