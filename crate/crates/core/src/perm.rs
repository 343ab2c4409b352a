//! Generators as permutations, enumerated in lexicographic order and ranked
//! by Lehmer code.

use std::fmt;

/// A grid state: `rho[c]` is the row of the point on vertical circle `c`.
/// Points sit at lattice coordinates `(c, rho[c])`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    rho: Vec<u8>,
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator{:?}", self.rho)
    }
}

impl Generator {
    /// Panics unless `rho` is a permutation of `0..rho.len()`.
    pub fn new(rho: Vec<usize>) -> Self {
        let n = rho.len();
        let mut seen = vec![false; n];
        for &r in &rho {
            assert!(r < n && !seen[r], "not a permutation: {rho:?}");
            seen[r] = true;
        }
        Generator {
            rho: rho.into_iter().map(|r| r as u8).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Generator {
            rho: (0..n as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    pub fn row(&self, col: usize) -> usize {
        self.rho[col] as usize
    }

    pub fn rho(&self) -> &[u8] {
        &self.rho
    }

    /// Lattice points `(col, row)`.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rho.iter().enumerate().map(|(c, &r)| (c, r as usize))
    }

    pub fn rank(&self) -> usize {
        lehmer_rank(&self.rho)
    }

    pub fn unrank(n: usize, rank: usize) -> Self {
        let mut rho = vec![0u8; n];
        lehmer_unrank(n, rank, &mut rho);
        Generator { rho }
    }

    /// Swaps the rows at two columns.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut rho = self.rho.clone();
        rho.swap(a, b);
        Generator { rho }
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn lehmer_rank(rho: &[u8]) -> usize {
    let n = rho.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = rho[i + 1..].iter().filter(|&&r| r < rho[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub fn lehmer_unrank(n: usize, mut rank: usize, out: &mut [u8]) {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    for i in 0..n {
        out[i] = pool.remove(digits[i]);
    }
}

/// All `n!` permutations packed row-major, in lexicographic order, so the
/// permutation at index `k` has Lehmer rank `k`.
#[derive(Clone)]
pub struct GeneratorTable {
    n: usize,
    data: Vec<u8>,
}

impl GeneratorTable {
    pub fn new(n: usize) -> Self {
        let count = factorial(n);
        let mut data = Vec::with_capacity(count * n);
        let mut cur: Vec<u8> = (0..n as u8).collect();
        for _ in 0..count {
            data.extend_from_slice(&cur);
            next_permutation(&mut cur);
        }
        GeneratorTable { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.n).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, k: usize) -> &[u8] {
        &self.data[k * self.n..(k + 1) * self.n]
    }

    pub fn generator(&self, k: usize) -> Generator {
        Generator {
            rho: self.get(k).to_vec(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.n.max(1))
    }
}

/// Iterator over all generators of an `n`-grid in lexicographic order.
pub fn generators(n: usize) -> impl Iterator<Item = Generator> {
    let mut cur: Option<Vec<u8>> = Some((0..n as u8).collect());
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            cur = Some(next);
        }
        Some(Generator { rho: out })
    })
}

/// Advances to the next permutation in lexicographic order; returns false
/// (leaving the slice sorted ascending) after the last one.
fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
