//! Quotients `Z^d / L` of a free abelian group by a sublattice, with
//! canonical coset representatives from the row-style Hermite normal form.
//!
//! Everything is generic over the integer scalar so the same code runs on
//! machine integers and on arbitrary-precision ones.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar usable as a lattice coordinate.
pub trait Scalar:
    Integer + Signed + FromPrimitive + ToPrimitive + Clone + Debug + Display + Hash + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + FromPrimitive + ToPrimitive + Clone + Debug + Display + Hash + Send + Sync + 'static
{
}

/// Canonical representative of a coset of the lattice.
///
/// Only [`LatticeQuotient::reduce`] produces these, so equal cosets compare
/// equal as plain vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset<T>(Vec<T>);

impl<T> Coset<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Scalar> Coset<T> {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }
}

impl<T: Display> Debug for Coset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl<T: Display> Display for Coset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Debug::fmt(self, f)
    }
}

/// `Z^dim` modulo the span of `relations`.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeQuotient<T> {
    dim: usize,
    relations: Vec<Vec<T>>,
    hnf: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Debug for LatticeQuotient<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeQuotient")
            .field("dim", &self.dim)
            .field("hnf", &self.hnf)
            .finish()
    }
}

impl<T: Scalar> LatticeQuotient<T> {
    pub fn new(dim: usize, relations: Vec<Vec<T>>) -> Self {
        assert!(
            relations.iter().all(|r| r.len() == dim),
            "relation length must equal the ambient dimension"
        );
        let (hnf, pivots) = hermite_rows(dim, relations.clone());
        LatticeQuotient {
            dim,
            relations,
            hnf,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn relations(&self) -> &[Vec<T>] {
        &self.relations
    }

    /// Nonzero rows of the Hermite normal form of the relation lattice.
    pub fn hnf(&self) -> &[Vec<T>] {
        &self.hnf
    }

    pub fn lattice_rank(&self) -> usize {
        self.hnf.len()
    }

    /// Rank of the quotient (its torsion-free part).
    pub fn free_rank(&self) -> usize {
        self.dim - self.hnf.len()
    }

    /// Pivot entries greater than one signal torsion or a non-saturated
    /// lattice; incidence lattices never have them.
    pub fn pivot_values(&self) -> impl Iterator<Item = &T> {
        self.hnf.iter().zip(&self.pivots).map(|(row, &p)| &row[p])
    }

    pub fn reduce(&self, v: &[T]) -> Coset<T> {
        assert_eq!(v.len(), self.dim, "vector length must equal the ambient dimension");
        let mut out = v.to_vec();
        for (row, &p) in self.hnf.iter().zip(&self.pivots) {
            let q = out[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (o, r) in out.iter_mut().zip(row) {
                    *o = o.clone() - q.clone() * r.clone();
                }
            }
        }
        Coset(out)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn zero(&self) -> Coset<T> {
        Coset(vec![T::zero(); self.dim])
    }

    pub fn unit(&self, i: usize) -> Coset<T> {
        let mut v = vec![T::zero(); self.dim];
        v[i] = T::one();
        self.reduce(&v)
    }

    pub fn add(&self, a: &Coset<T>, b: &Coset<T>) -> Coset<T> {
        let v: Vec<T> = a.0.iter().zip(&b.0).map(|(x, y)| x.clone() + y.clone()).collect();
        self.reduce(&v)
    }

    pub fn sub(&self, a: &Coset<T>, b: &Coset<T>) -> Coset<T> {
        let v: Vec<T> = a.0.iter().zip(&b.0).map(|(x, y)| x.clone() - y.clone()).collect();
        self.reduce(&v)
    }

    pub fn neg(&self, a: &Coset<T>) -> Coset<T> {
        let v: Vec<T> = a.0.iter().map(|x| -x.clone()).collect();
        self.reduce(&v)
    }

    pub fn scale(&self, k: &T, a: &Coset<T>) -> Coset<T> {
        let v: Vec<T> = a.0.iter().map(|x| k.clone() * x.clone()).collect();
        self.reduce(&v)
    }

    /// Sum of several cosets.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Coset<T>>) -> Coset<T> {
        let mut acc = vec![T::zero(); self.dim];
        for it in items {
            for (a, x) in acc.iter_mut().zip(&it.0) {
                *a = a.clone() + x.clone();
            }
        }
        self.reduce(&acc)
    }
}

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
fn hermite_rows<T: Scalar>(dim: usize, mut rows: Vec<Vec<T>>) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below `top` becomes the pivot
            let best = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = x.clone() - q.clone() * p.clone();
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col].is_zero() {
            continue;
        }
        if rows[top][col].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = rows[top].clone();
        for row in rows.iter_mut().take(top) {
            let q = row[col].div_floor(&pivot_row[col]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - q.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn incidence_lattice_of_two_vertex_graph() {
        // edges: loop at v0, v0->v1, v1->v0
        let rels = vec![vec![0i64, -1, 1], vec![0, 1, -1]];
        let q = LatticeQuotient::new(3, rels);
        assert_eq!(q.lattice_rank(), 1);
        assert_eq!(q.free_rank(), 2);
        assert_eq!(q.unit(1), q.unit(2));
        assert_ne!(q.unit(0), q.unit(1));
        assert!(q.reduce(&[0, 0, 0]).is_zero());
    }

    #[test]
    fn torsion_pivot_is_kept() {
        let q = LatticeQuotient::new(2, vec![vec![2i64, 1]]);
        assert_eq!(q.hnf(), &[vec![2, 1]]);
        assert_eq!(q.reduce(&[2, 1]), q.zero());
        assert_eq!(q.reduce(&[3, 1]), q.reduce(&[1, 0]));
    }

    #[test]
    fn works_over_big_integers() {
        let rels = vec![
            vec![BigInt::from(3), BigInt::from(-6)],
            vec![BigInt::from(6), BigInt::from(9)],
        ];
        let q = LatticeQuotient::new(2, rels.clone());
        for r in &rels {
            assert!(q.contains(r));
        }
        let small = LatticeQuotient::new(2, vec![vec![3i64, -6], vec![6, 9]]);
        assert_eq!(small.hnf(), &[vec![3, 15], vec![0, 21]]);
        assert_eq!(
            q.hnf(),
            &[
                vec![BigInt::from(3), BigInt::from(15)],
                vec![BigInt::from(0), BigInt::from(21)]
            ]
        );
    }

    fn lattice_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..5).prop_flat_map(|d| {
            (
                Just(d),
                prop::collection::vec(prop::collection::vec(-4i64..=4, d), 0..4),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_is_canonical(
            (d, rels) in lattice_strategy(),
            v in prop::collection::vec(-10i64..=10, 4),
            coeffs in prop::collection::vec(-3i64..=3, 4),
        ) {
            let q = LatticeQuotient::new(d, rels.clone());
            let v = &v[..d];
            let r = q.reduce(v);
            prop_assert_eq!(q.reduce(r.as_slice()), r.clone());
            let mut shifted = v.to_vec();
            for (row, k) in rels.iter().zip(&coeffs) {
                for (s, x) in shifted.iter_mut().zip(row) {
                    *s += k * x;
                }
            }
            prop_assert_eq!(q.reduce(&shifted), r);
            for row in &rels {
                prop_assert!(q.contains(row));
            }
        }

        #[test]
        fn i64_and_i128_agree(
            (d, rels) in lattice_strategy(),
            v in prop::collection::vec(-10i64..=10, 4),
        ) {
            let a = LatticeQuotient::new(d, rels.clone());
            let b = LatticeQuotient::new(
                d,
                rels.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect(),
            );
            let ra: Vec<i128> = a.reduce(&v[..d]).into_vec().into_iter().map(|x| x as i128).collect();
            let vb: Vec<i128> = v[..d].iter().map(|&x| x as i128).collect();
            prop_assert_eq!(ra, b.reduce(&vb).into_vec());
        }
    }
}
