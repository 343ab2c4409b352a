//! Hat dimensions by exact division of the tilde generating function, and
//! the graded Euler characteristic in the group ring of `H1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::SpatialGraphModel;
use crate::homology::BigradedDims;
use crate::lattice::Scalar;
use crate::{H1Element, H1Group};

/// Finitely supported polynomial in `t^h z^m` with `h` in `H1` and `m` an
/// integer; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedPoly<C> {
    terms: BTreeMap<(H1Element, i64), C>,
}

impl<C: Scalar> Default for BigradedPoly<C> {
    fn default() -> Self {
        BigradedPoly { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> BigradedPoly<C> {
    pub fn from_dims(dims: &BigradedDims) -> Self {
        let mut p = Self::default();
        for (a, m, d) in dims.iter() {
            p.add_term(
                a.clone(),
                m,
                C::from_usize(d).expect("dimension fits the coefficient type"),
            );
        }
        p
    }

    pub fn add_term(&mut self, h: H1Element, m: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (h, m);
        let v = self.terms.remove(&key).unwrap_or_else(C::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&H1Element, i64, &C)> + '_ {
        self.terms.iter().map(|((h, m), c)| (h, *m, c))
    }

    /// Product with `1 + t^{-w} z^{-1}`.
    pub fn mul_w_factor(&self, group: &H1Group, w: &H1Element) -> Self {
        let mut out = self.clone();
        for ((h, m), c) in &self.terms {
            out.add_term(group.sub(h, w), m - 1, c.clone());
        }
        out
    }

    /// Exact quotient by `1 + t^{-w} z^{-1}`, by long division from the top
    /// Maslov degree down.
    pub fn div_w_factor(&self, group: &H1Group, w: &H1Element) -> Result<Self> {
        let mut rem = self.clone();
        let mut quot = Self::default();
        // an exact quotient bottoms out one degree above the dividend
        let floor = self.terms.keys().map(|(_, m)| *m).min().unwrap_or(0) + 1;
        while let Some(top) = rem.terms.keys().map(|(_, m)| *m).max() {
            if top < floor {
                return Err(Error::Division(format!("nonzero remainder in Maslov degree {top}")));
            }
            let level: Vec<(H1Element, C)> = rem
                .terms
                .iter()
                .filter(|((_, m), _)| *m == top)
                .map(|((h, _), c)| (h.clone(), c.clone()))
                .collect();
            for (h, c) in level {
                rem.add_term(h.clone(), top, -c.clone());
                rem.add_term(group.sub(&h, w), top - 1, -c.clone());
                quot.add_term(h, top, c);
            }
        }
        Ok(quot)
    }

    /// Converts back to dimensions, failing on negative coefficients.
    pub fn to_dims(&self) -> Result<BigradedDims> {
        let mut d = BigradedDims::new();
        for ((h, m), c) in &self.terms {
            if c.is_negative() {
                return Err(Error::Division(format!("negative coefficient {c} at ({h}, {m})")));
            }
            let v = c
                .to_usize()
                .ok_or_else(|| Error::Division(format!("coefficient {c} out of range")))?;
            d.add(h.clone(), *m, v);
        }
        Ok(d)
    }
}

/// Weight and interior-O count of every edge with `n_e > 0`.
fn w_factors(sg: &SpatialGraphModel, group: &H1Group) -> Vec<(H1Element, usize)> {
    (0..sg.edge_count())
        .filter(|&e| sg.edges[e].n_e() > 0)
        .map(|e| (group.unit(e), sg.edges[e].n_e()))
        .collect()
}

/// Hat dimensions: divides the tilde generating function by
/// `prod_e (1 + t^{-w(e)} z^{-1})^{n_e}`.
pub fn hat_dims(tilde: &BigradedDims, sg: &SpatialGraphModel, group: &H1Group) -> Result<BigradedDims> {
    let mut p = BigradedPoly::<i64>::from_dims(tilde);
    for (w, count) in w_factors(sg, group) {
        for _ in 0..count {
            p = p.div_w_factor(group, &w)?;
        }
    }
    p.to_dims()
}

/// Finitely supported element of `Z[H1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingPoly<C> {
    terms: BTreeMap<H1Element, C>,
}

impl<C: Scalar> Default for GroupRingPoly<C> {
    fn default() -> Self {
        GroupRingPoly { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> GroupRingPoly<C> {
    pub fn monomial(h: H1Element, c: C) -> Self {
        let mut p = Self::default();
        p.add_term(h, c);
        p
    }

    pub fn add_term(&mut self, h: H1Element, c: C) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&h).unwrap_or_else(C::zero) + c;
        if !v.is_zero() {
            self.terms.insert(h, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&H1Element, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, h: &H1Element) -> C {
        self.terms.get(h).cloned().unwrap_or_else(C::zero)
    }

    pub fn mul(&self, other: &Self, group: &H1Group) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(group.add(a, b), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingPoly {
            terms: self.terms.iter().map(|(h, c)| (h.clone(), -c.clone())).collect(),
        }
    }

    /// Multiplication by the unit `t^h`.
    pub fn shift(&self, group: &H1Group, h: &H1Element) -> Self {
        let mut out = Self::default();
        for (a, c) in &self.terms {
            out.add_term(group.add(a, h), c.clone());
        }
        out
    }

    /// Applies a homomorphism to the exponents.
    pub fn map_classes(&self, mut f: impl FnMut(&H1Element) -> H1Element) -> Self {
        let mut out = Self::default();
        for (a, c) in &self.terms {
            out.add_term(f(a), c.clone());
        }
        out
    }

    /// Canonical representative of `{±t^h · self}`: among the translates
    /// putting some support element at zero, with the zero coefficient made
    /// positive, the one whose sorted term list is least.
    pub fn normalize(&self, group: &H1Group) -> Self {
        let mut best: Option<Self> = None;
        for s in self.terms.keys() {
            let mut cand = self.shift(group, &group.neg(s));
            if cand.coeff(&group.zero()).is_negative() {
                cand = cand.neg();
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.unwrap_or_default()
    }

    /// True when `other = ±t^h · self` for some `h`.
    pub fn equal_up_to_units(&self, other: &Self, group: &H1Group) -> bool {
        self.len() == other.len() && self.normalize(group) == other.normalize(group)
    }
}

/// `sum (-1)^m dim t^a` over the given dimensions.
pub fn euler_characteristic(dims: &BigradedDims) -> GroupRingPoly<i64> {
    let mut p = GroupRingPoly::default();
    for (a, m, d) in dims.iter() {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(a.clone(), sign * d as i64);
    }
    p
}

/// `prod_e (1 - t^{-w(e)})^{n_e}`, the Euler characteristic of the factors
/// relating tilde to hat.
pub fn w_factor_euler(sg: &SpatialGraphModel, group: &H1Group) -> GroupRingPoly<i64> {
    let mut p = GroupRingPoly::monomial(group.zero(), 1);
    for (w, count) in w_factors(sg, group) {
        let mut f = GroupRingPoly::monomial(group.zero(), 1);
        f.add_term(group.neg(&w), -1);
        for _ in 0..count {
            p = p.mul(&f, group);
        }
    }
    p
}
