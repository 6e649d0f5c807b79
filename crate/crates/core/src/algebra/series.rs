//! Truncated power series in `b` variables and maps between them.
//!
//! A [`TruncatedSeries`] with bound `T` represents an element of
//! `K[[x]] / m^T`. Composition of maps whose components have no constant
//! term commutes with truncation, which is what makes iterating local
//! representations at a fixed point exact modulo `m^T`.

use super::field::{Elem, FieldDescriptor};
use super::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: MultiPoly,
    truncation: u32,
}

impl TruncatedSeries {
    pub fn new(poly: MultiPoly, truncation: u32) -> Self {
        TruncatedSeries {
            poly: poly.truncate(truncation),
            truncation,
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.poly.coefficient(m)
    }

    /// Re-truncate to a smaller bound.
    pub fn truncate(&self, bound: u32) -> Self {
        TruncatedSeries::new(self.poly.clone(), bound.min(self.truncation))
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        TruncatedSeries::new(self.poly.add(&other.poly), t)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        TruncatedSeries::new(self.poly.sub(&other.poly), t)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        TruncatedSeries {
            poly: self.poly.mul_truncated(&other.poly, Some(t)),
            truncation: t,
        }
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn inverse(&self) -> Result<Self> {
        let f = self.poly.field().clone();
        let b = self.poly.nvars();
        let c0 = self.poly.constant_term();
        let c0_inv = f.inv(&c0)?;
        // self = c0 (1 - h), 1/self = c0^{-1} sum h^j
        let normalized = self.poly.scale(&c0_inv);
        let h = MultiPoly::constant(&f, b, f.one()).sub(&normalized);
        let one = MultiPoly::constant(&f, b, f.one());
        let mut inv = one.clone();
        for _ in 0..self.truncation {
            inv = one.add(&h.mul_truncated(&inv, Some(self.truncation)));
        }
        Ok(TruncatedSeries::new(inv.scale(&c0_inv), self.truncation))
    }

    /// Order of vanishing at the origin (`None` for the zero series).
    pub fn valuation(&self) -> Option<u32> {
        self.poly.min_degree()
    }
}

/// A map germ `K[[u_1..u_b]] -> K[[v_1..v_c]]` given by truncated components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMap {
    field: FieldDescriptor,
    nvars: usize,
    truncation: u32,
    components: Vec<MultiPoly>,
}

impl SeriesMap {
    pub fn new(components: Vec<MultiPoly>, truncation: u32) -> Result<Self> {
        let first = components
            .first()
            .ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let field = first.field().clone();
        let nvars = first.nvars();
        for c in &components {
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: c.nvars(),
                });
            }
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(SeriesMap {
            field,
            nvars,
            truncation,
            components: components.into_iter().map(|c| c.truncate(truncation)).collect(),
        })
    }

    pub fn identity(field: &FieldDescriptor, nvars: usize, truncation: u32) -> Self {
        SeriesMap {
            field: field.clone(),
            nvars,
            truncation,
            components: (0..nvars)
                .map(|i| MultiPoly::var(field, nvars, i).truncate(truncation))
                .collect(),
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn to_series(&self) -> Vec<TruncatedSeries> {
        self.components
            .iter()
            .map(|c| TruncatedSeries::new(c.clone(), self.truncation))
            .collect()
    }

    pub fn fixes_origin(&self) -> bool {
        self.components.iter().all(|c| self.field.is_zero(&c.constant_term()))
    }

    /// `self ∘ inner`; `inner` must have zero constant terms.
    pub fn compose(&self, inner: &SeriesMap) -> Result<SeriesMap> {
        if self.nvars != inner.components.len() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: inner.components.len(),
            });
        }
        if !inner.fixes_origin() {
            return Err(Error::NonzeroConstantTerm);
        }
        let t = self.truncation.min(inner.truncation);
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components, Some(t)))
            .collect();
        Ok(SeriesMap {
            field: self.field.clone(),
            nvars: inner.nvars,
            truncation: t,
            components: comps,
        })
    }

    /// `n`-fold self-composition.
    pub fn iterate(&self, n: u64) -> Result<SeriesMap> {
        if n == 0 {
            return Ok(SeriesMap::identity(&self.field, self.nvars, self.truncation));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Jacobian at the origin: `matrix[i][j]` is the coefficient of `u_j` in component `i`.
    pub fn linear_part(&self) -> Vec<Vec<Elem>> {
        self.components
            .iter()
            .map(|c| {
                (0..self.nvars)
                    .map(|j| c.coefficient(&Monomial::var(self.nvars, j)))
                    .collect()
            })
            .collect()
    }

    /// Generators `component_i - u_i` of the fixed-point ideal at the origin.
    pub fn fixed_point_generators(&self) -> Vec<MultiPoly> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| c.sub(&MultiPoly::var(&self.field, self.nvars, i)))
            .collect()
    }

    pub fn truncate(&self, bound: u32) -> SeriesMap {
        let t = bound.min(self.truncation);
        SeriesMap {
            field: self.field.clone(),
            nvars: self.nvars,
            truncation: t,
            components: self.components.iter().map(|c| c.truncate(t)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_unit() {
        let q = FieldDescriptor::rationals();
        // 1/(1 - z) = 1 + z + z^2 + ...
        let s = TruncatedSeries::new(MultiPoly::from_int_terms(&q, 1, &[(&[0], 1), (&[1], -1)]), 5);
        let inv = s.inverse().unwrap();
        for d in 0..5 {
            assert_eq!(inv.coefficient(&Monomial(vec![d])), q.one());
        }
        let prod = s.mul(&inv);
        assert_eq!(prod.poly(), &MultiPoly::constant(&q, 1, q.one()));
    }

    #[test]
    fn compose_requires_origin() {
        let q = FieldDescriptor::rationals();
        let f = SeriesMap::new(vec![MultiPoly::from_int_terms(&q, 1, &[(&[1], 2)])], 4).unwrap();
        let g = SeriesMap::new(vec![MultiPoly::from_int_terms(&q, 1, &[(&[0], 1)])], 4).unwrap();
        assert_eq!(f.compose(&g), Err(Error::NonzeroConstantTerm));
    }
}
