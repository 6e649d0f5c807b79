//! Colength through the Hilbert–Samuel function: `dim_K R/(I + m^M)` for
//! increasing `M` by plain linear algebra, stopping at the first plateau.

use super::LocalIdeal;
use crate::algebra::{Elem, FieldDescriptor, Monomial};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Row-echelon accumulator whose columns are ordered by increasing degree,
/// so the number of pivots among the first `c` columns is the rank of the
/// projection onto those columns.
struct Echelon<'a> {
    field: &'a FieldDescriptor,
    ncols: usize,
    pivots: Vec<Option<Vec<Elem>>>,
}

impl<'a> Echelon<'a> {
    fn new(field: &'a FieldDescriptor, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivots: vec![None; ncols],
        }
    }

    fn insert(&mut self, mut row: Vec<Elem>) {
        let f = self.field;
        for c in 0..self.ncols {
            if f.is_zero(&row[c]) {
                continue;
            }
            match &self.pivots[c] {
                Some(p) => {
                    let factor = row[c].clone();
                    for k in c..self.ncols {
                        if !f.is_zero(&p[k]) {
                            row[k] = f.sub(&row[k], &f.mul(&factor, &p[k]));
                        }
                    }
                }
                None => {
                    let inv = f.inv(&row[c]).expect("nonzero pivot");
                    for v in row.iter_mut().skip(c) {
                        *v = f.mul(v, &inv);
                    }
                    self.pivots[c] = Some(row);
                    return;
                }
            }
        }
    }

    fn pivots_before(&self, c: usize) -> usize {
        self.pivots[..c].iter().filter(|p| p.is_some()).count()
    }
}

/// `dim_K R/(I + m^M)` for `M = 0..=m_max`.
pub fn hilbert_samuel(ideal: &LocalIdeal, m_max: u32) -> Result<Vec<u64>> {
    if let Some(t) = ideal.truncation() {
        if t < m_max {
            return Err(Error::InvalidQuery(format!(
                "generators known modulo m^{t}, cannot read degree {m_max}"
            )));
        }
    }
    let b = ideal.nvars();
    let field = ideal.field();
    let cols = Monomial::below_degree(b, m_max);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // boundary[M] = number of columns of degree < M
    let mut boundary = vec![0usize; m_max as usize + 1];
    for m in &cols {
        for bd in boundary.iter_mut().skip(m.degree() as usize + 1) {
            *bd += 1;
        }
    }

    let mut ech = Echelon::new(field, cols.len());
    for g in ideal.generators() {
        let ord = match g.min_degree() {
            Some(o) => o,
            None => continue,
        };
        if ord >= m_max {
            continue;
        }
        for shift in Monomial::below_degree(b, m_max - ord) {
            let mut row = vec![field.zero(); cols.len()];
            let mut any = false;
            for (mono, c) in g.terms() {
                let prod = mono.mul(&shift);
                if prod.degree() < m_max {
                    row[index[&prod]] = c.clone();
                    any = true;
                }
            }
            if any {
                ech.insert(row);
            }
        }
    }
    Ok((0..=m_max as usize)
        .map(|m| (boundary[m] - ech.pivots_before(boundary[m])) as u64)
        .collect())
}

/// Colength of `ideal` read off the first plateau `dim_M = dim_{M+1}` of
/// the Hilbert–Samuel function with `M + 1 <= m_max`.
///
/// A plateau at `M` means `m^M ⊆ I + m^{M+1}`, hence `m^M ⊆ I` by Nakayama,
/// so the value is exact as long as the generators are correct modulo
/// `m^{m_max}`.
pub fn colength_by_truncation(ideal: &LocalIdeal, m_max: u32) -> Result<u64> {
    let dims = hilbert_samuel(ideal, m_max)?;
    dims.windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
        .ok_or(Error::NoStabilization(m_max as usize))
}
