//! Standard bases for ideals of the local ring at the origin, using Mora's
//! ecart-bounded normal form.

use super::{LocalIdeal, Staircase};
use crate::algebra::{Elem, LocalOrder, Monomial, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Entry {
    poly: MultiPoly,
    lm: Monomial,
    lc: Elem,
    ecart: u32,
}

impl Entry {
    fn new(poly: MultiPoly, order: &LocalOrder) -> Option<Entry> {
        let (lm, lc) = poly.leading(order).map(|(m, c)| (m.clone(), c.clone()))?;
        let ecart = poly.total_degree().unwrap_or(0) - lm.degree();
        Some(Entry { poly, lm, lc, ecart })
    }
}

struct Engine<'a> {
    order: &'a LocalOrder,
    bound: Option<u32>,
}

impl Engine<'_> {
    fn trunc(&self, p: MultiPoly) -> MultiPoly {
        match self.bound {
            Some(b) => p.truncate(b),
            None => p,
        }
    }

    /// `h - (lc_h / lc_g) * (lm_h / lm_g) * g`, cancelling the leading term of `h`.
    fn reduce(&self, h: &Entry, g: &Entry) -> MultiPoly {
        let f = h.poly.field();
        let c = f.div(&h.lc, &g.lc).expect("leading coefficients are nonzero");
        let q = g.lm.quotient(&h.lm);
        self.trunc(h.poly.sub(&g.poly.mul_term(&q, &c)))
    }

    fn spoly(&self, a: &Entry, b: &Entry) -> MultiPoly {
        let l = a.lm.lcm(&b.lm);
        let left = a.poly.mul_term(&a.lm.quotient(&l), &b.lc);
        let right = b.poly.mul_term(&b.lm.quotient(&l), &a.lc);
        self.trunc(left.sub(&right))
    }

    /// Among reducers whose leading monomial divides `lm`, pick the one with
    /// smallest ecart, breaking ties by the order-largest leading monomial.
    fn pick<'e>(&self, lm: &Monomial, basis: &'e [Entry], extra: &'e [Entry]) -> Option<&'e Entry> {
        basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.lm.divides(lm))
            .min_by(|a, b| a.ecart.cmp(&b.ecart).then_with(|| self.order.compare(&b.lm, &a.lm)))
    }

    /// Mora's weak normal form of `f` with respect to `basis`.
    fn normal_form(&self, f: MultiPoly, basis: &[Entry]) -> MultiPoly {
        let mut extra: Vec<Entry> = Vec::new();
        let mut h = match Entry::new(self.trunc(f), self.order) {
            Some(h) => h,
            None => return MultiPoly::zero(basis[0].poly.field(), basis[0].lm.nvars()),
        };
        loop {
            let g = match self.pick(&h.lm, basis, &extra) {
                Some(g) => g.clone(),
                None => return h.poly,
            };
            if g.ecart > h.ecart {
                extra.push(h.clone());
            }
            let next = self.reduce(&h, &g);
            match Entry::new(next, self.order) {
                Some(e) => h = e,
                None => return MultiPoly::zero(h.poly.field(), h.poly.nvars()),
            }
        }
    }
}

/// Leading-term ideal of a standard basis of `ideal` under `order`.
///
/// For a truncated ideal the computation is carried out for `I + m^T`,
/// whose generators are exact; terms of degree `>= T` are dropped as they
/// arise, since they reduce to zero against the degree-`T` monomials.
pub fn standard_basis(ideal: &LocalIdeal, order: &LocalOrder) -> Result<Staircase> {
    let b = ideal.nvars();
    if order.perm.len() != b {
        return Err(Error::DimensionMismatch {
            expected: b,
            got: order.perm.len(),
        });
    }
    let engine = Engine {
        order,
        bound: ideal.truncation(),
    };
    // the degree-T monomials enter untruncated; everything derived from
    // them is truncated
    let mut basis: Vec<Entry> = Vec::new();
    if let Some(t) = ideal.truncation() {
        for m in Monomial::of_degree(b, t) {
            let g = MultiPoly::monomial(ideal.field(), m, ideal.field().one());
            basis.extend(Entry::new(g, order));
        }
    }
    for g in ideal.generators().iter().cloned() {
        if basis.is_empty() {
            if let Some(e) = Entry::new(engine.trunc(g), order) {
                basis.push(e);
            }
            continue;
        }
        let h = engine.normal_form(g, &basis);
        if let Some(e) = Entry::new(h, order) {
            basis.push(e);
        }
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // smallest lcm degree first, then the most recent pair; deterministic
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| {
                let dx = basis[x.0].lm.lcm(&basis[x.1].lm).degree();
                let dy = basis[y.0].lm.lcm(&basis[y.1].lm).degree();
                dx.cmp(&dy).then(y.1.cmp(&x.1)).then(y.0.cmp(&x.0))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let s = engine.spoly(&basis[i], &basis[j]);
        if s.is_zero() {
            continue;
        }
        let h = engine.normal_form(s, &basis);
        if let Some(e) = Entry::new(h, order) {
            let k = basis.len();
            basis.push(e);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }

    let leads: Vec<Monomial> = basis.into_iter().map(|e| e.lm).collect();
    Staircase::from_leading(b, leads)
}
