//! Sparse multivariate polynomials and local monomial orders.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::field::{Elem, FieldDescriptor};
use crate::error::{Error, Result};

/// Exponent vector; its length is the number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Index of the single variable of a pure power, if it is one.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    /// All monomials in `nvars` variables of total degree exactly `d`,
    /// in lexicographically decreasing order.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(nvars, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(nvars, d, &mut Vec::new(), &mut out);
        out
    }

    /// All monomials of total degree `< bound`, grouped by increasing degree.
    pub fn below_degree(nvars: usize, bound: u32) -> Vec<Monomial> {
        (0..bound).flat_map(|d| Monomial::of_degree(nvars, d)).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalOrderKind {
    AntiGradedLex,
    AntiGradedRevLex,
}

/// Admissible order for the local ring: lower total degree is larger, so
/// `1` is the largest monomial and the leading monomial of a series is the
/// lowest-degree one. Ties are broken by `kind` over the variable sequence
/// `perm` (`perm[0]` is the most significant variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOrder {
    pub kind: LocalOrderKind,
    pub perm: Vec<usize>,
}

impl LocalOrder {
    pub fn anti_graded_lex(nvars: usize) -> Self {
        LocalOrder {
            kind: LocalOrderKind::AntiGradedLex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn anti_graded_revlex(nvars: usize) -> Self {
        LocalOrder {
            kind: LocalOrderKind::AntiGradedRevLex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn with_permutation(kind: LocalOrderKind, perm: Vec<usize>) -> Result<Self> {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..perm.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidQuery("not a permutation".into()));
        }
        Ok(LocalOrder { kind, perm })
    }

    /// `Greater` means `a` is the larger (leading) monomial.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match b.degree().cmp(&a.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        match self.kind {
            LocalOrderKind::AntiGradedLex => {
                for &i in &self.perm {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            LocalOrderKind::AntiGradedRevLex => {
                for &i in self.perm.iter().rev() {
                    match b.0[i].cmp(&a.0[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Polynomial over a [`FieldDescriptor`]; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldDescriptor,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(b.0.cmp(a.0)));
        for (m, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.format(c);
            if m.degree() == 0 {
                write!(f, "{cs}")?;
            } else if self.field.is_one(c) {
                write!(f, "{m}")?;
            } else {
                write!(f, "({cs})*{m}")?;
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero(field: &FieldDescriptor, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldDescriptor, nvars: usize, c: Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(field: &FieldDescriptor, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: &FieldDescriptor, m: Monomial, c: Elem) -> Self {
        let mut p = Self::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        field: &FieldDescriptor,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience constructor from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms(field: &FieldDescriptor, nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e.to_vec()), field.from_i64(*c));
        }
        p
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &MultiPoly) {
        assert!(
            self.field == other.field && self.nvars == other.nvars,
            "polynomials over different rings"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> MultiPoly {
        if self.field.is_zero(c) {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), self.field.mul(v, c)))
                .collect(),
        }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: &Elem) -> MultiPoly {
        if self.field.is_zero(c) {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), self.field.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_truncated(other, None)
    }

    /// Product with every monomial of degree `>= bound` dropped.
    pub fn mul_truncated(&self, other: &MultiPoly, bound: Option<u32>) -> MultiPoly {
        self.check(other);
        let f = &self.field;
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        let other_terms: Vec<(&Monomial, &Elem, u32)> = other.terms.iter().map(|(m, c)| (m, c, m.degree())).collect();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if let Some(b) = bound {
                if da >= b {
                    continue;
                }
            }
            for (mb, cb, db) in &other_terms {
                if let Some(b) = bound {
                    if da + db >= b {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                let v = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = f.add(x, &v),
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drop all monomials of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest total degree present, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn constant_term(&self) -> Elem {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// The homogeneous piece of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = f.mul(&v, &f.pow(x, e as i64).expect("nonnegative power"));
                }
            }
            acc = f.add(&acc, &v);
        }
        acc
    }

    /// `self(subs_0, ..., subs_{n-1})`; every substitute lives in the same ring
    /// (possibly with a different variable count). Terms of degree `>= bound`
    /// are dropped along the way when a bound is given.
    pub fn substitute(&self, subs: &[MultiPoly], bound: Option<u32>) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let target_vars = subs.first().map(|s| s.nvars).unwrap_or(0);
        let f = &self.field;
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| vec![MultiPoly::constant(f, target_vars, f.one()), s.clone()])
            .collect();
        let mut out = MultiPoly::zero(f, target_vars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(f, target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_truncated(&subs[i], bound);
                    powers[i].push(next);
                }
                term = term.mul_truncated(&powers[i][e as usize], bound);
                if term.is_zero() {
                    break;
                }
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Map coefficients through `g` into another field.
    pub fn map_coefficients(&self, target: &FieldDescriptor, g: impl Fn(&Elem) -> Elem) -> MultiPoly {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), g(c));
        }
        out
    }

    /// Leading monomial and coefficient under a local order.
    pub fn leading(&self, order: &LocalOrder) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Partial derivative by variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            out.add_term(Monomial(e), self.field.mul(c, &self.field.from_i64(k as i64)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    #[test]
    fn local_order_prefers_low_degree() {
        let o = LocalOrder::anti_graded_lex(2);
        let one = Monomial(vec![0, 0]);
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let x2 = Monomial(vec![2, 0]);
        let xy = Monomial(vec![1, 1]);
        assert_eq!(o.compare(&one, &x), Ordering::Greater);
        assert_eq!(o.compare(&y, &x2), Ordering::Greater);
        assert_eq!(o.compare(&x, &y), Ordering::Greater);
        assert_eq!(o.compare(&x2, &xy), Ordering::Greater);
        let swapped = LocalOrder::with_permutation(LocalOrderKind::AntiGradedLex, vec![1, 0]).unwrap();
        assert_eq!(swapped.compare(&x, &y), Ordering::Less);
    }

    #[test]
    fn revlex_tie_break() {
        let o = LocalOrder::anti_graded_revlex(3);
        // degrevlex: x1*x3 < x2^2 since x3 appears
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        assert_eq!(o.compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn substitute_composes() {
        // (-z + z^2) o (-z + z^2) = z - 2 z^3 + z^4
        let f = MultiPoly::from_int_terms(&q(), 1, &[(&[1], -1), (&[2], 1)]);
        let g = f.substitute(std::slice::from_ref(&f), None);
        let expected = MultiPoly::from_int_terms(&q(), 1, &[(&[1], 1), (&[3], -2), (&[4], 1)]);
        assert_eq!(g, expected);
    }

    #[test]
    fn monomials_below_degree_count() {
        assert_eq!(Monomial::below_degree(2, 4).len(), 10);
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let a = MultiPoly::from_int_terms(&f5, 1, &[(&[1], 2)]);
        let b = MultiPoly::from_int_terms(&f5, 1, &[(&[1], 3)]);
        assert!(a.add(&b).is_zero());
    }
}
