//! Local intersection multiplicity `a_P(n)`: the colength of the ideal
//! `(φ^(n)_i - x_i)` in the completed local ring at a periodic point.
//!
//! Two independent algorithms compute it: Mora standard bases
//! ([`standard_basis`]) and the Hilbert–Samuel plateau of a truncated
//! linear system ([`colength_by_truncation`]).

mod hilbert;
mod mora;

use std::collections::BTreeSet;

pub use hilbert::{colength_by_truncation, hilbert_samuel};
pub use mora::standard_basis;

use crate::algebra::{FieldDescriptor, LocalOrder, MapForm, Monomial, MultiPoly, Point, PolyMap, SeriesMap};
use crate::error::{Error, Result};

/// Ideal of the local ring at the origin. With `truncation = Some(T)` the
/// generators are only known modulo `m^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    field: FieldDescriptor,
    nvars: usize,
    generators: Vec<MultiPoly>,
    truncation: Option<u32>,
}

impl LocalIdeal {
    /// Ideal with exact polynomial generators.
    pub fn exact(field: &FieldDescriptor, nvars: usize, generators: Vec<MultiPoly>) -> Result<Self> {
        Self::build(field, nvars, generators, None)
    }

    /// Ideal whose generators are truncated modulo `m^truncation`.
    pub fn truncated(
        field: &FieldDescriptor,
        nvars: usize,
        generators: Vec<MultiPoly>,
        truncation: u32,
    ) -> Result<Self> {
        let gens = generators.into_iter().map(|g| g.truncate(truncation)).collect();
        Self::build(field, nvars, gens, Some(truncation))
    }

    fn build(
        field: &FieldDescriptor,
        nvars: usize,
        generators: Vec<MultiPoly>,
        truncation: Option<u32>,
    ) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: g.nvars(),
                });
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !field.is_zero(&g.constant_term()) {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        Ok(LocalIdeal {
            field: field.clone(),
            nvars,
            generators,
            truncation,
        })
    }

    /// Fixed-point ideal `(f_i - u_i)` of a germ fixing the origin.
    pub fn fixed_points_of(germ: &SeriesMap) -> Result<Self> {
        if !germ.fixes_origin() {
            return Err(Error::NonzeroConstantTerm);
        }
        Self::truncated(
            germ.field(),
            germ.nvars(),
            germ.fixed_point_generators(),
            germ.truncation(),
        )
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }
}

/// Minimal generators of a monomial ideal and, when finite, the monomials
/// outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    leading: Vec<Monomial>,
    complement: Vec<Monomial>,
}

impl Staircase {
    /// Builds the staircase of the monomial ideal generated by `leads`.
    /// Fails with `NotZeroDimensional` when some variable has no pure power
    /// among the generators, i.e. the complement is infinite.
    pub fn from_leading(nvars: usize, leads: Vec<Monomial>) -> Result<Self> {
        let set: BTreeSet<Monomial> = leads.into_iter().collect();
        let leading: Vec<Monomial> = set
            .iter()
            .filter(|m| !set.iter().any(|o| o != *m && o.divides(m)))
            .cloned()
            .collect();
        if leading.iter().any(|m| m.degree() == 0) {
            return Ok(Staircase {
                leading,
                complement: Vec::new(),
            });
        }
        let mut bounds = vec![None; nvars];
        for m in &leading {
            if let Some(i) = m.pure_power_var() {
                let e = m.0[i];
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        let bounds: Vec<u32> = bounds
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotZeroDimensional)?;
        let mut complement = Vec::new();
        let mut cur = vec![0u32; nvars];
        loop {
            let m = Monomial(cur.clone());
            if !leading.iter().any(|l| l.divides(&m)) {
                complement.push(m);
            }
            // odometer over the box below the pure powers
            let mut i = 0;
            loop {
                if i == nvars {
                    complement.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.0.clone())));
                    return Ok(Staircase { leading, complement });
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn leading(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn complement(&self) -> &[Monomial] {
        &self.complement
    }

    pub fn colength(&self) -> u64 {
        self.complement.len() as u64
    }

    /// Highest degree of a monomial outside the ideal.
    pub fn max_degree(&self) -> Option<u32> {
        self.complement.iter().map(|m| m.degree()).max()
    }

    /// Whether every monomial of this ideal lies in `other`.
    pub fn is_contained_in(&self, other: &Staircase) -> bool {
        self.leading.iter().all(|m| other.leading.iter().any(|l| l.divides(m)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    StandardBasis,
    Truncation,
    /// Run both algorithms and fail with `OracleMismatch` if they differ.
    CrossCheck,
}

/// Settings for [`a_p`]. The truncation starts at `initial_truncation` and
/// doubles until the answer is certified or `max_truncation` is passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultConfig {
    pub method: Method,
    pub order: Option<LocalOrder>,
    pub initial_truncation: u32,
    pub max_truncation: u32,
}

impl Default for MultConfig {
    fn default() -> Self {
        MultConfig {
            method: Method::StandardBasis,
            order: None,
            initial_truncation: 8,
            max_truncation: 32,
        }
    }
}

impl MultConfig {
    pub fn with_method(method: Method) -> Self {
        MultConfig {
            method,
            ..Self::default()
        }
    }

    fn order_for(&self, nvars: usize) -> LocalOrder {
        self.order.clone().unwrap_or_else(|| LocalOrder::anti_graded_lex(nvars))
    }

    /// Univariate problems are cheap, so they get a larger ceiling.
    fn ceiling(&self, nvars: usize) -> u32 {
        if nvars == 1 {
            self.max_truncation.max(1024)
        } else {
            self.max_truncation
        }
    }
}

/// Colength of a truncated fixed-point ideal if it is certified at this
/// truncation, `None` if a larger truncation is needed.
pub fn certified_colength(ideal: &LocalIdeal, cfg: &MultConfig) -> Result<Option<u64>> {
    let t = ideal
        .truncation()
        .ok_or_else(|| Error::InvalidQuery("expected a truncated ideal".into()))?;
    let by_sb = || -> Result<Option<u64>> {
        let st = standard_basis(ideal, &cfg.order_for(ideal.nvars()))?;
        // no staircase monomial in degree T-1 means m^(T-1) ⊆ I
        Ok(match st.max_degree() {
            Some(d) if d + 1 >= t => None,
            _ => Some(st.colength()),
        })
    };
    let by_trunc = || -> Result<Option<u64>> {
        match colength_by_truncation(ideal, t) {
            Ok(v) => Ok(Some(v)),
            Err(Error::NoStabilization(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    match cfg.method {
        Method::StandardBasis => by_sb(),
        Method::Truncation => by_trunc(),
        Method::CrossCheck => {
            let a = by_sb()?;
            let b = by_trunc()?;
            if a != b {
                return Err(Error::OracleMismatch {
                    standard: a.unwrap_or(u64::MAX),
                    truncated: b.unwrap_or(u64::MAX),
                });
            }
            Ok(a)
        }
    }
}

/// Base-change `map` to the field of `point` if they differ.
pub fn map_over(map: &PolyMap, field: &FieldDescriptor) -> Result<PolyMap> {
    if map.field() == field {
        return Ok(map.clone());
    }
    let emb = map.field().embedding_into(field)?;
    map.base_change(&emb)
}

/// Germ of `φ^n` at `point` modulo `m^T`, or `None` when `φ^n(P) ≠ P`.
pub fn iterate_germ(map: &PolyMap, point: &Point, n: u64, truncation: u32) -> Result<Option<SeriesMap>> {
    if n == 0 {
        return Err(Error::InvalidQuery("n must be >= 1".into()));
    }
    let map = map_over(map, &point.field)?;
    let m = match map.period(point, n)? {
        Some(m) if n.is_multiple_of(m) => m,
        _ => return Ok(None),
    };
    let germ = map.cycle_germ(point, m, truncation)?;
    Ok(Some(germ.iterate(n / m)?))
}

/// Fixed-point ideal `I_n` at `point` modulo `m^T`, or `None` when `φ^n(P) ≠ P`.
pub fn fixed_point_ideal(map: &PolyMap, point: &Point, n: u64, truncation: u32) -> Result<Option<LocalIdeal>> {
    match iterate_germ(map, point, n, truncation)? {
        Some(g) => Ok(Some(LocalIdeal::fixed_points_of(&g)?)),
        None => Ok(None),
    }
}

/// Leading-term staircase of `I_n` at `point`, certified as for [`a_p`].
pub fn fixed_point_staircase(map: &PolyMap, point: &Point, n: u64, cfg: &MultConfig) -> Result<Option<Staircase>> {
    let mut t = cfg.initial_truncation.max(2);
    let b = map.dimension();
    let order = cfg.order_for(b);
    while t <= cfg.ceiling(b) {
        let ideal = match fixed_point_ideal(map, point, n, t)? {
            Some(i) => i,
            None => return Ok(None),
        };
        let st = standard_basis(&ideal, &order)?;
        if st.max_degree().is_none_or(|d| d + 1 < t) {
            return Ok(Some(st));
        }
        t *= 2;
    }
    Err(Error::DegenerateIterate { n })
}

/// Local multiplicity `a_P(n)` of the fixed-point scheme of `φ^n` at `point`;
/// `0` when `φ^n(P) ≠ P`.
pub fn a_p(map: &PolyMap, point: &Point, n: u64, cfg: &MultConfig) -> Result<u64> {
    let b = map.dimension();
    let mut t = cfg.initial_truncation.max(2);
    while t <= cfg.ceiling(b) {
        let ideal = match fixed_point_ideal(map, point, n, t)? {
            Some(i) => i,
            None => return Ok(0),
        };
        if let Some(v) = certified_colength(&ideal, cfg)? {
            return Ok(v);
        }
        t *= 2;
    }
    Err(Error::DegenerateIterate { n })
}

/// Independent check for maps of the affine line: the order of vanishing of
/// `φ^n(z) - z` at `point`, from exact polynomial composition. `None` when
/// the difference is identically zero.
pub fn univariate_valuation(map: &PolyMap, point: &Point, n: u64) -> Result<Option<u64>> {
    if map.form() != MapForm::Affine || map.nvars() != 1 {
        return Err(Error::InvalidQuery(
            "valuation oracle needs an affine map in one variable".into(),
        ));
    }
    let map = map_over(map, &point.field)?;
    let f = &point.field;
    if map.period(point, n)?.is_none_or(|m| !n.is_multiple_of(m)) {
        return Ok(Some(0));
    }
    let it = map.iterate(n)?;
    let z = MultiPoly::var(f, 1, 0);
    let shifted = z.add(&MultiPoly::constant(f, 1, point.coords[0].clone()));
    let diff = it.components()[0]
        .substitute(std::slice::from_ref(&shifted), None)
        .sub(&shifted);
    Ok(diff.min_degree().map(u64::from))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldDescriptor;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    #[test]
    fn monomial_ideal_staircase() {
        let f = q();
        let i = LocalIdeal::exact(
            &f,
            2,
            vec![
                MultiPoly::from_int_terms(&f, 2, &[(&[2, 0], 1)]),
                MultiPoly::from_int_terms(&f, 2, &[(&[0, 1], 1)]),
            ],
        )
        .unwrap();
        let st = standard_basis(&i, &LocalOrder::anti_graded_lex(2)).unwrap();
        assert_eq!(st.colength(), 2);
        assert_eq!(st.leading(), &[Monomial(vec![0, 1]), Monomial(vec![2, 0])]);
        assert_eq!(colength_by_truncation(&i, 6).unwrap(), 2);
    }

    #[test]
    fn unit_linear_part() {
        let f = q();
        let i = LocalIdeal::exact(&f, 1, vec![MultiPoly::from_int_terms(&f, 1, &[(&[1], -2), (&[2], 1)])]).unwrap();
        let st = standard_basis(&i, &LocalOrder::anti_graded_lex(1)).unwrap();
        assert_eq!(st.leading(), &[Monomial(vec![1])]);
        assert_eq!(st.colength(), 1);
    }

    #[test]
    fn cubic_valuation() {
        let f = q();
        let i = LocalIdeal::exact(&f, 1, vec![MultiPoly::from_int_terms(&f, 1, &[(&[3], -2), (&[4], 1)])]).unwrap();
        assert_eq!(colength_by_truncation(&i, 8).unwrap(), 3);
        assert_eq!(
            standard_basis(&i, &LocalOrder::anti_graded_lex(1)).unwrap().colength(),
            3
        );
    }

    #[test]
    fn curve_is_not_zero_dimensional() {
        let f = q();
        // (x*y) has a curve of zeros
        let i = LocalIdeal::exact(&f, 2, vec![MultiPoly::from_int_terms(&f, 2, &[(&[1, 1], 1)])]).unwrap();
        assert_eq!(
            standard_basis(&i, &LocalOrder::anti_graded_lex(2)).unwrap_err(),
            Error::NotZeroDimensional
        );
        assert_eq!(colength_by_truncation(&i, 6).unwrap_err(), Error::NoStabilization(6));
    }

    #[test]
    fn multiplier_minus_one() {
        let f = q();
        let map = PolyMap::affine(vec![MultiPoly::from_int_terms(&f, 1, &[(&[1], -1), (&[2], 1)])]).unwrap();
        let origin = Point::origin(&f, 1);
        let cfg = MultConfig::with_method(Method::CrossCheck);
        assert_eq!(a_p(&map, &origin, 1, &cfg).unwrap(), 1);
        assert_eq!(a_p(&map, &origin, 2, &cfg).unwrap(), 3);
        assert_eq!(univariate_valuation(&map, &origin, 2).unwrap(), Some(3));
        let one = Point::affine(&f, vec![f.one()]);
        assert_eq!(a_p(&map, &one, 1, &cfg).unwrap(), 0);
    }

    #[test]
    fn squaring_has_simple_fixed_point() {
        let f = q();
        let map = PolyMap::affine(vec![MultiPoly::from_int_terms(&f, 1, &[(&[2], 1)])]).unwrap();
        let cfg = MultConfig::with_method(Method::CrossCheck);
        assert_eq!(a_p(&map, &Point::origin(&f, 1), 5, &cfg).unwrap(), 1);
    }

    #[test]
    fn identity_is_degenerate() {
        let f = FieldDescriptor::prime(5).unwrap();
        let map = PolyMap::affine(vec![MultiPoly::from_int_terms(&f, 1, &[(&[1], 1)])]).unwrap();
        let cfg = MultConfig::default();
        assert_eq!(
            a_p(&map, &Point::origin(&f, 1), 1, &cfg).unwrap_err(),
            Error::DegenerateIterate { n: 1 }
        );
    }
}
