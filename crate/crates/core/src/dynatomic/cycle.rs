//! Enumeration of `Φ_n` and `Φ*_n` over `F_{q^s}`, `s = 1..=s_max`.

use std::collections::BTreeMap;

use super::{classify_period, mobius_transform, Mult, PeriodForm};
use crate::algebra::{affine_points, projective_points, FieldDescriptor, MapForm, Point, PolyMap};
use crate::degrees::deg_phi;
use crate::error::{Error, Result};
use crate::localmult::{a_p, map_over, MultConfig};
use crate::spectral::jacobian_at;

use super::divisors;

/// Finite formal sum of points with integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycle {
    /// `(point, extension degree over the base field, multiplicity)`.
    pub entries: Vec<(Point, u32, i64)>,
    pub ext_bound: u32,
}

impl ZeroCycle {
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|e| e.2).sum()
    }

    pub fn multiplicity(&self, point: &Point) -> i64 {
        self.entries.iter().find(|e| &e.0 == point).map_or(0, |e| e.2)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.entries.iter().map(|e| &e.0)
    }
}

#[derive(Clone, Debug)]
pub struct CycleEntry {
    pub point: Point,
    /// Degree of the field of definition over the base field.
    pub ext_degree: u32,
    pub primitive_period: u64,
    pub mult_n: Mult,
    /// `None` when some `a_P(d)`, `d | n`, is degenerate.
    pub mult_star_n: Option<i64>,
    pub form: Option<PeriodForm>,
}

#[derive(Clone, Debug)]
pub struct CycleReport {
    pub n: u64,
    pub ext_bound: u32,
    pub entries: Vec<CycleEntry>,
    pub warnings: Vec<String>,
}

impl CycleReport {
    /// `Φ_n`, omitting degenerate points.
    pub fn phi(&self) -> ZeroCycle {
        ZeroCycle {
            entries: self
                .entries
                .iter()
                .filter_map(|e| match e.mult_n {
                    Mult::Value(v) if v > 0 => Some((e.point.clone(), e.ext_degree, v as i64)),
                    _ => None,
                })
                .collect(),
            ext_bound: self.ext_bound,
        }
    }

    /// `Φ*_n`, omitting degenerate points.
    pub fn phi_star(&self) -> ZeroCycle {
        ZeroCycle {
            entries: self
                .entries
                .iter()
                .filter_map(|e| match e.mult_star_n {
                    Some(v) if v != 0 => Some((e.point.clone(), e.ext_degree, v)),
                    _ => None,
                })
                .collect(),
            ext_bound: self.ext_bound,
        }
    }

    pub fn degenerate_points(&self) -> Vec<&Point> {
        self.entries
            .iter()
            .filter(|e| e.mult_n == Mult::Degenerate)
            .map(|e| &e.point)
            .collect()
    }
}

fn level_points(field: &FieldDescriptor, map: &PolyMap) -> Vec<Point> {
    match map.form() {
        MapForm::Affine => affine_points(field, map.nvars()).collect(),
        MapForm::Projective => projective_points(field, map.dimension()).collect(),
    }
}

/// Walks every point of `A^b` or `P^N` over `F_{q^s}`, `s <= s_max`, each
/// geometric point once (at the level of its field of definition), and
/// records the points with `φ^n(P) = P`. Degenerate points are kept with
/// [`Mult::Degenerate`].
pub fn cycle_report(map: &PolyMap, n: u64, s_max: u32, cfg: &MultConfig) -> Result<CycleReport> {
    let base = map.field();
    if !base.is_finite() {
        return Err(Error::UnsupportedField("cycle enumeration needs a finite field".into()));
    }
    if n == 0 || s_max == 0 {
        return Err(Error::InvalidQuery("n and the extension bound must be >= 1".into()));
    }
    let p = base.characteristic() as u64;
    let k = base.degree();
    let mut entries = Vec::new();
    for s in 1..=s_max {
        let field = FieldDescriptor::extension(p, k * s)?;
        let local = map_over(map, &field)?;
        for point in level_points(&field, &local) {
            let def = num_integer::lcm(k, point.field_degree()) / k;
            if def != s {
                continue;
            }
            let m = match local.period(&point, n)? {
                Some(m) if n.is_multiple_of(m) => m,
                _ => continue,
            };
            let mut values = BTreeMap::new();
            let mut degenerate = false;
            for d in divisors(n).into_iter().filter(|d| d % m == 0) {
                match a_p(&local, &point, d, cfg) {
                    Ok(v) => {
                        values.insert(d, v);
                    }
                    Err(Error::DegenerateIterate { .. }) => degenerate = true,
                    Err(e) => return Err(e),
                }
            }
            for d in divisors(n).into_iter().filter(|d| d % m != 0) {
                values.insert(d, 0);
            }
            let mult_n = match values.get(&n) {
                Some(&v) => Mult::Value(v),
                None => Mult::Degenerate,
            };
            let mult_star_n = if degenerate { None } else { mobius_transform(n, &values) };
            let form = match mult_star_n {
                Some(v) if v >= 1 => {
                    let sd = jacobian_at(&local, &point, m)?;
                    Some(classify_period(n, m, &sd.finite_orders(), p))
                }
                _ => None,
            };
            entries.push(CycleEntry {
                point,
                ext_degree: s,
                primitive_period: m,
                mult_n,
                mult_star_n,
                form,
            });
        }
    }
    let mut report = CycleReport {
        n,
        ext_bound: s_max,
        entries,
        warnings: Vec::new(),
    };
    if map.form() == MapForm::Projective && report.degenerate_points().is_empty() {
        let expected = deg_phi(map.dimension() as u32, map.degree() as u64, n);
        let found = num_bigint::BigInt::from(report.phi().degree());
        if found < expected {
            report
                .warnings
                .push(format!("extension bound too small: found degree {found} of {expected}"));
        }
    }
    Ok(report)
}

/// `(Φ_n, Φ*_n)` over `F_{q^s}`, `s <= s_max`; fails on a degenerate point.
pub fn enumerate_cycle(map: &PolyMap, n: u64, s_max: u32, cfg: &MultConfig) -> Result<(ZeroCycle, ZeroCycle)> {
    let report = cycle_report(map, n, s_max, cfg)?;
    if !report.degenerate_points().is_empty() {
        return Err(Error::DegenerateIterate { n });
    }
    Ok((report.phi(), report.phi_star()))
}
