//! Dynatomic multiplicities `a*_P(n) = Σ_{d|n} μ(n/d) a_P(d)`, the cycles
//! `Φ_n` and `Φ*_n` over finite-field towers, and checks of the structural
//! statements about them.

mod corpus;
mod cycle;
mod identities;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use corpus::{periodic_points, random_affine_map, Corpus, CorpusConfig};
pub use cycle::{cycle_report, enumerate_cycle, CycleEntry, CycleReport, ZeroCycle};
pub use identities::{verify_identities, IdentityCheck, IdentityKind};

use crate::algebra::{Point, PolyMap};
use crate::error::{Error, Result};
use crate::localmult::{a_p, map_over, MultConfig};
use crate::spectral::{jacobian_at, p_valuation, SpectralData};

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// `a*_P(n)`. Returns `0` without further work when `φ^n(P) ≠ P`.
pub fn a_star(map: &PolyMap, point: &Point, n: u64, cfg: &MultConfig) -> Result<i64> {
    let local = map_over(map, &point.field)?;
    let m = match local.period(point, n)? {
        Some(m) if n.is_multiple_of(m) => m,
        _ => return Ok(0),
    };
    let mut total = 0i64;
    for d in divisors(n) {
        let mu = mobius(n / d);
        if mu == 0 || d % m != 0 {
            continue;
        }
        total += mu * a_p(&local, point, d, cfg)? as i64;
    }
    Ok(total)
}

/// `Σ_{d|n} μ(n/d) values[d]`, requiring a value for each divisor.
pub fn mobius_transform(n: u64, values: &BTreeMap<u64, u64>) -> Option<i64> {
    divisors(n).into_iter().try_fold(0i64, |acc, d| {
        let mu = mobius(n / d);
        if mu == 0 {
            return Some(acc);
        }
        values.get(&d).map(|&v| acc + mu * v as i64)
    })
}

/// Which shape `n` takes relative to the primitive period `m` and the
/// multiplicative orders `r_i` of the eigenvalues of `dφ^m_P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PeriodForm {
    /// `n = m`.
    Primitive,
    /// `n = m · lcm(r_i : i ∈ S)` for a nonempty set `S`.
    OrderLcm {
        lcm: u64,
    },
    /// `n = m · lcm(r_i : i ∈ S) · p^e` with `S` nonempty and `e >= 1`.
    OrderLcmCharPower {
        lcm: u64,
        e: u32,
    },
    NoFormMatched,
}

impl fmt::Display for PeriodForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodForm::Primitive => write!(f, "n=m"),
            PeriodForm::OrderLcm { lcm } => write!(f, "n=m*lcm(r)={lcm}m"),
            PeriodForm::OrderLcmCharPower { lcm, e } => write!(f, "n=m*lcm(r)*p^e (lcm={lcm}, e={e})"),
            PeriodForm::NoFormMatched => write!(f, "none"),
        }
    }
}

/// All values `lcm(r_i : i ∈ S)` over nonempty subsets `S` of `orders`.
pub fn order_lcms(orders: &[u64]) -> Vec<u64> {
    let mut distinct: Vec<u64> = orders.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut out = Vec::new();
    for mask in 1u32..(1 << distinct.len()) {
        let l = distinct
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(1, |acc, (_, &r)| lcm(acc, r));
        out.push(l);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Classify `n` given the primitive period `m`, the finite eigenvalue
/// orders, and the characteristic `p` (`0` over `Q`).
pub fn classify_period(n: u64, m: u64, orders: &[u64], p: u64) -> PeriodForm {
    if m == 0 || !n.is_multiple_of(m) {
        return PeriodForm::NoFormMatched;
    }
    let q = n / m;
    if q == 1 {
        return PeriodForm::Primitive;
    }
    let lcms = order_lcms(orders);
    if lcms.contains(&q) {
        return PeriodForm::OrderLcm { lcm: q };
    }
    if p >= 2 {
        let e = p_valuation(q, p);
        if e >= 1 {
            let rest = q / p.pow(e);
            if lcms.contains(&rest) {
                return PeriodForm::OrderLcmCharPower { lcm: rest, e };
            }
        }
    }
    PeriodForm::NoFormMatched
}

/// Multiplicity of one `n` at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mult {
    Value(u64),
    Degenerate,
}

/// Everything computed about one point for `n <= n_max`.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub point: Point,
    /// Primitive period if at most `n_max`.
    pub primitive_period: Option<u64>,
    /// `a_P(n)` for `n = 1..=n_max`.
    pub a: BTreeMap<u64, Mult>,
    /// `a*_P(n)` wherever every `a_P(d)`, `d | n`, is known.
    pub a_star: BTreeMap<u64, i64>,
    /// Linear data of `φ^m` at the point.
    pub spectral: Option<SpectralData>,
    pub characteristic: u64,
}

impl PointReport {
    pub fn a_value(&self, n: u64) -> Option<u64> {
        match self.a.get(&n) {
            Some(Mult::Value(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn finite_orders(&self) -> Vec<u64> {
        self.spectral.as_ref().map(|s| s.finite_orders()).unwrap_or_default()
    }

    /// Shape of `n` for an entry with `a*_P(n) >= 1`.
    pub fn classify(&self, n: u64) -> Option<PeriodForm> {
        let m = self.primitive_period?;
        if self.a_star.get(&n).copied().unwrap_or(0) < 1 {
            return None;
        }
        Some(classify_period(n, m, &self.finite_orders(), self.characteristic))
    }
}

/// Computes `a_P(n)` and `a*_P(n)` for `n = 1..=n_max`. Degenerate iterates
/// are recorded rather than aborting the report.
pub fn point_report(map: &PolyMap, point: &Point, n_max: u64, cfg: &MultConfig) -> Result<PointReport> {
    let local = map_over(map, &point.field)?;
    let period = local.period(point, n_max)?;
    let mut a = BTreeMap::new();
    for n in 1..=n_max {
        let v = match period {
            Some(m) if n % m == 0 => match a_p(&local, point, n, cfg) {
                Ok(v) => Mult::Value(v),
                Err(Error::DegenerateIterate { .. }) => Mult::Degenerate,
                Err(e) => return Err(e),
            },
            _ => Mult::Value(0),
        };
        a.insert(n, v);
    }
    let values: BTreeMap<u64, u64> = a
        .iter()
        .filter_map(|(&n, m)| match m {
            Mult::Value(v) => Some((n, *v)),
            Mult::Degenerate => None,
        })
        .collect();
    let a_star = (1..=n_max)
        .filter_map(|n| mobius_transform(n, &values).map(|v| (n, v)))
        .collect();
    let spectral = match period {
        Some(m) => Some(jacobian_at(&local, point, m)?),
        None => None,
    };
    Ok(PointReport {
        point: point.clone(),
        primitive_period: period,
        a,
        a_star,
        spectral,
        characteristic: point.field.characteristic() as u64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub theorem: String,
    pub status: Status,
    pub witness: Option<serde_json::Value>,
}

impl Verdict {
    pub fn new(theorem: &str, status: Status, witness: Option<serde_json::Value>) -> Self {
        Verdict {
            theorem: theorem.to_string(),
            status,
            witness,
        }
    }
}

/// Non-primitive multiplicity check: if `p ∤ n`, `n > m` and `a*_P(n) ≠ 0`
/// then `a*_P(n) >= 2`. Entries with `p | n` are exempt and reported vacuous.
pub fn verify_thm17(report: &PointReport, n: u64, p: u64) -> Verdict {
    const ID: &str = "non-primitive-multiplicity";
    let witness = |reason: &str| {
        Some(serde_json::json!({
            "point": report.point.to_string(),
            "n": n,
            "primitive_period": report.primitive_period,
            "a_star": report.a_star.get(&n),
            "reason": reason,
        }))
    };
    let Some(&v) = report.a_star.get(&n) else {
        return Verdict::new(ID, Status::Vacuous, witness("degenerate"));
    };
    if p >= 2 && n.is_multiple_of(p) {
        return Verdict::new(ID, Status::Vacuous, witness("p | n"));
    }
    if !matches!(report.primitive_period, Some(m) if n > m) {
        return Verdict::new(ID, Status::Vacuous, witness("n <= m or not periodic"));
    }
    if v == 0 {
        Verdict::new(ID, Status::Vacuous, witness("a_star = 0"))
    } else if v >= 2 {
        Verdict::new(ID, Status::Pass, None)
    } else {
        Verdict::new(ID, Status::Fail, witness("a_star = 1 with p not dividing n and n > m"))
    }
}

/// Effectivity and period-form checks for every `n` in a report.
pub fn verify_effectivity(report: &PointReport) -> Vec<Verdict> {
    let mut out = Vec::new();
    for (&n, &v) in &report.a_star {
        let witness = serde_json::json!({"point": report.point.to_string(), "n": n, "a_star": v});
        if v < 0 {
            out.push(Verdict::new("effectivity", Status::Fail, Some(witness)));
            continue;
        }
        out.push(Verdict::new("effectivity", Status::Pass, None));
        if v >= 1 {
            match report.classify(n) {
                Some(PeriodForm::NoFormMatched) | None => {
                    out.push(Verdict::new("period-form", Status::Fail, Some(witness)));
                }
                Some(_) => out.push(Verdict::new("period-form", Status::Pass, None)),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldDescriptor, MultiPoly};

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn multiplier_minus_one_report() {
        let q = FieldDescriptor::rationals();
        let map = PolyMap::affine(vec![MultiPoly::from_int_terms(&q, 1, &[(&[1], -1), (&[2], 1)])]).unwrap();
        let o = Point::origin(&q, 1);
        let cfg = MultConfig::default();
        assert_eq!(a_star(&map, &o, 2, &cfg).unwrap(), 2);
        let r = point_report(&map, &o, 4, &cfg).unwrap();
        assert_eq!(r.classify(2), Some(PeriodForm::OrderLcm { lcm: 2 }));
        assert_eq!(verify_thm17(&r, 2, 0).status, Status::Pass);
        let non_periodic = Point::affine(&q, vec![q.from_i64(3)]);
        assert_eq!(a_star(&map, &non_periodic, 3, &cfg).unwrap(), 0);
    }

    #[test]
    fn period_forms() {
        assert_eq!(classify_period(3, 3, &[], 5), PeriodForm::Primitive);
        assert_eq!(classify_period(6, 2, &[3, 4], 5), PeriodForm::OrderLcm { lcm: 3 });
        assert_eq!(classify_period(24, 2, &[3, 4], 5), PeriodForm::OrderLcm { lcm: 12 });
        assert_eq!(
            classify_period(3, 1, &[1, 2], 3),
            PeriodForm::OrderLcmCharPower { lcm: 1, e: 1 }
        );
        assert_eq!(classify_period(5, 1, &[2], 3), PeriodForm::NoFormMatched);
        // without a subset of orders there is no bare p^e form
        assert_eq!(classify_period(3, 1, &[2], 3), PeriodForm::NoFormMatched);
    }
}
