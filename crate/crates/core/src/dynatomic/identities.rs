//! Möbius-type identities between dynatomic multiplicities of `φ` and of
//! its iterates, each side computed independently: iterates `φ^k` on one
//! side are composed exactly as polynomial maps, while `a*_P(φ, n)` iterates
//! local germs of `φ`.

use std::collections::HashMap;

use serde::Serialize;

use super::{a_star, divisors, factorize, mobius};
use crate::algebra::{Point, PolyMap};
use crate::error::{Error, Result};
use crate::localmult::{a_p, map_over, MultConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `a*(φ, Mℓ) = a*(φ^ℓ, M) - a*(φ, M)` for a prime `ℓ ∤ M`.
    PrimeStep,
    /// `a*(φ, Mℓ^e) = a*(φ^(ℓ^(e-1)), Mℓ)` for a prime `ℓ ∤ M`, `e >= 2`.
    PrimePowerReduction,
    /// `a*(φ, qM) = Σ_{d|q} μ(q/d) a*(φ^d, M)` for coprime `q, M`.
    CoprimeSplit,
    /// `a(φ, n) = Σ_{d|n} a*(φ, d)`.
    DivisorSum,
    /// `a*(φ, n) = a*(φ^m, n/m)` for the primitive period `m` when `a(φ, n) > 0`.
    PeriodRescaling,
    /// `a*(φ^m, n) = Σ_{d|m} a*(φ, nd)` for coprime `n, m`.
    IterateSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub kind: IdentityKind,
    pub params: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

struct Ctx<'a> {
    map: PolyMap,
    point: &'a Point,
    cfg: &'a MultConfig,
    max_degree: u64,
    iterates: HashMap<u64, Option<PolyMap>>,
    stars: HashMap<(u64, u64), Option<i64>>,
}

impl Ctx<'_> {
    fn iterate(&mut self, k: u64) -> Result<Option<PolyMap>> {
        if let Some(m) = self.iterates.get(&k) {
            return Ok(m.clone());
        }
        let deg = (self.map.degree() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        let it = if deg > self.max_degree {
            None
        } else {
            Some(self.map.iterate(k)?)
        };
        self.iterates.insert(k, it.clone());
        Ok(it)
    }

    /// `a*(φ^k, n)`; `k = 1` uses `φ` itself. `None` if degenerate or too costly.
    fn star(&mut self, k: u64, n: u64) -> Result<Option<i64>> {
        if let Some(v) = self.stars.get(&(k, n)) {
            return Ok(*v);
        }
        let target = if k == 1 {
            Some(self.map.clone())
        } else {
            self.iterate(k)?
        };
        let v = match target {
            None => None,
            Some(t) => match a_star(&t, self.point, n, self.cfg) {
                Ok(v) => Some(v),
                Err(Error::DegenerateIterate { .. }) => None,
                Err(e) => return Err(e),
            },
        };
        self.stars.insert((k, n), v);
        Ok(v)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Checks every identity instance with all arguments `<= n_max`, skipping
/// instances that involve a degenerate iterate or an exact iterate of
/// degree above `max_iterate_degree`.
pub fn verify_identities(
    map: &PolyMap,
    point: &Point,
    n_max: u64,
    max_iterate_degree: u64,
    cfg: &MultConfig,
) -> Result<Vec<IdentityCheck>> {
    let mut ctx = Ctx {
        map: map_over(map, &point.field)?,
        point,
        cfg,
        max_degree: max_iterate_degree,
        iterates: HashMap::new(),
        stars: HashMap::new(),
    };
    let mut out = Vec::new();
    let mut push = |kind, params: String, lhs: Option<i64>, rhs: Option<i64>| {
        if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
            out.push(IdentityCheck { kind, params, lhs, rhs });
        }
    };

    for l in (2..=n_max).filter(|&l| is_prime(l)) {
        for m in (1..=n_max / l).filter(|m| m % l != 0) {
            let lhs = ctx.star(1, m * l)?;
            let a = ctx.star(l, m)?;
            let b = ctx.star(1, m)?;
            let rhs = a.zip(b).map(|(a, b)| a - b);
            push(IdentityKind::PrimeStep, format!("l={l}, M={m}"), lhs, rhs);
        }
        let mut e = 2;
        while l.pow(e) <= n_max {
            for m in (1..=n_max / l.pow(e)).filter(|m| m % l != 0) {
                let lhs = ctx.star(1, m * l.pow(e))?;
                let rhs = ctx.star(l.pow(e - 1), m * l)?;
                push(
                    IdentityKind::PrimePowerReduction,
                    format!("l={l}, e={e}, M={m}"),
                    lhs,
                    rhs,
                );
            }
            e += 1;
        }
    }

    for n in 2..=n_max {
        for q in divisors(n).into_iter().filter(|&q| q >= 2) {
            let m = n / q;
            if num_integer::gcd(q, m) != 1 {
                continue;
            }
            let lhs = ctx.star(1, n)?;
            let mut rhs = Some(0i64);
            for d in divisors(q) {
                let mu = mobius(q / d);
                if mu == 0 {
                    continue;
                }
                rhs = match (rhs, ctx.star(d, m)?) {
                    (Some(acc), Some(v)) => Some(acc + mu * v),
                    _ => None,
                };
            }
            push(IdentityKind::CoprimeSplit, format!("q={q}, M={m}"), lhs, rhs);
        }
    }

    for n in 1..=n_max {
        let lhs = match a_p(&ctx.map, point, n, cfg) {
            Ok(v) => Some(v as i64),
            Err(Error::DegenerateIterate { .. }) => None,
            Err(e) => return Err(e),
        };
        let mut rhs = Some(0i64);
        for d in divisors(n) {
            rhs = match (rhs, ctx.star(1, d)?) {
                (Some(acc), Some(v)) => Some(acc + v),
                _ => None,
            };
        }
        push(IdentityKind::DivisorSum, format!("n={n}"), lhs, rhs);

        if lhs.is_some_and(|v| v > 0) {
            if let Some(m) = ctx.map.period(point, n)? {
                if m > 1 {
                    let l = ctx.star(1, n)?;
                    let r = ctx.star(m, n / m)?;
                    push(IdentityKind::PeriodRescaling, format!("n={n}, m={m}"), l, r);
                }
            }
        }
    }

    for m in 2..=n_max {
        for n in (1..=n_max / m).filter(|&n| num_integer::gcd(n, m) == 1) {
            let lhs = ctx.star(m, n)?;
            let mut rhs = Some(0i64);
            for d in divisors(m) {
                rhs = match (rhs, ctx.star(1, n * d)?) {
                    (Some(acc), Some(v)) => Some(acc + v),
                    _ => None,
                };
            }
            push(IdentityKind::IterateSum, format!("n={n}, m={m}"), lhs, rhs);
        }
    }
    Ok(out)
}
