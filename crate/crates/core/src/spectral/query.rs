//! Coefficient of a fixed monomial `F` in the iterates of a map whose
//! linear part contains a Jordan block, and the divisibility conditions
//! that make those coefficients vanish.
//!
//! Setting: block variables `y_1..y_v` with `φ(y_i) = λ y_i + y_{i+1} + c_i F + …`
//! (`y_{v+1} = 0`, `c_i = 0` for `i > s`), and outside variables `z_k` with
//! `φ(z_k) = λ_k z_k + …`, where `F = Π y_i^{a_i} Π z_k^{e_k}` and `…` has
//! degree above `deg F`.

use crate::algebra::{Elem, FieldDescriptor, Monomial, MultiPoly, PolyMap};
use crate::error::{Error, Result};

use super::{binomial, p_valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastMonomialQuery {
    pub field: FieldDescriptor,
    pub lambda: Elem,
    /// Exponents `a_1..a_v` of `F` in the block variables; `v` is the block size.
    pub block_exponents: Vec<u32>,
    /// Eigenvalues and exponents of the outside variables occurring in `F`.
    pub outside: Vec<(Elem, u32)>,
    /// Row `t` (1-based) whose coefficient is requested.
    pub t: usize,
    /// Last block row with a nonzero coefficient of `F`.
    pub s: usize,
    /// `c_1..c_s`.
    pub coefficients: Vec<Elem>,
}

impl LeastMonomialQuery {
    pub fn block_size(&self) -> usize {
        self.block_exponents.len()
    }

    /// `α`, the total exponent of `F` in the block variables.
    pub fn alpha(&self) -> u32 {
        self.block_exponents.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.alpha() + self.outside.iter().map(|o| o.1).sum::<u32>()
    }

    /// `Π λ_k^{e_k}` over the outside variables.
    pub fn outside_product(&self) -> Result<Elem> {
        let f = &self.field;
        self.outside
            .iter()
            .try_fold(f.one(), |acc, (l, e)| Ok(f.mul(&acc, &f.pow(l, *e as i64)?)))
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.block_size();
        if !(1 <= self.t && self.t <= self.s && self.s <= v) {
            return Err(Error::InvalidQuery("need 1 <= t <= s <= block size".into()));
        }
        if self.coefficients.len() != self.s || self.field.is_zero(&self.coefficients[self.s - 1]) {
            return Err(Error::InvalidQuery("need c_1..c_s with c_s != 0".into()));
        }
        if self.field.is_zero(&self.lambda) {
            return Err(Error::ZeroEigenvalue);
        }
        if self.outside.iter().any(|(l, _)| self.field.is_zero(l)) {
            return Err(Error::ZeroEigenvalue);
        }
        if self.degree() == 0 {
            return Err(Error::InvalidQuery("F must be a nonconstant monomial".into()));
        }
        Ok(())
    }

    /// `F` as a monomial in the variables `y_1..y_v, z_1..z_o`.
    pub fn monomial(&self) -> Monomial {
        let mut e = self.block_exponents.clone();
        e.extend(self.outside.iter().map(|o| o.1));
        Monomial(e)
    }

    /// The map described in the module documentation, with no terms beyond
    /// the linear part and `c_i F`, plus the given extra components (which
    /// should only contain monomials of degree above `deg F`).
    pub fn model_map(&self, extra: Option<&[MultiPoly]>) -> Result<PolyMap> {
        let f = &self.field;
        let v = self.block_size();
        let b = v + self.outside.len();
        let fm = self.monomial();
        let linear_f = self.degree() == 1;
        let mut comps = Vec::with_capacity(b);
        for i in 0..b {
            let mut c = MultiPoly::zero(f, b);
            if i < v {
                c.add_term(Monomial::var(b, i), self.lambda.clone());
                if i + 1 < v {
                    c.add_term(Monomial::var(b, i + 1), f.one());
                }
                if !linear_f && i < self.s {
                    c.add_term(fm.clone(), self.coefficients[i].clone());
                }
            } else {
                c.add_term(Monomial::var(b, i), self.outside[i - v].0.clone());
            }
            if let Some(extra) = extra {
                c = c.add(&extra[i]);
            }
            comps.push(c);
        }
        PolyMap::affine(comps)
    }
}

/// Closed-form coefficient of `F` in `φ^(n)_{y_t}`.
///
/// For `deg F = 1` (`F = y_s`) this is `C(n, s-t) λ^(n-(s-t))`. Otherwise it is
/// `Σ_{ℓ=0}^{s-t} c_{t+ℓ} Σ_{j=0}^{n-1-ℓ} C(n-1-j, ℓ) λ^(j(α-1)+n-1-ℓ) ν^j`
/// with `ν = Π λ_k^{e_k}`.
pub fn lemma19_coefficient(q: &LeastMonomialQuery, n: u64) -> Result<Elem> {
    q.validate()?;
    if n == 0 {
        return Err(Error::InvalidQuery("n must be >= 1".into()));
    }
    let f = &q.field;
    let gap = (q.s - q.t) as u64;
    if q.degree() == 1 {
        if n < gap {
            return Ok(f.zero());
        }
        let c = f.from_bigint(&binomial(n, gap));
        return Ok(f.mul(&c, &f.pow(&q.lambda, (n - gap) as i64)?));
    }
    let nu = q.outside_product()?;
    let alpha = q.alpha() as i64;
    let mut total = f.zero();
    for l in 0..=gap {
        if l + 1 > n {
            break;
        }
        let c = &q.coefficients[q.t - 1 + l as usize];
        let mut inner = f.zero();
        for j in 0..n - l {
            let bin = f.from_bigint(&binomial(n - 1 - j, l));
            if f.is_zero(&bin) {
                continue;
            }
            let lam = f.pow(&q.lambda, j as i64 * (alpha - 1) + (n - 1 - l) as i64)?;
            let term = f.mul(&bin, &f.mul(&lam, &f.pow(&nu, j as i64)?));
            inner = f.add(&inner, &term);
        }
        total = f.add(&total, &f.mul(c, &inner));
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma11Case {
    /// `λ = 1`, every outside eigenvalue `1`.
    UnipotentTrivialOutside,
    /// `λ ≠ 1`, outside eigenvalues `1`, `α = 0`.
    RootOutsideOnly,
    /// `λ ≠ 1`, outside eigenvalues `1`, `α > 0`.
    RootInBlock,
    /// `λ = 1`, some outside eigenvalue `≠ 1`.
    UnipotentNontrivialOutside,
    /// `λ ≠ 1`, some outside eigenvalue `≠ 1`.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma11Verdict {
    /// The necessary condition fails: some coefficient of `F` in rows `1..s`
    /// of `φ^(n)` is nonzero.
    NecessaryFails,
    /// The necessary condition holds but the coefficients need not all vanish.
    NecessaryHolds,
    /// Every coefficient of `F` in rows `1..s` of `φ^(n)` vanishes.
    SufficientHolds,
}

pub fn lemma11_case(q: &LeastMonomialQuery) -> Lemma11Case {
    let f = &q.field;
    let lambda_one = f.is_one(&q.lambda);
    let outside_one = q.outside.iter().all(|(l, _)| f.is_one(l));
    match (lambda_one, outside_one) {
        (true, true) => Lemma11Case::UnipotentTrivialOutside,
        (false, true) if q.alpha() == 0 => Lemma11Case::RootOutsideOnly,
        (false, true) => Lemma11Case::RootInBlock,
        (true, false) => Lemma11Case::UnipotentNontrivialOutside,
        (false, false) => Lemma11Case::General,
    }
}

/// Divisibility conditions on `n` for the coefficients of `F` (`deg F > 1`)
/// in `φ^(n)` to vanish in characteristic `p` (`p = 0` over `Q`).
///
/// Necessary conditions by case: `p | n`; `λ^n = 1`; `(λ^(α-1))^n = 1`;
/// `ν^n = 1`; `(λ^(α-1) ν)^n = 1`. All rows `1..s` vanish exactly when,
/// with `μ = λ^(α-1) ν`, either `μ = 1` and `p^(v_p(n)) > s`, or `μ ≠ 1`,
/// `μ^n = 1` and `p^(v_p(n)) >= s`.
pub fn lemma11_conditions(q: &LeastMonomialQuery, n: u64, p: u64) -> Result<Lemma11Verdict> {
    q.validate()?;
    if q.degree() < 2 {
        return Err(Error::InvalidQuery("conditions apply to deg F > 1".into()));
    }
    let f = &q.field;
    let nu = q.outside_product()?;
    let lam_a = f.pow(&q.lambda, q.alpha() as i64 - 1)?;
    let mu = f.mul(&lam_a, &nu);
    let is_root = |x: &Elem| -> Result<bool> { Ok(f.is_one(&f.pow(x, n as i64)?)) };
    let necessary = match lemma11_case(q) {
        Lemma11Case::UnipotentTrivialOutside => p >= 2 && n.is_multiple_of(p),
        Lemma11Case::RootOutsideOnly => is_root(&q.lambda)?,
        Lemma11Case::RootInBlock => is_root(&lam_a)?,
        Lemma11Case::UnipotentNontrivialOutside => is_root(&nu)?,
        Lemma11Case::General => is_root(&mu)?,
    };
    if !necessary {
        return Ok(Lemma11Verdict::NecessaryFails);
    }
    let pe: u128 = if p < 2 {
        1
    } else {
        (p as u128).saturating_pow(p_valuation(n, p))
    };
    let s = q.s as u128;
    let vanishes = if f.is_one(&mu) {
        pe > s
    } else {
        is_root(&mu)? && pe >= s
    };
    Ok(if vanishes {
        Lemma11Verdict::SufficientHolds
    } else {
        Lemma11Verdict::NecessaryHolds
    })
}
