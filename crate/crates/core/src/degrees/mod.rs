//! Closed-form degrees of `Φ_n` and `Φ*_n` for morphisms of `P^N`, and the
//! Lefschetz numbers of the K3 surface automorphism with trace sequence
//! `a_0 = 2`, `a_1 = 14`, `a_{k+1} = 14 a_k - a_{k-1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dynatomic::{divisors, mobius, Status};

/// Coefficients `(d^n)^(N-j)`, `j = 0..=N`, of the class of the graph of
/// `φ^n` in the basis `D_1^(N-j) D_2^j`. With `d = 1` this is the diagonal.
pub fn graph_class_coefficients(dim: u32, d: u64, n: u64) -> Vec<BigInt> {
    let dn = BigInt::from(d).pow(n as u32);
    (0..=dim).map(|j| dn.pow(dim - j)).collect()
}

/// `deg Φ_n = Σ_{j=0}^{N} d^(nj)`.
pub fn deg_phi(dim: u32, d: u64, n: u64) -> BigInt {
    let dn = BigInt::from(d).pow(n as u32);
    (0..=dim).map(|j| dn.pow(j)).sum()
}

/// `deg Φ*_n = Σ_{e|n} μ(n/e) deg Φ_e`.
pub fn deg_phi_star(dim: u32, d: u64, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|e| BigInt::from(mobius(n / e)) * deg_phi(dim, d, e))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub dim: u32,
    pub degree: u64,
    pub deg_phi: BTreeMap<u64, BigInt>,
    pub deg_phi_star: BTreeMap<u64, BigInt>,
}

pub fn degree_profile(dim: u32, d: u64, n_max: u64) -> DegreeProfile {
    DegreeProfile {
        dim,
        degree: d,
        deg_phi: (1..=n_max).map(|n| (n, deg_phi(dim, d, n))).collect(),
        deg_phi_star: (1..=n_max).map(|n| (n, deg_phi_star(dim, d, n))).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCheck {
    pub dim: u32,
    pub degree: u64,
    pub q: u64,
    /// `deg Φ*_q` from the Möbius sum.
    pub value: BigInt,
    /// `Σ_{j=1}^{N} (d^(qj) - d^j)`.
    pub closed_form: BigInt,
    pub status: Status,
}

/// For `d > 1` and prime `q`, `deg Φ*_q = Σ_j (d^(qj) - d^j)` is positive.
/// `d = 1` or composite `q` is outside the statement and reported vacuous.
pub fn thm20_positivity(dim: u32, d: u64, q: u64) -> PositivityCheck {
    let value = deg_phi_star(dim, d, q);
    let db = BigInt::from(d);
    let closed_form: BigInt = (1..=dim).map(|j| db.pow(q as u32 * j) - db.pow(j)).sum();
    let status = if d <= 1 || !crate::algebra::field::is_prime(q) {
        Status::Vacuous
    } else if value == closed_form && value > BigInt::zero() {
        Status::Pass
    } else {
        Status::Fail
    };
    PositivityCheck {
        dim,
        degree: d,
        q,
        value,
        closed_form,
        status,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzSequence {
    /// `a_0..=a_{k_max}`.
    pub traces: Vec<BigInt>,
    /// `L_k = a_k + 22` for `k = 1..=k_max` (index `k - 1`).
    pub numbers: Vec<BigInt>,
    /// `l_n = Σ_{e|n} μ(n/e) L_e` for `n = 1..=k_max` (index `n - 1`).
    pub periodic: Vec<BigInt>,
}

impl LefschetzSequence {
    pub fn k_max(&self) -> u64 {
        self.numbers.len() as u64
    }

    pub fn l(&self, k: u64) -> &BigInt {
        &self.numbers[k as usize - 1]
    }

    pub fn periodic_number(&self, n: u64) -> &BigInt {
        &self.periodic[n as usize - 1]
    }

    /// `L_k >= 4^k` for every computed `k`.
    pub fn growth_bound_holds(&self) -> bool {
        (1..=self.k_max()).all(|k| self.l(k) >= &BigInt::from(4u8).pow(k as u32))
    }
}

pub fn lefschetz(k_max: u64) -> LefschetzSequence {
    let mut traces = vec![BigInt::from(2), BigInt::from(14)];
    while (traces.len() as u64) < k_max + 1 {
        let k = traces.len();
        let next = BigInt::from(14) * &traces[k - 1] - &traces[k - 2];
        traces.push(next);
    }
    traces.truncate(k_max as usize + 1);
    let numbers: Vec<BigInt> = traces.iter().skip(1).map(|a| a + 22).collect();
    let periodic = (1..=k_max)
        .map(|n| {
            divisors(n)
                .into_iter()
                .map(|e| BigInt::from(mobius(n / e)) * &numbers[e as usize - 1])
                .sum()
        })
        .collect();
    LefschetzSequence {
        traces,
        numbers,
        periodic,
    }
}

/// One row of the combined degree / Lefschetz table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub deg_phi: BigInt,
    pub deg_phi_star: BigInt,
    pub lefschetz: BigInt,
    pub periodic_lefschetz: BigInt,
}

pub fn table(dim: u32, d: u64, n_max: u64) -> Vec<TableRow> {
    let lf = lefschetz(n_max);
    (1..=n_max)
        .map(|n| TableRow {
            n,
            deg_phi: deg_phi(dim, d, n),
            deg_phi_star: deg_phi_star(dim, d, n),
            lefschetz: lf.l(n).clone(),
            periodic_lefschetz: lf.periodic_number(n).clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn graph_classes() {
        assert_eq!(graph_class_coefficients(1, 2, 1), vec![b(2), b(1)]);
        assert_eq!(graph_class_coefficients(2, 1, 1), vec![b(1), b(1), b(1)]);
        assert_eq!(graph_class_coefficients(2, 2, 2), vec![b(16), b(4), b(1)]);
    }

    #[test]
    fn degrees() {
        assert_eq!(deg_phi(1, 2, 1), b(3));
        assert_eq!(deg_phi(2, 2, 2), b(21));
        assert_eq!(deg_phi_star(1, 2, 2), b(2));
        let row: Vec<BigInt> = (1..=3).map(|n| deg_phi(1, 2, n)).collect();
        assert_eq!(row, vec![b(3), b(5), b(9)]);
    }

    #[test]
    fn positivity() {
        assert_eq!(thm20_positivity(1, 2, 2).value, b(2));
        assert_eq!(thm20_positivity(1, 2, 2).status, Status::Pass);
        assert_eq!(thm20_positivity(3, 2, 5).status, Status::Pass);
        let degenerate = thm20_positivity(1, 1, 3);
        assert_eq!(degenerate.value, b(0));
        assert_eq!(degenerate.status, Status::Vacuous);
    }

    #[test]
    fn lefschetz_start() {
        let lf = lefschetz(2);
        assert_eq!(lf.l(1), &b(36));
        assert_eq!(lf.l(2), &b(216));
        assert_eq!(lf.periodic_number(1), &b(36));
        assert_eq!(lf.periodic_number(2), &b(180));
    }
}
