//! Linear data at a periodic point: eigenvalues of the Jacobian of `φ^m`,
//! their Jordan blocks and multiplicative orders, plus the closed-form
//! coefficients of a monomial under iteration of a Jordan block.

pub mod linalg;
mod query;

pub use query::{
    lemma11_case, lemma11_conditions, lemma19_coefficient, LeastMonomialQuery, Lemma11Case, Lemma11Verdict,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Elem, FieldDescriptor, Order, Point, PolyMap};
use crate::error::{Error, Result};
use crate::localmult::map_over;
use linalg::Matrix;

/// Largest extension searched for eigenvalues, in field elements.
const MAX_SEARCH_FIELD: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    /// Element of [`SpectralData::splitting`].
    pub value: Elem,
    pub multiplicity: usize,
    /// Jordan block sizes, largest first.
    pub blocks: Vec<usize>,
    /// Multiplicative order; `None` for the eigenvalue zero.
    pub order: Option<Order>,
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub base: FieldDescriptor,
    pub matrix: Matrix,
    /// Characteristic polynomial over the base field, low degree first.
    pub charpoly: Vec<Elem>,
    /// Field containing every eigenvalue.
    pub splitting: FieldDescriptor,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl SpectralData {
    /// Finite multiplicative orders of the nonzero eigenvalues, with repetition
    /// by multiplicity.
    pub fn finite_orders(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for e in &self.eigenvalues {
            if let Some(Order::Finite(r)) = e.order {
                out.extend(std::iter::repeat_n(r, e.multiplicity));
            }
        }
        out
    }

    /// Whether some eigenvalue satisfies `λ^n = 1`.
    pub fn has_eigenvalue_root_of_unity(&self, n: u64) -> bool {
        self.eigenvalues.iter().any(|e| match e.order {
            Some(Order::Finite(r)) => n.is_multiple_of(r),
            _ => false,
        })
    }

    pub fn format_eigenvalue(&self, e: &Eigenvalue) -> String {
        self.splitting.format(&e.value)
    }
}

/// Eigenvalue analysis of a square matrix over `field`.
pub fn spectral_data(field: &FieldDescriptor, matrix: Matrix) -> Result<SpectralData> {
    let b = matrix.len();
    if matrix.iter().any(|r| r.len() != b) {
        return Err(Error::DimensionMismatch {
            expected: b,
            got: matrix.iter().map(|r| r.len()).find(|&l| l != b).unwrap_or(0),
        });
    }
    let charpoly = linalg::charpoly(field, &matrix);
    let (splitting, roots) = if field.is_finite() {
        finite_roots(field, &charpoly)?
    } else {
        (field.clone(), rational_roots(field, &charpoly)?)
    };
    let big = if &splitting == field {
        matrix.clone()
    } else {
        let emb = field.embedding_into(&splitting)?;
        linalg::map_matrix(&matrix, |x| emb.apply(x))
    };
    let mut eigenvalues = Vec::new();
    for (value, multiplicity) in roots {
        let blocks = jordan_blocks(&splitting, &big, &value, multiplicity);
        let order = if splitting.is_zero(&value) {
            None
        } else {
            Some(splitting.mult_order(&value)?)
        };
        eigenvalues.push(Eigenvalue {
            value,
            multiplicity,
            blocks,
            order,
        });
    }
    Ok(SpectralData {
        base: field.clone(),
        matrix,
        charpoly,
        splitting,
        eigenvalues,
    })
}

/// Block sizes for `λ` from the ranks of `(A - λI)^j`.
pub fn jordan_blocks(field: &FieldDescriptor, a: &Matrix, lambda: &Elem, multiplicity: usize) -> Vec<usize> {
    let b = a.len();
    let shifted = linalg::shift(field, a, lambda);
    let mut ranks = vec![b];
    let mut power = linalg::identity(field, b);
    for _ in 0..multiplicity {
        power = linalg::mat_mul(field, &power, &shifted);
        ranks.push(linalg::rank(field, &power));
    }
    // at_least[j] = number of blocks of size >= j
    let at_least: Vec<usize> = (1..=multiplicity).map(|j| ranks[j - 1] - ranks[j]).collect();
    let mut blocks = Vec::new();
    for j in 1..=multiplicity {
        let exactly = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(j, exactly));
    }
    blocks.sort_unstable_by(|x, y| y.cmp(x));
    blocks
}

fn multiplicity_of(field: &FieldDescriptor, coeffs: &[Elem], root: &Elem) -> (usize, Vec<Elem>) {
    let mut cur = coeffs.to_vec();
    let mut k = 0;
    while cur.len() > 1 && field.is_zero(&linalg::eval_poly(field, &cur, root)) {
        cur = linalg::deflate(field, &cur, root);
        k += 1;
    }
    (k, cur)
}

/// Roots over the smallest extension `F_{q^s}` in which the polynomial splits.
fn finite_roots(field: &FieldDescriptor, charpoly: &[Elem]) -> Result<(FieldDescriptor, Vec<(Elem, usize)>)> {
    let b = charpoly.len() - 1;
    let p = field.characteristic() as u64;
    let k = field.degree();
    let mut s = 1u32;
    loop {
        let size = p.checked_pow(k * s).unwrap_or(u64::MAX);
        if size > MAX_SEARCH_FIELD {
            return Err(Error::UnsupportedField(format!(
                "characteristic polynomial does not split over F_{p}^{} or below",
                k * (s - 1)
            )));
        }
        let big = FieldDescriptor::extension(p, k * s)?;
        let emb = field.embedding_into(&big)?;
        let mut cur: Vec<Elem> = charpoly.iter().map(|c| emb.apply(c)).collect();
        let mut roots = Vec::new();
        let mut total = 0;
        for x in big.elements() {
            if cur.len() == 1 {
                break;
            }
            let (mult, rest) = multiplicity_of(&big, &cur, &x);
            if mult > 0 {
                roots.push((x, mult));
                total += mult;
                cur = rest;
            }
        }
        if total == b {
            return Ok((big, roots));
        }
        s += 1;
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Rational roots via the rational root theorem; fails if some root is irrational.
fn rational_roots(field: &FieldDescriptor, charpoly: &[Elem]) -> Result<Vec<(Elem, usize)>> {
    let b = charpoly.len() - 1;
    let mut cur = charpoly.to_vec();
    let mut roots = Vec::new();
    let zero = field.zero();
    let (m0, rest) = multiplicity_of(field, &cur, &zero);
    if m0 > 0 {
        roots.push((zero, m0));
        cur = rest;
    }
    if cur.len() > 1 {
        let rats: Vec<num_rational::BigRational> = cur
            .iter()
            .map(|c| match c {
                Elem::Rat(r) => r.clone(),
                Elem::Fin(_) => unreachable!("rational field"),
            })
            .collect();
        let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|r| (r * &den).to_integer()).collect();
        let lead = ints.last().expect("nonconstant");
        let candidates: Vec<num_rational::BigRational> = {
            let mut v = Vec::new();
            for d in divisors(&ints[0]) {
                for e in divisors(lead) {
                    let r = num_rational::BigRational::new(d.clone(), e);
                    v.push(r.clone());
                    v.push(-r);
                }
            }
            v.sort();
            v.dedup();
            v
        };
        for r in candidates {
            let x = Elem::Rat(r);
            let (m, rest) = multiplicity_of(field, &cur, &x);
            if m > 0 {
                roots.push((x, m));
                cur = rest;
            }
        }
    }
    let total: usize = roots.iter().map(|r| r.1).sum();
    if total != b {
        return Err(Error::UnsupportedField(
            "characteristic polynomial has irrational roots".into(),
        ));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Jacobian matrix of `φ^m` at a point of period dividing `m`, in the
/// affine chart used by [`PolyMap::germ_at`]; entry `[i][j]` is `∂φ^m_i/∂x_j`.
pub fn jacobian_matrix(map: &PolyMap, point: &Point, m: u64) -> Result<Matrix> {
    let map = map_over(map, &point.field)?;
    let germ = map.cycle_germ(point, m, 2)?;
    Ok(germ.linear_part())
}

/// Spectral data of `dφ^m_P` for a point of period `m`.
pub fn jacobian_at(map: &PolyMap, point: &Point, m: u64) -> Result<SpectralData> {
    let a = jacobian_matrix(map, point, m)?;
    spectral_data(&point.field, a)
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `p`-adic valuation of `n` (`0` when `p` is `0` or `1`).
pub fn p_valuation(n: u64, p: u64) -> u32 {
    if p < 2 || n == 0 {
        return 0;
    }
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiPoly;

    fn mat(f: &FieldDescriptor, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn jordan_block_of_one() {
        let f = FieldDescriptor::prime(5).unwrap();
        let sd = spectral_data(&f, mat(&f, &[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(sd.eigenvalues.len(), 1);
        assert_eq!(sd.eigenvalues[0].multiplicity, 2);
        assert_eq!(sd.eigenvalues[0].blocks, vec![2]);
        assert_eq!(sd.eigenvalues[0].order, Some(Order::Finite(1)));
    }

    #[test]
    fn diagonal_orders() {
        let f = FieldDescriptor::prime(5).unwrap();
        let sd = spectral_data(&f, mat(&f, &[&[2, 0], &[0, 3]])).unwrap();
        let orders: Vec<_> = sd.eigenvalues.iter().map(|e| e.order).collect();
        assert_eq!(orders, vec![Some(Order::Finite(4)), Some(Order::Finite(4))]);
    }

    #[test]
    fn rotation_needs_extension() {
        // x^2 + 1 has no root in F_3
        let f = FieldDescriptor::prime(3).unwrap();
        let sd = spectral_data(&f, mat(&f, &[&[0, 2], &[1, 0]])).unwrap();
        assert_eq!(sd.splitting.degree(), 2);
        assert_eq!(sd.eigenvalues.len(), 2);
        assert!(sd.eigenvalues.iter().all(|e| e.order == Some(Order::Finite(4))));
    }

    #[test]
    fn rational_multiplier() {
        let q = FieldDescriptor::rationals();
        let map = PolyMap::affine(vec![MultiPoly::from_int_terms(&q, 1, &[(&[1], -1), (&[2], 1)])]).unwrap();
        let sd = jacobian_at(&map, &Point::origin(&q, 1), 1).unwrap();
        assert_eq!(sd.eigenvalues[0].value, q.from_i64(-1));
        assert_eq!(sd.eigenvalues[0].order, Some(Order::Finite(2)));
    }

    #[test]
    fn irrational_eigenvalues_rejected() {
        let q = FieldDescriptor::rationals();
        let r = spectral_data(&q, mat(&q, &[&[0, 2], &[1, 0]]));
        assert!(matches!(r, Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn charpoly_matches_determinant() {
        let f = FieldDescriptor::prime(7).unwrap();
        let a = mat(&f, &[&[1, 2, 3], &[4, 5, 6], &[0, 1, 3]]);
        let cp = linalg::charpoly(&f, &a);
        for x in f.elements() {
            let shifted: Matrix = linalg::map_matrix(&linalg::shift(&f, &a, &x), |v| f.neg(v));
            assert_eq!(linalg::eval_poly(&f, &cp, &x), linalg::determinant(&f, &shifted));
        }
    }
}
