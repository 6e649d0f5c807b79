//! Exact coefficient fields: `Q`, `F_p` and `F_{p^k} = F_p[t]/(modulus)`.
//!
//! Finite field elements are stored as integer codes `sum c_i p^i` of their
//! coefficient vector in the basis `1, t, ..., t^{k-1}`. Multiplication goes
//! through discrete log tables, so fields are capped at [`MAX_FIELD_SIZE`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::fpx::{self, Fpx};
use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
    ExtensionField,
}

/// Raw value of a field element; meaningful only next to its descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Fin(u32),
}

struct Tables {
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    kind: FieldKind,
    p: u32,
    k: u32,
    modulus: Option<Fpx>,
    tables: Option<Tables>,
}

/// A coefficient field. Cheap to clone; equality compares the defining data.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<Inner>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldDescriptor {}

impl std::hash::Hash for FieldDescriptor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state);
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField => write!(f, "F_{}", self.0.p),
            FieldKind::ExtensionField => write!(f, "F_{}^{}", self.0.p, self.0.k),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn code_to_poly(mut code: u32, p: u32, k: u32) -> Fpx {
    let mut v = Vec::with_capacity(k as usize);
    for _ in 0..k {
        v.push(code % p);
        code /= p;
    }
    fpx::trim(&mut v);
    v
}

fn poly_to_code(v: &Fpx, p: u32) -> u32 {
    v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Lexicographically first monic irreducible of degree `k` over `F_p`, where
/// lower coefficients are enumerated as the integer `sum c_i p^i`.
fn first_irreducible(p: u32, k: u32) -> Result<Fpx> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if fpx::is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::NoIrreducibleFound { p, k })
}

fn build_tables(p: u32, k: u32, modulus: &Fpx) -> Tables {
    let q = p.pow(k);
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let one: Fpx = vec![1];
    let mut generator = None;
    for code in 1..q {
        let g = code_to_poly(code, p, k);
        if factors.iter().all(|&l| fpx::pow_mod(&g, order / l, modulus, p) != one) {
            generator = Some(g);
            break;
        }
    }
    let g = generator.expect("multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur: Fpx = vec![1];
    for i in 0..order as u32 {
        let c = poly_to_code(&cur, p);
        exp.push(c);
        log[c as usize] = i;
        cur = fpx::mul_mod(&cur, &g, modulus, p);
    }
    Tables { q, exp, log }
}

/// Build a field descriptor. `k` is ignored for the rationals.
pub fn field_make(kind: FieldKind, p: u64, k: u32) -> Result<FieldDescriptor> {
    match kind {
        FieldKind::Rationals => Ok(FieldDescriptor(Arc::new(Inner {
            kind,
            p: 0,
            k: 1,
            modulus: None,
            tables: None,
        }))),
        FieldKind::PrimeField | FieldKind::ExtensionField => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let k = if kind == FieldKind::PrimeField { 1 } else { k };
            if k == 0 {
                return Err(Error::InvalidQuery("extension degree must be >= 1".into()));
            }
            let size = (p as f64).powi(k as i32);
            if size > MAX_FIELD_SIZE as f64 {
                return Err(Error::FieldTooLarge { p: p as u32, k });
            }
            let p = p as u32;
            let (kind, modulus) = if k == 1 {
                (FieldKind::PrimeField, vec![0, 1])
            } else {
                (FieldKind::ExtensionField, first_irreducible(p, k)?)
            };
            let tables = build_tables(p, k, &modulus);
            Ok(FieldDescriptor(Arc::new(Inner {
                kind,
                p,
                k,
                modulus: if kind == FieldKind::ExtensionField {
                    Some(modulus)
                } else {
                    None
                },
                tables: Some(tables),
            })))
        }
    }
}

/// Multiplicative order of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(r) => Some(r),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(r) => write!(f, "{r}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        field_make(FieldKind::Rationals, 0, 1).expect("Q always constructs")
    }

    pub fn prime(p: u64) -> Result<Self> {
        field_make(FieldKind::PrimeField, p, 1)
    }

    pub fn extension(p: u64, k: u32) -> Result<Self> {
        field_make(FieldKind::ExtensionField, p, k)
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Characteristic; 0 for `Q`.
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.0.tables.is_some()
    }

    /// Number of elements, `None` for `Q`.
    pub fn size(&self) -> Option<u32> {
        self.0.tables.as_ref().map(|t| t.q)
    }

    fn tables(&self) -> &Tables {
        self.0.tables.as_ref().expect("finite field")
    }

    pub fn zero(&self) -> Elem {
        if self.is_finite() {
            Elem::Fin(0)
        } else {
            Elem::Rat(BigRational::zero())
        }
    }

    pub fn one(&self) -> Elem {
        if self.is_finite() {
            Elem::Fin(1)
        } else {
            Elem::Rat(BigRational::one())
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(c) => *c == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(c) => *c == 1,
            Elem::Rat(r) => r.is_one(),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        if self.is_finite() {
            let p = BigInt::from(self.0.p);
            let r = v.mod_floor(&p);
            Elem::Fin(r.to_u32().expect("residue fits"))
        } else {
            Elem::Rat(BigRational::from_integer(v.clone()))
        }
    }

    /// Image of a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &BigRational) -> Option<Elem> {
        if self.is_finite() {
            let num = self.from_bigint(r.numer());
            let den = self.from_bigint(r.denom());
            if self.is_zero(&den) {
                return None;
            }
            Some(self.div(&num, &den).ok()?)
        } else {
            Some(Elem::Rat(r.clone()))
        }
    }

    /// The generator `t` of an extension field (`F_p[t]/(modulus)`).
    pub fn generator(&self) -> Elem {
        match self.kind() {
            FieldKind::ExtensionField => Elem::Fin(self.0.p),
            _ => self.one(),
        }
    }

    fn add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut pw = 1;
        for _ in 0..self.0.k {
            out += ((a % p + b % p) % p) * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        out
    }

    fn neg_code(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            return (p - a % p) % p;
        }
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut pw = 1;
        for _ in 0..self.0.k {
            out += ((p - a % p) % p) * pw;
            a /= p;
            pw *= p;
        }
        out
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        let ord = t.q - 1;
        let s = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % ord as u64;
        t.exp[s as usize]
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.add_codes(*x, *y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(x) => Elem::Fin(self.neg_code(*x)),
            Elem::Rat(x) => Elem::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.add_codes(*x, self.neg_code(*y))),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.mul_codes(*x, *y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Fin(0) => Err(Error::ZeroElement),
            Elem::Fin(x) => {
                let t = self.tables();
                let ord = t.q - 1;
                let l = t.log[*x as usize];
                Ok(Elem::Fin(t.exp[((ord - l) % ord) as usize]))
            }
            Elem::Rat(x) => {
                if x.is_zero() {
                    Err(Error::ZeroElement)
                } else {
                    Ok(Elem::Rat(x.recip()))
                }
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e` for a signed exponent; negative powers of zero fail.
    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -e);
        }
        match a {
            Elem::Fin(x) => {
                if *x == 0 {
                    return Ok(Elem::Fin(if e == 0 { 1 } else { 0 }));
                }
                let t = self.tables();
                let ord = (t.q - 1) as u64;
                let l = t.log[*x as usize] as u64;
                let s = (l as u128 * e as u128 % ord as u128) as usize;
                Ok(Elem::Fin(t.exp[s]))
            }
            Elem::Rat(x) => Ok(Elem::Rat(num_traits::pow(x.clone(), e as usize))),
        }
    }

    /// Integer multiple `n * a`.
    pub fn scale_int(&self, a: &Elem, n: &BigInt) -> Elem {
        let c = self.from_bigint(n);
        self.mul(a, &c)
    }

    pub fn mult_order(&self, a: &Elem) -> Result<Order> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        match a {
            Elem::Fin(x) => {
                let t = self.tables();
                let ord = (t.q - 1) as u64;
                let l = t.log[*x as usize] as u64;
                Ok(Order::Finite(ord / ord.gcd(&l)))
            }
            Elem::Rat(r) => {
                if r.is_one() {
                    Ok(Order::Finite(1))
                } else if (-r).is_one() {
                    Ok(Order::Finite(2))
                } else {
                    Ok(Order::Infinite)
                }
            }
        }
    }

    /// Degree over `F_p` of the smallest subfield containing `a`.
    pub fn element_degree(&self, a: &Elem) -> u32 {
        match a {
            Elem::Rat(_) => 1,
            Elem::Fin(0) => 1,
            Elem::Fin(x) => {
                let t = self.tables();
                let ord = (t.q - 1) as u64;
                let l = t.log[*x as usize] as u64;
                let p = self.0.p as u64;
                let k = self.0.k;
                (1..=k)
                    .filter(|d| k.is_multiple_of(*d))
                    .find(|&d| (l as u128 * (p.pow(d) as u128 - 1)).is_multiple_of(ord as u128))
                    .unwrap_or(k)
            }
        }
    }

    /// All elements, in code order. Panics for `Q`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        let q = self.size().expect("finite field");
        (0..q).map(Elem::Fin)
    }

    /// Coefficient vector in the basis `1, t, ..., t^{k-1}`.
    pub fn coefficients(&self, a: &Elem) -> Vec<u32> {
        match a {
            Elem::Fin(c) => {
                let mut v = Vec::with_capacity(self.0.k as usize);
                let mut c = *c;
                for _ in 0..self.0.k {
                    v.push(c % self.0.p);
                    c /= self.0.p;
                }
                v
            }
            Elem::Rat(_) => panic!("rationals have no F_p coordinates"),
        }
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        let p = self.0.p;
        let mut acc = self.zero();
        let mut power = self.one();
        let t = self.generator();
        for &c in coeffs {
            let term = self.mul(&power, &Elem::Fin(c % p));
            acc = self.add(&acc, &term);
            power = self.mul(&power, &t);
        }
        acc
    }

    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Fin(c) => {
                if self.0.k == 1 {
                    return c.to_string();
                }
                let coeffs = self.coefficients(a);
                let mut parts = Vec::new();
                for (i, &ci) in coeffs.iter().enumerate().rev() {
                    if ci == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "t".to_string(),
                        _ => format!("t^{i}"),
                    };
                    parts.push(match (ci, i) {
                        (_, 0) => ci.to_string(),
                        (1, _) => mono,
                        _ => format!("{ci}*{mono}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
        }
    }

    /// Parse `"3"`, `"-2/5"` (rationals, or reduced mod p) or a polynomial in
    /// the extension generator such as `"2*t^2+t+1"`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        if !s.contains('t') {
            let r = parse_rational(&s)?;
            return self
                .from_rational(&r)
                .ok_or_else(|| Error::Parse(format!("denominator of {s} vanishes")));
        }
        if !self.is_finite() {
            return Err(Error::Parse(format!("'{s}': t is only defined in extension fields")));
        }
        let mut acc = self.zero();
        for (sign, term) in split_terms(&s) {
            let (coef, power) = match term.find('t') {
                None => (term.as_str(), 0i64),
                Some(pos) => {
                    let coef = term[..pos].trim_end_matches('*');
                    let rest = &term[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.trim_start_matches('^')
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?
                    };
                    (coef, power)
                }
            };
            let c = if coef.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef)?
            };
            let c = self
                .from_rational(&c)
                .ok_or_else(|| Error::Parse(format!("denominator of {coef} vanishes")))?;
            let tp = self.pow(&self.generator(), power)?;
            let mut term_val = self.mul(&c, &tp);
            if sign < 0 {
                term_val = self.neg(&term_val);
            }
            acc = self.add(&acc, &term_val);
        }
        Ok(acc)
    }

    /// Embedding of `self` into `target`, which must have the same characteristic
    /// and a degree divisible by ours.
    pub fn embedding_into(&self, target: &FieldDescriptor) -> Result<Embedding> {
        if self == target {
            return Ok(Embedding {
                source: self.clone(),
                target: target.clone(),
                gen_image: target.generator(),
            });
        }
        if !self.is_finite()
            || !target.is_finite()
            || self.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(self.degree())
        {
            return Err(Error::FieldMismatch);
        }
        let gen_image = match &self.0.modulus {
            None => target.one(),
            Some(m) => {
                let root = target
                    .elements()
                    .find(|x| {
                        let mut acc = target.zero();
                        for &c in m.iter().rev() {
                            acc = target.add(&target.mul(&acc, x), &Elem::Fin(c));
                        }
                        target.is_zero(&acc)
                    })
                    .ok_or(Error::FieldMismatch)?;
                root
            }
        };
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            gen_image,
        })
    }
}

fn split_terms(s: &str) -> Vec<(i32, String)> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') && prev != Some('/') {
            out.push((sign, std::mem::take(&mut cur)));
            sign = if ch == '-' { -1 } else { 1 };
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    out.push((sign, cur));
    out
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.parse().map_err(|_| bad())?;
            let d: BigInt = b.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Field embedding `F_{p^k} -> F_{p^{km}}` determined by the image of `t`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldDescriptor,
    target: FieldDescriptor,
    gen_image: Elem,
}

impl Embedding {
    pub fn source(&self) -> &FieldDescriptor {
        &self.source
    }

    pub fn target(&self) -> &FieldDescriptor {
        &self.target
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        if self.source == self.target {
            return a.clone();
        }
        let t = &self.target;
        let coeffs = self.source.coefficients(a);
        let mut acc = t.zero();
        for &c in coeffs.iter().rev() {
            acc = t.add(&t.mul(&acc, &self.gen_image), &Elem::Fin(c));
        }
        acc
    }

    /// Inverse on the image, by search over the source field.
    pub fn project(&self, b: &Elem) -> Option<Elem> {
        if self.source == self.target {
            return Some(b.clone());
        }
        self.source.elements().find(|a| &self.apply(a) == b)
    }
}

/// Field element bundled with its field, for API convenience.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub field: FieldDescriptor,
    pub value: Elem,
}

impl FieldElement {
    pub fn new(field: &FieldDescriptor, value: Elem) -> Self {
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn from_i64(field: &FieldDescriptor, v: i64) -> Self {
        Self::new(field, field.from_i64(v))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(Self::new(&self.field, self.field.pow(&self.value, e)?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(&self.value))
    }
}

/// Multiplicative order: least `r >= 1` with `a^r = 1`, or `Infinite` over `Q`
/// for anything other than `1` and `-1`.
pub fn mult_order(a: &FieldElement) -> Result<Order> {
    a.field.mult_order(&a.value)
}
