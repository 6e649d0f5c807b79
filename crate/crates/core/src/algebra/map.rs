//! Polynomial self-maps of affine and projective space, points, and local
//! germs of a map at a point.

use std::fmt;

use super::field::{Elem, Embedding, FieldDescriptor};
use super::poly::{Monomial, MultiPoly};
use super::series::{SeriesMap, TruncatedSeries};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapForm {
    Affine,
    Projective,
}

/// A self-map given by `b` polynomials in `b` variables (affine) or by
/// `N+1` forms of a common degree in `N+1` variables (projective).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    field: FieldDescriptor,
    form: MapForm,
    components: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn affine(components: Vec<MultiPoly>) -> Result<Self> {
        Self::build(MapForm::Affine, components)
    }

    pub fn projective(components: Vec<MultiPoly>) -> Result<Self> {
        let map = Self::build(MapForm::Projective, components)?;
        let mut degree = None;
        for c in &map.components {
            if !c.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if let Some(d) = c.total_degree() {
                if degree.is_some_and(|e| e != d) {
                    return Err(Error::NotHomogeneous);
                }
                degree = Some(d);
            }
        }
        match degree {
            Some(d) if d >= 1 => Ok(map),
            _ => Err(Error::NotHomogeneous),
        }
    }

    fn build(form: MapForm, components: Vec<MultiPoly>) -> Result<Self> {
        let n = components.len();
        let first = components
            .first()
            .ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let field = first.field().clone();
        for c in &components {
            if c.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.nvars(),
                });
            }
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(PolyMap {
            field,
            form,
            components,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn form(&self) -> MapForm {
        self.form
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// Number of ambient coordinates (`b` for affine, `N+1` for projective).
    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    /// Dimension of the space acted on.
    pub fn dimension(&self) -> usize {
        match self.form {
            MapForm::Affine => self.nvars(),
            MapForm::Projective => self.nvars() - 1,
        }
    }

    /// Algebraic degree: common degree of the forms, or the max total degree.
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(|c| c.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if self.form != inner.form || self.nvars() != inner.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: inner.nvars(),
            });
        }
        if self.field != inner.field {
            return Err(Error::FieldMismatch);
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components, None))
            .collect();
        Ok(PolyMap {
            field: self.field.clone(),
            form: self.form,
            components: comps,
        })
    }

    /// `n`-th iterate, `n >= 1`.
    pub fn iterate(&self, n: u64) -> Result<PolyMap> {
        if n == 0 {
            return Err(Error::InvalidQuery("iterate needs n >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn base_change(&self, emb: &Embedding) -> Result<PolyMap> {
        if emb.source() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(PolyMap {
            field: emb.target().clone(),
            form: self.form,
            components: self
                .components
                .iter()
                .map(|c| c.map_coefficients(emb.target(), |e| emb.apply(e)))
                .collect(),
        })
    }

    /// Image of a point; errors if the point is over another field or the
    /// map is undefined there.
    pub fn apply(&self, point: &Point) -> Result<Point> {
        if point.field != self.field {
            return Err(Error::FieldMismatch);
        }
        if point.coords.len() != self.nvars() || point.projective != (self.form == MapForm::Projective) {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: point.coords.len(),
            });
        }
        let coords: Vec<Elem> = self.components.iter().map(|c| c.eval(&point.coords)).collect();
        match self.form {
            MapForm::Affine => Ok(Point::affine(&self.field, coords)),
            MapForm::Projective => Point::projective(&self.field, coords),
        }
    }

    /// Primitive period of `point` if it is at most `bound`.
    pub fn period(&self, point: &Point, bound: u64) -> Result<Option<u64>> {
        let mut cur = point.clone();
        for i in 1..=bound {
            cur = self.apply(&cur)?;
            if &cur == point {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Local germ at `point`: coordinates centered at the point in its chart,
    /// mapped to coordinates centered at the image in the image's chart.
    pub fn germ_at(&self, point: &Point, truncation: u32) -> Result<LocalGerm> {
        let image = self.apply(point)?;
        match self.form {
            MapForm::Affine => {
                let b = self.nvars();
                let shifted: Vec<MultiPoly> = (0..b)
                    .map(|i| {
                        MultiPoly::var(&self.field, b, i).add(&MultiPoly::constant(
                            &self.field,
                            b,
                            point.coords[i].clone(),
                        ))
                    })
                    .collect();
                let comps = self
                    .components
                    .iter()
                    .zip(&image.coords)
                    .map(|(c, v)| {
                        c.substitute(&shifted, Some(truncation))
                            .sub(&MultiPoly::constant(&self.field, b, v.clone()))
                    })
                    .collect();
                Ok(LocalGerm {
                    series: SeriesMap::new(comps, truncation)?,
                    source_chart: None,
                    target: image,
                    target_chart: None,
                })
            }
            MapForm::Projective => {
                let n1 = self.nvars();
                let b = n1 - 1;
                let src_chart = point.chart();
                let tgt_chart = image.chart();
                let mut subs = Vec::with_capacity(n1);
                let mut var = 0;
                for j in 0..n1 {
                    if j == src_chart {
                        subs.push(MultiPoly::constant(&self.field, b, self.field.one()));
                    } else {
                        subs.push(MultiPoly::var(&self.field, b, var).add(&MultiPoly::constant(
                            &self.field,
                            b,
                            point.coords[j].clone(),
                        )));
                        var += 1;
                    }
                }
                let raw: Vec<MultiPoly> = self
                    .components
                    .iter()
                    .map(|c| c.substitute(&subs, Some(truncation)))
                    .collect();
                let denom = TruncatedSeries::new(raw[tgt_chart].clone(), truncation);
                if self.field.is_zero(&denom.poly().constant_term()) {
                    return Err(Error::IndeterminatePoint);
                }
                let denom_inv = denom.inverse()?;
                let mut comps = Vec::with_capacity(b);
                for (j, r) in raw.iter().enumerate() {
                    if j == tgt_chart {
                        continue;
                    }
                    let ratio = TruncatedSeries::new(r.clone(), truncation).mul(&denom_inv);
                    comps.push(
                        ratio
                            .into_poly()
                            .sub(&MultiPoly::constant(&self.field, b, image.coords[j].clone())),
                    );
                }
                Ok(LocalGerm {
                    series: SeriesMap::new(comps, truncation)?,
                    source_chart: Some(src_chart),
                    target: image,
                    target_chart: Some(tgt_chart),
                })
            }
        }
    }

    /// Germ of `self^m` at a point of period `m`, composed along the orbit.
    pub fn cycle_germ(&self, point: &Point, m: u64, truncation: u32) -> Result<SeriesMap> {
        let mut cur = point.clone();
        let mut acc: Option<SeriesMap> = None;
        for _ in 0..m {
            let g = self.germ_at(&cur, truncation)?;
            acc = Some(match acc {
                None => g.series.clone(),
                Some(prev) => g.series.compose(&prev)?,
            });
            cur = g.target;
        }
        if &cur != point {
            return Err(Error::InvalidQuery(format!("point does not have period dividing {m}")));
        }
        Ok(acc.expect("m >= 1"))
    }

    /// Brute-force morphism check for projective maps over a finite field:
    /// no point over `F_{q^s}`, `s <= ext_bound`, is a common zero.
    pub fn is_morphism_up_to(&self, ext_bound: u32) -> Result<bool> {
        if self.form != MapForm::Projective {
            return Ok(true);
        }
        if !self.field.is_finite() {
            return Err(Error::UnsupportedField("morphism check needs a finite field".into()));
        }
        for s in 1..=ext_bound {
            let big = FieldDescriptor::extension(self.field.characteristic() as u64, self.field.degree() * s)?;
            let emb = self.field.embedding_into(&big)?;
            let m = self.base_change(&emb)?;
            for pt in projective_points(&big, self.dimension()) {
                if m.components.iter().all(|c| big.is_zero(&c.eval(&pt.coords))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Result of [`PolyMap::germ_at`].
#[derive(Clone, Debug)]
pub struct LocalGerm {
    pub series: SeriesMap,
    pub source_chart: Option<usize>,
    pub target: Point,
    pub target_chart: Option<usize>,
}

/// Local series of a projective map at a point, together with the chart
/// used (the index of the coordinate set to 1).
pub fn localize_at(map: &PolyMap, point: &Point, truncation: u32) -> Result<(Vec<TruncatedSeries>, usize)> {
    let g = map.germ_at(point, truncation)?;
    Ok((g.series.to_series(), g.source_chart.unwrap_or(0)))
}

/// `f^(n)` of an affine map fixing the origin, modulo `m^T`.
pub fn series_iterate(map: &PolyMap, n: u64, truncation: u32) -> Result<Vec<TruncatedSeries>> {
    if map.form() != MapForm::Affine {
        return Err(Error::InvalidQuery("series_iterate expects an affine map".into()));
    }
    if truncation == 0 {
        return Err(Error::InvalidQuery("truncation must be >= 1".into()));
    }
    if map
        .components()
        .iter()
        .any(|c| !map.field().is_zero(&c.constant_term()))
    {
        return Err(Error::NonzeroConstantTerm);
    }
    let germ = SeriesMap::new(map.components().to_vec(), truncation)?;
    Ok(germ.iterate(n)?.to_series())
}

/// A point of `A^b` or `P^N`; projective points are kept normalized with
/// first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub field: FieldDescriptor,
    pub coords: Vec<Elem>,
    pub projective: bool,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| self.field.format(c)).collect();
        if self.projective {
            write!(f, "[{}]", parts.join(":"))
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

impl Point {
    pub fn affine(field: &FieldDescriptor, coords: Vec<Elem>) -> Self {
        Point {
            field: field.clone(),
            coords,
            projective: false,
        }
    }

    pub fn origin(field: &FieldDescriptor, b: usize) -> Self {
        Self::affine(field, vec![field.zero(); b])
    }

    pub fn projective(field: &FieldDescriptor, coords: Vec<Elem>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .ok_or(Error::IndeterminatePoint)?
            .clone();
        let inv = field.inv(&lead)?;
        Ok(Point {
            field: field.clone(),
            coords: coords.iter().map(|c| field.mul(c, &inv)).collect(),
            projective: true,
        })
    }

    /// Chart index: first nonzero coordinate (projective), 0 otherwise.
    pub fn chart(&self) -> usize {
        if !self.projective {
            return 0;
        }
        self.coords
            .iter()
            .position(|c| !self.field.is_zero(c))
            .expect("normalized projective point")
    }

    /// Degree over `F_p` of the field generated by the coordinates.
    pub fn field_degree(&self) -> u32 {
        self.coords
            .iter()
            .map(|c| self.field.element_degree(c))
            .fold(1, num_integer::lcm)
    }

    pub fn embed(&self, emb: &Embedding) -> Point {
        Point {
            field: emb.target().clone(),
            coords: self.coords.iter().map(|c| emb.apply(c)).collect(),
            projective: self.projective,
        }
    }
}

/// All points of `A^b` over a finite field, in code order.
pub fn affine_points(field: &FieldDescriptor, b: usize) -> impl Iterator<Item = Point> + '_ {
    let q = field.size().expect("finite field") as u64;
    let total = q.pow(b as u32);
    (0..total).map(move |mut idx| {
        let mut coords = Vec::with_capacity(b);
        for _ in 0..b {
            coords.push(Elem::Fin((idx % q) as u32));
            idx /= q;
        }
        coords.reverse();
        Point::affine(field, coords)
    })
}

/// All points of `P^N` over a finite field, each once in normalized form.
pub fn projective_points(field: &FieldDescriptor, n: usize) -> impl Iterator<Item = Point> + '_ {
    let q = field.size().expect("finite field") as u64;
    (0..=n).flat_map(move |lead| {
        // coordinates before `lead` are 0, coordinate `lead` is 1
        let free = n - lead;
        let total = q.pow(free as u32);
        (0..total).map(move |mut idx| {
            let mut coords = vec![Elem::Fin(0); n + 1];
            coords[lead] = Elem::Fin(1);
            for j in (lead + 1..=n).rev() {
                coords[j] = Elem::Fin((idx % q) as u32);
                idx /= q;
            }
            Point {
                field: field.clone(),
                coords,
                projective: true,
            }
        })
    })
}

/// Monomial helper used when writing maps by hand.
pub fn term(field: &FieldDescriptor, exps: &[u32], c: i64) -> (Monomial, Elem) {
    (Monomial(exps.to_vec()), field.from_i64(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    #[test]
    fn iterate_monomial_map() {
        let z2 = PolyMap::affine(vec![MultiPoly::from_int_terms(&q(), 1, &[(&[2], 1)])]).unwrap();
        let it = z2.iterate(3).unwrap();
        assert_eq!(it.components()[0], MultiPoly::from_int_terms(&q(), 1, &[(&[8], 1)]));
    }

    #[test]
    fn projective_degree_multiplies() {
        let f = PolyMap::projective(vec![
            MultiPoly::from_int_terms(&q(), 2, &[(&[2, 0], 1), (&[0, 2], 1)]),
            MultiPoly::from_int_terms(&q(), 2, &[(&[0, 2], 1)]),
        ])
        .unwrap();
        assert_eq!(f.iterate(2).unwrap().degree(), 4);
        assert!(f.iterate(2).unwrap().components().iter().all(|c| c.is_homogeneous()));
    }

    #[test]
    fn projective_counts() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        assert_eq!(projective_points(&f5, 1).count(), 6);
        assert_eq!(projective_points(&f5, 2).count(), 31);
        assert_eq!(affine_points(&f5, 2).count(), 25);
    }

    #[test]
    fn inhomogeneous_projective_rejected() {
        let r = PolyMap::projective(vec![
            MultiPoly::from_int_terms(&q(), 2, &[(&[2, 0], 1), (&[0, 1], 1)]),
            MultiPoly::from_int_terms(&q(), 2, &[(&[0, 2], 1)]),
        ]);
        assert_eq!(r.unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn indeterminate_point() {
        // [x*y : y^2] vanishes at [1:0]
        let f = PolyMap::projective(vec![
            MultiPoly::from_int_terms(&q(), 2, &[(&[1, 1], 1)]),
            MultiPoly::from_int_terms(&q(), 2, &[(&[0, 2], 1)]),
        ])
        .unwrap();
        let p = Point::projective(&q(), vec![q().one(), q().zero()]).unwrap();
        assert_eq!(f.apply(&p).unwrap_err(), Error::IndeterminatePoint);
    }
}
