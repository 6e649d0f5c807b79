//! Seeded random affine maps for property checks, and the periodic points
//! they have over the base field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{affine_points, projective_points, FieldDescriptor, MapForm, Monomial, MultiPoly, Point, PolyMap};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: usize,
    pub primes: Vec<u64>,
    pub max_vars: usize,
    pub max_degree: u32,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 1,
            count: 10,
            primes: vec![2, 3, 5],
            max_vars: 2,
            max_degree: 3,
        }
    }
}

/// Dense random map: every monomial of degree `<= degree` gets a uniform
/// coefficient; with `fix_origin` the constant terms are zero.
pub fn random_affine_map<R: Rng>(
    rng: &mut R,
    field: &FieldDescriptor,
    nvars: usize,
    degree: u32,
    fix_origin: bool,
) -> Result<PolyMap> {
    let q = field.size().expect("finite field") as u64;
    let monos = Monomial::below_degree(nvars, degree + 1);
    let mut comps = Vec::with_capacity(nvars);
    for _ in 0..nvars {
        let mut c = MultiPoly::zero(field, nvars);
        for m in &monos {
            if fix_origin && m.degree() == 0 {
                continue;
            }
            let code = rng.gen_range(0..q);
            let v = field.elements().nth(code as usize).expect("code below field size");
            c.add_term(m.clone(), v);
        }
        comps.push(c);
    }
    PolyMap::affine(comps)
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub config: CorpusConfig,
    pub maps: Vec<PolyMap>,
}

impl Corpus {
    /// The same configuration always yields the same maps.
    pub fn generate(config: &CorpusConfig) -> Result<Corpus> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut maps = Vec::with_capacity(config.count);
        for _ in 0..config.count {
            let p = config.primes[rng.gen_range(0..config.primes.len())];
            let field = FieldDescriptor::prime(p)?;
            let b = rng.gen_range(1..=config.max_vars);
            let d = rng.gen_range(1..=config.max_degree);
            let fix_origin = rng.gen_bool(0.5);
            maps.push(random_affine_map(&mut rng, &field, b, d, fix_origin)?);
        }
        Ok(Corpus {
            config: config.clone(),
            maps,
        })
    }
}

/// Points over the base field of primitive period at most `n_max`.
pub fn periodic_points(map: &PolyMap, n_max: u64) -> Result<Vec<(Point, u64)>> {
    let field = map.field();
    let points: Vec<Point> = match map.form() {
        MapForm::Affine => affine_points(field, map.nvars()).collect(),
        MapForm::Projective => projective_points(field, map.dimension()).collect(),
    };
    let mut out = Vec::new();
    for p in points {
        if let Some(m) = map.period(&p, n_max)? {
            out.push((p, m));
        }
    }
    Ok(out)
}
