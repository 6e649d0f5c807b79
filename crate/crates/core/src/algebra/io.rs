//! JSON map descriptions and point strings.
//!
//! ```json
//! {"field": {"kind": "Fp", "p": 3, "k": 1}, "form": "affine", "vars": 2,
//!  "components": [[{"exps": [1, 0], "coeff": "1"}], [{"exps": [0, 1], "coeff": "2"}]]}
//! ```

use serde::{Deserialize, Serialize};

use super::field::{field_make, FieldDescriptor, FieldKind};
use super::map::{MapForm, Point, PolyMap};
use super::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default)]
    pub p: u64,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub field: FieldSpec,
    pub form: String,
    pub vars: usize,
    pub components: Vec<Vec<TermSpec>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldDescriptor> {
        let kind = match self.kind.as_str() {
            "Q" => FieldKind::Rationals,
            "Fp" => FieldKind::PrimeField,
            "Fq" => FieldKind::ExtensionField,
            other => return Err(Error::Parse(format!("unknown field kind '{other}'"))),
        };
        field_make(kind, self.p, self.k)
    }

    pub fn of(field: &FieldDescriptor) -> Self {
        let kind = match field.kind() {
            FieldKind::Rationals => "Q",
            FieldKind::PrimeField => "Fp",
            FieldKind::ExtensionField => "Fq",
        };
        FieldSpec {
            kind: kind.into(),
            p: field.characteristic() as u64,
            k: field.degree(),
        }
    }
}

impl MapSpec {
    pub fn build(&self) -> Result<PolyMap> {
        let field = self.field.build()?;
        if self.components.is_empty() {
            return Err(Error::Parse("map has no components".into()));
        }
        let mut comps = Vec::with_capacity(self.components.len());
        for terms in &self.components {
            let mut poly = MultiPoly::zero(&field, self.vars);
            for t in terms {
                if t.exps.len() != self.vars {
                    return Err(Error::Parse(format!(
                        "exponent vector {:?} has length {}, expected {}",
                        t.exps,
                        t.exps.len(),
                        self.vars
                    )));
                }
                poly.add_term(Monomial(t.exps.clone()), field.parse(&t.coeff)?);
            }
            comps.push(poly);
        }
        match self.form.as_str() {
            "affine" => PolyMap::affine(comps),
            "projective" => PolyMap::projective(comps),
            other => Err(Error::Parse(format!("unknown map form '{other}'"))),
        }
    }

    pub fn of(map: &PolyMap) -> Self {
        let field = map.field();
        MapSpec {
            field: FieldSpec::of(field),
            form: match map.form() {
                MapForm::Affine => "affine".into(),
                MapForm::Projective => "projective".into(),
            },
            vars: map.nvars(),
            components: map
                .components()
                .iter()
                .map(|c| {
                    let mut terms: Vec<TermSpec> = c
                        .terms()
                        .map(|(m, v)| TermSpec {
                            exps: m.0.clone(),
                            coeff: field.format(v),
                        })
                        .collect();
                    terms.sort_by(|a, b| a.exps.cmp(&b.exps));
                    terms
                })
                .collect(),
        }
    }
}

/// Reads a map from its JSON description.
pub fn parse_map(json: &str) -> Result<PolyMap> {
    let spec: MapSpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build()
}

pub fn map_to_json(map: &PolyMap) -> String {
    serde_json::to_string(&MapSpec::of(map)).expect("map spec serializes")
}

/// Reads a point of the map's domain. Coordinates are separated by commas
/// or colons and may be wrapped in `()` or `[]`; each is a field element
/// string, with `t` the generator of `field` when it is an extension.
pub fn parse_point(map: &PolyMap, field: &FieldDescriptor, s: &str) -> Result<Point> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let coords = inner
        .split([',', ':'])
        .map(|c| field.parse(c))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != map.nvars() {
        return Err(Error::Parse(format!(
            "point '{s}' has {} coordinates, expected {}",
            coords.len(),
            map.nvars()
        )));
    }
    match map.form() {
        MapForm::Affine => Ok(Point::affine(field, coords)),
        MapForm::Projective => Point::projective(field, coords),
    }
}
