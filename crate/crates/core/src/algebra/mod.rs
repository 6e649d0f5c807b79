//! Fields, multivariate polynomials, truncated series and polynomial maps.

pub mod field;
pub(crate) mod fpx;
pub mod io;
pub mod map;
pub mod poly;
pub mod series;

pub use field::{field_make, mult_order, Elem, Embedding, FieldDescriptor, FieldElement, FieldKind, Order};
pub use io::{map_to_json, parse_map, parse_point, MapSpec};
pub use map::{affine_points, localize_at, projective_points, series_iterate, LocalGerm, MapForm, Point, PolyMap};
pub use poly::{LocalOrder, LocalOrderKind, Monomial, MultiPoly};
pub use series::{SeriesMap, TruncatedSeries};
