//! Exact degree sequences of iterated rational maps.
//!
//! ```
//! use degseq_core::{iterate_degrees, parse_map, Budget, Field};
//!
//! let f = parse_map("A3 (x + z*(y + x*z), y + x*z, z)", Field::Rational)?.map.projective()?;
//! let seq = iterate_degrees(&f, 30, Budget::default())?;
//! assert_eq!(seq.degrees[29], 61);
//! # Ok::<(), degseq_core::Error>(())
//! ```

#![no_std]

extern crate alloc;

mod coprime;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod gallery;
pub mod gcd;
pub mod growth;
pub mod maps;
mod mul;
pub mod poly;
pub mod text;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use gcd::{gcd, gcd_many};
pub use maps::{maps_equal, AffineMap, Composition, DominanceHint, ProjectiveMap, Reduced};
pub use poly::{Degree, Monomial, Polynomial};
pub use dynamics::{
    aut1_certificate, iterate_degrees, monoid_ball_degrees, period_detect, Aut1Certificate, BallDegrees,
    Budget, DegreeSequence, Period, Strategy, Truncation, WordBall,
};
pub use growth::{
    classify_degrees, classify_growth, count_low_degree_iterates, degaut_bound, dpol_estimate,
    finite_field_count_bound, lambda_estimate, threshold_check, DegautBound, Dim2Category, GrowthConfig,
    GrowthLabel, GrowthReport,
};
pub use text::{format_polynomial, parse_map, parse_polynomial, MapExpression, MapKind, ParsedMap};
