//! Topology of n-symmetry direction fields on triangle meshes.
//!
//! Fields live on faces as one representative angle per face plus an
//! integer period jump per interior edge. Singularity indices and turning
//! numbers are computed in floating point and snapped to exact multiples of
//! `1/n`, which makes the Poincaré–Hopf and boundary turning identities
//! exact equalities between [`Rational`]s.
//!
//! ```
//! use fieldtopo::{shapes, Surface, theorems};
//!
//! let surface = Surface::new(shapes::icosphere(2)).unwrap();
//! let field = surface.random_field(4, 7, 2).unwrap();
//! let report = theorems::check_poincare_hopf(&surface, &field).unwrap();
//! assert!(report.verdict);
//! assert_eq!(report.lhs, fieldtopo::Rational::from_integer(2));
//! ```

pub mod field;
pub mod mesh;
pub mod rational;
pub mod shapes;
pub mod theorems;

pub use field::{index_from_turning, DirectionField, FieldError, SingularityKind, SingularityRecord, Surface};
pub use mesh::{Cycle, CycleKind, FrameAtlas, Mesh, MeshError};
pub use rational::Rational;

/// Schema tag carried by every JSON report.
pub const REPORT_SCHEMA: &str = "fieldtopo-report/1";
