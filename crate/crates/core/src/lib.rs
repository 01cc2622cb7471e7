//! Enumeration and classification of marked graph diagrams (ch-diagrams) of
//! surface-links in 4-space.
//!
//! The pipeline runs shadows → decorated EPD codes → admissibility (both
//! resolutions trivial) → Yoshikawa move detection → base-surface classification.

pub mod diagram;
pub mod epd;
pub mod family;
pub mod invariants;
pub mod moves;
pub mod pipeline;
pub mod planar_map;
pub mod poly;
pub mod render;
pub mod resolution;
pub mod shadows;
pub mod surface;

pub use diagram::{Diagram, VertexKind};
pub use epd::{CrossingRecord, EpdCode, EpdError, Name};
pub use planar_map::{FaceCycle, PlaneMap};
pub use poly::LaurentPolynomial;
pub use moves::{is_hard, Move};
pub use pipeline::{run_enumeration, DiagramRecord, RunConfig};
pub use resolution::is_admissible;
pub use shadows::{enumerate_shadows, ShadowSet};
pub use surface::SurfaceClass;
