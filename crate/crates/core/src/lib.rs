//! Derived-equivalence invariants for graded surface algebras, with a focus on
//! the torus with one boundary component.
//!
//! Triangulations are read from JSON (see [`io`]), turned into quivers with
//! potential, cut into gentle algebras, and compared through the gcd of the
//! degrees of a homology basis.

pub mod curves;
pub mod error;
pub mod families;
pub mod grading;
pub mod homology;
pub mod invariants;
pub mod io;
pub mod surface;
pub mod torusword;

pub use curves::{chain_of, degree, ArrowChain, CrossingWord, Step, TriangleClass};
pub use error::{Error, Result};
pub use grading::{cut_algebra, enumerate_admissible_cuts, DegreeMap, GentlePresentation};
pub use homology::{chain_complex, homology, H1Structure, IntMatrix};
pub use invariants::{
    ag_formula, ag_invariant, bound_check, derived_equivalent_torus, gcd_invariant, AgInvariant,
    BoundReport, GcdInvariant, Sl2Witness, TorusInput,
};
pub use surface::{build_quiver, ArrowId, EdgeId, EdgeKind, Quiver, SurfaceProfile, TriangleId, TriangulatedSurface};
pub use torusword::{MarkoffDegree, Move, Roles, TorusWord};
