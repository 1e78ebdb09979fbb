//! Partial-reflection bijection between balanced lattice paths and
//! unbalanced Dyck paths.
//!
//! Paths live in the rotated frame where the lattice diagonal is the
//! horizontal axis: up steps are N steps, down steps are E steps. A
//! *balanced* path ends back on the axis; an *unbalanced* path never returns
//! to it after leaving. [`phi`] sends each balanced path of length `2n` to
//! an unbalanced one by reflecting the down segments hanging off its
//! successive maxima, and [`phi_inverse`] undoes it by locating those maxima
//! again as the rightmost crossings of the right levels.
//!
//! ```
//! use lattice_reflect::{phi, phi_inverse, LatticePath};
//!
//! let t: LatticePath = "UDUUDD".parse().unwrap();
//! let (image, trace) = phi(&t).unwrap();
//! assert_eq!(image.to_string(), "UUDUUU");
//! assert_eq!(image.end_height(), 2 * t.max_height().0);
//! assert_eq!(trace.reflection_lines, vec![2, 1]);
//! assert_eq!(phi_inverse(&image).unwrap().0, t);
//! ```
//!
//! The [`census`] module checks the map exhaustively and verifies
//! `Σ C(2i,i)·C(2n−2i,n−i) = 4^n`; [`render`] draws paths with their peak
//! points and reflection lines.

pub mod bijection;
pub mod census;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod path;
pub mod render;

pub use bijection::{
    compose_law_check, phi, phi_inverse, verify_roundtrip, BijectionTrace, Direction, Point,
};
pub use census::{
    binomial, enumerate_class, last_zero_touch, split_at_last_zero, verify_bijection,
    verify_bijection_with, verify_identity, CensusReport, CheckKind, ClassFilter, IdentityMode,
    PathMap, Phi,
};
pub use decompose::{decompose, recompose, validate, Decomposition, Part, Peak, Segment, SegmentKind};
pub use error::{DomainError, Error, Result};
pub use path::{Alphabet, LatticePath, PathClass, Step};
pub use render::{render_ascii, render_svg, Annotations, RenderSpec};
