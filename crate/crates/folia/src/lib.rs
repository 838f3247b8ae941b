//! Exact-arithmetic analysis of left-invariant foliations on metric Lie
//! algebras.
//!
//! A finite-dimensional Lie algebra with a positive-definite inner product
//! and a distinguished vertical subalgebra generates a left-invariant
//! foliation on the corresponding Lie group. This crate decides, with exact
//! rational arithmetic and zero tolerances, whether that foliation is
//! conformal, Riemannian, minimal, totally geodesic or normal, whether it
//! produces harmonic morphisms, and what the quotient space looks like.
//!
//! ```
//! use folia::{analyze, parse_algebra};
//!
//! let file = parse_algebra(r#"
//! algebra "heisenberg"
//! dim 3
//! basis X Y Z
//! metric orthonormal
//! vertical Z
//! bracket [X,Y] = Z
//! "#).unwrap();
//! let analysis = analyze(&file).unwrap();
//! let report = &analysis.foliation.as_ref().unwrap().report;
//! assert!(report.riemannian && report.normal);
//! assert!(analysis.quotient.unwrap().curvature.flat);
//! ```
//!
//! The `book/` directory of the repository is an mdbook guide whose code
//! snippets are compiled and run as doctests of this crate.

// Tensor index math reads clearest with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod analyze;
pub mod curvature;
pub mod foliation;
pub mod format;
pub mod lie;
pub mod linalg;

#[cfg(doctest)]
mod book;

pub use analyze::{analyze, run_corpus, Analysis, AnalyzeError, CorpusEntry, CorpusResult};
pub use curvature::{
    curvature_summary, levi_civita, quotient_geometry, riemann, sectional, ConnectionCoeffs,
    CurvatureError, CurvatureReport, RiemannTensor,
};
pub use foliation::{
    make_split, FoliationReport, HarmonicMorphisms, MetricSplit, SplitError, SplitTensors,
    TheoremRow,
};
pub use format::{parse_algebra, AlgebraFile, ExpectValue, MetricSpec, ParseError};
pub use lie::{ClassificationFlags, JacobiViolation, LieAlgebra, LieError};
pub use linalg::{
    coords_in_basis, orthogonalize, orthogonalize_vectors, rat, rint, LinalgError, Mat, Rat,
    Subspace,
};
