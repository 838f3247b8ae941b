//! The mdbook guide under `book/`, compiled chapter by chapter so that
//! `cargo test` runs every code snippet in the book as a doctest. One module
//! per chapter keeps failures attributable to their chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
mod exact_linear_algebra {}

#[doc = include_str!("../../../book/src/lie-algebras.md")]
mod lie_algebras {}

#[doc = include_str!("../../../book/src/splits-and-foliations.md")]
mod splits_and_foliations {}

#[doc = include_str!("../../../book/src/curvature.md")]
mod curvature {}

#[doc = include_str!("../../../book/src/file-format.md")]
mod file_format {}
