//! The chapters of the book, compiled so that `cargo test` runs their code
//! listings as doctests.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/plane.md")]
pub mod plane {}
#[doc = include_str!("../../book/src/sphere-chart.md")]
pub mod sphere_chart {}
#[doc = include_str!("../../book/src/heisenberg.md")]
pub mod heisenberg {}
#[doc = include_str!("../../book/src/heisenberg-subgroups.md")]
pub mod heisenberg_subgroups {}
#[doc = include_str!("../../book/src/convergence.md")]
pub mod convergence {}
#[doc = include_str!("../../book/src/affine.md")]
pub mod affine {}
#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
