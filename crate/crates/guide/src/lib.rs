//! The chapters of the book, compiled so that `cargo test` runs every code
//! listing as a doc-test. mdbook cannot link against workspace crates, so the
//! Markdown is pulled in here instead, one module per chapter to make it
//! clear which chapter a failing listing comes from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/finite_howe.md")]
pub mod finite_howe {}
#[doc = include_str!("../../../book/src/hecke.md")]
pub mod hecke {}
#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}
#[doc = include_str!("../../../book/src/theta_transfer.md")]
pub mod theta_transfer {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
