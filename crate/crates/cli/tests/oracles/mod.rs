//! Independent reference computations for the acceptance suite. Nothing in
//! here calls into the library except for plain data accessors.

pub mod field;
pub mod partitions;
