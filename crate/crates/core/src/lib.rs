#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod constructions;
pub mod expr;
pub mod exterior;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalars;
pub mod structures;
