//! Semisimplified mod-p representation classes and the F_{p²} constants they carry.

mod class;
mod fp2;

pub use class::{Level, RepClass};
pub use fp2::{solve_selfdual, Fp2Element};
