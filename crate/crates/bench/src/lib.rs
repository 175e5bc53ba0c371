//! Sample algebras for the benchmarks.

use gwa_core::{GwaParams, Poly, Rational};

pub fn quantum(phi: &[i64]) -> GwaParams {
    GwaParams::quantum(Rational::from_int(2), Poly::from_ints(phi)).unwrap()
}

pub fn classical(phi: &[i64]) -> GwaParams {
    GwaParams::classical(Rational::one(), Poly::from_ints(phi)).unwrap()
}
