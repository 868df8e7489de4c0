//! Frobenius-trace census of genus-3 hyperelliptic curves over F_q.
//!
//! Every squarefree y² = f(x) with deg f ∈ {7, 8} is counted over F_q, F_{q²}
//! and F_{q³}; the counts fix the Weil polynomial, which fixes the trace of
//! Frobenius on each V_λ(H¹). Summing over all equations and dividing by
//! #(GL₂(F_q) × F_q^×)/(q − 1) = (q² − 1)(q² − q) gives the groupoid sum
//! Σ_[C] Tr(F, V_λ)/#Aut(C).

mod census;
mod curve;
mod field;
mod frobenius;
mod motivic;

pub use census::{
    groupoid_divisor, read_cache, scan, shared_census, trace_sum, write_cache, Census, CurveRecord, TraceSum, CACHE_MAGIC,
    CACHE_VERSION,
};
pub use curve::{enumerate_curves, is_squarefree, point_count, points_at_infinity, CurveEquation};
pub use field::{Elem, FiniteField, PrimePower, MAX_FIELD_SIZE};
pub use frobenius::{frobenius_trace, rescaled_power_sums, weil_polynomial, within_weil_bound, FrobeniusData, QuadExt};
pub use motivic::{parse_table5, render_table5, table5, MotivicPolynomial, ParseMotivicError};

use thiserror::Error;

use crate::characters::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("characteristic {0} is not supported (need an odd prime)")]
    UnsupportedCharacteristic(u32),
    #[error("extension degree {0} is not supported (need 1, 2 or 3)")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:?} is not monic irreducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("field of size {0} exceeds the table limit")]
    FieldTooLarge(usize),
    #[error("0 has no inverse")]
    ZeroInverse,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve over F_{curve} evaluated in a field of characteristic {field}")]
    FieldMismatch { curve: u32, field: u32 },
    #[error("s_{k} = {s} violates the Weil bound for q = {q}")]
    WeilBound { k: u32, s: i64, q: u64 },
    #[error("power sums {s:?} give a non-integral Weil polynomial for q = {q}")]
    NonIntegralWeil { s: [i64; 3], q: u64 },
    #[error("{curve}: {source}")]
    Curve {
        curve: String,
        #[source]
        source: Box<FfError>,
    },
    #[error("trace for λ = {lambda} at s = {s:?}: {detail}")]
    Inconsistent { lambda: Partition, s: [i64; 3], detail: String },
    #[error("q = {0} is not supported (expected 3 or 5)")]
    UnsupportedQ(u64),
    #[error("cache: {0}")]
    Cache(String),
}
