//! Truncated power series and the generating functions built from them.

pub mod gf;
mod laurent;
mod truncated;

pub use gf::{
    a_series, a_vu_series, b11_series, b1u_series, c11_series, c1u_series, v0_series, v_series, Argument,
    GfBundle, integer_coeffs,
};
pub use truncated::{expand_rational, rational, series_arith, ArithKind, TruncatedSeries};
