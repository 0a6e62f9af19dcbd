//! Shared fixtures for the criterion benches.

use lambertq_core::TruncatedSeries;
use lambertq_core::series::rat;

/// A dense series with small pseudo-random integer coefficients up to `q^order`.
pub fn dense_series(order: i64, seed: i64) -> TruncatedSeries {
    TruncatedSeries::from_fn(0, order, |e| rat((e * 7919 + seed * 104729) % 201 - 100))
}
