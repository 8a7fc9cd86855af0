//! Numeric gates for the qualitative claims checked by the test suites.
//!
//! Each value was produced once by running the oracle pipeline
//! (`psinv experiment ... --oracle-digits 100`) and then frozen here with some
//! slack; tests compare against these constants and never re-tune them.

/// Forward deflation of `(x - sqrt2)^100`: relative error at `k = 10`.
pub const FIG1A_EARLY_REL_MAX: f64 = 1e-12;
/// Forward deflation of `(x - sqrt2)^100`: `err(95) / err(10)`.
pub const FIG1A_GROWTH_MIN: f64 = 1e8;
/// 99 sequential factor multiplications: maximum relative error.
pub const FIG1A_PRODUCT_REL_MAX: f64 = 1e-12;
/// Monic `T_100` deflated forward by the root nearest 1.
pub const FIG1B_NEAR_ONE_REL_MAX: f64 = 1e-10;
/// Monic `T_100` deflated forward by the root nearest 0.
pub const FIG1B_NEAR_ZERO_REL_MIN: f64 = 1e-2;
/// Median over `k` of (componentwise bound / actual relative error).
pub const FIG3_MEDIAN_RATIO_MAX: f64 = 1e4;
/// Ill-conditioned pseudozero example: largest bound-to-actual ratio.
pub const FIG2_ILL_RATIO_MIN: f64 = 1e4;
/// Growth rate of the inverse of `1 + log(1+z)` at order 300, relative tolerance.
pub const LOG_GROWTH_REL_TOL: f64 = 0.02;
/// Lower limit for `sigma_min(T_n)` of `1 - x/2`, `n <= 200`.
pub const SIGMA_MIN_HALF_LOWER: f64 = 0.5;
/// `b_k = 10^k`, `n = 10`: norm bound over the componentwise bound of `c_1`.
pub const INFNORM_OVER_COMPONENTWISE_MIN: f64 = 1e6;
/// Oracle residual of `p * invert(p)` relative to `|p| * |q|`.
pub const ORACLE_RESIDUAL_MAX: f64 = 1e-90;
/// Residue expansion versus series inversion, relative.
pub const CROSS_PIPELINE_REL_MAX: f64 = 1e-80;
