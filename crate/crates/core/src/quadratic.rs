//! Inverse series of `x^2 + b x + 1` and `x^2 + b x - 1`.
//!
//! In the `+1` case the coefficients are the Fibonacci-type polynomials
//! `F_k(b)`: `F_0 = 1`, `F_1 = -b`, `F_{k+1} = -b F_k - F_{k-1}`. Their terms
//! alternate in sign, so `|F_k|(|b|)` obeys the all-positive recurrence
//! `G_{k+1} = |b| G_k + G_{k-1}` and bounds the cancellation in `F_k(b)`.

use serde::Serialize;

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::precision::PrecisionContext;
use crate::real::Real;
use crate::series::PowerSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadSign {
    Plus,
    Minus,
}

impl std::str::FromStr for QuadSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+1" | "+" => Ok(QuadSign::Plus),
            "minus" | "-1" | "-" => Ok(QuadSign::Minus),
            _ => Err(Error::InvalidArgument(format!("sign must be plus or minus, got '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticCase<R> {
    pub b: R,
    pub sign: QuadSign,
    /// Truncation order.
    pub n: usize,
}

/// Coefficients `c_0..c_n` of `1/(x^2 + b x ± 1)` by the three-term recurrence.
///
/// `+1`: `c_0 = 1`, `c_1 = -b`, `c_{k+1} = -b c_k - c_{k-1}`.
/// `-1`: `c_0 = -1`, `c_1 = -b`, `c_2 = b c_1 - 1`, `c_{k+1} = b c_k + c_{k-1}`.
pub fn invert_quadratic<R: Real>(case: &QuadraticCase<R>) -> PowerSeries<R> {
    let b = &case.b;
    let one = b.one_like();
    let mut c: Vec<R> = Vec::with_capacity(case.n + 1);
    match case.sign {
        QuadSign::Plus => {
            c.push(one);
            if case.n >= 1 {
                c.push(-b.clone());
            }
            for k in 1..case.n {
                let next = -(b.clone() * &c[k]) - &c[k - 1];
                c.push(next);
            }
        }
        QuadSign::Minus => {
            c.push(-one.clone());
            if case.n >= 1 {
                c.push(-b.clone());
            }
            if case.n >= 2 {
                c.push(b.clone() * &c[1] - &one);
            }
            for k in 2..case.n {
                let next = b.clone() * &c[k] + &c[k - 1];
                c.push(next);
            }
        }
    }
    PowerSeries::new(c).expect("finite recurrence values")
}

fn check_distinct(b: &Ext) -> Result<()> {
    let two = Ext::from_i64(2, 64);
    if b.abs() == two {
        return Err(Error::RepeatedRoots(b.to_f64()));
    }
    Ok(())
}

/// `c_k` of the `+1` case from the roots `alpha, beta` of `x^2 + b x + 1`:
/// `c_k = (1/(alpha - beta)) (1/beta^(k+1) - 1/alpha^(k+1))`, in extended
/// complex arithmetic.
pub fn closed_form_coeff(b: &Ext, k: usize, ctx: &PrecisionContext) -> Result<Ext> {
    check_distinct(b)?;
    let bits = ctx.bound_bits();
    let b = b.with_bits(bits);
    let disc = &b * &b - Ext::from_i64(4, bits);
    let half = Ext::ratio(1, 2, bits);
    let (alpha, beta) = if disc.is_negative() {
        let s = (-disc).sqrt();
        let re = -(&b * &half);
        (Cx::new(re.clone(), &s * &half), Cx::new(re, -(&s * &half)))
    } else {
        let s = disc.sqrt();
        (Cx::real((-&b + &s) * &half), Cx::real((-&b - &s) * &half))
    };
    let inv_b = beta.powi(k + 1).recip();
    let inv_a = alpha.powi(k + 1).recip();
    let v = &(&inv_b - &inv_a) / &(&alpha - &beta);
    Ok(v.re.with_bits(ctx.bits()))
}

/// `G_k = |F_k|(|b|)` for `k = 0..=n`.
pub fn abs_fibonacci(b: &Ext, n: usize) -> Vec<Ext> {
    let ab = b.abs();
    let mut g = vec![Ext::one(ab.bits())];
    if n >= 1 {
        g.push(ab.clone());
    }
    for k in 1..n {
        let next = ab.mul_up(&g[k]).add_up(&g[k - 1]);
        g.push(next);
    }
    g
}

/// Relative error bounds `(|F_k|(|b|) / |F_k(b)|) gamma_{2k}` for `k = 0..=n`,
/// for the `+1` case computed in the arithmetic of `ctx`. `F_k(b)` is the
/// exact value for the binary64 number `b`.
pub fn quadratic_rel_bounds(b: f64, n: usize, ctx: &PrecisionContext) -> Vec<Result<Ext>> {
    let bits = ctx.bound_bits() + 128;
    let be = Ext::from_f64(b, bits);
    let exact = invert_quadratic(&QuadraticCase { b: be.clone(), sign: QuadSign::Plus, n });
    let g = abs_fibonacci(&be, n);
    (0..=n)
        .map(|k| {
            let f = exact.coeffs()[k].abs();
            if f.is_zero() {
                return Err(Error::InfiniteRelativeBound(k));
            }
            Ok(g[k].div_up(&f).mul_up(&ctx.gamma(2 * k)?))
        })
        .collect()
}

pub fn quadratic_rel_bound(b: f64, k: usize, ctx: &PrecisionContext) -> Result<Ext> {
    quadratic_rel_bounds(b, k, ctx).pop().expect("k + 1 entries")
}

/// `a y^2 + b y + c` rewritten, with `y = scale * x`, as
/// `a scale^2 (x^2 + b' x ± 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedQuadratic {
    pub b: f64,
    pub sign: QuadSign,
    pub scale: f64,
}

/// Uses `s = sqrt(|a/c|)`, `scale = 1/s`, `b' = b s / a`, sign of `c/a`.
pub fn normalize_quadratic(a: f64, b: f64, c: f64) -> Result<NormalizedQuadratic> {
    if a == 0.0 || c == 0.0 || !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::InvalidArgument("need finite a, c != 0".into()));
    }
    let s = (a / c).abs().sqrt();
    let sign = if (c > 0.0) == (a > 0.0) { QuadSign::Plus } else { QuadSign::Minus };
    Ok(NormalizedQuadratic { b: b * s / a, sign, scale: 1.0 / s })
}
