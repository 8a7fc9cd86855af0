//! Truncated formal power series `b_0 + b_1 x + ... + b_n x^n`.
//!
//! Every operation is generic over [`Real`]: the scalar type fixes the
//! working precision. `PowerSeries<f64>` runs in binary64, `PowerSeries<Ext>`
//! runs at the precision its coefficients were created with.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::precision::PrecisionContext;
use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Real> PowerSeries<R> {
    /// Fails on an empty vector or a non-finite coefficient.
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Leading `n + 1` coefficients.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        check_order(n, self.order())?;
        Ok(PowerSeries { coeffs: self.coeffs[..=n].to_vec() })
    }

    /// True when `b_0 = 1` exactly.
    pub fn is_invertible(&self) -> bool {
        self.coeffs[0] == self.coeffs[0].one_like()
    }

    pub fn to_ext(&self, ctx: &PrecisionContext) -> PowerSeries<Ext> {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c.to_ext(ctx)).collect() }
    }

    /// Rounds each coefficient once to binary64.
    pub fn to_f64(&self) -> Result<PowerSeries<f64>> {
        PowerSeries::new(self.coeffs.iter().map(Real::to_f64).collect()).map_err(|_| Error::Overflow)
    }
}

impl PowerSeries<f64> {
    pub fn from_f64(coeffs: &[f64]) -> Result<Self> {
        PowerSeries::new(coeffs.to_vec())
    }
}

fn check_order(n: usize, available: usize) -> Result<()> {
    if n > available {
        return Err(Error::OrderTooLarge { requested: n, available });
    }
    Ok(())
}

/// Coefficients `c_0..c_n` of `1/p`.
///
/// `c_0 = 1` and `c_k = -b_k - c_1 b_{k-1} - ... - c_{k-1} b_1`, the
/// subtractions applied left to right.
pub fn invert<R: Real>(p: &PowerSeries<R>, n: usize) -> Result<PowerSeries<R>> {
    if !p.is_invertible() {
        return Err(Error::NotNormalized(format!("{:?}", p.coeffs[0])));
    }
    check_order(n, p.order())?;
    let b = &p.coeffs;
    let mut c: Vec<R> = Vec::with_capacity(n + 1);
    c.push(b[0].one_like());
    for k in 1..=n {
        let mut acc = -b[k].clone();
        for j in 1..k {
            acc = acc - c[j].clone() * &b[k - j];
        }
        c.push(acc);
    }
    Ok(PowerSeries { coeffs: c })
}

/// `sum_{j=0..k} p_j q_{k-j}` for `k = 0..n`, summed in ascending `j`.
pub fn cauchy_product<R: Real>(p: &PowerSeries<R>, q: &PowerSeries<R>, n: usize) -> Result<PowerSeries<R>> {
    check_order(n, p.order().min(q.order()))?;
    let out = (0..=n)
        .map(|k| {
            let mut acc = p.coeffs[0].clone() * &q.coeffs[k];
            for j in 1..=k {
                acc = acc + p.coeffs[j].clone() * &q.coeffs[k - j];
            }
            acc
        })
        .collect();
    Ok(PowerSeries { coeffs: out })
}

/// `|p|`: coefficientwise absolute value.
pub fn abs_series<R: Real>(p: &PowerSeries<R>) -> PowerSeries<R> {
    PowerSeries { coeffs: p.coeffs.iter().map(Real::abs).collect() }
}

/// Substitutes `x <- s x`: coefficient `k` becomes `p_k s^k`.
pub fn scale_variable<R: Real>(p: &PowerSeries<R>, s: &R) -> Result<PowerSeries<R>> {
    if s.is_zero() {
        return Err(Error::ZeroScale);
    }
    let mut pw = s.one_like();
    let mut out = Vec::with_capacity(p.coeffs.len());
    for (k, c) in p.coeffs.iter().enumerate() {
        if k > 0 {
            pw = pw * s;
        }
        out.push(c.clone() * &pw);
    }
    PowerSeries::new(out)
}

/// Geometric mean of `|c_{k+1}/c_k|` over the last `window` steps, that is
/// `(|c_n| / |c_{n-window}|)^(1/window)`. Estimates the reciprocal of the
/// radius of convergence.
pub fn growth_rate_estimate<R: Real>(q: &PowerSeries<R>, window: usize) -> Result<f64> {
    let n = q.order();
    if window < 2 || window > n {
        return Err(Error::InvalidWindow { window, order: n });
    }
    if let Some(i) = (n - window..=n).find(|&i| q.coeffs[i].is_zero()) {
        return Err(Error::Inconclusive(i));
    }
    let hi = q.coeffs[n].ln_abs();
    let lo = q.coeffs[n - window].ln_abs();
    Ok(((hi - lo) / window as f64).exp())
}

/// Test series used by the experiments, each with `b_0 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSeries {
    /// `e^x`: `b_k = 1/k!`.
    Exp,
    /// `cos x`: odd coefficients are zero.
    Cos,
    /// `b_k` independent standard normal for `k >= 1`, from ChaCha20 with the given seed.
    Randn(u64),
    /// `1 + log(1+x)`: `b_k = (-1)^(k+1)/k`.
    Log,
    /// `1 - x`.
    Geometric,
}

impl NamedSeries {
    /// Parses `exp`, `cos`, `log`, `geom`, `randn` or `randn:<seed>`.
    pub fn parse(s: &str, default_seed: u64) -> Result<Self> {
        match s {
            "exp" => Ok(NamedSeries::Exp),
            "cos" => Ok(NamedSeries::Cos),
            "log" => Ok(NamedSeries::Log),
            "geom" | "geometric" => Ok(NamedSeries::Geometric),
            "randn" => Ok(NamedSeries::Randn(default_seed)),
            _ => match s.strip_prefix("randn:").map(str::parse::<u64>) {
                Some(Ok(seed)) => Ok(NamedSeries::Randn(seed)),
                _ => Err(Error::UnknownSeries(s.to_string())),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            NamedSeries::Exp => "exp".into(),
            NamedSeries::Cos => "cos".into(),
            NamedSeries::Randn(seed) => format!("randn_seed{seed}"),
            NamedSeries::Log => "log".into(),
            NamedSeries::Geometric => "geom".into(),
        }
    }

    /// Exact coefficients up to order `n`, rounded once into `ctx`.
    pub fn coefficients(&self, n: usize, ctx: &PrecisionContext) -> PowerSeries<Ext> {
        let bits = ctx.bits();
        let coeffs: Vec<Ext> = match self {
            NamedSeries::Exp | NamedSeries::Cos => {
                let wide = bits + 64;
                let mut fact = Ext::one(wide);
                let mut out = vec![Ext::one(bits)];
                for k in 1..=n {
                    fact = fact * Ext::from_i64(k as i64, wide);
                    let v = match (self, k % 4) {
                        (NamedSeries::Exp, _) => Ext::one(wide) / &fact,
                        (_, 0) => Ext::one(wide) / &fact,
                        (_, 2) => -(Ext::one(wide) / &fact),
                        _ => Ext::zero(wide),
                    };
                    out.push(v.with_bits(bits));
                }
                out
            }
            NamedSeries::Log => {
                let mut out = vec![Ext::one(bits)];
                for k in 1..=n {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    out.push(Ext::ratio(sign, k as i64, bits));
                }
                out
            }
            NamedSeries::Randn(_) | NamedSeries::Geometric => {
                self.binary64(n).coeffs.iter().map(|&x| Ext::from_f64(x, bits)).collect()
            }
        };
        PowerSeries { coeffs }
    }

    /// Binary64 input data: the exact coefficients rounded once.
    pub fn binary64(&self, n: usize) -> PowerSeries<f64> {
        match self {
            NamedSeries::Randn(seed) => {
                let mut rng = ChaCha20Rng::seed_from_u64(*seed);
                let mut coeffs = vec![1.0];
                coeffs.extend((0..n).map(|_| -> f64 { StandardNormal.sample(&mut rng) }));
                PowerSeries { coeffs }
            }
            NamedSeries::Geometric => {
                let mut coeffs = vec![0.0; n + 1];
                coeffs[0] = 1.0;
                if n >= 1 {
                    coeffs[1] = -1.0;
                }
                PowerSeries { coeffs }
            }
            _ => {
                let ext = self.coefficients(n, &PrecisionContext::oracle());
                PowerSeries { coeffs: ext.coeffs.iter().map(Ext::to_f64).collect() }
            }
        }
    }
}
