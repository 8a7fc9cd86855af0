//! A-priori error bounds for binary64 series inversion.
//!
//! Inversion solves the lower triangular Toeplitz system `T_n C_n = e_1`,
//! `T_n` having first column `(1, b_1, ..., b_n)`. Left-to-right evaluation
//! of the recurrence gives a computed `Ĉ` with `(T_n + ΔT_n) Ĉ = e_1`,
//! `|ΔT_n| <= E_n`, where `E_n[i][j] = gamma_{i-j+1} |b_{i-j}|` below the
//! diagonal. With `N = |T_n^{-1}| E_n`, also lower triangular Toeplitz,
//!
//! ```text
//! |Ĉ - C| <= (I - N)^{-1} N |C|.
//! ```
//!
//! `|T_n^{-1}|` is the Toeplitz matrix of `|c_k|`, so every product here is a
//! convolution on `O(n)` coefficients. All bound arithmetic is carried out
//! at extended precision with each operation rounded upward.

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::precision::PrecisionContext;
use crate::real::Real;
use crate::series::{invert, PowerSeries};

/// Inputs shared by all bounds for one series and order.
#[derive(Clone, Debug)]
pub struct BoundWorkspace {
    n: usize,
    /// `|b_k|`, exact, at bound precision.
    abs_b: Vec<Ext>,
    /// Exact inverse coefficients `c_k` (oracle precision).
    c: Vec<Ext>,
    /// `|c_k|` at bound precision.
    abs_c: Vec<Ext>,
    /// The arithmetic whose rounding the bounds describe.
    work: PrecisionContext,
    bits: usize,
}

impl BoundWorkspace {
    /// `p` is the data actually inverted in `work`; its exact inverse is
    /// computed at `oracle` precision.
    pub fn new<R: Real>(p: &PowerSeries<R>, n: usize, work: &PrecisionContext, oracle: &PrecisionContext) -> Result<Self> {
        if !oracle.is_extended() {
            return Err(Error::InvalidArgument("bounds need an extended oracle precision".into()));
        }
        let pe = p.truncate(n)?.to_ext(oracle);
        let c = invert(&pe, n)?.into_coeffs();
        let bits = work.bound_bits().max(oracle.bits() + 64);
        let abs_b = pe.coeffs().iter().map(|x| x.abs().with_bits(bits)).collect();
        let abs_c = c.iter().map(|x| x.abs().with_bits(bits)).collect();
        Ok(BoundWorkspace { n, abs_b, c, abs_c, work: *work, bits })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The exact inverse `c_0..c_n`.
    pub fn oracle_inverse(&self) -> &[Ext] {
        &self.c
    }

    /// First column of `E_n`: `e_d = gamma_{d+1} |b_d|` for `d >= 1`, `e_0 = 0`.
    pub fn e_column(&self) -> Result<Vec<Ext>> {
        let mut e = vec![Ext::zero(self.bits)];
        for d in 1..=self.n {
            e.push(self.work.gamma(d + 1)?.mul_up(&self.abs_b[d]));
        }
        Ok(e)
    }

    /// First column of `N = |T_n^{-1}| E_n`: `nu_m = sum_{s=1..m} |c_{m-s}| e_s`.
    pub fn n_column(&self) -> Result<Vec<Ext>> {
        let e = self.e_column()?;
        Ok((0..=self.n).map(|m| up_convolve(&self.abs_c, &e, m, 1)).collect())
    }

    /// Componentwise absolute bound on `|Ĉ - C|`: the solution `B` of
    /// `(I - N) B = N |C|`, by forward substitution `B_i = sum_{j<i} nu_{i-j} (|c_j| + B_j)`.
    pub fn theorem31(&self) -> Result<Vec<Ext>> {
        let nu = self.n_column()?;
        let mut bnd: Vec<Ext> = Vec::with_capacity(self.n + 1);
        for i in 0..=self.n {
            let mut acc = Ext::zero(self.bits);
            for j in 0..i {
                let t = self.abs_c[j].add_up(&bnd[j]);
                acc = acc.add_up(&nu[i - j].mul_up(&t));
            }
            debug_assert!(!acc.is_negative());
            bnd.push(acc);
        }
        Ok(bnd)
    }

    /// `|Δp| = sum_{j>=1} scale u |b_j| x^j`.
    fn delta_p(&self, scale: usize) -> Vec<Ext> {
        let su = self.work.unit_roundoff().with_bits(self.bits) * Ext::from_i64(scale as i64, self.bits);
        let mut d: Vec<Ext> = self.abs_b.iter().map(|b| su.mul_up(b)).collect();
        d[0] = Ext::zero(self.bits);
        d
    }

    /// `|q^2| |Δp| / (1 - |q| |Δp|)`, truncated at order `n`.
    fn perturbation_series(&self, dp: &[Ext]) -> Vec<Ext> {
        let n = self.n;
        // q^2 at oracle precision, then its absolute value
        let q2: Vec<Ext> = (0..=n)
            .map(|k| {
                let mut acc = &self.c[0] * &self.c[k];
                for j in 1..=k {
                    acc += &(&self.c[j] * &self.c[k - j]);
                }
                acc.abs().round_up().with_bits(self.bits).round_up()
            })
            .collect();
        let a: Vec<Ext> = (0..=n).map(|k| up_convolve(&self.abs_c, dp, k, 0)).collect();
        // 1/(1 - A) with A_0 = 0: r_0 = 1, r_k = sum_{j=1..k} A_j r_{k-j}
        let mut r = vec![Ext::one(self.bits)];
        for k in 1..=n {
            r.push(up_convolve(&r, &a, k, 1));
        }
        let num: Vec<Ext> = (0..=n).map(|k| up_convolve(&q2, dp, k, 0)).collect();
        (0..=n).map(|k| up_convolve(&num, &r, k, 0)).collect()
    }

    /// The condition bound: coefficients of `|q^2||Δp| / (1 - |q||Δp|)` with
    /// `|Δp| = sum u|p_j| x^j`.
    pub fn condition(&self) -> Vec<Ext> {
        self.perturbation_series(&self.delta_p(1))
    }

    /// First-order part `|q^2| |Δp|` of the condition bound.
    pub fn condition_first_order(&self) -> Vec<Ext> {
        let dp = self.delta_p(1);
        let q2: Vec<Ext> = (0..=self.n)
            .map(|k| {
                let mut acc = &self.c[0] * &self.c[k];
                for j in 1..=k {
                    acc += &(&self.c[j] * &self.c[k - j]);
                }
                acc.abs()
            })
            .collect();
        (0..=self.n).map(|k| up_convolve(&q2, &dp, k, 0)).collect()
    }

    /// The condition bound with `|Δp|` scaled by `2(n+1)`; needs `(n+1) u < 1/2`.
    pub fn stability(&self) -> Result<Vec<Ext>> {
        let lhs = Ext::from_i64(2 * (self.n as i64 + 1), self.bits) * self.work.unit_roundoff();
        if lhs >= Ext::one(64) {
            return Err(Error::StabilityPrecondition(self.n));
        }
        Ok(self.perturbation_series(&self.delta_p(2 * (self.n + 1))))
    }

    /// `||N|C|||_inf / (1 - ||N||_inf)`, an absolute bound on `max_k |ĉ_k - c_k|`.
    pub fn infnorm(&self) -> Result<Ext> {
        let nu = self.n_column()?;
        let mut norm_n = Ext::zero(self.bits);
        for v in &nu {
            norm_n = norm_n.add_up(v);
        }
        let mut top = Ext::zero(self.bits);
        for i in 0..=self.n {
            top = top.max(&up_convolve(&nu, &self.abs_c, i, 0));
        }
        let den = Ext::one(self.bits).sub_down(&norm_n);
        if den.is_zero() || den.is_negative() {
            return Err(Error::NormBoundVacuous(norm_n.to_f64()));
        }
        Ok(top.div_up(&den))
    }

    /// Smallest singular value of `T_n`, as `1 / ||T_n^{-1}||_2` with the
    /// norm from power iteration on `T_n^{-T} T_n^{-1}`.
    pub fn least_singular_value(&self, tol: f64, max_iter: usize) -> Result<f64> {
        let c: Vec<f64> = self.c.iter().map(Ext::to_f64).collect();
        least_singular_value_from_inverse(&c, tol, max_iter)
    }
}

/// `sum_{j=lo..=k} x_j y_{k-j}` rounded upward, for nonnegative `x`, `y`.
fn up_convolve(x: &[Ext], y: &[Ext], k: usize, lo: usize) -> Ext {
    let bits = x[0].bits().max(y[0].bits());
    let mut acc = Ext::zero(bits);
    for s in lo..=k {
        if y[s].is_zero() || x[k - s].is_zero() {
            continue;
        }
        acc = acc.add_up(&x[k - s].mul_up(&y[s]));
    }
    acc
}

/// Power iteration for `||L||_2` with `L` lower triangular Toeplitz of first column `c`.
pub fn least_singular_value_from_inverse(c: &[f64], tol: f64, max_iter: usize) -> Result<f64> {
    let n = c.len();
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Overflow);
    }
    let cs: Vec<f64> = c.iter().map(|x| x / scale).collect();
    let apply = |v: &[f64]| -> Vec<f64> { (0..n).map(|i| (0..=i).map(|j| cs[i - j] * v[j]).sum()).collect() };
    let apply_t = |v: &[f64]| -> Vec<f64> { (0..n).map(|j| (j..n).map(|i| cs[i - j] * v[i]).sum()).collect() };
    // start from a vector with no special structure
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 * 0.618_033_988_75).fract()).collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut est = 0.0f64;
    for it in 0..max_iter {
        let w = apply(&v);
        let sigma = norm(&w);
        let z = apply_t(&w);
        let nz = norm(&z);
        if nz == 0.0 {
            return Ok(f64::INFINITY);
        }
        v = z.into_iter().map(|x| x / nz).collect();
        if it > 0 && (sigma - est).abs() <= tol * sigma {
            return Ok(1.0 / (sigma * scale));
        }
        est = sigma;
    }
    Err(Error::Unconverged { iterations: max_iter, last: 1.0 / (est * scale) })
}

/// Componentwise bound vector of the triangular-solve analysis.
pub fn theorem31_bound<R: Real>(p: &PowerSeries<R>, n: usize) -> Result<Vec<Ext>> {
    BoundWorkspace::new(p, n, &PrecisionContext::binary64(), &PrecisionContext::oracle())?.theorem31()
}

/// Condition bound for coefficient perturbations `|Δp_j| <= u |p_j|`.
pub fn condition_bound<R: Real>(p: &PowerSeries<R>, n: usize, work: &PrecisionContext) -> Result<Vec<Ext>> {
    Ok(BoundWorkspace::new(p, n, work, &PrecisionContext::oracle())?.condition())
}

pub fn stability_bound<R: Real>(p: &PowerSeries<R>, n: usize, work: &PrecisionContext) -> Result<Vec<Ext>> {
    BoundWorkspace::new(p, n, work, &PrecisionContext::oracle())?.stability()
}

pub fn infnorm_bound<R: Real>(p: &PowerSeries<R>, n: usize) -> Result<Ext> {
    BoundWorkspace::new(p, n, &PrecisionContext::binary64(), &PrecisionContext::oracle())?.infnorm()
}

pub fn least_singular_value<R: Real>(p: &PowerSeries<R>, n: usize, tol: f64) -> Result<f64> {
    BoundWorkspace::new(p, n, &PrecisionContext::binary64(), &PrecisionContext::oracle())?
        .least_singular_value(tol, 100_000)
}
