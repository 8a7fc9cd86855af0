//! Division of a monic polynomial by `x - a` through the triangular system
//!
//! ```text
//! -a c_0               = b_0
//! c_{k-1} - a c_k      = b_k      (k = 1..n-2)
//! c_{n-2} - a          = b_{n-1}
//! ```
//!
//! solved either top-down (forward) or bottom-up (backward), with an a-priori
//! absolute error bound for each computed coefficient.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::polynomial::Polynomial;
use crate::precision::PrecisionContext;
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// `c_0, c_1, ..., c_{n-2}`.
    Forward,
    /// `c_{n-2}, ..., c_0`.
    Backward,
}

impl std::str::FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Order::Forward),
            "backward" => Ok(Order::Backward),
            _ => Err(Error::InvalidArgument(format!("order must be forward or backward, got '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeflationResult<R> {
    /// Monic, degree `n - 1`.
    pub quotient: Polynomial<R>,
    /// Absolute error bound for `quotient[k]`, `k = 0..n-1` (the leading 1 is exact).
    pub bound: Vec<Ext>,
    pub order: Order,
}

fn check_monic<R: Real>(p: &Polynomial<R>) -> Result<()> {
    if p.degree() == 0 || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// The quotient coefficients by the recurrence of the given order, in the
/// arithmetic of `R`.
fn recurrence<R: Real>(p: &Polynomial<R>, a: &R, order: Order) -> Result<Vec<R>> {
    check_monic(p)?;
    let b = p.coeffs();
    let n = p.degree();
    let mut c: Vec<R> = vec![a.zero_like(); n];
    c[n - 1] = a.one_like();
    if n == 1 {
        return Ok(c);
    }
    match order {
        Order::Forward => {
            if a.is_zero() {
                return Err(Error::ZeroRootDivision);
            }
            c[0] = -(b[0].clone() / a);
            for k in 1..=n - 2 {
                c[k] = (c[k - 1].clone() - &b[k]) / a;
            }
        }
        Order::Backward => {
            c[n - 2] = b[n - 1].clone() + a;
            for k in (1..=n - 2).rev() {
                c[k - 1] = b[k].clone() + &(a.clone() * &c[k]);
            }
        }
    }
    Ok(c)
}

/// Forward solve: `c_0 = -b_0/a`, `c_k = (c_{k-1} - b_k)/a`.
///
/// `bound[k] = gamma_{2k+1} * sum_{j<=k} |b_j / a^(k+1-j)|`.
pub fn deflate_forward<R: Real>(p: &Polynomial<R>, a: &R, ctx: &PrecisionContext) -> Result<DeflationResult<R>> {
    let c = recurrence(p, a, Order::Forward)?;
    let bound = forward_bound(p, a, ctx)?;
    Ok(DeflationResult { quotient: Polynomial::new(c)?, bound, order: Order::Forward })
}

/// Backward solve: `c_{n-2} = b_{n-1} + a`, `c_{k-1} = b_k + a c_k`.
///
/// `bound[k] = sum_{m=0}^{n-k-2} |a|^m |b_{k+1+m}| gamma_{2m+1} + |a|^(n-k-1) gamma_{2n-2k+1}`.
pub fn deflate_backward<R: Real>(p: &Polynomial<R>, a: &R, ctx: &PrecisionContext) -> Result<DeflationResult<R>> {
    let c = recurrence(p, a, Order::Backward)?;
    let bound = backward_bound(p, a, ctx)?;
    Ok(DeflationResult { quotient: Polynomial::new(c)?, bound, order: Order::Backward })
}

pub fn deflate<R: Real>(p: &Polynomial<R>, a: &R, order: Order, ctx: &PrecisionContext) -> Result<DeflationResult<R>> {
    match order {
        Order::Forward => deflate_forward(p, a, ctx),
        Order::Backward => deflate_backward(p, a, ctx),
    }
}

/// The exact quotient coefficients of the chosen recurrence for binary64
/// data, evaluated at extended precision.
///
/// Forward and backward solutions coincide only when `p(a) = 0` exactly; for
/// a rounded root they differ by `p(a)/a^(k+1)`, so the oracle follows the
/// order whose rounding errors are being measured.
pub fn deflation_oracle(p: &Polynomial<f64>, a: f64, order: Order, ctx: &PrecisionContext) -> Result<Polynomial<Ext>> {
    if !ctx.is_extended() {
        return Err(Error::InvalidArgument("deflation oracle needs an extended precision context".into()));
    }
    let pe = p.to_ext(ctx);
    let ae = Ext::from_f64(a, ctx.bits());
    Polynomial::new(recurrence(&pe, &ae, order)?)
}

fn gammas(ctx: &PrecisionContext, max: usize) -> Result<Vec<Ext>> {
    (0..=max).map(|i| ctx.gamma(i)).collect()
}

fn forward_bound<R: Real>(p: &Polynomial<R>, a: &R, ctx: &PrecisionContext) -> Result<Vec<Ext>> {
    let n = p.degree();
    let bits = ctx.bound_bits();
    let mut bound = vec![Ext::zero(bits); n];
    if n == 1 {
        return Ok(bound);
    }
    let g = gammas(ctx, 2 * n)?;
    let abs_a = a.to_ext(ctx).abs().with_bits(bits);
    let b: Vec<Ext> = p.coeffs().iter().map(|x| x.to_ext(ctx).abs().with_bits(bits)).collect();
    // s_k = sum_{j<=k} |b_j| / |a|^(k+1-j) = (s_{k-1} + |b_k|) / |a|
    let mut s = Ext::zero(bits);
    for k in 0..=n - 2 {
        s = s.add_up(&b[k]).div_up(&abs_a);
        bound[k] = g[2 * k + 1].mul_up(&s);
    }
    Ok(bound)
}

fn backward_bound<R: Real>(p: &Polynomial<R>, a: &R, ctx: &PrecisionContext) -> Result<Vec<Ext>> {
    let n = p.degree();
    let bits = ctx.bound_bits();
    let mut bound = vec![Ext::zero(bits); n];
    if n == 1 {
        return Ok(bound);
    }
    let g = gammas(ctx, 2 * n + 1)?;
    let abs_a = a.to_ext(ctx).abs().with_bits(bits);
    let b: Vec<Ext> = p.coeffs().iter().map(|x| x.to_ext(ctx).abs().with_bits(bits)).collect();
    for k in 0..=n - 2 {
        let mut total = Ext::zero(bits);
        let mut pw = Ext::one(bits);
        for m in 0..=n - k - 2 {
            total = total.add_up(&pw.mul_up(&b[k + 1 + m]).mul_up(&g[2 * m + 1]));
            pw = pw.mul_up(&abs_a);
        }
        // pw = |a|^(n-k-1)
        bound[k] = total.add_up(&pw.mul_up(&g[2 * n - 2 * k + 1]));
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Cx;
    use crate::polynomial::{binomial_power, from_roots};
    use proptest::prelude::*;

    fn b64() -> PrecisionContext {
        PrecisionContext::binary64()
    }

    fn poly(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn exact_small_divisions() {
        let p = poly(&[2.0, -3.0, 1.0]);
        let f = deflate_forward(&p, &1.0, &b64()).unwrap();
        assert_eq!(f.quotient.coeffs(), &[-2.0, 1.0]);
        let q = deflate_forward(&poly(&[4.0, -4.0, 1.0]), &2.0, &b64()).unwrap();
        assert_eq!(q.quotient.coeffs(), &[-2.0, 1.0]);
        let bk = deflate_backward(&p, &2.0, &b64()).unwrap();
        assert_eq!(bk.quotient.coeffs(), &[-1.0, 1.0]);
        assert!(bk.quotient.is_monic() && f.quotient.is_monic());
    }

    #[test]
    fn preconditions() {
        let p = poly(&[2.0, -3.0, 1.0]);
        assert!(matches!(deflate_forward(&p, &0.0, &b64()), Err(Error::ZeroRootDivision)));
        assert!(deflate_backward(&p, &0.0, &b64()).is_ok());
        assert!(matches!(deflate_forward(&poly(&[2.0, -3.0, 2.0]), &1.0, &b64()), Err(Error::NotMonic)));
        assert!(matches!(deflate_forward(&poly(&[1.0]), &1.0, &b64()), Err(Error::NotMonic)));
        let linear = deflate_forward(&poly(&[-3.0, 1.0]), &3.0, &b64()).unwrap();
        assert_eq!(linear.quotient.coeffs(), &[1.0]);
        assert!(deflation_oracle(&p, 1.0, Order::Forward, &b64()).is_err());
    }

    #[test]
    fn oracle_exact_division_and_residual() {
        let ctx = PrecisionContext::oracle();
        let o = deflation_oracle(&poly(&[2.0, -3.0, 1.0]), 1.0, Order::Forward, &ctx).unwrap();
        assert_eq!(o.coeffs(), &[Ext::from_i64(-2, 64), Ext::one(64)]);

        // Chebyshev root at extended precision: quotient times (x - a) gives T back.
        let t: Polynomial<Ext> = crate::polynomial::chebyshev(30).monic(&ctx).unwrap();
        let a = crate::polynomial::chebyshev_roots(30, &ctx).unwrap().roots[4].re.clone();
        let c = recurrence(&t, &a, Order::Forward).unwrap();
        // (x - a) * sum c_k x^k has coefficient c_{k-1} - a c_k at x^k.
        for k in 0..=30 {
            let mut v = Ext::zero(ctx.bits());
            if k >= 1 {
                v += &c[k - 1];
            }
            if k < 30 {
                v -= &(&a * &c[k]);
            }
            let d = (&v - &t.coeffs()[k]).abs().to_f64();
            assert!(d <= 1e-90, "k={k}: {d}");
        }
    }

    #[test]
    fn backward_with_zero_root_is_a_shift() {
        let p = poly(&[0.0, 0.1, -0.7, 3.3, 1.0]);
        let r = deflate_backward(&p, &0.0, &b64()).unwrap();
        assert_eq!(r.quotient.coeffs(), &[0.1, -0.7, 3.3, 1.0]);
    }

    #[test]
    fn repeated_root_instability() {
        // (x - 1)^20 divided forward by 1: large relative errors below x^10.
        let ctx = PrecisionContext::oracle();
        let p: Polynomial<f64> = binomial_power(&Ext::one(64), 20, &b64()).unwrap();
        let bk = deflate_backward(&p, &1.0, &b64()).unwrap();
        let oracle = deflation_oracle(&p, 1.0, Order::Backward, &ctx).unwrap();
        let rel = |k: usize| {
            let o = &oracle.coeffs()[k];
            ((&Ext::from_f64(bk.quotient.coeffs()[k], ctx.bits()) - o) / o).abs().to_f64()
        };
        // All data are small integers here, so every operation is exact.
        assert!((0..20).all(|k| rel(k) == 0.0));

        let sqrt2 = Ext::from_i64(2, ctx.bits()).sqrt();
        let p: Polynomial<f64> = binomial_power(&sqrt2, 20, &b64()).unwrap();
        let a = sqrt2.to_f64();
        let bk = deflate_backward(&p, &a, &b64()).unwrap();
        let oracle = deflation_oracle(&p, a, Order::Backward, &ctx).unwrap();
        let rel = |k: usize| {
            let o = &oracle.coeffs()[k];
            ((&Ext::from_f64(bk.quotient.coeffs()[k], ctx.bits()) - o) / o).abs().to_f64()
        };
        let low = (0..5).map(rel).fold(0.0, f64::max);
        let high = (15..20).map(rel).fold(0.0, f64::max);
        assert!(low > 1e3 * high.max(1e-17), "low {low:e} high {high:e}");
    }

    fn abs_err(computed: &[f64], oracle: &Polynomial<Ext>, ctx: &PrecisionContext) -> Vec<Ext> {
        computed.iter().zip(oracle.coeffs()).map(|(c, o)| (&Ext::from_f64(*c, ctx.bits()) - o).abs()).collect()
    }

    fn random_case() -> impl Strategy<Value = (Vec<f64>, f64)> {
        (1usize..=50).prop_flat_map(|n| {
            (
                prop::collection::vec(-10.0f64..10.0, n),
                (0.1f64..10.0, any::<bool>()).prop_map(|(m, s)| if s { -m } else { m }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bounds_dominate_actual_errors((lower, a) in random_case()) {
            let ctx = PrecisionContext::oracle();
            let mut coeffs = lower;
            coeffs.push(1.0);
            let p = poly(&coeffs);
            for order in [Order::Forward, Order::Backward] {
                let r = deflate(&p, &a, order, &b64()).unwrap();
                let o = deflation_oracle(&p, a, order, &ctx).unwrap();
                for (k, e) in abs_err(r.quotient.coeffs(), &o, &ctx).iter().enumerate() {
                    prop_assert!(*e <= r.bound[k], "{order:?} k={k}");
                }
            }
        }

        #[test]
        fn forward_and_backward_agree_on_exact_roots(
            roots in prop::collection::vec(-6i32..=6, 2..12),
            pick in any::<prop::sample::Index>(),
        ) {
            let rs: Vec<Cx<f64>> = roots.iter().map(|&r| Cx::real(r as f64)).collect();
            let p = from_roots(&rs).unwrap();
            let a = roots[pick.index(roots.len())] as f64;
            prop_assume!(a != 0.0);
            let f = deflate_forward(&p, &a, &b64()).unwrap();
            let b = deflate_backward(&p, &a, &b64()).unwrap();
            for k in 0..p.degree() {
                let d = (Ext::from_f64(f.quotient.coeffs()[k], 64) - Ext::from_f64(b.quotient.coeffs()[k], 64)).abs();
                prop_assert!(d <= f.bound[k].add_up(&b.bound[k]));
            }
        }
    }
}
