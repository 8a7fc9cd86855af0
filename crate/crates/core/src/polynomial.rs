//! Real polynomials `p_0 + p_1 x + ... + p_n x^n` (`coeffs[k]` multiplies `x^k`),
//! their exact-integer and from-roots constructions, and complex evaluation.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::precision::PrecisionContext;
use crate::real::Real;
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Real> Polynomial<R> {
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("polynomial needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        let lead = &self.coeffs[self.degree()];
        *lead == lead.one_like()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Real::is_zero)
    }

    pub fn to_ext(&self, ctx: &PrecisionContext) -> Polynomial<Ext> {
        Polynomial { coeffs: self.coeffs.iter().map(|c| c.to_ext(ctx)).collect() }
    }

    /// Rounds each coefficient once to binary64.
    pub fn to_f64(&self) -> Result<Polynomial<f64>> {
        Polynomial::new(self.coeffs.iter().map(Real::to_f64).collect()).map_err(|_| Error::Overflow)
    }

    /// Horner's rule, highest degree first.
    pub fn eval(&self, z: &Cx<R>) -> Cx<R> {
        let mut acc = Cx::real(self.coeffs[self.degree()].clone());
        for c in self.coeffs.iter().rev().skip(1) {
            let t = &acc * z;
            acc = Cx::new(t.re + c, t.im);
        }
        acc
    }

    /// `|p|(x)`: the absolute-coefficient polynomial at `x`, meant for `x >= 0`.
    pub fn eval_abs(&self, x: &R) -> R {
        let mut acc = self.coeffs[self.degree()].abs();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + &c.abs();
        }
        acc
    }

    /// `k p_k` shifted down one place; a constant gives the zero polynomial.
    pub fn derivative(&self) -> Polynomial<R> {
        if self.degree() == 0 {
            return Polynomial { coeffs: vec![self.coeffs[0].zero_like()] };
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_usize(k)).collect();
        Polynomial { coeffs }
    }

    /// The same coefficients read as a power series.
    pub fn as_series(&self) -> PowerSeries<R> {
        PowerSeries::new(self.coeffs.clone()).expect("coefficients already validated")
    }

    /// `p / p_0` as a power series with unit constant term.
    pub fn normalized_series(&self) -> Result<PowerSeries<R>> {
        let p0 = &self.coeffs[0];
        if p0.is_zero() {
            return Err(Error::ZeroRoot(0));
        }
        let mut out: Vec<R> = self.coeffs.iter().map(|c| c.clone() / p0).collect();
        out[0] = p0.one_like();
        PowerSeries::new(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Evaluated from a closed form at extended precision.
    Analytic,
    Computed,
}

/// The roots of a polynomial, kept at extended precision.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Cx<Ext>>,
    pub exactness: Exactness,
}

impl RootSet {
    pub fn real(roots: Vec<Ext>, exactness: Exactness) -> Self {
        RootSet { roots: roots.into_iter().map(Cx::real).collect(), exactness }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn to_f64(&self) -> Vec<Cx<f64>> {
        self.roots.iter().map(|z| Cx::new(z.re.to_f64(), z.im.to_f64())).collect()
    }

    /// `∏ (x - a_i)` at extended precision.
    pub fn polynomial(&self) -> Result<Polynomial<Ext>> {
        from_roots(&self.roots)
    }
}

/// Monic real polynomial `∏ (x - a_i)`, multiplying one factor at a time in
/// the given order. A non-real root must be immediately followed by its
/// conjugate; the pair is multiplied in as one real quadratic factor.
pub fn from_roots<R: Real>(roots: &[Cx<R>]) -> Result<Polynomial<R>> {
    let one = match roots.first() {
        Some(z) => z.re.one_like(),
        None => return Err(Error::InvalidArgument("no roots given".into())),
    };
    if let Some(i) = roots.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut c = vec![one];
    let mut i = 0;
    while i < roots.len() {
        let a = &roots[i];
        if a.is_real() {
            c = times_linear(&c, &a.re);
            i += 1;
        } else {
            match roots.get(i + 1) {
                Some(b) if *b == a.conj() => {}
                _ => return Err(Error::NonConjugateRoots(i)),
            }
            let s = a.re.clone() + &a.re;
            let m = a.norm_sqr();
            c = times_quadratic(&c, &s, &m);
            i += 2;
        }
    }
    Polynomial::new(c)
}

/// `c(x) (x - a)`.
fn times_linear<R: Real>(c: &[R], a: &R) -> Vec<R> {
    let mut out = Vec::with_capacity(c.len() + 1);
    out.push(-(a.clone() * &c[0]));
    for k in 1..c.len() {
        out.push(c[k - 1].clone() - a.clone() * &c[k]);
    }
    out.push(c[c.len() - 1].clone());
    out
}

/// `c(x) (x^2 - s x + m)`.
fn times_quadratic<R: Real>(c: &[R], s: &R, m: &R) -> Vec<R> {
    let n = c.len();
    let zero = c[0].zero_like();
    let at = |k: isize| -> R {
        if k < 0 || k as usize >= n {
            zero.clone()
        } else {
            c[k as usize].clone()
        }
    };
    (0..n + 2)
        .map(|k| {
            let k = k as isize;
            at(k - 2) - s.clone() * &at(k - 1) + m.clone() * &at(k)
        })
        .collect()
}

/// `(x - a)^n` with binomial coefficients from exact integers, each
/// coefficient `C(n,k) (-a)^(n-k)` formed at extended precision and rounded
/// once into `ctx` (so binary64 coefficients carry one rounding each).
pub fn binomial_power<R: Real>(a: &Ext, n: usize, ctx: &PrecisionContext) -> Result<Polynomial<R>> {
    let wide = ctx.bound_bits().max(a.bits()) + 64;
    let row = pascal_row(n);
    let neg_a = -a.with_bits(wide);
    // powers[m] = (-a)^m
    let mut powers = vec![Ext::one(wide)];
    for m in 1..=n {
        let next = &powers[m - 1] * &neg_a;
        powers.push(next);
    }
    let coeffs: Vec<R> = (0..=n)
        .map(|k| R::from_ext_in(&(Ext::from_bigint(&row[k], wide) * &powers[n - k]), ctx))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Overflow);
    }
    Polynomial::new(coeffs)
}

fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::from(1));
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        row = next;
    }
    row
}

/// A polynomial with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.degree()]
    }

    /// Each coefficient rounded once into `ctx`.
    pub fn to_real<R: Real>(&self, ctx: &PrecisionContext) -> Result<Polynomial<R>> {
        let wide = ctx.bound_bits();
        let coeffs: Vec<R> = self.coeffs.iter().map(|c| R::from_ext_in(&Ext::from_bigint(c, wide), ctx)).collect();
        Polynomial::new(coeffs).map_err(|_| Error::Overflow)
    }

    /// Divided by the leading coefficient, each quotient rounded once into `ctx`.
    pub fn monic<R: Real>(&self, ctx: &PrecisionContext) -> Result<Polynomial<R>> {
        let wide = ctx.bound_bits() + 64;
        let lead = Ext::from_bigint(self.leading(), wide);
        let coeffs: Vec<R> = self
            .coeffs
            .iter()
            .map(|c| R::from_ext_in(&(Ext::from_bigint(c, wide) / &lead), ctx))
            .collect();
        Polynomial::new(coeffs).map_err(|_| Error::Overflow)
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.degree() == 0 {
            return IntPolynomial { coeffs: vec![BigInt::from(0)] };
        }
        IntPolynomial { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k).collect() }
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::from(0), |acc, c| acc * x + c)
    }
}

/// Chebyshev polynomial of the first kind from `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn chebyshev(n: usize) -> IntPolynomial {
    let mut prev = vec![BigInt::from(1)];
    if n == 0 {
        return IntPolynomial { coeffs: prev };
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(1)];
    for _ in 1..n {
        let mut next = vec![BigInt::from(0); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c * 2;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    IntPolynomial { coeffs: cur }
}

/// `cos((2j - 1) pi / (2n))` for `j = 1..n`, in that order.
pub fn chebyshev_roots(n: usize, ctx: &PrecisionContext) -> Result<RootSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("Chebyshev degree must be at least 1".into()));
    }
    let wide = ctx.bound_bits();
    let pi = Ext::pi(wide);
    let roots = (1..=n)
        .map(|j| {
            let angle = &pi * &Ext::ratio(2 * j as i64 - 1, 2 * n as i64, wide);
            angle.cos().with_bits(ctx.bits())
        })
        .collect();
    Ok(RootSet::real(roots, Exactness::Analytic))
}

/// `2^(i/2)` for `i = -3..=9`.
pub fn well_separated_roots(ctx: &PrecisionContext) -> RootSet {
    let wide = ctx.bound_bits();
    let sqrt2 = Ext::from_i64(2, wide).sqrt();
    let roots = (-3i32..=9)
        .map(|i| {
            let p = Ext::pow2(i.div_euclid(2), wide);
            let v = if i.rem_euclid(2) == 1 { p * &sqrt2 } else { p };
            v.with_bits(ctx.bits())
        })
        .collect();
    RootSet::real(roots, Exactness::Analytic)
}

/// `i sqrt(2)` for `i = 1..=13`.
pub fn clustered_roots(ctx: &PrecisionContext) -> RootSet {
    let wide = ctx.bound_bits();
    let sqrt2 = Ext::from_i64(2, wide).sqrt();
    let roots = (1..=13).map(|i| (Ext::from_i64(i, wide) * &sqrt2).with_bits(ctx.bits())).collect();
    RootSet::real(roots, Exactness::Analytic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn oracle() -> PrecisionContext {
        PrecisionContext::oracle()
    }

    fn real_roots(v: &[f64]) -> Vec<Cx<f64>> {
        v.iter().map(|&x| Cx::real(x)).collect()
    }

    #[test]
    fn from_roots_small() {
        let p = from_roots(&real_roots(&[1.0, 2.0])).unwrap();
        assert_eq!(p.coeffs(), &[2.0, -3.0, 1.0]);
        let q = from_roots(&[Cx::new(1.0, 2.0), Cx::new(1.0, -2.0)]).unwrap();
        assert_eq!(q.coeffs(), &[5.0, -2.0, 1.0]);
        assert!(matches!(from_roots(&[Cx::new(1.0, 2.0), Cx::new(1.0, 2.0)]), Err(Error::NonConjugateRoots(0))));
        assert!(matches!(from_roots(&[Cx::new(1.0, 2.0)]), Err(Error::NonConjugateRoots(0))));
    }

    #[test]
    fn repeated_root_product_matches_binomial_power() {
        let ctx = oracle();
        let sqrt2 = Ext::from_i64(2, ctx.bits()).sqrt();
        let roots: Vec<Cx<Ext>> = (0..100).map(|_| Cx::real(sqrt2.clone())).collect();
        let prod = from_roots(&roots).unwrap();
        let binom: Polynomial<Ext> = binomial_power(&sqrt2, 100, &ctx).unwrap();
        let b64: Polynomial<f64> = binomial_power(&sqrt2, 100, &PrecisionContext::binary64()).unwrap();
        for k in 0..=100 {
            let rel = ((&prod.coeffs()[k] - &binom.coeffs()[k]) / &binom.coeffs()[k]).abs();
            assert!(rel.to_f64() < 1e-95);
            let x = prod.coeffs()[k].to_f64();
            let y = b64.coeffs()[k];
            assert!((x - y).abs() <= 2.0 * f64::EPSILON * y.abs());
        }
    }

    #[test]
    fn clustered_example_has_degree_13() {
        let ctx = oracle();
        let p = clustered_roots(&ctx).polynomial().unwrap();
        assert_eq!(p.degree(), 13);
        assert!(p.is_monic());
        assert_eq!(well_separated_roots(&ctx).polynomial().unwrap().degree(), 13);
        let w = well_separated_roots(&ctx);
        assert_eq!(w.roots[3].re, Ext::one(64));
        assert!((w.roots[0].re.to_f64() - 2f64.powf(-1.5)).abs() < 1e-16);
    }

    #[test]
    fn binomial_cases() {
        let b64 = PrecisionContext::binary64();
        let p: Polynomial<f64> = binomial_power(&Ext::one(64), 2, &b64).unwrap();
        assert_eq!(p.coeffs(), &[1.0, -2.0, 1.0]);
        let z: Polynomial<f64> = binomial_power(&Ext::zero(64), 5, &b64).unwrap();
        assert_eq!(z.coeffs(), &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);

        // x^50 coefficient of (x - sqrt2)^100 is C(100,50) 2^25, an integer.
        let ctx = oracle();
        let sqrt2 = Ext::from_i64(2, ctx.bits()).sqrt();
        let p: Polynomial<Ext> = binomial_power(&sqrt2, 100, &ctx).unwrap();
        let exact = Ext::from_bigint(&(pascal_row(100)[50].clone() << 25), 1024);
        let rel = ((&p.coeffs()[50] - &exact) / &exact).abs();
        assert!(rel.to_f64() < 1e-99);

        let huge: Result<Polynomial<f64>> = binomial_power(&Ext::from_f64(1e300, 64), 3, &b64);
        assert!(matches!(huge, Err(Error::Overflow)));
    }

    #[test]
    fn chebyshev_cases() {
        let to_i = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(chebyshev(2).coeffs, to_i(&[-1, 0, 2]));
        assert_eq!(chebyshev(3).coeffs, to_i(&[0, -3, 0, 4]));
        for n in 1..40 {
            assert_eq!(*chebyshev(n).leading(), BigInt::from(1) << (n - 1));
        }
        for n in [5usize, 10] {
            let d = chebyshev(n).derivative();
            assert_eq!(d.eval_int(&BigInt::from(1)), BigInt::from(n * n));
        }
        let t100 = chebyshev(100);
        assert!(t100.coeffs.iter().skip(1).step_by(2).all(|c| *c == BigInt::from(0)));
    }

    #[test]
    fn chebyshev_root_values() {
        let ctx = oracle();
        let r1 = chebyshev_roots(1, &ctx).unwrap();
        assert!(r1.roots[0].re.abs().to_f64() < 1e-100);
        let r2 = chebyshev_roots(2, &ctx).unwrap().to_f64();
        assert!((r2[0].re - 0.5f64.sqrt()).abs() < 1e-16);
        assert!((r2[1].re + 0.5f64.sqrt()).abs() < 1e-16);
        let r100 = chebyshev_roots(100, &ctx).unwrap().to_f64();
        assert!((r100[52].re + 0.0785).abs() < 1e-4);
        assert!((r100[2].re - 0.99692).abs() < 1e-5);
    }

    #[test]
    fn chebyshev_vanishes_at_its_roots() {
        let ctx = oracle();
        for n in [1usize, 7, 30, 100] {
            let t: Polynomial<Ext> = chebyshev(n).to_real(&ctx).unwrap();
            for z in &chebyshev_roots(n, &ctx).unwrap().roots {
                let v = t.eval(z).abs();
                let scale = t.eval_abs(&z.re.abs()).max(&Ext::one(64));
                assert!((v / scale).to_f64() <= 1e-95, "n={n}");
            }
        }
        let t: Polynomial<Ext> = chebyshev(100).to_real(&ctx).unwrap();
        let z = &chebyshev_roots(100, &ctx).unwrap().roots[52];
        assert!(t.eval(z).abs().to_f64() <= 1e-95);
    }

    #[test]
    fn evaluation_and_derivative() {
        let p = Polynomial::new(vec![2.0, -3.0, 1.0]).unwrap();
        assert_eq!(p.eval(&Cx::real(1.0)), Cx::real(0.0));
        assert_eq!(p.derivative().coeffs(), &[-3.0, 2.0]);
        let q = Polynomial::new(vec![1.0, 0.0, 1.0]).unwrap();
        assert_eq!(q.eval(&Cx::real(0.0)), Cx::real(1.0));
        assert_eq!(q.eval(&Cx::new(0.0, 1.0)), Cx::new(0.0, 0.0));
        assert_eq!(Polynomial::new(vec![4.0]).unwrap().derivative().coeffs(), &[0.0]);
        assert_eq!(q.eval_abs(&2.0), 5.0);
    }

    #[test]
    fn normalized_series_has_unit_constant() {
        let p = Polynomial::new(vec![2.0, -3.0, 1.0]).unwrap();
        assert_eq!(p.normalized_series().unwrap().coeffs(), &[1.0, -1.5, 0.5]);
        let z = Polynomial::new(vec![0.0, 1.0]).unwrap();
        assert!(z.normalized_series().is_err());
    }

    proptest! {
        #[test]
        fn product_vanishes_at_each_root(roots in prop::collection::vec(-3.0f64..3.0, 1..20)) {
            let ctx = oracle();
            let rs: Vec<Cx<Ext>> = roots.iter().map(|&x| Cx::real(Ext::from_f64(x, ctx.bits()))).collect();
            let p = from_roots(&rs).unwrap();
            for z in &rs {
                let v = p.eval(z).abs();
                let scale = p.eval_abs(&z.re.abs()).max(&Ext::one(64));
                prop_assert!((v / scale).to_f64() <= 1e-90);
            }
        }
    }
}
