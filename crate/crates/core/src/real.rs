//! The scalar abstraction shared by the binary64 and extended-precision code paths.
//!
//! Algorithms are written once, generic over [`Real`]; running them on `f64`
//! gives the analyzed binary64 computation, running them on [`Ext`] gives the
//! oracle. Both use the same operation order, so the only difference between
//! the two runs is rounding.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::ext::Ext;
use crate::precision::PrecisionContext;

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Exact when the context is at least binary64.
    fn from_f64_in(x: f64, ctx: &PrecisionContext) -> Self;
    /// Rounds once into the context.
    fn from_ext_in(x: &Ext, ctx: &PrecisionContext) -> Self;
    /// Exact widening (f64 values land at `ctx` precision, Ext values keep theirs).
    fn to_ext(&self, ctx: &PrecisionContext) -> Ext;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn mul_usize(&self, k: usize) -> Self;
    fn ln_abs(&self) -> f64;
}

impl Real for f64 {
    fn from_f64_in(x: f64, _: &PrecisionContext) -> Self {
        x
    }
    fn from_ext_in(x: &Ext, _: &PrecisionContext) -> Self {
        x.to_f64()
    }
    fn to_ext(&self, ctx: &PrecisionContext) -> Ext {
        Ext::from_f64(*self, ctx.bits())
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn mul_usize(&self, k: usize) -> Self {
        *self * k as f64
    }
    fn ln_abs(&self) -> f64 {
        f64::abs(*self).ln()
    }
}

impl Real for Ext {
    fn from_f64_in(x: f64, ctx: &PrecisionContext) -> Self {
        Ext::from_f64(x, ctx.bits())
    }
    fn from_ext_in(x: &Ext, ctx: &PrecisionContext) -> Self {
        x.with_bits(ctx.bits())
    }
    fn to_ext(&self, _: &PrecisionContext) -> Ext {
        self.clone()
    }
    fn to_f64(&self) -> f64 {
        Ext::to_f64(self)
    }
    fn abs(&self) -> Self {
        Ext::abs(self)
    }
    fn sqrt(&self) -> Self {
        Ext::sqrt(self)
    }
    fn is_zero(&self) -> bool {
        Ext::is_zero(self)
    }
    fn is_finite(&self) -> bool {
        Ext::is_finite(self)
    }
    fn zero_like(&self) -> Self {
        Ext::zero(self.bits())
    }
    fn one_like(&self) -> Self {
        Ext::one(self.bits())
    }
    fn mul_usize(&self, k: usize) -> Self {
        self * &Ext::from_i64(k as i64, self.bits())
    }
    fn ln_abs(&self) -> f64 {
        Ext::ln_abs(self)
    }
}
