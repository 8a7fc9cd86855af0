//! Floating-point model: working precisions, unit roundoff, and the
//! accumulation coefficients `gamma_n = n u / (1 - n u)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::Ext;

/// Smallest decimal digit count accepted for the extended (oracle) precision.
pub const MIN_ORACLE_DIGITS: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Binary64,
    Extended { digits: u32 },
}

/// A working precision. Immutable once built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    mode: Mode,
    bits: usize,
}

impl PrecisionContext {
    pub fn binary64() -> Self {
        PrecisionContext { mode: Mode::Binary64, bits: 53 }
    }

    /// Binary extended precision with at least `digits` decimal digits.
    pub fn extended(digits: u32) -> Result<Self> {
        if digits < MIN_ORACLE_DIGITS {
            return Err(Error::PrecisionTooLow(digits));
        }
        let needed = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        Ok(PrecisionContext { mode: Mode::Extended { digits }, bits: Ext::effective_bits(needed) })
    }

    /// The default oracle: 100 decimal digits.
    pub fn oracle() -> Self {
        Self::extended(MIN_ORACLE_DIGITS).expect("100 digits is the minimum")
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_extended(&self) -> bool {
        matches!(self.mode, Mode::Extended { .. })
    }

    /// Mantissa bits, including the leading bit.
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Precision used for bound arithmetic carried out on behalf of this context.
    pub(crate) fn bound_bits(&self) -> usize {
        Ext::effective_bits((self.bits + 128).max(384))
    }

    /// `u = 2^-bits`, exact.
    pub fn unit_roundoff(&self) -> Ext {
        Ext::pow2(-(self.bits as i32), 64)
    }

    pub fn unit_roundoff_f64(&self) -> f64 {
        self.unit_roundoff().to_f64()
    }

    /// `gamma_n`, rounded upward so it never understates `n u / (1 - n u)`.
    pub fn gamma(&self, n: usize) -> Result<Ext> {
        let bits = self.bound_bits();
        if n == 0 {
            return Ok(Ext::zero(bits));
        }
        let nu = Ext::from_i64(n as i64, bits) * self.unit_roundoff();
        let one = Ext::one(bits);
        if nu >= one {
            return Err(Error::GammaUndefined { n, u: self.unit_roundoff_f64() });
        }
        // n*u and 1 - n*u are exact at bound_bits
        let den = &one - &nu;
        Ok(nu.div_up(&den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_roundoff_values() {
        let b = PrecisionContext::binary64();
        assert_eq!(b.unit_roundoff_f64(), 2f64.powi(-53));
        let e100 = PrecisionContext::extended(100).unwrap();
        assert!(e100.unit_roundoff_f64() <= 1e-99);
        assert!(e100.bits() >= 333);
        let e200 = PrecisionContext::extended(200).unwrap();
        assert!(e200.unit_roundoff_f64() <= 1e-199);
    }

    #[test]
    fn extended_needs_100_digits() {
        assert!(matches!(PrecisionContext::extended(99), Err(Error::PrecisionTooLow(99))));
    }

    #[test]
    fn gamma_small_cases() {
        let b = PrecisionContext::binary64();
        assert!(b.gamma(0).unwrap().is_zero());
        let u = 2f64.powi(-53);
        let g1 = b.gamma(1).unwrap();
        // u/(1-u) computed wide
        let wide = Ext::from_f64(u, 2048) / (Ext::one(2048) - Ext::from_f64(u, 2048));
        assert!(g1 >= wide);
        assert!((g1.to_f64() - u / (1.0 - u)).abs() <= 1e-30);
    }

    #[test]
    fn gamma_undefined_when_nu_reaches_one() {
        let b = PrecisionContext::binary64();
        assert!(matches!(b.gamma(1 << 53), Err(Error::GammaUndefined { .. })));
        assert!(b.gamma((1 << 53) - 1).is_ok());
    }

    #[test]
    fn gamma_product_relation() {
        let b = PrecisionContext::binary64();
        let one = Ext::one(512);
        let lhs = (&one + &b.gamma(5).unwrap()) * (&one + &b.gamma(5).unwrap());
        let rhs = &one + &b.gamma(10).unwrap();
        assert!(lhs <= rhs);
    }
}
