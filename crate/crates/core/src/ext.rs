//! Extended-precision binary floating point used by every oracle and bound.
//!
//! [`Ext`] wraps an `astro_float::BigFloat`. Each value carries its own
//! mantissa length; binary operations run at the larger of the two operand
//! precisions and round to nearest (ties to even). astro-float offers no
//! directed rounding, so the `*_up`/`*_down` helpers obtain it by stepping
//! one ulp outward from the nearest result, which always brackets the exact
//! value since nearest rounding errs by at most half an ulp.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// An extended-precision real number.
#[derive(Clone)]
pub struct Ext(BigFloat);

impl Ext {
    /// Precision actually allocated for a request of `bits` (whole machine words, at least one).
    pub fn effective_bits(bits: usize) -> usize {
        bits.max(1).div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE
    }

    pub fn zero(bits: usize) -> Ext {
        Ext(BigFloat::from_i64(0, Self::effective_bits(bits)))
    }

    pub fn one(bits: usize) -> Ext {
        Ext(BigFloat::from_i64(1, Self::effective_bits(bits)))
    }

    /// Exact conversion; `bits` is raised to at least 64.
    pub fn from_f64(x: f64, bits: usize) -> Ext {
        Ext(BigFloat::from_f64(x, Self::effective_bits(bits.max(64))))
    }

    pub fn from_i64(n: i64, bits: usize) -> Ext {
        Ext(BigFloat::from_i64(n, Self::effective_bits(bits.max(64))))
    }

    /// `num / den` rounded once.
    pub fn ratio(num: i64, den: i64, bits: usize) -> Ext {
        Ext::from_i64(num, bits) / Ext::from_i64(den, bits)
    }

    /// Converts an arbitrary integer, rounding once to `bits`.
    pub fn from_bigint(n: &BigInt, bits: usize) -> Ext {
        let words = n.magnitude().to_u64_digits();
        let exact_bits = Self::effective_bits((words.len() + 1) * 64);
        let mut acc = BigFloat::from_i64(0, exact_bits);
        let shift = BigFloat::from_f64(18446744073709551616.0, exact_bits);
        for w in words.iter().rev() {
            acc = acc
                .mul(&shift, exact_bits, RM)
                .add(&BigFloat::from_u64(*w, exact_bits), exact_bits, RM);
        }
        if n.is_negative() {
            acc.inv_sign();
        }
        let mut out = Ext(acc);
        out.set_bits(bits);
        out
    }

    /// `2^k`, exact.
    pub fn pow2(k: i32, bits: usize) -> Ext {
        let mut x = BigFloat::from_i64(1, Self::effective_bits(bits.max(64)));
        x.set_exponent(k + 1);
        Ext(x)
    }

    pub fn pi(bits: usize) -> Ext {
        let p = Self::effective_bits(bits);
        Ext(with_consts(|cc| cc.pi(p, RM)))
    }

    /// Mantissa length in bits.
    pub fn bits(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(64)
    }

    /// Rounds (or widens) to `bits` of mantissa.
    pub fn set_bits(&mut self, bits: usize) {
        let p = Self::effective_bits(bits);
        if self.0.mantissa_max_bit_len().is_some() {
            // Only fails for NaN/Inf, which carry no mantissa.
            let _ = self.0.set_precision(p, RM);
        }
    }

    pub fn with_bits(&self, bits: usize) -> Ext {
        let mut out = self.clone();
        out.set_bits(bits);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn abs(&self) -> Ext {
        Ext(self.0.abs())
    }

    pub fn sqrt(&self) -> Ext {
        Ext(self.0.sqrt(self.bits(), RM))
    }

    pub fn cos(&self) -> Ext {
        let p = self.bits();
        Ext(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn exp(&self) -> Ext {
        let p = self.bits();
        Ext(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    pub fn ln(&self) -> Ext {
        let p = self.bits();
        Ext(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: usize) -> Ext {
        Ext(self.0.powi(n, self.bits(), RM))
    }

    pub fn max(&self, other: &Ext) -> Ext {
        if other > self {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Binary exponent `e` with `|x| = 0.m * 2^e`, `0.5 <= 0.m < 1`.
    fn exponent(&self) -> Option<i32> {
        if self.0.is_zero() {
            return None;
        }
        self.0.exponent()
    }

    /// One unit in the last place of `self` at its own precision.
    pub fn ulp(&self) -> Ext {
        match self.exponent() {
            Some(e) => Ext::pow2(e - self.bits() as i32, 64),
            None => Ext::zero(64),
        }
    }

    /// Smallest representable-at-own-precision value guaranteed `>=` the exact
    /// quantity whose nearest rounding is `self`.
    pub fn round_up(&self) -> Ext {
        if self.is_zero() {
            return self.clone();
        }
        self + &self.ulp()
    }

    pub fn round_down(&self) -> Ext {
        if self.is_zero() {
            return self.clone();
        }
        self - &self.ulp()
    }

    /// Upper bound on `self + other`.
    pub fn add_up(&self, other: &Ext) -> Ext {
        (self + other).round_up()
    }

    /// Upper bound on `self * other`.
    pub fn mul_up(&self, other: &Ext) -> Ext {
        (self * other).round_up()
    }

    /// Upper bound on `self / other`, for `other > 0`.
    pub fn div_up(&self, other: &Ext) -> Ext {
        (self / other).round_up()
    }

    /// Lower bound on `self - other`.
    pub fn sub_down(&self, other: &Ext) -> Ext {
        (self - other).round_down()
    }

    /// Nearest binary64 value (ties to even). Overflow gives infinity,
    /// values below the normal range are flushed through f64 scaling.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_inf_pos() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let Some((words, _, sign, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        if self.0.is_zero() || words.is_empty() {
            return 0.0;
        }
        let top = words[words.len() - 1];
        let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
        let sticky = words.len() > 2 && words[..words.len() - 2].iter().any(|&w| w != 0);
        let mut q = top >> 11;
        let rem = top & 0x7ff;
        const HALF: u64 = 0x400;
        let round_up = rem > HALF || (rem == HALF && (next != 0 || sticky || q & 1 == 1));
        if round_up {
            q += 1;
        }
        let mag = ldexp(q as f64, e as i64 - 53);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Smallest binary64 value `>= self`.
    pub fn to_f64_up(&self) -> f64 {
        let f = self.to_f64();
        if !f.is_finite() {
            return f;
        }
        if Ext::from_f64(f, 64) < *self {
            f.next_up()
        } else {
            f
        }
    }

    /// Largest binary64 value `<= self`.
    pub fn to_f64_down(&self) -> f64 {
        let f = self.to_f64();
        if !f.is_finite() {
            return f;
        }
        if Ext::from_f64(f, 64) > *self {
            f.next_down()
        } else {
            f
        }
    }

    /// `ln |self|` as a binary64 value, valid far outside the f64 exponent range.
    pub fn ln_abs(&self) -> f64 {
        match (self.exponent(), self.0.as_raw_parts()) {
            (Some(e), Some((words, ..))) if !words.is_empty() => {
                let frac = words[words.len() - 1] as f64 / 18446744073709551616.0;
                frac.ln() + e as f64 * std::f64::consts::LN_2
            }
            _ => f64::NEG_INFINITY,
        }
    }

    /// Decimal scientific notation with enough digits to round-trip at this precision.
    pub fn to_decimal(&self) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        // the formatter is not correctly rounded; guard digits make parsing back exact
        let wide = self.with_bits(self.bits() + 64);
        with_consts(|cc| wide.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string())
    }

    /// Parses a decimal string, rounding once to `bits`.
    pub fn parse(s: &str, bits: usize) -> Result<Ext> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let p = Self::effective_bits(bits.max(64));
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, p, RM, cc));
        if v.is_nan() {
            return Err(Error::Parse(format!("not a decimal number: '{t}'")));
        }
        Ok(Ext(v))
    }
}

fn ldexp(x: f64, mut e: i64) -> f64 {
    if x == 0.0 {
        return x;
    }
    if e > 2200 {
        return x * f64::INFINITY;
    }
    if e < -2200 {
        return x * 0.0;
    }
    let mut y = x;
    while e > 1000 {
        y *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        y *= 2f64.powi(-1000);
        e += 1000;
    }
    y * 2f64.powi(e as i32)
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext({})", self.to_decimal())
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

fn prec(a: &Ext, b: &Ext) -> usize {
    a.bits().max(b.bits())
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Ext> for &Ext {
            type Output = Ext;
            fn $method(self, rhs: &'a Ext) -> Ext {
                Ext(self.0.$method(&rhs.0, prec(self, rhs), RM))
            }
        }
        impl<'a> $tr<&'a Ext> for Ext {
            type Output = Ext;
            fn $method(self, rhs: &'a Ext) -> Ext {
                (&self).$method(rhs)
            }
        }
        impl $tr<Ext> for &Ext {
            type Output = Ext;
            fn $method(self, rhs: Ext) -> Ext {
                self.$method(&rhs)
            }
        }
        impl $tr<Ext> for Ext {
            type Output = Ext;
            fn $method(self, rhs: Ext) -> Ext {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Ext> for Ext {
    fn add_assign(&mut self, rhs: &Ext) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Ext> for Ext {
    fn sub_assign(&mut self, rhs: &Ext) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Ext> for Ext {
    fn mul_assign(&mut self, rhs: &Ext) {
        *self = &*self * rhs;
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(self.0.neg())
    }
}

impl Neg for &Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(self.0.clone().neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip_is_exact() {
        for &x in &[1.0, -0.1, 1e-300, 3.5e300, std::f64::consts::PI, 5e-324_f64.max(1e-307)] {
            assert_eq!(Ext::from_f64(x, 384).to_f64(), x);
        }
    }

    #[test]
    fn to_f64_rounds_to_nearest_even() {
        // 1 + 2^-53 is a tie between 1 and 1 + 2^-52: even wins.
        let tie = Ext::one(384) + Ext::pow2(-53, 384);
        assert_eq!(tie.to_f64(), 1.0);
        let above = tie.clone() + Ext::pow2(-200, 384);
        assert_eq!(above.to_f64(), 1.0 + f64::EPSILON);
        let third = Ext::ratio(1, 3, 384);
        assert_eq!(third.to_f64(), 1.0 / 3.0);
    }

    #[test]
    fn directed_conversions_bracket() {
        let third = Ext::ratio(1, 3, 384);
        let up = third.to_f64_up();
        let down = third.to_f64_down();
        assert!(Ext::from_f64(up, 64) >= third);
        assert!(Ext::from_f64(down, 64) <= third);
        assert_eq!(up, down.next_up());
    }

    #[test]
    fn round_up_brackets_division() {
        let a = Ext::from_i64(1, 384);
        let b = Ext::from_i64(7, 384);
        let up = a.div_up(&b);
        // up * 7 computed at double width must be >= 1
        let wide = up.with_bits(1024) * Ext::from_i64(7, 1024);
        assert!(wide >= Ext::one(1024));
    }

    #[test]
    fn bigint_conversion() {
        let n: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let x = Ext::from_bigint(&n, 384);
        assert_eq!(x.to_decimal().replace('.', "")[..39], *"123456789012345678901234567890123456789");
        let m = -n;
        assert!(Ext::from_bigint(&m, 384).is_negative());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let x = Ext::parse("1.41421356237309504880168872420969807856967187537694807317667973799", 384).unwrap();
        let y = Ext::parse(&x.to_decimal(), 384).unwrap();
        assert_eq!(x, y);
        assert!(Ext::parse("abc", 384).is_err());
    }

    #[test]
    fn ln_abs_matches_f64() {
        let x = Ext::from_f64(12345.678, 384);
        assert!((x.ln_abs() - 12345.678f64.ln()).abs() < 1e-12);
        let big = Ext::pow2(5000, 384);
        assert!((big.ln_abs() - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
