//! Minimal complex arithmetic over any [`Real`] scalar.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn real(re: R) -> Self {
        let im = re.zero_like();
        Cx { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    pub fn abs(&self) -> R {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Cx { re: self.re.clone() / &d, im: -(self.im.clone() / &d) }
    }

    pub fn scale(&self, s: &R) -> Self {
        Cx { re: self.re.clone() * s, im: self.im.clone() * s }
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut acc = Cx::real(self.re.one_like());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<R: Real> Add for &Cx<R> {
    type Output = Cx<R>;
    fn add(self, o: &Cx<R>) -> Cx<R> {
        Cx { re: self.re.clone() + &o.re, im: self.im.clone() + &o.im }
    }
}

impl<R: Real> Sub for &Cx<R> {
    type Output = Cx<R>;
    fn sub(self, o: &Cx<R>) -> Cx<R> {
        Cx { re: self.re.clone() - &o.re, im: self.im.clone() - &o.im }
    }
}

impl<R: Real> Mul for &Cx<R> {
    type Output = Cx<R>;
    fn mul(self, o: &Cx<R>) -> Cx<R> {
        if self.im.is_zero() && o.im.is_zero() {
            return Cx::real(self.re.clone() * &o.re);
        }
        Cx {
            re: self.re.clone() * &o.re - self.im.clone() * &o.im,
            im: self.re.clone() * &o.im + self.im.clone() * &o.re,
        }
    }
}

impl<R: Real> Div for &Cx<R> {
    type Output = Cx<R>;
    fn div(self, o: &Cx<R>) -> Cx<R> {
        if o.im.is_zero() {
            return Cx { re: self.re.clone() / &o.re, im: self.im.clone() / &o.re };
        }
        self * &o.recip()
    }
}

impl<R: Real> Neg for &Cx<R> {
    type Output = Cx<R>;
    fn neg(self) -> Cx<R> {
        Cx { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! owned {
    ($tr:ident, $m:ident) => {
        impl<R: Real> $tr for Cx<R> {
            type Output = Cx<R>;
            fn $m(self, o: Cx<R>) -> Cx<R> {
                (&self).$m(&o)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);
owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let i = Cx::new(0.0, 1.0);
        let m = &i * &i;
        assert_eq!(m, Cx::new(-1.0, 0.0));
        let z = Cx::new(3.0, 4.0);
        assert_eq!(z.abs(), 5.0);
        let q = &z / &z;
        assert!((q.re - 1.0).abs() < 1e-15 && q.im.abs() < 1e-15);
        assert_eq!(z.powi(2), &z * &z);
        assert_eq!(z.powi(0), Cx::real(1.0));
    }
}
