//! Truncated second-order Taylor jets.
//!
//! A [`Jet2`] carries `(value, d1, d2)` of a scalar function at a point.
//! Arithmetic propagates first and second derivatives exactly by the chain
//! and product rules, so composing jets gives exact derivatives to rounding.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Value, first and second derivative of a function of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Public name used by the expression evaluator.
pub type SecondOrderJet = Jet2;

impl Jet2 {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    pub const fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0)
    }

    /// The identity function seeded at `x`.
    pub const fn variable(x: f64) -> Self {
        Self::new(x, 1.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// Compose with an outer function `g` given `(g(v), g'(v), g''(v))`.
    pub fn compose(self, g: f64, g1: f64, g2: f64) -> Self {
        Self::new(g, g1 * self.d1, g2 * self.d1 * self.d1 + g1 * self.d2)
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.value;
        self.compose(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.compose(r, 0.5 / r, -0.25 / (r * self.value))
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.compose(e, e, e)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.value;
        self.compose(self.value.ln(), r, -r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.compose(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Self {
        self.compose(self.value.sinh(), self.value.cosh(), self.value.sinh())
    }

    pub fn cosh(self) -> Self {
        self.compose(self.value.cosh(), self.value.sinh(), self.value.cosh())
    }

    pub fn tanh(self) -> Self {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.compose(t, sech2, -2.0 * t * sech2)
    }

    pub fn sech(self) -> Self {
        let t = self.value.tanh();
        let sh = 1.0 / self.value.cosh();
        self.compose(sh, -sh * t, sh * (t * t - sh * sh))
    }

    pub fn csch(self) -> Self {
        let ch = 1.0 / self.value.sinh();
        let ct = 1.0 / self.value.tanh();
        self.compose(ch, -ch * ct, ch * (ct * ct + ch * ch))
    }

    pub fn coth(self) -> Self {
        let ch = 1.0 / self.value.sinh();
        let ct = 1.0 / self.value.tanh();
        self.compose(ct, -ch * ch, 2.0 * ch * ch * ct)
    }

    pub fn atan(self) -> Self {
        let q = 1.0 / (1.0 + self.value * self.value);
        self.compose(self.value.atan(), q, -2.0 * self.value * q * q)
    }

    /// `|x|` away from the origin.
    pub fn abs(self) -> Self {
        let sign = self.value.signum();
        self.compose(self.value.abs(), sign, 0.0)
    }

    /// Integer power by repeated squaring, exact for any sign of the base.
    pub fn powi(self, k: i64) -> Self {
        if k < 0 {
            return self.powi(-k).recip();
        }
        let mut result = Self::constant(1.0);
        let mut base = self;
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    /// `self^exponent` for a positive base, via `exp(exponent * ln(self))`.
    pub fn powf(self, exponent: Jet2) -> Self {
        (exponent * self.ln()).exp()
    }
}

impl From<f64> for Jet2 {
    fn from(value: f64) -> Self {
        Self::constant(value)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.value + rhs.value, self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.value - rhs.value, self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.value * rhs.value,
            self.d1 * rhs.value + self.value * rhs.d1,
            self.d2 * rhs.value + 2.0 * self.d1 * rhs.d1 + self.value * rhs.d2,
        )
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.value, -self.d1, -self.d2)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        Jet2::new(self.value * rhs, self.d1 * rhs, self.d2 * rhs)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: f64) -> Jet2 {
        Jet2::new(self.value + rhs, self.d1, self.d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_on_polynomial() {
        // (x^2)(x^3) = x^5 at x = 2: 32, 80, 160
        let x = Jet2::variable(2.0);
        let p = (x * x) * (x * x * x);
        assert_eq!(p, Jet2::new(32.0, 80.0, 160.0));
    }

    #[test]
    fn integer_powers_of_negative_base() {
        let x = Jet2::variable(-1.5);
        let p = x.powi(3);
        assert_eq!(p.value, -3.375);
        assert_eq!(p.d1, 3.0 * 2.25);
        assert_eq!(p.d2, 6.0 * -1.5);
        let q = x.powi(-2);
        assert!((q.value - 1.0 / 2.25).abs() < 1e-15);
        assert!((q.d1 - (-2.0 / -3.375)).abs() < 1e-14);
    }

    #[test]
    fn quotient_matches_closed_form() {
        // 1/(1+x^2) at x = 0.5
        let x = Jet2::variable(0.5);
        let q = Jet2::constant(1.0) / (x * x + 1.0);
        let d = 1.25f64;
        assert!((q.value - 1.0 / d).abs() < 1e-15);
        assert!((q.d1 - (-1.0 / (d * d))).abs() < 1e-15);
        let d2 = (6.0 * 0.25 - 2.0) / (d * d * d);
        assert!((q.d2 - d2).abs() < 1e-14);
    }
}
