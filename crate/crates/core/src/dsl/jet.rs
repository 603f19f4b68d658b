//! Second-order forward jets in one variable.
//!
//! A [`Jet2`] carries a value together with its first and second derivative
//! with respect to a single active variable (here always the end coordinate
//! `t`). Arithmetic propagates the truncated Taylor coefficients exactly, so
//! any composition of the supported operations yields exact derivatives up to
//! rounding.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::DomainError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    /// A passive quantity: zero derivatives.
    pub const fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0)
    }

    /// The active variable itself at `x`.
    pub const fn variable(x: f64) -> Self {
        Self::new(x, 1.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    pub fn is_constant(&self) -> bool {
        self.d1 == 0.0 && self.d2 == 0.0
    }

    /// Applies a scalar function given its value and first two derivatives at
    /// `self.value` (Faà di Bruno to second order).
    #[inline]
    pub fn chain(self, f: f64, df: f64, d2f: f64) -> Self {
        Self::new(f, df * self.d1, d2f * self.d1 * self.d1 + df * self.d2)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Result<Self, DomainError> {
        if self.value <= 0.0 {
            return Err(DomainError::LogNonPositive(self.value));
        }
        let inv = 1.0 / self.value;
        Ok(self.chain(self.value.ln(), inv, -inv * inv))
    }

    pub fn sqrt(self) -> Result<Self, DomainError> {
        if self.value < 0.0 {
            return Err(DomainError::SqrtNegative(self.value));
        }
        let s = self.value.sqrt();
        if s == 0.0 {
            // derivative of sqrt is unbounded at 0 unless the argument is
            // locally constant
            if self.is_constant() {
                return Ok(Self::constant(0.0));
            }
            return Err(DomainError::NonFinite("sqrt at zero"));
        }
        // f' = G'/(2f), f'' = (G''/2 - f'^2)/f: no power of G below f, so
        // tiny G does not underflow
        let d1 = 0.5 * self.d1 / s;
        Ok(Self::new(s, d1, (0.5 * self.d2 - d1 * d1) / s))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(self) -> Self {
        let th = self.value.tanh();
        let sech2 = 1.0 - th * th;
        self.chain(th, sech2, -2.0 * th * sech2)
    }

    /// `self^n` for an integer exponent; valid for any base except zero with
    /// a negative exponent.
    pub fn powi(self, n: i32) -> Result<Self, DomainError> {
        if n == 0 {
            return Ok(Self::constant(1.0));
        }
        let x = self.value;
        if x == 0.0 && n < 0 {
            return Err(DomainError::DivisionByZero);
        }
        let nf = f64::from(n);
        let f = x.powi(n);
        let df = nf * x.powi(n - 1);
        let d2f = if n == 1 {
            0.0
        } else {
            nf * (nf - 1.0) * x.powi(n - 2)
        };
        Ok(self.chain(f, df, d2f))
    }

    /// General power. Integer-valued constant exponents take the exact
    /// [`Jet2::powi`] path; everything else goes through `exp(y ln x)`.
    pub fn pow(self, exponent: Jet2) -> Result<Self, DomainError> {
        if exponent.is_constant() {
            let p = exponent.value;
            if p.fract() == 0.0 && p.abs() <= f64::from(i32::MAX) {
                return self.powi(p as i32);
            }
            if self.value <= 0.0 {
                return Err(DomainError::LogNonPositive(self.value));
            }
            let x = self.value;
            let f = x.powf(p);
            return Ok(self.chain(f, p * f / x, p * (p - 1.0) * f / (x * x)));
        }
        Ok((exponent * self.ln()?).exp())
    }

    pub fn checked_div(self, rhs: Jet2) -> Result<Self, DomainError> {
        if rhs.value == 0.0 {
            return Err(DomainError::DivisionByZero);
        }
        Ok(self / rhs)
    }

    pub fn finite(self, what: &'static str) -> Result<Self, DomainError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(DomainError::NonFinite(what))
        }
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
    fn div(self, rhs: Jet2) -> Jet2 {
        let q = self.value / rhs.value;
        let d1 = (self.d1 - q * rhs.d1) / rhs.value;
        let d2 = (self.d2 - 2.0 * d1 * rhs.d1 - q * rhs.d2) / rhs.value;
        Jet2::new(q, d1, d2)
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
