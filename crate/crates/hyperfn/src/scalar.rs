//! Finite complex scalars.
//!
//! Thin wrapper around `num_complex::Complex64` that rejects NaN and
//! infinity at construction, so every coefficient and evaluation input in
//! the crate is known finite. Serialized as `{re, im}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::HyperError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct ComplexScalar {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    re: f64,
    im: f64,
}

impl TryFrom<RawComplex> for ComplexScalar {
    type Error = HyperError;
    fn try_from(raw: RawComplex) -> Result<Self, HyperError> {
        ComplexScalar::new(raw.re, raw.im)
    }
}

impl From<ComplexScalar> for RawComplex {
    fn from(c: ComplexScalar) -> RawComplex {
        RawComplex { re: c.re, im: c.im }
    }
}

impl ComplexScalar {
    pub fn new(re: f64, im: f64) -> Result<Self, HyperError> {
        if !re.is_finite() || !im.is_finite() {
            return Err(HyperError::NonFiniteComponent { re, im });
        }
        Ok(ComplexScalar { re, im })
    }

    /// Real scalar. Panics on non-finite input, which the crate never
    /// produces from finite inputs.
    pub fn real(re: f64) -> Self {
        ComplexScalar::new(re, 0.0).expect("finite real scalar")
    }

    pub fn zero() -> Self {
        ComplexScalar { re: 0.0, im: 0.0 }
    }

    pub fn one() -> Self {
        ComplexScalar { re: 1.0, im: 0.0 }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// Negation: `op = 0 - J`.
    pub fn op(&self) -> Self {
        ComplexScalar {
            re: -self.re,
            im: -self.im,
        }
    }

    pub fn conj(&self) -> Self {
        ComplexScalar {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self, HyperError> {
        ComplexScalar::new(z.re, z.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im > 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

impl Add for ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: ComplexScalar) -> ComplexScalar {
        ComplexScalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: ComplexScalar) -> ComplexScalar {
        ComplexScalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: ComplexScalar) -> ComplexScalar {
        ComplexScalar {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        self.op()
    }
}
