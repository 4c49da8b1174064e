//! Complex numbers stored as `(ln|w|, arg w)`.
//!
//! The products in this crate grow like `exp(pi |z|^2 / 2)`, so every value
//! is carried in logarithmic form and only exponentiated when the caller
//! asks for it.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    t
}

/// A complex value `exp(log_modulus) * exp(i * argument)`.
///
/// `log_modulus == -inf` encodes an exact zero, in which case the argument is
/// pinned to zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_modulus: f64,
    pub argument: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_modulus: f64::NEG_INFINITY,
        argument: 0.0,
    };

    pub const ONE: LogComplex = LogComplex {
        log_modulus: 0.0,
        argument: 0.0,
    };

    pub fn new(log_modulus: f64, argument: f64) -> Self {
        if log_modulus == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            log_modulus,
            argument: wrap_angle(argument),
        }
    }

    /// `exp(w)` for a complex exponent `w`.
    pub fn exp(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(w: Complex64) -> Self {
        if w.re == 0.0 && w.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(w.norm().ln(), w.arg())
    }

    pub fn is_zero(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    /// Converts back to a plain complex number. Overflows to infinity when
    /// `log_modulus > ~709`.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_modulus.exp(), self.argument)
    }

    pub fn modulus(&self) -> f64 {
        self.log_modulus.exp()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_modulus, -self.argument)
    }

    /// Multiplies by the real scale `exp(delta)`.
    pub fn scale_log(&self, delta: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self::new(self.log_modulus + delta, self.argument)
    }

    /// Signed angular distance between two arguments, in `(-pi, pi]`.
    pub fn argument_difference(&self, other: &LogComplex) -> f64 {
        wrap_angle(self.argument - other.argument)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;

    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_modulus + rhs.log_modulus, self.argument + rhs.argument)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;

    /// Division by zero yields a value with `log_modulus == +inf`.
    fn div(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_modulus - rhs.log_modulus, self.argument - rhs.argument)
    }
}

impl Neg for LogComplex {
    type Output = LogComplex;

    fn neg(self) -> LogComplex {
        if self.is_zero() {
            return self;
        }
        LogComplex::new(self.log_modulus, self.argument + PI)
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "exp({:.12e}) * e^(i {:.12})", self.log_modulus, self.argument)
        }
    }
}
