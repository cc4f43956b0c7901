//! Coefficient scalars for the asymptotic field.
//!
//! Two instantiations are provided: exact arbitrary-precision rationals
//! ([`Rational`]) and binary floating point with a configurable mantissa
//! ([`Mpf`], MPFR-backed, at least 64 fractional bits).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};

use num_traits::{Signed, ToPrimitive, Zero};
use rug::float::Constant;
use rug::Float;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a reduced rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// An ordered-field coefficient type.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Sign as -1, 0 or +1.
    fn sign(&self) -> i32;
    fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
    fn to_f64(&self) -> f64;
    /// Fractional bits carried by the type; `None` means exact arithmetic.
    fn precision_bits() -> Option<u32>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn from_int(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        rat(numer, denom)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn precision_bits() -> Option<u32> {
        None
    }
}

static DEFAULT_PREC: AtomicU32 = AtomicU32::new(128);

/// Sets the mantissa width used by newly created [`Mpf`] values.
pub fn set_default_precision(bits: u32) {
    DEFAULT_PREC.store(bits.max(64), Ordering::Relaxed);
}

pub fn default_precision() -> u32 {
    DEFAULT_PREC.load(Ordering::Relaxed)
}

/// Multiple-precision binary float (MPFR-backed).
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Mpf(Float);

impl Mpf {
    pub fn new(v: f64) -> Self {
        Mpf(Float::with_val(default_precision(), v))
    }

    pub fn from_float(f: Float) -> Self {
        Mpf(f)
    }

    pub fn pi() -> Self {
        Mpf(Float::with_val(default_precision(), Constant::Pi))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn sin(&self) -> Self {
        Mpf(self.0.clone().sin())
    }
    pub fn cos(&self) -> Self {
        Mpf(self.0.clone().cos())
    }
    pub fn exp(&self) -> Self {
        Mpf(self.0.clone().exp())
    }
    pub fn ln(&self) -> Self {
        Mpf(self.0.clone().ln())
    }
    pub fn atan(&self) -> Self {
        Mpf(self.0.clone().atan())
    }

    /// Unit roundoff for this value's precision.
    pub fn roundoff(&self) -> f64 {
        2f64.powi(1 - self.0.prec() as i32)
    }
}

impl Display for Mpf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

macro_rules! mpf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Mpf {
            type Output = Mpf;
            fn $method(self, rhs: Mpf) -> Mpf {
                let prec = self.0.prec().max(rhs.0.prec());
                Mpf(Float::with_val(prec, (&self.0).$method(&rhs.0)))
            }
        }
    };
}

mpf_binop!(Add, add);
mpf_binop!(Sub, sub);
mpf_binop!(Mul, mul);
mpf_binop!(Div, div);

impl Neg for Mpf {
    type Output = Mpf;
    fn neg(self) -> Mpf {
        Mpf(-self.0)
    }
}

impl Scalar for Mpf {
    fn zero() -> Self {
        Mpf(Float::with_val(default_precision(), 0))
    }
    fn one() -> Self {
        Mpf(Float::with_val(default_precision(), 1))
    }
    fn from_int(v: i64) -> Self {
        Mpf(Float::with_val(default_precision(), v))
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        let r = rug::Rational::from((numer, denom));
        Mpf(Float::with_val(default_precision(), r))
    }
    fn from_rational(r: &Rational) -> Self {
        // num and rug share the "p/q" textual form.
        let q = rug::Rational::from_str(&r.to_string()).expect("rational round-trip");
        Mpf(Float::with_val(default_precision(), q))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn sign(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_sign_positive() {
            1
        } else {
            -1
        }
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn precision_bits() -> Option<u32> {
        Some(default_precision())
    }
}

/// Scalars supporting elementary transcendental functions.
pub trait Transcendental: Scalar {
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn atan(&self) -> Self;
    fn pi() -> Self;
}

impl Transcendental for Mpf {
    fn sin(&self) -> Self {
        Mpf::sin(self)
    }
    fn cos(&self) -> Self {
        Mpf::cos(self)
    }
    fn exp(&self) -> Self {
        Mpf::exp(self)
    }
    fn ln(&self) -> Self {
        Mpf::ln(self)
    }
    fn atan(&self) -> Self {
        Mpf::atan(self)
    }
    fn pi() -> Self {
        Mpf::pi()
    }
}
