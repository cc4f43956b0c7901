use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero (no terms to invert)")]
    DivisionByZero,
    #[error("unlimited argument: least exponent is negative")]
    UnlimitedArgument,
    #[error("Taylor model center does not match the shadow of the argument")]
    CenterMismatch,
    #[error("Taylor model has too few coefficients for the requested order")]
    InsufficientTaylorOrder,
}

/// Coarse size classification of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Magnitude {
    Zero,
    Infinitesimal,
    Appreciable,
    Unlimited,
}

impl Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Magnitude::Zero => "zero",
            Magnitude::Infinitesimal => "infinitesimal",
            Magnitude::Appreciable => "appreciable",
            Magnitude::Unlimited => "unlimited",
        };
        f.write_str(s)
    }
}

/// Outcome of comparing two elements.
///
/// Truncation makes exact equality undecidable, so "equal as far as the
/// common order can see" is a first-class outcome rather than an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    /// Difference vanishes up to the carried order (`None` = exactly equal).
    EqualWithinOrder(Option<Rational>),
}

/// A truncated asymptotic series `sum c_i e^{q_i}` over scalar coefficients.
///
/// Invariants: no stored coefficient is zero, all exponents are `<=` the
/// truncation order, and the zero element has an empty term map.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticNumber<C: Scalar> {
    terms: BTreeMap<Rational, C>,
    trunc: Option<Rational>,
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<C: Scalar> AsymptoticNumber<C> {
    pub fn zero() -> Self {
        AsymptoticNumber {
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn one() -> Self {
        Self::scalar(C::one())
    }

    /// Embeds a scalar as a standard (exponent-zero) element.
    pub fn scalar(c: C) -> Self {
        Self::monomial(c, num_traits::Zero::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Self::scalar(C::from_int(v))
    }

    /// The infinitesimal generator `e`.
    pub fn epsilon() -> Self {
        Self::monomial(C::one(), Rational::from_integer(1.into()))
    }

    pub fn monomial(coeff: C, exponent: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        AsymptoticNumber { terms, trunc: None }
    }

    pub fn from_terms<I>(terms: I, trunc: Option<Rational>) -> Self
    where
        I: IntoIterator<Item = (Rational, C)>,
    {
        let mut map = BTreeMap::new();
        for (q, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.remove(&q) {
                Some(old) => {
                    let s: C = old + c;
                    if !s.is_zero() {
                        map.insert(q, s);
                    }
                }
                None => {
                    map.insert(q, c);
                }
            }
        }
        let mut n = AsymptoticNumber { terms: map, trunc };
        n.enforce_order();
        n
    }

    fn enforce_order(&mut self) {
        if let Some(o) = &self.trunc {
            let beyond: Vec<Rational> =
                self.terms.range(..).map(|(q, _)| q.clone()).filter(|q| q > o).collect();
            for q in beyond {
                self.terms.remove(&q);
            }
        }
    }

    /// Lowers the truncation order to `order` (a no-op if already coarser).
    pub fn truncate_to(mut self, order: Rational) -> Self {
        self.trunc = Some(match self.trunc.take() {
            Some(o) => o.min(order),
            None => order,
        });
        self.enforce_order();
        self
    }

    pub fn order(&self) -> Option<&Rational> {
        self.trunc.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms are visible (zero up to the carried order).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &Rational) -> C {
        self.terms.get(exponent).cloned().unwrap_or_else(C::zero)
    }

    pub fn least_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    fn lexp_or_zero(&self) -> Rational {
        self.least_exponent().cloned().unwrap_or_else(|| num_traits::Zero::zero())
    }

    pub fn classify(&self) -> Magnitude {
        match self.least_exponent() {
            None => Magnitude::Zero,
            Some(q) => {
                if q.is_positive() {
                    Magnitude::Infinitesimal
                } else if num_traits::Zero::is_zero(q) {
                    Magnitude::Appreciable
                } else {
                    Magnitude::Unlimited
                }
            }
        }
    }

    /// Standard part of a limited element: the coefficient at exponent 0.
    pub fn shadow(&self) -> Result<C, FieldError> {
        if let Some(q) = self.least_exponent() {
            if q.is_negative() {
                return Err(FieldError::UnlimitedArgument);
            }
        }
        Ok(self.coeff(&num_traits::Zero::zero()))
    }

    /// Total order: sign of the least-exponent coefficient of the difference.
    pub fn compare(&self, other: &Self) -> Comparison {
        let d = self - other;
        match d.terms.iter().next() {
            None => Comparison::EqualWithinOrder(d.trunc),
            Some((_, c)) => {
                if c.sign() > 0 {
                    Comparison::Greater
                } else {
                    Comparison::Less
                }
            }
        }
    }

    /// Multiplicative inverse: leading-term inverse times a geometric-series
    /// expansion of the relative tail.
    ///
    /// A multi-term element with no truncation order has an infinite inverse
    /// expansion; it is cut at relative order
    /// [`DEFAULT_INVERSION_ORDER`](super::DEFAULT_INVERSION_ORDER).
    pub fn inv(&self) -> Result<Self, FieldError> {
        let (q0, c0) = match self.terms.iter().next() {
            None => return Err(FieldError::DivisionByZero),
            Some((q, c)) => (q.clone(), c.clone()),
        };
        let lead_inv = Scalar::recip(&c0);

        if self.terms.len() == 1 {
            let mut out = Self::monomial(lead_inv, -q0.clone());
            out.trunc = self.trunc.clone().map(|o| o - q0.clone() - q0);
            return Ok(out);
        }

        // Relative tail t with lexp(t) > 0: self = c0 e^{q0} (1 + t).
        let rel_order: Rational = match &self.trunc {
            Some(o) => o.clone() - q0.clone(),
            None => Rational::from_integer(super::DEFAULT_INVERSION_ORDER.into()),
        };
        let mut tail = AsymptoticNumber::from_terms(
            self.terms
                .iter()
                .skip(1)
                .map(|(q, c)| (q.clone() - q0.clone(), c.clone() * lead_inv.clone())),
            Some(rel_order.clone()),
        );
        tail = -tail; // accumulate powers of (-t)

        let mut acc = Self::one().truncate_to(rel_order.clone());
        let mut pow = tail.clone();
        while !pow.is_zero() {
            acc = &acc + &pow;
            pow = (&pow * &tail).truncate_to(rel_order.clone());
        }

        // Shift back by the leading monomial inverse; `rel_order` is
        // already relative to q0, so the absolute order shifts once.
        let shifted = AsymptoticNumber::from_terms(
            acc.terms
                .iter()
                .map(|(q, c)| (q.clone() - q0.clone(), c.clone() * lead_inv.clone())),
            Some(rel_order - q0.clone()),
        );
        Ok(shifted)
    }

    /// Integer power; negative exponents go through [`Self::inv`].
    pub fn pow(&self, k: i64) -> Result<Self, FieldError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = Self::one();
        if let Some(o) = &self.trunc {
            acc = acc.truncate_to(o.clone());
        }
        let mut base = self.clone();
        let mut k = k as u64;
        if k == 0 {
            // x^0 = 1, but keep the truncation knowledge of x.
            return Ok(acc);
        }
        let mut out: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                out = Some(match out {
                    None => base.clone(),
                    Some(o) => &o * &base,
                });
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(out.unwrap())
    }

    /// Realizes the series at `e = 1/n`, in f64 arithmetic.
    pub fn eval_at_inverse_index(&self, n: f64) -> f64 {
        self.terms
            .iter()
            .map(|(q, c)| c.to_f64() * n.powf(-num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)))
            .sum()
    }
}

impl<C: Scalar> Add for &AsymptoticNumber<C> {
    type Output = AsymptoticNumber<C>;
    fn add(self, rhs: Self) -> AsymptoticNumber<C> {
        let trunc = min_opt(self.trunc.clone(), rhs.trunc.clone());
        AsymptoticNumber::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(q, c)| (q.clone(), c.clone())),
            trunc,
        )
    }
}

impl<C: Scalar> Sub for &AsymptoticNumber<C> {
    type Output = AsymptoticNumber<C>;
    fn sub(self, rhs: Self) -> AsymptoticNumber<C> {
        let trunc = min_opt(self.trunc.clone(), rhs.trunc.clone());
        AsymptoticNumber::from_terms(
            self.terms
                .iter()
                .map(|(q, c)| (q.clone(), c.clone()))
                .chain(rhs.terms.iter().map(|(q, c)| (q.clone(), -c.clone()))),
            trunc,
        )
    }
}

impl<C: Scalar> Mul for &AsymptoticNumber<C> {
    type Output = AsymptoticNumber<C>;
    fn mul(self, rhs: Self) -> AsymptoticNumber<C> {
        // O = min(Oa + lexp(b), Ob + lexp(a)), with lexp(0) = 0.
        let la = self.lexp_or_zero();
        let lb = rhs.lexp_or_zero();
        let trunc = min_opt(
            self.trunc.clone().map(|o| o + lb),
            rhs.trunc.clone().map(|o| o + la),
        );
        AsymptoticNumber::from_terms(
            self.terms.iter().flat_map(|(qa, ca)| {
                rhs.terms
                    .iter()
                    .map(move |(qb, cb)| (qa.clone() + qb.clone(), ca.clone() * cb.clone()))
            }),
            trunc,
        )
    }
}

impl<C: Scalar> Neg for AsymptoticNumber<C> {
    type Output = AsymptoticNumber<C>;
    fn neg(self) -> AsymptoticNumber<C> {
        AsymptoticNumber {
            terms: self.terms.into_iter().map(|(q, c)| (q, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl<C: Scalar> $trait for AsymptoticNumber<C> {
            type Output = AsymptoticNumber<C>;
            fn $method(self, rhs: Self) -> AsymptoticNumber<C> {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

fn fmt_exponent(q: &Rational) -> String {
    if q.is_integer() {
        format!("{}", q)
    } else {
        format!("({})", q)
    }
}

impl<C: Scalar> Display for AsymptoticNumber<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (q, c)) in self.terms.iter().enumerate() {
                let neg = c.sign() < 0;
                let mag = Scalar::abs(c);
                if i == 0 {
                    if neg {
                        write!(f, "-")?;
                    }
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if num_traits::Zero::is_zero(q) {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "{}*e^{}", mag, fmt_exponent(q))?;
                }
            }
        }
        if let Some(o) = &self.trunc {
            write!(f, " (+O(e^{}))", fmt_exponent(o))?;
        }
        Ok(())
    }
}
