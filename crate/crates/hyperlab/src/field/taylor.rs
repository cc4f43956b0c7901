//! Taylor models and composition of analytic functions with field elements.
//!
//! This is how elementary functions extend to hyperreal inputs here: the
//! infinitesimal part of the argument is pushed through the expansion.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::scalar::{Rational, Scalar, Transcendental};

use super::{AsymptoticNumber, FieldError};

/// Analytic data for one function around one expansion point:
/// `coefficients[k]` is the k-th derivative at `center` divided by `k!`.
#[derive(Debug, Clone)]
pub struct TaylorModel<C: Scalar> {
    pub center: C,
    pub coefficients: Vec<C>,
    pub radius_hint: Option<C>,
}

fn inv_factorial<C: Scalar>(k: usize) -> C {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= i;
    }
    C::from_rational(&Rational::new(BigInt::one(), f))
}

impl<C: Scalar> TaylorModel<C> {
    pub fn new(center: C, coefficients: Vec<C>) -> Self {
        assert!(!coefficients.is_empty(), "a Taylor model needs at least one coefficient");
        TaylorModel {
            center,
            coefficients,
            radius_hint: None,
        }
    }

    /// Highest power of the local variable this model can raise.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `sin` around 0, with exact rational coefficients.
    pub fn sin_at_zero(degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|k| match k % 4 {
                1 => inv_factorial::<C>(k),
                3 => -inv_factorial::<C>(k),
                _ => C::zero(),
            })
            .collect();
        Self::new(C::zero(), coeffs)
    }

    /// `cos` around 0.
    pub fn cos_at_zero(degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|k| match k % 4 {
                0 => inv_factorial::<C>(k),
                2 => -inv_factorial::<C>(k),
                _ => C::zero(),
            })
            .collect();
        Self::new(C::zero(), coeffs)
    }

    /// `exp` around 0.
    pub fn exp_at_zero(degree: usize) -> Self {
        let coeffs = (0..=degree).map(inv_factorial::<C>).collect();
        Self::new(C::zero(), coeffs)
    }

    /// `arctan` around 0.
    pub fn arctan_at_zero(degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|k| {
                if k % 2 == 0 {
                    C::zero()
                } else {
                    let c = C::from_ratio(1, k as i64);
                    if k % 4 == 1 {
                        c
                    } else {
                        -c
                    }
                }
            })
            .collect();
        Self::new(C::zero(), coeffs)
    }

    /// Natural logarithm around 1.
    pub fn log_at_one(degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|k| {
                if k == 0 {
                    C::zero()
                } else {
                    let c = C::from_ratio(1, k as i64);
                    if k % 2 == 1 {
                        c
                    } else {
                        -c
                    }
                }
            })
            .collect();
        Self::new(C::one(), coeffs)
    }

    /// `1/x` around a nonzero center: coefficients `(-1)^k / c^{k+1}`.
    pub fn reciprocal_at(center: C, degree: usize) -> Self {
        assert!(!center.is_zero(), "reciprocal model needs a nonzero center");
        let cinv = Scalar::recip(&center);
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut cur = cinv.clone();
        for k in 0..=degree {
            coeffs.push(if k % 2 == 0 { cur.clone() } else { -cur.clone() });
            cur = cur * cinv.clone();
        }
        Self::new(center, coeffs)
    }
}

impl<C: Transcendental> TaylorModel<C> {
    /// `sin` around an arbitrary center, through the derivative cycle.
    pub fn sin_at(center: C, degree: usize) -> Self {
        let (s, c) = (center.sin(), center.cos());
        Self::cyclic(center, degree, [s, c])
    }

    /// `cos` around an arbitrary center.
    pub fn cos_at(center: C, degree: usize) -> Self {
        let (s, c) = (center.sin(), center.cos());
        Self::cyclic(center, degree, [c, -s])
    }

    fn cyclic(center: C, degree: usize, start: [C; 2]) -> Self {
        // derivative cycle f, f', -f, -f'
        let cycle = [
            start[0].clone(),
            start[1].clone(),
            -start[0].clone(),
            -start[1].clone(),
        ];
        let coeffs = (0..=degree)
            .map(|k| cycle[k % 4].clone() * inv_factorial::<C>(k))
            .collect();
        Self::new(center, coeffs)
    }

    /// `exp` around an arbitrary center.
    pub fn exp_at(center: C, degree: usize) -> Self {
        let e = center.exp();
        let coeffs = (0..=degree)
            .map(|k| e.clone() * inv_factorial::<C>(k))
            .collect();
        Self::new(center, coeffs)
    }
}

/// Evaluates `f` at a limited field element whose shadow equals the model
/// center, truncating the result at `order`.
pub fn compose_analytic<C: Scalar>(
    model: &TaylorModel<C>,
    a: &AsymptoticNumber<C>,
    order: &Rational,
) -> Result<AsymptoticNumber<C>, FieldError> {
    let shadow = a.shadow()?; // UnlimitedArgument if a is not limited
    if shadow != model.center {
        return Err(FieldError::CenterMismatch);
    }

    let target = match a.order() {
        Some(o) => o.clone().min(order.clone()),
        None => order.clone(),
    };

    let delta =
        (a - &AsymptoticNumber::scalar(shadow)).truncate_to(target.clone());
    if delta.is_zero() {
        return Ok(
            AsymptoticNumber::scalar(model.coefficients[0].clone()).truncate_to(target)
        );
    }

    // delta is a genuine infinitesimal; powers beyond target/lexp vanish.
    let lexp = delta.least_exponent().expect("nonzero").clone();
    debug_assert!(lexp.is_positive());
    let k_max = (target.clone() / lexp).floor().to_integer().to_usize().unwrap_or(usize::MAX);
    if model.degree() < k_max {
        return Err(FieldError::InsufficientTaylorOrder);
    }

    let mut acc = AsymptoticNumber::scalar(model.coefficients[k_max].clone())
        .truncate_to(target.clone());
    for k in (0..k_max).rev() {
        acc = &(&acc * &delta) + &AsymptoticNumber::scalar(model.coefficients[k].clone());
    }
    Ok(acc.truncate_to(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Mpf};

    type Num = AsymptoticNumber<Rational>;

    #[test]
    fn sine_of_epsilon() {
        // sin(e) = e - e^3/6 + e^5/120 at order 5
        let m = TaylorModel::<Rational>::sin_at_zero(6);
        let r = compose_analytic(&m, &Num::epsilon(), &rat(5, 1)).unwrap();
        assert_eq!(r.coeff(&rat(1, 1)), rat(1, 1));
        assert_eq!(r.coeff(&rat(3, 1)), rat(-1, 6));
        assert_eq!(r.coeff(&rat(5, 1)), rat(1, 120));
        assert_eq!(r.num_terms(), 3);
    }

    #[test]
    fn exp_of_zero_is_one() {
        let m = TaylorModel::<Rational>::exp_at_zero(4);
        let r = compose_analytic(&m, &Num::zero(), &rat(7, 1)).unwrap();
        assert_eq!(r.shadow().unwrap(), rat(1, 1));
        assert_eq!(r.num_terms(), 1);
    }

    #[test]
    fn center_must_match_shadow() {
        let m = TaylorModel::<Rational>::log_at_one(4);
        let r = compose_analytic(&m, &Num::epsilon(), &rat(3, 1));
        assert_eq!(r, Err(FieldError::CenterMismatch));
    }

    #[test]
    fn insufficient_degree_is_reported() {
        let m = TaylorModel::<Rational>::sin_at_zero(2);
        let r = compose_analytic(&m, &Num::epsilon(), &rat(5, 1));
        assert_eq!(r, Err(FieldError::InsufficientTaylorOrder));
    }

    #[test]
    fn pythagorean_identity_is_exact_at_rational_shadow_zero() {
        // sin^2 + cos^2 at a = 3e - e^2, order 6: identically 1
        let a = (&(&Num::from_int(3) * &Num::epsilon())
            - &Num::epsilon().pow(2).unwrap())
            .truncate_to(rat(6, 1));
        let order = rat(6, 1);
        let s = compose_analytic(&TaylorModel::sin_at_zero(8), &a, &order).unwrap();
        let c = compose_analytic(&TaylorModel::cos_at_zero(8), &a, &order).unwrap();
        let total = &(&s * &s) + &(&c * &c);
        let d = &total - &Num::one();
        assert!(d.is_zero(), "sin^2+cos^2 = {total}");
    }

    #[test]
    fn pythagorean_identity_floats_at_nonzero_center() {
        // a = 1/2 + 3e - e^2, order 6; all non-constant coefficients cancel
        // down to coefficient roundoff
        let half = Mpf::from_ratio(1, 2);
        let a = AsymptoticNumber::from_terms(
            [
                (rat(0, 1), half.clone()),
                (rat(1, 1), Mpf::from_int(3)),
                (rat(2, 1), Mpf::from_int(-1)),
            ],
            Some(rat(6, 1)),
        );
        let order = rat(6, 1);
        let s = compose_analytic(&TaylorModel::sin_at(half.clone(), 8), &a, &order).unwrap();
        let c = compose_analytic(&TaylorModel::cos_at(half, 8), &a, &order).unwrap();
        let total = &(&s * &s) + &(&c * &c);
        let one = AsymptoticNumber::scalar(Mpf::one());
        let d = &total - &one;
        let bound = 2f64.powi(-(crate::scalar::default_precision() as i32) + 24);
        for (q, coeff) in d.terms() {
            assert!(
                coeff.to_f64().abs() < bound,
                "residual {} at e^{}",
                coeff,
                q
            );
        }
    }

    #[test]
    fn first_order_coefficient_matches_finite_differences() {
        // coefficient of e in f(center + e) equals f'(center)
        let center = Mpf::new(0.7);
        let m = TaylorModel::sin_at(center.clone(), 6);
        let a = &AsymptoticNumber::scalar(center) + &AsymptoticNumber::epsilon();
        let r = compose_analytic(&m, &a.truncate_to(rat(4, 1)), &rat(4, 1)).unwrap();
        let got = r.coeff(&rat(1, 1)).to_f64();
        let h = 1e-6;
        let fd = ((0.7f64 + h).sin() - (0.7f64 - h).sin()) / (2.0 * h);
        assert!((got - fd).abs() < 1e-9, "got {got}, fd {fd}");
    }
}
