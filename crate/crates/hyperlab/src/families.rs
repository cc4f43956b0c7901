//! Built-in function families: the classical examples plus enough
//! well-behaved ones to exercise both convergence criteria.

use crate::lab::FunctionFamily;

/// Names of all built-in families, in catalog order.
pub const NAMES: [&str; 8] = [
    "linear",
    "geometric",
    "geometric-restricted",
    "arctan",
    "sawtooth",
    "sine-square",
    "exp-series",
    "bump",
];

/// Looks up a built-in family by name.
pub fn builtin(name: &str) -> Option<FunctionFamily> {
    let f = match name {
        // s_n(x) = x/n -> 0, uniformly on [0, 1]
        "linear" => FunctionFamily::from_partial_sums("linear", (0.0, 1.0), |n, x| {
            x / n.max(1) as f64
        })
        .with_limit(|_| 0.0),

        // s_n(x) = (1-x)^n: pointwise limit 0 on (0, 1] and 1 at x = 0,
        // not uniform -- at x = 1/n the value hugs 1/e
        "geometric" => FunctionFamily::from_partial_sums("geometric", (0.0, 1.0), |n, x| {
            (1.0 - x).powi(n as i32)
        })
        .with_limit(|x| if x == 0.0 { 1.0 } else { 0.0 }),

        // the same sequence away from the bad endpoint, where it is
        // uniform with sup |r_n| = 0.9^n
        "geometric-restricted" => {
            FunctionFamily::from_partial_sums("geometric-restricted", (0.1, 1.0), |n, x| {
                (1.0 - x).powi(n as i32)
            })
            .with_limit(|_| 0.0)
        }

        // s_n(x) = arctan(n x) -> (pi/2) sgn(x); at x = 1/n the gap is
        // exactly pi/4
        "arctan" => FunctionFamily::from_partial_sums("arctan", (-1.0, 1.0), |n, x| {
            (n as f64 * x).atan()
        })
        .with_limit(|x| {
            if x == 0.0 {
                0.0
            } else {
                std::f64::consts::FRAC_PI_2 * x.signum()
            }
        })
        .with_singular_point(0.0),

        // sum sin(kx)/k -> (pi - x)/2 on (0, 2*pi), 0 at x = 0: every
        // term is continuous, the sum jumps
        "sawtooth" => FunctionFamily::from_terms("sawtooth", (0.0, std::f64::consts::PI), |k, x| {
            if k == 0 {
                0.0
            } else {
                (k as f64 * x).sin() / k as f64
            }
        })
        .with_limit(|x| {
            if x == 0.0 {
                0.0
            } else {
                (std::f64::consts::PI - x) / 2.0
            }
        }),

        // sum sin(kx)/k^2: uniformly convergent (dominated by 1/k^2); no
        // elementary closed form, so the remainder uses the surrogate depth
        "sine-square" => {
            FunctionFamily::from_terms("sine-square", (0.0, std::f64::consts::PI), |k, x| {
                if k == 0 {
                    0.0
                } else {
                    (k as f64 * x).sin() / (k as f64 * k as f64)
                }
            })
        }

        // sum x^k/k! -> exp(x), uniformly on [0, 1]
        "exp-series" => {
            FunctionFamily::from_terms("exp-series", (0.0, 1.0), |k, x| {
                let mut t = 1.0f64;
                for j in 1..=k {
                    t *= x / j as f64;
                }
                t
            })
            .with_partial_sum(|n, x| {
                let mut acc = crate::numeric::KahanSum::new();
                let mut t = 1.0f64;
                acc.add(t);
                for j in 1..=n {
                    t *= x / j as f64;
                    acc.add(t);
                }
                acc.value()
            })
            .with_limit(f64::exp)
        }

        // s_n(x) = n x (1-x)^n -> 0 pointwise, but the moving bump at
        // x ~ 1/n keeps height ~ 1/e
        "bump" => FunctionFamily::from_partial_sums("bump", (0.0, 1.0), |n, x| {
            n as f64 * x * (1.0 - x).powi(n as i32)
        })
        .with_limit(|_| 0.0),

        _ => return None,
    };
    Some(f)
}

/// The full catalog.
pub fn suite() -> Vec<FunctionFamily> {
    NAMES.iter().map(|n| builtin(n).unwrap()).collect()
}
