//! Transfer spot check: sin^2 + cos^2 = 1 holds at hyperreal points,
//! exactly on the rational path and to coefficient round-off on the
//! arbitrary-precision float path.
//!
//!     cargo run --example transfer_identity

use hyperlab::field::AsymptoticNumber;
use hyperlab::scalar::{rat, Mpf, Rational, Scalar};
use hyperlab::studies::{pythagorean_defect, pythagorean_defect_exact};

fn main() {
    // shadow 0: sine and cosine have rational Taylor data, so the
    // defect vanishes identically
    type Num = AsymptoticNumber<Rational>;
    let a = &Num::epsilon() + &Num::monomial(rat(2, 1), rat(2, 1));
    let defect = pythagorean_defect_exact(&a, 8, 12);
    println!("at e + 2e^2 (exact rationals): sin^2 + cos^2 - 1 = {defect}");

    // nonzero rational shadows: float coefficients, defect at round-off
    type FNum = AsymptoticNumber<Mpf>;
    for (num, den) in [(1i64, 2i64), (1, 3), (-2, 5)] {
        let shadow = Mpf::from_rational(&rat(num, den));
        let a = &(&FNum::scalar(shadow) + &FNum::epsilon())
            - &FNum::monomial(Mpf::from_int(1), rat(3, 1));
        let worst = pythagorean_defect(&a, 6, 10);
        println!(
            "at {num}/{den} + e - e^3: max |coefficient| of the defect = {worst:.3e}"
        );
    }
}
