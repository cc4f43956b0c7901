//! Exact arithmetic in the asymptotic field: parse expressions over the
//! infinitesimal generator `e`, inspect magnitude, shadow and order.
//!
//!     cargo run --example field_arithmetic

use hyperlab::field::{parse_field_expr, AsymptoticNumber};
use hyperlab::scalar::{rat, Rational};

fn main() {
    for src in [
        "(1+e)*(1-e)",
        "1/(1-e) + O(e^3)",
        "1/e - 1/e",
        "(3 + 5*e)^2",
        "1/(2+e) + O(e^4)",
    ] {
        let v = parse_field_expr(src).unwrap();
        println!("{src:>24}  =  {v}");
    }

    type Num = AsymptoticNumber<Rational>;
    let eps = Num::epsilon();
    let x = &(&Num::from_int(3) + &eps) - &Num::monomial(rat(1, 2), rat(2, 1));
    println!();
    println!("x        = {x}");
    println!("classify = {:?}", x.classify());
    println!("shadow   = {}", x.shadow().unwrap());
    println!("compare(x, 3) = {:?}", x.compare(&Num::from_int(3)));

    // reciprocals of distinct infinitesimals differ by an unlimited amount
    let gap = &eps.inv().unwrap() - &eps.pow(2).unwrap().inv().unwrap();
    println!();
    println!("1/e - 1/e^2 = {gap}   ({:?})", gap.classify());

    // realized at e = 1/n the series approximates its f64 evaluation
    let v = parse_field_expr("2 + 3*e - e^2").unwrap();
    for n in [10.0, 100.0, 1000.0] {
        println!("({v}) at n = {n}: {}", v.eval_at_inverse_index(n));
    }
}
