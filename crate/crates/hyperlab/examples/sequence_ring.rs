//! The sequence-ring fragment of the hyperreals: window-checked
//! eventual properties, the incomparable index pair, and a diagonal
//! overspill witness.
//!
//!     cargo run --example sequence_ring

use hyperlab::seq::{
    compare_indices, diagonal_overspill, is_negligible, EvalWindow, HyperSeq,
};

fn main() {
    let w = EvalWindow::default();

    for seq in [
        HyperSeq::new("1/k", |k| 1.0 / k as f64),
        HyperSeq::new("(1 - 1/k)^k", |k| (1.0 - 1.0 / k as f64).powi(k as i32)),
        HyperSeq::new("sin(k)/ln(k)", |k| (k as f64).sin() / (k as f64).ln()),
    ] {
        println!("{:>16}: {:?}", seq.label(), is_negligible(&seq, &w));
    }

    // the raw ring cannot order k against k + (-1)^k
    let k = HyperSeq::index();
    let k_alt = HyperSeq::new("k + (-1)^k", |k| {
        k as f64 + if k % 2 == 0 { 1.0 } else { -1.0 }
    });
    println!();
    println!("k vs k + (-1)^k: {:?}", compare_indices(&k, &k_alt, &w));

    // overspill: the family m -> (m/k)_k is negligible for each fixed m;
    // the diagonal index N(k) grows without bound (here like sqrt(k))
    let n = diagonal_overspill(|m| {
        HyperSeq::new(format!("{m}/k"), move |k| m as f64 / k as f64)
    });
    println!();
    for k in [10, 100, 1_000, 10_000] {
        println!("N({k:>6}) = {}", n.at(k));
    }
}
