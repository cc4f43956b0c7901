//! The 1853 sum-theorem failure, mechanized: blocks of the sawtooth
//! series at the infinitesimal input x = 1/n stay near 0.6247 instead of
//! vanishing, and the proof decomposition shows the remainder increment
//! carrying the jump.
//!
//!     cargo run --release --example sawtooth_blocks

use hyperlab::families;
use hyperlab::lab::sum_theorem_decomposition;
use hyperlab::numeric::sin_over_t_to_infinity;

fn main() {
    let f = families::builtin("sawtooth").unwrap();
    let oracle = sin_over_t_to_infinity(1.0);
    println!("quadrature oracle for the block limit: {oracle:.7}");
    println!();

    println!("blocks sum sin(k/n)/k over [n, Mn) at x = 1/n:");
    for n in [1_000u64, 10_000] {
        for m in [100u64, 1_000] {
            let block = f.cauchy_block(n, m * n, 1.0 / n as f64).unwrap();
            println!("  n = {n:>6}, M = {m:>5}: {block:.6}  (gap {:+.2e})", block - oracle);
        }
    }

    println!();
    println!("decomposition s(x0+a) - s(x0) at x0 = 0, a = 1/n:");
    let table = sum_theorem_decomposition(&f, 0.0, 1.0, &[1_000, 10_000, 100_000]).unwrap();
    for row in &table.rows {
        println!(
            "  n = {:>6}: partial-sum increment {:+.5} ({:?}), remainder increment {:+.5} ({:?})",
            row.n, row.delta_partial, row.partial_flag, row.delta_remainder, row.remainder_flag
        );
    }
}
