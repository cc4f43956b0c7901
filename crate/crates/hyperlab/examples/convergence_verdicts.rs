//! Runs both uniform-convergence tests — the epsilon-quantifier test and
//! the infinitesimal-probe test — on every built-in family and shows
//! that they always agree.
//!
//!     cargo run --example convergence_verdicts

use hyperlab::families;
use hyperlab::lab::{classify_convergence, ConvergenceMode, EpsOutcome};

fn main() {
    for family in families::suite() {
        let out = classify_convergence(&family).unwrap();
        let a = if out.verdict_a.all_satisfied() {
            "satisfied".to_string()
        } else {
            match out
                .verdict_a
                .results
                .iter()
                .find(|r| matches!(r, EpsOutcome::Failed { .. }))
            {
                Some(EpsOutcome::Failed { eps, witness_x, .. }) => {
                    format!("fails at eps = {eps}, x = {witness_x:.2e}")
                }
                _ => unreachable!(),
            }
        };
        let b = match out.verdict_b.mode {
            ConvergenceMode::Uniform => "Uniform".to_string(),
            mode => {
                let w = out.verdict_b.witness.as_ref().unwrap();
                format!(
                    "{mode:?} (witness {} -> shadow {:.5})",
                    w.probe.describe(),
                    w.shadow_estimate
                )
            }
        };
        println!("{:>22}: quantifier test {a}", family.name());
        println!("{:>22}  infinitesimal test {b}", "");
        println!("{:>22}  agree: {}", "", out.agree);
    }
}
