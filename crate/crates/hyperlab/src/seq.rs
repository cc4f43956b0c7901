//! The ring-of-sequences model made computable: elements are explicit
//! sequences with termwise arithmetic, "eventually true" predicates are
//! checked over finite windows (the cofinite-filter fragment), and the
//! permanence/overspill principle is witnessed by a concrete diagonal.
//!
//! Window verdicts are semi-decisions: a third `Inconclusive` outcome is
//! returned when the window cannot separate a sequence from the tolerance
//! schedule.

use std::sync::{Arc, Mutex};

use serde::Serialize;

/// Default tolerance schedule `tol(k) = 1/sqrt(k)`.
pub fn default_tol(k: u64) -> f64 {
    1.0 / (k as f64).sqrt()
}

/// Violations below this absolute size are never treated as decisive.
pub const APPRECIABLE_FLOOR: f64 = 1e-3;

/// A violation only counts as decisive when it exceeds the tolerance by
/// this margin; values oscillating near the tolerance scale stay
/// inconclusive.
pub const DECISIVE_MARGIN: f64 = 10.0;

type TermFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// A sequence `k -> value`, `k >= 1`, with termwise arithmetic.
#[derive(Clone)]
pub struct HyperSeq {
    term: TermFn,
    label: String,
}

impl std::fmt::Debug for HyperSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HyperSeq({})", self.label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqOp {
    Add,
    Sub,
    Mul,
}

impl HyperSeq {
    pub fn new(label: impl Into<String>, term: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        HyperSeq {
            term: Arc::new(term),
            label: label.into(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_| c)
    }

    /// The identity index sequence `k -> k`.
    pub fn index() -> Self {
        Self::new("k", |k| k as f64)
    }

    pub fn at(&self, k: u64) -> f64 {
        debug_assert!(k >= 1);
        (self.term)(k)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Realizes a truncated asymptotic series as the sequence
    /// `k -> sum c_i k^{-q_i}`.
    pub fn realize<C: crate::scalar::Scalar>(a: &crate::field::AsymptoticNumber<C>) -> Self {
        let terms: Vec<(f64, f64)> = a
            .terms()
            .map(|(q, c)| (num_traits::ToPrimitive::to_f64(q).unwrap(), c.to_f64()))
            .collect();
        Self::new("realized series", move |k| {
            terms
                .iter()
                .map(|(q, c)| c * (k as f64).powf(-q))
                .sum()
        })
    }
}

/// Termwise ring operation.
pub fn seq_arith(op: SeqOp, u: &HyperSeq, v: &HyperSeq) -> HyperSeq {
    let (fu, fv) = (u.term.clone(), v.term.clone());
    let sym = match op {
        SeqOp::Add => '+',
        SeqOp::Sub => '-',
        SeqOp::Mul => '*',
    };
    let label = format!("({} {} {})", u.label, sym, v.label);
    HyperSeq::new(label, move |k| {
        let (a, b) = (fu(k), fv(k));
        match op {
            SeqOp::Add => a + b,
            SeqOp::Sub => a - b,
            SeqOp::Mul => a * b,
        }
    })
}

/// A finite index window plus a tolerance schedule.
#[derive(Clone)]
pub struct EvalWindow {
    pub start: u64,
    pub len: u64,
    tol: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl EvalWindow {
    pub fn new(start: u64, len: u64) -> Self {
        assert!(start >= 1 && len >= 1);
        EvalWindow {
            start,
            len,
            tol: Arc::new(default_tol),
        }
    }

    pub fn with_tol(mut self, tol: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        self.tol = Arc::new(tol);
        self
    }

    pub fn tol(&self, k: u64) -> f64 {
        let t = (self.tol)(k);
        debug_assert!(t > 0.0);
        t
    }

    pub fn indices(&self) -> std::ops::Range<u64> {
        self.start..self.start + self.len
    }

    pub fn end(&self) -> u64 {
        self.start + self.len
    }
}

impl Default for EvalWindow {
    fn default() -> Self {
        EvalWindow::new(1_000, 1_000)
    }
}

/// Summary statistics for an undecided window.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct WindowStats {
    pub checked: u64,
    pub violations: u64,
    pub max_abs: f64,
    pub max_over_tol: f64,
    pub last_violation: Option<u64>,
}

/// Window-checked stand-in for "true on a set of full measure".
#[derive(Debug, Clone, Serialize, PartialEq)]
pub enum EventualVerdict {
    HoldsOnWindow { first_index: u64 },
    FailsRepeatedly { witness_indices: Vec<u64> },
    Inconclusive { stats: WindowStats },
}

/// Checks `|u(k)| < tol(k)` eventually on the window.
pub fn is_negligible(u: &HyperSeq, w: &EvalWindow) -> EventualVerdict {
    let mut violations: Vec<u64> = Vec::new();
    let mut decisive: Vec<u64> = Vec::new();
    let mut max_abs = 0.0f64;
    let mut max_over_tol = 0.0f64;
    for k in w.indices() {
        let v = u.at(k).abs();
        let tol = w.tol(k);
        max_abs = max_abs.max(v);
        max_over_tol = max_over_tol.max(v / tol);
        if v >= tol {
            violations.push(k);
            if v >= APPRECIABLE_FLOOR && v >= DECISIVE_MARGIN * tol {
                decisive.push(k);
            }
        }
    }
    let half = w.start + w.len / 2;
    let tail_clean = violations.iter().all(|&k| k < half);
    if tail_clean {
        let first_index = violations.last().map(|&k| k + 1).unwrap_or(w.start);
        return EventualVerdict::HoldsOnWindow { first_index };
    }
    if decisive.len() >= 3 {
        decisive.truncate(5);
        return EventualVerdict::FailsRepeatedly {
            witness_indices: decisive,
        };
    }
    EventualVerdict::Inconclusive {
        stats: WindowStats {
            checked: w.len,
            violations: violations.len() as u64,
            max_abs,
            max_over_tol,
            last_violation: violations.last().copied(),
        },
    }
}

/// Outcome of comparing two integer-valued index sequences on a window.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub enum IndexComparison {
    EventuallyLess,
    EventuallyGreater,
    EventuallyEqual,
    /// Both signs occur repeatedly: the raw sequence ring cannot order the
    /// pair. Witnesses hold indices where each sign shows up.
    Incomparable {
        greater_at: Vec<u64>,
        less_at: Vec<u64>,
    },
}

/// Compares integer-valued sequences `n` and `n'` by the sign pattern of
/// `n'(k) - n(k)` over the window. The verdict describes `n'` relative
/// to `n`.
pub fn compare_indices(n: &HyperSeq, n_prime: &HyperSeq, w: &EvalWindow) -> IndexComparison {
    let mut pos: Vec<u64> = Vec::new();
    let mut neg: Vec<u64> = Vec::new();
    let mut zero = 0u64;
    for k in w.indices() {
        let a = n.at(k);
        let b = n_prime.at(k);
        debug_assert!(a.fract() == 0.0 && b.fract() == 0.0, "integer-valued sequences required");
        let d = b - a;
        if d > 0.0 {
            pos.push(k);
        } else if d < 0.0 {
            neg.push(k);
        } else {
            zero += 1;
        }
    }
    if pos.len() >= 3 && neg.len() >= 3 {
        pos.truncate(3);
        neg.truncate(3);
        return IndexComparison::Incomparable {
            greater_at: pos,
            less_at: neg,
        };
    }
    if neg.is_empty() && pos.is_empty() {
        return IndexComparison::EventuallyEqual;
    }
    if neg.is_empty() && !pos.is_empty() {
        return IndexComparison::EventuallyGreater;
    }
    if pos.is_empty() && !neg.is_empty() {
        return IndexComparison::EventuallyLess;
    }
    // fewer than 3 of one sign: decide by the tail half
    let half = w.start + w.len / 2;
    let pos_tail = pos.iter().any(|&k| k >= half);
    let neg_tail = neg.iter().any(|&k| k >= half);
    match (pos_tail, neg_tail) {
        (true, false) => IndexComparison::EventuallyGreater,
        (false, true) => IndexComparison::EventuallyLess,
        (false, false) if zero > 0 => IndexComparison::EventuallyEqual,
        _ => IndexComparison::Incomparable {
            greater_at: pos,
            less_at: neg,
        },
    }
}

/// Diagonal witness of the permanence principle: given a family where
/// `family(m)` is (expected) negligible for each finite `m`, produces a
/// nondecreasing unbounded integer index `N` such that the diagonal
/// `k -> family(N(k))(k)` is negligible.
///
/// Construction: `raw(k)` is the largest `m <= k` such that
/// `max over j in [k, k + ln k] of |family(i)(j)| <= 1/i` for every
/// `i <= m` (fallback 1), and `N(k)` is the running maximum of `raw`.
pub fn diagonal_overspill(
    family: impl Fn(u64) -> HyperSeq + Send + Sync + 'static,
) -> HyperSeq {
    let family = Arc::new(family);
    // running-max cache; index i holds N(i+1)
    let cache: Arc<Mutex<Vec<f64>>> = Arc::new(Mutex::new(Vec::new()));
    let fam = family.clone();
    HyperSeq::new("overspill index N", move |k| {
        let mut cache = cache.lock().unwrap();
        while (cache.len() as u64) < k {
            let kk = cache.len() as u64 + 1;
            let raw = raw_overspill_index(fam.as_ref(), kk);
            let prev = cache.last().copied().unwrap_or(1.0);
            cache.push(prev.max(raw as f64));
        }
        cache[(k - 1) as usize]
    })
}

/// One step of the overspill construction, without the running maximum.
pub fn raw_overspill_index<F: Fn(u64) -> HyperSeq + ?Sized>(family: &F, k: u64) -> u64 {
    let span = (k as f64).ln().floor() as u64;
    let mut best = 1u64;
    for m in 1..=k {
        let seq = family(m);
        let mut ok = true;
        for j in k..=k + span {
            if seq.at(j).abs() > 1.0 / m as f64 {
                ok = false;
                break;
            }
        }
        if !ok {
            break;
        }
        best = m;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn termwise_arithmetic() {
        let u = HyperSeq::new("1/k", |k| 1.0 / k as f64);
        let v = HyperSeq::new("-1/k", |k| -1.0 / k as f64);
        let s = seq_arith(SeqOp::Add, &u, &v);
        for k in [1, 7, 1000] {
            assert_eq!(s.at(k), 0.0);
        }
        let p = seq_arith(SeqOp::Mul, &HyperSeq::index(), &u);
        for k in [1, 7, 1000] {
            assert_eq!(p.at(k), 1.0);
        }
        // (1 - 1/k)(1 + 1/k) = 1 - 1/k^2
        let a = HyperSeq::new("1-1/k", |k| 1.0 - 1.0 / k as f64);
        let b = HyperSeq::new("1+1/k", |k| 1.0 + 1.0 / k as f64);
        let prod = seq_arith(SeqOp::Mul, &a, &b);
        for k in [2u64, 10, 100] {
            let expected = 1.0 - 1.0 / (k * k) as f64;
            assert!((prod.at(k) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn one_over_k_is_negligible() {
        let u = HyperSeq::new("1/k", |k| 1.0 / k as f64);
        let v = is_negligible(&u, &EvalWindow::new(1_000, 1_000));
        assert!(matches!(v, EventualVerdict::HoldsOnWindow { .. }), "{v:?}");
    }

    #[test]
    fn euler_sequence_fails_repeatedly() {
        // (1 - 1/k)^k stays near 1/e, an appreciable value
        let u = HyperSeq::new("(1-1/k)^k", |k| {
            (1.0 - 1.0 / k as f64).powi(k as i32)
        });
        match is_negligible(&u, &EvalWindow::new(1_000, 1_000)) {
            EventualVerdict::FailsRepeatedly { witness_indices } => {
                assert!(witness_indices.len() >= 3);
                for k in witness_indices {
                    let v = u.at(k);
                    assert!((v - (-1.0f64).exp()).abs() < 1e-3, "u({k}) = {v}");
                }
            }
            other => panic!("expected FailsRepeatedly, got {other:?}"),
        }
    }

    #[test]
    fn tolerance_scale_oscillation_is_inconclusive() {
        let u = HyperSeq::new("sin(k)/ln(k)", |k| (k as f64).sin() / (k as f64).ln());
        let v = is_negligible(&u, &EvalWindow::new(1_000, 1_000));
        assert!(matches!(v, EventualVerdict::Inconclusive { .. }), "{v:?}");
    }

    #[test]
    fn index_comparisons() {
        let w = EvalWindow::new(1_000, 1_000);
        let n = HyperSeq::index();
        let double = HyperSeq::new("2k", |k| 2.0 * k as f64);
        assert_eq!(
            compare_indices(&n, &double, &w),
            IndexComparison::EventuallyGreater
        );
        assert_eq!(
            compare_indices(&n, &n.clone(), &w),
            IndexComparison::EventuallyEqual
        );
        let wobble = HyperSeq::new("k+(-1)^k", |k| {
            k as f64 + if k % 2 == 0 { 1.0 } else { -1.0 }
        });
        assert!(matches!(
            compare_indices(&n, &wobble, &w),
            IndexComparison::Incomparable { .. }
        ));
    }

    #[test]
    fn comparison_verdicts_stable_under_window_growth() {
        let n = HyperSeq::index();
        let double = HyperSeq::new("2k", |k| 2.0 * k as f64);
        let w1 = EvalWindow::new(1_000, 1_000);
        let w2 = EvalWindow::new(1_000, 2_000);
        assert_eq!(
            compare_indices(&n, &double, &w1),
            compare_indices(&n, &double, &w2)
        );
    }

    #[test]
    fn overspill_on_ratio_family() {
        // family(m)(k) = m/k: N grows on the order of sqrt(k)
        let n = diagonal_overspill(|m| {
            HyperSeq::new(format!("{m}/k"), move |k| m as f64 / k as f64)
        });
        let n100 = n.at(100);
        let n10000 = n.at(10_000);
        assert!(n10000 >= n100);
        assert!(n10000 >= 50.0, "N(10^4) = {n10000}");
        assert!((n.at(9_000) - 9_000f64.sqrt()).abs() < 20.0);
    }

    #[test]
    fn overspill_on_zero_family_is_maximal() {
        let n = diagonal_overspill(|_| HyperSeq::constant(0.0));
        for k in [1u64, 10, 500] {
            assert_eq!(n.at(k), k as f64);
        }
    }

    #[test]
    fn overspill_on_constant_family_is_unbounded() {
        // family(m)(k) = 1/m is infinitesimal only as m grows
        let n = diagonal_overspill(|m| HyperSeq::constant(1.0 / m as f64));
        assert_eq!(n.at(2_000), 2_000.0);
        // diagonal 1/N(k) -> 0
        assert!(1.0 / n.at(2_000) < default_tol(2_000));
    }

    #[test]
    fn realization_matches_field_classification() {
        use crate::field::AsymptoticNumber;
        use crate::scalar::Rational;
        type Num = AsymptoticNumber<Rational>;
        // infinitesimal element realizes as a negligible sequence
        let a = &Num::epsilon() - &Num::epsilon().pow(2).unwrap();
        let w = EvalWindow::new(1_000, 1_000);
        assert!(matches!(
            is_negligible(&HyperSeq::realize(&a), &w),
            EventualVerdict::HoldsOnWindow { .. }
        ));
        // appreciable element: realization minus shadow is negligible
        let b = &Num::from_int(3) + &Num::epsilon();
        let shadow = b.shadow().unwrap();
        let centered = seq_arith(
            SeqOp::Sub,
            &HyperSeq::realize(&b),
            &HyperSeq::constant(num_traits::ToPrimitive::to_f64(&shadow).unwrap()),
        );
        assert!(matches!(
            is_negligible(&centered, &w),
            EventualVerdict::HoldsOnWindow { .. }
        ));
    }
}
