//! Scripted case studies: each reproduces one headline numeric claim
//! as a deterministic report with expected values, tolerances and the
//! provenance of every expectation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::field::{compose_analytic, AsymptoticNumber, Comparison, Magnitude, TaylorModel};
use crate::lab::{
    self, check_b, classify_convergence, sum_theorem_decomposition, ConvergenceMode, Probe,
};
use crate::numeric::{sin_over_t_integral, sin_over_t_to_infinity, KahanSum};
use crate::scalar::{rat, Mpf, Rational, Scalar};
use crate::seq::{compare_indices, EvalWindow, HyperSeq, IndexComparison};
use crate::{families, numeric};

/// Where an expected value comes from: a closed form evaluated exactly,
/// an oracle computed inside the study by an independent route, or a
/// historically printed figure recorded for the record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Exact,
    Oracle,
    Historical,
}

#[derive(Debug, Clone, Serialize)]
pub struct Headline {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub source: Source,
    pub pass: bool,
    pub note: String,
}

impl Headline {
    fn new(
        name: &str,
        measured: f64,
        expected: f64,
        tolerance: f64,
        source: Source,
        note: &str,
    ) -> Self {
        Headline {
            name: name.to_string(),
            measured,
            expected,
            tolerance,
            source,
            pass: (measured - expected).abs() <= tolerance,
            note: note.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StudyReport {
    pub schema: u32,
    pub study_name: String,
    pub parameters: BTreeMap<String, String>,
    pub tables: Vec<Table>,
    pub headlines: Vec<Headline>,
    pub checks: Vec<Check>,
}

impl StudyReport {
    fn new(name: &str) -> Self {
        StudyReport {
            schema: 1,
            study_name: name.to_string(),
            parameters: BTreeMap::new(),
            tables: Vec::new(),
            headlines: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl ToString) {
        self.checks.push(Check {
            name: name.to_string(),
            ok,
            detail: detail.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.headlines.iter().all(|h| h.pass) && self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(&mut out, format!("study: {}", self.study_name));
        for (k, v) in &self.parameters {
            push(&mut out, format!("  {k} = {v}"));
        }
        for t in &self.tables {
            push(&mut out, format!("table: {}", t.name));
            push(&mut out, format!("  {}", t.columns.join("  ")));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>14.7e}")).collect();
                push(&mut out, format!("  {}", cells.join("  ")));
            }
        }
        for h in &self.headlines {
            push(
                &mut out,
                format!(
                    "headline {:<36} measured {:>14.8} expected {:>14.8} tol {:>8.1e} [{}] {}{}",
                    h.name,
                    h.measured,
                    h.expected,
                    h.tolerance,
                    match h.source {
                        Source::Exact => "exact",
                        Source::Oracle => "oracle",
                        Source::Historical => "historical",
                    },
                    if h.pass { "PASS" } else { "FAIL" },
                    if h.note.is_empty() {
                        String::new()
                    } else {
                        format!("  ({})", h.note)
                    }
                ),
            );
        }
        for c in &self.checks {
            push(
                &mut out,
                format!(
                    "check    {:<36} {} {}",
                    c.name,
                    if c.ok { "PASS" } else { "FAIL" },
                    c.detail
                ),
            );
        }
        push(
            &mut out,
            format!(
                "result: {}",
                if self.passed() { "PASS" } else { "FAIL" }
            ),
        );
        out
    }

    /// One CSV stream per report: each table preceded by a marker row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&format!("# table: {}\n", t.name));
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }
}

/// Names of the studies, in run order.
pub const STUDY_NAMES: [&str; 5] = [
    "sawtooth",
    "cauchy_series",
    "riemann_sum",
    "geometric_arctan",
    "order_reciprocal",
];

/// Runs one study by name with its default parameters.
pub fn run_study(name: &str) -> Option<StudyReport> {
    match name {
        "sawtooth" => Some(study_sawtooth(&[1_000, 10_000], &[100, 10_000])),
        "cauchy_series" => Some(study_cauchy_series()),
        "riemann_sum" => Some(study_riemann_sum(&[1_000, 10_000], &[2, 10, 100, 1_000])),
        "geometric_arctan" => Some(study_geometric_and_arctan()),
        "order_reciprocal" => Some(study_order_and_reciprocal()),
        _ => None,
    }
}

/// Runs every study with default parameters.
pub fn run_all() -> Vec<StudyReport> {
    STUDY_NAMES.iter().map(|n| run_study(n).unwrap()).collect()
}

/// `sum_{k=n+1}^{Mn} sin(k/n)/k` by compensated summation.
fn riemann_block(n: u64, m: u64) -> f64 {
    let mut acc = KahanSum::new();
    let nf = n as f64;
    for k in (n + 1)..=(m * n) {
        let kf = k as f64;
        acc.add((kf / nf).sin() / kf);
    }
    acc.value()
}

/// The sawtooth series `sum sin(kx)/k`: closed form, the jump at 0, the
/// Cauchy block at the infinitesimal input `x = 1/n`, and the uniformity
/// verdict.
pub fn study_sawtooth(n_schedule: &[u64], m_list: &[u64]) -> StudyReport {
    assert!(!n_schedule.is_empty() && !m_list.is_empty(), "schedules nonempty");
    let mut r = StudyReport::new("sawtooth");
    r.param("n_schedule", format!("{n_schedule:?}"));
    r.param("M_list", format!("{m_list:?}"));
    let f = families::builtin("sawtooth").unwrap();
    let oracle = sin_over_t_to_infinity(1.0);

    // (i) closed form at an interior standard point
    let big_n = 100_000u64;
    let x = std::f64::consts::FRAC_PI_2;
    let s = f.partial_sum_at(big_n, x);
    r.headlines.push(Headline::new(
        "closed-form-at-midpoint",
        s,
        std::f64::consts::FRAC_PI_4,
        1e-4,
        Source::Oracle,
        "s_N(pi/2) against (pi - x)/2 at N = 1e5",
    ));

    // (ii) the jump across x = 0: the series is odd, so the jump is twice
    // the right-hand limit
    let x_small = 1e-3;
    let jump = 2.0 * f.partial_sum_at(1_000_000, x_small);
    r.headlines.push(Headline::new(
        "jump-magnitude",
        jump,
        std::f64::consts::PI,
        1e-2,
        Source::Oracle,
        "discontinuity of magnitude pi across x = 0",
    ));

    // (iii) blocks at x = 1/n over the (n, M) grid
    let mut table = Table {
        name: "block-at-inverse-index".into(),
        columns: vec!["n".into(), "M".into(), "block".into(), "oracle_gap".into()],
        rows: Vec::new(),
    };
    let mut last_block = f64::NAN;
    for &n in n_schedule {
        for &m in m_list {
            let block = f.cauchy_block(n, m * n, 1.0 / n as f64).unwrap();
            table
                .rows
                .push(vec![n as f64, m as f64, block, block - oracle]);
            last_block = block;
        }
    }
    r.tables.push(table);
    r.headlines.push(Headline::new(
        "block-at-largest-n-M",
        last_block,
        oracle,
        1e-2,
        Source::Oracle,
        "sum of sin(k/n)/k over [n, Mn) vs quadrature for the sine-integral remainder",
    ));

    // (iv) blocks vanish identically at x = 0
    let z = f.cauchy_block(n_schedule[0], 10 * n_schedule[0], 0.0).unwrap();
    r.check("block-vanishes-at-zero", z == 0.0, format!("block(x=0) = {z}"));

    // (v) uniformity verdict with the x = 1/n probe
    let verdict = check_b(
        &f,
        &[Probe::standard(std::f64::consts::FRAC_PI_2), Probe::tied(0.0, 1.0, 1.0)],
        &lab::default_schedule(),
    )
    .unwrap();
    r.check(
        "verdict-pointwise-only",
        verdict.mode == ConvergenceMode::PointwiseOnly,
        format!("{:?}", verdict.mode),
    );
    if let Some(w) = &verdict.witness {
        r.headlines.push(Headline::new(
            "witness-shadow",
            w.shadow_estimate,
            oracle,
            1e-2,
            Source::Oracle,
            "remainder shadow at the probe x = 1/n",
        ));
    } else {
        r.check("witness-present", false, "no witness returned");
    }

    // (vi) the proof decomposition at x0 = 0: the remainder increment
    // alone carries the jump
    let dec = sum_theorem_decomposition(&f, 0.0, 1.0, n_schedule).unwrap();
    let mut dtab = Table {
        name: "decomposition-at-zero".into(),
        columns: vec![
            "n".into(),
            "alpha".into(),
            "delta_partial".into(),
            "delta_remainder".into(),
            "delta_total".into(),
        ],
        rows: Vec::new(),
    };
    for row in &dec.rows {
        dtab.rows.push(vec![
            row.n as f64,
            row.alpha,
            row.delta_partial,
            row.delta_remainder,
            row.delta_total,
        ]);
    }
    r.tables.push(dtab);
    let last = dec.rows.last().unwrap();
    r.headlines.push(Headline::new(
        "remainder-increment",
        last.delta_remainder,
        oracle,
        1e-2,
        Source::Oracle,
        "Delta r_n at x0 = 0, alpha = 1/n: appreciable, the failing hypothesis",
    ));
    r
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// The alternating series `pi/2 - 1 + 1/(3*3!) - 1/(5*5!) + ...` for the
/// sine-integral remainder, with exact rational partial sums, against the
/// quadrature oracle — and against the historically printed figure
/// 0,6244..., which is recorded and flagged, not matched.
pub fn study_cauchy_series() -> StudyReport {
    let mut r = StudyReport::new("cauchy_series");
    r.param("terms", "10");
    r.param("precision_bits", crate::scalar::default_precision());
    let oracle = sin_over_t_to_infinity(1.0);

    let half_pi = Mpf::pi() / Mpf::from_int(2);
    // exact rational part of the partial sums: -1 + sum of the
    // alternating factorial terms
    let mut partial = rat(-1, 1);
    let mut table = Table {
        name: "partial-sums".into(),
        columns: vec!["terms".into(), "value".into(), "oracle_gap".into()],
        rows: Vec::new(),
    };
    let value_at = |partial: &Rational| (half_pi.clone() + Mpf::from_rational(partial)).to_f64();
    let two_terms = value_at(&partial);
    table.rows.push(vec![2.0, two_terms, two_terms - oracle]);
    let mut values = vec![two_terms];
    for j in 1u64..=8 {
        let k = 2 * j + 1;
        let denom = BigInt::from(k) * factorial(k);
        let term = Rational::new(BigInt::one(), denom);
        partial += if j % 2 == 1 { term } else { -term };
        let v = value_at(&partial);
        table.rows.push(vec![(j + 2) as f64, v, v - oracle]);
        values.push(v);
    }
    r.tables.push(table);

    r.headlines.push(Headline::new(
        "two-terms",
        two_terms,
        0.570796,
        1e-6,
        Source::Exact,
        "pi/2 - 1",
    ));
    r.headlines.push(Headline::new(
        "four-terms",
        values[2],
        0.624685,
        1e-6,
        Source::Exact,
        "pi/2 - 1 + 1/18 - 1/600",
    ));
    let series10 = *values.last().unwrap();
    r.headlines.push(Headline::new(
        "ten-terms-vs-quadrature",
        series10,
        oracle,
        1e-9,
        Source::Oracle,
        "two independent routes to the sine-integral remainder",
    ));
    r.headlines.push(Headline::new(
        "historical-figure-discrepancy",
        series10 - 0.6244,
        3.13e-4,
        1e-5,
        Source::Historical,
        "the 1853 text prints 0,6244...; the modern value is 0.6247132 -- \
         the ~3e-4 gap is recorded as historical, not matched",
    ));
    r
}

/// The block as an infinite Riemann sum: `sum sin(k/n)/k` over
/// `(n, Mn]` approaches the integral of `sin(t)/t` over `[1, M]`.
pub fn study_riemann_sum(n_schedule: &[u64], m_list: &[u64]) -> StudyReport {
    let mut r = StudyReport::new("riemann_sum");
    r.param("n_schedule", format!("{n_schedule:?}"));
    r.param("M_list", format!("{m_list:?}"));
    let infinity = sin_over_t_to_infinity(1.0);

    let mut table = Table {
        name: "riemann-vs-integral".into(),
        columns: vec![
            "n".into(),
            "M".into(),
            "sum".into(),
            "integral".into(),
            "error".into(),
        ],
        rows: Vec::new(),
    };
    let mut last: Option<(u64, u64, f64, f64)> = None;
    for &m in m_list {
        let integral = sin_over_t_integral(1.0, m as f64);
        for &n in n_schedule {
            let sum = riemann_block(n, m);
            table.rows.push(vec![
                n as f64,
                m as f64,
                sum,
                integral,
                sum - integral,
            ]);
            last = Some((n, m, sum, integral));
        }
    }
    r.tables.push(table);

    r.check(
        "empty-sum-at-M1",
        riemann_block(1_000, 1) == 0.0,
        "M = 1 leaves no terms",
    );
    let n0 = 10_000u64;
    if m_list.contains(&2) {
        r.headlines.push(Headline::new(
            "M2",
            riemann_block(n0, 2),
            sin_over_t_integral(1.0, 2.0),
            1e-3,
            Source::Oracle,
            "n = 1e4: Riemann sum vs integral over [1, 2]",
        ));
    }
    if m_list.contains(&1_000) {
        r.headlines.push(Headline::new(
            "M1000-vs-infinity",
            riemann_block(1_000, 1_000),
            infinity,
            2e-3,
            Source::Oracle,
            "n = 1e3, M = 1e3: tail beyond M is bounded by 2/M",
        ));
        let (_, _, sum, integral) = last.unwrap();
        // extrapolate the finite-M sum by the quadrature tail
        let extrapolated = sum + sin_over_t_to_infinity(integral_cut(m_list));
        let _ = integral;
        r.headlines.push(Headline::new(
            "extrapolated-vs-infinity",
            extrapolated,
            infinity,
            1e-2,
            Source::Oracle,
            "largest (n, M) plus the analytic tail beyond M",
        ));
    }
    r
}

fn integral_cut(m_list: &[u64]) -> f64 {
    *m_list.last().unwrap() as f64
}

/// The two classical families: `(1-x)^n` with its `1/e` witness and
/// `arctan(nx)` with its `pi/4` witness; plus the restriction to
/// `[0.1, 1]` that restores uniformity.
pub fn study_geometric_and_arctan() -> StudyReport {
    let mut r = StudyReport::new("geometric_arctan");
    r.param("schedule", format!("{:?}", lab::default_schedule()));
    let geo = families::builtin("geometric").unwrap();
    let atn = families::builtin("arctan").unwrap();
    let restricted = families::builtin("geometric-restricted").unwrap();

    let n = 1_000_000u64;
    let at_inverse = (1.0 - 1.0 / n as f64).powi(n as i32);
    r.headlines.push(Headline::new(
        "geometric-at-inverse-index",
        at_inverse,
        0.36787944,
        1e-6,
        Source::Oracle,
        "(1 - 1/n)^n at n = 1e6 vs 1/e",
    ));

    let vg = check_b(
        &geo,
        &[Probe::standard(0.5), Probe::tied(0.0, 1.0, 1.0)],
        &lab::default_schedule(),
    )
    .unwrap();
    r.check(
        "geometric-pointwise-only",
        vg.mode == ConvergenceMode::PointwiseOnly,
        format!("{:?}", vg.mode),
    );
    if let Some(w) = &vg.witness {
        r.headlines.push(Headline::new(
            "geometric-witness-shadow",
            w.shadow_estimate.abs(),
            (-1.0f64).exp(),
            1e-3,
            Source::Oracle,
            "|shadow| of the remainder at the probe x = 1/n",
        ));
    } else {
        r.check("geometric-witness-present", false, "no witness returned");
    }

    let va = check_b(
        &atn,
        &[Probe::standard(0.5), Probe::tied(0.0, 1.0, 1.0)],
        &lab::default_schedule(),
    )
    .unwrap();
    r.check(
        "arctan-pointwise-only",
        va.mode == ConvergenceMode::PointwiseOnly,
        format!("{:?}", va.mode),
    );
    if let Some(w) = &va.witness {
        r.headlines.push(Headline::new(
            "arctan-witness-shadow",
            w.shadow_estimate,
            std::f64::consts::FRAC_PI_4,
            1e-6,
            Source::Exact,
            "pi/2 - arctan(1) = pi/4 exactly, at the probe x = 1/n",
        ));
    } else {
        r.check("arctan-witness-present", false, "no witness returned");
    }

    let vr = check_b(
        &restricted,
        &lab::default_probes(&restricted),
        &lab::default_schedule(),
    )
    .unwrap();
    r.check(
        "restricted-uniform",
        vr.mode == ConvergenceMode::Uniform,
        format!("{:?} on [0.1, 1]", vr.mode),
    );

    // both limiting functions are discontinuous at the bad point
    r.check(
        "geometric-limit-jump",
        geo.limit_at(0.0) == Some(1.0) && geo.limit_at(1e-9) == Some(0.0),
        "limit is 1 at x = 0, 0 for x > 0",
    );
    r.check(
        "arctan-limit-jump",
        atn.limit_at(0.0) == Some(0.0)
            && (atn.limit_at(1e-9).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15,
        "limit jumps from 0 to pi/2 across x = 0",
    );

    // the two tracks agree on both families
    for (name, fam) in [("geometric", &geo), ("arctan", &atn)] {
        let out = classify_convergence(fam).unwrap();
        r.check(
            &format!("{name}-tracks-agree"),
            out.agree && !matches!(out.verdict_b.mode, ConvergenceMode::Uniform),
            format!("quantifier and infinitesimal tests both non-uniform: {}", out.agree),
        );
    }
    r
}

/// Order and reciprocal demonstrations: the raw sequence ring cannot
/// order `k` against `k + (-1)^k`, while the asymptotic field totally
/// orders its elements; reciprocals of distinct infinitesimals differ by
/// an unlimited amount; and `sin^2 + cos^2 = 1` transfers to hyperreal
/// points.
pub fn study_order_and_reciprocal() -> StudyReport {
    type Num = AsymptoticNumber<Rational>;
    let mut r = StudyReport::new("order_reciprocal");
    r.param("window", "[1000, 2000)");
    r.param("precision_bits", crate::scalar::default_precision());

    // (i) incomparability in the raw sequence ring
    let k = HyperSeq::index();
    let k_alt = HyperSeq::new("k + (-1)^k", |k| {
        k as f64 + if k % 2 == 0 { 1.0 } else { -1.0 }
    });
    let cmp = compare_indices(&k, &k_alt, &EvalWindow::default());
    r.check(
        "sequence-ring-incomparable",
        matches!(cmp, IndexComparison::Incomparable { .. }),
        format!("{cmp:?}"),
    );

    // ...while the field orders distinct unlimited elements
    let eps = Num::epsilon();
    let inv_eps = eps.inv().unwrap();
    let field_cmp = (&inv_eps + &Num::one()).compare(&inv_eps);
    r.check(
        "field-orders-unlimiteds",
        field_cmp == Comparison::Greater,
        format!("1/e + 1 vs 1/e: {field_cmp:?}"),
    );

    // (ii) reciprocals of distinct infinitesimals are unlimited apart
    let gap = &inv_eps - &eps.pow(2).unwrap().inv().unwrap();
    r.check(
        "reciprocal-gap-unlimited",
        gap.classify() == Magnitude::Unlimited,
        format!("classify(1/e - 1/e^2) = {:?}", gap.classify()),
    );
    r.headlines.push(Headline::new(
        "reciprocal-gap-least-exponent",
        gap.least_exponent().unwrap().to_f64(),
        -2.0,
        0.0,
        Source::Exact,
        "e^-2 dominates e^-1",
    ));

    // (iii) transfer: sin^2 + cos^2 = 1 at hyperreal points.
    // Exact path at a rational-shadow-0 point:
    let a: Num = &eps + &Num::monomial(rat(2, 1), rat(2, 1));
    let order = rat(8, 1);
    let s = compose_analytic(&TaylorModel::<Rational>::sin_at_zero(12), &a, &order).unwrap();
    let c = compose_analytic(&TaylorModel::<Rational>::cos_at_zero(12), &a, &order).unwrap();
    let defect = &(&(&s * &s) + &(&c * &c)) - &Num::one();
    r.check(
        "transfer-exact-at-zero-shadow",
        defect.is_zero(),
        format!("sin^2 + cos^2 - 1 at e + 2e^2: {defect}"),
    );

    // Float path at shadow 1/2:
    type FNum = AsymptoticNumber<Mpf>;
    let half = Mpf::from_rational(&rat(1, 2));
    let af: FNum = &(&FNum::scalar(half.clone()) + &FNum::epsilon())
        - &FNum::monomial(Mpf::from_int(1), rat(3, 1));
    let order6 = rat(6, 1);
    let sf = compose_analytic(&TaylorModel::sin_at(half.clone(), 10), &af, &order6).unwrap();
    let cf = compose_analytic(&TaylorModel::cos_at(half, 10), &af, &order6).unwrap();
    let defect_f = &(&(&sf * &sf) + &(&cf * &cf)) - &FNum::one();
    let max_coeff = defect_f
        .terms()
        .map(|(_, c)| c.to_f64().abs())
        .fold(0.0f64, f64::max);
    let roundoff = 2f64.powi(-(crate::scalar::default_precision() as i32) + 24);
    r.headlines.push(Headline::new(
        "transfer-float-defect",
        max_coeff,
        0.0,
        roundoff,
        Source::Oracle,
        "largest |coefficient| of sin^2 + cos^2 - 1 at 1/2 + e - e^3, order 6",
    ));
    r
}

/// Spot-check helper used by the acceptance suite: the largest
/// coefficient magnitude of `sin^2 + cos^2 - 1` composed at `a`, to
/// the given truncation order.
pub fn pythagorean_defect(a: &AsymptoticNumber<Mpf>, order: i64, degree: usize) -> f64 {
    let center = a.shadow().expect("limited point");
    let q = Rational::from_integer(order.into());
    let s = compose_analytic(&TaylorModel::sin_at(center.clone(), degree), a, &q).unwrap();
    let c = compose_analytic(&TaylorModel::cos_at(center, degree), a, &q).unwrap();
    let defect = &(&(&s * &s) + &(&c * &c)) - &AsymptoticNumber::one();
    defect
        .terms()
        .map(|(_, coeff)| coeff.to_f64().abs())
        .fold(0.0f64, f64::max)
}

/// Same spot check on the exact rational path (only sound when the
/// shadow is 0, where sine and cosine have rational Taylor data).
pub fn pythagorean_defect_exact(a: &AsymptoticNumber<Rational>, order: i64, degree: usize) -> AsymptoticNumber<Rational> {
    let q = Rational::from_integer(order.into());
    let s = compose_analytic(&TaylorModel::<Rational>::sin_at_zero(degree), a, &q).unwrap();
    let c = compose_analytic(&TaylorModel::<Rational>::cos_at_zero(degree), a, &q).unwrap();
    &(&(&s * &s) + &(&c * &c)) - &AsymptoticNumber::one()
}

/// Run numbers shown by `numeric` that the studies depend on, exposed so
/// the CLI summary can reference them without recomputation drift.
pub fn sine_integral_oracle() -> f64 {
    numeric::sin_over_t_to_infinity(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_series_study_passes() {
        let r = study_cauchy_series();
        assert!(r.passed(), "{}", r.to_text());
        let four = r
            .headlines
            .iter()
            .find(|h| h.name == "four-terms")
            .unwrap();
        // independent recomputation of the exact four-term value
        let exact = std::f64::consts::FRAC_PI_2 - 1.0 + 1.0 / 18.0 - 1.0 / 600.0;
        assert!((four.measured - exact).abs() < 1e-12);
    }

    #[test]
    fn order_reciprocal_study_passes() {
        let r = study_order_and_reciprocal();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn geometric_arctan_study_passes() {
        let r = study_geometric_and_arctan();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn riemann_study_small_parameters() {
        let r = study_riemann_sum(&[1_000], &[2, 10]);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn report_serialization_is_stable() {
        let a = study_cauchy_series().to_json();
        let b = study_cauchy_series().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": 1"));
    }

    #[test]
    fn historical_figure_is_flagged_not_matched() {
        let r = study_cauchy_series();
        let h = r
            .headlines
            .iter()
            .find(|h| h.name == "historical-figure-discrepancy")
            .unwrap();
        assert_eq!(h.source, Source::Historical);
        // the discrepancy itself is the measured quantity
        assert!(h.measured > 3e-4 && h.measured < 3.3e-4);
        assert!(h.pass);
    }
}
