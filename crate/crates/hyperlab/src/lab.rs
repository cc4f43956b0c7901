//! Uniform-convergence diagnostics for families of functions on an
//! interval.
//!
//! Two tests are run against the same family and must agree:
//!
//! * the quantifier test [`check_a`]: for each tolerance, search for a
//!   threshold index beyond which the grid supremum of the remainder
//!   stays below it;
//! * the infinitesimal test [`check_b`]: evaluate the remainder along an
//!   increasing index schedule at probe inputs, including inputs of the
//!   form `x0 + c*n^{-p}` that are coupled to the remainder index — the
//!   criterion that partial sums stay infinitely close to the limit at
//!   every point of the *extended* domain, for every unlimited index.
//!
//! Both are evidence-backed semi-decisions and carry their parameters.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::numeric::KahanSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("input {x} outside the domain [{lo}, {hi}]")]
    DomainViolation { x: f64, lo: f64, hi: f64 },
    #[error("block indices must satisfy n' > n (got n = {n}, n' = {n_prime})")]
    BadIndices { n: u64, n_prime: u64 },
    #[error("probe position {x} leaves the domain [{lo}, {hi}]")]
    ProbeOutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("family definition incomplete: {0}")]
    MissingDefinition(String),
}

type TermFn = Arc<dyn Fn(u64, f64) -> f64 + Send + Sync>;
type LimitFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A series (or function sequence) `u_n` / `s_n` on a closed interval,
/// with an optional closed-form limit.
#[derive(Clone)]
pub struct FunctionFamily {
    name: String,
    term: Option<TermFn>,
    partial_sum: Option<TermFn>,
    limit: Option<LimitFn>,
    domain: (f64, f64),
    singular: Vec<f64>,
}

impl std::fmt::Debug for FunctionFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FunctionFamily({} on [{}, {}])", self.name, self.domain.0, self.domain.1)
    }
}

/// Surrogate depth used for the remainder when no closed-form limit is
/// available: `r_n` is approximated by `s_N - s_n` with `N` an order of
/// magnitude deeper.
pub fn surrogate_depth(n: u64) -> u64 {
    (10 * n).max(n + 10_000)
}

impl FunctionFamily {
    pub fn from_terms(
        name: impl Into<String>,
        domain: (f64, f64),
        term: impl Fn(u64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(domain.0 <= domain.1, "empty domain");
        FunctionFamily {
            name: name.into(),
            term: Some(Arc::new(term)),
            partial_sum: None,
            limit: None,
            domain,
            singular: Vec::new(),
        }
    }

    /// A function sequence given directly by its partial sums `s_n`.
    pub fn from_partial_sums(
        name: impl Into<String>,
        domain: (f64, f64),
        partial_sum: impl Fn(u64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(domain.0 <= domain.1, "empty domain");
        FunctionFamily {
            name: name.into(),
            term: None,
            partial_sum: Some(Arc::new(partial_sum)),
            limit: None,
            domain,
            singular: Vec::new(),
        }
    }

    pub fn with_partial_sum(
        mut self,
        partial_sum: impl Fn(u64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.partial_sum = Some(Arc::new(partial_sum));
        self
    }

    pub fn with_limit(mut self, limit: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.limit = Some(Arc::new(limit));
        self
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty domain");
        self.domain = (lo, hi);
        self
    }

    /// Declares an interior point where the limiting function is (or may
    /// be) discontinuous; grids and default probes refine toward it.
    pub fn with_singular_point(mut self, x: f64) -> Self {
        self.singular.push(x);
        self
    }

    pub fn singular_points(&self) -> &[f64] {
        &self.singular
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn has_limit(&self) -> bool {
        self.limit.is_some()
    }

    pub fn limit_at(&self, x: f64) -> Option<f64> {
        self.limit.as_ref().map(|f| f(x))
    }

    fn check_domain(&self, x: f64) -> Result<(), LabError> {
        let (lo, hi) = self.domain;
        let slack = 1e-12 * (1.0 + hi.abs().max(lo.abs()));
        if x < lo - slack || x > hi + slack {
            return Err(LabError::DomainViolation { x, lo, hi });
        }
        Ok(())
    }

    /// `s_n(x)`, from the closed form when available, by compensated
    /// term summation otherwise.
    pub fn partial_sum_at(&self, n: u64, x: f64) -> f64 {
        if let Some(ps) = &self.partial_sum {
            return ps(n, x);
        }
        let term = self.term.as_ref().expect("family has term or partial_sum");
        let mut acc = KahanSum::new();
        for k in 0..=n {
            acc.add(term(k, x));
        }
        acc.value()
    }

    /// `s_n(x)` for several `n` at once; term-based families are swept once.
    /// `ns` must be sorted ascending.
    pub fn partial_sums_at(&self, x: f64, ns: &[u64]) -> Vec<f64> {
        debug_assert!(ns.windows(2).all(|w| w[0] <= w[1]));
        if let Some(ps) = &self.partial_sum {
            return ns.iter().map(|&n| ps(n, x)).collect();
        }
        let term = self.term.as_ref().expect("family has term or partial_sum");
        let mut out = Vec::with_capacity(ns.len());
        let mut acc = KahanSum::new();
        let mut k = 0u64;
        for &n in ns {
            while k <= n {
                acc.add(term(k, x));
                k += 1;
            }
            out.push(acc.value());
        }
        out
    }

    /// The n-th remainder `r_n(x) = s(x) - s_n(x)`.
    pub fn remainder(&self, n: u64, x: f64) -> Result<f64, LabError> {
        Ok(self.remainder_with_depth(n, x)?.0)
    }

    /// Remainder plus the surrogate depth that stood in for the limit,
    /// if one was needed.
    pub fn remainder_with_depth(&self, n: u64, x: f64) -> Result<(f64, Option<u64>), LabError> {
        self.check_domain(x)?;
        match &self.limit {
            Some(lim) => Ok((lim(x) - self.partial_sum_at(n, x), None)),
            None => {
                let depth = surrogate_depth(n);
                let sums = self.partial_sums_at(x, &[n, depth]);
                Ok((sums[1] - sums[0], Some(depth)))
            }
        }
    }

    /// Remainders for several sorted `n` at one point.
    pub fn remainders_at(&self, x: f64, ns: &[u64]) -> Result<Vec<f64>, LabError> {
        self.check_domain(x)?;
        if let Some(lim) = &self.limit {
            let s = lim(x);
            let sums = self.partial_sums_at(x, ns);
            return Ok(sums.into_iter().map(|v| s - v).collect());
        }
        // collect snapshot indices: each n plus its surrogate depth
        let mut all: Vec<u64> = ns.iter().flat_map(|&n| [n, surrogate_depth(n)]).collect();
        all.sort_unstable();
        all.dedup();
        let sums = self.partial_sums_at(x, &all);
        let lookup = |n: u64| sums[all.binary_search(&n).unwrap()];
        Ok(ns
            .iter()
            .map(|&n| lookup(surrogate_depth(n)) - lookup(n))
            .collect())
    }

    /// The block `u_n + u_{n+1} + ... + u_{n'-1}`, by compensated
    /// summation.
    pub fn cauchy_block(&self, n: u64, n_prime: u64, x: f64) -> Result<f64, LabError> {
        if n_prime <= n {
            return Err(LabError::BadIndices { n, n_prime });
        }
        self.check_domain(x)?;
        if let Some(term) = &self.term {
            let mut acc = KahanSum::new();
            for k in n..n_prime {
                acc.add(term(k, x));
            }
            return Ok(acc.value());
        }
        // s_{n'-1} - s_{n-1}; an empty prefix sums to zero
        let hi = self.partial_sum_at(n_prime - 1, x);
        let lo = if n == 0 {
            0.0
        } else {
            self.partial_sum_at(n - 1, x)
        };
        Ok(hi - lo)
    }
}

/// A hyperreal input description for remainder evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Probe {
    /// A fixed standard point.
    Standard { x: f64 },
    /// `x = x0 + c * n^{-p}`. When `tied`, the probe's index is the
    /// remainder index itself (Cauchy's `x = 1/n`); otherwise the probe
    /// index grows independently (realized as `n^2`).
    Offset { x0: f64, c: f64, p: f64, tied: bool },
}

impl Probe {
    pub fn standard(x: f64) -> Self {
        Probe::Standard { x }
    }

    pub fn tied(x0: f64, c: f64, p: f64) -> Self {
        Probe::Offset { x0, c, p, tied: true }
    }

    pub fn position(&self, n: u64) -> f64 {
        match *self {
            Probe::Standard { x } => x,
            Probe::Offset { x0, c, p, tied } => {
                let idx = if tied { n as f64 } else { (n as f64) * (n as f64) };
                x0 + c * idx.powf(-p)
            }
        }
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if let Probe::Offset { c, p, .. } = *self {
            if c == 0.0 || p <= 0.0 {
                return Err(LabError::InvalidParams(
                    "offset probes need c != 0 and p > 0".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        match *self {
            Probe::Standard { x } => format!("x = {x}"),
            Probe::Offset { x0, c, p, tied } => {
                let idx = if tied { "n" } else { "m" };
                format!("x = {x0} + {c}*{idx}^-{p}")
            }
        }
    }
}

/// Default index schedule: 10^3 .. 10^6.
pub fn default_schedule() -> Vec<u64> {
    vec![1_000, 10_000, 100_000, 1_000_000]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConvergenceMode {
    Uniform,
    PointwiseOnly,
    NotPointwise,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub probe: Probe,
    pub shadow_estimate: f64,
    pub n_used: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeEvidence {
    pub probe: Probe,
    pub ns: Vec<u64>,
    pub xs: Vec<f64>,
    pub remainders: Vec<f64>,
    pub shadow_estimate: f64,
    pub shadow_stable: bool,
    pub negligible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformVerdict {
    pub mode: ConvergenceMode,
    pub witness: Option<Witness>,
    pub evidence: Vec<ProbeEvidence>,
}

fn trace_negligible(trace: &[f64], n_last: u64) -> bool {
    let last = trace.last().copied().unwrap_or(0.0).abs();
    let first = trace.first().copied().unwrap_or(0.0).abs();
    let tol = 1.0 / (n_last as f64).sqrt();
    last < tol || (last < 0.1 * first && last < 10.0 * tol)
}

/// The infinitesimal criterion: remainders must be negligible along the
/// schedule at every probe, including infinitesimal-offset probes.
pub fn check_b(
    family: &FunctionFamily,
    probes: &[Probe],
    schedule: &[u64],
) -> Result<UniformVerdict, LabError> {
    if probes.is_empty() {
        return Err(LabError::InvalidParams("no probes supplied".into()));
    }
    if schedule.len() < 3 || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::InvalidSchedule(
            "need at least 3 strictly increasing indices".into(),
        ));
    }
    if *schedule.last().unwrap() < 100 * schedule[0] {
        return Err(LabError::InvalidSchedule(
            "schedule must span at least 3 decades".into(),
        ));
    }
    for p in probes {
        p.validate()?;
        for &n in schedule {
            let x = p.position(n);
            family.check_domain(x).map_err(|_| {
                let (lo, hi) = family.domain;
                LabError::ProbeOutsideDomain { x, lo, hi }
            })?;
        }
    }

    let n_last = *schedule.last().unwrap();
    let n_prev = schedule[schedule.len() - 2];
    let mut evidence = Vec::with_capacity(probes.len());
    for p in probes {
        let xs: Vec<f64> = schedule.iter().map(|&n| p.position(n)).collect();
        let mut rs = Vec::with_capacity(schedule.len());
        for (&n, &x) in schedule.iter().zip(&xs) {
            rs.push(family.remainder(n, x)?);
        }
        let shadow_estimate = *rs.last().unwrap();
        let prev = rs[rs.len() - 2];
        let shadow_stable =
            (shadow_estimate - prev).abs() < (0.05 * shadow_estimate.abs()).max(1e-3);
        let negligible = trace_negligible(&rs, n_last);
        let _ = n_prev;
        evidence.push(ProbeEvidence {
            probe: *p,
            ns: schedule.to_vec(),
            xs,
            remainders: rs,
            shadow_estimate,
            shadow_stable,
            negligible,
        });
    }

    // a failing standard probe means not even pointwise convergence
    let failing_standard = evidence
        .iter()
        .find(|e| !e.negligible && matches!(e.probe, Probe::Standard { .. }));
    let failing_offset = evidence
        .iter()
        .find(|e| !e.negligible && matches!(e.probe, Probe::Offset { .. }));

    let (mode, witness) = if let Some(e) = failing_standard {
        (
            ConvergenceMode::NotPointwise,
            Some(Witness {
                probe: e.probe,
                shadow_estimate: e.shadow_estimate,
                n_used: n_last,
            }),
        )
    } else if let Some(e) = failing_offset {
        (
            ConvergenceMode::PointwiseOnly,
            Some(Witness {
                probe: e.probe,
                shadow_estimate: e.shadow_estimate,
                n_used: n_last,
            }),
        )
    } else {
        (ConvergenceMode::Uniform, None)
    };

    Ok(UniformVerdict {
        mode,
        witness,
        evidence,
    })
}

#[derive(Debug, Clone, Serialize)]
pub enum EpsOutcome {
    /// Minimal `N` such that the grid supremum of `|r_m|` stays below
    /// `eps` for every sampled `m` in `(N, n_max]`.
    Satisfied { eps: f64, minimal_n: u64 },
    Failed {
        eps: f64,
        witness_x: f64,
        witness_n: u64,
        remainder: f64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckAReport {
    pub results: Vec<EpsOutcome>,
    pub grid_size: usize,
    pub n_max: u64,
}

impl CheckAReport {
    pub fn all_satisfied(&self) -> bool {
        self.results
            .iter()
            .all(|r| matches!(r, EpsOutcome::Satisfied { .. }))
    }
}

/// Sample grid: uniform points plus geometric refinement toward both
/// endpoints and any declared singular points, so index-coupled
/// failures near those points are not missed.
fn build_grid(family: &FunctionFamily, uniform: usize) -> Vec<f64> {
    let (a, b) = family.domain;
    let mut grid = Vec::new();
    let n = uniform.max(2);
    for i in 0..n {
        grid.push(a + (b - a) * i as f64 / (n - 1) as f64);
    }
    let mut step = 0.5f64;
    for _ in 0..48 {
        grid.push(a + (b - a) * step);
        grid.push(b - (b - a) * step);
        for &s in &family.singular {
            for x in [s - (b - a) * step, s + (b - a) * step] {
                if x > a && x < b {
                    grid.push(x);
                }
            }
        }
        step *= 0.5;
    }
    grid.sort_by(|p, q| p.partial_cmp(q).unwrap());
    grid.dedup();
    grid
}

fn ladder(n_max: u64) -> Vec<u64> {
    let mut ms = vec![];
    let mut base = 1u64;
    'outer: loop {
        for mult in [1u64, 2, 5] {
            let m = base.saturating_mul(mult);
            if m > n_max {
                break 'outer;
            }
            ms.push(m);
        }
        base = base.saturating_mul(10);
    }
    if ms.last() != Some(&n_max) {
        ms.push(n_max);
    }
    ms
}

/// The quantifier criterion, grid-checked: for each tolerance, search for
/// the minimal threshold index. Success is evidence, not proof; the grid
/// parameters travel with the report.
pub fn check_a(
    family: &FunctionFamily,
    eps_list: &[f64],
    x_grid_size: usize,
    n_max: u64,
) -> Result<CheckAReport, LabError> {
    if eps_list.is_empty() || eps_list.iter().any(|&e| e <= 0.0) {
        return Err(LabError::InvalidParams(
            "eps_list must be nonempty and positive".into(),
        ));
    }
    if x_grid_size < 2 {
        return Err(LabError::InvalidParams("x_grid_size must be >= 2".into()));
    }

    let grid = build_grid(family, x_grid_size);
    let ms = ladder(n_max);

    // remainder matrix over the ladder: per grid point, one sweep
    let mut rem: Vec<Vec<f64>> = vec![Vec::new(); ms.len()];
    for &x in &grid {
        let rs = family.remainders_at(x, &ms)?;
        for (mi, r) in rs.into_iter().enumerate() {
            rem[mi].push(r);
        }
    }
    let sup_of = |row: &[f64]| -> (f64, f64) {
        let mut best = f64::NEG_INFINITY;
        let mut arg = grid[0];
        for (xi, r) in row.iter().enumerate() {
            if r.abs() > best {
                best = r.abs();
                arg = grid[xi];
            }
        }
        (best, arg)
    };
    let sup_at = |m: u64| -> Result<(f64, f64), LabError> {
        let mut best = f64::NEG_INFINITY;
        let mut arg = grid[0];
        for &x in &grid {
            let r = family.remainder(m, x)?;
            if r.abs() > best {
                best = r.abs();
                arg = x;
            }
        }
        Ok((best, arg))
    };

    let sups: Vec<(f64, f64)> = rem.iter().map(|row| sup_of(row)).collect();

    let mut results = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let last_sup = sups.last().unwrap().0;
        if last_sup >= eps {
            // witness: the largest grid point still violating at n_max --
            // the boundary of the violating region, which for the
            // index-coupled failures sits near x ~ 1/m
            let row = rem.last().unwrap();
            let witness_x = grid
                .iter()
                .zip(row)
                .filter(|(_, r)| r.abs() >= eps)
                .map(|(x, r)| (*x, *r))
                .next_back()
                .map(|(x, _)| x)
                .unwrap_or(sups.last().unwrap().1);
            let widx = grid.iter().position(|&g| g == witness_x).unwrap();
            results.push(EpsOutcome::Failed {
                eps,
                witness_x,
                witness_n: n_max,
                remainder: row[widx],
            });
            continue;
        }
        // last ladder index whose sup still violates
        let last_bad = sups.iter().rposition(|&(s, _)| s >= eps);
        let minimal_n = match last_bad {
            None => 0,
            Some(i) => {
                // bisect between the last bad ladder point and the next one
                let mut lo = ms[i]; // sup(lo) >= eps
                let mut hi = ms[i + 1]; // sup(hi) < eps
                while lo + 1 < hi {
                    let mid = lo + (hi - lo) / 2;
                    if sup_at(mid)?.0 < eps {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                lo
            }
        };
        results.push(EpsOutcome::Satisfied { eps, minimal_n });
    }

    Ok(CheckAReport {
        results,
        grid_size: grid.len(),
        n_max,
    })
}

/// Size flags for decomposition entries, against the default tolerance
/// schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SizeFlag {
    Negligible,
    Borderline,
    Appreciable,
}

fn size_flag(v: f64, n: u64) -> SizeFlag {
    let tol = 1.0 / (n as f64).sqrt();
    if v.abs() < tol {
        SizeFlag::Negligible
    } else if v.abs() >= crate::seq::APPRECIABLE_FLOOR {
        SizeFlag::Appreciable
    } else {
        SizeFlag::Borderline
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionRow {
    pub n: u64,
    pub alpha: f64,
    pub delta_partial: f64,
    pub delta_remainder: f64,
    pub delta_total: f64,
    pub partial_flag: SizeFlag,
    pub remainder_flag: SizeFlag,
    pub total_flag: SizeFlag,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionTable {
    pub x0: f64,
    pub p: f64,
    pub rows: Vec<DecompositionRow>,
}

/// Splits `s(x0 + alpha) - s(x0)` into the partial-sum increment and the
/// remainder increment, with `alpha = n^{-p}`, for each scheduled `n`.
pub fn sum_theorem_decomposition(
    family: &FunctionFamily,
    x0: f64,
    p: f64,
    schedule: &[u64],
) -> Result<DecompositionTable, LabError> {
    if schedule.is_empty() {
        return Err(LabError::InvalidSchedule("empty schedule".into()));
    }
    family.check_domain(x0)?;
    let mut rows = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let alpha = (n as f64).powf(-p);
        let x1 = x0 + alpha;
        family.check_domain(x1)?;
        let ds = family.partial_sum_at(n, x1) - family.partial_sum_at(n, x0);
        let dr = family.remainder(n, x1)? - family.remainder(n, x0)?;
        let total = ds + dr;
        rows.push(DecompositionRow {
            n,
            alpha,
            delta_partial: ds,
            delta_remainder: dr,
            delta_total: total,
            partial_flag: size_flag(ds, n),
            remainder_flag: size_flag(dr, n),
            total_flag: size_flag(total, n),
        });
    }
    Ok(DecompositionTable { x0, p, rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyOutcome {
    pub verdict_a: CheckAReport,
    pub verdict_b: UniformVerdict,
    pub agree: bool,
}

/// Default probe set: standard midpoint and endpoints, plus
/// infinitesimal offsets coupled to the index -- inward at both
/// endpoints and two-sided at each declared singular point.
pub fn default_probes(family: &FunctionFamily) -> Vec<Probe> {
    let (a, b) = family.domain;
    let c = 1f64.min((b - a) / 2.0);
    let mut probes = vec![
        Probe::standard(0.5 * (a + b)),
        Probe::standard(a),
        Probe::standard(b),
    ];
    for p in [0.5, 1.0, 2.0] {
        probes.push(Probe::tied(a, c, p));
        probes.push(Probe::tied(b, -c, p));
        for &s in &family.singular {
            probes.push(Probe::tied(s, c, p));
            probes.push(Probe::tied(s, -c, p));
        }
    }
    probes
}

pub const DEFAULT_EPS_LIST: [f64; 2] = [1e-2, 1e-3];
pub const DEFAULT_GRID: usize = 41;
pub const DEFAULT_N_MAX: u64 = 100_000;

/// Runs both criteria with default parameters and reports whether they
/// agree on uniform-versus-not.
pub fn classify_convergence(family: &FunctionFamily) -> Result<ClassifyOutcome, LabError> {
    let verdict_a = check_a(family, &DEFAULT_EPS_LIST, DEFAULT_GRID, DEFAULT_N_MAX)?;
    let verdict_b = check_b(family, &default_probes(family), &default_schedule())?;
    let agree =
        verdict_a.all_satisfied() == matches!(verdict_b.mode, ConvergenceMode::Uniform);
    Ok(ClassifyOutcome {
        verdict_a,
        verdict_b,
        agree,
    })
}
