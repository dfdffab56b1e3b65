//! Residual-check catalogue: every identity in the published listing is a
//! data-driven check with an id, a cost tier and an evaluator returning a
//! residual. The runner builds shared tensor sets per n and aggregates a
//! deterministic report.

mod checks;
mod context;
mod report;

pub use context::Context;
pub use report::{Adjudication, CheckResult, Report, Summary, Verdict};

use std::time::Instant;

use crate::error::{Error, Result};
use crate::invariants::check_feasible;

/// Residual of one identity: `abs` is the max-abs deviation over free
/// components (or |lhs - rhs| for scalars), `scale` the largest magnitude
/// the evaluation passed through (for vanishing identities: the product of
/// operand max-abs values, so that "everything is tiny" cannot pass).
#[derive(Clone, Copy, Debug)]
pub struct Residual {
    pub abs: f64,
    pub scale: f64,
}

impl Residual {
    pub fn new(abs: f64, scale: f64) -> Self {
        Self { abs, scale }
    }

    /// Residual relative to scale; falls back to the absolute value when
    /// the scale is below one, so near-zero scales do not inflate it.
    pub fn rel(&self) -> f64 {
        self.abs / self.scale.max(1.0)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel() < tol
    }
}

/// Identity families, mirroring the sections of the listing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Jacobi,
    DFam,
    Omega,
    TFam,
    Contract,
    Product,
    Duality,
    NonPrim,
    Lambda,
    Complete,
    Squares,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Jacobi => "JACOBI",
            Group::DFam => "DFAM",
            Group::Omega => "OMEGA",
            Group::TFam => "TFAM",
            Group::Contract => "CONTRACT",
            Group::Product => "PRODUCT",
            Group::Duality => "DUALITY",
            Group::NonPrim => "NONPRIM",
            Group::Lambda => "LAMBDA",
            Group::Complete => "COMPLETE",
            Group::Squares => "SQUARES",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "JACOBI" => Ok(Group::Jacobi),
            "DFAM" => Ok(Group::DFam),
            "OMEGA" => Ok(Group::Omega),
            "TFAM" => Ok(Group::TFam),
            "CONTRACT" => Ok(Group::Contract),
            "PRODUCT" => Ok(Group::Product),
            "DUALITY" => Ok(Group::Duality),
            "NONPRIM" => Ok(Group::NonPrim),
            "LAMBDA" => Ok(Group::Lambda),
            "COMPLETE" => Ok(Group::Complete),
            "SQUARES" => Ok(Group::Squares),
            other => Err(Error::Config(format!("unknown group `{other}`"))),
        }
    }
}

/// Cost tiers gate default runs: heavy means the evaluator touches an
/// order-9 tensor at n >= 5 (or worse) and runs only when asked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cost {
    Cheap,
    Moderate,
    Heavy,
}

impl Cost {
    pub fn as_str(self) -> &'static str {
        match self {
            Cost::Cheap => "cheap",
            Cost::Moderate => "moderate",
            Cost::Heavy => "heavy",
        }
    }
}

/// One catalogued identity check.
pub struct CheckDef {
    pub id: &'static str,
    /// Equation tag in the published listing this check certifies.
    pub eq: &'static str,
    pub group: Group,
    pub cost: Cost,
    /// Highest cocycle index m the evaluator touches, used for feasibility
    /// gating and shared prebuilds. 0 when no cocycle is needed.
    pub max_m: usize,
    /// Whether the check says anything at this n.
    pub applicable: fn(usize) -> bool,
    /// Per-check tolerance override (defaults to the suite tolerance).
    pub tol: Option<f64>,
    /// None for analytic-only entries whose tensors sit above the
    /// feasibility cap at every n; they are reported skipped-infeasible.
    pub run: Option<fn(&Context) -> Result<Residual>>,
    pub note: &'static str,
}

/// The full check catalogue, sorted by id, ids unique.
pub fn catalogue() -> Vec<CheckDef> {
    let mut all = checks::catalogue();
    all.sort_by(|a, b| a.id.cmp(b.id));
    for w in all.windows(2) {
        assert!(w[0].id != w[1].id, "duplicate check id {}", w[0].id);
    }
    all
}

/// Suite configuration; report destination and rendering are the caller's
/// concern.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_list: Vec<usize>,
    /// Cap on the cocycle index m made available to checks.
    pub max_m: usize,
    pub tolerance: f64,
    /// Empty means all groups.
    pub groups: Vec<Group>,
    pub include_heavy: bool,
    pub workers: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_list: vec![2, 3],
            max_m: 5,
            tolerance: 1e-9,
            groups: Vec::new(),
            include_heavy: false,
            workers: None,
        }
    }
}

/// Run one catalogued check against a prepared context.
pub fn run_check(def: &CheckDef, ctx: &Context, tolerance: f64) -> CheckResult {
    let tol = def.tol.unwrap_or(tolerance);
    let n = ctx.n();
    let started = Instant::now();
    let (residual, verdict) = match def.run {
        None => (None, Verdict::SkippedInfeasible),
        Some(_) if !(def.applicable)(n) => (None, Verdict::SkippedInapplicable),
        Some(_) if check_feasible(n, def.max_m.max(2)).is_err() => {
            (None, Verdict::SkippedInfeasible)
        }
        Some(f) => match f(ctx) {
            Ok(r) => {
                let v = if r.passes(tol) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                (Some(r), v)
            }
            Err(Error::Infeasible { .. }) => (None, Verdict::SkippedInfeasible),
            Err(e) => {
                eprintln!("check {} at n={} errored: {e}", def.id, n);
                (Some(Residual::new(f64::MAX, 1.0)), Verdict::Fail)
            }
        },
    };
    let wall_ms = started.elapsed().as_millis() as u64;
    let r = residual.unwrap_or(Residual::new(0.0, 0.0));
    CheckResult {
        id: def.id.to_string(),
        paper_eq: def.eq.to_string(),
        n,
        residual_abs: r.abs,
        residual_rel: r.rel(),
        scale: r.scale,
        tolerance: tol,
        verdict,
        wall_ms,
    }
}

/// Find a check by id.
pub fn find_check(all: &[CheckDef], id: &str) -> Result<usize> {
    all.iter()
        .position(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Run every selected check at every requested n. Checks execute
/// sequentially in id order (evaluators parallelize internally), so the
/// report is deterministic for any worker count.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    if config.n_list.is_empty() {
        return Err(Error::Config("n_list must not be empty".into()));
    }
    if !(config.tolerance > 0.0) {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    let mut ns = config.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::Config(format!("n must be >= 2, got {bad}")));
    }

    let all = catalogue();
    let selected: Vec<&CheckDef> = all
        .iter()
        .filter(|c| config.groups.is_empty() || config.groups.contains(&c.group))
        .filter(|c| config.include_heavy || c.cost != Cost::Heavy)
        .collect();

    let workers = crate::par::resolve_workers(config.workers);
    let mut results = Vec::new();
    let mut adjudications = Vec::new();
    for &n in &ns {
        // Shared prebuild: the largest feasible cocycle any runnable check
        // wants, bounded by the configured cap.
        let mut max_m = 2;
        for c in &selected {
            if c.run.is_some() && (c.applicable)(n) {
                let want = c.max_m.min(config.max_m);
                for m in (2..=want).rev() {
                    if check_feasible(n, m).is_ok() {
                        max_m = max_m.max(m);
                        break;
                    }
                }
            }
        }
        let ctx = Context::new(n, max_m)?;
        let run_one = |def: &CheckDef| run_check(def, &ctx, config.tolerance);
        let batch: Vec<CheckResult> =
            crate::par::with_workers(workers, || selected.iter().map(|c| run_one(c)).collect());
        results.extend(batch);
        adjudications.extend(ctx.take_adjudications());
    }
    results.sort_by(|a, b| a.id.cmp(&b.id).then(a.n.cmp(&b.n)));
    adjudications.sort_by(|a, b| a.id.cmp(&b.id).then(a.n.cmp(&b.n)));

    let summary = Summary::tally(&results);
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        n: ns,
        checks: results,
        summary,
        adjudications,
    })
}
