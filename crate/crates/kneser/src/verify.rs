//! Closed forms against BFS ground truth.
//!
//! Every search starts at rank 0, the subset `{1..k}`. All graphs checked here
//! are vertex-transitive, so one source determines every distance and the
//! diameter; the `singletons` checks confirm that distance depends on `s` alone.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use kneser_core::formulas::{
    exact_diameter_max_over_s, exact_diameter_theorem, exact_distance, exact_is_adjacent,
    gen_diameter, gen_diameter_max_over_s, gen_distance, gen_johnson_distance, gen_kneser_distance,
    kneser_diameter, kneser_distance, path_length_bound, stahl_bound,
};
use kneser_core::graph::{bfs_from, build_family_graph, profile_of};
use kneser_core::{
    canonical_pair, rank_colex, Budget, Distance, DistanceField, DistanceProfile, Error,
    ExactParams, FamilySpec, GenFamily, GenKneserConvention, GenParams, Graph, GraphMode,
    IntersectionRule, KneserParams,
};

use crate::report::{Check, CheckStatus, Mismatch, ParamsRecord, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: Budget,
    /// Record wall-clock time; otherwise `elapsed_ms` is 0 so output is reproducible.
    pub timings: bool,
    /// Also run generalized Kneser graphs under the strict `s < i` adjacency.
    pub compare_conventions: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: Budget::DEFAULT,
            timings: false,
            compare_conventions: true,
        }
    }
}

fn bucket_literal(bucket: &BTreeSet<Distance>) -> String {
    let mut out = String::from("{");
    for (idx, d) in bucket.iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        let _ = write!(out, "{d}");
    }
    out.push('}');
    out
}

fn singleton_check(profile: &DistanceProfile) -> Check {
    let mismatches = profile
        .iter()
        .filter(|(_, b)| b.len() > 1)
        .map(|(s, b)| Mismatch::at(s, "one distance", bucket_literal(b)))
        .collect();
    Check::strict("singletons", mismatches)
}

/// Compares every non-empty bucket with `formula(s)`.
fn bucket_check<F>(name: &str, profile: &DistanceProfile, mut formula: F) -> Check
where
    F: FnMut(u32) -> kneser_core::Result<Distance>,
{
    let mut mismatches = Vec::new();
    for (s, bucket) in profile.iter().filter(|(_, b)| !b.is_empty()) {
        match formula(s) {
            Ok(value) if bucket.len() == 1 && bucket.contains(&value) => {}
            Ok(value) => mismatches.push(Mismatch::at(s, bucket_literal(bucket), value)),
            Err(e) => mismatches.push(Mismatch::at(s, bucket_literal(bucket), e)),
        }
    }
    Check::strict(name, mismatches)
}

/// Pass when all three agree, flagged when only the theorem differs, fail otherwise.
fn diameter_check(
    theorem: kneser_core::Result<Distance>,
    max_over_s: Distance,
    bfs: Distance,
) -> Check {
    let theorem_text = match &theorem {
        Ok(d) => d.to_string(),
        Err(e) => e.to_string(),
    };
    let mut check = if max_over_s != bfs {
        let mut mismatches = vec![Mismatch::global(bfs, format!("max_over_s={max_over_s}"))];
        if theorem.as_ref() != Ok(&bfs) {
            mismatches.push(Mismatch::global(bfs, format!("theorem={theorem_text}")));
        }
        Check::strict("diameter", mismatches)
    } else if theorem.as_ref() != Ok(&bfs) {
        Check::advisory(
            "diameter",
            vec![Mismatch::global(bfs, format!("theorem={theorem_text}"))],
        )
        .with_note("closed-form diameter differs from BFS; max over s agrees")
    } else {
        Check::strict("diameter", Vec::new())
    };
    check = check
        .with_value("theorem", theorem_text)
        .with_value("max_over_s", max_over_s)
        .with_value("bfs", bfs);
    check
}

fn finish(
    spec: &FamilySpec,
    checks: Vec<Check>,
    started: Instant,
    opts: &Options,
) -> VerificationReport {
    VerificationReport {
        family: spec.tag().to_string(),
        params: ParamsRecord::from(spec),
        checks,
        vertex_count: spec.vertex_count(),
        elapsed_ms: if opts.timings {
            started.elapsed().as_millis() as u64
        } else {
            0
        },
    }
}

/// Turns a construction error into the single check of a report.
fn error_check(error: Error) -> Check {
    match error {
        Error::BudgetExceeded { vertices, budget } => Check::skipped(
            "budget",
            format!("{vertices} vertices exceed the budget of {budget}"),
        ),
        other => Check::strict("error", vec![Mismatch::global("a report", other)]),
    }
}

/// BFS over `K(2k+r, k)` from `{1..k}`, shared by every `d` of one `(k, r)`.
#[derive(Clone, Debug)]
pub struct KneserContext {
    base: KneserParams,
    field: DistanceField,
    profile: DistanceProfile,
}

impl KneserContext {
    pub fn new(base: KneserParams, budget: Budget) -> kneser_core::Result<Self> {
        let graph = build_family_graph(&FamilySpec::Kneser(base), budget, GraphMode::Implicit)?;
        let field = bfs_from(&graph, 0)?;
        let profile = profile_of(&graph, &field)?;
        Ok(KneserContext {
            base,
            field,
            profile,
        })
    }

    pub fn base(&self) -> &KneserParams {
        &self.base
    }

    pub fn profile(&self) -> &DistanceProfile {
        &self.profile
    }

    /// Distance checks on the Kneser graph itself.
    pub fn kneser_checks(&self) -> Vec<Check> {
        let (k, r) = (self.base.k(), self.base.r());
        let mut checks = vec![
            singleton_check(&self.profile),
            bucket_check("distance", &self.profile, |s| kneser_distance(k, r, s)),
        ];
        if k >= 2 {
            let max_over_s = (0..k)
                .filter_map(|s| kneser_distance(k, r, s).ok())
                .max()
                .unwrap_or(Distance::Finite(0));
            checks.push(diameter_check(
                kneser_diameter(k, r),
                max_over_s,
                self.profile.max(),
            ));
        } else {
            checks.push(Check::skipped("diameter", "diameter formula needs k >= 2"));
        }
        checks.push(self.stahl_check());
        checks.push(self.reduction_check());
        checks
    }

    /// Parity bounds on `s` for every observed distance.
    pub fn stahl_check(&self) -> Check {
        let (k, r) = (self.base.k(), self.base.r());
        let mut mismatches = Vec::new();
        for (s, bucket) in self.profile.iter() {
            for len in bucket.iter().filter_map(Distance::finite) {
                let bound = stahl_bound(k, r, len);
                if !bound.admits(s) {
                    mismatches.push(Mismatch::at(s, bound, format!("distance {len}")));
                }
            }
        }
        Check::strict("stahl", mismatches)
    }

    /// Generalized formulas at `i = 0` against the Kneser formula. No BFS involved.
    pub fn reduction_check(&self) -> Check {
        let (k, r, n) = (self.base.k(), self.base.r(), self.base.n());
        let mut mismatches = Vec::new();
        for s in 0..=k {
            let want = kneser_distance(k, r, s);
            let johnson = gen_johnson_distance(n, k, 0, s);
            if johnson != want {
                mismatches.push(Mismatch::at(
                    s,
                    fmt_result(&want),
                    format!("johnson={}", fmt_result(&johnson)),
                ));
            }
            if r + 1 < k {
                let gen = gen_kneser_distance(n, k, 0, s);
                if gen != want {
                    mismatches.push(Mismatch::at(
                        s,
                        fmt_result(&want),
                        format!("gen-kneser={}", fmt_result(&gen)),
                    ));
                }
            }
        }
        Check::strict("reductions", mismatches)
    }

    /// Adjacency formula against "BFS distance to the canonical partner is `d`".
    pub fn adjacency_check(&self, params: &ExactParams) -> Check {
        let (n, k, d) = (params.n(), params.k(), params.d());
        let mut mismatches = Vec::new();
        for s in 0..k {
            let truth = match canonical_pair(n, k, s).and_then(|(_, b)| rank_colex(&b, k)) {
                Ok(rank) => self.field.get(rank as u32) == Distance::Finite(d),
                Err(e) => {
                    mismatches.push(Mismatch::at(s, "canonical pair", e));
                    continue;
                }
            };
            match exact_is_adjacent(params, s) {
                Ok(formula) if formula == truth => {}
                Ok(formula) => mismatches.push(Mismatch::at(s, truth, formula)),
                Err(e) => mismatches.push(Mismatch::at(s, truth, e)),
            }
        }
        Check::strict("adjacency", mismatches)
    }

    /// `K_{=d}` built from the observed distances, not from the adjacency formula.
    pub fn exact_graph(&self, params: &ExactParams, budget: Budget) -> kneser_core::Result<Graph> {
        let d = Distance::Finite(params.d());
        let sizes = (0..params.k()).filter(|&s| self.profile.singleton(s) == Some(d));
        Graph::implicit(
            params.n(),
            params.k(),
            IntersectionRule::from_sizes(sizes),
            budget,
        )
    }

    /// BFS profile of `K_{=d}` from `{1..k}`.
    pub fn exact_profile(
        &self,
        params: &ExactParams,
        budget: Budget,
    ) -> kneser_core::Result<DistanceProfile> {
        let graph = self.exact_graph(params, budget)?;
        let field = bfs_from(&graph, 0)?;
        profile_of(&graph, &field)
    }

    /// Distance, singleton, path-length and lower-bound checks on `K_{=d}`.
    pub fn distance_checks(&self, params: &ExactParams, profile: &DistanceProfile) -> Vec<Check> {
        let mut checks = vec![
            singleton_check(profile),
            bucket_check("distance", profile, |s| exact_distance(params, s)),
            path_length_check(params, profile),
        ];
        if let Some(check) = odd_lower_bound_check(params, profile) {
            checks.push(check);
        }
        checks
    }

    pub fn diameter_check(&self, params: &ExactParams, profile: &DistanceProfile) -> Check {
        let theorem = if params.d() == 1 {
            kneser_diameter(params.k(), params.r())
        } else {
            exact_diameter_theorem(params)
        };
        match exact_diameter_max_over_s(params) {
            Ok(max_over_s) => diameter_check(theorem, max_over_s, profile.max()),
            Err(e) => Check::strict("diameter", vec![Mismatch::global(profile.max(), e)]),
        }
    }
}

fn fmt_result(value: &kneser_core::Result<Distance>) -> String {
    match value {
        Ok(d) => d.to_string(),
        Err(e) => e.to_string(),
    }
}

fn path_length_check(params: &ExactParams, profile: &DistanceProfile) -> Check {
    let mut applied = false;
    let mut mismatches = Vec::new();
    for (s, bucket) in profile.iter() {
        for len in bucket.iter().filter_map(Distance::finite) {
            if let Some(bound) = path_length_bound(params, len) {
                applied = true;
                if !bound.admits(s) {
                    mismatches.push(Mismatch::at(s, bound, format!("distance {len}")));
                }
            }
        }
    }
    if applied {
        Check::strict("path-length", mismatches)
    } else {
        Check::skipped(
            "path-length",
            "no path-length bound is stated for this regime",
        )
    }
}

/// For odd `d < D` with `k >= 2rp + r + 1`, disjoint pairs are at distance exactly 3.
fn odd_lower_bound_check(params: &ExactParams, profile: &DistanceProfile) -> Option<Check> {
    let (k, r, p) = (params.k(), params.r(), params.p());
    if params.is_even() || p == 0 || params.at_diameter() || k < 2 * r * p + r + 1 {
        return None;
    }
    let bucket = profile.bucket(0);
    let mismatches = if bucket.len() == 1 && bucket.contains(&Distance::Finite(3)) {
        Vec::new()
    } else {
        vec![Mismatch::at(0, bucket_literal(bucket), 3)]
    };
    Some(Check::strict("odd-s0", mismatches))
}

fn run<F>(spec: FamilySpec, opts: &Options, body: F) -> VerificationReport
where
    F: FnOnce() -> kneser_core::Result<Vec<Check>>,
{
    let started = Instant::now();
    let checks = match opts.budget.check(spec.vertex_count()).and_then(|()| body()) {
        Ok(checks) => checks,
        Err(e) => vec![error_check(e)],
    };
    finish(&spec, checks, started, opts)
}

/// Distance, diameter, Stahl and reduction checks on `K(2k+r, k)`.
pub fn verify_kneser(base: KneserParams, opts: &Options) -> VerificationReport {
    run(FamilySpec::Kneser(base), opts, || {
        Ok(KneserContext::new(base, opts.budget)?.kneser_checks())
    })
}

/// Kneser checks against an existing base search.
pub fn verify_kneser_with(ctx: &KneserContext, opts: &Options) -> VerificationReport {
    run(FamilySpec::Kneser(*ctx.base()), opts, || {
        Ok(ctx.kneser_checks())
    })
}

/// A report whose only check records `error`; budget errors become a skip.
pub fn error_report(spec: &FamilySpec, error: Error, opts: &Options) -> VerificationReport {
    run(*spec, opts, || Err(error))
}

/// Stahl's parity bounds on `K(2k+r, k)` alone.
pub fn verify_stahl(k: u32, r: u32, opts: &Options) -> VerificationReport {
    match KneserParams::new(k, r) {
        Ok(base) => run(FamilySpec::Kneser(base), opts, || {
            Ok(vec![KneserContext::new(base, opts.budget)?.stahl_check()])
        }),
        Err(e) => invalid_report("kneser", k, r, e),
    }
}

fn invalid_report(family: &str, k: u32, r: u32, error: Error) -> VerificationReport {
    VerificationReport {
        family: family.to_string(),
        params: ParamsRecord {
            n: 2 * k + r,
            k,
            r: Some(r),
            d: None,
            i: None,
        },
        checks: vec![error_check(error)],
        vertex_count: 0,
        elapsed_ms: 0,
    }
}

pub fn verify_exact_adjacency(params: ExactParams, opts: &Options) -> VerificationReport {
    run(FamilySpec::Exact(params), opts, || {
        Ok(vec![
            KneserContext::new(*params.base(), opts.budget)?.adjacency_check(&params)
        ])
    })
}

pub fn verify_exact_distance(params: ExactParams, opts: &Options) -> VerificationReport {
    run(FamilySpec::Exact(params), opts, || {
        let ctx = KneserContext::new(*params.base(), opts.budget)?;
        let profile = ctx.exact_profile(&params, opts.budget)?;
        Ok(ctx.distance_checks(&params, &profile))
    })
}

pub fn verify_diameters(params: ExactParams, opts: &Options) -> VerificationReport {
    run(FamilySpec::Exact(params), opts, || {
        let ctx = KneserContext::new(*params.base(), opts.budget)?;
        let profile = ctx.exact_profile(&params, opts.budget)?;
        Ok(vec![ctx.diameter_check(&params, &profile)])
    })
}

/// Every check for one `K_{=d}` against an existing base search.
pub fn verify_exact_with(
    ctx: &KneserContext,
    params: ExactParams,
    opts: &Options,
) -> VerificationReport {
    run(FamilySpec::Exact(params), opts, || {
        let profile = ctx.exact_profile(&params, opts.budget)?;
        let mut checks = vec![ctx.adjacency_check(&params)];
        checks.extend(ctx.distance_checks(&params, &profile));
        checks.push(ctx.diameter_check(&params, &profile));
        Ok(checks)
    })
}

/// Adjacency, distance and diameter checks for one `K_{=d}`.
pub fn verify_exact(params: ExactParams, opts: &Options) -> VerificationReport {
    match KneserContext::new(*params.base(), opts.budget) {
        Ok(ctx) => verify_exact_with(&ctx, params, opts),
        Err(e) => error_report(&FamilySpec::Exact(params), e, opts),
    }
}

/// Any built-in family, with all its checks.
pub fn verify_family(spec: &FamilySpec, opts: &Options) -> VerificationReport {
    match *spec {
        FamilySpec::Kneser(base) => verify_kneser(base, opts),
        FamilySpec::Exact(params) => verify_exact(params, opts),
        FamilySpec::GenKneser(params, _) | FamilySpec::Johnson(params) => {
            verify_generalized(params, opts)
        }
    }
}

fn gen_profile(spec: &FamilySpec, budget: Budget) -> kneser_core::Result<DistanceProfile> {
    let graph = build_family_graph(spec, budget, GraphMode::Implicit)?;
    let field = bfs_from(&graph, 0)?;
    profile_of(&graph, &field)
}

/// Generalized Kneser (`s <= i` adjacency) or generalized Johnson graph
/// against its distance and diameter formulas. Checks outside a formula's
/// stated domain are skipped with the reason.
pub fn verify_generalized(params: GenParams, opts: &Options) -> VerificationReport {
    let spec = match params.family() {
        GenFamily::Kneser => FamilySpec::GenKneser(params, GenKneserConvention::AtMost),
        GenFamily::Johnson => FamilySpec::Johnson(params),
    };
    run(spec, opts, || {
        let distance_domain = gen_distance(&params, params.k()).err();
        let diameter_domain = gen_diameter(&params).err();
        if let (Some(dist), Some(diam)) = (&distance_domain, &diameter_domain) {
            return Ok(vec![
                Check::skipped("distance", dist.to_string()),
                Check::skipped("diameter", diam.to_string()),
            ]);
        }
        let profile = gen_profile(&spec, opts.budget)?;
        let mut checks = vec![singleton_check(&profile)];
        match &distance_domain {
            None => checks.push(bucket_check("distance", &profile, |s| {
                gen_distance(&params, s)
            })),
            Some(e) => checks.push(Check::skipped("distance", e.to_string())),
        }
        match (&diameter_domain, gen_diameter_max_over_s(&params)) {
            (None, Ok(max_over_s)) => checks.push(diameter_check(
                gen_diameter(&params),
                max_over_s,
                profile.max(),
            )),
            (None, Err(_)) => {
                // Closed-form distance unavailable: compare the diameter formula alone.
                let bfs = profile.max();
                let theorem = gen_diameter(&params);
                let mismatches = match &theorem {
                    Ok(d) if *d == bfs => Vec::new(),
                    other => vec![Mismatch::global(bfs, fmt_result(other))],
                };
                checks.push(
                    Check::strict("diameter", mismatches)
                        .with_value("theorem", fmt_result(&theorem))
                        .with_value("bfs", bfs),
                );
            }
            (Some(e), _) => checks.push(Check::skipped("diameter", e.to_string())),
        }
        if params.family() == GenFamily::Kneser
            && distance_domain.is_none()
            && opts.compare_conventions
        {
            checks.push(convention_check(&params, &checks[1], opts.budget)?);
        }
        Ok(checks)
    })
}

/// Runs the strict `s < i` adjacency and records which convention the distance
/// formula describes. Flagged when the strict reading disagrees with it.
fn convention_check(
    params: &GenParams,
    at_most: &Check,
    budget: Budget,
) -> kneser_core::Result<Check> {
    let strict = FamilySpec::GenKneser(*params, GenKneserConvention::Below);
    let profile = gen_profile(&strict, budget)?;
    let below = bucket_check("convention", &profile, |s| gen_distance(params, s));
    let matches = |c: &Check| {
        if c.status == CheckStatus::Pass {
            "matches"
        } else {
            "differs"
        }
    };
    let note = format!(
        "{} {}, {} {}",
        GenKneserConvention::AtMost.tag(),
        matches(at_most),
        GenKneserConvention::Below.tag(),
        matches(&below)
    );
    Ok(Check::advisory("convention", below.mismatches).with_note(note))
}

/// Formula-only identities over `2 <= k <= k_max`, `1 <= r < k - 1`: each
/// `s < k` is adjacent in exactly the `K_{=d}` with `d` its Kneser distance,
/// and `exact_distance = 1` exactly on adjacent pairs.
pub fn formula_identities(k_max: u32) -> Vec<Check> {
    let mut partition = Vec::new();
    let mut adjacency = Vec::new();
    for k in 2..=k_max {
        for r in 1..k.saturating_sub(1) {
            let Ok(base) = KneserParams::new(k, r) else {
                continue;
            };
            let tag = |s: u32| format!("k={k} r={r} s={s}");
            for s in 0..k {
                let dist = kneser_distance(k, r, s);
                let mut adjacent_in = Vec::new();
                for d in 1..=base.diameter() {
                    let params = ExactParams::new(base, d).expect("d within diameter");
                    let adjacent = exact_is_adjacent(&params, s);
                    if adjacent == Ok(true) {
                        adjacent_in.push(d);
                    }
                    let unit = exact_distance(&params, s).map(|v| v == Distance::Finite(1));
                    if unit.is_err() || adjacent.is_err() || unit != adjacent {
                        adjacency.push(Mismatch::at(
                            s,
                            format!("{} d={d}", tag(s)),
                            format!("{unit:?} vs {adjacent:?}"),
                        ));
                    }
                }
                let expected = dist.as_ref().ok().and_then(Distance::finite);
                if adjacent_in.len() != 1 || expected != adjacent_in.first().copied() {
                    partition.push(Mismatch::at(
                        s,
                        format!("{} dist={}", tag(s), fmt_result(&dist)),
                        format!("{adjacent_in:?}"),
                    ));
                }
            }
        }
    }
    vec![
        Check::strict("partition", partition),
        Check::strict("adjacency-iff-distance-1", adjacency),
    ]
}
