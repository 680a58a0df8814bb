//! Parameter sweeps in a fixed order.
//!
//! Exact-distance tuples come first, ordered by `(k, r, d)` with `d = 1`
//! standing for the Kneser graph itself, then generalized Johnson graphs and
//! generalized Kneser graphs, each ordered by `(n, k, i)`. Tuples run in
//! parallel but reports are always returned in this order.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use kneser_core::{ExactParams, FamilySpec, GenParams, KneserParams};
use rayon::prelude::*;

use crate::report::{Summary, SummaryLine, VerificationReport};
use crate::verify::{
    error_report, verify_exact_with, verify_generalized, verify_kneser_with, KneserContext, Options,
};

/// Bounds for one generalized family; every `i < k` is included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRange {
    pub n_max: u32,
    pub k: RangeInclusive<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub k: RangeInclusive<u32>,
    pub r: RangeInclusive<u32>,
    /// Restricts `d`; `None` keeps `1..=D`.
    pub d: Option<RangeInclusive<u32>>,
    /// Largest ground set `2k + r`.
    pub n_max: u32,
    /// `(k, r, d)` tuples appended after the grid.
    pub extra_exact: Vec<ExactParams>,
    pub johnson: Option<GenRange>,
    pub gen_kneser: Option<GenRange>,
    pub options: Options,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("vertex budget must be at least 1")]
    ZeroBudget,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

impl SweepSpec {
    /// The desk-scale sweep: `k <= 7`, `n <= 16`, Johnson graphs with
    /// `n <= 14, k <= 6` and generalized Kneser graphs with `n <= 16, k <= 7`.
    pub fn desk() -> Self {
        SweepSpec {
            k: 2..=7,
            r: 1..=u32::MAX,
            d: None,
            n_max: 16,
            extra_exact: Vec::new(),
            johnson: Some(GenRange {
                n_max: 14,
                k: 1..=6,
            }),
            gen_kneser: Some(GenRange {
                n_max: 16,
                k: 1..=7,
            }),
            options: Options::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.options.budget.0 == 0 {
            return Err(SweepError::ZeroBudget);
        }
        Ok(())
    }

    fn wants_d(&self, d: u32) -> bool {
        self.d.as_ref().is_none_or(|range| range.contains(&d))
    }

    /// Every tuple in sweep order.
    pub fn tasks(&self) -> Vec<Task> {
        let mut tasks = Vec::new();
        for k in self.k.clone() {
            for r in self.r.clone() {
                if 2 * u64::from(k) + u64::from(r) > u64::from(self.n_max) {
                    break;
                }
                let Ok(base) = KneserParams::new(k, r) else {
                    continue;
                };
                let ds: Vec<u32> = (1..=base.diameter()).filter(|&d| self.wants_d(d)).collect();
                if !ds.is_empty() {
                    tasks.push(Task::Kneser { base, ds });
                }
            }
        }
        for params in &self.extra_exact {
            tasks.push(Task::Kneser {
                base: *params.base(),
                ds: vec![params.d()],
            });
        }
        for (range, johnson) in [(&self.johnson, true), (&self.gen_kneser, false)] {
            let Some(range) = range else { continue };
            for n in 1..=range.n_max {
                for k in range.k.clone() {
                    for i in 0..k {
                        let params = if johnson {
                            GenParams::johnson(n, k, i)
                        } else {
                            GenParams::kneser(n, k, i)
                        };
                        if let Ok(params) = params {
                            tasks.push(Task::Generalized(params));
                        }
                    }
                }
            }
        }
        tasks
    }
}

/// One unit of parallel work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    /// One base search; a report per listed `d` (`d = 1` is the Kneser graph).
    Kneser {
        base: KneserParams,
        ds: Vec<u32>,
    },
    Generalized(GenParams),
}

impl Task {
    pub fn run(&self, opts: &Options) -> Vec<VerificationReport> {
        match self {
            Task::Kneser { base, ds } => run_kneser(*base, ds, opts),
            Task::Generalized(params) => vec![verify_generalized(*params, opts)],
        }
    }
}

fn run_kneser(base: KneserParams, ds: &[u32], opts: &Options) -> Vec<VerificationReport> {
    let ctx = opts
        .budget
        .check(base.vertex_count())
        .and_then(|()| KneserContext::new(base, opts.budget));
    ds.iter()
        .map(|&d| {
            let spec = if d == 1 {
                FamilySpec::Kneser(base)
            } else {
                FamilySpec::Exact(ExactParams::new(base, d).expect("d within diameter"))
            };
            match (&ctx, spec) {
                (Ok(ctx), FamilySpec::Exact(params)) => verify_exact_with(ctx, params, opts),
                (Ok(ctx), _) => verify_kneser_with(ctx, opts),
                (Err(e), spec) => error_report(&spec, e.clone(), opts),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutput {
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

/// Runs every tuple on `jobs` threads (`None`: one per logical CPU).
pub fn sweep(spec: &SweepSpec, jobs: Option<usize>) -> Result<SweepOutput, SweepError> {
    spec.validate()?;
    let tasks = spec.tasks();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| SweepError::Pool(e.to_string()))?;
    let opts = spec.options;
    let batches: Vec<Vec<VerificationReport>> =
        pool.install(|| tasks.par_iter().map(|task| task.run(&opts)).collect());
    let reports: Vec<VerificationReport> = batches.into_iter().flatten().collect();
    let summary = Summary::of(&reports);
    Ok(SweepOutput { reports, summary })
}

/// One JSON object per report, then the summary object.
pub fn write_jsonl<W: Write>(
    mut out: W,
    reports: &[VerificationReport],
    summary: Summary,
) -> io::Result<()> {
    for report in reports {
        serde_json::to_writer(&mut out, report)?;
        out.write_all(b"\n")?;
    }
    serde_json::to_writer(&mut out, &SummaryLine { summary })?;
    out.write_all(b"\n")?;
    out.flush()
}
