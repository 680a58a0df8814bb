//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::collections::BTreeSet;
use std::hint::black_box;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use kneser::report::CheckStatus;
use kneser::sweep::{sweep, write_jsonl, SweepOutput, SweepSpec};
use kneser::verify::formula_identities;
use kneser::VerificationReport;
use kneser_core::formulas::{exact_distance, kneser_diameter};
use kneser_core::graph::{bfs_from, build_family_graph, graph_diameter_bfs};
use kneser_core::{Budget, Distance, ExactParams, FamilySpec, GraphMode, KneserParams};

struct Outcome {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

/// `(k, r)` with `2 <= k <= 7`, `1 <= r < k - 1`, `2k + r <= 16`.
fn grid() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in 2..=7u32 {
        for r in 1..k.saturating_sub(1) {
            if 2 * k + r <= 16 {
                out.push((k, r));
            }
        }
    }
    out
}

fn grid_exact() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for (k, r) in grid() {
        let diameter = KneserParams::new(k, r).unwrap().diameter();
        out.extend((2..=diameter).map(|d| (k, r, d)));
    }
    out
}

fn key(report: &VerificationReport) -> (u32, u32, u32) {
    let p = report.params;
    (p.k, p.r.unwrap_or(0), p.d.unwrap_or(1))
}

fn exact_reports<'a>(
    out: &'a SweepOutput,
    tuples: &[(u32, u32, u32)],
) -> Vec<&'a VerificationReport> {
    let wanted: BTreeSet<_> = tuples.iter().copied().collect();
    let mut seen = BTreeSet::new();
    out.reports
        .iter()
        .filter(|r| r.family == "exact" && wanted.contains(&key(r)) && seen.insert(key(r)))
        .collect()
}

fn status(report: &VerificationReport, name: &str) -> Option<CheckStatus> {
    report.check(name).map(|c| c.status)
}

fn desk_spec() -> SweepSpec {
    let mut spec = SweepSpec::desk();
    for (k, r, d) in [(8, 1, 3), (7, 2, 3)] {
        spec.extra_exact
            .push(ExactParams::new(KneserParams::new(k, r).unwrap(), d).unwrap());
    }
    spec
}

fn adjacency(out: &SweepOutput, elapsed: Duration) -> Outcome {
    let tuples = grid_exact();
    let reports = exact_reports(out, &tuples);
    let passing = reports
        .iter()
        .filter(|r| status(r, "adjacency") == Some(CheckStatus::Pass))
        .count();
    verdict(
        reports.len() == tuples.len()
            && passing == tuples.len()
            && elapsed < Duration::from_secs(120),
        format!(
            "{passing}/{} tuples with 0 mismatches, sweep {:.1}s",
            tuples.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn distance(out: &SweepOutput) -> Outcome {
    let tuples = grid_exact();
    let reports = exact_reports(out, &tuples);
    let passing = reports
        .iter()
        .filter(|r| {
            status(r, "distance") == Some(CheckStatus::Pass)
                && status(r, "singletons") == Some(CheckStatus::Pass)
        })
        .count();
    verdict(
        reports.len() == tuples.len() && passing == tuples.len(),
        format!(
            "{passing}/{} tuples exact with singleton buckets",
            tuples.len()
        ),
    )
}

fn diameter(out: &SweepOutput) -> Outcome {
    let mut tuples = grid_exact();
    for extra in [(8, 1, 3), (7, 2, 3)] {
        if !tuples.contains(&extra) {
            tuples.push(extra);
        }
    }
    let reports = exact_reports(out, &tuples);
    let mut ok = reports.len() == tuples.len();
    let mut flagged = Vec::new();
    for report in &reports {
        let Some(check) = report.check("diameter") else {
            ok = false;
            continue;
        };
        let recorded = ["theorem", "max_over_s", "bfs"]
            .iter()
            .all(|v| check.values.contains_key(*v));
        let sound = check.values.get("max_over_s") == check.values.get("bfs");
        ok &= recorded && sound && check.status != CheckStatus::Fail;
        if check.status == CheckStatus::Flagged {
            let (k, r, d) = key(report);
            flagged.push(format!(
                "({k},{r},{d}) theorem={} bfs={}",
                check.values["theorem"], check.values["bfs"]
            ));
        }
    }
    for (tuple, theorem) in [((7, 2, 3), "2"), ((8, 1, 3), "4")] {
        let present = reports.iter().any(|r| {
            key(r) == tuple
                && r.check("diameter")
                    .is_some_and(|c| c.values.get("theorem").map(String::as_str) == Some(theorem))
        });
        ok &= present;
    }
    verdict(
        ok,
        format!(
            "max_over_s = BFS on {} tuples; flagged: {}",
            reports.len(),
            flagged.join(", ")
        ),
    )
}

fn classics(out: &SweepOutput) -> Outcome {
    let bfs = |k, r| {
        let spec = FamilySpec::Kneser(KneserParams::new(k, r).unwrap());
        let graph = build_family_graph(&spec, Budget::DEFAULT, GraphMode::Implicit).unwrap();
        graph_diameter_bfs(&graph, false, Budget::DEFAULT).unwrap()
    };
    let petersen =
        kneser_diameter(2, 1) == Ok(Distance::Finite(2)) && bfs(2, 1) == Distance::Finite(2);
    let k11 = kneser_diameter(5, 1) == Ok(Distance::Finite(5)) && bfs(5, 1) == Distance::Finite(5);
    let mut wanted: Vec<(u32, u32)> = grid();
    wanted.extend([(2, 1), (2, 2), (3, 2), (3, 3)]);
    let mut missing = Vec::new();
    for (k, r) in &wanted {
        let report = out
            .reports
            .iter()
            .find(|rep| rep.family == "kneser" && key(rep) == (*k, *r, 1));
        let good = report.is_some_and(|rep| {
            status(rep, "distance") == Some(CheckStatus::Pass)
                && status(rep, "diameter") == Some(CheckStatus::Pass)
        });
        if !good {
            missing.push(format!("({k},{r})"));
        }
    }
    verdict(
        petersen && k11 && missing.is_empty(),
        format!(
            "Petersen diameter 2, K(11,5) diameter 5, {} Kneser tuples{}",
            wanted.len(),
            if missing.is_empty() {
                String::new()
            } else {
                format!("; failing {}", missing.join(" "))
            }
        ),
    )
}

fn generalized(out: &SweepOutput) -> Outcome {
    let mut johnson = (0, 0);
    let mut gen_kneser = (0, 0);
    let mut conventions = BTreeSet::new();
    for report in &out.reports {
        let counter = match report.family.as_str() {
            "johnson" => &mut johnson,
            "gen-kneser" => &mut gen_kneser,
            _ => continue,
        };
        let p = report.params;
        if report.family == "johnson" && (p.n > 14 || p.k > 6) {
            continue;
        }
        if status(report, "distance") == Some(CheckStatus::Skipped) {
            continue;
        }
        counter.0 += 1;
        let passes = ["distance", "diameter", "singletons"].iter().all(|name| {
            matches!(
                status(report, name),
                Some(CheckStatus::Pass | CheckStatus::Skipped)
            )
        });
        if passes {
            counter.1 += 1;
        }
        if let Some(note) = report.check("convention").and_then(|c| c.note.clone()) {
            conventions.insert(note);
        }
    }
    let reductions = out
        .reports
        .iter()
        .filter(|r| r.family == "kneser")
        .all(|r| status(r, "reductions") == Some(CheckStatus::Pass));
    verdict(
        johnson.0 > 0
            && johnson.0 == johnson.1
            && gen_kneser.0 > 0
            && gen_kneser.0 == gen_kneser.1
            && reductions,
        format!(
            "J {}/{} pass, K(n,k,i) {}/{} pass in domain, reductions {}, conventions: {}",
            johnson.1,
            johnson.0,
            gen_kneser.1,
            gen_kneser.0,
            if reductions { "hold" } else { "broken" },
            conventions.into_iter().collect::<Vec<_>>().join(" | ")
        ),
    )
}

fn invariants(out: &SweepOutput) -> Outcome {
    let stahl = grid()
        .iter()
        .filter(|&&(k, r)| {
            out.reports.iter().any(|rep| {
                rep.family == "kneser"
                    && key(rep) == (k, r, 1)
                    && status(rep, "stahl") == Some(CheckStatus::Pass)
            })
        })
        .count();
    let exact: Vec<&VerificationReport> =
        out.reports.iter().filter(|r| r.family == "exact").collect();
    let applied = exact
        .iter()
        .filter(|r| status(r, "path-length") == Some(CheckStatus::Pass))
        .count();
    let broken = exact
        .iter()
        .filter(|r| {
            !matches!(
                status(r, "path-length"),
                Some(CheckStatus::Pass | CheckStatus::Skipped)
            )
        })
        .count();
    let odd = exact
        .iter()
        .filter(|r| r.check("odd-s0").is_some())
        .filter(|r| status(r, "odd-s0") != Some(CheckStatus::Pass))
        .count();
    verdict(
        stahl == grid().len() && broken == 0 && odd == 0,
        format!(
            "Stahl {stahl}/{} grid tuples; path-length bounds hold on {applied} instances where stated, {} outside their hypotheses",
            grid().len(),
            exact.len() - applied
        ),
    )
}

fn identities() -> Outcome {
    let started = Instant::now();
    let checks = formula_identities(9);
    let elapsed = started.elapsed();
    let ok =
        checks.iter().all(|c| c.status == CheckStatus::Pass) && elapsed < Duration::from_secs(1);
    verdict(
        ok,
        format!(
            "partition and adjacency<=>distance-1 over k <= 9 in {:.1}ms",
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn performance() -> Outcome {
    let params = ExactParams::new(KneserParams::new(7, 2).unwrap(), 3).unwrap();
    let mut rng = SmallRng::seed_from_u64(7);
    let samples: Vec<u32> = (0..1 << 16)
        .map(|_| rng.random_range(0..=params.k()))
        .collect();
    let calls = 4_000_000usize;
    let started = Instant::now();
    for idx in 0..calls {
        black_box(exact_distance(black_box(&params), samples[idx & 0xffff]).unwrap());
    }
    let rate = calls as f64 / started.elapsed().as_secs_f64();

    let spec = FamilySpec::Kneser(KneserParams::new(7, 2).unwrap());
    let started = Instant::now();
    let graph = build_family_graph(&spec, Budget::DEFAULT, GraphMode::Implicit).unwrap();
    let field = bfs_from(&graph, 0).unwrap();
    let bfs = started.elapsed();
    let complete =
        field.as_slice().iter().all(Distance::is_finite) && graph.vertex_count() == 11_440;
    verdict(
        rate >= 1e6 && bfs < Duration::from_secs(10) && complete,
        format!(
            "oracle {rate:.0} queries/s, BFS on K(16,7) {:.1}ms",
            bfs.as_secs_f64() * 1e3
        ),
    )
}

fn serialize(out: &SweepOutput) -> Vec<u8> {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, &out.reports, out.summary).unwrap();
    buf
}

fn determinism(first: &SweepOutput) -> Outcome {
    let second = sweep(&desk_spec(), Some(2)).unwrap();
    let (a, b) = (serialize(first), serialize(&second));
    verdict(
        a == b,
        format!(
            "{} bytes, {} lines, byte-identical: {}",
            a.len(),
            a.split(|&c| c == b'\n').count() - 1,
            a == b
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let out = sweep(&desk_spec(), None).expect("desk sweep");
    let elapsed = started.elapsed();
    println!(
        "desk sweep: {} reports, {} pass, {} flagged, {} fail, {} skipped",
        out.summary.tuples,
        out.summary.passes,
        out.summary.flags,
        out.summary.fails,
        out.summary.skips
    );

    let results = [
        ("adjacency theorem sweep", adjacency(&out, elapsed)),
        ("distance theorem sweep", distance(&out)),
        ("diameter triple", diameter(&out)),
        ("Kneser classics", classics(&out)),
        ("generalized families", generalized(&out)),
        ("Stahl and path-length invariants", invariants(&out)),
        ("formula identities", identities()),
        ("performance", performance()),
        ("determinism", determinism(&out)),
    ];
    let mut all = true;
    for (idx, (name, outcome)) in results.iter().enumerate() {
        all &= outcome.ok;
        println!(
            "criterion {} [PRIMARY] {name}: {} ({})",
            idx + 1,
            if outcome.ok { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
