//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use nsga3_core::harness::{
    experiment_matrix, run_experiment, run_single, write_run_csv, Algorithm, ConfigSummary, ExperimentConfig,
    ExperimentOutcome, Horizon, Overrides, TableKind, Window,
};
use nsga3_core::lemma_lab::{validate_extremal_loss, validate_full_front_trend, check_lemma_properties, LEMMA10_SIZES};
use nsga3_core::{fast_nondominated_sort, mei_opt, Benchmark, BitString, RandomSource};

struct Verdict {
    id: u8,
    passed: bool,
    detail: String,
}

fn verdict(id: u8, passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        id,
        passed,
        detail: detail.into(),
    }
}

fn quartile_triple(row: &ConfigSummary, w: Window) -> Option<(f64, f64, f64)> {
    row.window(w)
        .and_then(|s| s.quartiles)
        .map(|q| (q.q1, q.q2, q.q3))
}

fn fmt_row(row: &ConfigSummary) -> String {
    row.windows
        .iter()
        .map(|w| match w.quartiles {
            Some(q) => format!("{} ({},{},{}) runs={}", w.window, q.q1, q.q2, q.q3, w.runs_used),
            None => format!("{} none", w.window),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn all_windows_used(row: &ConfigSummary) -> bool {
    row.windows.iter().all(|w| w.runs_missing == 0 && w.quartiles.is_some())
}

fn table(kind: TableKind, pop: usize) -> ExperimentOutcome {
    let plan = experiment_matrix(
        kind,
        &Overrides {
            pop_sizes: Some(vec![pop]),
            ..Overrides::default()
        },
    )
    .expect("plan");
    run_experiment(&plan).expect("experiment")
}

fn criterion_1(t1: &ExperimentOutcome) -> Verdict {
    let row = t1.summary.row("N76-nsga3-nr76").expect("row");
    let ok = all_windows_used(row)
        && [Window { from: 1, to: 100 }, Window { from: 3001, to: 3100 }]
            .iter()
            .all(|&w| quartile_triple(row, w) == Some((9.0, 9.0, 9.0)))
        && row.t_start.iter().all(Option::is_some);
    verdict(1, ok, format!("N_r=76 {}", fmt_row(row)))
}

fn criterion_2(t1: &ExperimentOutcome) -> Verdict {
    let w1 = Window { from: 1, to: 100 };
    let w2 = Window { from: 3001, to: 3100 };
    let r38 = t1.summary.row("N76-nsga3-nr38").expect("row");
    let r19 = t1.summary.row("N76-nsga3-nr19").expect("row");
    let ok38 = all_windows_used(r38)
        && quartile_triple(r38, w1) == Some((17.0, 17.0, 17.0))
        && quartile_triple(r38, w2) == Some((17.0, 17.0, 17.0));
    let near = |got: Option<(f64, f64, f64)>, want: (f64, f64, f64)| match got {
        Some(g) => g.1 == 33.0 && (g.0 - want.0).abs() <= 1.0 && (g.2 - want.2).abs() <= 1.0,
        None => false,
    };
    let ok19 = all_windows_used(r19)
        && near(quartile_triple(r19, w1), (33.0, 33.0, 33.0))
        && near(quartile_triple(r19, w2), (33.0, 33.0, 33.25));
    verdict(2, ok38 && ok19, format!("N_r=38 {}; N_r=19 {}", fmt_row(r38), fmt_row(r19)))
}

fn criterion_3(t1: &ExperimentOutcome) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for nr in [152, 304, 608] {
        let label = format!("N76-nsga3-nr{nr}");
        let row = t1.summary.row(&label).expect("row");
        let above = all_windows_used(row)
            && row
                .windows
                .iter()
                .all(|w| w.quartiles.is_some_and(|q| q.q1 > 100.0 && q.q2 > 100.0 && q.q3 > 100.0));
        let losing = row.runs_losing_population_extreme;
        ok &= above && losing >= 1;
        parts.push(format!(
            "N_r={nr} {} runs losing a population extreme={losing} runs losing 0^n/1^n={}",
            fmt_row(row),
            row.runs_losing_extremal
        ));
    }
    verdict(3, ok, parts.join("; "))
}

fn criterion_4(t2: &ExperimentOutcome) -> Verdict {
    let w = Window { from: 1, to: 1000 };
    let exact = [(16, 8.0), (8, 18.0), (4, 40.0)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (nr, v) in exact {
        let row = t2.summary.row(&format!("N16-nsga3-nr{nr}")).expect("row");
        ok &= all_windows_used(row) && quartile_triple(row, w) == Some((v, v, v));
        parts.push(format!("N_r={nr} {}", fmt_row(row)));
    }
    let row = t2.summary.row("N16-nsga3-nr32").expect("row");
    ok &= all_windows_used(row) && quartile_triple(row, w).is_some_and(|q| (20.0..=24.0).contains(&q.1));
    parts.push(format!("N_r=32 {}", fmt_row(row)));
    verdict(4, ok, parts.join("; "))
}

fn criterion_5() -> Verdict {
    let r = validate_extremal_loss(9, 5, 100_000, 5).expect("extremal loss estimate");
    verdict(
        5,
        r.passed(),
        format!("estimates {:.4?} targets {:.4?} tol 0.01", r.estimates, r.targets),
    )
}

fn criterion_6(t1: &ExperimentOutcome, t2: &ExperimentOutcome) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for lemma in [2u8, 4, 5, 6, 8] {
        let r = check_lemma_properties(lemma, 10_000, 600 + u64::from(lemma)).expect("property check");
        ok &= r.passed() && r.trials >= 10_000;
        parts.push(format!("lemma {lemma}: {} trials {} violations", r.trials, r.violations));
    }
    let monitored = t1.summary.monitor_violations() + t2.summary.monitor_violations();
    let runs: usize = t1.records.iter().chain(&t2.records).map(Vec::len).sum();
    ok &= monitored == 0;
    parts.push(format!("run monitors: {runs} runs {monitored} violations"));
    verdict(6, ok, parts.join("; "))
}

/// Smallest MEI over all subsets of `0..=n` with both ends and at most `pop` members.
fn brute_mei_opt(pop: usize, n: usize) -> u32 {
    let mut best = u32::MAX;
    for mask in 0u32..(1 << (n - 1)) {
        if mask.count_ones() as usize + 2 > pop {
            continue;
        }
        let mut prev = 0;
        let mut gap = 0;
        for v in 1..n as u32 {
            if mask >> (v - 1) & 1 == 1 {
                gap = gap.max(v - prev);
                prev = v;
            }
        }
        best = best.min(gap.max(n as u32 - prev));
    }
    best
}

fn criterion_7() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=14 {
        for pop in 2..=6 {
            checked += 1;
            let got = mei_opt(pop, n).expect("mei_opt");
            let want = brute_mei_opt(pop, n);
            if got != want {
                bad.push((n, pop, got, want));
            }
        }
    }
    verdict(7, bad.is_empty(), format!("{checked} (n, N) pairs, mismatches {bad:?}"))
}

fn weakly(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Peel off the non-dominated members repeatedly, comparing all pairs.
fn brute_fronts(points: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| {
                !left
                    .iter()
                    .any(|&j| weakly(&points[j], &points[i]) && points[j] != points[i])
            })
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

fn sorted_fronts(points: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut f = fast_nondominated_sort(points).expect("sort").into_fronts();
    for x in &mut f {
        x.sort_unstable();
    }
    f
}

fn objective_vectors(bench: Benchmark) -> Vec<Vec<u32>> {
    let n = bench.n;
    let mut out: Vec<Vec<u32>> = (0u32..1 << n)
        .map(|m| {
            let bits = BitString::new((0..n).map(|i| m >> i & 1 == 1).collect()).expect("bits");
            bench.evaluate(&bits).expect("eval").values().to_vec()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Calls `f` on every multiset of size `1..=max` drawn from `items`.
fn for_each_multiset(items: &[Vec<u32>], max: usize, f: &mut impl FnMut(&[Vec<u32>])) {
    fn rec(items: &[Vec<u32>], start: usize, max: usize, cur: &mut Vec<Vec<u32>>, f: &mut impl FnMut(&[Vec<u32>])) {
        if !cur.is_empty() {
            f(cur);
        }
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, i, max, cur, f);
            cur.pop();
        }
    }
    rec(items, 0, max, &mut Vec::new(), f);
}

fn criterion_8() -> Verdict {
    let mut exhaustive = 0u64;
    let mut mismatches = 0u64;
    for n in 2..=6 {
        for bench in [Benchmark::lotz(n).unwrap(), Benchmark::one_min_max(n).unwrap()] {
            let vectors = objective_vectors(bench);
            for_each_multiset(&vectors, 8, &mut |pop| {
                exhaustive += 1;
                if sorted_fronts(pop) != brute_fronts(pop) {
                    mismatches += 1;
                }
            });
        }
    }
    let mut rng = RandomSource::new(8);
    let mut random = 0;
    for _ in 0..1000 {
        let size = 9 + rng.index(200);
        let m = 2 + rng.index(3);
        let range = 1 + rng.index(40) as u32;
        let pop: Vec<Vec<u32>> = (0..size)
            .map(|_| (0..m).map(|_| rng.index(range as usize + 1) as u32).collect())
            .collect();
        random += 1;
        if sorted_fronts(&pop) != brute_fronts(&pop) {
            mismatches += 1;
        }
    }
    verdict(
        8,
        mismatches == 0,
        format!("{exhaustive} exhaustive + {random} random populations, {mismatches} mismatches"),
    )
}

fn criterion_9() -> Verdict {
    let (report, est) = validate_full_front_trend(&LEMMA10_SIZES, 10_000, 10).expect("full-front estimate");
    let parts: Vec<String> = est
        .iter()
        .map(|e| format!("n={} mean {:.3} (se {:.3}, opt {})", e.n, e.mean, e.std_error, e.mei_opt))
        .collect();
    verdict(9, report.passed(), parts.join("; "))
}

fn criterion_10() -> Verdict {
    let dir = tempfile::tempdir().expect("tempdir");
    let cases = [
        (Benchmark::one_min_max(601).unwrap(), 76, 76, Algorithm::Nsga3, 3000),
        (Benchmark::one_min_max(601).unwrap(), 76, 608, Algorithm::Nsga3, 1000),
        (Benchmark::lotz(120).unwrap(), 16, 32, Algorithm::Nsga3, 3000),
        (Benchmark::one_min_max(601).unwrap(), 76, 0, Algorithm::Nsga2Sequential, 1000),
        (Benchmark::one_min_max(101).unwrap(), 16, 0, Algorithm::Nsga2Steady, 5000),
    ];
    let mut ok = true;
    for (k, (bench, pop, nr, alg, gens)) in cases.into_iter().enumerate() {
        let cfg = ExperimentConfig::new(bench, pop, nr, alg, vec![99]);
        let bytes: Vec<Vec<u8>> = (0..2)
            .map(|rep| {
                let rec = run_single(&cfg, 99, Horizon::Fixed { generations: gens }).expect("run");
                let path = dir.path().join(format!("{k}-{rep}.csv"));
                write_run_csv(&path, &rec).expect("write");
                std::fs::read(&path).expect("read")
            })
            .collect();
        ok &= bytes[0] == bytes[1] && !bytes[0].is_empty();
    }
    verdict(10, ok, "5 configurations, repeated runs compared byte for byte")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let t1 = table(TableKind::Table1, 76);
    eprintln!("table 1 (N=76) finished after {:.0?}", start.elapsed());
    let t2 = table(TableKind::Table2, 16);
    eprintln!("table 2 (N=16) finished after {:.0?}", start.elapsed());

    let verdicts = vec![
        criterion_1(&t1),
        criterion_2(&t1),
        criterion_3(&t1),
        criterion_4(&t2),
        criterion_5(),
        criterion_6(&t1, &t2),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    for v in &verdicts {
        println!("criterion {:>2}: {}  {}", v.id, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed ({:.0?})",
        verdicts.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
