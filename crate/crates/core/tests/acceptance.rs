//! Acceptance run: one line per criterion, each with its time limit. Exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use univgraph::corpus::{run_all, run_suite, RunConfig, Suite, SuiteReport};
use univgraph::decomposition::ell;

struct Criterion {
    id: u8,
    title: &'static str,
    suite: Suite,
    limit: Duration,
}

const fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

const CRITERIA: [Criterion; 13] = [
    Criterion {
        id: 1,
        title: "ell recurrence values",
        suite: Suite::Ell,
        limit: Duration::from_secs(1),
    },
    Criterion {
        id: 2,
        title: "long path lifts to the tree",
        suite: Suite::LemmaLongpath,
        limit: minutes(2),
    },
    Criterion {
        id: 3,
        title: "planted minor lives in one part",
        suite: Suite::LemmaLocate,
        limit: minutes(5),
    },
    Criterion {
        id: 4,
        title: "minor engine agrees with brute force",
        suite: Suite::MinorOracle,
        limit: minutes(10),
    },
    Criterion {
        id: 5,
        title: "long path forces long cycle",
        suite: Suite::LemmaCycle,
        limit: minutes(5),
    },
    Criterion {
        id: 6,
        title: "two cycles sharing an edge",
        suite: Suite::Lemma2Con,
        limit: minutes(5),
    },
    Criterion {
        id: 7,
        title: "wheel reduction facts",
        suite: Suite::ReductionFacts,
        limit: minutes(10),
    },
    Criterion {
        id: 8,
        title: "Tutte decomposition",
        suite: Suite::Tutte,
        limit: minutes(15),
    },
    Criterion {
        id: 9,
        title: "minor-free equals model-subgraph-free",
        suite: Suite::CorollaryEquivalence,
        limit: minutes(30),
    },
    Criterion {
        id: 10,
        title: "saturation and pinned transform",
        suite: Suite::Saturation,
        limit: minutes(10),
    },
    Criterion {
        id: 11,
        title: "cycle hosts",
        suite: Suite::CycleHost,
        limit: minutes(10),
    },
    Criterion {
        id: 12,
        title: "wheel host",
        suite: Suite::WheelHost,
        limit: minutes(15),
    },
    Criterion {
        id: 13,
        title: "wheel extraction",
        suite: Suite::WheelExtraction,
        limit: minutes(10),
    },
];

fn line(ok: bool, id: u8, title: &str, detail: &str) -> bool {
    println!("{} [{id:>2}] {title:<40} {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn first_problem(r: &SuiteReport) -> String {
    r.records
        .iter()
        .find(|x| x.status != univgraph::corpus::Status::Pass)
        .map(|x| format!("; first: #{} {:?} {}", x.index, x.status, x.detail))
        .unwrap_or_default()
}

fn main() -> ExitCode {
    let config = RunConfig::default();
    let mut all = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_suite(c.suite, &config);
        let elapsed = start.elapsed();
        let mut ok = report.all_passed() && report.summary.instances > 0 && elapsed <= c.limit;
        if c.id == 1 {
            let direct =
                (1..=10).all(|w| ell(w, 1).ok() == Some(1)) && ell(2, 2).ok() == Some(7) && ell(3, 3).ok() == Some(46);
            ok &= direct;
        }
        let s = &report.summary;
        let detail = format!(
            "{}/{} pass, {} fail, {} inconclusive, {:.2?} (limit {:?}){}",
            s.passed,
            s.instances,
            s.failed,
            s.inconclusive,
            elapsed,
            c.limit,
            first_problem(&report)
        );
        all &= line(ok, c.id, c.title, &detail);
    }

    let start = Instant::now();
    let render = |rs: Vec<SuiteReport>| rs.iter().map(SuiteReport::to_jsonl).collect::<String>();
    let a = render(run_all(&config));
    let b = render(run_all(&config));
    let same = a == b;
    let detail = format!("{} bytes per run, identical: {same}, {:.2?}", a.len(), start.elapsed());
    all &= line(same, 14, "byte-identical reruns", &detail);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
