//! Acceptance criteria, evaluated on two `verify --suite all --seed 42` runs.

use std::collections::BTreeMap;
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_riesz-matvar");

struct Report {
    check: String,
    statistic: f64,
    sample_size: u64,
    detail: String,
}

fn run_all(path: &std::path::Path) -> (Vec<u8>, i32) {
    let out = Command::new(BIN).args(["verify", "--suite", "all", "--seed", "42", "--out"]).arg(path).output().expect("binary runs");
    (std::fs::read(path).expect("report written"), out.status.code().unwrap_or(-1))
}

fn parse(bytes: &[u8]) -> Vec<Report> {
    let v: Vec<Value> = serde_json::from_slice(bytes).expect("report is a JSON array");
    v.into_iter()
        .map(|r| Report {
            check: r["check"].as_str().unwrap_or_default().to_string(),
            statistic: r["statistic"].as_f64().unwrap_or(f64::NAN),
            sample_size: r["sample_size"].as_u64().unwrap_or(0),
            detail: r["detail"].as_str().unwrap_or_default().to_string(),
        })
        .collect()
}

fn with_prefix<'a>(reports: &'a [Report], prefix: &str) -> Vec<&'a Report> {
    reports.iter().filter(|r| r.check.starts_with(prefix)).collect()
}

/// `Ok(summary)` or `Err(reason)` per criterion.
type Outcome = Result<String, String>;

fn all_below(rs: &[&Report], limit: f64, strict: bool) -> Outcome {
    let bad: Vec<String> = rs
        .iter()
        .filter(|r| !(if strict { r.statistic < limit } else { r.statistic <= limit }))
        .map(|r| format!("{} = {:.4e}", r.check, r.statistic))
        .collect();
    if bad.is_empty() {
        let worst = rs.iter().map(|r| r.statistic).fold(0.0, f64::max);
        Ok(format!("{} checks, worst {worst:.3e}", rs.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn need(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn normalization_1d(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "normalization_1d:");
    let mut settings: BTreeMap<(String, String, String), usize> = BTreeMap::new();
    for r in &rs {
        let parts: Vec<&str> = r.check.split(':').collect();
        *settings.entry((parts[1].into(), parts[2].into(), parts[4].into())).or_default() += 1;
    }
    for beta in ["b1", "b2", "b4"] {
        let families: Vec<_> = settings.iter().filter(|((_, _, b), n)| b == beta && **n >= 3).collect();
        need(families.len() >= 8, || format!("{beta}: only {} family variants with 3 settings", families.len()))?;
    }
    all_below(&rs, 1e-8, false)
}

fn normalization_mc(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "normalization_mc:");
    need(rs.len() == 3, || format!("expected 3 cases, found {}", rs.len()))?;
    need(rs.iter().all(|r| r.sample_size == 1_000_000), || "sample size is not 10^6".into())?;
    all_below(&rs, 3.0, false)
}

fn q_identities(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "q_identity:");
    for beta in ["b1", "b2", "b4"] {
        let n = rs.iter().filter(|r| r.check.ends_with(beta) && r.sample_size >= 1000).count();
        need(n >= 5, || format!("{beta}: {n} identities with 10^3 instances"))?;
    }
    all_below(&rs, 1e-9, false)
}

fn gamma_identities(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "gamma_identity:");
    need(rs.len() == 2, || format!("expected plus and minus reports, found {}", rs.len()))?;
    need(rs.iter().all(|r| r.sample_size >= 100), || "grid has fewer than 100 points".into())?;
    need(rs.iter().all(|r| r.detail.contains("1,2,4,8")), || "grid does not cover β = 1, 2, 4, 8".into())?;
    all_below(&rs, 1e-10, false)
}

fn joint_law(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "joint_law:");
    need(rs.len() == 6, || format!("expected 6 grid points, found {}", rs.len()))?;
    need(rs.iter().all(|r| r.sample_size == 100_000), || "sample size is not 10^5".into())?;
    all_below(&rs, 1.0, true)
}

fn beta_law(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "beta_law:");
    need(!rs.is_empty(), || "no beta law checks".into())?;
    need(rs.iter().all(|r| r.sample_size == 100_000), || "sample size is not 10^5".into())?;
    all_below(&rs, 0.006, true)
}

fn jacobians(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "jacobian_");
    for kind in [
        "jacobian_linear:b1",
        "jacobian_linear:b2",
        "jacobian_hermitian:b1",
        "jacobian_hermitian:b2",
        "jacobian_polar:b1",
        "jacobian_polar:b2",
    ] {
        need(rs.iter().any(|r| r.check.starts_with(kind)), || format!("no {kind} check"))?;
    }
    let linear = with_prefix(reports, "jacobian_linear:");
    need(linear.iter().all(|r| r.detail.contains("adopted exponent")), || "exponent adjudication missing".into())?;
    let summary = all_below(&rs, 0.01, false)?;
    let adopted: Vec<&str> = linear.iter().filter_map(|r| r.detail.split("adopted exponent ").nth(1)).collect();
    Ok(format!("{summary}; adopted exponents: {}", adopted.join(", ")))
}

fn stiefel(reports: &[Report]) -> Outcome {
    let rs = with_prefix(reports, "stiefel_volume:");
    need(rs.len() == 1, || "missing sphere area check".into())?;
    all_below(&rs, 1e-12, false)
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let (first, code) = run_all(&dir.path().join("first.json"));
    let (second, _) = run_all(&dir.path().join("second.json"));
    let reports = parse(&first);
    println!("verify --suite all --seed 42: {} reports, exit code {code}", reports.len());

    let criteria: [(&str, Outcome); 9] = [
        ("1 normalization m=1 quadrature", normalization_1d(&reports)),
        ("2 normalization m=2 Monte Carlo", normalization_mc(&reports)),
        ("3 q_κ identities", q_identities(&reports)),
        ("4 gamma and Pochhammer identities", gamma_identities(&reports)),
        ("5 joint law of U and R", joint_law(&reports)),
        ("6 beta law of R*R", beta_law(&reports)),
        ("7 Jacobian volume ratios", jacobians(&reports)),
        ("8 Stiefel volumes", stiefel(&reports)),
        ("9 determinism", if first == second { Ok(format!("{} identical bytes", first.len())) } else { Err("reports differ".into()) }),
    ];
    let mut failed = 0;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(s) => println!("PASS criterion {name}: {s}"),
            Err(s) => {
                failed += 1;
                println!("FAIL criterion {name}: {s}");
            }
        }
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
