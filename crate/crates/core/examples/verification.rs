//! Runs the normalization and property suites over ℝ and ℂ.

use riesz_matvar::algebra::Algebra;
use riesz_matvar::verify::{run_suite, Suite, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        algebras: vec![Algebra::Real, Algebra::Complex],
        mc_samples: 100_000,
        identity_instances: 200,
        ..VerifyConfig::default()
    };
    for suite in [Suite::Normalization, Suite::Properties] {
        let reports = run_suite(suite, &cfg);
        let failed = reports.iter().filter(|r| !r.pass).count();
        println!("{suite:?}: {} checks, {failed} failed", reports.len());
        for r in reports.iter().filter(|r| !r.pass || r.check.starts_with("sampler")) {
            println!("  {:<48} {:>10.3e} <= {:<8.1e} {}", r.check, r.statistic, r.threshold, if r.pass { "pass" } else { "FAIL" });
        }
    }
}
