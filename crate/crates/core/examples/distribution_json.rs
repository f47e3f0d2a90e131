//! Builds a distribution from the JSON parameter format used by the CLI.

use riesz_matvar::distribution::{DistributionSpec, MatrixJson};
use riesz_matvar::samplers::rng_from_seed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: DistributionSpec = serde_json::from_str(
        r#"{"family": "pearson2_riesz", "variant": "I", "beta": 2, "m": 2, "n": 3,
            "nu": 4.0, "kappa": [1.0, 0.5], "tau": [0.0, -0.5]}"#,
    )?;
    let dist = spec.build()?;
    let mut rng = rng_from_seed(7);
    let x = dist.sample(&mut rng)?;
    let lp = dist.log_pdf(&x)?;
    println!("{}", serde_json::to_string(&MatrixJson::from_matvar(&x))?);
    println!("ln f = {:.10}, in support = {}", lp.value, lp.in_support);
    Ok(())
}
