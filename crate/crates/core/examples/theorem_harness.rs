//! Runs every theorem check over the default ensembles and prints a summary.

use mean_transform::verify::{run_trials, HarnessConfig, TheoremId};
use mean_transform::ToleranceContext;

fn main() -> mean_transform::Result<()> {
    let config = HarnessConfig::new(ToleranceContext::default());
    for id in TheoremId::ALL {
        let r = run_trials(id, &[2, 3, 4], 25, 11, &config)?;
        println!(
            "{:<32} {:?} trials {} passed {} skipped {}",
            id.name(),
            r.status,
            r.trials,
            r.passed,
            r.skipped
        );
    }
    Ok(())
}
