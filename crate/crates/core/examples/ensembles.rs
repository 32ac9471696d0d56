//! Draws one sample from each random ensemble and certifies its class.

use mean_transform::generators::{certify, generate};
use mean_transform::verify::Ensemble;
use mean_transform::ToleranceContext;

fn main() -> mean_transform::Result<()> {
    let tol = ToleranceContext::default();
    for e in Ensemble::ALL {
        let spec = e.spec(4, 2024)?;
        let t = generate(&spec)?;
        println!("{:<24} {:<28} certified {}", e.name(), spec.kind.to_string(), certify(&spec, &t, &tol)?);
    }
    Ok(())
}
