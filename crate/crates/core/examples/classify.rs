//! Runs every class predicate on a few matrices and prints the verdicts.

use mean_transform::classify::classify_all;
use mean_transform::matrix_core::from_real_rows;
use mean_transform::ToleranceContext;

fn main() -> mean_transform::Result<()> {
    let tol = ToleranceContext::default();
    let samples = [
        ("shift", from_real_rows(2, &[0.0, 1.5, 0.5, 0.0])),
        ("nilpotent", from_real_rows(2, &[0.0, 1.0, 0.0, 0.0])),
        ("positive", from_real_rows(2, &[2.0, 1.0, 1.0, 3.0])),
    ];
    for (name, t) in samples {
        let report = classify_all(&t, &tol)?;
        let held: Vec<&str> = report
            .verdicts
            .keys()
            .filter(|k| report.holds(k) == Some(true))
            .map(String::as_str)
            .collect();
        println!("{name}: {}", held.join(", "));
    }
    Ok(())
}
