//! Mean, Duggal and Aluthge transforms of a weighted shift.

use mean_transform::matrix_core::from_real_rows;
use mean_transform::transforms::TransformBundle;
use mean_transform::ToleranceContext;

fn main() -> mean_transform::Result<()> {
    let tol = ToleranceContext::default();
    let t = from_real_rows(3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 3.0, 0.0]);
    let b = TransformBundle::new(&t, &tol)?;
    println!("T = {t}");
    println!("mean = {}", b.mean);
    println!("duggal = {}", b.duggal);
    println!("aluthge = {}", b.aluthge);
    Ok(())
}
