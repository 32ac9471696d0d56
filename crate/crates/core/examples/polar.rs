//! Polar decomposition of a singular matrix and the identities it satisfies.

use mean_transform::matrix_core::{from_real_rows, scale};
use mean_transform::polar::{kernel_relation, polar_decompose};
use mean_transform::ToleranceContext;

fn main() -> mean_transform::Result<()> {
    let tol = ToleranceContext::default();
    let t = from_real_rows(3, &[1.0, 2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    let parts = polar_decompose(&t, &tol)?;
    println!("T = {t}");
    println!("rank {} (cutoff {:.3e})", parts.rank, parts.diagnostics.cutoff);
    println!("V = {}", parts.v);
    println!("|T| = {}", parts.p);
    let r = parts.residuals(&t)?;
    println!("residuals: {r:?}");
    println!("within tolerance: {}", r.holds(scale(&t), &tol));
    println!("kernel relation: {:?}", kernel_relation(&t, &tol)?);
    Ok(())
}
