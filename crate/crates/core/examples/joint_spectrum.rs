//! Eigenvalues, joint point spectrum, and the spectral inclusion for the
//! mean transform.

use mean_transform::matrix_core::from_real_rows;
use mean_transform::spectra::{check_aj_inclusion, eigenvalues, joint_point_spectrum};
use mean_transform::ToleranceContext;

fn main() -> mean_transform::Result<()> {
    let tol = ToleranceContext::default();
    // a normal 1x1 block next to a non-normal 2x2 block
    let t = from_real_rows(3, &[2.0, 0.0, 0.0, 0.0, 1.0, 4.0, 0.0, 0.0, -1.0]);
    println!("eigenvalues: {:?}", eigenvalues(&t)?);
    for p in joint_point_spectrum(&t, &tol)? {
        println!("joint point {} residuals {:?}", p.lambda, p.residuals);
    }
    let aj = check_aj_inclusion(&t, &tol)?;
    println!("spectrum of mean: {:?}", aj.spectrum_mean);
    println!("inclusion holds: {}", aj.holds);
    Ok(())
}
