//! Recovers matrices from a prescribed mean transform.

use mean_transform::inverse_solve::{
    solve_rank_one, solve_rank_two_normal, solve_square_zero, MeanPreimage, RankOneSpec,
    RankTwoNormalSpec,
};
use mean_transform::matrix_core::{fro_norm, from_real_rows};
use mean_transform::transforms::mean_transform;
use mean_transform::{CVector, ToleranceContext, C64};

fn main() -> mean_transform::Result<()> {
    let tol = ToleranceContext::default();

    let x = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)]);
    let y = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    let spec = RankOneSpec::new(x, y)?;
    let pre = solve_rank_one(&spec)?;
    let sol = pre.solution().expect("rank one has a unique preimage");
    let err = fro_norm(&(mean_transform(sol, &tol)? - spec.matrix()));
    println!("rank one: round trip error {err:.2e}");

    let e1 = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let e2 = CVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    let spec = RankTwoNormalSpec::new(C64::new(2.0, 0.0), C64::new(-1.0, 0.0), e1, e2, &tol)?;
    if let MeanPreimage::Family(fam) = solve_rank_two_normal(&spec, &tol)? {
        println!("rank two: family with |beta|^2 <= {}", fam.radius_sq());
        for beta in [C64::new(0.0, 0.0), C64::new(0.5, 0.5), C64::new(1.0, 0.0)] {
            let xb = fam.evaluate(beta)?;
            let err = fro_norm(&(mean_transform(&xb, &tol)? - spec.matrix()));
            println!("  beta = {beta}: round trip error {err:.2e}");
        }
    }

    let n = from_real_rows(2, &[0.0, 3.0, 0.0, 0.0]);
    let sol = solve_square_zero(&n, &tol)?;
    println!("square zero: X = {}", sol.solution().unwrap());
    Ok(())
}
