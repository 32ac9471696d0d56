//! Closed-form values computed without the library's decompositions.

use mean_transform::inverse_solve::{solve_rank_one, solve_rank_two_normal, RankOneSpec};
use mean_transform::matrix_core::{fro_norm, from_real_rows, identity, CMatrix, CVector, C64};
use mean_transform::polar::polar_decompose;
use mean_transform::spectra::eigenvalues;
use mean_transform::tolerance::ToleranceContext;
use mean_transform::transforms::{aluthge_transform, duggal_transform, mean_transform};

fn tol() -> ToleranceContext {
    ToleranceContext::default()
}

fn close(a: &CMatrix, b: &CMatrix, eps: f64) {
    let d = fro_norm(&(a - b));
    assert!(d <= eps, "distance {d:e}\n{a}\n{b}");
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Square root of a 2x2 positive definite matrix:
/// `(A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A))`.
fn sqrt2(a: &CMatrix) -> CMatrix {
    let s = a.determinant().re.sqrt();
    let t = (a.trace().re + 2.0 * s).sqrt();
    (a + identity(2).scale(s)).unscale(t)
}

fn inv2(a: &CMatrix) -> CMatrix {
    let d = a.determinant();
    CMatrix::from_row_slice(2, 2, &[a[(1, 1)], -a[(0, 1)], -a[(1, 0)], a[(0, 0)]]).map(|z| z / d)
}

#[test]
fn polar_of_invertible_2x2_matches_closed_form() {
    let cases = [
        CMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(3.0, -0.5)]),
        from_real_rows(2, &[1.0, 1.0, -1.0, -2.0]),
        from_real_rows(2, &[0.0, 1.5, 0.5, 0.0]),
        CMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, -1.0)]),
    ];
    for t in cases {
        let p = sqrt2(&(t.adjoint() * &t));
        let v = &t * inv2(&p);
        let parts = polar_decompose(&t, &tol()).unwrap();
        close(&parts.p, &p, 1e-12);
        close(&parts.v, &v, 1e-12);
        let m = (&t + &p * &v).unscale(2.0);
        close(&mean_transform(&t, &tol()).unwrap(), &m, 1e-12);
        let r = sqrt2(&p);
        close(&aluthge_transform(&t, &tol()).unwrap(), &(&r * &v * &r), 1e-12);
        close(&duggal_transform(&t, &tol()).unwrap(), &(&p * &v), 1e-12);
    }
}

#[test]
fn weighted_shift_transforms() {
    for (a, b) in [(0.5, 1.5), (2.0, 0.25), (1.0, 3.0)] {
        let t = from_real_rows(2, &[0.0, b, a, 0.0]);
        let m = (a + b) / 2.0;
        close(&mean_transform(&t, &tol()).unwrap(), &from_real_rows(2, &[0.0, m, m, 0.0]), 1e-13);
        let g = (a * b).sqrt();
        close(&aluthge_transform(&t, &tol()).unwrap(), &from_real_rows(2, &[0.0, g, g, 0.0]), 1e-13);
        close(&duggal_transform(&t, &tol()).unwrap(), &from_real_rows(2, &[0.0, a, b, 0.0]), 1e-13);
    }
}

#[test]
fn jordan_block() {
    let j = from_real_rows(3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    let parts = polar_decompose(&j, &tol()).unwrap();
    assert_eq!(parts.rank, 2);
    close(&parts.v, &j, 1e-14);
    close(&parts.p, &from_real_rows(3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]), 1e-14);
    // |J| J = [[0,0,0],[0,0,1],[0,0,0]]
    let pv = from_real_rows(3, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    let pv_copy = pv.clone();
    close(&mean_transform(&j, &tol()).unwrap(), &(&j + pv).unscale(2.0), 1e-14);
    // |J|^{1/2} J |J|^{1/2} coincides with |J| J here
    close(&aluthge_transform(&j, &tol()).unwrap(), &pv_copy, 1e-14);
}

#[test]
fn rank_one_mean_transform() {
    let x = CVector::from_vec(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 1.0)]);
    let y = CVector::from_vec(vec![c(0.5, 0.0), c(1.0, -1.0), c(2.0, 0.0)]);
    let t = &x * y.adjoint();
    // |T| V = (y* x / |y|^2) y y*
    let yx = (y.adjoint() * &x)[(0, 0)];
    let pv = (&y * y.adjoint()).map(|z| z * yx / y.norm_squared());
    let m = (&t + pv).unscale(2.0);
    close(&mean_transform(&t, &tol()).unwrap(), &m, 1e-12);

    // the inverse problem returns T from its own mean transform
    let z = x.scale(2.0) - y.map(|w| w * yx / y.norm_squared());
    let spec = RankOneSpec::new(z.clone(), y.clone()).unwrap();
    let x_sol = solve_rank_one(&spec).unwrap();
    let sol = x_sol.solution().unwrap();
    close(&mean_transform(sol, &tol()).unwrap(), &(&z * y.adjoint()), 1e-12);
}

#[test]
fn normal_and_positive_are_fixed() {
    let n = CMatrix::from_row_slice(2, 2, &[c(1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.5)]);
    close(&mean_transform(&n, &tol()).unwrap(), &n, 1e-14);
    let p = from_real_rows(2, &[2.0, 1.0, 1.0, 3.0]);
    close(&mean_transform(&p, &tol()).unwrap(), &p, 1e-13);
}

#[test]
fn rank_two_family_example() {
    // delta = 2, nu = -1 in the standard basis; beta = 1 gives [[2,1],[-1,-1]]
    let e1 = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let e2 = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    let spec = mean_transform::inverse_solve::RankTwoNormalSpec::new(c(2.0, 0.0), c(-1.0, 0.0), e1, e2, &tol()).unwrap();
    let pre = solve_rank_two_normal(&spec, &tol()).unwrap();
    let mean_transform::inverse_solve::MeanPreimage::Family(fam) = pre else {
        panic!("expected a family");
    };
    assert_eq!(fam.radius_sq(), 2.0);
    let x = fam.evaluate(c(1.0, 0.0)).unwrap();
    close(&x, &from_real_rows(2, &[2.0, 1.0, -1.0, -1.0]), 1e-14);
    close(&mean_transform(&x, &tol()).unwrap(), &from_real_rows(2, &[2.0, 0.0, 0.0, -1.0]), 1e-12);
}

#[test]
fn triangular_spectrum() {
    let t = CMatrix::from_row_slice(3, 3, &[
        c(1.0, 0.0), c(5.0, 1.0), c(2.0, 0.0),
        c(0.0, 0.0), c(-2.0, 1.0), c(3.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(0.5, -0.5),
    ]);
    let ev = eigenvalues(&t).unwrap();
    let want = [c(-2.0, 1.0), c(0.5, -0.5), c(1.0, 0.0)];
    for (a, b) in ev.iter().zip(want) {
        assert!((a - b).norm() < 1e-12, "{a} vs {b}");
    }
}
