use lck_core::catalog::{get, sl2_algebra, su2_algebra};
use lck_core::constructions::{
    coadjoint_stabilizer, kernel_matches_stabilizer, lcs_from_orbit, ConstructionError,
};
use lck_core::exterior::KForm;
use lck_core::lie::{Derivation, LieAlgebra};
use lck_core::linalg::{self, Matrix};
use lck_core::scalars::{Params, Scalar};

fn flip_first(n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    m[(0, 0)] = Scalar::from_int(-1);
    m
}

fn same_brackets(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.dim() == b.dim()
        && (0..a.dim())
            .all(|i| (0..a.dim()).all(|j| a.bracket_basis(i, j) == b.bracket_basis(i, j)))
}

#[test]
fn su2_stabilizer_of_e1() {
    let g = su2_algebra(Params::empty());
    let phi = KForm::basis_1form(3, 0);
    let orbit = coadjoint_stabilizer(&g, &phi).unwrap();
    assert_eq!(orbit.k.dim(), 1);
    assert!(orbit.k.contains(&linalg::unit_vector(3, 0)));
    assert_eq!(orbit.h.dim(), 0);
    assert_eq!(orbit.omega_q.coeff(&[1, 2]), Scalar::from_int(-1));
    assert!(orbit.non_conical);
    assert!(kernel_matches_stabilizer(&orbit));
}

#[test]
fn abelian_stabilizer_is_everything() {
    let g = LieAlgebra::abelian(3);
    let orbit = coadjoint_stabilizer(&g, &KForm::basis_1form(3, 1)).unwrap();
    assert_eq!(orbit.k.dim(), 3);
    assert!(orbit.omega_q.is_zero());
    assert!(kernel_matches_stabilizer(&orbit));
}

#[test]
fn sl2_stabilizer_of_ep_minus_em() {
    let g = sl2_algebra(Params::empty());
    let phi = &KForm::basis_1form(3, 1) - &KForm::basis_1form(3, 2);
    let orbit = coadjoint_stabilizer(&g, &phi).unwrap();
    assert_eq!(orbit.k.dim(), 1);
    let ep_minus_em = vec![Scalar::zero(), Scalar::one(), Scalar::from_int(-1)];
    assert!(orbit.k.contains(&ep_minus_em));
    assert_eq!(orbit.omega_q.to_matrix().rank().0, 2);
    assert!(kernel_matches_stabilizer(&orbit));
}

#[test]
fn zero_form_is_rejected() {
    let g = su2_algebra(Params::empty());
    assert!(matches!(
        coadjoint_stabilizer(&g, &KForm::zero(3, 1)),
        Err(ConstructionError::ZeroForm)
    ));
}

#[test]
fn nilpotent_orbit_is_conical() {
    let g = sl2_algebra(Params::empty());
    let orbit = coadjoint_stabilizer(&g, &KForm::basis_1form(3, 1)).unwrap();
    assert!(!orbit.non_conical);
    let d = Matrix::zeros(3, 3);
    assert!(matches!(
        lcs_from_orbit(&orbit, &d, "D"),
        Err(ConstructionError::ConicalOrbit)
    ));
}

#[test]
fn su2_orbit_reproduces_u2() {
    let g = su2_algebra(Params::empty());
    let orbit = coadjoint_stabilizer(&g, &KForm::basis_1form(3, 0)).unwrap();
    let out = lcs_from_orbit(&orbit, &Matrix::zeros(3, 3), "D").unwrap();
    assert!(out.report.all_passed(), "{}", out.report);

    let u2 = get("u2").unwrap();
    assert!(same_brackets(&out.algebra, &u2.algebra));
    let flip = flip_first(4);
    assert_eq!(out.lcs.omega.pullback(&flip), *u2.form("omega").unwrap());
    assert_eq!(out.lcs.lambda.pullback(&flip), -&KForm::basis_1form(4, 0));
}

#[test]
fn sl2_orbit_reproduces_gl2_case_i() {
    let g = sl2_algebra(Params::empty());
    let phi = &KForm::basis_1form(3, 1) - &KForm::basis_1form(3, 2);
    let orbit = coadjoint_stabilizer(&g, &phi).unwrap();
    let out = lcs_from_orbit(&orbit, &Matrix::zeros(3, 3), "D").unwrap();
    assert!(out.report.all_passed(), "{}", out.report);

    let gl2 = get("gl2r").unwrap();
    assert!(same_brackets(&out.algebra, &gl2.algebra));
    let pulled = out.lcs.omega.pullback(&flip_first(4));
    assert_eq!(pulled, *gl2.form("omega").unwrap());
}

#[test]
fn inner_derivation_extension_is_lcs() {
    let g = su2_algebra(Params::empty());
    let orbit = coadjoint_stabilizer(&g, &KForm::basis_1form(3, 0)).unwrap();
    let d = Derivation::inner(&g, &linalg::unit_vector(3, 0));
    let out = lcs_from_orbit(&orbit, d.matrix(), "D").unwrap();
    assert!(out.report.all_passed(), "{}", out.report);
    assert!(out.lcs.lambda.d(&out.algebra).is_zero());
    assert!(out.algebra.check_jacobi().is_ok());
}

#[test]
fn non_derivation_is_rejected() {
    let g = su2_algebra(Params::empty());
    let orbit = coadjoint_stabilizer(&g, &KForm::basis_1form(3, 0)).unwrap();
    let mut d = Matrix::zeros(3, 3);
    d[(0, 0)] = Scalar::one();
    assert!(matches!(
        lcs_from_orbit(&orbit, &d, "D"),
        Err(ConstructionError::NotADerivation(_))
    ));
}
