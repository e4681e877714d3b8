use num_bigint::BigInt;
use num_rational::BigRational;

use lck_core::catalog::{get, j_ab_matrix, su2_algebra, CatalogEntry};
use lck_core::exterior::KForm;
use lck_core::lie::LieAlgebra;
use lck_core::linalg::{self, Matrix};
use lck_core::scalars::{Assignment, Params, Scalar};
use lck_core::structures::{
    assemble_lck, biinvariant_identities, check_ad_invariant, compatibility_check, j_to_subalgebra,
    lcs_check, levi_civita, metric_from, nijenhuis, signature_at, subalgebra_to_j, vaisman_check,
    ComplexStructure, Convention, Metric, StructureError,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn u2_j(a: i64, b: i64) -> ComplexStructure {
    ComplexStructure::new(j_ab_matrix(&int(a), &int(b))).unwrap()
}

fn gl2_at(values: &[(&str, i64)]) -> (CatalogEntry, Assignment) {
    let e = get("gl2r").unwrap();
    let pairs: Vec<(&str, BigRational)> = values.iter().map(|(k, v)| (*k, q(*v))).collect();
    let at = e.at(&pairs);
    (e, at)
}

fn gl2_mu1_pair(a_h: i64, a_p: i64, a_m: i64) -> (LieAlgebra, KForm, ComplexStructure) {
    let (e, at) = gl2_at(&[
        ("mu1", 1),
        ("mu2", 0),
        ("a_h", a_h),
        ("a_p", a_p),
        ("a_m", a_m),
    ]);
    let omega = e.form("omega_a").unwrap().substitute(&at).unwrap();
    let j = e
        .complex_structure("J_mu")
        .unwrap()
        .matrix()
        .try_map(|s| s.substitute(&at))
        .unwrap();
    (e.algebra.clone(), omega, ComplexStructure::new(j).unwrap())
}

#[test]
fn non_square_root_of_minus_one_is_rejected() {
    let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    assert!(matches!(
        ComplexStructure::new(m),
        Err(StructureError::NotAlmostComplex { .. })
    ));
}

#[test]
fn j_ab_is_integrable_symbolically() {
    let e = get("u2").unwrap();
    let n = nijenhuis(&e.algebra, e.complex_structure("J_ab").unwrap()).unwrap();
    assert!(n.is_integrable());
}

#[test]
fn j_t_has_nijenhuis_minus_t_squared_e1() {
    let e = get("u2").unwrap();
    let n = nijenhuis(&e.algebra, e.complex_structure("J_t").unwrap()).unwrap();
    let t = e.param("t");
    assert_eq!(
        n.get(2, 3).unwrap(),
        &vec![int(0), -&(&t * &t), int(0), int(0)]
    );
    assert!(!n.is_integrable());
}

#[test]
fn j_mu_is_integrable_symbolically() {
    let e = get("gl2r").unwrap();
    let n = nijenhuis(&e.algebra, e.complex_structure("J_mu").unwrap()).unwrap();
    assert!(n.is_integrable());
}

#[test]
fn subalgebra_round_trip_on_j_0_minus_1() {
    let e = get("u2").unwrap();
    let j = u2_j(0, -1);
    let span = j_to_subalgebra(&j);
    let back = subalgebra_to_j(&e.algebra, &span).unwrap();
    assert_eq!(back.j, j);
    assert!(back.is_subalgebra);
}

#[test]
fn lcs_on_u2_standard_form() {
    let e = get("u2").unwrap();
    let lcs = lcs_check(&e.algebra, e.form("omega").unwrap()).unwrap();
    assert_eq!(lcs.lambda, -&KForm::basis_1form(4, 0));
    assert_eq!(
        lcs.z,
        vec![int(0), Scalar::from_ratio(1, 2), int(0), int(0)]
    );
    assert!(lcs.proper);
    assert!(lcs.identities(&e.algebra).iter().all(|(_, ok)| *ok));
}

#[test]
fn lcs_rejects_rank_two_form() {
    let e = get("u2").unwrap();
    let omega = KForm::monomial(4, &[0, 1], int(1));
    assert_eq!(
        lcs_check(&e.algebra, &omega).unwrap_err(),
        StructureError::Degenerate {
            rank: 2,
            quotient_dim: 4
        }
    );
}

#[test]
fn gl2_top_power() {
    let e = get("gl2r").unwrap();
    let lcs = lcs_check(&e.algebra, e.form("omega_a").unwrap()).unwrap();
    let (ah, ap, am) = (e.param("a_h"), e.param("a_p"), e.param("a_m"));
    let iso = &(&ah * &ah) + &(&int(4) * &(&ap * &am));
    assert_eq!(lcs.top_power.coeff(&[0, 1, 2, 3]), &int(-2) * &iso);
}

#[test]
fn incompatible_pair_has_witness() {
    let omega = &KForm::monomial(4, &[0, 2], int(1)) - &KForm::monomial(4, &[1, 3], int(1));
    let c = compatibility_check(&omega, &u2_j(0, -1));
    assert!(!c.compatible);
    assert!(c.witness.is_some());
    let e = get("u2").unwrap();
    assert!(matches!(
        assemble_lck(&e.algebra, &omega, &u2_j(0, -1), Convention::Def),
        Err(StructureError::NotCompatible { .. }) | Err(StructureError::NoLeeForm)
    ));
}

#[test]
fn conventions_differ_by_sign() {
    let e = get("u2").unwrap();
    let omega = e.form("omega").unwrap();
    let j = e.complex_structure("J_ab").unwrap();
    let def = metric_from(omega, j, Convention::Def).unwrap();
    let thm = metric_from(omega, j, Convention::Thm).unwrap();
    assert_eq!(def.matrix, -&thm.matrix);
}

#[test]
fn u2_signatures() {
    let e = get("u2").unwrap();
    let thm = metric_from(e.form("omega").unwrap(), &u2_j(0, -1), Convention::Thm).unwrap();
    let empty = e.at(&[]);
    let s = signature_at(&thm, &empty).unwrap();
    assert_eq!((s.positive, s.negative), (4, 0));

    let at = e.at(&[("a1", q(1)), ("a2", q(0)), ("a3", q(0))]);
    let omega = e.form("omega_a").unwrap().substitute(&at).unwrap();
    let m = metric_from(&omega, &u2_j(0, 1), Convention::Thm).unwrap();
    let s = signature_at(&m, &empty).unwrap();
    assert_eq!((s.positive, s.negative), (2, 2));
}

#[test]
fn gl2_positive_definite_sample() {
    let (g, omega, j) = gl2_mu1_pair(0, -1, 2);
    let m = metric_from(&omega, &j, Convention::Def).unwrap();
    let s = signature_at(&m, &get("gl2r").unwrap().at(&[])).unwrap();
    assert!(s.is_positive_definite());
    let lck = assemble_lck(&g, &omega, &j, Convention::Def).unwrap();
    assert!(!vaisman_check(&g, &lck).unwrap().vaisman);
}

#[test]
fn gl2_vaisman_sample() {
    let (g, omega, j) = gl2_mu1_pair(0, 1, -1);
    let lck = assemble_lck(&g, &omega, &j, Convention::Def).unwrap();
    let v = vaisman_check(&g, &lck).unwrap();
    assert!(v.vaisman && v.lxi_omega_zero);
    let s = signature_at(&lck.metric, &get("gl2r").unwrap().at(&[])).unwrap();
    assert!(s.is_definite());
    let b = get("gl2r").unwrap().bilinear.unwrap();
    let bi = biinvariant_identities(&g, &b, &lck).unwrap();
    assert!(bi.z_in_ker_dphi && bi.xi_in_ker_dphi);
}

#[test]
fn degenerate_point_is_reported() {
    let m = Metric {
        matrix: Matrix::from_ints(&[&[1, 0], &[0, 0]]),
        convention: Convention::Def,
    };
    let at = Params::empty().assignment(&Default::default()).unwrap();
    assert!(matches!(
        signature_at(&m, &at),
        Err(StructureError::DegenerateAtPoint { .. })
    ));
}

#[test]
fn bi_invariant_metric_on_su2_gives_half_bracket() {
    let g = su2_algebra(Params::empty());
    let m = Metric {
        matrix: Matrix::identity(3),
        convention: Convention::Def,
    };
    let conn = levi_civita(&g, &m).unwrap();
    let half = Scalar::from_ratio(1, 2);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(
                conn.nabla_basis(i, j),
                &linalg::scale_vector(g.bracket_basis(i, j), &half)
            );
        }
    }
    assert!(conn.is_torsion_free(&g) && conn.is_metric(&m));
}

#[test]
fn flat_abelian_connection() {
    let g = LieAlgebra::abelian(4);
    let m = Metric {
        matrix: Matrix::identity(4),
        convention: Convention::Def,
    };
    let conn = levi_civita(&g, &m).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert!(linalg::is_zero_vector(conn.nabla_basis(i, j)));
        }
    }
}

#[test]
fn u2_vaisman_metric_has_parallel_e0() {
    let e = get("u2").unwrap();
    let m = metric_from(e.form("omega").unwrap(), &u2_j(0, -1), Convention::Def).unwrap();
    let conn = levi_civita(&e.algebra, &m).unwrap();
    for i in 0..4 {
        assert!(linalg::is_zero_vector(conn.nabla_basis(i, 0)));
    }
}

#[test]
fn u2_lck_at_j_0_minus_1() {
    let e = get("u2").unwrap();
    let lck = assemble_lck(
        &e.algebra,
        e.form("omega").unwrap(),
        &u2_j(0, -1),
        Convention::Thm,
    )
    .unwrap();
    assert_eq!(
        lck.xi,
        vec![Scalar::from_ratio(-1, 2), int(0), int(0), int(0)]
    );
    assert_eq!(lck.j.apply(&lck.xi), lck.lcs.z);
    assert_eq!(lck.phi_factor, Some(Scalar::from_ratio(-2, 1)));
    assert_eq!(lck.lambda_of_xi(), Scalar::from_ratio(1, 2));
    assert!(lck.fundamental_identity());
    assert!(vaisman_check(&e.algebra, &lck).unwrap().vaisman);
}

#[test]
fn bi_invariant_centralizer_on_u2() {
    let e = get("u2").unwrap();
    let lck = assemble_lck(
        &e.algebra,
        e.form("omega").unwrap(),
        &u2_j(0, -1),
        Convention::Def,
    )
    .unwrap();
    let bi = biinvariant_identities(&e.algebra, &Matrix::identity(4), &lck).unwrap();
    assert!(bi.dphi_is_minus_ad_v);
    assert_eq!(bi.centralizer_dim, 2);
    assert_eq!(bi.centralizer_derived_dim, 1);
}

#[test]
fn perturbed_b_is_not_ad_invariant() {
    let e = get("u2").unwrap();
    let mut b = Matrix::identity(4);
    b[(1, 1)] = int(2);
    assert!(matches!(
        check_ad_invariant(&e.algebra, &b),
        Err(StructureError::NotAdInvariant { .. })
    ));
}
