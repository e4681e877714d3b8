use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exterior::{solve_potential, twisted_cohomology_dim, KForm};
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Vector};
use crate::report::StructureReport;
use crate::scalars::{Assignment, CScalar, Poly, Scalar, ScalarError};
use crate::structures::{
    assemble_lck, biinvariant_identities, check_ad_invariant, compatibility_check, is_vaisman_pair,
    lcs_check, nijenhuis, signature_at, signature_of, subalgebra_to_j, vaisman_check,
    ComplexStructure, Convention, LckData, StructureError,
};

use super::{get, j_ab_matrix, rat, CatalogEntry, CatalogError};

pub const SUITES: [&str; 3] = [
    "u2_classification",
    "gl2_classification",
    "reductive_identities",
];

pub fn run_suite(name: &str) -> Result<StructureReport, CatalogError> {
    match name {
        "u2_classification" => Ok(u2_classification()),
        "gl2_classification" => Ok(gl2_classification()),
        "reductive_identities" => Ok(reductive_identities()),
        other => Err(CatalogError::UnknownSuite(other.to_string())),
    }
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

/// Step ½ on [−3, 3].
fn lattice() -> Vec<BigRational> {
    (-6..=6).map(|k| rat(k, 2)).collect()
}

fn substitute_matrix(m: &Matrix, at: &Assignment) -> Result<Matrix, ScalarError> {
    m.try_map(|s| s.substitute(at))
}

fn eval_matrix(m: &Matrix, at: &Assignment) -> Result<Vec<Vec<BigRational>>, ScalarError> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].eval(at)).collect())
        .collect()
}

fn vanish_under(polys: &[Poly], at: &Assignment) -> bool {
    polys.iter().all(|p| p.substitute(at.values()).is_zero())
}

fn describe_polys(polys: &[Poly], names: &[String]) -> String {
    if polys.is_empty() {
        return "none".into();
    }
    polys
        .iter()
        .map(|p| format!("{} = 0", p.display(names)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn form_str(f: &KForm, g: &LieAlgebra) -> String {
    f.display(g.basis_names(), g.params().names()).to_string()
}

fn symmetric(entries: &[((usize, usize), Scalar)]) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    for ((i, j), v) in entries {
        m[(*i, *j)] = v.clone();
        m[(*j, *i)] = v.clone();
    }
    m
}

/// Complex-bilinear ω(x, y) from the matrix of ω.
fn complex_pairing(w: &Matrix, x: &[CScalar], y: &[CScalar]) -> CScalar {
    let mut out = CScalar::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if w[(i, j)].is_zero() {
                continue;
            }
            let t = &(xi * yj) * &CScalar::real(w[(i, j)].clone());
            out = &out + &t;
        }
    }
    out
}

fn record_err(r: &mut StructureReport, name: &str, e: impl std::fmt::Display) {
    r.fail(name, e.to_string());
}

fn lck_or_fail(
    r: &mut StructureReport,
    name: &str,
    g: &LieAlgebra,
    omega: &KForm,
    j: &ComplexStructure,
    conv: Convention,
) -> Option<LckData> {
    match assemble_lck(g, omega, j, conv) {
        Ok(d) => Some(d),
        Err(e) => {
            record_err(r, name, e);
            None
        }
    }
}

fn jacobi_check(r: &mut StructureReport, g: &LieAlgebra, label: &str) {
    match g.check_jacobi() {
        Ok(()) => {
            r.pass(format!("Jacobi identity on {label}"), "all basis triples");
        }
        Err(v) => {
            r.fail(format!("Jacobi identity on {label}"), v.describe(g));
        }
    }
}

fn integrable_check(r: &mut StructureReport, name: &str, g: &LieAlgebra, j: &ComplexStructure) {
    match nijenhuis(g, j) {
        Ok(n) => {
            let conds = n.vanishing_conditions();
            r.check(name, n.is_integrable(), "N = 0 identically", || {
                describe_polys(&conds, g.params().names())
            });
        }
        Err(e) => record_err(r, name, e),
    }
}

fn u2_classification() -> StructureReport {
    let entry = get("u2").expect("u2 entry");
    let g = &entry.algebra;
    let names = entry.params().names().to_vec();
    let n = g.dim();
    let mut r = StructureReport::new("u(2) classification");
    r.note(
        "metric displayed in the convention g = omega(J., .); Lee field from g(X,Y) = omega(X, JY)",
    );

    jacobi_check(&mut r, g, "u(2)");
    let j_ab = entry.complex_structure("J_ab").expect("J_ab").clone();
    integrable_check(&mut r, "J_ab is integrable over Q(a,b)", g, &j_ab);

    let j_t = entry.complex_structure("J_t").expect("J_t");
    let t = entry.param("t");
    match nijenhuis(g, j_t) {
        Ok(nij) => {
            let expected = vec![int(0), -&(&t * &t), int(0), int(0)];
            let got = nij
                .get(2, 3)
                .cloned()
                .unwrap_or_else(|| linalg::zero_vector(n));
            r.check("J_t: N(e2,e3) = -t^2 e1", got == expected, "exact", || {
                format!("N(e2,e3) = {}", g.format_vector(&got))
            });
            let conds = nij.vanishing_conditions();
            let at0 = entry.at(&[("t", rat(0, 1))]);
            r.check(
                "J_t integrable only at t = 0",
                !nij.is_integrable() && vanish_under(&conds, &at0),
                format!("conditions {}", describe_polys(&conds, &names)),
                || "unexpected integrability locus".into(),
            );
        }
        Err(e) => record_err(&mut r, "J_t: N(e2,e3) = -t^2 e1", e),
    }

    // ℓ = span{e0 − iμe1, e2 + ie3}.
    let (m1, m2) = (entry.param("mu1"), entry.param("mu2"));
    let zero = CScalar::zero;
    let span = |m1: &Scalar, m2: &Scalar| {
        vec![
            vec![
                CScalar::one(),
                CScalar::new(m2.clone(), -m1),
                zero(),
                zero(),
            ],
            vec![zero(), zero(), CScalar::one(), CScalar::i()],
        ]
    };
    match subalgebra_to_j(g, &span(&m1, &m2)) {
        Ok(sj) => {
            let norm = &(&m1 * &m1) + &(&m2 * &m2);
            let expected = j_ab_matrix(&(&m2 / &m1), &(&norm / &m1));
            r.check(
                "subalgebra span{e0 - i mu e1, e2 + i e3} gives J_ab with a = mu2/mu1, b = |mu|^2/mu1",
                sj.is_subalgebra && *sj.j.matrix() == expected,
                "exact over Q(mu1,mu2)",
                || format!("J = {}", sj.j.matrix().display(&names)),
            );
            r.check(
                "c = -1/mu1",
                sj.j.matrix()[(0, 1)] == -&(&int(1) / &m1),
                "exact",
                || format!("c = {}", sj.j.matrix()[(0, 1)].display(&names)),
            );
        }
        Err(e) => record_err(&mut r, "subalgebra to J_ab", e),
    }
    let transverse = subalgebra_to_j(g, &span(&int(0), &int(1)));
    r.check(
        "mu in iR is not transverse",
        matches!(transverse, Err(StructureError::NotTransverse)),
        "mu = i",
        || "expected NotTransverse".into(),
    );

    // General lcs form and the isotropy criterion.
    let omega_a = entry.form("omega_a").expect("omega_a").clone();
    let (a1, a2, a3) = (entry.param("a1"), entry.param("a2"), entry.param("a3"));
    let literal = [
        ((0, 1), a1.clone()),
        ((0, 2), a2.clone()),
        ((0, 3), a3.clone()),
        ((2, 3), a1.clone()),
        ((1, 3), -&a2),
        ((1, 2), a3.clone()),
    ]
    .iter()
    .fold(KForm::zero(n, 2), |acc, ((i, j), c)| {
        &acc + &KForm::monomial(n, &[*i, *j], c.clone())
    });
    r.check(
        "e0^phi + d phi = sum a_i e^{0i} + sum a_i e^{jk}",
        omega_a == literal,
        form_str(&omega_a, g),
        || form_str(&omega_a, g),
    );
    let w = omega_a.to_matrix();
    let e_prime = CScalar::new(m2.clone(), -&m1);
    let x: Vec<CScalar> = vec![CScalar::one(), e_prime, zero(), zero()];
    let y: Vec<CScalar> = vec![zero(), zero(), CScalar::one(), CScalar::i()];
    let pairing = complex_pairing(&w, &x, &y);
    let one_minus_mu = CScalar::new(&int(1) - &m1, -&m2);
    let expected = &one_minus_mu * &CScalar::new(a2.clone(), a3.clone());
    r.check(
        "omega(e0 + e', e'') = (1 - mu)(a2 + i a3)",
        pairing == expected,
        "exact over Q(mu1,mu2,a1,a2,a3)",
        || format!("got {pairing}"),
    );

    let compat = compatibility_check(&omega_a, &j_ab);
    let off_case = entry.at(&[("a2", rat(0, 1)), ("a3", rat(0, 1))]);
    let mu_one = entry.at(&[("a", rat(0, 1)), ("b", rat(1, 1))]);
    r.check(
        "compatibility defect vanishes on a2 = a3 = 0 and on (a,b) = (0,1)",
        !compat.compatible
            && vanish_under(&compat.conditions, &off_case)
            && vanish_under(&compat.conditions, &mu_one),
        format!(
            "defect conditions {}",
            describe_polys(&compat.conditions, &names)
        ),
        || "defect survives on one of the two loci".into(),
    );
    let small: Vec<i64> = vec![-1, 0, 1];
    let mut samples = 0usize;
    let mut bad: Option<String> = None;
    for (a, b) in [(0, 1), (0, -1), (1, 1), (-1, 2), (1, -1), (0, 2)] {
        for &p1 in &small {
            for &p2 in &small {
                for &p3 in &small {
                    if (p1, p2, p3) == (0, 0, 0) {
                        continue;
                    }
                    let at = entry.at(&[
                        ("a", rat(a, 1)),
                        ("b", rat(b, 1)),
                        ("a1", rat(p1, 1)),
                        ("a2", rat(p2, 1)),
                        ("a3", rat(p3, 1)),
                    ]);
                    samples += 1;
                    let defect = eval_matrix(&compat.defect, &at).expect("b != 0 on samples");
                    let compatible = defect.iter().flatten().all(|v| v.is_zero());
                    let predicted = (p2 == 0 && p3 == 0) || (a, b) == (0, 1);
                    if compatible != predicted && bad.is_none() {
                        bad = Some(at.to_string());
                    }
                }
            }
        }
    }
    r.check(
        "compatible iff a2 = a3 = 0 or (a,b) = (0,1)",
        bad.is_none(),
        format!("{samples} sample points"),
        || bad.clone().unwrap_or_default(),
    );

    // Case (i): ω = e01 + e23.
    let omega = entry.form("omega").expect("omega").clone();
    let e0 = KForm::basis_1form(n, 0);
    match lcs_check(g, &omega) {
        Ok(lcs) => {
            r.check(
                "case (i): lambda = -e0",
                lcs.lambda == -&e0,
                "exact",
                || form_str(&lcs.lambda, g),
            );
            let z = linalg::scale_vector(&linalg::unit_vector(n, 1), &half());
            r.check("case (i): Z = e1/2", lcs.z == z, "exact", || {
                g.format_vector(&lcs.z)
            });
            r.check(
                "case (i): omega is proper",
                lcs.proper,
                "d omega != 0",
                || "d omega = 0".into(),
            );
            for (name, ok) in lcs.identities(g) {
                r.check(format!("case (i): {name}"), ok, "exact", || "fails".into());
            }
            match lcs_check(g, &omega.scale(&int(3))) {
                Ok(scaled) => {
                    r.check(
                        "case (i): scaling omega by 3 keeps lambda and scales Z by 1/3",
                        scaled.lambda == lcs.lambda
                            && scaled.z == linalg::scale_vector(&lcs.z, &Scalar::from_ratio(1, 3)),
                        "exact",
                        || g.format_vector(&scaled.z),
                    );
                }
                Err(e) => record_err(&mut r, "case (i): scaling", e),
            }
        }
        Err(e) => record_err(&mut r, "case (i): lcs check", e),
    }
    if let Some(lck) = lck_or_fail(
        &mut r,
        "case (i): lcK data",
        g,
        &omega,
        &j_ab,
        Convention::Thm,
    ) {
        let (a, b) = (entry.param("a"), entry.param("b"));
        let c = -(&(&int(1) + &(&a * &a)) / &b);
        let xi = vec![-&(&c * &half()), &a * &half(), int(0), int(0)];
        r.check(
            "case (i): xi = (a e1 - c e0)/2",
            lck.xi == xi,
            "exact over Q(a,b)",
            || g.format_vector(&lck.xi),
        );
        for (name, ok) in lck.identities(g) {
            r.check(format!("case (i): {name}"), ok, "exact over Q(a,b)", || {
                "fails".into()
            });
        }
        let display = symmetric(&[
            ((0, 0), -&b),
            ((0, 1), a.clone()),
            ((1, 1), c.clone()),
            ((2, 2), int(1)),
            ((3, 3), int(1)),
        ]);
        r.check(
            "case (i): g = -b (e0)^2 + 2a e0 e1 + c (e1)^2 + (e2)^2 + (e3)^2",
            lck.metric.matrix == display,
            "convention thm, exact over Q(a,b)",
            || lck.metric.matrix.display(&names).to_string(),
        );
        r.check(
            "the two metric conventions differ by sign",
            lck.metric_def.matrix == -&lck.metric.matrix,
            "exact",
            || "conventions disagree beyond sign".into(),
        );
        match vaisman_check(g, &lck) {
            Ok(v) => {
                let locus = v.locus.describe(&names);
                r.check(
                    "case (i): Vaisman over Q(a,b)",
                    v.vaisman && v.torsion_free && v.metric_compatible && v.lxi_omega_zero,
                    "nabla xi = 0 identically",
                    || describe_polys(&v.conditions, &names),
                )
                .with_locus(locus);
            }
            Err(e) => record_err(&mut r, "case (i): Vaisman over Q(a,b)", e),
        }
        let mut count = 0usize;
        let mut bad: Option<String> = None;
        for av in lattice() {
            for bv in lattice() {
                if bv.is_zero() {
                    continue;
                }
                let at = entry.at(&[("a", av.clone()), ("b", bv.clone())]);
                count += 1;
                match signature_at(&lck.metric, &at) {
                    Ok(sig) => {
                        let want = bv.is_negative();
                        if sig.is_definite() != want || (want && !sig.is_positive_definite()) {
                            bad.get_or_insert(format!("{at}: signature {sig}"));
                        }
                    }
                    Err(e) => {
                        bad.get_or_insert(format!("{at}: {e}"));
                    }
                }
            }
        }
        r.check(
            "case (i): -omega o J definite iff b < 0",
            bad.is_none() && count >= 50,
            format!("{count} lattice points (a,b), step 1/2 in [-3,3], b != 0"),
            || bad.clone().unwrap_or_else(|| "too few samples".into()),
        );
    }

    // Case (ii): (a,b) = (0,1), general ω.
    let j01 = match substitute_matrix(j_ab.matrix(), &mu_one)
        .ok()
        .and_then(|m| ComplexStructure::new(m).ok())
    {
        Some(j) => j,
        None => {
            r.fail("case (ii): J_01", "substitution failed");
            return r;
        }
    };
    if let Some(lck) = lck_or_fail(
        &mut r,
        "case (ii): lcK data",
        g,
        &omega_a,
        &j01,
        Convention::Thm,
    ) {
        r.pass(
            "case (ii): every lcs omega is compatible with J_01",
            "exact over Q(a1,a2,a3)",
        );
        let display = symmetric(&[
            ((0, 0), -&a1),
            ((1, 1), -&a1),
            ((2, 2), a1.clone()),
            ((3, 3), a1.clone()),
            ((1, 2), -&a2),
            ((1, 3), -&a3),
            ((0, 3), -&a2),
            ((0, 2), a3.clone()),
        ]);
        r.check(
            "case (ii): omega o J matches the displayed expansion",
            lck.metric.matrix == display,
            "convention thm, exact over Q(a1,a2,a3)",
            || lck.metric.matrix.display(&names).to_string(),
        );
        let mut count = 0usize;
        let mut bad: Option<String> = None;
        for p1 in -2..=2i64 {
            for p2 in -2..=2i64 {
                for p3 in -2..=2i64 {
                    if (p1, p2, p3) == (0, 0, 0) {
                        continue;
                    }
                    let at =
                        entry.at(&[("a1", rat(p1, 1)), ("a2", rat(p2, 1)), ("a3", rat(p3, 1))]);
                    count += 1;
                    match signature_at(&lck.metric, &at) {
                        Ok(sig) if sig.positive == 2 && sig.negative == 2 => {}
                        Ok(sig) => {
                            bad.get_or_insert(format!("{at}: signature {sig}"));
                        }
                        Err(e) => {
                            bad.get_or_insert(format!("{at}: {e}"));
                        }
                    }
                }
            }
        }
        r.check(
            "case (ii): signature (2,2)",
            bad.is_none() && count >= 50,
            format!("{count} integer points in [-2,2]^3 minus 0"),
            || bad.clone().unwrap_or_default(),
        );

        // ξ-ansatz ξ = c0 e0 + c1 a.
        let (c0, c1) = (entry.param("c0"), entry.param("c1"));
        let ansatz = vec![c0.clone(), &c1 * &a1, &c1 * &a2, &c1 * &a3];
        let covector = lck.metric.matrix.mul_vec(&ansatz);
        let sum_sq = &(&(&a1 * &a1) + &(&a2 * &a2)) + &(&a3 * &a3);
        let term = |f: &Scalar, v: [Scalar; 4]| -> Vector { linalg::scale_vector(&v, f) };
        let mut expected = term(&c0, [-&a1, int(0), a3.clone(), -&a2]);
        let c1a1 = &c1 * &a1;
        let c1a2 = &c1 * &a2;
        let c1a3 = &c1 * &a3;
        for part in [
            term(&c1a1, [int(0), -&a1, -&a2, -&a3]),
            term(&c1a2, [a3.clone(), -&a2, a1.clone(), int(0)]),
            term(&c1a3, [-&a2, -&a3, int(0), a1.clone()]),
        ] {
            expected = linalg::add_vectors(&expected, &part);
        }
        r.check(
            "case (ii): omega J(c0 e0 + c1 a) matches the displayed expansion",
            covector == expected,
            "exact over Q(a1,a2,a3,c0,c1)",
            || g.format_vector(&covector),
        );
        r.check(
            "case (ii): e1 coefficient is -c1 sum a_i^2",
            covector[1] == -&(&c1 * &sum_sq),
            "forces c1 = 0",
            || covector[1].display(&names).to_string(),
        );
        let row0 = lck.metric.matrix.row(0);
        r.check(
            "case (ii): omega J e0 = -a1 e0 - a2 e3 + a3 e2",
            row0 == vec![-&a1, int(0), a3.clone(), -&a2],
            "proportional to e0 only if a2 = a3 = 0",
            || g.format_vector(&row0),
        );
        r.note(format!("case (ii): xi = {}", g.format_vector(&lck.xi)));

        match vaisman_check(g, &lck) {
            Ok(v) => {
                r.check(
                    "case (ii): nabla xi vanishes on a2 = a3 = 0",
                    !v.vaisman && vanish_under(&v.conditions, &off_case),
                    format!("conditions {}", describe_polys(&v.conditions, &names)),
                    || "conditions survive on a2 = a3 = 0".into(),
                );
            }
            Err(e) => record_err(&mut r, "case (ii): Vaisman conditions", e),
        }
        match omega_a
            .substitute(&off_case)
            .map_err(StructureError::from)
            .and_then(|w| is_vaisman_pair(g, &w, &j01))
        {
            Ok(v) => {
                r.check(
                    "case (ii): Vaisman over Q(a1) on a2 = a3 = 0",
                    v,
                    "nabla xi = 0 identically",
                    || "nabla xi != 0".into(),
                );
            }
            Err(e) => record_err(&mut r, "case (ii): Vaisman over Q(a1) on a2 = a3 = 0", e),
        }
        let mut count = 0usize;
        let mut bad: Option<String> = None;
        for &p1 in &small {
            for &p2 in &small {
                for &p3 in &small {
                    if (p1, p2, p3) == (0, 0, 0) {
                        continue;
                    }
                    let at =
                        entry.at(&[("a1", rat(p1, 1)), ("a2", rat(p2, 1)), ("a3", rat(p3, 1))]);
                    count += 1;
                    let verdict = omega_a
                        .substitute(&at)
                        .map_err(StructureError::from)
                        .and_then(|w| is_vaisman_pair(g, &w, &j01));
                    match verdict {
                        Ok(v) if v == (p2 == 0 && p3 == 0) => {}
                        Ok(v) => {
                            bad.get_or_insert(format!("{at}: vaisman = {v}"));
                        }
                        Err(e) => {
                            bad.get_or_insert(format!("{at}: {e}"));
                        }
                    }
                }
            }
        }
        r.check(
            "case (ii): Vaisman iff omega proportional to e01 + e23",
            bad.is_none(),
            format!("{count} sample points, full pipeline at each"),
            || bad.clone().unwrap_or_default(),
        );
    }
    r
}

fn gl2_classification() -> StructureReport {
    let entry = get("gl2r").expect("gl2r entry");
    let g = &entry.algebra;
    let names = entry.params().names().to_vec();
    let n = g.dim();
    let mut r = StructureReport::new("gl(2,R) classification");
    r.note("metric in the convention g(X,Y) = omega(X, JY)");

    jacobi_check(&mut r, g, "gl(2,R)");
    let j_mu = entry.complex_structure("J_mu").expect("J_mu").clone();
    integrable_check(
        &mut r,
        "J_mu (family i) is integrable over Q(mu1,mu2)",
        g,
        &j_mu,
    );

    let (m1, m2) = (entry.param("mu1"), entry.param("mu2"));
    let zero = CScalar::zero;
    let w1 = vec![
        CScalar::one(),
        zero(),
        CScalar::new(-&(&m2 * &half()), &m1 * &half()),
        CScalar::new(&m2 * &half(), -&(&m1 * &half())),
    ];
    let w2 = vec![zero(), CScalar::i(), CScalar::one(), CScalar::one()];
    match subalgebra_to_j(g, &[w1, w2]) {
        Ok(sj) => {
            r.check(
                "subalgebra span{e0 + (i mu/2)(ep - em), i h + ep + em} gives J_mu",
                sj.is_subalgebra && sj.j == j_mu,
                "exact over Q(mu1,mu2)",
                || sj.j.matrix().display(&names).to_string(),
            );
        }
        Err(e) => record_err(&mut r, "subalgebra to J_mu", e),
    }

    let omega_a = entry.form("omega_a").expect("omega_a").clone();
    let (ah, ap, am) = (entry.param("a_h"), entry.param("a_p"), entry.param("a_m"));
    let iso = &(&ah * &ah) + &(&int(4) * &(&ap * &am));
    let e0 = KForm::basis_1form(n, 0);
    match lcs_check(g, &omega_a) {
        Ok(lcs) => {
            let top = KForm::monomial(n, &[0, 1, 2, 3], &int(-2) * &iso);
            r.check(
                "omega ^ omega = -2(a_h^2 + 4 a_p a_m) e0^h^ep^em",
                lcs.top_power == top,
                "exact over Q(a_h,a_p,a_m)",
                || form_str(&lcs.top_power, g),
            );
            let iso_poly = iso.numer().monic();
            r.check(
                "nondegenerate off a_h^2 + 4 a_p a_m = 0",
                lcs.nondegenerate_locus.polys().any(|p| *p == iso_poly),
                lcs.nondegenerate_locus.describe(&names).join(", "),
                || "isotropy polynomial missing from the locus".into(),
            );
            r.check("lambda = -e0", lcs.lambda == -&e0, "exact", || {
                form_str(&lcs.lambda, g)
            });
            for (name, ok) in lcs.identities(g) {
                r.check(name.to_string(), ok, "exact over Q(a_h,a_p,a_m)", || {
                    "fails".into()
                });
            }
        }
        Err(e) => record_err(&mut r, "lcs check of e0^phi + d phi", e),
    }

    // Case (i).
    let omega = entry.form("omega").expect("omega").clone();
    let vaisman_point = entry.at(&[("a_h", rat(0, 1)), ("a_p", rat(1, 1)), ("a_m", rat(-1, 1))]);
    r.check(
        "case (i): omega is e0^phi + d phi for phi = ep - em",
        omega_a.substitute(&vaisman_point).ok() == Some(omega.clone()),
        form_str(&omega, g),
        || "forms differ".into(),
    );
    let remark_basis: Vec<Vector> = vec![
        linalg::unit_vector(n, 0),
        vec![int(0), int(0), half(), -&half()],
        vec![int(0), half(), int(0), int(0)],
        vec![int(0), int(0), half(), half()],
    ];
    let mut in_remark = KForm::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            let c = omega.evaluate(&[remark_basis[i].clone(), remark_basis[j].clone()]);
            in_remark = &in_remark + &KForm::monomial(n, &[i, j], c);
        }
    }
    let target = &KForm::monomial(n, &[0, 1], int(1)) - &KForm::monomial(n, &[2, 3], int(1));
    r.check(
        "case (i): omega = e^01 - e^23 in the basis ((ep-em)/2, h/2, (ep+em)/2)",
        in_remark == target,
        "exact",
        || form_str(&in_remark, g),
    );

    let compat = compatibility_check(&omega_a, &j_mu);
    let mu_one = entry.at(&[("mu1", rat(1, 1)), ("mu2", rat(0, 1))]);
    let phi_e2 = entry.at(&[("a_h", rat(0, 1))]);
    let idx_am = entry.params().index_of("a_m").expect("a_m");
    let on_vaisman_locus = |p: &Poly| {
        Scalar::from_poly(p.substitute(phi_e2.values()))
            .substitute_var(idx_am, &-&ap)
            .is_ok_and(|s| s.is_zero())
    };
    let am_is_minus_ap = compat.conditions.iter().all(on_vaisman_locus);
    r.check(
        "compatibility defect vanishes on mu = 1 and on phi(e'') = a_h + i(a_p + a_m) = 0",
        !compat.compatible && vanish_under(&compat.conditions, &mu_one) && am_is_minus_ap,
        format!(
            "defect conditions {}",
            describe_polys(&compat.conditions, &names)
        ),
        || "defect survives on one of the two loci".into(),
    );
    let mut count = 0usize;
    let mut bad: Option<String> = None;
    for (u1, u2) in [(1, 0), (1, 1), (2, 0), (-1, 1), (1, -2)] {
        for h in -1..=1i64 {
            for p in -1..=1i64 {
                for m in -1..=1i64 {
                    if h * h + 4 * p * m == 0 {
                        continue;
                    }
                    let at = entry.at(&[
                        ("mu1", rat(u1, 1)),
                        ("mu2", rat(u2, 1)),
                        ("a_h", rat(h, 1)),
                        ("a_p", rat(p, 1)),
                        ("a_m", rat(m, 1)),
                    ]);
                    count += 1;
                    let defect = eval_matrix(&compat.defect, &at).expect("mu1 != 0");
                    let compatible = defect.iter().flatten().all(|v| v.is_zero());
                    let predicted = (u1, u2) == (1, 0) || (h == 0 && p + m == 0);
                    if compatible != predicted {
                        bad.get_or_insert(at.to_string());
                    }
                }
            }
        }
    }
    r.check(
        "compatible iff mu = 1 or phi(e'') = 0",
        bad.is_none(),
        format!("{count} sample points"),
        || bad.clone().unwrap_or_default(),
    );

    if let Some(lck) = lck_or_fail(
        &mut r,
        "case (i): lcK data",
        g,
        &omega,
        &j_mu,
        Convention::Def,
    ) {
        for (name, ok) in lck.identities(g) {
            r.check(
                format!("case (i): {name}"),
                ok,
                "exact over Q(mu1,mu2)",
                || "fails".into(),
            );
        }
        match vaisman_check(g, &lck) {
            Ok(v) => {
                r.check(
                    "case (i): Vaisman over Q(mu1,mu2)",
                    v.vaisman && v.lxi_omega_zero,
                    "nabla xi = 0 identically",
                    || describe_polys(&v.conditions, &names),
                )
                .with_locus(v.locus.describe(&names));
            }
            Err(e) => record_err(&mut r, "case (i): Vaisman over Q(mu1,mu2)", e),
        }
        let mut count = 0usize;
        let mut bad: Option<String> = None;
        let mut claim_bad: Option<String> = None;
        for u1 in lattice() {
            if u1.is_zero() {
                continue;
            }
            for u2 in lattice() {
                let at = entry.at(&[("mu1", u1.clone()), ("mu2", u2.clone())]);
                count += 1;
                match signature_at(&lck.metric, &at) {
                    Ok(sig) => {
                        if sig.is_definite() != u1.is_positive() {
                            bad.get_or_insert(format!("{at}: signature {sig}"));
                        }
                        if !sig.is_definite() {
                            claim_bad.get_or_insert(format!("{at}: signature {sig}"));
                        }
                    }
                    Err(e) => {
                        bad.get_or_insert(format!("{at}: {e}"));
                    }
                }
            }
        }
        r.check(
            "case (i): metric definite exactly when mu1 > 0",
            bad.is_none(),
            format!("{count} lattice points mu, step 1/2 in [-3,3], mu1 != 0"),
            || bad.clone().unwrap_or_default(),
        );
        r.check(
            "case (i): metric definite for every mu",
            claim_bad.is_none(),
            format!("{count} lattice points mu"),
            || claim_bad.clone().unwrap_or_default(),
        );
        if claim_bad.is_some() {
            r.note(
                "case (i): for mu1 < 0 the metric has signature (2,2); \
                 the leading minor -|mu|^2/mu1 changes sign with mu1",
            );
        }
    }

    // Case (ii): μ = 1.
    let j1 = match substitute_matrix(j_mu.matrix(), &mu_one)
        .ok()
        .and_then(|m| ComplexStructure::new(m).ok())
    {
        Some(j) => j,
        None => {
            r.fail("case (ii): J at mu = 1", "substitution failed");
            return r;
        }
    };
    if let Some(lck) = lck_or_fail(
        &mut r,
        "case (ii): lcK data",
        g,
        &omega_a,
        &j1,
        Convention::Def,
    ) {
        r.pass(
            "case (ii): every lcs omega is compatible with J at mu = 1",
            "exact over Q(a_h,a_p,a_m)",
        );
        let metric_display = symmetric(&[
            ((0, 0), &(&am - &ap) * &half()),
            ((1, 1), &int(2) * &(&am - &ap)),
            ((0, 1), &ap + &am),
            ((2, 2), &int(-2) * &ap),
            ((3, 3), &int(2) * &am),
            ((0, 2), -&(&ah * &half())),
            ((0, 3), -&(&ah * &half())),
            ((1, 2), -&ah),
            ((1, 3), ah.clone()),
        ]);
        r.check(
            "case (ii): metric matches the displayed formula coefficient by coefficient",
            lck.metric.matrix == metric_display,
            "exact over Q(a_h,a_p,a_m)",
            || lck.metric.matrix.display(&names).to_string(),
        );
        for (name, ok) in lck.identities(g) {
            r.check(format!("case (ii): {name}"), ok, "exact", || "fails".into());
        }
        match vaisman_check(g, &lck) {
            Ok(v) => {
                let on_locus = v.conditions.iter().all(on_vaisman_locus);
                r.check(
                    "case (ii): nabla xi vanishes on a_h = 0, a_m = -a_p",
                    !v.vaisman && on_locus,
                    format!("conditions {}", describe_polys(&v.conditions, &names)),
                    || "conditions survive on the Vaisman locus".into(),
                );
            }
            Err(e) => record_err(&mut r, "case (ii): Vaisman conditions", e),
        }
        let idx_am = entry.params().index_of("a_m").expect("a_m");
        let on_locus = omega_a
            .substitute(&entry.at(&[("a_h", rat(0, 1))]))
            .and_then(|w| {
                let ap = entry.param("a_p");
                let coords = w
                    .to_coords()
                    .iter()
                    .map(|c| c.substitute_var(idx_am, &-&ap))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(KForm::from_coords(g.dim(), 2, &coords))
            })
            .map_err(StructureError::from)
            .and_then(|w| is_vaisman_pair(g, &w, &j1));
        match on_locus {
            Ok(v) => {
                r.check(
                    "case (ii): Vaisman over Q(a_p) on a_h = 0, a_m = -a_p",
                    v,
                    "nabla xi = 0 identically",
                    || "nabla xi != 0".into(),
                );
            }
            Err(e) => record_err(
                &mut r,
                "case (ii): Vaisman over Q(a_p) on a_h = 0, a_m = -a_p",
                e,
            ),
        }

        let mut count = 0usize;
        let mut bad: Option<String> = None;
        for h in -1..=2i64 {
            for p in -1..=2i64 {
                for m in -1..=2i64 {
                    if h * h + 4 * p * m == 0 {
                        continue;
                    }
                    let at =
                        entry.at(&[("a_h", rat(h, 1)), ("a_p", rat(p, 1)), ("a_m", rat(m, 1))]);
                    count += 1;
                    let verdict = omega_a
                        .substitute(&at)
                        .map_err(StructureError::from)
                        .and_then(|w| is_vaisman_pair(g, &w, &j1));
                    let predicted = h == 0 && p == -m && p != 0;
                    match verdict {
                        Ok(v) => {
                            let definite = eval_matrix(&lck.metric.matrix, &at)
                                .map(|rows| signature_of(&rows).is_definite())
                                .unwrap_or(false);
                            if v != predicted || (v && !definite) {
                                bad.get_or_insert(format!("{at}: vaisman = {v}"));
                            }
                        }
                        Err(e) => {
                            bad.get_or_insert(format!("{at}: {e}"));
                        }
                    }
                }
            }
        }
        r.check(
            "case (ii): Vaisman iff a_h = 0 and a_p = -a_m != 0, then definite",
            bad.is_none(),
            format!("{count} sample points, full pipeline at each"),
            || bad.clone().unwrap_or_default(),
        );

        let mut inside = 0usize;
        let mut outside = 0usize;
        let mut bad: Option<String> = None;
        let mut non_vaisman_pd = 0usize;
        for h in lattice() {
            for p in lattice() {
                for m in lattice() {
                    let iso_v = &h * &h + BigRational::from_integer(4.into()) * &p * &m;
                    if iso_v.is_zero() {
                        continue;
                    }
                    let at =
                        entry.at(&[("a_h", h.clone()), ("a_p", p.clone()), ("a_m", m.clone())]);
                    let region = -(&h * &h) > BigRational::from_integer(4.into()) * &p * &m
                        && m.is_positive()
                        && p.is_negative();
                    if region {
                        inside += 1;
                    } else {
                        outside += 1;
                    }
                    let vaisman = h.is_zero() && (&p + &m).is_zero();
                    match signature_at(&lck.metric, &at) {
                        Ok(sig) => {
                            let pd = sig.is_positive_definite();
                            if pd != region {
                                bad.get_or_insert(format!("{at}: signature {sig}"));
                            }
                            if pd && !vaisman {
                                non_vaisman_pd += 1;
                            }
                        }
                        Err(e) => {
                            bad.get_or_insert(format!("{at}: {e}"));
                        }
                    }
                }
            }
        }
        r.check(
            "case (ii): positive definite iff -a_h^2 > 4 a_p a_m and a_m > 0 > a_p",
            bad.is_none() && inside + outside >= 100 && inside > 0 && outside > 0,
            format!(
                "{} lattice points (step 1/2 in [-3,3]^3, non-isotropic): {inside} inside, {outside} outside",
                inside + outside
            ),
            || bad.clone().unwrap_or_else(|| "sample set too small".into()),
        );
        r.check(
            "case (ii): non-Vaisman positive definite metrics exist",
            non_vaisman_pd > 0,
            format!("{non_vaisman_pd} lattice points"),
            || "none found".into(),
        );
    }
    r
}

struct Instance {
    label: &'static str,
    entry: CatalogEntry,
    omega: KForm,
    j: ComplexStructure,
    vaisman: bool,
}

fn instances() -> Vec<Instance> {
    let u2 = get("u2").expect("u2");
    let gl2 = get("gl2r").expect("gl2r");
    let mut out = Vec::new();
    let j_ab = u2.complex_structure("J_ab").expect("J_ab").clone();
    out.push(Instance {
        label: "u(2), e01 + e23, J_ab",
        omega: u2.form("omega").expect("omega").clone(),
        j: j_ab.clone(),
        vaisman: true,
        entry: u2.clone(),
    });
    let mu_one = u2.at(&[("a", rat(0, 1)), ("b", rat(1, 1))]);
    let j01 = ComplexStructure::new(substitute_matrix(j_ab.matrix(), &mu_one).expect("b = 1"))
        .expect("J_01");
    out.push(Instance {
        label: "u(2), general omega, J_01",
        omega: u2.form("omega_a").expect("omega_a").clone(),
        j: j01,
        vaisman: false,
        entry: u2.clone(),
    });
    let j_mu = gl2.complex_structure("J_mu").expect("J_mu").clone();
    out.push(Instance {
        label: "gl(2,R), e0^(ep-em) - 2h^(ep+em), J_mu",
        omega: gl2.form("omega").expect("omega").clone(),
        j: j_mu.clone(),
        vaisman: true,
        entry: gl2.clone(),
    });
    let g1 = gl2.at(&[("mu1", rat(1, 1)), ("mu2", rat(0, 1))]);
    let j1 = ComplexStructure::new(substitute_matrix(j_mu.matrix(), &g1).expect("mu1 = 1"))
        .expect("J_1");
    let omega_a = gl2.form("omega_a").expect("omega_a").clone();
    let idx_am = gl2.params().index_of("a_m").expect("a_m");
    let ap = gl2.param("a_p");
    let ah0 = gl2.at(&[("a_h", rat(0, 1))]);
    let vaisman_family = {
        let base = omega_a.substitute(&ah0).expect("polynomial");
        let coords: Vec<Scalar> = base
            .to_coords()
            .iter()
            .map(|c| c.substitute_var(idx_am, &-&ap).expect("polynomial"))
            .collect();
        KForm::from_coords(gl2.algebra.dim(), 2, &coords)
    };
    out.push(Instance {
        label: "gl(2,R), mu = 1, a_h = 0, a_m = -a_p",
        omega: vaisman_family,
        j: j1.clone(),
        vaisman: true,
        entry: gl2.clone(),
    });
    out.push(Instance {
        label: "gl(2,R), mu = 1, general omega",
        omega: omega_a,
        j: j1,
        vaisman: false,
        entry: gl2,
    });
    out
}

fn reductive_identities() -> StructureReport {
    let mut r = StructureReport::new("reductive identities");
    r.note("lcK data built with g(X,Y) = omega(X, JY); B is the catalog ad-invariant form");

    for id in ["u2", "gl2r", "su2", "sl2r"] {
        let e = get(id).expect("catalog id");
        let z = e.algebra.center().dim();
        r.check(
            format!("dim center <= 2 on {id}"),
            z <= 2,
            format!("dim = {z}"),
            || format!("dim = {z}"),
        );
    }

    for id in ["u2", "gl2r"] {
        let e = get(id).expect("catalog id");
        let g = &e.algebra;
        let n = g.dim();
        let b = e.bilinear.clone().expect("bilinear form");
        match check_ad_invariant(g, &b) {
            Ok(()) => {
                r.pass(format!("B is ad-invariant on {id}"), "all basis triples");
            }
            Err(err) => record_err(&mut r, &format!("B is ad-invariant on {id}"), err),
        }
        let lambda = -&KForm::basis_1form(n, 0);
        match twisted_cohomology_dim(g, &lambda, 1) {
            Ok(h1) => {
                r.check(
                    format!("H^1_lambda = 0 on {id}, lambda = -e0"),
                    h1.dim == 0,
                    format!("dim = {}", h1.dim),
                    || format!("dim = {}", h1.dim),
                );
            }
            Err(err) => record_err(&mut r, &format!("H^1_lambda on {id}"), err),
        }
        let omega_a = e.form("omega_a").expect("omega_a");
        match solve_potential(g, omega_a, &lambda, None) {
            Ok(pot) => {
                r.check(
                    format!("[omega] = 0 in H^2_lambda on {id}"),
                    pot.phi.twisted_d(g, &lambda) == *omega_a,
                    format!("phi = {}", form_str(&pot.phi, g)),
                    || "d_lambda phi != omega".into(),
                );
            }
            Err(err) => record_err(&mut r, &format!("[omega] = 0 in H^2_lambda on {id}"), err),
        }
    }

    for inst in instances() {
        let g = &inst.entry.algebra;
        let names = inst.entry.params().names().to_vec();
        let n = g.dim();
        let label = inst.label;
        let Some(lck) = lck_or_fail(
            &mut r,
            &format!("{label}: lcK data"),
            g,
            &inst.omega,
            &inst.j,
            Convention::Def,
        ) else {
            continue;
        };
        for (name, ok) in lck.identities(g) {
            r.check(format!("{label}: {name}"), ok, "exact", || "fails".into());
        }
        r.check(
            format!("{label}: omega(Z,.) = phi(Z) lambda"),
            lck.fundamental_identity(),
            "exact",
            || "fails".into(),
        );
        match vaisman_check(g, &lck) {
            Ok(v) => {
                r.check(
                    format!("{label}: Vaisman = {}", inst.vaisman),
                    v.vaisman == inst.vaisman,
                    format!(
                        "g(xi,xi) = {}, lambda(xi) = {}",
                        v.g_xi_xi.display(&names),
                        v.lambda_xi.display(&names)
                    ),
                    || describe_polys(&v.conditions, &names),
                );
                if v.vaisman {
                    r.check(
                        format!("{label}: L_xi omega = 0"),
                        v.lxi_omega_zero,
                        "exact",
                        || "fails".into(),
                    );
                }
            }
            Err(err) => record_err(&mut r, &format!("{label}: Vaisman check"), err),
        }
        if inst.vaisman {
            let lambda_xi = lck.lambda_of_xi();
            let expected = -&(&int(1) / &lambda_xi);
            match &lck.phi_factor {
                Some(f) => {
                    r.check(
                        format!("{label}: phi = f theta with f = -1/lambda(xi)"),
                        *f == expected,
                        format!("f = {}", f.display(&names)),
                        || format!("f = {}", f.display(&names)),
                    );
                }
                None => {
                    r.fail(
                        format!("{label}: phi proportional to theta"),
                        "not proportional",
                    );
                }
            }
        }
        let b = inst.entry.bilinear.clone().expect("bilinear form");
        match biinvariant_identities(g, &b, &lck) {
            Ok(bi) => {
                if inst.vaisman {
                    r.check(
                        format!("{label}: Z, xi in ker d phi"),
                        bi.z_in_ker_dphi && bi.xi_in_ker_dphi,
                        "exact",
                        || "fails".into(),
                    );
                }
                r.check(
                    format!("{label}: A_dphi = -ad_v"),
                    bi.dphi_is_minus_ad_v,
                    format!("v = {}", g.format_vector(&bi.v)),
                    || "fails".into(),
                );
                r.check(
                    format!("{label}: A_g xi is central"),
                    bi.a_g_xi_central,
                    g.format_vector(&bi.a_g_xi),
                    || g.format_vector(&bi.a_g_xi),
                );
                r.check(
                    format!("{label}: rank ad_v >= dim g - 2"),
                    bi.rank_ad_v + 2 >= n,
                    format!(
                        "rank = {}, dim Z_g(v) = {}",
                        bi.rank_ad_v, bi.centralizer_dim
                    ),
                    || format!("rank = {}", bi.rank_ad_v),
                );
                r.check(
                    format!("{label}: dim Z_s(v) = 1"),
                    bi.centralizer_derived_dim == 1,
                    format!("dim = {}", bi.centralizer_derived_dim),
                    || format!("dim = {}", bi.centralizer_derived_dim),
                );
            }
            Err(err) => record_err(&mut r, &format!("{label}: bi-invariant identities"), err),
        }
    }
    r
}
