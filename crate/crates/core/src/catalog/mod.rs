//! Hard-coded algebras of the classification together with their complex
//! structure and lcs families, and the suites that reproduce the theorems.

mod suites;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::exterior::KForm;
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalars::{Assignment, Locus, Params, Scalar};
use crate::structures::ComplexStructure;

pub use suites::{run_suite, SUITES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}` (expected u2, gl2r, su2, sl2r or abelian_<n>)")]
    UnknownId(String),
    #[error("unknown suite `{0}` (expected u2_classification, gl2_classification or reductive_identities)")]
    UnknownSuite(String),
}

#[derive(Clone, Debug)]
pub struct NamedStructure {
    pub name: String,
    pub description: String,
    pub j: ComplexStructure,
    pub locus: Locus,
    /// False for deliberate non-integrable perturbations.
    pub integrable: bool,
}

#[derive(Clone, Debug)]
pub struct NamedForm {
    pub name: String,
    pub description: String,
    pub form: KForm,
    pub locus: Locus,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub algebra: LieAlgebra,
    pub complex_structures: Vec<NamedStructure>,
    pub forms: Vec<NamedForm>,
    /// Ad-invariant nondegenerate symmetric form, if the algebra carries one.
    pub bilinear: Option<Matrix>,
    pub excluded_locus: Locus,
}

impl CatalogEntry {
    pub fn params(&self) -> &Params {
        self.algebra.params()
    }

    pub fn complex_structure(&self, name: &str) -> Option<&ComplexStructure> {
        self.complex_structures
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.j)
    }

    pub fn form(&self, name: &str) -> Option<&KForm> {
        self.forms.iter().find(|f| f.name == name).map(|f| &f.form)
    }

    pub fn param(&self, name: &str) -> Scalar {
        let i = self
            .params()
            .index_of(name)
            .unwrap_or_else(|| panic!("catalog entry {} has no parameter {name}", self.id));
        Scalar::param(i)
    }

    /// Partial assignment from (name, value) pairs.
    pub fn at(&self, values: &[(&str, BigRational)]) -> Assignment {
        let map: BTreeMap<String, BigRational> = values
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.params()
            .assignment(&map)
            .expect("catalog parameter names are fixed")
    }
}

pub const IDS: [&str; 5] = ["u2", "gl2r", "su2", "sl2r", "abelian_n"];

pub fn get(id: &str) -> Result<CatalogEntry, CatalogError> {
    match id {
        "u2" => Ok(u2()),
        "gl2r" => Ok(gl2r()),
        "su2" => Ok(bare("su2", su2_algebra(Params::empty()))),
        "sl2r" => Ok(bare("sl2r", sl2_algebra(Params::empty()))),
        other => {
            let n = other
                .strip_prefix("abelian_")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| CatalogError::UnknownId(other.to_string()))?;
            Ok(bare(other, LieAlgebra::abelian(n)))
        }
    }
}

fn bare(id: &str, algebra: LieAlgebra) -> CatalogEntry {
    CatalogEntry {
        id: id.to_string(),
        algebra,
        complex_structures: Vec::new(),
        forms: Vec::new(),
        bilinear: None,
        excluded_locus: Locus::new(),
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// su(2) with [e1,e2] = −e3 and cyclic.
pub fn su2_algebra(params: Params) -> LieAlgebra {
    let mut g = LieAlgebra::new(["e1", "e2", "e3"], params);
    g.set_bracket_ints(0, 1, &[0, 0, -1]);
    g.set_bracket_ints(1, 2, &[-1, 0, 0]);
    g.set_bracket_ints(2, 0, &[0, -1, 0]);
    g
}

/// sl(2,ℝ) with [h,e±] = ±2e±, [e+,e-] = h.
pub fn sl2_algebra(params: Params) -> LieAlgebra {
    let mut g = LieAlgebra::new(["h", "ep", "em"], params);
    g.set_bracket_ints(0, 1, &[0, 2, 0]);
    g.set_bracket_ints(0, 2, &[0, 0, -2]);
    g.set_bracket_ints(1, 2, &[1, 0, 0]);
    g
}

pub const U2_PARAMS: [&str; 10] = ["a", "b", "a1", "a2", "a3", "t", "mu1", "mu2", "c0", "c1"];
pub const GL2_PARAMS: [&str; 5] = ["mu1", "mu2", "a_h", "a_p", "a_m"];

/// u(2) = ℝe0 ⊕ su(2).
pub fn u2_algebra(params: Params) -> LieAlgebra {
    let mut g = LieAlgebra::new(["e0", "e1", "e2", "e3"], params);
    g.set_bracket_ints(1, 2, &[0, 0, 0, -1]);
    g.set_bracket_ints(2, 3, &[0, -1, 0, 0]);
    g.set_bracket_ints(3, 1, &[0, 0, -1, 0]);
    g
}

/// gl(2,ℝ) = ℝe0 ⊕ sl(2,ℝ) in the basis (e0, h, ep, em).
pub fn gl2_algebra(params: Params) -> LieAlgebra {
    let mut g = LieAlgebra::new(["e0", "h", "ep", "em"], params);
    g.set_bracket_ints(1, 2, &[0, 0, 2, 0]);
    g.set_bracket_ints(1, 3, &[0, 0, 0, -2]);
    g.set_bracket_ints(2, 3, &[0, 1, 0, 0]);
    g
}

/// Matrix of the Calabi-Eckmann structure J_{a,b}; columns are the images Je_j.
pub fn j_ab_matrix(a: &Scalar, b: &Scalar) -> Matrix {
    let c = -(&(&int(1) + &(a * a)) / b);
    Matrix::from_rows(vec![
        vec![a.clone(), c, int(0), int(0)],
        vec![b.clone(), -a, int(0), int(0)],
        vec![int(0), int(0), int(0), int(1)],
        vec![int(0), int(0), int(-1), int(0)],
    ])
}

/// e0∧φ + dφ for φ supported on the semisimple part.
pub fn lcs_from_potential(g: &LieAlgebra, phi: &KForm) -> KForm {
    let e0 = KForm::basis_1form(g.dim(), 0);
    &e0.wedge(phi) + &phi.d(g)
}

fn u2() -> CatalogEntry {
    let params = Params::new(U2_PARAMS);
    let g = u2_algebra(params.clone());
    let p = |name: &str| Scalar::param(params.index_of(name).expect("u2 parameter"));
    let (a, b, t) = (p("a"), p("b"), p("t"));
    let j_ab = j_ab_matrix(&a, &b);
    let j_t = Matrix::from_rows(vec![
        vec![int(0), int(-1), int(0), t.clone()],
        vec![int(1), int(0), t, int(0)],
        vec![int(0), int(0), int(0), int(-1)],
        vec![int(0), int(0), int(1), int(0)],
    ]);
    let mut b_locus = Locus::new();
    b_locus.exclude_scalar(&b);

    let n = 4;
    let std = &KForm::monomial(n, &[0, 1], int(1)) + &KForm::monomial(n, &[2, 3], int(1));
    let phi = KForm::from_covector(&[int(0), p("a1"), p("a2"), p("a3")]);
    let general = lcs_from_potential(&g, &phi);

    CatalogEntry {
        id: "u2".into(),
        complex_structures: vec![
            NamedStructure {
                name: "J_ab".into(),
                description:
                    "Je0 = a e0 + b e1, Je1 = c e0 - a e1, Je2 = -e3, Je3 = e2, c = -(1+a^2)/b"
                        .into(),
                j: ComplexStructure::new(j_ab).expect("J_ab squares to -1"),
                locus: b_locus.clone(),
                integrable: true,
            },
            NamedStructure {
                name: "J_t".into(),
                description: "Je0 = e1, Je1 = -e0, Je2 = e3 + t e1, Je3 = -e2 + t e0".into(),
                j: ComplexStructure::new(j_t).expect("J_t squares to -1"),
                locus: Locus::new(),
                integrable: false,
            },
        ],
        forms: vec![
            NamedForm {
                name: "omega".into(),
                description: "e0^e1 + e2^e3".into(),
                form: std,
                locus: Locus::new(),
            },
            NamedForm {
                name: "omega_a".into(),
                description: "e0^phi + d phi with phi = a1 e1 + a2 e2 + a3 e3".into(),
                form: general,
                locus: Locus::new(),
            },
        ],
        bilinear: Some(Matrix::identity(4)),
        excluded_locus: b_locus,
        algebra: g,
    }
}

fn gl2r() -> CatalogEntry {
    let params = Params::new(GL2_PARAMS);
    let g = gl2_algebra(params.clone());
    let p = |name: &str| Scalar::param(params.index_of(name).expect("gl2r parameter"));
    let (m1, m2) = (p("mu1"), p("mu2"));
    let norm = &(&m1 * &m1) + &(&m2 * &m2);
    let half = Scalar::from_ratio(1, 2);
    let two_m1 = &int(2) * &m1;
    let x = &norm / &two_m1;
    let y = &m2 / &two_m1;
    let inv = &int(1) / &m1;

    let columns = vec![
        vec![&m2 / &m1, int(0), -&x, x.clone()],
        vec![int(0), int(0), int(1), int(1)],
        vec![inv.clone(), -&half, -&y, y.clone()],
        vec![-&inv, -&half, y.clone(), -&y],
    ];
    let j_mu = Matrix::from_columns(&columns);

    let n = 4;
    let (ah, ap, am) = (p("a_h"), p("a_p"), p("a_m"));
    let phi = KForm::from_covector(&[int(0), ah.clone(), ap.clone(), am.clone()]);
    let general = lcs_from_potential(&g, &phi);
    let e0 = KForm::basis_1form(n, 0);
    let hs = KForm::basis_1form(n, 1);
    let ep = KForm::basis_1form(n, 2);
    let em = KForm::basis_1form(n, 3);
    let vaisman_i = &e0.wedge(&(&ep - &em)) - &hs.wedge(&(&ep + &em)).scale(&int(2));

    let mut mu_locus = Locus::new();
    mu_locus.exclude_scalar(&m1);
    let mut iso_locus = Locus::new();
    iso_locus.exclude_scalar(&(&(&ah * &ah) + &(&int(4) * &(&ap * &am))));
    let mut excluded = mu_locus.clone();
    excluded.extend(&iso_locus);

    let mut bmat = Matrix::zeros(4, 4);
    bmat[(0, 0)] = int(1);
    bmat[(1, 1)] = int(2);
    bmat[(2, 3)] = int(1);
    bmat[(3, 2)] = int(1);

    CatalogEntry {
        id: "gl2r".into(),
        complex_structures: vec![NamedStructure {
            name: "J_mu".into(),
            description:
                "family (i): Je0 = (mu2/mu1) e0 - |mu|^2/(2 mu1) (ep - em), Jh = ep + em, \
                          Je(+/-) = +/- e0/mu1 -/+ mu2/(2 mu1) (ep - em) - h/2"
                    .into(),
            j: ComplexStructure::new(j_mu).expect("J_mu squares to -1"),
            locus: mu_locus,
            integrable: true,
        }],
        forms: vec![
            NamedForm {
                name: "omega".into(),
                description: "e0^(ep - em) - 2 h^(ep + em)".into(),
                form: vaisman_i,
                locus: Locus::new(),
            },
            NamedForm {
                name: "omega_a".into(),
                description: "e0^phi + d phi with phi = a_h h + a_p ep + a_m em".into(),
                form: general,
                locus: iso_locus,
            },
        ],
        bilinear: Some(bmat),
        excluded_locus: excluded,
        algebra: g,
    }
}
