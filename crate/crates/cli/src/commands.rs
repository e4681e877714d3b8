//! Command implementations. Each returns a report; errors are inputs that no
//! check can be run on.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

use lck_core::catalog::{self, CatalogError};
use lck_core::constructions::{coadjoint_stabilizer, lcs_from_orbit, ConstructionError};
use lck_core::exterior::{twisted_cohomology_dim, ExteriorError, KForm};
use lck_core::lie::{LieAlgebra, LieError};
use lck_core::linalg::{self, Matrix};
use lck_core::report::StructureReport;
use lck_core::scalars::{Assignment, Params, Scalar, ScalarError};
use lck_core::structures::{
    assemble_lck, compatibility_check, lcs_check, nijenhuis, signature_at, vaisman_check,
    ComplexStructure, Convention, LckData, LcsData, Nijenhuis, StructureError,
};

use crate::document::{Document, DocumentError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("--at: {0}")]
    BadAssignment(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Parses `a=0,b=-1/2`.
pub fn parse_at(src: &str, params: &Params) -> Result<Assignment, CliError> {
    let mut map = BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::BadAssignment(format!("`{part}` is not name=value")))?;
        let q = BigRational::from_str(v.trim())
            .map_err(|_| CliError::BadAssignment(format!("`{v}` is not a rational number")))?;
        map.insert(k.trim().to_string(), q);
    }
    Ok(params.assignment(&map)?)
}

fn names(g: &LieAlgebra) -> &[String] {
    g.params().names()
}

fn form_str(g: &LieAlgebra, f: &KForm) -> String {
    f.display(g.basis_names(), names(g)).to_string()
}

fn vector_str(g: &LieAlgebra, v: &[Scalar]) -> String {
    g.format_vector(v)
}

pub fn check_algebra(doc: &Document) -> StructureReport {
    let g = &doc.algebra;
    let mut r = StructureReport::new(format!("algebra of dimension {}", g.dim()));
    match g.check_jacobi() {
        Ok(()) => {
            r.pass("antisymmetry and Jacobi identity", "all basis triples");
        }
        Err(v) => {
            r.fail("antisymmetry and Jacobi identity", v.describe(g));
        }
    }
    if let Some(h) = &doc.h {
        match g.clone().with_h(h.clone()) {
            Ok(gh) => {
                r.pass(
                    "h is a subalgebra",
                    format!("dim h = {}", gh.h_subalgebra().len()),
                );
            }
            Err(e) => {
                r.fail("h is a subalgebra", e.to_string());
            }
        }
    }
    r
}

/// Runs the lcs checker, turning structural failures into report entries.
fn lcs_checks(r: &mut StructureReport, g: &LieAlgebra, omega: &KForm) -> Option<LcsData> {
    let lcs = match lcs_check(g, omega) {
        Ok(lcs) => lcs,
        Err(StructureError::Degenerate { rank, quotient_dim }) => {
            r.fail(
                "omega nondegenerate",
                format!("rank {rank} on quotient of dimension {quotient_dim}"),
            );
            return None;
        }
        Err(
            e @ (StructureError::NoLeeForm
            | StructureError::LeeFormNotClosed
            | StructureError::NotInRelativeComplex { .. }),
        ) => {
            r.fail(
                "d(omega) = lambda ^ omega with d(lambda) = 0",
                e.to_string(),
            );
            return None;
        }
        Err(e) => {
            r.fail("lcs data", e.to_string());
            return None;
        }
    };
    let n = lcs.complement.len();
    r.pass(
        "omega nondegenerate",
        format!("rank {n} on quotient of dimension {n}"),
    )
    .with_locus(lcs.nondegenerate_locus.describe(names(g)));
    r.pass(
        "Lee form",
        format!(
            "lambda = {}, Z = {}, {}",
            form_str(g, &lcs.lambda),
            vector_str(g, &lcs.z),
            if lcs.proper {
                "proper (d omega != 0)"
            } else {
                "not proper (d omega = 0)"
            }
        ),
    );
    for (name, ok) in lcs.identities(g) {
        r.check(name, ok, "exact", || "identity fails".to_string());
    }
    Some(lcs)
}

pub fn check_lcs(doc: &Document, omega: &str) -> Result<StructureReport, CliError> {
    let g = doc.algebra_with_h()?;
    let omega = doc.resolve_form(omega)?;
    let mut r = StructureReport::new(format!("lcs check of {}", form_str(&g, &omega)));
    lcs_checks(&mut r, &g, &omega);
    Ok(r)
}

fn complex_checks(
    r: &mut StructureReport,
    g: &LieAlgebra,
    m: &Matrix,
) -> Result<Option<ComplexStructure>, CliError> {
    let j = match ComplexStructure::new(m.clone()) {
        Ok(j) => j,
        Err(e @ StructureError::NotAlmostComplex { .. }) => {
            r.fail("J^2 = -Id", e.to_string());
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    r.pass("J^2 = -Id", "exact");
    let n = nijenhuis(g, &j)?;
    r.check(
        "J integrable",
        n.is_integrable(),
        "N = 0 identically",
        || nijenhuis_witness(g, &n),
    );
    Ok(Some(j))
}

fn nijenhuis_witness(g: &LieAlgebra, n: &Nijenhuis) -> String {
    let b = g.basis_names();
    n.entries
        .iter()
        .find(|(_, v)| !linalg::is_zero_vector(v))
        .map(|((i, k), v)| format!("N({}, {}) = {}", b[*i], b[*k], vector_str(g, v)))
        .unwrap_or_default()
}

fn signature_check(r: &mut StructureReport, g: &LieAlgebra, lck: &LckData) {
    let m = &lck.metric.matrix;
    let constant = (0..m.rows()).all(|i| (0..m.cols()).all(|k| m[(i, k)].is_constant()));
    if !constant {
        r.skip(
            "metric signature",
            "metric depends on parameters; pass --at to evaluate",
        );
        return;
    }
    let empty = g
        .params()
        .assignment(&BTreeMap::new())
        .expect("empty assignment");
    match signature_at(&lck.metric, &empty) {
        Ok(s) => {
            let kind = if s.is_definite() {
                "definite"
            } else {
                "indefinite"
            };
            r.pass(
                "metric signature",
                format!("({}, {}), {kind}", s.positive, s.negative),
            );
        }
        Err(e) => {
            r.fail("metric signature", e.to_string());
        }
    }
}

fn lck_checks(
    r: &mut StructureReport,
    doc: &Document,
    omega: &str,
    j: &str,
    convention: Convention,
) -> Result<Option<(LieAlgebra, LckData)>, CliError> {
    let g = doc.algebra_with_h()?;
    let omega = doc.resolve_form(omega)?;
    let jm = doc.endo(j)?;
    let Some(j) = complex_checks(r, &g, jm)? else {
        return Ok(None);
    };
    let compat = compatibility_check(&omega, &j);
    if let Some((a, b)) = compat.witness {
        let basis = g.basis_names();
        r.fail(
            "omega(J., J.) = omega",
            format!(
                "omega(J{0}, J{1}) - omega({0}, {1}) = {2}",
                basis[a],
                basis[b],
                compat.defect[(a, b)].display(names(&g))
            ),
        );
        return Ok(None);
    }
    r.pass("omega(J., J.) = omega", "exact");
    if lcs_checks(r, &g, &omega).is_none() {
        return Ok(None);
    }
    let lck = match assemble_lck(&g, &omega, &j, convention) {
        Ok(l) => l,
        Err(e) => {
            r.fail("lcK data", e.to_string());
            return Ok(None);
        }
    };
    let locus = lck.locus.describe(names(&g));
    r.pass(
        "Lee field",
        format!(
            "xi = {}, theta = {}, phi = {}",
            vector_str(&g, &lck.xi),
            form_str(&g, &lck.theta),
            form_str(&g, &lck.phi)
        ),
    )
    .with_locus(locus);
    for (name, ok) in lck.identities(&g) {
        r.check(name, ok, "exact", || "identity fails".to_string());
    }
    r.check(
        "omega(Z,.) = phi(Z) lambda",
        lck.fundamental_identity(),
        "exact",
        || "identity fails".to_string(),
    );
    signature_check(r, &g, &lck);
    Ok(Some((g, lck)))
}

pub fn check_lck(
    doc: &Document,
    omega: &str,
    j: &str,
    convention: Convention,
) -> Result<StructureReport, CliError> {
    let mut r = StructureReport::new(format!("lcK check of ({omega}, {j})"));
    lck_checks(&mut r, doc, omega, j, convention)?;
    r.note(convention_note(convention));
    Ok(r)
}

pub fn check_vaisman(
    doc: &Document,
    omega: &str,
    j: &str,
    convention: Convention,
) -> Result<StructureReport, CliError> {
    let mut r = StructureReport::new(format!("Vaisman check of ({omega}, {j})"));
    if let Some((g, lck)) = lck_checks(&mut r, doc, omega, j, convention)? {
        let v = vaisman_check(&g, &lck)?;
        let detail = format!(
            "g(xi,xi) = {}, lambda(xi) = {}",
            v.g_xi_xi.display(names(&g)),
            v.lambda_xi.display(names(&g))
        );
        if v.vaisman {
            r.pass("nabla xi = 0", detail)
                .with_locus(v.locus.describe(names(&g)));
        } else {
            let b = g.basis_names();
            let mut witness = v
                .nabla_xi
                .iter()
                .enumerate()
                .find(|(_, w)| !linalg::is_zero_vector(w))
                .map(|(i, w)| format!("nabla_{} xi = {}", b[i], vector_str(&g, w)))
                .unwrap_or_default();
            let conds: Vec<String> = v
                .conditions
                .iter()
                .filter(|p| !p.is_constant())
                .map(|p| format!("{} = 0", p.display(names(&g))))
                .collect();
            if !conds.is_empty() {
                witness.push_str(&format!("; vanishes only where {}", conds.join(", ")));
            }
            r.fail("nabla xi = 0", format!("{witness}; {detail}"));
        }
        r.check("L_xi omega = 0", v.lxi_omega_zero, "exact", || {
            "L_xi omega != 0".to_string()
        });
    }
    r.note(convention_note(convention));
    Ok(r)
}

fn convention_note(c: Convention) -> &'static str {
    match c {
        Convention::Def => "metric convention def: g(X,Y) = omega(X, JY)",
        Convention::Thm => {
            "metric convention thm: g(X,Y) = omega(JX, Y); Lee field from g(X,Y) = omega(X, JY)"
        }
    }
}

pub fn cohomology(
    doc: &Document,
    lambda: &str,
    degree: usize,
) -> Result<StructureReport, CliError> {
    let g = doc.algebra_with_h()?;
    let lambda = doc.resolve_form(lambda)?;
    let h = twisted_cohomology_dim(&g, &lambda, degree)?;
    let mut r = StructureReport::new(format!(
        "twisted cohomology H^{degree} for lambda = {}",
        form_str(&g, &lambda)
    ));
    r.pass(
        format!("dim H^{degree}_lambda"),
        format!(
            "{} ({} cochains, rank of d_lambda out {}, in {})",
            h.dim, h.cochains, h.rank_out, h.rank_in
        ),
    )
    .with_locus(h.locus.describe(names(&g)));
    Ok(r)
}

pub struct Constructed {
    pub report: StructureReport,
    pub document: Document,
}

pub fn construct_orbit(
    doc: &Document,
    phi: &str,
    derivation: Option<&str>,
) -> Result<Constructed, CliError> {
    let g = doc.algebra_with_h()?;
    let phi = doc.resolve_form(phi)?;
    let orbit = coadjoint_stabilizer(&g, &phi)?;
    let d = match derivation {
        Some(name) => doc.endo(name)?.clone(),
        None => Matrix::zeros(g.dim(), g.dim()),
    };
    let out = lcs_from_orbit(&orbit, &d, "D")?;
    let mut report = StructureReport::new(format!("lcs from the orbit of {}", form_str(&g, &phi)));
    report.pass(
        "stabilizer",
        format!(
            "dim k = {}, dim h = {}, omega on g/k = {}",
            orbit.k.dim(),
            orbit.h.dim(),
            form_str(&g, &orbit.omega_q)
        ),
    );
    report.extend(out.report);
    let ext = &out.algebra;
    let mut forms = BTreeMap::new();
    forms.insert("omega".to_string(), out.lcs.omega.clone());
    forms.insert("lambda".to_string(), out.lcs.lambda.clone());
    forms.insert("phi".to_string(), out.phi.clone());
    let h = ext.h_subalgebra();
    let document = Document {
        params: ext.params().clone(),
        algebra: ext.clone().with_h(Vec::new())?,
        forms,
        endos: BTreeMap::new(),
        bilinears: BTreeMap::new(),
        h: (!h.is_empty()).then(|| h.to_vec()),
    };
    Ok(Constructed { report, document })
}

pub fn suite(name: &str) -> Result<StructureReport, CliError> {
    Ok(catalog::run_suite(name)?)
}

/// Invariants of a catalog entry: Jacobi, every J family, every form family.
pub fn catalog_report(id: &str) -> Result<StructureReport, CliError> {
    let e = catalog::get(id)?;
    let g = &e.algebra;
    let mut r = StructureReport::new(format!("catalog entry {id}"));
    match g.check_jacobi() {
        Ok(()) => {
            r.pass("antisymmetry and Jacobi identity", "all basis triples");
        }
        Err(v) => {
            r.fail("antisymmetry and Jacobi identity", v.describe(g));
        }
    }
    r.pass("center", format!("dim = {}", g.center().dim()));
    for s in &e.complex_structures {
        let n = nijenhuis(g, &s.j)?;
        if s.integrable {
            r.check(
                format!("{} integrable", s.name),
                n.is_integrable(),
                "N = 0 identically",
                || nijenhuis_witness(g, &n),
            )
            .with_locus(s.locus.describe(names(g)));
        } else {
            let conds: Vec<String> = n
                .vanishing_conditions()
                .iter()
                .map(|p| format!("{} = 0", p.display(names(g))))
                .collect();
            r.check(
                format!("{} is a non-integrable perturbation", s.name),
                !n.is_integrable(),
                format!("N = 0 only where {}", conds.join(", ")),
                || "N = 0 identically".to_string(),
            );
        }
    }
    for f in &e.forms {
        let mut sub = StructureReport::new(String::new());
        let ok = lcs_checks(&mut sub, g, &f.form).is_some() && sub.all_passed();
        r.check(
            format!("{} is lcs", f.name),
            ok,
            form_str(g, &f.form),
            || {
                sub.failures()
                    .map(|c| c.witness.clone().unwrap_or_default())
                    .collect::<Vec<_>>()
                    .join("; ")
            },
        );
    }
    Ok(r)
}

pub fn catalog_document(id: &str) -> Result<Document, CliError> {
    Ok(Document::from_catalog(&catalog::get(id)?))
}
