//! The JSON document format: one algebra with named forms, endomorphisms and
//! bilinear forms, all entries written as scalar literals or wedge expressions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use lck_core::catalog::CatalogEntry;
use lck_core::expr::{parse_form, parse_scalar, ParseError};
use lck_core::exterior::KForm;
use lck_core::lie::LieAlgebra;
use lck_core::linalg::{Matrix, Vector};
use lck_core::scalars::{Assignment, Params, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default)]
    pub parameters: Vec<String>,
    pub algebra: RawAlgebra,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub endos: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bilinears: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_subalgebra: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<RawBracket>,
}

/// [i, j] = Σ coeffs[k] k, with i, j, k basis names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBracket {
    pub i: String,
    pub j: String,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {source}")]
    Parse {
        location: String,
        source: ParseError,
    },
    #[error("{location}: unknown basis element `{name}`")]
    UnknownBasis { location: String, name: String },
    #[error("{location}: {message}")]
    Shape { location: String, message: String },
    #[error("{0}: no such entry in the document")]
    UnknownName(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub params: Params,
    /// Structure constants as given; antisymmetry is completed but not enforced.
    pub algebra: LieAlgebra,
    pub forms: BTreeMap<String, KForm>,
    pub endos: BTreeMap<String, Matrix>,
    pub bilinears: BTreeMap<String, Matrix>,
    pub h: Option<Vec<Vector>>,
}

impl Document {
    pub fn from_json(src: &str) -> Result<Document, DocumentError> {
        let raw: RawDocument = serde_json::from_str(src)?;
        Document::from_raw(&raw)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_raw(raw: &RawDocument) -> Result<Document, DocumentError> {
        let params = Params::new(raw.parameters.iter().cloned());
        let a = &raw.algebra;
        if a.basis.len() != a.dim {
            return Err(shape(
                "algebra.basis",
                format!("{} names for dimension {}", a.basis.len(), a.dim),
            ));
        }
        let n = a.dim;
        let index = |loc: &str, name: &str| {
            a.basis
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| DocumentError::UnknownBasis {
                    location: loc.to_string(),
                    name: name.to_string(),
                })
        };

        let mut given: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (k, br) in a.brackets.iter().enumerate() {
            let loc = format!("algebra.brackets[{k}]");
            let i = index(&loc, &br.i)?;
            let j = index(&loc, &br.j)?;
            let mut v = vec![Scalar::zero(); n];
            for (name, lit) in &br.coeffs {
                let c = index(&loc, name)?;
                v[c] = scalar(&format!("{loc}.coeffs.{name}"), lit, &params)?;
            }
            if given.insert((i, j), v).is_some() {
                return Err(shape(&loc, format!("[{}, {}] given twice", br.i, br.j)));
            }
        }
        let mut algebra = LieAlgebra::new(a.basis.iter().cloned(), params.clone());
        for (&(i, j), v) in &given {
            algebra.set_bracket_raw(i, j, v.clone());
            if !given.contains_key(&(j, i)) {
                algebra.set_bracket_raw(j, i, v.iter().map(|x| -x).collect());
            }
        }

        let mut forms = BTreeMap::new();
        for (name, src) in &raw.forms {
            let f = parse_form(src, &params, &a.basis).map_err(|e| DocumentError::Parse {
                location: format!("forms.{name}"),
                source: e,
            })?;
            forms.insert(name.clone(), f);
        }
        let endos = matrices("endos", &raw.endos, n, &params)?;
        let bilinears = matrices("bilinears", &raw.bilinears, n, &params)?;
        let h = match &raw.h_subalgebra {
            None => None,
            Some(vs) => Some(
                vs.iter()
                    .enumerate()
                    .map(|(k, v)| vector(&format!("h_subalgebra[{k}]"), v, n, &params))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(Document {
            params,
            algebra,
            forms,
            endos,
            bilinears,
            h,
        })
    }

    /// Canonical form: brackets with i before j in basis order, nonzero
    /// coefficients only.
    pub fn to_raw(&self) -> RawDocument {
        let names = self.params.names();
        let basis = self.algebra.basis_names();
        let n = basis.len();
        let lit = |s: &Scalar| s.display(names).to_string();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.algebra.bracket_basis(i, j);
                if v.iter().all(Scalar::is_zero) {
                    continue;
                }
                let coeffs = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (basis[k].clone(), lit(c)))
                    .collect();
                brackets.push(RawBracket {
                    i: basis[i].clone(),
                    j: basis[j].clone(),
                    coeffs,
                });
            }
        }
        let rows = |m: &Matrix| -> Vec<Vec<String>> {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(lit).collect())
                .collect()
        };
        RawDocument {
            parameters: names.to_vec(),
            algebra: RawAlgebra {
                dim: n,
                basis: basis.to_vec(),
                brackets,
            },
            forms: self
                .forms
                .iter()
                .map(|(k, f)| (k.clone(), form_literal(f, basis, names)))
                .collect(),
            endos: self
                .endos
                .iter()
                .map(|(k, m)| (k.clone(), rows(m)))
                .collect(),
            bilinears: self
                .bilinears
                .iter()
                .map(|(k, m)| (k.clone(), rows(m)))
                .collect(),
            h_subalgebra: self
                .h
                .as_ref()
                .map(|vs| vs.iter().map(|v| v.iter().map(lit).collect()).collect()),
        }
    }

    pub fn from_catalog(entry: &CatalogEntry) -> Document {
        Document {
            params: entry.params().clone(),
            algebra: entry.algebra.clone(),
            forms: entry
                .forms
                .iter()
                .map(|f| (f.name.clone(), f.form.clone()))
                .collect(),
            endos: entry
                .complex_structures
                .iter()
                .map(|s| (s.name.clone(), s.j.matrix().clone()))
                .collect(),
            bilinears: entry
                .bilinear
                .iter()
                .map(|b| ("B".to_string(), b.clone()))
                .collect(),
            h: None,
        }
    }

    /// The algebra with its distinguished subalgebra declared.
    pub fn algebra_with_h(&self) -> Result<LieAlgebra, lck_core::lie::LieError> {
        match &self.h {
            None => Ok(self.algebra.clone()),
            Some(h) => self.algebra.clone().with_h(h.clone()),
        }
    }

    pub fn form(&self, name: &str) -> Result<&KForm, DocumentError> {
        self.forms
            .get(name)
            .ok_or_else(|| DocumentError::UnknownName(format!("forms.{name}")))
    }

    pub fn endo(&self, name: &str) -> Result<&Matrix, DocumentError> {
        self.endos
            .get(name)
            .ok_or_else(|| DocumentError::UnknownName(format!("endos.{name}")))
    }

    pub fn bilinear(&self, name: &str) -> Result<&Matrix, DocumentError> {
        self.bilinears
            .get(name)
            .ok_or_else(|| DocumentError::UnknownName(format!("bilinears.{name}")))
    }

    /// A named form, or else a wedge expression over this document's basis.
    pub fn resolve_form(&self, src: &str) -> Result<KForm, DocumentError> {
        if let Some(f) = self.forms.get(src) {
            return Ok(f.clone());
        }
        parse_form(src, &self.params, self.algebra.basis_names()).map_err(|e| {
            DocumentError::Parse {
                location: format!("`{src}`"),
                source: e,
            }
        })
    }

    /// Specializes every entry at a (possibly partial) parameter point.
    pub fn substitute(&self, at: &Assignment) -> Result<Document, ScalarError> {
        let sub_matrix = |m: &Matrix| m.try_map(|s| s.substitute(at));
        let mut forms = BTreeMap::new();
        for (k, f) in &self.forms {
            forms.insert(k.clone(), f.substitute(at)?);
        }
        let mut endos = BTreeMap::new();
        for (k, m) in &self.endos {
            endos.insert(k.clone(), sub_matrix(m)?);
        }
        let mut bilinears = BTreeMap::new();
        for (k, m) in &self.bilinears {
            bilinears.insert(k.clone(), sub_matrix(m)?);
        }
        let h = match &self.h {
            None => None,
            Some(vs) => Some(
                vs.iter()
                    .map(|v| v.iter().map(|s| s.substitute(at)).collect())
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(Document {
            params: self.params.clone(),
            algebra: self.algebra.substitute(at)?,
            forms,
            endos,
            bilinears,
            h,
        })
    }
}

/// A zero form of positive degree is written `0*e0^...` so its degree survives.
fn form_literal(f: &KForm, basis: &[String], params: &[String]) -> String {
    if f.is_zero() && f.degree() > 0 {
        return format!("0*{}", basis[..f.degree()].join("^"));
    }
    f.display(basis, params).to_string()
}

fn shape(location: &str, message: String) -> DocumentError {
    DocumentError::Shape {
        location: location.to_string(),
        message,
    }
}

fn scalar(location: &str, src: &str, params: &Params) -> Result<Scalar, DocumentError> {
    parse_scalar(src, params).map_err(|e| DocumentError::Parse {
        location: location.to_string(),
        source: e,
    })
}

fn vector(
    location: &str,
    v: &[String],
    n: usize,
    params: &Params,
) -> Result<Vector, DocumentError> {
    if v.len() != n {
        return Err(shape(
            location,
            format!("{} entries, expected {n}", v.len()),
        ));
    }
    v.iter()
        .enumerate()
        .map(|(k, s)| scalar(&format!("{location}[{k}]"), s, params))
        .collect()
}

fn matrices(
    section: &str,
    raw: &BTreeMap<String, Vec<Vec<String>>>,
    n: usize,
    params: &Params,
) -> Result<BTreeMap<String, Matrix>, DocumentError> {
    let mut out = BTreeMap::new();
    for (name, rows) in raw {
        let loc = format!("{section}.{name}");
        if rows.len() != n {
            return Err(shape(&loc, format!("{} rows, expected {n}", rows.len())));
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(r, row)| vector(&format!("{loc}[{r}]"), row, n, params))
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(name.clone(), Matrix::from_rows(rows));
    }
    Ok(out)
}
